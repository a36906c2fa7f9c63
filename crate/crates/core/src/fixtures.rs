//! Built-in example quivers.
//!
//! Each fixture carries the quiver, the arrows to contract and a list of
//! expected outcomes. Expectations marked [`Origin::Figure`] are the values
//! stated together with the drawn example; [`Origin::Computed`] ones were
//! produced by this crate and are kept as regression values;
//! [`Origin::Extrapolated`] ones follow the pattern of the drawn family.
//!
//! Variables are named after the lexicographically ordered simple matchings
//! of the contracted quiver, so generator lists match drawn values only up to
//! renaming (see [`find_renaming`]).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::center::{sandwich_candidate, CentralCandidate};
use crate::contraction::{contract, Contraction};
use crate::error::{Error, Result};
use crate::monomial::{variable_names, Monomial};
use crate::quiver::{validate_dimer, Arrow, ArrowId, DimerQuiver, HomVec, PathWord, VertexId};

pub const FIXTURE_NAMES: [&str; 5] = [
    "fig_deformation",
    "fig_iso_R",
    "fig_nested(1)",
    "fig_hsb_ii",
    "fig_noncancellative_central",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Figure,
    Computed,
    Extrapolated,
}

#[derive(Clone, Debug, Serialize)]
pub struct Expectation {
    pub claim: &'static str,
    pub value: Value,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub quiver: DimerQuiver,
    pub contraction_arrows: Vec<ArrowId>,
    pub expected: Vec<Expectation>,
    /// `(p, r, a)` for fixtures that ship a nilpotent central candidate.
    nil_data: Option<(Vec<ArrowId>, Vec<ArrowId>, ArrowId)>,
}

impl Fixture {
    pub fn contraction(&self) -> Result<Contraction> {
        contract(&self.quiver, &self.contraction_arrows)
    }

    pub fn expectation(&self, claim: &str) -> Option<&Expectation> {
        self.expected.iter().find(|e| e.claim == claim)
    }

    /// The candidate `a p - a r + p a - r a` built from two parallel
    /// paths that agree under the contraction.
    pub fn nil_candidate(&self) -> Result<CentralCandidate> {
        let (p, r, a) = self
            .nil_data
            .as_ref()
            .ok_or_else(|| Error::UnknownFixture(format!("{} has no nil candidate", self.name)))?;
        let p = PathWord::from_arrows(&self.quiver, p.clone())?;
        let r = PathWord::from_arrows(&self.quiver, r.clone())?;
        Ok(sandwich_candidate(&self.quiver, &p, &r, *a))
    }
}

/// Looks a fixture up by name; `fig_nested(n)` accepts any `n >= 1`.
pub fn fixture(name: &str) -> Result<Fixture> {
    match name {
        "fig_deformation" => Ok(fig_deformation()),
        "fig_iso_R" => Ok(fig_iso_r()),
        "fig_hsb_ii" => Ok(fig_hsb_ii()),
        "fig_noncancellative_central" => Ok(fig_noncancellative_central()),
        _ => {
            let n = name
                .strip_prefix("fig_nested(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.trim().parse::<usize>().ok())
                .filter(|&n| (1..=64).contains(&n))
                .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
            Ok(fig_nested(n))
        }
    }
}

/// The five named fixtures, with the nested family at `n = 1`.
pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURE_NAMES
        .iter()
        .map(|n| fixture(n).expect("built-in fixture"))
        .collect()
}

fn arrow(id: ArrowId, tail: VertexId, head: VertexId, h: (i64, i64)) -> Arrow {
    Arrow {
        id,
        tail,
        head,
        homology: HomVec(h.0, h.1),
    }
}

fn build(
    vertices: usize,
    arrows: &[(VertexId, VertexId, (i64, i64))],
    faces: &[&[ArrowId]],
) -> DimerQuiver {
    let arrows = arrows
        .iter()
        .enumerate()
        .map(|(id, &(t, h, hom))| arrow(id, t, h, hom))
        .collect();
    let faces = faces.iter().map(|f| f.to_vec()).collect();
    DimerQuiver::new(vertices, arrows, faces).expect("built-in quiver is well formed")
}

fn expect(claim: &'static str, value: Value, origin: Origin) -> Expectation {
    Expectation {
        claim,
        value,
        origin,
    }
}

/// Two vertices, four arrows, two square faces.
pub fn conifold() -> DimerQuiver {
    build(
        2,
        &[
            (0, 1, (-1, -1)),
            (0, 1, (0, 1)),
            (1, 0, (0, 0)),
            (1, 0, (1, 0)),
        ],
        &[&[0, 2, 1, 3], &[0, 3, 1, 2]],
    )
}

/// One vertex with three loops; the smallest dimer quiver.
pub fn single_vertex_torus() -> DimerQuiver {
    build(
        1,
        &[(0, 0, (1, 0)), (0, 0, (0, 1)), (0, 0, (-1, -1))],
        &[&[0, 1, 2], &[1, 0, 2]],
    )
}

fn deformation_quiver() -> DimerQuiver {
    build(
        3,
        &[
            (1, 0, (0, -1)), // a0
            (0, 2, (0, 1)),  // a1
            (2, 1, (0, 0)),  // a2, closes the two parallel paths
            (1, 0, (0, 0)),  // a3
            (0, 2, (0, 0)),  // a4
            (0, 0, (-1, 1)), // a5, loop
            (2, 1, (1, -1)), // a6, contracted
        ],
        &[&[0, 1, 2], &[5, 1, 6, 0], &[3, 4, 2], &[3, 5, 4, 6]],
    )
}

pub fn fig_deformation() -> Fixture {
    let s = json!(["x^2", "y^2", "x*y", "z"]);
    Fixture {
        name: "fig_deformation".into(),
        quiver: deformation_quiver(),
        contraction_arrows: vec![6],
        expected: vec![
            expect("target_simple_matchings", json!(3), Origin::Figure),
            expect("s_generators", s, Origin::Figure),
            expect(
                "r_ideal_generators",
                json!(["x^2", "y^2", "x*y"]),
                Origin::Figure,
            ),
            expect("not_in_r", json!(["x", "y", "z"]), Origin::Figure),
            expect("source_noncancellative", json!(true), Origin::Figure),
            expect("target_cancellative", json!(true), Origin::Figure),
        ],
        nil_data: None,
    }
}

/// The parallel paths `p = a3 a5 a5 a4` and `r = a0 a5 a5 a1` from vertex 1
/// to vertex 2, closed up by `a2` into cycles at vertex 1.
pub fn deformation_p_q(q: &DimerQuiver) -> (PathWord, PathWord) {
    let p = PathWord::from_arrows(q, vec![3, 5, 5, 4, 2]).expect("cycle at vertex 1");
    let r = PathWord::from_arrows(q, vec![0, 5, 5, 1, 2]).expect("cycle at vertex 1");
    (p, r)
}

pub fn fig_noncancellative_central() -> Fixture {
    Fixture {
        name: "fig_noncancellative_central".into(),
        quiver: deformation_quiver(),
        contraction_arrows: vec![6],
        expected: vec![
            expect("nil_candidate_central", json!(true), Origin::Figure),
            expect("nil_candidate_square_zero", json!(true), Origin::Figure),
            expect("nil_candidate_psi_zero", json!(true), Origin::Figure),
        ],
        nil_data: Some((vec![3, 5, 5, 4], vec![0, 5, 5, 1], 2)),
    }
}

pub fn fig_iso_r() -> Fixture {
    let quiver = build(
        9,
        &[
            (3, 0, (0, 0)),   // a0, contracted
            (1, 3, (0, 0)),   // a1
            (0, 1, (0, 0)),   // a2
            (2, 1, (0, 0)),   // a3, contracted
            (2, 8, (0, 0)),   // a4
            (8, 0, (0, 1)),   // a5, contracted
            (0, 4, (0, 0)),   // a6
            (4, 5, (0, 0)),   // a7
            (5, 2, (0, 0)),   // a8, contracted
            (4, 5, (0, -1)),  // a9
            (5, 6, (0, 0)),   // a10
            (6, 4, (0, 0)),   // a11
            (6, 4, (0, 1)),   // a12
            (4, 0, (1, 0)),   // a13, contracted
            (1, 6, (-1, 0)),  // a14, contracted
            (0, 7, (-1, -1)), // a15
            (7, 2, (1, 0)),   // a16, contracted
        ],
        &[
            &[0, 6, 7, 8, 3, 1],
            &[2, 1, 0],
            &[2, 14, 11, 13],
            &[14, 12, 13, 15, 16, 3],
            &[4, 5, 15, 16],
            &[5, 6, 9, 8, 4],
            &[10, 11, 7],
            &[9, 10, 12],
        ],
    );
    Fixture {
        name: "fig_iso_R".into(),
        quiver,
        contraction_arrows: vec![0, 3, 5, 8, 13, 14, 16],
        expected: vec![
            expect(
                "s_generators",
                json!(["x^2", "x*y", "y^2", "z"]),
                Origin::Figure,
            ),
            expect("in_r", json!("x*y*z^2"), Origin::Figure),
            expect(
                "cycles_with_image",
                json!({"vertex": 2, "image": "x*y*z^2", "count": 6, "distinct_mod_i": 5}),
                Origin::Figure,
            ),
            expect(
                "in_reduced_center",
                json!({"image": "x*y*z^2", "value": false}),
                Origin::Figure,
            ),
            expect("minimal_sigma_power", json!(1), Origin::Computed),
            expect(
                "reduced_center_power",
                json!({"image": "x*y*z^2", "n": 3}),
                Origin::Computed,
            ),
        ],
        nil_data: None,
    }
}

/// `n + 1` nested squares. The outer square is the conifold; each further
/// level is glued in by a ring of eight triangles, and the green arrows
/// pointing outwards are contracted.
///
/// Arrow order: the four outer arrows, then per level the four green arrows,
/// the four square arrows and the four black arrows.
pub fn fig_nested(n: usize) -> Fixture {
    assert!(n >= 1, "the nested family starts at n = 1");
    let corner_offset = [(0, 0), (0, 0), (0, 1), (-1, 0)];
    let vertex = |j: usize, k: usize| if j == 0 { k % 2 } else { 2 + 4 * (j - 1) + k };
    let offset = |j: usize, k: usize| if j == 0 { corner_offset[k] } else { (0, 0) };
    let mut arrows = Vec::new();
    let mut link = |from: (usize, usize), to: (usize, usize)| {
        let (a, b) = (offset(from.0, from.1), offset(to.0, to.1));
        arrows.push((
            vertex(from.0, from.1),
            vertex(to.0, to.1),
            (b.0 - a.0, b.1 - a.1),
        ));
        arrows.len() - 1
    };
    let mut edge = vec![(0..4)
        .map(|k| link((0, k), (0, (k + 1) % 4)))
        .collect::<Vec<_>>()];
    let mut green = vec![Vec::new()];
    let mut black = vec![Vec::new()];
    for j in 1..=n {
        green.push((0..4).map(|k| link((j, k), (j - 1, k))).collect());
        edge.push((0..4).map(|k| link((j, k), (j, (k + 1) % 4))).collect());
        black.push((0..4).map(|k| link((j - 1, (k + 1) % 4), (j, k))).collect());
    }
    let mut faces = vec![vec![edge[0][0], edge[0][3], edge[0][2], edge[0][1]]];
    for j in 1..=n {
        for k in 0..4 {
            faces.push(vec![green[j][k], edge[j - 1][k], black[j][k]]);
            faces.push(vec![black[j][k], edge[j][k], green[j][(k + 1) % 4]]);
        }
    }
    faces.push(edge[n].clone());
    let faces: Vec<&[ArrowId]> = faces.iter().map(|f| f.as_slice()).collect();
    let quiver = build(2 + 4 * n, &arrows, &faces);
    let origin = if n <= 2 {
        Origin::Figure
    } else {
        Origin::Extrapolated
    };
    Fixture {
        name: format!("fig_nested({n})"),
        quiver,
        contraction_arrows: green.concat(),
        expected: vec![
            expect("minimal_sigma_power", json!(n), origin),
            expect("normal", json!(n == 1), origin),
        ],
        nil_data: None,
    }
}

/// The single-level nested quiver exactly as drawn, with its own numbering.
pub fn fig_nested_drawn() -> Fixture {
    let quiver = build(
        6,
        &[
            (0, 1, (0, 0)),  // a0, outer square
            (1, 0, (0, 1)),  // a1
            (0, 1, (-1, 0)), // a2
            (1, 0, (1, -1)), // a3
            (2, 0, (0, 0)),  // a4, green
            (3, 1, (0, 0)),  // a5, green
            (4, 1, (-1, 1)), // a6, green
            (5, 0, (0, 1)),  // a7, green
            (2, 3, (0, 0)),  // a8, inner square
            (3, 5, (0, 0)),  // a9
            (5, 4, (0, 0)),  // a10
            (4, 2, (0, 0)),  // a11
            (0, 4, (0, 0)),  // a12
            (1, 2, (0, 0)),  // a13
            (0, 3, (0, -1)), // a14
            (1, 5, (1, -1)), // a15
        ],
        &[
            &[0, 3, 2, 1],
            &[13, 4, 0],
            &[14, 5, 1],
            &[15, 7, 2],
            &[12, 6, 3],
            &[4, 12, 11],
            &[5, 13, 8],
            &[6, 15, 10],
            &[7, 14, 9],
            &[9, 10, 11, 8],
        ],
    );
    Fixture {
        name: "fig_nested(1)".into(),
        quiver,
        contraction_arrows: vec![4, 5, 6, 7],
        expected: vec![
            expect("minimal_sigma_power", json!(1), Origin::Figure),
            expect("normal", json!(true), Origin::Figure),
        ],
        nil_data: None,
    }
}

pub fn fig_hsb_ii() -> Fixture {
    let quiver = build(
        7,
        &[
            (0, 1, (0, 0)),   // a0
            (1, 0, (1, 0)),   // a1
            (0, 3, (-1, 0)),  // a2
            (3, 0, (0, -1)),  // a3
            (0, 2, (0, 1)),   // a4
            (2, 0, (0, 0)),   // a5
            (1, 3, (0, 1)),   // a6
            (2, 6, (0, 0)),   // a7
            (3, 2, (1, 0)),   // a8
            (3, 5, (0, 0)),   // a9
            (1, 4, (0, 0)),   // a10
            (4, 2, (0, 0)),   // a11, contracted
            (5, 1, (0, 0)),   // a12, contracted
            (6, 3, (0, 0)),   // a13, contracted
            (2, 1, (-1, -1)), // a14
        ],
        &[
            &[0, 6, 3],
            &[10, 11, 5, 0],
            &[1, 4, 14],
            &[2, 9, 12, 1],
            &[2, 8, 5],
            &[4, 7, 13, 3],
            &[8, 14, 6],
            &[7, 13, 9, 12, 10, 11],
        ],
    );
    Fixture {
        name: "fig_hsb_ii".into(),
        quiver,
        contraction_arrows: vec![11, 12, 13],
        expected: vec![
            expect("target_vertices", json!(4), Origin::Figure),
            expect("target_arrows", json!(12), Origin::Figure),
        ],
        nil_data: None,
    }
}

/// A permutation `perm` of variables with `computed[k]` renamed by `perm`
/// giving exactly `expected`, if one exists. `perm[i]` is the new index of
/// variable `i`.
pub fn find_renaming(computed: &[Monomial], expected: &[Monomial]) -> Option<Vec<usize>> {
    let n = computed
        .first()
        .or(expected.first())
        .map_or(0, Monomial::nvars);
    if computed.len() != expected.len() || n > 8 {
        return None;
    }
    let mut want: Vec<&Monomial> = expected.iter().collect();
    want.sort();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut got: Vec<Monomial> = computed.iter().map(|m| rename(m, &perm)).collect();
        got.sort();
        if got.iter().zip(&want).all(|(a, b)| a == *b) {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

pub fn rename(m: &Monomial, perm: &[usize]) -> Monomial {
    let mut exps = vec![0; m.nvars()];
    for (i, &e) in m.exps.iter().enumerate() {
        exps[perm[i]] = e;
    }
    Monomial::from_exps(exps)
}

/// Inverse of [`rename`]'s permutation.
pub fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Parses a list of monomials written in the default variable names.
pub fn parse_monomials(value: &Value, nvars: usize) -> Result<Vec<Monomial>> {
    let names = variable_names(nvars);
    let items = value
        .as_array()
        .ok_or_else(|| Error::Invalid(format!("expected a list of monomials, got {value}")))?;
    items
        .iter()
        .map(|v| {
            let s = v
                .as_str()
                .ok_or_else(|| Error::Invalid(format!("expected a monomial string, got {v}")))?;
            Monomial::parse(s, &names)
        })
        .collect()
}

/// The quotient of the triangular lattice by a sublattice of index `a * c`
/// with basis `(a, 0), (b, c)`.
pub fn triangular_torus(a: i64, b: i64, c: i64) -> DimerQuiver {
    assert!(a >= 1 && c >= 1 && (0..a).contains(&b));
    let id = |x: i64, y: i64| (y * a + x) as usize;
    let reduce = |x: i64, y: i64| {
        let k = y.div_euclid(c);
        let (x1, y1) = (x - k * b, y - k * c);
        let m = x1.div_euclid(a);
        (id(x1 - m * a, y1), HomVec(m, k))
    };
    let steps = [(1, 0), (0, 1), (-1, -1)];
    let mut arrows = Vec::new();
    for y in 0..c {
        for x in 0..a {
            for (dx, dy) in steps {
                let (head, homology) = reduce(x + dx, y + dy);
                arrows.push(Arrow {
                    id: arrows.len(),
                    tail: id(x, y),
                    head,
                    homology,
                });
            }
        }
    }
    let arrow_at = |x: i64, y: i64, dir: usize| reduce(x, y).0 * 3 + dir;
    let mut faces = Vec::new();
    for y in 0..c {
        for x in 0..a {
            faces.push(vec![
                arrow_at(x, y, 0),
                arrow_at(x + 1, y, 1),
                arrow_at(x + 1, y + 1, 2),
            ]);
            faces.push(vec![
                arrow_at(x, y, 1),
                arrow_at(x, y + 1, 0),
                arrow_at(x + 1, y + 1, 2),
            ]);
        }
    }
    DimerQuiver::new((a * c) as usize, arrows, faces).expect("lattice quotient is well formed")
}

/// Splits vertex `v` by a new arrow `v' -> v` inserted at two corners of `v`.
///
/// A corner is `(face, pos)` with `boundary[pos]` entering `v` and the next
/// arrow leaving it. Returns `None` when the corners do not give a valid
/// dimer quiver.
pub fn split_vertex(
    q: &DimerQuiver,
    v: VertexId,
    first: (usize, usize),
    second: (usize, usize),
) -> Option<DimerQuiver> {
    if first.0 == second.0 {
        return None;
    }
    let next = |f: usize, pos: usize| {
        let b = &q.face(f).boundary;
        b[(pos + 1) % b.len()]
    };
    // Link of v: nodes are arrow ends (arrow, is_head), edges are corners.
    let mut corners = Vec::new();
    for face in q.faces() {
        let b = &face.boundary;
        for pos in 0..b.len() {
            if q.arrow(b[pos]).head == v {
                corners.push((face.id, pos, (b[pos], true), (next(face.id, pos), false)));
            }
        }
    }
    let is_cut = |f: usize, pos: usize| (f, pos) == first || (f, pos) == second;
    if !corners.iter().any(|c| (c.0, c.1) == first) || !corners.iter().any(|c| (c.0, c.1) == second)
    {
        return None;
    }
    // Ends reachable from the outgoing end at the first corner stay at v.
    let start = (next(first.0, first.1), false);
    let mut keep = vec![start];
    let mut frontier = vec![start];
    while let Some(node) = frontier.pop() {
        for c in &corners {
            if is_cut(c.0, c.1) {
                continue;
            }
            let other = if c.2 == node {
                c.3
            } else if c.3 == node {
                c.2
            } else {
                continue;
            };
            if !keep.contains(&other) {
                keep.push(other);
                frontier.push(other);
            }
        }
    }
    let second_in = (q.face(second.0).boundary[second.1], true);
    let second_out = (next(second.0, second.1), false);
    if !keep.contains(&second_out) || keep.contains(&second_in) {
        return None;
    }
    let new_vertex = q.num_vertices();
    let mut arrows: Vec<Arrow> = q.arrows().to_vec();
    for a in arrows.iter_mut() {
        if a.head == v && !keep.contains(&(a.id, true)) {
            a.head = new_vertex;
        }
        if a.tail == v && !keep.contains(&(a.id, false)) {
            a.tail = new_vertex;
        }
    }
    let b = arrows.len();
    arrows.push(Arrow {
        id: b,
        tail: new_vertex,
        head: v,
        homology: HomVec::ZERO,
    });
    let mut faces: Vec<Vec<ArrowId>> = q.faces().iter().map(|f| f.boundary.clone()).collect();
    faces[first.0].insert(first.1 + 1, b);
    faces[second.0].insert(second.1 + 1, b);
    let out = DimerQuiver::new(new_vertex + 1, arrows, faces).ok()?;
    validate_dimer(&out).ok.then_some(out)
}

/// A small random dimer quiver: a triangular lattice quotient with up to
/// two vertex splits. The split arrows are the contraction set, so the
/// contracted quiver is the lattice quotient again.
pub fn random_small_quiver(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lattices: [(i64, i64, i64); 6] = [
        (1, 0, 1),
        (2, 0, 1),
        (1, 0, 2),
        (3, 0, 1),
        (3, 1, 1),
        (3, 2, 1),
    ];
    let &(a, b, c) = lattices.choose(&mut rng).expect("nonempty");
    let mut quiver = triangular_torus(a, b, c);
    let mut split_arrows = Vec::new();
    let splits = rng.gen_range(0..=2);
    let mut attempts = 0;
    while split_arrows.len() < splits && attempts < 200 {
        attempts += 1;
        let v = rng.gen_range(0..quiver.num_vertices());
        let mut corners = Vec::new();
        for face in quiver.faces() {
            for (pos, &arr) in face.boundary.iter().enumerate() {
                if quiver.arrow(arr).head == v {
                    corners.push((face.id, pos));
                }
            }
        }
        let (Some(&x), Some(&y)) = (corners.choose(&mut rng), corners.choose(&mut rng)) else {
            continue;
        };
        if let Some(next) = split_vertex(&quiver, v, x, y) {
            split_arrows.push(next.num_arrows() - 1);
            quiver = next;
        }
    }
    Fixture {
        name: format!("random({seed})"),
        quiver,
        contraction_arrows: split_arrows,
        expected: Vec::new(),
        nil_data: None,
    }
}
