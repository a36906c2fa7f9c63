//! Dimer quivers embedded in the two-torus.
//!
//! A quiver is given combinatorially: vertices `0..n`, arrows carrying a
//! homology class in `H_1(T^2) = Z^2`, and faces listed as the arrow sequence
//! of their boundary unit cycle. The per-arrow homology vectors stand in for
//! the lift to the covering quiver: the class of a cycle is the sum of the
//! classes of its arrows.
//!
//! Paths are stored in traversal order. The algebraic convention writes
//! composition right to left (`qp` means "first `p`, then `q`"), so
//! [`PathWord::render_algebraic`] reverses the word.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{DomainError, Result, StructuralError};

pub type VertexId = usize;
pub type ArrowId = usize;
pub type FaceId = usize;

/// A class in `H_1(T^2) = Z^2`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct HomVec(pub i64, pub i64);

impl HomVec {
    pub const ZERO: HomVec = HomVec(0, 0);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

impl From<[i64; 2]> for HomVec {
    fn from(v: [i64; 2]) -> Self {
        HomVec(v[0], v[1])
    }
}

impl From<HomVec> for [i64; 2] {
    fn from(v: HomVec) -> Self {
        [v.0, v.1]
    }
}

impl Add for HomVec {
    type Output = HomVec;
    fn add(self, o: HomVec) -> HomVec {
        HomVec(self.0 + o.0, self.1 + o.1)
    }
}

impl AddAssign for HomVec {
    fn add_assign(&mut self, o: HomVec) {
        self.0 += o.0;
        self.1 += o.1;
    }
}

impl Sub for HomVec {
    type Output = HomVec;
    fn sub(self, o: HomVec) -> HomVec {
        HomVec(self.0 - o.0, self.1 - o.1)
    }
}

impl Neg for HomVec {
    type Output = HomVec;
    fn neg(self) -> HomVec {
        HomVec(-self.0, -self.1)
    }
}

impl fmt::Display for HomVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arrow {
    pub id: ArrowId,
    pub tail: VertexId,
    pub head: VertexId,
    pub homology: HomVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// The unit cycle bounding the face, in traversal order.
    pub boundary: Vec<ArrowId>,
}

/// On-disk representation. Keys are fixed; anything else is rejected.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    vertices: usize,
    arrows: Vec<Arrow>,
    faces: Vec<Vec<ArrowId>>,
}

/// A quiver with an embedding into the torus, described by its faces.
///
/// Construction only checks that ids are in range; the dimer invariants are
/// checked by [`validate_dimer`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimerQuiver {
    vertices: usize,
    arrows: Vec<Arrow>,
    faces: Vec<Face>,
    out_arrows: Vec<Vec<ArrowId>>,
    in_arrows: Vec<Vec<ArrowId>>,
    /// For each arrow, every (face, position) where it occurs.
    occurrences: Vec<Vec<(FaceId, usize)>>,
}

impl DimerQuiver {
    pub fn new(
        vertices: usize,
        mut arrows: Vec<Arrow>,
        faces: Vec<Vec<ArrowId>>,
    ) -> Result<Self, StructuralError> {
        arrows.sort_by_key(|a| a.id);
        for (position, a) in arrows.iter().enumerate() {
            if a.id != position {
                return Err(StructuralError::ArrowIdOutOfOrder {
                    position,
                    expected: arrows.len(),
                    found: a.id,
                });
            }
            for v in [a.tail, a.head] {
                if v >= vertices {
                    return Err(StructuralError::VertexOutOfRange {
                        arrow: a.id,
                        vertex: v,
                        vertices,
                    });
                }
            }
        }
        let mut occurrences = vec![Vec::new(); arrows.len()];
        let mut face_recs = Vec::with_capacity(faces.len());
        for (fid, boundary) in faces.into_iter().enumerate() {
            if boundary.is_empty() {
                return Err(StructuralError::EmptyFace { face: fid });
            }
            for (pos, &a) in boundary.iter().enumerate() {
                if a >= arrows.len() {
                    return Err(StructuralError::ArrowOutOfRange {
                        face: fid,
                        arrow: a,
                        arrows: arrows.len(),
                    });
                }
                occurrences[a].push((fid, pos));
            }
            face_recs.push(Face { id: fid, boundary });
        }
        let mut out_arrows = vec![Vec::new(); vertices];
        let mut in_arrows = vec![Vec::new(); vertices];
        for a in &arrows {
            out_arrows[a.tail].push(a.id);
            in_arrows[a.head].push(a.id);
        }
        Ok(DimerQuiver {
            vertices,
            arrows,
            faces: face_recs,
            out_arrows,
            in_arrows,
            occurrences,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, StructuralError> {
        let file: QuiverFile =
            serde_json::from_str(text).map_err(|e| StructuralError::Json(e.to_string()))?;
        Self::new(file.vertices, file.arrows, file.faces)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("quiver serializes")
    }

    pub fn to_value(&self) -> serde_json::Value {
        let file = QuiverFile {
            vertices: self.vertices,
            arrows: self.arrows.clone(),
            faces: self.faces.iter().map(|f| f.boundary.clone()).collect(),
        };
        serde_json::to_value(file).expect("quiver serializes")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn out_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.in_arrows[v]
    }

    /// Faces containing `a`, with the position of `a` in each boundary.
    pub fn occurrences(&self, a: ArrowId) -> &[(FaceId, usize)] {
        &self.occurrences[a]
    }

    pub fn longest_face(&self) -> usize {
        self.faces
            .iter()
            .map(|f| f.boundary.len())
            .max()
            .unwrap_or(0)
    }

    /// Boundary of `f` rotated so that it starts with the arrow at `pos`.
    pub fn rotated_boundary(&self, f: FaceId, pos: usize) -> Vec<ArrowId> {
        let b = &self.faces[f].boundary;
        b[pos..].iter().chain(b[..pos].iter()).copied().collect()
    }

    /// Euler characteristic `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.arrows.len() as i64 + self.faces.len() as i64
    }
}

/// A composable sequence of arrows, in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathWord {
    pub base: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl PathWord {
    pub fn trivial(v: VertexId) -> Self {
        PathWord {
            base: v,
            arrows: Vec::new(),
        }
    }

    /// Builds a path from a nonempty arrow list, checking composability.
    pub fn from_arrows(q: &DimerQuiver, arrows: Vec<ArrowId>) -> Result<Self> {
        let first = *arrows
            .first()
            .ok_or_else(|| DomainError::Other("empty arrow list has no base vertex".into()))?;
        if first >= q.num_arrows() {
            return Err(DomainError::NoSuchArrow(first).into());
        }
        let p = PathWord {
            base: q.arrow(first).tail,
            arrows,
        };
        p.check(q)?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Head vertex. Assumes the word is composable.
    pub fn head(&self, q: &DimerQuiver) -> VertexId {
        self.arrows
            .last()
            .map(|&a| q.arrow(a).head)
            .unwrap_or(self.base)
    }

    pub fn is_cycle(&self, q: &DimerQuiver) -> bool {
        self.head(q) == self.base
    }

    pub fn check(&self, q: &DimerQuiver) -> Result<()> {
        if self.base >= q.num_vertices() {
            return Err(DomainError::NoSuchVertex {
                vertex: self.base,
                vertices: q.num_vertices(),
            }
            .into());
        }
        let mut at = self.base;
        for (step, &a) in self.arrows.iter().enumerate() {
            if a >= q.num_arrows() {
                return Err(DomainError::NoSuchArrow(a).into());
            }
            let arrow = q.arrow(a);
            if arrow.tail != at {
                return Err(DomainError::NotComposable {
                    step,
                    arrow: a,
                    tail: arrow.tail,
                    expected: at,
                }
                .into());
            }
            at = arrow.head;
        }
        Ok(())
    }

    /// Traverse `self`, then `next`.
    pub fn then(&self, next: &PathWord) -> PathWord {
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        PathWord {
            base: self.base,
            arrows,
        }
    }

    /// The n-fold concatenation of a cycle with itself.
    pub fn power(&self, n: usize) -> PathWord {
        PathWord {
            base: self.base,
            arrows: self.arrows.repeat(n),
        }
    }

    /// Right-to-left product notation, e.g. `a4*a2*a0` for the traversal a0, a2, a4.
    pub fn render_algebraic(&self) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.base);
        }
        self.arrows
            .iter()
            .rev()
            .map(|a| format!("a{a}"))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "e{}", self.base);
        }
        let parts: Vec<String> = self.arrows.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Sum of arrow homology vectors along `p`.
pub fn path_homology(q: &DimerQuiver, p: &PathWord) -> Result<HomVec> {
    p.check(q)?;
    Ok(word_homology(q, &p.arrows))
}

pub(crate) fn word_homology(q: &DimerQuiver, word: &[ArrowId]) -> HomVec {
    word.iter()
        .fold(HomVec::ZERO, |acc, &a| acc + q.arrow(a).homology)
}

/// The unit cycle at `i`: the boundary of `face` (or of the first face through
/// `i`) rotated to start at `i`.
pub fn unit_cycle(q: &DimerQuiver, i: VertexId, face: Option<FaceId>) -> Result<PathWord> {
    if i >= q.num_vertices() {
        return Err(DomainError::NoSuchVertex {
            vertex: i,
            vertices: q.num_vertices(),
        }
        .into());
    }
    let start_in = |f: &Face| f.boundary.iter().position(|&a| q.arrow(a).tail == i);
    let (fid, pos) = match face {
        Some(fid) => {
            let f = q.faces().get(fid).ok_or(DomainError::NoSuchFace(fid))?;
            let pos = start_in(f).ok_or(DomainError::VertexNotOnFace {
                vertex: i,
                face: fid,
            })?;
            (fid, pos)
        }
        None => q
            .faces()
            .iter()
            .find_map(|f| start_in(f).map(|p| (f.id, p)))
            .ok_or(DomainError::VertexOnNoFace(i))?,
    };
    Ok(PathWord {
        base: i,
        arrows: q.rotated_boundary(fid, pos),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EulerCharacteristic { chi: i64 },
    ArrowFaceCount { arrow: ArrowId, faces: usize },
    ArrowRepeatedInFace { arrow: ArrowId, face: FaceId },
    FaceTooShort { face: FaceId, length: usize },
    FaceNotClosedWalk { face: FaceId, position: usize },
    FaceHomologyNonzero { face: FaceId, sum: HomVec },
    HomologySpan { index: i64 },
    Disconnected { components: usize },
    VertexLink { vertex: VertexId, cycles: usize },
    FaceColoring { arrow: ArrowId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks every dimer-quiver invariant and lists all failures.
pub fn validate_dimer(q: &DimerQuiver) -> ValidationReport {
    let mut violations = Vec::new();

    let chi = q.euler_characteristic();
    if chi != 0 {
        violations.push(Violation::EulerCharacteristic { chi });
    }

    for a in 0..q.num_arrows() {
        let occ = q.occurrences(a);
        let distinct: BTreeSet<FaceId> = occ.iter().map(|&(f, _)| f).collect();
        for &f in &distinct {
            if occ.iter().filter(|&&(g, _)| g == f).count() > 1 {
                violations.push(Violation::ArrowRepeatedInFace { arrow: a, face: f });
            }
        }
        if distinct.len() != 2 {
            violations.push(Violation::ArrowFaceCount {
                arrow: a,
                faces: distinct.len(),
            });
        }
    }

    for f in q.faces() {
        let n = f.boundary.len();
        if n < 2 {
            violations.push(Violation::FaceTooShort {
                face: f.id,
                length: n,
            });
        }
        for k in 0..n {
            let a = q.arrow(f.boundary[k]);
            let b = q.arrow(f.boundary[(k + 1) % n]);
            if a.head != b.tail {
                violations.push(Violation::FaceNotClosedWalk {
                    face: f.id,
                    position: k,
                });
            }
        }
        let sum = word_homology(q, &f.boundary);
        if !sum.is_zero() {
            violations.push(Violation::FaceHomologyNonzero { face: f.id, sum });
        }
    }

    let components = count_components(q);
    if components > 1 {
        violations.push(Violation::Disconnected { components });
    }

    let index = homology_span_index(q);
    if index != 1 {
        violations.push(Violation::HomologySpan { index });
    }

    // Vertex links and face coloring only make sense once faces are closed walks.
    let walks_ok = !violations
        .iter()
        .any(|v| matches!(v, Violation::FaceNotClosedWalk { .. }));
    if walks_ok {
        for (vertex, cycles) in vertex_link_cycles(q).into_iter().enumerate() {
            if cycles != 1 {
                violations.push(Violation::VertexLink { vertex, cycles });
            }
        }
        for arrow in face_coloring_conflicts(q) {
            violations.push(Violation::FaceColoring { arrow });
        }
    }

    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

fn count_components(q: &DimerQuiver) -> usize {
    let n = q.num_vertices();
    let mut seen = vec![false; n];
    let mut components = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let nbrs = q
                .out_arrows(v)
                .iter()
                .map(|&a| q.arrow(a).head)
                .chain(q.in_arrows(v).iter().map(|&a| q.arrow(a).tail));
            for w in nbrs.collect::<Vec<_>>() {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    components
}

/// Index of the lattice spanned by the homology classes of the cycle space in
/// `Z^2`; 0 when the span has rank below two.
pub fn homology_span_index(q: &DimerQuiver) -> i64 {
    let n = q.num_vertices();
    let mut potential: Vec<Option<HomVec>> = vec![None; n];
    let mut tree = vec![false; q.num_arrows()];
    for s in 0..n {
        if potential[s].is_some() {
            continue;
        }
        potential[s] = Some(HomVec::ZERO);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let pv = potential[v].unwrap();
            for &a in q.out_arrows(v) {
                let w = q.arrow(a).head;
                if potential[w].is_none() {
                    potential[w] = Some(pv + q.arrow(a).homology);
                    tree[a] = true;
                    queue.push_back(w);
                }
            }
            for &a in q.in_arrows(v) {
                let w = q.arrow(a).tail;
                if potential[w].is_none() {
                    potential[w] = Some(pv - q.arrow(a).homology);
                    tree[a] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let classes: Vec<HomVec> = q
        .arrows()
        .iter()
        .filter(|a| !tree[a.id])
        .map(|a| potential[a.tail].unwrap() + a.homology - potential[a.head].unwrap())
        .collect();
    let mut g: i64 = 0;
    for (i, u) in classes.iter().enumerate() {
        for v in &classes[i + 1..] {
            g = gcd(g, u.0 * v.1 - u.1 * v.0);
        }
    }
    g.abs()
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of cycles in the link of each vertex. The link joins the two arrow
/// ends at each face corner; a disk neighbourhood gives exactly one cycle.
fn vertex_link_cycles(q: &DimerQuiver) -> Vec<usize> {
    // Arrow ends: 2a = tail end of a, 2a + 1 = head end of a.
    let m = q.num_arrows();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * m];
    for f in q.faces() {
        let n = f.boundary.len();
        for k in 0..n {
            let incoming = f.boundary[k];
            let outgoing = f.boundary[(k + 1) % n];
            adj[2 * incoming + 1].push(2 * outgoing);
            adj[2 * outgoing].push(2 * incoming + 1);
        }
    }
    let end_vertex = |e: usize| {
        let a = q.arrow(e / 2);
        if e.is_multiple_of(2) {
            a.tail
        } else {
            a.head
        }
    };
    let mut cycles = vec![0; q.num_vertices()];
    let mut seen = vec![false; 2 * m];
    for e in 0..2 * m {
        if seen[e] {
            continue;
        }
        cycles[end_vertex(e)] += 1;
        seen[e] = true;
        let mut stack = vec![e];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    cycles
}

/// Arrows whose two faces cannot be given different colors in a 2-coloring
/// of the faces. Empty for an oriented surface.
fn face_coloring_conflicts(q: &DimerQuiver) -> Vec<ArrowId> {
    let mut color: Vec<Option<bool>> = vec![None; q.num_faces()];
    let mut conflicts = BTreeSet::new();
    for s in 0..q.num_faces() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(f) = queue.pop_front() {
            let c = color[f].unwrap();
            for &a in &q.face(f).boundary {
                for &(g, _) in q.occurrences(a) {
                    if g == f {
                        continue;
                    }
                    match color[g] {
                        None => {
                            color[g] = Some(!c);
                            queue.push_back(g);
                        }
                        Some(cg) if cg == c => {
                            conflicts.insert(a);
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    conflicts.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_validate() {
        for name in fixtures::FIXTURE_NAMES {
            let fx = fixtures::fixture(name).unwrap();
            let report = validate_dimer(&fx.quiver);
            assert!(report.ok, "{name}: {:?}", report.violations);
        }
    }

    #[test]
    fn removing_a_face_breaks_euler() {
        let q = fixtures::conifold();
        let faces: Vec<Vec<ArrowId>> = q.faces()[1..].iter().map(|f| f.boundary.clone()).collect();
        let broken = DimerQuiver::new(q.num_vertices(), q.arrows().to_vec(), faces).unwrap();
        let report = validate_dimer(&broken);
        assert!(!report.ok);
        assert!(report
            .violations
            .contains(&Violation::EulerCharacteristic { chi: -1 }));
    }

    #[test]
    fn zero_homology_fails_span() {
        let q = fixtures::conifold();
        let arrows = q
            .arrows()
            .iter()
            .map(|a| Arrow {
                homology: HomVec::ZERO,
                ..a.clone()
            })
            .collect();
        let faces = q.faces().iter().map(|f| f.boundary.clone()).collect();
        let flat = DimerQuiver::new(q.num_vertices(), arrows, faces).unwrap();
        let report = validate_dimer(&flat);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::HomologySpan { .. })));
    }

    #[test]
    fn structural_errors_are_distinct() {
        let bad = r#"{"vertices": 1, "arrows": [{"id":0,"tail":0,"head":3,"homology":[1,0]}], "faces": []}"#;
        assert!(matches!(
            DimerQuiver::from_json(bad),
            Err(StructuralError::VertexOutOfRange { .. })
        ));
        let unknown = r#"{"vertices": 1, "arrows": [], "faces": [], "extra": 1}"#;
        assert!(matches!(
            DimerQuiver::from_json(unknown),
            Err(StructuralError::Json(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let q = fixtures::fig_deformation().quiver;
        let back = DimerQuiver::from_json(&q.to_json()).unwrap();
        assert_eq!(q, back);
    }

    #[test]
    fn unit_cycles_have_zero_homology() {
        let q = fixtures::conifold();
        let c = unit_cycle(&q, 0, None).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.base, 0);
        assert!(c.is_cycle(&q));
        for f in q.faces() {
            for a in &f.boundary {
                let i = q.arrow(*a).tail;
                let p = unit_cycle(&q, i, Some(f.id)).unwrap();
                assert_eq!(path_homology(&q, &p).unwrap(), HomVec::ZERO);
            }
        }
    }

    #[test]
    fn unit_cycle_vertex_not_on_face() {
        let fx = fixtures::fig_iso_r();
        let q = &fx.quiver;
        let f = q.faces().iter().find(|f| f.boundary.len() == 3).unwrap();
        let off = (0..q.num_vertices())
            .find(|&v| !f.boundary.iter().any(|&a| q.arrow(a).tail == v))
            .unwrap();
        assert!(matches!(
            unit_cycle(q, off, Some(f.id)),
            Err(crate::Error::Domain(DomainError::VertexNotOnFace { .. }))
        ));
    }

    #[test]
    fn homology_is_additive_and_checks_composability() {
        let q = fixtures::fig_deformation().quiver;
        assert_eq!(
            path_homology(&q, &PathWord::trivial(1)).unwrap(),
            HomVec::ZERO
        );
        let p = PathWord::from_arrows(&q, vec![0, 1]).unwrap();
        let r = PathWord::from_arrows(&q, vec![2]).unwrap();
        let pr = p.then(&r);
        assert_eq!(
            path_homology(&q, &pr).unwrap(),
            path_homology(&q, &p).unwrap() + path_homology(&q, &r).unwrap()
        );
        assert!(PathWord::from_arrows(&q, vec![0, 0]).is_err());
    }
}
