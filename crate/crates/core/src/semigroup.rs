//! Monomial semigroups: the cycle algebra `S`, the per-vertex image sets
//! `τ̄ψ(e_i A e_i)` and the homotopy center `R` as their intersection.
//!
//! A closed walk at `i` with image `g` is a walk in the finite graph of
//! states `(vertex, accumulated monomial)` with monomials bounded by `g` (or
//! by a total degree). Breadth-first search over those states therefore
//! decides realizability exactly; the only limit is the state budget.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::contraction::Contraction;
use crate::error::{DomainError, Result};
use crate::monomial::Monomial;
use crate::par::{self, Execution};
use crate::quiver::{PathWord, VertexId};
use crate::rewrite::SearchBounds;
use crate::verdict::Verdict;

pub type MonomialSet = BTreeSet<Monomial>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlgebraLabel {
    S,
    SPrime,
    R,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialAlgebra {
    pub label: AlgebraLabel,
    /// Minimal, sorted, without the unit.
    pub generators: Vec<Monomial>,
    /// Set when the generators are only known up to a degree bound.
    pub degree_bound: Option<u32>,
}

impl MonomialAlgebra {
    /// The algebra generated by `gens`, reduced to a minimal generating set.
    pub fn new(label: AlgebraLabel, gens: impl IntoIterator<Item = Monomial>) -> Self {
        MonomialAlgebra {
            label,
            generators: minimal_generators(gens),
            degree_bound: None,
        }
    }

    pub fn nvars(&self) -> Option<usize> {
        self.generators.first().map(|g| g.nvars())
    }
}

/// Drops generators that are sums of the others.
pub fn minimal_generators(gens: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens
        .into_iter()
        .filter(|g| !g.is_one())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    sorted.sort();
    let mut kept: Vec<Monomial> = Vec::new();
    for g in sorted {
        if !is_sum_of(&kept, &g) {
            kept.push(g);
        }
    }
    kept
}

/// Whether `g` is a (possibly empty) sum of elements of `gens`.
pub fn is_sum_of(gens: &[Monomial], g: &Monomial) -> bool {
    decompose(gens, g).is_some()
}

/// A multiset of generator indices summing to `g`, if any.
pub fn decompose(gens: &[Monomial], g: &Monomial) -> Option<Vec<usize>> {
    fn rec(gens: &[Monomial], m: &Monomial, memo: &mut HashMap<Monomial, Option<usize>>) -> bool {
        if m.is_one() {
            return true;
        }
        if let Some(r) = memo.get(m) {
            return r.is_some();
        }
        memo.insert(m.clone(), None);
        for (k, h) in gens.iter().enumerate() {
            if h.is_one() {
                continue;
            }
            if let Some(rest) = m.checked_div(h) {
                if rec(gens, &rest, memo) {
                    memo.insert(m.clone(), Some(k));
                    return true;
                }
            }
        }
        false
    }
    let mut memo = HashMap::new();
    if !rec(gens, g, &mut memo) {
        return None;
    }
    let mut out = Vec::new();
    let mut cur = g.clone();
    while !cur.is_one() {
        let k = memo[&cur]?;
        out.push(k);
        cur = cur.checked_div(&gens[k])?;
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    Yes { decomposition: Vec<Monomial> },
    NoUpToBound { degree_bound: u32 },
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes { .. })
    }
}

/// Semigroup membership by dynamic programming over the monomials dividing `g`.
pub fn algebra_contains(
    a: &MonomialAlgebra,
    g: &Monomial,
    degree_bound: u32,
) -> Result<Membership> {
    if let Some(n) = a.nvars() {
        g.check_catalog(n)?;
    }
    if degree_bound < g.degree() {
        return Err(DomainError::DegreeBoundTooSmall {
            bound: degree_bound,
            degree: g.degree(),
        }
        .into());
    }
    Ok(match decompose(&a.generators, g) {
        Some(ks) => Membership::Yes {
            decomposition: ks.into_iter().map(|k| a.generators[k].clone()).collect(),
        },
        None => Membership::NoUpToBound { degree_bound },
    })
}

/// All elements of the semigroup generated by `gens` of degree at most `d`,
/// including the unit.
pub fn generated_up_to(gens: &[Monomial], d: u32) -> MonomialSet {
    let mut out = MonomialSet::new();
    let Some(n) = gens.first().map(|g| g.nvars()) else {
        return out;
    };
    let one = Monomial::one(n);
    out.insert(one.clone());
    let mut queue = VecDeque::from([one]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            if g.is_one() || m.degree() + g.degree() > d {
                continue;
            }
            let next = m.mul(g);
            if out.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    out
}

/// Images of closed walks at `i` of total degree at most `d`, including the
/// unit (the trivial path).
pub fn vertex_image_set(c: &Contraction, i: VertexId, d: u32) -> MonomialSet {
    let q = &c.source;
    let start = (i, Monomial::one(c.nvars()));
    let mut seen = std::collections::HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut out = MonomialSet::new();
    out.insert(Monomial::one(c.nvars()));
    while let Some((v, m)) = queue.pop_front() {
        for &a in q.out_arrows(v) {
            let img = c.arrow_image(a);
            if m.degree() + img.degree() > d {
                continue;
            }
            let next = (q.arrow(a).head, m.mul(img));
            if next.0 == i {
                out.insert(next.1.clone());
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    out
}

pub fn vertex_image_sets(c: &Contraction, d: u32) -> Vec<MonomialSet> {
    vertex_image_sets_with(c, d, Execution::default())
}

/// One sweep per source vertex; the sweeps are independent.
pub fn vertex_image_sets_with(c: &Contraction, d: u32, exec: Execution) -> Vec<MonomialSet> {
    par::map_range(exec, c.source.num_vertices(), |i| vertex_image_set(c, i, d))
}

/// Elements of `R` of degree at most `d`.
pub fn homotopy_center_set(c: &Contraction, d: u32) -> MonomialSet {
    intersect(vertex_image_sets(c, d))
}

pub fn intersect(sets: Vec<MonomialSet>) -> MonomialSet {
    let mut it = sets.into_iter();
    let Some(mut acc) = it.next() else {
        return MonomialSet::new();
    };
    for s in it {
        acc.retain(|m| s.contains(m));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Realizability {
    Yes {
        witness: PathWord,
    },
    /// The state graph below `g` was exhausted.
    No {
        states: usize,
    },
    Unknown {
        states: usize,
    },
}

impl Realizability {
    pub fn verdict(&self) -> Verdict {
        match self {
            Realizability::Yes { .. } => Verdict::Yes,
            Realizability::No { .. } => Verdict::No,
            Realizability::Unknown { .. } => Verdict::Unknown,
        }
    }
}

/// Whether some closed walk at `i` has image exactly `g`.
pub fn realizable_at_vertex(
    c: &Contraction,
    i: VertexId,
    g: &Monomial,
    b: &SearchBounds,
) -> Result<Realizability> {
    g.check_catalog(c.nvars())?;
    if i >= c.source.num_vertices() {
        return Err(DomainError::NoSuchVertex {
            vertex: i,
            vertices: c.source.num_vertices(),
        }
        .into());
    }
    if g.is_one() {
        return Ok(Realizability::Yes {
            witness: PathWord::trivial(i),
        });
    }
    let q = &c.source;
    type State = (VertexId, Monomial);
    let start: State = (i, Monomial::one(c.nvars()));
    let mut parent: HashMap<State, Option<(State, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let goal: State = (i, g.clone());
    while let Some((v, m)) = queue.pop_front() {
        for &a in q.out_arrows(v) {
            let next_m = m.mul(c.arrow_image(a));
            if !next_m.divides(g) {
                continue;
            }
            let next: State = (q.arrow(a).head, next_m);
            if next == goal {
                let mut arrows = vec![a];
                let mut cur = (v, m.clone());
                while let Some(Some((prev, arrow))) = parent.get(&cur) {
                    arrows.push(*arrow);
                    cur = prev.clone();
                }
                arrows.reverse();
                return Ok(Realizability::Yes {
                    witness: PathWord { base: i, arrows },
                });
            }
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some(((v, m.clone()), a)));
            if parent.len() > b.max_states {
                return Ok(Realizability::Unknown {
                    states: parent.len(),
                });
            }
            queue.push_back(next);
        }
    }
    Ok(Realizability::No {
        states: parent.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterMembership {
    pub verdict: Verdict,
    /// A vertex at which `g` is not realizable, when the answer is No.
    pub failing_vertex: Option<VertexId>,
    pub witnesses: Vec<Option<PathWord>>,
}

/// `g ∈ R` iff `g` is realizable at every source vertex.
pub fn homotopy_center_contains(
    c: &Contraction,
    g: &Monomial,
    b: &SearchBounds,
) -> Result<CenterMembership> {
    g.check_catalog(c.nvars())?;
    let per = par::map_range(Execution::default(), c.source.num_vertices(), |i| {
        realizable_at_vertex(c, i, g, b)
    });
    let mut verdict = Verdict::Yes;
    let mut failing_vertex = None;
    let mut witnesses = Vec::new();
    for (i, r) in per.into_iter().enumerate() {
        let r = r?;
        verdict = verdict.and(r.verdict());
        if r.verdict() == Verdict::No && failing_vertex.is_none() {
            failing_vertex = Some(i);
        }
        witnesses.push(match r {
            Realizability::Yes { witness } => Some(witness),
            _ => None,
        });
    }
    Ok(CenterMembership {
        verdict,
        failing_vertex,
        witnesses,
    })
}

/// Minimal generators of `R` among monomials of degree at most `d`.
pub fn homotopy_center_generators(c: &Contraction, d: u32) -> MonomialAlgebra {
    let set = homotopy_center_set(c, d);
    MonomialAlgebra {
        label: AlgebraLabel::R,
        generators: minimal_generators_of_set(&set),
        degree_bound: Some(d),
    }
}

/// Minimal generators of a degree-truncated semigroup given by its elements:
/// those not expressible as a product of two non-unit elements.
pub fn minimal_generators_of_set(set: &MonomialSet) -> Vec<Monomial> {
    set.iter()
        .filter(|g| !g.is_one())
        .filter(|g| {
            !set.iter().any(|h| {
                !h.is_one() && *h != **g && g.checked_div(h).is_some_and(|r| set.contains(&r))
            })
        })
        .cloned()
        .collect()
}

pub fn sigma_divides(g: &Monomial) -> bool {
    g.sigma_divides()
}

pub fn divide_by_sigma(g: &Monomial) -> Result<Monomial> {
    g.divide_by_sigma()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealKind {
    M0,
    M0Tilde,
    Custom,
}

/// A monomial ideal of `R`, held as its set of monomials up to a degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialIdeal {
    pub kind: IdealKind,
    pub degree_bound: u32,
    pub monomials: MonomialSet,
}

/// `m_0`: all non-unit monomials of `R` (given as the truncated set `r`).
pub fn m0(r: &MonomialSet, degree_bound: u32) -> MonomialIdeal {
    MonomialIdeal {
        kind: IdealKind::M0,
        degree_bound,
        monomials: r.iter().filter(|m| !m.is_one()).cloned().collect(),
    }
}

/// `m̃_0`: the ideal of `R` generated by the monomials of `R` that are not
/// powers of `σ`. It can contain powers of `σ` as products.
pub fn m0_tilde(r: &MonomialSet, degree_bound: u32) -> MonomialIdeal {
    let gens: MonomialSet = r
        .iter()
        .filter(|m| m.sigma_power().is_none())
        .cloned()
        .collect();
    MonomialIdeal {
        kind: IdealKind::M0Tilde,
        degree_bound,
        monomials: product_up_to(&gens, r, degree_bound),
    }
}

/// Products `a * s` with `a` in `ideal`, `s` in `s_set`, of degree at most `d`.
pub fn product_up_to(ideal: &MonomialSet, s_set: &MonomialSet, d: u32) -> MonomialSet {
    let mut out = MonomialSet::new();
    for a in ideal {
        for s in s_set {
            if a.degree() + s.degree() <= d {
                out.insert(a.mul(s));
            }
        }
    }
    out
}
