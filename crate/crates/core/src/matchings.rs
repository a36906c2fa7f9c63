//! Perfect and simple matchings.

use serde::Serialize;

use crate::error::{DomainError, ResourceError, Result};
use crate::par::{self, Execution};
use crate::quiver::{ArrowId, DimerQuiver};

pub const DEFAULT_CAP: usize = 100_000;

/// An arrow set meeting every face boundary exactly once. Arrows are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PerfectMatching {
    pub arrows: Vec<ArrowId>,
}

impl PerfectMatching {
    pub fn new(mut arrows: Vec<ArrowId>) -> Self {
        arrows.sort_unstable();
        arrows.dedup();
        PerfectMatching { arrows }
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.arrows.binary_search(&a).is_ok()
    }
}

/// Checks that `d` meets every face exactly once.
pub fn check_perfect(q: &DimerQuiver, d: &PerfectMatching) -> Result<()> {
    if let Some(&a) = d.arrows.iter().find(|&&a| a >= q.num_arrows()) {
        return Err(DomainError::NoSuchArrow(a).into());
    }
    for f in q.faces() {
        let count = f.boundary.iter().filter(|&&a| d.contains(a)).count();
        if count != 1 {
            return Err(DomainError::NotPerfect { face: f.id, count }.into());
        }
    }
    Ok(())
}

pub fn enumerate_perfect_matchings(q: &DimerQuiver, cap: usize) -> Result<Vec<PerfectMatching>> {
    enumerate_perfect_matchings_with(q, cap, Execution::default())
}

/// Exact cover of faces by arrows (each arrow covers the faces it lies on),
/// branching on the uncovered face with the fewest usable arrows. With
/// parallel execution the branches of the first choice run concurrently; the
/// result is sorted either way.
pub fn enumerate_perfect_matchings_with(
    q: &DimerQuiver,
    cap: usize,
    exec: Execution,
) -> Result<Vec<PerfectMatching>> {
    if q.num_faces() == 0 {
        return Err(DomainError::EmptyQuiver.into());
    }
    let search = CoverSearch::new(q);
    let mut state = CoverState {
        covered: vec![false; q.num_faces()],
        chosen: Vec::new(),
    };
    let mut out = Vec::new();
    let Some(first) = search.pick_face(&state.covered) else {
        if q.num_faces() == 0 {
            return Ok(vec![]);
        }
        // Every face already covered: the empty set.
        return Ok(vec![PerfectMatching::new(vec![])]);
    };
    let options = search.usable(first, &state.covered);
    let branches = par::map(exec, &options, |&a| {
        let mut st = CoverState {
            covered: state.covered.clone(),
            chosen: vec![],
        };
        st.take(&search, a);
        let mut found = Vec::new();
        let ok = search.run(&mut st, &mut found, cap);
        (ok, found)
    });
    for (ok, found) in branches {
        if !ok || out.len() + found.len() > cap {
            return Err(ResourceError::MatchingCap { cap }.into());
        }
        out.extend(found);
    }
    state.chosen.clear();
    out.sort();
    out.dedup();
    Ok(out)
}

struct CoverSearch<'a> {
    q: &'a DimerQuiver,
    /// Distinct faces of each arrow.
    arrow_faces: Vec<Vec<usize>>,
}

struct CoverState {
    covered: Vec<bool>,
    chosen: Vec<ArrowId>,
}

impl CoverState {
    fn take(&mut self, s: &CoverSearch, a: ArrowId) {
        for &f in &s.arrow_faces[a] {
            self.covered[f] = true;
        }
        self.chosen.push(a);
    }

    fn undo(&mut self, s: &CoverSearch, a: ArrowId) {
        for &f in &s.arrow_faces[a] {
            self.covered[f] = false;
        }
        self.chosen.pop();
    }
}

impl<'a> CoverSearch<'a> {
    fn new(q: &'a DimerQuiver) -> Self {
        let arrow_faces = (0..q.num_arrows())
            .map(|a| {
                let mut fs: Vec<usize> = q.occurrences(a).iter().map(|&(f, _)| f).collect();
                fs.sort_unstable();
                fs.dedup();
                fs
            })
            .collect();
        CoverSearch { q, arrow_faces }
    }

    fn usable(&self, f: usize, covered: &[bool]) -> Vec<ArrowId> {
        let mut v: Vec<ArrowId> = self
            .q
            .face(f)
            .boundary
            .iter()
            .copied()
            .filter(|&a| self.arrow_faces[a].iter().all(|&g| !covered[g]))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn pick_face(&self, covered: &[bool]) -> Option<usize> {
        (0..covered.len())
            .filter(|&f| !covered[f])
            .min_by_key(|&f| (self.usable(f, covered).len(), f))
    }

    /// Returns false when the cap is exceeded.
    fn run(&self, st: &mut CoverState, out: &mut Vec<PerfectMatching>, cap: usize) -> bool {
        let Some(f) = self.pick_face(&st.covered) else {
            out.push(PerfectMatching::new(st.chosen.clone()));
            return out.len() <= cap;
        };
        for a in self.usable(f, &st.covered) {
            st.take(self, a);
            let ok = self.run(st, out, cap);
            st.undo(self, a);
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Whether `Q_1 \ D` is strongly connected on all vertices.
pub fn is_simple_matching(q: &DimerQuiver, d: &PerfectMatching) -> Result<bool> {
    check_perfect(q, d)?;
    let keep: Vec<bool> = (0..q.num_arrows()).map(|a| !d.contains(a)).collect();
    Ok(strongly_connected(q, &keep))
}

/// Strong connectivity of the subquiver with arrows `keep`, by forward and
/// backward reachability from vertex 0.
pub fn strongly_connected(q: &DimerQuiver, keep: &[bool]) -> bool {
    let n = q.num_vertices();
    if n == 0 {
        return true;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            let arrows = if forward {
                q.out_arrows(v)
            } else {
                q.in_arrows(v)
            };
            for &a in arrows {
                if !keep[a] {
                    continue;
                }
                let w = if forward {
                    q.arrow(a).head
                } else {
                    q.arrow(a).tail
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nondegeneracy {
    pub nondegenerate: bool,
    pub uncovered: Vec<ArrowId>,
}

pub fn is_nondegenerate(q: &DimerQuiver, cap: usize) -> Result<Nondegeneracy> {
    let all = enumerate_perfect_matchings(q, cap)?;
    let mut covered = vec![false; q.num_arrows()];
    for d in &all {
        for &a in &d.arrows {
            covered[a] = true;
        }
    }
    let uncovered: Vec<ArrowId> = (0..q.num_arrows()).filter(|&a| !covered[a]).collect();
    Ok(Nondegeneracy {
        nondegenerate: uncovered.is_empty(),
        uncovered,
    })
}

/// The simple matchings of a quiver, in lexicographic order of their sorted
/// arrow lists. Index `k` is the variable `x_k` of the monomial algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingCatalog {
    pub simple: Vec<PerfectMatching>,
    pub all_count: usize,
    /// For each arrow, the simple matchings containing it.
    #[serde(skip)]
    pub arrow_vars: Vec<Vec<usize>>,
}

impl MatchingCatalog {
    pub fn build(q: &DimerQuiver, cap: usize) -> Result<Self> {
        let all = enumerate_perfect_matchings(q, cap)?;
        let mut simple = Vec::new();
        for d in &all {
            if is_simple_matching(q, d)? {
                simple.push(d.clone());
            }
        }
        let mut arrow_vars = vec![Vec::new(); q.num_arrows()];
        for (k, d) in simple.iter().enumerate() {
            for &a in &d.arrows {
                arrow_vars[a].push(k);
            }
        }
        Ok(MatchingCatalog {
            simple,
            all_count: all.len(),
            arrow_vars,
        })
    }

    pub fn nvars(&self) -> usize {
        self.simple.len()
    }

    pub fn names(&self) -> Vec<String> {
        crate::monomial::variable_names(self.nvars())
    }
}
