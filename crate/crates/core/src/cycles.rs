//! Cycle enumeration with the cycle-class filters, and the search for
//! non-cancellative pairs.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::contraction::Contraction;
use crate::error::{ResourceError, Result};
use crate::monomial::Monomial;
use crate::quiver::{DimerQuiver, HomVec, PathWord, VertexId};
use crate::rewrite::{
    build_relations, paths_equal, ClassCache, PathEquality, RewriteStep, SearchBounds,
};
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "filter", content = "u", rename_all = "snake_case")]
pub enum CycleFilter {
    All,
    VertexSimple,
    HomologyClass(HomVec),
    /// Cycles whose square lifts to the covering quiver without a cyclic subpath.
    HatC,
}

/// Whether the lift of `p^2` visits no lifted vertex twice (apart from its
/// two endpoints). Lifted vertex = (vertex, accumulated homology).
pub fn lift_of_square_is_simple(q: &DimerQuiver, p: &PathWord) -> bool {
    if p.is_empty() || !p.is_cycle(q) {
        return false;
    }
    let sq = p.power(2);
    let n = sq.len();
    let mut seen = HashSet::new();
    let mut at = (sq.base, HomVec::ZERO);
    seen.insert(at);
    for (k, &a) in sq.arrows.iter().enumerate() {
        let arrow = q.arrow(a);
        at = (arrow.head, at.1 + arrow.homology);
        if k + 1 == n {
            // Endpoint coincides with the start only if the lift is closed.
            return at != (sq.base, HomVec::ZERO);
        }
        if !seen.insert(at) {
            return false;
        }
    }
    true
}

/// All cycles at `i` of length `1..=max_len` passing `filter`, sorted by
/// (length, arrows). `max_states` bounds the number of search nodes.
pub fn enumerate_cycles(
    q: &DimerQuiver,
    i: VertexId,
    max_len: usize,
    filter: &CycleFilter,
    max_states: usize,
) -> Result<Vec<PathWord>> {
    let mut out = Vec::new();
    if i >= q.num_vertices() {
        return Err(crate::error::DomainError::NoSuchVertex {
            vertex: i,
            vertices: q.num_vertices(),
        }
        .into());
    }
    let mut word = Vec::new();
    let mut on_path = vec![false; q.num_vertices()];
    let mut lifted: HashSet<(VertexId, HomVec)> = HashSet::new();
    lifted.insert((i, HomVec::ZERO));
    on_path[i] = true;
    let mut states = 0usize;
    let mut walker = Walker {
        q,
        i,
        max_len,
        filter,
        max_states,
    };
    walker.dfs(
        i,
        HomVec::ZERO,
        &mut word,
        &mut on_path,
        &mut lifted,
        &mut states,
        &mut out,
    )?;
    out.sort_by(|a: &PathWord, b: &PathWord| (a.len(), &a.arrows).cmp(&(b.len(), &b.arrows)));
    Ok(out)
}

struct Walker<'a> {
    q: &'a DimerQuiver,
    i: VertexId,
    max_len: usize,
    filter: &'a CycleFilter,
    max_states: usize,
}

impl Walker<'_> {
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &mut self,
        v: VertexId,
        hom: HomVec,
        word: &mut Vec<usize>,
        on_path: &mut [bool],
        lifted: &mut HashSet<(VertexId, HomVec)>,
        states: &mut usize,
        out: &mut Vec<PathWord>,
    ) -> Result<()> {
        if word.len() == self.max_len {
            return Ok(());
        }
        for &a in self.q.out_arrows(v) {
            *states += 1;
            if *states > self.max_states {
                return Err(ResourceError::StateBudget {
                    max_states: self.max_states,
                    during: "cycle enumeration".into(),
                }
                .into());
            }
            let arrow = self.q.arrow(a);
            let w = arrow.head;
            let h = hom + arrow.homology;
            word.push(a);
            if w == self.i {
                let p = PathWord {
                    base: self.i,
                    arrows: word.clone(),
                };
                let keep = match self.filter {
                    CycleFilter::All | CycleFilter::VertexSimple => true,
                    CycleFilter::HomologyClass(u) => h == *u,
                    CycleFilter::HatC => lift_of_square_is_simple(self.q, &p),
                };
                if keep {
                    out.push(p);
                }
            }
            let extend = match self.filter {
                CycleFilter::VertexSimple => !on_path[w],
                CycleFilter::HatC => !lifted.contains(&(w, h)),
                _ => true,
            };
            if extend {
                let newly = !on_path[w];
                on_path[w] = true;
                let inserted = lifted.insert((w, h));
                self.dfs(w, h, word, on_path, lifted, states, out)?;
                if inserted {
                    lifted.remove(&(w, h));
                }
                if newly {
                    on_path[w] = false;
                }
            }
            word.pop();
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DedupedCycles {
    pub representatives: Vec<PathWord>,
    /// True when a comparison involving this representative came back Unknown.
    pub flagged: Vec<bool>,
}

/// Collapses cycles equal modulo `I`, keeping the first of each class.
/// Unknown comparisons keep both cycles and flag them.
pub fn dedup_mod_i(cycles: &[PathWord], cache: &mut ClassCache) -> DedupedCycles {
    let mut reps: Vec<PathWord> = Vec::new();
    let mut flagged: Vec<bool> = Vec::new();
    'outer: for c in cycles {
        let mut unsure = false;
        for (k, r) in reps.iter().enumerate() {
            match cache.same(c, r) {
                Verdict::Yes => continue 'outer,
                Verdict::Unknown => {
                    unsure = true;
                    flagged[k] = true;
                }
                Verdict::No => {}
            }
        }
        reps.push(c.clone());
        flagged.push(unsure);
    }
    DedupedCycles {
        representatives: reps,
        flagged,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContextSide {
    /// `r` is traversed before the cycles: `r·p = r·q` in traversal order.
    Before,
    /// `r` is traversed after the cycles.
    After,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoncancellativePair {
    pub vertex: VertexId,
    pub p: PathWord,
    pub q: PathWord,
    pub r: PathWord,
    pub side: ContextSide,
    /// Rewrites taking the extended `p` to the extended `q`.
    pub witness: Vec<RewriteStep>,
    /// Size of the fully explored class of `p`, which does not contain `q`.
    pub p_class_size: usize,
    pub image: Option<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PairSearch {
    Found(Box<NoncancellativePair>),
    NoneUpToBounds {
        max_cycle_length: usize,
        candidate_groups: usize,
    },
    Unknown {
        max_cycle_length: usize,
        unknown_comparisons: usize,
    },
}

/// Looks for cycles `p != q` at one vertex with equal homology and equal
/// matching counts (hence equal image), together with a path `r` making them
/// equal after extension. Cycles have length at most half the word bound.
pub fn find_noncancellative_pair(
    q: &DimerQuiver,
    c: Option<&Contraction>,
    b: &SearchBounds,
) -> Result<PairSearch> {
    let rs = build_relations(q);
    let mut cache = ClassCache::new(&rs, *b);
    let max_cycle = (b.max_word_length / 2).max(1);
    let mut unknown = 0usize;
    let mut groups_with_pairs = 0usize;
    for len in 1..=max_cycle {
        for v in 0..q.num_vertices() {
            let cycles = match enumerate_cycles(q, v, len, &CycleFilter::All, b.max_states) {
                Ok(cs) => cs,
                Err(crate::Error::Resource(_)) => {
                    return Ok(PairSearch::Unknown {
                        max_cycle_length: len,
                        unknown_comparisons: unknown + 1,
                    })
                }
                Err(e) => return Err(e),
            };
            let mut groups: BTreeMap<_, Vec<PathWord>> = BTreeMap::new();
            for cyc in cycles {
                let inv = rs.invariant(&cyc);
                groups
                    .entry((inv.homology, inv.matching_counts))
                    .or_default()
                    .push(cyc);
            }
            for members in groups.values() {
                // Only pairs involving a cycle of the new length are new.
                if !members.iter().any(|m| m.len() == len) {
                    continue;
                }
                let deduped = dedup_mod_i(members, &mut cache);
                let reps = &deduped.representatives;
                if reps.len() < 2 {
                    continue;
                }
                groups_with_pairs += 1;
                for x in 0..reps.len() {
                    for y in x + 1..reps.len() {
                        let (p, r) = (&reps[x], &reps[y]);
                        if p.len().max(r.len()) != len {
                            continue;
                        }
                        if cache.same(p, r) != Verdict::No {
                            unknown += 1;
                            continue;
                        }
                        let room = b.max_word_length.saturating_sub(p.len().max(r.len()));
                        match search_context(q, &rs, &mut cache, p, r, room, b) {
                            ContextResult::Found(ctx, side, witness) => {
                                let p_class_size = match paths_equal(&rs, p, r, b) {
                                    PathEquality::NotEqual(
                                        crate::rewrite::NotEqualReason::ClassExhausted {
                                            class_size,
                                        },
                                    ) => class_size,
                                    _ => 0,
                                };
                                return Ok(PairSearch::Found(Box::new(NoncancellativePair {
                                    vertex: v,
                                    p: p.clone(),
                                    q: r.clone(),
                                    r: ctx,
                                    side,
                                    witness,
                                    p_class_size,
                                    image: c.map(|c| c.tau_psi(p)),
                                })));
                            }
                            ContextResult::None { unknown: u } => unknown += u,
                        }
                    }
                }
            }
        }
    }
    Ok(if unknown == 0 {
        PairSearch::NoneUpToBounds {
            max_cycle_length: max_cycle,
            candidate_groups: groups_with_pairs,
        }
    } else {
        PairSearch::Unknown {
            max_cycle_length: max_cycle,
            unknown_comparisons: unknown,
        }
    })
}

enum ContextResult {
    Found(PathWord, ContextSide, Vec<RewriteStep>),
    None { unknown: usize },
}

/// Paths `r` of length `1..=room` ending (or starting) at the base of `p`
/// with `r p = r q` (or `p r = q r`).
fn search_context(
    q: &DimerQuiver,
    rs: &crate::rewrite::RewriteSystem,
    cache: &mut ClassCache,
    p: &PathWord,
    r: &PathWord,
    room: usize,
    b: &SearchBounds,
) -> ContextResult {
    let v = p.base;
    let mut unknown = 0;
    // Paths ending at v, grown backwards, and paths starting at v.
    let mut before: Vec<PathWord> = vec![PathWord::trivial(v)];
    let mut after: Vec<PathWord> = vec![PathWord::trivial(v)];
    for _ in 0..room {
        let mut next_before = Vec::new();
        for w in &before {
            for &a in q.in_arrows(w.base) {
                let mut arrows = vec![a];
                arrows.extend_from_slice(&w.arrows);
                next_before.push(PathWord {
                    base: q.arrow(a).tail,
                    arrows,
                });
            }
        }
        let mut next_after = Vec::new();
        for w in &after {
            for &a in q.out_arrows(w.head(q)) {
                let mut arrows = w.arrows.clone();
                arrows.push(a);
                next_after.push(PathWord { base: v, arrows });
            }
        }
        for ctx in &next_before {
            let (x, y) = (ctx.then(p), ctx.then(r));
            match cache.same(&x, &y) {
                Verdict::Yes => {
                    if let PathEquality::Equal { witness } = paths_equal(rs, &x, &y, b) {
                        return ContextResult::Found(ctx.clone(), ContextSide::Before, witness);
                    }
                    unknown += 1;
                }
                Verdict::Unknown => unknown += 1,
                Verdict::No => {}
            }
        }
        for ctx in &next_after {
            let (x, y) = (p.then(ctx), r.then(ctx));
            match cache.same(&x, &y) {
                Verdict::Yes => {
                    if let PathEquality::Equal { witness } = paths_equal(rs, &x, &y, b) {
                        return ContextResult::Found(ctx.clone(), ContextSide::After, witness);
                    }
                    unknown += 1;
                }
                Verdict::Unknown => unknown += 1,
                Verdict::No => {}
            }
        }
        before = next_before;
        after = next_after;
    }
    ContextResult::None { unknown }
}
