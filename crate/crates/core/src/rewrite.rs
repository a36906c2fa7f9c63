//! The relations `I` as a rewriting system on arrow words, and bounded
//! decision of path equality modulo `I`.
//!
//! For an arrow `a` lying on faces `F1` and `F2`, rotating each boundary so
//! that `a` comes first and dropping `a` leaves two arcs from `h(a)` to `t(a)`.
//! The relation identifies the two arcs, and since it is binomial, equality
//! modulo `I` is the congruence generated by swapping one arc for the other
//! inside a word.
//!
//! Every rewrite keeps the endpoints, the homology class and the number of
//! times the word meets each perfect matching. On a nondegenerate quiver each
//! arrow lies in some perfect matching, so the total matching count bounds
//! the word length and every class is finite.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{DomainError, Result};
use crate::matchings::{enumerate_perfect_matchings, DEFAULT_CAP};
use crate::quiver::{word_homology, ArrowId, DimerQuiver, HomVec, PathWord, VertexId};
use crate::verdict::Verdict;

pub const DEFAULT_MAX_STATES: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub arrow: ArrowId,
    pub sides: [Vec<ArrowId>; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_word_length: usize,
    pub max_states: usize,
}

impl SearchBounds {
    pub fn new(max_word_length: usize, max_states: usize) -> Self {
        SearchBounds {
            max_word_length: max_word_length.max(1),
            max_states: max_states.max(1),
        }
    }
}

/// One rewrite: replace `sides[from]` of `rule` at `position` by `sides[1 - from]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub position: usize,
    pub rule: usize,
    pub from: usize,
}

/// Quantities preserved by every rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordInvariant {
    pub tail: VertexId,
    pub head: VertexId,
    pub homology: HomVec,
    pub matching_counts: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    quiver: DimerQuiver,
    rules: Vec<Rule>,
    /// (rule, side) pairs indexed by the first arrow of the side.
    by_first: Vec<Vec<(usize, usize)>>,
    /// Perfect matchings containing each arrow; empty when enumeration hit its cap.
    arrow_matchings: Vec<Vec<usize>>,
    num_matchings: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotEqualReason {
    Endpoints,
    Homology,
    MatchingCounts,
    /// The closure of one side was explored completely without meeting the other.
    ClassExhausted {
        class_size: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PathEquality {
    Equal { witness: Vec<RewriteStep> },
    NotEqual(NotEqualReason),
    Unknown { states: usize, length_pruned: bool },
}

impl PathEquality {
    pub fn verdict(&self) -> Verdict {
        match self {
            PathEquality::Equal { .. } => Verdict::Yes,
            PathEquality::NotEqual(_) => Verdict::No,
            PathEquality::Unknown { .. } => Verdict::Unknown,
        }
    }
}

pub fn build_relations(q: &DimerQuiver) -> RewriteSystem {
    let mut rules = Vec::with_capacity(q.num_arrows());
    for a in 0..q.num_arrows() {
        let occ = q.occurrences(a);
        let mut sides: Vec<Vec<ArrowId>> = occ
            .iter()
            .take(2)
            .map(|&(f, pos)| q.rotated_boundary(f, pos)[1..].to_vec())
            .collect();
        while sides.len() < 2 {
            sides.push(sides.first().cloned().unwrap_or_default());
        }
        let second = sides.pop().unwrap();
        let first = sides.pop().unwrap();
        rules.push(Rule {
            arrow: a,
            sides: [first, second],
        });
    }
    let mut by_first = vec![Vec::new(); q.num_arrows()];
    for (r, rule) in rules.iter().enumerate() {
        if rule.sides[0] == rule.sides[1] {
            continue;
        }
        for s in 0..2 {
            if let Some(&a) = rule.sides[s].first() {
                by_first[a].push((r, s));
            }
        }
    }
    let (arrow_matchings, num_matchings) = match enumerate_perfect_matchings(q, DEFAULT_CAP) {
        Ok(all) => {
            let mut per = vec![Vec::new(); q.num_arrows()];
            for (k, d) in all.iter().enumerate() {
                for &a in &d.arrows {
                    per[a].push(k);
                }
            }
            (per, all.len())
        }
        Err(_) => (vec![Vec::new(); q.num_arrows()], 0),
    };
    RewriteSystem {
        quiver: q.clone(),
        rules,
        by_first,
        arrow_matchings,
        num_matchings,
    }
}

impl RewriteSystem {
    pub fn quiver(&self) -> &DimerQuiver {
        &self.quiver
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn invariant(&self, p: &PathWord) -> WordInvariant {
        let mut counts = vec![0u32; self.num_matchings];
        for &a in &p.arrows {
            for &k in &self.arrow_matchings[a] {
                counts[k] += 1;
            }
        }
        WordInvariant {
            tail: p.base,
            head: p.head(&self.quiver),
            homology: word_homology(&self.quiver, &p.arrows),
            matching_counts: counts,
        }
    }

    /// Number of perfect matchings containing `a`.
    pub fn weight(&self, a: ArrowId) -> usize {
        self.arrow_matchings[a].len()
    }

    /// Upper bound on the length of any word equal to `p`, when every arrow
    /// lies in a perfect matching.
    pub fn class_length_bound(&self, p: &PathWord) -> Option<usize> {
        let min_w = (0..self.quiver.num_arrows())
            .map(|a| self.weight(a))
            .min()?;
        if min_w == 0 {
            return None;
        }
        let total: usize = p.arrows.iter().map(|&a| self.weight(a)).sum();
        Some(total / min_w)
    }

    /// Default bounds for comparing words of length up to `len`: the larger of
    /// `len + 2 * longest face` and the matching-count length bound.
    pub fn default_bounds(&self, p: &PathWord) -> SearchBounds {
        let base = p.len() + 2 * self.quiver.longest_face();
        let weight = self.class_length_bound(p).unwrap_or(0);
        SearchBounds::new(base.max(weight), DEFAULT_MAX_STATES)
    }

    /// Every word obtained from `word` by one rewrite, with the step taken.
    pub fn neighbors(&self, word: &[ArrowId]) -> Vec<(RewriteStep, Vec<ArrowId>)> {
        let mut out = Vec::new();
        for pos in 0..word.len() {
            for &(r, s) in &self.by_first[word[pos]] {
                let from = &self.rules[r].sides[s];
                if word.len() - pos >= from.len() && word[pos..pos + from.len()] == from[..] {
                    let to = &self.rules[r].sides[1 - s];
                    let mut next = Vec::with_capacity(word.len() - from.len() + to.len());
                    next.extend_from_slice(&word[..pos]);
                    next.extend_from_slice(to);
                    next.extend_from_slice(&word[pos + from.len()..]);
                    out.push((
                        RewriteStep {
                            position: pos,
                            rule: r,
                            from: s,
                        },
                        next,
                    ));
                }
            }
        }
        out
    }

    /// Applies one step, checking that the rule side is present.
    pub fn apply(&self, word: &[ArrowId], step: RewriteStep) -> Result<Vec<ArrowId>> {
        let rule = self
            .rules
            .get(step.rule)
            .ok_or_else(|| DomainError::Other(format!("no rule {}", step.rule)))?;
        let from = &rule.sides[step.from.min(1)];
        let end = step.position + from.len();
        if end > word.len() || word[step.position..end] != from[..] {
            return Err(DomainError::Other(format!(
                "rule {} side {} does not occur at position {}",
                step.rule, step.from, step.position
            ))
            .into());
        }
        let mut next = word[..step.position].to_vec();
        next.extend_from_slice(&rule.sides[1 - step.from.min(1)]);
        next.extend_from_slice(&word[end..]);
        Ok(next)
    }

    /// Replays a witness from `p`, checking after every step that endpoints
    /// and homology are unchanged. Returns the final path.
    pub fn replay(&self, p: &PathWord, witness: &[RewriteStep]) -> Result<PathWord> {
        let start = self.invariant(p);
        let mut cur = p.clone();
        for &step in witness {
            cur.arrows = self.apply(&cur.arrows, step)?;
            cur.check(&self.quiver)?;
            let inv = self.invariant(&cur);
            if inv.tail != start.tail || inv.head != start.head || inv.homology != start.homology {
                return Err(
                    DomainError::Other("rewrite changed endpoints or homology".into()).into(),
                );
            }
        }
        Ok(cur)
    }
}

struct Side {
    parent: HashMap<Vec<ArrowId>, Option<(Vec<ArrowId>, RewriteStep)>>,
    frontier: VecDeque<Vec<ArrowId>>,
    pruned: bool,
}

impl Side {
    fn new(start: Vec<ArrowId>) -> Self {
        let mut parent = HashMap::new();
        parent.insert(start.clone(), None);
        Side {
            parent,
            frontier: VecDeque::from([start]),
            pruned: false,
        }
    }

    /// Steps from the root to `w`.
    fn path_to(&self, w: &[ArrowId]) -> Vec<(Vec<ArrowId>, RewriteStep)> {
        let mut steps = Vec::new();
        let mut cur = w.to_vec();
        while let Some(Some((prev, step))) = self.parent.get(&cur) {
            steps.push((prev.clone(), *step));
            cur = prev.clone();
        }
        steps.reverse();
        steps
    }
}

/// Bounded bidirectional breadth-first search over the rewrite closure.
pub fn paths_equal(
    rs: &RewriteSystem,
    p: &PathWord,
    q: &PathWord,
    b: &SearchBounds,
) -> PathEquality {
    if p == q {
        return PathEquality::Equal { witness: vec![] };
    }
    let q_ok = p.check(&rs.quiver).is_ok() && q.check(&rs.quiver).is_ok();
    let (ip, iq) = (rs.invariant(p), rs.invariant(q));
    if !q_ok || ip.tail != iq.tail || ip.head != iq.head {
        return PathEquality::NotEqual(NotEqualReason::Endpoints);
    }
    if ip.homology != iq.homology {
        return PathEquality::NotEqual(NotEqualReason::Homology);
    }
    if ip.matching_counts != iq.matching_counts {
        return PathEquality::NotEqual(NotEqualReason::MatchingCounts);
    }
    let mut sides = [Side::new(p.arrows.clone()), Side::new(q.arrows.clone())];
    loop {
        let states = sides[0].parent.len() + sides[1].parent.len();
        for k in 0..2 {
            if sides[k].frontier.is_empty() && !sides[k].pruned {
                return PathEquality::NotEqual(NotEqualReason::ClassExhausted {
                    class_size: sides[k].parent.len(),
                });
            }
        }
        if sides[0].frontier.is_empty() && sides[1].frontier.is_empty() {
            return PathEquality::Unknown {
                states,
                length_pruned: true,
            };
        }
        let k = if sides[1].frontier.is_empty()
            || (!sides[0].frontier.is_empty() && sides[0].frontier.len() <= sides[1].frontier.len())
        {
            0
        } else {
            1
        };
        let layer: Vec<Vec<ArrowId>> = sides[k].frontier.drain(..).collect();
        for w in layer {
            for (step, next) in rs.neighbors(&w) {
                if next.len() > b.max_word_length {
                    sides[k].pruned = true;
                    continue;
                }
                if sides[k].parent.contains_key(&next) {
                    continue;
                }
                sides[k]
                    .parent
                    .insert(next.clone(), Some((w.clone(), step)));
                if sides[1 - k].parent.contains_key(&next) {
                    return PathEquality::Equal {
                        witness: join_witness(rs, &sides, &next),
                    };
                }
                sides[k].frontier.push_back(next);
                if sides[0].parent.len() + sides[1].parent.len() > b.max_states {
                    return PathEquality::Unknown {
                        states: sides[0].parent.len() + sides[1].parent.len(),
                        length_pruned: sides[0].pruned || sides[1].pruned,
                    };
                }
            }
        }
    }
}

/// Witness from the root of side 0 through `meet` to the root of side 1.
fn join_witness(rs: &RewriteSystem, sides: &[Side; 2], meet: &[ArrowId]) -> Vec<RewriteStep> {
    let mut steps: Vec<RewriteStep> = sides[0].path_to(meet).into_iter().map(|(_, s)| s).collect();
    // Side 1 records steps from its root outward; walk them backwards, each
    // applied in reverse (swap the rule sides).
    let back = sides[1].path_to(meet);
    for (_, step) in back.into_iter().rev() {
        steps.push(RewriteStep {
            position: step.position,
            rule: step.rule,
            from: 1 - step.from,
        });
    }
    debug_assert!(rs.rules.len() >= steps.iter().map(|s| s.rule + 1).max().unwrap_or(0));
    steps
}

#[derive(Clone, Debug)]
struct ClassRec {
    parent: usize,
    complete: bool,
    size: usize,
}

/// Memoised equivalence classes modulo `I`. Each exploration runs to
/// completion when its class fits the bounds, and every word seen is mapped
/// to its class; classes met during an exploration are merged.
pub struct ClassCache<'a> {
    rs: &'a RewriteSystem,
    bounds: SearchBounds,
    word_class: HashMap<(VertexId, Vec<ArrowId>), usize>,
    classes: Vec<ClassRec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub id: usize,
    pub complete: bool,
}

impl<'a> ClassCache<'a> {
    pub fn new(rs: &'a RewriteSystem, bounds: SearchBounds) -> Self {
        ClassCache {
            rs,
            bounds,
            word_class: HashMap::new(),
            classes: Vec::new(),
        }
    }

    pub fn system(&self) -> &RewriteSystem {
        self.rs
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.classes[c].parent != c {
            let gp = self.classes[self.classes[c].parent].parent;
            self.classes[c].parent = gp;
            c = gp;
        }
        c
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return a;
        }
        let (big, small) = if self.classes[a].size >= self.classes[b].size {
            (a, b)
        } else {
            (b, a)
        };
        self.classes[small].parent = big;
        self.classes[big].size += self.classes[small].size;
        self.classes[big].complete |= self.classes[small].complete;
        big
    }

    /// The class of `p`, exploring its closure if not seen before.
    pub fn class_of(&mut self, p: &PathWord) -> ClassInfo {
        let key = (p.base, p.arrows.clone());
        if let Some(&c) = self.word_class.get(&key) {
            let r = self.find(c);
            if self.classes[r].complete {
                return ClassInfo {
                    id: r,
                    complete: true,
                };
            }
        }
        let id = match self.word_class.get(&key) {
            Some(&c) => self.find(c),
            None => {
                let id = self.classes.len();
                self.classes.push(ClassRec {
                    parent: id,
                    complete: false,
                    size: 1,
                });
                self.word_class.insert(key.clone(), id);
                id
            }
        };
        let mut root = id;
        let mut seen: HashMap<Vec<ArrowId>, ()> = HashMap::new();
        seen.insert(p.arrows.clone(), ());
        let mut queue = VecDeque::from([p.arrows.clone()]);
        let mut pruned = false;
        while let Some(w) = queue.pop_front() {
            for (_, next) in self.rs.neighbors(&w) {
                if next.len() > self.bounds.max_word_length {
                    pruned = true;
                    continue;
                }
                if seen.contains_key(&next) {
                    continue;
                }
                let nkey = (p.base, next.clone());
                if let Some(&c) = self.word_class.get(&nkey) {
                    let r = self.find(c);
                    if r != self.find(root) {
                        let was_complete = self.classes[r].complete;
                        root = self.union(root, r);
                        if was_complete {
                            return ClassInfo {
                                id: root,
                                complete: true,
                            };
                        }
                    }
                } else {
                    self.word_class.insert(nkey, root);
                    let r = self.find(root);
                    self.classes[r].size += 1;
                }
                seen.insert(next.clone(), ());
                queue.push_back(next);
                if seen.len() > self.bounds.max_states {
                    pruned = true;
                    queue.clear();
                    break;
                }
            }
        }
        let r = self.find(root);
        if !pruned {
            self.classes[r].complete = true;
        }
        ClassInfo {
            id: r,
            complete: self.classes[r].complete,
        }
    }

    /// Equality of two paths modulo `I`, three-valued.
    pub fn same(&mut self, p: &PathWord, q: &PathWord) -> Verdict {
        if p == q {
            return Verdict::Yes;
        }
        if self.rs.invariant(p) != self.rs.invariant(q) {
            return Verdict::No;
        }
        let cp = self.class_of(p);
        let cq = self.class_of(q);
        let (rp, rq) = (self.find(cp.id), self.find(cq.id));
        if rp == rq {
            Verdict::Yes
        } else if self.classes[rp].complete || self.classes[rq].complete {
            Verdict::No
        } else {
            match paths_equal(self.rs, p, q, &self.bounds) {
                PathEquality::Equal { .. } => {
                    self.union(rp, rq);
                    Verdict::Yes
                }
                PathEquality::NotEqual(_) => Verdict::No,
                PathEquality::Unknown { .. } => Verdict::Unknown,
            }
        }
    }

    /// Current root id of a class (after merges).
    pub fn root(&mut self, id: usize) -> usize {
        self.find(id)
    }

    pub fn is_complete(&mut self, id: usize) -> bool {
        let r = self.find(id);
        self.classes[r].complete
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::unit_cycle;
    use proptest::prelude::*;

    #[test]
    fn rule_side_lengths_and_endpoints() {
        for fx in fixtures::all_fixtures() {
            let q = &fx.quiver;
            let rs = build_relations(q);
            assert_eq!(rs.rules().len(), q.num_arrows());
            for rule in rs.rules() {
                let a = q.arrow(rule.arrow);
                let mut lens: Vec<usize> = rule.sides.iter().map(|s| s.len()).collect();
                let mut faces: Vec<usize> = q
                    .occurrences(rule.arrow)
                    .iter()
                    .map(|&(f, _)| q.face(f).boundary.len() - 1)
                    .collect();
                lens.sort();
                faces.sort();
                assert_eq!(lens, faces);
                for side in &rule.sides {
                    let p = PathWord::from_arrows(q, side.clone()).unwrap();
                    assert_eq!(p.base, a.head);
                    assert_eq!(p.head(q), a.tail);
                }
            }
        }
    }

    #[test]
    fn conifold_rules_have_length_three() {
        let q = fixtures::conifold();
        let rs = build_relations(&q);
        assert!(rs
            .rules()
            .iter()
            .all(|r| r.sides.iter().all(|s| s.len() == 3)));
    }

    #[test]
    fn bigon_gives_length_one_side() {
        let c = fixtures::fig_iso_r().contraction().unwrap();
        let rs = build_relations(&c.target);
        assert!(rs
            .rules()
            .iter()
            .any(|r| r.sides.iter().any(|s| s.len() == 1)));
    }

    #[test]
    fn unit_cycles_at_a_vertex_are_equal() {
        for fx in fixtures::all_fixtures() {
            let q = &fx.quiver;
            let rs = build_relations(q);
            for f in q.faces() {
                for g in q.faces() {
                    for &a in &f.boundary {
                        let i = q.arrow(a).tail;
                        let Ok(sg) = unit_cycle(q, i, Some(g.id)) else {
                            continue;
                        };
                        let sf = unit_cycle(q, i, Some(f.id)).unwrap();
                        let b = rs.default_bounds(&sf);
                        match paths_equal(&rs, &sf, &sg, &b) {
                            PathEquality::Equal { witness } => {
                                assert_eq!(rs.replay(&sf, &witness).unwrap(), sg);
                            }
                            other => panic!("{}: {:?}", fx.name, other),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unit_cycle_sum_is_central() {
        for fx in fixtures::all_fixtures() {
            let q = &fx.quiver;
            let rs = build_relations(q);
            for arrow in q.arrows() {
                let a = PathWord::from_arrows(q, vec![arrow.id]).unwrap();
                let left = unit_cycle(q, arrow.tail, None).unwrap().then(&a);
                let right = a.then(&unit_cycle(q, arrow.head, None).unwrap());
                let b = rs.default_bounds(&left);
                assert_eq!(paths_equal(&rs, &left, &right, &b).verdict(), Verdict::Yes);
            }
        }
    }

    #[test]
    fn trivial_and_prefilters() {
        let q = fixtures::conifold();
        let rs = build_relations(&q);
        let b = SearchBounds::new(10, 1000);
        let e0 = PathWord::trivial(0);
        assert_eq!(
            paths_equal(&rs, &e0, &e0, &b),
            PathEquality::Equal { witness: vec![] }
        );
        assert_eq!(
            paths_equal(&rs, &e0, &PathWord::trivial(1), &b),
            PathEquality::NotEqual(NotEqualReason::Endpoints)
        );
        let s = unit_cycle(&q, 0, None).unwrap();
        assert!(matches!(
            paths_equal(&rs, &e0, &s, &b),
            PathEquality::NotEqual(_)
        ));
    }

    #[test]
    fn noncancellative_pair_is_not_equal() {
        let fx = fixtures::fig_noncancellative_central();
        let q = &fx.quiver;
        let rs = build_relations(q);
        let (p, r) = fixtures::deformation_p_q(q);
        assert_eq!(rs.invariant(&p), rs.invariant(&r));
        let b = SearchBounds::new(20, DEFAULT_MAX_STATES);
        assert!(matches!(
            paths_equal(&rs, &p, &r, &b),
            PathEquality::NotEqual(NotEqualReason::ClassExhausted { .. })
        ));
    }

    #[test]
    fn class_cache_agrees_with_paths_equal() {
        let q = fixtures::fig_deformation().quiver;
        let rs = build_relations(&q);
        let b = SearchBounds::new(16, DEFAULT_MAX_STATES);
        let mut cache = ClassCache::new(&rs, b);
        let cycles =
            crate::cycles::enumerate_cycles(&q, 1, 5, &crate::cycles::CycleFilter::All, 100_000)
                .unwrap();
        for x in &cycles {
            for y in &cycles {
                let direct = paths_equal(&rs, x, y, &b).verdict();
                assert_eq!(cache.same(x, y), direct, "{x} {y}");
            }
        }
    }

    fn random_walk(q: &DimerQuiver, start: usize, choices: &[usize]) -> PathWord {
        let mut p = PathWord::trivial(start % q.num_vertices());
        for &c in choices {
            let v = p.head(q);
            let outs = q.out_arrows(v);
            p.arrows.push(outs[c % outs.len()]);
        }
        p
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn witnesses_replay_and_preserve_invariants(
            start in 0usize..10,
            choices in proptest::collection::vec(0usize..8, 1..7),
            path in proptest::collection::vec((0usize..8, 0usize..2), 1..6),
        ) {
            let q = fixtures::fig_iso_r().quiver;
            let rs = build_relations(&q);
            let p = random_walk(&q, start, &choices);
            // Random rewrite walk from p.
            let mut w = p.arrows.clone();
            for (pick, _) in path {
                let n = rs.neighbors(&w);
                if n.is_empty() { break; }
                w = n[pick % n.len()].1.clone();
            }
            let r = PathWord { base: p.base, arrows: w };
            prop_assert_eq!(rs.invariant(&p), rs.invariant(&r));
            let b = rs.default_bounds(&p);
            match paths_equal(&rs, &p, &r, &b) {
                PathEquality::Equal { witness } => {
                    prop_assert_eq!(rs.replay(&p, &witness).unwrap(), r.clone());
                    // Symmetry.
                    prop_assert_eq!(paths_equal(&rs, &r, &p, &b).verdict(), Verdict::Yes);
                }
                other => prop_assert!(false, "expected Equal, got {:?}", other),
            }
        }
    }
}
