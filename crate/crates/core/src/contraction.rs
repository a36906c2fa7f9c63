//! Arrow contractions `ψ: Q → Q'`, the monomial map `τ̄ψ`, cyclicity checks
//! and bigon reduction.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cycles::{enumerate_cycles, find_noncancellative_pair, CycleFilter, PairSearch};
use crate::error::{ContractionError, Result};
use crate::matchings::{MatchingCatalog, DEFAULT_CAP};
use crate::monomial::Monomial;
use crate::par::{self, Execution};
use crate::quiver::{validate_dimer, Arrow, ArrowId, DimerQuiver, HomVec, PathWord, VertexId};
use crate::rewrite::SearchBounds;
use crate::semigroup::{generated_up_to, AlgebraLabel, MonomialAlgebra};
use crate::verdict::Verdict;

const SIMPLE_CYCLE_STATES: usize = 5_000_000;

#[derive(Clone, Debug)]
pub struct Contraction {
    pub source: DimerQuiver,
    pub contracted: Vec<ArrowId>,
    pub target: DimerQuiver,
    pub vertex_map: Vec<VertexId>,
    pub arrow_map: Vec<Option<ArrowId>>,
    pub fiber_counts: Vec<usize>,
    /// Simple matchings of the target; index `k` is variable `k`.
    pub catalog: MatchingCatalog,
    source_images: Vec<Monomial>,
    target_images: Vec<Monomial>,
}

/// Contracts `arrows` to vertices. Contracted arrows must form a forest in
/// the underlying graph and no face may drop below length two.
pub fn contract(q: &DimerQuiver, arrows: &[ArrowId]) -> Result<Contraction> {
    let mut contracted: Vec<ArrowId> = arrows.to_vec();
    contracted.sort_unstable();
    contracted.dedup();
    if let Some(&a) = contracted.iter().find(|&&a| a >= q.num_arrows()) {
        return Err(ContractionError::UnknownArrow(a).into());
    }
    let n = q.num_vertices();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut is_contracted = vec![false; q.num_arrows()];
    for &a in &contracted {
        let (t, h) = (
            find(&mut uf, q.arrow(a).tail),
            find(&mut uf, q.arrow(a).head),
        );
        if t == h {
            return Err(ContractionError::CyclicArrowSet(a).into());
        }
        uf[t] = h;
        is_contracted[a] = true;
    }
    let mut comp_id = vec![usize::MAX; n];
    let mut vertex_map = vec![0; n];
    let mut next = 0;
    for v in 0..n {
        let r = find(&mut uf, v);
        if comp_id[r] == usize::MAX {
            comp_id[r] = next;
            next += 1;
        }
        vertex_map[v] = comp_id[r];
    }
    let mut fiber_counts = vec![0; next];
    for &j in &vertex_map {
        fiber_counts[j] += 1;
    }

    // Potential along the contracted forest so that surviving arrows keep
    // consistent homology after their endpoints are identified.
    let mut potential: Vec<Option<HomVec>> = vec![None; n];
    for s in 0..n {
        if potential[s].is_some() {
            continue;
        }
        potential[s] = Some(HomVec::ZERO);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let pv = potential[v].unwrap();
            for &a in q.out_arrows(v) {
                let w = q.arrow(a).head;
                if is_contracted[a] && potential[w].is_none() {
                    potential[w] = Some(pv + q.arrow(a).homology);
                    stack.push(w);
                }
            }
            for &a in q.in_arrows(v) {
                let w = q.arrow(a).tail;
                if is_contracted[a] && potential[w].is_none() {
                    potential[w] = Some(pv - q.arrow(a).homology);
                    stack.push(w);
                }
            }
        }
    }
    let mut arrow_map = vec![None; q.num_arrows()];
    let mut target_arrows = Vec::new();
    for a in q.arrows() {
        if is_contracted[a.id] {
            continue;
        }
        let id = target_arrows.len();
        arrow_map[a.id] = Some(id);
        target_arrows.push(Arrow {
            id,
            tail: vertex_map[a.tail],
            head: vertex_map[a.head],
            homology: a.homology + potential[a.tail].unwrap() - potential[a.head].unwrap(),
        });
    }
    let mut faces = Vec::new();
    for f in q.faces() {
        let b: Vec<ArrowId> = f.boundary.iter().filter_map(|&a| arrow_map[a]).collect();
        if b.len() < 2 {
            return Err(ContractionError::FaceCollapse {
                face: f.id,
                length: b.len(),
            }
            .into());
        }
        faces.push(b);
    }
    let target = DimerQuiver::new(next, target_arrows, faces)?;
    let report = validate_dimer(&target);
    if !report.ok {
        return Err(ContractionError::InvalidTarget(format!("{:?}", report.violations)).into());
    }
    let catalog = MatchingCatalog::build(&target, DEFAULT_CAP)?;
    let nv = catalog.nvars();
    let target_images: Vec<Monomial> = (0..target.num_arrows())
        .map(|a| {
            let mut m = Monomial::one(nv);
            for &k in &catalog.arrow_vars[a] {
                m.exps[k] += 1;
            }
            m
        })
        .collect();
    let source_images = arrow_map
        .iter()
        .map(|img| match img {
            Some(t) => target_images[*t].clone(),
            None => Monomial::one(nv),
        })
        .collect();
    Ok(Contraction {
        source: q.clone(),
        contracted,
        target,
        vertex_map,
        arrow_map,
        fiber_counts,
        catalog,
        source_images,
        target_images,
    })
}

impl Contraction {
    pub fn nvars(&self) -> usize {
        self.catalog.nvars()
    }

    pub fn names(&self) -> Vec<String> {
        self.catalog.names()
    }

    pub fn sigma(&self) -> Monomial {
        Monomial::sigma(self.nvars())
    }

    /// `τ̄ψ` of a source arrow.
    pub fn arrow_image(&self, a: ArrowId) -> &Monomial {
        &self.source_images[a]
    }

    /// `τ̄` of a target arrow.
    pub fn target_arrow_image(&self, a: ArrowId) -> &Monomial {
        &self.target_images[a]
    }

    /// `τ̄ψ(p)`: the number of times each simple matching of the target meets
    /// the image of `p`. Contracted arrows contribute nothing.
    pub fn tau_psi(&self, p: &PathWord) -> Monomial {
        let mut m = Monomial::one(self.nvars());
        for &a in &p.arrows {
            m.add_assign(&self.source_images[a]);
        }
        m
    }

    /// `τ̄` of a path in the target.
    pub fn tau_target(&self, p: &PathWord) -> Monomial {
        let mut m = Monomial::one(self.nvars());
        for &a in &p.arrows {
            m.add_assign(&self.target_images[a]);
        }
        m
    }

    /// `ψ(p)` as a target path.
    pub fn psi(&self, p: &PathWord) -> PathWord {
        PathWord {
            base: self.vertex_map[p.base],
            arrows: p.arrows.iter().filter_map(|&a| self.arrow_map[a]).collect(),
        }
    }

    /// The cycle algebra `S` of the source: generated by `τ̄ψ` of the
    /// vertex-simple cycles.
    pub fn source_cycle_algebra(&self) -> Result<MonomialAlgebra> {
        let images = simple_cycle_images(&self.source, |p| self.tau_psi(p))?;
        Ok(MonomialAlgebra::new(AlgebraLabel::S, images))
    }

    /// The cycle algebra `S'` of the target.
    pub fn target_cycle_algebra(&self) -> Result<MonomialAlgebra> {
        let images = simple_cycle_images(&self.target, |p| self.tau_target(p))?;
        Ok(MonomialAlgebra::new(AlgebraLabel::SPrime, images))
    }
}

/// Images of all vertex-simple cycles, each cycle counted once at its
/// smallest vertex.
pub fn simple_cycle_images<F>(q: &DimerQuiver, image: F) -> Result<Vec<Monomial>>
where
    F: Fn(&PathWord) -> Monomial + Sync + Send,
{
    let per_vertex = par::map_range(Execution::default(), q.num_vertices(), |v| {
        enumerate_cycles(
            q,
            v,
            q.num_vertices(),
            &CycleFilter::VertexSimple,
            SIMPLE_CYCLE_STATES,
        )
        .map(|cs| {
            cs.into_iter()
                .filter(|p| p.arrows.iter().all(|&a| q.arrow(a).head >= v))
                .map(|p| image(&p))
                .collect::<BTreeSet<_>>()
        })
    });
    let mut all = BTreeSet::new();
    for r in per_vertex {
        all.extend(r?);
    }
    Ok(all.into_iter().collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicityReport {
    pub cyclic_up_to_bound: Verdict,
    pub s_generators: Vec<Monomial>,
    pub s_prime_generators: Vec<Monomial>,
    pub algebras_equal_up_to_bound: bool,
    pub cancellative_target: Verdict,
    pub degree_bound: u32,
}

pub fn is_cyclic(c: &Contraction, b: &SearchBounds, degree_bound: u32) -> Result<CyclicityReport> {
    let s = c.source_cycle_algebra()?;
    let sp = c.target_cycle_algebra()?;
    let equal = generated_up_to(&s.generators, degree_bound)
        == generated_up_to(&sp.generators, degree_bound);
    let cancellative = match find_noncancellative_pair(&c.target, None, b)? {
        PairSearch::NoneUpToBounds { .. } => Verdict::Yes,
        PairSearch::Found(_) => Verdict::No,
        PairSearch::Unknown { .. } => Verdict::Unknown,
    };
    Ok(CyclicityReport {
        cyclic_up_to_bound: Verdict::from_bool(equal).and(cancellative),
        s_generators: s.generators,
        s_prime_generators: sp.generators,
        algebras_equal_up_to_bound: equal,
        cancellative_target: cancellative,
        degree_bound,
    })
}

/// Removes one bigon: deletes its two arrows and glues the faces on the
/// other side of each into a single face.
pub fn reduce_one_bigon(q: &DimerQuiver) -> Result<DimerQuiver> {
    let bigon = q
        .faces()
        .iter()
        .find(|f| f.boundary.len() == 2)
        .ok_or(ContractionError::NoBigon)?;
    let (a, b) = (bigon.boundary[0], bigon.boundary[1]);
    let other = |x: ArrowId| {
        q.occurrences(x)
            .iter()
            .copied()
            .find(|&(f, _)| f != bigon.id)
    };
    let merge_err = |reason: &str| ContractionError::BigonMerge {
        face: bigon.id,
        reason: reason.into(),
    };
    let (fa, pa) = other(a).ok_or_else(|| merge_err("arrow has no second face"))?;
    let (fb, pb) = other(b).ok_or_else(|| merge_err("arrow has no second face"))?;
    if fa == fb {
        return Err(merge_err("both arrows border the same face").into());
    }
    // Rotations start with a (resp. b); the rests run h(a) -> t(a) and
    // h(b) = t(a) -> t(b) = h(a).
    let rest_a = q.rotated_boundary(fa, pa)[1..].to_vec();
    let rest_b = q.rotated_boundary(fb, pb)[1..].to_vec();
    let mut merged = rest_b;
    merged.extend(rest_a);
    let renumber = |x: ArrowId| x - (a < x) as usize - (b < x) as usize;
    let arrows: Vec<Arrow> = q
        .arrows()
        .iter()
        .filter(|r| r.id != a && r.id != b)
        .map(|r| Arrow {
            id: renumber(r.id),
            ..r.clone()
        })
        .collect();
    let mut faces = Vec::new();
    for f in q.faces() {
        if f.id == bigon.id || f.id == fb {
            continue;
        }
        let src = if f.id == fa { &merged } else { &f.boundary };
        faces.push(src.iter().map(|&x| renumber(x)).collect());
    }
    let reduced = DimerQuiver::new(q.num_vertices(), arrows, faces)?;
    let report = validate_dimer(&reduced);
    if !report.ok {
        return Err(merge_err(&format!("{:?}", report.violations)).into());
    }
    Ok(reduced)
}

/// Reduces one bigon, or all of them when `to_fixpoint`. A quiver without
/// bigons is returned unchanged.
pub fn bigon_reduce(q: &DimerQuiver, to_fixpoint: bool) -> Result<DimerQuiver> {
    let mut cur = q.clone();
    loop {
        if !cur.faces().iter().any(|f| f.boundary.len() == 2) {
            return Ok(cur);
        }
        cur = reduce_one_bigon(&cur)?;
        if !to_fixpoint {
            return Ok(cur);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::unit_cycle;
    use crate::rewrite::{build_relations, paths_equal, PathEquality};
    use proptest::prelude::*;

    #[test]
    fn identity_contraction() {
        let q = fixtures::conifold();
        let c = contract(&q, &[]).unwrap();
        assert_eq!(c.target, q);
        assert!(c.fiber_counts.iter().all(|&k| k == 1));
    }

    #[test]
    fn cyclic_set_is_rejected() {
        let q = fixtures::conifold();
        // Arrows 0 and 1 form a 2-cycle between the two vertices.
        let cyc: Vec<ArrowId> = {
            let a = q.arrow(0);
            let back = q
                .arrows()
                .iter()
                .find(|r| r.tail == a.head && r.head == a.tail)
                .unwrap();
            vec![0, back.id]
        };
        assert!(matches!(
            contract(&q, &cyc),
            Err(crate::Error::Contraction(ContractionError::CyclicArrowSet(
                _
            )))
        ));
        assert!(matches!(
            contract(&q, &[99]),
            Err(crate::Error::Contraction(ContractionError::UnknownArrow(
                99
            )))
        ));
    }

    #[test]
    fn face_collapse_is_rejected() {
        // Contracting two consecutive arrows of a triangle leaves one arrow.
        let q = fixtures::fig_iso_r().quiver;
        let tri = q.faces().iter().find(|f| f.boundary.len() == 3).unwrap();
        let res = contract(&q, &tri.boundary[..2]);
        assert!(matches!(
            res,
            Err(crate::Error::Contraction(
                ContractionError::FaceCollapse { .. }
            )) | Err(crate::Error::Contraction(ContractionError::CyclicArrowSet(
                _
            )))
        ));
    }

    #[test]
    fn fiber_counts_sum_to_source_vertices() {
        for fx in fixtures::all_fixtures() {
            let c = fx.contraction().unwrap();
            assert_eq!(
                c.fiber_counts.iter().sum::<usize>(),
                fx.quiver.num_vertices()
            );
            assert!(c.fiber_counts.iter().all(|&k| k >= 1));
        }
    }

    #[test]
    fn faces_map_to_sigma() {
        for fx in fixtures::all_fixtures() {
            let c = fx.contraction().unwrap();
            let sigma = c.sigma();
            for f in c.source.faces() {
                let i = c.source.arrow(f.boundary[0]).tail;
                let p = unit_cycle(&c.source, i, Some(f.id)).unwrap();
                assert_eq!(c.tau_psi(&p), sigma, "{}", fx.name);
            }
            assert_eq!(c.tau_psi(&PathWord::trivial(0)), Monomial::one(c.nvars()));
        }
    }

    #[test]
    fn relations_map_into_target_relations() {
        for fx in fixtures::all_fixtures() {
            let c = fx.contraction().unwrap();
            let rs = build_relations(&c.source);
            let rt = build_relations(&c.target);
            for rule in rs.rules() {
                let a = c.source.arrow(rule.arrow);
                let mk = |s: &Vec<ArrowId>| {
                    c.psi(&PathWord {
                        base: a.head,
                        arrows: s.clone(),
                    })
                };
                let (x, y) = (mk(&rule.sides[0]), mk(&rule.sides[1]));
                let b = rt.default_bounds(&x);
                assert!(
                    matches!(paths_equal(&rt, &x, &y, &b), PathEquality::Equal { .. }),
                    "{}: rule {}",
                    fx.name,
                    rule.arrow
                );
            }
        }
    }

    #[test]
    fn deformation_target_shape() {
        let c = fixtures::fig_deformation().contraction().unwrap();
        assert_eq!(c.target.num_vertices(), 2);
        assert_eq!(c.target.num_arrows(), 6);
        assert!(c.target.faces().iter().all(|f| f.boundary.len() == 3));
    }

    #[test]
    fn bigon_reduction_keeps_cycle_algebra() {
        let c = fixtures::fig_iso_r().contraction().unwrap();
        let before = c.target_cycle_algebra().unwrap();
        let reduced = bigon_reduce(&c.target, true).unwrap();
        assert!(reduced.faces().iter().all(|f| f.boundary.len() > 2));
        let id = contract(&reduced, &[]).unwrap();
        let after = id.target_cycle_algebra().unwrap();
        // Renumbering arrows can reorder the simple matchings.
        assert!(
            crate::fixtures::find_renaming(&before.generators, &after.generators).is_some(),
            "{:?} vs {:?}",
            before.generators,
            after.generators
        );
        let unchanged = bigon_reduce(&reduced, true).unwrap();
        assert_eq!(unchanged, reduced);
    }

    fn walk(q: &DimerQuiver, start: usize, choices: &[usize]) -> PathWord {
        let mut p = PathWord::trivial(start % q.num_vertices());
        for &c in choices {
            let outs = q.out_arrows(p.head(q));
            p.arrows.push(outs[c % outs.len()]);
        }
        p
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn tau_psi_is_additive_and_order_free(
            start in 0usize..9,
            c1 in proptest::collection::vec(0usize..6, 0..8),
            c2 in proptest::collection::vec(0usize..6, 0..8),
        ) {
            let c = fixtures::fig_iso_r().contraction().unwrap();
            let q = &c.source;
            let p = walk(q, start, &c1);
            let r = walk(q, p.head(q), &c2);
            let pr = p.then(&r);
            prop_assert_eq!(c.tau_psi(&pr), c.tau_psi(&p).mul(&c.tau_psi(&r)));
            let mut rev = pr.arrows.clone();
            rev.reverse();
            let permuted = PathWord { base: 0, arrows: rev };
            prop_assert_eq!(c.tau_psi(&permuted), c.tau_psi(&pr));
        }
    }
}
