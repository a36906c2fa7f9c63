//! Search harness shared by the acceptance and property suites: central
//! candidates for the nilradical checks and the monomial lemma checks.

#![allow(dead_code)]

use std::collections::BTreeMap;

use dimer_core::center::{
    central_basis, commutation_cached, default_cycle_length, nil_check_cached,
    power_in_reduced_center, reduced_center_contains, verify_central_cached, CentralCandidate,
    ReducedVerdict,
};
use dimer_core::contraction::Contraction;
use dimer_core::fixtures::{self, Fixture};
use dimer_core::linalg::q_int;
use dimer_core::monomial::{monomials_up_to, Monomial};
use dimer_core::quiver::{path_homology, PathWord, VertexId};
use dimer_core::rewrite::{build_relations, ClassCache, SearchBounds};
use dimer_core::semigroup::{generated_up_to, homotopy_center_set, MonomialSet};
use dimer_core::Verdict;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn bounds() -> SearchBounds {
    SearchBounds::new(40, 200_000)
}

/// Retry bounds for searches that stay undecided under [`bounds`].
pub fn wide_bounds() -> SearchBounds {
    SearchBounds::new(80, 1_000_000)
}

/// The named fixtures plus the deeper nested ones.
pub fn lemma_fixtures() -> Vec<Fixture> {
    let mut out = fixtures::all_fixtures();
    for n in [2, 3] {
        out.push(fixtures::fixture(&format!("fig_nested({n})")).unwrap());
    }
    out
}

#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub unknown: usize,
    pub violations: Vec<String>,
}

impl Tally {
    pub fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.unknown += other.unknown;
        self.violations.extend(other.violations);
    }

    fn record(&mut self, verdict: Verdict, what: impl FnOnce() -> String) {
        match verdict {
            Verdict::Yes => self.checked += 1,
            Verdict::No => self.violations.push(what()),
            Verdict::Unknown => self.unknown += 1,
        }
    }
}

/// Central candidates for one contraction: powers of the unit-cycle sum, the
/// fixture's nil candidate with multiples and shifts, and random rational
/// combinations of central elements spanned by image-`g` cycles for small
/// `g` in `R`.
pub fn candidate_pool(
    fx: &Fixture,
    c: &Contraction,
    seed: u64,
    random_per_image: usize,
) -> Vec<CentralCandidate> {
    let q = &c.source;
    let mut pool = Vec::new();
    for n in 1..=2 {
        pool.push(CentralCandidate::unit_cycle_power(q, n).unwrap());
    }
    let sigma = CentralCandidate::unit_cycle_power(q, 1).unwrap();
    if let Ok(z) = fx.nil_candidate() {
        pool.push(z.scaled(&q_int(3)));
        pool.push(z.plus(&sigma));
        pool.push(z.scaled(&q_int(-2)).plus(&sigma.scaled(&q_int(5))));
        pool.push(z);
    }
    let rs = build_relations(q);
    let b = bounds();
    let mut cache = ClassCache::new(&rs, b);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = c.sigma().degree().max(2);
    let images: Vec<Monomial> = homotopy_center_set(c, d)
        .into_iter()
        .filter(|g| !g.is_one())
        .take(4)
        .collect();
    for g in images {
        let basis =
            match central_basis(c, &mut cache, &g, default_cycle_length(c, &g), b.max_states) {
                Ok(basis) => basis,
                Err(_) => continue,
            };
        for z in &basis {
            pool.push(z.clone());
        }
        if basis.is_empty() {
            continue;
        }
        for _ in 0..random_per_image {
            let mut z = CentralCandidate::zero();
            for v in &basis {
                let k: i64 = rng.gen_range(-3..=3);
                if k != 0 {
                    z = z.plus(&v.scaled(&q_int(k)));
                }
            }
            pool.push(z);
        }
    }
    pool
}

/// Certifies centrality and checks `ψ(z) = 0 ⟺ z² = 0` plus the commuting
/// halves on every certified candidate.
pub struct NilOutcome {
    pub nil: Tally,
    pub commuting: Tally,
    pub uncertified: usize,
}

pub fn check_nil_theorem(c: &Contraction, pool: &[CentralCandidate]) -> NilOutcome {
    let rs = build_relations(&c.source);
    let rt = build_relations(&c.target);
    let b = bounds();
    let mut cache = ClassCache::new(&rs, b);
    let mut target_cache = ClassCache::new(&rt, b);
    let mut out = NilOutcome {
        nil: Tally::default(),
        commuting: Tally::default(),
        uncertified: 0,
    };
    for (k, z) in pool.iter().enumerate() {
        if z.terms().next().is_none()
            || verify_central_cached(&mut cache, z).central != Verdict::Yes
        {
            out.uncertified += 1;
            continue;
        }
        let r = nil_check_cached(c, &mut cache, &mut target_cache, z);
        out.nil.record(r.theorem_nil_consistent, || {
            format!(
                "candidate {k}: z^2 = 0 is {:?} but psi(z) = 0 is {:?}",
                r.z_squared_zero, r.psi_z_zero
            )
        });
        out.commuting.record(commutation_cached(&mut cache, z), || {
            format!("candidate {k}: p q != q p")
        });
    }
    out
}

/// Per-lemma tallies for one contraction, on monomials of degree at most `d`.
pub fn check_lemmas(c: &Contraction, d: u32, prop_three: bool) -> BTreeMap<&'static str, Tally> {
    let mut t: BTreeMap<&'static str, Tally> = BTreeMap::new();
    let n = c.nvars();
    let sigma = c.sigma();
    let s_gens = c.source_cycle_algebra().unwrap().generators;
    let wide = d + sigma.degree();
    let s_set: MonomialSet = generated_up_to(&s_gens, wide);
    let r_set: MonomialSet = homotopy_center_set(c, d);
    let small = monomials_up_to(n, d);

    let e = t.entry("t in S").or_default();
    for g in &small {
        if s_set.contains(&g.mul(&sigma)) {
            e.record(Verdict::from_bool(s_set.contains(g)), || {
                format!(
                    "{} sigma in S, {} not",
                    g.render_default(),
                    g.render_default()
                )
            });
        }
    }

    let e = t.entry("st not in R").or_default();
    for g in r_set.iter().filter(|g| g.sigma_power().is_none()) {
        for h in s_set.iter().filter(|h| h.degree() + g.degree() <= d) {
            let gh = g.mul(h);
            e.record(Verdict::from_bool(r_set.contains(&gh)), || {
                format!(
                    "{} in R, {} in S, product not in R",
                    g.render_default(),
                    h.render_default()
                )
            });
        }
    }

    let q = &c.source;
    let max_len = d as usize * q.longest_face() + c.contracted.len();
    let mut by_image: BTreeMap<Monomial, (Vec<i64>, String)> = BTreeMap::new();
    let mut zero_class = Tally::default();
    let mut image_class = Tally::default();
    for i in 0..q.num_vertices() {
        let cycles = cycles_up_to_degree(c, i, d, max_len);
        for p in cycles {
            let g = c.tau_psi(&p);
            if g.degree() > d {
                continue;
            }
            let u = path_homology(q, &p).unwrap();
            let u: Vec<i64> = vec![u.0, u.1];
            if u == [0, 0] {
                zero_class.record(Verdict::from_bool(g.sigma_power().is_some()), || {
                    format!("null-homologous cycle {p} has image {}", g.render_default())
                });
            }
            match by_image.get(&g) {
                Some((w, first)) => image_class.record(Verdict::from_bool(*w == u), || {
                    format!(
                        "{first} and {p} share image {} but not homology",
                        g.render_default()
                    )
                }),
                None => {
                    by_image.insert(g, (u, p.to_string()));
                }
            }
        }
    }
    t.insert("cyclelemma", zero_class);
    t.insert("r in T'2", image_class);

    let rs = build_relations(q);
    let b = bounds();
    let mut one = Tally::default();
    let mut three = Tally::default();
    for g in r_set.iter().filter(|g| !g.is_one()) {
        if !g.sigma_divides() {
            let r = reduced_center_contains(c, &rs, g, &b).unwrap();
            one.record(reduced(&r.verdict), || {
                format!("{} in R but not in the reduced center", g.render_default())
            });
        } else if prop_three {
            let mut v = Verdict::Unknown;
            for b in [b, wide_bounds()] {
                let p = power_in_reduced_center(c, &rs, g, 6, &b).unwrap();
                v = match p.n {
                    Some(_) => Verdict::Yes,
                    None if p.verdicts.iter().all(|(_, v)| *v == ReducedVerdict::No) => Verdict::No,
                    None => Verdict::Unknown,
                };
                if v != Verdict::Unknown {
                    break;
                }
            }
            three.record(v, || {
                format!(
                    "no power of {} up to 6 lies in the reduced center",
                    g.render_default()
                )
            });
        }
    }
    t.insert("sigma-free R in reduced center", one);
    t.insert("power in reduced center", three);
    t
}

fn reduced(v: &ReducedVerdict) -> Verdict {
    match v {
        ReducedVerdict::Yes => Verdict::Yes,
        ReducedVerdict::No => Verdict::No,
        _ => Verdict::Unknown,
    }
}

pub fn random_seed_pool(count: u64) -> Vec<Fixture> {
    (0..count).map(fixtures::random_small_quiver).collect()
}

/// Cycles at `i` whose image has degree at most `d`, by depth-first search
/// pruned on image degree and length.
pub fn cycles_up_to_degree(c: &Contraction, i: VertexId, d: u32, max_len: usize) -> Vec<PathWord> {
    let mut out = Vec::new();
    let mut stack = vec![(i, 0u32, Vec::new())];
    while let Some((v, deg, word)) = stack.pop() {
        if !word.is_empty() && v == i {
            out.push(PathWord {
                base: i,
                arrows: word.clone(),
            });
        }
        if word.len() == max_len {
            continue;
        }
        for &a in c.source.out_arrows(v) {
            let deg = deg + c.arrow_image(a).degree();
            if deg <= d {
                let mut next = word.clone();
                next.push(a);
                stack.push((c.source.arrow(a).head, deg, next));
            }
        }
    }
    out
}
