//! Acceptance criteria 1 to 9. Each criterion runs on its own thread and
//! reports one PASS/FAIL line; the test fails if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::thread;
use std::time::{Duration, Instant};

use dimer_core::center::{
    cycles_with_image, nilpotency_and_kernel_check, reduced_center_contains, ReducedVerdict,
};
use dimer_core::commands::{run, Command, Options};
use dimer_core::contraction::Contraction;
use dimer_core::cycles::{dedup_mod_i, find_noncancellative_pair, PairSearch};
use dimer_core::fixtures::{self, find_renaming, invert, parse_monomials, rename, Fixture};
use dimer_core::matchings::enumerate_perfect_matchings;
use dimer_core::monomial::{monomials_up_to, Monomial};
use dimer_core::normality::{minimal_sigma_power, normality_report};
use dimer_core::oracle::{oracle_matchings, oracle_membership, oracle_realizable};
use dimer_core::rewrite::{build_relations, ClassCache, SearchBounds};
use dimer_core::semigroup::{
    generated_up_to, homotopy_center_contains, homotopy_center_set, is_sum_of, product_up_to,
    MonomialSet,
};
use dimer_core::Verdict;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Maps monomials written in a fixture's drawn variable names to catalog order.
fn drawn_to_catalog(fx: &Fixture, c: &Contraction) -> impl Fn(&str) -> Monomial {
    let n = c.nvars();
    let drawn = parse_monomials(&fx.expectation("s_generators").unwrap().value, n).unwrap();
    let perm = find_renaming(&c.source_cycle_algebra().unwrap().generators, &drawn)
        .expect("computed S generators match the drawn ones up to renaming");
    let inv = invert(&perm);
    move |s: &str| {
        let m = parse_monomials(&serde_json::json!([s]), n)
            .unwrap()
            .remove(0);
        rename(&m, &inv)
    }
}

fn same_set(gens: &[Monomial], expected: &[Monomial], d: u32) -> bool {
    generated_up_to(gens, d) == generated_up_to(expected, d)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let fx = fixtures::fig_deformation();
    let c = fx.contraction().unwrap();
    let m = drawn_to_catalog(&fx, &c);
    let s = c.source_cycle_algebra().unwrap().generators;
    let expected: Vec<Monomial> = ["x^2", "y^2", "x*y", "z"].iter().map(|g| m(g)).collect();
    let s_exact = s.iter().collect::<BTreeSet<_>>() == expected.iter().collect::<BTreeSet<_>>();
    let d = 8;
    let r = homotopy_center_set(&c, d);
    let ideal: MonomialSet = ["x^2", "y^2", "x*y"].iter().map(|g| m(g)).collect();
    let mut k_plus = product_up_to(&ideal, &generated_up_to(&s, d), d);
    k_plus.insert(Monomial::one(c.nvars()));
    let elapsed = start.elapsed();
    outcome(
        s_exact && r == k_plus && elapsed < Duration::from_secs(60),
        format!(
            "S = k[x^2, y^2, xy, z] exactly: {s_exact}; R = k + (x^2, y^2, xy)S to degree {d}: {} ({} monomials); {elapsed:.2?}",
            r == k_plus,
            r.len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let c = fixtures::fig_deformation().contraction().unwrap();
    let b = SearchBounds::new(20, 200_000);
    let source = find_noncancellative_pair(&c.source, Some(&c), &b).unwrap();
    let target = find_noncancellative_pair(&c.target, None, &b).unwrap();
    let found = matches!(source, PairSearch::Found(_));
    let none = matches!(target, PairSearch::NoneUpToBounds { .. });
    let pair = match &source {
        PairSearch::Found(p) => format!("p = {}, q = {}, r = {}", p.p, p.q, p.r),
        other => format!("{other:?}"),
    };
    outcome(
        found && none,
        format!("source pair found: {found} ({pair}); target none up to (20, 200k): {none}"),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut detail = Vec::new();
    for fx in [
        fixtures::fig_noncancellative_central(),
        fixtures::fig_deformation(),
    ] {
        let Ok(z) = fx.nil_candidate() else { continue };
        let c = fx.contraction().unwrap();
        let r = nilpotency_and_kernel_check(&c, &z, &common::bounds()).unwrap();
        let ok = r.central == Verdict::Yes
            && r.z_squared_zero == Verdict::Yes
            && r.psi_z_zero == Verdict::Yes;
        pass &= ok;
        detail.push(format!(
            "{}: central {:?}, z^2 = 0 {:?}, psi(z) = 0 {:?}",
            fx.name, r.central, r.z_squared_zero, r.psi_z_zero
        ));
    }
    let elapsed = start.elapsed();
    pass &= !detail.is_empty() && elapsed < Duration::from_secs(120);
    outcome(pass, format!("{}; {elapsed:.2?}", detail.join("; ")))
}

fn criterion_4() -> Outcome {
    let fx = fixtures::fig_iso_r();
    let c = fx.contraction().unwrap();
    let m = drawn_to_catalog(&fx, &c);
    let b = common::bounds();
    let s = c.source_cycle_algebra().unwrap().generators;
    let expected: Vec<Monomial> = ["x^2", "x*y", "y^2", "z"].iter().map(|g| m(g)).collect();
    let s_ok = same_set(&s, &expected, 8);
    let g = m("x*y*z^2");
    let is_z_sigma = g == m("z").mul(&c.sigma());
    let in_r = homotopy_center_contains(&c, &g, &b).unwrap().verdict == Verdict::Yes;
    let vertex = 2;
    let (cycles, _) = cycles_with_image(
        &c,
        vertex,
        &g,
        dimer_core::center::default_cycle_length(&c, &g),
        b.max_states,
    )
    .unwrap();
    let rs = build_relations(&c.source);
    let mut cache = ClassCache::new(&rs, b);
    let distinct = dedup_mod_i(&cycles, &mut cache);
    let counts_ok = cycles.len() == 6
        && distinct.representatives.len() == 5
        && !distinct.flagged.contains(&true);
    let reduced = reduced_center_contains(&c, &rs, &g, &b).unwrap().verdict;
    outcome(
        s_ok && is_z_sigma && in_r && counts_ok && reduced == ReducedVerdict::No,
        format!(
            "S = k[x^2, xy, y^2, z] to degree 8: {s_ok}; xyz^2 = z sigma: {is_z_sigma}; in R: {in_r}; \
             {} cycles, {} mod I at vertex {vertex}; reduced center: {reduced:?}",
            cycles.len(),
            distinct.representatives.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let b = common::bounds();
    let mut pass = true;
    let mut detail = Vec::new();
    for n in 1..=3u32 {
        let fx = fixtures::fixture(&format!("fig_nested({n})")).unwrap();
        let c = fx.contraction().unwrap();
        let k = minimal_sigma_power(&c, n + 2, &b).unwrap().n;
        let s = c.source_cycle_algebra().unwrap().generators;
        let d = dimer_core::commands::normality_degree(&c, &s, 12);
        let r = normality_report(&c, &b, d, n + 2).unwrap();
        let want = Verdict::from_bool(n == 1);
        let ok = k == Some(n) && r.normal == want && r.consistent == Verdict::Yes;
        pass &= ok;
        detail.push(format!(
            "n = {n}: sigma power {k:?}, normal {:?}, conditions consistent {:?}",
            r.normal, r.consistent
        ));
    }
    outcome(pass, detail.join("; "))
}

fn criterion_6_and_not_central() -> (Outcome, common::Tally) {
    let mut nil = common::Tally::default();
    let mut commuting = common::Tally::default();
    let mut uncertified = 0;
    for (k, fx) in common::lemma_fixtures().iter().enumerate() {
        let c = fx.contraction().unwrap();
        let pool = common::candidate_pool(fx, &c, k as u64, 4);
        let o = common::check_nil_theorem(&c, &pool);
        nil.absorb(o.nil);
        commuting.absorb(o.commuting);
        uncertified += o.uncertified;
    }
    let pass = nil.violations.is_empty() && nil.unknown == 0 && nil.checked >= 50;
    let out = outcome(
        pass,
        format!(
            "{} certified-central candidates, {} violations, {} undecided ({uncertified} generated candidates not certified central)",
            nil.checked,
            nil.violations.len(),
            nil.unknown
        ),
    );
    (out, commuting)
}

fn criterion_7(commuting: common::Tally) -> Outcome {
    let mut totals: std::collections::BTreeMap<&'static str, common::Tally> = Default::default();
    for fx in common::lemma_fixtures() {
        let c = fx.contraction().unwrap();
        for (name, tally) in common::check_lemmas(&c, 6, true) {
            totals.entry(name).or_default().absorb(tally);
        }
    }
    totals.insert("not central", commuting);
    let pass = totals
        .values()
        .all(|t| t.violations.is_empty() && t.unknown == 0);
    let detail: Vec<String> = totals
        .iter()
        .map(|(name, t)| {
            let mut s = format!(
                "{name}: {} checked, {} violations, {} undecided",
                t.checked,
                t.violations.len(),
                t.unknown
            );
            if let Some(v) = t.violations.first() {
                s.push_str(&format!(" (first: {v})"));
            }
            s
        })
        .collect();
    outcome(pass, detail.join("; "))
}

fn criterion_8() -> Outcome {
    let mut pool = fixtures::all_fixtures();
    pool.extend(common::random_seed_pool(25));
    let mut disagreements = Vec::new();
    let (mut matchings, mut memberships, mut realizations) = (0, 0, 0);
    for fx in &pool {
        let q = &fx.quiver;
        let mut fast = enumerate_perfect_matchings(q, 1_000_000).unwrap();
        fast.sort();
        if fast != oracle_matchings(q).unwrap() {
            disagreements.push(format!("{}: perfect matchings", fx.name));
        }
        matchings += 1;
        let c = fx.contraction().unwrap();
        let s = c.source_cycle_algebra().unwrap().generators;
        for g in monomials_up_to(c.nvars(), 6) {
            memberships += 1;
            if is_sum_of(&s, &g) != oracle_membership(&s, &g).unwrap() {
                disagreements.push(format!(
                    "{}: S membership of {}",
                    fx.name,
                    g.render_default()
                ));
            }
        }
        let b = common::bounds();
        for g in monomials_up_to(c.nvars(), 2) {
            for i in 0..c.source.num_vertices() {
                let fast = dimer_core::semigroup::realizable_at_vertex(&c, i, &g, &b)
                    .unwrap()
                    .verdict();
                let slow = match oracle_realizable(&c, i, &g, 2) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                realizations += 1;
                if fast != Verdict::from_bool(slow) {
                    disagreements.push(format!(
                        "{}: realizability of {} at {i}",
                        fx.name,
                        g.render_default()
                    ));
                }
            }
        }
    }
    outcome(
        disagreements.is_empty(),
        format!(
            "{} quivers: {matchings} matching sets, {memberships} membership queries, {realizations} realizability queries; \
             {} disagreements{}",
            pool.len(),
            disagreements.len(),
            disagreements.first().map(|d| format!(" (first: {d})")).unwrap_or_default()
        ),
    )
}

fn criterion_9() -> Outcome {
    let commands = [
        Command::Matchings {
            quiver: "fixture:fig_deformation".into(),
            simple_only: false,
            cap: 100_000,
        },
        Command::CycleAlgebra {
            quiver: "fixture:fig_iso_R".into(),
            contract: None,
        },
        Command::Normality {
            quiver: "fixture:fig_nested(2)".into(),
            contract: None,
            n_max: 4,
        },
        Command::Nilradical {
            quiver: "fixture:fig_noncancellative_central".into(),
            contract: None,
            candidate: None,
        },
    ];
    let opts = Options::default();
    let mut stable = 0;
    for cmd in &commands {
        let runs: Vec<String> = (0..3)
            .map(|_| run(cmd, &opts).unwrap().report.to_json())
            .collect();
        if runs.iter().all(|r| r == &runs[0]) {
            stable += 1;
        }
    }
    outcome(
        stable == commands.len(),
        format!(
            "{stable}/{} commands byte-identical over 3 runs",
            commands.len()
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let results: Vec<(u32, Outcome)> = thread::scope(|s| {
        let h1 = s.spawn(criterion_1);
        let h2 = s.spawn(criterion_2);
        let h3 = s.spawn(criterion_3);
        let h4 = s.spawn(criterion_4);
        let h5 = s.spawn(criterion_5);
        let h67 = s.spawn(|| {
            let (six, commuting) = criterion_6_and_not_central();
            (six, criterion_7(commuting))
        });
        let h8 = s.spawn(criterion_8);
        let h9 = s.spawn(criterion_9);
        let (six, seven) = h67.join().unwrap();
        vec![
            (1, h1.join().unwrap()),
            (2, h2.join().unwrap()),
            (3, h3.join().unwrap()),
            (4, h4.join().unwrap()),
            (5, h5.join().unwrap()),
            (6, six),
            (7, seven),
            (8, h8.join().unwrap()),
            (9, h9.join().unwrap()),
        ]
    });
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (k, o) in &results {
        writeln!(
            out,
            "criterion {k}: {} {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        )
        .unwrap();
        if !o.pass {
            failed.push(*k);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
