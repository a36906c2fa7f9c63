//! Every stated expectation of every built-in fixture is recomputed.

use std::time::Instant;

use dimer_core::commands::{check_fixture, Options};
use dimer_core::fixtures::{all_fixtures, fig_nested, fig_nested_drawn};
use dimer_core::Verdict;

#[test]
fn all_expectations_hold() {
    let opts = Options::default();
    let mut failures = Vec::new();
    let extra = [fig_nested(2), fig_nested(3), fig_nested_drawn()];
    for fx in all_fixtures().iter().chain(extra.iter()) {
        let start = Instant::now();
        for check in check_fixture(fx, &opts).unwrap() {
            println!(
                "{:<28} {:<26} {:?} computed={}",
                fx.name, check.claim, check.verdict, check.computed
            );
            if check.verdict != Verdict::Yes {
                failures.push(format!("{} {}", fx.name, check.claim));
            }
        }
        println!("{:<28} took {:.2?}", fx.name, start.elapsed());
    }
    assert!(failures.is_empty(), "{failures:?}");
}
