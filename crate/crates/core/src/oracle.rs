//! Slow, obviously correct reference implementations used to cross-check
//! the fast algorithms in tests.

use crate::contraction::Contraction;
use crate::error::{DomainError, ResourceError, Result};
use crate::matchings::PerfectMatching;
use crate::monomial::Monomial;
use crate::quiver::{DimerQuiver, VertexId};

const MAX_ARROWS: usize = 48;
const MAX_NODES: usize = 20_000_000;

fn guard(nodes: &mut usize, what: &str) -> Result<()> {
    *nodes += 1;
    if *nodes > MAX_NODES {
        return Err(ResourceError::SizeGuard(format!(
            "{what} visited more than {MAX_NODES} nodes"
        ))
        .into());
    }
    Ok(())
}

/// All perfect matchings, by deciding arrow by arrow whether it is in.
pub fn oracle_matchings(q: &DimerQuiver) -> Result<Vec<PerfectMatching>> {
    if q.num_faces() == 0 {
        return Err(DomainError::EmptyQuiver.into());
    }
    if q.num_arrows() > MAX_ARROWS {
        return Err(ResourceError::SizeGuard(format!(
            "{} arrows exceed the oracle limit of {MAX_ARROWS}",
            q.num_arrows()
        ))
        .into());
    }
    let mut counts = vec![0usize; q.num_faces()];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    let mut nodes = 0;
    walk(q, 0, &mut counts, &mut chosen, &mut out, &mut nodes)?;
    out.sort();
    Ok(out)
}

fn walk(
    q: &DimerQuiver,
    a: usize,
    counts: &mut [usize],
    chosen: &mut Vec<usize>,
    out: &mut Vec<PerfectMatching>,
    nodes: &mut usize,
) -> Result<()> {
    guard(nodes, "matching oracle")?;
    if a == q.num_arrows() {
        if counts.iter().all(|&c| c == 1) {
            out.push(PerfectMatching::new(chosen.clone()));
        }
        return Ok(());
    }
    walk(q, a + 1, counts, chosen, out, nodes)?;
    let faces: Vec<usize> = q.occurrences(a).iter().map(|&(f, _)| f).collect();
    for &f in &faces {
        counts[f] += 1;
    }
    if faces.iter().all(|&f| counts[f] <= 1) {
        chosen.push(a);
        walk(q, a + 1, counts, chosen, out, nodes)?;
        chosen.pop();
    }
    for &f in &faces {
        counts[f] -= 1;
    }
    Ok(())
}

/// Whether `g` is a sum of generators, trying every multiplicity vector.
pub fn oracle_membership(gens: &[Monomial], g: &Monomial) -> Result<bool> {
    let mut nodes = 0;
    fn go(gens: &[Monomial], k: usize, rest: &Monomial, nodes: &mut usize) -> Result<bool> {
        guard(nodes, "membership oracle")?;
        if rest.is_one() {
            return Ok(true);
        }
        if k == gens.len() {
            return Ok(false);
        }
        let mut r = rest.clone();
        loop {
            if go(gens, k + 1, &r, nodes)? {
                return Ok(true);
            }
            if gens[k].is_one() {
                return Ok(false);
            }
            match r.checked_div(&gens[k]) {
                Some(next) => r = next,
                None => return Ok(false),
            }
        }
    }
    go(gens, 0, g, &mut nodes)
}

/// Whether a closed walk at `i` with image `g` exists, decided as an
/// Eulerian multigraph: arrow multiplicities that balance every vertex,
/// sum to `g`, and have connected support through `i`. Arrows with trivial
/// image are used at most `cap` times.
pub fn oracle_realizable(c: &Contraction, i: VertexId, g: &Monomial, cap: u32) -> Result<bool> {
    if g.is_one() {
        return Ok(true);
    }
    let q = &c.source;
    let mut mult = vec![0u32; q.num_arrows()];
    let mut nodes = 0;
    assign(c, 0, g, cap, i, &mut mult, &mut nodes)
}

fn assign(
    c: &Contraction,
    a: usize,
    rest: &Monomial,
    cap: u32,
    i: VertexId,
    mult: &mut [u32],
    nodes: &mut usize,
) -> Result<bool> {
    guard(nodes, "realizability oracle")?;
    let q = &c.source;
    if a == q.num_arrows() {
        return Ok(rest.is_one() && eulerian_through(q, mult, i));
    }
    let image = c.arrow_image(a);
    let mut r = rest.clone();
    let mut m = 0;
    loop {
        mult[a] = m;
        if assign(c, a + 1, &r, cap, i, mult, nodes)? {
            mult[a] = 0;
            return Ok(true);
        }
        m += 1;
        if image.is_one() {
            if m > cap {
                break;
            }
        } else {
            match r.checked_div(image) {
                Some(next) => r = next,
                None => break,
            }
        }
    }
    mult[a] = 0;
    Ok(false)
}

fn eulerian_through(q: &DimerQuiver, mult: &[u32], i: VertexId) -> bool {
    let mut balance = vec![0i64; q.num_vertices()];
    let mut touched = vec![false; q.num_vertices()];
    for (a, &m) in mult.iter().enumerate() {
        if m > 0 {
            let arrow = q.arrow(a);
            balance[arrow.tail] -= m as i64;
            balance[arrow.head] += m as i64;
            touched[arrow.tail] = true;
            touched[arrow.head] = true;
        }
    }
    if !touched[i] || balance.iter().any(|&b| b != 0) {
        return false;
    }
    let mut seen = vec![false; q.num_vertices()];
    seen[i] = true;
    let mut stack = vec![i];
    while let Some(v) = stack.pop() {
        for (a, &m) in mult.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let arrow = q.arrow(a);
            for (x, y) in [(arrow.tail, arrow.head), (arrow.head, arrow.tail)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    (0..q.num_vertices()).all(|v| !touched[v] || seen[v])
}
