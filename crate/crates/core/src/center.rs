//! Central elements of the dimer algebra: centrality certificates,
//! reduced-center membership of monomials, and the nilradical checks.
//!
//! A candidate `z` is a rational combination of cycles at each vertex. Since
//! the algebra is generated by arrows and vertex idempotents, `z` is central
//! iff `z e_{t(a)}` followed by `a` equals `a` followed by `z e_{h(a)}` for
//! every arrow `a`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::contraction::Contraction;
use crate::cycles::dedup_mod_i;
use crate::error::{DomainError, Error, Result};
use crate::linalg::{null_space, solve, Q};
use crate::monomial::Monomial;
use crate::quiver::{ArrowId, DimerQuiver, PathWord, VertexId};
use crate::rewrite::{build_relations, ClassCache, RewriteSystem, SearchBounds};
use crate::semigroup::homotopy_center_contains;
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Q,
    pub path: PathWord,
}

/// `z = Σ_i z e_i`, each component a rational combination of cycles at `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CentralCandidate {
    pub components: BTreeMap<VertexId, Vec<Term>>,
}

impl CentralCandidate {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn push(&mut self, coeff: Q, path: PathWord) {
        if !coeff.is_zero() {
            self.components
                .entry(path.base)
                .or_default()
                .push(Term { coeff, path });
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.components.values().flatten()
    }

    /// `Σ_i σ_i^n` with the unit cycle of the first face at each vertex.
    pub fn unit_cycle_power(q: &DimerQuiver, n: usize) -> Result<Self> {
        let mut z = Self::zero();
        for i in 0..q.num_vertices() {
            let s = crate::quiver::unit_cycle(q, i, None)?;
            z.push(Q::one(), s.power(n));
        }
        Ok(z)
    }

    /// Every path must be a cycle based at its key.
    pub fn check(&self, q: &DimerQuiver) -> Result<()> {
        for (&v, terms) in &self.components {
            for t in terms {
                t.path.check(q)?;
                if t.path.base != v || !t.path.is_cycle(q) {
                    return Err(DomainError::Other(format!(
                        "term {} is not a cycle at vertex {v}",
                        t.path
                    ))
                    .into());
                }
            }
        }
        Ok(())
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut z = Self::zero();
        for t in self.terms() {
            z.push(&t.coeff * c, t.path.clone());
        }
        z
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut z = self.clone();
        for t in other.terms() {
            z.push(t.coeff.clone(), t.path.clone());
        }
        z
    }

    /// Candidate file: `{"<vertex>": [[num, den, [arrow ids]], ...], ...}`.
    /// An empty arrow list is the idempotent at that vertex.
    pub fn from_json(text: &str, q: &DimerQuiver) -> Result<Self> {
        let bad = |m: String| Error::from(crate::error::StructuralError::Json(m));
        let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| bad("candidate must be an object".into()))?;
        let mut z = Self::zero();
        for (key, terms) in obj {
            let vertex: VertexId = key
                .parse()
                .map_err(|_| bad(format!("vertex key `{key}` is not an integer")))?;
            let list = terms
                .as_array()
                .ok_or_else(|| bad(format!("terms at `{key}` must be an array")))?;
            for t in list {
                let (num, den, arrows): (i64, i64, Vec<ArrowId>) =
                    serde_json::from_value(t.clone()).map_err(|e| bad(e.to_string()))?;
                if den == 0 {
                    return Err(bad("zero denominator".into()));
                }
                let coeff = Q::new(BigInt::from(num), BigInt::from(den));
                z.components.entry(vertex).or_default().push(Term {
                    coeff,
                    path: PathWord {
                        base: vertex,
                        arrows,
                    },
                });
            }
        }
        z.check(q)?;
        Ok(z)
    }

    pub fn to_value(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (v, terms) in &self.components {
            let list: Vec<Value> =
                terms
                    .iter()
                    .map(|t| {
                        let num = t.coeff.numer().to_i64().map_or_else(
                            || Value::String(t.coeff.numer().to_string()),
                            Value::from,
                        );
                        let den = t.coeff.denom().to_i64().map_or_else(
                            || Value::String(t.coeff.denom().to_string()),
                            Value::from,
                        );
                        serde_json::json!([num, den, t.path.arrows])
                    })
                    .collect();
            map.insert(v.to_string(), Value::Array(list));
        }
        Value::Object(map)
    }
}

/// Whether `Σ coeff * path` vanishes modulo `I`. Terms are grouped into
/// classes; the answer is Unknown only when a class with nonzero total could
/// still merge with another class.
pub fn combination_is_zero(cache: &mut ClassCache, terms: &[(Q, PathWord)]) -> Verdict {
    let groups = class_groups(cache, terms.iter().map(|(_, p)| p));
    let mut verdict = Verdict::Yes;
    for g in &groups.components {
        let total = g.iter().fold(Q::zero(), |acc, &k| acc + &terms[k].0);
        if !total.is_zero() {
            verdict = verdict.and(if groups.uncertain_component(g) {
                Verdict::Unknown
            } else {
                Verdict::No
            });
        }
    }
    verdict
}

/// Terms partitioned into classes modulo `I`, with the pairs of classes
/// whose relation could not be decided.
struct ClassGroups {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    unsure: Vec<(usize, usize)>,
}

impl ClassGroups {
    fn uncertain_component(&self, g: &[usize]) -> bool {
        let c = self.component_of[g[0]];
        self.unsure.iter().any(|&(a, b)| a == c || b == c)
    }
}

fn class_groups<'p>(
    cache: &mut ClassCache,
    paths: impl Iterator<Item = &'p PathWord>,
) -> ClassGroups {
    let paths: Vec<&PathWord> = paths.collect();
    let rs = cache.system();
    let keys: Vec<_> = paths.iter().map(|p| rs.invariant(p)).collect();
    let mut by_key: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (k, key) in keys.into_iter().enumerate() {
        by_key.entry(key).or_default().push(k);
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut component_of = vec![0; paths.len()];
    let mut unsure = Vec::new();
    for members in by_key.values() {
        // Representatives of the classes found so far within this key.
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for &k in members {
            let mut placed = None;
            let mut pending = Vec::new();
            for &(rep, comp) in &reps {
                match cache.same(paths[k], paths[rep]) {
                    Verdict::Yes => {
                        placed = Some(comp);
                        break;
                    }
                    Verdict::Unknown => pending.push(comp),
                    Verdict::No => {}
                }
            }
            let comp = match placed {
                Some(c) => c,
                None => {
                    let c = components.len();
                    components.push(Vec::new());
                    reps.push((k, c));
                    for p in pending {
                        unsure.push((p, c));
                    }
                    c
                }
            };
            components[comp].push(k);
            component_of[k] = comp;
        }
    }
    ClassGroups {
        components,
        component_of,
        unsure,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowVerdict {
    pub arrow: ArrowId,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralityCertificate {
    pub central: Verdict,
    pub arrows: Vec<ArrowVerdict>,
}

/// The difference `z e_t · a − a · z e_h` (traversal order) for arrow `a`.
fn commutator_terms(q: &DimerQuiver, z: &CentralCandidate, a: ArrowId) -> Vec<(Q, PathWord)> {
    let arrow = q.arrow(a);
    let step = PathWord {
        base: arrow.tail,
        arrows: vec![a],
    };
    let mut terms = Vec::new();
    for t in z.components.get(&arrow.tail).into_iter().flatten() {
        terms.push((t.coeff.clone(), t.path.then(&step)));
    }
    for t in z.components.get(&arrow.head).into_iter().flatten() {
        terms.push((-t.coeff.clone(), step.then(&t.path)));
    }
    terms
}

pub fn verify_central(
    rs: &RewriteSystem,
    z: &CentralCandidate,
    b: &SearchBounds,
) -> CentralityCertificate {
    let mut cache = ClassCache::new(rs, *b);
    verify_central_cached(&mut cache, z)
}

pub fn verify_central_cached(
    cache: &mut ClassCache,
    z: &CentralCandidate,
) -> CentralityCertificate {
    let q = cache.system().quiver().clone();
    let arrows: Vec<ArrowVerdict> = (0..q.num_arrows())
        .map(|a| ArrowVerdict {
            arrow: a,
            verdict: combination_is_zero(cache, &commutator_terms(&q, z, a)),
        })
        .collect();
    CentralityCertificate {
        central: Verdict::all(arrows.iter().map(|v| v.verdict)),
        arrows,
    }
}

/// Cycles at `i` with image exactly `g`, of length at most `max_len`. The
/// flag is set when some walk was cut off by the length bound.
pub fn cycles_with_image(
    c: &Contraction,
    i: VertexId,
    g: &Monomial,
    max_len: usize,
    max_states: usize,
) -> Result<(Vec<PathWord>, bool)> {
    let q = &c.source;
    let mut out = Vec::new();
    let mut truncated = false;
    let mut states = 0usize;
    let mut stack: Vec<(VertexId, Monomial, Vec<ArrowId>)> =
        vec![(i, Monomial::one(c.nvars()), Vec::new())];
    while let Some((v, m, word)) = stack.pop() {
        for &a in q.out_arrows(v) {
            let next_m = m.mul(c.arrow_image(a));
            if !next_m.divides(g) {
                continue;
            }
            let w = q.arrow(a).head;
            if word.len() + 1 > max_len {
                truncated = true;
                continue;
            }
            states += 1;
            if states > max_states {
                return Err(crate::error::ResourceError::StateBudget {
                    max_states,
                    during: "enumerating cycles of a given image".into(),
                }
                .into());
            }
            let mut next_word = word.clone();
            next_word.push(a);
            if w == i && next_m == *g {
                out.push(PathWord {
                    base: i,
                    arrows: next_word.clone(),
                });
            }
            stack.push((w, next_m, next_word));
        }
    }
    out.sort_by(|a, b| (a.len(), &a.arrows).cmp(&(b.len(), &b.arrows)));
    Ok((out, truncated))
}

/// Default length cap for cycles of image `g`:
/// `deg(g) * longest face + number of contracted arrows`.
pub fn default_cycle_length(c: &Contraction, g: &Monomial) -> usize {
    g.degree() as usize * c.source.longest_face() + c.contracted.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCandidates {
    pub vertex: VertexId,
    pub cycles: usize,
    pub distinct_mod_i: usize,
    pub flagged: usize,
    pub truncated: bool,
}

/// The cycles of image `g` at every vertex (deduplicated modulo `I`) and the
/// linear conditions for a combination of them to be central.
pub struct CentralSystem {
    pub candidates: Vec<Vec<PathWord>>,
    pub stats: Vec<VertexCandidates>,
    /// One row per class of commutator terms; columns index `candidates` flattened.
    pub rows: Vec<Vec<Q>>,
    pub ncols: usize,
    /// Some class relations were undecided or enumeration was cut short.
    pub uncertain: bool,
    pub truncated: bool,
}

impl CentralSystem {
    pub fn column_of(&self, vertex: VertexId, k: usize) -> usize {
        self.candidates[..vertex]
            .iter()
            .map(|v| v.len())
            .sum::<usize>()
            + k
    }

    pub fn candidate_from(&self, x: &[Q]) -> CentralCandidate {
        let mut z = CentralCandidate::zero();
        let mut col = 0;
        for cands in &self.candidates {
            for p in cands {
                z.push(x[col].clone(), p.clone());
                col += 1;
            }
        }
        z
    }
}

pub fn central_system(
    c: &Contraction,
    cache: &mut ClassCache,
    g: &Monomial,
    max_len: usize,
    max_states: usize,
) -> Result<CentralSystem> {
    let q = &c.source;
    let mut candidates = Vec::new();
    let mut stats = Vec::new();
    let mut truncated = false;
    for i in 0..q.num_vertices() {
        let (cycles, cut) = cycles_with_image(c, i, g, max_len, max_states)?;
        truncated |= cut;
        let d = dedup_mod_i(&cycles, cache);
        stats.push(VertexCandidates {
            vertex: i,
            cycles: cycles.len(),
            distinct_mod_i: d.representatives.len(),
            flagged: d.flagged.iter().filter(|&&f| f).count(),
            truncated: cut,
        });
        candidates.push(d.representatives);
    }
    let ncols: usize = candidates.iter().map(|v| v.len()).sum();
    let offsets: Vec<usize> = candidates
        .iter()
        .scan(0, |acc, v| {
            let o = *acc;
            *acc += v.len();
            Some(o)
        })
        .collect();
    let mut rows = Vec::new();
    let mut uncertain = stats.iter().any(|s| s.flagged > 0);
    for a in 0..q.num_arrows() {
        let arrow = q.arrow(a);
        let step = PathWord {
            base: arrow.tail,
            arrows: vec![a],
        };
        let mut terms: Vec<(usize, Q, PathWord)> = Vec::new();
        for (k, p) in candidates[arrow.tail].iter().enumerate() {
            terms.push((offsets[arrow.tail] + k, Q::one(), p.then(&step)));
        }
        for (k, p) in candidates[arrow.head].iter().enumerate() {
            terms.push((offsets[arrow.head] + k, -Q::one(), step.then(p)));
        }
        let groups = class_groups(cache, terms.iter().map(|t| &t.2));
        uncertain |= !groups.unsure.is_empty();
        for comp in &groups.components {
            let mut row = vec![Q::zero(); ncols];
            for &k in comp {
                row[terms[k].0] += &terms[k].1;
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    Ok(CentralSystem {
        candidates,
        stats,
        rows,
        ncols,
        uncertain,
        truncated,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReducedVerdict {
    Yes,
    No,
    NoUpToBound,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedCenterReport {
    pub verdict: ReducedVerdict,
    pub in_homotopy_center: Verdict,
    pub candidates: Vec<VertexCandidates>,
    pub max_cycle_length: usize,
    #[serde(serialize_with = "ser_candidate")]
    pub witness: Option<CentralCandidate>,
}

fn ser_candidate<S: serde::Serializer>(
    z: &Option<CentralCandidate>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match z {
        Some(z) => z.to_value().serialize(s),
        None => s.serialize_none(),
    }
}

/// Whether some central element has reduced image `g`: a combination of
/// image-`g` cycles at each vertex, commuting with every arrow, whose
/// coefficients sum to one at every vertex.
pub fn reduced_center_contains(
    c: &Contraction,
    rs: &RewriteSystem,
    g: &Monomial,
    b: &SearchBounds,
) -> Result<ReducedCenterReport> {
    reduced_center_contains_with(c, rs, g, b, default_cycle_length(c, g))
}

pub fn reduced_center_contains_with(
    c: &Contraction,
    rs: &RewriteSystem,
    g: &Monomial,
    b: &SearchBounds,
    max_cycle_length: usize,
) -> Result<ReducedCenterReport> {
    g.check_catalog(c.nvars())?;
    let hc = homotopy_center_contains(c, g, b)?.verdict;
    let mut report = ReducedCenterReport {
        verdict: ReducedVerdict::Unknown,
        in_homotopy_center: hc,
        candidates: vec![],
        max_cycle_length,
        witness: None,
    };
    match hc {
        Verdict::No => {
            report.verdict = ReducedVerdict::No;
            return Ok(report);
        }
        Verdict::Unknown => return Ok(report),
        Verdict::Yes => {}
    }
    let mut cache = ClassCache::new(rs, *b);
    let sys = match central_system(c, &mut cache, g, max_cycle_length, b.max_states) {
        Ok(s) => s,
        Err(Error::Resource(_)) => return Ok(report),
        Err(e) => return Err(e),
    };
    report.candidates = sys.stats.clone();
    let mut rows = sys.rows.clone();
    let mut rhs = vec![Q::zero(); rows.len()];
    for (i, cands) in sys.candidates.iter().enumerate() {
        let mut row = vec![Q::zero(); sys.ncols];
        for k in 0..cands.len() {
            row[sys.column_of(i, k)] = Q::one();
        }
        rows.push(row);
        rhs.push(Q::one());
    }
    match solve(&rows, &rhs, sys.ncols) {
        Some(x) => {
            let z = sys.candidate_from(&x);
            // A finer class partition only adds constraints, so the solution
            // stands; recheck it independently anyway.
            if verify_central_cached(&mut cache, &z).central == Verdict::Yes {
                report.verdict = ReducedVerdict::Yes;
                report.witness = Some(z);
            }
        }
        None => {
            report.verdict = if sys.uncertain {
                ReducedVerdict::Unknown
            } else if sys.truncated {
                ReducedVerdict::NoUpToBound
            } else {
                ReducedVerdict::No
            };
        }
    }
    Ok(report)
}

/// A basis of the central elements that are combinations of image-`g`
/// cycles (up to the given bounds). Empty if the system is uncertain.
pub fn central_basis(
    c: &Contraction,
    cache: &mut ClassCache,
    g: &Monomial,
    max_len: usize,
    max_states: usize,
) -> Result<Vec<CentralCandidate>> {
    let sys = central_system(c, cache, g, max_len, max_states)?;
    if sys.uncertain {
        return Ok(vec![]);
    }
    Ok(null_space(&sys.rows, sys.ncols)
        .iter()
        .map(|v| sys.candidate_from(v))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilReport {
    pub central: Verdict,
    pub z_squared_zero: Verdict,
    pub psi_z_zero: Verdict,
    /// For central `z`: `ψ(z) = 0` iff `z² = 0`. Vacuously Yes for non-central `z`.
    pub theorem_nil_consistent: Verdict,
}

/// `z²` as a combination: products of terms at the same vertex.
pub fn square_terms(z: &CentralCandidate) -> Vec<(Q, PathWord)> {
    let mut out = Vec::new();
    for terms in z.components.values() {
        for s in terms {
            for t in terms {
                out.push((&s.coeff * &t.coeff, s.path.then(&t.path)));
            }
        }
    }
    out
}

pub fn nilpotency_and_kernel_check(
    c: &Contraction,
    z: &CentralCandidate,
    b: &SearchBounds,
) -> Result<NilReport> {
    z.check(&c.source)?;
    let rs = build_relations(&c.source);
    let rt = build_relations(&c.target);
    let mut cache = ClassCache::new(&rs, *b);
    let mut target_cache = ClassCache::new(&rt, *b);
    Ok(nil_check_cached(c, &mut cache, &mut target_cache, z))
}

pub fn nil_check_cached(
    c: &Contraction,
    cache: &mut ClassCache,
    target_cache: &mut ClassCache,
    z: &CentralCandidate,
) -> NilReport {
    let central = verify_central_cached(cache, z).central;
    let z_squared_zero = combination_is_zero(cache, &square_terms(z));
    let image: Vec<(Q, PathWord)> = z
        .terms()
        .map(|t| (t.coeff.clone(), c.psi(&t.path)))
        .collect();
    let psi_z_zero = combination_is_zero(target_cache, &image);
    let theorem_nil_consistent = match central {
        Verdict::Yes => psi_z_zero.iff(z_squared_zero),
        Verdict::No => Verdict::Yes,
        Verdict::Unknown => Verdict::Unknown,
    };
    NilReport {
        central,
        z_squared_zero,
        psi_z_zero,
        theorem_nil_consistent,
    }
}

/// Writing `z = Σ_i (p_i − q_i)` with `p_i` the positive and `q_i` the
/// negated negative part at `i`, checks `p_i q_i = q_i p_i` at every vertex.
pub fn commutation_property_check(
    rs: &RewriteSystem,
    z: &CentralCandidate,
    b: &SearchBounds,
) -> Verdict {
    let mut cache = ClassCache::new(rs, *b);
    commutation_cached(&mut cache, z)
}

pub fn commutation_cached(cache: &mut ClassCache, z: &CentralCandidate) -> Verdict {
    let mut verdict = Verdict::Yes;
    for terms in z.components.values() {
        let pos: Vec<&Term> = terms.iter().filter(|t| t.coeff.is_positive()).collect();
        let neg: Vec<&Term> = terms.iter().filter(|t| t.coeff.is_negative()).collect();
        let mut comb = Vec::new();
        for p in &pos {
            for n in &neg {
                let c = &p.coeff * -&n.coeff;
                comb.push((c.clone(), p.path.then(&n.path)));
                comb.push((-c, n.path.then(&p.path)));
            }
        }
        verdict = verdict.and(combination_is_zero(cache, &comb));
    }
    verdict
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerReport {
    pub n: Option<u32>,
    pub verdicts: Vec<(u32, ReducedVerdict)>,
}

/// Smallest `n <= n_max` with `g^n` in the reduced center.
pub fn power_in_reduced_center(
    c: &Contraction,
    rs: &RewriteSystem,
    g: &Monomial,
    n_max: u32,
    b: &SearchBounds,
) -> Result<PowerReport> {
    let mut verdicts = Vec::new();
    let witnesses = homotopy_center_contains(c, g, b)?.witnesses;
    let mut cache = ClassCache::new(rs, *b);
    for n in 1..=n_max {
        if let Some(z) = witness_power(&witnesses, n as usize) {
            if verify_central_cached(&mut cache, &z).central == Verdict::Yes {
                verdicts.push((n, ReducedVerdict::Yes));
                return Ok(PowerReport {
                    n: Some(n),
                    verdicts,
                });
            }
        }
        let r = reduced_center_contains(c, rs, &g.pow(n), b)?;
        let v = r.verdict.clone();
        verdicts.push((n, v.clone()));
        if v == ReducedVerdict::Yes {
            return Ok(PowerReport {
                n: Some(n),
                verdicts,
            });
        }
    }
    Ok(PowerReport { n: None, verdicts })
}

/// `Σ_i w_i^n` for one image-`g` cycle `w_i` at every vertex.
fn witness_power(witnesses: &[Option<PathWord>], n: usize) -> Option<CentralCandidate> {
    let mut z = CentralCandidate::zero();
    for w in witnesses {
        z.push(Q::one(), w.as_ref()?.power(n));
    }
    Some(z)
}

/// The candidate `(p − q)a + a(p − q)` from two paths `p, q` and an arrow
/// `a` closing them into cycles (`a` runs from the head of `p` to its tail).
pub fn sandwich_candidate(
    q: &DimerQuiver,
    p: &PathWord,
    r: &PathWord,
    a: ArrowId,
) -> CentralCandidate {
    let step = PathWord {
        base: q.arrow(a).tail,
        arrows: vec![a],
    };
    let mut z = CentralCandidate::zero();
    z.push(Q::one(), step.then(p));
    z.push(-Q::one(), step.then(r));
    z.push(Q::one(), p.then(&step));
    z.push(-Q::one(), r.then(&step));
    z
}

/// Merges equal paths within each component (syntactic equality only).
pub fn collect_like_terms(z: &CentralCandidate) -> CentralCandidate {
    let mut out = CentralCandidate::zero();
    for terms in z.components.values() {
        let mut acc: HashMap<&PathWord, Q> = HashMap::new();
        let mut order = Vec::new();
        for t in terms {
            if !acc.contains_key(&t.path) {
                order.push(&t.path);
            }
            *acc.entry(&t.path).or_insert_with(Q::zero) += &t.coeff;
        }
        for p in order {
            out.push(acc[p].clone(), p.clone());
        }
    }
    out
}
