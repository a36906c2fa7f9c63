//! Monomials in the variables `x_D`, one per simple matching of the target
//! quiver, stored as exponent vectors in catalog order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{DomainError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    pub exps: Vec<u32>,
}

/// Variable names in catalog order: `x, y, z, w` for up to four variables,
/// otherwise `x1, x2, ...`.
pub fn variable_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=n).map(|k| format!("x{k}")).collect()
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn sigma(nvars: usize) -> Self {
        Monomial {
            exps: vec![1; nvars],
        }
    }

    pub fn variable(nvars: usize, k: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[k] = 1;
        m
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn pow(&self, n: u32) -> Self {
        Monomial {
            exps: self.exps.iter().map(|e| e * n).collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Self {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Monomial) {
        for (a, b) in self.exps.iter_mut().zip(&other.exps) {
            *a += b;
        }
    }

    /// `self` divides `other` componentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn checked_div(&self, d: &Monomial) -> Option<Monomial> {
        d.divides(self).then(|| Monomial {
            exps: self.exps.iter().zip(&d.exps).map(|(a, b)| a - b).collect(),
        })
    }

    /// `Some(n)` when this is `σ^n`.
    pub fn sigma_power(&self) -> Option<u32> {
        let first = *self.exps.first()?;
        self.exps.iter().all(|&e| e == first).then_some(first)
    }

    pub fn sigma_divides(&self) -> bool {
        !self.exps.is_empty() && self.exps.iter().all(|&e| e >= 1)
    }

    pub fn divide_by_sigma(&self) -> Result<Monomial> {
        if let Some(k) = self.exps.iter().position(|&e| e == 0) {
            return Err(DomainError::SigmaDoesNotDivide(k).into());
        }
        Ok(Monomial {
            exps: self.exps.iter().map(|e| e - 1).collect(),
        })
    }

    pub fn check_catalog(&self, nvars: usize) -> Result<()> {
        if self.nvars() != nvars {
            return Err(DomainError::CatalogMismatch {
                expected: nvars,
                found: self.nvars(),
            }
            .into());
        }
        Ok(())
    }

    /// Product notation such as `x^2*y`, using the given names.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| {
                if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn render_default(&self) -> String {
        self.render(&variable_names(self.nvars()))
    }

    /// Parses `1`, `x^2*y`, `x y^2`, `sigma^2*z` or `s*z` (`sigma`/`s` is the
    /// all-ones monomial), or a bracketed exponent vector `[1,1,2]`.
    pub fn parse(text: &str, names: &[String]) -> Result<Monomial> {
        let nvars = names.len();
        let text = text.trim();
        if text.starts_with('[') {
            let exps: Vec<u32> = serde_json::from_str(text)
                .map_err(|e| DomainError::Other(format!("bad exponent vector `{text}`: {e}")))?;
            let m = Monomial { exps };
            m.check_catalog(nvars)?;
            return Ok(m);
        }
        let mut m = Self::one(nvars);
        for factor in text.split(['*', ' ']).filter(|s| !s.is_empty()) {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<u32>()
                        .map_err(|_| DomainError::Other(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            if base == "1" {
                continue;
            }
            if base == "sigma" || base == "s" {
                m.add_assign(&Self::sigma(nvars).pow(exp));
                continue;
            }
            let k = names
                .iter()
                .position(|n| n == base)
                .ok_or_else(|| DomainError::Other(format!("unknown variable `{base}`")))?;
            m.exps[k] += exp;
        }
        Ok(m)
    }
}

impl Add for &Monomial {
    type Output = Monomial;
    fn add(self, other: &Monomial) -> Monomial {
        self.mul(other)
    }
}

/// Graded order: lower degree first, then larger leading exponents first
/// (so `x^2 < x*y < y^2` in degree two).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_default())
    }
}

/// All monomials in `nvars` variables of total degree `<= max_degree`, in
/// graded order.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == cur.len() {
            out.push(Monomial { exps: cur.clone() });
            return;
        }
        for e in 0..=left {
            cur[k] = e;
            rec(k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, max_degree, &mut cur, &mut out);
    out.sort();
    out
}
