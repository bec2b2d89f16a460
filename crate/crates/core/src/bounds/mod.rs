//! Symbolic elimination of coradical shapes.
//!
//! A shape records `|G|` and the sizes `n_i` of the matrix blocks of a coradical
//! `k[G] ⊕ M^c(n_1) ⊕ … ⊕ M^c(n_t)`. Each rule is a hypothesis plus an inequality or
//! divisibility statement; a shape is excluded when some applicable rule fires.

mod pq;
mod rules;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coalgebra::{coradical, skew_primitives};
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;

pub use pq::{pq_checker, pq_sweep, PqStep, PqVerdict};
pub use rules::{
    blocks_over_cp, extension_argument_16, grouplike_order_divides_blocks, h1_lower_bound, p1_lower_bound,
    rounded_p1_bound, single_block_generates, swapped_blocks, Rule, RULES,
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoradicalShape {
    pub dim: u64,
    pub g: u64,
    /// Sorted block sizes, each at least 2.
    pub parts: Vec<u64>,
}

impl CoradicalShape {
    pub fn new(dim: u64, g: u64, mut parts: Vec<u64>) -> Result<Self> {
        parts.sort_unstable();
        if g == 0 || parts.iter().any(|&n| n < 2) {
            return Err(Error::Precondition("need |G| ≥ 1 and block sizes ≥ 2".into()));
        }
        let s = CoradicalShape { dim, g, parts };
        if s.coradical_dim() > dim {
            return Err(Error::Precondition(format!("coradical of dimension {} exceeds {dim}", s.coradical_dim())));
        }
        Ok(s)
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.parts.iter().map(|n| n * n).sum()
    }

    pub fn coradical_dim(&self) -> u64 {
        self.g + self.sum_of_squares()
    }

    pub fn is_cosemisimple(&self) -> bool {
        self.coradical_dim() == self.dim
    }

    pub fn is_pointed(&self) -> bool {
        self.parts.is_empty()
    }

    /// Dimension of the sum of the simple subcoalgebras of dimension `d²`.
    pub fn block_dim(&self, d: u64) -> u64 {
        if d == 1 {
            self.g
        } else {
            d * d * self.parts.iter().filter(|&&n| n == d).count() as u64
        }
    }

    pub fn t(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for CoradicalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.g == 1 {
            write!(f, "k·1")?;
        } else {
            write!(f, "k[G], |G| = {}", self.g)?;
        }
        for n in &self.parts {
            write!(f, " ⊕ M^c({n})")?;
        }
        Ok(())
    }
}

/// Non-cosemisimple shapes with `|G|` dividing `dim`, including pointed ones.
pub fn enumerate_shapes(dim: u64) -> Vec<CoradicalShape> {
    fn parts_below(budget: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(acc.clone());
        let mut n = min;
        while n * n <= budget {
            acc.push(n);
            parts_below(budget - n * n, n, acc, out);
            acc.pop();
            n += 1;
        }
    }
    let mut shapes = Vec::new();
    for g in (1..=dim).filter(|g| dim % g == 0) {
        if g >= dim {
            continue;
        }
        let mut all = Vec::new();
        parts_below(dim - g - 1, 2, &mut Vec::new(), &mut all);
        for parts in all {
            shapes.push(CoradicalShape { dim, g, parts });
        }
    }
    shapes.sort();
    shapes
}

/// How the absence of nontrivial skew-primitives is known, if it is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoSkewCertificate {
    /// Non-semisimple of squarefree dimension.
    SquarefreeDimension,
    /// `G = 1`: a skew-primitive would be primitive, hence zero.
    TrivialGroup,
    /// Computed from an explicit Hopf algebra.
    Verified,
    /// Asserted by the caller.
    Asserted,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Context {
    pub assume_no_skew: bool,
    pub verified_no_skew: bool,
    /// Whether every non-pointed, non-cosemisimple shape of the same dimension with
    /// `|G| > 1` is excluded. Filled in by [`report`].
    pub nontrivial_grouplikes_excluded: Option<bool>,
}

impl Context {
    pub fn certificate(&self, shape: &CoradicalShape) -> Option<NoSkewCertificate> {
        if is_squarefree(shape.dim) && !shape.is_cosemisimple() {
            Some(NoSkewCertificate::SquarefreeDimension)
        } else if shape.g == 1 {
            Some(NoSkewCertificate::TrivialGroup)
        } else if self.verified_no_skew {
            Some(NoSkewCertificate::Verified)
        } else if self.assume_no_skew {
            Some(NoSkewCertificate::Asserted)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub rule: String,
    pub applicable: bool,
    pub fires: bool,
    pub values: BTreeMap<String, i64>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub shape: CoradicalShape,
    pub certificate: Option<NoSkewCertificate>,
    pub verdicts: Vec<Verdict>,
    pub excluded: bool,
    pub open: bool,
    /// Ids of the rules that fire.
    pub reasons: Vec<String>,
}

impl ExclusionReport {
    pub fn fired(&self, rule: &str) -> bool {
        self.reasons.iter().any(|r| r == rule)
    }
}

pub fn is_squarefree(n: u64) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    n >= 1
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
}

/// Evaluates every rule on one shape.
pub fn evaluate(shape: &CoradicalShape, ctx: &Context) -> ExclusionReport {
    let verdicts: Vec<Verdict> = RULES.iter().map(|r| r.evaluate(shape, ctx)).collect();
    let reasons: Vec<String> = verdicts.iter().filter(|v| v.fires).map(|v| v.rule.clone()).collect();
    let excluded = !reasons.is_empty();
    ExclusionReport { shape: shape.clone(), certificate: ctx.certificate(shape), verdicts, excluded, open: !excluded, reasons }
}

/// Reports for the non-pointed non-cosemisimple shapes of dimension `dim`.
///
/// Rules that depend on other shapes of the same dimension are evaluated in a second
/// pass, after the first pass has decided every shape with `|G| > 1`.
pub fn report(dim: u64, assume_no_skew: bool) -> Vec<ExclusionReport> {
    let shapes: Vec<CoradicalShape> = enumerate_shapes(dim).into_iter().filter(|s| !s.is_pointed()).collect();
    let base = Context { assume_no_skew, ..Context::default() };
    let first: Vec<ExclusionReport> = shapes.iter().map(|s| evaluate(s, &base)).collect();
    let others = first.iter().filter(|r| r.shape.g > 1).all(|r| r.excluded);
    let ctx = Context { nontrivial_grouplikes_excluded: Some(others), ..base };
    shapes.iter().map(|s| evaluate(s, &ctx)).collect()
}

pub const DIM14_CONCLUSION: &str =
    "every Hopf algebra of dimension 14 is semisimple, hence a group algebra or the dual of one";

pub fn dim14_report() -> Result<Vec<ExclusionReport>> {
    let reports = report(14, false);
    if let Some(r) = reports.iter().find(|r| !r.excluded) {
        return Err(Error::Internal(format!("shape {} survives in dimension 14", r.shape)));
    }
    Ok(reports)
}

pub fn dim16_report() -> Vec<ExclusionReport> {
    report(16, false)
}

/// The coradical shape of `h` over its field of definition.
pub fn shape_of(h: &HopfAlgebra) -> Result<CoradicalShape> {
    let cor = coradical(&h.coalgebra)?;
    let g = cor.components.iter().filter(|c| c.d == 1).count() as u64;
    let parts = cor.components.iter().filter(|c| c.d > 1).map(|c| c.d as u64).collect();
    CoradicalShape::new(h.dim() as u64, g, parts)
}

/// Whether `h` has no skew-primitive outside the span of its grouplikes.
pub fn has_no_nontrivial_skew_primitive(h: &HopfAlgebra) -> Result<bool> {
    let cor = coradical(&h.coalgebra)?;
    let g: Vec<_> = cor.components.iter().filter_map(|c| c.grouplike()).collect();
    for a in &g {
        for b in &g {
            if skew_primitives(&h.coalgebra, a, b)?.nontrivial_dim > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
