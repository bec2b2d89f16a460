use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::is_prime;
use crate::error::{Error, Result};

/// One inequality of the case analysis with the numbers it was evaluated at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqStep {
    pub case: String,
    pub inequality: String,
    pub values: BTreeMap<String, i64>,
    /// The inequality contradicts the hypotheses on `p, q`.
    pub contradiction: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PqVerdict {
    Semisimple { p: u64, q: u64, steps: Vec<PqStep> },
    HypothesesFail { p: u64, q: u64, reason: String },
}

impl PqVerdict {
    pub fn is_semisimple(&self) -> bool {
        matches!(self, PqVerdict::Semisimple { .. })
    }
}

fn step(case: &str, inequality: &str, values: &[(&str, u64)], contradiction: bool) -> PqStep {
    PqStep {
        case: case.into(),
        inequality: inequality.into(),
        values: values.iter().map(|(k, v)| (k.to_string(), *v as i64)).collect(),
        contradiction,
    }
}

/// Replays the argument that a Hopf algebra of dimension `pq` is semisimple for odd
/// primes `p < q ≤ 1 + 3p`, `q ≤ 13`.
///
/// A non-semisimple `H` has no nontrivial skew-primitive, may be assumed to have
/// `G(H) ≅ C_p`, and `S` has order `4p`. Each branch on the blocks of `H_0` yields an
/// inequality on `q` that is checked against the hypotheses.
pub fn pq_checker(p: u64, q: u64) -> Result<PqVerdict> {
    if !is_prime(p) || !is_prime(q) || p == 2 || q == 2 || p >= q {
        return Err(Error::Precondition(format!("need odd primes p < q, got ({p}, {q})")));
    }
    if q > 1 + 3 * p {
        return Ok(PqVerdict::HypothesesFail { p, q, reason: format!("q = {q} > 1 + 3p = {}", 1 + 3 * p) });
    }
    if q > 13 {
        return Ok(PqVerdict::HypothesesFail { p, q, reason: format!("q = {q} > 13") });
    }
    let pq = p * q;
    let steps = vec![
        step(
            "all blocks of size at least p",
            "pq > (1 + 2p)p + p², i.e. q > 3p + 1",
            &[("pq", pq), ("bound", (1 + 2 * p) * p + p * p)],
            pq <= (1 + 2 * p) * p + p * p,
        ),
        step(
            "exactly p blocks M^c(2), permuted cyclically by S",
            "dim P_1 ≥ 4p², so pq > 5p + 4p², i.e. q > 5 + 4p",
            &[("q", q), ("bound", 5 + 4 * p), ("dim_p1_min", 4 * p * p)],
            q <= 5 + 4 * p,
        ),
        step(
            "p blocks M^c(2) and further blocks with n_1 < p",
            "dim H_0 ≥ 9p and dim P_1 ≥ 4p, so q > 13",
            &[("q", q), ("bound", 13), ("dim_h0_min", 9 * p), ("dim_p1_min", 4 * p)],
            q <= 13,
        ),
        step(
            "p blocks M^c(2) and further blocks with n_1 ≥ p",
            "dim H_0 ≥ 5p + p² and dim P_1 ≥ 4p, so q > 9 + p",
            &[("q", q), ("bound", 9 + p), ("dim_h0_min", 5 * p + p * p), ("dim_p1_min", 4 * p)],
            q <= 9 + p,
        ),
        step(
            "p blocks M^c(n) with 2 < n < p",
            "dim H_0 ≥ 10p and dim P_1 ≥ 6p, so q > 16",
            &[("q", q), ("bound", 16), ("dim_h0_min", 10 * p), ("dim_p1_min", 6 * p)],
            q <= 16,
        ),
    ];
    if let Some(s) = steps.iter().find(|s| !s.contradiction) {
        return Err(Error::Internal(format!("case '{}' gives no contradiction for ({p}, {q})", s.case)));
    }
    Ok(PqVerdict::Semisimple { p, q, steps })
}

/// All pairs of odd primes `p < q ≤ limit`.
pub fn pq_sweep(limit: u64) -> Result<Vec<PqVerdict>> {
    let primes: Vec<u64> = (3..=limit).filter(|&n| is_prime(n)).collect();
    let mut out = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            out.push(pq_checker(p, q)?);
        }
    }
    Ok(out)
}
