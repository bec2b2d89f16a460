use std::collections::BTreeMap;

use super::{is_prime, Context, CoradicalShape, Verdict};

type Values = BTreeMap<String, i64>;

/// An exclusion rule: a hypothesis on the shape and a statement that fires on it.
pub struct Rule {
    pub id: &'static str,
    pub statement: &'static str,
    /// `Err` carries the reason the rule does not apply.
    pub hypothesis: fn(&CoradicalShape, &Context) -> Result<(), String>,
    pub check: fn(&CoradicalShape, &Context) -> (bool, Values),
}

impl Rule {
    pub fn evaluate(&self, shape: &CoradicalShape, ctx: &Context) -> Verdict {
        match (self.hypothesis)(shape, ctx) {
            Ok(()) => {
                let (fires, values) = (self.check)(shape, ctx);
                Verdict { rule: self.id.into(), applicable: true, fires, values, note: self.statement.into() }
            }
            Err(why) => Verdict { rule: self.id.into(), applicable: false, fires: false, values: Values::new(), note: why },
        }
    }
}

pub const RULES: &[Rule] = &[
    Rule {
        id: "grouplike-order-divides-blocks",
        statement: "|G| divides dim H and dim H_{0,d} for every d",
        hypothesis: |_, _| Ok(()),
        check: |s, _| divisibility(s),
    },
    Rule {
        id: "p1-lower-bound",
        statement: "dim H > |G| + Σ n_i² + (min(n_1², 2 n_1 |G|) rounded up to a multiple of |G|)",
        hypothesis: needs_no_skew,
        check: |s, _| p1_values(s),
    },
    Rule {
        id: "h1-lower-bound",
        statement: "dim H > (1 + 2 n_1)|G| + Σ n_i²",
        hypothesis: needs_no_skew,
        check: |s, _| h1_values(s),
    },
    Rule {
        id: "p-blocks-over-cp",
        statement: "dim H = pq and H_0 = k[C_p] ⊕ t·M(p) force t < (q − 1 − 2p)/p",
        hypothesis: |s, _| cp_blocks_params(s).map(|_| ()),
        check: |s, _| {
            let (p, q, t) = cp_blocks_params(s).expect("checked by the hypothesis");
            cp_values(p, q, t)
        },
    },
    Rule {
        id: "single-block-generates",
        statement: "for dim H = pq the unique 4-dimensional block is S-stable and generates H, which is impossible",
        hypothesis: |s, _| {
            non_cosemisimple(s)?;
            two_primes(s.dim).ok_or("dimension is not a product of two distinct primes")?;
            if s.parts != [2] {
                return Err("needs exactly one block, of size 2".into());
            }
            Ok(())
        },
        check: |s, _| {
            let (p, q) = two_primes(s.dim).expect("checked by the hypothesis");
            (true, values(&[("p", p as i64), ("q", q as i64)]))
        },
    },
    Rule {
        id: "swapped-blocks-stabilize",
        statement: "for dim H = pq and H_0 = k·1 ⊕ M^c(2) ⊕ M^c(2), S⁴ = id and some 4-dimensional block is S-stable",
        hypothesis: |s, ctx| {
            non_cosemisimple(s)?;
            two_primes(s.dim).ok_or("dimension is not a product of two distinct primes")?;
            if s.g != 1 || s.parts != [2, 2] {
                return Err("needs k·1 ⊕ M^c(2) ⊕ M^c(2)".into());
            }
            match ctx.nontrivial_grouplikes_excluded {
                Some(true) => Ok(()),
                Some(false) => Err("a shape with nontrivial grouplikes survives, so G(H*) may be nontrivial".into()),
                None => Err("needs the verdicts on shapes with nontrivial grouplikes".into()),
            }
        },
        check: |_, _| (true, values(&[("g", 1), ("dual_g", 1), ("antipode_order_bound", 4)])),
    },
    Rule {
        id: "extension-argument-16",
        statement: "k·1 ⊕ M^c(2) in dimension 16: extension and dimension-8 arguments, cited and not recomputed",
        hypothesis: |s, _| {
            if s.dim == 16 && s.g == 1 && s.parts == [2] {
                Ok(())
            } else {
                Err("only for k·1 ⊕ M^c(2) in dimension 16".into())
            }
        },
        check: |_, _| (true, Values::new()),
    },
];

fn values(pairs: &[(&str, i64)]) -> Values {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn non_cosemisimple(s: &CoradicalShape) -> Result<(), String> {
    if s.is_cosemisimple() {
        Err("shape is cosemisimple".into())
    } else if s.is_pointed() {
        Err("shape is pointed".into())
    } else {
        Ok(())
    }
}

fn needs_no_skew(s: &CoradicalShape, ctx: &Context) -> Result<(), String> {
    non_cosemisimple(s)?;
    ctx.certificate(s).map(|_| ()).ok_or_else(|| "absence of nontrivial skew-primitives not certified".into())
}

fn two_primes(n: u64) -> Option<(u64, u64)> {
    let p = (2..n).find(|p| n % p == 0)?;
    let q = n / p;
    (p < q && is_prime(p) && is_prime(q)).then_some((p, q))
}

fn divisibility(s: &CoradicalShape) -> (bool, Values) {
    let mut v = values(&[("g", s.g as i64), ("dim", s.dim as i64)]);
    let mut fires = s.dim % s.g != 0;
    let mut ds: Vec<u64> = s.parts.clone();
    ds.dedup();
    for d in std::iter::once(1).chain(ds) {
        let b = s.block_dim(d);
        v.insert(format!("h0_{d}"), b as i64);
        fires |= b % s.g != 0;
    }
    (fires, v)
}

/// `min(n_1², 2 n_1 g)` and its rounding up to a multiple of `g`.
pub fn rounded_p1_bound(n1: u64, g: u64) -> (u64, u64) {
    let raw = (n1 * n1).min(2 * n1 * g);
    (raw, raw.div_ceil(g) * g)
}

fn p1_values(s: &CoradicalShape) -> (bool, Values) {
    let n1 = s.parts[0];
    let (raw, rounded) = rounded_p1_bound(n1, s.g);
    let bound = s.coradical_dim() + rounded;
    let v = values(&[
        ("n1", n1 as i64),
        ("p1_raw", raw as i64),
        ("p1_rounded", rounded as i64),
        ("bound", bound as i64),
        ("dim", s.dim as i64),
    ]);
    (s.dim <= bound, v)
}

fn h1_values(s: &CoradicalShape) -> (bool, Values) {
    let n1 = s.parts[0];
    let bound = (1 + 2 * n1) * s.g + s.sum_of_squares();
    (s.dim <= bound, values(&[("n1", n1 as i64), ("bound", bound as i64), ("dim", s.dim as i64)]))
}

fn cp_blocks_params(s: &CoradicalShape) -> Result<(u64, u64, u64), String> {
    non_cosemisimple(s)?;
    let (p, q) = two_primes(s.dim).ok_or("dimension is not a product of two distinct primes")?;
    if s.g != p || s.parts.iter().any(|&n| n != p) {
        return Err("needs |G| = p and every block of size p".into());
    }
    Ok((p, q, s.t() as u64))
}

fn cp_values(p: u64, q: u64, t: u64) -> (bool, Values) {
    let lhs = (t * p) as i64;
    let rhs = q as i64 - 1 - 2 * p as i64;
    (lhs >= rhs, values(&[("p", p as i64), ("q", q as i64), ("t", t as i64), ("tp", lhs), ("q_minus_1_minus_2p", rhs)]))
}

fn verdict_for(id: &str, shape: &CoradicalShape, ctx: &Context) -> Verdict {
    RULES.iter().find(|r| r.id == id).expect("known rule").evaluate(shape, ctx)
}

pub fn grouplike_order_divides_blocks(shape: &CoradicalShape) -> Verdict {
    verdict_for("grouplike-order-divides-blocks", shape, &Context::default())
}

/// Lower bound on `dim P_1` when no nontrivial skew-primitive exists.
pub fn p1_lower_bound(shape: &CoradicalShape, ctx: &Context) -> Verdict {
    verdict_for("p1-lower-bound", shape, ctx)
}

/// Lower bound on `dim H_1` from the injective envelope of the trivial comodule.
pub fn h1_lower_bound(shape: &CoradicalShape, ctx: &Context) -> Verdict {
    verdict_for("h1-lower-bound", shape, ctx)
}

/// `t` blocks over `k[C_p]` in dimension `pq`: fires iff `t ≥ (q − 1 − 2p)/p`.
///
/// The statement uses blocks `M(p)` of size `p`; its instances in dimension `2q` use
/// `M^c(2)`, which coincide with it only for `p = 2`.
pub fn blocks_over_cp(p: u64, q: u64, t: u64) -> Verdict {
    let shape = CoradicalShape { dim: p * q, g: p, parts: vec![p; t as usize] };
    if !(is_prime(p) && is_prime(q) && p < q) || t == 0 {
        return Verdict {
            rule: "p-blocks-over-cp".into(),
            applicable: false,
            fires: false,
            values: Values::new(),
            note: "needs primes p < q and t ≥ 1".into(),
        };
    }
    let (fires, values) = cp_values(p, q, t);
    let applicable = !shape.is_cosemisimple() && shape.coradical_dim() <= shape.dim;
    Verdict {
        rule: "p-blocks-over-cp".into(),
        applicable,
        fires: applicable && fires,
        values,
        note: RULES[3].statement.into(),
    }
}

pub fn single_block_generates(shape: &CoradicalShape) -> Verdict {
    verdict_for("single-block-generates", shape, &Context::default())
}

pub fn swapped_blocks(shape: &CoradicalShape, ctx: &Context) -> Verdict {
    verdict_for("swapped-blocks-stabilize", shape, ctx)
}

pub fn extension_argument_16(shape: &CoradicalShape) -> Verdict {
    verdict_for("extension-argument-16", shape, &Context::default())
}
