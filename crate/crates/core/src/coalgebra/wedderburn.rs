//! Splitting of semisimple algebras into matrix blocks, and lifting of the
//! resulting matrix units through the radical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AlgebraSC;
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, add_vec, axpy, scale_vec, sub_vec, unit_vec, zero_vec, Vector};
use crate::exactmath::poly::{self, Poly};
use crate::exactmath::scalar::squarefree_part;
use crate::exactmath::{roots_in_field, Scalar, Subspace};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

const RANDOM_TRIES: usize = 24;

/// A split simple block `M_d(K)` with matrix units `E_ij` at `i*d + j`.
#[derive(Clone, Debug)]
pub(crate) struct SplitBlock {
    pub d: usize,
    pub units: Vec<Vector>,
}

/// A primitive central idempotent; `nonsplit` holds a minimal polynomial without roots
/// in the field when the piece could not be split further.
#[derive(Clone, Debug)]
pub(crate) struct CentralPiece {
    pub idempotent: Vector,
    pub nonsplit: Option<Poly>,
}

fn random_combination(rows: &[Vector], rng: &mut ChaCha8Rng) -> Vector {
    let mut v = zero_vec(rows[0].len());
    for r in rows {
        let c = Scalar::from_int(rng.gen_range(-3..=3));
        axpy(&mut v, &c, r);
    }
    v
}

/// Projection onto the generalized λ-eigenspace of `a`: with `μ = (t-λ)^m r`, the element
/// `r(a)/r(λ)` is idempotent modulo nilpotents and is lifted from there. `None` when λ is
/// the only eigenvalue.
fn eigen_idempotent(b: &AlgebraSC, a: &[Scalar], e: &[Scalar], mu: &Poly, lambda: &Scalar) -> Result<Option<Vector>> {
    let linear = [-lambda, Scalar::one()];
    let mut r = mu.clone();
    loop {
        let (q, rem) = poly::divrem(&r, &linear);
        if !poly::is_zero(&rem) {
            break;
        }
        r = q;
    }
    if poly::degree(&r).unwrap_or(0) == 0 {
        return Ok(None);
    }
    let scale = poly::eval(&r, lambda).inv().expect("λ is not a root of r");
    let p = scale_vec(&scale, &b.eval_poly(&r, a, e));
    lift_idempotent(b, &p).map(Some)
}

/// Tries the candidates in order; returns an idempotent strictly between 0 and `e`,
/// or the last minimal polynomial of degree at least two that had no root.
fn split_with(
    b: &AlgebraSC,
    e: &[Scalar],
    candidates: impl Iterator<Item = Vector>,
    conductor: u32,
) -> Result<std::result::Result<Vector, Option<Poly>>> {
    let mut witness = None;
    for a in candidates {
        let mu = b.min_poly(&a, e);
        if poly::degree(&mu).unwrap_or(0) < 2 {
            continue;
        }
        let roots = roots_in_field(&mu, conductor)?;
        match roots.first() {
            Some(lambda) => {
                if let Some(p) = eigen_idempotent(b, &a, e, &mu, lambda)? {
                    return Ok(Ok(p));
                }
            }
            None => witness = Some(mu),
        }
    }
    Ok(Err(witness))
}

/// Primitive central idempotents of a semisimple algebra.
pub(crate) fn central_pieces(b: &AlgebraSC, rng: &mut ChaCha8Rng) -> Result<Vec<CentralPiece>> {
    let z = b.center();
    let conductor = b.conductor();
    let mut stack = vec![b.unit().clone()];
    let mut out = Vec::new();
    while let Some(e) = stack.pop() {
        let ez: Vec<Vector> = z.basis().iter().map(|v| b.product(&e, v)).collect();
        let piece = Subspace::new(b.dim(), ez);
        if piece.dim() == 1 {
            out.push(CentralPiece { idempotent: e, nonsplit: None });
            continue;
        }
        let rows = piece.basis().to_vec();
        let randoms: Vec<Vector> = (0..RANDOM_TRIES).map(|_| random_combination(&rows, rng)).collect();
        match split_with(b, &e, rows.clone().into_iter().chain(randoms), conductor)? {
            Ok(p) => {
                stack.push(sub_vec(&e, &p));
                stack.push(p);
            }
            Err(witness) => {
                let mu = witness.ok_or_else(|| Error::Internal("center piece of scalars".into()))?;
                out.push(CentralPiece { idempotent: e, nonsplit: Some(mu) });
            }
        }
    }
    Ok(out)
}

/// Orthogonal primitive idempotents summing to `e`, for a simple block `eB`.
fn primitive_idempotents(b: &AlgebraSC, e: &[Scalar], rng: &mut ChaCha8Rng) -> Result<Vec<Vector>> {
    let conductor = b.conductor();
    let mut stack = vec![e.to_vec()];
    let mut out = Vec::new();
    while let Some(g) = stack.pop() {
        let corner = b.corner(&g, &g);
        if corner.dim() == 1 {
            out.push(g);
            continue;
        }
        let rows = corner.basis().to_vec();
        let mut pairs = Vec::new();
        for x in &rows {
            for y in &rows {
                pairs.push(b.product(x, y));
            }
        }
        let randoms: Vec<Vector> = (0..RANDOM_TRIES).map(|_| random_combination(&rows, rng)).collect();
        let cands = rows.iter().cloned().chain(pairs).chain(randoms);
        let mut found = split_with(b, &g, cands, conductor)?;
        if found.is_err() && conductor == 1 && rows.len() == 4 {
            if let Some(zd) = quaternion_zero_divisor(b, &g, &rows) {
                let cands: Vec<Vector> = std::iter::once(zd.clone()).chain(rows.iter().map(|r| b.product(&zd, r))).collect();
                if let Ok(p) = split_with(b, &g, cands.into_iter(), conductor)? {
                    found = Ok(p);
                }
            }
        }
        match found {
            Ok(p) => {
                stack.push(sub_vec(&g, &p));
                stack.push(p);
            }
            Err(witness) => {
                let poly = witness.map_or_else(|| "unknown".to_string(), |m| poly::to_string(&m));
                return Err(Error::ExtendField { poly, conductor });
            }
        }
    }
    Ok(out)
}

/// A nonzero zero divisor in a four-dimensional central simple algebra over Q with identity `g`.
///
/// Writes the algebra as `(A, B)` with `x² = A`, `y² = B`, `xy = −yx` and looks for a point on
/// `Z² = A X² + B Y²` inside Holzer's bound.
fn quaternion_zero_divisor(b: &AlgebraSC, g: &[Scalar], rows: &[Vector]) -> Option<Vector> {
    let scalar_of = |v: &Vector| scalar_multiple(v, g);
    // x with x² ∈ Q g and x ∉ Q g
    let x0 = rows.iter().find(|r| scalar_of(r).is_none())?;
    let mu = b.min_poly(x0, g);
    if mu.len() != 3 {
        return None;
    }
    let half = &mu[1] * &Scalar::from_frac(1, 2);
    let x = add_vec(x0, &scale_vec(&half, g));
    let a = scalar_of(&b.product(&x, &x))?;
    let ainv = a.inv()?;
    let y = rows.iter().find_map(|z| {
        let conj = scale_vec(&ainv, &b.product(&b.product(&x, z), &x));
        let y = sub_vec(z, &conj);
        (!linalg::is_zero_vec(&y)).then_some(y)
    })?;
    let bb = scalar_of(&b.product(&y, &y))?;
    let (x, ai) = integral_square(&x, &a)?;
    let (y, bi) = integral_square(&y, &bb)?;
    let g0 = num_integer::Integer::gcd(&ai, &bi);
    let bound = |v: &BigInt| -> i64 {
        let r = num_integer::Roots::sqrt(&(v.abs() * &g0 * &g0)).to_i64().unwrap_or(i64::MAX);
        r.saturating_add(2).min(2000)
    };
    let (lx, ly) = (bound(&bi), bound(&ai));
    for xs in 0..=lx {
        for ys in -ly..=ly {
            let v = &ai * xs * xs + &bi * ys * ys;
            if v.is_positive() || (xs != 0 && v.is_zero()) {
                let z = num_integer::Roots::sqrt(&v);
                if &z * &z == v {
                    let mut w = scale_vec(&Scalar::from_int(xs), &x);
                    axpy(&mut w, &Scalar::from_int(ys), &y);
                    axpy(&mut w, &Scalar::from_rational(BigRational::from_integer(z)), g);
                    if !linalg::is_zero_vec(&w) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

/// Rescales `x` with `x² = a` so that its square is a squarefree integer.
fn integral_square(x: &[Scalar], a: &Scalar) -> Option<(Vector, BigInt)> {
    let q = a.as_rational()?;
    let num = q.numer() * q.denom();
    let sf = squarefree_part(&num);
    // a = sf · (r / den)² with r² = num / sf
    let r2 = &num / &sf;
    let r = num_integer::Roots::sqrt(&r2);
    if &r * &r != r2 {
        return None;
    }
    let scale = BigRational::new(q.denom().clone(), r);
    Some((scale_vec(&Scalar::from_rational(scale), x), sf))
}

fn scalar_multiple(x: &[Scalar], f: &[Scalar]) -> Option<Scalar> {
    let idx = f.iter().position(|c| !c.is_zero())?;
    let c = &x[idx] / &f[idx];
    (linalg::scale_vec(&c, f) == x).then_some(c)
}

/// Matrix units of a split simple block with central idempotent `e`.
pub(crate) fn matrix_units(b: &AlgebraSC, e: &[Scalar], rng: &mut ChaCha8Rng) -> Result<SplitBlock> {
    let fs = primitive_idempotents(b, e, rng)?;
    let d = fs.len();
    let n = b.dim();
    let mut u = vec![fs[0].clone()];
    let mut v = vec![fs[0].clone()];
    for j in 1..d {
        let pick = |left: &Vector, right: &Vector| {
            (0..n)
                .map(|k| b.product(&b.product(left, &unit_vec(n, k)), right))
                .find(|x| !linalg::is_zero_vec(x))
                .ok_or_else(|| Error::Internal("block is not simple".into()))
        };
        let u1j = pick(&fs[0], &fs[j])?;
        let wj1 = pick(&fs[j], &fs[0])?;
        let c = scalar_multiple(&b.product(&u1j, &wj1), &fs[0])
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::Internal("matrix unit normalization failed".into()))?;
        u.push(u1j);
        v.push(scale_vec(&c.inv().unwrap(), &wj1));
    }
    let mut units = Vec::with_capacity(d * d);
    for vi in &v {
        for uj in &u {
            units.push(b.product(vi, uj));
        }
    }
    Ok(SplitBlock { d, units })
}

/// Full splitting into matrix blocks; fails when a piece does not split over the field.
pub(crate) fn split_blocks(b: &AlgebraSC, rng: &mut ChaCha8Rng) -> Result<Vec<SplitBlock>> {
    let mut blocks = Vec::new();
    for piece in central_pieces(b, rng)? {
        if let Some(mu) = piece.nonsplit {
            return Err(Error::ExtendField { poly: poly::to_string(&mu), conductor: b.conductor() });
        }
        blocks.push(matrix_units(b, &piece.idempotent, rng)?);
    }
    Ok(blocks)
}

/// Characters of a semisimple algebra with values in the field, as vectors `χ(b_a)`.
pub(crate) fn characters(b: &AlgebraSC, rng: &mut ChaCha8Rng) -> Result<Vec<Vector>> {
    let n = b.dim();
    let mut out = Vec::new();
    for piece in central_pieces(b, rng)? {
        if piece.nonsplit.is_some() {
            continue;
        }
        let e = &piece.idempotent;
        if b.corner(e, &b.unit().clone()).dim() != 1 {
            continue;
        }
        let chi: Option<Vector> = (0..n).map(|a| scalar_multiple(&b.product(&unit_vec(n, a), e), e)).collect();
        out.push(chi.ok_or_else(|| Error::Internal("one-dimensional block is not scalar".into()))?);
    }
    Ok(out)
}

/// An algebra section of `A → A/J`: for each block the lifts of its matrix units.
///
/// `preimage` maps an element of `A/J` (in its own coordinates) to some element of `A`.
/// A nonzero `seed` perturbs every preimage by a random element of `J`.
pub(crate) fn malcev_section(
    a: &AlgebraSC,
    j: &Subspace,
    blocks: &[SplitBlock],
    preimage: impl Fn(&Vector) -> Vector,
    seed: u64,
) -> Result<Vec<Vec<Vector>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pre = |x: &Vector| {
        let mut p = preimage(x);
        if seed != 0 && !j.is_zero() {
            let r = random_combination(j.basis(), &mut rng);
            p = add_vec(&p, &r);
        }
        p
    };
    let one = a.unit().clone();
    let mut diag: Vec<(usize, usize)> = Vec::new();
    for (t, blk) in blocks.iter().enumerate() {
        for i in 0..blk.d {
            diag.push((t, i));
        }
    }
    let mut lifted_idem: Vec<Vec<Vector>> = blocks.iter().map(|b| vec![Vec::new(); b.d]).collect();
    let mut sum = zero_vec(a.dim());
    for (pos, &(t, i)) in diag.iter().enumerate() {
        let idem = if pos + 1 == diag.len() {
            sub_vec(&one, &sum)
        } else {
            let rest = sub_vec(&one, &sum);
            let x = pre(&blocks[t].units[i * blocks[t].d + i]);
            lift_idempotent(a, &a.product(&a.product(&rest, &x), &rest))?
        };
        sum = add_vec(&sum, &idem);
        lifted_idem[t][i] = idem;
    }
    let mut out = Vec::with_capacity(blocks.len());
    for (t, blk) in blocks.iter().enumerate() {
        let d = blk.d;
        let f = &lifted_idem[t];
        let mut u = vec![f[0].clone()];
        let mut v = vec![f[0].clone()];
        for jx in 1..d {
            let u1j = a.product(&a.product(&f[0], &pre(&blk.units[jx])), &f[jx]);
            let w = a.product(&a.product(&f[jx], &pre(&blk.units[jx * d])), &f[0]);
            let inv = a.unipotent_inverse(&a.product(&u1j, &w), &f[0]);
            u.push(u1j);
            v.push(a.product(&w, &inv));
        }
        let mut units = Vec::with_capacity(d * d);
        for vi in &v {
            for uj in &u {
                units.push(a.product(vi, uj));
            }
        }
        out.push(units);
    }
    Ok(out)
}

/// Newton iteration `x ↦ 3x² − 2x³` from an idempotent modulo the radical.
fn lift_idempotent(a: &AlgebraSC, x: &[Scalar]) -> Result<Vector> {
    let mut x = x.to_vec();
    for _ in 0..64 {
        let x2 = a.product(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = a.product(&x2, &x);
        x = sub_vec(&scale_vec(&Scalar::from_int(3), &x2), &scale_vec(&Scalar::from_int(2), &x3));
    }
    Err(Error::Internal("idempotent lifting did not converge".into()))
}
