//! Classification of 2×2 matrix-like coalgebras: spans of `e_ij` with
//! `Δ e_ij = Σ_p e_ip ⊗ e_pj` and `ε(e_ij) = δ_ij`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, axpy, kron, scale_vec, sub_vec, zero_vec, Vector};
use crate::exactmath::scalar::squarefree_part;
use crate::exactmath::{scalar_is_square, Scalar};
use crate::zoo;

/// `e = [e11, e12, e21, e22]` inside `ambient`.
#[derive(Clone, Debug)]
pub struct MatrixLikeSpan {
    pub ambient: Coalgebra,
    pub e: [Vector; 4],
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixLikeTag {
    Full4,
    C3,
    C2(Scalar),
    Point1,
}

impl fmt::Display for MatrixLikeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixLikeTag::Full4 => write!(f, "M^c(2)"),
            MatrixLikeTag::C3 => write!(f, "C3"),
            MatrixLikeTag::C2(a) => write!(f, "C2({a})"),
            MatrixLikeTag::Point1 => write!(f, "k"),
        }
    }
}

/// `witness[i]` is the image in the ambient coalgebra of the i-th basis element of the
/// normal form: `e11, e12, e21, e22` for `M^c(2)`, `g, h, u` for `C3`, `x, y` for `C2(a)`,
/// `x` for the point.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixLikeClass {
    pub tag: MatrixLikeTag,
    pub witness: Vec<Vector>,
}

impl MatrixLikeSpan {
    pub fn new(ambient: Coalgebra, e: [Vector; 4]) -> Result<Self> {
        for v in &e {
            if v.len() != ambient.dim() {
                return Err(Error::AmbientMismatch { left: v.len(), right: ambient.dim() });
            }
        }
        Ok(MatrixLikeSpan { ambient, e })
    }

    fn get(&self, i: usize, j: usize) -> &Vector {
        &self.e[2 * i + j]
    }

    /// Relabelling by the transposition `(1 2)`.
    pub fn transposed(&self) -> MatrixLikeSpan {
        let [a, b, c, d] = self.e.clone();
        MatrixLikeSpan { ambient: self.ambient.clone(), e: [d, c, b, a] }
    }

    pub fn dim(&self) -> usize {
        linalg::rank(&self.e, self.ambient.dim())
    }
}

/// Failing `(i, j)` of the comatrix identities, 1-based.
pub fn validate_span(s: &MatrixLikeSpan) -> std::result::Result<(), Vec<(usize, usize)>> {
    let c = &s.ambient;
    let mut bad = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut want = zero_vec(c.dim() * c.dim());
            for p in 0..2 {
                axpy(&mut want, &Scalar::one(), &kron(s.get(i, p), s.get(p, j)));
            }
            let eps = if i == j { Scalar::one() } else { Scalar::zero() };
            if c.delta(s.get(i, j)) != want || c.epsilon(s.get(i, j)) != eps {
                bad.push((i + 1, j + 1));
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

fn independent(vs: &[&Vector], n: usize) -> bool {
    let rows: Vec<Vector> = vs.iter().map(|v| (*v).clone()).collect();
    linalg::rank(&rows, n) == vs.len()
}

fn coords(basis: &[&Vector], v: &Vector) -> Result<Vector> {
    let rows: Vec<Vector> = basis.iter().map(|b| (*b).clone()).collect();
    linalg::coordinates(&rows, v).ok_or_else(|| Error::Internal("span element outside the expected span".into()))
}

pub fn classify(s: &MatrixLikeSpan) -> Result<MatrixLikeClass> {
    if let Err(bad) = validate_span(s) {
        return Err(Error::Precondition(format!("comatrix identities fail at {bad:?}")));
    }
    let class = match s.dim() {
        4 => MatrixLikeClass { tag: MatrixLikeTag::Full4, witness: s.e.to_vec() },
        3 => classify3(s, true)?,
        2 => classify2(s, true)?,
        1 => MatrixLikeClass { tag: MatrixLikeTag::Point1, witness: vec![s.get(0, 0).clone()] },
        _ => return Err(Error::Internal("ε(e11) = 1 forces a nonzero span".into())),
    };
    verify_witness(&s.ambient, &class)?;
    Ok(class)
}

fn classify3(s: &MatrixLikeSpan, may_relabel: bool) -> Result<MatrixLikeClass> {
    let n = s.ambient.dim();
    let (e11, e12, e21, e22) = (s.get(0, 0), s.get(0, 1), s.get(1, 0), s.get(1, 1));
    if independent(&[e11, e12, e21], n) {
        // e22 = e11 + b e12 − (1/b) e21
        let c = coords(&[e11, e12, e21], e22)?;
        let b = c[1].clone();
        let binv = b.inv().ok_or_else(|| Error::Internal("b = 0 in the three-dimensional case".into()))?;
        let g = linalg::add_vec(e11, &scale_vec(&b, e12));
        let h = sub_vec(e11, &scale_vec(&binv, e21));
        return Ok(MatrixLikeClass { tag: MatrixLikeTag::C3, witness: vec![g, h, e12.clone()] });
    }
    if independent(&[e11, e12, e22], n) {
        // e21 = a e11 + b e12 − a e22 with a = 0 (else the previous case), and then b = 0
        return Ok(MatrixLikeClass { tag: MatrixLikeTag::C3, witness: vec![e11.clone(), e22.clone(), e12.clone()] });
    }
    if may_relabel {
        return classify3(&s.transposed(), false);
    }
    Err(Error::Internal("no independent triple in a three-dimensional span".into()))
}

fn classify2(s: &MatrixLikeSpan, may_relabel: bool) -> Result<MatrixLikeClass> {
    let n = s.ambient.dim();
    let (e11, e12, e21, e22) = (s.get(0, 0), s.get(0, 1), s.get(1, 0), s.get(1, 1));
    if independent(&[e11, e12], n) && !independent(&[e11, e22], n) {
        // e21 = a e12, e22 = e11
        let a = coords(&[e11, e12], e21)?[1].clone();
        return Ok(MatrixLikeClass { tag: MatrixLikeTag::C2(a), witness: vec![e11.clone(), e12.clone()] });
    }
    if independent(&[e11, e22], n) {
        // e12 = α(e11 − e22), e21 = β(e11 − e22); x = (e11 + e22)/2, y = e11 − e22
        let y = sub_vec(e11, e22);
        let alpha = coords(&[&y], e12)?[0].clone();
        let beta = coords(&[&y], e21)?[0].clone();
        let x = scale_vec(&Scalar::from_frac(1, 2), &linalg::add_vec(e11, e22));
        let a = &(&alpha * &beta) + &Scalar::from_frac(1, 4);
        return Ok(MatrixLikeClass { tag: MatrixLikeTag::C2(a), witness: vec![x, y] });
    }
    if may_relabel {
        return classify2(&s.transposed(), false);
    }
    Err(Error::Internal("no independent pair in a two-dimensional span".into()))
}

fn normal_form(tag: &MatrixLikeTag) -> Coalgebra {
    match tag {
        MatrixLikeTag::Full4 => zoo::matrix_coalgebra(2),
        MatrixLikeTag::C3 => zoo::c3(),
        MatrixLikeTag::C2(a) => zoo::c2(a),
        MatrixLikeTag::Point1 => zoo::matrix_coalgebra(1),
    }
}

/// Checks that `witness` is an injective coalgebra map from the normal form.
fn verify_witness(ambient: &Coalgebra, class: &MatrixLikeClass) -> Result<()> {
    verify_map(&normal_form(&class.tag), ambient, &class.witness)
        .map_err(|e| Error::Internal(format!("classification witness: {e}")))
}

/// `images[i]` is the image of the i-th basis element of `from`.
fn verify_map(from: &Coalgebra, to: &Coalgebra, images: &[Vector]) -> std::result::Result<(), String> {
    let n = to.dim();
    if images.len() != from.dim() || !independent(&images.iter().collect::<Vec<_>>(), n) {
        return Err("images are not independent".into());
    }
    for (i, plane) in from.comul().iter().enumerate() {
        let mut want = zero_vec(n * n);
        for (j, row) in plane.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    axpy(&mut want, x, &kron(&images[j], &images[k]));
                }
            }
        }
        if to.delta(&images[i]) != want || to.epsilon(&images[i]) != from.counit()[i] {
            return Err(format!("not comultiplicative on basis element {i}"));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum C2Iso {
    /// `C2(b) → C2(a)` given by `x ↦ x`, `y ↦ λy`, with `λ² = a/b`.
    Iso { lambda: Scalar },
    NotIso,
}

pub fn c2_iso(a: &Scalar, b: &Scalar, conductor: u32) -> Result<C2Iso> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Ok(C2Iso::Iso { lambda: Scalar::one() }),
        (true, false) | (false, true) => return Ok(C2Iso::NotIso),
        _ => {}
    }
    let ratio = a / b;
    let Some(lambda) = scalar_is_square(&ratio, conductor)? else {
        return Ok(C2Iso::NotIso);
    };
    let images = vec![linalg::unit_vec(2, 0), scale_vec(&lambda, &linalg::unit_vec(2, 1))];
    verify_map(&zoo::c2(b), &zoo::c2(a), &images).map_err(|e| Error::Internal(format!("C2 isomorphism: {e}")))?;
    Ok(C2Iso::Iso { lambda })
}

#[derive(Clone, Debug, PartialEq)]
pub struct C2Grouplikes {
    /// In the basis `x, y`.
    pub grouplikes: Vec<Vector>,
    /// `y` when `a = 0`, an `(x, x)`-primitive.
    pub primitive: Option<Vector>,
}

pub fn c2_grouplikes(a: &Scalar, conductor: u32) -> Result<C2Grouplikes> {
    if a.is_zero() {
        return Ok(C2Grouplikes { grouplikes: vec![linalg::unit_vec(2, 0)], primitive: Some(linalg::unit_vec(2, 1)) });
    }
    let grouplikes = match scalar_is_square(a, conductor)? {
        Some(r) => vec![vec![Scalar::one(), r.clone()], vec![Scalar::one(), -r]],
        None => vec![],
    };
    Ok(C2Grouplikes { grouplikes, primitive: None })
}

/// Canonical label of the class of `a` in `K*/(K*)²`: a squarefree integer for rationals,
/// `1` for squares, otherwise `a` itself.
pub fn square_class_label(a: &Scalar, conductor: u32) -> Result<String> {
    if a.is_zero() {
        return Ok("0".into());
    }
    if scalar_is_square(a, conductor)?.is_some() {
        return Ok("1".into());
    }
    if let Some(q) = a.as_rational() {
        let v: BigInt = q.numer() * q.denom();
        let sf = squarefree_part(&v.abs());
        let sf = if v.is_negative() { -sf } else { sf };
        if !sf.is_zero() {
            return Ok(sf.to_string());
        }
    }
    Ok(a.to_string())
}
