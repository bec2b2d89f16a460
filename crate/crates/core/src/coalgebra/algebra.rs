use super::{check_cube, conductor_of, sparsify, Sparse3, Tensor3, Violation};
use crate::error::Result;
use crate::exactmath::linalg::{self, axpy, scale_vec, sub_vec, zero_vec, Vector};
use crate::exactmath::poly::Poly;
use crate::exactmath::{Scalar, Subspace};

/// An associative unital algebra with `b_i b_j = Σ m[i][j][k] b_k`.
#[derive(Clone, Debug)]
pub struct AlgebraSC {
    mul: Tensor3,
    unit: Vector,
    conductor: u32,
    sparse: Sparse3,
}

impl PartialEq for AlgebraSC {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul && self.unit == other.unit
    }
}

impl AlgebraSC {
    pub fn new(mul: Tensor3, unit: Vector, conductor: u32) -> Result<Self> {
        let n = unit.len();
        check_cube(&mul, n, "multiplication")?;
        let conductor = conductor_of(conductor, mul.iter().flatten().flatten().chain(&unit));
        let sparse = sparsify(&mul);
        Ok(AlgebraSC { mul, unit, conductor, sparse })
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn mul(&self) -> &Tensor3 {
        &self.mul
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, k, c) in &self.sparse[i] {
                if !b[*j].is_zero() {
                    out[*k] = &out[*k] + &(&(x * &b[*j]) * c);
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ a y`, row-major.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Vec<Vector> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.product(a, &linalg::unit_vec(n, j))).collect();
        linalg::transpose(&cols, n)
    }

    /// Minimal polynomial of `a` inside a subalgebra whose identity is `e`.
    pub fn min_poly(&self, a: &[Scalar], e: &[Scalar]) -> Poly {
        let mut powers: Vec<Vector> = vec![e.to_vec()];
        loop {
            let next = self.product(powers.last().unwrap(), a);
            if let Some(c) = linalg::coordinates(&powers, &next) {
                let mut p: Poly = c.into_iter().map(|x| -x).collect();
                p.push(Scalar::one());
                return p;
            }
            powers.push(next);
        }
    }

    /// `p(a)` with constant terms multiplied by `e`.
    pub fn eval_poly(&self, p: &[Scalar], a: &[Scalar], e: &[Scalar]) -> Vector {
        let mut acc = zero_vec(self.dim());
        for c in p.iter().rev() {
            acc = self.product(&acc, a);
            axpy(&mut acc, c, e);
        }
        acc
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                let row: Vector = (0..n).map(|i| &self.mul[i][j][k] - &self.mul[j][i][k]).collect();
                if !linalg::is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
        Subspace::new(n, linalg::kernel(&rows, n))
    }

    /// `e A e` for an idempotent `e`.
    pub fn corner(&self, e: &[Scalar], f: &[Scalar]) -> Subspace {
        let n = self.dim();
        let rows = (0..n).map(|i| self.product(&self.product(e, &linalg::unit_vec(n, i)), f)).collect();
        Subspace::new(n, rows)
    }

    pub fn is_idempotent(&self, e: &[Scalar]) -> bool {
        self.product(e, e) == e
    }

    /// Inverse of `a` in the corner with identity `e`, when `a - e` is nilpotent.
    pub(crate) fn unipotent_inverse(&self, a: &[Scalar], e: &[Scalar]) -> Vector {
        let nil = sub_vec(a, e);
        let mut term = e.to_vec();
        let mut acc = e.to_vec();
        let minus = scale_vec(&Scalar::from_int(-1), &nil);
        for _ in 0..self.dim() + 1 {
            term = self.product(&term, &minus);
            if linalg::is_zero_vec(&term) {
                break;
            }
            acc = linalg::add_vec(&acc, &term);
        }
        acc
    }
}

/// Every failed associativity or unit identity.
pub fn check_algebra(a: &AlgebraSC) -> Vec<Violation> {
    let n = a.dim();
    let mut out = Vec::new();
    let basis = linalg::identity(n);
    for i in 0..n {
        for j in 0..n {
            let ij = a.product(&basis[i], &basis[j]);
            for k in 0..n {
                let l = a.product(&ij, &basis[k]);
                let r = a.product(&basis[i], &a.product(&basis[j], &basis[k]));
                if l != r {
                    out.push(Violation { axiom: "associativity", indices: vec![i, j, k] });
                }
            }
        }
        if a.product(&a.unit, &basis[i]) != basis[i] {
            out.push(Violation { axiom: "left unit", indices: vec![i] });
        }
        if a.product(&basis[i], &a.unit) != basis[i] {
            out.push(Violation { axiom: "right unit", indices: vec![i] });
        }
    }
    out
}

/// The Jacobson radical, as the kernel of the trace form `(x, y) ↦ tr(L_{xy})`.
pub fn radical(a: &AlgebraSC) -> Subspace {
    let n = a.dim();
    let m = a.mul();
    let t: Vector = (0..n).map(|k| (0..n).fold(Scalar::zero(), |s, l| s + &m[k][l][l])).collect();
    let form: Vec<Vector> = (0..n)
        .map(|i| (0..n).map(|j| linalg::dot(&m[i][j], &t)).collect())
        .collect();
    Subspace::new(n, linalg::kernel(&form, n))
}
