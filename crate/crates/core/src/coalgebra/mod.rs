//! Coalgebras and algebras given by structure constants.
//!
//! A coalgebra stores `c[i][j][k]` with `Δ(b_i) = Σ c[i][j][k] b_j ⊗ b_k`.
//! Tensors in `C ⊗ C` are vectors indexed by `j * dim + k`.

mod algebra;
mod coradical;
mod nichols;
pub(crate) mod wedderburn;

use std::fmt;

pub use algebra::{check_algebra, radical, AlgebraSC};
pub use coradical::{
    coradical, coradical_filtration, coradical_subspace, grouplikes, skew_primitives, wedge, Coradical, SimpleComponent, SkewPrimitives,
};
pub use nichols::{isotypic_component, isotypic_table, nichols_projection, p_spaces, NicholsData};

use crate::error::{Error, Result};
use crate::exactmath::linalg::{zero_vec, Vector};
use crate::exactmath::scalar::lcm_u32;
use crate::exactmath::{Scalar, Subspace};

/// Order-3 structure constants.
pub type Tensor3 = Vec<Vec<Vec<Scalar>>>;

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.axiom, self.indices)
    }
}

pub(crate) type Sparse3 = Vec<Vec<(usize, usize, Scalar)>>;

pub(crate) fn sparsify(t: &Tensor3) -> Sparse3 {
    t.iter()
        .map(|plane| {
            let mut out = Vec::new();
            for (j, row) in plane.iter().enumerate() {
                for (k, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        out.push((j, k, x.clone()));
                    }
                }
            }
            out
        })
        .collect()
}

pub(crate) fn conductor_of<'a>(base: u32, xs: impl IntoIterator<Item = &'a Scalar>) -> u32 {
    xs.into_iter().fold(base.max(1), |acc, x| lcm_u32(acc, x.conductor()))
}

fn check_cube(t: &Tensor3, n: usize, what: &str) -> Result<()> {
    if t.len() != n || t.iter().any(|p| p.len() != n || p.iter().any(|r| r.len() != n)) {
        return Err(Error::Shape(format!("{what} constants must be {n}x{n}x{n}")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Coalgebra {
    basis_names: Vec<String>,
    comul: Tensor3,
    counit: Vector,
    conductor: u32,
    sparse: Sparse3,
}

impl PartialEq for Coalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.comul == other.comul && self.counit == other.counit
    }
}

impl Coalgebra {
    /// `conductor` selects the ground field `Q(ζ_conductor)`; it is raised to cover every constant.
    pub fn new(basis_names: Vec<String>, comul: Tensor3, counit: Vector, conductor: u32) -> Result<Self> {
        let n = basis_names.len();
        check_cube(&comul, n, "comultiplication")?;
        if counit.len() != n {
            return Err(Error::Shape(format!("counit has length {}, expected {n}", counit.len())));
        }
        let conductor = conductor_of(conductor, comul.iter().flatten().flatten().chain(&counit));
        let sparse = sparsify(&comul);
        Ok(Coalgebra { basis_names, comul, counit, conductor, sparse })
    }

    pub fn dim(&self) -> usize {
        self.counit.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn comul(&self) -> &Tensor3 {
        &self.comul
    }

    pub fn counit(&self) -> &Vector {
        &self.counit
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// The same coalgebra regarded over a larger cyclotomic field.
    pub fn with_conductor(&self, n: u32) -> Self {
        let mut c = self.clone();
        c.conductor = lcm_u32(c.conductor, n);
        c
    }

    pub(crate) fn sparse(&self) -> &Sparse3 {
        &self.sparse
    }

    /// `Δ(v)` as a vector of length `dim²`.
    pub fn delta(&self, v: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n * n);
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, k, c) in &self.sparse[i] {
                out[j * n + k] = &out[j * n + k] + &(x * c);
            }
        }
        out
    }

    /// Δ as a row-major `dim² × dim` matrix.
    pub fn delta_matrix(&self) -> Vec<Vector> {
        let n = self.dim();
        let mut m = vec![zero_vec(n); n * n];
        for (i, plane) in self.sparse.iter().enumerate() {
            for (j, k, c) in plane {
                m[j * n + k][i] = c.clone();
            }
        }
        m
    }

    pub fn epsilon(&self, v: &[Scalar]) -> Scalar {
        crate::exactmath::linalg::dot(&self.counit, v)
    }

    /// `f ⇀ c = Σ c_1 f(c_2)`.
    pub fn left_hit(&self, f: &[Scalar], c: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (i, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, k, s) in &self.sparse[i] {
                if !f[*k].is_zero() {
                    out[*j] = &out[*j] + &(&(x * s) * &f[*k]);
                }
            }
        }
        out
    }

    /// `c ↼ f = Σ f(c_1) c_2`.
    pub fn right_hit(&self, c: &[Scalar], f: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (i, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, k, s) in &self.sparse[i] {
                if !f[*j].is_zero() {
                    out[*k] = &out[*k] + &(&(x * s) * &f[*j]);
                }
            }
        }
        out
    }

    pub fn is_subcoalgebra(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| in_tensor(&self.delta(v), s, s))
    }

    /// The coalgebra structure on a subcoalgebra, in the coordinates of its echelon basis.
    pub fn restrict(&self, s: &Subspace) -> Result<Coalgebra> {
        if !self.is_subcoalgebra(s) {
            return Err(Error::Precondition("subspace is not a subcoalgebra".into()));
        }
        let n = self.dim();
        let piv = s.pivots();
        let comul = s
            .basis()
            .iter()
            .map(|v| {
                let d = self.delta(v);
                piv.iter().map(|&pb| piv.iter().map(|&pc| d[pb * n + pc].clone()).collect()).collect()
            })
            .collect();
        let counit = s.basis().iter().map(|v| self.epsilon(v)).collect();
        let names = (0..s.dim()).map(|i| format!("c{i}")).collect();
        Coalgebra::new(names, comul, counit, self.conductor)
    }
}

/// Whether `t ∈ U ⊗ W`, tested on the rows and columns of `t` as a matrix.
pub fn in_tensor(t: &[Scalar], u: &Subspace, w: &Subspace) -> bool {
    let a = u.ambient_dim();
    let b = w.ambient_dim();
    (0..a).all(|j| w.contains(&t[j * b..(j + 1) * b]))
        && (0..b).all(|k| u.contains(&(0..a).map(|j| t[j * b + k].clone()).collect::<Vec<_>>()))
}

/// Every failed coassociativity or counit identity.
pub fn check_coalgebra(c: &Coalgebra) -> Vec<Violation> {
    let n = c.dim();
    let t = c.comul();
    let mut out = Vec::new();
    for i in 0..n {
        // (Δ⊗id)Δ b_i and (id⊗Δ)Δ b_i as dense n³ arrays
        let mut left = vec![Scalar::zero(); n * n * n];
        let mut right = vec![Scalar::zero(); n * n * n];
        for (j, k, x) in &c.sparse[i] {
            for (p, q, y) in &c.sparse[*j] {
                let idx = (p * n + q) * n + k;
                left[idx] = &left[idx] + &(x * y);
            }
            for (p, q, y) in &c.sparse[*k] {
                let idx = (j * n + p) * n + q;
                right[idx] = &right[idx] + &(x * y);
            }
        }
        for (idx, (l, r)) in left.iter().zip(&right).enumerate() {
            if l != r {
                out.push(Violation { axiom: "coassociativity", indices: vec![i, idx / (n * n), (idx / n) % n, idx % n] });
            }
        }
        for k in 0..n {
            let a = (0..n).fold(Scalar::zero(), |s, j| s + &c.counit[j] * &t[i][j][k]);
            let b = (0..n).fold(Scalar::zero(), |s, j| s + &c.counit[j] * &t[i][k][j]);
            let want = if i == k { Scalar::one() } else { Scalar::zero() };
            if a != want {
                out.push(Violation { axiom: "left counit", indices: vec![i, k] });
            }
            if b != want {
                out.push(Violation { axiom: "right counit", indices: vec![i, k] });
            }
        }
    }
    out
}

/// `C*` with `m[i][j][k] = c[k][i][j]` and unit `ε`.
pub fn dual_algebra(c: &Coalgebra) -> AlgebraSC {
    let n = c.dim();
    let t = c.comul();
    let mul = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| t[k][i][j].clone()).collect()).collect()).collect();
    AlgebraSC::new(mul, c.counit().clone(), c.conductor()).expect("square constants")
}

/// The coalgebra dual to an algebra: `c[k][i][j] = m[i][j][k]`, counit = unit.
pub fn dual_coalgebra(a: &AlgebraSC) -> Coalgebra {
    let n = a.dim();
    let m = a.mul();
    let comul = (0..n).map(|k| (0..n).map(|i| (0..n).map(|j| m[i][j][k].clone()).collect()).collect()).collect();
    let names = (0..n).map(|i| format!("f{i}")).collect();
    Coalgebra::new(names, comul, a.unit().clone(), a.conductor()).expect("square constants")
}

/// `M^c(d)` with basis `e_ij` at index `i*d + j`.
pub fn matrix_coalgebra(d: usize) -> Coalgebra {
    let n = d * d;
    let mut comul = vec![vec![vec![Scalar::zero(); n]; n]; n];
    let mut counit = vec![Scalar::zero(); n];
    for i in 0..d {
        for j in 0..d {
            for r in 0..d {
                comul[i * d + j][i * d + r][r * d + j] = Scalar::one();
            }
        }
        counit[i * d + i] = Scalar::one();
    }
    let names = (0..d).flat_map(|i| (0..d).map(move |j| format!("e{}{}", i + 1, j + 1))).collect();
    Coalgebra::new(names, comul, counit, 1).expect("valid shape")
}
