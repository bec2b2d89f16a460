//! Hopf algebras by structure constants: axioms, antipode, and the
//! constructions on simple subcoalgebras that the antipode permutes.

mod stable;
mod subalgebra;

pub use stable::{
    s_squared_adapted_basis, search_with_bases, stable_coalgebra_search, ContradictionWitness, StableOutcome, Which,
};
pub use subalgebra::{generated_hopf_subalgebra, s_stable};

use crate::coalgebra::{
    check_algebra, check_coalgebra, dual_algebra, dual_coalgebra, grouplikes, AlgebraSC, Coalgebra, Violation,
};
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, kron, mat_vec, unit_vec, zero_vec, Vector};
use crate::exactmath::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebra {
    pub coalgebra: Coalgebra,
    pub algebra: AlgebraSC,
    antipode: Option<Vec<Vector>>,
}

impl HopfAlgebra {
    pub fn new(coalgebra: Coalgebra, algebra: AlgebraSC) -> Result<Self> {
        if coalgebra.dim() != algebra.dim() {
            return Err(Error::Shape(format!(
                "coalgebra has dimension {}, algebra {}",
                coalgebra.dim(),
                algebra.dim()
            )));
        }
        Ok(HopfAlgebra { coalgebra, algebra, antipode: None })
    }

    /// Builds, checks the bialgebra axioms and solves for the antipode.
    pub fn checked(coalgebra: Coalgebra, algebra: AlgebraSC) -> Result<Self> {
        let mut h = HopfAlgebra::new(coalgebra, algebra)?;
        let bad = check_bialgebra(&h);
        if let Some(v) = bad.first() {
            return Err(Error::Precondition(format!("not a bialgebra: {v} ({} violations)", bad.len())));
        }
        let s = compute_antipode(&h)?;
        h.antipode = Some(s);
        Ok(h)
    }

    pub fn dim(&self) -> usize {
        self.coalgebra.dim()
    }

    pub fn conductor(&self) -> u32 {
        crate::exactmath::scalar::lcm_u32(self.coalgebra.conductor(), self.algebra.conductor())
    }

    pub fn basis_names(&self) -> &[String] {
        self.coalgebra.basis_names()
    }

    pub fn antipode(&self) -> Option<&Vec<Vector>> {
        self.antipode.as_ref()
    }

    /// Assembles the parts without checking any axiom. Meant for partial structures
    /// that only need to support a particular construction.
    pub fn from_parts_unchecked(coalgebra: Coalgebra, algebra: AlgebraSC, antipode: Vec<Vector>) -> Self {
        HopfAlgebra { coalgebra, algebra, antipode: Some(antipode) }
    }

    /// Installs a given antipode after verifying it.
    pub fn with_antipode(mut self, s: Vec<Vector>) -> Result<Self> {
        verify_antipode(&self, &s)?;
        self.antipode = Some(s);
        Ok(self)
    }

    /// The antipode, solved for if it was not supplied.
    pub fn s(&self) -> Result<Vec<Vector>> {
        match &self.antipode {
            Some(s) => Ok(s.clone()),
            None => compute_antipode(self),
        }
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        self.algebra.product(a, b)
    }

    pub fn unit(&self) -> &Vector {
        self.algebra.unit()
    }

    /// Product in `H ⊗ H`.
    pub fn tensor_mul(&self, s: &[Scalar], t: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n * n);
        let nz = |v: &[Scalar]| -> Vec<(usize, usize, Scalar)> {
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(idx, x)| (idx / n, idx % n, x.clone())).collect()
        };
        let (a, b) = (nz(s), nz(t));
        let basis = linalg::identity(n);
        for (p, q, x) in &a {
            for (r, u, y) in &b {
                let left = self.mul(&basis[*p], &basis[*r]);
                let right = self.mul(&basis[*q], &basis[*u]);
                linalg::axpy(&mut out, &(x * y), &kron(&left, &right));
            }
        }
        out
    }

    pub fn dualize(&self) -> HopfAlgebra {
        let coalgebra = dual_coalgebra(&self.algebra);
        let names: Vec<String> = self.basis_names().iter().map(|b| format!("{b}*")).collect();
        let coalgebra =
            Coalgebra::new(names, coalgebra.comul().clone(), coalgebra.counit().clone(), self.conductor()).unwrap();
        let algebra = dual_algebra(&self.coalgebra);
        let antipode = self.antipode.as_ref().map(|s| linalg::transpose(s, self.dim()));
        HopfAlgebra { coalgebra, algebra, antipode }
    }
}

/// Every failed bialgebra identity, including the coalgebra and algebra axioms.
pub fn check_bialgebra(h: &HopfAlgebra) -> Vec<Violation> {
    let mut out = check_coalgebra(&h.coalgebra);
    out.extend(check_algebra(&h.algebra));
    let n = h.dim();
    let basis = linalg::identity(n);
    let c = &h.coalgebra;
    let deltas: Vec<Vector> = basis.iter().map(|b| c.delta(b)).collect();
    for i in 0..n {
        for j in 0..n {
            let prod = h.mul(&basis[i], &basis[j]);
            if c.delta(&prod) != h.tensor_mul(&deltas[i], &deltas[j]) {
                out.push(Violation { axiom: "comultiplication is multiplicative", indices: vec![i, j] });
            }
            if c.epsilon(&prod) != &c.counit()[i] * &c.counit()[j] {
                out.push(Violation { axiom: "counit is multiplicative", indices: vec![i, j] });
            }
        }
    }
    let u = h.unit();
    if c.delta(u) != kron(u, u) {
        out.push(Violation { axiom: "unit is grouplike", indices: vec![] });
    }
    if !c.epsilon(u).is_one() {
        out.push(Violation { axiom: "counit of unit", indices: vec![] });
    }
    out
}

/// `m (S ⊗ id) Δ` and `m (id ⊗ S) Δ` on `b_k`.
fn convolutions(h: &HopfAlgebra, s: &[Vector], k: usize) -> (Vector, Vector) {
    let n = h.dim();
    let mut left = zero_vec(n);
    let mut right = zero_vec(n);
    for (j, row) in h.coalgebra.comul()[k].iter().enumerate() {
        for (l, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let sj = mat_vec(s, &unit_vec(n, j));
            let sl = mat_vec(s, &unit_vec(n, l));
            linalg::axpy(&mut left, x, &h.mul(&sj, &unit_vec(n, l)));
            linalg::axpy(&mut right, x, &h.mul(&unit_vec(n, j), &sl));
        }
    }
    (left, right)
}

fn verify_antipode(h: &HopfAlgebra, s: &[Vector]) -> Result<()> {
    let n = h.dim();
    if s.len() != n || s.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("antipode must be {n}x{n}")));
    }
    for k in 0..n {
        let want = linalg::scale_vec(&h.coalgebra.counit()[k], h.unit());
        let (l, r) = convolutions(h, s, k);
        if l != want || r != want {
            return Err(Error::NoAntipode(format!("antipode identity fails on basis element {k}")));
        }
    }
    Ok(())
}

/// The convolution inverse of the identity, with `S(b_i) = Σ_a S[a][i] b_a`.
pub fn compute_antipode(h: &HopfAlgebra) -> Result<Vec<Vector>> {
    let n = h.dim();
    let m = h.algebra.mul();
    let c = h.coalgebra.comul();
    // unknown (a, i) at index a*n + i; equation (k, l)
    let mut rows = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            let mut row = zero_vec(n * n);
            for (i, plane) in c[k].iter().enumerate() {
                for (j, x) in plane.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for a in 0..n {
                        let y = &m[a][j][l];
                        if !y.is_zero() {
                            row[a * n + i] = &row[a * n + i] + &(x * y);
                        }
                    }
                }
            }
            rows.push(row);
            rhs.push(&h.coalgebra.counit()[k] * &h.unit()[l]);
        }
    }
    let sol = linalg::solve(&rows, &rhs, n * n)
        .ok_or_else(|| Error::NoAntipode("the equations Σ S(x_1) x_2 = ε(x)1 are inconsistent".into()))?;
    let s: Vec<Vector> = (0..n).map(|a| sol[a * n..(a + 1) * n].to_vec()).collect();
    verify_antipode(h, &s)?;
    check_anti_morphism(h, &s)?;
    Ok(s)
}

fn check_anti_morphism(h: &HopfAlgebra, s: &[Vector]) -> Result<()> {
    let n = h.dim();
    let basis = linalg::identity(n);
    let sb: Vec<Vector> = basis.iter().map(|b| mat_vec(s, b)).collect();
    for i in 0..n {
        for j in 0..n {
            if mat_vec(s, &h.mul(&basis[i], &basis[j])) != h.mul(&sb[j], &sb[i]) {
                return Err(Error::Internal(format!("S is not anti-multiplicative at ({i},{j})")));
            }
        }
        // Δ S(b_i) = (S ⊗ S) τ Δ(b_i)
        let mut want = zero_vec(n * n);
        for (p, row) in h.coalgebra.comul()[i].iter().enumerate() {
            for (q, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    linalg::axpy(&mut want, x, &kron(&sb[q], &sb[p]));
                }
            }
        }
        if h.coalgebra.delta(&sb[i]) != want {
            return Err(Error::Internal(format!("S is not anti-comultiplicative at {i}")));
        }
    }
    Ok(())
}

fn mat_pow_is_identity(m: &[Vector], n: usize, limit: usize) -> Option<usize> {
    let id = linalg::identity(n);
    let mut p = m.to_vec();
    for k in 1..=limit {
        if p == id {
            return Some(k);
        }
        p = linalg::mat_mul(&p, m);
    }
    None
}

/// The order of `S` together with the grouplike counts entering Radford's bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntipodeOrder {
    pub order: usize,
    pub grouplikes: usize,
    pub dual_grouplikes: usize,
    /// `4 · lcm(|G(H)|, |G(H*)|)`.
    pub bound: usize,
    /// Whether the order divides the bound. Counts are taken over the current field,
    /// which can make them smaller than over its algebraic closure.
    pub divides: bool,
}

pub fn antipode_order(h: &HopfAlgebra) -> Result<AntipodeOrder> {
    let s = h.s()?;
    let n = h.dim();
    let order = mat_pow_is_identity(&s, n, 4 * n * n + 4)
        .ok_or_else(|| Error::Internal("antipode order exceeds the search limit".into()))?;
    let g = grouplikes(&h.coalgebra)?.len();
    let gd = grouplikes(&h.dualize().coalgebra)?.len();
    let bound = 4 * num_integer::lcm(g, gd);
    Ok(AntipodeOrder { order, grouplikes: g, dual_grouplikes: gd, bound, divides: bound % order == 0 })
}

/// `G(H)` with its multiplication table.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupData {
    pub grouplikes: Vec<Vector>,
    /// `table[a][b]` is the index of `g_a g_b`.
    pub table: Vec<Vec<usize>>,
    pub order: usize,
}

pub fn group_data(h: &HopfAlgebra) -> Result<GroupData> {
    let gs = grouplikes(&h.coalgebra)?;
    let mut table = Vec::with_capacity(gs.len());
    for a in &gs {
        let row: Option<Vec<usize>> = gs.iter().map(|b| {
            let p = h.mul(a, b);
            gs.iter().position(|g| *g == p)
        }).collect();
        table.push(row.ok_or_else(|| Error::Internal("grouplikes are not closed under multiplication".into()))?);
    }
    let order = gs.len();
    Ok(GroupData { grouplikes: gs, table, order })
}
