use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::wedderburn::{self, SplitBlock};
use super::{dual_algebra, radical, AlgebraSC, Coalgebra};
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, axpy, kron, sub_vec, zero_vec, Vector};
use crate::exactmath::{Scalar, Subspace};

/// A simple subcoalgebra of dimension `d²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleComponent {
    pub subcoalgebra: Subspace,
    pub d: usize,
    /// `e_ij` at index `i*d + j`, with `Δ e_ij = Σ_r e_ir ⊗ e_rj`.
    pub matrix_basis: Option<Vec<Vector>>,
    pub is_grouplike: bool,
}

impl SimpleComponent {
    /// The grouplike spanning a one-dimensional component.
    pub fn grouplike(&self) -> Option<&Vector> {
        match (&self.matrix_basis, self.is_grouplike) {
            (Some(b), true) => b.first(),
            _ => None,
        }
    }
}

/// `C_0` with its simple components, sorted by `(d, subspace)`.
#[derive(Clone, Debug)]
pub struct Coradical {
    pub c0: Subspace,
    pub components: Vec<SimpleComponent>,
    /// Radical of `C*`.
    pub(crate) radical: Subspace,
    /// Matrix units of `C_0*`, one block per component, in the coordinates of `c0`.
    pub(crate) blocks: Vec<SplitBlock>,
}

impl Coradical {
    /// Index of the component containing the vector `v`, if any.
    pub fn component_of(&self, v: &[Scalar]) -> Option<usize> {
        self.components.iter().position(|c| c.subcoalgebra.contains(v))
    }
}

/// `C_0 = (rad C*)^⊥`; needs no splitting.
pub fn coradical_subspace(c: &Coalgebra) -> Subspace {
    radical(&dual_algebra(c)).annihilator()
}

fn restricted_dual(c: &Coalgebra, c0: &Subspace) -> Result<AlgebraSC> {
    Ok(dual_algebra(&c.restrict(c0)?))
}

fn to_ambient(c0: &Subspace, coords: &[Scalar]) -> Vector {
    let mut v = zero_vec(c0.ambient_dim());
    for (x, row) in coords.iter().zip(c0.basis()) {
        axpy(&mut v, x, row);
    }
    v
}

fn check_comatrix(c: &Coalgebra, d: usize, e: &[Vector]) -> Result<()> {
    for i in 0..d {
        for j in 0..d {
            let mut want = zero_vec(c.dim() * c.dim());
            for r in 0..d {
                axpy(&mut want, &Scalar::one(), &kron(&e[i * d + r], &e[r * d + j]));
            }
            let eps = if i == j { Scalar::one() } else { Scalar::zero() };
            if c.delta(&e[i * d + j]) != want || c.epsilon(&e[i * d + j]) != eps {
                return Err(Error::Internal(format!("matrix basis fails the comatrix identity at ({i},{j})")));
            }
        }
    }
    Ok(())
}

/// The coradical and its decomposition into simple subcoalgebras.
///
/// Fails with [`Error::ExtendField`] when `C_0*` does not split over the field.
pub fn coradical(c: &Coalgebra) -> Result<Coradical> {
    let a = dual_algebra(c);
    let j = radical(&a);
    let c0 = j.annihilator();
    let b = restricted_dual(c, &c0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let blocks = wedderburn::split_blocks(&b, &mut rng)?;
    let units: Vec<Vector> = blocks.iter().flat_map(|blk| blk.units.iter().cloned()).collect();
    let r = c0.dim();
    if units.len() != r {
        return Err(Error::Internal("matrix units do not span the semisimple quotient".into()));
    }
    let inv = linalg::inverse(&units).ok_or_else(|| Error::Internal("matrix units are dependent".into()))?;
    let dual_basis: Vec<Vector> = (0..r)
        .map(|col| {
            let coords: Vector = inv.iter().map(|row| row[col].clone()).collect();
            to_ambient(&c0, &coords)
        })
        .collect();
    let mut pairs = Vec::new();
    let mut offset = 0;
    for blk in blocks {
        let d = blk.d;
        let basis: Vec<Vector> = dual_basis[offset..offset + d * d].to_vec();
        offset += d * d;
        check_comatrix(c, d, &basis)?;
        let comp = SimpleComponent {
            subcoalgebra: Subspace::new(c.dim(), basis.clone()),
            d,
            matrix_basis: Some(basis),
            is_grouplike: d == 1,
        };
        pairs.push((comp, blk));
    }
    pairs.sort_by(|x, y| (x.0.d, &x.0.subcoalgebra).cmp(&(y.0.d, &y.0.subcoalgebra)));
    let (components, blocks) = pairs.into_iter().unzip();
    Ok(Coradical { c0, components, radical: j, blocks })
}

/// All grouplike elements over the current field, sorted.
pub fn grouplikes(c: &Coalgebra) -> Result<Vec<Vector>> {
    let c0 = coradical_subspace(c);
    let b = restricted_dual(c, &c0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out: Vec<Vector> =
        wedderburn::characters(&b, &mut rng)?.iter().map(|chi| to_ambient(&c0, chi)).collect();
    for g in &out {
        if c.delta(g) != kron(g, g) || !c.epsilon(g).is_one() {
            return Err(Error::Internal("character does not give a grouplike".into()));
        }
    }
    out.sort();
    Ok(out)
}

/// Rows of the functionals `x ↦ (u ⊗ v)(Δx)`.
pub(crate) fn pullback_equations(c: &Coalgebra, us: &[Vector], vs: &[Vector]) -> Vec<Vector> {
    let n = c.dim();
    let mut rows = Vec::with_capacity(us.len() * vs.len());
    for u in us {
        // m[i][k] = Σ_j c[i][j][k] u_j
        let mut m = vec![zero_vec(n); n];
        for (i, plane) in c.sparse().iter().enumerate() {
            for (jx, k, s) in plane {
                if !u[*jx].is_zero() {
                    m[i][*k] = &m[i][*k] + &(s * &u[*jx]);
                }
            }
        }
        for v in vs {
            let row: Vector = m.iter().map(|mi| linalg::dot(mi, v)).collect();
            if !linalg::is_zero_vec(&row) {
                rows.push(row);
            }
        }
    }
    rows
}

/// `U ∧ V = Δ^{-1}(U ⊗ C + C ⊗ V)`.
pub fn wedge(u: &Subspace, v: &Subspace, c: &Coalgebra) -> Result<Subspace> {
    let n = c.dim();
    for s in [u, v] {
        if s.ambient_dim() != n {
            return Err(Error::AmbientMismatch { left: s.ambient_dim(), right: n });
        }
    }
    let rows = pullback_equations(c, u.annihilator().basis(), v.annihilator().basis());
    Ok(Subspace::new(n, linalg::kernel(&rows, n)))
}

/// `C_0 ⊆ C_1 ⊆ … ⊆ C` with `C_n = C_{n-1} ∧ C_0`, ending at the first term equal to `C`.
pub fn coradical_filtration(c: &Coalgebra) -> Result<Vec<Subspace>> {
    let c0 = coradical_subspace(c);
    let mut chain = vec![c0.clone()];
    while !chain.last().unwrap().is_full() {
        let next = wedge(chain.last().unwrap(), &c0, c)?;
        if &next == chain.last().unwrap() {
            return Err(Error::Internal("coradical filtration stalled".into()));
        }
        chain.push(next);
    }
    Ok(chain)
}

/// `(g, h)`-skew-primitives `Δx = g ⊗ x + x ⊗ h`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewPrimitives {
    pub space: Subspace,
    /// `dim space − dim(space ∩ span G(C))`.
    pub nontrivial_dim: usize,
}

pub fn skew_primitives(c: &Coalgebra, g: &[Scalar], h: &[Scalar]) -> Result<SkewPrimitives> {
    let n = c.dim();
    for x in [g, h] {
        if x.len() != n {
            return Err(Error::AmbientMismatch { left: x.len(), right: n });
        }
        if c.delta(x) != kron(x, x) || !c.epsilon(x).is_one() {
            return Err(Error::Precondition("skew-primitives need grouplike arguments".into()));
        }
    }
    let cols: Vec<Vector> = (0..n)
        .map(|i| {
            let b = linalg::unit_vec(n, i);
            sub_vec(&sub_vec(&c.delta(&b), &kron(g, &b)), &kron(&b, h))
        })
        .collect();
    let map = linalg::transpose(&cols, n * n);
    let space = Subspace::kernel_of(&map, n)?;
    let group = Subspace::new(n, grouplikes(c)?);
    let nontrivial_dim = space.dim() - space.intersection(&group)?.dim();
    Ok(SkewPrimitives { space, nontrivial_dim })
}
