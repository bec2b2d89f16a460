use super::linalg::{self, axpy, is_zero_vec, kron, Vector};
use super::Scalar;
use crate::error::{Error, Result};

/// A subspace of `K^n`, stored as its reduced row echelon basis.
///
/// Two equal subspaces have identical representations, so `==` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

fn check_ambient(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::AmbientMismatch { left: a, right: b });
    }
    Ok(())
}

impl Subspace {
    pub fn new(ambient: usize, spanning: Vec<Vector>) -> Self {
        debug_assert!(spanning.iter().all(|v| v.len() == ambient));
        let (basis, pivots) = linalg::rref(spanning, ambient);
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: vec![], pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: linalg::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn span_of(ambient: usize, vs: &[Vector]) -> Self {
        Subspace::new(ambient, vs.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// `v` minus its component along the echelon basis; zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = -&r[p];
                axpy(&mut r, &f, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    /// Coordinates of a member with respect to the echelon basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_ambient(self.ambient, other.ambient)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Subspace::new(self.ambient, rows))
    }

    /// The annihilator `{f : f·v = 0 for all v}` under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        let k = linalg::kernel_from_rref(&self.basis, &self.pivots, self.ambient);
        Subspace::new(self.ambient, k)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        check_ambient(self.ambient, other.ambient)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `U ⊗ V` inside `K^{a·b}`.
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        let mut rows = Vec::with_capacity(self.dim() * other.dim());
        for u in &self.basis {
            for v in &other.basis {
                rows.push(kron(u, v));
            }
        }
        Subspace::new(self.ambient * other.ambient, rows)
    }

    /// Image under the row-major matrix `f` (codomain dimension = `f.len()`).
    pub fn image(&self, f: &[Vector]) -> Result<Subspace> {
        check_linear_map(f, self.ambient)?;
        let rows = self.basis.iter().map(|v| linalg::mat_vec(f, v)).collect();
        Ok(Subspace::new(f.len(), rows))
    }

    /// Image of the whole domain of `f`.
    pub fn image_of_map(f: &[Vector], domain: usize) -> Result<Subspace> {
        Subspace::full(domain).image(f)
    }

    /// `{x : f(x) ∈ W}` for the row-major matrix `f: K^domain → K^{f.len()}`.
    pub fn preimage(f: &[Vector], domain: usize, w: &Subspace) -> Result<Subspace> {
        check_linear_map(f, domain)?;
        if f.len() != w.ambient {
            return Err(Error::Shape(format!(
                "map codomain {} does not match subspace ambient {}",
                f.len(),
                w.ambient
            )));
        }
        let residuals: Vec<Vector> = (0..domain)
            .map(|j| {
                let col: Vector = f.iter().map(|row| row[j].clone()).collect();
                w.reduce(&col)
            })
            .collect();
        let eqs: Vec<Vector> = (0..f.len())
            .filter(|&i| residuals.iter().any(|r| !r[i].is_zero()))
            .map(|i| residuals.iter().map(|r| r[i].clone()).collect())
            .collect();
        Ok(Subspace::new(domain, linalg::kernel(&eqs, domain)))
    }

    /// Kernel of the row-major matrix `f`.
    pub fn kernel_of(f: &[Vector], domain: usize) -> Result<Subspace> {
        check_linear_map(f, domain)?;
        Ok(Subspace::new(domain, linalg::kernel(f, domain)))
    }

    /// Coordinates of `v` in the quotient `K^n / self`, in the non-pivot positions.
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vector {
        let r = self.reduce(v);
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        r.into_iter().enumerate().filter(|(i, _)| !is_pivot[*i]).map(|(_, x)| x).collect()
    }
}

fn check_linear_map(f: &[Vector], domain: usize) -> Result<()> {
    if let Some(bad) = f.iter().position(|row| row.len() != domain) {
        return Err(Error::Shape(format!("row {bad} of linear map has wrong length (expected {domain})")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::linalg::unit_vec;

    #[test]
    fn sum_of_coordinate_axes() {
        let u = Subspace::new(3, vec![unit_vec(3, 0)]);
        let v = Subspace::new(3, vec![unit_vec(3, 1)]);
        let s = u.sum(&v).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(u.sum(&u).unwrap(), u);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let u = Subspace::zero(3);
        let v = Subspace::zero(4);
        assert!(matches!(u.sum(&v), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn preimage_trivial_cases() {
        let id = linalg::identity(3);
        let w = Subspace::new(3, vec![vec![Scalar::one(), Scalar::from_int(2), Scalar::zero()]]);
        assert_eq!(Subspace::preimage(&id, 3, &w).unwrap(), w);
        let zero = vec![linalg::zero_vec(3); 3];
        assert!(Subspace::preimage(&zero, 3, &w).unwrap().is_full());
    }
}
