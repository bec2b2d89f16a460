use super::HopfAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::linalg::{mat_vec, unit_vec, Vector};
use crate::exactmath::Subspace;

/// Whether `S` maps the subspace onto itself.
pub fn s_stable(h: &HopfAlgebra, c: &Subspace) -> Result<bool> {
    if c.ambient_dim() != h.dim() {
        return Err(Error::AmbientMismatch { left: c.ambient_dim(), right: h.dim() });
    }
    let s = h.s()?;
    let image = Subspace::new(h.dim(), c.basis().iter().map(|v| mat_vec(&s, v)).collect());
    Ok(&image == c)
}

/// Smallest subspace containing `seed` and `1` that is closed under products, `S`, and is a subcoalgebra.
pub fn generated_hopf_subalgebra(h: &HopfAlgebra, seed: &Subspace) -> Result<Subspace> {
    let n = h.dim();
    if seed.ambient_dim() != n {
        return Err(Error::AmbientMismatch { left: seed.ambient_dim(), right: n });
    }
    let s = h.s()?;
    let functionals: Vec<Vector> = (0..n).map(|k| unit_vec(n, k)).collect();
    let mut rows = seed.basis().to_vec();
    rows.push(h.unit().clone());
    let mut cur = Subspace::new(n, rows);
    loop {
        let b = cur.basis();
        let mut rows = b.to_vec();
        for x in b {
            rows.push(mat_vec(&s, x));
            for f in &functionals {
                rows.push(h.coalgebra.left_hit(f, x));
                rows.push(h.coalgebra.right_hit(x, f));
            }
            for y in b {
                rows.push(h.mul(x, y));
            }
        }
        let next = Subspace::new(n, rows);
        if next == cur {
            break;
        }
        cur = next;
    }
    if n % cur.dim() != 0 {
        return Err(Error::Internal(format!("Hopf subalgebra of dimension {} in dimension {n}", cur.dim())));
    }
    Ok(cur)
}
