use std::collections::BTreeMap;

use super::coradical::{coradical_filtration, pullback_equations};
use super::{coradical, dual_algebra, wedderburn, Coalgebra, Coradical};
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, axpy, identity, mat_vec, sub_vec, unit_vec, zero_vec, Vector};
use crate::exactmath::{Scalar, Subspace};

/// A coalgebra projection `π: C → C_0`, its kernel `I`, the spaces `P_n` and
/// the isotypic dimensions of `P_1`.
#[derive(Clone, Debug)]
pub struct NicholsData {
    /// Row-major matrix of π.
    pub pi: Vec<Vector>,
    pub i: Subspace,
    /// `P_1, P_2, …` up to the first repetition.
    pub p: Vec<Subspace>,
    /// `(τ, γ) ↦ dim P_1^{τ,γ}`, nonzero entries only, indices into `coradical.components`.
    pub isotypic: BTreeMap<(usize, usize), usize>,
    pub coradical: Coradical,
    /// `e_τ ∘ π` for the central idempotent `e_τ` of each component, as functionals on `C`.
    pub idempotents: Vec<Vector>,
    pub seed: u64,
}

impl NicholsData {
    pub fn apply_pi(&self, v: &[Scalar]) -> Vector {
        mat_vec(&self.pi, v)
    }

    pub fn p_dims(&self) -> Vec<usize> {
        self.p.iter().map(Subspace::dim).collect()
    }
}

/// Builds π from an algebra section of `C* → C_0*`.
///
/// `seed = 0` gives the canonical lift; other seeds perturb it by random radical elements.
pub fn nichols_projection(c: &Coalgebra, seed: u64) -> Result<NicholsData> {
    let cor = coradical(c)?;
    let n = c.dim();
    let a = dual_algebra(c);
    let pivots = cor.c0.pivots().to_vec();
    let preimage = |x: &Vector| {
        let mut f = zero_vec(n);
        for (xb, &p) in x.iter().zip(&pivots) {
            f[p] = xb.clone();
        }
        f
    };
    let lifts = wedderburn::malcev_section(&a, &cor.radical, &cor.blocks, preimage, seed)?;
    let mut cols = vec![zero_vec(n); n];
    let mut idempotents = Vec::with_capacity(lifts.len());
    for (units, comp) in lifts.iter().zip(&cor.components) {
        let basis = comp.matrix_basis.as_ref().expect("split component");
        for (s, e) in units.iter().zip(basis) {
            for (k, col) in cols.iter_mut().enumerate() {
                axpy(col, &s[k], e);
            }
        }
        let mut idem = zero_vec(n);
        for i in 0..comp.d {
            idem = linalg::add_vec(&idem, &units[i * comp.d + i]);
        }
        idempotents.push(idem);
    }
    let pi = linalg::transpose(&cols, n);
    verify_projection(c, &pi, &cor.c0)?;
    let i = Subspace::kernel_of(&pi, n)?;
    Ok(NicholsData { pi, i, p: vec![], isotypic: BTreeMap::new(), coradical: cor, idempotents, seed })
}

fn verify_projection(c: &Coalgebra, pi: &[Vector], c0: &Subspace) -> Result<()> {
    let n = c.dim();
    if linalg::mat_mul(pi, pi) != pi {
        return Err(Error::Internal("π is not idempotent".into()));
    }
    if c0.basis().iter().any(|v| &mat_vec(pi, v) != v) {
        return Err(Error::Internal("π is not the identity on C_0".into()));
    }
    for k in 0..n {
        let b = unit_vec(n, k);
        let pb = mat_vec(pi, &b);
        let lhs = c.delta(&pb);
        let rhs = tensor_apply(pi, pi, &c.delta(&b), n);
        if lhs != rhs || c.epsilon(&pb) != c.counit()[k] {
            return Err(Error::Internal(format!("π is not a coalgebra map on basis element {k}")));
        }
    }
    Ok(())
}

/// `(f ⊗ g)(t)` for square matrices on `K^n`.
fn tensor_apply(f: &[Vector], g: &[Vector], t: &[Scalar], n: usize) -> Vector {
    // t as an n×n matrix T; result is F T G^T
    let rows: Vec<Vector> = (0..n).map(|j| t[j * n..(j + 1) * n].to_vec()).collect();
    let ft = linalg::mat_mul(f, &rows);
    let gt = linalg::transpose(g, n);
    linalg::mat_mul(&ft, &gt).into_iter().flatten().collect()
}

/// Coordinates of `v ∈ S` at the pivots of `S`.
fn pivot_coords(s: &Subspace, v: &[Scalar]) -> Vector {
    s.pivots().iter().map(|&p| v[p].clone()).collect()
}

/// Fills in `P_n` and the isotypic table, checking `P_n = C_n ∩ I`.
pub fn p_spaces(c: &Coalgebra, nd: &NicholsData) -> Result<NicholsData> {
    let n = c.dim();
    let i_sp = &nd.i;
    let m = i_sp.dim();
    let mut eqs = pullback_equations(c, i_sp.annihilator().basis(), i_sp.annihilator().basis());
    let j = nd.coradical.radical.basis();
    eqs.extend(pullback_equations(c, j, j));
    let p1 = Subspace::new(n, linalg::kernel(&eqs, n));

    // D(x) = ((1-π)⊗(1-π))Δx on I, in the coordinates of I ⊗ I
    let q: Vec<Vector> = identity(n).iter().zip(&nd.pi).map(|(a, b)| sub_vec(a, b)).collect();
    let d_cols: Vec<Vector> = i_sp
        .basis()
        .iter()
        .map(|x| {
            let t = tensor_apply(&q, &q, &c.delta(x), n);
            let mut out = Vec::with_capacity(m * m);
            for &pa in i_sp.pivots() {
                for &pb in i_sp.pivots() {
                    out.push(t[pa * n + pb].clone());
                }
            }
            out
        })
        .collect();
    let d_map = linalg::transpose(&d_cols, m * m);
    let to_i = |s: &Subspace| Subspace::new(m, s.basis().iter().map(|v| pivot_coords(i_sp, v)).collect());
    let from_i = |s: &Subspace| {
        let rows = s
            .basis()
            .iter()
            .map(|y| {
                let mut v = zero_vec(n);
                for (yc, row) in y.iter().zip(i_sp.basis()) {
                    axpy(&mut v, yc, row);
                }
                v
            })
            .collect();
        Subspace::new(n, rows)
    };

    let mut p_local = vec![to_i(&p1)];
    let mut p = vec![p1];
    for step in 2..=n + 1 {
        let mut w = Subspace::zero(m * m);
        for a in 1..step {
            w = w.sum(&p_local[a - 1].tensor(&p_local[step - a - 1]))?;
        }
        let next_local = if m == 0 { Subspace::zero(0) } else { Subspace::preimage(&d_map, m, &w)? };
        let next = from_i(&next_local);
        if &next == p.last().unwrap() {
            break;
        }
        p_local.push(next_local);
        p.push(next);
    }

    let filtration = coradical_filtration(c)?;
    let top = filtration.len().max(p.len());
    for k in 1..=top {
        let cn = filtration.get(k).unwrap_or_else(|| filtration.last().unwrap());
        let pn = p.get(k - 1).unwrap_or_else(|| p.last().unwrap());
        if &cn.intersection(i_sp)? != pn {
            return Err(Error::Internal(format!("P_{k} differs from C_{k} ∩ I")));
        }
    }

    let mut out = nd.clone();
    out.p = p;
    out.isotypic = isotypic_table(c, &out)?;
    Ok(out)
}

/// `P_1^{τ,γ} = ẽ_γ ⇀ (P_1 ↼ ẽ_τ)`: left coefficients in `C_τ`, right in `C_γ`.
pub fn isotypic_component(c: &Coalgebra, nd: &NicholsData, tau: usize, gamma: usize) -> Result<Subspace> {
    let p1 = nd.p.first().ok_or_else(|| Error::Precondition("P_1 has not been computed".into()))?;
    let (et, eg) = (&nd.idempotents[tau], &nd.idempotents[gamma]);
    let rows = p1.basis().iter().map(|x| c.left_hit(eg, &c.right_hit(x, et))).collect();
    Ok(Subspace::new(c.dim(), rows))
}

/// Nonzero `dim P_1^{τ,γ}`; the dimensions sum to `dim P_1`.
pub fn isotypic_table(c: &Coalgebra, nd: &NicholsData) -> Result<BTreeMap<(usize, usize), usize>> {
    let t = nd.idempotents.len();
    let mut table = BTreeMap::new();
    let mut total = 0;
    for tau in 0..t {
        for gamma in 0..t {
            let d = isotypic_component(c, nd, tau, gamma)?.dim();
            if d > 0 {
                table.insert((tau, gamma), d);
                total += d;
            }
        }
    }
    let p1 = nd.p.first().map_or(0, Subspace::dim);
    if total != p1 {
        return Err(Error::Internal(format!("isotypic dimensions sum to {total}, dim P_1 = {p1}")));
    }
    Ok(table)
}
