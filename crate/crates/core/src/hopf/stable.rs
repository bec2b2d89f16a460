use super::HopfAlgebra;
use crate::coalgebra::{dual_algebra, grouplikes, SimpleComponent};
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, add_vec, axpy, kron, mat_vec, scale_vec, sub_vec, zero_vec, Vector};
use crate::exactmath::{roots_in_field, Scalar, Subspace};
use crate::matrixlike::{classify, MatrixLikeClass, MatrixLikeSpan, MatrixLikeTag};

const SIGNS: [i64; 4] = [1, -1, -1, 1];

fn s2_on(h: &HopfAlgebra) -> Result<Vec<Vector>> {
    let s = h.s()?;
    Ok(linalg::mat_mul(&s, &s))
}

/// A basis `e_ij` of `C` with comatrix comultiplication and `S²(e_ij) = (−1)^{i+j} e_ij`.
pub fn s_squared_adapted_basis(h: &HopfAlgebra, c: &SimpleComponent) -> Result<[Vector; 4]> {
    if c.d != 2 {
        return Err(Error::Precondition(format!("adapted bases need a 4-dimensional component, got d = {}", c.d)));
    }
    let n = h.dim();
    let sp = &c.subcoalgebra;
    let s2 = s2_on(h)?;
    let images: Vec<Vector> = sp.basis().iter().map(|v| mat_vec(&s2, v)).collect();
    let cols: Vec<Vector> = images
        .iter()
        .map(|v| sp.coordinates(v))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("S² does not map C into itself".into()))?;
    // m · coords(v) = coords(S² v)
    let m = linalg::transpose(&cols, 4);
    let id = linalg::identity(4);
    if m == id {
        return Err(Error::NoAdaptedBasis("pattern unsatisfiable, S² = id on C".into()));
    }
    if linalg::mat_mul(&m, &m) != id {
        return Err(Error::NoAdaptedBasis("S² restricted to C is not an involution".into()));
    }
    let plus = linalg::kernel(&m.iter().zip(&id).map(|(a, b)| sub_vec(a, b)).collect::<Vec<_>>(), 4).len();
    if plus != 2 {
        return Err(Error::NoAdaptedBasis(format!("eigenvalue 1 of S² on C has multiplicity {plus}, -1 has {}", 4 - plus)));
    }

    // the dual action T = mᵀ on B = C* fixes a two-dimensional subalgebra B+
    let b = dual_algebra(&h.coalgebra.restrict(sp)?);
    let t = linalg::transpose(&m, 4);
    let fixed = linalg::kernel(&t.iter().zip(&id).map(|(a, b)| sub_vec(a, b)).collect::<Vec<_>>(), 4);
    let one = b.unit().clone();
    let z = fixed
        .iter()
        .find(|v| !Subspace::new(4, vec![one.clone()]).contains(v))
        .ok_or_else(|| Error::Internal("fixed subalgebra is one-dimensional".into()))?;
    let mu = b.min_poly(z, &one);
    let roots = roots_in_field(&mu, h.conductor())?;
    if roots.len() != 2 {
        return Err(Error::NoAdaptedBasis(format!(
            "fixed subalgebra of S² does not split: minimal polynomial {}",
            crate::exactmath::poly::to_string(&mu)
        )));
    }
    // f1 = (z − λ2)/(λ1 − λ2)
    let inv = (&roots[0] - &roots[1]).inv().expect("distinct roots");
    let f1 = scale_vec(&inv, &sub_vec(z, &scale_vec(&roots[1], &one)));
    let f2 = sub_vec(&one, &f1);
    let pick = |l: &Vector, r: &Vector| {
        (0..4)
            .map(|k| b.product(&b.product(l, &linalg::unit_vec(4, k)), r))
            .find(|x| !linalg::is_zero_vec(x))
            .ok_or_else(|| Error::Internal("C* is not simple".into()))
    };
    let u = pick(&f1, &f2)?;
    let w = pick(&f2, &f1)?;
    let uw = b.product(&u, &w);
    let idx = f1.iter().position(|x| !x.is_zero()).expect("nonzero idempotent");
    let scale = (&uw[idx] / &f1[idx]).inv().ok_or_else(|| Error::Internal("degenerate matrix units".into()))?;
    let v = scale_vec(&scale, &w);
    let units = vec![f1.clone(), u, v, f2];
    let dual = linalg::inverse(&units).ok_or_else(|| Error::Internal("matrix units are dependent".into()))?;
    let basis: Vec<Vector> = (0..4)
        .map(|col| {
            let mut out = zero_vec(n);
            for (row, bv) in dual.iter().zip(sp.basis()) {
                axpy(&mut out, &row[col], bv);
            }
            out
        })
        .collect();
    let e: [Vector; 4] = basis.try_into().expect("four vectors");
    check_comatrix(h, &e).map_err(|(i, j)| Error::Internal(format!("adapted basis fails comatrix at ({i},{j})")))?;
    for (k, v) in e.iter().enumerate() {
        if mat_vec(&s2, v) != scale_vec(&Scalar::from_int(SIGNS[k]), v) {
            return Err(Error::Internal("adapted basis has the wrong S² eigenvalues".into()));
        }
    }
    Ok(e)
}

fn check_comatrix(h: &HopfAlgebra, e: &[Vector; 4]) -> std::result::Result<(), (usize, usize)> {
    let span = MatrixLikeSpan { ambient: h.coalgebra.clone(), e: e.clone() };
    crate::matrixlike::validate_span(&span).map_err(|bad| bad[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    E,
    F,
}

/// The replayed derivation when both spans collapse to the unit.
#[derive(Clone, Debug, PartialEq)]
pub struct ContradictionWitness {
    /// Each identity used, by name, with whether it holds.
    pub identities: Vec<(String, bool)>,
    /// `x = e22 f12`.
    pub x: Vector,
    pub x_primitive: bool,
    pub x_zero: bool,
    pub f12_zero: bool,
    /// Whether the `f_ij` are linearly independent.
    pub f_independent: bool,
}

impl ContradictionWitness {
    /// Every identity holds and `x` is primitive.
    pub fn derivation_holds(&self) -> bool {
        self.identities.iter().all(|(_, ok)| *ok) && self.x_primitive
    }

    /// The derivation holds although the `f_ij` form a basis: a nonzero primitive cannot
    /// exist in finite dimension, so `x = 0` forces `f12 = 0`, which is absurd.
    pub fn is_contradiction(&self) -> bool {
        self.derivation_holds() && self.f_independent
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StableOutcome {
    /// A four-dimensional `S`-stable simple subcoalgebra with its matrix basis.
    Found { which: Which, basis: [Vector; 4], subspace: Subspace },
    /// A two- or three-dimensional span, or a one-dimensional span other than `k·1`;
    /// either way a nontrivial grouplike is forced.
    GrouplikeForced { which: Which, class: MatrixLikeClass, grouplikes: Vec<Vector> },
    Contradiction(ContradictionWitness),
}

/// Runs the construction from a simple component `C` whose image under `S` is `D`.
pub fn stable_coalgebra_search(h: &HopfAlgebra, c: &SimpleComponent, d: &SimpleComponent) -> Result<StableOutcome> {
    if c.d != 2 || d.d != 2 {
        return Err(Error::Precondition("both components must be 4-dimensional".into()));
    }
    let s = h.s()?;
    let image = |x: &Subspace| Subspace::new(h.dim(), x.basis().iter().map(|v| mat_vec(&s, v)).collect());
    if image(&c.subcoalgebra) != d.subcoalgebra || image(&d.subcoalgebra) != c.subcoalgebra {
        return Err(Error::Precondition("S must swap the two components".into()));
    }
    let s2 = linalg::mat_mul(&s, &s);
    if linalg::mat_mul(&s2, &s2) != linalg::identity(h.dim()) {
        return Err(Error::Precondition("S⁴ ≠ id".into()));
    }
    let e = s_squared_adapted_basis(h, c)?;
    search_with_bases(h, &e)
}

/// The construction from a matrix-like span `e` with `S²(e_ij) = (−1)^{i+j} e_ij`,
/// setting `f_ji = S(e_ij)`.
pub fn search_with_bases(h: &HopfAlgebra, e: &[Vector; 4]) -> Result<StableOutcome> {
    let n = h.dim();
    if let Some(v) = e.iter().find(|v| v.len() != n) {
        return Err(Error::AmbientMismatch { left: v.len(), right: n });
    }
    if let Err((i, j)) = check_comatrix(h, e) {
        return Err(Error::Precondition(format!("e fails the comatrix identities at ({i},{j})")));
    }
    let s = h.s()?;
    let s2 = linalg::mat_mul(&s, &s);
    for (k, v) in e.iter().enumerate() {
        if mat_vec(&s2, v) != scale_vec(&Scalar::from_int(SIGNS[k]), v) {
            return Err(Error::Precondition("e does not have the S² sign pattern".into()));
        }
    }
    // f_ji = S(e_ij)
    let f: [Vector; 4] = [mat_vec(&s, &e[0]), mat_vec(&s, &e[2]), mat_vec(&s, &e[1]), mat_vec(&s, &e[3])];
    if let Err((i, j)) = check_comatrix(h, &f) {
        return Err(Error::Internal(format!("f fails the comatrix identities at ({i},{j})")));
    }
    let m = |a: &Vector, b: &Vector| h.mul(a, b);
    let big_e = [m(&e[0], &f[3]), m(&e[1], &f[2]), m(&e[2], &f[1]), m(&e[3], &f[0])];
    let big_f = [m(&f[0], &e[3]), m(&f[1], &e[2]), m(&f[2], &e[1]), m(&f[3], &e[0])];
    for (which, x) in [(Which::E, &big_e), (Which::F, &big_f)] {
        if let Err((i, j)) = check_comatrix(h, x) {
            return Err(Error::Internal(format!("{which:?} fails the comatrix identities at ({i},{j})")));
        }
        // S(X_ii) = X_jj, S(X_ij) = −X_ij
        let sx: Vec<Vector> = x.iter().map(|v| mat_vec(&s, v)).collect();
        let neg = |v: &Vector| scale_vec(&-Scalar::one(), v);
        if sx[0] != x[3] || sx[3] != x[0] || sx[1] != neg(&x[1]) || sx[2] != neg(&x[2]) {
            return Err(Error::Internal(format!("S does not act on {which:?} as expected")));
        }
    }
    let spans = [(Which::E, big_e), (Which::F, big_f)];
    for (which, x) in &spans {
        let sub = Subspace::new(n, x.to_vec());
        if sub.dim() == 4 {
            if !super::s_stable(h, &sub)? {
                return Err(Error::Internal(format!("{which:?} is not S-stable")));
            }
            return Ok(StableOutcome::Found { which: *which, basis: x.clone(), subspace: sub });
        }
    }
    for (which, x) in &spans {
        let dim = Subspace::new(n, x.to_vec()).dim();
        if dim == 2 || dim == 3 || (dim == 1 && &x[0] != h.unit()) {
            return forced(h, *which, x);
        }
    }
    Ok(StableOutcome::Contradiction(replay(h, e, &f)))
}

fn forced(h: &HopfAlgebra, which: Which, x: &[Vector; 4]) -> Result<StableOutcome> {
    let span = MatrixLikeSpan::new(h.coalgebra.clone(), x.clone())?;
    let class = classify(&span)?;
    let sub = Subspace::new(h.dim(), x.to_vec());
    let gs: Vec<Vector> = grouplikes(&h.coalgebra)?.into_iter().filter(|g| sub.contains(g)).collect();
    if matches!(class.tag, MatrixLikeTag::C3 | MatrixLikeTag::Point1) && !gs.iter().any(|g| g != h.unit()) {
        return Err(Error::Internal("span forces a grouplike that was not found".into()));
    }
    Ok(StableOutcome::GrouplikeForced { which, class, grouplikes: gs })
}

fn replay(h: &HopfAlgebra, e: &[Vector; 4], f: &[Vector; 4]) -> ContradictionWitness {
    let n = h.dim();
    let m = |a: &Vector, b: &Vector| h.mul(a, b);
    let (e11, e12, e21, e22) = (&e[0], &e[1], &e[2], &e[3]);
    let (f11, f12, f21, f22) = (&f[0], &f[1], &f[2], &f[3]);
    let one = h.unit().clone();
    let zero = zero_vec(n);
    let mut ids = Vec::new();
    let mut all = |name: &str, vals: Vec<Vector>, want: &Vector| {
        ids.push((name.to_string(), vals.iter().all(|v| v == want)));
    };
    all(
        "antipode on e12, e21",
        vec![
            add_vec(&m(f11, e12), &m(f21, e22)),
            add_vec(&m(e11, f21), &m(e12, f22)),
            add_vec(&m(e21, f11), &m(e22, f12)),
            add_vec(&m(f12, e11), &m(f22, e21)),
        ],
        &zero,
    );
    all(
        "antipode on f12, f21",
        vec![
            sub_vec(&m(e11, f12), &m(e21, f22)),
            sub_vec(&m(f12, e22), &m(f11, e21)),
            sub_vec(&m(e22, f21), &m(e12, f11)),
            sub_vec(&m(f21, e11), &m(f22, e12)),
        ],
        &zero,
    );
    all("diagonal products are 1", vec![m(e11, f22), m(f22, e11), m(e22, f11), m(f11, e22)], &one);
    all("off-diagonal products vanish", vec![m(e12, f21), m(f21, e12), m(e21, f12), m(f12, e21)], &zero);
    all("antipode on e22", vec![add_vec(&m(e22, f22), &m(e21, f21))], &one);
    all("antipode on e11", vec![add_vec(&m(e11, f11), &m(e12, f12)), add_vec(&m(f11, e11), &m(f21, e21))], &one);
    let x = m(e22, f12);
    let neg = scale_vec(&-Scalar::one(), &m(e21, f11));
    all("x has four expressions", vec![m(e11, f12), m(e21, f22), neg], &x);
    let x_primitive = h.coalgebra.delta(&x) == add_vec(&kron(&one, &x), &kron(&x, &one));
    ContradictionWitness {
        identities: ids,
        x_zero: linalg::is_zero_vec(&x),
        x,
        x_primitive,
        f12_zero: linalg::is_zero_vec(f12),
        f_independent: Subspace::new(n, f.to_vec()).dim() == 4,
    }
}
