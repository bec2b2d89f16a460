//! Example coalgebras and Hopf algebras.

use std::fmt;
use std::str::FromStr;

use crate::coalgebra::{check_coalgebra, AlgebraSC, Coalgebra, Tensor3};
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, kron, Vector};
use crate::exactmath::scalar::{lcm_u32, normalize_conductor};
use crate::exactmath::Scalar;
use crate::hopf::HopfAlgebra;

pub use crate::coalgebra::matrix_coalgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Cyclic(usize),
    /// `r, s` with `s r s = r⁻¹`; `r^a s^b` at index `2a + b`.
    Dihedral(usize),
}

impl Group {
    pub fn order(&self) -> usize {
        match *self {
            Group::Cyclic(n) => n,
            Group::Dihedral(n) => 2 * n,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Group::Cyclic(n) if n >= 1 => Ok(()),
            Group::Dihedral(n) if n >= 3 => Ok(()),
            g => Err(Error::Precondition(format!("invalid group {g:?}"))),
        }
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        match *self {
            Group::Cyclic(n) => (x + y) % n,
            Group::Dihedral(n) => {
                let (a, b, c, d) = (x / 2, x % 2, y / 2, y % 2);
                let r = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                2 * r + (b + d) % 2
            }
        }
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.order()).find(|&y| self.mul(x, y) == 0).expect("group element")
    }

    pub fn name(&self, x: usize) -> String {
        let pow = |v: &str, e: usize| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let s = match *self {
            Group::Cyclic(_) => pow("g", x),
            Group::Dihedral(_) => format!("{}{}", pow("r", x / 2), pow("s", x % 2)),
        };
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZooSpec {
    GroupAlgebra(Group),
    DualGroupAlgebra(Group),
    /// The Taft algebra of dimension `n²` with parameter `ζ_n`.
    Taft(usize),
    /// The 8-dimensional pointed Hopf algebra with `g⁴ = 1`, `gx = −xg`, `x² = 1 − g²`.
    Pointed8,
    MatrixCoalgebra(usize),
    C2(Scalar),
    C3,
    DirectSum(Box<ZooSpec>, Box<ZooSpec>),
    TensorProduct(Box<ZooSpec>, Box<ZooSpec>),
    Dual(Box<ZooSpec>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Built {
    Coalgebra(Coalgebra),
    Hopf(HopfAlgebra),
}

impl Built {
    pub fn coalgebra(&self) -> &Coalgebra {
        match self {
            Built::Coalgebra(c) => c,
            Built::Hopf(h) => &h.coalgebra,
        }
    }

    pub fn hopf(self) -> Result<HopfAlgebra> {
        match self {
            Built::Hopf(h) => Ok(h),
            Built::Coalgebra(_) => Err(Error::Precondition("expected a Hopf algebra, found a coalgebra".into())),
        }
    }
}

/// Builds over `Q(ζ_conductor)`, verifying every axiom.
pub fn build(spec: &ZooSpec, conductor: u32) -> Result<Built> {
    Ok(match spec {
        ZooSpec::GroupAlgebra(g) => Built::Hopf(group_algebra(*g, conductor)?),
        ZooSpec::DualGroupAlgebra(g) => Built::Hopf(dual_group_algebra(*g, conductor)?),
        ZooSpec::Taft(n) => Built::Hopf(taft(*n, conductor)?),
        ZooSpec::Pointed8 => Built::Hopf(pointed8(conductor)?),
        ZooSpec::MatrixCoalgebra(d) => Built::Coalgebra(checked(matrix_coalgebra(*d).with_conductor(conductor))?),
        ZooSpec::C2(a) => Built::Coalgebra(c2(a).with_conductor(conductor)),
        ZooSpec::C3 => Built::Coalgebra(c3().with_conductor(conductor)),
        ZooSpec::DirectSum(a, b) => {
            Built::Coalgebra(direct_sum(build(a, conductor)?.coalgebra(), build(b, conductor)?.coalgebra())?)
        }
        ZooSpec::TensorProduct(a, b) => {
            Built::Hopf(tensor_product(&build(a, conductor)?.hopf()?, &build(b, conductor)?.hopf()?)?)
        }
        ZooSpec::Dual(a) => match build(a, conductor)? {
            Built::Hopf(h) => Built::Hopf(h.dualize()),
            Built::Coalgebra(_) => {
                return Err(Error::Precondition("dualizing needs a Hopf algebra, not a bare coalgebra".into()))
            }
        },
    })
}

fn checked(c: Coalgebra) -> Result<Coalgebra> {
    match check_coalgebra(&c).first() {
        Some(v) => Err(Error::Internal(format!("constructed coalgebra fails: {v}"))),
        None => Ok(c),
    }
}

fn cube(n: usize) -> Tensor3 {
    vec![vec![vec![Scalar::zero(); n]; n]; n]
}

pub fn group_algebra(g: Group, conductor: u32) -> Result<HopfAlgebra> {
    g.validate()?;
    let n = g.order();
    let mut comul = cube(n);
    let mut mul = cube(n);
    for x in 0..n {
        comul[x][x][x] = Scalar::one();
        for y in 0..n {
            mul[x][y][g.mul(x, y)] = Scalar::one();
        }
    }
    let names = (0..n).map(|x| g.name(x)).collect();
    let c = Coalgebra::new(names, comul, vec![Scalar::one(); n], conductor)?;
    let a = AlgebraSC::new(mul, linalg::unit_vec(n, 0), conductor)?;
    HopfAlgebra::checked(c, a)
}

/// `k^G` with basis the dual functionals `δ_x`.
pub fn dual_group_algebra(g: Group, conductor: u32) -> Result<HopfAlgebra> {
    let h = group_algebra(g, conductor)?.dualize();
    let names = (0..g.order()).map(|x| format!("d[{}]", g.name(x))).collect();
    rename(h, names)
}

fn rename(h: HopfAlgebra, names: Vec<String>) -> Result<HopfAlgebra> {
    let s = h.s()?;
    let c = Coalgebra::new(names, h.coalgebra.comul().clone(), h.coalgebra.counit().clone(), h.conductor())?;
    HopfAlgebra::new(c, h.algebra)?.with_antipode(s)
}

/// A pointed Hopf algebra with basis `g^i x^j` (index `i*xs + j`), given its product on
/// basis words and the images of `g` and `x` under `Δ`.
fn from_words(
    gs: usize,
    xs: usize,
    product: impl Fn(usize, usize, usize, usize) -> Vector,
    dg: Vector,
    dx: Vector,
    conductor: u32,
) -> Result<HopfAlgebra> {
    let n = gs * xs;
    let mut mul = cube(n);
    for a in 0..gs {
        for b in 0..xs {
            for c in 0..gs {
                for d in 0..xs {
                    mul[a * xs + b][c * xs + d] = product(a, b, c, d);
                }
            }
        }
    }
    let algebra = AlgebraSC::new(mul, linalg::unit_vec(n, 0), conductor)?;
    let name = |i: usize, j: usize| {
        let p = |v: &str, e: usize| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let s = format!("{}{}", p("g", i), p("x", j));
        if s.is_empty() {
            "1".to_string()
        } else {
            s
        }
    };
    let names: Vec<String> = (0..gs).flat_map(|i| (0..xs).map(move |j| name(i, j))).collect();
    // Δ is assembled from Δ(g) and Δ(x) in the product algebra H ⊗ H
    let proto = HopfAlgebra::new(
        Coalgebra::new(names.clone(), cube(n), linalg::zero_vec(n), conductor)?,
        algebra.clone(),
    )?;
    let one = kron(&linalg::unit_vec(n, 0), &linalg::unit_vec(n, 0));
    let mut comul = cube(n);
    for i in 0..gs {
        for j in 0..xs {
            let mut t = one.clone();
            for _ in 0..i {
                t = proto.tensor_mul(&t, &dg);
            }
            for _ in 0..j {
                t = proto.tensor_mul(&t, &dx);
            }
            for p in 0..n {
                for q in 0..n {
                    comul[i * xs + j][p][q] = t[p * n + q].clone();
                }
            }
        }
    }
    let counit = (0..n).map(|k| if k % xs == 0 { Scalar::one() } else { Scalar::zero() }).collect();
    HopfAlgebra::checked(Coalgebra::new(names, comul, counit, conductor)?, algebra)
}

/// `Δx = x ⊗ 1 + g ⊗ x`, `gx = ζ_n xg`, `g^n = 1`, `x^n = 0`.
pub fn taft(n: usize, conductor: u32) -> Result<HopfAlgebra> {
    if n < 2 {
        return Err(Error::Precondition("Taft algebras need n ≥ 2".into()));
    }
    let field = normalize_conductor(conductor.max(1));
    if field % normalize_conductor(n as u32) != 0 {
        return Err(Error::FieldTooSmall(format!("Q(ζ_{conductor}) does not contain a primitive root of unity of order {n}")));
    }
    let zeta = Scalar::root_of_unity(n as u32, 1);
    let dim = n * n;
    let product = |a: usize, b: usize, c: usize, d: usize| {
        let mut v = linalg::zero_vec(dim);
        if b + d < n {
            v[((a + c) % n) * n + b + d] = zeta.pow(((n - (b * c) % n) % n) as u64);
        }
        v
    };
    let g = linalg::unit_vec(dim, n);
    let x = linalg::unit_vec(dim, 1);
    let one = linalg::unit_vec(dim, 0);
    let dg = kron(&g, &g);
    let dx = linalg::add_vec(&kron(&x, &one), &kron(&g, &x));
    from_words(n, n, product, dg, dx, lcm_u32(conductor, n as u32))
}

pub fn pointed8(conductor: u32) -> Result<HopfAlgebra> {
    let product = |a: usize, b: usize, c: usize, d: usize| {
        let mut v = linalg::zero_vec(8);
        let sign = if b * c % 2 == 1 { -Scalar::one() } else { Scalar::one() };
        let e = (a + c) % 4;
        if b + d < 2 {
            v[2 * e + b + d] = sign;
        } else {
            // x² = 1 − g²
            v[2 * e] = sign.clone();
            v[2 * ((e + 2) % 4)] = -sign;
        }
        v
    };
    let g = linalg::unit_vec(8, 2);
    let x = linalg::unit_vec(8, 1);
    let one = linalg::unit_vec(8, 0);
    let dg = kron(&g, &g);
    let dx = linalg::add_vec(&kron(&x, &one), &kron(&g, &x));
    from_words(4, 2, product, dg, dx, conductor)
}

/// `Δx = x ⊗ x + a y ⊗ y`, `Δy = x ⊗ y + y ⊗ x`.
pub fn c2(a: &Scalar) -> Coalgebra {
    let mut comul = cube(2);
    comul[0][0][0] = Scalar::one();
    comul[0][1][1] = a.clone();
    comul[1][0][1] = Scalar::one();
    comul[1][1][0] = Scalar::one();
    let counit = vec![Scalar::one(), Scalar::zero()];
    Coalgebra::new(vec!["x".into(), "y".into()], comul, counit, 1).expect("valid shape")
}

/// Basis `g, h, u` with `Δu = g ⊗ u + u ⊗ h`.
pub fn c3() -> Coalgebra {
    let mut comul = cube(3);
    comul[0][0][0] = Scalar::one();
    comul[1][1][1] = Scalar::one();
    comul[2][0][2] = Scalar::one();
    comul[2][2][1] = Scalar::one();
    let counit = vec![Scalar::one(), Scalar::one(), Scalar::zero()];
    Coalgebra::new(vec!["g".into(), "h".into(), "u".into()], comul, counit, 1).expect("valid shape")
}

pub fn direct_sum(a: &Coalgebra, b: &Coalgebra) -> Result<Coalgebra> {
    let (n, m) = (a.dim(), b.dim());
    let mut comul = cube(n + m);
    for (i, plane) in a.comul().iter().enumerate() {
        for (j, row) in plane.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                comul[i][j][k] = x.clone();
            }
        }
    }
    for (i, plane) in b.comul().iter().enumerate() {
        for (j, row) in plane.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                comul[n + i][n + j][n + k] = x.clone();
            }
        }
    }
    let counit = a.counit().iter().chain(b.counit()).cloned().collect();
    let names = a.basis_names().iter().map(|s| format!("{s}.0")).chain(b.basis_names().iter().map(|s| format!("{s}.1")));
    Coalgebra::new(names.collect(), comul, counit, lcm_u32(a.conductor(), b.conductor()))
}

/// `H ⊗ K` with basis `h_i ⊗ k_j` at index `i*dim K + j`.
pub fn tensor_product(h: &HopfAlgebra, k: &HopfAlgebra) -> Result<HopfAlgebra> {
    let (n, m) = (h.dim(), k.dim());
    let d = n * m;
    let pair = |t1: &Tensor3, t2: &Tensor3| {
        let mut out = cube(d);
        for i in 0..n {
            for j in 0..m {
                for p in 0..n {
                    for r in 0..n {
                        let x = &t1[i][p][r];
                        if x.is_zero() {
                            continue;
                        }
                        for q in 0..m {
                            for s in 0..m {
                                let y = &t2[j][q][s];
                                if !y.is_zero() {
                                    out[i * m + j][p * m + q][r * m + s] = x * y;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    };
    let conductor = lcm_u32(h.conductor(), k.conductor());
    let names =
        h.basis_names().iter().flat_map(|a| k.basis_names().iter().map(move |b| format!("{a}⊗{b}"))).collect();
    let counit = kron(h.coalgebra.counit(), k.coalgebra.counit());
    let coalgebra = Coalgebra::new(names, pair(h.coalgebra.comul(), k.coalgebra.comul()), counit, conductor)?;
    // multiplication constants share the layout m[i][j][k] ↔ c[i][j][k]
    let algebra = AlgebraSC::new(pair(h.algebra.mul(), k.algebra.mul()), kron(h.unit(), k.unit()), conductor)?;
    let (sh, sk) = (h.s()?, k.s()?);
    let s: Vec<Vector> =
        (0..d).map(|row| (0..d).map(|col| &sh[row / m][col / m] * &sk[row % m][col % m]).collect()).collect();
    let out = HopfAlgebra::new(coalgebra, algebra)?;
    if let Some(v) = crate::hopf::check_bialgebra(&out).first() {
        return Err(Error::Internal(format!("tensor product fails: {v}")));
    }
    out.with_antipode(s)
}

impl ZooSpec {
    /// The smallest conductor over which [`build`] succeeds.
    pub fn required_conductor(&self) -> u32 {
        match self {
            ZooSpec::Taft(n) => normalize_conductor(*n as u32),
            ZooSpec::C2(a) => a.conductor(),
            ZooSpec::DirectSum(a, b) | ZooSpec::TensorProduct(a, b) => {
                lcm_u32(a.required_conductor(), b.required_conductor())
            }
            ZooSpec::Dual(a) => a.required_conductor(),
            _ => 1,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Cyclic(n) => write!(f, "cyclic({n})"),
            Group::Dihedral(n) => write!(f, "dihedral({n})"),
        }
    }
}

impl fmt::Display for ZooSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooSpec::GroupAlgebra(g) => write!(f, "group_algebra({g})"),
            ZooSpec::DualGroupAlgebra(g) => write!(f, "dual_group_algebra({g})"),
            ZooSpec::Taft(n) => write!(f, "taft({n})"),
            ZooSpec::Pointed8 => write!(f, "pointed8"),
            ZooSpec::MatrixCoalgebra(d) => write!(f, "matrix_coalgebra({d})"),
            ZooSpec::C2(a) => write!(f, "c2({a})"),
            ZooSpec::C3 => write!(f, "c3"),
            ZooSpec::DirectSum(a, b) => write!(f, "direct_sum({a}, {b})"),
            ZooSpec::TensorProduct(a, b) => write!(f, "tensor_product({a}, {b})"),
            ZooSpec::Dual(a) => write!(f, "dual({a})"),
        }
    }
}

/// `name` or `name(arg, …)`, splitting arguments at top-level commas.
fn call(s: &str) -> Result<(&str, Vec<&str>)> {
    let s = s.trim();
    let Some(open) = s.find('(') else {
        return Ok((s, vec![]));
    };
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in '{s}'")))?;
    let mut args = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                args.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in '{s}'")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in '{s}'")));
    }
    args.push(inner[start..].trim());
    Ok((s[..open].trim(), args))
}

fn arity(name: &str, args: &[&str], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::Parse(format!("{name} takes {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn count(name: &str, s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("{name}: expected a positive integer, got '{s}'")))
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = call(s)?;
        arity(name, &args, 1)?;
        match name {
            "cyclic" => Ok(Group::Cyclic(count(name, args[0])?)),
            "dihedral" => Ok(Group::Dihedral(count(name, args[0])?)),
            _ => Err(Error::Parse(format!("unknown group '{name}', expected cyclic(n) or dihedral(n)"))),
        }
    }
}

impl FromStr for ZooSpec {
    type Err = Error;

    /// Parses expressions such as `taft(3)`, `c2(-1)` or `dual(direct_sum(c3, c2(2)))`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = call(s)?;
        let boxed = |a: &str| a.parse::<ZooSpec>().map(Box::new);
        let spec = match name {
            "group_algebra" | "dual_group_algebra" => {
                arity(name, &args, 1)?;
                let g = args[0].parse()?;
                if name == "group_algebra" {
                    ZooSpec::GroupAlgebra(g)
                } else {
                    ZooSpec::DualGroupAlgebra(g)
                }
            }
            "taft" => {
                arity(name, &args, 1)?;
                ZooSpec::Taft(count(name, args[0])?)
            }
            "pointed8" => {
                arity(name, &args, 0)?;
                ZooSpec::Pointed8
            }
            "matrix_coalgebra" => {
                arity(name, &args, 1)?;
                ZooSpec::MatrixCoalgebra(count(name, args[0])?)
            }
            "c2" => {
                arity(name, &args, 1)?;
                ZooSpec::C2(args[0].parse().map_err(|e| Error::Parse(format!("c2: {e}")))?)
            }
            "c3" => {
                arity(name, &args, 0)?;
                ZooSpec::C3
            }
            "direct_sum" | "tensor_product" => {
                arity(name, &args, 2)?;
                let (a, b) = (boxed(args[0])?, boxed(args[1])?);
                if name == "direct_sum" {
                    ZooSpec::DirectSum(a, b)
                } else {
                    ZooSpec::TensorProduct(a, b)
                }
            }
            "dual" => {
                arity(name, &args, 1)?;
                ZooSpec::Dual(boxed(args[0])?)
            }
            _ => return Err(Error::Parse(format!("unknown family '{name}'"))),
        };
        Ok(spec)
    }
}
