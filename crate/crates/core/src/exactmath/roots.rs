//! Roots in `Q(ζ_n)` of polynomials with coefficients in `Q(ζ_n)`.
//!
//! The polynomial is made monic and integral, its roots are found modulo a
//! prime ℓ with the fewest primes above it in `Z[ζ_n]`, lifted ℓ-adically by
//! Newton iteration and verified exactly. Lifting stops at a precision derived
//! from a root-size estimate; see [`roots_in_field`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::finite::{El, FPoly, Fq};
use super::poly::{self, Poly};
use super::scalar::{cyclotomic, euler_phi, lcm_u32, normalize_conductor};
use super::Scalar;
use crate::error::{Error, Result};

/// Largest number of per-prime root combinations examined.
const MAX_COMBINATIONS: usize = 200_000;

type ZVec = Vec<BigInt>;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    k
}

fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![1];
    }
    (1..n).filter(|&a| gcd_u64(a, n) == 1).collect()
}

fn carmichael(n: u64) -> u64 {
    units(n).into_iter().map(|a| mult_order(a, n)).max().unwrap_or(1)
}

/// Residue data for one prime ℓ: the field `F_{ℓ^d}`, the images of `ζ_n`
/// under each embedding, and the inverse of the CRT map.
struct Local {
    n: u32,
    phi: usize,
    cyc: Vec<i64>,
    ell: u64,
    fq: Fq,
    /// `pw[t][i]` is the image of `ζ^i` under embedding `t`.
    pw: Vec<Vec<El>>,
    minv: Vec<Vec<u64>>,
}

fn invert_mod(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = pow(a[col][col], p - 2);
        for v in a[col].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y % p) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

impl Local {
    fn new(n: u32, ell: u64, rng: &mut ChaCha8Rng) -> Option<Local> {
        let phi = euler_phi(n);
        let d = mult_order(ell, n as u64) as usize;
        let fq = Fq::new(ell, d, rng);
        let omega = fq.primitive_root_of_unity(n as u64, rng);
        // transversal of (Z/n)^* / <ℓ>
        let mut covered = vec![false; n as usize + 1];
        let mut reps = Vec::new();
        for a in units(n as u64) {
            if covered[a as usize] {
                continue;
            }
            reps.push(a);
            let mut x = a;
            for _ in 0..d {
                covered[x as usize] = true;
                x = x * ell % (n as u64).max(2);
            }
        }
        let pw: Vec<Vec<El>> = reps
            .iter()
            .map(|&a| {
                let w = fq.pow(&omega, a as u128);
                let mut cur = fq.one();
                (0..phi)
                    .map(|_| {
                        let v = cur.clone();
                        cur = fq.mul(&cur, &w);
                        v
                    })
                    .collect()
            })
            .collect();
        debug_assert_eq!(pw.len() * d, phi);
        let mut m = vec![vec![0u64; phi]; phi];
        for (t, row) in pw.iter().enumerate() {
            for (i, e) in row.iter().enumerate() {
                for j in 0..d {
                    m[t * d + j][i] = e[j];
                }
            }
        }
        let minv = invert_mod(&m, ell)?;
        Some(Local { n, phi, cyc: cyclotomic(n).poly.clone(), ell, fq, pw, minv })
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<u64> {
        let l = BigInt::from(self.ell);
        v.iter().map(|c| c.mod_floor(&l).to_u64().unwrap()).collect()
    }

    fn embed(&self, c: &[u64], t: usize) -> El {
        let mut acc = self.fq.zero();
        for (ci, w) in c.iter().zip(&self.pw[t]) {
            if *ci != 0 {
                acc = self.fq.add(&acc, &self.fq.mul(&self.fq.from_u64(*ci), w));
            }
        }
        acc
    }

    fn from_components(&self, comps: &[El]) -> Vec<u64> {
        let v: Vec<u64> = comps.iter().flat_map(|e| e.iter().copied()).collect();
        self.minv
            .iter()
            .map(|row| row.iter().zip(&v).fold(0u64, |acc, (a, b)| (acc + a * b % self.ell) % self.ell))
            .collect()
    }

    fn inv_mod_ell(&self, a: &[u64]) -> Option<Vec<u64>> {
        let comps: Option<Vec<El>> = (0..self.pw.len()).map(|t| self.fq.inv(&self.embed(a, t))).collect();
        Some(self.from_components(&comps?))
    }

    fn ring_mul(&self, a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZVec {
        let phi = self.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let cyc = &self.cyc;
        for k in (phi..2 * phi - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..phi {
                if cyc[j] != 0 {
                    prod[k - phi + j] -= &c * cyc[j];
                }
            }
        }
        prod.truncate(phi);
        prod.into_iter().map(|c| c.mod_floor(m)).collect()
    }

    fn horner(&self, g: &[ZVec], x: &[BigInt], m: &BigInt) -> ZVec {
        let mut acc = vec![BigInt::zero(); self.phi];
        for c in g.iter().rev() {
            acc = self.ring_mul(&acc, x, m);
            for (a, b) in acc.iter_mut().zip(c) {
                *a = (&*a + b).mod_floor(m);
            }
        }
        acc
    }

    /// Inverse of `a` modulo `ℓ^e`, from its inverse modulo ℓ.
    fn inv_mod_power(&self, a: &[BigInt], e: u32) -> Option<ZVec> {
        let x0 = self.inv_mod_ell(&self.reduce(a))?;
        let mut x: ZVec = x0.into_iter().map(BigInt::from).collect();
        let l = BigInt::from(self.ell);
        let mut prec = 1;
        while prec < e {
            prec = (2 * prec).min(e);
            let m = l.pow(prec);
            let ax = self.ring_mul(a, &x, &m);
            let mut two_minus: ZVec = ax.iter().map(|c| (-c).mod_floor(&m)).collect();
            two_minus[0] = (&two_minus[0] + 2u32).mod_floor(&m);
            x = self.ring_mul(&x, &two_minus, &m);
        }
        Some(x)
    }
}

/// Roots of `f` in `Q(ζ_n)` where `n` is `conductor` joined with the
/// conductors of the coefficients.
///
/// Every returned value is verified exactly. Completeness relies on a bound
/// for the size of the power-basis coefficients of an integral root; the
/// bound used is an estimate, so a root with unusually large coefficients
/// could be missed.
pub fn roots_in_field(f: &[Scalar], conductor: u32) -> Result<Vec<Scalar>> {
    let f = poly::trim(f.to_vec());
    let n = normalize_conductor(f.iter().fold(conductor.max(1), |acc, c| lcm_u32(acc, c.conductor())));
    let Some(deg) = poly::degree(&f) else {
        return Err(Error::Precondition("root search on the zero polynomial".into()));
    };
    if deg == 0 {
        return Ok(vec![]);
    }
    let f = poly::squarefree_part(&f);
    let m = poly::degree(&f).unwrap();
    if m == 1 {
        return Ok(vec![(-&f[0]).lift_to(lcm_u32(n, f[0].conductor()))]);
    }
    let f: Poly = f.iter().map(|c| c.lift_to(n)).collect();
    let den = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    // g(t) = D^m f(t / D) is monic with coefficients in Z[ζ_n]
    let g: Vec<ZVec> = f
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let scale = den.pow((m - k) as u32);
            c.coeffs()
                .iter()
                .map(|q| {
                    let v = q * BigRational::from_integer(scale.clone());
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    let phi = euler_phi(n);
    let lambda = carmichael(n as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut ell = 100u64;
    let mut attempts = 0;
    loop {
        ell += 1;
        if !is_prime(ell) || (n as u64) % ell == 0 || mult_order(ell, n as u64) != lambda {
            continue;
        }
        if (ell as f64).powi(lambda as i32) > 2f64.powi(100) {
            return Err(Error::Precondition(format!("root finding over Q(zeta_{n}) needs a residue field that is too large")));
        }
        attempts += 1;
        if attempts > 200 {
            return Err(Error::Internal("no suitable prime for root lifting".into()));
        }
        let Some(local) = Local::new(n, ell, &mut rng) else { continue };
        if let Some(out) = search_with_prime(&local, &f, &g, &den, phi, &mut rng)? {
            return Ok(out);
        }
    }
}

/// `None` when ℓ divides the discriminant and another prime must be tried.
fn search_with_prime(
    local: &Local,
    f: &Poly,
    g: &[ZVec],
    den: &BigInt,
    phi: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Vec<Scalar>>> {
    let fq = &local.fq;
    let g_res: Vec<Vec<u64>> = g.iter().map(|c| local.reduce(c)).collect();
    let mut per_embedding: Vec<Vec<El>> = Vec::new();
    for t in 0..local.pw.len() {
        let gs: FPoly = fq.ptrim(g_res.iter().map(|c| local.embed(c, t)).collect());
        let dgs: FPoly = fq.ptrim(
            gs.iter().enumerate().skip(1).map(|(k, c)| fq.mul(c, &fq.from_u64(k as u64))).collect(),
        );
        if fq.pdeg(&fq.pgcd(&gs, &dgs)) != Some(0) {
            return Ok(None);
        }
        let roots = fq.roots(&gs, rng);
        if roots.is_empty() {
            return Ok(Some(vec![]));
        }
        per_embedding.push(roots);
    }
    let total = per_embedding.iter().try_fold(1usize, |acc, r| acc.checked_mul(r.len()));
    if total.is_none_or(|t| t > MAX_COMBINATIONS) {
        return Err(Error::Internal("too many local root combinations".into()));
    }
    let mut candidates: Vec<ZVec> = Vec::new();
    let mut idx = vec![0usize; per_embedding.len()];
    loop {
        let comps: Vec<El> = idx.iter().zip(&per_embedding).map(|(&i, r)| r[i].clone()).collect();
        candidates.push(local.from_components(&comps).into_iter().map(BigInt::from).collect());
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < per_embedding[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }

    let cap_bits = precision_cap_bits(g, phi);
    let dg: Vec<ZVec> = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.iter().map(|x| x * BigInt::from(k)).collect())
        .collect();
    let l = BigInt::from(local.ell);
    let mut found = Vec::new();
    let mut e = 1u32;
    while !candidates.is_empty() {
        let e2 = 2 * e;
        let m2 = l.pow(e2);
        let mut next = Vec::with_capacity(candidates.len());
        for alpha in candidates {
            let val = local.horner(g, &alpha, &m2);
            let Some(inv) = local.inv_mod_power(&local.horner(&dg, &alpha, &m2), e) else {
                return Ok(None);
            };
            let corr = local.ring_mul(&val, &inv, &m2);
            let lifted: ZVec = alpha.iter().zip(&corr).map(|(a, c)| (a - c).mod_floor(&m2)).collect();
            let sym: ZVec = lifted.iter().map(|c| if c * 2 > m2 { c - &m2 } else { c.clone() }).collect();
            let small = sym.iter().all(|c| c * c * 4 < m2);
            if small {
                if let Some(root) = verify(f, &sym, den, local.n) {
                    found.push(root);
                    continue;
                }
            }
            next.push(lifted);
        }
        candidates = next;
        e = e2;
        if e as f64 * (local.ell as f64).log2() > cap_bits as f64 {
            break;
        }
    }
    found.sort();
    found.dedup();
    Ok(Some(found))
}

/// Precision (in bits) beyond which an unverified candidate is discarded.
fn precision_cap_bits(g: &[ZVec], phi: usize) -> u64 {
    let bound_bits = g
        .iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<BigInt>().bits())
        .max()
        .unwrap_or(1)
        + 1;
    2 * (bound_bits + 2 * phi as u64 + 64)
}

fn verify(f: &Poly, beta: &[BigInt], den: &BigInt, n: u32) -> Option<Scalar> {
    let d = BigRational::from_integer(den.clone());
    let coeffs: Vec<BigRational> = beta.iter().map(|c| BigRational::from_integer(c.clone()) / &d).collect();
    let alpha = Scalar::from_power_sum(&coeffs, n).ok()?;
    poly::eval(f, &alpha).is_zero().then_some(alpha)
}

/// Whether `a` has a square root in `Q(ζ_n)`, `n` the conductor of `a` joined with `conductor`.
pub fn scalar_is_square(a: &Scalar, conductor: u32) -> Result<Option<Scalar>> {
    if a.is_zero() {
        return Ok(Some(Scalar::zero()));
    }
    let roots = roots_in_field(&[-a, Scalar::zero(), Scalar::one()], conductor)?;
    let positive = roots.iter().find(|r| r.as_rational().is_some_and(|q| q.is_positive()));
    Ok(positive.or(roots.first()).cloned())
}
