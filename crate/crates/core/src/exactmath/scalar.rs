//! Elements of cyclotomic fields `Q(ζ_n)` in the power basis.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest conductor accepted; keeps the integer reduction tables small.
pub const MAX_CONDUCTOR: u32 = 420;

pub(crate) struct Cyclotomic {
    pub phi: usize,
    /// Coefficients of Φ_n, lowest degree first (monic).
    pub poly: Vec<i64>,
    /// `table[k]` holds x^k mod Φ_n for 0 <= k < n.
    pub table: Vec<Vec<i64>>,
}

fn cyclo_cache() -> &'static RwLock<HashMap<u32, Arc<Cyclotomic>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Cyclotomic>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = exact_int_div(&num, &den);
        }
    }
    num
}

fn exact_int_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut q = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn euler_phi(n: u32) -> usize {
    let mut n = n;
    let mut result = n as usize;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p as usize;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n as usize;
    }
    result
}

/// Conductors congruent to 2 mod 4 describe the same field as half of them.
pub fn normalize_conductor(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

pub(crate) fn cyclotomic(n: u32) -> Arc<Cyclotomic> {
    if let Some(c) = cyclo_cache().read().unwrap().get(&n) {
        return c.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut table = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        table.push(cur.clone());
        // multiply by x and reduce by the monic Φ_n
        let top = cur[phi - 1];
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..phi {
                cur[j] = cur[j].checked_sub(top.checked_mul(poly[j]).expect("overflow")).expect("overflow");
            }
        }
    }
    let c = Arc::new(Cyclotomic { phi, poly, table });
    cyclo_cache().write().unwrap().insert(n, c.clone());
    c
}

/// An element of `Q(ζ_n)`; `n == 1` is the rational field.
#[derive(Clone, Debug)]
pub struct Scalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Scalar { conductor: 1, coeffs: vec![BigRational::from_integer(BigInt::from(v))] }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar { conductor: 1, coeffs: vec![q] }
    }

    /// `Σ c_i ζ_n^i` for arbitrary exponent range, reduced into the power basis.
    pub fn from_power_sum(coeffs: &[BigRational], n: u32) -> Result<Self> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(Error::Parse(format!("conductor {n} out of range 1..={MAX_CONDUCTOR}")));
        }
        let target = normalize_conductor(n);
        let mut terms: Vec<(u64, BigRational)> = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if target == n {
                terms.push((i as u64 % n as u64, c.clone()));
            } else {
                // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m
                let m = target as u64;
                let e = (i as u64 * ((m + 1) / 2)) % m.max(1);
                let c = if i % 2 == 1 { -c.clone() } else { c.clone() };
                terms.push((e, c));
            }
        }
        Ok(Scalar::reduce_terms(target, terms))
    }

    fn reduce_terms(n: u32, terms: Vec<(u64, BigRational)>) -> Self {
        if n == 1 {
            let mut s = BigRational::zero();
            for (_, c) in terms {
                s += c;
            }
            return Scalar::from_rational(s);
        }
        let cyc = cyclotomic(n);
        let mut out = vec![BigRational::zero(); cyc.phi];
        for (e, c) in terms {
            let row = &cyc.table[(e % n as u64) as usize];
            for (j, &t) in row.iter().enumerate() {
                if t != 0 {
                    out[j] += &c * BigRational::from_integer(BigInt::from(t));
                }
            }
        }
        Scalar { conductor: n, coeffs: out }
    }

    /// The primitive root of unity `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let n = n.max(1);
        let e = k.rem_euclid(n as i64) as u64;
        let mut c = vec![BigRational::zero(); e as usize + 1];
        c[e as usize] = BigRational::one();
        Scalar::from_power_sum(&c, n).expect("conductor in range")
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Embeds into `Q(ζ_m)`; requires the current conductor to divide `m`.
    pub fn lift_to(&self, m: u32) -> Scalar {
        let m = normalize_conductor(m);
        if m == self.conductor {
            return self.clone();
        }
        if let Some(q) = self.as_rational() {
            let cyc_phi = if m == 1 { 1 } else { cyclotomic(m).phi };
            let mut coeffs = vec![BigRational::zero(); cyc_phi];
            coeffs[0] = q.clone();
            return Scalar { conductor: m, coeffs };
        }
        assert!(m % self.conductor == 0, "cannot embed Q(zeta_{}) into Q(zeta_{})", self.conductor, m);
        let step = (m / self.conductor) as u64;
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64 * step, c.clone()))
            .collect();
        Scalar::reduce_terms(m, terms)
    }

    fn common(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        let n = lcm_u32(a.conductor, b.conductor);
        (a.lift_to(n), b.lift_to(n))
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.conductor == 1 {
            return Some(Scalar::from_rational(self.coeffs[0].recip()));
        }
        let n = self.conductor;
        let phi = self.coeffs.len();
        // columns: self * ζ^j
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            cols.push((self * &Scalar::root_of_unity(n, j as i64)).coeffs);
        }
        // augmented rows [M | e0]
        let mut m: Vec<Vec<BigRational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..phi).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Some(Scalar { conductor: n, coeffs: m.into_iter().map(|row| row[phi].clone()).collect() })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least common denominator of the rational coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn add_impl(&self, other: &Scalar, negate: bool) -> Scalar {
        if self.conductor == other.conductor {
            let coeffs = self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            return Scalar { conductor: self.conductor, coeffs };
        }
        if other.conductor == 1 {
            let mut out = self.clone();
            if negate {
                out.coeffs[0] -= &other.coeffs[0];
            } else {
                out.coeffs[0] += &other.coeffs[0];
            }
            return out;
        }
        let (a, b) = Scalar::common(self, other);
        a.add_impl(&b, negate)
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        if other.conductor == 1 {
            let f = &other.coeffs[0];
            return Scalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * f).collect() };
        }
        if self.conductor == 1 {
            return other.mul_impl(self);
        }
        if self.conductor != other.conductor {
            let (a, b) = Scalar::common(self, other);
            return a.mul_impl(&b);
        }
        let n = self.conductor;
        let cyc = cyclotomic(n);
        let phi = cyc.phi;
        let mut conv = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigRational> = conv[..phi].to_vec();
        for (k, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            let row = &cyc.table[k % n as usize];
            for (j, &t) in row.iter().enumerate() {
                if t != 0 {
                    out[j] += c * BigRational::from_integer(BigInt::from(t));
                }
            }
        }
        Scalar { conductor: n, coeffs: out }
    }

    fn cmp_same(&self, other: &Scalar) -> Ordering {
        for (a, b) in self.coeffs.iter().zip(other.coeffs.iter()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    normalize_conductor(a.lcm(&b))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Scalar::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order on representations; it has no algebraic meaning.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.conductor == other.conductor {
            return self.cmp_same(other);
        }
        let (a, b) = Scalar::common(self, other);
        a.cmp_same(&b)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a.mul_impl(&b.inv().expect("division by zero")));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Rationals print as `p/q`; other elements as `[c0,c1,...]@n`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", fmt_rational(q));
        }
        let parts: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        write!(f, "[{}]@{}", parts.join(","), self.conductor)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        Ok(BigRational::new(p, q))
    } else {
        Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('[') {
            let (body, cond) = rest
                .split_once("]@")
                .ok_or_else(|| Error::Parse(format!("bad cyclotomic scalar '{s}'")))?;
            let n: u32 = cond.trim().parse().map_err(|_| Error::Parse(format!("bad conductor in '{s}'")))?;
            let coeffs = if body.trim().is_empty() {
                vec![]
            } else {
                body.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?
            };
            return Scalar::from_power_sum(&coeffs, n);
        }
        parse_rational(s).map(Scalar::from_rational)
    }
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(v: &BigInt) -> BigInt {
    assert!(!v.is_zero());
    let sign = if v.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut n = v.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut count = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            count += 1;
        }
        if count % 2 == 1 {
            out *= &p;
        }
        p += 1;
        if p.to_u64().map_or(true, |x| x > 10_000_000) {
            break;
        }
    }
    sign * out * n
}
