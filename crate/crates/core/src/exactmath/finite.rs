//! Small finite fields `F_{p^d}` and polynomial root finding over them.
//!
//! Only used as the residue field for ℓ-adic root lifting, so `p < 2^31`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type El = Vec<u64>;
pub type FPoly = Vec<El>;

#[derive(Clone, Debug)]
pub struct Fq {
    pub p: u64,
    pub d: usize,
    /// Monic modulus of degree `d`, lowest first.
    modulus: Vec<u64>,
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut f = 2u128;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Fq {
    pub fn prime(p: u64) -> Fq {
        Fq { p, d: 1, modulus: vec![0, 1] }
    }

    /// `F_{p^d}` built from the first irreducible polynomial found by a seeded search.
    pub fn new(p: u64, d: usize, rng: &mut ChaCha8Rng) -> Fq {
        if d == 1 {
            return Fq::prime(p);
        }
        let base = Fq::prime(p);
        loop {
            let mut f: FPoly = (0..d).map(|_| vec![rng.gen_range(0..p)]).collect();
            f.push(vec![1]);
            if base.is_irreducible(&f) {
                let modulus = f.into_iter().map(|c| c[0]).collect();
                return Fq { p, d, modulus };
            }
        }
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.d as u32)
    }

    pub fn zero(&self) -> El {
        vec![0; self.d]
    }

    pub fn one(&self) -> El {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> El {
        let mut e = self.zero();
        e[0] = v % self.p;
        e
    }

    /// The class of the generator `z` of `F_p[z]/(modulus)`.
    pub fn generator(&self) -> El {
        if self.d == 1 {
            return self.from_u64(self.p - self.modulus[0] % self.p);
        }
        let mut e = self.zero();
        e[1] = 1;
        e
    }

    pub fn is_zero(&self, a: &El) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &El, b: &El) -> El {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &El, b: &El) -> El {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    pub fn neg(&self, a: &El) -> El {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &El, b: &El) -> El {
        let p = self.p;
        let d = self.d;
        if d == 1 {
            return vec![a[0] * b[0] % p];
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..d {
                prod[k - d + j] = (prod[k - d + j] + (p - c) * self.modulus[j]) % p;
            }
        }
        prod.truncate(d);
        prod
    }

    pub fn pow(&self, a: &El, mut e: u128) -> El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &El) -> Option<El> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }

    pub fn random(&self, rng: &mut ChaCha8Rng) -> El {
        (0..self.d).map(|_| rng.gen_range(0..self.p)).collect()
    }

    /// A primitive n-th root of unity; requires `n | q - 1`.
    pub fn primitive_root_of_unity(&self, n: u64, rng: &mut ChaCha8Rng) -> El {
        let q = self.order();
        assert!((q - 1) % n as u128 == 0);
        let primes = prime_factors(n as u128);
        loop {
            let a = self.random(rng);
            if self.is_zero(&a) {
                continue;
            }
            let w = self.pow(&a, (q - 1) / n as u128);
            if primes.iter().all(|&r| self.pow(&w, n as u128 / r) != self.one()) {
                return w;
            }
        }
    }

    // ---- polynomials over this field ----

    pub fn ptrim(&self, mut f: FPoly) -> FPoly {
        while f.last().is_some_and(|c| self.is_zero(c)) {
            f.pop();
        }
        f
    }

    pub fn pdeg(&self, f: &FPoly) -> Option<usize> {
        f.iter().rposition(|c| !self.is_zero(c))
    }

    pub fn psub(&self, a: &FPoly, b: &FPoly) -> FPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        self.ptrim((0..n).map(|i| self.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }

    pub fn pmul(&self, a: &FPoly, b: &FPoly) -> FPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.ptrim(out)
    }

    pub fn pdivrem(&self, a: &FPoly, b: &FPoly) -> (FPoly, FPoly) {
        let db = self.pdeg(b).expect("division by zero polynomial");
        let inv = self.inv(&b[db]).unwrap();
        let mut rem = self.ptrim(a.clone());
        let Some(da) = self.pdeg(&rem) else {
            return (vec![], rem);
        };
        if da < db {
            return (vec![], rem);
        }
        let mut q = vec![self.zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = self.mul(&rem[k + db], &inv);
            if self.is_zero(&c) {
                continue;
            }
            for j in 0..=db {
                rem[k + j] = self.sub(&rem[k + j], &self.mul(&c, &b[j]));
            }
            q[k] = c;
        }
        (self.ptrim(q), self.ptrim(rem))
    }

    pub fn pmonic(&self, f: &FPoly) -> FPoly {
        match self.pdeg(f) {
            None => vec![],
            Some(d) => {
                let inv = self.inv(&f[d]).unwrap();
                f[..=d].iter().map(|c| self.mul(c, &inv)).collect()
            }
        }
    }

    pub fn pgcd(&self, a: &FPoly, b: &FPoly) -> FPoly {
        let mut x = self.ptrim(a.clone());
        let mut y = self.ptrim(b.clone());
        while self.pdeg(&y).is_some() {
            let (_, r) = self.pdivrem(&x, &y);
            x = y;
            y = r;
        }
        self.pmonic(&x)
    }

    pub fn ppowmod(&self, base: &FPoly, mut e: u128, m: &FPoly) -> FPoly {
        let mut acc = vec![self.one()];
        let mut b = self.pdivrem(base, m).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.pdivrem(&self.pmul(&acc, &b), m).1;
            }
            b = self.pdivrem(&self.pmul(&b, &b), m).1;
            e >>= 1;
        }
        acc
    }

    pub fn peval(&self, f: &FPoly, x: &El) -> El {
        let mut acc = self.zero();
        for c in f.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    fn x_poly(&self) -> FPoly {
        vec![self.zero(), self.one()]
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &FPoly) -> bool {
        let Some(d) = self.pdeg(f) else { return false };
        if d == 0 {
            return false;
        }
        let q = self.order();
        let x = self.x_poly();
        // x^{q^k} mod f
        let frob = |k: usize| {
            let mut h = x.clone();
            for _ in 0..k {
                h = self.ppowmod(&h, q, f);
            }
            h
        };
        if self.pdeg(&self.psub(&frob(d), &x)).is_some() {
            return false;
        }
        for r in prime_factors(d as u128) {
            let h = self.psub(&frob(d / r as usize), &x);
            if self.pdeg(&self.pgcd(f, &h)) != Some(0) {
                return false;
            }
        }
        true
    }

    /// All roots in this field of a nonzero polynomial (odd characteristic).
    pub fn roots(&self, f: &FPoly, rng: &mut ChaCha8Rng) -> Vec<El> {
        let f = self.pmonic(f);
        if self.pdeg(&f).unwrap_or(0) == 0 {
            return vec![];
        }
        let xq = self.ppowmod(&self.x_poly(), self.order(), &f);
        let g = self.pgcd(&f, &self.psub(&xq, &self.x_poly()));
        let mut out = Vec::new();
        self.split_linear(g, rng, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn split_linear(&self, g: FPoly, rng: &mut ChaCha8Rng, out: &mut Vec<El>) {
        match self.pdeg(&g) {
            None | Some(0) => {}
            Some(1) => out.push(self.neg(&self.mul(&g[0], &self.inv(&g[1]).unwrap()))),
            Some(dg) => loop {
                let delta = self.random(rng);
                let base = vec![delta, self.one()];
                let h = self.ppowmod(&base, (self.order() - 1) / 2, &g);
                let h = self.psub(&h, &vec![self.one()]);
                let c = self.pgcd(&g, &h);
                let dc = self.pdeg(&c).unwrap_or(0);
                if dc > 0 && dc < dg {
                    let other = self.pdivrem(&g, &c).0;
                    self.split_linear(c, rng, out);
                    self.split_linear(other, rng, out);
                    return;
                }
            },
        }
    }
}
