//! Univariate polynomials over [`Scalar`], lowest degree first.

use super::Scalar;

pub type Poly = Vec<Scalar>;

pub fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Scalar::zero());
    }
    p
}

pub fn is_zero(p: &[Scalar]) -> bool {
    p.iter().all(Scalar::is_zero)
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(p: &[Scalar]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let z = Scalar::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let z = Scalar::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub fn mul(a: &[Scalar], b: &[Scalar]) -> Poly {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    trim(out)
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = b[db].inv().unwrap();
    let mut rem = trim(a.to_vec());
    let Some(da) = degree(&rem) else {
        return (vec![Scalar::zero()], rem);
    };
    if da < db {
        return (vec![Scalar::zero()], rem);
    }
    let mut q = vec![Scalar::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            if !bj.is_zero() {
                rem[k + j] = &rem[k + j] - &(&c * bj);
            }
        }
        q[k] = c;
    }
    (trim(q), trim(rem))
}

pub fn monic(p: &[Scalar]) -> Poly {
    match degree(p) {
        None => vec![Scalar::zero()],
        Some(d) => {
            let inv = p[d].inv().unwrap();
            trim(p[..=d].iter().map(|c| c * &inv).collect())
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[Scalar], b: &[Scalar]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !is_zero(&y) {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

pub fn derivative(p: &[Scalar]) -> Poly {
    if p.len() <= 1 {
        return vec![Scalar::zero()];
    }
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * &Scalar::from_int(i as i64)).collect())
}

/// The squarefree part `p / gcd(p, p')`, made monic.
pub fn squarefree_part(p: &[Scalar]) -> Poly {
    let g = gcd(p, &derivative(p));
    if degree(&g) == Some(0) {
        return monic(p);
    }
    monic(&divrem(p, &g).0)
}

pub fn to_string(p: &[Scalar]) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        let term = if mono.is_empty() {
            format!("({c})")
        } else if c.is_one() {
            mono
        } else {
            format!("({c})*{mono}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(xs: &[i64]) -> Poly {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn division_identity() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = divrem(&a, &b);
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(is_zero(&r));
        assert_eq!(gcd(&a, &p(&[-1, 0, 1])), p(&[-1, 1]));
    }

    #[test]
    fn squarefree() {
        // (t-1)^2 (t+2)
        let f = mul(&mul(&p(&[-1, 1]), &p(&[-1, 1])), &p(&[2, 1]));
        assert_eq!(squarefree_part(&f), mul(&p(&[-1, 1]), &p(&[2, 1])));
    }
}
