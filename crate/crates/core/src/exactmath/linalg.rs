//! Dense exact linear algebra on row vectors of [`Scalar`]s.

use super::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Scalar, a: &[Scalar]) -> Vector {
    if c.is_zero() {
        return zero_vec(a.len());
    }
    a.iter().map(|x| if x.is_zero() { Scalar::zero() } else { c * x }).collect()
}

/// `acc += c * v`, skipping zeros.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s = s + x * y;
        }
    }
    s
}

/// Kronecker product `a ⊗ b` with index `i * b.len() + j`.
pub fn kron(a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            if x.is_zero() || y.is_zero() {
                out.push(Scalar::zero());
            } else {
                out.push(x * y);
            }
        }
    }
    out
}

/// Row-major matrix times column vector.
pub fn mat_vec(m: &[Vector], v: &[Scalar]) -> Vector {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Matrix product of row-major matrices.
pub fn mat_mul(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = zero_vec(cols);
            for (k, x) in row.iter().enumerate() {
                axpy(&mut out, x, &b[k]);
            }
            out
        })
        .collect()
}

pub fn transpose(m: &[Vector], ncols: usize) -> Vec<Vector> {
    (0..ncols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vector> {
    (0..n).map(|i| unit_vec(n, i)).collect()
}

/// Reduced row echelon form: leftmost pivots, leading coefficients 1, zero rows dropped.
/// Returns the nonzero rows and their pivot columns.
pub fn rref(rows: Vec<Vector>, ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut rows: Vec<Vector> = rows.into_iter().filter(|r| !is_zero_vec(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            let scaled = scale_vec(&inv, &rows[r]);
            rows[r] = scaled;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = -&row[col];
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Basis of the solution space `{x : row · x = 0 for every row}`.
pub fn kernel(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows.to_vec(), ncols);
    kernel_from_rref(&r, &pivots, ncols)
}

pub fn kernel_from_rref(r: &[Vector], pivots: &[usize], ncols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(ncols);
        v[free] = Scalar::one();
        for (row, &p) in r.iter().zip(pivots) {
            if !row[free].is_zero() {
                v[p] = -&row[free];
            }
        }
        basis.push(v);
    }
    basis
}

/// One solution of `A x = b` where `A` is given row-major, or `None`.
pub fn solve(a: &[Vector], b: &[Scalar], ncols: usize) -> Option<Vector> {
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = zero_vec(ncols);
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vec(n, i));
            r
        })
        .collect();
    let (r, pivots) = rref(aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coordinates of `v` with respect to linearly independent `basis`, if `v` lies in their span.
pub fn coordinates(basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
    let n = v.len();
    let cols = transpose(basis, n);
    solve(&cols, v, basis.len())
}
