#![allow(dead_code)]

pub mod checks;

use hopfkit::coalgebra::{AlgebraSC, Coalgebra};
use hopfkit::exactmath::linalg::{self, Vector};
use hopfkit::hopf::HopfAlgebra;
use hopfkit::{Result, Scalar};

/// The Drinfeld double `D(H) = (H*)^cop ⋈ H` with basis `δ_i ⊗ a_j` at index `i*n + j`.
pub fn drinfeld_double(h: &HopfAlgebra) -> Result<HopfAlgebra> {
    let n = h.dim();
    let d = n * n;
    let c = h.coalgebra.comul();
    let m = h.algebra.mul();
    let s = h.s()?;
    let s_inv = linalg::inverse(&s).expect("invertible antipode");
    let basis = linalg::identity(n);
    let zero3 = || vec![vec![vec![Scalar::zero(); d]; d]; d];

    let mut comul = zero3();
    for i in 0..n {
        for j in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let x = &m[u][v][i];
                    if x.is_zero() {
                        continue;
                    }
                    for p in 0..n {
                        for q in 0..n {
                            let y = &c[j][p][q];
                            if !y.is_zero() {
                                // cop on the dual factor
                                let e = &mut comul[i * n + j][v * n + p][u * n + q];
                                *e = &*e + &(x * y);
                            }
                        }
                    }
                }
            }
        }
    }
    let counit = linalg::kron(h.unit(), h.coalgebra.counit());

    // Δ²(a_j) = Σ c2[p][q][r] a_p ⊗ a_q ⊗ a_r
    let delta2 = |j: usize| {
        let mut out = Vec::new();
        for (p, row) in c[j].iter().enumerate() {
            for (t, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (q, row2) in c[t].iter().enumerate() {
                    for (r, y) in row2.iter().enumerate() {
                        if !y.is_zero() {
                            out.push((p, q, r, x * y));
                        }
                    }
                }
            }
        }
        out
    };
    let sinv_b: Vec<Vector> = basis.iter().map(|b| linalg::mat_vec(&s_inv, b)).collect();
    let dual_mul = |a: &Vector, b: &Vector| {
        // (φψ)(x) = φ(x_1) ψ(x_2)
        (0..n)
            .map(|k| {
                let mut acc = Scalar::zero();
                for (p, row) in c[k].iter().enumerate() {
                    for (q, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            acc = acc + &(&(x * &a[p]) * &b[q]);
                        }
                    }
                }
                acc
            })
            .collect::<Vector>()
    };
    let mut mul = zero3();
    for j in 0..n {
        let d2 = delta2(j);
        for k in 0..n {
            for (p, q, r, coef) in &d2 {
                // g(x) = δ_k(S⁻¹(a_r) x a_p)
                let g: Vector = (0..n)
                    .map(|t| h.mul(&h.mul(&sinv_b[*r], &basis[t]), &basis[*p])[k].clone())
                    .collect();
                for i in 0..n {
                    let f = dual_mul(&basis[i], &g);
                    for l in 0..n {
                        let right = h.mul(&basis[*q], &basis[l]);
                        for (u, fu) in f.iter().enumerate() {
                            if fu.is_zero() {
                                continue;
                            }
                            for (w, rw) in right.iter().enumerate() {
                                if !rw.is_zero() {
                                    let e = &mut mul[i * n + j][k * n + l][u * n + w];
                                    *e = &*e + &(&(coef * fu) * rw);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let unit = linalg::kron(h.coalgebra.counit(), h.unit());
    let names = (0..d).map(|x| format!("d{}", x)).collect();
    let conductor = h.conductor();
    HopfAlgebra::checked(Coalgebra::new(names, comul, counit, conductor)?, AlgebraSC::new(mul, unit, conductor)?)
}

/// Image of `X` spanned by the products in the synthetic fixtures below.
#[derive(Clone, Debug)]
pub enum SwapCase {
    /// `E` is a 4-dimensional matrix coalgebra.
    Full,
    /// `E` spans a copy of `C3`.
    C3,
    /// `E` spans a copy of `C2(a)`.
    C2(Scalar),
    /// `E = F = k·1`.
    Unit,
}

/// A partial Hopf structure on `k·1 ⊕ C ⊕ D ⊕ X` with `C ≅ D ≅ M^c(2)`, `S(e_ij) = f_ji`,
/// `S(f_ji) = (−1)^{i+j} e_ij`, and products `e_ij f_kl`, `f_kl e_ij` prescribed so that the
/// spans `E` and `F` land in `X`. Only the data used by the construction is meaningful.
/// A nonzero seed transports everything along a random change of basis.
pub fn synthetic_swap(case: &SwapCase, seed: u64, conductor: u32) -> HopfAlgebra {
    let xdim = match case {
        SwapCase::Full => 4,
        SwapCase::C3 => 3,
        SwapCase::C2(_) => 2,
        SwapCase::Unit => 0,
    };
    let n = 9 + xdim;
    let e = |i: usize, j: usize| 1 + 2 * i + j;
    let f = |i: usize, j: usize| 5 + 2 * i + j;
    let x = |k: usize| 9 + k;
    let one = Scalar::one;
    let mut comul = vec![vec![vec![Scalar::zero(); n]; n]; n];
    let mut counit = vec![Scalar::zero(); n];
    comul[0][0][0] = one();
    counit[0] = one();
    for i in 0..2 {
        for j in 0..2 {
            for r in 0..2 {
                comul[e(i, j)][e(i, r)][e(r, j)] = one();
                comul[f(i, j)][f(i, r)][f(r, j)] = one();
            }
        }
        counit[e(i, i)] = one();
        counit[f(i, i)] = one();
    }
    let mut s = vec![vec![Scalar::zero(); n]; n];
    let mut set_s = |from: usize, to: usize, c: Scalar| s[to][from] = c;
    set_s(0, 0, one());
    for i in 0..2 {
        for j in 0..2 {
            set_s(e(i, j), f(j, i), one());
            let sign = if (i + j) % 2 == 0 { one() } else { -one() };
            set_s(f(j, i), e(i, j), sign);
        }
    }
    // targets of E_11, E_12, E_21, E_22 as vectors
    let unit = linalg::unit_vec(n, 0);
    let zero = linalg::zero_vec(n);
    let targets: [Vector; 4] = match case {
        SwapCase::Full => {
            for i in 0..2 {
                for j in 0..2 {
                    for r in 0..2 {
                        comul[x(2 * i + j)][x(2 * i + r)][x(2 * r + j)] = one();
                    }
                }
                counit[x(3 * i)] = one();
            }
            set_s(x(0), x(3), one());
            set_s(x(3), x(0), one());
            set_s(x(1), x(1), -one());
            set_s(x(2), x(2), -one());
            [0, 1, 2, 3].map(|k| linalg::unit_vec(n, x(k)))
        }
        SwapCase::C3 => {
            // g, h, u
            comul[x(0)][x(0)][x(0)] = one();
            comul[x(1)][x(1)][x(1)] = one();
            comul[x(2)][x(0)][x(2)] = one();
            comul[x(2)][x(2)][x(1)] = one();
            counit[x(0)] = one();
            counit[x(1)] = one();
            set_s(x(0), x(1), one());
            set_s(x(1), x(0), one());
            set_s(x(2), x(2), -one());
            [linalg::unit_vec(n, x(0)), linalg::unit_vec(n, x(2)), zero.clone(), linalg::unit_vec(n, x(1))]
        }
        SwapCase::C2(a) => {
            // x, y
            comul[x(0)][x(0)][x(0)] = one();
            comul[x(0)][x(1)][x(1)] = a.clone();
            comul[x(1)][x(0)][x(1)] = one();
            comul[x(1)][x(1)][x(0)] = one();
            counit[x(0)] = one();
            set_s(x(0), x(0), one());
            set_s(x(1), x(1), -one());
            let y = linalg::unit_vec(n, x(1));
            [linalg::unit_vec(n, x(0)), y.clone(), linalg::scale_vec(a, &y), linalg::unit_vec(n, x(0))]
        }
        SwapCase::Unit => [unit.clone(), zero.clone(), zero.clone(), unit.clone()],
    };
    let mut mul = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for b in 0..n {
        mul[0][b][b] = one();
        mul[b][0][b] = one();
    }
    let mut put = |a: usize, b: usize, v: &Vector| {
        for (k, c) in v.iter().enumerate() {
            mul[a][b][k] = c.clone();
        }
    };
    let sigma = |i: usize| 1 - i;
    match case {
        SwapCase::Unit => {
            for a in 0..2 {
                for b in 0..2 {
                    put(e(a, a), f(b, b), &unit);
                    put(f(b, b), e(a, a), &unit);
                }
            }
        }
        _ => {
            for i in 0..2 {
                for j in 0..2 {
                    let t = &targets[2 * i + j];
                    // E_ij = e_ij f_σiσj and F_ij = f_ij e_σiσj
                    put(e(i, j), f(sigma(i), sigma(j)), t);
                    put(f(i, j), e(sigma(i), sigma(j)), t);
                }
            }
        }
    }
    let names = (0..n).map(|k| format!("b{k}")).collect();
    let coalgebra = Coalgebra::new(names, comul, counit, conductor).unwrap();
    let algebra = AlgebraSC::new(mul, unit, conductor).unwrap();
    let h = HopfAlgebra::from_parts_unchecked(coalgebra, algebra, s);
    if seed == 0 {
        h
    } else {
        transport(&h, &sparse_invertible(n, seed))
    }
}

/// A random invertible matrix with small integer entries.
pub fn random_invertible(n: usize, seed: u64) -> Vec<Vector> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: Vec<Vector> =
            (0..n).map(|_| (0..n).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect()).collect();
        if linalg::inverse(&m).is_some() {
            return m;
        }
    }
}

/// A random permutation matrix scaled by `±1, ±2` and composed with `n` elementary
/// row operations. Entries stay small so exact arithmetic stays cheap.
pub fn sparse_invertible(n: usize, seed: u64) -> Vec<Vector> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut m = vec![linalg::zero_vec(n); n];
    for (i, &j) in perm.iter().enumerate() {
        m[i][j] = Scalar::from_int([-2, -1, 1, 2][rng.gen_range(0..4)]);
    }
    for _ in 0..n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            let c = Scalar::from_int(rng.gen_range(-2..=2));
            let row = m[b].clone();
            linalg::axpy(&mut m[a], &c, &row);
        }
    }
    m
}

/// The same structure in the basis given by the columns of `p`.
pub fn transport(h: &HopfAlgebra, p: &[Vector]) -> HopfAlgebra {
    let n = h.dim();
    let q = linalg::inverse(p).expect("invertible");
    let col = |i: usize| -> Vector { (0..n).map(|a| p[a][i].clone()).collect() };
    let cols: Vec<Vector> = (0..n).map(col).collect();
    let in_new = |v: &Vector| linalg::mat_vec(&q, v);
    let pair_in_new = |t: &Vector| {
        // t as an n×n matrix T in the old basis; new coordinates Q T Qᵀ
        let rows: Vec<Vector> = (0..n).map(|j| t[j * n..(j + 1) * n].to_vec()).collect();
        let qt = linalg::mat_mul(&q, &rows);
        linalg::mat_mul(&qt, &linalg::transpose(&q, n))
    };
    let mut comul = Vec::with_capacity(n);
    let mut mul = Vec::with_capacity(n);
    for i in 0..n {
        comul.push(pair_in_new(&h.coalgebra.delta(&cols[i])));
        mul.push((0..n).map(|j| in_new(&h.mul(&cols[i], &cols[j]))).collect::<Vec<_>>());
    }
    let counit = cols.iter().map(|c| h.coalgebra.epsilon(c)).collect();
    let s = h.s().unwrap();
    let s_new = linalg::mat_mul(&linalg::mat_mul(&q, &s), p);
    let names = h.basis_names().to_vec();
    let coalgebra = Coalgebra::new(names, comul, counit, h.conductor()).unwrap();
    let algebra = AlgebraSC::new(mul, in_new(h.unit()), h.conductor()).unwrap();
    HopfAlgebra::from_parts_unchecked(coalgebra, algebra, s_new)
}

/// Runs the stable-coalgebra search on the first pair of 4-dimensional components swapped by `S`.
pub fn search_swapped_pair(h: &HopfAlgebra) -> Result<hopfkit::hopf::StableOutcome> {
    use hopfkit::coalgebra::coradical;
    use hopfkit::Subspace;
    let n = h.dim();
    let cor = coradical(&h.coalgebra)?;
    let s = h.s()?;
    let four: Vec<_> = cor.components.iter().filter(|c| c.d == 2).collect();
    for c in &four {
        let image = Subspace::new(n, c.subcoalgebra.basis().iter().map(|v| linalg::mat_vec(&s, v)).collect());
        if image == c.subcoalgebra {
            continue;
        }
        if let Some(d) = four.iter().find(|d| d.subcoalgebra == image) {
            return hopfkit::hopf::stable_coalgebra_search(h, c, d);
        }
    }
    Err(hopfkit::Error::Precondition("no swapped pair of components".into()))
}

/// A coalgebra in the basis given by the columns of `p`; returns it with the inverse of `p`.
pub fn transport_coalgebra(c: &Coalgebra, p: &[Vector]) -> (Coalgebra, Vec<Vector>) {
    let n = c.dim();
    let q = linalg::inverse(p).expect("invertible");
    let cols: Vec<Vector> = (0..n).map(|i| (0..n).map(|a| p[a][i].clone()).collect()).collect();
    let comul = cols
        .iter()
        .map(|col| {
            let t = c.delta(col);
            let rows: Vec<Vector> = (0..n).map(|j| t[j * n..(j + 1) * n].to_vec()).collect();
            linalg::mat_mul(&linalg::mat_mul(&q, &rows), &linalg::transpose(&q, n))
        })
        .collect();
    let counit = cols.iter().map(|col| c.epsilon(col)).collect();
    let out = Coalgebra::new(c.basis_names().to_vec(), comul, counit, c.conductor()).unwrap();
    (out, q)
}

/// Normal forms a matrix-like span can be drawn from.
#[derive(Clone, Debug)]
pub enum NormalForm {
    Full4,
    C3,
    C2(Scalar),
    Point1,
}

/// The 20 squarefree integers of smallest absolute value, one per square class of `Q*`.
pub const SQUARE_CLASSES: [i64; 20] = [1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10, 11, -11, 13, -13, 14, -14];

/// A matrix-like span of the normal form `nf`, conjugated by a random `T ∈ GL_2(Q)`
/// (`e ↦ T e T⁻¹`) and placed in `nf ⊕ k` under a random change of basis.
pub fn relabeled_span(nf: &NormalForm, seed: u64) -> hopfkit::matrixlike::MatrixLikeSpan {
    use hopfkit::zoo;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (base, e): (Coalgebra, [Vector; 4]) = match nf {
        NormalForm::Full4 => (zoo::matrix_coalgebra(2), [0, 1, 2, 3].map(|i| linalg::unit_vec(4, i))),
        NormalForm::C3 => {
            let u = |i| linalg::unit_vec(3, i);
            (zoo::c3(), [u(0), u(2), linalg::zero_vec(3), u(1)])
        }
        NormalForm::C2(a) => {
            let u = |i| linalg::unit_vec(2, i);
            (zoo::c2(a), [u(0), u(1), linalg::scale_vec(a, &u(1)), u(0)])
        }
        NormalForm::Point1 => {
            let x = linalg::unit_vec(1, 0);
            (zoo::matrix_coalgebra(1), [x.clone(), linalg::zero_vec(1), linalg::zero_vec(1), x])
        }
    };
    let ambient = zoo::direct_sum(&base, &zoo::matrix_coalgebra(1)).unwrap();
    let n = ambient.dim();
    let pad = |v: &Vector| {
        let mut w = v.clone();
        w.push(Scalar::zero());
        w
    };
    let t = loop {
        let t: Vec<Vector> =
            (0..2).map(|_| (0..2).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect()).collect();
        if let Some(ti) = linalg::inverse(&t) {
            break (t, ti);
        }
    };
    let conj: Vec<Vector> = (0..4)
        .map(|k| {
            let (i, j) = (k / 2, k % 2);
            let mut acc = linalg::zero_vec(n);
            for p in 0..2 {
                for r in 0..2 {
                    let c = &t.0[i][p] * &t.1[r][j];
                    linalg::axpy(&mut acc, &c, &pad(&e[2 * p + r]));
                }
            }
            acc
        })
        .collect();
    let p = random_invertible(n, rng.gen());
    let (moved, q) = transport_coalgebra(&ambient, &p);
    let e: Vec<Vector> = conj.iter().map(|v| linalg::mat_vec(&q, v)).collect();
    hopfkit::matrixlike::MatrixLikeSpan::new(moved, e.try_into().unwrap()).unwrap()
}

/// Checks that `class.witness` maps the normal form of `class.tag` injectively and
/// comultiplicatively into `ambient`.
pub fn witness_is_embedding(ambient: &Coalgebra, class: &hopfkit::matrixlike::MatrixLikeClass) -> bool {
    use hopfkit::matrixlike::MatrixLikeTag;
    use hopfkit::zoo;
    let nf = match &class.tag {
        MatrixLikeTag::Full4 => zoo::matrix_coalgebra(2),
        MatrixLikeTag::C3 => zoo::c3(),
        MatrixLikeTag::C2(a) => zoo::c2(a),
        MatrixLikeTag::Point1 => zoo::matrix_coalgebra(1),
    };
    let w = &class.witness;
    let n = ambient.dim();
    if w.len() != nf.dim() || linalg::rank(w, n) != w.len() {
        return false;
    }
    (0..nf.dim()).all(|i| {
        let mut want = linalg::zero_vec(n * n);
        for j in 0..nf.dim() {
            for k in 0..nf.dim() {
                let c = &nf.comul()[i][j][k];
                if !c.is_zero() {
                    linalg::axpy(&mut want, c, &linalg::kron(&w[j], &w[k]));
                }
            }
        }
        ambient.delta(&w[i]) == want && ambient.epsilon(&w[i]) == nf.counit()[i]
    })
}

/// Brute-force search for a coalgebra isomorphism `C2(b) → C2(a)` over `Q`. The counit
/// forces `x ↦ x + q y`, `y ↦ s y`; `q` and `s` range over `m/n` with `|m|, n ≤ 10`.
pub fn c2_iso_brute_force(a: i64, b: i64) -> Option<(num_rational::Rational64, num_rational::Rational64)> {
    use num_rational::Rational64 as R;
    let consts = |t: i64| {
        let mut c = [[[R::from_integer(0); 2]; 2]; 2];
        c[0][0][0] = R::from_integer(1);
        c[0][1][1] = R::from_integer(t);
        c[1][0][1] = R::from_integer(1);
        c[1][1][0] = R::from_integer(1);
        c
    };
    let (ca, cb) = (consts(a), consts(b));
    let mut grid: Vec<R> = vec![R::from_integer(0)];
    for m in 1..=10 {
        for n in 1..=10 {
            grid.push(R::new(m, n));
            grid.push(R::new(-m, n));
        }
    }
    grid.sort();
    grid.dedup();
    for &q in &grid {
        for &s in &grid {
            if s == R::from_integer(0) {
                continue;
            }
            // column t holds the image of the t-th basis element
            let m = [[R::from_integer(1), R::from_integer(0)], [q, s]];
            let ok = (0..2).all(|t| {
                (0..2).all(|j| {
                    (0..2).all(|k| {
                        let lhs: R = (0..2).map(|i| m[i][t] * ca[i][j][k]).sum();
                        let mut rhs = R::from_integer(0);
                        for u in 0..2 {
                            for v in 0..2 {
                                rhs += cb[t][u][v] * m[j][u] * m[k][v];
                            }
                        }
                        lhs == rhs
                    })
                })
            });
            if ok {
                return Some((q, s));
            }
        }
    }
    None
}

/// Hopf algebras from the zoo over fields where their coradicals split.
pub fn hopf_zoo() -> Vec<(&'static str, HopfAlgebra)> {
    use hopfkit::zoo::{self, Group};
    let sweedler = zoo::taft(2, 1).unwrap();
    vec![
        ("k[C3]", zoo::group_algebra(Group::Cyclic(3), 1).unwrap()),
        ("k[C4]", zoo::group_algebra(Group::Cyclic(4), 1).unwrap()),
        ("k[D3]", zoo::group_algebra(Group::Dihedral(3), 1).unwrap()),
        ("k[D7]", zoo::group_algebra(Group::Dihedral(7), 1).unwrap()),
        ("k[C4]*", zoo::dual_group_algebra(Group::Cyclic(4), 4).unwrap()),
        ("k[D3]*", zoo::dual_group_algebra(Group::Dihedral(3), 3).unwrap()),
        ("k[D7]*", zoo::dual_group_algebra(Group::Dihedral(7), 7).unwrap()),
        ("Sweedler", sweedler.clone()),
        ("Taft(3)", zoo::taft(3, 3).unwrap()),
        ("Taft(4)", zoo::taft(4, 4).unwrap()),
        ("pointed8", zoo::pointed8(4).unwrap()),
        ("pointed8*", zoo::pointed8(4).unwrap().dualize()),
        ("D(Sweedler)*", drinfeld_double(&sweedler).unwrap().dualize()),
        ("Sweedler ⊗ k[C2]", zoo::tensor_product(&sweedler, &zoo::group_algebra(Group::Cyclic(2), 1).unwrap()).unwrap()),
        (
            "pointed8* ⊗ k[C3]",
            zoo::tensor_product(&zoo::pointed8(4).unwrap().dualize(), &zoo::group_algebra(Group::Cyclic(3), 4).unwrap())
                .unwrap(),
        ),
    ]
}
