mod common;

use common::{witness_is_embedding, NormalForm, SQUARE_CLASSES};
use hopfkit::coalgebra::grouplikes;
use hopfkit::exactmath::linalg::{kron, scale_vec, unit_vec, zero_vec};
use hopfkit::matrixlike::*;
use hopfkit::{zoo, Scalar};
use proptest::prelude::*;

fn int(v: i64) -> Scalar {
    Scalar::from_int(v)
}

#[test]
fn standard_matrix_basis_is_valid() {
    let c = zoo::matrix_coalgebra(2);
    let s = MatrixLikeSpan::new(c, [0, 1, 2, 3].map(|i| unit_vec(4, i))).unwrap();
    assert!(validate_span(&s).is_ok());
    assert_eq!(classify(&s).unwrap().tag, MatrixLikeTag::Full4);
}

#[test]
fn c3_span_g_u_0_h() {
    let u = |i| unit_vec(3, i);
    let s = MatrixLikeSpan::new(zoo::c3(), [u(0), u(2), zero_vec(3), u(1)]).unwrap();
    assert!(validate_span(&s).is_ok());
    let class = classify(&s).unwrap();
    assert_eq!(class.tag, MatrixLikeTag::C3);
    assert!(witness_is_embedding(&s.ambient, &class));
}

#[test]
fn random_vectors_violate() {
    let c = zoo::matrix_coalgebra(2);
    let v = vec![int(1), int(2), int(0), int(-1)];
    let s = MatrixLikeSpan::new(c, [v.clone(), v.clone(), v.clone(), v]).unwrap();
    let bad = validate_span(&s).unwrap_err();
    assert_eq!(bad, vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
    assert!(matches!(classify(&s), Err(hopfkit::Error::Precondition(_))));
}

#[test]
fn c2_of_two_from_x_y_2y_x() {
    let c = zoo::c2(&int(2));
    let y = unit_vec(2, 1);
    let s = MatrixLikeSpan::new(c, [unit_vec(2, 0), y.clone(), scale_vec(&int(2), &y), unit_vec(2, 0)]).unwrap();
    let class = classify(&s).unwrap();
    assert_eq!(class.tag, MatrixLikeTag::C2(int(2)));
    assert_eq!(class.tag.to_string(), "C2(2)");
}

#[test]
fn three_dimensional_case_one_with_b_equal_one() {
    // (g, u, 0, h) conjugated by [[1, 0], [1, 1]]
    let c3 = zoo::c3();
    let (g, h, u) = (unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2));
    let t = [[int(1), int(0)], [int(1), int(1)]];
    let ti = [[int(1), int(0)], [int(-1), int(1)]];
    let base = [g, u, zero_vec(3), h];
    let e: [Vec<Scalar>; 4] = [0, 1, 2, 3].map(|k| {
        let (i, j) = (k / 2, k % 2);
        let mut acc = zero_vec(3);
        for p in 0..2 {
            for r in 0..2 {
                hopfkit::exactmath::linalg::axpy(&mut acc, &(&t[i][p] * &ti[r][j]), &base[2 * p + r]);
            }
        }
        acc
    });
    let s = MatrixLikeSpan::new(c3, e.clone()).unwrap();
    assert!(validate_span(&s).is_ok());
    let rows = vec![e[0].clone(), e[1].clone(), e[2].clone()];
    let coords = hopfkit::exactmath::linalg::coordinates(&rows, &e[3]).unwrap();
    let b = coords[1].clone();
    assert_eq!(coords, vec![int(1), b.clone(), -b.inv().unwrap()]);
    let class = classify(&s).unwrap();
    assert_eq!(class.tag, MatrixLikeTag::C3);
    for w in &class.witness[..2] {
        assert_eq!(s.ambient.delta(w), kron(w, w));
    }
}

#[test]
fn point_from_single_grouplike() {
    let c = zoo::matrix_coalgebra(1);
    let x = unit_vec(1, 0);
    let s = MatrixLikeSpan::new(c, [x.clone(), zero_vec(1), zero_vec(1), x.clone()]).unwrap();
    let class = classify(&s).unwrap();
    assert_eq!(class.tag, MatrixLikeTag::Point1);
    assert_eq!(class.tag.to_string(), "k");
    assert_eq!(class.witness, vec![x]);
}

#[test]
fn c2_iso_examples() {
    match c2_iso(&int(1), &int(4), 1).unwrap() {
        C2Iso::Iso { lambda } => assert_eq!(&lambda * &lambda, Scalar::from_frac(1, 4)),
        C2Iso::NotIso => panic!("1 and 4 are in the same square class"),
    }
    assert_eq!(c2_iso(&int(1), &int(2), 1).unwrap(), C2Iso::NotIso);
    assert_eq!(c2_iso(&int(7), &int(7), 1).unwrap(), C2Iso::Iso { lambda: Scalar::one() });
    assert_eq!(c2_iso(&int(0), &int(0), 1).unwrap(), C2Iso::Iso { lambda: Scalar::one() });
    assert_eq!(c2_iso(&int(0), &int(1), 1).unwrap(), C2Iso::NotIso);
    assert!(matches!(c2_iso(&int(1), &int(2), 8).unwrap(), C2Iso::Iso { .. }));
}

#[test]
fn c2_grouplike_formulas() {
    let g = c2_grouplikes(&int(9), 1).unwrap();
    assert_eq!(g.grouplikes, vec![vec![int(1), int(3)], vec![int(1), int(-3)]]);
    assert!(g.primitive.is_none());
    assert!(c2_grouplikes(&int(3), 1).unwrap().grouplikes.is_empty());
    let g = c2_grouplikes(&int(0), 1).unwrap();
    assert_eq!(g.grouplikes, vec![unit_vec(2, 0)]);
    assert_eq!(g.primitive, Some(unit_vec(2, 1)));
}

#[test]
fn c2_grouplikes_agree_with_coalgebra_module() {
    for a in -12..=12 {
        for conductor in [1, 4, 8] {
            let a = int(a);
            let mine = c2_grouplikes(&a, conductor).unwrap().grouplikes;
            let c = zoo::c2(&a).with_conductor(conductor);
            let mut theirs = grouplikes(&c).unwrap();
            let mut mine_sorted = mine.clone();
            theirs.sort();
            mine_sorted.sort();
            assert_eq!(mine_sorted, theirs, "a = {a}, conductor {conductor}");
        }
    }
}

#[test]
fn c3_grouplikes_agree_with_coalgebra_module() {
    let mut g = grouplikes(&zoo::c3()).unwrap();
    g.sort();
    assert_eq!(g, vec![unit_vec(3, 1), unit_vec(3, 0)]);
}

#[test]
fn square_class_labels() {
    assert_eq!(square_class_label(&Scalar::from_frac(8, 9), 1).unwrap(), "2");
    assert_eq!(square_class_label(&Scalar::from_frac(-3, 12), 1).unwrap(), "-1");
    assert_eq!(square_class_label(&Scalar::from_frac(5, 6), 1).unwrap(), "30");
    assert_eq!(square_class_label(&int(49), 1).unwrap(), "1");
    assert_eq!(square_class_label(&int(0), 1).unwrap(), "0");
}

#[test]
fn c2_iso_agrees_with_brute_force() {
    for a in (-10..=10).filter(|&a| a != 0) {
        for b in (-10..=10).filter(|&b| b != 0) {
            let brute = common::c2_iso_brute_force(a, b);
            match c2_iso(&int(a), &int(b), 1).unwrap() {
                C2Iso::Iso { lambda } => {
                    let (_, s) = brute.unwrap_or_else(|| panic!("brute force found no map for ({a}, {b})"));
                    assert_eq!(&lambda * &lambda, Scalar::from_frac(a, b));
                    assert_eq!(Scalar::from_frac(*s.numer(), *s.denom()).pow(2), Scalar::from_frac(a, b));
                }
                C2Iso::NotIso => assert!(brute.is_none(), "({a}, {b})"),
            }
        }
    }
}

fn check_relabeled(nf: &NormalForm, seed: u64) {
    common::checks::relabeled_classification(nf, seed).unwrap_or_else(|m| panic!("{m}"));
}

fn c2_form() -> impl Strategy<Value = NormalForm> {
    (0..SQUARE_CLASSES.len(), 1i64..6, 1i64..6).prop_map(|(i, m, n)| {
        NormalForm::C2(&Scalar::from_frac(SQUARE_CLASSES[i], 1) * &Scalar::from_frac(m * m, n * n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn relabeled_full4(seed in any::<u64>()) {
        check_relabeled(&NormalForm::Full4, seed);
    }

    #[test]
    fn relabeled_c3(seed in any::<u64>()) {
        check_relabeled(&NormalForm::C3, seed);
    }

    #[test]
    fn relabeled_c2(nf in c2_form(), seed in any::<u64>()) {
        check_relabeled(&nf, seed);
    }

    #[test]
    fn relabeled_point(seed in any::<u64>()) {
        check_relabeled(&NormalForm::Point1, seed);
    }
}
