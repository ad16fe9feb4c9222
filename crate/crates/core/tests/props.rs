//! Property tests for the algebraic invariants: round trips, involutions,
//! associativity, anti-homomorphisms, and verdict preservation.

mod common;

use proptest::prelude::*;

use gmat_core::search::normalize_matrix;
use gmat_core::*;

fn small_groups() -> Vec<Group> {
    vec![
        Group::cyclic(2),
        Group::cyclic(5),
        Group::cyclic(13),
        Group::klein(),
        Group::product(&[2, 3]),
        Group::s3(S3Presentation::A2B3),
        Group::s3(S3Presentation::A3B2),
        Group::q8(),
        Group::roots(4),
        Group::roots(6),
        Group::roots(12),
    ]
}

fn arb_group() -> impl Strategy<Value = Group> {
    (0..small_groups().len()).prop_map(|i| small_groups()[i].clone())
}

fn arb_matrix() -> impl Strategy<Value = GMatrix> {
    (arb_group(), 1usize..5, 1usize..6).prop_flat_map(|(g, rows, cols)| {
        let order = g.order();
        proptest::collection::vec(proptest::collection::vec(0u32..(order + 2), cols), rows)
            .prop_map(move |grid| {
                let entries = grid
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|x| {
                                if x == order {
                                    Entry::Zero
                                } else if x == order + 1 {
                                    Entry::Wild
                                } else {
                                    Entry::Elem(x)
                                }
                            })
                            .collect()
                    })
                    .collect();
                GMatrix::from_rows(&g, entries).expect("consistent shape")
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn quaternion_conjugation_antihomomorphism(
        a in proptest::array::uniform4(-50i64..50),
        b in proptest::array::uniform4(-50i64..50),
    ) {
        let x = Quaternion::new(a[0], a[1], a[2], a[3]);
        let y = Quaternion::new(b[0], b[1], b[2], b[3]);
        prop_assert_eq!(x.mul(&y).conj(), y.conj().mul(&x.conj()));
    }
}

proptest! {
    #[test]
    fn parse_serialize_round_trip(m in arb_matrix()) {
        let text = m.serialize();
        let back = GMatrix::parse(&text).expect("own serialization parses");
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn ring_convolution_is_associative(
        gi in 0usize..6,
        xs in proptest::collection::vec(0i64..=5, 13),
        ys in proptest::collection::vec(0i64..=5, 13),
        zs in proptest::collection::vec(0i64..=5, 13),
    ) {
        let groups = [
            Group::cyclic(13),
            Group::cyclic(7),
            Group::klein(),
            Group::s3(S3Presentation::A2B3),
            Group::q8(),
            Group::roots(6),
        ];
        let g = &groups[gi];
        let n = g.order() as usize;
        let x = GroupRingVector::from_counts(g, xs[..n].to_vec());
        let y = GroupRingVector::from_counts(g, ys[..n].to_vec());
        let z = GroupRingVector::from_counts(g, zs[..n].to_vec());
        let left = x.convolve(&y, false).unwrap().convolve(&z, false).unwrap();
        let right = x.convolve(&y.convolve(&z, false).unwrap(), false).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn delta_identity_is_a_convolution_unit(
        gi in 0usize..6,
        xs in proptest::collection::vec(-5i64..=5, 13),
    ) {
        let groups = [
            Group::cyclic(13),
            Group::cyclic(4),
            Group::klein(),
            Group::s3(S3Presentation::A3B2),
            Group::q8(),
            Group::roots(3),
        ];
        let g = &groups[gi];
        let n = g.order() as usize;
        let x = GroupRingVector::from_counts(g, xs[..n].to_vec());
        let e = GroupRingVector::delta(g, 0);
        prop_assert_eq!(x.convolve(&e, false).unwrap(), x.clone());
        prop_assert_eq!(e.convolve(&x, false).unwrap(), x);
    }

    #[test]
    fn adjoint_is_an_involution(m in arb_matrix()) {
        use gmat_core::group::GroupKind;
        let mut kinds = vec![AdjointKind::Plain, AdjointKind::GroupInverse];
        match m.group().kind() {
            GroupKind::Roots(_) | GroupKind::Cyclic(_) => kinds.push(AdjointKind::ComplexConjugate),
            GroupKind::Q8 => kinds.push(AdjointKind::QuaternionConjugate),
            _ => {}
        }
        for kind in kinds {
            let twice = m.adjoint(kind).unwrap().adjoint(kind).unwrap();
            prop_assert_eq!(twice, m.clone());
        }
    }

    #[test]
    fn normalization_preserves_balance_verdict(
        gi in 0usize..3,
        seed in proptest::collection::vec(0u32..6, 36),
    ) {
        let groups = [Group::cyclic(2), Group::cyclic(3), Group::cyclic(6)];
        let g = &groups[gi];
        let v = 6;
        let rows: Vec<Vec<Entry>> = (0..v)
            .map(|i| (0..v).map(|j| Entry::Elem(seed[i * v + j] % g.order())).collect())
            .collect();
        let m = GMatrix::from_rows(g, rows).unwrap();
        let before = verify_balance(&m, Convention::XY).unwrap().passed();
        let after = verify_balance(&normalize_matrix(&m).unwrap(), Convention::XY)
            .unwrap()
            .passed();
        prop_assert_eq!(before, after);
    }
}

#[test]
fn butson_fixtures_agree_with_float_gram() {
    for name in [
        "gh7-z6-a",
        "gh7-z6-b",
        "butson3",
        "gh10-z6",
        "bh2",
        "lexicon-h",
    ] {
        let m = catalog::get(name).unwrap().matrix().unwrap();
        let q = m.group().order();
        let exact = verify_butson(&m, q).unwrap().passed();
        let float_off = common::float_gram_max_offdiag(&m, q);
        assert_eq!(
            exact,
            float_off < 1e-9,
            "{}: float offdiag {}",
            name,
            float_off
        );
    }
}

#[test]
fn circulant_rows_are_exact_shifts() {
    // M[i][j] = M[0][(j - i) mod n] for a sampled fixture
    let m = catalog::get("strange13").unwrap().matrix().unwrap();
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            assert_eq!(m.entry(i, j), m.entry(0, (n + j - i) % n));
        }
    }
}
