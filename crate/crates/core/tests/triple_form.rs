use lambda3_core::tripleform::{minors_of_basis, triple_form_on_basis};
use lambda3_core::{
    column_triples, determinant_vector, m0, triple_form_value, triple_linking_from_grope,
    vanishes_on_lagrangian, GropeData, ObstructionVector, QmodZ, Subspace,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn grope_strategy() -> impl Strategy<Value = GropeData> {
    (1u64..40, 0usize..6).prop_flat_map(|(t, g)| {
        let list = || prop::collection::vec(-1000i64..1000, g);
        (Just(t), list(), list(), list(), list())
            .prop_map(|(t, cy, dz, cz, dy)| GropeData::new(t, cy, dz, cz, dy).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn stable_under_shifts_by_multiples_of_t(
        data in grope_strategy(),
        which in 0usize..4,
        slot in 0usize..6,
        k in -50i64..50,
    ) {
        prop_assume!(data.genus() > 0);
        let before = triple_linking_from_grope(&data);
        let mut shifted = data.clone();
        let i = slot % data.genus();
        let list = match which {
            0 => &mut shifted.cy,
            1 => &mut shifted.dz,
            2 => &mut shifted.cz,
            _ => &mut shifted.dy,
        };
        list[i] += data.t as i64 * k;
        prop_assert_eq!(triple_linking_from_grope(&shifted), before);
    }

    #[test]
    fn denominator_divides_t(data in grope_strategy()) {
        let q = triple_linking_from_grope(&data);
        prop_assert!((BigInt::from(data.t) % q.denom()) == BigInt::from(0));
    }

    #[test]
    fn swapping_y_and_z_negates(data in grope_strategy()) {
        prop_assert_eq!(triple_linking_from_grope(&data.swapped()), -triple_linking_from_grope(&data));
    }
}

#[test]
fn base_value() {
    let g = GropeData::new(3, vec![1], vec![1], vec![0], vec![0]).unwrap();
    assert_eq!(triple_linking_from_grope(&g), QmodZ::new(1, 3));
    let e1 = ObstructionVector::unit(0);
    assert_eq!(
        triple_form_value(&e1, &m0::diagonal_lagrangian()).unwrap(),
        QmodZ::new(1, 3)
    );
    assert!(!vanishes_on_lagrangian(&e1, &m0::diagonal_lagrangian()).unwrap());
}

#[test]
fn display_pair_vanishes_for_e1() {
    let (a, b) = m0::vanishing_pair();
    let e1 = ObstructionVector::unit(0);
    assert_eq!(determinant_vector(&a).unwrap().entries()[0], 0);
    assert!(vanishes_on_lagrangian(&e1, &a).unwrap());
    assert!(vanishes_on_lagrangian(&e1, &b).unwrap());
    // also on the literal row matrices given for the pair
    assert!(triple_form_on_basis(&e1, &m0::VANISHING_PAIR_ROWS.0).is_zero());
    assert!(triple_form_on_basis(&e1, &m0::VANISHING_PAIR_ROWS.1).is_zero());
}

#[test]
fn zero_vector_vanishes_everywhere() {
    for l in lambda3_core::enumerate_lagrangians(&m0::form()).unwrap() {
        assert!(vanishes_on_lagrangian(&ObstructionVector::zero(), &l).unwrap());
    }
}

/// 3x3 determinant by permutation expansion.
fn leibniz(m: [[i64; 3]; 3]) -> i64 {
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 0, 2], -1),
    ];
    PERMS
        .iter()
        .map(|(p, s)| s * m[0][p[0]] * m[1][p[1]] * m[2][p[2]])
        .sum()
}

#[test]
fn witness_value_on_diagonal_lagrangian() {
    // <d_L, v> for L = [I | I] with minors by permutation expansion.
    let rows = [
        [1i64, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 1, 0],
        [0, 0, 1, 0, 0, 1],
    ];
    let v = m0::WITNESS;
    let dot: i64 = column_triples()
        .iter()
        .zip(v)
        .map(|(c, vi)| vi * leibniz([0, 1, 2].map(|r| c.map(|j| rows[r][j]))))
        .sum();
    let expected = QmodZ::new(dot, 3);
    assert_eq!(
        triple_form_value(&m0::witness(), &m0::diagonal_lagrangian()).unwrap(),
        expected
    );
}

fn invertible_3x3() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(0i64..3))
        .prop_filter("invertible mod 3", |m| leibniz(*m).rem_euclid(3) != 0)
}

fn transform(p: &[[i64; 3]; 3], rows: &[[i64; 6]; 3]) -> [[i64; 6]; 3] {
    std::array::from_fn(|r| std::array::from_fn(|c| (0..3).map(|k| p[r][k] * rows[k][c]).sum()))
}

proptest! {
    #[test]
    fn minors_scale_by_det(lidx in 0usize..80, p in invertible_3x3(), vidx in 0u64..3_486_784_401) {
        let ls = lambda3_core::enumerate_lagrangians(&m0::form()).unwrap();
        let l = &ls[lidx];
        let rows: [[i64; 6]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| l.basis()[r][c] as i64));
        let det_p = leibniz(p).rem_euclid(3) as u8;
        let d = minors_of_basis(&rows);
        let d2 = minors_of_basis(&transform(&p, &rows));
        for (a, b) in d.entries().iter().zip(d2.entries()) {
            prop_assert_eq!((a * det_p) % 3, *b);
        }
        let v = ObstructionVector::from_index(vidx);
        let before = triple_form_on_basis(&v, &rows);
        let after = triple_form_on_basis(&v, &transform(&p, &rows));
        prop_assert_eq!(after.clone(), before.int_scale(det_p));
        prop_assert_eq!(after.is_zero(), before.is_zero());
        prop_assert_eq!(vanishes_on_lagrangian(&v, l).unwrap(), before.is_zero());
    }

    #[test]
    fn odd_row_permutation_negates(lidx in 0usize..80, vidx in 0u64..3_486_784_401, swap in 0usize..3) {
        let ls = lambda3_core::enumerate_lagrangians(&m0::form()).unwrap();
        let l = &ls[lidx];
        let rows: [[i64; 6]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| l.basis()[r][c] as i64));
        let mut swapped = rows;
        swapped.swap(swap, (swap + 1) % 3);
        let v = ObstructionVector::from_index(vidx);
        prop_assert_eq!(triple_form_on_basis(&v, &swapped), -triple_form_on_basis(&v, &rows));
        let mut cycled = rows;
        cycled.rotate_left(1);
        prop_assert_eq!(triple_form_on_basis(&v, &cycled), triple_form_on_basis(&v, &rows));
    }
}

#[test]
fn identity_block_minors() {
    let l = Subspace::span(
        3,
        6,
        &[
            vec![1i64, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
        ],
    )
    .unwrap();
    let d = determinant_vector(&l).unwrap();
    assert_eq!(d.entries().iter().filter(|&&e| e != 0).count(), 1);
    assert_eq!(d.entries()[0], 1);
}
