use lambda3_core::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

fn check_snf(m: &IntMatrix) -> Result<(), TestCaseError> {
    let s = smith_normal_form(m);
    prop_assert_eq!(&(&s.u * m) * &s.v, s.d.clone());
    prop_assert!(s.u.determinant().unwrap().abs().is_one());
    prop_assert!(s.v.determinant().unwrap().abs().is_one());
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                prop_assert!(s.d[(i, j)].is_zero());
            }
        }
    }
    let diag = s.diagonal();
    prop_assert!(diag.iter().all(|d| !d.is_negative()));
    for w in diag.windows(2) {
        if w[0].is_zero() {
            prop_assert!(w[1].is_zero(), "zeros must come last: {:?}", diag);
        } else {
            prop_assert!(w[1].is_multiple_of(&w[0]), "divisibility: {:?}", diag);
        }
    }
    if m.is_square() {
        let det = m.determinant().unwrap();
        if !det.is_zero() {
            let prod: BigInt = diag.iter().product();
            prop_assert_eq!(prod, det.abs());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_identities_up_to_6x6(m in matrix(6, 9)) {
        check_snf(&m)?;
    }

    #[test]
    fn smith_identities_square_4x4(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 4), 4)) {
        check_snf(&IntMatrix::from_rows(&rows))?;
    }
}

#[test]
fn large_entries_stay_exact() {
    let big = BigInt::from(10).pow(40);
    let m = IntMatrix::from_rows(&[
        vec![big.clone(), BigInt::from(1)],
        vec![BigInt::from(1), -big.clone()],
    ]);
    let s = smith_normal_form(&m);
    assert_eq!(&(&s.u * &m) * &s.v, s.d);
    assert_eq!(s.d[(1, 1)], &big * &big + 1u32);
}
