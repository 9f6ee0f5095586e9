use lambda3_core::linking::{nondegenerate_by_enumeration, nondegenerate_by_smith};
use lambda3_core::{
    eval_linking, is_nondegenerate, FramedPresentation, GroupElement, IntMatrix, LinkingForm,
    QmodZ, SignConvention, TorsionGroup,
};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn fixtures() -> Vec<IntMatrix> {
    vec![
        IntMatrix::diagonal(&[3, 3, 3, -3, -3, -3]),
        IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]),
        IntMatrix::diagonal(&[3, -3]),
        IntMatrix::diagonal(&[2, 4]),
        IntMatrix::diagonal(&[9]),
        IntMatrix::from_rows(&[vec![5, 2], vec![2, 5]]),
        IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]),
        IntMatrix::from_rows(&[vec![3, 0, 1], vec![0, 3, 0], vec![1, 0, -3]]),
        IntMatrix::from_rows(&[
            vec![-2, 1, 1, 0],
            vec![1, -2, 0, 1],
            vec![1, 0, -2, 1],
            vec![0, 1, 1, 4],
        ]),
    ]
}

fn present(m: &IntMatrix) -> FramedPresentation {
    FramedPresentation::new(m, SignConvention::Paper).unwrap()
}

/// Λ⁻¹ = adj(Λ) / det(Λ), with cofactors from independent determinants.
fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[(r, c)].clone())
                        .collect()
                })
                .collect();
            let minor = if n == 1 {
                BigInt::from(1)
            } else {
                IntMatrix::from_rows(&rows).determinant().unwrap()
            };
            adj[(i, j)] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

#[test]
fn gram_matches_adjugate_oracle() {
    for m in fixtures() {
        let pres = present(&m);
        let det = m.determinant().unwrap();
        let adj = adjugate(&m);
        let k = pres.group().rank();
        for i in 0..k {
            for j in 0..k {
                let gi = pres.generator_lift(i);
                let gj = pres.generator_lift(j);
                let mut num = BigInt::zero();
                for a in 0..m.rows() {
                    for b in 0..m.rows() {
                        num += &gi[a] * &adj[(a, b)] * &gj[b];
                    }
                }
                assert_eq!(
                    pres.form().gram()[i][j],
                    QmodZ::new(num, det.clone()),
                    "{m:?} ({i},{j})"
                );
            }
        }
        // order of coker equals |det|
        assert_eq!(pres.group().order(), det.magnitude().clone().into());
    }
}

#[test]
fn a2_generator_self_linking() {
    let pres = present(&IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]));
    assert_eq!(pres.group().invariant_factors(), &[BigInt::from(3)]);
    assert_eq!(pres.form().gram()[0][0], QmodZ::new(2, 3));
    let lemma = FramedPresentation::new(
        &IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]),
        SignConvention::Lemma,
    )
    .unwrap();
    assert_eq!(lemma.form().gram()[0][0], QmodZ::new(1, 3));
}

#[test]
fn exponent_kills_every_value() {
    for m in fixtures() {
        for conv in [SignConvention::Paper, SignConvention::Lemma] {
            let pres = FramedPresentation::new(&m, conv).unwrap();
            let t = pres.group().exponent();
            for row in pres.form().gram() {
                for q in row {
                    assert!(q.int_scale(t.clone()).is_zero());
                    assert!(q.int_scale(&t * &t).is_zero());
                }
            }
        }
    }
}

#[test]
fn framing_forms_are_nondegenerate() {
    for m in fixtures() {
        let pres = present(&m);
        assert!(is_nondegenerate(pres.form()));
        assert!(nondegenerate_by_enumeration(pres.form()));
        assert!(nondegenerate_by_smith(pres.form()));
    }
}

fn element_strategy(factors: Vec<i64>) -> impl Strategy<Value = Vec<i64>> {
    factors.into_iter().map(|d| 0..d).collect::<Vec<_>>()
}

fn random_element(g: &TorsionGroup, seed: &[i64]) -> GroupElement {
    g.element(seed).unwrap()
}

proptest! {
    #[test]
    fn symmetric_and_bilinear(
        idx in 0usize..9,
        a in prop::collection::vec(-50i64..50, 6),
        a2 in prop::collection::vec(-50i64..50, 6),
        b in prop::collection::vec(-50i64..50, 6),
    ) {
        let fixtures = fixtures();
        let pres = present(&fixtures[idx]);
        let g = pres.group();
        let k = g.rank();
        let (x, x2, y) = (random_element(g, &a[..k]), random_element(g, &a2[..k]), random_element(g, &b[..k]));
        let f = pres.form();
        prop_assert_eq!(eval_linking(f, &x, &y).unwrap(), eval_linking(f, &y, &x).unwrap());
        let sum = g.add(&x, &x2).unwrap();
        prop_assert_eq!(
            eval_linking(f, &sum, &y).unwrap(),
            eval_linking(f, &x, &y).unwrap() + eval_linking(f, &x2, &y).unwrap()
        );
    }

    #[test]
    fn nondegeneracy_methods_agree(
        factors in prop::sample::select(vec![vec![3i64, 3], vec![2, 4], vec![9], vec![3, 9], vec![2, 2, 2], vec![5, 5]]),
        raw in prop::collection::vec(0i64..1000, 9),
    ) {
        let k = factors.len();
        let group = TorsionGroup::new(factors.iter().map(|&d| BigInt::from(d)).collect()).unwrap();
        // symmetric gram with gram[i][j] = a / gcd-compatible denominator d_min(i,j)
        let mut gram = vec![vec![QmodZ::zero(); k]; k];
        for i in 0..k {
            for j in i..k {
                let d = factors[i].min(factors[j]);
                let q = QmodZ::new(raw[i * 3 + j], d);
                gram[i][j] = q.clone();
                gram[j][i] = q;
            }
        }
        let form = LinkingForm::new(group, gram).unwrap();
        prop_assert_eq!(nondegenerate_by_enumeration(&form), nondegenerate_by_smith(&form));
    }

    #[test]
    fn elements_reduce(coords in element_strategy(vec![3, 9])) {
        let g = TorsionGroup::new(vec![BigInt::from(3), BigInt::from(9)]).unwrap();
        let e = g.element(&coords).unwrap();
        prop_assert_eq!(e.coords()[1].to_i64().unwrap(), coords[1]);
    }
}

/// Random unimodular matrix as a product of elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        let mut e = IntMatrix::identity(n);
        if i == j {
            e[(i, i)] = BigInt::from(-1);
        } else {
            e[(i, j)] = BigInt::from(k);
        }
        p = &e * &p;
    }
    p
}

/// Does some group isomorphism carry `f` onto `g`? Brute force over images
/// of the generators; fine for rank <= 2 and order <= 81.
fn isometric(f: &LinkingForm, g: &LinkingForm) -> bool {
    if f.group() != g.group() {
        return false;
    }
    let grp = g.group();
    let elems: Vec<GroupElement> = grp.elements().collect();
    let k = grp.rank();
    let order = elems.len();
    let mut choice = vec![0usize; k];
    loop {
        let images: Vec<&GroupElement> = choice.iter().map(|&c| &elems[c]).collect();
        let preserves = (0..k).all(|i| {
            (0..k).all(|j| eval_linking(g, images[i], images[j]).unwrap() == f.gram()[i][j])
        });
        // d_i * image_i = 0, so generators extend to a homomorphism
        let orders_ok = (0..k).all(|i| {
            let d = &f.group().invariant_factors()[i];
            images[i]
                .coords()
                .iter()
                .zip(grp.invariant_factors())
                .all(|(c, e)| (c * d) % e == BigInt::zero())
        });
        if preserves && orders_ok {
            // bijective iff the images generate everything: count the span
            let mut span = std::collections::HashSet::new();
            for e in f.group().elements() {
                let mut acc = grp.zero();
                for (i, c) in e.coords().iter().enumerate() {
                    for _ in 0..c.to_u64().unwrap() {
                        acc = grp.add(&acc, images[i]).unwrap();
                    }
                }
                span.insert(acc);
            }
            if span.len() == order {
                return true;
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return false;
            }
            choice[i] += 1;
            if choice[i] < order {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruent_framings_give_isometric_forms(
        idx in 0usize..9,
        ops in prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..6),
    ) {
        let lam = &fixtures()[idx];
        let n = lam.rows();
        let p = unimodular(n, &ops);
        let lam2 = &(&p * lam) * &p.transpose();
        let a = present(lam);
        let b = present(&lam2);
        prop_assert_eq!(a.group().invariant_factors(), b.group().invariant_factors());
        // x -> P x is an isometry coker Λ -> coker PΛPᵀ.
        let k = a.group().rank();
        let images: Vec<GroupElement> = (0..k)
            .map(|i| {
                let g = a.generator_lift(i);
                let pg: Vec<BigInt> = (0..n).map(|r| (0..n).map(|c| &p[(r, c)] * &g[c]).sum()).collect();
                b.class_of(&pg).unwrap()
            })
            .collect();
        for i in 0..k {
            for j in 0..k {
                prop_assert_eq!(
                    eval_linking(b.form(), &images[i], &images[j]).unwrap(),
                    a.form().gram()[i][j].clone()
                );
            }
        }
        if k <= 2 && a.group().order() <= BigInt::from(81) {
            prop_assert!(isometric(a.form(), b.form()));
        }
    }
}
