//! Finite abelian groups with symmetric Q/Z-valued linking forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmatrix::IntMatrix;
use crate::qmodz::QmodZ;
use crate::snf::smith_normal_form;

/// Groups up to this order are checked for nondegeneracy element by element.
pub const BRUTE_FORCE_ORDER_LIMIT: u64 = 1_000_000;

/// A finite abelian group `Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`
/// and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorsionGroup {
    #[serde(serialize_with = "serialize_bigints")]
    factors: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl TorsionGroup {
    pub fn new(factors: Vec<BigInt>) -> Result<Self> {
        for (i, d) in factors.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(Error::Parse(format!("invariant factor {d} is less than 2")));
            }
            if i > 0 && !d.is_multiple_of(&factors[i - 1]) {
                return Err(Error::Parse(format!(
                    "invariant factors break the divisibility chain at {} | {}",
                    factors[i - 1],
                    d
                )));
            }
        }
        Ok(TorsionGroup { factors })
    }

    pub fn trivial() -> Self {
        TorsionGroup { factors: vec![] }
    }

    /// `(Z/p)^rank`
    pub fn elementary(p: u32, rank: usize) -> Self {
        TorsionGroup {
            factors: vec![BigInt::from(p); rank],
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Exponent of the group; 1 for the trivial group.
    pub fn exponent(&self) -> BigInt {
        self.factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Some(p)` when the group is `(Z/p)^k` for a prime `p` that fits in `u32`.
    pub fn elementary_prime(&self) -> Option<u32> {
        let first = self.factors.first()?;
        if self.factors.last() != Some(first) {
            return None;
        }
        let p = first.to_u32()?;
        is_prime(p).then_some(p)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.rank()],
        }
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.zero();
        g.coords[i] = BigInt::one();
        g
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn element<T: Into<BigInt> + Clone>(&self, coords: &[T]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                actual: coords.len(),
            });
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(c, d)| c.clone().into().mod_floor(d))
                .collect(),
        })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((x, y), d)| (x + y).mod_floor(d))
                .collect(),
        })
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.coords.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                actual: a.coords.len(),
            })
        }
    }

    /// All elements in mixed-radix order (first coordinate fastest).
    /// Intended for small groups only.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let radices: Vec<u64> = self
            .factors
            .iter()
            .map(|d| d.to_u64().expect("group too large to enumerate"))
            .collect();
        let order: u64 = radices.iter().product();
        (0..order).map(move |mut idx| {
            let coords = radices
                .iter()
                .map(|&d| {
                    let c = idx % d;
                    idx /= d;
                    BigInt::from(c)
                })
                .collect();
            GroupElement { coords }
        })
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// A symmetric bilinear form `G x G -> Q/Z` given by its values on the
/// standard generators of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingForm {
    group: TorsionGroup,
    gram: Vec<Vec<QmodZ>>,
}

impl LinkingForm {
    /// Checks symmetry and that `d_i * gram[i][j] = 0` for every entry.
    pub fn new(group: TorsionGroup, gram: Vec<Vec<QmodZ>>) -> Result<Self> {
        let k = group.rank();
        if gram.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                actual: gram.len(),
            });
        }
        for row in &gram {
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    actual: row.len(),
                });
            }
        }
        for i in 0..k {
            for j in 0..k {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
                if !gram[i][j].int_scale(group.factors[i].clone()).is_zero() {
                    return Err(Error::IllDefinedForm(format!(
                        "{} * {} is not an integer",
                        group.factors[i], gram[i][j]
                    )));
                }
            }
        }
        Ok(LinkingForm { group, gram })
    }

    /// Diagonal form on `(Z/p)^k` with entries `numerators[i] / p`.
    pub fn diagonal_mod_p(p: u32, numerators: &[i64]) -> Result<Self> {
        let group = TorsionGroup::elementary(p, numerators.len());
        let k = numerators.len();
        let mut gram = vec![vec![QmodZ::zero(); k]; k];
        for (i, &a) in numerators.iter().enumerate() {
            gram[i][i] = QmodZ::new(a, p);
        }
        LinkingForm::new(group, gram)
    }

    pub fn group(&self) -> &TorsionGroup {
        &self.group
    }

    pub fn gram(&self) -> &[Vec<QmodZ>] {
        &self.gram
    }

    /// Reindexes generators: generator `i` of the result is generator
    /// `perm[i]` of `self`. Only valid when the permuted factor list is
    /// still a divisibility chain.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let factors = perm
            .iter()
            .map(|&i| self.group.factors[i].clone())
            .collect();
        let gram = perm
            .iter()
            .map(|&i| perm.iter().map(|&j| self.gram[i][j].clone()).collect())
            .collect();
        LinkingForm::new(TorsionGroup::new(factors)?, gram)
    }

    /// Gram entries scaled by the exponent `t`, as integers mod `t`.
    pub(crate) fn scaled_gram(&self) -> Vec<Vec<BigInt>> {
        let t = self.group.exponent();
        self.gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        // q = a/b with b | t, so t*q = a*(t/b) exactly.
                        q.numer() * (&t / q.denom())
                    })
                    .collect()
            })
            .collect()
    }
}

/// `sum_ij a_i b_j gram[i][j]` mod 1.
pub fn eval_linking(form: &LinkingForm, a: &GroupElement, b: &GroupElement) -> Result<QmodZ> {
    form.group.check(a)?;
    form.group.check(b)?;
    let k = form.group.rank();
    let mut acc = QmodZ::zero();
    for i in 0..k {
        if a.coords[i].is_zero() {
            continue;
        }
        for j in 0..k {
            if b.coords[j].is_zero() {
                continue;
            }
            acc += &form.gram[i][j].int_scale(&a.coords[i] * &b.coords[j]);
        }
    }
    Ok(acc)
}

/// Sign applied to the inverse framing matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    /// `+Λ⁻¹`: a `+3`-framed unknot has self-linking `1/3`.
    #[default]
    Paper,
    /// `−Λ⁻¹`, the intersection-pairing sign.
    Lemma,
}

/// `coker Λ` presented on Smith generators, with the linking form.
///
/// Generators are the classes of the columns of `U⁻¹` belonging to the
/// nonunit Smith factors, where `U Λ V = D`. On these, the form is
/// `(U⁻ᵀ V)_ij / d_j`, the residue of `g_iᵀ Λ⁻¹ g_j`.
#[derive(Clone, Debug)]
pub struct FramedPresentation {
    form: LinkingForm,
    u: IntMatrix,
    u_inv: IntMatrix,
    nonunit: Vec<usize>,
}

impl FramedPresentation {
    pub fn new(framing: &IntMatrix, convention: SignConvention) -> Result<Self> {
        framing.check_symmetric()?;
        if framing.determinant()?.is_zero() {
            return Err(Error::Singular);
        }
        let snf = smith_normal_form(framing);
        let n = framing.rows();
        let nonunit: Vec<usize> = (0..n).filter(|&i| !snf.d[(i, i)].is_one()).collect();
        let factors: Vec<BigInt> = nonunit.iter().map(|&i| snf.d[(i, i)].clone()).collect();
        let w = &snf.u_inv.transpose() * &snf.v;
        let sign = match convention {
            SignConvention::Paper => BigInt::one(),
            SignConvention::Lemma => -BigInt::one(),
        };
        let gram = nonunit
            .iter()
            .map(|&i| {
                nonunit
                    .iter()
                    .map(|&j| QmodZ::new(&sign * &w[(i, j)], snf.d[(j, j)].clone()))
                    .collect()
            })
            .collect();
        let form = LinkingForm::new(TorsionGroup::new(factors)?, gram)?;
        Ok(FramedPresentation {
            form,
            u: snf.u,
            u_inv: snf.u_inv,
            nonunit,
        })
    }

    pub fn group(&self) -> &TorsionGroup {
        self.form.group()
    }

    pub fn form(&self) -> &LinkingForm {
        &self.form
    }

    /// Meridian coordinates of generator `i`.
    pub fn generator_lift(&self, i: usize) -> Vec<BigInt> {
        let c = self.nonunit[i];
        (0..self.u_inv.rows())
            .map(|r| self.u_inv[(r, c)].clone())
            .collect()
    }

    /// The class in `coker Λ` of an integer vector in meridian coordinates.
    pub fn class_of(&self, x: &[BigInt]) -> Result<GroupElement> {
        let n = self.u.cols();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: x.len(),
            });
        }
        let coords: Vec<BigInt> = self
            .nonunit
            .iter()
            .map(|&r| (0..n).map(|c| &self.u[(r, c)] * &x[c]).sum())
            .collect();
        self.group().element(&coords)
    }
}

/// Presents `coker Λ` with its linking form; see [`FramedPresentation`].
pub fn linking_form_from_framing(
    framing: &IntMatrix,
    convention: SignConvention,
) -> Result<(TorsionGroup, LinkingForm)> {
    let p = FramedPresentation::new(framing, convention)?;
    Ok((p.group().clone(), p.form))
}

/// Whether `g -> λ(g, ·)` is injective. Uses element enumeration for groups
/// of order at most [`BRUTE_FORCE_ORDER_LIMIT`], the Smith criterion above.
pub fn is_nondegenerate(form: &LinkingForm) -> bool {
    match form.group.order().to_u64() {
        Some(order) if order <= BRUTE_FORCE_ORDER_LIMIT => nondegenerate_by_enumeration(form),
        _ => nondegenerate_by_smith(form),
    }
}

/// Looks for a nonzero element pairing trivially with every generator.
pub fn nondegenerate_by_enumeration(form: &LinkingForm) -> bool {
    let t = form.group.exponent().to_u64().expect("exponent fits u64");
    let k = form.group.rank();
    let b: Vec<Vec<u128>> = form
        .scaled_gram()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.mod_floor(&BigInt::from(t)).to_u128().unwrap())
                .collect()
        })
        .collect();
    let radices: Vec<u64> = form
        .group
        .factors
        .iter()
        .map(|d| d.to_u64().unwrap())
        .collect();
    let mut coords = vec![0u64; k];
    // Skip the zero element, then walk the rest in mixed radix.
    loop {
        let mut i = 0;
        while i < k {
            coords[i] += 1;
            if coords[i] < radices[i] {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        if i == k {
            return true;
        }
        let radical = (0..k).all(|j| {
            let s: u128 = (0..k).map(|i| coords[i] as u128 * b[i][j]).sum();
            s.is_multiple_of(t as u128)
        });
        if radical {
            return false;
        }
    }
}

/// With `B = t·gram` over the integers, the adjoint map has image of size
/// `prod t / gcd(s_i, t)` over the Smith invariants `s_i` of `B`; the form is
/// nondegenerate iff that equals the group order.
pub fn nondegenerate_by_smith(form: &LinkingForm) -> bool {
    if form.group.is_trivial() {
        return true;
    }
    let t = form.group.exponent();
    let b = IntMatrix::from_rows(&form.scaled_gram());
    let image: BigInt = smith_normal_form(&b)
        .diagonal()
        .iter()
        .map(|s| &t / s.gcd(&t))
        .product();
    image == form.group.order()
}

/// Integer square root when `n` is a perfect square.
pub(crate) fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m0() -> LinkingForm {
        LinkingForm::diagonal_mod_p(3, &[1, 1, 1, -1, -1, -1]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = m0();
        let g = f.group();
        let e1 = g.generator(0);
        assert_eq!(eval_linking(&f, &e1, &e1).unwrap(), QmodZ::new(1, 3));
        assert!(eval_linking(&f, &g.zero(), &e1).unwrap().is_zero());
        let x = g.element(&[1, 0, 0, 1, 0, 0]).unwrap();
        assert!(eval_linking(&f, &x, &x).unwrap().is_zero());
        let short = TorsionGroup::elementary(3, 2).zero();
        assert!(matches!(
            eval_linking(&f, &short, &e1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn group_validation() {
        assert!(TorsionGroup::new(vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(TorsionGroup::new(vec![BigInt::from(1)]).is_err());
        let g = TorsionGroup::new(vec![BigInt::from(3), BigInt::from(9)]).unwrap();
        assert_eq!(g.exponent(), BigInt::from(9));
        assert_eq!(g.order(), BigInt::from(27));
        assert_eq!(g.elementary_prime(), None);
        assert_eq!(TorsionGroup::trivial().exponent(), BigInt::one());
        assert_eq!(TorsionGroup::elementary(5, 2).elementary_prime(), Some(5));
        assert_eq!(TorsionGroup::elementary(3, 2).elements().count(), 9);
    }

    #[test]
    fn ill_defined_gram_rejected() {
        // 1/9 on Z/3 is not well defined.
        let g = TorsionGroup::elementary(3, 1);
        assert!(LinkingForm::new(g, vec![vec![QmodZ::new(1, 9)]]).is_err());
    }

    #[test]
    fn framing_m0() {
        let lam = IntMatrix::diagonal(&[3, 3, 3, -3, -3, -3]);
        let (g, f) = linking_form_from_framing(&lam, SignConvention::Paper).unwrap();
        assert_eq!(g.invariant_factors(), &vec![BigInt::from(3); 6][..]);
        for i in 0..6 {
            let expect = if i < 3 {
                QmodZ::new(1, 3)
            } else {
                QmodZ::new(2, 3)
            };
            assert_eq!(f.gram()[i][i], expect);
            for j in 0..6 {
                if i != j {
                    assert!(f.gram()[i][j].is_zero());
                }
            }
        }
        let (_, f) = linking_form_from_framing(&lam, SignConvention::Lemma).unwrap();
        assert_eq!(f.gram()[0][0], QmodZ::new(2, 3));
    }

    #[test]
    fn framing_unimodular_and_errors() {
        let (g, f) =
            linking_form_from_framing(&IntMatrix::identity(4), SignConvention::Paper).unwrap();
        assert!(g.is_trivial());
        assert!(f.gram().is_empty());
        let asym = IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        assert!(matches!(
            linking_form_from_framing(&asym, SignConvention::Paper),
            Err(Error::NotSymmetric { .. })
        ));
        let sing = IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(
            linking_form_from_framing(&sing, SignConvention::Paper),
            Err(Error::Singular)
        );
    }

    #[test]
    fn framing_a2() {
        let lam = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        let (g, f) = linking_form_from_framing(&lam, SignConvention::Paper).unwrap();
        assert_eq!(g.invariant_factors(), &[BigInt::from(3)]);
        assert_eq!(f.gram()[0][0], QmodZ::new(2, 3));
    }

    #[test]
    fn nondegeneracy() {
        assert!(is_nondegenerate(&m0()));
        let zero = LinkingForm::diagonal_mod_p(3, &[0]).unwrap();
        assert!(!is_nondegenerate(&zero));
        assert!(!nondegenerate_by_smith(&zero));
        let z9 = LinkingForm::new(
            TorsionGroup::new(vec![BigInt::from(9)]).unwrap(),
            vec![vec![QmodZ::new(3, 9)]],
        )
        .unwrap();
        assert!(!nondegenerate_by_enumeration(&z9));
        assert!(!nondegenerate_by_smith(&z9));
        let l91 = LinkingForm::new(
            TorsionGroup::new(vec![BigInt::from(9)]).unwrap(),
            vec![vec![QmodZ::new(2, 9)]],
        )
        .unwrap();
        assert!(nondegenerate_by_enumeration(&l91));
        assert!(nondegenerate_by_smith(&l91));
        assert!(is_nondegenerate(
            &LinkingForm::new(TorsionGroup::trivial(), vec![]).unwrap()
        ));
    }

    #[test]
    fn sqrt() {
        assert_eq!(exact_sqrt(&BigInt::from(729)), Some(BigInt::from(27)));
        assert_eq!(exact_sqrt(&BigInt::from(3)), None);
        assert_eq!(exact_sqrt(&BigInt::from(1)), Some(BigInt::one()));
    }
}
