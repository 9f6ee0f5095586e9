//! The square-order and dual-Lagrangian splitting test for linking forms
//! of 3-manifolds embedded in the 4-sphere.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isotropic::{dual_pair_indices, enumerate_lagrangians, DualPair, Subspace};
use crate::linking::{exact_sqrt, is_nondegenerate, LinkingForm};

/// Largest group order for which the splitting search is attempted.
pub const SPLITTING_SEARCH_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HantzscheVerdict {
    NoSquareOrder {
        #[serde(serialize_with = "as_string")]
        order: BigInt,
    },
    Splitting {
        pair: DualPair,
    },
    NoSplittingFound,
    /// Order is a square but the group is outside the searchable range
    /// (not elementary abelian, or too large).
    SquareOrderOnly {
        #[serde(serialize_with = "as_string")]
        order: BigInt,
    },
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn check_hantzsche(form: &LinkingForm) -> Result<HantzscheVerdict> {
    if !is_nondegenerate(form) {
        return Err(Error::Degenerate);
    }
    let group = form.group();
    let order = group.order();
    if exact_sqrt(&order).is_none() {
        return Ok(HantzscheVerdict::NoSquareOrder { order });
    }
    if group.is_trivial() {
        // Any prime works for the zero space.
        let zero = Subspace::zero(2, 0);
        return Ok(HantzscheVerdict::Splitting {
            pair: DualPair::new(zero.clone(), zero),
        });
    }
    let searchable = group.elementary_prime().is_some()
        && order.to_u64().is_some_and(|o| o <= SPLITTING_SEARCH_LIMIT);
    if !searchable {
        return Ok(HantzscheVerdict::SquareOrderOnly { order });
    }
    let lagrangians = enumerate_lagrangians(form)?;
    Ok(match dual_pair_indices(&lagrangians).first() {
        Some(&(i, j)) => HantzscheVerdict::Splitting {
            pair: DualPair::new(lagrangians[i].clone(), lagrangians[j].clone()),
        },
        None => HantzscheVerdict::NoSplittingFound,
    })
}
