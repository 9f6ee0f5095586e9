use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::context::SearchContext;
use crate::tripleform::ObstructionVector;

/// Number of coefficient vectors, `3^20`.
pub const VECTOR_SPACE_SIZE: u64 = 3_486_784_401;

const CHUNK: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanBudget {
    pub max_vectors: u64,
    /// Checked between chunks, so results under a time limit are not
    /// reproducible.
    pub max_duration: Option<Duration>,
}

impl ScanBudget {
    pub fn vectors(max_vectors: u64) -> Self {
        ScanBudget {
            max_vectors,
            max_duration: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanStrategy {
    /// Indices `start, start + 1, ...` (see [`ObstructionVector::from_index`]).
    Sequential { start: u64 },
    /// Uniform indices drawn from a seeded ChaCha8 stream.
    Random { seed: u64 },
    /// A given list, in order.
    Explicit(Vec<ObstructionVector>),
}

/// Obstructed vectors found within the budget, sorted by index and
/// deduplicated.
pub fn scan_obstructed(
    ctx: &SearchContext,
    budget: ScanBudget,
    strategy: ScanStrategy,
) -> Vec<ObstructionVector> {
    let start = Instant::now();
    let mut rng = match &strategy {
        ScanStrategy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut found = Vec::new();
    let mut done = 0u64;
    while done < budget.max_vectors {
        if budget
            .max_duration
            .is_some_and(|limit| start.elapsed() >= limit)
        {
            break;
        }
        let take = (budget.max_vectors - done).min(CHUNK as u64);
        let candidates: Vec<ObstructionVector> = match &strategy {
            ScanStrategy::Sequential { start } => {
                let lo = start.saturating_add(done).min(VECTOR_SPACE_SIZE);
                let hi = lo.saturating_add(take).min(VECTOR_SPACE_SIZE);
                (lo..hi).map(ObstructionVector::from_index).collect()
            }
            ScanStrategy::Random { .. } => {
                let rng = rng.as_mut().expect("seeded");
                (0..take)
                    .map(|_| ObstructionVector::from_index(rng.gen_range(0..VECTOR_SPACE_SIZE)))
                    .collect()
            }
            ScanStrategy::Explicit(list) => {
                let lo = (done as usize).min(list.len());
                let hi = (lo + take as usize).min(list.len());
                list[lo..hi].to_vec()
            }
        };
        if candidates.is_empty() {
            break;
        }
        done += candidates.len() as u64;
        found.extend(
            candidates
                .par_iter()
                .map_init(Vec::new, |zeros, v| {
                    ctx.obstructed_with(v.planes(), zeros).then_some(*v)
                })
                .flatten()
                .collect::<Vec<_>>(),
        );
    }
    found.sort_by_key(ObstructionVector::index);
    found.dedup();
    found
}
