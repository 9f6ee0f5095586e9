use std::time::Instant;

use serde::Serialize;

use super::context::SearchContext;
use crate::tripleform::ObstructionVector;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanStats {
    pub vectors_tested: u64,
    pub elapsed_seconds: f64,
}

/// Outcome of testing one coefficient vector against every dual pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub v: ObstructionVector,
    pub obstructed: bool,
    /// First dual pair (in context order) on which the form vanishes on
    /// both members; present iff `obstructed` is false.
    pub failing_pair: Option<(usize, usize)>,
    pub stats: ScanStats,
}

pub fn is_obstructed(v: &ObstructionVector, ctx: &SearchContext) -> SearchReport {
    let start = Instant::now();
    let vp = v.planes();
    let vanishes: Vec<bool> = ctx.planes().iter().map(|d| d.dot_is_zero(vp)).collect();
    let failing_pair = ctx
        .dual_pairs()
        .iter()
        .copied()
        .find(|&(i, j)| vanishes[i] && vanishes[j]);
    SearchReport {
        v: *v,
        obstructed: failing_pair.is_none(),
        failing_pair,
        stats: ScanStats {
            vectors_tested: 1,
            elapsed_seconds: start.elapsed().as_secs_f64(),
        },
    }
}
