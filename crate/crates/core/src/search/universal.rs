//! Does every `v` in `(Z/3)^20` vanish on at least one determinant vector?

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::context::SearchContext;
use super::with_threads;
use crate::fp;
use crate::tripleform::{ObstructionVector, TritPlanes, TRIPLES};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// One representative per coset of the common kernel of the
    /// determinant vectors; `3^rank` candidates.
    #[default]
    RankReduced,
    /// All `3^20` vectors.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniversalReport {
    /// True when every vector is orthogonal to some determinant vector.
    pub holds: bool,
    pub mode: VerifyMode,
    /// Rank over F_3 of the matrix of determinant vectors.
    pub rank: usize,
    pub vectors_tested: u64,
    /// Smallest vector (in scan order) orthogonal to none of them.
    pub counterexample: Option<ObstructionVector>,
    pub elapsed_seconds: f64,
}

const HALF: usize = TRIPLES / 2;
const HALF_SPACE: u64 = 59_049; // 3^10
const FULL_SPACE: u64 = HALF_SPACE * HALF_SPACE;

fn det_rows(ctx: &SearchContext) -> Vec<Vec<u32>> {
    ctx.det_vectors()
        .iter()
        .map(|d| d.entries().iter().map(|&e| e as u32).collect())
        .collect()
}

/// Column indices of a basis of the column space of the determinant matrix.
fn pivot_columns(ctx: &SearchContext) -> Vec<usize> {
    let mut rows = det_rows(ctx);
    if rows.is_empty() {
        return vec![];
    }
    fp::rref(&mut rows, 3)
}

pub fn verify_universal_vanishing(
    ctx: &SearchContext,
    mode: VerifyMode,
    threads: usize,
) -> UniversalReport {
    let start = Instant::now();
    let pivots = pivot_columns(ctx);
    let rank = pivots.len();
    let (vectors_tested, counterexample) = if ctx
        .det_vectors()
        .iter()
        .any(|d| d.entries() == &[0; TRIPLES])
    {
        // The zero functional vanishes on every v.
        (0, None)
    } else {
        with_threads(threads, || match mode {
            VerifyMode::RankReduced => rank_reduced(ctx, &pivots),
            VerifyMode::Exhaustive => exhaustive(ctx),
        })
    };
    UniversalReport {
        holds: counterexample.is_none(),
        mode,
        rank,
        vectors_tested,
        counterexample,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}

/// Residue masks of `sum_c x_c d[coords[c]]` over all `x`, one entry per
/// assignment, each split into blocks of 128 determinant vectors. Entry
/// `x * blocks + b` holds the bitsets of indices with residue 0, 1, 2.
fn residue_table(ctx: &SearchContext, coords: &[usize]) -> Vec<[u128; 3]> {
    let m = ctx.det_vectors().len();
    let blocks = m.div_ceil(128).max(1);
    let size = 3usize.pow(coords.len() as u32);
    let mut table = vec![[0u128; 3]; size * blocks];
    let mut digits = vec![0u8; coords.len()];
    for x in 0..size {
        let mut rem = x;
        for d in digits.iter_mut() {
            *d = (rem % 3) as u8;
            rem /= 3;
        }
        for (l, dv) in ctx.det_vectors().iter().enumerate() {
            let r: u32 = coords
                .iter()
                .zip(&digits)
                .map(|(&c, &x)| dv.entries()[c] as u32 * x as u32)
                .sum::<u32>()
                % 3;
            table[x * blocks + l / 128][r as usize] |= 1 << (l % 128);
        }
    }
    table
}

/// Meet in the middle over the pivot coordinates: with the pivots split in
/// two halves `a`, `b`, the pairing with `d_l` is `r_a(l) + r_b(l)` and it
/// vanishes iff `r_b(l) = -r_a(l)`.
fn rank_reduced(ctx: &SearchContext, pivots: &[usize]) -> (u64, Option<ObstructionVector>) {
    let blocks = ctx.det_vectors().len().div_ceil(128).max(1);
    let (coords_a, coords_b) = pivots.split_at(pivots.len() / 2);
    let table_a = residue_table(ctx, coords_a);
    let table_b = residue_table(ctx, coords_b);
    let size_a = 3u64.pow(coords_a.len() as u32);
    let size_b = 3u64.pow(coords_b.len() as u32);

    let found = (0..size_a).into_par_iter().find_map_first(|xa| {
        let a = &table_a[xa as usize * blocks..(xa as usize + 1) * blocks];
        (0..size_b)
            .find(|&xb| {
                let b = &table_b[xb as usize * blocks..(xb as usize + 1) * blocks];
                !a.iter()
                    .zip(b)
                    .any(|(a, b)| (a[0] & b[0]) | (a[1] & b[2]) | (a[2] & b[1]) != 0)
            })
            .map(|xb| (xa, xb))
    });

    match found {
        None => (size_a * size_b, None),
        Some((xa, xb)) => {
            let mut entries = [0u8; TRIPLES];
            let mut fill = |coords: &[usize], mut x: u64| {
                for &c in coords {
                    entries[c] = (x % 3) as u8;
                    x /= 3;
                }
            };
            fill(coords_a, xa);
            fill(coords_b, xb);
            (
                xa * size_b + xb + 1,
                Some(ObstructionVector::from_entries(entries)),
            )
        }
    }
}

/// Bit planes of every assignment to ten consecutive trits, low digit first.
fn half_planes() -> Vec<TritPlanes> {
    (0..HALF_SPACE)
        .map(|mut x| {
            let mut p = TritPlanes::default();
            for bit in 0..HALF {
                match x % 3 {
                    1 => p.ones |= 1 << bit,
                    2 => p.twos |= 1 << bit,
                    _ => {}
                }
                x /= 3;
            }
            p
        })
        .collect()
}

/// Scans vector indices `hi * 3^10 + lo` in order, stopping per vector at
/// the first orthogonal determinant vector.
fn exhaustive(ctx: &SearchContext) -> (u64, Option<ObstructionVector>) {
    let low = half_planes();
    let dets = ctx.planes();
    let found = (0..HALF_SPACE).into_par_iter().find_map_first(|hi| {
        let h = low[hi as usize];
        let (h1, h2) = (h.ones << HALF, h.twos << HALF);
        low.iter()
            .position(|l| {
                let v = TritPlanes {
                    ones: h1 | l.ones,
                    twos: h2 | l.twos,
                };
                !dets.iter().any(|d| d.dot_is_zero(v))
            })
            .map(|lo| hi * HALF_SPACE + lo as u64)
    });
    match found {
        None => (FULL_SPACE, None),
        Some(idx) => (idx + 1, Some(ObstructionVector::from_index(idx))),
    }
}
