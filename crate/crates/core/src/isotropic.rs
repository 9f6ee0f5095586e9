//! Subspaces of F_p^n in canonical form, Lagrangian enumeration and dual
//! pairs.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp;
use crate::linking::LinkingForm;

/// A subspace of `F_p^n`, stored as its reduced row echelon basis. Two
/// subspaces are equal iff their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    p: u32,
    ambient_dim: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    /// Span of arbitrary integer vectors (reduced mod `p`).
    pub fn span<T: Into<i64> + Copy>(
        p: u32,
        ambient_dim: usize,
        vectors: &[Vec<T>],
    ) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    actual: v.len(),
                });
            }
            rows.push(
                v.iter()
                    .map(|&x| x.into().rem_euclid(p as i64) as u32)
                    .collect(),
            );
        }
        fp::rref(&mut rows, p);
        Ok(Subspace {
            p,
            ambient_dim,
            basis: rows,
        })
    }

    pub fn zero(p: u32, ambient_dim: usize) -> Self {
        Subspace {
            p,
            ambient_dim,
            basis: vec![],
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Determinant mod `p` of the leading `k x k` block, `k = dim`.
    pub fn left_block_det(&self) -> u32 {
        let k = self.dim();
        if k > self.ambient_dim {
            return 0;
        }
        let block: Vec<Vec<u32>> = self.basis.iter().map(|r| r[..k].to_vec()).collect();
        fp::det_mod(&block, self.p)
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.p == other.p && self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                p_left: self.p,
                n_left: self.ambient_dim,
                p_right: other.p,
                n_right: other.ambient_dim,
            })
        }
    }

    /// Every vector of the subspace; `p^dim` of them.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        let k = self.dim();
        let p = self.p;
        let total = (p as u64).pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let mut v = vec![0u32; self.ambient_dim];
                for row in &self.basis {
                    let c = (idx % p as u64) as u32;
                    idx /= p as u64;
                    for (x, &b) in v.iter_mut().zip(row) {
                        *x = (*x + c * b) % p;
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(F_{}^{}: {:?})",
            self.p, self.ambient_dim, self.basis
        )
    }
}

/// `dim(a) + dim(b) - rank(a stacked on b)`
pub fn subspace_intersection_dim(a: &Subspace, b: &Subspace) -> Result<usize> {
    a.check_same_ambient(b)?;
    let stacked: Vec<Vec<u32>> = a.basis.iter().chain(&b.basis).cloned().collect();
    Ok(a.dim() + b.dim() - fp::rank(&stacked, a.p))
}

/// Iterator over all `k`-dimensional subspaces of `F_p^n`, one RREF shape
/// (pivot column set) after another.
pub struct SubspaceIter {
    p: u32,
    n: usize,
    k: usize,
    pivots: Option<Vec<usize>>,
    single_shape: bool,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    fresh: bool,
}

impl SubspaceIter {
    fn new(p: u32, n: usize, k: usize, pivots: Option<Vec<usize>>, single_shape: bool) -> Self {
        let mut it = SubspaceIter {
            p,
            n,
            k,
            pivots,
            single_shape,
            free: vec![],
            counter: vec![],
            fresh: true,
        };
        it.load_shape();
        it
    }

    fn load_shape(&mut self) {
        self.free.clear();
        if let Some(piv) = &self.pivots {
            for (r, &pc) in piv.iter().enumerate() {
                for c in pc + 1..self.n {
                    if !piv.contains(&c) {
                        self.free.push((r, c));
                    }
                }
            }
        }
        self.counter = vec![0; self.free.len()];
        self.fresh = true;
    }

    fn current(&self) -> Subspace {
        let piv = self.pivots.as_ref().expect("active shape");
        let mut basis = vec![vec![0u32; self.n]; self.k];
        for (r, &c) in piv.iter().enumerate() {
            basis[r][c] = 1;
        }
        for (&(r, c), &x) in self.free.iter().zip(&self.counter) {
            basis[r][c] = x;
        }
        Subspace {
            p: self.p,
            ambient_dim: self.n,
            basis,
        }
    }

    /// Advances the free-entry counter; false when the shape is exhausted.
    fn step_counter(&mut self) -> bool {
        for x in self.counter.iter_mut().rev() {
            *x += 1;
            if *x < self.p {
                return true;
            }
            *x = 0;
        }
        false
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            self.pivots.as_ref()?;
            if self.fresh {
                self.fresh = false;
                return Some(self.current());
            }
            if self.step_counter() {
                return Some(self.current());
            }
            let advanced = !self.single_shape
                && self
                    .pivots
                    .as_mut()
                    .is_some_and(|piv| next_combination(piv, self.n));
            if advanced {
                self.load_shape();
            } else {
                self.pivots = None;
            }
        }
    }
}

/// Streams each `k`-dimensional subspace of `F_p^n` exactly once.
pub fn enumerate_subspaces(p: u32, n: usize, k: usize) -> SubspaceIter {
    let pivots = (k <= n).then(|| (0..k).collect());
    SubspaceIter::new(p, n, k, pivots, false)
}

/// All RREF shapes (pivot column sets) of `k`-subspaces of `F_p^n`.
pub fn rref_shapes(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return vec![];
    }
    let mut c: Vec<usize> = (0..k).collect();
    let mut out = vec![c.clone()];
    while next_combination(&mut c, n) {
        out.push(c.clone());
    }
    out
}

/// Subspaces of one RREF shape.
pub fn enumerate_shape(p: u32, n: usize, pivots: Vec<usize>) -> SubspaceIter {
    let k = pivots.len();
    SubspaceIter::new(p, n, k, Some(pivots), true)
}

/// The bilinear form `p·λ` over `F_p`, for a form on `(Z/p)^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpForm {
    p: u32,
    matrix: Vec<Vec<u32>>,
}

impl FpForm {
    pub fn from_linking(form: &LinkingForm) -> Result<Self> {
        let group = form.group();
        let rank_err = || {
            Error::NotElementaryEvenRank(
                group
                    .invariant_factors()
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            )
        };
        let p = group.elementary_prime().ok_or_else(rank_err)?;
        if !group.rank().is_multiple_of(2) {
            return Err(rank_err());
        }
        let pb = BigInt::from(p);
        let matrix = form
            .gram()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        ((q.numer() * &pb) / q.denom())
                            .to_u32()
                            .expect("entry below p")
                    })
                    .collect()
            })
            .collect();
        Ok(FpForm { p, matrix })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn pair(&self, x: &[u32], y: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut acc = 0u64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                acc += xi as u64 * yj as u64 * self.matrix[i][j] as u64 % p;
            }
        }
        (acc % p) as u32
    }

    /// The form restricted to `s` vanishes (restricted gram matrix is zero).
    pub fn is_isotropic(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i..b.len()).all(|j| self.pair(&b[i], &b[j]) == 0))
    }
}

/// All half-dimensional isotropic subspaces, sorted canonically.
pub fn enumerate_lagrangians(form: &LinkingForm) -> Result<Vec<Subspace>> {
    let fpf = FpForm::from_linking(form)?;
    let n = fpf.dim();
    let k = n / 2;
    let p = fpf.p();
    let mut out: Vec<Subspace> = rref_shapes(n, k)
        .into_par_iter()
        .flat_map_iter(|shape| {
            let fpf = &fpf;
            enumerate_shape(p, n, shape).filter(move |s| fpf.is_isotropic(s))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// An unordered pair of complementary subspaces, smaller basis first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DualPair {
    pub first: Subspace,
    pub second: Subspace,
}

impl DualPair {
    pub fn new(a: Subspace, b: Subspace) -> Self {
        if a <= b {
            DualPair {
                first: a,
                second: b,
            }
        } else {
            DualPair {
                first: b,
                second: a,
            }
        }
    }
}

fn complementary(a: &Subspace, b: &Subspace) -> bool {
    a.p == b.p
        && a.ambient_dim == b.ambient_dim
        && a.dim() + b.dim() == a.ambient_dim
        && subspace_intersection_dim(a, b) == Ok(0)
}

/// Index pairs `(i, j)`, `i < j`, of complementary members of `subspaces`,
/// in lexicographic order.
pub fn dual_pair_indices(subspaces: &[Subspace]) -> Vec<(usize, usize)> {
    (0..subspaces.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..subspaces.len())
                .filter(move |&j| complementary(&subspaces[i], &subspaces[j]))
                .map(move |j| (i, j))
        })
        .collect()
}

pub fn enumerate_dual_pairs(lagrangians: &[Subspace]) -> Vec<DualPair> {
    let mut pairs: Vec<DualPair> = dual_pair_indices(lagrangians)
        .into_iter()
        .map(|(i, j)| DualPair::new(lagrangians[i].clone(), lagrangians[j].clone()))
        .collect();
    pairs.sort();
    pairs
}

/// Lagrangian and dual-pair counts for one form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub lagrangians: usize,
    pub left_block_nonsingular: usize,
    pub left_block_singular: usize,
    pub dual_pairs: usize,
}

pub fn census(form: &LinkingForm) -> Result<Census> {
    let lagrangians = enumerate_lagrangians(form)?;
    let nonsingular = lagrangians
        .iter()
        .filter(|l| l.left_block_det() != 0)
        .count();
    Ok(Census {
        lagrangians: lagrangians.len(),
        left_block_nonsingular: nonsingular,
        left_block_singular: lagrangians.len() - nonsingular,
        dual_pairs: dual_pair_indices(&lagrangians).len(),
    })
}
