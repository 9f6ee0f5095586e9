use crate::error::{Error, Result};
use crate::isotropic::{dual_pair_indices, enumerate_lagrangians, Subspace};
use crate::linking::LinkingForm;
use crate::tripleform::{determinant_vector, DeterminantVector, TritPlanes};

/// Everything the obstruction search needs about one form on `(Z/3)^6`:
/// its Lagrangians, their determinant vectors, and the dual pairs among
/// them. Immutable once built.
#[derive(Clone, Debug)]
pub struct SearchContext {
    lagrangians: Vec<Subspace>,
    det_vectors: Vec<DeterminantVector>,
    dual_pairs: Vec<(usize, usize)>,
    planes: Vec<TritPlanes>,
    /// `partners[i]`: bitset of the indices paired with `i`.
    partners: Vec<Vec<u64>>,
}

pub fn build_context(form: &LinkingForm) -> Result<SearchContext> {
    let group = form.group();
    if group.elementary_prime() != Some(3) || group.rank() != 6 {
        return Err(Error::UnsupportedForm(format!(
            "determinant vectors need (Z/3)^6, got invariant factors {:?}",
            group
                .invariant_factors()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        )));
    }
    let lagrangians = enumerate_lagrangians(form)?;
    let det_vectors = lagrangians
        .iter()
        .map(determinant_vector)
        .collect::<Result<Vec<_>>>()?;
    let dual_pairs = dual_pair_indices(&lagrangians);
    Ok(SearchContext::assemble(
        lagrangians,
        det_vectors,
        dual_pairs,
    ))
}

impl SearchContext {
    /// A context from bare determinant vectors and pair indices, without
    /// underlying subspaces. Pairs are normalised to `i < j`, sorted and
    /// deduplicated.
    pub fn synthetic(
        det_vectors: Vec<DeterminantVector>,
        dual_pairs: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let m = det_vectors.len();
        let mut pairs = Vec::with_capacity(dual_pairs.len());
        for (i, j) in dual_pairs {
            if i >= m || j >= m || i == j {
                return Err(Error::Parse(format!(
                    "pair ({i}, {j}) is not a pair of distinct indices below {m}"
                )));
            }
            pairs.push((i.min(j), i.max(j)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(SearchContext::assemble(vec![], det_vectors, pairs))
    }

    fn assemble(
        lagrangians: Vec<Subspace>,
        det_vectors: Vec<DeterminantVector>,
        dual_pairs: Vec<(usize, usize)>,
    ) -> Self {
        let m = det_vectors.len();
        let words = m.div_ceil(64);
        let mut partners = vec![vec![0u64; words]; m];
        for &(i, j) in &dual_pairs {
            partners[i][j / 64] |= 1 << (j % 64);
            partners[j][i / 64] |= 1 << (i % 64);
        }
        let planes = det_vectors.iter().map(DeterminantVector::planes).collect();
        SearchContext {
            lagrangians,
            det_vectors,
            dual_pairs,
            planes,
            partners,
        }
    }

    /// Empty for synthetic contexts.
    pub fn lagrangians(&self) -> &[Subspace] {
        &self.lagrangians
    }

    pub fn det_vectors(&self) -> &[DeterminantVector] {
        &self.det_vectors
    }

    pub fn dual_pairs(&self) -> &[(usize, usize)] {
        &self.dual_pairs
    }

    pub(crate) fn planes(&self) -> &[TritPlanes] {
        &self.planes
    }

    /// Bitset (64-bit words) of indices whose determinant vector is
    /// orthogonal to `v`, written into `zeros`.
    pub(crate) fn vanishing_set(&self, v: TritPlanes, zeros: &mut Vec<u64>) {
        zeros.clear();
        zeros.resize(self.det_vectors.len().div_ceil(64), 0);
        for (i, d) in self.planes.iter().enumerate() {
            if d.dot_is_zero(v) {
                zeros[i / 64] |= 1 << (i % 64);
            }
        }
    }

    /// Obstructed iff no dual pair lies inside the vanishing set.
    pub(crate) fn obstructed_with(&self, v: TritPlanes, zeros: &mut Vec<u64>) -> bool {
        self.vanishing_set(v, zeros);
        for (w, &word) in zeros.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let i = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if self.partners[i]
                    .iter()
                    .zip(zeros.iter())
                    .any(|(a, b)| a & b != 0)
                {
                    return false;
                }
            }
        }
        true
    }
}
