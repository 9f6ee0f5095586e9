//! The triple linking form: the grope intersection-number evaluator and the
//! determinant 3-form on Lagrangians of `(Z/3)^6`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::isotropic::Subspace;
use crate::qmodz::QmodZ;

/// Number of 3-element column subsets of a 6-column matrix.
pub const TRIPLES: usize = 20;

/// Intersection numbers of the second-stage surfaces of a genus `g` rational
/// grope with the curves `y` and `z`: `cy[i] = C_i·y`, `dz[i] = D_i·z`,
/// `cz[i] = C_i·z`, `dy[i] = D_i·y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GropeData {
    pub t: u64,
    pub cy: Vec<i64>,
    pub dz: Vec<i64>,
    pub cz: Vec<i64>,
    pub dy: Vec<i64>,
}

impl GropeData {
    pub fn new(t: u64, cy: Vec<i64>, dz: Vec<i64>, cz: Vec<i64>, dy: Vec<i64>) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidGrope("t must be positive".into()));
        }
        let g = cy.len();
        for (name, list) in [("dz", &dz), ("cz", &cz), ("dy", &dy)] {
            if list.len() != g {
                return Err(Error::InvalidGrope(format!(
                    "{name} has length {}, expected genus {g}",
                    list.len()
                )));
            }
        }
        Ok(GropeData { t, cy, dz, cz, dy })
    }

    pub fn genus(&self) -> usize {
        self.cy.len()
    }

    /// `sum_i (cy_i dz_i - cz_i dy_i)`, the integer numerator over `t`.
    pub fn numerator(&self) -> BigInt {
        (0..self.genus())
            .map(|i| BigInt::from(self.cy[i]) * self.dz[i] - BigInt::from(self.cz[i]) * self.dy[i])
            .sum()
    }

    /// Swaps the roles of `y` and `z`.
    pub fn swapped(&self) -> Self {
        GropeData {
            t: self.t,
            cy: self.cz.clone(),
            dz: self.dy.clone(),
            cz: self.cy.clone(),
            dy: self.dz.clone(),
        }
    }
}

/// `(1/t) sum_i (C_i·y)(D_i·z) - (C_i·z)(D_i·y)` in Q/Z.
pub fn triple_linking_from_grope(data: &GropeData) -> QmodZ {
    QmodZ::new(data.numerator(), data.t)
}

/// The 20 column triples of `{0,..,5}` in lexicographic order (0-based).
pub fn column_triples() -> &'static [[usize; 3]; TRIPLES] {
    static TABLE: OnceLock<[[usize; 3]; TRIPLES]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [[0; 3]; TRIPLES];
        let mut idx = 0;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    out[idx] = [a, b, c];
                    idx += 1;
                }
            }
        }
        out
    })
}

/// A length-20 vector over `F_3` packed as two bit planes: bit `i` of
/// `ones` (resp. `twos`) is set when entry `i` equals 1 (resp. 2).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TritPlanes {
    pub ones: u32,
    pub twos: u32,
}

impl TritPlanes {
    pub fn from_trits(trits: &[u8; TRIPLES]) -> Self {
        let mut p = TritPlanes::default();
        for (i, &t) in trits.iter().enumerate() {
            match t {
                1 => p.ones |= 1 << i,
                2 => p.twos |= 1 << i,
                _ => {}
            }
        }
        p
    }

    /// Dot product mod 3. Products equal to 1 come from matching planes,
    /// products equal to 2 from crossed ones.
    #[inline]
    pub fn dot(self, other: TritPlanes) -> u8 {
        let plus = ((self.ones & other.ones) | (self.twos & other.twos)).count_ones();
        let minus = ((self.ones & other.twos) | (self.twos & other.ones)).count_ones();
        ((plus + 2 * minus) % 3) as u8
    }

    #[inline]
    pub fn dot_is_zero(self, other: TritPlanes) -> bool {
        let plus = ((self.ones & other.ones) | (self.twos & other.twos)).count_ones();
        let minus = ((self.ones & other.twos) | (self.twos & other.ones)).count_ones();
        (plus + 2 * minus).is_multiple_of(3)
    }
}

/// 3x3 minors (mod 3) of a Lagrangian's basis matrix, one per column triple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeterminantVector {
    entries: [u8; TRIPLES],
}

impl DeterminantVector {
    pub fn from_entries(entries: [u8; TRIPLES]) -> Self {
        DeterminantVector {
            entries: entries.map(|e| e % 3),
        }
    }

    pub fn entries(&self) -> &[u8; TRIPLES] {
        &self.entries
    }

    pub fn planes(&self) -> TritPlanes {
        TritPlanes::from_trits(&self.entries)
    }

    /// Entry-by-entry dot product with `v`, mod 3.
    pub fn dot(&self, v: &ObstructionVector) -> u8 {
        let s: u32 = self
            .entries
            .iter()
            .zip(v.entries())
            .map(|(&a, &b)| a as u32 * b as u32)
            .sum();
        (s % 3) as u8
    }
}

impl fmt::Debug for DeterminantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DeterminantVector({:?})", self.entries)
    }
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Minors of an arbitrary `3 x 6` integer basis matrix, mod 3.
pub fn minors_of_basis(rows: &[[i64; 6]; 3]) -> DeterminantVector {
    let mut entries = [0u8; TRIPLES];
    for (e, cols) in entries.iter_mut().zip(column_triples()) {
        let block = [0, 1, 2].map(|r| cols.map(|c| rows[r][c]));
        *e = det3(block).rem_euclid(3) as u8;
    }
    DeterminantVector { entries }
}

fn basis_matrix(l: &Subspace) -> Result<[[i64; 6]; 3]> {
    if l.p() != 3 || l.ambient_dim() != 6 || l.dim() != 3 {
        return Err(Error::NotLagrangianShape {
            p: l.p(),
            n: l.ambient_dim(),
            dim: l.dim(),
        });
    }
    let b = l.basis();
    Ok([0, 1, 2].map(|r| std::array::from_fn(|c| b[r][c] as i64)))
}

/// Minors of the canonical basis of a 3-dimensional subspace of `F_3^6`.
pub fn determinant_vector(l: &Subspace) -> Result<DeterminantVector> {
    Ok(minors_of_basis(&basis_matrix(l)?))
}

/// Coefficient vector in `(Z/3)^20`, one entry per column triple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ObstructionVector {
    entries: [u8; TRIPLES],
}

impl ObstructionVector {
    pub fn zero() -> Self {
        ObstructionVector::default()
    }

    /// `e_i` (0-based).
    pub fn unit(i: usize) -> Self {
        let mut v = ObstructionVector::zero();
        v.entries[i] = 1;
        v
    }

    pub fn from_entries(entries: [u8; TRIPLES]) -> Self {
        ObstructionVector {
            entries: entries.map(|e| e % 3),
        }
    }

    /// Accepts any integers; each is reduced mod 3.
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        if values.len() != TRIPLES {
            return Err(Error::Parse(format!(
                "obstruction vector needs {TRIPLES} entries, got {}",
                values.len()
            )));
        }
        let mut entries = [0u8; TRIPLES];
        for (e, &v) in entries.iter_mut().zip(values) {
            *e = v.rem_euclid(3) as u8;
        }
        Ok(ObstructionVector { entries })
    }

    /// The vector whose base-3 digits, least significant first, are the
    /// entries of `index`.
    pub fn from_index(mut index: u64) -> Self {
        let mut entries = [0u8; TRIPLES];
        for e in entries.iter_mut() {
            *e = (index % 3) as u8;
            index /= 3;
        }
        ObstructionVector { entries }
    }

    pub fn index(&self) -> u64 {
        self.entries
            .iter()
            .rev()
            .fold(0, |acc, &e| acc * 3 + e as u64)
    }

    pub fn entries(&self) -> &[u8; TRIPLES] {
        &self.entries
    }

    /// Entries in `{-1, 0, 1}`.
    pub fn balanced(&self) -> [i8; TRIPLES] {
        self.entries.map(|e| if e == 2 { -1 } else { e as i8 })
    }

    pub fn scaled(&self, k: u8) -> Self {
        ObstructionVector {
            entries: self.entries.map(|e| (e * (k % 3)) % 3),
        }
    }

    pub fn planes(&self) -> TritPlanes {
        TritPlanes::from_trits(&self.entries)
    }
}

impl fmt::Debug for ObstructionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ObstructionVector({self})")
    }
}

impl fmt::Display for ObstructionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.balanced().iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses 20 comma-separated integers, each in `{-1, 0, 1, 2}`.
impl FromStr for ObstructionVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let values = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<i64>() {
                    Ok(v) if (-1..=2).contains(&v) => Ok(v),
                    _ => Err(Error::Parse(format!("bad trit {tok:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        ObstructionVector::from_ints(&values)
    }
}

impl Serialize for ObstructionVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.balanced().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ObstructionVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<i64>::deserialize(deserializer)?;
        if values.iter().any(|v| !(-1..=2).contains(v)) {
            return Err(serde::de::Error::custom("trits must lie in {-1, 0, 1, 2}"));
        }
        ObstructionVector::from_ints(&values).map_err(serde::de::Error::custom)
    }
}

/// `(1/3) <d, v>` in Q/Z.
pub fn triple_form_on_minors(v: &ObstructionVector, d: &DeterminantVector) -> QmodZ {
    QmodZ::new(d.dot(v), 3)
}

/// The triple form of `M_v` on the canonical basis of `l`.
pub fn triple_form_value(v: &ObstructionVector, l: &Subspace) -> Result<QmodZ> {
    Ok(triple_form_on_minors(v, &determinant_vector(l)?))
}

/// The triple form of `M_v` on an explicit (not necessarily canonical) basis.
pub fn triple_form_on_basis(v: &ObstructionVector, rows: &[[i64; 6]; 3]) -> QmodZ {
    triple_form_on_minors(v, &minors_of_basis(rows))
}

pub fn vanishes_on_lagrangian(v: &ObstructionVector, l: &Subspace) -> Result<bool> {
    Ok(triple_form_value(v, l)?.is_zero())
}
