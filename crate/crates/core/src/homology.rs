//! Reduced simplicial homology over ℚ and prime fields, and the
//! Cohen–Macaulay test on links of faces.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("homology is undefined for the void complex")]
    Void,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unrecognised field {0:?}, expected Q, F2 or Fp:<prime>")]
    BadField(String),
}

/// Coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub const F2: Field = Field::Prime(2);

    pub fn prime(p: u64) -> Result<Self, HomologyError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(HomologyError::NotPrime(p))
        }
    }

    fn validate(self) -> Result<(), HomologyError> {
        match self {
            Field::Prime(p) if !is_prime(p) => Err(HomologyError::NotPrime(p)),
            _ => Ok(()),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = HomologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("fp:"))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| HomologyError::BadField(s.to_string()))?;
        let p = digits
            .parse::<u64>()
            .map_err(|_| HomologyError::BadField(s.to_string()))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Boundary map from `size`-faces to `(size-1)`-faces, stored densely.
/// Entry `(r, c)` is `(-1)^t` when row face `r` is column face `c` minus its
/// `t`-th vertex (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
}

impl BoundaryMatrix {
    pub fn build(lower: &[Face], upper: &[Face]) -> Self {
        let rows = lower.len();
        let cols = upper.len();
        let mut entries = vec![0i64; rows * cols];
        for (c, f) in upper.iter().enumerate() {
            for (t, v) in f.iter().enumerate() {
                let g = f.without(v);
                let r = lower
                    .binary_search(&g)
                    .expect("boundary face missing from lower face list");
                entries[r * cols + c] = if t % 2 == 0 { 1 } else { -1 };
            }
        }
        BoundaryMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    /// `self · other`.
    pub fn compose(&self, other: &BoundaryMatrix) -> Vec<i64> {
        assert_eq!(self.cols, other.rows);
        let mut out = vec![0i64; self.rows * other.cols];
        for r in 0..self.rows {
            for m in 0..self.cols {
                let a = self.get(r, m);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[r * other.cols + c] += a * other.get(m, c);
                }
            }
        }
        out
    }

    pub fn rank(&self, field: Field) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match field {
            Field::Rational => rank_rational(self.rows, self.cols, &self.entries),
            Field::Prime(p) => rank_mod_p(self.rows, self.cols, &self.entries, p),
        }
    }
}

/// Rank over ℚ by fraction-free (Bareiss) elimination. Runs in `i64` and
/// restarts with big integers if an intermediate value overflows.
pub fn rank_rational(rows: usize, cols: usize, entries: &[i64]) -> usize {
    bareiss_i64(rows, cols, entries).unwrap_or_else(|| bareiss_big(rows, cols, entries))
}

fn bareiss_i64(rows: usize, cols: usize, entries: &[i64]) -> Option<usize> {
    let mut a: Vec<i64> = entries.to_vec();
    let mut prev = 1i64;
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let p = a[rank * cols + c];
        for r in rank + 1..rows {
            let f = a[r * cols + c];
            for j in c + 1..cols {
                let v = p
                    .checked_mul(a[r * cols + j])?
                    .checked_sub(f.checked_mul(a[rank * cols + j])?)?;
                a[r * cols + j] = v / prev;
            }
            a[r * cols + c] = 0;
        }
        prev = p;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn bareiss_big(rows: usize, cols: usize, entries: &[i64]) -> usize {
    let mut a: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let p = a[rank * cols + c].clone();
        for r in rank + 1..rows {
            let f = a[r * cols + c].clone();
            for j in c + 1..cols {
                let v = &p * &a[r * cols + j] - &f * &a[rank * cols + j];
                a[r * cols + j] = v / &prev;
            }
            a[r * cols + c] = BigInt::zero();
        }
        debug_assert!(!p.abs().is_zero());
        prev = p;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank over `F_p` by Gaussian elimination.
pub fn rank_mod_p(rows: usize, cols: usize, entries: &[i64], p: u64) -> usize {
    let reduce = |x: i64| x.rem_euclid(p as i64) as u64;
    let mut a: Vec<u64> = entries.iter().map(|&x| reduce(x)).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = mod_pow(a[rank * cols + c], p - 2, p);
        for r in rank + 1..rows {
            let f = a[r * cols + c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f * a[rank * cols + j] % p;
                a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Reduced Betti numbers `dim H̃_i` for `i = -1, ..., dim Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub field: Field,
    /// `betti[i + 1] = dim H̃_i`.
    pub betti: Vec<usize>,
}

impl HomologyProfile {
    /// `dim H̃_i`, zero outside the stored range.
    pub fn betti(&self, i: isize) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|idx| self.betti.get(idx).copied())
            .unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    /// `Σ (-1)^i dim H̃_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(idx, &b)| if idx % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl Serialize for HomologyProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Betti<'a>(&'a [usize]);
        impl Serialize for Betti<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (idx, b) in self.0.iter().enumerate() {
                    map.serialize_entry(&(idx as isize - 1).to_string(), b)?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("field", &self.field)?;
        map.serialize_entry("betti", &Betti(&self.betti))?;
        map.end()
    }
}

/// Boundary matrices of the augmented chain complex. Element `s - 1` maps
/// `s`-faces to `(s-1)`-faces, so the first one is the augmentation onto `∅`.
pub fn boundary_matrices(complex: &SimplicialComplex) -> Vec<BoundaryMatrix> {
    let faces = complex.faces_by_size();
    faces
        .windows(2)
        .map(|w| BoundaryMatrix::build(&w[0], &w[1]))
        .collect()
}

/// Reduced homology of a non-void complex.
pub fn reduced_homology(
    complex: &SimplicialComplex,
    field: Field,
) -> Result<HomologyProfile, HomologyError> {
    field.validate()?;
    if complex.is_void() {
        return Err(HomologyError::Void);
    }
    let faces = complex.faces_by_size();
    let ranks: Vec<usize> = faces
        .windows(2)
        .map(|w| BoundaryMatrix::build(&w[0], &w[1]).rank(field))
        .collect();
    // faces[s] are the (s-1)-dimensional faces; ranks[s-1] is the rank of the map out of them.
    let betti = (0..faces.len())
        .map(|s| {
            let out_rank = if s == 0 { 0 } else { ranks[s - 1] };
            let in_rank = ranks.get(s).copied().unwrap_or(0);
            faces[s].len() - out_rank - in_rank
        })
        .collect();
    Ok(HomologyProfile { field, betti })
}

/// Why a complex fails the Cohen–Macaulay test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum CmWitness {
    NotPure,
    /// `dim H̃_degree(lk F) ≠ 0` with `degree < dim lk F`.
    Homology {
        face: Face,
        degree: isize,
        betti: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmOutcome {
    pub cohen_macaulay: bool,
    pub witness: Option<CmWitness>,
}

fn check_link(
    complex: &SimplicialComplex,
    face: Face,
    field: Field,
) -> Result<Option<CmWitness>, HomologyError> {
    let link = complex.link_face(face);
    let dim = link
        .dimension()
        .expect("faces of the complex have non-void links");
    let profile = reduced_homology(&link, field)?;
    Ok((-1..dim).find_map(|i| {
        let b = profile.betti(i);
        (b != 0).then_some(CmWitness::Homology {
            face,
            degree: i,
            betti: b,
        })
    }))
}

/// Cohen–Macaulay over `field`: every link `lk F` (including `lk ∅ = Δ`) has
/// vanishing reduced homology below its dimension. Nonpure input is reported
/// as not Cohen–Macaulay.
///
/// For a pure complex only `∅` and faces whose link has dimension at least 1
/// can fail, so only those are examined, smallest first.
pub fn is_cohen_macaulay(
    complex: &SimplicialComplex,
    field: Field,
) -> Result<CmOutcome, HomologyError> {
    field.validate()?;
    let Some(dim) = complex.dimension() else {
        return Err(HomologyError::Void);
    };
    if !complex.is_pure() {
        return Ok(CmOutcome {
            cohen_macaulay: false,
            witness: Some(CmWitness::NotPure),
        });
    }
    let faces = complex.faces_by_size();
    // dim lk F = dim Δ - |F| for pure Δ.
    let max_size = (dim - 1).max(0) as usize;
    for size_faces in faces.iter().take(max_size + 1) {
        for &face in size_faces {
            if let Some(w) = check_link(complex, face, field)? {
                return Ok(CmOutcome {
                    cohen_macaulay: false,
                    witness: Some(w),
                });
            }
        }
    }
    Ok(CmOutcome {
        cohen_macaulay: true,
        witness: None,
    })
}

/// Same criterion, checked at every face without the purity shortcut. Used to
/// cross-check [`is_cohen_macaulay`].
pub fn is_cohen_macaulay_naive(
    complex: &SimplicialComplex,
    field: Field,
) -> Result<bool, HomologyError> {
    field.validate()?;
    if complex.is_void() {
        return Err(HomologyError::Void);
    }
    if !complex.is_pure() {
        return Ok(false);
    }
    for face in complex.faces_by_size().into_iter().flatten() {
        if check_link(complex, face, field)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_{F ∈ Δ} (-1)^{dim F}`, counting `∅` with dimension -1.
pub fn reduced_euler_characteristic(complex: &SimplicialComplex) -> i64 {
    complex
        .faces_by_size()
        .iter()
        .enumerate()
        .map(|(s, fs)| {
            if s % 2 == 1 {
                fs.len() as i64
            } else {
                -(fs.len() as i64)
            }
        })
        .sum()
}
