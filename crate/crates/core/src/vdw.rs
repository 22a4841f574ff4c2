//! van der Waerden complexes `vdW(n, k)`: the pure complex on `{1, ..., n}`
//! whose facets are the arithmetic progressions `{i, i+d, ..., i+kd}` with
//! `i + kd ≤ n`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VdwError {
    #[error("parameters must satisfy 0 < k < n <= {MAX_VERTICES}, got n = {n}, k = {k}")]
    InvalidParams { n: usize, k: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Parameters `(n, k)` with `0 < k < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VdwParams {
    n: usize,
    k: usize,
}

impl VdwParams {
    pub fn new(n: usize, k: usize) -> Result<Self, VdwError> {
        if k == 0 || k >= n || n > MAX_VERTICES {
            return Err(VdwError::InvalidParams { n, k });
        }
        Ok(VdwParams { n, k })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn k(self) -> usize {
        self.k
    }

    /// All valid parameter pairs with `n ≤ n_max`, ordered by `n` then `k`.
    pub fn all_up_to(n_max: usize) -> impl Iterator<Item = VdwParams> {
        (2..=n_max.min(MAX_VERTICES)).flat_map(|n| (1..n).map(move |k| VdwParams { n, k }))
    }

    /// Largest increment `d` with `1 + kd ≤ n`.
    pub fn max_increment(self) -> usize {
        (self.n - 1) / self.k
    }

    /// Largest odd increment not exceeding [`Self::max_increment`].
    pub fn max_odd_increment(self) -> usize {
        let d = self.max_increment();
        if d % 2 == 1 {
            d
        } else {
            d - 1
        }
    }

    /// `Σ_{d=1}^{⌊(n-1)/k⌋} (n - kd)`.
    pub fn facet_count(self) -> usize {
        (1..=self.max_increment())
            .map(|d| self.n - self.k * d)
            .sum()
    }
}

/// A facet of `vdW(n, k)` together with the progression that generates it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProgressionFacet {
    pub start: usize,
    pub increment: usize,
    #[serde(rename = "vertices")]
    pub face: Face,
}

impl ProgressionFacet {
    pub fn new(start: usize, increment: usize, k: usize) -> Self {
        let face =
            Face::from_bits((0..=k).fold(0u64, |acc, t| acc | 1u64 << (start + t * increment - 1)));
        ProgressionFacet {
            start,
            increment,
            face,
        }
    }
}

/// Facets of `vdW(n, k)`, ordered by increment and then by start.
pub fn vdw_facets(p: VdwParams) -> Vec<ProgressionFacet> {
    let mut out = Vec::with_capacity(p.facet_count());
    for d in 1..=p.max_increment() {
        for i in 1..=p.n - p.k * d {
            out.push(ProgressionFacet::new(i, d, p.k));
        }
    }
    out
}

/// `vdW(n, k)` as a facet-list complex.
pub fn vdw_complex(p: VdwParams) -> SimplicialComplex {
    let faces = vdw_facets(p).into_iter().map(|f| f.face);
    SimplicialComplex::from_facets(p.n, faces).expect("progression facets lie in 1..=n")
}

/// Predicted properties of `vdW(n, k)` from the closed-form classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub n: usize,
    pub k: usize,
    pub vertex_decomposable: bool,
    pub shellable: bool,
    pub cohen_macaulay: bool,
    pub pure: bool,
}

/// Vertex decomposable (equivalently shellable) exactly when `n ≤ 6`, `k = 1`,
/// or `2k ≥ n`; otherwise pure but not Cohen–Macaulay.
pub fn classify_closed_form(p: VdwParams) -> Classification {
    let (n, k) = (p.n, p.k);
    let vd = n <= 6 || k == 1 || 2 * k >= n;
    let non_cm = n > 6 && k >= 2 && 2 * k < n;
    Classification {
        n,
        k,
        vertex_decomposable: vd,
        shellable: vd,
        cohen_macaulay: !non_cm,
        pure: true,
    }
}

/// Outcome of a brute-force intersection-bound check over facet pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionBoundCheck {
    pub n: usize,
    pub k: usize,
    /// Increment of the distinguished facets `F`.
    pub chosen_increment: usize,
    /// Upper bound asserted for `|F ∩ G|`.
    pub bound: usize,
    pub pairs_checked: usize,
    /// Largest `|F ∩ G|` over all checked pairs.
    pub max_intersection: usize,
    /// Increments of `G` that attain `max_intersection`.
    pub attaining_increments: Vec<usize>,
    /// First pair exceeding the bound, if any.
    pub witness: Option<(ProgressionFacet, ProgressionFacet)>,
}

impl IntersectionBoundCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn check_intersections(p: VdwParams, chosen: usize, bound: usize) -> IntersectionBoundCheck {
    let facets = vdw_facets(p);
    let mut check = IntersectionBoundCheck {
        n: p.n,
        k: p.k,
        chosen_increment: chosen,
        bound,
        pairs_checked: 0,
        max_intersection: 0,
        attaining_increments: Vec::new(),
        witness: None,
    };
    for f in facets.iter().filter(|f| f.increment == chosen) {
        for g in facets.iter().filter(|g| g.increment != chosen) {
            check.pairs_checked += 1;
            let size = f.face.intersection(g.face).len();
            if size > check.max_intersection {
                check.max_intersection = size;
                check.attaining_increments.clear();
            }
            if size == check.max_intersection && !check.attaining_increments.contains(&g.increment)
            {
                check.attaining_increments.push(g.increment);
            }
            if size > bound && check.witness.is_none() {
                check.witness = Some((*f, *g));
            }
        }
    }
    check.attaining_increments.sort_unstable();
    check
}

/// In `vdW(n, 2)` with `n ≥ 7`, a facet with the largest odd increment meets
/// every facet of a different increment in at most one vertex.
pub fn check_odd_increment_bound(n: usize) -> Result<IntersectionBoundCheck, VdwError> {
    if n < 7 {
        return Err(VdwError::Precondition(format!("need n >= 7, got {n}")));
    }
    let p = VdwParams::new(n, 2)?;
    Ok(check_intersections(p, p.max_odd_increment(), 1))
}

/// In `vdW(n, k)` with `n ≥ 7` and `2 < k < n/2`, a facet with the largest
/// increment meets every facet of a different increment in at most `k - 1` vertices.
pub fn check_max_increment_bound(n: usize, k: usize) -> Result<IntersectionBoundCheck, VdwError> {
    if n < 7 || k <= 2 || 2 * k >= n {
        return Err(VdwError::Precondition(format!(
            "need n >= 7 and 2 < k < n/2, got n = {n}, k = {k}"
        )));
    }
    let p = VdwParams::new(n, k)?;
    Ok(check_intersections(p, p.max_increment(), k - 1))
}
