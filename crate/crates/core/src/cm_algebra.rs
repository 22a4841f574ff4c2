//! Squarefree monomial ideals and their first syzygies.
//!
//! Every ideal here is squarefree, so a monomial is just its support:
//! divisibility is containment, `gcd` is intersection and `lcm` is union.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex, MAX_VERTICES};
use crate::vdw::{vdw_complex, vdw_facets, ProgressionFacet, VdwParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the dual ideal of the void complex is undefined")]
    Void,
    #[error("variable count must be in 1..={MAX_VERTICES}, got {0}")]
    InvalidUniverse(usize),
    #[error("variable x{var} is outside x1..x{n}")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("generator {0} divides generator {1}")]
    NotMinimal(usize, usize),
    #[error("generators are not all of the same degree")]
    NotEquigenerated,
    #[error("taylor syzygies need at least one generator")]
    NoGenerators,
    #[error("obstruction needs n > 6 and 2 <= k < n/2, got n = {n}, k = {k}")]
    ObstructionPrecondition { n: usize, k: usize },
    #[error("no facet with an increment other than {0}")]
    NoSecondIncrement(usize),
    #[error("degree bound failed for {f:?} and {g:?}")]
    DegreeBoundFailed {
        f: ProgressionFacet,
        g: ProgressionFacet,
    },
}

/// `∏_{v ∈ support} x_v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SquarefreeMonomial {
    support: Face,
}

impl SquarefreeMonomial {
    pub const ONE: SquarefreeMonomial = SquarefreeMonomial {
        support: Face::EMPTY,
    };

    pub fn new(support: Face) -> Self {
        SquarefreeMonomial { support }
    }

    pub fn support(self) -> Face {
        self.support
    }

    pub fn degree(self) -> usize {
        self.support.len()
    }

    pub fn divides(self, other: SquarefreeMonomial) -> bool {
        self.support.is_subset(other.support)
    }

    pub fn gcd(self, other: SquarefreeMonomial) -> Self {
        Self::new(self.support.intersection(other.support))
    }

    pub fn lcm(self, other: SquarefreeMonomial) -> Self {
        Self::new(self.support.union(other.support))
    }

    /// `self / gcd(self, other)`.
    pub fn quotient_by_gcd(self, other: SquarefreeMonomial) -> Self {
        Self::new(self.support.difference(other.support))
    }

    /// Product when the supports are disjoint, `None` otherwise (the product
    /// would not be squarefree).
    pub fn checked_mul(self, other: SquarefreeMonomial) -> Option<Self> {
        self.support
            .intersection(other.support)
            .is_empty()
            .then(|| Self::new(self.support.union(other.support)))
    }
}

impl fmt::Debug for SquarefreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SquarefreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("1");
        }
        for v in self.support.iter() {
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A monomial ideal given by its minimal generators, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawIdeal")]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<SquarefreeMonomial>,
}

#[derive(Deserialize)]
struct RawIdeal {
    n: usize,
    generators: Vec<Face>,
}

impl TryFrom<RawIdeal> for MonomialIdeal {
    type Error = AlgebraError;

    fn try_from(raw: RawIdeal) -> Result<Self, Self::Error> {
        MonomialIdeal::new(
            raw.n,
            raw.generators.into_iter().map(SquarefreeMonomial::new),
        )
    }
}

impl MonomialIdeal {
    /// Rejects generator lists in which one generator divides another. An
    /// empty list is the zero ideal.
    pub fn new(
        n: usize,
        generators: impl IntoIterator<Item = SquarefreeMonomial>,
    ) -> Result<Self, AlgebraError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(AlgebraError::InvalidUniverse(n));
        }
        let generators: Vec<_> = generators.into_iter().collect();
        let universe = Face::full(n);
        for g in &generators {
            if let Some(var) = g.support.difference(universe).iter().next() {
                return Err(AlgebraError::VariableOutOfRange { var, n });
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for (j, b) in generators.iter().enumerate() {
                if i != j && a.divides(*b) {
                    return Err(AlgebraError::NotMinimal(i, j));
                }
            }
        }
        Ok(MonomialIdeal { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[SquarefreeMonomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// The unit ideal `⟨1⟩`.
    pub fn is_unit(&self) -> bool {
        self.generators == [SquarefreeMonomial::ONE]
    }

    /// Common degree of all generators, if there is one.
    pub fn generator_degree(&self) -> Option<usize> {
        let first = self.generators.first()?.degree();
        self.generators
            .iter()
            .all(|g| g.degree() == first)
            .then_some(first)
    }

    pub fn contains(&self, m: SquarefreeMonomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }
}

/// Stanley–Reisner ideal of the Alexander dual: generated by the complements
/// of the facets, in facet order. The full simplex gives the unit ideal.
pub fn dual_ideal(complex: &SimplicialComplex) -> Result<MonomialIdeal, AlgebraError> {
    if complex.is_void() {
        return Err(AlgebraError::Void);
    }
    let n = complex.n();
    MonomialIdeal::new(
        n,
        complex
            .facets()
            .iter()
            .map(|f| SquarefreeMonomial::new(f.complement(n))),
    )
}

/// The Taylor relation `σ_ji e_i − σ_ij e_j` for generators `i < j`
/// (0-based), where `σ_ij = m_i / gcd(m_i, m_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TaylorSyzygy {
    pub i: usize,
    pub j: usize,
    /// Coefficient on `e_i`.
    pub sigma_ji: SquarefreeMonomial,
    /// Coefficient on `e_j`.
    pub sigma_ij: SquarefreeMonomial,
    /// Support of `lcm(m_i, m_j)`.
    pub multidegree: Face,
    pub linear: bool,
}

impl TaylorSyzygy {
    pub fn of(generators: &[SquarefreeMonomial], i: usize, j: usize) -> Self {
        let (mi, mj) = (generators[i], generators[j]);
        let sigma_ij = mi.quotient_by_gcd(mj);
        let sigma_ji = mj.quotient_by_gcd(mi);
        TaylorSyzygy {
            i,
            j,
            sigma_ji,
            sigma_ij,
            multidegree: mi.lcm(mj).support(),
            linear: sigma_ij.degree() == 1 && sigma_ji.degree() == 1,
        }
    }
}

/// One syzygy per pair `i < j`, in lexicographic pair order.
pub fn taylor_syzygies(ideal: &MonomialIdeal) -> Result<Vec<TaylorSyzygy>, AlgebraError> {
    let g = ideal.generators();
    if g.is_empty() {
        return Err(AlgebraError::NoGenerators);
    }
    Ok((0..g.len())
        .flat_map(|i| (i + 1..g.len()).map(move |j| (i, j)))
        .map(|(i, j)| TaylorSyzygy::of(g, i, j))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearPresentation {
    pub linear: bool,
    /// A Taylor pair outside the submodule spanned by the linear ones.
    pub witness: Option<(usize, usize)>,
}

/// Whether the first syzygy module of an equigenerated ideal is generated by
/// its linear Taylor syzygies.
///
/// In multidegree `a = lcm(m_i, m_j)` the free module has one coordinate per
/// generator dividing `x^a`, and each linear syzygy whose lcm divides `x^a`
/// contributes a difference of two such coordinates. So `t_ij` lies in the
/// linear submodule iff `i` and `j` are joined by a path of linear pairs
/// inside `{p : m_p | x^a}`.
pub fn is_linearly_presented(ideal: &MonomialIdeal) -> Result<LinearPresentation, AlgebraError> {
    let g = ideal.generators();
    if g.is_empty() {
        return Ok(LinearPresentation {
            linear: true,
            witness: None,
        });
    }
    let d = ideal
        .generator_degree()
        .ok_or(AlgebraError::NotEquigenerated)?;
    let s = g.len();
    let linear_pair = |p: usize, q: usize| g[p].lcm(g[q]).degree() == d + 1;
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); s];
    for p in 0..s {
        for q in p + 1..s {
            if linear_pair(p, q) {
                adjacency[p].push(q);
                adjacency[q].push(p);
            }
        }
    }
    for i in 0..s {
        for j in i + 1..s {
            if linear_pair(i, j) {
                continue;
            }
            let a = g[i].lcm(g[j]);
            if !connected_within(&adjacency, g, a, i, j) {
                return Ok(LinearPresentation {
                    linear: false,
                    witness: Some((i, j)),
                });
            }
        }
    }
    Ok(LinearPresentation {
        linear: true,
        witness: None,
    })
}

// Both endpoints of any edge inside {p : m_p | a} have lcm dividing a.
fn connected_within(
    adjacency: &[Vec<usize>],
    g: &[SquarefreeMonomial],
    a: SquarefreeMonomial,
    from: usize,
    to: usize,
) -> bool {
    let mut seen = vec![false; g.len()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(p) = stack.pop() {
        if p == to {
            return true;
        }
        for &q in &adjacency[p] {
            if !seen[q] && g[q].divides(a) {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    false
}

/// A Taylor syzygy of `I_{vdW(n,k)∨}` that cannot be linear, with the degree
/// bookkeeping behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionWitness {
    pub n: usize,
    pub k: usize,
    pub f: ProgressionFacet,
    pub g: ProgressionFacet,
    pub intersection_size: usize,
    pub union_size: usize,
    /// `deg gcd(m_{F^c}, m_{G^c}) = n − |F ∪ G|`.
    pub gcd_degree: usize,
    /// `n − k − 3`, the upper bound on `gcd_degree`.
    pub gcd_degree_bound: usize,
    /// `deg(m_{F^c} / gcd)`.
    pub sigma_fg_degree: usize,
    /// `deg(m_{G^c} / gcd)`.
    pub sigma_gf_degree: usize,
}

/// For `n > 6` and `2 ≤ k < n/2`, picks `F` with the largest increment (the
/// largest odd increment when `k = 2`) and the first `G` with a different
/// increment, and checks that both Taylor coefficients of the pair have
/// degree at least 2. Ties among candidate `F` go to the smallest start.
pub fn nonlinear_obstruction_vdw(p: VdwParams) -> Result<ObstructionWitness, AlgebraError> {
    let (n, k) = (p.n(), p.k());
    if n <= 6 || k < 2 || 2 * k >= n {
        return Err(AlgebraError::ObstructionPrecondition { n, k });
    }
    let chosen = if k == 2 {
        p.max_odd_increment()
    } else {
        p.max_increment()
    };
    let facets = vdw_facets(p);
    let f = *facets
        .iter()
        .filter(|f| f.increment == chosen)
        .min_by_key(|f| f.start)
        .expect("every increment up to the maximum occurs");
    let g = *facets
        .iter()
        .find(|g| g.increment != chosen)
        .ok_or(AlgebraError::NoSecondIncrement(chosen))?;
    let witness = obstruction_for_pair(n, k, f, g);
    if witness.gcd_degree > witness.gcd_degree_bound
        || witness.sigma_fg_degree < 2
        || witness.sigma_gf_degree < 2
    {
        return Err(AlgebraError::DegreeBoundFailed { f, g });
    }
    Ok(witness)
}

/// Degree data for the pair of generators coming from facets `f` and `g`.
pub fn obstruction_for_pair(
    n: usize,
    k: usize,
    f: ProgressionFacet,
    g: ProgressionFacet,
) -> ObstructionWitness {
    let mf = SquarefreeMonomial::new(f.face.complement(n));
    let mg = SquarefreeMonomial::new(g.face.complement(n));
    let gcd = mf.gcd(mg);
    ObstructionWitness {
        n,
        k,
        f,
        g,
        intersection_size: f.face.intersection(g.face).len(),
        union_size: f.face.union(g.face).len(),
        gcd_degree: gcd.degree(),
        gcd_degree_bound: n.saturating_sub(k + 3),
        sigma_fg_degree: mf.quotient_by_gcd(mg).degree(),
        sigma_gf_degree: mg.quotient_by_gcd(mf).degree(),
    }
}

/// `dual_ideal(vdW(n, k))`.
pub fn vdw_dual_ideal(p: VdwParams) -> MonomialIdeal {
    dual_ideal(&vdw_complex(p)).expect("vdW complexes are not void")
}
