//! Vertex decomposability and shellability, each decided exactly and backed
//! by a certificate that can be replayed independently of the search.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("complex is not pure")]
    NotPure,
    #[error("complex is void")]
    Void,
    #[error("order is not a permutation of the facets")]
    NotAPermutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafKind {
    Void,
    Empty,
    Simplex,
}

/// Certificate of vertex decomposability: a binary tree of link/deletion steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SheddingTree {
    Leaf {
        leaf: LeafKind,
        facets: Vec<Face>,
    },
    Node {
        vertex: usize,
        link: Box<SheddingTree>,
        deletion: Box<SheddingTree>,
    },
}

impl SheddingTree {
    /// Shedding vertices along the deletion spine, starting at the root.
    pub fn deletion_spine(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut node = self;
        while let SheddingTree::Node {
            vertex, deletion, ..
        } = node
        {
            out.push(*vertex);
            node = deletion;
        }
        out
    }

    /// Recomputes every link and deletion from `complex` and re-checks each
    /// leaf against the base cases.
    pub fn replay(&self, complex: &SimplicialComplex) -> bool {
        if !complex.is_pure() {
            return false;
        }
        match self {
            SheddingTree::Leaf { leaf, facets } => {
                let kind_ok = match leaf {
                    LeafKind::Void => complex.is_void(),
                    LeafKind::Empty => complex.is_empty_complex(),
                    LeafKind::Simplex => complex.is_simplex(),
                };
                kind_ok && facets.as_slice() == complex.facets()
            }
            SheddingTree::Node {
                vertex,
                link,
                deletion,
            } => {
                if !complex.support().contains(*vertex) {
                    return false;
                }
                let (Ok(lk), Ok(del)) = (complex.link(*vertex), complex.deletion(*vertex)) else {
                    return false;
                };
                link.replay(&lk) && deletion.replay(&del)
            }
        }
    }
}

fn base_case(complex: &SimplicialComplex) -> Option<LeafKind> {
    if complex.is_void() {
        Some(LeafKind::Void)
    } else if complex.is_empty_complex() {
        Some(LeafKind::Empty)
    } else if complex.is_simplex() {
        Some(LeafKind::Simplex)
    } else {
        None
    }
}

/// Facet list relabelled onto `1..=|support|`, order-preserving. Isomorphic
/// subcomplexes arising from different vertex sets then share a memo entry.
fn memo_key(complex: &SimplicialComplex) -> Vec<u64> {
    let support = complex.support();
    let compact = |f: Face| -> u64 {
        let mut out = 0u64;
        for (pos, v) in support.iter().enumerate() {
            if f.contains(v) {
                out |= 1 << pos;
            }
        }
        out
    };
    let mut key: Vec<Face> = complex
        .facets()
        .iter()
        .map(|&f| Face::from_bits(compact(f)))
        .collect();
    key.sort_unstable();
    key.into_iter().map(Face::bits).collect()
}

#[derive(Default)]
struct VdSearch {
    memo: HashMap<Vec<u64>, bool>,
}

impl VdSearch {
    // Candidates are support vertices in descending order whose link and deletion
    // are both pure.
    fn candidates(
        complex: &SimplicialComplex,
    ) -> impl Iterator<Item = (usize, SimplicialComplex, SimplicialComplex)> + '_ {
        let mut vertices = complex.support().to_vec();
        vertices.reverse();
        vertices.into_iter().filter_map(move |x| {
            let lk = complex.link_face(Face::singleton(x));
            let del = complex.deletion_unchecked(x);
            (lk.is_pure() && del.is_pure()).then_some((x, lk, del))
        })
    }

    fn decide(&mut self, complex: &SimplicialComplex) -> bool {
        if base_case(complex).is_some() {
            return true;
        }
        let key = memo_key(complex);
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let result = Self::candidates(complex)
            .collect::<Vec<_>>()
            .into_iter()
            .any(|(_, lk, del)| self.decide(&lk) && self.decide(&del));
        self.memo.insert(key, result);
        result
    }

    // Only called on complexes already decided true.
    fn build(&mut self, complex: &SimplicialComplex) -> SheddingTree {
        if let Some(leaf) = base_case(complex) {
            return SheddingTree::Leaf {
                leaf,
                facets: complex.facets().to_vec(),
            };
        }
        let candidates: Vec<_> = Self::candidates(complex).collect();
        for (x, lk, del) in candidates {
            if self.decide(&lk) && self.decide(&del) {
                return SheddingTree::Node {
                    vertex: x,
                    link: Box::new(self.build(&lk)),
                    deletion: Box::new(self.build(&del)),
                };
            }
        }
        unreachable!("build called on a complex that is not vertex decomposable")
    }
}

/// Decides vertex decomposability, trying shedding vertices from the largest
/// index down. Returns the certificate on success.
pub fn is_vertex_decomposable(
    complex: &SimplicialComplex,
) -> Result<Option<SheddingTree>, DecompError> {
    if !complex.is_pure() {
        return Err(DecompError::NotPure);
    }
    let mut search = VdSearch::default();
    if search.decide(complex) {
        Ok(Some(search.build(complex)))
    } else {
        Ok(None)
    }
}

/// A facet order claimed to be a shelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingOrder {
    pub order: Vec<Face>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShellabilityOutcome {
    Shellable(ShellingOrder),
    NotShellable,
    /// The node budget ran out before the search finished.
    Undecided {
        nodes: u64,
    },
}

impl ShellabilityOutcome {
    pub fn is_shellable(&self) -> Option<bool> {
        match self {
            ShellabilityOutcome::Shellable(_) => Some(true),
            ShellabilityOutcome::NotShellable => Some(false),
            ShellabilityOutcome::Undecided { .. } => None,
        }
    }
}

/// Default cap on search nodes for [`is_shellable`].
pub const DEFAULT_SHELLING_BUDGET: u64 = 20_000_000;

type FacetSet = Vec<u64>;

fn set_insert(set: &mut FacetSet, i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn set_remove(set: &mut FacetSet, i: usize) {
    set[i / 64] &= !(1 << (i % 64));
}

fn set_contains(set: &FacetSet, i: usize) -> bool {
    set[i / 64] & (1 << (i % 64)) != 0
}

/// Whether `next` may follow `placed` in a shelling, given `shed`: the vertices
/// `x ∈ next` for which `next \ {x}` lies in some placed facet. The condition is
/// that `next \ P` meets `shed` for every placed `P`.
fn extends(placed: &[Face], next: Face, shed: Face) -> bool {
    placed
        .iter()
        .all(|p| !next.difference(*p).intersection(shed).is_empty())
}

/// Shedding set of `next` with respect to `placed`, computed from scratch.
pub(crate) fn shed_set(placed: &[Face], next: Face) -> Face {
    placed
        .iter()
        .map(|p| next.difference(*p))
        .filter(|d| d.len() == 1)
        .fold(Face::EMPTY, |acc, d| acc.union(d))
}

/// Whether `next` can be appended to the shelling prefix `placed`.
pub fn can_extend(placed: &[Face], next: Face) -> bool {
    extends(placed, next, shed_set(placed, next))
}

struct ShellSearch<'a> {
    facets: &'a [Face],
    budget: u64,
    nodes: u64,
    dead: HashSet<FacetSet>,
    order: Vec<usize>,
    placed_faces: Vec<Face>,
    placed: FacetSet,
    shed: Vec<Face>,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl ShellSearch<'_> {
    fn dfs(&mut self) -> Step {
        let s = self.facets.len();
        if self.order.len() == s {
            return Step::Found;
        }
        if self.dead.contains(&self.placed) {
            return Step::Exhausted;
        }
        for j in 0..s {
            if set_contains(&self.placed, j) {
                continue;
            }
            let f = self.facets[j];
            if !extends(&self.placed_faces, f, self.shed[j]) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            let saved = self.shed.clone();
            for (i, &g) in self.facets.iter().enumerate() {
                if !set_contains(&self.placed, i) && i != j {
                    let d = g.difference(f);
                    if d.len() == 1 {
                        self.shed[i] = self.shed[i].union(d);
                    }
                }
            }
            set_insert(&mut self.placed, j);
            self.order.push(j);
            self.placed_faces.push(f);
            match self.dfs() {
                Step::Exhausted => {}
                other => return other,
            }
            self.placed_faces.pop();
            self.order.pop();
            set_remove(&mut self.placed, j);
            self.shed = saved;
        }
        // Extendability depends only on the set of placed facets, not their order.
        self.dead.insert(self.placed.clone());
        Step::Exhausted
    }
}

/// Searches for a shelling order by backtracking over prefixes, memoizing
/// facet sets that cannot be completed. `budget` caps the number of facet
/// placements tried.
pub fn is_shellable(
    complex: &SimplicialComplex,
    budget: u64,
) -> Result<ShellabilityOutcome, DecompError> {
    if complex.is_void() {
        return Err(DecompError::Void);
    }
    if !complex.is_pure() {
        return Err(DecompError::NotPure);
    }
    let facets = complex.facets();
    let words = facets.len().div_ceil(64);
    let mut search = ShellSearch {
        facets,
        budget,
        nodes: 0,
        dead: HashSet::new(),
        order: Vec::with_capacity(facets.len()),
        placed_faces: Vec::with_capacity(facets.len()),
        placed: vec![0; words],
        shed: vec![Face::EMPTY; facets.len()],
    };
    Ok(match search.dfs() {
        Step::Found => ShellabilityOutcome::Shellable(ShellingOrder {
            order: search.order.iter().map(|&i| facets[i]).collect(),
        }),
        Step::Exhausted => ShellabilityOutcome::NotShellable,
        Step::OutOfBudget => ShellabilityOutcome::Undecided {
            nodes: search.nodes,
        },
    })
}

/// Checks the shelling condition pair by pair: for all `i < j` there are
/// `x ∈ F_j \ F_i` and `ℓ < j` with `F_j \ F_ℓ = {x}`.
pub fn verify_shelling(
    complex: &SimplicialComplex,
    order: &ShellingOrder,
) -> Result<bool, DecompError> {
    let mut given = order.order.clone();
    given.sort_unstable();
    if given != complex.facets() {
        return Err(DecompError::NotAPermutation);
    }
    let f = &order.order;
    for j in 1..f.len() {
        for i in 0..j {
            let ok = f[j].difference(f[i]).iter().any(|x| {
                let single = Face::singleton(x);
                (0..j).any(|l| f[j].difference(f[l]) == single)
            });
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
