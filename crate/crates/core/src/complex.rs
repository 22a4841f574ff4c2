//! Faces and facet-list simplicial complexes.
//!
//! A [`Face`] is a set of vertex indices in `1..=64` stored as a bitmask, so
//! containment, union and intersection are single word operations. A
//! [`SimplicialComplex`] stores only its facets, kept inclusion-incomparable
//! and in canonical (lexicographic) order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported vertex index.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex universe size must be in 1..={MAX_VERTICES}, got {0}")]
    InvalidUniverse(usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate vertex {0} in face")]
    DuplicateVertex(usize),
    #[error("operation is undefined on the void complex")]
    Void,
    #[error("the full simplex on {0} vertices has no non-faces, its Alexander dual is void")]
    FullSimplex(usize),
}

/// A finite set of vertices, bit `v - 1` set for vertex `v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds a face from vertex indices in any order. Duplicates are rejected.
    pub fn new(vertices: &[usize]) -> Result<Self, ComplexError> {
        let mut bits = 0u64;
        for &v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return Err(ComplexError::VertexOutOfRange {
                    vertex: v,
                    n: MAX_VERTICES,
                });
            }
            let bit = 1u64 << (v - 1);
            if bits & bit != 0 {
                return Err(ComplexError::DuplicateVertex(v));
            }
            bits |= bit;
        }
        Ok(Face(bits))
    }

    /// The full vertex set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Face(1u64 << (v - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|F| - 1`; the empty face has dimension -1.
    pub fn dimension(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> Face {
        self.union(Face::singleton(v))
    }

    pub fn without(self, v: usize) -> Face {
        self.difference(Face::singleton(v))
    }

    /// Complement inside `{1, ..., n}`.
    pub fn complement(self, n: usize) -> Face {
        Face::full(n).difference(self)
    }

    /// Largest vertex, if any.
    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of this face, including the empty face and the face itself.
    pub fn subfaces(self) -> impl Iterator<Item = Face> {
        let mask = self.0;
        let mut sub = mask;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Face(sub);
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & mask;
            }
            Some(out)
        })
    }
}

/// Iterator over the vertices of a face in increasing order.
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Vertices {}

impl Ord for Face {
    /// Lexicographic order on increasing vertex sequences, so `{1,2,3} < {1,3,5} < {2,3,4}`
    /// and a proper prefix sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Both sequences agree below the smallest differing vertex v. The set holding v
        // is smaller, unless the other sequence has already ended there.
        let low = diff & diff.wrapping_neg();
        let at_or_above = !(low - 1);
        let (holder, other) = if self.0 & low != 0 {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        if other & at_or_above == 0 {
            holder.reverse()
        } else {
            holder
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        Face::new(&vertices).map_err(serde::de::Error::custom)
    }
}

/// A simplicial complex on `{1, ..., n}` given by its facets.
///
/// The void complex has no facets at all; the empty complex has the single
/// facet `∅`. Both are representable and distinct.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawComplex")]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

#[derive(Deserialize)]
struct RawComplex {
    n: usize,
    facets: Vec<Face>,
}

impl TryFrom<RawComplex> for SimplicialComplex {
    type Error = ComplexError;

    fn try_from(raw: RawComplex) -> Result<Self, Self::Error> {
        SimplicialComplex::from_facets(raw.n, raw.facets)
    }
}

impl SimplicialComplex {
    /// Complex generated by `faces`: non-maximal faces are absorbed and the
    /// facet list is sorted canonically.
    pub fn from_facets(
        n: usize,
        faces: impl IntoIterator<Item = Face>,
    ) -> Result<Self, ComplexError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(ComplexError::InvalidUniverse(n));
        }
        let universe = Face::full(n);
        let mut faces: Vec<Face> = faces.into_iter().collect();
        if let Some(bad) = faces.iter().find(|f| !f.is_subset(universe)) {
            let vertex = bad.difference(universe).iter().next().unwrap_or(0);
            return Err(ComplexError::VertexOutOfRange { vertex, n });
        }
        Ok(Self::absorb(n, &mut faces))
    }

    /// Convenience constructor from vertex lists.
    pub fn from_vertex_lists<L: AsRef<[usize]>>(
        n: usize,
        lists: impl IntoIterator<Item = L>,
    ) -> Result<Self, ComplexError> {
        let faces = lists
            .into_iter()
            .map(|l| Face::new(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_facets(n, faces)
    }

    pub fn void(n: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&n));
        SimplicialComplex {
            n,
            facets: Vec::new(),
        }
    }

    pub fn empty(n: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&n));
        SimplicialComplex {
            n,
            facets: vec![Face::EMPTY],
        }
    }

    /// The full simplex on `{1, ..., n}`.
    pub fn simplex(n: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&n));
        SimplicialComplex {
            n,
            facets: vec![Face::full(n)],
        }
    }

    // Faces must already be inside the universe.
    pub(crate) fn absorb(n: usize, faces: &mut Vec<Face>) -> Self {
        faces.sort_unstable_by_key(|f| std::cmp::Reverse(f.len()));
        faces.dedup();
        let mut facets: Vec<Face> = Vec::with_capacity(faces.len());
        for &f in faces.iter() {
            if !facets.iter().any(|g| f.is_subset(*g)) {
                facets.push(f);
            }
        }
        facets.sort_unstable();
        SimplicialComplex { n, facets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets == [Face::EMPTY]
    }

    /// True for a single facet (a simplex on its own support, including `⟨∅⟩`).
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    pub fn is_full_simplex(&self) -> bool {
        self.facets == [Face::full(self.n)]
    }

    /// Maximum facet dimension; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.dimension()).max()
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.split_first() {
            None => true,
            Some((first, rest)) => rest.iter().all(|f| f.len() == first.len()),
        }
    }

    /// Union of all facets.
    pub fn support(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    fn check_vertex(&self, x: usize) -> Result<(), ComplexError> {
        if x == 0 || x > self.n {
            Err(ComplexError::VertexOutOfRange {
                vertex: x,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// `lk(x)`; void when `x` lies in no face.
    pub fn link(&self, x: usize) -> Result<Self, ComplexError> {
        self.check_vertex(x)?;
        Ok(self.link_face(Face::singleton(x)))
    }

    /// Link of an arbitrary face: `{H : H ∩ F = ∅, H ∪ F ∈ Δ}`. Void when `face ∉ Δ`.
    pub fn link_face(&self, face: Face) -> Self {
        // Facets containing `face` stay incomparable after removing it.
        let facets = self
            .facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| f.difference(face))
            .collect();
        SimplicialComplex { n: self.n, facets }
    }

    /// `del(x)`: all faces avoiding `x`.
    pub fn deletion(&self, x: usize) -> Result<Self, ComplexError> {
        self.check_vertex(x)?;
        Ok(self.deletion_unchecked(x))
    }

    pub(crate) fn deletion_unchecked(&self, x: usize) -> Self {
        if !self.support().contains(x) {
            return self.clone();
        }
        let mut faces: Vec<Face> = self.facets.iter().map(|f| f.without(x)).collect();
        Self::absorb(self.n, &mut faces)
    }

    /// Whether the vertices occurring in facets form one component, where facets
    /// sharing a vertex are joined. The empty complex is connected.
    pub fn is_connected(&self) -> Result<bool, ComplexError> {
        if self.is_void() {
            return Err(ComplexError::Void);
        }
        let support = self.support();
        let Some(start) = support.iter().next() else {
            return Ok(true);
        };
        let mut reached = Face::singleton(start);
        loop {
            let grown = self
                .facets
                .iter()
                .filter(|f| !f.intersection(reached).is_empty())
                .fold(reached, |acc, f| acc.union(*f));
            if grown == reached {
                return Ok(reached == support);
            }
            reached = grown;
        }
    }

    /// Inclusion-minimal subsets of `{1, ..., n}` lying in no facet, canonically sorted.
    pub fn minimal_nonfaces(&self) -> Result<Vec<Face>, ComplexError> {
        let dim = self.dimension().ok_or(ComplexError::Void)?;
        // A minimal non-face minus any vertex is a face, so its size is at most dim + 2.
        let max_size = ((dim + 2).max(0) as usize).min(self.n);
        let mut found: Vec<Face> = Vec::new();
        for size in 1..=max_size {
            for cand in subsets_of_size(self.n, size) {
                if found.iter().any(|m| m.is_subset(cand)) || self.contains_face(cand) {
                    continue;
                }
                found.push(cand);
            }
        }
        found.sort_unstable();
        Ok(found)
    }

    /// `Δ∨`, whose facets are complements of the minimal non-faces of `Δ`.
    pub fn alexander_dual(&self) -> Result<Self, ComplexError> {
        if self.is_void() {
            return Err(ComplexError::Void);
        }
        if self.is_full_simplex() {
            return Err(ComplexError::FullSimplex(self.n));
        }
        let mut faces: Vec<Face> = self
            .minimal_nonfaces()?
            .into_iter()
            .map(|m| m.complement(self.n))
            .collect();
        Ok(Self::absorb(self.n, &mut faces))
    }

    /// Every face of the complex, grouped by size: `result[s]` holds the faces
    /// with `s` vertices in canonical order.
    pub fn faces_by_size(&self) -> Vec<Vec<Face>> {
        let Some(dim) = self.dimension() else {
            return Vec::new();
        };
        let mut all: Vec<Face> = self.facets.iter().flat_map(|f| f.subfaces()).collect();
        all.sort_unstable();
        all.dedup();
        let mut out = vec![Vec::new(); (dim + 2) as usize];
        for f in all {
            out[f.len()].push(f);
        }
        out
    }
}

/// All `size`-subsets of `{1, ..., n}` in increasing bit order (Gosper's hack).
pub fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = Face> {
    let limit = if n >= 64 { None } else { Some(1u64 << n) };
    let mut next = if size > n {
        None
    } else if size == 0 {
        Some(0u64)
    } else if size == 64 {
        Some(u64::MAX)
    } else {
        Some((1u64 << size) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.checked_add(c);
            match r {
                None => None,
                Some(r) => {
                    let nxt = (((r ^ cur) >> 2) / c) | r;
                    match limit {
                        Some(l) if nxt >= l => None,
                        _ => Some(nxt),
                    }
                }
            }
        };
        Some(Face(cur))
    })
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{facet:?}")?;
        }
        write!(f, "⟩ on {}", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, lists: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_vertex_lists(n, lists.iter().copied()).unwrap()
    }

    fn vdw52() -> SimplicialComplex {
        cx(5, &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[1, 3, 5]])
    }

    fn vdw62() -> SimplicialComplex {
        cx(
            6,
            &[
                &[1, 2, 3],
                &[2, 3, 4],
                &[3, 4, 5],
                &[4, 5, 6],
                &[1, 3, 5],
                &[2, 4, 6],
            ],
        )
    }

    #[test]
    fn face_order_is_lexicographic() {
        let a = Face::new(&[1, 2, 3]).unwrap();
        let b = Face::new(&[1, 3, 5]).unwrap();
        let c = Face::new(&[2, 3, 4]).unwrap();
        let p = Face::new(&[1, 3]).unwrap();
        assert!(a < b && b < c);
        assert!(p < b);
        assert!(Face::EMPTY < p);
    }

    #[test]
    fn face_rejects_bad_vertices() {
        assert_eq!(Face::new(&[1, 1]), Err(ComplexError::DuplicateVertex(1)));
        assert!(Face::new(&[0]).is_err());
        assert!(Face::new(&[65]).is_err());
        assert_eq!(Face::new(&[64]).unwrap().max_vertex(), Some(64));
    }

    #[test]
    fn from_facets_examples() {
        let d = vdw52();
        assert_eq!(d.facets().len(), 4);
        assert_eq!(cx(3, &[&[1, 2], &[1, 2, 3]]).facets(), &[Face::full(3)]);
        let void = SimplicialComplex::from_facets(4, []).unwrap();
        assert!(void.is_void());
        assert_eq!(void.dimension(), None);
    }

    #[test]
    fn from_facets_errors() {
        assert_eq!(
            SimplicialComplex::from_vertex_lists(3, [[1, 4]]),
            Err(ComplexError::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert_eq!(
            SimplicialComplex::from_facets(0, []),
            Err(ComplexError::InvalidUniverse(0))
        );
    }

    #[test]
    fn dimension_and_purity() {
        assert_eq!(vdw52().dimension(), Some(2));
        assert_eq!(SimplicialComplex::simplex(7).dimension(), Some(6));
        assert_eq!(SimplicialComplex::empty(3).dimension(), Some(-1));
        assert!(vdw62().is_pure());
        assert!(!cx(3, &[&[1, 2], &[3]]).is_pure());
        assert!(SimplicialComplex::empty(3).is_pure());
        assert!(SimplicialComplex::void(3).is_pure());
    }

    #[test]
    fn link_examples() {
        assert_eq!(vdw52().link(5).unwrap(), cx(5, &[&[3, 4], &[1, 3]]));
        assert_eq!(vdw62().link(6).unwrap(), cx(6, &[&[4, 5], &[2, 4]]));
        assert_eq!(cx(3, &[&[1, 2, 3]]).link(2).unwrap(), cx(3, &[&[1, 3]]));
        assert!(cx(4, &[&[1, 2]]).link(4).unwrap().is_void());
        assert!(vdw52().link(6).is_err());
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(
            vdw52().deletion(5).unwrap(),
            cx(5, &[&[1, 2, 3], &[2, 3, 4]])
        );
        let d = vdw62().deletion(6).unwrap();
        assert_eq!(d.facets(), vdw52().facets());
        assert!(cx(1, &[&[1]]).deletion(1).unwrap().is_empty_complex());
        assert!(vdw52().deletion(0).is_err());
    }

    #[test]
    fn connectivity() {
        let k5 = SimplicialComplex::from_facets(5, subsets_of_size(5, 2)).unwrap();
        assert!(k5.is_connected().unwrap());
        assert!(!cx(4, &[&[1, 2], &[3, 4]]).is_connected().unwrap());
        assert!(cx(3, &[&[1, 2, 3]]).is_connected().unwrap());
        assert!(SimplicialComplex::empty(2).is_connected().unwrap());
        assert_eq!(
            SimplicialComplex::void(2).is_connected(),
            Err(ComplexError::Void)
        );
    }

    #[test]
    fn minimal_nonfaces_examples() {
        let got = vdw52().minimal_nonfaces().unwrap();
        assert_eq!(
            got,
            vec![Face::new(&[1, 4]).unwrap(), Face::new(&[2, 5]).unwrap()]
        );
        assert!(SimplicialComplex::simplex(6)
            .minimal_nonfaces()
            .unwrap()
            .is_empty());
        assert_eq!(
            cx(2, &[&[1], &[2]]).minimal_nonfaces().unwrap(),
            vec![Face::full(2)]
        );
        // vertex outside every facet is itself a minimal non-face
        assert_eq!(
            SimplicialComplex::empty(2).minimal_nonfaces().unwrap(),
            vec![Face::singleton(1), Face::singleton(2)]
        );
    }

    #[test]
    fn alexander_dual_examples() {
        assert_eq!(
            vdw52().alexander_dual().unwrap(),
            cx(5, &[&[2, 3, 5], &[1, 3, 4]])
        );
        assert!(cx(2, &[&[1], &[2]])
            .alexander_dual()
            .unwrap()
            .is_empty_complex());
        assert_eq!(
            vdw52().alexander_dual().unwrap().alexander_dual().unwrap(),
            vdw52()
        );
        assert_eq!(
            SimplicialComplex::simplex(3).alexander_dual(),
            Err(ComplexError::FullSimplex(3))
        );
        assert_eq!(
            SimplicialComplex::void(3).alexander_dual(),
            Err(ComplexError::Void)
        );
    }

    #[test]
    fn serde_canonical() {
        let json = serde_json::to_string(&vdw52()).unwrap();
        assert_eq!(
            json,
            r#"{"n":5,"facets":[[1,2,3],[1,3,5],[2,3,4],[3,4,5]]}"#
        );
        let back: SimplicialComplex =
            serde_json::from_str(r#"{"n":5,"facets":[[3,4,5],[1,2],[1,2,3],[5,1,3],[2,3,4]]}"#)
                .unwrap();
        assert_eq!(back, vdw52());
        assert!(serde_json::from_str::<SimplicialComplex>(r#"{"n":3,"facets":[[4]]}"#).is_err());
    }

    #[test]
    fn gosper_counts() {
        assert_eq!(subsets_of_size(6, 3).count(), 20);
        assert_eq!(subsets_of_size(5, 0).count(), 1);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(64, 63).count(), 64);
        assert!(subsets_of_size(7, 3).all(|f| f.len() == 3 && f.is_subset(Face::full(7))));
    }

    #[test]
    fn faces_by_size_of_triangle() {
        let sizes: Vec<usize> = cx(3, &[&[1, 2, 3]])
            .faces_by_size()
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(sizes, vec![1, 3, 3, 1]);
    }
}
