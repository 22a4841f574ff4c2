mod common;

use proptest::prelude::*;
use vdw_core::complex::subsets_of_size;
use vdw_core::{Face, SimplicialComplex};

fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=7).prop_flat_map(|n| {
        prop::collection::vec(0u64..(1u64 << n), 0..8).prop_map(move |masks| {
            SimplicialComplex::from_facets(n, masks.into_iter().map(Face::from_bits)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn face_order_matches_vertex_sequences(a in any::<u64>(), b in any::<u64>()) {
        let (fa, fb) = (Face::from_bits(a), Face::from_bits(b));
        prop_assert_eq!(fa.cmp(&fb), fa.to_vec().cmp(&fb.to_vec()));
    }

    #[test]
    fn from_facets_is_idempotent(c in arb_complex()) {
        let again = SimplicialComplex::from_facets(c.n(), c.facets().iter().copied()).unwrap();
        prop_assert_eq!(&again, &c);
        for (i, f) in c.facets().iter().enumerate() {
            for (j, g) in c.facets().iter().enumerate() {
                prop_assert!(i == j || !f.is_subset(*g));
            }
        }
        prop_assert!(c.facets().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn link_and_deletion_stay_inside(c in arb_complex(), x in 1usize..=7) {
        prop_assume!(x <= c.n());
        let lk = c.link(x).unwrap();
        let del = c.deletion(x).unwrap();
        for f in lk.facets() {
            prop_assert!(!f.contains(x));
            prop_assert!(c.contains_face(f.with(x)));
        }
        for f in del.facets() {
            prop_assert!(!f.contains(x));
            prop_assert!(c.contains_face(*f));
        }
        if let (Some(dl), Some(dc)) = (lk.dimension(), c.dimension()) {
            prop_assert!(dl < dc);
        }
    }

    #[test]
    fn minimal_nonfaces_form_an_antichain(c in arb_complex()) {
        prop_assume!(!c.is_void());
        let m = c.minimal_nonfaces().unwrap();
        for (i, a) in m.iter().enumerate() {
            prop_assert!(!c.contains_face(*a));
            for v in a.iter() {
                prop_assert!(c.contains_face(a.without(v)));
            }
            for (j, b) in m.iter().enumerate() {
                prop_assert!(i == j || !a.is_subset(*b));
            }
        }
    }
}

#[test]
fn minimal_nonfaces_match_full_enumeration() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
    for _ in 0..200 {
        let c = common::random_pure_complex(&mut rng, 8);
        let n = c.n();
        let brute: Vec<Face> = {
            let mut all: Vec<Face> = (0..(1u64 << n))
                .map(Face::from_bits)
                .filter(|f| !c.contains_face(*f))
                .filter(|f| f.iter().all(|v| c.contains_face(f.without(v))))
                .collect();
            all.sort();
            all
        };
        assert_eq!(c.minimal_nonfaces().unwrap(), brute, "{c:?}");
    }
}

/// All inclusion antichains of subsets of `{1..n}`, as facet lists.
fn all_complexes(n: usize) -> Vec<SimplicialComplex> {
    let subsets: Vec<Face> = (0..(1u64 << n)).map(Face::from_bits).collect();
    let mut out = Vec::new();
    let mut current: Vec<Face> = Vec::new();
    fn extend(
        idx: usize,
        subsets: &[Face],
        current: &mut Vec<Face>,
        out: &mut Vec<SimplicialComplex>,
        n: usize,
    ) {
        if idx == subsets.len() {
            out.push(SimplicialComplex::from_facets(n, current.iter().copied()).unwrap());
            return;
        }
        extend(idx + 1, subsets, current, out, n);
        let s = subsets[idx];
        if current.iter().all(|f| !f.is_subset(s) && !s.is_subset(*f)) {
            current.push(s);
            extend(idx + 1, subsets, current, out, n);
            current.pop();
        }
    }
    extend(0, &subsets, &mut current, &mut out, n);
    out
}

#[test]
fn alexander_duality_is_an_involution() {
    // Antichain counts are the Dedekind numbers 3, 6, 20, 168, 7581.
    let dedekind = [3, 6, 20, 168, 7581];
    for n in 1..=5 {
        let all = all_complexes(n);
        assert_eq!(all.len(), dedekind[n - 1]);
        for c in all {
            if c.is_void() || c.is_full_simplex() {
                continue;
            }
            let dual = c.alexander_dual().unwrap();
            assert_eq!(dual.alexander_dual().unwrap(), c);
            // faces of the dual are exactly complements of non-faces
            for f in (0..(1u64 << n)).map(Face::from_bits) {
                assert_eq!(
                    dual.contains_face(f),
                    !c.contains_face(f.complement(n)),
                    "{c:?} at {f:?}"
                );
            }
        }
    }
}

#[test]
fn connectivity_matches_graph_search() {
    let pairs: Vec<Face> = subsets_of_size(5, 2).collect();
    for mask in 1u64..(1 << pairs.len()) {
        let g = common::graph_from_mask(5, &pairs, mask);
        let support = g.support();
        let start = support.iter().next().unwrap();
        let mut seen = vec![start];
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            for e in g.facets() {
                if e.contains(v) {
                    for w in e.iter() {
                        if !seen.contains(&w) {
                            seen.push(w);
                            frontier.push(w);
                        }
                    }
                }
            }
        }
        assert_eq!(g.is_connected().unwrap(), seen.len() == support.len());
    }
}
