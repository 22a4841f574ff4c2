#![allow(dead_code)]

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::Rng;
use vdw_core::complex::subsets_of_size;
use vdw_core::{Face, MonomialIdeal, SimplicialComplex, SquarefreeMonomial};

/// Pure complex on `n ≤ 7` vertices with up to `max_facets` random facets.
pub fn random_pure_complex<R: Rng>(rng: &mut R, max_facets: usize) -> SimplicialComplex {
    let n = rng.gen_range(2..=7);
    let size = rng.gen_range(1..=n.min(4));
    let mut pool: Vec<Face> = subsets_of_size(n, size).collect();
    pool.shuffle(rng);
    let count = rng.gen_range(1..=max_facets.min(pool.len()));
    SimplicialComplex::from_facets(n, pool.into_iter().take(count)).unwrap()
}

/// Equigenerated squarefree ideal with at most 6 generators on at most 8 variables.
pub fn random_equigenerated_ideal<R: Rng>(rng: &mut R) -> MonomialIdeal {
    let n = rng.gen_range(2..=8);
    let d = rng.gen_range(1..n);
    let mut pool: Vec<Face> = subsets_of_size(n, d).collect();
    pool.shuffle(rng);
    let s = rng.gen_range(1..=6.min(pool.len()));
    MonomialIdeal::new(n, pool.into_iter().take(s).map(SquarefreeMonomial::new)).unwrap()
}

/// Every pure complex on exactly `n` vertices whose facets all have `size` vertices
/// (as families of `size`-subsets; the vertex universe is `1..=n`).
pub fn all_pure_complexes(n: usize, size: usize) -> Vec<SimplicialComplex> {
    let pool: Vec<Face> = subsets_of_size(n, size).collect();
    assert!(pool.len() < 20);
    (1u32..(1 << pool.len()))
        .map(|mask| {
            let faces = pool
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, f)| *f);
            SimplicialComplex::from_facets(n, faces).unwrap()
        })
        .collect()
}

/// Graphs on `1..=n` given by an edge mask over the pairs in Gosper order.
pub fn graph_from_mask(n: usize, pairs: &[Face], mask: u64) -> SimplicialComplex {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, f)| *f);
    SimplicialComplex::from_facets(n, edges).unwrap()
}

/// Membership oracle for the linear-syzygy submodule, by linear algebra in a
/// single multidegree.
///
/// In multidegree `a` the free module has basis `(x^a / m_p) e_p` for the
/// generators dividing `x^a`. Each linear Taylor syzygy `(p, q)` whose lcm divides
/// `x^a`, multiplied up to degree `a`, becomes a column; the Taylor syzygy
/// `(i, j)` is the target. Membership holds iff appending the target does not
/// raise the rank.
pub struct MembershipSystem {
    pub coords: Vec<usize>,
    pub columns: Vec<Vec<i64>>,
    pub target: Vec<i64>,
}

fn coordinate_of(
    gens: &[SquarefreeMonomial],
    coords: &[usize],
    a: SquarefreeMonomial,
    p: usize,
    coeff: SquarefreeMonomial,
) -> usize {
    // coeff · m_p must be exactly x^a
    let product = coeff.checked_mul(gens[p]).expect("squarefree product");
    assert_eq!(product, a);
    coords
        .iter()
        .position(|&c| c == p)
        .expect("generator divides a")
}

pub fn membership_system(ideal: &MonomialIdeal, i: usize, j: usize) -> MembershipSystem {
    let g = ideal.generators();
    let d = g[0].degree();
    let a = g[i].lcm(g[j]);
    let coords: Vec<usize> = (0..g.len()).filter(|&p| g[p].divides(a)).collect();
    let vector = |p: usize, q: usize| -> Vec<i64> {
        let l = g[p].lcm(g[q]);
        let u = SquarefreeMonomial::new(a.support().difference(l.support()));
        let cp = u.checked_mul(g[q].quotient_by_gcd(g[p])).unwrap();
        let cq = u.checked_mul(g[p].quotient_by_gcd(g[q])).unwrap();
        let mut v = vec![0i64; coords.len()];
        v[coordinate_of(g, &coords, a, p, cp)] += 1;
        v[coordinate_of(g, &coords, a, q, cq)] -= 1;
        v
    };
    let mut columns = Vec::new();
    for p in 0..g.len() {
        for q in p + 1..g.len() {
            let l = g[p].lcm(g[q]);
            if l.degree() == d + 1 && l.divides(a) {
                columns.push(vector(p, q));
            }
        }
    }
    MembershipSystem {
        target: vector(i, j),
        coords,
        columns,
    }
}

fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != Rational64::from_integer(0)) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c];
        for r in 0..m.len() {
            if r != rank && m[r][c] != Rational64::from_integer(0) {
                let f = m[r][c] / pivot;
                for cc in 0..width {
                    let sub = f * m[rank][cc];
                    m[r][cc] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_f2(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(2) as u8).collect())
        .collect();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] == 1 {
                for cc in 0..width {
                    m[r][cc] ^= m[rank][cc];
                }
            }
        }
        rank += 1;
    }
    rank
}

impl MembershipSystem {
    fn ranks(&self, rank: fn(&[Vec<i64>]) -> usize) -> bool {
        let without = rank(&self.columns);
        let mut with = self.columns.clone();
        with.push(self.target.clone());
        rank(&with) == without
    }

    pub fn solvable_over_q(&self) -> bool {
        self.ranks(rank_q)
    }

    pub fn solvable_over_f2(&self) -> bool {
        self.ranks(rank_f2)
    }
}

/// Oracle verdicts `(over ℚ, over F₂)` for "generated by linear Taylor syzygies".
pub fn oracle_linearly_presented(ideal: &MonomialIdeal) -> (bool, bool) {
    let g = ideal.generators();
    let mut q = true;
    let mut f2 = true;
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let sys = membership_system(ideal, i, j);
            q &= sys.solvable_over_q();
            f2 &= sys.solvable_over_f2();
        }
    }
    (q, f2)
}

/// Edge list on vertices `0..n`.
pub type Graph = Vec<(usize, usize)>;

fn pair_bit(a: usize, b: usize) -> u64 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    1u64 << (a * 8 + b)
}

/// Smallest edge code over all relabellings, by Heap's algorithm.
pub fn canonical_code(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let code = |perm: &[usize]| {
        edges
            .iter()
            .fold(0u64, |acc, &(a, b)| acc | pair_bit(perm[a], perm[b]))
    };
    let mut best = code(&perm);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(code(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn extend_by_vertex(reps: &[Graph], m: usize) -> Vec<Graph> {
    let mut out = Vec::with_capacity(reps.len() << m);
    for g in reps {
        for nbrs in 0u32..(1 << m) {
            let mut h = g.clone();
            h.extend((0..m).filter(|v| nbrs & (1 << v) != 0).map(|v| (v, m)));
            out.push(h);
        }
    }
    out
}

/// One graph per isomorphism class on `n ≤ 7` vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    assert!((1..=7).contains(&n));
    let mut reps: Vec<Graph> = vec![Vec::new()];
    for m in 1..n {
        let mut seen = std::collections::HashSet::new();
        reps = extend_by_vertex(&reps, m)
            .into_iter()
            .filter(|g| seen.insert(canonical_code(m + 1, g)))
            .collect();
    }
    reps
}

/// A list of graphs on 8 vertices containing every isomorphism class at least once:
/// each 7-vertex class extended by an eighth vertex in every possible way.
pub fn graph_cover_8() -> Vec<Graph> {
    extend_by_vertex(&graphs_up_to_isomorphism(7), 7)
}

/// Graph as a 1-dimensional complex on `1..=n`; isolated vertices are simply absent.
pub fn graph_complex(n: usize, g: &Graph) -> SimplicialComplex {
    let edges = g.iter().map(|&(a, b)| Face::singleton(a + 1).with(b + 1));
    SimplicialComplex::from_facets(n, edges).unwrap()
}
