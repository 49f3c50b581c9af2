//! Independent oracles shared by the integration tests. Nothing here calls the
//! Smith normal form or the walk enumerator of the library under test.

#![allow(dead_code, clippy::needless_range_loop)]

use maghom::{ChainComplex, Graph, IntegerMatrix, Simplex, SimplicialComplex};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Rank over Q by fraction-free (Bareiss) elimination.
pub fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][j] * &a[rank][c] - &a[r][c] * &a[rank][j]) / &prev;
                a[r][j] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank over GF(2).
pub fn gf2_rank(m: &IntegerMatrix) -> usize {
    let two = BigInt::from(2);
    let mut a: Vec<Vec<bool>> = m
        .to_dense()
        .into_iter()
        .map(|r| r.into_iter().map(|x| !(x % &two).is_zero()).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..m.rows()).find(|&r| a[r][c]) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..m.rows() {
            if r != rank && a[r][c] {
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers of a chain complex from rational ranks alone.
pub fn rational_betti<B>(c: &ChainComplex<B>, n: usize) -> usize {
    let out = if n == 0 { 0 } else { rational_rank(&c.boundary(n)) };
    let inc = rational_rank(&c.boundary(n + 1));
    c.rank(n) - out - inc
}

/// Number of walks from `a` to `b` with exactly `steps` steps, by adjacency
/// matrix powers.
pub fn walk_count_exact(g: &Graph, a: usize, b: usize, steps: usize) -> u64 {
    let n = g.vertex_count();
    let mut v = vec![0u64; n];
    v[a] = 1;
    for _ in 0..steps {
        let mut next = vec![0u64; n];
        for (u, &count) in v.iter().enumerate() {
            for w in 0..n {
                if u != w && g.has_edge(u, w) {
                    next[w] += count;
                }
            }
        }
        v = next;
    }
    v[b]
}

pub fn walk_count_at_most(g: &Graph, a: usize, b: usize, steps: usize) -> u64 {
    (0..=steps).map(|s| walk_count_exact(g, a, b, s)).sum()
}

/// Shortest-path distances by Floyd-Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if g.has_edge(u, v) {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

/// Number of degree-`k` generators of `MC_{k,l}(a,b)` by brute force over all
/// vertex tuples.
pub fn brute_force_rank(g: &Graph, a: usize, b: usize, k: usize, l: usize) -> usize {
    let d = floyd_warshall(g);
    let n = g.vertex_count();
    if k == 0 {
        return usize::from(a == b && l == 0);
    }
    let mut count = 0;
    let mut interior = vec![0usize; k - 1];
    loop {
        let mut pts = vec![a];
        pts.extend(&interior);
        pts.push(b);
        if pts.windows(2).all(|w| w[0] != w[1]) && pts.windows(2).map(|w| d[w[0]][w[1]]).sum::<usize>() == l {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == interior.len() {
                return count;
            }
            interior[i] += 1;
            if interior[i] < n {
                break;
            }
            interior[i] = 0;
            i += 1;
        }
    }
}

/// The six-vertex triangulation of the real projective plane.
pub fn rp2() -> SimplicialComplex<u32> {
    let triangles = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ];
    SimplicialComplex::from_generators(triangles.map(|t| Simplex::new(t).unwrap()))
}

/// A random unimodular matrix: a product of elementary operations.
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> IntegerMatrix {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        return IntegerMatrix::from_dense(&m);
    }
    for _ in 0..3 * n {
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        let c = rng.random_range(-2..=2i64);
        match rng.random_range(0..3) {
            0 => {
                for col in 0..n {
                    m[i][col] += c * m[j][col];
                }
            }
            1 => m.swap(i, j),
            _ => {
                for x in m[i].iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    IntegerMatrix::from_dense(&m)
}

/// A two-term chain complex `Z^cols -> Z^rows` whose differential has the
/// given invariant factors (zeros for the rank deficit), disguised by random
/// unimodular changes of basis.
pub fn disguised_complex(factors: &[i64], rows: usize, cols: usize, rng: &mut impl Rng) -> ChainComplex<usize> {
    let diag = IntegerMatrix::from_triplets(rows, cols, factors.iter().enumerate().map(|(i, &f)| (i, i, f)));
    let d = random_unimodular(rows, rng).mul(&diag).mul(&random_unimodular(cols, rng));
    ChainComplex::new(vec![(0..rows).collect(), (0..cols).collect()], vec![IntegerMatrix::zeros(0, rows), d])
}

pub fn abs_factors(factors: &[BigInt]) -> Vec<BigInt> {
    factors.iter().map(Signed::abs).collect()
}
