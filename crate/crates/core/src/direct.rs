//! The magnitude chain complex `MC_{*,l}(a, b)` built straight from its
//! definition: generators are vertex sequences from `a` to `b` of total length
//! `l`, and `d = sum_{i=1}^{k-1} (-1)^i d_i` where `d_i` deletes `x_i` when that
//! keeps the length unchanged.

use std::collections::HashMap;

use crate::exec::Execution;
use crate::graph::{Graph, Sequence};
use crate::homology::{homology_all, HomologyGroup};
use crate::matrix::IntegerMatrix;
use crate::report::{ComponentHomology, LengthTable, Method};
use crate::simplicial::ChainComplex;
use crate::ComponentKey;

/// Generators of `MC_{k,l}(a, b)` for `0 <= k <= kmax`, each degree in
/// lexicographic order of the vertex tuple.
pub fn enumerate_basis(g: &Graph, key: ComponentKey, kmax: usize) -> Vec<Vec<Sequence>> {
    let mut bases = vec![Vec::new(); kmax + 1];
    let feasible = reachability(g, key.b, key.l);
    let mut stack = vec![key.a];
    if feasible[key.a][key.l] {
        extend(g, key, kmax, &feasible, key.l, &mut stack, &mut bases);
    }
    bases
}

/// `table[v][r]`: some sequence runs from `v` to `target` with length exactly `r`.
fn reachability(g: &Graph, target: usize, max_len: usize) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut table = vec![vec![false; max_len + 1]; n];
    table[target][0] = true;
    for r in 1..=max_len {
        for v in 0..n {
            table[v][r] = (0..n).any(|w| {
                let s = g.dist(v, w);
                w != v && s <= r && table[w][r - s]
            });
        }
    }
    table
}

fn extend(
    g: &Graph,
    key: ComponentKey,
    kmax: usize,
    feasible: &[Vec<bool>],
    remaining: usize,
    stack: &mut Vec<usize>,
    bases: &mut [Vec<Sequence>],
) {
    let cur = *stack.last().expect("non-empty");
    let degree = stack.len() - 1;
    if remaining == 0 {
        if cur == key.b {
            bases[degree].push(Sequence::from_parts(stack.clone(), key.l));
        }
        return;
    }
    if degree == kmax {
        return;
    }
    for w in g.vertices() {
        let s = g.dist(cur, w);
        if w != cur && s <= remaining && feasible[w][remaining - s] {
            stack.push(w);
            extend(g, key, kmax, feasible, remaining - s, stack, bases);
            stack.pop();
        }
    }
}

/// Matrix of `d : MC_k -> MC_{k-1}` in the given bases, one column per degree-`k`
/// generator.
pub fn boundary_matrix(g: &Graph, bases: &[Vec<Sequence>], k: usize) -> IntegerMatrix {
    let cols = bases.get(k).map_or(0, Vec::len);
    if k == 0 {
        return IntegerMatrix::zeros(0, cols);
    }
    let below = &bases[k - 1];
    if k < 2 || cols == 0 {
        return IntegerMatrix::zeros(below.len(), cols);
    }
    let index: HashMap<&[usize], usize> = below
        .iter()
        .enumerate()
        .map(|(i, s)| (s.points(), i))
        .collect();
    let mut triplets = Vec::new();
    let mut face = Vec::with_capacity(k);
    for (col, seq) in bases[k].iter().enumerate() {
        let x = seq.points();
        for i in 1..k {
            if g.dist(x[i - 1], x[i + 1]) != g.dist(x[i - 1], x[i]) + g.dist(x[i], x[i + 1]) {
                continue;
            }
            face.clear();
            face.extend_from_slice(&x[..i]);
            face.extend_from_slice(&x[i + 1..]);
            let row = *index
                .get(face.as_slice())
                .expect("length-preserving face is a generator");
            triplets.push((row, col, if i % 2 == 0 { 1i64 } else { -1 }));
        }
    }
    IntegerMatrix::from_triplets(below.len(), cols, triplets)
}

/// `MC_{*,l}(a, b)` through degree `top` (higher degrees vanish once `top >= l`).
pub fn magnitude_chain_complex(g: &Graph, key: ComponentKey, top: usize) -> ChainComplex<Sequence> {
    let top = top.min(key.l);
    let bases = enumerate_basis(g, key, top);
    let boundaries = (0..=top).map(|k| boundary_matrix(g, &bases, k)).collect();
    ChainComplex::new(bases, boundaries)
}

/// `MH_{k,l}(a, b)` for `0 <= k <= kmax`.
pub fn magnitude_homology_direct(g: &Graph, key: ComponentKey, kmax: usize) -> Vec<HomologyGroup> {
    let complex = magnitude_chain_complex(g, key, kmax + 1);
    homology_all(&complex, kmax, Execution::Sequential)
}

/// Every `(a, b)` component of `MH_{*,l}(G)` plus totals.
pub fn magnitude_homology_graph(g: &Graph, l: usize, kmax: usize, exec: Execution) -> LengthTable {
    let keys: Vec<ComponentKey> = g
        .vertices()
        .flat_map(|a| g.vertices().map(move |b| ComponentKey::new(a, b, l)))
        .collect();
    let components = exec.map(&keys, |&key| ComponentHomology {
        a: key.a,
        b: key.b,
        groups: magnitude_homology_direct(g, key, kmax),
    });
    LengthTable::new(l, kmax, Method::Direct, components)
}
