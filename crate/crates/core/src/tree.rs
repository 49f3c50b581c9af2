//! Trees: per-walk decomposition of `MC_{*,l}(a,b)`, turning points, the pair
//! `(Delta^{l-2}, Delta_x)` and the closed form `MH_{l,l} = Z^{2 #E}`.
//!
//! In a tree every sequence has a unique shortest walk through its points, so
//! `MC_{*,l}(a,b)` splits over walks `x` of exactly `l` steps. The summand for
//! `x` is generated by the subsequences of `x` that keep every turning point
//! (positions `i` with `x_{i-1} = x_{i+1}`).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Walk};
use crate::homology::HomologyGroup;
use crate::simplicial::{relative_chain_complex, ChainComplex, Simplex, SimplicialComplex, SimplicialPair};
use crate::ComponentKey;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePathComponent {
    pub walk: Walk,
    pub phi_positions: BTreeSet<usize>,
}

impl TreePathComponent {
    pub fn m(&self) -> usize {
        self.phi_positions.len()
    }

    /// The subsequence of the walk selecting the given interior positions.
    pub fn subsequence(&self, positions: &[usize]) -> Vec<usize> {
        let x = self.walk.points();
        let mut out = Vec::with_capacity(positions.len() + 2);
        out.push(x[0]);
        out.extend(positions.iter().map(|&i| x[i]));
        out.push(x[x.len() - 1]);
        out
    }
}

/// Positions `i` with `x_{i-1} = x_{i+1}`.
pub fn turning_positions(walk: &Walk) -> BTreeSet<usize> {
    let x = walk.points();
    (1..x.len().saturating_sub(1))
        .filter(|&i| x[i - 1] == x[i + 1])
        .collect()
}

/// Positions where the triangle inequality through `x_i` is strict.
pub fn strict_triangle_positions(g: &Graph, walk: &Walk) -> BTreeSet<usize> {
    let x = walk.points();
    (1..x.len().saturating_sub(1))
        .filter(|&i| g.dist(x[i - 1], x[i + 1]) < g.dist(x[i - 1], x[i]) + g.dist(x[i], x[i + 1]))
        .collect()
}

/// One component per walk from `a` to `b` with exactly `l` steps; shorter walks
/// carry no generators of length `l` and are dropped.
pub fn decompose_tree_component(g: &Graph, key: ComponentKey) -> Result<Vec<TreePathComponent>> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(g.enumerate_walks(key.a, key.b, key.l)
        .into_iter()
        .filter(|w| w.steps() == key.l)
        .map(|walk| TreePathComponent {
            phi_positions: turning_positions(&walk),
            walk,
        })
        .collect())
}

/// `Delta^{l-2}` on positions `1..=l-1` and the subcomplex of faces missing at
/// least one turning point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaPair {
    pub l: usize,
    pub pair: SimplicialPair<usize>,
}

impl DeltaPair {
    pub fn ambient(&self) -> &SimplicialComplex<usize> {
        self.pair.total()
    }

    pub fn sub(&self) -> &SimplicialComplex<usize> {
        self.pair.sub()
    }

    pub fn relative_chain_complex(&self) -> ChainComplex<Simplex<usize>> {
        relative_chain_complex(&self.pair)
    }
}

pub fn build_delta_pair(comp: &TreePathComponent, l: usize) -> Result<DeltaPair> {
    if l < 2 {
        return Err(Error::LengthTooSmall(l));
    }
    let ambient = SimplicialComplex::from_generators([Simplex::new(1..l)?]);
    let sub = ambient.filter(|s| !comp.phi_positions.iter().all(|p| s.contains(p)))?;
    Ok(DeltaPair {
        l,
        pair: SimplicialPair::new(ambient, sub)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum DeltaClass {
    /// `Delta_x` is empty (no turning points).
    Empty,
    /// `Delta_x` is a sphere of the given dimension (every interior point turns).
    Sphere { dim: usize },
    Contractible,
}

pub fn classify_delta(comp: &TreePathComponent, l: usize) -> DeltaClass {
    match comp.m() {
        0 => DeltaClass::Empty,
        m if m + 1 == l => DeltaClass::Sphere { dim: l - 3 },
        _ => DeltaClass::Contractible,
    }
}

/// `MH_{k,l}(G)` of a tree for `k, l >= 3`: `Z^{2 #E}` on the diagonal, else 0.
pub fn tree_magnitude_closed_form(g: &Graph, l: usize, k: usize) -> Result<HomologyGroup> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if l < 3 || k < 3 {
        return Err(Error::LengthTooSmall(l.min(k)));
    }
    Ok(if k == l {
        HomologyGroup::free(2 * g.edge_count())
    } else {
        HomologyGroup::zero()
    })
}

/// `MH_{k,l}(a,b)` of a tree for `0 <= k <= kmax`, summing the classified walk
/// components for `k >= 3` (a sphere component contributes `Z` in degree `l`)
/// and using the direct complex below that.
pub fn tree_component_homology(g: &Graph, key: ComponentKey, kmax: usize) -> Result<Vec<HomologyGroup>> {
    if key.l < 3 {
        return Err(Error::LengthTooSmall(key.l));
    }
    let comps = decompose_tree_component(g, key)?;
    let mut groups = crate::direct::magnitude_homology_direct(g, key, kmax.min(2));
    groups.resize(kmax + 1, HomologyGroup::zero());
    if kmax >= key.l {
        let spheres = comps
            .iter()
            .filter(|c| matches!(classify_delta(c, key.l), DeltaClass::Sphere { .. }))
            .count();
        groups[key.l] = HomologyGroup::free(spheres);
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use crate::homology::homology_all;
    use crate::Execution;

    #[test]
    fn single_edge_loop_turns_everywhere() {
        let g = graph::path(2);
        let comps = decompose_tree_component(&g, ComponentKey::new(0, 0, 4)).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].walk.points(), &[0, 1, 0, 1, 0]);
        assert_eq!(comps[0].phi_positions, BTreeSet::from([1, 2, 3]));
        assert_eq!(classify_delta(&comps[0], 4), DeltaClass::Sphere { dim: 1 });
    }

    #[test]
    fn geodesic_has_no_turns() {
        let g = graph::path(5);
        let comps = decompose_tree_component(&g, ComponentKey::new(0, 4, 4)).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].m(), 0);
        let dp = build_delta_pair(&comps[0], 4).unwrap();
        assert!(dp.sub().is_empty());
        assert_eq!(classify_delta(&comps[0], 4), DeltaClass::Empty);
    }

    #[test]
    fn path_three_turn_counts() {
        // 0-1-2, key (0, 1, 3): (0,1,0,1) turns at 1 and 2; (0,1,2,1) only at 2.
        let g = graph::path(3);
        let comps = decompose_tree_component(&g, ComponentKey::new(0, 1, 3)).unwrap();
        let by_walk: Vec<(Vec<usize>, usize)> =
            comps.iter().map(|c| (c.walk.points().to_vec(), c.m())).collect();
        assert_eq!(by_walk, vec![(vec![0, 1, 0, 1], 2), (vec![0, 1, 2, 1], 1)]);
    }

    #[test]
    fn full_turning_set_leaves_top_simplex() {
        let g = graph::path(2);
        let comps = decompose_tree_component(&g, ComponentKey::new(0, 1, 5)).unwrap();
        let dp = build_delta_pair(&comps[0], 5).unwrap();
        let rel = dp.relative_chain_complex();
        assert_eq!((0..4).map(|n| rel.rank(n)).collect::<Vec<_>>(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn contractible_case_is_acyclic() {
        let g = graph::path(4);
        // (0,1,2,1,2,3): l = 5, turns at positions 2 and 3 only.
        let comps = decompose_tree_component(&g, ComponentKey::new(0, 3, 5)).unwrap();
        let comp = comps.iter().find(|c| c.walk.points() == [0, 1, 2, 1, 2, 3]).unwrap();
        assert_eq!(comp.m(), 2);
        assert_eq!(classify_delta(comp, 5), DeltaClass::Contractible);
        let rel = build_delta_pair(comp, 5).unwrap().relative_chain_complex();
        assert!(homology_all(&rel, 3, Execution::Sequential).iter().all(HomologyGroup::is_zero));
    }

    #[test]
    fn closed_form() {
        let star = graph::star(4);
        assert_eq!(tree_magnitude_closed_form(&star, 4, 4).unwrap(), HomologyGroup::free(6));
        assert!(tree_magnitude_closed_form(&star, 4, 3).unwrap().is_zero());
        assert_eq!(tree_magnitude_closed_form(&graph::path(2), 3, 3).unwrap(), HomologyGroup::free(2));
        assert!(matches!(tree_magnitude_closed_form(&graph::cycle(4), 3, 3), Err(Error::NotATree)));
        assert!(matches!(decompose_tree_component(&graph::cycle(4), ComponentKey::new(0, 0, 3)), Err(Error::NotATree)));
    }
}
