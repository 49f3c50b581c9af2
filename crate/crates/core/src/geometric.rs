//! Magnitude homology through the simplicial pair `(K_l(a,b), K'_l(a,b))`.
//!
//! `K_l(a,b)` lives on labels `(vertex, position)` with positions in
//! `1..=l-1`. Every unit-step walk `(a, x_1, ..., x_{l'-1}, b)` with `l' <= l`
//! steps contributes the simplex `{(x_i, i)}` of its interior and all faces of
//! it. `K'_l(a,b)` keeps the simplices whose sequence `(a, x_i1, ..., x_ik, b)`
//! has length at most `l - 1`. Reading a relative simplex off in position order
//! gives a generator of `MC_{n+2,l}(a,b)`, and under that identification the
//! relative boundary is exactly the negated magnitude boundary.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::direct::magnitude_chain_complex;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{Graph, Sequence};
use crate::homology::{homology_all, reduced_homology_0, HomologyGroup};
use crate::report::{ComponentHomology, LengthTable, Method};
use crate::simplicial::{relative_chain_complex, ChainComplex, Simplex, SimplicialComplex, SimplicialPair};
use crate::ComponentKey;

/// A vertex tagged with its position along a walk; ordered by position first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PositionedVertex {
    pub position: usize,
    pub vertex: usize,
}

impl fmt::Display for PositionedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.vertex, self.position)
    }
}

pub type PositionedSimplex = Simplex<PositionedVertex>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPair {
    key: ComponentKey,
    pair: SimplicialPair<PositionedVertex>,
}

impl KPair {
    pub fn key(&self) -> ComponentKey {
        self.key
    }

    pub fn total(&self) -> &SimplicialComplex<PositionedVertex> {
        self.pair.total()
    }

    pub fn sub(&self) -> &SimplicialComplex<PositionedVertex> {
        self.pair.sub()
    }

    pub fn pair(&self) -> &SimplicialPair<PositionedVertex> {
        &self.pair
    }

    /// `(a, x_i1, ..., x_ik, b)` for a simplex read in position order.
    pub fn sequence_of(&self, s: &PositionedSimplex) -> Vec<usize> {
        sequence_of(self.key, s)
    }

    /// `L(a, x_i1, ..., x_ik, b)`.
    pub fn interior_length(&self, g: &Graph, s: &PositionedSimplex) -> usize {
        g.length_of(&self.sequence_of(s))
    }

    pub fn relative_chain_complex(&self) -> ChainComplex<PositionedSimplex> {
        relative_chain_complex(&self.pair)
    }
}

fn sequence_of(key: ComponentKey, s: &PositionedSimplex) -> Vec<usize> {
    let mut seq = Vec::with_capacity(s.labels().len() + 2);
    seq.push(key.a);
    seq.extend(s.labels().iter().map(|p| p.vertex));
    seq.push(key.b);
    seq
}

/// `K_l(a, b)` for any `l`: the downward closure of walk interiors.
pub fn walk_complex(g: &Graph, a: usize, b: usize, l: usize) -> SimplicialComplex<PositionedVertex> {
    let generators = g.enumerate_walks(a, b, l).into_iter().filter_map(|w| {
        let interior = &w.points()[1..w.points().len().saturating_sub(1).max(1)];
        Simplex::new(
            interior
                .iter()
                .enumerate()
                .map(|(i, &vertex)| PositionedVertex { position: i + 1, vertex }),
        )
        .ok()
    });
    SimplicialComplex::from_generators(generators)
}

/// Builds `(K_l(a,b), K'_l(a,b))`; requires `l >= 3`. Both are empty when `d(a,b) > l`.
pub fn build_k_pair(g: &Graph, key: ComponentKey) -> Result<KPair> {
    if key.l < 3 {
        return Err(Error::LengthTooSmall(key.l));
    }
    let total = walk_complex(g, key.a, key.b, key.l);
    let sub = total.filter(|s| g.length_of(&sequence_of(key, s)) < key.l)?;
    Ok(KPair {
        key,
        pair: SimplicialPair::new(total, sub)?,
    })
}

/// Structural audit of a constructed pair: closure, containment, position
/// bounds, the length criterion for `K'`, and index rigidity (among simplices
/// of full length `l`, the vertex tuple determines the positions).
pub fn verify_k_pair(g: &Graph, kp: &KPair) -> Result<()> {
    let l = kp.key.l;
    kp.total().check_downward_closed()?;
    kp.sub().check_downward_closed()?;
    if !kp.sub().is_subcomplex_of(kp.total()) {
        return Err(Error::Consistency("K' is not contained in K".into()));
    }
    let mut rigid: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for s in kp.total().simplices() {
        let positions: Vec<usize> = s.labels().iter().map(|p| p.position).collect();
        if positions.windows(2).any(|w| w[0] >= w[1]) || positions.iter().any(|&p| p == 0 || p >= l) {
            return Err(Error::Consistency(format!("bad positions in simplex {s}")));
        }
        let seq = kp.sequence_of(s);
        let len = g.length_of(&seq);
        if len > l || (len < l) != kp.sub().contains(s) {
            return Err(Error::Consistency(format!("simplex {s} has length {len} but sub membership disagrees")));
        }
        if len == l {
            // Positions are forced to be the running distances from `a`.
            let mut running = 0;
            for (w, &p) in seq.windows(2).zip(&positions) {
                running += g.dist(w[0], w[1]);
                if running != p {
                    return Err(Error::Consistency(format!("index rigidity fails for {s}")));
                }
            }
            let vertices = seq[1..seq.len() - 1].to_vec();
            if let Some(prev) = rigid.insert(vertices, positions.clone()) {
                if prev != positions {
                    return Err(Error::Consistency(format!("index rigidity fails for {s}")));
                }
            }
        }
    }
    Ok(())
}

/// For each relative degree `n`, `maps[n][i]` is the index in the degree
/// `n + 2` magnitude basis of the image of the `i`-th relative generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCorrespondence {
    pub maps: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainMismatch {
    pub relative_degree: usize,
    pub detail: String,
}

impl fmt::Display for ChainMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "relative degree {}: {}", self.relative_degree, self.detail)
    }
}

impl From<ChainMismatch> for Error {
    fn from(m: ChainMismatch) -> Self {
        Error::Consistency(m.to_string())
    }
}

/// Realizes the chain isomorphism `[x_i1..x_ik] -> (a, x_i1, ..., x_ik, b)` and
/// checks that it is a bijection on bases in every degree and that the relative
/// boundary equals the negated magnitude boundary.
pub fn chain_map_t(g: &Graph, kp: &KPair) -> Result<ChainCorrespondence, ChainMismatch> {
    let magnitude = magnitude_chain_complex(g, kp.key, kp.key.l);
    check_correspondence(g, kp, &kp.relative_chain_complex(), &magnitude, false)
}

fn check_correspondence(
    g: &Graph,
    kp: &KPair,
    relative: &ChainComplex<PositionedSimplex>,
    magnitude: &ChainComplex<Sequence>,
    sign_fault: bool,
) -> Result<ChainCorrespondence, ChainMismatch> {
    let degrees = relative.len().max(magnitude.len().saturating_sub(2));
    let mut maps = Vec::with_capacity(degrees);
    for n in 0..degrees {
        let target = magnitude.basis(n + 2);
        let index: HashMap<&[usize], usize> = target
            .iter()
            .enumerate()
            .map(|(i, s)| (s.points(), i))
            .collect();
        let mut hit = vec![false; target.len()];
        let mut map = Vec::with_capacity(relative.rank(n));
        for s in relative.basis(n) {
            let seq = kp.sequence_of(s);
            let Some(&j) = index.get(seq.as_slice()) else {
                return Err(ChainMismatch {
                    relative_degree: n,
                    detail: format!(
                        "simplex {s} maps to {} which is not a generator of MC_{}",
                        DisplaySeq(&seq, g),
                        n + 2
                    ),
                });
            };
            if std::mem::replace(&mut hit[j], true) {
                return Err(ChainMismatch {
                    relative_degree: n,
                    detail: format!("two simplices map to {}", DisplaySeq(&seq, g)),
                });
            }
            map.push(j);
        }
        if let Some(j) = hit.iter().position(|h| !h) {
            return Err(ChainMismatch {
                relative_degree: n,
                detail: format!("generator {} has no preimage", target[j].display(g)),
            });
        }
        maps.push(map);
    }
    for n in 1..degrees {
        let mut rel = relative.boundary(n).permuted(&maps[n - 1], &maps[n]);
        if sign_fault {
            rel = rel.neg();
        }
        let expected = magnitude.boundary(n + 2).neg();
        if rel != expected {
            let col = (0..relative.rank(n))
                .find(|&c| {
                    (0..rel.rows()).any(|r| rel.get(r, maps[n][c]) != expected.get(r, maps[n][c]))
                })
                .unwrap_or(0);
            return Err(ChainMismatch {
                relative_degree: n,
                detail: format!(
                    "relative boundary of {} differs from the negated magnitude boundary",
                    relative.basis(n)[col]
                ),
            });
        }
    }
    Ok(ChainCorrespondence { maps })
}

struct DisplaySeq<'a>(&'a [usize], &'a Graph);

impl fmt::Display for DisplaySeq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|&v| self.1.name(v)).collect();
        write!(f, "({})", names.join(","))
    }
}

/// `MH_{k,l}(a,b)` for `0 <= k <= kmax` via relative simplicial homology.
///
/// Degrees `k >= 3` read `H_{k-2}(K, K')`. Degree 2 reads `H_0(K, K')` when
/// `d(a,b) < l` and the reduced `H~_0(K)` when `d(a,b) = l`. Degrees 0 and 1
/// come from the direct complex.
pub fn magnitude_homology_geometric(g: &Graph, key: ComponentKey, kmax: usize) -> Result<Vec<HomologyGroup>> {
    let kp = build_k_pair(g, key)?;
    Ok(geometric_groups(g, &kp, &kp.relative_chain_complex(), kmax))
}

fn geometric_groups(
    g: &Graph,
    kp: &KPair,
    relative: &ChainComplex<PositionedSimplex>,
    kmax: usize,
) -> Vec<HomologyGroup> {
    let key = kp.key;
    let mut groups = vec![HomologyGroup::zero(); kmax + 1];
    let low = crate::direct::magnitude_homology_direct(g, key, kmax.min(1));
    groups[..low.len()].clone_from_slice(&low);
    if kmax < 2 || g.dist(key.a, key.b) > key.l {
        return groups;
    }
    let rel = homology_all(relative, kmax - 2, Execution::Sequential);
    groups[3..=kmax].clone_from_slice(&rel[1..=kmax - 2]);
    groups[2] = if g.dist(key.a, key.b) < key.l {
        rel[0].clone()
    } else {
        reduced_homology_0(kp.total())
    };
    groups
}

/// Every `(a, b)` component through the simplicial pair.
pub fn magnitude_homology_graph_geometric(
    g: &Graph,
    l: usize,
    kmax: usize,
    exec: Execution,
) -> Result<LengthTable> {
    if l < 3 {
        return Err(Error::LengthTooSmall(l));
    }
    let keys = all_keys(g, l);
    let components = exec
        .map(&keys, |&key| {
            magnitude_homology_geometric(g, key, kmax).map(|groups| ComponentHomology {
                a: key.a,
                b: key.b,
                groups,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(LengthTable::new(l, kmax, Method::Geometric, components))
}

pub(crate) fn all_keys(g: &Graph, l: usize) -> Vec<ComponentKey> {
    g.vertices()
        .flat_map(|a| g.vertices().map(move |b| ComponentKey::new(a, b, l)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MismatchKind {
    /// Homology groups differ between the two methods.
    Homology {
        degree: usize,
        direct: HomologyGroup,
        geometric: HomologyGroup,
    },
    /// The chain-level identification failed.
    Chain(ChainMismatch),
    /// The pair failed its structural audit.
    Structure { detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub a: String,
    pub b: String,
    pub l: usize,
    #[serde(flatten)]
    pub kind: MismatchKind,
}

impl Mismatch {
    /// Homology disagreements are validation failures; chain or structure
    /// failures indicate a construction bug.
    pub fn is_internal(&self) -> bool {
        !matches!(self.kind, MismatchKind::Homology { .. })
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "component ({},{}) l={}: ", self.a, self.b, self.l)?;
        match &self.kind {
            MismatchKind::Homology { degree, direct, geometric } => {
                write!(f, "MH_{degree} direct={direct} geometric={geometric}")
            }
            MismatchKind::Chain(c) => write!(f, "{c}"),
            MismatchKind::Structure { detail } => f.write_str(detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub l: usize,
    pub kmax: usize,
    pub components: usize,
    pub failure: Option<Mismatch>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CrossValidateOptions {
    /// Flips the sign of every relative boundary before the chain-level
    /// comparison. Only useful for checking that the harness notices.
    pub inject_sign_fault: bool,
}

/// Compares the geometric and direct methods on every component for
/// `2 <= k <= kmax`, together with the chain-level identification and the
/// structural audit of each pair. Stops at the first mismatch in component order.
pub fn cross_validate(g: &Graph, l: usize, kmax: usize, exec: Execution) -> Result<CrossValidation> {
    cross_validate_with(g, l, kmax, exec, CrossValidateOptions::default())
}

pub fn cross_validate_with(
    g: &Graph,
    l: usize,
    kmax: usize,
    exec: Execution,
    options: CrossValidateOptions,
) -> Result<CrossValidation> {
    if l < 3 {
        return Err(Error::LengthTooSmall(l));
    }
    let keys = all_keys(g, l);
    let outcomes = exec.map(&keys, |&key| validate_component(g, key, kmax, options));
    let failure = outcomes.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().next();
    Ok(CrossValidation {
        l,
        kmax,
        components: keys.len(),
        failure,
    })
}

fn validate_component(
    g: &Graph,
    key: ComponentKey,
    kmax: usize,
    options: CrossValidateOptions,
) -> Result<Option<Mismatch>> {
    let mismatch = |kind| Mismatch {
        a: g.name(key.a).to_string(),
        b: g.name(key.b).to_string(),
        l: key.l,
        kind,
    };
    let kp = build_k_pair(g, key)?;
    if let Err(e) = verify_k_pair(g, &kp) {
        return Ok(Some(mismatch(MismatchKind::Structure { detail: e.to_string() })));
    }
    let magnitude = magnitude_chain_complex(g, key, (kmax + 1).max(key.l));
    let relative = kp.relative_chain_complex();
    if let Err(c) = check_correspondence(g, &kp, &relative, &magnitude, options.inject_sign_fault) {
        return Ok(Some(mismatch(MismatchKind::Chain(c))));
    }
    let direct = homology_all(&magnitude, kmax, Execution::Sequential);
    let geometric = geometric_groups(g, &kp, &relative, kmax);
    for k in 2..=kmax {
        if direct[k] != geometric[k] {
            return Ok(Some(mismatch(MismatchKind::Homology {
                degree: k,
                direct: direct[k].clone(),
                geometric: geometric[k].clone(),
            })));
        }
    }
    Ok(None)
}
