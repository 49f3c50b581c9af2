//! Integer homology of chain complexes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::exec::Execution;
use crate::matrix::IntegerMatrix;
use crate::simplicial::{ChainComplex, SimplicialComplex};
use crate::smith::{smith_normal_form, SmithForm};

/// A finitely generated abelian group `Z^betti + Z/t_1 + ... + Z/t_r` with
/// `1 < t_1 | t_2 | ... | t_r`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Torsion entries exceed one and form a divisibility chain.
    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|t| *t > BigUint::one())
            && self.torsion.windows(2).all(|w| (&w[1] % &w[0]) == BigUint::ZERO)
    }

    /// Direct sum, with torsion brought back to invariant-factor form.
    pub fn direct_sum<'a>(groups: impl IntoIterator<Item = &'a HomologyGroup>) -> HomologyGroup {
        let mut betti = 0;
        let mut factors = Vec::new();
        for g in groups {
            betti += g.betti;
            factors.extend(g.torsion.iter().cloned());
        }
        if factors.len() <= 1 {
            return HomologyGroup { betti, torsion: factors };
        }
        let n = factors.len();
        let diag = IntegerMatrix::from_triplets(
            n,
            n,
            factors.into_iter().enumerate().map(|(i, f)| (i, i, BigInt::from(f))),
        );
        let torsion = smith_normal_form(&diag)
            .torsion()
            .map(|t| t.magnitude().clone())
            .collect();
        HomologyGroup { betti, torsion }
    }
}

fn serialize_factors<S: Serializer>(factors: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(factors.len()))?;
    for f in factors {
        match f.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&f.to_string())?,
        }
    }
    seq.end()
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" + "))
    }
}

fn group_from(dim: usize, rank_out: usize, incoming: &SmithForm) -> HomologyGroup {
    HomologyGroup {
        betti: dim - rank_out - incoming.rank(),
        torsion: incoming.torsion().map(|t| t.magnitude().clone()).collect(),
    }
}

/// `H_n(C)`: betti `dim C_n - rank d_n - rank d_{n+1}`, torsion from the
/// invariant factors of `d_{n+1}`.
pub fn homology<B>(c: &ChainComplex<B>, n: usize) -> HomologyGroup {
    let dim = c.rank(n);
    if dim == 0 {
        return HomologyGroup::zero();
    }
    let out = smith_normal_form(&c.boundary(n)).rank();
    let incoming = smith_normal_form(&c.boundary(n + 1));
    group_from(dim, out, &incoming)
}

/// `H_0 .. H_top` of `c`, computing each boundary's Smith form once.
pub fn homology_all<B: Sync>(c: &ChainComplex<B>, top: usize, exec: Execution) -> Vec<HomologyGroup> {
    let degrees: Vec<usize> = (0..=top + 1).collect();
    let forms = exec.map(&degrees, |&n| {
        if n == 0 || c.rank(n) == 0 || c.rank(n - 1) == 0 {
            None
        } else {
            Some(smith_normal_form(c.boundary_ref(n).expect("degree in range")))
        }
    });
    let rank = |n: usize| forms[n].as_ref().map_or(0, SmithForm::rank);
    (0..=top)
        .map(|n| {
            let dim = c.rank(n);
            if dim == 0 {
                return HomologyGroup::zero();
            }
            match &forms[n + 1] {
                Some(incoming) => group_from(dim, rank(n), incoming),
                None => HomologyGroup::free(dim - rank(n)),
            }
        })
        .collect()
}

/// Reduced `H~_0`: one less than the number of connected components.
///
/// The empty complex gets the zero group.
pub fn reduced_homology_0<L: Ord + Clone + fmt::Display>(s: &SimplicialComplex<L>) -> HomologyGroup {
    let labels = s.label_universe();
    if labels.is_empty() {
        return HomologyGroup::zero();
    }
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let pos = |l: &L| labels.binary_search(l).expect("edge endpoint is a vertex");
    let mut components = labels.len();
    for e in s.simplices_of_dim(1) {
        let (u, v) = (find(&mut parent, pos(&e.labels()[0])), find(&mut parent, pos(&e.labels()[1])));
        if u != v {
            parent[u] = v;
            components -= 1;
        }
    }
    HomologyGroup::free(components - 1)
}
