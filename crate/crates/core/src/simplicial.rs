//! Abstract simplicial complexes, subcomplex pairs and their integer chain
//! complexes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// A non-empty simplex, stored as its labels in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex<L>(Vec<L>);

impl<L: Ord + Clone> Simplex<L> {
    pub fn new(labels: impl IntoIterator<Item = L>) -> Result<Self> {
        let mut v: Vec<L> = labels.into_iter().collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            return Err(Error::EmptySimplex);
        }
        Ok(Simplex(v))
    }

    pub fn labels(&self) -> &[L] {
        &self.0
    }

    /// Dimension `n` of an `n`-simplex (one less than the number of labels).
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The codimension-one faces in order: face `i` drops the `i`-th smallest label.
    pub fn facets(&self) -> impl Iterator<Item = Simplex<L>> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// Every non-empty subset, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex<L>> + '_ {
        let n = self.0.len();
        assert!(n < usize::BITS as usize, "simplex too large to enumerate faces");
        (1usize..(1 << n)).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.0[i].clone())
                    .collect(),
            )
        })
    }

    pub fn contains(&self, label: &L) -> bool {
        self.0.binary_search(label).is_ok()
    }
}

impl<L: fmt::Display> fmt::Display for Simplex<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// A downward-closed finite set of simplices, materialized explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex<L: Ord> {
    simplices: BTreeSet<Simplex<L>>,
}

impl<L: Ord + Clone + fmt::Display> SimplicialComplex<L> {
    pub fn empty() -> Self {
        SimplicialComplex {
            simplices: BTreeSet::new(),
        }
    }

    /// Validates downward closure of an explicit simplex list.
    pub fn new(simplices: impl IntoIterator<Item = Simplex<L>>) -> Result<Self> {
        let complex = SimplicialComplex {
            simplices: simplices.into_iter().collect(),
        };
        complex.check_downward_closed()?;
        Ok(complex)
    }

    /// Downward closure of a generating set.
    pub fn from_generators(generators: impl IntoIterator<Item = Simplex<L>>) -> Self {
        let mut simplices = BTreeSet::new();
        for g in generators {
            if simplices.contains(&g) {
                continue;
            }
            simplices.extend(g.faces());
        }
        SimplicialComplex { simplices }
    }

    pub fn check_downward_closed(&self) -> Result<()> {
        for s in &self.simplices {
            if let Some(face) = s.facets().find(|f| !self.simplices.contains(f)) {
                return Err(Error::NotDownwardClosed {
                    simplex: s.to_string(),
                    face: face.to_string(),
                });
            }
        }
        Ok(())
    }

    /// The simplices satisfying `keep`; the caller guarantees the result is closed.
    pub fn filter(&self, keep: impl Fn(&Simplex<L>) -> bool) -> Result<Self> {
        Self::new(self.simplices.iter().filter(|s| keep(s)).cloned())
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex<L>) -> bool {
        self.simplices.contains(s)
    }

    /// All simplices in canonical order.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex<L>> {
        self.simplices.iter()
    }

    /// `n`-simplices in canonical order.
    pub fn simplices_of_dim(&self, n: usize) -> impl Iterator<Item = &Simplex<L>> {
        self.simplices.iter().filter(move |s| s.dim() == n)
    }

    /// -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.iter().map(|s| s.dim() as isize).max().unwrap_or(-1)
    }

    /// Vertex labels in ascending order.
    pub fn label_universe(&self) -> Vec<L> {
        self.simplices_of_dim(0).map(|s| s.0[0].clone()).collect()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<&Simplex<L>> {
        let mut covered: BTreeSet<&Simplex<L>> = BTreeSet::new();
        let mut facets = Vec::new();
        for s in &self.simplices {
            facets.extend(s.facets());
        }
        let facet_set: BTreeSet<Simplex<L>> = facets.into_iter().collect();
        for s in &self.simplices {
            if facet_set.contains(s) {
                covered.insert(s);
            }
        }
        self.simplices.iter().filter(|s| !covered.contains(s)).collect()
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.simplices.is_subset(&other.simplices)
    }
}

/// A complex `K` with a subcomplex `K'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialPair<L: Ord> {
    total: SimplicialComplex<L>,
    sub: SimplicialComplex<L>,
}

impl<L: Ord + Clone + fmt::Display> SimplicialPair<L> {
    pub fn new(total: SimplicialComplex<L>, sub: SimplicialComplex<L>) -> Result<Self> {
        sub.check_downward_closed()?;
        if let Some(s) = sub.simplices().find(|s| !total.contains(s)) {
            return Err(Error::NotSubcomplex(s.to_string()));
        }
        Ok(SimplicialPair { total, sub })
    }

    pub fn total(&self) -> &SimplicialComplex<L> {
        &self.total
    }

    pub fn sub(&self) -> &SimplicialComplex<L> {
        &self.sub
    }

    /// Simplices of `K` not in `K'`, in canonical order.
    pub fn relative_simplices(&self) -> impl Iterator<Item = &Simplex<L>> {
        self.total.simplices().filter(|s| !self.sub.contains(s))
    }
}

/// Graded free abelian groups with integer boundary matrices.
///
/// `boundaries[n]` is the matrix of `d_n : C_n -> C_{n-1}`, with one column per
/// degree-`n` basis element; `d_0` is the zero map to the trivial group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex<B> {
    bases: Vec<Vec<B>>,
    boundaries: Vec<IntegerMatrix>,
}

impl<B> ChainComplex<B> {
    /// # Panics
    /// If matrix shapes do not match the adjacent bases.
    pub fn new(bases: Vec<Vec<B>>, boundaries: Vec<IntegerMatrix>) -> Self {
        assert_eq!(bases.len(), boundaries.len(), "one boundary per degree");
        for (n, d) in boundaries.iter().enumerate() {
            let below = if n == 0 { 0 } else { bases[n - 1].len() };
            assert_eq!((d.rows(), d.cols()), (below, bases[n].len()), "bad shape of d_{n}");
        }
        let complex = ChainComplex { bases, boundaries };
        debug_assert!(complex.boundary_squares_to_zero(), "d o d != 0");
        complex
    }

    /// Number of stored degrees; all higher degrees are zero.
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.iter().all(Vec::is_empty)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.bases.get(n).map_or(0, Vec::len)
    }

    pub fn basis(&self, n: usize) -> &[B] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    /// Matrix of `d_n`; an empty-shaped zero matrix beyond the stored range.
    pub fn boundary(&self, n: usize) -> IntegerMatrix {
        match self.boundaries.get(n) {
            Some(d) => d.clone(),
            None => IntegerMatrix::zeros(if n == 0 { 0 } else { self.rank(n - 1) }, 0),
        }
    }

    pub fn boundary_ref(&self, n: usize) -> Option<&IntegerMatrix> {
        self.boundaries.get(n)
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// Sum of `(-1)^n dim C_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.bases
            .iter()
            .enumerate()
            .map(|(n, b)| if n % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) })
            .sum()
    }

    /// The complex `C_{*+N}`: degree `i` holds degree `i + N`; the new `d_0` is zero.
    pub fn shift(&self, by: usize) -> Self
    where
        B: Clone,
    {
        let bases: Vec<Vec<B>> = self.bases.iter().skip(by).cloned().collect();
        let mut boundaries: Vec<IntegerMatrix> =
            self.boundaries.iter().skip(by).cloned().collect();
        if let Some(first) = boundaries.first_mut() {
            *first = IntegerMatrix::zeros(0, first.cols());
        }
        ChainComplex { bases, boundaries }
    }

    pub fn negated(&self) -> Self
    where
        B: Clone,
    {
        ChainComplex {
            bases: self.bases.clone(),
            boundaries: self.boundaries.iter().map(IntegerMatrix::neg).collect(),
        }
    }

    pub fn map_basis<C>(self, f: impl Fn(B) -> C) -> ChainComplex<C> {
        ChainComplex {
            bases: self
                .bases
                .into_iter()
                .map(|b| b.into_iter().map(&f).collect())
                .collect(),
            boundaries: self.boundaries,
        }
    }
}

/// Simplicial chain complex with alternating-sign faces in ascending label order.
pub fn chain_complex<L>(complex: &SimplicialComplex<L>) -> ChainComplex<Simplex<L>>
where
    L: Ord + Clone + Hash + fmt::Display,
{
    build_chain_complex(complex.simplices(), |_| false)
}

/// The quotient `C_*(K) / C_*(K')` on the basis of simplices in `K \ K'`.
pub fn relative_chain_complex<L>(pair: &SimplicialPair<L>) -> ChainComplex<Simplex<L>>
where
    L: Ord + Clone + Hash + fmt::Display,
{
    build_chain_complex(pair.relative_simplices(), |s| pair.sub.contains(s))
}

fn build_chain_complex<'a, L>(
    simplices: impl Iterator<Item = &'a Simplex<L>>,
    dropped: impl Fn(&Simplex<L>) -> bool,
) -> ChainComplex<Simplex<L>>
where
    L: Ord + Clone + Hash + 'a,
{
    let mut bases: Vec<Vec<Simplex<L>>> = Vec::new();
    for s in simplices {
        if bases.len() <= s.dim() {
            bases.resize_with(s.dim() + 1, Vec::new);
        }
        bases[s.dim()].push(s.clone());
    }
    for b in &mut bases {
        b.sort();
    }
    let index: Vec<HashMap<&Simplex<L>, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let mut boundaries = Vec::with_capacity(bases.len());
    for n in 0..bases.len() {
        if n == 0 {
            boundaries.push(IntegerMatrix::zeros(0, bases[0].len()));
            continue;
        }
        let mut triplets = Vec::new();
        for (col, s) in bases[n].iter().enumerate() {
            for (i, face) in s.facets().enumerate() {
                if dropped(&face) {
                    continue;
                }
                let row = *index[n - 1]
                    .get(&face)
                    .expect("face of a relative simplex is relative or dropped");
                triplets.push((row, col, if i % 2 == 0 { 1i64 } else { -1 }));
            }
        }
        boundaries.push(IntegerMatrix::from_triplets(
            bases[n - 1].len(),
            bases[n].len(),
            triplets,
        ));
    }
    ChainComplex::new(bases, boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(v: &[u32]) -> Simplex<u32> {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn full_triangle_bases() {
        let k = SimplicialComplex::from_generators([simplex(&[0, 1, 2])]);
        let c = chain_complex(&k);
        assert_eq!((c.rank(0), c.rank(1), c.rank(2)), (3, 3, 1));
        assert!(c.boundary_squares_to_zero());
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn facet_signs_follow_label_order() {
        let k = SimplicialComplex::from_generators([simplex(&[0, 1, 2])]);
        let c = chain_complex(&k);
        // Edges sorted: {0,1}, {0,2}, {1,2}; d{0,1,2} = {1,2} - {0,2} + {0,1}.
        let d2 = c.boundary(2);
        let col: Vec<i64> = (0..3).map(|r| i64::try_from(d2.get(r, 0)).unwrap()).collect();
        assert_eq!(col, vec![1, -1, 1]);
    }

    #[test]
    fn detects_missing_faces() {
        let err = SimplicialComplex::new([simplex(&[0, 1]), simplex(&[0])]).unwrap_err();
        assert!(matches!(err, Error::NotDownwardClosed { .. }));
        assert!(Simplex::<u32>::new([]).is_err());
    }

    #[test]
    fn pair_requires_subcomplex() {
        let k = SimplicialComplex::from_generators([simplex(&[0, 1])]);
        let other = SimplicialComplex::from_generators([simplex(&[5])]);
        assert!(matches!(SimplicialPair::new(k, other), Err(Error::NotSubcomplex(_))));
    }

    #[test]
    fn relative_sphere() {
        let full = SimplicialComplex::from_generators([simplex(&[0, 1, 2])]);
        let boundary = full.filter(|s| s.dim() < 2).unwrap();
        let pair = SimplicialPair::new(full.clone(), boundary).unwrap();
        let rel = relative_chain_complex(&pair);
        assert_eq!((rel.rank(0), rel.rank(1), rel.rank(2)), (0, 0, 1));
        let trivial = SimplicialPair::new(full.clone(), SimplicialComplex::empty()).unwrap();
        assert_eq!(relative_chain_complex(&trivial), chain_complex(&full));
    }

    #[test]
    fn shift_moves_degrees() {
        let k = SimplicialComplex::from_generators([simplex(&[0, 1, 2])]);
        let c = chain_complex(&k);
        assert_eq!(c.shift(0), c);
        let s = c.shift(2);
        assert_eq!(s.len(), 1);
        assert_eq!(s.rank(0), 1);
        assert!(s.boundary(0).is_zero());
        assert!(s.boundary_squares_to_zero());
    }

    #[test]
    fn maximal_simplices() {
        let k = SimplicialComplex::from_generators([simplex(&[0, 1, 2]), simplex(&[2, 3]), simplex(&[4])]);
        let max: Vec<String> = k.maximal_simplices().iter().map(|s| s.to_string()).collect();
        assert_eq!(max, vec!["{0, 1, 2}", "{2, 3}", "{4}"]);
        assert_eq!(k.dim(), 2);
    }
}
