//! Finite simple connected graphs with their hop-count metric.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, simple, connected graph.
///
/// Vertices are indexed `0..n` in declaration order; that order is the global
/// total order every downstream construction relies on. The shortest-path
/// metric is computed once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
    dist: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format_version: Option<u32>,
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl Graph {
    /// Builds and validates a graph from declared vertices and named edges.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::new();
        for v in vertices {
            let v = v.as_ref().to_string();
            if index.insert(v.clone(), names.len()).is_some() {
                return Err(Error::DuplicateVertex(v));
            }
            names.push(v);
        }
        if names.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let iu = *index.get(u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
            let iv = *index.get(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
            pairs.push((iu, iv));
        }
        Self::from_indexed(names, &pairs)
    }

    fn from_indexed(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut edges = BTreeSet::new();
        for &(u, v) in pairs {
            if u == v {
                return Err(Error::SelfLoop(names[u].clone()));
            }
            if !edges.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(names[u].clone(), names[v].clone()));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let dist = all_pairs_bfs(&adjacency);
        if let Some(v) = dist[0].iter().position(|&d| d == usize::MAX) {
            return Err(Error::Disconnected {
                from: names[0].clone(),
                unreachable: names[v].clone(),
            });
        }
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Graph {
            names,
            index,
            adjacency,
            edges,
            dist,
        })
    }

    /// Parses either the JSON document form (`{"vertices": [...], "edges": [[u, v], ...]}`)
    /// or a plain edge list with one `u v` pair per line and `#` comments.
    ///
    /// In the edge-list form vertices are declared by first appearance; a line
    /// holding a single token declares an isolated vertex.
    pub fn parse(source: &str) -> Result<Self> {
        if source.trim_start().starts_with('{') {
            Self::parse_json(source)
        } else {
            Self::parse_edge_list(source)
        }
    }

    pub fn parse_json(source: &str) -> Result<Self> {
        let doc: GraphDocument = serde_json::from_str(source)?;
        let edges: Vec<(String, String)> = doc
            .edges
            .into_iter()
            .map(|[u, v]| (u, v))
            .collect();
        Self::new(&doc.vertices, &edges)
    }

    pub fn parse_edge_list(source: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut pairs = Vec::new();
        let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
            *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        for (lineno, raw) in source.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [v] => {
                    intern(v, &mut names);
                }
                [u, v] => {
                    let iu = intern(u, &mut names);
                    let iv = intern(v, &mut names);
                    pairs.push((iu, iv));
                }
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("expected `u v`, found {} tokens", tokens.len()),
                    })
                }
            }
        }
        if names.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Self::from_indexed(names, &pairs)
    }

    /// Serializes to the JSON document form, preserving vertex order.
    pub fn to_json(&self) -> String {
        let doc = GraphDocument {
            format_version: Some(1),
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph document serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    /// Edges as `(u, v)` index pairs with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Neighbours of `v` in ascending vertex order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Hop-count distance between two vertex indices.
    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u][v]
    }

    /// Hop-count distance between two named vertices.
    pub fn distance(&self, u: &str, v: &str) -> Result<usize> {
        Ok(self.dist(self.vertex(u)?, self.vertex(v)?))
    }

    pub fn diameter(&self) -> usize {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Connected with `#E = #V - 1`.
    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count()
    }

    /// `L(x) = sum of d(x_i, x_{i+1})` for an arbitrary vertex tuple.
    pub fn length_of(&self, points: &[usize]) -> usize {
        points.windows(2).map(|w| self.dist(w[0], w[1])).sum()
    }

    /// All unit-step walks from `a` to `b` with at most `max_steps` steps, in
    /// lexicographic order of their vertex tuples.
    ///
    /// The zero-step walk `(a)` is included when `a == b`.
    pub fn enumerate_walks(&self, a: usize, b: usize, max_steps: usize) -> Vec<Walk> {
        let mut out = Vec::new();
        let mut stack = vec![a];
        self.extend_walks(b, max_steps, &mut stack, &mut out);
        out
    }

    fn extend_walks(&self, b: usize, budget: usize, stack: &mut Vec<usize>, out: &mut Vec<Walk>) {
        let cur = *stack.last().expect("walk is never empty");
        if cur == b {
            out.push(Walk(Sequence {
                length: stack.len() - 1,
                points: stack.clone(),
            }));
        }
        if budget == 0 {
            return;
        }
        for &w in &self.adjacency[cur] {
            if self.dist(w, b) < budget {
                stack.push(w);
                self.extend_walks(b, budget - 1, stack, out);
                stack.pop();
            }
        }
    }

    /// Builds a builtin graph from a generator spec such as `cycle:5` or `sq2`.
    ///
    /// Families: `path:n`, `cycle:n` (n >= 3), `complete:n`, `star:n` (n vertices,
    /// one centre), `random-tree:n:seed`, `sq2`.
    pub fn generate(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = |message: &str| Error::InvalidGenerator {
            spec: spec.to_string(),
            message: message.to_string(),
        };
        let size = |s: &str| -> Result<usize> {
            let n: usize = s.parse().map_err(|_| bad("size must be a non-negative integer"))?;
            if n < 1 {
                return Err(bad("size must be at least 1"));
            }
            Ok(n)
        };
        match parts.as_slice() {
            ["sq2"] => Ok(sq2()),
            ["path", n] => Ok(path(size(n)?)),
            ["cycle", n] => {
                let n = size(n)?;
                if n < 3 {
                    return Err(bad("a simple cycle needs at least 3 vertices"));
                }
                Ok(cycle(n))
            }
            ["complete", n] => Ok(complete(size(n)?)),
            ["star", n] => Ok(star(size(n)?)),
            ["random-tree", n, seed] => {
                let seed: u64 = seed.parse().map_err(|_| bad("seed must be a u64"))?;
                Ok(random_tree(size(n)?, seed))
            }
            [family, ..] if ["sq2", "path", "cycle", "complete", "star", "random-tree"].contains(family) => {
                Err(bad("wrong number of parameters"))
            }
            _ => Err(Error::UnknownFamily(spec.to_string())),
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices, {} edges", self.vertex_count(), self.edge_count())
    }
}

fn all_pairs_bfs(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    let mut dist = vec![vec![usize::MAX; n]; n];
    let mut queue = VecDeque::new();
    for (s, row) in dist.iter_mut().enumerate() {
        row[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in &adjacency[u] {
                if row[w] == usize::MAX {
                    row[w] = row[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn build(names: Vec<String>, pairs: &[(usize, usize)]) -> Graph {
    Graph::from_indexed(names, pairs).expect("builtin generator yields a valid graph")
}

pub fn path(n: usize) -> Graph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(numbered(n), &pairs)
}

pub fn cycle(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(numbered(n), &pairs)
}

pub fn complete(n: usize) -> Graph {
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    build(numbered(n), &pairs)
}

pub fn star(n: usize) -> Graph {
    let pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
    build(numbered(n), &pairs)
}

/// Uniform random attachment tree: vertex `i` hangs off a uniformly chosen earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<_> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    build(numbered(n), &pairs)
}

/// Random connected graph: a random attachment tree plus each remaining pair
/// added independently with probability `extra_edge_probability`.
pub fn random_connected(n: usize, extra_edge_probability: f64, rng: &mut impl Rng) -> Graph {
    let mut pairs: Vec<_> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    let present: BTreeSet<_> = pairs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !present.contains(&(i, j)) && rng.random_bool(extra_edge_probability) {
                pairs.push((i, j));
            }
        }
    }
    build(numbered(n), &pairs)
}

/// The six-vertex graph `Sq2`: two triangles `a-b-f` and `c-d-e` joined by the
/// square `b-c-e-f`.
///
/// The edge set is pinned down by its length-4 walks from `a` to `a` and from
/// `a` to `d`; see the `sq2_edge_set_is_consistent` test.
pub fn sq2() -> Graph {
    let vertices = ["a", "b", "c", "d", "e", "f"];
    let edges = [
        ("a", "b"),
        ("a", "f"),
        ("b", "f"),
        ("b", "c"),
        ("f", "e"),
        ("c", "e"),
        ("c", "d"),
        ("e", "d"),
    ];
    Graph::new(&vertices, &edges).expect("sq2 is a valid graph")
}

/// A vertex tuple with consecutive entries distinct, together with its length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Sequence {
    points: Vec<usize>,
    length: usize,
}

impl Sequence {
    pub fn new(g: &Graph, points: Vec<usize>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Consistency("sequence must have at least one point".into()));
        }
        if let Some(&v) = points.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Consistency(format!(
                "consecutive entries of a sequence must differ (repeated `{}`)",
                g.name(w[0])
            )));
        }
        let length = g.length_of(&points);
        Ok(Sequence { points, length })
    }

    /// Trusted constructor for enumerators that already know the length.
    pub(crate) fn from_parts(points: Vec<usize>, length: usize) -> Self {
        Sequence { points, length }
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// Total length `L`.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Degree `k` of a `(k+1)`-sequence.
    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> impl fmt::Display + 'a {
        DisplayTuple(&self.points, g)
    }
}

struct DisplayTuple<'a>(&'a [usize], &'a Graph);

impl fmt::Display for DisplayTuple<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, &v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.1.name(v))?;
        }
        f.write_str(")")
    }
}

/// A sequence whose every step has distance one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk(Sequence);

impl Walk {
    pub fn new(g: &Graph, points: Vec<usize>) -> Result<Self> {
        let seq = Sequence::new(g, points)?;
        if seq.length() != seq.degree() {
            return Err(Error::Consistency("every step of a walk must be an edge".into()));
        }
        Ok(Walk(seq))
    }

    pub fn sequence(&self) -> &Sequence {
        &self.0
    }

    pub fn points(&self) -> &[usize] {
        self.0.points()
    }

    /// Number of steps, which equals the length.
    pub fn steps(&self) -> usize {
        self.0.degree()
    }
}
