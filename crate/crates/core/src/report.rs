//! Per-component magnitude homology tables, method dispatch and report
//! rendering (human-readable text and versioned JSON).

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::Graph;
use crate::homology::HomologyGroup;
use crate::{direct, geometric, tree, ComponentKey};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Auto,
    Geometric,
    Direct,
    Tree,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Geometric => "geometric",
            Method::Direct => "direct",
            Method::Tree => "tree",
        }
    }

    /// Concrete method for one length: trees use the closed form when `l >= 3`,
    /// other graphs the simplicial pair, and everything with `l < 3` the direct
    /// complex.
    pub fn resolve(self, g: &Graph, l: usize) -> Result<Method> {
        match self {
            Method::Auto if l >= 3 && g.is_tree() => Ok(Method::Tree),
            Method::Auto if l >= 3 => Ok(Method::Geometric),
            Method::Auto => Ok(Method::Direct),
            Method::Tree if !g.is_tree() => Err(Error::NotATree),
            Method::Tree | Method::Geometric if l < 3 => Err(Error::LengthTooSmall(l)),
            m => Ok(m),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Method::Auto),
            "geometric" => Ok(Method::Geometric),
            "direct" => Ok(Method::Direct),
            "tree" => Ok(Method::Tree),
            other => Err(format!("unknown method `{other}` (expected auto|geometric|direct|tree)")),
        }
    }
}

/// `MH_{k,l}(a, b)` for `0 <= k <= kmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentHomology {
    pub a: usize,
    pub b: usize,
    pub groups: Vec<HomologyGroup>,
}

/// All requested components at one length, with their direct-sum totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthTable {
    pub l: usize,
    pub kmax: usize,
    pub method: Method,
    pub components: Vec<ComponentHomology>,
    pub totals: Vec<HomologyGroup>,
}

impl LengthTable {
    pub fn new(l: usize, kmax: usize, method: Method, components: Vec<ComponentHomology>) -> Self {
        let totals = (0..=kmax)
            .map(|k| HomologyGroup::direct_sum(components.iter().map(|c| &c.groups[k])))
            .collect();
        LengthTable {
            l,
            kmax,
            method,
            components,
            totals,
        }
    }

    pub fn component(&self, a: usize, b: usize) -> Option<&ComponentHomology> {
        self.components.iter().find(|c| c.a == a && c.b == b)
    }

    /// Totals over the members of each type, in labeling order.
    pub fn by_type(&self, g: &Graph, labeling: &TypeLabeling) -> Result<Vec<(String, Vec<HomologyGroup>)>> {
        labeling
            .classes
            .iter()
            .map(|class| {
                let members = class
                    .pairs
                    .iter()
                    .map(|(a, b)| {
                        let (a, b) = (g.vertex(a)?, g.vertex(b)?);
                        self.component(a, b).ok_or_else(|| {
                            Error::Labeling(format!("pair ({},{}) was not computed", g.name(a), g.name(b)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let groups = (0..=self.kmax)
                    .map(|k| HomologyGroup::direct_sum(members.iter().map(|c| &c.groups[k])))
                    .collect();
                Ok((class.label.clone(), groups))
            })
            .collect()
    }
}

/// A user-supplied grouping of ordered vertex pairs into named types.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeLabeling {
    #[serde(default)]
    pub format_version: Option<u32>,
    #[serde(rename = "types")]
    pub classes: Vec<TypeClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeClass {
    pub label: String,
    pub pairs: Vec<(String, String)>,
}

impl TypeLabeling {
    pub fn parse(source: &str) -> Result<Self> {
        let labeling: TypeLabeling =
            serde_json::from_str(source).map_err(|e| Error::Labeling(e.to_string()))?;
        Ok(labeling)
    }

    /// Every pair names known vertices and appears in at most one type.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = HashSet::new();
        for class in &self.classes {
            for (a, b) in &class.pairs {
                g.vertex(a)?;
                g.vertex(b)?;
                if !seen.insert((a, b)) {
                    return Err(Error::Labeling(format!("pair ({a},{b}) is listed twice")));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("labeling serializes")
    }
}

/// The eight orbit types of ordered vertex pairs of `Sq2` under its symmetry
/// group (`a <-> d` with `b <-> c`, `f <-> e`, and `b <-> f` with `c <-> e`).
pub fn sq2_type_labeling() -> TypeLabeling {
    let classes: [(&str, &[&str]); 8] = [
        ("(a,a)", &["aa", "dd"]),
        ("(a,b)", &["ab", "af", "dc", "de", "ba", "fa", "cd", "ed"]),
        ("(a,c)", &["ac", "ae", "db", "df", "ca", "ea", "bd", "fd"]),
        ("(a,d)", &["ad", "da"]),
        ("(b,b)", &["bb", "cc", "ee", "ff"]),
        ("(b,c)", &["bc", "fe", "cb", "ef"]),
        ("(b,f)", &["bf", "fb", "ce", "ec"]),
        ("(b,e)", &["be", "fc", "eb", "cf"]),
    ];
    TypeLabeling {
        format_version: Some(FORMAT_VERSION),
        classes: classes
            .iter()
            .map(|(label, pairs)| TypeClass {
                label: label.to_string(),
                pairs: pairs
                    .iter()
                    .map(|p| (p[0..1].to_string(), p[1..2].to_string()))
                    .collect(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone)]
pub struct ComputeConfig {
    pub lengths: Vec<usize>,
    /// Defaults to `l` for each length.
    pub kmax: Option<usize>,
    pub method: Method,
    pub pair: Option<(usize, usize)>,
    pub exec: Execution,
}

impl Default for ComputeConfig {
    fn default() -> Self {
        ComputeConfig {
            lengths: vec![],
            kmax: None,
            method: Method::Auto,
            pair: None,
            exec: Execution::default(),
        }
    }
}

/// Computes one table per requested length. With [`Method::Tree`] the totals
/// are cross-checked against the closed form; disagreement is a
/// [`Error::Consistency`] failure.
pub fn compute(g: &Graph, config: &ComputeConfig) -> Result<Vec<LengthTable>> {
    config
        .lengths
        .iter()
        .map(|&l| compute_length(g, l, config))
        .collect()
}

fn compute_length(g: &Graph, l: usize, config: &ComputeConfig) -> Result<LengthTable> {
    let kmax = config.kmax.unwrap_or(l);
    let method = config.method.resolve(g, l)?;
    let keys: Vec<ComponentKey> = match config.pair {
        Some((a, b)) => vec![ComponentKey::new(a, b, l)],
        None => geometric::all_keys(g, l),
    };
    let groups = config.exec.map(&keys, |&key| match method {
        Method::Direct => Ok(direct::magnitude_homology_direct(g, key, kmax)),
        Method::Geometric => geometric::magnitude_homology_geometric(g, key, kmax),
        Method::Tree => tree::tree_component_homology(g, key, kmax),
        Method::Auto => unreachable!("resolved above"),
    });
    let components = keys
        .iter()
        .zip(groups)
        .map(|(key, groups)| {
            groups.map(|groups| ComponentHomology {
                a: key.a,
                b: key.b,
                groups,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let table = LengthTable::new(l, kmax, method, components);
    if method == Method::Tree && config.pair.is_none() {
        for k in 3..=kmax {
            let closed = tree::tree_magnitude_closed_form(g, l, k)?;
            if table.totals[k] != closed {
                return Err(Error::Consistency(format!(
                    "tree decomposition gives MH_{{{k},{l}}} = {} but the closed form is {closed}",
                    table.totals[k]
                )));
            }
        }
    }
    Ok(table)
}

/// Compact cell text: the rank, followed by any torsion summands.
fn cell(h: &HomologyGroup) -> String {
    let mut s = h.betti.to_string();
    for t in &h.torsion {
        let _ = write!(s, "+Z/{t}");
    }
    s
}

/// Human-readable rendering of the tables.
pub fn render_text(g: &Graph, source: &str, tables: &[LengthTable], types: Option<&TypeLabeling>) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "graph {source}: {g}");
    for t in tables {
        let _ = writeln!(out, "\nl = {}, kmax = {}, method = {}", t.l, t.kmax, t.method.as_str());
        let _ = writeln!(out, "{:>4}  MH_{{k,l}}", "k");
        for (k, h) in t.totals.iter().enumerate() {
            let _ = writeln!(out, "{k:>4}  {h}");
        }
        let nonzero: Vec<_> = t
            .components
            .iter()
            .filter(|c| c.groups.iter().any(|h| !h.is_zero()))
            .collect();
        if !nonzero.is_empty() {
            let _ = writeln!(out, "components:");
            for c in nonzero {
                let parts: Vec<String> = c
                    .groups
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| !h.is_zero())
                    .map(|(k, h)| format!("MH_{k} = {h}"))
                    .collect();
                let _ = writeln!(out, "  ({},{}): {}", g.name(c.a), g.name(c.b), parts.join(", "));
            }
        }
        if let Some(labeling) = types {
            let rows = t.by_type(g, labeling)?;
            let _ = writeln!(out, "ranks by type:");
            let _ = write!(out, "{:>4}", "k");
            for (label, _) in &rows {
                let _ = write!(out, " {label:>8}");
            }
            out.push('\n');
            for k in 0..=t.kmax {
                let _ = write!(out, "{k:>4}");
                for (_, groups) in &rows {
                    let _ = write!(out, " {:>8}", cell(&groups[k]));
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn groups_json(groups: &[HomologyGroup]) -> Value {
    groups
        .iter()
        .enumerate()
        .map(|(k, h)| {
            let mut v = serde_json::to_value(h).expect("group serializes");
            v["k"] = json!(k);
            v
        })
        .collect()
}

/// Versioned structured report. Output is a pure function of its inputs.
pub fn render_structured(
    g: &Graph,
    source: &str,
    tables: &[LengthTable],
    types: Option<&TypeLabeling>,
) -> Result<String> {
    let mut results = Vec::new();
    for t in tables {
        let components: Vec<Value> = t
            .components
            .iter()
            .map(|c| {
                json!({
                    "a": g.name(c.a),
                    "b": g.name(c.b),
                    "groups": groups_json(&c.groups),
                })
            })
            .collect();
        let mut entry = json!({
            "l": t.l,
            "kmax": t.kmax,
            "method": t.method.as_str(),
            "components": components,
            "totals": groups_json(&t.totals),
        });
        if let Some(labeling) = types {
            let rows: Vec<Value> = t
                .by_type(g, labeling)?
                .into_iter()
                .map(|(label, groups)| json!({ "label": label, "groups": groups_json(&groups) }))
                .collect();
            entry["types"] = Value::Array(rows);
        }
        results.push(entry);
    }
    let doc = json!({
        "format_version": FORMAT_VERSION,
        "tool": { "name": "maghom", "version": env!("CARGO_PKG_VERSION") },
        "graph": {
            "source": source,
            "vertices": g.names(),
            "edges": g.edges().map(|(u, v)| [g.name(u), g.name(v)]).collect::<Vec<_>>(),
        },
        "results": results,
    });
    Ok(serde_json::to_string_pretty(&doc).expect("report serializes") + "\n")
}
