//! Complex export: a versioned JSON document and OFF geometry for viewers.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometric::{KPair, PositionedVertex};
use crate::graph::Graph;
use crate::report::FORMAT_VERSION;
use crate::simplicial::{Simplex, SimplicialComplex};
use crate::tree::DeltaPair;

/// JSON export of `(K_l(a,b), K'_l(a,b))`, each simplex annotated with the
/// length `L(a, x_i1, ..., x_ik, b)` and whether it lies in `K'`.
pub fn k_pair_json(g: &Graph, kp: &KPair) -> String {
    let key = kp.key();
    let label = |p: &PositionedVertex| json!({ "vertex": g.name(p.vertex), "position": p.position });
    let simplex = |s: &Simplex<PositionedVertex>| Value::Array(s.labels().iter().map(label).collect());
    let simplices: Vec<Value> = kp
        .total()
        .simplices()
        .map(|s| {
            json!({
                "labels": simplex(s),
                "dim": s.dim(),
                "interior_length": kp.interior_length(g, s),
                "in_sub": kp.sub().contains(s),
            })
        })
        .collect();
    let doc = json!({
        "format_version": FORMAT_VERSION,
        "kind": "k_pair",
        "key": { "a": g.name(key.a), "b": g.name(key.b), "l": key.l },
        "distance": g.dist(key.a, key.b),
        "label_universe": kp.total().label_universe().iter().map(label).collect::<Vec<_>>(),
        "maximal_simplices": kp.total().maximal_simplices().into_iter().map(simplex).collect::<Vec<_>>(),
        "sub_maximal_simplices": kp.sub().maximal_simplices().into_iter().map(simplex).collect::<Vec<_>>(),
        "simplices": simplices,
    });
    serde_json::to_string_pretty(&doc).expect("export serializes") + "\n"
}

/// JSON export of `(Delta^{l-2}, Delta_x)` for one tree walk.
pub fn delta_pair_json(g: &Graph, walk: &[usize], dp: &DeltaPair) -> String {
    let simplex = |s: &Simplex<usize>| json!(s.labels());
    let doc = json!({
        "format_version": FORMAT_VERSION,
        "kind": "delta_pair",
        "l": dp.l,
        "walk": walk.iter().map(|&v| g.name(v)).collect::<Vec<_>>(),
        "label_universe": dp.ambient().label_universe(),
        "maximal_simplices": dp.ambient().maximal_simplices().into_iter().map(simplex).collect::<Vec<_>>(),
        "sub_maximal_simplices": dp.sub().maximal_simplices().into_iter().map(simplex).collect::<Vec<_>>(),
        "simplices": dp.ambient().simplices().map(|s| json!({
            "labels": s.labels(),
            "dim": s.dim(),
            "in_sub": dp.sub().contains(s),
        })).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&doc).expect("export serializes") + "\n"
}

/// Synthetic 3D coordinates for complex vertices.
pub trait Layout: Ord + Clone + std::fmt::Display {
    fn coordinates(universe: &[Self]) -> Vec<[f64; 3]>;
}

impl Layout for PositionedVertex {
    /// Layered: x is the position, y the rank of the vertex within its layer.
    fn coordinates(universe: &[Self]) -> Vec<[f64; 3]> {
        let mut out = Vec::with_capacity(universe.len());
        let mut layer_rank = 0;
        for (i, p) in universe.iter().enumerate() {
            if i > 0 && universe[i - 1].position != p.position {
                layer_rank = 0;
            }
            out.push([p.position as f64, layer_rank as f64, 0.0]);
            layer_rank += 1;
        }
        out
    }
}

impl Layout for usize {
    /// Points on the moment curve, so every simplex of dimension <= 3 is non-degenerate.
    fn coordinates(universe: &[Self]) -> Vec<[f64; 3]> {
        universe
            .iter()
            .map(|&p| {
                let t = p as f64;
                [t, t * t / 4.0, t * t * t / 16.0]
            })
            .collect()
    }
}

/// OFF export for complexes of dimension at most 3. Maximal simplices of `total`
/// become faces in light grey (tetrahedra as their four triangles); maximal
/// simplices of `sub` are emitted again in dark grey.
pub fn to_off<L: Layout>(total: &SimplicialComplex<L>, sub: &SimplicialComplex<L>) -> Result<String> {
    if total.dim() > 3 {
        return Err(Error::Consistency(format!(
            "OFF export supports dimension <= 3, complex has dimension {}",
            total.dim()
        )));
    }
    let universe = total.label_universe();
    let coords = L::coordinates(&universe);
    let idx = |l: &L| universe.binary_search(l).expect("label in universe");
    let mut faces: Vec<(Vec<usize>, &str)> = Vec::new();
    for (complex, colour) in [(total, "0.8 0.8 0.8"), (sub, "0.1 0.1 0.1")] {
        for s in complex.maximal_simplices() {
            let ids: Vec<usize> = s.labels().iter().map(idx).collect();
            match ids.len() {
                1 => {}
                4 => {
                    for skip in 0..4 {
                        let tri: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| ids[i]).collect();
                        faces.push((tri, colour));
                    }
                }
                _ => faces.push((ids, colour)),
            }
        }
    }
    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} 0", coords.len(), faces.len());
    for [x, y, z] in coords {
        let _ = writeln!(out, "{x} {y} {z}");
    }
    for (ids, colour) in faces {
        let list: Vec<String> = ids.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{} {} {colour}", ids.len(), list.join(" "));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometric::build_k_pair;
    use crate::{graph, ComponentKey};

    #[test]
    fn sq2_aa_export() {
        let g = graph::sq2();
        let a = g.vertex("a").unwrap();
        let kp = build_k_pair(&g, ComponentKey::new(a, a, 4)).unwrap();
        let v: Value = serde_json::from_str(&k_pair_json(&g, &kp)).unwrap();
        assert_eq!(v["maximal_simplices"].as_array().unwrap().len(), 8);
        for s in v["simplices"].as_array().unwrap() {
            let short = s["interior_length"].as_u64().unwrap() <= 3;
            assert_eq!(short, s["in_sub"].as_bool().unwrap());
        }
        let off = to_off(kp.total(), kp.sub()).unwrap();
        assert!(off.starts_with("OFF\n"));
    }

    #[test]
    fn off_rejects_high_dimension() {
        let big = SimplicialComplex::from_generators([Simplex::new(0usize..5).unwrap()]);
        assert!(to_off(&big, &SimplicialComplex::empty()).is_err());
    }
}
