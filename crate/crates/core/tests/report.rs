use maghom::direct::magnitude_homology_graph;
use maghom::export::{delta_pair_json, k_pair_json, to_off};
use maghom::geometric::build_k_pair;
use maghom::graph;
use maghom::report::{compute, render_structured, render_text, sq2_type_labeling, ComputeConfig, Method, TypeLabeling};
use maghom::tree::{build_delta_pair, decompose_tree_component};
use maghom::{ComponentKey, Error, Execution, Graph, HomologyGroup};
use serde_json::Value;

fn config(lengths: Vec<usize>, method: Method) -> ComputeConfig {
    ComputeConfig {
        lengths,
        method,
        ..Default::default()
    }
}

#[test]
fn structured_output_is_deterministic() {
    let g = graph::sq2();
    let labeling = sq2_type_labeling();
    let render = |exec| {
        let cfg = ComputeConfig {
            exec,
            ..config(vec![3, 4], Method::Auto)
        };
        render_structured(&g, "sq2", &compute(&g, &cfg).unwrap(), Some(&labeling)).unwrap()
    };
    let first = render(Execution::Parallel);
    assert_eq!(first, render(Execution::Parallel));
    assert_eq!(first, render(Execution::Sequential));
    let doc: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(doc["format_version"], 1);
    assert_eq!(doc["results"][1]["method"], "geometric");
    assert_eq!(doc["results"][1]["totals"][4]["betti"], 112);
    assert_eq!(doc["results"][1]["totals"][4]["torsion"], Value::Array(vec![]));
    assert_eq!(doc["results"][1]["types"][1]["groups"][4]["betti"], 40);
    assert_eq!(doc["graph"]["edges"].as_array().unwrap().len(), 8);
}

#[test]
fn totals_match_whole_graph_direct() {
    for (g, l) in [(graph::cycle(5), 4), (graph::complete(4), 3), (graph::sq2(), 3)] {
        let tables = compute(&g, &config(vec![l], Method::Geometric)).unwrap();
        let direct = magnitude_homology_graph(&g, l, l, Execution::Sequential);
        assert_eq!(tables[0].totals, direct.totals);
    }
}

#[test]
fn auto_dispatch() {
    let tree = Graph::generate("random-tree:8:1").unwrap();
    let t = compute(&tree, &config(vec![5], Method::Auto)).unwrap().remove(0);
    assert_eq!(t.method, Method::Tree);
    let nonzero: Vec<usize> = (0..=5).filter(|&k| !t.totals[k].is_zero()).collect();
    assert_eq!(nonzero, [5]);
    assert_eq!(t.totals[5], HomologyGroup::free(14));

    let t = compute(&graph::path(3), &config(vec![0], Method::Auto)).unwrap().remove(0);
    assert_eq!((t.method, t.totals[0].betti), (Method::Direct, 3));
    assert_eq!(compute(&graph::cycle(4), &config(vec![2], Method::Auto)).unwrap()[0].method, Method::Direct);
}

#[test]
fn invalid_configs() {
    let cyc = graph::cycle(4);
    assert!(matches!(compute(&cyc, &config(vec![3], Method::Tree)), Err(Error::NotATree)));
    assert!(matches!(compute(&cyc, &config(vec![2], Method::Geometric)), Err(Error::LengthTooSmall(2))));
}

#[test]
fn pair_filter() {
    let g = graph::sq2();
    let (a, d) = (g.vertex("a").unwrap(), g.vertex("d").unwrap());
    let cfg = ComputeConfig {
        pair: Some((a, d)),
        ..config(vec![4], Method::Geometric)
    };
    let t = compute(&g, &cfg).unwrap().remove(0);
    assert_eq!(t.components.len(), 1);
    assert_eq!(t.totals[3], HomologyGroup::free(2));
    assert!(matches!(t.by_type(&g, &sq2_type_labeling()), Err(Error::Labeling(_))));
}

#[test]
fn text_table_lists_types() {
    let g = graph::sq2();
    let tables = compute(&g, &config(vec![4], Method::Direct)).unwrap();
    let text = render_text(&g, "sq2", &tables, Some(&sq2_type_labeling())).unwrap();
    assert!(text.contains("   3  Z^12\n"));
    assert!(text.contains("   4  Z^112\n"));
    let row = text.lines().find(|l| l.trim_start().starts_with("4 ") && l.contains("40")).unwrap();
    let cells: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cells, ["4", "12", "40", "0", "0", "32", "0", "20", "8"]);
}

#[test]
fn labeling_errors() {
    let g = graph::sq2();
    assert!(matches!(TypeLabeling::parse("not json"), Err(Error::Labeling(_))));
    let unknown = TypeLabeling::parse(r#"{"types":[{"label":"x","pairs":[["a","q"]]}]}"#).unwrap();
    assert!(matches!(unknown.validate(&g), Err(Error::UnknownVertex(_))));
}

#[test]
fn export_k_pairs() {
    let g = graph::sq2();
    let ad = ComponentKey::new(g.vertex("a").unwrap(), g.vertex("d").unwrap(), 4);
    let kp = build_k_pair(&g, ad).unwrap();
    let doc: Value = serde_json::from_str(&k_pair_json(&g, &kp)).unwrap();
    assert_eq!(doc["kind"], "k_pair");
    assert_eq!(doc["distance"], 3);
    for s in doc["simplices"].as_array().unwrap() {
        assert_eq!(s["interior_length"].as_u64().unwrap() <= 3, s["in_sub"].as_bool().unwrap());
    }
    let off = to_off(kp.total(), kp.sub()).unwrap();
    let header: Vec<usize> = off.lines().nth(1).unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
    assert_eq!(header[0], kp.total().label_universe().len());
    assert_eq!(off.lines().count(), 2 + header[0] + header[1]);

    let p = graph::path(5);
    let kp = build_k_pair(&p, ComponentKey::new(0, 4, 4)).unwrap();
    let doc: Value = serde_json::from_str(&k_pair_json(&p, &kp)).unwrap();
    assert_eq!(doc["maximal_simplices"].as_array().unwrap().len(), 1);
    assert_eq!(doc["maximal_simplices"][0].as_array().unwrap().len(), 3);
    assert!(doc["sub_maximal_simplices"].as_array().unwrap().is_empty());

    let far = build_k_pair(&p, ComponentKey::new(0, 4, 3)).unwrap();
    let doc: Value = serde_json::from_str(&k_pair_json(&p, &far)).unwrap();
    assert!(doc["simplices"].as_array().unwrap().is_empty());
    assert_eq!(to_off(far.total(), far.sub()).unwrap(), "OFF\n0 0 0\n");
}

#[test]
fn export_delta_pair() {
    let g = graph::path(2);
    let comps = decompose_tree_component(&g, ComponentKey::new(0, 0, 4)).unwrap();
    let dp = build_delta_pair(&comps[0], 4).unwrap();
    let doc: Value = serde_json::from_str(&delta_pair_json(&g, comps[0].walk.points(), &dp)).unwrap();
    assert_eq!(doc["kind"], "delta_pair");
    assert_eq!(doc["walk"], serde_json::json!(["0", "1", "0", "1", "0"]));
    assert_eq!(doc["maximal_simplices"], serde_json::json!([[1, 2, 3]]));
    assert_eq!(doc["sub_maximal_simplices"].as_array().unwrap().len(), 3);
    assert!(to_off(dp.ambient(), dp.sub()).unwrap().starts_with("OFF\n3 4 0\n"));
}
