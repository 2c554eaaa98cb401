use auglab::generate::{generate, GeneratorKind, GeneratorSpec};
use auglab::io::{
    loaded_to_json, parse_instance, read_instance, sidecar_path, write_json, write_worstcase,
    InstanceData,
};
use auglab::worstcase::{build_worstcase, WorstCaseParams};
use auglab::FeasibleSet;

fn points(set: &dyn FeasibleSet) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    set.scan(&auglab::instance::ScanRequest::new(&[], None), &mut |x| {
        out.push(x.to_vec());
        auglab::instance::Visit::Continue
    })
    .unwrap();
    out.sort();
    out
}

#[test]
fn generated_instances_survive_a_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for kind in [
        GeneratorKind::RandomKnapsack,
        GeneratorKind::RandomSetpack,
        GeneratorKind::CardinalityK,
    ] {
        let spec = GeneratorSpec::new(kind, 7, 42);
        let loaded = generate(&spec).unwrap().loaded();
        let path = dir.path().join(format!("{}.json", spec.id()));
        write_json(&path, &loaded_to_json(&loaded)).unwrap();
        let back = read_instance(&path).unwrap();
        assert_eq!(back.set().objective(), loaded.set().objective());
        assert_eq!(points(back.set()), points(loaded.set()));
    }
}

#[test]
fn minimization_is_negated_and_written_back() {
    let text = r#"{"n": 2, "rows": [{"coeffs": [1, 1], "sense": "LE", "rhs": 1}],
        "lower": [0, 0], "upper": [1, 1], "objective": [3, -2], "maximize": false}"#;
    let loaded = parse_instance(text).unwrap();
    assert!(loaded.negated);
    assert_eq!(loaded.set().objective().coeffs(), &[-3, 2]);
    let json = loaded_to_json(&loaded);
    assert_eq!(json["objective"], serde_json::json!([3, -2]));
    assert_eq!(json["maximize"], serde_json::json!(false));
}

#[test]
fn rational_data_is_scaled_to_integers() {
    let text = r#"{"rows": [{"coeffs": ["1/2", "1/3"], "sense": "LE", "rhs": 1}],
        "lower": ["-1/2", 0], "upper": ["5/2", 3], "objective": ["1/2", 1]}"#;
    let loaded = parse_instance(text).unwrap();
    let InstanceData::HRep(inst) = &loaded.data else {
        panic!("expected H-rep")
    };
    assert_eq!(inst.lower(), &[0, 0]);
    assert_eq!(inst.upper(), &[2, 3]);
    assert_eq!(inst.rows()[0].coeffs, vec![3, 2]);
    assert_eq!(inst.rows()[0].rhs, 6);
    assert_eq!(inst.objective().coeffs(), &[1, 2]);
    assert!(!inst.objective().integral_objective());
}

#[test]
fn malformed_files_are_rejected() {
    assert!(parse_instance("[]").is_err());
    assert!(parse_instance(r#"{"objective": [1], "lower": [0]}"#).is_err());
    assert!(parse_instance(r#"{"n": 3, "objective": [1], "lower": [0], "upper": [1]}"#).is_err());
    assert!(parse_instance(r#"{"objective": [1], "points": [[0.5]]}"#).is_err());
}

#[test]
fn worstcase_files_carry_their_levels() {
    let dir = tempfile::tempdir().unwrap();
    let inst = build_worstcase(WorstCaseParams::new(3, 4).unwrap()).unwrap();
    let path = dir.path().join("wc.json");
    let side = write_worstcase(&inst, &path).unwrap();
    assert_eq!(side, sidecar_path(&path));
    let back = read_instance(&path).unwrap();
    assert_eq!(back.set().objective().coeffs(), inst.cost(4));
    let levels: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(side).unwrap()).unwrap();
    assert_eq!(levels["cost_levels"].as_array().unwrap().len(), 5);
}
