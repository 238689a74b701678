use serde_json::Value;
use weightdist_demo::{classify_json, sample_json, tables_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn tables_carry_both_distributions() {
    let r = parse(tables_json(3, 7, 1, 1).unwrap());
    assert_eq!(r["value_distribution"].as_array().unwrap().len(), 6);
    assert_eq!(r["weight_distribution"][3]["w"], 1458);
    assert_eq!(r["weight_distribution"][3]["freq"], "7102473578");
}

#[test]
fn classify_one_triple() {
    let r = parse(classify_json(3, 5, 1, 1, 7, 0, 11).unwrap());
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert!(classify_json(3, 5, 1, 1, 999, 0, 0).is_err());
}

#[test]
fn sample_within_limits() {
    let r = parse(sample_json(3, 5, 1, 1, 3000, 1).unwrap());
    assert_eq!(r["mode"], "sample");
    assert!(sample_json(3, 5, 1, 1, 0, 1).is_err());
    assert!(sample_json(3, 5, 1, 1, 1_000_000, 1).is_err());
}

#[test]
fn rejects_bad_and_oversized_parameters() {
    assert!(tables_json(3, 10, 2, 1).unwrap_err().contains("d/t"));
    assert!(tables_json(3, 11, 1, 1).unwrap_err().contains("demo limit"));
}
