use jsonschema::{Draft, JSONSchema};
use quadmod::cli::{run, Format, RunConfig, SpecSource, Stage, REPORT_SCHEMA_JSON};
use quadmod::quad::parse_cycles;
use serde_json::Value;

fn compiled() -> JSONSchema {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA_JSON).unwrap();
    JSONSchema::options()
        .with_draft(Draft::Draft202012)
        .compile(&schema)
        .expect("schema compiles")
}

fn config(stage: Stage, source: SpecSource, depth: usize) -> RunConfig {
    RunConfig {
        stage,
        label: format!("{source:?}"),
        source,
        depth,
        format: Format::Json,
        output: None,
        seed: Some(1),
    }
}

fn report_json(cfg: &RunConfig) -> Value {
    serde_json::from_str(&run(cfg).unwrap().render(Format::Json)).unwrap()
}

fn assert_valid(schema: &JSONSchema, doc: &Value) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        panic!("schema violations: {msgs:#?}");
    }
}

#[test]
fn passing_full_report_conforms() {
    let doc = report_json(&config(Stage::Full, SpecSource::Mn(2, 2), 3));
    assert_eq!(doc["summary"]["pass"], true);
    assert_valid(&compiled(), &doc);
}

#[test]
fn failing_report_conforms_and_carries_witnesses() {
    let d = 3;
    let source = SpecSource::Perm {
        d,
        sigma: parse_cycles(d, "(12)").unwrap(),
        tau: parse_cycles(d, "(23)").unwrap(),
    };
    let doc = report_json(&config(Stage::Validate, source, 3));
    assert_eq!(doc["summary"]["pass"], false);
    assert_valid(&compiled(), &doc);
}

#[test]
fn every_stage_conforms() {
    let schema = compiled();
    for stage in [Stage::Validate, Stage::Fock, Stage::Ck, Stage::Ktheory] {
        assert_valid(
            &schema,
            &report_json(&config(stage, SpecSource::Mn(2, 3), 3)),
        );
    }
}

#[test]
fn schema_rejects_tampered_documents() {
    let schema = compiled();
    let good = report_json(&config(Stage::Ktheory, SpecSource::Mn(2, 2), 3));

    let mut no_citation = good.clone();
    no_citation["sections"][0]["checks"][0]
        .as_object_mut()
        .unwrap()
        .remove("citation");
    assert!(!schema.is_valid(&no_citation));

    let mut silent_failure = good.clone();
    silent_failure["sections"][0]["checks"][0]["pass"] = Value::Bool(false);
    assert!(!schema.is_valid(&silent_failure));

    let mut wrong_version = good;
    wrong_version["schema"] = "quadmod-report-v0".into();
    assert!(!schema.is_valid(&wrong_version));
}
