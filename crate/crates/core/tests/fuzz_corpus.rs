//! Runs every parser over the checked-in fuzz seeds, so the corpus doubles as
//! a regression suite without cargo-fuzz.

use std::fs;
use std::path::PathBuf;

use dessinry::modular::radical::eval_radical;
use dessinry::modular::table1::parse_table1;
use dessinry::origami::{BipartiteOrigami, RowDiagram};
use dessinry::words::{EndomorphismTable, FreeWord};
use dessinry::MonodromyTuple;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn outcomes<T, E>(target: &str, parse: impl Fn(&str) -> Result<T, E>) -> Vec<(String, bool)> {
    seeds(target).into_iter().map(|(name, text)| (name, parse(&text).is_ok())).collect()
}

fn expect(target: &str, results: &[(String, bool)], rejected: &[&str]) {
    for (name, ok) in results {
        assert_eq!(*ok, !rejected.contains(&name.as_str()), "{target}/{name}");
    }
}

#[test]
fn tuple_seeds() {
    let r = outcomes("tuple_json", |s| {
        let value: serde_json::Value = serde_json::from_str(s).map_err(|e| e.to_string())?;
        let items = match value {
            serde_json::Value::Array(items) => items,
            other => vec![other],
        };
        items
            .iter()
            .map(|v| MonodromyTuple::from_json_value(v).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()
    });
    expect("tuple_json", &r, &["not_a_permutation.json"]);
}

#[test]
fn origami_seeds() {
    let r = outcomes("origami_json", BipartiteOrigami::from_json);
    expect("origami_json", &r, &["short.json"]);
}

#[test]
fn endomorphism_seeds() {
    let r = outcomes("endomorphism_json", EndomorphismTable::list_from_json);
    expect("endomorphism_json", &r, &["out_of_range.json"]);
}

#[test]
fn free_word_seeds() {
    let r = outcomes("free_word", |s| s.parse::<FreeWord>());
    expect("free_word", &r, &[]);
}

#[test]
fn radical_seeds() {
    let r = outcomes("radical_expr", eval_radical);
    expect("radical_expr", &r, &["div_zero.txt"]);
}

#[test]
fn row_diagram_seeds() {
    let r = outcomes("row_diagram", RowDiagram::collection_from_json);
    expect("row_diagram", &r, &[]);
}

#[test]
fn table1_seeds() {
    let r = outcomes("table1_fixture", parse_table1);
    expect("table1_fixture", &r, &["duplicate.txt"]);
}
