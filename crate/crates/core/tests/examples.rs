//! Every example under examples/ runs and produces output.

#[allow(dead_code)]
mod bar_analysis {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bar_analysis.rs"));
}

#[allow(dead_code)]
mod cli_in_process {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_in_process.rs"));
}

#[allow(dead_code)]
mod compare_pairs {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/compare_pairs.rs"));
}

#[allow(dead_code)]
mod factor_groups {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/factor_groups.rs"));
}

#[allow(dead_code)]
mod field_arithmetic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/field_arithmetic.rs"));
}

#[allow(dead_code)]
mod generic_coordinates {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/generic_coordinates.rs"));
}

#[allow(dead_code)]
mod meromorphic_reduction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/meromorphic_reduction.rs"));
}

#[allow(dead_code)]
mod polar_oracle {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/polar_oracle.rs"));
}

#[allow(dead_code)]
mod puiseux_roots {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/puiseux_roots.rs"));
}

#[allow(dead_code)]
mod tree_model {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tree_model.rs"));
}

#[test]
fn bar_analysis_runs() {
    assert!(!bar_analysis::run_example().unwrap().is_empty());
}

#[test]
fn cli_in_process_runs() {
    assert!(!cli_in_process::run_example().unwrap().is_empty());
}

#[test]
fn compare_pairs_runs() {
    assert!(!compare_pairs::run_example().unwrap().is_empty());
}

#[test]
fn factor_groups_runs() {
    assert!(!factor_groups::run_example().unwrap().is_empty());
}

#[test]
fn field_arithmetic_runs() {
    assert!(!field_arithmetic::run_example().unwrap().is_empty());
}

#[test]
fn generic_coordinates_runs() {
    assert!(!generic_coordinates::run_example().unwrap().is_empty());
}

#[test]
fn meromorphic_reduction_runs() {
    assert!(!meromorphic_reduction::run_example().unwrap().is_empty());
}

#[test]
fn polar_oracle_runs() {
    assert!(!polar_oracle::run_example().unwrap().is_empty());
}

#[test]
fn puiseux_roots_runs() {
    assert!(!puiseux_roots::run_example().unwrap().is_empty());
}

#[test]
fn tree_model_runs() {
    assert!(!tree_model::run_example().unwrap().is_empty());
}
