//! Every example compiles into this test and runs once.

#[allow(dead_code)]
mod barrier_grid {
    include!("../examples/barrier_grid.rs");
}

#[allow(dead_code)]
mod cones {
    include!("../examples/cones.rs");
}

#[allow(dead_code)]
mod conformal_tensor {
    include!("../examples/conformal_tensor.rs");
}

#[allow(dead_code)]
mod cr_maps {
    include!("../examples/cr_maps.rs");
}

#[allow(dead_code)]
mod field_corpus {
    include!("../examples/field_corpus.rs");
}

#[allow(dead_code)]
mod group_basics {
    include!("../examples/group_basics.rs");
}

#[allow(dead_code)]
mod horizontal_jets {
    include!("../examples/horizontal_jets.rs");
}

#[allow(dead_code)]
mod inversion_tables {
    include!("../examples/inversion_tables.rs");
}

#[allow(dead_code)]
mod perturbation {
    include!("../examples/perturbation.rs");
}

#[allow(dead_code)]
mod prescribed_jets {
    include!("../examples/prescribed_jets.rs");
}

#[allow(dead_code)]
mod verify_report {
    include!("../examples/verify_report.rs");
}

#[test]
fn barrier_grid_runs() {
    barrier_grid::run_example();
}

#[test]
fn cones_runs() {
    cones::run_example();
}

#[test]
fn conformal_tensor_runs() {
    conformal_tensor::run_example();
}

#[test]
fn cr_maps_runs() {
    cr_maps::run_example();
}

#[test]
fn field_corpus_runs() {
    field_corpus::run_example();
}

#[test]
fn group_basics_runs() {
    group_basics::run_example();
}

#[test]
fn horizontal_jets_runs() {
    horizontal_jets::run_example();
}

#[test]
fn inversion_tables_runs() {
    inversion_tables::run_example();
}

#[test]
fn perturbation_runs() {
    perturbation::run_example();
}

#[test]
fn prescribed_jets_runs() {
    prescribed_jets::run_example();
}

#[test]
fn verify_report_runs() {
    verify_report::run_example();
}
