mod common;

use common::props;

#[test]
fn desnanot_jacobi() {
    props::desnanot_jacobi().unwrap();
}

#[test]
fn recurrence_residuals() {
    props::recurrence_residuals().unwrap();
}

#[test]
fn master_specialisation() {
    props::master_specialisation().unwrap();
}

#[test]
fn decimate_interleave() {
    props::decimate_interleave().unwrap();
}

#[test]
fn canonical_idempotence() {
    props::canonical_idempotence().unwrap();
}
