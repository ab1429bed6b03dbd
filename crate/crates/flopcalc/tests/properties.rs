mod common;

#[test]
fn normal_form_idempotent_and_linear() {
    common::normal_form_idempotent_and_linear().unwrap();
}

#[test]
fn ideal_membership_soundness() {
    common::ideal_membership_soundness().unwrap();
}

#[test]
fn basis_is_deterministic() {
    common::basis_is_deterministic().unwrap();
}

#[test]
fn factorization_holds_pointwise() {
    common::factorization_holds_pointwise().unwrap();
}

#[test]
fn gv_tuples_satisfy_their_equations() {
    common::gv_tuples_satisfy_their_equations().unwrap();
}

#[test]
fn cyclic_derivative_is_rotation_invariant() {
    common::cyclic_derivative_is_rotation_invariant().unwrap();
}
