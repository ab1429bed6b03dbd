use flopcalc::catalog::examples;
use flopcalc::flops::*;
use flopcalc::ncgb::DEFAULT_BUDGET;
use num_rational::BigRational;

const NIL_LENGTH: u32 = 10;

fn check(name: &str, phi: &str, scaling: &[(String, BigRational)]) -> SuperpotentialReport {
    let a = examples::by_name(name).unwrap();
    verify_superpotential(&a, &a.element(phi), NIL_LENGTH, scaling, DEFAULT_BUDGET).unwrap()
}

fn length3_scaling() -> Vec<(String, BigRational)> {
    examples::LENGTH3_SCALING.iter().map(|(a, s)| (a.to_string(), s.parse().unwrap())).collect()
}

#[test]
fn laufer_is_graded_check() {
    let a = examples::by_name("laufer").unwrap();
    let r = verify_superpotential(&a, &a.element(examples::LAUFER_SUPERPOTENTIAL), 16, &[], DEFAULT_BUDGET).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.nil_length, None);
    assert_eq!(r.derivatives.len(), 4);
}

#[test]
fn length3_after_rescaling() {
    let r = check("length3-nccr", examples::LENGTH3_SUPERPOTENTIAL, &length3_scaling());
    assert!(r.passed(), "{r}");
    assert_eq!(r.nil_length, Some(NIL_LENGTH as usize));
}

#[test]
fn length3_unscaled_is_a_different_ideal() {
    let r = check("length3-nccr", examples::LENGTH3_SUPERPOTENTIAL, &[]);
    assert!(!r.passed());
    // the a and A derivatives are unaffected by the scaling
    assert!(r.checks[..2].iter().all(|c| c.passed));
}

#[test]
fn lengths_4_and_6() {
    for l in [4u8, 6] {
        let r = check(&format!("length{l}-nccr"), &examples::length46_superpotential(l), &[]);
        assert!(r.passed(), "length {l}\n{r}");
    }
}

#[test]
fn length5_full_form() {
    let r = check("length5-nccr", examples::LENGTH5_SUPERPOTENTIAL_FULL, &[]);
    assert!(r.passed(), "{r}");
    assert!(!check("length5-nccr", examples::LENGTH5_SUPERPOTENTIAL, &[]).passed());
}
