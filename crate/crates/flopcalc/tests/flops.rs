use std::collections::BTreeMap;

use flopcalc::catalog::{examples, universal_flopping_algebra};
use flopcalc::coeff::{rat, MultiPoly, ParamRing};
use flopcalc::flops::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(ring: &ParamRing, s: &str) -> MultiPoly {
    ring.parse_poly(s).unwrap()
}

fn matrix(ring: &ParamRing, rows: &[[&str; 4]; 4]) -> Matrix {
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    Matrix::parse(ring, &rows).unwrap()
}

fn nice(mf: &MatrixFactorization, m: &Matrix) -> (ParamRing, Matrix) {
    let e = universal_flopping_algebra(2).unwrap();
    let nb = e.nice_basis.unwrap();
    let ring = nb.apply(mf.ring(), &MultiPoly::zero(mf.ring().len())).unwrap().0;
    (ring, m.map(|p| nb.apply(mf.ring(), p).unwrap().1))
}

#[test]
fn length2_nice_equation() {
    let e = universal_flopping_algebra(2).unwrap();
    let h = hypersurface(&e, e.gb_degree).unwrap();
    let (ring, f) = e.nice_basis.as_ref().unwrap().apply(&h.ring, &h.equation).unwrap();
    assert_eq!(f, poly(&ring, examples::LENGTH2_NICE_EQUATION));
}

#[test]
fn length2_raw_equation() {
    let e = universal_flopping_algebra(2).unwrap();
    let h = hypersurface(&e, e.gb_degree).unwrap();
    let raw = h.raw_equation();
    let ext = h.ring.extended(&["Y"], 4);
    let printed = poly(&ext, examples::LENGTH2_RAW_EQUATION);
    let mut map = BTreeMap::new();
    map.insert("Y".to_string(), poly(&h.ring, "y + z - T0d + T0c + T0b + t^2/4"));
    let printed = flopcalc::coeff::substitute(&printed, &ext, &map, &h.ring).unwrap();
    assert_eq!(raw, printed);
}

#[test]
fn length2_matches_psi() {
    let e = universal_flopping_algebra(2).unwrap();
    let mf = matrix_factorization(&e, e.gb_degree).unwrap();
    assert!(mf.residual().is_zero());
    assert!(mf.check_factorization());
    let x = MultiPoly::var(mf.ring().len(), 0);
    let xi = Matrix::scalar(4, &x);
    let (ring, plus) = nice(&mf, &mf.x_plus_c().neg());
    assert_eq!(plus, matrix(&ring, &examples::PSI2_PLUS));
    let (ring, minus) = nice(&mf, &mf.c.sub(&xi));
    assert_eq!(minus, matrix(&ring, &examples::PSI2));
}

#[test]
fn length1_pipeline() {
    let e = universal_flopping_algebra(1).unwrap();
    let mf = matrix_factorization(&e, e.gb_degree).unwrap();
    let ring = mf.ring().clone();
    assert_eq!(ring.names(), ["z", "x", "y", "t"]);
    let at0: Vec<MultiPoly> = (0..4).map(|i| if i == 3 { MultiPoly::zero(4) } else { MultiPoly::var(4, i) }).collect();
    let central = mf.hypersurface.equation.substitute(&at0).unwrap();
    assert_eq!(central.neg(), poly(&ring, "x*y - z^2"));
    assert_eq!(mf.size(), 2);
    assert!(mf.residual().is_zero() && mf.check_factorization());
}

#[test]
fn adjoined_method_agrees_on_length1() {
    let e = universal_flopping_algebra(1).unwrap();
    let d = FlopData::from_entry(&e);
    let a = hypersurface_adjoined(&e.presentation, &d, e.gb_degree, 1_000_000).unwrap();
    assert_eq!(a.equation, hypersurface(&e, e.gb_degree).unwrap().equation);
}

#[test]
fn length3_example() {
    let e = universal_flopping_algebra(3).unwrap();
    let s = specialize(&e.presentation, &ParamMap::parse(examples::LENGTH3_MAP).unwrap()).unwrap();
    for r in examples::LENGTH3_SPECIALIZED_RELATIONS {
        assert!(s.relations.contains(&s.element(r)), "{r}");
    }
    let gb = flopcalc::ncgb::truncated_groebner(&s, &s.order, e.gb_degree, 10_000_000).unwrap();
    let mf = matrix_factorization_from_gb(&gb, &FlopData::from_entry(&e)).unwrap();
    let ring = mf.ring().clone();
    assert_eq!(ring.names(), ["x", "y", "z", "T"]);
    assert_eq!(mf.hypersurface.equation.neg(), poly(&ring, examples::LENGTH3_EQUATION));
    let rows: Vec<Vec<&str>> = examples::LENGTH3_MF.iter().map(|r| r.to_vec()).collect();
    assert_eq!(mf.c, Matrix::parse(&ring, &rows).unwrap());
    assert!(mf.check_factorization());
}

#[test]
fn laufer_specialization_commutes_with_hypersurface() {
    let e = universal_flopping_algebra(2).unwrap();
    let map = ParamMap::parse(examples::LAUFER_MAP).unwrap();
    let s = specialize(&e.presentation, &map).unwrap();
    let direct = hypersurface_with(&s, &FlopData::from_entry(&e), e.gb_degree, 1_000_000).unwrap();
    let h = hypersurface(&e, e.gb_degree).unwrap();
    let mut images = BTreeMap::new();
    for (k, v) in &map.images {
        images.insert(k.clone(), direct.ring.parse_poly(v).unwrap());
    }
    let pushed = flopcalc::coeff::substitute(&h.equation, &h.ring, &images, &direct.ring).unwrap();
    assert_eq!(pushed, direct.equation);
}

#[test]
fn length46_specializations() {
    for l in [4u8, 6] {
        let e = universal_flopping_algebra(l).unwrap();
        let s = specialize(&e.presentation, &ParamMap::parse(examples::length46_map(l)).unwrap()).unwrap();
        let (i, j, k) = examples::length46_exponents(l);
        let v = &s.quiver().vertices()[1];
        for want in [format!("b^{i} - T*e{v}"), format!("c^{j} - T*e{v}"), format!("A*a - d^{k} + T*e{v}")] {
            assert!(s.relations.contains(&s.element(&want)), "length {l}: {want}");
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let n: i64 = rng.gen_range(-40..=40);
    let d: i64 = rng.gen_range(1..=9);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn psi2_representation_satisfies_the_equation() {
    let e = universal_flopping_algebra(2).unwrap();
    let alg = &e.presentation;
    let rep = Representation::parse(examples::PSI2_REPRESENTATION).unwrap();
    let ring = rep.ring.clone();
    let one = |s: &str| {
        let m = rep.evaluate(alg, &alg.element(s)).unwrap();
        assert_eq!((m.rows, m.cols), (1, 1));
        m.get(0, 0).clone()
    };
    let [xd, y, z] = e.xyz.clone().map(|p| alg.quiver().show_path(&p));
    assert_eq!(one(&xd), poly(&ring, "x + t*v"));
    assert_eq!(one(&y), poly(&ring, "y"));
    assert_eq!(one(&z), poly(&ring, "z"));

    // the raw equation in x′ pushed to the ring of the representation
    let h = hypersurface(&e, e.gb_degree).unwrap();
    let params = ["t", "T0b", "T0c", "T0d"].map(|p| {
        let m = rep.evaluate(alg, &alg.element(&format!("{p}*e0"))).unwrap();
        m.get(0, 0).clone()
    });
    let xprime = poly(&ring, "x + t*v");
    let mut images = vec![MultiPoly::zero(ring.len()), poly(&ring, "y"), poly(&ring, "z")];
    images.extend(params.iter().cloned());
    let half_p = h.p.substitute(&images).unwrap().scale(&rat(1, 2));
    images[0] = xprime.sub(&half_p);
    let f = h.equation.substitute(&images).unwrap();

    let nice = poly(&ring, examples::LENGTH2_NICE_EQUATION);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 25 {
        let mut pt: Vec<BigRational> = (0..7).map(|_| random_rational(&mut rng)).collect();
        // solve the nice equation for w, which it contains linearly
        let (x, yv, zv, t, u, v) = (&pt[0], &pt[1], &pt[2], &pt[3], &pt[4], &pt[5]);
        let lead = zv * zv + u * t * t;
        if lead == rat(0, 1) {
            continue;
        }
        let rest = x * x + u * yv * yv + rat(2, 1) * v * yv * zv - v * v * t * t;
        pt[6] = -rest / lead;
        assert_eq!(nice.eval(&pt), rat(0, 1));
        assert_eq!(f.eval(&pt), rat(0, 1), "at {pt:?}");
        checked += 1;
    }
}

#[test]
fn psi2_relations_hold_on_the_cokernel() {
    let e = universal_flopping_algebra(2).unwrap();
    let rep = Representation::parse(examples::PSI2_REPRESENTATION).unwrap();
    let ring = rep.ring.clone();
    let plus = matrix(&ring, &examples::PSI2_PLUS);
    let nice = poly(&ring, examples::LENGTH2_NICE_EQUATION);
    let report = verify_representation(&e.presentation, &rep).unwrap();
    for (k, r) in e.presentation.relations.iter().enumerate() {
        let m = rep.evaluate(&e.presentation, r).unwrap();
        if report.checks[k].passed {
            continue;
        }
        // a residual row v lies in the row space of Ψ₂ exactly when v Ψ₂⁺ ≡ 0 mod f
        for i in 0..m.rows {
            let v = Matrix::from_rows(ring.len(), vec![m.row(i).to_vec()]);
            let w = v.mul(&plus);
            for j in 0..w.cols {
                assert!(w.get(0, j).div_exact(&nice).is_some(), "relation {k} row {i}");
            }
        }
    }
}

#[test]
fn charts_satisfy_relations() {
    let e = universal_flopping_algebra(2).unwrap();
    for chart in [examples::CHART_U0, examples::CHART_U1] {
        let rep = Representation::parse(chart).unwrap();
        let r = verify_representation(&e.presentation, &rep).unwrap();
        assert_eq!(r.checks.len(), 5);
        assert!(r.passed(), "{r}");
    }
}

fn chart_values(chart: &str) -> (Representation, Vec<MultiPoly>) {
    let e = universal_flopping_algebra(2).unwrap();
    let alg = &e.presentation;
    let rep = Representation::parse(chart).unwrap();
    let vals = e
        .xyz
        .iter()
        .map(|p| rep.evaluate(alg, &alg.element(&alg.quiver().show_path(p))).unwrap().get(0, 0).clone())
        .collect();
    (rep, vals)
}

#[test]
fn chart_u0_generators() {
    let (rep, vals) = chart_values(examples::CHART_U0);
    for (v, want) in vals.iter().zip(examples::CHART_U0_XYZ) {
        assert_eq!(*v, rep.reduce(&rep.ring.parse_poly(want).unwrap()).unwrap(), "{want}");
    }
}

#[test]
fn chart_u1_generators() {
    let (rep, vals) = chart_values(examples::CHART_U1);
    for (v, want) in vals.iter().zip(examples::CHART_U1_XYZ) {
        assert_eq!(*v, rep.reduce(&rep.ring.parse_poly(want).unwrap()).unwrap(), "{want}");
    }
}

#[test]
fn heavy_lengths_gated() {
    for l in 1..=6u8 {
        assert_eq!(universal_flopping_algebra(l).unwrap().is_heavy(), l >= 4);
    }
}
