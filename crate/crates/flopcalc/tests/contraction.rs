use flopcalc::catalog::{examples, preprojective, universal_flopping_algebra, Coloring};
use flopcalc::contraction::*;
use flopcalc::ncgb::{enumerate_normal_words, truncated_groebner, DEFAULT_BUDGET};
use flopcalc::pathalg::AlgebraPresentation;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank over ℚ by plain elimination.
fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][col];
        let pivot: Vec<BigRational> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Dimension of a one-vertex algebra with homogeneous relations, counted degree by degree as
/// (#words) − rank(span of u·r·v). No rewriting is involved. Stops after `window` empty degrees in a row.
fn brute_force_dimension(alg: &AlgebraPresentation, cap: u32) -> usize {
    let q = alg.quiver();
    assert_eq!(q.vertices().len(), 1);
    let degs: Vec<u32> = q.arrows().iter().map(|a| a.degree).collect();
    let window = *degs.iter().max().unwrap();
    let rels: Vec<(u32, Vec<(Vec<u32>, BigRational)>)> = alg
        .relations
        .iter()
        .map(|r| {
            let terms: Vec<_> = r.terms().iter().map(|(p, c)| (p.arrows.clone(), c.constant_value().unwrap())).collect();
            (q.degree(r.terms().keys().next().unwrap()), terms)
        })
        .collect();
    // words of each weight
    let mut by_weight: Vec<Vec<Vec<u32>>> = vec![vec![vec![]]];
    for d in 1..=cap {
        let mut ws = Vec::new();
        for (a, &da) in degs.iter().enumerate() {
            if da <= d {
                for w in &by_weight[(d - da) as usize] {
                    let mut w = w.clone();
                    w.push(a as u32);
                    ws.push(w);
                }
            }
        }
        by_weight.push(ws);
    }
    let mut total = 0;
    let mut empty_run = 0;
    for d in 0..=cap {
        let words = &by_weight[d as usize];
        let mut rows = Vec::new();
        for (rd, terms) in &rels {
            if *rd > d {
                continue;
            }
            for du in 0..=(d - rd) {
                for u in &by_weight[du as usize] {
                    for v in &by_weight[(d - rd - du) as usize] {
                        let mut row = vec![BigRational::zero(); words.len()];
                        for (w, c) in terms {
                            let full: Vec<u32> = u.iter().chain(w).chain(v).copied().collect();
                            let k = words.iter().position(|x| *x == full).unwrap();
                            row[k] += c;
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let n = words.len() - rank(rows);
        total += n;
        empty_run = if n == 0 { empty_run + 1 } else { 0 };
        if empty_run == window {
            return total;
        }
    }
    panic!("no {window} consecutive empty degrees up to {cap}");
}

#[test]
fn laufer_brute_force_agrees() {
    let alg = examples::by_name("laufer-contraction").unwrap();
    assert_eq!(brute_force_dimension(&alg, 16), 9);
    assert_eq!(algebra_dimension(&alg, DEFAULT_BUDGET).unwrap(), (9, DimensionMode::Graded));
}

#[test]
fn laufer_report() {
    let alg = examples::by_name("laufer").unwrap();
    let r = contraction_report(&alg, 0, Some(2), DEFAULT_BUDGET).unwrap();
    assert_eq!((r.dim, r.dim_ab), (9, 5));
    assert_eq!(r.gv_solutions, vec![[5, 1, 0, 0, 0, 0]]);
    assert!(r.to_string().contains("GV: (5, 1)"));
}

#[test]
fn length3_nccr_report() {
    let alg = examples::by_name("length3-nccr").unwrap();
    let r = contraction_report(&alg, 0, Some(3), DEFAULT_BUDGET).unwrap();
    assert_eq!((r.dim, r.dim_ab, r.mode), (27, 6, DimensionMode::Local));
    assert_eq!(r.gv_solutions, vec![[6, 3, 1, 0, 0, 0]]);
}

#[test]
fn length3_printed_contraction_matches() {
    let printed = examples::by_name("length3-contraction").unwrap();
    assert_eq!(algebra_dimension(&printed, DEFAULT_BUDGET).unwrap(), (27, DimensionMode::Local));
}

/// dim e_v Π e_v for the finite-type preprojective algebra Π = Π(Γ̃)/(e₀), v the black vertex.
fn preprojective_corner(l: u8) -> usize {
    let c = Coloring::for_length(l).unwrap();
    let finite = contraction_presentation(&preprojective(&c.diagram), 0).unwrap();
    let v = finite.quiver().vertices().iter().position(|x| *x == c.black_vertex.to_string()).unwrap();
    let mut gb = truncated_groebner(&finite, &finite.order, 4, DEFAULT_BUDGET).unwrap();
    let mut d = 4;
    while !gb.is_complete() {
        d += 4;
        gb.extend(d).unwrap();
    }
    enumerate_normal_words(&gb, Some(v), Some(v), None).unwrap().len()
}

#[test]
fn central_fibre_dimensions() {
    let dims: Vec<usize> = (1..=6u8)
        .map(|l| {
            let e = universal_flopping_algebra(l).unwrap();
            contraction_dims(&e.central_fibre_presentation, 0, DEFAULT_BUDGET).unwrap().0
        })
        .collect();
    let corners: Vec<usize> = (1..=6u8).map(preprojective_corner).collect();
    assert_eq!(dims, corners);
    assert_eq!(dims, [1, 4, 12, 24, 40, 60]);
}

#[test]
fn small_central_fibres_brute_force() {
    for (l, want) in [(2u8, 4usize), (3, 12)] {
        let e = universal_flopping_algebra(l).unwrap();
        let con = contraction_presentation(&e.central_fibre_presentation, 0).unwrap();
        assert_eq!(brute_force_dimension(&con, 16), want, "length {l}");
    }
}

#[test]
fn abelianization_never_larger() {
    let mut algs: Vec<AlgebraPresentation> = (1..=6u8).map(|l| universal_flopping_algebra(l).unwrap().central_fibre_presentation).collect();
    algs.push(examples::by_name("laufer").unwrap());
    algs.push(examples::by_name("length3-nccr").unwrap());
    for a in &algs {
        let (dim, ab, _) = contraction_dims(a, 0, DEFAULT_BUDGET).unwrap();
        assert!(ab <= dim, "{:?}: {ab} > {dim}", a.name);
        for t in gv_invariants(dim as u64, ab as u64, None) {
            let s: u64 = t.iter().enumerate().map(|(i, n)| n * ((i + 1) * (i + 1)) as u64).sum();
            assert_eq!((t[0], s), (ab as u64, dim as u64));
        }
    }
}
