//! Built-in presentations: universal flopping algebras, preprojective algebras and worked examples.

mod dynkin;
pub mod examples;
mod invariants;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coeff::{CoeffError, MultiPoly, ParamRing, ParseError, RatFunc};
use crate::pathalg::{parse_presentation, AlgebraPresentation, Element, Homomorphism, Path, PathAlgError};

pub use dynkin::{apply_simple_reflection, deformed_preprojective, preprojective, Coloring, DynkinDiagram, DynkinType};
pub use invariants::{verify_invariants, InvariantCheck, InvariantData, InvariantReport, TauBlock};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("no flop of length {0}; lengths run from 1 to 6")]
    BadLength(u8),
    #[error("vertex {vertex} is not a reflection vertex of {diagram}")]
    BadReflection { vertex: usize, diagram: DynkinType },
    #[error("unknown catalog entry '{0}'")]
    UnknownName(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    PathAlg(#[from] PathAlgError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Parameter substitution into the commutative ring of a hypersurface, plus new parameter names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeOfBasis {
    pub new_params: Vec<String>,
    /// Old parameter name and its image, written over `x, y, z` and the new parameters.
    pub images: Vec<(String, String)>,
}

impl ChangeOfBasis {
    /// Ring map from `[x, y, z, old params]` to `[x, y, z, new params]`.
    pub fn apply(&self, old: &ParamRing, p: &MultiPoly) -> Result<(ParamRing, MultiPoly), CatalogError> {
        let mut names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        names.extend(self.new_params.iter().cloned());
        let to = ParamRing::new(&names);
        let mut map = BTreeMap::new();
        for (k, v) in &self.images {
            let img = to.parse_poly(v)?;
            map.insert(k.clone(), img);
        }
        let out = crate::coeff::substitute(p, old, &map, &to)?;
        Ok((to, out))
    }
}

#[derive(Clone, Debug)]
pub struct FlopCatalogEntry {
    pub length: u8,
    pub presentation: AlgebraPresentation,
    /// x′, y, z as paths at vertex 0.
    pub xyz: [Path; 3],
    /// Index into `xyz` of the generator the equation is quadratic in.
    pub quadratic: usize,
    pub module_generators: Vec<Path>,
    pub central_fibre_presentation: AlgebraPresentation,
    /// Image of each arrow of `presentation` in the central fibre, with all parameters sent to 0.
    pub central_fibre_map: Vec<(String, String)>,
    pub invariants: InvariantData,
    /// Truncation degree that suffices for the hypersurface and matrix factorisation.
    pub gb_degree: u32,
    pub nice_basis: Option<ChangeOfBasis>,
}

impl FlopCatalogEntry {
    pub fn name(&self) -> String {
        format!("length{}", self.length)
    }

    pub fn param_ring(&self) -> &ParamRing {
        self.presentation.params()
    }

    pub fn coloring(&self) -> &Coloring {
        &self.invariants.coloring
    }

    /// Lengths 4–6 need large truncations for the full pipeline.
    pub fn is_heavy(&self) -> bool {
        self.length >= 4
    }

    /// The algebra map to the central fibre.
    pub fn central_fibre_homomorphism(&self) -> Result<Homomorphism, CatalogError> {
        let src = &self.presentation;
        let dst = &self.central_fibre_presentation;
        let q = src.quiver();
        let mut arrow_images = Vec::new();
        for a in q.arrows() {
            let text = self
                .central_fibre_map
                .iter()
                .find(|(n, _)| *n == a.name)
                .map(|(_, t)| t.as_str())
                .unwrap_or(a.name.as_str());
            arrow_images.push(dst.parse_element(text)?);
        }
        let vertex_map = q.vertices().iter().map(|v| dst.quiver().vertex_index(v)).collect();
        Ok(Homomorphism {
            target: dst.space().clone(),
            vertex_map,
            arrow_images,
            coeff_images: vec![RatFunc::zero(dst.params().len()); src.params().len()],
        })
    }

    /// Relations of `presentation` pushed to the central fibre.
    pub fn specialized_relations(&self) -> Result<Vec<Element>, CatalogError> {
        let h = self.central_fibre_homomorphism()?;
        Ok(self.presentation.relations.iter().map(|r| h.apply(r)).collect::<Result<_, _>>()?)
    }
}

const LENGTH1: &str = "\
name: length1
params: t
vertices: 0, 1
arrows: a0: 0 -> 1, a1: 1 -> 0, A0: 1 -> 0, A1: 0 -> 1
relations:
  a0*A0 - A1*a1 - t*e0 ;
  a1*A1 - A0*a0 + t*e1
";

const LENGTH2: &str = "\
name: length2
params: t, T0b, T0c, T0d
grading: T0b=4, T0c=4, T0d=4
vertices: 0, 4
arrows: a: 0 -> 4, A: 4 -> 0, d: 4 -> 4 (deg 2), c: 4 -> 4 (deg 2), b: 4 -> 4 (deg 2)
relations:
  a*A - t*e0 ;
  b*b - T0b*e4 ;
  c*c - T0c*e4 ;
  d*d - T0d*e4 ;
  A*a + b + c + d - (1/2)*t*e4
";

const LENGTH3: &str = "\
name: length3
params: t, T0b, T1b, T0c, T1c, T0d
grading: T0b=6, T1b=4, T0c=6, T1c=4, T0d=4
vertices: 0, 6
arrows: a: 0 -> 6 (deg 2), A: 6 -> 0 (deg 2), d: 6 -> 6 (deg 2), c: 6 -> 6 (deg 2), b: 6 -> 6 (deg 2)
relations:
  a*A - (t^2 - T0d)*e0 ;
  A*a - d*d + T0d*e6 ;
  d*A - t*A ;
  a*d - t*a ;
  b^3 - T1b*b - T0b*e6 ;
  c^3 - T1c*c - T0c*e6 ;
  b + c + d - (1/3)*t*e6
";

const LENGTH4: &str = "\
name: length4
params: t, T0b, T0c, T1c, T2c, T0d, T1d
grading: T0b=4, T0c=8, T1c=6, T2c=4, T0d=6, T1d=4
vertices: 0, 7
arrows: a: 0 -> 7 (deg 3), A: 7 -> 0 (deg 3), d: 7 -> 7 (deg 2), c: 7 -> 7 (deg 2), b: 7 -> 7 (deg 2)
relations:
  a*A - (t^3 - T1d*t - T0d)*e0 ;
  A*a - d^3 + T1d*d + T0d*e7 ;
  d*A - t*A ;
  a*d - t*a ;
  b^2 - T0b*e7 ;
  c^4 - T2c*c^2 - T1c*c - T0c*e7 ;
  b + c + d - (1/4)*t*e7
";

const LENGTH5: &str = "\
name: length5
params: t, T0d, T1d, T2d, T0, T1, T2, T3
grading: T0d=8, T1d=6, T2d=4, T0=10, T1=8, T2=6, T3=4
vertices: 0, 4
arrows: a: 0 -> 4 (deg 4), A: 4 -> 0 (deg 4), d: 4 -> 4 (deg 2), c: 4 -> 4 (deg 4), b: 4 -> 4 (deg 2)
relations:
  a*d - t*a ;
  d*A - t*A ;
  a*A - (t^4 - T2d*t^2 - T1d*t - T0d)*e0 ;
  A*a - d^4 + T2d*d^2 + T1d*d + T0d*e4 ;
  d - b - (1/5)*t*e4 ;
  c*b*c + c^2*b + c*b^3 + T3*c*b + T2*c + T0*e4 ;
  (c + b^2)^2 + b*c*b + T3*(c + b^2) + T2*b + T1*e4
";

const LENGTH6: &str = "\
name: length6
params: t, T0b, T0c, T1c, T0d, T1d, T2d, T3d
grading: T0b=4, T0c=6, T1c=4, T0d=10, T1d=8, T2d=6, T3d=4
vertices: 0, 8
arrows: a: 0 -> 8 (deg 5), A: 8 -> 0 (deg 5), d: 8 -> 8 (deg 2), c: 8 -> 8 (deg 2), b: 8 -> 8 (deg 2)
relations:
  a*A - (t^5 - T3d*t^3 - T2d*t^2 - T1d*t - T0d)*e0 ;
  A*a - d^5 + T3d*d^3 + T2d*d^2 + T1d*d + T0d*e8 ;
  d*A - t*A ;
  a*d - t*a ;
  b^2 - T0b*e8 ;
  c^3 - T1c*c - T0c*e8 ;
  b + c + d - (1/6)*t*e8
";

const CENTRAL1: &str = "\
name: central1
vertices: 0, 1
arrows: a0: 0 -> 1, a1: 1 -> 0, A0: 1 -> 0, A1: 0 -> 1
relations:
  a0*A0 - A1*a1 ;
  a1*A1 - A0*a0
";

const CENTRAL2: &str = "\
name: central2
vertices: 0, 4
arrows: a: 0 -> 4, A: 4 -> 0, c: 4 -> 4 (deg 2), b: 4 -> 4 (deg 2)
relations:
  a*A ;
  b^2 ;
  c^2 ;
  (A*a + b + c)^2
";

const CENTRAL3: &str = "\
name: central3
vertices: 0, 6
arrows: a: 0 -> 6 (deg 2), A: 6 -> 0 (deg 2), c: 6 -> 6 (deg 2), b: 6 -> 6 (deg 2)
relations:
  a*A ;
  A*a - (b + c)^2 ;
  (b + c)*A ;
  a*(b + c) ;
  b^3 ;
  c^3
";

const CENTRAL4: &str = "\
name: central4
vertices: 0, 7
arrows: a: 0 -> 7 (deg 3), A: 7 -> 0 (deg 3), c: 7 -> 7 (deg 2), b: 7 -> 7 (deg 2)
relations:
  a*A ;
  A*a + (b + c)^3 ;
  (b + c)*A ;
  a*(b + c) ;
  b^2 ;
  c^4
";

const CENTRAL5: &str = "\
name: central5
vertices: 0, 4
arrows: a: 0 -> 4 (deg 4), A: 4 -> 0 (deg 4), c: 4 -> 4 (deg 4), b: 4 -> 4 (deg 2)
relations:
  a*A ;
  A*a - b^4 ;
  a*b ;
  b*A ;
  c*b*c + c^2*b + c*b^3 ;
  (c + b^2)^2 + b*c*b
";

const CENTRAL6: &str = "\
name: central6
vertices: 0, 8
arrows: a: 0 -> 8 (deg 5), A: 8 -> 0 (deg 5), c: 8 -> 8 (deg 2), b: 8 -> 8 (deg 2)
relations:
  a*A ;
  A*a + (b + c)^5 ;
  (b + c)*A ;
  a*(b + c) ;
  b^2 ;
  c^3
";

/// Presentation text of the universal flopping algebra of length `l`.
pub fn presentation_text(l: u8) -> Result<&'static str, CatalogError> {
    Ok(match l {
        1 => LENGTH1,
        2 => LENGTH2,
        3 => LENGTH3,
        4 => LENGTH4,
        5 => LENGTH5,
        6 => LENGTH6,
        _ => return Err(CatalogError::BadLength(l)),
    })
}

fn central_text(l: u8) -> &'static str {
    [CENTRAL1, CENTRAL2, CENTRAL3, CENTRAL4, CENTRAL5, CENTRAL6][l as usize - 1]
}

fn path(q: &crate::pathalg::Quiver, word: &str) -> Path {
    let names: Vec<String> = word.split_whitespace().map(str::to_string).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    q.path_by_names(&refs).unwrap_or_else(|| panic!("bad catalog path '{word}'"))
}

fn parse_builtin(text: &str) -> AlgebraPresentation {
    let mut alg = parse_presentation(text).unwrap_or_else(|e| panic!("catalog presentation fails to parse: {e}"));
    let q = alg.quiver();
    // a, A, d, c, b from largest to smallest
    let prec: Vec<usize> = ["a", "A", "d", "c", "b"].iter().filter_map(|n| q.arrow_index(n)).collect();
    if prec.len() == q.arrows().len() {
        alg.order = crate::pathalg::MonomialOrder::new(prec);
    }
    alg
}

/// The universal flopping algebra of length `l` together with its catalog data.
pub fn universal_flopping_algebra(l: u8) -> Result<FlopCatalogEntry, CatalogError> {
    let presentation = parse_builtin(presentation_text(l)?);
    let central = parse_builtin(central_text(l));
    let q = presentation.quiver().clone();
    let p = |w: &str| path(&q, w);
    let words = |ws: &[&str]| ws.iter().map(|w| p(w)).collect::<Vec<_>>();
    let (xyz, quadratic, gens, map, gb_degree): ([&str; 3], usize, Vec<Path>, Vec<(&str, &str)>, u32) = match l {
        1 => (["a0 a1", "A1 A0", "a0 A0"], 2, words(&["a0", "A1"]), vec![], 6),
        2 => (["a b c A", "a c A", "a b A"], 0, words(&["a", "a b", "a c", "a b c"]), vec![("d", "-(A*a + b + c)")], 12),
        3 => (
            ["a c c b c A", "a c c A", "a b A"],
            0,
            words(&["a", "a c", "a c c", "a c b", "a c c b", "a c c b c"]),
            vec![("d", "-(b + c)")],
            26,
        ),
        4 => (
            ["a c c c b c c A", "a c c c A", "a c A"],
            0,
            words(&["a", "a c", "a c c", "a c c c", "a c c b", "a c c c b", "a c c c b c", "a c c c b c c"]),
            vec![("d", "-(b + c)")],
            38,
        ),
        5 => (
            ["a c c c b c c A", "a c c c A", "a c A"],
            0,
            words(&[
                "a", "a c", "a c c", "a c b", "a c c c", "a c c b", "a c c c b", "a c c c b c", "a c c c b b", "a c c c b c c",
            ]),
            vec![("d", "b")],
            62,
        ),
        6 => (
            ["a c c b c c b c b c c A", "a c c b c c A", "a c A"],
            0,
            words(&[
                "a",
                "a c",
                "a c c",
                "a c c b",
                "a c c b c",
                "a c c b c c",
                "a c c b c b",
                "a c c b c c b",
                "a c c b c c b c",
                "a c c b c c b c b",
                "a c c b c c b c b c",
                "a c c b c c b c b c c",
            ]),
            vec![("d", "-(b + c)")],
            62,
        ),
        _ => unreachable!(),
    };
    let nice_basis = (l == 2).then(|| ChangeOfBasis {
        new_params: ["t", "u", "v", "w"].map(String::from).to_vec(),
        images: vec![
            ("T0b".into(), "-u".into()),
            ("T0c".into(), "-w".into()),
            ("T0d".into(), "2*v + y + z - u - w + t^2/4".into()),
        ],
    });
    Ok(FlopCatalogEntry {
        length: l,
        xyz: [p(xyz[0]), p(xyz[1]), p(xyz[2])],
        quadratic,
        module_generators: gens,
        central_fibre_presentation: central,
        central_fibre_map: map.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        invariants: InvariantData::for_length(l)?,
        gb_degree,
        nice_basis,
        presentation,
    })
}

/// All six entries in order of length.
pub fn all_entries() -> Vec<FlopCatalogEntry> {
    (1..=6).map(|l| universal_flopping_algebra(l).expect("catalog lengths are valid")).collect()
}

/// Names accepted by [`lookup`].
pub fn names() -> Vec<&'static str> {
    let mut v = vec!["length1", "length2", "length3", "length4", "length5", "length6"];
    v.extend(examples::NAMES);
    v.extend(["preprojective-A1", "preprojective-D4", "preprojective-E6", "preprojective-E7", "preprojective-E8"]);
    v.extend(["deformed-A1", "deformed-D4", "deformed-E6", "deformed-E7", "deformed-E8"]);
    v
}

/// Any built-in presentation by name.
pub fn lookup(name: &str) -> Result<AlgebraPresentation, CatalogError> {
    if let Some(l) = name.strip_prefix("length").and_then(|s| s.parse::<u8>().ok()) {
        return Ok(universal_flopping_algebra(l)?.presentation);
    }
    if let Some(l) = name.strip_prefix("central").and_then(|s| s.parse::<u8>().ok()) {
        return Ok(universal_flopping_algebra(l)?.central_fibre_presentation);
    }
    let diagram = |s: &str| {
        DynkinDiagram::all().into_iter().find(|d| d.kind.to_string() == s).ok_or_else(|| CatalogError::UnknownName(name.to_string()))
    };
    if let Some(s) = name.strip_prefix("preprojective-") {
        return Ok(preprojective(&diagram(s)?));
    }
    if let Some(s) = name.strip_prefix("deformed-") {
        return Ok(deformed_preprojective(&diagram(s)?));
    }
    examples::by_name(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncgb::{dimension, truncated_groebner, DEFAULT_BUDGET};

    #[test]
    fn entries_parse_and_round_trip() {
        for e in all_entries() {
            for alg in [&e.presentation, &e.central_fibre_presentation] {
                let again = parse_presentation(&alg.to_text()).unwrap();
                assert_eq!(&again, alg, "{}", e.name());
                assert!(alg.relations.iter().all(|r| r.is_endpoint_homogeneous()));
            }
            assert_eq!(e.module_generators.len(), 2 * e.length as usize);
            for p in e.xyz.iter().chain(&e.module_generators) {
                assert_eq!(p.source, 0);
            }
        }
    }

    #[test]
    fn length2_shape() {
        let e = universal_flopping_algebra(2).unwrap();
        assert_eq!(e.param_ring().names(), ["t", "T0b", "T0c", "T0d"]);
        assert_eq!(e.presentation.quiver().vertices().len(), 2);
        assert_eq!(e.presentation.quiver().arrows().len(), 5);
        assert_eq!(e.presentation.relations[4], e.presentation.element("A*a + b + c + d - t/2*e4"));
    }

    #[test]
    fn length5_relation() {
        let e = universal_flopping_algebra(5).unwrap();
        let alg = &e.presentation;
        assert!(alg.relations.contains(&alg.element("c*b*c + c^2*b + c*b^3 + T3*c*b + T2*c + T0*e4")));
    }

    #[test]
    fn xyz_degrees_match_kleinian_weights() {
        let weights = [[2, 2, 2], [6, 4, 4], [12, 8, 6], [18, 12, 8], [30, 20, 12], [30, 20, 12]];
        for e in all_entries() {
            let q = e.presentation.quiver();
            let d: Vec<u32> = e.xyz.iter().map(|p| q.degree(p)).collect();
            assert_eq!(d, weights[e.length as usize - 1], "{}", e.name());
        }
    }

    #[test]
    fn invariants_hold_for_every_length() {
        for e in all_entries() {
            let r = verify_invariants(&e).unwrap();
            assert!(r.passed(), "length {}:\n{r}", e.length);
        }
    }

    #[test]
    fn length1_is_deformed_a1() {
        let e = universal_flopping_algebra(1).unwrap();
        let pre = deformed_preprojective(&DynkinDiagram::new(DynkinType::A1));
        // t1 = -t0 = -t
        let img = vec![RatFunc::var(1, 0).neg()];
        let h = Homomorphism::coefficient_map(pre.space(), e.presentation.space(), img);
        for (r, s) in pre.relations.iter().zip(&e.presentation.relations) {
            assert_eq!(h.apply(r).unwrap().terms(), s.terms());
        }
    }

    #[test]
    fn central_fibre_ideals_agree() {
        for l in 1..=3u8 {
            let e = universal_flopping_algebra(l).unwrap();
            let cf = &e.central_fibre_presentation;
            let deg = cf.max_relation_degree() + 8;
            let gb = truncated_groebner(cf, &cf.order, deg, DEFAULT_BUDGET).unwrap();
            for r in e.specialized_relations().unwrap() {
                assert!(gb.normal_form(&r).unwrap().is_zero(), "length {l}: {}", r.show(&cf.order));
            }
            let spec = cf.with_relations(e.specialized_relations().unwrap()).unwrap();
            let gb2 = truncated_groebner(&spec, &spec.order, deg, DEFAULT_BUDGET).unwrap();
            for r in &cf.relations {
                assert!(gb2.normal_form(r).unwrap().is_zero(), "length {l}: {}", r.show(&cf.order));
            }
        }
    }

    #[test]
    fn lookup_names() {
        for n in names() {
            lookup(n).unwrap_or_else(|e| panic!("{n}: {e}"));
        }
        assert!(lookup("length9").is_err());
        assert!(dimension(&lookup("central1").unwrap(), DEFAULT_BUDGET).is_ok());
    }
}
