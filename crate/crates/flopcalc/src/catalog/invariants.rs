use std::fmt;

use super::dynkin::{apply_simple_reflection, Coloring};
use super::{CatalogError, FlopCatalogEntry};
use crate::coeff::{elementary_symmetric, MultiPoly};

/// One family of τ-variables; its generators are T_k = −σ_{n−k}(τ) for k < n−1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauBlock {
    /// Suffix of the generator names (`T0b`, `T1c`, …); empty for unsuffixed `T0`, `T1`, ….
    pub suffix: String,
    pub taus: Vec<MultiPoly>,
}

impl TauBlock {
    pub fn generator_name(&self, k: usize) -> String {
        format!("T{k}{}", self.suffix)
    }

    pub fn generators(&self) -> Result<Vec<(String, MultiPoly)>, CatalogError> {
        let n = self.taus.len();
        (0..n - 1).map(|k| Ok((self.generator_name(k), elementary_symmetric(n - k, &self.taus)?.neg()))).collect()
    }
}

/// The embedding ℍ_l ⊂ ℍ_Γ: each generator of ℍ_l as a W_C-invariant polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantData {
    pub coloring: Coloring,
    pub t: MultiPoly,
    pub blocks: Vec<TauBlock>,
    /// Closed forms stated directly for some generators, checked against the σ-definitions.
    pub explicit: Vec<(String, MultiPoly)>,
}

type BlockSpec = (&'static str, &'static [&'static str]);

fn spec(l: u8) -> (&'static str, &'static [BlockSpec], &'static [(&'static str, &'static str)]) {
    match l {
        1 => ("t0", &[], &[]),
        2 => (
            "t0",
            &[("b", &["t1/2", "-t1/2"]), ("c", &["t2/2", "-t2/2"]), ("d", &["t3/2", "-t3/2"])],
            &[("T0b", "t1^2/4"), ("T0c", "t2^2/4"), ("T0d", "t3^2/4")],
        ),
        3 => (
            "(2*t0 + t1)/2",
            &[
                ("b", &["(t2 + 2*t3)/3", "(t2 - t3)/3", "-(2*t2 + t3)/3"]),
                ("c", &["(t4 + 2*t5)/3", "(t4 - t5)/3", "-(2*t4 + t5)/3"]),
                ("d", &["t1/2", "-t1/2"]),
            ],
            &[("T0d", "t1^2/4")],
        ),
        4 => (
            "(3*t0 + 2*t1 + t2)/3",
            &[
                ("b", &["t3/2", "-t3/2"]),
                (
                    "c",
                    &["(t4 + 2*t5 + 3*t6)/4", "(t4 + 2*t5 - t6)/4", "(t4 - 2*t5 - t6)/4", "-(3*t4 + 2*t5 + t6)/4"],
                ),
                ("d", &["(t1 + 2*t2)/3", "(t1 - t2)/3", "-(2*t1 + t2)/3"]),
            ],
            &[("T0b", "t3^2/4")],
        ),
        5 => (
            "(4*t0 + 3*t1 + 2*t2 + t3)/4",
            &[
                (
                    "d",
                    &["(t1 + 2*t2 + 3*t3)/4", "(t1 + 2*t2 - t3)/4", "(t1 - 2*t2 - t3)/4", "-(3*t1 + 2*t2 + t3)/4"],
                ),
                (
                    "",
                    &[
                        "(t5 + 2*t8 + 3*t7 + 4*t6)/5",
                        "(t5 + 2*t8 + 3*t7 - t6)/5",
                        "(t5 + 2*t8 - 2*t7 - t6)/5",
                        "(t5 - 3*t8 - 2*t7 - t6)/5",
                        "(-4*t5 - 3*t8 - 2*t7 - t6)/5",
                    ],
                ),
            ],
            &[],
        ),
        6 => (
            "(5*t0 + 4*t1 + 3*t2 + 2*t3 + t4)/5",
            &[
                (
                    "d",
                    &[
                        "(t1 + 2*t2 + 3*t3 + 4*t4)/5",
                        "(t1 + 2*t2 + 3*t3 - t4)/5",
                        "(t1 + 2*t2 - 2*t3 - t4)/5",
                        "(t1 - 3*t2 - 2*t3 - t4)/5",
                        "-(4*t1 + 3*t2 + 2*t3 + t4)/5",
                    ],
                ),
                ("b", &["t5/2", "-t5/2"]),
                ("c", &["(t6 + 2*t7)/3", "(t6 - t7)/3", "-(2*t6 + t7)/3"]),
            ],
            &[("T0b", "t5^2/4")],
        ),
        _ => unreachable!("length checked by caller"),
    }
}

impl InvariantData {
    pub fn for_length(l: u8) -> Result<Self, CatalogError> {
        let coloring = Coloring::for_length(l)?;
        let d = &coloring.diagram;
        let ring = d.param_ring().extended(&["t0"], 2);
        let n = d.vertex_count() - 1;
        // t0 is parsed as an extra variable and then eliminated
        let mut images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
        images.push(d.t(0));
        let parse = |s: &str| -> MultiPoly {
            let p = ring.parse_poly(s).unwrap_or_else(|e| panic!("bad invariant '{s}': {e}"));
            p.substitute(&images).expect("arity matches")
        };
        let (t, blocks, explicit) = spec(l);
        Ok(InvariantData {
            t: parse(t),
            blocks: blocks
                .iter()
                .map(|(suffix, taus)| TauBlock { suffix: suffix.to_string(), taus: taus.iter().map(|s| parse(s)).collect() })
                .collect(),
            explicit: explicit.iter().map(|(n, s)| (n.to_string(), parse(s))).collect(),
            coloring,
        })
    }

    /// `t` followed by every T-generator, in block order.
    pub fn generators(&self) -> Result<Vec<(String, MultiPoly)>, CatalogError> {
        let mut out = vec![("t".to_string(), self.t.clone())];
        for b in &self.blocks {
            out.extend(b.generators()?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub length: u8,
    pub checks: Vec<InvariantCheck>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&InvariantCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}{}", if c.passed { "ok  " } else { "FAIL" }, c.name, if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) })?;
        }
        Ok(())
    }
}

fn sorted(mut v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    v.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    v
}

/// Checks that the declared generators of ℍ_l are W_C-invariant and consistent with the presentation.
pub fn verify_invariants(entry: &FlopCatalogEntry) -> Result<InvariantReport, CatalogError> {
    let inv = &entry.invariants;
    let d = &inv.coloring.diagram;
    let hg = d.param_ring();
    let params = entry.presentation.params();
    let mut checks = Vec::new();
    let mut push = |name: String, passed: bool, detail: String| checks.push(InvariantCheck { name, passed, detail });

    let gens = inv.generators()?;
    let names: Vec<&str> = gens.iter().map(|(n, _)| n.as_str()).collect();
    let declared: Vec<&str> = params.names().iter().map(String::as_str).collect();
    let mut a = names.clone();
    let mut b = declared.clone();
    a.sort();
    b.sort();
    push("generators match parameters".into(), a == b, format!("invariants {names:?}, presentation {declared:?}"));

    for (name, g) in &gens {
        if let Some(i) = params.index(name) {
            let w = g.weighted_degree(&vec![2; hg.len()]);
            let want = params.grading()[i];
            push(format!("{name} has degree {want}"), w == want, if w == want { String::new() } else { format!("found {w}") });
        }
        for &s in &inv.coloring.weyl_generators() {
            let img = apply_simple_reflection(d, s, g)?;
            let ok = img == *g;
            push(
                format!("s{s} fixes {name}"),
                ok,
                if ok { String::new() } else { format!("{} -> {}", hg.show_poly(g), hg.show_poly(&img)) },
            );
        }
    }

    for block in &inv.blocks {
        let label = if block.suffix.is_empty() { "τ".to_string() } else { format!("τ^{}", block.suffix) };
        let sum = block.taus.iter().fold(MultiPoly::zero(hg.len()), |acc, x| acc.add(x));
        push(format!("σ1({label}) = 0"), sum.is_zero(), String::new());
        for &s in &inv.coloring.weyl_generators() {
            let imgs: Vec<MultiPoly> = block.taus.iter().map(|x| apply_simple_reflection(d, s, x)).collect::<Result<_, _>>()?;
            push(format!("s{s} permutes {label}"), sorted(imgs) == sorted(block.taus.clone()), String::new());
        }
    }

    for (name, closed) in &inv.explicit {
        let g = gens.iter().find(|(n, _)| n == name).map(|(_, g)| g.clone());
        let ok = g.as_ref() == Some(closed);
        push(format!("{name} = {}", hg.show_poly(closed)), ok, String::new());
    }

    for &s in &inv.coloring.weyl_generators() {
        let ok = (0..d.vertex_count()).all(|j| {
            let tj = d.t(j);
            apply_simple_reflection(d, s, &apply_simple_reflection(d, s, &tj).unwrap()).unwrap() == tj
        });
        push(format!("s{s}² = id"), ok, String::new());
    }

    Ok(InvariantReport { length: entry.length, checks })
}
