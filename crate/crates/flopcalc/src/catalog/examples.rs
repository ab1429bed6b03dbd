//! Worked examples: classifying maps, NCCRs with superpotentials, moduli charts.
//!
//! Maps and representations are stored in the text formats read by
//! [`crate::flops::ParamMap`] and [`crate::flops::Representation`].

use crate::pathalg::{parse_presentation, AlgebraPresentation};

pub const NAMES: [&str; 8] = [
    "laufer",
    "length3-nccr",
    "length4-nccr",
    "length5-nccr",
    "length6-nccr",
    "length5-intermediate",
    "laufer-contraction",
    "length3-contraction",
];

/// Looks up one of [`NAMES`].
pub fn by_name(name: &str) -> Option<AlgebraPresentation> {
    let text = match name {
        "laufer" => LAUFER_NCCR.to_string(),
        "length3-nccr" => LENGTH3_NCCR.to_string(),
        "length4-nccr" => nccr46(4),
        "length5-nccr" => LENGTH5_NCCR.to_string(),
        "length6-nccr" => nccr46(6),
        "length5-intermediate" => length5_intermediate_text(),
        "laufer-contraction" => LAUFER_CONTRACTION.to_string(),
        "length3-contraction" => LENGTH3_CONTRACTION.to_string(),
        _ => return None,
    };
    Some(parse_presentation(&text).unwrap_or_else(|e| panic!("example '{name}' fails to parse: {e}")))
}

/// Classifying map ℍ₂ → ℚ[t, Y, Z] for the Laufer flop.
pub const LAUFER_MAP: &str = "\
params: t, Y, Z
grading: Y=4, Z=4
T0b = -Y
T0c = t
T0d = Z + t + t^2/4
";

/// Relations of the length-2 algebra after the Laufer classifying map.
pub const LAUFER_SPECIALIZED_RELATIONS: [&str; 5] = [
    "a*A - t*e0",
    "b*b + Y*e4",
    "c*c - t*e4",
    "d*d - (t^2/4 + t + Z)*e4",
    "A*a + b + c + d - t/2*e4",
];

pub const LAUFER_NCCR: &str = "\
name: laufer
vertices: 0, 4
arrows: a: 0 -> 4 (deg 2), A: 4 -> 0 (deg 2), c: 4 -> 4 (deg 2), b: 4 -> 4 (deg 3)
relations:
  a*A*a - a*c^2 ;
  A*a*A - c^2*A ;
  b^2 - c^3 + A*a*c + c*A*a ;
  b*c + c*b
";

pub const LAUFER_SUPERPOTENTIAL: &str = "1/2*a*A*a*A - a*c^2*A - c*b^2 + 1/4*c^4";

pub const LAUFER_CONTRACTION: &str = "\
name: laufer-contraction
vertices: 4
arrows: c: 4 -> 4 (deg 2), b: 4 -> 4 (deg 3)
relations:
  c^3 - b^2 ;
  b*c + c*b
";

/// Classifying map ℍ₃ → ℚ[T] of the explicit length-3 flop.
pub const LENGTH3_MAP: &str = "\
params: T
t = 0
T1b = 0
T1c = 0
T0b = T
T0c = T
T0d = T
";

/// Same map with T₁ sent to T, as in the computer-algebra listing.
pub const LENGTH3_MAP_ALT: &str = "\
params: T
t = 0
T1b = T
T1c = T
T0b = T
T0c = T
T0d = T
";

pub const LENGTH3_SPECIALIZED_RELATIONS: [&str; 7] = [
    "a*A + T*e0",
    "A*a - d*d + T*e6",
    "d*A",
    "a*d",
    "b^3 - T*e6",
    "c^3 - T*e6",
    "b + c + d",
];

pub const LENGTH3_NCCR: &str = "\
name: length3-nccr
vertices: 0, 6
arrows: a: 0 -> 6, A: 6 -> 0, c: 6 -> 6, b: 6 -> 6
relations:
  (b + c)*A ;
  a*(b + c) ;
  A*a - (b + c)^2 + b^3 ;
  A*a - (b + c)^2 + c^3
";

pub const LENGTH3_SUPERPOTENTIAL: &str = "a*b*A + a*c*A - b^4 - c^4 - (-b - c)^3";

/// Arrow rescaling under which [`LENGTH3_SUPERPOTENTIAL`] yields exactly the relation ideal.
pub const LENGTH3_SCALING: [(&str, &str); 3] = [("b", "3/4"), ("c", "3/4"), ("A", "-27/16")];

pub const LENGTH3_CONTRACTION: &str = "\
name: length3-contraction
vertices: 6
arrows: c: 6 -> 6, b: 6 -> 6
relations:
  (b + c)^2 - b^3 ;
  (b + c)^2 - c^3
";

/// The hypersurface printed for the explicit length-3 flop, as −f = g − x².
pub const LENGTH3_EQUATION: &str = "-x^2 - T^5 + 4*T^3*y + T^2*z^2 + 1/4*T^2*y^2 + 1/2*T*z^2*y + 1/4*z^4 - y^3";

/// The printed 6×6 matrix C, rows over the generators a, ac, acc, acb, accb, accbc.
pub const LENGTH3_MF: [[&str; 6]; 6] = [
    ["1/2*(T*y - z^2)", "-T^2", "T^2 - y", "-y", "-z", "-T"],
    ["-T*y + z*y", "-1/2*(T*y + z^2)", "-T^2 + T*z", "T^2", "y", "-z"],
    ["-T^3 - T^2*z", "T^3 - T*y + z*y", "-1/2*(T*y - z^2)", "T*z", "-T^2", "y"],
    ["-T^3 + y^2", "T*y", "T*z + T*y", "-1/2*(T*y + z^2)", "-T^2", "-y"],
    ["-T^2*z - T^2*y", "T^3 + T^2*z - y^2", "-T^3 - T*y", "T^3 - T*y + z*y", "1/2*(T*y + z^2)", "T^2"],
    [
        "-T^3*z - T^2*y + T*z*y - z^2*y",
        "T^4 - T^2*z - 2*T^2*y + T*z*y",
        "T^3 - y^2",
        "-T^3",
        "-T^3 + T*y - z*y",
        "1/2*(T*y + z^2)",
    ],
];

/// Classifying map ℍ_l → ℚ[T] for lengths 4 and 6: t = 0, T^x_0 = T, other T^x_i = 0.
pub fn length46_map(l: u8) -> &'static str {
    match l {
        4 => "params: T\nt = 0\nT0b = T\nT0c = T\nT1c = 0\nT2c = 0\nT0d = T\nT1d = 0\n",
        6 => "params: T\nt = 0\nT0b = T\nT0c = T\nT1c = 0\nT0d = T\nT1d = 0\nT2d = 0\nT3d = 0\n",
        _ => panic!("lengths 4 and 6 only"),
    }
}

/// Exponents (i, j, k) of β, γ, δ in the length-4 and length-6 examples.
pub fn length46_exponents(l: u8) -> (u32, u32, u32) {
    match l {
        4 => (2, 4, 3),
        6 => (2, 3, 5),
        _ => panic!("lengths 4 and 6 only"),
    }
}

fn nccr46(l: u8) -> String {
    let (i, j, k) = length46_exponents(l);
    format!(
        "name: length{l}-nccr\nvertices: 0, 1\narrows: a: 0 -> 1, A: 1 -> 0, c: 1 -> 1, b: 1 -> 1\nrelations:\n  \
         (b + c)*A ;\n  a*(b + c) ;\n  b^{i} + A*a - (-b - c)^{k} ;\n  c^{j} + A*a - (-b - c)^{k}\n"
    )
}

/// Superpotential for the length-4 and length-6 examples with the coefficients that reproduce the relations.
pub fn length46_superpotential(l: u8) -> String {
    let (i, j, k) = length46_exponents(l);
    format!(
        "-a*b*A - a*c*A - 1/{}*b^{} - 1/{}*c^{} - 1/{}*(-b - c)^{}",
        i + 1,
        i + 1,
        j + 1,
        j + 1,
        k + 1,
        k + 1
    )
}

/// Classifying map ℍ₅ → ℚ[T] for the explicit length-5 flop.
pub const LENGTH5_MAP: &str = "\
params: T
t = 0
T2d = 0
T1d = 0
T3 = 0
T2 = 0
T1 = 0
T0d = T
T0 = -T
";

pub const LENGTH5_SPECIALIZED_RELATIONS: [&str; 7] = [
    "a*d",
    "d*A",
    "a*A + T*e0",
    "A*a - d^4 + T*e4",
    "d - b",
    "c*b*c + c^2*b + c*b^3 - T*e4",
    "(c + b^2)^2 + b*c*b",
];

pub const LENGTH5_NCCR: &str = "\
name: length5-nccr
vertices: 0, 4
arrows: a: 0 -> 4, A: 4 -> 0, c: 4 -> 4, b: 4 -> 4
relations:
  a*b ;
  b*A ;
  A*a + c*b*c + c^2*b + b*c^2 + c*b^3 + b^3*c + b^2*c*b + b*c*b^2 + b^5 - b^4 ;
  c^2 + c*b^2 + b^2*c + b*c*b + b^4
";

pub const LENGTH5_SUPERPOTENTIAL: &str = "a*b*A - 1/5*b^5 + b^2*c^2 + 1/2*b*c*b*c + b^4*c";

/// [`LENGTH5_SUPERPOTENTIAL`] with the two terms needed to produce every printed relation.
pub const LENGTH5_SUPERPOTENTIAL_FULL: &str = "a*b*A - 1/5*b^5 + 1/6*b^6 + b^2*c^2 + 1/2*b*c*b*c + b^4*c + 1/3*c^3";

const L5_T0: &str = "(-(2*t1 + 3*t2 + 4*t3 + 5*t4 + 3*t5 + 2*t6 + 4*t7 + 6*t8))";

/// e_{C'} A e_{C'} for C' = {0, 4, 8} on the E8 diagram, over ℍ_Γ.
pub fn length5_intermediate_text() -> String {
    "\
name: length5-intermediate
params: t1, t2, t3, t4, t5, t6, t7, t8
vertices: 0, 4, 8
arrows: a: 0 -> 4 (deg 4), A: 4 -> 0 (deg 4), d: 4 -> 4 (deg 2), a4: 4 -> 8, A4: 8 -> 4, c: 8 -> 8 (deg 2), b: 8 -> 8 (deg 2)
relations:
  a*A - t0*(t0 + t1)*(t0 + t1 + t2)*(t0 + t1 + t2 + t3)*e0 ;
  A*a - d*(d - t3*e4)*(d - (t3 + t2)*e4)*(d - (t3 + t2 + t1)*e4) ;
  a*d - (t0 + t1 + t2 + t3)*a ;
  d*A - (t0 + t1 + t2 + t3)*A ;
  a4*A4 - d - t4*e4 ;
  b*(b - t5*e8) ;
  c*(c - t7*e8)*(c - (t6 + t7)*e8) ;
  A4*a4 + b + c + t8*e8
"
    .replace("t0", L5_T0)
}

/// Images of the length-5 arrows in the intermediate algebra at the central fibre.
pub const LENGTH5_INTERMEDIATE_MAP: [(&str, &str); 5] =
    [("a", "a"), ("A", "A"), ("d", "d"), ("b", "a4*A4"), ("c", "a4*b*A4")];

/// Chart U₀ of the moduli of 0-generated representations of dimension vector (1, 2).
pub const CHART_U0: &str = "\
ring: t, T0b, T0c, T0d, c00, c10, c01, d10
eliminate:
  T0c = c00^2 + c01*c10 ;
  T0d = c00^2 - d10 - c01*d10 + c00*t + t^2/4
dims: 0 = 1, 4 = 2
a = [1, 0]
A = [t; -(c10 + d10 + T0b)]
b = [0, 1; T0b, 0]
c = [c00, c01; c10, -c00]
d = [-t/2 - c00, -1 - c01; d10, t/2 + c00]
";

/// x′, y, z on chart U₀.
pub const CHART_U0_XYZ: [&str; 3] = ["c00*(c10 + d10 + T0b) + c10*t", "-c01*(c10 + d10 + T0b) + c00*t", "-(c10 + d10 + T0b)"];

pub const CHART_U1: &str = "\
ring: t, T0b, T0c, T0d, B00, B01, B10, D10
eliminate:
  T0b = B00^2 + B01*B10 ;
  T0d = (t/2 + B00)^2 - D10*(B01 + 1)
dims: 0 = 1, 4 = 2
a = [1, 0]
A = [t; -(D10 + B10 + T0c)]
b = [B00, B01; B10, -B00]
c = [0, 1; T0c, 0]
d = [-t/2 - B00, -B01 - 1; D10, t/2 + B00]
";

/// x′, y, z on chart U₁.
pub const CHART_U1_XYZ: [&str; 3] = ["-B00*(B10 + D10 + T0c) + B01*t*T0c", "-(B10 + D10 + T0c)", "-B01*(B10 + D10 + T0c) + B00*t"];

/// The length-2 arrows as maps between the cokernels of Ψ₂, over ℚ[x, y, z, t, u, v, w].
pub const PSI2_REPRESENTATION: &str = "\
ring: x, y, z, t, u, v, w
params:
  T0b = -u ;
  T0c = -w ;
  T0d = 2*v + y + z - u - w + t^2/4
dims: 0 = 1, 4 = 4
a = [1, 0, 0, 0]
A = [t; z; y; x + t*v]
b = [0, 1, 0, 0; -u, 0, 0, 0; 2*v, 0, 0, -1; 0, 2*v, u, 0]
c = [0, 0, 1, 0; 0, 0, 0, 1; -w, 0, 0, 0; 0, -w, 0, 0]
d = [-t/2, -1, -1, 0; u - z, t/2, 0, -1; w - 2*v - y, 0, t/2, 1; 0, w - 2*v - y, -u + z, -t/2]
";

/// The ring of [`PSI2_REPRESENTATION`] as a list of names.
pub const PSI2_RING: [&str; 7] = ["x", "y", "z", "t", "u", "v", "w"];

pub const PSI2: [[&str; 4]; 4] = [
    ["-x - t*v", "y", "-z", "t"],
    ["-u*y - 2*v*z", "-x + t*v", "t*u", "z"],
    ["w*z", "-t*w", "-x - t*v", "y"],
    ["-t*u*w", "-w*z", "-u*y - 2*v*z", "-x + t*v"],
];

pub const PSI2_PLUS: [[&str; 4]; 4] = [
    ["-x + t*v", "-y", "z", "-t"],
    ["2*v*z + u*y", "-x - t*v", "-t*u", "-z"],
    ["-w*z", "t*w", "-x + t*v", "-y"],
    ["t*u*w", "w*z", "2*v*z + u*y", "-x - t*v"],
];

/// The length-2 equation in the basis x, y, z, t, u, v, w.
pub const LENGTH2_NICE_EQUATION: &str = "x^2 + u*y^2 + 2*v*y*z + w*z^2 + (u*w - v^2)*t^2";

/// The length-2 relation among the raw generators, with t_a = t/2, t_b = T0b, t_c = T0c, t_d = T0d.
pub const LENGTH2_RAW_EQUATION: &str = "x^2 + 2*(t/2)*Y*x - (Y*y*z - 4*(t/2)^2*T0b*T0c + T0b*y^2 + T0c*z^2)";
