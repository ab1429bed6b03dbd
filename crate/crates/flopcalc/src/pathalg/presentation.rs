use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::element::{same_space, Element, PathSpace};
use super::quiver::{MonomialOrder, Path, Quiver};
use super::PathAlgError;
use crate::coeff::{parse_expr, ExprBuilder, Origin, ParamRing, ParseError, RatFunc};

/// Quiver with relations over a parameter ring, plus the arrow precedence used by default.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub name: Option<String>,
    space: Arc<PathSpace>,
    pub relations: Vec<Element>,
    pub order: MonomialOrder,
}

impl PartialEq for AlgebraPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && same_space(&self.space, &other.space)
            && self.order == other.order
            && self.relations.len() == other.relations.len()
            && self.relations.iter().zip(&other.relations).all(|(a, b)| a.terms() == b.terms())
    }
}

impl AlgebraPresentation {
    pub fn new(
        name: Option<String>,
        space: Arc<PathSpace>,
        relations: Vec<Element>,
        order: Option<MonomialOrder>,
    ) -> Result<Self, PathAlgError> {
        let order = order.unwrap_or_else(|| MonomialOrder::declaration(&space.quiver));
        if !order.is_valid_for(&space.quiver) {
            return Err(PathAlgError::BadOrder);
        }
        for (i, r) in relations.iter().enumerate() {
            if !same_space(r.space(), &space) {
                return Err(PathAlgError::AlgebraMismatch);
            }
            if !r.is_endpoint_homogeneous() {
                return Err(PathAlgError::Inhomogeneous { index: i, relation: r.show(&order) });
            }
        }
        let relations = relations.into_iter().map(|r| r.rebase(&space)).collect::<Result<_, _>>()?;
        Ok(AlgebraPresentation { name, space, relations, order })
    }

    pub fn space(&self) -> &Arc<PathSpace> {
        &self.space
    }

    pub fn quiver(&self) -> &Quiver {
        &self.space.quiver
    }

    pub fn params(&self) -> &ParamRing {
        &self.space.params
    }

    /// Parses a textual element in this algebra.
    pub fn parse_element(&self, text: &str) -> Result<Element, ParseError> {
        parse_element(&self.space, text, Origin::default())
    }

    pub fn element(&self, text: &str) -> Element {
        self.parse_element(text).unwrap_or_else(|e| panic!("bad element '{text}': {e}"))
    }

    pub fn with_relations(&self, relations: Vec<Element>) -> Result<Self, PathAlgError> {
        Self::new(self.name.clone(), self.space.clone(), relations, Some(self.order.clone()))
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations.iter().map(|r| r.degree()).max().unwrap_or(0)
    }

    /// True when every relation is homogeneous in the arrow grading.
    pub fn is_homogeneous(&self) -> bool {
        let q = self.quiver();
        self.relations.iter().all(|r| {
            let mut degs = r.terms().keys().map(|p| q.degree(p));
            let first = degs.next();
            degs.all(|d| Some(d) == first)
        })
    }

    /// Textual form in the presentation file format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.space.quiver;
        let p = &self.space.params;
        if let Some(n) = &self.name {
            writeln!(f, "name: {n}")?;
        }
        writeln!(f, "params: {}", p.names().join(", "))?;
        if p.grading().iter().any(|&g| g != 2) {
            let g: Vec<String> = p.names().iter().zip(p.grading()).map(|(n, d)| format!("{n}={d}")).collect();
            writeln!(f, "grading: {}", g.join(", "))?;
        }
        writeln!(f, "{q}")?;
        if self.order != MonomialOrder::declaration(q) {
            let names: Vec<&str> = self.order.precedence().iter().map(|&i| q.arrow(i).name.as_str()).collect();
            writeln!(f, "order: {}", names.join(", "))?;
        }
        write!(f, "relations:")?;
        let n = self.relations.len();
        for (i, r) in self.relations.iter().enumerate() {
            write!(f, "\n  {}", r.show(&self.order))?;
            if i + 1 < n {
                write!(f, " ;")?;
            }
        }
        writeln!(f)
    }
}

enum Val {
    Scalar(RatFunc),
    Elem(Element),
}

struct ElemBuilder<'a> {
    space: &'a Arc<PathSpace>,
}

impl ElemBuilder<'_> {
    fn lift(&self, v: Val) -> Element {
        match v {
            Val::Scalar(c) => Element::scalar(self.space, c),
            Val::Elem(e) => e,
        }
    }
}

impl ExprBuilder for ElemBuilder<'_> {
    type Value = Val;

    fn number(&mut self, n: BigInt) -> Result<Val, String> {
        Ok(Val::Scalar(RatFunc::from_rational(self.space.params.len(), BigRational::from_integer(n))))
    }

    fn ident(&mut self, name: &str) -> Result<Val, String> {
        let q = &self.space.quiver;
        if let Some(i) = q.arrow_index(name) {
            return Ok(Val::Elem(Element::arrow(self.space, i)));
        }
        if let Some(i) = self.space.params.index(name) {
            return Ok(Val::Scalar(RatFunc::var(self.space.params.len(), i)));
        }
        if let Some(v) = name.strip_prefix('e').and_then(|r| q.vertex_index(r)) {
            return Ok(Val::Elem(Element::idempotent(self.space, v)));
        }
        Err(format!("undeclared arrow, parameter or idempotent '{name}'"))
    }

    fn add(&mut self, a: Val, b: Val) -> Result<Val, String> {
        match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Ok(Val::Scalar(x.add(&y))),
            (a, b) => Ok(Val::Elem(self.lift(a).add(&self.lift(b)).map_err(|e| e.to_string())?)),
        }
    }

    fn sub(&mut self, a: Val, b: Val) -> Result<Val, String> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    fn mul(&mut self, a: Val, b: Val) -> Result<Val, String> {
        match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Ok(Val::Scalar(x.mul(&y))),
            (Val::Scalar(x), Val::Elem(e)) | (Val::Elem(e), Val::Scalar(x)) => Ok(Val::Elem(e.scale(&x))),
            (Val::Elem(x), Val::Elem(y)) => {
                let p = x.mul(&y).map_err(|e| e.to_string())?;
                if p.is_zero() && !x.is_zero() && !y.is_zero() {
                    return Err("product of non-composable paths".into());
                }
                Ok(Val::Elem(p))
            }
        }
    }

    fn div(&mut self, a: Val, b: Val) -> Result<Val, String> {
        let d = match b {
            Val::Scalar(d) => d,
            Val::Elem(_) => return Err("division by a path element".into()),
        };
        let inv = d.inv().map_err(|e| e.to_string())?;
        match a {
            Val::Scalar(x) => Ok(Val::Scalar(x.mul(&inv))),
            Val::Elem(e) => Ok(Val::Elem(e.scale(&inv))),
        }
    }

    fn neg(&mut self, a: Val) -> Result<Val, String> {
        Ok(match a {
            Val::Scalar(x) => Val::Scalar(x.neg()),
            Val::Elem(e) => Val::Elem(e.neg()),
        })
    }

    fn pow(&mut self, a: Val, n: u32) -> Result<Val, String> {
        match a {
            Val::Scalar(x) => Ok(Val::Scalar(x.pow(n))),
            Val::Elem(e) => {
                if n == 0 {
                    return Ok(Val::Elem(Element::one(self.space)));
                }
                let mut acc = e.clone();
                for _ in 1..n {
                    acc = acc.mul(&e).map_err(|e| e.to_string())?;
                }
                if acc.is_zero() && !e.is_zero() {
                    return Err("power of a non-composable path".into());
                }
                Ok(Val::Elem(acc))
            }
        }
    }
}

/// Parses one element of the path algebra; scalars denote multiples of the unit.
pub fn parse_element(space: &Arc<PathSpace>, text: &str, origin: Origin) -> Result<Element, ParseError> {
    let mut b = ElemBuilder { space };
    let v = parse_expr(text, origin, &mut b)?;
    Ok(b.lift(v))
}

struct Field {
    key: String,
    value: String,
    origin: Origin,
}

const KEYS: [&str; 7] = ["name", "params", "grading", "vertices", "arrows", "order", "relations"];

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn collect_fields(text: &str) -> Result<Vec<Field>, ParseError> {
    let mut fields: Vec<Field> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let lineno = ln + 1;
        if line.trim().is_empty() {
            if let Some(f) = fields.last_mut() {
                f.value.push('\n');
            }
            continue;
        }
        let key = line.split(':').next().unwrap_or("").trim();
        let is_key = !line.starts_with(char::is_whitespace) && KEYS.contains(&key) && line.contains(':');
        if is_key {
            if fields.iter().any(|f| f.key == key) {
                return Err(ParseError { line: lineno, col: 1, message: format!("duplicate key '{key}'") });
            }
            let colon = line.find(':').expect("checked");
            let value = line[colon + 1..].to_string();
            let col = line[..colon + 1].chars().count() + 1;
            fields.push(Field { key: key.to_string(), value, origin: Origin { line: lineno, col } });
        } else {
            match fields.last_mut() {
                Some(f) => {
                    f.value.push('\n');
                    f.value.push_str(line);
                }
                None => {
                    return Err(ParseError {
                        line: lineno,
                        col: 1,
                        message: format!("expected one of {}", KEYS.join(", ")),
                    })
                }
            }
        }
    }
    Ok(fields)
}

/// Splits on `sep`, returning each piece with the position where it starts.
fn split_with_origin(value: &str, origin: Origin, sep: char) -> Vec<(String, Origin)> {
    let mut out = Vec::new();
    let (mut line, mut col) = (origin.line, origin.col);
    let mut cur = String::new();
    let mut start = Origin { line, col };
    for c in value.chars() {
        if c == sep {
            out.push((std::mem::take(&mut cur), start));
            col += 1;
            start = Origin { line, col };
            continue;
        }
        cur.push(c);
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    out.push((cur, start));
    out
}

fn trimmed(piece: &str, origin: Origin) -> (String, Origin) {
    let (mut line, mut col) = (origin.line, origin.col);
    let mut chars = piece.chars().peekable();
    let mut skipped = 0;
    while let Some(&c) = chars.peek() {
        if !c.is_whitespace() {
            break;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
        chars.next();
        skipped += c.len_utf8();
    }
    (piece[skipped..].trim_end().to_string(), Origin { line, col })
}

fn list(value: &str, origin: Origin) -> Vec<(String, Origin)> {
    split_with_origin(value, origin, ',')
        .into_iter()
        .map(|(s, o)| trimmed(&s, o))
        .filter(|(s, _)| !s.is_empty())
        .collect()
}

fn perr(o: Origin, message: impl Into<String>) -> ParseError {
    ParseError { line: o.line, col: o.col, message: message.into() }
}

fn valid_ident(s: &str) -> bool {
    let mut it = s.chars();
    matches!(it.next(), Some(c) if crate::coeff::parse::is_ident_start(c)) && it.all(crate::coeff::parse::is_ident_char)
}

/// Parses the line-oriented presentation format.
pub fn parse_presentation(text: &str) -> Result<AlgebraPresentation, ParseError> {
    let fields = collect_fields(text)?;
    let get = |k: &str| fields.iter().find(|f| f.key == k);
    let name = get("name").map(|f| f.value.trim().to_string()).filter(|s| !s.is_empty());

    let mut params: Vec<String> = Vec::new();
    if let Some(f) = get("params") {
        for (p, o) in list(&f.value, f.origin) {
            if !valid_ident(&p) {
                return Err(perr(o, format!("invalid parameter name '{p}'")));
            }
            if params.contains(&p) {
                return Err(perr(o, format!("duplicate parameter '{p}'")));
            }
            params.push(p);
        }
    }
    let mut grading = vec![2u32; params.len()];
    if let Some(f) = get("grading") {
        for (item, o) in list(&f.value, f.origin) {
            let (n, d) = item.split_once('=').ok_or_else(|| perr(o, "expected name=degree"))?;
            let i = params.iter().position(|p| p == n.trim()).ok_or_else(|| perr(o, format!("undeclared parameter '{}'", n.trim())))?;
            grading[i] = d.trim().parse().map_err(|_| perr(o, "degree must be a nonnegative integer"))?;
        }
    }
    let ring = ParamRing::with_grading(&params, &grading);

    let vf = get("vertices").ok_or_else(|| perr(Origin::default(), "missing 'vertices:'"))?;
    let mut quiver = Quiver::new::<&str>(&[], &[]).expect("empty quiver");
    for (v, o) in list(&vf.value, vf.origin) {
        if !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(perr(o, format!("invalid vertex id '{v}'")));
        }
        quiver.add_vertex(&v).map_err(|e| perr(o, e.to_string()))?;
    }

    if let Some(f) = get("arrows") {
        for (item, o) in list(&f.value, f.origin) {
            let (name, rest) = item.split_once(':').ok_or_else(|| perr(o, "expected 'name: source -> target'"))?;
            let name = name.trim();
            if !valid_ident(name) {
                return Err(perr(o, format!("invalid arrow name '{name}'")));
            }
            if params.iter().any(|p| p == name) {
                return Err(perr(o, format!("arrow '{name}' clashes with a parameter")));
            }
            let (ends, degree) = match rest.find('(') {
                Some(i) => {
                    let spec = rest[i..].trim();
                    let inner = spec
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .and_then(|s| s.trim().strip_prefix("deg"))
                        .ok_or_else(|| perr(o, "expected '(deg k)'"))?;
                    let d: u32 = inner.trim().parse().map_err(|_| perr(o, "degree must be a positive integer"))?;
                    (&rest[..i], d)
                }
                None => (rest, 1),
            };
            let (s, t) = ends.split_once("->").ok_or_else(|| perr(o, "expected 'source -> target'"))?;
            quiver.add_arrow(name, s.trim(), t.trim(), degree).map_err(|e| perr(o, e.to_string()))?;
        }
    }

    let order = match get("order") {
        Some(f) => {
            let mut prec = Vec::new();
            for (n, o) in list(&f.value, f.origin) {
                let i = quiver.arrow_index(&n).ok_or_else(|| perr(o, format!("undeclared arrow '{n}'")))?;
                if prec.contains(&i) {
                    return Err(perr(o, format!("arrow '{n}' listed twice")));
                }
                prec.push(i);
            }
            if prec.len() != quiver.arrows().len() {
                return Err(perr(f.origin, "order must list every arrow exactly once"));
            }
            Some(MonomialOrder::new(prec))
        }
        None => None,
    };
    let space = PathSpace::new(quiver, ring);
    let shown_order = order.clone().unwrap_or_else(|| MonomialOrder::declaration(&space.quiver));

    let mut relations = Vec::new();
    if let Some(f) = get("relations") {
        for (piece, o) in split_with_origin(&f.value, f.origin, ';') {
            let (src, o) = trimmed(&piece, o);
            if src.is_empty() {
                continue;
            }
            let r = parse_element(&space, &src, o)?;
            if !r.is_endpoint_homogeneous() {
                return Err(perr(o, format!("relation is not endpoint-homogeneous: {}", r.show(&shown_order))));
            }
            relations.push(r);
        }
    }
    AlgebraPresentation::new(name, space, relations, order).map_err(|e| perr(Origin::default(), e.to_string()))
}

/// Algebra map between path algebras given on vertices, arrows and parameters.
pub struct Homomorphism {
    pub target: Arc<PathSpace>,
    /// Image vertex of each source vertex, or `None` to send its idempotent to zero.
    pub vertex_map: Vec<Option<usize>>,
    pub arrow_images: Vec<Element>,
    pub coeff_images: Vec<RatFunc>,
}

impl Homomorphism {
    /// Identity on the quiver with a substitution on the parameters.
    pub fn coefficient_map(source: &PathSpace, target: &Arc<PathSpace>, coeff_images: Vec<RatFunc>) -> Self {
        let q = &target.quiver;
        Homomorphism {
            target: target.clone(),
            vertex_map: (0..source.quiver.vertices().len()).map(Some).collect(),
            arrow_images: (0..q.arrows().len()).map(|i| Element::arrow(target, i)).collect(),
            coeff_images,
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element, PathAlgError> {
        let mut out = Element::zero(&self.target);
        let n = x.params().len();
        let mut cache: BTreeMap<Path, Element> = BTreeMap::new();
        for (p, c) in x.terms() {
            let img_c = if n == 0 {
                let v = c.constant_value().expect("no parameters");
                RatFunc::from_rational(self.target.params.len(), v)
            } else {
                c.substitute(&self.coeff_images).map_err(PathAlgError::Coeff)?
            };
            if img_c.is_zero() {
                continue;
            }
            let img_p = match cache.get(p) {
                Some(e) => e.clone(),
                None => {
                    let e = self.apply_path(p)?;
                    cache.insert(p.clone(), e.clone());
                    e
                }
            };
            out = out.add(&img_p.scale(&img_c))?;
        }
        Ok(out)
    }

    fn apply_path(&self, p: &Path) -> Result<Element, PathAlgError> {
        if p.arrows.is_empty() {
            return Ok(match self.vertex_map[p.source] {
                Some(v) => Element::idempotent(&self.target, v),
                None => Element::zero(&self.target),
            });
        }
        let mut acc = self.arrow_images[p.arrows[0] as usize].clone();
        for &a in &p.arrows[1..] {
            acc = acc.mul(&self.arrow_images[a as usize])?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEN2: &str = "\
name: length2
params: t, T0b, T0c, T0d
vertices: 0, 4
arrows: a: 0 -> 4, A: 4 -> 0, d: 4 -> 4, c: 4 -> 4, b: 4 -> 4
relations: a*A - t*e0 ; b*b - T0b*e4 ; c*c - T0c*e4 ; d*d - T0d*e4 ;
  A*a + b + c + d - (1/2)*t*e4
";

    #[test]
    fn parses_length_two() {
        let p = parse_presentation(LEN2).unwrap();
        assert_eq!(p.relations.len(), 5);
        assert_eq!(p.params().len(), 4);
        assert_eq!(p.quiver().vertices().len(), 2);
        assert_eq!(p.quiver().arrows().len(), 5);
    }

    #[test]
    fn print_parse_roundtrip() {
        let p = parse_presentation(LEN2).unwrap();
        let text = p.to_text();
        let q = parse_presentation(&text).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn empty_relations_accepted() {
        let p = parse_presentation("vertices: 0\narrows: x: 0 -> 0\nrelations:\n").unwrap();
        assert!(p.relations.is_empty());
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let text = "vertices: 0, 4\narrows: a: 0 -> 4, A: 4 -> 0, b: 4 -> 4\nrelations: A*a + b ; a*A + b\n";
        let e = parse_presentation(text).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("endpoint"));
    }

    #[test]
    fn undeclared_names_reported_with_position() {
        let text = "params: t\nvertices: 0\narrows: x: 0 -> 0\nrelations: x*x - s*e0\n";
        let e = parse_presentation(text).unwrap_err();
        assert_eq!((e.line, e.col), (4, 18));
    }

    #[test]
    fn non_composable_product_rejected() {
        let text = "vertices: 0, 4\narrows: a: 0 -> 4\nrelations: a*a\n";
        assert!(parse_presentation(text).is_err());
    }

    #[test]
    fn arrow_degrees_parsed() {
        let p = parse_presentation("vertices: 0\narrows: x: 0 -> 0 (deg 3)\n").unwrap();
        assert_eq!(p.quiver().arrow(0).degree, 3);
    }
}
