use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex '{0}'")]
    DuplicateVertex(String),
    #[error("duplicate arrow '{0}'")]
    DuplicateArrow(String),
    #[error("arrow '{arrow}' uses undeclared vertex '{vertex}'")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("arrow '{0}' must have positive degree")]
    ZeroDegree(String),
    #[error("arrow name '{0}' clashes with an idempotent")]
    IdempotentClash(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(name, source id, target id, degree)` tuples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(&str, &str, &str, u32)]) -> Result<Self, QuiverError> {
        let mut q = Quiver { vertices: Vec::new(), arrows: Vec::new() };
        for v in vertices {
            q.add_vertex(v.as_ref())?;
        }
        for (name, s, t, d) in arrows {
            q.add_arrow(name, s, t, *d)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<usize, QuiverError> {
        if self.vertices.iter().any(|v| v == id) {
            return Err(QuiverError::DuplicateVertex(id.to_string()));
        }
        self.vertices.push(id.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str, degree: u32) -> Result<usize, QuiverError> {
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(QuiverError::DuplicateArrow(name.to_string()));
        }
        if degree == 0 {
            return Err(QuiverError::ZeroDegree(name.to_string()));
        }
        if let Some(rest) = name.strip_prefix('e') {
            if self.vertices.iter().any(|v| v == rest) {
                return Err(QuiverError::IdempotentClash(name.to_string()));
            }
        }
        let find = |v: &str| {
            self.vertex_index(v)
                .ok_or_else(|| QuiverError::UnknownVertex { arrow: name.to_string(), vertex: v.to_string() })
        };
        let (s, t) = (find(source)?, find(target)?);
        self.arrows.push(Arrow { name: name.to_string(), source: s, target: t, degree });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn idempotent(&self, v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow_path(&self, i: usize) -> Path {
        let a = &self.arrows[i];
        Path { source: a.source, target: a.target, arrows: vec![i as u32] }
    }

    /// Path from a sequence of arrow indices, or `None` if not composable.
    pub fn path(&self, arrows: &[u32]) -> Option<Path> {
        let first = self.arrows.get(*arrows.first()? as usize)?;
        let mut at = first.target;
        for &i in &arrows[1..] {
            let a = self.arrows.get(i as usize)?;
            if a.source != at {
                return None;
            }
            at = a.target;
        }
        Some(Path { source: first.source, target: at, arrows: arrows.to_vec() })
    }

    /// Path from arrow names.
    pub fn path_by_names(&self, names: &[&str]) -> Option<Path> {
        let idx: Option<Vec<u32>> = names.iter().map(|n| self.arrow_index(n).map(|i| i as u32)).collect();
        self.path(&idx?)
    }

    pub fn degree(&self, p: &Path) -> u32 {
        p.arrows.iter().map(|&i| self.arrows[i as usize].degree).sum()
    }

    pub fn show_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows.iter().map(|&i| self.arrows[i as usize].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    /// Vertices visited by a path, endpoints included.
    pub fn visits(&self, p: &Path) -> Vec<usize> {
        let mut out = vec![p.source];
        for &i in &p.arrows {
            out.push(self.arrows[i as usize].target);
        }
        out
    }
}

/// Vertex-typed path; the empty arrow sequence is the idempotent at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<u32>,
}

impl Path {
    pub fn is_idempotent(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }
}

/// Product of paths, left to right; `None` is the formal zero.
pub fn compose(p: &Path, q: &Path) -> Option<Path> {
    if p.target != q.source {
        return None;
    }
    let mut arrows = Vec::with_capacity(p.arrows.len() + q.arrows.len());
    arrows.extend_from_slice(&p.arrows);
    arrows.extend_from_slice(&q.arrows);
    Some(Path { source: p.source, target: q.target, arrows })
}

/// Degree-lexicographic order over an arrow precedence (first listed is largest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    precedence: Vec<usize>,
    rank: Vec<u32>,
}

impl MonomialOrder {
    pub fn new(precedence: Vec<usize>) -> Self {
        let n = precedence.len();
        let mut rank = vec![0; n];
        for (pos, &a) in precedence.iter().enumerate() {
            rank[a] = (n - 1 - pos) as u32;
        }
        MonomialOrder { precedence, rank }
    }

    /// Declaration order: the first declared arrow is the largest.
    pub fn declaration(q: &Quiver) -> Self {
        Self::new((0..q.arrows().len()).collect())
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    /// Rank of an arrow; larger means greater in the order.
    pub fn rank(&self, arrow: usize) -> u32 {
        self.rank[arrow]
    }

    pub fn is_valid_for(&self, q: &Quiver) -> bool {
        let n = q.arrows().len();
        let mut seen = vec![false; n];
        self.precedence.len() == n
            && self.precedence.iter().all(|&a| a < n && !std::mem::replace(&mut seen[a], true))
    }

    pub fn compare(&self, q: &Quiver, a: &Path, b: &Path) -> Ordering {
        q.degree(a)
            .cmp(&q.degree(b))
            .then_with(|| {
                let ra = a.arrows.iter().map(|&i| self.rank[i as usize]);
                let rb = b.arrows.iter().map(|&i| self.rank[i as usize]);
                ra.cmp(rb)
            })
            .then_with(|| a.source.cmp(&b.source))
            .then_with(|| a.target.cmp(&b.target))
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices: {}", self.vertices.join(", "))?;
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|a| {
                let mut s = format!("{}: {} -> {}", a.name, self.vertices[a.source], self.vertices[a.target]);
                if a.degree != 1 {
                    s.push_str(&format!(" (deg {})", a.degree));
                }
                s
            })
            .collect();
        write!(f, "\narrows: {}", arrows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> Quiver {
        Quiver::new(
            &["0", "4"],
            &[("a", "0", "4", 1), ("A", "4", "0", 1), ("b", "4", "4", 1), ("c", "4", "4", 1)],
        )
        .unwrap()
    }

    #[test]
    fn idempotent_is_identity() {
        let q = q2();
        let a = q.arrow_path(0);
        assert_eq!(compose(&q.idempotent(0), &a), Some(a.clone()));
        assert_eq!(compose(&a, &q.idempotent(4 - 3)), Some(a.clone()));
        assert_eq!(compose(&q.idempotent(1), &a), None);
    }

    #[test]
    fn non_composable_is_zero() {
        let q = q2();
        let a = q.arrow_path(0);
        assert_eq!(compose(&a, &a), None);
    }

    #[test]
    fn loop_at_zero_through_four() {
        let q = q2();
        let p = q.path_by_names(&["a", "b", "A"]).unwrap();
        assert_eq!((p.source, p.target), (0, 0));
        assert_eq!(q.show_path(&p), "a*b*A");
    }

    #[test]
    fn idempotent_name_clash_rejected() {
        let mut q = Quiver::new(&["0"], &[]).unwrap();
        assert!(matches!(q.add_arrow("e0", "0", "0", 1), Err(QuiverError::IdempotentClash(_))));
    }

    #[test]
    fn order_is_deglex_over_precedence() {
        let q = q2();
        let ord = MonomialOrder::new(vec![0, 1, 3, 2]);
        let bc = q.path_by_names(&["b", "c"]).unwrap();
        let cb = q.path_by_names(&["c", "b"]).unwrap();
        let aa = q.path_by_names(&["A", "a"]).unwrap();
        let b = q.arrow_path(2);
        assert_eq!(ord.compare(&q, &cb, &bc), Ordering::Greater);
        assert_eq!(ord.compare(&q, &aa, &cb), Ordering::Greater);
        assert_eq!(ord.compare(&q, &b, &bc), Ordering::Less);
    }
}
