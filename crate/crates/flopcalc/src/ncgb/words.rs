use super::{nil_groebner, truncated_groebner, GbError, GroebnerBasis, Word};
use crate::pathalg::{AlgebraPresentation, MonomialOrder, Path};

/// Outcome of a dimension computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(n) => Some(n),
            Dimension::Infinite => None,
        }
    }
}

/// Irreducible paths with the given endpoints, by increasing degree.
///
/// With `max_degree = None` the basis must be complete; the enumeration then either
/// terminates or proves the quotient infinite by finding a cycle of normal windows.
pub fn enumerate_normal_words(
    gb: &GroebnerBasis,
    source: Option<usize>,
    target: Option<usize>,
    max_degree: Option<u32>,
) -> Result<Vec<Path>, GbError> {
    if max_degree.is_none() && !gb.is_complete() {
        return Err(GbError::Incomplete);
    }
    let ctx = &gb.ctx;
    let narrows = ctx.to_arrow.len();
    let mut level: Vec<Word> = (0..ctx.nvertices)
        .filter(|&v| !gb.killed[v] && source.map_or(true, |s| s == v))
        .map(|v| ctx.mk(0, Vec::new(), v as u32))
        .collect();
    let max_lead = gb.lead_lengths.last().copied().unwrap_or(1).max(1);
    let mut window_count: Option<usize> = None;
    let mut all: Vec<Word> = Vec::new();
    let mut length = 0usize;
    while !level.is_empty() {
        if length + 1 == max_lead {
            window_count = Some(level.len().max(ctx.nvertices));
        }
        if let (None, Some(n), None) = (max_degree, window_count, gb.nil) {
            if length > max_lead + n {
                return Err(GbError::Infinite);
            }
        }
        let mut next = Vec::new();
        for w in &level {
            let at = ctx.target(w);
            for r in 0..narrows {
                if ctx.src[r] != at || gb.killed[ctx.tgt[r] as usize] {
                    continue;
                }
                let deg = w.deg + ctx.deg[r];
                if max_degree.is_some_and(|m| deg > m) {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(r as u16);
                if gb.nil.is_some_and(|n| letters.len() >= n) || ends_with_lead(gb, &letters) {
                    continue;
                }
                next.push(ctx.mk(deg, letters, w.src));
            }
        }
        all.append(&mut level);
        level = next;
        length += 1;
    }
    let mut out: Vec<Word> = all.into_iter().filter(|w| target.map_or(true, |t| ctx.target(w) as usize == t)).collect();
    out.sort_by(|a, b| (a.deg, &a.letters, a.src).cmp(&(b.deg, &b.letters, b.src)));
    Ok(out.iter().map(|w| ctx.path(w)).collect())
}

fn ends_with_lead(gb: &GroebnerBasis, letters: &[u16]) -> bool {
    let n = letters.len();
    gb.lead_lengths.iter().take_while(|&&l| l <= n).any(|&l| gb.index.contains_key(&letters[n - l..]))
}

/// Dimension of the quotient using the presentation's own order.
pub fn dimension(alg: &AlgebraPresentation, budget: u64) -> Result<Dimension, GbError> {
    dimension_with(alg, &alg.order, budget)
}

/// Raises the truncation degree until the basis completes, then counts normal words.
pub fn dimension_with(alg: &AlgebraPresentation, order: &MonomialOrder, budget: u64) -> Result<Dimension, GbError> {
    let start = alg.max_relation_degree().max(1);
    let mut gb = truncated_groebner(alg, order, start, budget)?;
    let mut degree = start;
    loop {
        if gb.is_complete() {
            return match enumerate_normal_words(&gb, None, None, None) {
                Ok(words) => Ok(Dimension::Finite(words.len())),
                Err(GbError::Infinite) => Ok(Dimension::Infinite),
                Err(e) => Err(e),
            };
        }
        degree += (degree / 2).max(2);
        gb.extend(degree)?;
    }
}

/// Dimension of the completion at the arrow ideal, for a quotient that is finite there.
///
/// Computes `dim F/(I + m^N)` for increasing `N` and stops once two consecutive values
/// agree, which forces `m^N ⊆ I + m^(N+1)` and hence stability. Gives up after `max_length`.
pub fn local_dimension(alg: &AlgebraPresentation, max_length: usize, budget: u64) -> Result<Dimension, GbError> {
    local_dimension_with(alg, &alg.order, max_length, budget)
}

pub fn local_dimension_with(
    alg: &AlgebraPresentation,
    order: &MonomialOrder,
    max_length: usize,
    budget: u64,
) -> Result<Dimension, GbError> {
    let mut prev: Option<usize> = None;
    for n in 1..=max_length {
        let gb = nil_groebner(alg, order, n, budget)?;
        let count = enumerate_normal_words(&gb, None, None, None)?.len();
        if prev == Some(count) {
            return Ok(Dimension::Finite(count));
        }
        prev = Some(count);
    }
    Ok(Dimension::Infinite)
}
