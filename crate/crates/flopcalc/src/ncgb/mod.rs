//! Two-sided Gröbner bases in path algebras by overlap completion.
//!
//! Words are stored with arrows replaced by their rank in the monomial order, so
//! the derived ordering on [`Word`] is exactly the degree-lex order.

mod words;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt::Write as _;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::coeff::RatFunc;
use crate::pathalg::{AlgebraPresentation, Element, MonomialOrder, Path, PathAlgError};

pub use words::Dimension;

/// Default cap on reduction steps for one completion call.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("step budget of {budget} exceeded after {rules} rules (degree bound {degree})")]
    Budget { budget: u64, rules: usize, degree: u32 },
    #[error("element degree {degree} exceeds truncation degree {truncation}")]
    DegreeExceeded { degree: u32, truncation: u32 },
    #[error("relation degree {degree} exceeds requested bound {bound}")]
    BoundTooSmall { degree: u32, bound: u32 },
    #[error("basis is incomplete; unbounded enumeration needs a complete basis")]
    Incomplete,
    #[error("quotient is infinite-dimensional")]
    Infinite,
    #[error(transparent)]
    PathAlg(#[from] PathAlgError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Word {
    /// Sort key: the degree, negated under a local order.
    key: i64,
    deg: u32,
    letters: Vec<u16>,
    src: u32,
}

type Poly = Vec<(Word, RatFunc)>;

#[derive(Clone, Debug)]
struct Rule {
    lead: Word,
    tail: Poly,
    alive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    word: Word,
    i: usize,
    j: usize,
    k: usize,
}

/// Arrow data indexed by rank.
#[derive(Clone, Debug)]
pub(crate) struct Ctx {
    to_arrow: Vec<usize>,
    to_rank: Vec<u16>,
    src: Vec<u32>,
    tgt: Vec<u32>,
    deg: Vec<u32>,
    nvertices: usize,
    nparams: usize,
    local: bool,
}

impl Ctx {
    fn new(alg: &AlgebraPresentation, order: &MonomialOrder) -> Self {
        let q = alg.quiver();
        let n = q.arrows().len();
        let mut to_arrow = vec![0; n];
        let mut to_rank = vec![0; n];
        for a in 0..n {
            let r = order.rank(a) as usize;
            to_arrow[r] = a;
            to_rank[a] = r as u16;
        }
        let src = to_arrow.iter().map(|&a| q.arrow(a).source as u32).collect();
        let tgt = to_arrow.iter().map(|&a| q.arrow(a).target as u32).collect();
        let deg = to_arrow.iter().map(|&a| q.arrow(a).degree).collect();
        Ctx { to_arrow, to_rank, src, tgt, deg, nvertices: q.vertices().len(), nparams: alg.params().len(), local: false }
    }

    fn mk(&self, deg: u32, letters: Vec<u16>, src: u32) -> Word {
        let key = if self.local { -(deg as i64) } else { deg as i64 };
        Word { key, deg, letters, src }
    }

    fn word(&self, p: &Path) -> Word {
        let letters: Vec<u16> = p.arrows.iter().map(|&a| self.to_rank[a as usize]).collect();
        let deg = letters.iter().map(|&r| self.deg[r as usize]).sum();
        self.mk(deg, letters, p.source as u32)
    }

    fn path(&self, w: &Word) -> Path {
        let arrows: Vec<u32> = w.letters.iter().map(|&r| self.to_arrow[r as usize] as u32).collect();
        let target = match w.letters.last() {
            Some(&r) => self.tgt[r as usize] as usize,
            None => w.src as usize,
        };
        Path { source: w.src as usize, target, arrows }
    }

    fn target(&self, w: &Word) -> u32 {
        w.letters.last().map(|&r| self.tgt[r as usize]).unwrap_or(w.src)
    }

    fn deg_of(&self, letters: &[u16]) -> u32 {
        letters.iter().map(|&r| self.deg[r as usize]).sum()
    }

    /// `prefix · w · suffix` where the pieces are known to compose.
    fn splice(&self, prefix: &[u16], w: &Word, suffix: &[u16], src: u32) -> Word {
        let mut letters = Vec::with_capacity(prefix.len() + w.letters.len() + suffix.len());
        letters.extend_from_slice(prefix);
        letters.extend_from_slice(&w.letters);
        letters.extend_from_slice(suffix);
        let deg = w.deg + self.deg_of(prefix) + self.deg_of(suffix);
        self.mk(deg, letters, src)
    }
}

/// Reduced, interreduced rewriting system for a path-algebra ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    alg: AlgebraPresentation,
    order: MonomialOrder,
    ctx: Ctx,
    rules: Vec<Rule>,
    index: FxHashMap<Vec<u16>, usize>,
    lead_lengths: Vec<usize>,
    killed: Vec<bool>,
    truncation_degree: u32,
    pending: BinaryHeap<Reverse<Pair>>,
    deferred: Vec<Pair>,
    budget: u64,
    steps: u64,
    nil: Option<usize>,
}

/// Computes a Gröbner basis processing only overlaps of degree at most `max_degree`.
pub fn truncated_groebner(
    alg: &AlgebraPresentation,
    order: &MonomialOrder,
    max_degree: u32,
    budget: u64,
) -> Result<GroebnerBasis, GbError> {
    let mut gb = GroebnerBasis::empty(alg, order, max_degree, budget);
    let rel_deg = alg.max_relation_degree();
    if rel_deg > max_degree {
        return Err(GbError::BoundTooSmall { degree: rel_deg, bound: max_degree });
    }
    let mut inputs: Vec<Poly> = alg.relations.iter().map(|r| gb.to_poly(r)).filter(|p| !p.is_empty()).collect();
    inputs.sort_by(|a, b| a[0].0.cmp(&b[0].0));
    for p in inputs {
        gb.insert(p)?;
    }
    gb.complete_pairs()?;
    Ok(gb)
}

/// Gröbner basis of the ideal plus every path of length at least `nil_length`.
///
/// Leading words are taken of lowest degree (a local order), which is well-founded here
/// because long paths vanish.
/// The quotient is always finite-dimensional; as `nil_length` grows its dimension
/// stabilises at the dimension of the completion at the arrow ideal.
pub fn nil_groebner(
    alg: &AlgebraPresentation,
    order: &MonomialOrder,
    nil_length: usize,
    budget: u64,
) -> Result<GroebnerBasis, GbError> {
    let max_arrow = alg.quiver().arrows().iter().map(|a| a.degree).max().unwrap_or(1);
    let bound = (2 * nil_length as u32 + 2) * max_arrow;
    let mut gb = GroebnerBasis::empty(alg, order, bound.max(alg.max_relation_degree()), budget);
    gb.nil = Some(nil_length.max(1));
    gb.ctx.local = true;
    let mut inputs: Vec<Poly> = alg.relations.iter().map(|r| gb.to_poly(r)).collect();
    inputs.sort_by(|a, b| b.first().map(|t| &t.0).cmp(&a.first().map(|t| &t.0)));
    for p in inputs {
        gb.insert(p)?;
    }
    gb.complete_pairs()?;
    Ok(gb)
}

impl GroebnerBasis {
    fn empty(alg: &AlgebraPresentation, order: &MonomialOrder, max_degree: u32, budget: u64) -> Self {
        let ctx = Ctx::new(alg, order);
        let nv = ctx.nvertices;
        GroebnerBasis {
            alg: alg.clone(),
            order: order.clone(),
            ctx,
            rules: Vec::new(),
            index: FxHashMap::default(),
            lead_lengths: Vec::new(),
            killed: vec![false; nv],
            truncation_degree: max_degree,
            pending: BinaryHeap::new(),
            deferred: Vec::new(),
            budget,
            steps: 0,
            nil: None,
        }
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.alg
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn truncation_degree(&self) -> u32 {
        self.truncation_degree
    }

    /// No unresolved overlap remains at any degree.
    pub fn is_complete(&self) -> bool {
        self.pending.is_empty() && !self.deferred.iter().any(|p| self.rules[p.i].alive && self.rules[p.j].alive)
    }

    /// Vertices whose idempotent lies in the ideal.
    pub fn killed_vertices(&self) -> Vec<usize> {
        (0..self.killed.len()).filter(|&v| self.killed[v]).collect()
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.rules.iter().filter(|r| r.alive).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rules as `(leading path, remainder)`, in increasing order of leading word.
    pub fn rules(&self) -> Vec<(Path, Element)> {
        let mut live: Vec<&Rule> = self.rules.iter().filter(|r| r.alive).collect();
        live.sort_by(|a, b| a.lead.cmp(&b.lead));
        live.into_iter().map(|r| (self.ctx.path(&r.lead), self.to_element(&r.tail))).collect()
    }

    /// Raises the truncation degree and resumes completion.
    pub fn extend(&mut self, max_degree: u32) -> Result<(), GbError> {
        if max_degree <= self.truncation_degree {
            return Ok(());
        }
        self.truncation_degree = max_degree;
        let deferred = std::mem::take(&mut self.deferred);
        for p in deferred {
            if self.rules[p.i].alive && self.rules[p.j].alive {
                self.push_pair(p);
            }
        }
        self.complete_pairs()
    }

    pub fn set_budget(&mut self, budget: u64) {
        self.budget = budget;
        self.steps = 0;
    }

    fn to_poly(&self, e: &Element) -> Poly {
        let mut v: Poly = e.terms().iter().map(|(p, c)| (self.ctx.word(p), c.clone())).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v
    }

    fn to_element(&self, p: &Poly) -> Element {
        Element::from_terms(self.alg.space(), p.iter().map(|(w, c)| (self.ctx.path(w), c.clone())))
    }

    /// Paths that vanish identically: through a killed vertex, or too long in nil mode.
    fn touches_killed(&self, w: &Word) -> bool {
        if self.nil.is_some_and(|n| w.letters.len() >= n) || self.killed[w.src as usize] {
            return true;
        }
        w.letters.iter().any(|&r| self.killed[self.ctx.tgt[r as usize] as usize])
    }

    /// Leftmost, then shortest, occurrence of a leading word inside `letters`.
    fn find_divisor(&self, letters: &[u16]) -> Option<(usize, usize)> {
        let n = letters.len();
        for i in 0..n {
            for &l in &self.lead_lengths {
                if i + l > n {
                    break;
                }
                if let Some(&r) = self.index.get(&letters[i..i + l]) {
                    return Some((r, i));
                }
            }
        }
        None
    }

    fn is_reducible(&self, w: &Word) -> bool {
        self.touches_killed(w) || self.find_divisor(&w.letters).is_some()
    }

    fn reduce(&mut self, p: Poly) -> Result<Poly, GbError> {
        let mut steps = self.steps;
        let r = reduce_with(self, p, &mut steps);
        self.steps = steps;
        r
    }

    fn rebuild_index(&mut self) {
        self.index.clear();
        let mut lens: Vec<usize> = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            if r.alive {
                self.index.insert(r.lead.letters.clone(), i);
                lens.push(r.lead.letters.len());
            }
        }
        lens.sort_unstable();
        lens.dedup();
        self.lead_lengths = lens;
    }

    fn insert(&mut self, p: Poly) -> Result<(), GbError> {
        let mut queue = vec![p];
        while let Some(p) = queue.pop() {
            let p = self.reduce(p)?;
            if p.is_empty() {
                continue;
            }
            let (lead, lc) = p[0].clone();
            if lead.letters.is_empty() {
                self.kill_vertex(lead.src as usize, &mut queue);
                continue;
            }
            let inv = lc.inv().expect("nonzero leading coefficient");
            let tail: Poly = p[1..].iter().map(|(w, c)| (w.clone(), c.mul(&inv).neg())).collect();
            let h = self.rules.len();
            self.rules.push(Rule { lead: lead.clone(), tail, alive: true });
            // Rules whose leading word contains the new one are withdrawn and re-inserted.
            for i in 0..h {
                if self.rules[i].alive && contains(&self.rules[i].lead.letters, &lead.letters) {
                    self.rules[i].alive = false;
                    let r = &self.rules[i];
                    let mut back: Poly = vec![(r.lead.clone(), RatFunc::one(self.ctx.nparams))];
                    back.extend(r.tail.iter().map(|(w, c)| (w.clone(), c.neg())));
                    queue.push(back);
                }
            }
            self.rebuild_index();
            self.reduce_tails(Some(&lead.letters))?;
            self.add_pairs(h);
            if let Some(n) = self.nil {
                self.nil_consequences(h, n, &mut queue);
            }
        }
        Ok(())
    }

    /// `u·tail·v` for every padding that makes `u·lead·v` vanish.
    fn nil_consequences(&self, h: usize, n: usize, queue: &mut Vec<Poly>) {
        let rule = &self.rules[h];
        let pad = n.saturating_sub(rule.lead.letters.len());
        let src = rule.lead.src;
        let tgt = self.ctx.target(&rule.lead);
        for left in 0..=pad {
            for u in self.walks_into(src, left) {
                let usrc = if u.is_empty() { src } else { self.ctx.src[u[0] as usize] };
                for v in self.walks_from(tgt, pad - left) {
                    let mut acc: BTreeMap<Word, RatFunc> = BTreeMap::new();
                    for (w, c) in &rule.tail {
                        accumulate(&mut acc, self.ctx.splice(&u, w, &v, usrc), c.clone());
                    }
                    let p: Poly = acc.into_iter().rev().filter(|(w, _)| !self.touches_killed(w)).collect();
                    if !p.is_empty() {
                        queue.push(p);
                    }
                }
            }
        }
    }

    fn walks_from(&self, v: u32, len: usize) -> Vec<Vec<u16>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &out {
                let at = w.last().map_or(v, |&r| self.ctx.tgt[r as usize]);
                for r in 0..self.ctx.to_arrow.len() {
                    if self.ctx.src[r] == at {
                        let mut x = w.clone();
                        x.push(r as u16);
                        next.push(x);
                    }
                }
            }
            out = next;
        }
        out
    }

    fn walks_into(&self, v: u32, len: usize) -> Vec<Vec<u16>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &out {
                let at = w.first().map_or(v, |&r| self.ctx.src[r as usize]);
                for r in 0..self.ctx.to_arrow.len() {
                    if self.ctx.tgt[r] == at {
                        let mut x = Vec::with_capacity(w.len() + 1);
                        x.push(r as u16);
                        x.extend_from_slice(w);
                        next.push(x);
                    }
                }
            }
            out = next;
        }
        out
    }

    fn kill_vertex(&mut self, v: usize, queue: &mut Vec<Poly>) {
        self.killed[v] = true;
        for i in 0..self.rules.len() {
            if self.rules[i].alive && self.touches_killed(&self.rules[i].lead) {
                self.rules[i].alive = false;
                queue.push(self.rules[i].tail.clone());
            }
        }
        for i in 0..self.rules.len() {
            if self.rules[i].alive {
                let tail = std::mem::take(&mut self.rules[i].tail);
                let kept: Poly = tail.into_iter().filter(|(w, _)| !self.touches_killed(w)).collect();
                self.rules[i].tail = kept;
            }
        }
        self.rebuild_index();
    }

    fn reduce_tails(&mut self, new_lead: Option<&[u16]>) -> Result<(), GbError> {
        for i in 0..self.rules.len() {
            if !self.rules[i].alive {
                continue;
            }
            let needs = self.rules[i].tail.iter().any(|(w, _)| match new_lead {
                Some(l) => contains(&w.letters, l),
                None => self.is_reducible(w),
            });
            if needs {
                // Under a local order a tail may contain its own leading word, so the
                // rule has to stay intact while its tail is reduced.
                let tail = self.rules[i].tail.clone();
                let reduced = self.reduce(tail)?;
                self.rules[i].tail = reduced;
            }
        }
        Ok(())
    }

    fn push_pair(&mut self, p: Pair) {
        if p.word.deg > self.truncation_degree {
            self.deferred.push(p);
        } else {
            self.pending.push(Reverse(p));
        }
    }

    fn add_pairs(&mut self, h: usize) {
        let hl = self.rules[h].lead.clone();
        for g in 0..=h {
            if !self.rules[g].alive {
                continue;
            }
            let gl = self.rules[g].lead.clone();
            for (i, j, a, b) in [(h, g, &hl, &gl), (g, h, &gl, &hl)] {
                if i == j && g != h {
                    continue;
                }
                let (u, v) = (&a.letters, &b.letters);
                for k in 1..u.len().min(v.len()) {
                    if u[u.len() - k..] == v[..k] {
                        let mut letters = u.clone();
                        letters.extend_from_slice(&v[k..]);
                        let deg = self.ctx.deg_of(&letters);
                        let word = self.ctx.mk(deg, letters, a.src);
                        self.push_pair(Pair { word, i, j, k });
                    }
                }
                if g == h {
                    break;
                }
            }
        }
    }

    fn complete_pairs(&mut self) -> Result<(), GbError> {
        while let Some(Reverse(pair)) = self.pending.pop() {
            if !self.rules[pair.i].alive || !self.rules[pair.j].alive {
                continue;
            }
            let s = self.s_poly(&pair);
            self.insert(s)?;
        }
        Ok(())
    }

    /// `p·T_j − T_i·q` for the overlap `lead_i·q = p·lead_j`.
    fn s_poly(&self, pair: &Pair) -> Poly {
        let ri = &self.rules[pair.i];
        let rj = &self.rules[pair.j];
        let u = &ri.lead.letters;
        let p = &u[..u.len() - pair.k];
        let q = &rj.lead.letters[pair.k..];
        let src = pair.word.src;
        let mut acc: BTreeMap<Word, RatFunc> = BTreeMap::new();
        for (w, c) in &rj.tail {
            let nw = self.ctx.splice(p, w, &[], src);
            accumulate(&mut acc, nw, c.clone());
        }
        for (w, c) in &ri.tail {
            let nw = self.ctx.splice(&[], w, q, src);
            accumulate(&mut acc, nw, c.neg());
        }
        acc.into_iter().rev().collect()
    }

    /// Unique normal form; rejects inputs above the truncation degree of an incomplete basis.
    pub fn normal_form(&self, x: &Element) -> Result<Element, GbError> {
        let d = x.degree();
        if !self.is_complete() && d > self.truncation_degree {
            return Err(GbError::DegreeExceeded { degree: d, truncation: self.truncation_degree });
        }
        let p = self.to_poly(&x.rebase(self.alg.space())?);
        let r = reduce_with(self, p, &mut 0)?;
        Ok(self.to_element(&r))
    }

    pub fn is_normal(&self, p: &Path) -> bool {
        !self.is_reducible(&self.ctx.word(p))
    }

    /// Text dump: header lines then one `lead -> remainder` rule per line.
    pub fn serialize(&self) -> String {
        let q = self.alg.quiver();
        let mut s = String::new();
        let names: Vec<&str> = self.order.precedence().iter().map(|&i| q.arrow(i).name.as_str()).collect();
        let _ = writeln!(s, "order: deglex {}", names.join(" > "));
        let _ = writeln!(s, "truncation: {}", self.truncation_degree);
        let _ = writeln!(s, "complete: {}", self.is_complete());
        let killed: Vec<String> = self.killed_vertices().iter().map(|&v| format!("e{}", q.vertices()[v])).collect();
        if !killed.is_empty() {
            let _ = writeln!(s, "killed: {}", killed.join(", "));
        }
        let rules = self.rules();
        let _ = writeln!(s, "rules: {}", rules.len());
        for (lead, tail) in rules {
            let _ = writeln!(s, "{} -> {}", q.show_path(&lead), tail.show(&self.order));
        }
        s
    }
}

/// Full normal form of an internal polynomial, counting rewrite steps.
fn reduce_with(gb: &GroebnerBasis, p: Poly, steps: &mut u64) -> Result<Poly, GbError> {
    let mut work: BTreeMap<Word, RatFunc> = p.into_iter().collect();
    let mut out: Poly = Vec::new();
    while let Some((w, c)) = work.pop_last() {
        if gb.touches_killed(&w) {
            continue;
        }
        match gb.find_divisor(&w.letters) {
            None => out.push((w, c)),
            Some((r, pos)) => {
                *steps += 1;
                if *steps > gb.budget {
                    return Err(GbError::Budget { budget: gb.budget, rules: gb.len(), degree: gb.truncation_degree });
                }
                let rule = &gb.rules[r];
                let len = rule.lead.letters.len();
                for (tw, tc) in &rule.tail {
                    let nw = gb.ctx.splice(&w.letters[..pos], tw, &w.letters[pos + len..], w.src);
                    accumulate(&mut work, nw, c.mul(tc));
                }
            }
        }
    }
    Ok(out)
}

fn accumulate(acc: &mut BTreeMap<Word, RatFunc>, w: Word, c: RatFunc) {
    match acc.get_mut(&w) {
        Some(slot) => {
            let s = slot.add(&c);
            if s.is_zero() {
                acc.remove(&w);
            } else {
                *slot = s;
            }
        }
        None => {
            if !c.is_zero() {
                acc.insert(w, c);
            }
        }
    }
}

fn contains(hay: &[u16], needle: &[u16]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

pub use words::{dimension, dimension_with, enumerate_normal_words, local_dimension, local_dimension_with};
