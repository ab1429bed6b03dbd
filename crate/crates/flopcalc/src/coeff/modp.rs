//! Multivariate gcd computations modulo word-sized primes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::MultiPoly;

/// Primes just below 2^61.
const PRIMES: [u64; 8] = [
    2305843009213693951,
    2305843009213693921,
    2305843009213693907,
    2305843009213693723,
    2305843009213693693,
    2305843009213693669,
    2305843009213693613,
    2305843009213693561,
];

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn int_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

fn rational_mod(c: &BigRational, p: u64) -> Option<u64> {
    let d = int_mod(c.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul(int_mod(c.numer(), p), inv(d, p), p))
}

/// Splitmix-style deterministic stream of evaluation points.
struct Points(u64);

impl Points {
    fn next(&mut self, p: u64) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        (z ^ (z >> 31)) % p
    }
}

/// Coefficients (by power of `v`) of `f` with every other variable evaluated at `point`.
fn image(f: &MultiPoly, v: usize, point: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut out = vec![0u64; f.degree_in(v) as usize + 1];
    for (e, c) in f.terms() {
        let mut t = rational_mod(c, p)?;
        for (i, &k) in e.iter().enumerate() {
            if i != v && k > 0 {
                t = mul(t, pow(point[i], k as u64, p), p);
            }
        }
        let slot = &mut out[e[v] as usize];
        *slot = (*slot + t) % p;
    }
    Some(out)
}

fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

/// True only if `a` and `b` are certainly coprime.
///
/// For each variable the gcd of univariate images bounds the degree of the true gcd
/// from above, provided neither leading coefficient vanishes at the evaluation point.
pub fn certainly_coprime(a: &MultiPoly, b: &MultiPoly) -> bool {
    let n = a.nvars();
    let ua = a.vars_used();
    let ub = b.vars_used();
    let mut pts = Points(0x5EED ^ (a.terms().len() as u64) << 20 ^ b.terms().len() as u64);
    'vars: for v in (0..n).filter(|&v| ua[v] && ub[v]) {
        for &p in &PRIMES[..3] {
            for _ in 0..2 {
                let point: Vec<u64> = (0..n).map(|_| pts.next(p)).collect();
                let (Some(ia), Some(ib)) = (image(a, v, &point, p), image(b, v, &point, p)) else {
                    break;
                };
                if ia.last().map_or(true, |c| c.is_zero()) || ib.last().map_or(true, |c| c.is_zero()) {
                    continue;
                }
                if ugcd(&ia, &ib, p).len() == 1 {
                    continue 'vars;
                }
                return false;
            }
        }
        return false;
    }
    true
}

/// Sparse polynomial over Z/p keyed by exponent vector.
type PPoly = BTreeMap<Vec<u16>, u64>;

fn reduce_poly(f: &MultiPoly, p: u64) -> Option<PPoly> {
    let mut out = PPoly::new();
    for (e, c) in f.terms() {
        let r = rational_mod(c, p)?;
        if r != 0 {
            out.insert(e.clone(), r);
        }
    }
    Some(out)
}

fn highest_var(f: &PPoly) -> Option<usize> {
    f.keys().filter_map(|e| e.iter().rposition(|&k| k > 0)).max()
}


/// Normalises so the lex-leading coefficient is 1.
fn make_monic(f: PPoly, p: u64) -> PPoly {
    match f.values().next_back() {
        Some(&lc) if lc != 1 => {
            let i = inv(lc, p);
            f.into_iter().map(|(e, c)| (e, mul(c, i, p))).collect()
        }
        _ => f,
    }
}

fn scale(f: &mut PPoly, c: u64, p: u64) {
    for x in f.values_mut() {
        *x = mul(*x, c, p);
    }
}

fn eval_dense(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mul(acc, x, p) + c) % p)
}

fn udiv_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    if r.is_empty() {
        return r;
    }
    let mut q = vec![0u64; r.len() + 1 - b.len()];
    let lb = inv(*b.last().unwrap(), p);
    while r.len() >= b.len() && !r.is_empty() {
        let c = mul(*r.last().unwrap(), lb, p);
        let shift = r.len() - b.len();
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - mul(c, bi, p)) % p;
        }
        trim(&mut r);
    }
    q
}

fn ugcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = inv(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let q = mul(*a.last().unwrap(), lb, p);
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + p - mul(q, bi, p)) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let i = inv(lc, p);
        for x in a.iter_mut() {
            *x = mul(*x, i, p);
        }
    }
    a
}

/// Groups `f` by the exponents of every variable except `v`; values are dense in `v`.
fn split(f: &PPoly, v: usize) -> BTreeMap<Vec<u16>, Vec<u64>> {
    let mut out: BTreeMap<Vec<u16>, Vec<u64>> = BTreeMap::new();
    for (e, &c) in f {
        let mut key = e.clone();
        let k = key[v] as usize;
        key[v] = 0;
        let slot = out.entry(key).or_default();
        if slot.len() <= k {
            slot.resize(k + 1, 0);
        }
        slot[k] = c;
    }
    out
}

fn join(parts: &BTreeMap<Vec<u16>, Vec<u64>>, v: usize) -> PPoly {
    let mut out = PPoly::new();
    for (key, coeffs) in parts {
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut e = key.clone();
                e[v] = k as u16;
                out.insert(e, c);
            }
        }
    }
    out
}

fn content_in(parts: &BTreeMap<Vec<u16>, Vec<u64>>, p: u64) -> Vec<u64> {
    let mut g: Vec<u64> = Vec::new();
    for c in parts.values() {
        g = if g.is_empty() { ugcd(c, &[], p) } else { ugcd(&g, c, p) };
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn eval_var(f: &PPoly, v: usize, x: u64, p: u64) -> PPoly {
    let mut out = PPoly::new();
    for (e, &c) in f {
        let mut key = e.clone();
        let t = mul(c, pow(x, key[v] as u64, p), p);
        key[v] = 0;
        let slot = out.entry(key).or_insert(0);
        *slot = (*slot + t) % p;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Monic (lex) gcd over Z/p by evaluation and interpolation in the highest variable.
fn pgcd(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    if a.is_empty() {
        return make_monic(b.clone(), p);
    }
    if b.is_empty() {
        return make_monic(a.clone(), p);
    }
    let one = || PPoly::from([(vec![0u16; a.keys().next().unwrap().len()], 1u64)]);
    let v = match (highest_var(a), highest_var(b)) {
        (None, _) | (_, None) => return one(),
        (Some(x), Some(y)) => x.max(y),
    };
    let (sa, sb) = (split(a, v), split(b, v));
    let (ca, cb) = (content_in(&sa, p), content_in(&sb, p));
    let c = ugcd(&ca, &cb, p);
    let prim = |parts: &BTreeMap<Vec<u16>, Vec<u64>>, cont: &[u64]| -> BTreeMap<Vec<u16>, Vec<u64>> {
        parts.iter().map(|(k, f)| (k.clone(), udiv_exact(f, cont, p))).collect()
    };
    let (pa, pb) = (prim(&sa, &ca), prim(&sb, &cb));
    let cpoly = |h: PPoly| -> PPoly {
        let mut parts = split(&h, v);
        for f in parts.values_mut() {
            *f = umul(f, &c, p);
        }
        make_monic(join(&parts, v), p)
    };
    if pa.len() == 1 && pa.keys().all(|k| k.iter().all(|&e| e == 0)) || pb.len() == 1 && pb.keys().all(|k| k.iter().all(|&e| e == 0)) {
        return cpoly(one());
    }
    let la = pa.values().next_back().unwrap().clone();
    let lb = pb.values().next_back().unwrap().clone();
    let g = ugcd(&la, &lb, p);
    let da = pa.values().map(|f| f.len()).max().unwrap_or(1) - 1;
    let db = pb.values().map(|f| f.len()).max().unwrap_or(1) - 1;
    let needed = g.len() + da.min(db);
    let (ja, jb) = (join(&pa, v), join(&pb, v));
    let mut interp: PPoly = PPoly::new();
    let mut lead: Option<Vec<u16>> = None;
    let mut modulus: Vec<u64> = vec![1];
    let mut count = 0usize;
    let mut alpha = 0u64;
    while count < needed {
        alpha += 1;
        let galpha = eval_dense(&g, alpha, p);
        if galpha == 0 {
            continue;
        }
        let mut h = pgcd(&eval_var(&ja, v, alpha, p), &eval_var(&jb, v, alpha, p), p);
        let m = h.keys().next_back().cloned().unwrap_or_default();
        if m.iter().all(|&e| e == 0) {
            return cpoly(one());
        }
        scale(&mut h, galpha, p);
        match &lead {
            Some(cur) if &m > cur => continue,
            Some(cur) if &m == cur => {}
            _ => {
                lead = Some(m);
                interp = PPoly::new();
                modulus = vec![1];
                count = 0;
            }
        }
        // Newton step: interp += (h - interp(alpha)) * modulus / modulus(alpha).
        let at = eval_var(&interp, v, alpha, p);
        let scale_by = inv(eval_dense(&modulus, alpha, p), p);
        let mut keys: Vec<Vec<u16>> = h.keys().cloned().collect();
        keys.extend(at.keys().cloned());
        keys.sort();
        keys.dedup();
        for key in keys {
            let diff = (h.get(&key).copied().unwrap_or(0) + p - at.get(&key).copied().unwrap_or(0)) % p;
            if diff == 0 {
                continue;
            }
            let d = mul(diff, scale_by, p);
            for (k, &mc) in modulus.iter().enumerate() {
                if mc == 0 {
                    continue;
                }
                let mut e = key.clone();
                e[v] = k as u16;
                let slot = interp.entry(e).or_insert(0);
                *slot = (*slot + mul(d, mc, p)) % p;
            }
        }
        interp.retain(|_, c| *c != 0);
        modulus = umul(&modulus, &[p - alpha, 1], p);
        count += 1;
    }
    let parts = split(&interp, v);
    let cont = content_in(&parts, p);
    let prim_h = join(&prim(&parts, &cont), v);
    cpoly(prim_h)
}

fn umul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul(x, y, p)) % p;
        }
    }
    out
}

/// Rational number with residue `r` modulo `m`, if one with small height exists.
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = m.sqrt() / BigInt::from(2);
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::from(1));
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Gcd over the rationals via images modulo several primes.
///
/// Returns `None` if the primes run out before a candidate divides both inputs.
pub fn modular_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let n = a.nvars();
    let mut residues: BTreeMap<Vec<u16>, BigInt> = BTreeMap::new();
    let mut modulus = BigInt::from(1);
    let mut lead: Option<Vec<u16>> = None;
    for &p in &PRIMES {
        let (Some(ap), Some(bp)) = (reduce_poly(a, p), reduce_poly(b, p)) else { continue };
        if ap.len() != a.terms().len() || bp.len() != b.terms().len() {
            continue;
        }
        let g = pgcd(&ap, &bp, p);
        let m = g.keys().next_back().cloned().unwrap_or_else(|| vec![0; n]);
        match &lead {
            Some(cur) if &m > cur => continue,
            Some(cur) if &m == cur => {
                let pb = BigInt::from(p);
                let mut keys: Vec<Vec<u16>> = residues.keys().cloned().collect();
                keys.extend(g.keys().cloned());
                keys.sort();
                keys.dedup();
                let minv = BigInt::from(inv(int_mod(&modulus, p), p));
                let mut next = BTreeMap::new();
                for k in keys {
                    let old = residues.get(&k).cloned().unwrap_or_default();
                    let new = BigInt::from(g.get(&k).copied().unwrap_or(0));
                    let delta = ((new - &old) * &minv).mod_floor(&pb);
                    next.insert(k, old + delta * &modulus);
                }
                residues = next;
                modulus *= pb;
            }
            _ => {
                lead = Some(m);
                residues = g.into_iter().map(|(k, c)| (k, BigInt::from(c))).collect();
                modulus = BigInt::from(p);
            }
        }
        let terms: Option<Vec<(Vec<u16>, BigRational)>> = residues
            .iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(k, r)| rational_reconstruct(r, &modulus).map(|q| (k.clone(), q)))
            .collect();
        let Some(terms) = terms else { continue };
        let cand = MultiPoly::from_terms(n, terms);
        if cand.is_zero() {
            continue;
        }
        if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
            return Some(cand.monic());
        }
    }
    None
}
