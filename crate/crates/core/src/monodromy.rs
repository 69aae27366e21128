//! Dehn twist words on the disk with `k` holes, rewritten by lantern
//! substitutions as diagonals are flipped.
//!
//! A word is a signed multiset of twists. Storing one signed count per curve
//! makes cancellation of `(+c, -c)` pairs automatic.

use std::collections::BTreeMap;
use std::fmt;

use crate::contfrac::{HJTuple, Lens};
use crate::error::{Error, Result};
use crate::polygon::{canonical_flip_path, initial_triangulation, phi_inverse, FlipQuad};
use crate::tuples::ZTuple;

/// Simple closed curves in the disk with holes `1..=k` in a row.
/// Variant order is the canonical print order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    /// Encloses holes `s..=t`, `2 <= s <= t`; `Delta(s, s)` is `alpha_s`.
    Delta(usize, usize),
    /// Encloses holes `1..=i` and `t+1..=j`.
    Beta(usize, usize, usize),
    /// Encloses holes `1..=r`.
    Gamma(usize),
}

impl Curve {
    pub fn alpha(s: usize) -> Curve {
        Curve::Delta(s, s)
    }

    /// `delta_{s,t}`, with `delta_{1,t}` normalized to `gamma_t`.
    pub fn delta(s: usize, t: usize) -> Curve {
        if s == 1 {
            Curve::Gamma(t)
        } else {
            Curve::Delta(s, t)
        }
    }

    pub fn is_valid(&self, k: usize) -> bool {
        match *self {
            Curve::Gamma(r) => (1..=k).contains(&r),
            Curve::Delta(s, t) => 2 <= s && s <= t && t <= k,
            Curve::Beta(i, t, j) => 1 <= i && i < t && t < j && j <= k,
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Curve::Delta(s, t) if s == t => write!(f, "a{s}"),
            Curve::Delta(s, t) => write!(f, "d({s},{t})"),
            Curve::Beta(i, t, j) => write!(f, "b({i},{t},{j})"),
            Curve::Gamma(r) => write!(f, "g{r}"),
        }
    }
}

fn parse_curve(tok: &str) -> Option<Curve> {
    let (head, rest) = tok.split_at(1);
    let nums = |s: &str| -> Option<Vec<usize>> {
        let inner = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(s);
        inner.split(',').map(|x| x.trim().parse().ok()).collect()
    };
    let v = nums(rest)?;
    match (head, v.as_slice()) {
        ("g", [r]) => Some(Curve::Gamma(*r)),
        ("a", [s]) => Some(Curve::alpha(*s)),
        ("d", [s, t]) => Some(Curve::delta(*s, *t)),
        ("b", [i, t, j]) => Some(Curve::Beta(*i, *t, *j)),
        _ => None,
    }
}

/// A signed multiset of Dehn twists on the disk with `k` holes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistWord {
    k: usize,
    counts: BTreeMap<Curve, i64>,
}

impl TwistWord {
    pub fn new(k: usize) -> Self {
        TwistWord { k, counts: BTreeMap::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Adds `m` twists (negative for left-handed ones) and cancels.
    pub fn add(&mut self, c: Curve, m: i64) -> Result<()> {
        if !c.is_valid(self.k) {
            return Err(Error::InvalidInput(format!("curve {c} does not live in D_{}", self.k)));
        }
        let e = self.counts.entry(c).or_insert(0);
        *e += m;
        if *e == 0 {
            self.counts.remove(&c);
        }
        Ok(())
    }

    /// Signed count of twists along `c`.
    pub fn count(&self, c: Curve) -> i64 {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    /// `(curve, signed count)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Curve, i64)> + '_ {
        self.counts.iter().map(|(&c, &m)| (c, m))
    }

    pub fn positive_count(&self) -> u64 {
        self.counts.values().filter(|&&m| m > 0).map(|&m| m as u64).sum()
    }

    pub fn negative_count(&self) -> u64 {
        self.counts.values().filter(|&&m| m < 0).map(|&m| m.unsigned_abs()).sum()
    }

    /// Total number of twists.
    pub fn len(&self) -> u64 {
        self.positive_count() + self.negative_count()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.counts.values().all(|&m| m > 0)
    }

    /// Parses the text form written by `Display`.
    pub fn parse(k: usize, s: &str) -> Result<Self> {
        let mut w = TwistWord::new(k);
        let s = s.trim();
        if s == "id" {
            return Ok(w);
        }
        for tok in s.split_whitespace() {
            let (sign, body) = match tok.as_bytes().first() {
                Some(b'+') => (1, &tok[1..]),
                Some(b'-') => (-1, &tok[1..]),
                _ => (1, tok),
            };
            let c = (!body.is_empty())
                .then(|| parse_curve(body))
                .flatten()
                .ok_or_else(|| Error::InvalidInput(format!("bad twist token '{tok}'")))?;
            w.add(c, sign)?;
        }
        Ok(w)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return f.write_str("id");
        }
        let mut first = true;
        for (c, m) in self.iter() {
            let sign = if m > 0 { '+' } else { '-' };
            for _ in 0..m.unsigned_abs() {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{sign}{c}")?;
            }
        }
        Ok(())
    }
}

/// Monodromy of the planar Lefschetz fibration on the minimal resolution:
/// `alpha_2 .. alpha_k` and `gamma_i` with multiplicity `b_i - (u_k)_i`.
pub fn initial_word(p: u64, q: u64) -> Result<TwistWord> {
    initial_word_for(&Lens::new(p, q)?)
}

pub fn initial_word_for(lens: &Lens) -> Result<TwistWord> {
    let k = lens.k();
    let u = ZTuple::minimal(k);
    let mut w = TwistWord::new(k);
    for s in 2..=k {
        w.add(Curve::alpha(s), 1)?;
    }
    for (i, (b, n)) in lens.b.entries().iter().zip(u.entries()).enumerate() {
        if b > n {
            w.add(Curve::Gamma(i + 1), b - n)?;
        }
    }
    Ok(w)
}

/// One lantern rewrite and the cancelling pairs it needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanternStep {
    pub flip: usize,
    pub quad: FlipQuad,
    pub tuple: ZTuple,
    pub inserted: Vec<Curve>,
    pub word: TwistWord,
}

/// Replaces `gamma_a, delta_{a+1,t}, delta_{t+1,b}, gamma_b` by
/// `beta_{a,t,b}, gamma_t, delta_{a+1,b}`. A missing `gamma` is borrowed
/// through a cancelling pair when the new tuple exceeds `b` there.
pub fn lantern_substitute(w: &TwistWord, quad: FlipQuad, b: &HJTuple, new_tuple: &ZTuple) -> Result<TwistWord> {
    lantern_step(w, quad, b, new_tuple).map(|(w, _)| w)
}

fn lantern_step(w: &TwistWord, quad: FlipQuad, b: &HJTuple, new_tuple: &ZTuple) -> Result<(TwistWord, Vec<Curve>)> {
    let k = w.k;
    let FlipQuad { a, t, b: c } = quad;
    if !(1 <= a && a < t && t < c && c <= k) {
        return Err(Error::InvalidQuad { a, t, b: c, k });
    }
    if b.len() != k || new_tuple.k() != k {
        return Err(Error::InvalidInput(format!("word on D_{k} needs tuples of length {k}")));
    }
    let mut out = w.clone();
    let mut inserted = Vec::new();
    for end in [a, c] {
        let g = Curve::Gamma(end);
        if out.count(g) < 1 {
            if new_tuple.entries()[end - 1] > b.entries()[end - 1] {
                inserted.push(g);
            } else {
                return Err(Error::SubstitutionCurveMissing(g.to_string()));
            }
        }
        out.add(g, -1)?;
    }
    for d in [Curve::delta(a + 1, t), Curve::delta(t + 1, c)] {
        if out.count(d) < 1 {
            return Err(Error::SubstitutionCurveMissing(d.to_string()));
        }
        out.add(d, -1)?;
    }
    out.add(Curve::Beta(a, t, c), 1)?;
    out.add(Curve::Gamma(t), 1)?;
    out.add(Curve::delta(a + 1, c), 1)?;
    Ok((out, inserted))
}

/// Every intermediate word along `path` (the canonical path if `None`).
pub fn word_trace(p: u64, q: u64, n: &ZTuple, path: Option<&[usize]>) -> Result<(TwistWord, Vec<LanternStep>)> {
    let lens = Lens::new(p, q)?;
    let k = lens.k();
    if n.k() != k {
        return Err(Error::InvalidInput(format!("{n} has length {}, expected {k}", n.k())));
    }
    let start = initial_word_for(&lens)?;
    let owned;
    let path = match path {
        Some(p) => p,
        None => {
            owned = if k >= 2 { canonical_flip_path(n) } else { Vec::new() };
            &owned
        }
    };
    if k < 3 {
        if !path.is_empty() {
            return Err(Error::InvalidInput(format!("no distinguished diagonals for k = {k}")));
        }
        return Ok((start, Vec::new()));
    }
    let mut tri = initial_triangulation(k)?;
    let mut w = start;
    let mut steps = Vec::with_capacity(path.len());
    for &i in path {
        let (next, quad) = tri.flip(i)?;
        let tuple = next.phi();
        let (nw, inserted) = lantern_step(&w, quad, &lens.b, &tuple)?;
        w = nw;
        steps.push(LanternStep { flip: i, quad, tuple, inserted, word: w.clone() });
        tri = next;
    }
    if tri != phi_inverse(n)? {
        return Err(Error::InvalidInput(format!("flip path does not end at {n}")));
    }
    Ok((w, steps))
}

/// Monodromy factorization for the triangulation of `n`.
pub fn word_for(p: u64, q: u64, n: &ZTuple, path: Option<&[usize]>) -> Result<TwistWord> {
    word_trace(p, q, n, path).map(|(w, _)| w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordStats {
    pub positive: bool,
    pub length: u64,
    pub lanterns: u64,
}

pub fn word_stats(w: &TwistWord, n: &ZTuple) -> WordStats {
    WordStats { positive: w.is_positive(), length: w.len(), lanterns: n.height() }
}
