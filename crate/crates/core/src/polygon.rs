//! Triangulations of the convex `(k+1)`-gon with a distinguished vertex.
//!
//! Vertices are labelled `0..=k` counterclockwise, with `0` the distinguished
//! vertex `V*`. The diagonal `d_i` joins `V*` to vertex `i+1`. Adjacency is a
//! bitmask per vertex, so `k` is capped at 63.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tuples::{interior_ones, ZTuple};

pub const MAX_POLYGON_K: usize = 63;

/// A triangulation, stored as its sorted list of diagonals `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangulation {
    k: usize,
    diagonals: Vec<(usize, usize)>,
}

/// The quadrilateral `(a, t, b)` with `a < t < b` around a flipped diagonal
/// `{V*, V_t}`; the flip replaces it by `{V_a, V_b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipQuad {
    pub a: usize,
    pub t: usize,
    pub b: usize,
}

impl fmt::Display for FlipQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(V*, V{}, V{}, V{})", self.a, self.t, self.b)
    }
}

fn norm(x: usize, y: usize) -> (usize, usize) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl Triangulation {
    /// Validates a diagonal set: `k - 2` pairwise non-crossing proper diagonals.
    pub fn from_diagonals(k: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if !(2..=MAX_POLYGON_K).contains(&k) {
            return Err(Error::InvalidInput(format!("polygon parameter k = {k} out of range 2..={MAX_POLYGON_K}")));
        }
        let set: BTreeSet<(usize, usize)> = diagonals.into_iter().map(|(x, y)| norm(x, y)).collect();
        for &(x, y) in &set {
            if y > k || y < x + 2 || (x == 0 && y == k) {
                return Err(Error::InvalidInput(format!("({x},{y}) is not a diagonal of the {}-gon", k + 1)));
            }
        }
        if set.len() != k - 2 {
            return Err(Error::InvalidInput(format!("expected {} diagonals, got {}", k - 2, set.len())));
        }
        let diagonals: Vec<_> = set.into_iter().collect();
        for (i, &d) in diagonals.iter().enumerate() {
            if diagonals[i + 1..].iter().any(|&e| crosses(d, e)) {
                return Err(Error::InvalidInput("diagonals cross".into()));
            }
        }
        Ok(Triangulation { k, diagonals })
    }

    fn from_sorted_unchecked(k: usize, mut diagonals: Vec<(usize, usize)>) -> Self {
        diagonals.sort_unstable();
        Triangulation { k, diagonals }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        let (x, y) = norm(x, y);
        y == x + 1 || (x == 0 && y == self.k) || self.diagonals.binary_search(&(x, y)).is_ok()
    }

    /// Whether `d_i` (joining `V*` and `V_{i+1}`) is present.
    pub fn has_distinguished(&self, i: usize) -> bool {
        i >= 1 && i + 2 <= self.k && self.diagonals.binary_search(&(0, i + 1)).is_ok()
    }

    /// Indices `i` of the distinguished diagonals present.
    pub fn distinguished(&self) -> Vec<usize> {
        self.diagonals.iter().filter(|d| d.0 == 0).map(|d| d.1 - 1).collect()
    }

    fn adjacency(&self) -> Vec<u64> {
        let k = self.k;
        let mut adj = vec![0u64; k + 1];
        let mut link = |x: usize, y: usize| {
            adj[x] |= 1 << y;
            adj[y] |= 1 << x;
        };
        for v in 0..k {
            link(v, v + 1);
        }
        link(k, 0);
        for &(x, y) in &self.diagonals {
            link(x, y);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency()[v].count_ones() as usize
    }

    /// All triangles `[x, y, z]` with `x < y < z`, sorted.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let adj = self.adjacency();
        let mut out = Vec::with_capacity(self.k - 1);
        for x in 0..=self.k {
            for y in x + 1..=self.k {
                if adj[x] >> y & 1 == 0 {
                    continue;
                }
                let common = adj[x] & adj[y] & !((1u64 << (y + 1)) - 1);
                let mut bits = common;
                while bits != 0 {
                    let z = bits.trailing_zeros() as usize;
                    out.push([x, y, z]);
                    bits &= bits - 1;
                }
            }
        }
        out
    }

    pub fn has_triangle(&self, x: usize, y: usize, z: usize) -> bool {
        self.has_edge(x, y) && self.has_edge(y, z) && self.has_edge(x, z)
    }

    /// `n_i` = number of triangles at vertex `i` for `1 <= i <= k`.
    pub fn phi(&self) -> ZTuple {
        let adj = self.adjacency();
        let n = (1..=self.k).map(|v| adj[v].count_ones() as i64 - 1).collect();
        ZTuple::from_vec_unchecked(n)
    }

    /// Flips `d_i`, returning the new triangulation and the quadrilateral.
    pub fn flip(&self, i: usize) -> Result<(Triangulation, FlipQuad)> {
        if !self.has_distinguished(i) {
            return Err(Error::MissingDiagonal(i));
        }
        let t = i + 1;
        let adj = self.adjacency();
        let both = adj[0] & adj[t];
        let a = (1..t).rev().find(|&x| both >> x & 1 == 1);
        let b = (t + 1..=self.k).find(|&x| both >> x & 1 == 1);
        let (Some(a), Some(b)) = (a, b) else {
            return Err(Error::Internal(format!("no quadrilateral around d_{i}")));
        };
        let mut diagonals: Vec<_> = self.diagonals.iter().copied().filter(|&d| d != (0, t)).collect();
        diagonals.push((a, b));
        Ok((Triangulation::from_sorted_unchecked(self.k, diagonals), FlipQuad { a, t, b }))
    }

    /// Applies flips in order, failing on the first missing diagonal.
    pub fn flip_all(&self, seq: &[usize]) -> Result<(Triangulation, Vec<FlipQuad>)> {
        let mut cur = self.clone();
        let mut quads = Vec::with_capacity(seq.len());
        for &i in seq {
            let (next, quad) = cur.flip(i)?;
            quads.push(quad);
            cur = next;
        }
        Ok((cur, quads))
    }

    /// Whether every flip in `seq` is legal and each consecutive pair
    /// `d_i, d_j` bounds a triangle with `V*` just before `d_i` is flipped.
    pub fn is_contiguous(&self, seq: &[usize]) -> bool {
        let mut cur = self.clone();
        for (j, &i) in seq.iter().enumerate() {
            if let Some(&next) = seq.get(j + 1) {
                if !(cur.has_distinguished(i)
                    && cur.has_distinguished(next)
                    && cur.has_edge(i + 1, next + 1))
                {
                    return false;
                }
            }
            match cur.flip(i) {
                Ok((t, _)) => cur = t,
                Err(_) => return false,
            }
        }
        true
    }

    /// Removes the ear at vertex `v` (`1 <= v <= k`), relabelling vertices
    /// above `v` down by one. The result lives in the `k`-gon.
    pub fn peel_ear(&self, v: usize) -> Result<Triangulation> {
        let k = self.k;
        if v == 0 || v > k || k < 3 || self.degree(v) != 2 {
            return Err(Error::NotAnEar(v));
        }
        let across = norm(v - 1, if v == k { 0 } else { v + 1 });
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let diagonals = self
            .diagonals
            .iter()
            .filter(|&&d| d != across)
            .map(|&(x, y)| (shift(x), shift(y)))
            .collect();
        Ok(Triangulation::from_sorted_unchecked(k - 1, diagonals))
    }
}

pub fn initial_triangulation(k: usize) -> Result<Triangulation> {
    Triangulation::from_diagonals(k, (2..k).map(|v| (0, v)))
}

/// Inverse of [`Triangulation::phi`] by repeatedly cutting off the
/// lowest-labelled vertex whose remaining count is 1.
pub fn phi_inverse(n: &ZTuple) -> Result<Triangulation> {
    let k = n.k();
    let not_in = || Error::NotInZk(n.to_string());
    if !(2..=MAX_POLYGON_K).contains(&k) {
        return Err(not_in());
    }
    let mut count: Vec<i64> = std::iter::once(0).chain(n.entries().iter().copied()).collect();
    let mut ring: Vec<usize> = (0..=k).collect();
    let mut diagonals = Vec::with_capacity(k - 2);
    while ring.len() > 3 {
        let pos = (1..ring.len()).find(|&p| count[ring[p]] == 1).ok_or_else(not_in)?;
        let prev = ring[pos - 1];
        let next = ring[(pos + 1) % ring.len()];
        diagonals.push(norm(prev, next));
        for w in [prev, next] {
            if w != 0 {
                count[w] -= 1;
            }
        }
        ring.remove(pos);
    }
    let t = Triangulation::from_diagonals(k, diagonals).map_err(|_| not_in())?;
    if t.phi() != *n {
        return Err(not_in());
    }
    Ok(t)
}

/// Every triangulation of the `(k+1)`-gon, `k >= 2`.
pub fn enumerate_triangulations(k: usize) -> Vec<Triangulation> {
    assert!((2..=MAX_POLYGON_K).contains(&k));
    fn sub(i: usize, j: usize) -> Vec<Vec<(usize, usize)>> {
        if j - i < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for m in i + 1..j {
            let left = sub(i, m);
            let right = sub(m, j);
            for l in &left {
                for r in &right {
                    let mut d = Vec::with_capacity(l.len() + r.len() + 2);
                    d.extend_from_slice(l);
                    d.extend_from_slice(r);
                    if m - i >= 2 {
                        d.push((i, m));
                    }
                    if j - m >= 2 {
                        d.push((m, j));
                    }
                    out.push(d);
                }
            }
        }
        out
    }
    sub(0, k).into_iter().map(|d| Triangulation::from_sorted_unchecked(k, d)).collect()
}

/// Tracks a tuple under repeated interior blowdowns together with the
/// original labels of its entries. The j-th blowdown is the j-th flip of a
/// path from `u_k`, read in the original polygon.
#[derive(Debug, Clone)]
pub struct EarPeeler {
    tuple: Vec<i64>,
    labels: Vec<usize>,
}

impl EarPeeler {
    pub fn new(n: &ZTuple) -> Self {
        EarPeeler { tuple: n.entries().to_vec(), labels: (1..=n.k()).collect() }
    }

    pub fn tuple(&self) -> &[i64] {
        &self.tuple
    }

    /// 0-based positions of the current interior 1's.
    pub fn candidates(&self) -> Vec<usize> {
        interior_ones(&self.tuple)
    }

    /// Blows down the interior 1 at 0-based position `pos`; returns the
    /// index of the distinguished diagonal this undoes.
    pub fn peel(&mut self, pos: usize) -> Result<usize> {
        if !self.candidates().contains(&pos) {
            return Err(Error::NotBlowdownSite { tuple: crate::error::fmt_tuple(&self.tuple), index: pos + 1 });
        }
        self.tuple = crate::tuples::blowdown(&self.tuple, pos + 1)?;
        let label = self.labels.remove(pos);
        Ok(label - 1)
    }
}

/// The flip sequence from `u_k` to `n` obtained by always blowing down the
/// leftmost interior 1; it is the lexicographically least such sequence.
pub fn canonical_flip_path(n: &ZTuple) -> Vec<usize> {
    let mut peeler = EarPeeler::new(n);
    let mut path = Vec::new();
    while let Some(&pos) = peeler.candidates().first() {
        path.push(peeler.peel(pos).expect("candidate is peelable"));
    }
    path
}
