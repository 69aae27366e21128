//! Zero-representing admissible tuples and their blowups.
//!
//! `Z_k` is the set of admissible k-tuples of positive integers whose HJ
//! continued fraction is zero (plus `(0)` for `k = 1`). Elements are in
//! bijection with triangulations of a convex `(k+1)`-gon, and the subset
//! bounded entrywise by an HJ expansion `b` parameterizes minimal fillings.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::contfrac::{cf_eval, HJTuple, Lens};
use crate::error::{fmt_tuple, Error, Result};
use crate::polygon;

/// Default bound on `k` for anything that enumerates `Z_k`.
pub const DEFAULT_MAX_K: usize = 12;

/// Enumeration limit: `RBD_MAX_K` if set to a positive integer, else
/// [`DEFAULT_MAX_K`]. Read once per process.
pub fn max_k() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("RBD_MAX_K")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_K)
    })
}

pub(crate) fn check_limit(k: usize) -> Result<()> {
    let limit = max_k();
    if k > limit {
        Err(Error::LimitExceeded { k, limit })
    } else {
        Ok(())
    }
}

/// An element of `Z_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ZTuple(Vec<i64>);

impl ZTuple {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if is_in_zk(&entries) {
            Ok(ZTuple(entries))
        } else {
            Err(Error::NotInZk(fmt_tuple(&entries)))
        }
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<i64>) -> Self {
        debug_assert!(is_in_zk(&entries), "{entries:?}");
        ZTuple(entries)
    }

    /// `u_k = (1, 2, ..., 2, 1)`, or `(0)` for `k = 1`.
    pub fn minimal(k: usize) -> Self {
        assert!(k >= 1, "k must be positive");
        if k == 1 {
            return ZTuple(vec![0]);
        }
        let mut v = vec![2; k];
        v[0] = 1;
        v[k - 1] = 1;
        ZTuple(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    /// `|n| - 2(k-1)`.
    pub fn height(&self) -> u64 {
        let k = self.0.len() as i64;
        let sum: i64 = self.0.iter().sum();
        (sum - 2 * (k - 1)).max(0) as u64
    }

    /// Number of interior entries equal to 1.
    pub fn depth(&self) -> usize {
        depth(&self.0)
    }

    pub fn is_minimal(&self) -> bool {
        *self == ZTuple::minimal(self.k())
    }

    /// Entrywise `n_i <= b_i`.
    pub fn fits_under(&self, b: &HJTuple) -> bool {
        self.0.len() == b.len() && self.0.iter().zip(b.entries()).all(|(n, b)| n <= b)
    }
}

impl fmt::Display for ZTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_tuple(&self.0))
    }
}

impl FromStr for ZTuple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ZTuple::new(parse_tuple(s)?)
    }
}

impl TryFrom<Vec<i64>> for ZTuple {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        ZTuple::new(v)
    }
}

impl From<ZTuple> for Vec<i64> {
    fn from(t: ZTuple) -> Self {
        t.0
    }
}

/// Parses `2,1,4,1,2`, optionally wrapped in `()` or `[]`.
pub fn parse_tuple(s: &str) -> Result<Vec<i64>> {
    let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if trimmed.is_empty() {
        return Err(Error::InvalidInput(format!("empty tuple '{s}'")));
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad tuple entry '{part}' in '{s}'")))
        })
        .collect()
}

pub fn is_in_zk(t: &[i64]) -> bool {
    match t {
        [] => false,
        [x] => *x == 0,
        _ => t.iter().all(|&e| e >= 1) && cf_eval(t).is_some_and(|v| v.is_zero()),
    }
}

/// 0-based positions of the interior entries equal to 1.
pub fn interior_ones(t: &[i64]) -> Vec<usize> {
    if t.len() < 3 {
        return Vec::new();
    }
    (1..t.len() - 1).filter(|&i| t[i] == 1).collect()
}

/// Number of interior 1's; zero for `k <= 2`.
pub fn depth(t: &[i64]) -> usize {
    interior_ones(t).len()
}

/// Where a blowup inserts its new 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowSite {
    /// `(0) -> (1,1)`.
    Initial,
    /// Between entries `j` and `j+1` (1-based, `1 <= j <= s-1`).
    Interior(usize),
    /// After the last entry.
    Exterior,
}

impl fmt::Display for BlowSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowSite::Initial => f.write_str("initial"),
            BlowSite::Interior(j) => write!(f, "interior({j})"),
            BlowSite::Exterior => f.write_str("exterior"),
        }
    }
}

pub fn blowup(t: &[i64], site: BlowSite) -> Result<Vec<i64>> {
    let invalid = || Error::InvalidSite { site: site.to_string(), len: t.len() };
    if t == [0] {
        return match site {
            BlowSite::Initial => Ok(vec![1, 1]),
            _ => Err(invalid()),
        };
    }
    if t.is_empty() {
        return Err(invalid());
    }
    let s = t.len();
    match site {
        BlowSite::Initial => Err(invalid()),
        BlowSite::Interior(j) if (1..s).contains(&j) => {
            let mut out = Vec::with_capacity(s + 1);
            out.extend_from_slice(&t[..j]);
            out[j - 1] += 1;
            out.push(1);
            out.extend_from_slice(&t[j..]);
            out[j + 1] += 1;
            Ok(out)
        }
        BlowSite::Interior(_) => Err(invalid()),
        BlowSite::Exterior => {
            let mut out = t.to_vec();
            out[s - 1] += 1;
            out.push(1);
            Ok(out)
        }
    }
}

/// Inverse of a blowup at the 1-based position `i`, which must hold a 1.
///
/// An interior position decrements both neighbours; an end position drops
/// the entry and decrements its single neighbour (the reverse of an exterior
/// blowup or of its mirror image); `(1,1)` blows down to `(0)`. Neighbours
/// must stay positive. For elements of `Z_k` every entry equal to 1 is a
/// vertex lying in a single triangle, so these are exactly the ear peels.
pub fn blowdown(t: &[i64], i: usize) -> Result<Vec<i64>> {
    let k = t.len();
    let not_site = || Error::NotBlowdownSite { tuple: fmt_tuple(t), index: i };
    if i == 0 || i > k || t[i - 1] != 1 {
        return Err(not_site());
    }
    if k == 2 {
        return if t == [1, 1] { Ok(vec![0]) } else { Err(not_site()) };
    }
    if k < 2 {
        return Err(not_site());
    }
    let idx = i - 1;
    let neighbours: Vec<usize> = [idx.checked_sub(1), Some(idx + 1).filter(|&j| j < k)]
        .into_iter()
        .flatten()
        .collect();
    if neighbours.iter().any(|&j| t[j] < 2) {
        return Err(not_site());
    }
    let mut out = t.to_vec();
    for j in neighbours {
        out[j] -= 1;
    }
    out.remove(idx);
    Ok(out)
}

/// All of `Z_k` in lexicographic order, via triangulations of the `(k+1)`-gon.
pub fn enumerate_zk(k: usize) -> Result<Vec<ZTuple>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    check_limit(k)?;
    if k == 1 {
        return Ok(vec![ZTuple::minimal(1)]);
    }
    let mut out: Vec<ZTuple> =
        polygon::enumerate_triangulations(k).iter().map(polygon::Triangulation::phi).collect();
    out.sort();
    Ok(out)
}

/// `Z_k(p/(p-q))`: elements of `Z_k` bounded entrywise by `b`.
pub fn fillings(b: &HJTuple) -> Result<Vec<ZTuple>> {
    Ok(enumerate_zk(b.len())?.into_iter().filter(|n| n.fits_under(b)).collect())
}

pub(crate) fn require_filling(n: &ZTuple, lens: &Lens) -> Result<()> {
    if n.fits_under(&lens.b) {
        Ok(())
    } else {
        Err(Error::NotAFilling { tuple: n.to_string(), hj: lens.b.to_string() })
    }
}

/// Second Betti number of the filling `n` of `L(p,q)`:
/// `r + 2(k-1) - |n|`, which equals `r - ht(n)`.
pub fn betti(n: &ZTuple, p: u64, q: u64) -> Result<u64> {
    betti_for(n, &Lens::new(p, q)?)
}

pub fn betti_for(n: &ZTuple, lens: &Lens) -> Result<u64> {
    require_filling(n, lens)?;
    let k = n.k() as i64;
    let sum: i64 = n.entries().iter().sum();
    let mu = lens.r() as i64 + 2 * (k - 1) - sum;
    u64::try_from(mu).map_err(|_| Error::Internal(format!("negative Betti number for {n}")))
}
