//! Hirzebruch–Jung continued fractions.
//!
//! A tuple `(b_1, ..., b_k)` denotes `b_1 - 1/(b_2 - 1/(... - 1/b_k))`. Every
//! rational `p/q > 1` has a unique expansion with all entries at least two.
//! Evaluation is exact over big rationals; expansions of `u64` fractions are
//! computed in `u128` so they never overflow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{fmt_tuple, Error, Result};

pub type Rational = BigRational;

/// An HJ expansion: a nonempty tuple whose entries are all `>= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HJTuple(Vec<i64>);

impl HJTuple {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("HJ tuple must be nonempty".into()));
        }
        if let Some(bad) = entries.iter().find(|&&e| e < 2) {
            return Err(Error::InvalidInput(format!(
                "HJ tuple entries must be >= 2, found {bad} in {}",
                fmt_tuple(&entries)
            )));
        }
        Ok(HJTuple(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    /// The value of the continued fraction. Always `> 1`.
    pub fn value(&self) -> Rational {
        cf_eval(&self.0).expect("HJ tuples are admissible")
    }

    /// Bracket notation, e.g. `[2,2,4,2,2]`.
    pub fn bracket(&self) -> String {
        let body: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        format!("[{}]", body.join(","))
    }
}

impl fmt::Display for HJTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_tuple(&self.0))
    }
}

impl TryFrom<Vec<i64>> for HJTuple {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        HJTuple::new(v)
    }
}

impl From<HJTuple> for Vec<i64> {
    fn from(t: HJTuple) -> Self {
        t.0
    }
}

/// Parameters `(s, h)` of a Wahl-type chain, whose HJ expansion is `s^2/(sh-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WahlParams {
    pub s: u64,
    pub h: u64,
}

/// HJ expansion of `num/den`.
///
/// `b_1 = ceil(num/den)` and the tail expands `den / (b_1*den - num)`.
pub fn hj_expand(num: u64, den: u64) -> Result<HJTuple> {
    if den == 0 || num <= den {
        return Err(Error::InvalidInput(format!(
            "HJ expansion needs num > den >= 1, got {num}/{den}"
        )));
    }
    if num.gcd(&den) != 1 {
        return Err(Error::InvalidInput(format!("{num} and {den} are not coprime")));
    }
    if num > i64::MAX as u64 {
        return Err(Error::InvalidInput(format!("{num} is too large")));
    }
    let (mut n, mut d) = (num as u128, den as u128);
    let mut out = Vec::new();
    loop {
        let b = n.div_ceil(d);
        out.push(b as i64);
        let rem = b * d - n;
        if rem == 0 {
            break;
        }
        (n, d) = (d, rem);
    }
    Ok(HJTuple(out))
}

/// Exact value of `[t_1, ..., t_k]`, or `None` when the tuple is not
/// admissible: some tail `u_i` with `i >= 2` is zero or negative.
///
/// Tails are `u_k = t_k` and `u_i = t_i - 1/u_{i+1}`; the value is `u_1`.
pub fn cf_eval(t: &[i64]) -> Option<Rational> {
    let (&last, rest) = t.split_last()?;
    let mut tail = Rational::from_integer(BigInt::from(last));
    for &entry in rest.iter().rev() {
        if !tail.is_positive() {
            return None;
        }
        tail = Rational::from_integer(BigInt::from(entry)) - tail.recip();
    }
    Some(tail)
}

/// The dual expansion: if `b` expands `p/(p-q)` the result expands `p/q`.
pub fn riemenschneider_dual(b: &HJTuple) -> Result<HJTuple> {
    let (p, den) = value_parts(b)?;
    hj_expand(p, p - den)
}

/// Numerator and denominator of an HJ tuple's value as machine integers.
fn value_parts(b: &HJTuple) -> Result<(u64, u64)> {
    let v = b.value();
    let p = v.numer().to_u64();
    let d = v.denom().to_u64();
    match (p, d) {
        (Some(p), Some(d)) => Ok((p, d)),
        _ => Err(Error::InvalidInput(format!("value of {b} does not fit in 64 bits"))),
    }
}

/// Returns `(s, h)` when `b` expands `s^2/(sh-1)` with `1 <= h < s` coprime.
pub fn wahl_params(b: &HJTuple) -> Option<WahlParams> {
    let v = b.value();
    let p = v.numer();
    let q = v.denom();
    let s = p.sqrt();
    if &(&s * &s) != p {
        return None;
    }
    let (h, r) = (q + BigInt::one()).div_rem(&s);
    if !r.is_zero() || h < BigInt::one() || h >= s || !s.gcd(&h).is_one() {
        return None;
    }
    Some(WahlParams { s: s.to_u64()?, h: h.to_u64()? })
}

/// Membership in the Wahl family generated from `(4)`.
///
/// Runs the generating moves backwards: strip a leading 2 and decrement the
/// last entry, or strip a trailing 2 and decrement the first entry. A tuple
/// cannot start with 2 and have first entry `>= 3`, so at most one reverse
/// move ever applies.
pub fn is_wahl_family(weights: &[i64]) -> bool {
    let mut t = weights.to_vec();
    loop {
        if t == [4] {
            return true;
        }
        if t.len() < 2 {
            return false;
        }
        let last = t.len() - 1;
        if t[0] == 2 && t[last] >= 3 {
            t[last] -= 1;
            t.remove(0);
        } else if t[last] == 2 && t[0] >= 3 {
            t[0] -= 1;
            t.pop();
        } else {
            return false;
        }
    }
}

/// A lens space `L(p, q)` with both HJ expansions precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lens {
    pub p: u64,
    pub q: u64,
    /// Expansion of `p/(p-q)`; its length is `k`.
    pub b: HJTuple,
    /// Expansion of `p/q`; its length is `r`.
    pub a: HJTuple,
}

impl Lens {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 || p <= q {
            return Err(Error::InvalidInput(format!("need p > q >= 1, got p={p}, q={q}")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidInput(format!("{p} and {q} are not coprime")));
        }
        Ok(Lens { p, q, b: hj_expand(p, p - q)?, a: hj_expand(p, q)? })
    }

    /// The lens space whose `p/(p-q)` expansion is `b`.
    pub fn from_b(b: &HJTuple) -> Result<Self> {
        let (p, den) = value_parts(b)?;
        Lens::new(p, p - den)
    }

    pub fn k(&self) -> usize {
        self.b.len()
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hj(v: &[i64]) -> HJTuple {
        HJTuple::new(v.to_vec()).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Literal point-diagram duality: row i holds b_i - 1 dots, starting in
    /// the column of the previous row's last dot; column j then holds a_j - 1.
    fn point_diagram_dual(b: &[i64]) -> Vec<i64> {
        let mut col_counts: Vec<i64> = Vec::new();
        let mut col = 0usize;
        for (i, &bi) in b.iter().enumerate() {
            let start = if i == 0 { 0 } else { col };
            for c in start..start + (bi - 1) as usize {
                if col_counts.len() <= c {
                    col_counts.resize(c + 1, 0);
                }
                col_counts[c] += 1;
                col = c;
            }
        }
        col_counts.into_iter().map(|c| c + 1).collect()
    }

    #[test]
    fn expansions() {
        assert_eq!(hj_expand(24, 17).unwrap(), hj(&[2, 2, 4, 2, 2]));
        assert_eq!(hj_expand(24, 7).unwrap(), hj(&[4, 2, 4]));
        assert_eq!(hj_expand(2, 1).unwrap(), hj(&[2]));
        assert_eq!(hj_expand(81, 34).unwrap(), hj(&[3, 2, 3, 3, 3]));
    }

    #[test]
    fn expansion_errors() {
        assert!(matches!(hj_expand(6, 4), Err(Error::InvalidInput(_))));
        assert!(matches!(hj_expand(3, 3), Err(Error::InvalidInput(_))));
        assert!(matches!(hj_expand(2, 5), Err(Error::InvalidInput(_))));
        assert!(matches!(hj_expand(5, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn evaluation() {
        assert_eq!(cf_eval(&[2, 2, 4, 2, 2]), Some(rat(24, 17)));
        assert_eq!(cf_eval(&[1, 1]), Some(rat(0, 1)));
        assert_eq!(cf_eval(&[2, 1, 4, 2, 1, 4, 1]), Some(rat(0, 1)));
        // zero tail
        assert_eq!(cf_eval(&[3, 1, 1]), None);
        assert_eq!(cf_eval(&[]), None);
        // negative tail
        assert_eq!(cf_eval(&[1, -2]), None);
    }

    #[test]
    fn duals() {
        assert_eq!(
            riemenschneider_dual(&hj(&[2, 2, 2, 4, 2, 2, 3, 2, 5])).unwrap(),
            hj(&[5, 2, 5, 4, 2, 2, 2])
        );
        assert_eq!(riemenschneider_dual(&hj(&[3, 2, 3, 3, 3])).unwrap(), hj(&[2, 4, 3, 3, 2]));
        assert_eq!(riemenschneider_dual(&hj(&[4])).unwrap(), hj(&[2, 2, 2]));
        assert_eq!(point_diagram_dual(&[2, 2, 2, 4, 2, 2, 3, 2, 5]), vec![5, 2, 5, 4, 2, 2, 2]);
        assert_eq!(point_diagram_dual(&[4]), vec![2, 2, 2]);
    }

    #[test]
    fn hj_tuple_rejects_small_entries() {
        assert!(HJTuple::new(vec![2, 1]).is_err());
        assert!(HJTuple::new(vec![]).is_err());
        assert!(serde_json::from_str::<HJTuple>("[3,1]").is_err());
    }

    #[test]
    fn wahl() {
        assert_eq!(wahl_params(&hj(&[4])), Some(WahlParams { s: 2, h: 1 }));
        assert_eq!(wahl_params(&hj(&[2, 5])), Some(WahlParams { s: 3, h: 2 }));
        assert_eq!(wahl_params(&hj(&[3, 3])), None);
        assert!(is_wahl_family(&[6, 2, 2]));
        assert!(!is_wahl_family(&[2, 4, 4, 2]));
        assert!(is_wahl_family(&[4]));
        assert!(!is_wahl_family(&[2]));
    }

    #[test]
    fn lens_parameters() {
        let l = Lens::new(24, 7).unwrap();
        assert_eq!((l.k(), l.r()), (5, 3));
        assert_eq!(Lens::from_b(&hj(&[3, 2, 3, 3, 3])).unwrap(), Lens::new(81, 47).unwrap());
        assert!(Lens::new(10, 4).is_err());
    }

    #[test]
    fn sweep_round_trip_and_duality() {
        for p in 2u64..=500 {
            for q in 1..p {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let b = hj_expand(p, p - q).unwrap();
                assert_eq!(b.value(), rat(p as i64, (p - q) as i64));
                let a = hj_expand(p, q).unwrap();
                assert_eq!(a.value(), rat(p as i64, q as i64));
                assert_eq!(riemenschneider_dual(&b).unwrap(), a, "p={p} q={q}");
                assert_eq!(point_diagram_dual(b.entries()), a.entries(), "p={p} q={q}");
            }
        }
    }

    fn all_tuples(max_len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for t in &layer {
                for e in lo..=hi {
                    let mut u = t.clone();
                    u.push(e);
                    next.push(u);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn duality_is_an_involution() {
        for t in all_tuples(8, 2, 6) {
            let b = hj(&t);
            let d = riemenschneider_dual(&b).unwrap();
            assert_eq!(riemenschneider_dual(&d).unwrap(), b);
        }
    }

    #[test]
    fn wahl_family_agrees_with_parameters() {
        for t in all_tuples(6, 2, 9) {
            let b = hj(&t);
            assert_eq!(is_wahl_family(&t), wahl_params(&b).is_some(), "{b}");
        }
    }
}
