//! Integral symmetric forms: linear plumbings, evenness, classes of a
//! given square and chains of spheres with prescribed squares.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::contfrac::HJTuple;
use crate::error::{Error, Result};

/// A symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntForm {
    m: Vec<Vec<i64>>,
}

impl IntForm {
    pub fn new(m: Vec<Vec<i64>>) -> Result<Self> {
        let n = m.len();
        if n == 0 || m.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("form must be a nonempty square matrix".into()));
        }
        let asym = (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).find(|&(i, j)| m[i][j] != m[j][i]);
        if let Some((i, j)) = asym {
            return Err(Error::InvalidInput(format!("form is not symmetric at ({i},{j})")));
        }
        Ok(IntForm { m })
    }

    /// Rows of whitespace-separated integers; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|x| x.parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad matrix entry '{x}'"))))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IntForm::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.m
    }

    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in self.m.iter().enumerate() {
            if u[i] == 0 {
                continue;
            }
            s += u[i] * row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>();
        }
        s
    }

    pub fn square(&self, v: &[i64]) -> i64 {
        self.pair(v, v)
    }

    /// `LDL^T` of `-F`; `None` unless `-F` is positive definite.
    fn ldl_of_negation(&self) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
        let n = self.dim();
        let q = |i: usize, j: usize| BigRational::from_integer(BigInt::from(-self.m[i][j]));
        let mut d: Vec<BigRational> = Vec::with_capacity(n);
        let mut l = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            let mut di = q(i, i);
            for k in 0..i {
                di -= &l[i][k] * &l[i][k] * &d[k];
            }
            if !di.is_positive() {
                return None;
            }
            for j in i + 1..n {
                let mut v = q(j, i);
                for k in 0..i {
                    v -= &l[j][k] * &l[i][k] * &d[k];
                }
                l[j][i] = v / &di;
            }
            d.push(di);
        }
        Some((d, l))
    }

    pub fn is_negative_definite(&self) -> bool {
        self.ldl_of_negation().is_some()
    }

    /// Gram matrix of a list of classes.
    pub fn gram(&self, classes: &[LatticeClass]) -> Vec<Vec<i64>> {
        classes.iter().map(|u| classes.iter().map(|v| self.pair(&u.coeffs, &v.coeffs)).collect()).collect()
    }
}

impl fmt::Display for IntForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
            writeln!(f, "{}", cells.join(""))?;
        }
        Ok(())
    }
}

/// Coefficients of a class in the given basis `S_1, ..., S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeClass {
    pub coeffs: Vec<i64>,
}

impl LatticeClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LatticeClass { coeffs }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut c = vec![0; dim];
        c[i] = 1;
        LatticeClass { coeffs: c }
    }

    pub fn neg(&self) -> Self {
        LatticeClass { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    /// First nonzero coefficient positive.
    pub fn is_canonical(&self) -> bool {
        self.coeffs.iter().find(|&&x| x != 0).is_none_or(|&x| x > 0)
    }

    fn canonical(self) -> Self {
        if self.is_canonical() {
            self
        } else {
            self.neg()
        }
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{mag}[S{}]", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Linear plumbing: `-w_i` on the diagonal, 1 between neighbours.
pub fn plumbing_form(weights: &HJTuple) -> IntForm {
    let w = weights.entries();
    let n = w.len();
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        m[i][i] = -w[i];
        if i + 1 < n {
            m[i][i + 1] = 1;
            m[i + 1][i] = 1;
        }
    }
    IntForm { m }
}

pub fn is_even(f: &IntForm) -> bool {
    (0..f.dim()).all(|i| f.m[i][i] % 2 == 0)
}

/// `<c_1, S_i> = 2 - w_i` for the spheres of a linear plumbing.
pub fn adjunction_c1(weights: &HJTuple) -> Vec<i64> {
    weights.entries().iter().map(|w| 2 - w).collect()
}

/// Every class of square `c`, one per `±` pair, sorted.
///
/// Fincke-Pohst enumeration on `-F = L D L^T` with exact rationals: the
/// coordinates are fixed from the last one down, each constrained to an
/// interval around the centre given by the ones already chosen.
pub fn vectors_of_square(f: &IntForm, c: i64) -> Result<Vec<LatticeClass>> {
    let (d, l) = f.ldl_of_negation().ok_or(Error::NotNegativeDefinite)?;
    if c >= 0 {
        return Err(Error::InvalidInput(format!("target square {c} must be negative")));
    }
    let n = f.dim();
    let target = BigRational::from_integer(BigInt::from(-c));
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    search(&d, &l, n, &target, &mut x, &mut out);
    let mut classes: Vec<LatticeClass> =
        out.into_iter().map(|v| LatticeClass::new(v).canonical()).collect();
    classes.sort();
    classes.dedup();
    Ok(classes)
}

fn search(
    d: &[BigRational],
    l: &[Vec<BigRational>],
    level: usize,
    budget: &BigRational,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if level == 0 {
        if budget.is_zero() {
            out.push(x.clone());
        }
        return;
    }
    let i = level - 1;
    let mut center = BigRational::zero();
    for j in i + 1..x.len() {
        center -= &l[j][i] * BigRational::from_integer(BigInt::from(x[j]));
    }
    let cost = |xi: i64| {
        let t = BigRational::from_integer(BigInt::from(xi)) - &center;
        &d[i] * &t * &t
    };
    let start = center.round().to_integer();
    let start: i64 = i64::try_from(start).expect("coordinate fits in i64");
    // walk outward on each side until the cost exceeds the budget
    for dir in [1i64, -1] {
        let mut xi = if dir == 1 { start } else { start - 1 };
        loop {
            let used = cost(xi);
            if used > *budget {
                break;
            }
            x[i] = xi;
            search(d, l, i, &(budget - used), x, out);
            xi += dir;
        }
    }
    x[i] = 0;
}

/// Chains `v_1, ..., v_m` with `v_i^2 = squares[i]`, `v_i . v_{i+1} = 1`
/// and `v_i . v_j = 0` otherwise; with `c1`, also `<c1, v_i> = 2 + v_i^2`.
/// The first class is taken with its first nonzero coefficient positive;
/// the signs of the others are then forced by the pairings.
pub fn chain_embeddings(f: &IntForm, squares: &[i64], c1: Option<&[i64]>) -> Result<Vec<Vec<LatticeClass>>> {
    if !f.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    if let Some(c) = c1 {
        if c.len() != f.dim() {
            return Err(Error::InvalidInput(format!("c1 has length {}, expected {}", c.len(), f.dim())));
        }
    }
    if squares.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let adjunction_ok = |v: &LatticeClass, s: i64| match c1 {
        Some(c) => c.iter().zip(&v.coeffs).map(|(a, b)| a * b).sum::<i64>() == 2 + s,
        None => true,
    };
    let mut cands: Vec<Vec<LatticeClass>> = Vec::with_capacity(squares.len());
    for &s in squares {
        let mut both = Vec::new();
        for v in vectors_of_square(f, s)? {
            let w = v.neg();
            both.push(v);
            both.push(w);
        }
        both.retain(|v| adjunction_ok(v, s));
        both.sort();
        cands.push(both);
    }
    cands[0].retain(LatticeClass::is_canonical);
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(squares.len());
    extend_chain(f, &cands, &mut chain, &mut out);
    Ok(out)
}

fn extend_chain(
    f: &IntForm,
    cands: &[Vec<LatticeClass>],
    chain: &mut Vec<LatticeClass>,
    out: &mut Vec<Vec<LatticeClass>>,
) {
    let pos = chain.len();
    if pos == cands.len() {
        out.push(chain.clone());
        return;
    }
    for v in &cands[pos] {
        let fits = chain.iter().enumerate().all(|(j, u)| {
            let want = if j + 1 == pos { 1 } else { 0 };
            f.pair(&u.coeffs, &v.coeffs) == want
        });
        if fits {
            chain.push(v.clone());
            extend_chain(f, cands, chain, out);
            chain.pop();
        }
    }
}

/// Bundled intersection forms, by name.
pub mod fixtures {
    use super::IntForm;

    pub const NAMES: [&str; 5] = ["l140_41_a", "l140_41_b", "l140_41_c", "l81_47_a", "l81_47_b"];

    fn text(name: &str) -> Option<&'static str> {
        Some(match name {
            "l140_41_a" => include_str!("../fixtures/l140_41_a.txt"),
            "l140_41_b" => include_str!("../fixtures/l140_41_b.txt"),
            "l140_41_c" => include_str!("../fixtures/l140_41_c.txt"),
            "l81_47_a" => include_str!("../fixtures/l81_47_a.txt"),
            "l81_47_b" => include_str!("../fixtures/l81_47_b.txt"),
            _ => return None,
        })
    }

    pub fn get(name: &str) -> Option<IntForm> {
        text(name).map(|t| IntForm::parse(t).expect("bundled fixture parses"))
    }
}
