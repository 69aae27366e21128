//! Self-check of the published numbers and structural properties.
//!
//! Each criterion returns a report; `detail` lists every mismatch.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;

use crate::contfrac::{hj_expand, is_wahl_family, riemenschneider_dual, HJTuple, Lens};
use crate::error::Result;
use crate::flipgraph::{build_gk, build_gpq, build_gpq_from, count_paths, depth_recipe, edge_weights, graph_distance, GradedGraph, Selector};
use crate::lattice::{adjunction_c1, chain_embeddings, fixtures, is_even, plumbing_form, vectors_of_square, LatticeClass};
use crate::monodromy::{initial_word, word_for, Curve, TwistWord};
use crate::polygon::{enumerate_triangulations, initial_triangulation, phi_inverse, EarPeeler, Triangulation};
use crate::tuples::{betti, enumerate_zk, fillings, ZTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: Vec<String>,
}

struct Check {
    failures: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { failures: Vec::new() }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn run(&mut self, what: &str, f: impl FnOnce(&mut Check) -> Result<()>) {
        if let Err(e) = f(self) {
            self.failures.push(format!("{what}: {e}"));
        }
    }

    fn report(self, id: u8, title: &'static str) -> Report {
        Report { id, title, passed: self.failures.is_empty(), detail: self.failures }
    }
}

fn z(v: &[i64]) -> ZTuple {
    ZTuple::new(v.to_vec()).expect("literal is in Z_k")
}

fn h(v: &[i64]) -> HJTuple {
    HJTuple::new(v.to_vec()).expect("literal is an HJ tuple")
}

/// Every `b` with `1 <= len <= max_len` and entries in `2..=max_entry`.
pub fn small_expansions(max_len: usize, max_entry: i64) -> Vec<HJTuple> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for t in &layer {
            for e in 2..=max_entry {
                let mut u = t.clone();
                u.push(e);
                next.push(u);
            }
        }
        out.extend(next.iter().map(|t| h(t)));
        layer = next;
    }
    out
}

fn id(g: &GradedGraph, t: &[i64]) -> Result<usize> {
    g.id_of(&z(t)).ok_or_else(|| crate::Error::Internal(format!("{} missing", z(t))))
}

pub fn continued_fractions() -> Report {
    let mut c = Check::new();
    c.run("expansions", |c| {
        c.eq("hj(24/17)", hj_expand(24, 17)?, h(&[2, 2, 4, 2, 2]));
        c.eq("hj(24/7)", hj_expand(24, 7)?, h(&[4, 2, 4]));
        c.eq("hj(81/34)", hj_expand(81, 34)?, h(&[3, 2, 3, 3, 3]));
        c.eq("dual(3,2,3,3,3)", riemenschneider_dual(&h(&[3, 2, 3, 3, 3]))?, h(&[2, 4, 3, 3, 2]));
        c.eq(
            "dual(2,2,2,4,2,2,3,2,5)",
            riemenschneider_dual(&h(&[2, 2, 2, 4, 2, 2, 3, 2, 5]))?,
            h(&[5, 2, 5, 4, 2, 2, 2]),
        );
        Ok(())
    });
    c.report(1, "continued fractions")
}

pub fn catalan() -> Report {
    let mut c = Check::new();
    let expected = [1usize, 2, 5, 14, 42, 132, 429, 1430, 4862];
    for (k, want) in (2..=10).zip(expected) {
        c.run("enumerate_zk", |c| {
            c.eq(&format!("|Z_{k}|"), enumerate_zk(k)?.len(), want);
            Ok(())
        });
    }
    c.report(2, "Catalan cardinalities")
}

pub fn height_depth() -> Report {
    let mut c = Check::new();
    c.eq("ht(2,1,4,2,1,4,1)", z(&[2, 1, 4, 2, 1, 4, 1]).height(), 3);
    c.eq("dpt(2,1,4,1,2)", z(&[2, 1, 4, 1, 2]).depth(), 2);
    c.eq("dpt(3,1,4,3,1,2,4,1,4)", z(&[3, 1, 4, 3, 1, 2, 4, 1, 4]).depth(), 3);
    c.eq("dpt(2,1,4,1,4,1,2)", z(&[2, 1, 4, 1, 4, 1, 2]).depth(), 3);
    c.report(3, "height and depth")
}

pub fn path_counts() -> Report {
    let mut c = Check::new();
    c.run("counts", |c| {
        let g5 = build_gk(5)?;
        let g7 = build_gk(7)?;
        c.eq("paths to (2,1,4,1,2)", count_paths(&g5, 0, id(&g5, &[2, 1, 4, 1, 2])?)?, BigUint::from(2u8));
        c.eq("paths to (2,1,4,2,1,4,1)", count_paths(&g7, 0, id(&g7, &[2, 1, 4, 2, 1, 4, 1])?)?, BigUint::from(3u8));
        c.eq("paths to (3,2,1,4,2,1,4)", count_paths(&g7, 0, id(&g7, &[3, 2, 1, 4, 2, 1, 4])?)?, BigUint::from(6u8));
        Ok(())
    });
    c.report(4, "path counts")
}

type EdgeTriple<'a> = (&'a [i64], &'a [i64], &'a [i64]);

fn edge_set(g: &GradedGraph) -> BTreeSet<(Vec<i64>, Vec<i64>, Vec<i64>)> {
    g.edges()
        .iter()
        .map(|e| {
            (
                g.vertex(e.src).tuple.entries().to_vec(),
                g.vertex(e.dst).tuple.entries().to_vec(),
                e.weights.as_ref().map(|w| w.entries().to_vec()).unwrap_or_default(),
            )
        })
        .collect()
}

fn triple_set(edges: &[EdgeTriple]) -> BTreeSet<(Vec<i64>, Vec<i64>, Vec<i64>)> {
    edges.iter().map(|(s, d, w)| (s.to_vec(), d.to_vec(), w.to_vec())).collect()
}

fn vertex_set(g: &GradedGraph) -> BTreeSet<Vec<i64>> {
    g.vertices().iter().map(|v| v.tuple.entries().to_vec()).collect()
}

/// The eight fillings of L(140,41). The printed list has (1,2,3,1,3,1,2),
/// which is not in Z_7; (1,2,3,1,3,2,1) is the filling meant.
pub const FILLINGS_140_41: [[i64; 7]; 8] = [
    [1, 2, 2, 2, 2, 2, 1],
    [2, 1, 3, 2, 2, 2, 1],
    [1, 2, 3, 1, 3, 2, 1],
    [1, 2, 2, 2, 3, 1, 2],
    [2, 1, 4, 1, 3, 2, 1],
    [2, 1, 3, 2, 3, 1, 2],
    [1, 2, 3, 1, 4, 1, 2],
    [2, 1, 4, 1, 4, 1, 2],
];

pub fn graphs() -> Report {
    let mut c = Check::new();
    let u5: &[i64] = &[1, 2, 2, 2, 1];
    c.run("G^{24,7}", |c| {
        let g = build_gpq(24, 7)?;
        let want: &[EdgeTriple] = &[
            (u5, &[2, 1, 3, 2, 1], &[4]),
            (&[2, 1, 3, 2, 1], &[2, 1, 4, 1, 2], &[4]),
            (u5, &[1, 2, 3, 1, 2], &[4]),
            (&[1, 2, 3, 1, 2], &[2, 1, 4, 1, 2], &[4]),
        ];
        c.eq("24/7 edges", edge_set(&g), triple_set(want));
        c.eq("24/7 vertices", g.vertices().len(), 4);
        c.holds("24/7 has no root edge to (2,1,4,1,2)", g.edge(0, id(&g, &[2, 1, 4, 1, 2])?).is_none());
        Ok(())
    });
    c.run("G^{81,47}", |c| {
        let g = build_gpq(81, 47)?;
        let want: &[EdgeTriple] = &[
            (u5, &[2, 1, 3, 2, 1], &[4]),
            (&[2, 1, 3, 2, 1], &[3, 1, 2, 3, 1], &[4]),
            (&[2, 1, 3, 2, 1], &[3, 1, 3, 1, 3], &[5, 2]),
            (u5, &[3, 2, 1, 3, 2], &[2, 5, 3]),
            (u5, &[1, 2, 3, 1, 2], &[4]),
            (&[1, 2, 3, 1, 2], &[3, 1, 3, 1, 3], &[2, 5]),
            (u5, &[3, 1, 2, 3, 1], &[2, 5]),
        ];
        c.eq("81/47 vertices", g.vertices().len(), 6);
        c.eq("81/47 edges", edge_set(&g), triple_set(want));
        c.eq("81/47 edge count", g.edges().len(), 7);
        Ok(())
    });
    c.run("G^{37,10}", |c| {
        let g = build_gpq(37, 10)?;
        let want: &[EdgeTriple] = &[
            (u5, &[2, 1, 3, 2, 1], &[4]),
            (u5, &[1, 2, 3, 1, 2], &[4]),
            (&[1, 2, 3, 1, 2], &[2, 2, 2, 1, 4], &[5, 2]),
            (u5, &[2, 2, 2, 1, 4], &[6, 2, 2]),
        ];
        c.eq("37/10 vertices", g.vertices().len(), 4);
        c.eq("37/10 edges", edge_set(&g), triple_set(want));
        Ok(())
    });
    c.run("G^{45,26}", |c| {
        let g = build_gpq(45, 26)?;
        let want: BTreeSet<Vec<i64>> =
            [u5, &[2, 1, 3, 2, 1], &[1, 2, 3, 1, 2], &[3, 1, 3, 1, 3]].iter().map(|t| t.to_vec()).collect();
        c.eq("45/26 vertices", vertex_set(&g), want);
        Ok(())
    });
    c.run("G^{140,41}", |c| {
        let g = build_gpq(140, 41)?;
        let want: BTreeSet<Vec<i64>> = FILLINGS_140_41.iter().map(|t| t.to_vec()).collect();
        c.eq("140/41 vertices", vertex_set(&g), want);
        Ok(())
    });
    c.report(5, "graph reproduction")
}

pub fn weights() -> Report {
    let mut c = Check::new();
    c.run("edge_weights", |c| {
        c.eq("w[5,4,6,7,3,2,1]", edge_weights(&[5, 4, 6, 7, 3, 2, 1])?, h(&[5, 2, 5, 4, 2, 2, 2]));
        c.eq("w[2,1,3]", edge_weights(&[2, 1, 3])?, h(&[2, 5, 3]));
        c.eq("w[3,2]", edge_weights(&[3, 2])?, h(&[5, 2]));
        Ok(())
    });
    c.run("Wahl membership", |c| {
        for k in 3..=7 {
            let g = build_gk(k)?;
            for b in small_expansions(k, 4).into_iter().filter(|b| b.len() == k) {
                let gpq = build_gpq_from(&g, &Lens::from_b(&b)?)?;
                for e in gpq.edges() {
                    let w = e.weights.as_ref().expect("G^{p,q} edges carry weights");
                    c.holds(&format!("{w} from {} is Wahl", e.name()), is_wahl_family(w.entries()));
                }
            }
        }
        Ok(())
    });
    c.report(6, "weight algorithm")
}

pub fn recipes_and_distances() -> Report {
    let mut c = Check::new();
    c.run("recipe", |c| {
        let n = z(&[3, 1, 4, 3, 1, 2, 4, 1, 4]);
        let lens = Lens::from_b(&h(&[3, 2, 4, 3, 2, 2, 4, 2, 4]))?;
        let r = depth_recipe(lens.p, lens.q, &n, &[Selector::Middle, Selector::Rightmost, Selector::Only])?;
        c.eq(
            "stops",
            r.stops.clone(),
            vec![ZTuple::minimal(9), z(&[1, 2, 3, 3, 1, 2, 4, 2, 1]), z(&[1, 2, 4, 3, 1, 2, 4, 1, 3]), n],
        );
        let w: Vec<HJTuple> = r.steps.iter().map(|s| s.weights.clone()).collect();
        c.eq("weights", w, vec![h(&[3, 5, 2]), h(&[5, 2]), h(&[2, 5])]);
        let flips: Vec<Vec<usize>> = r.steps.iter().map(|s| s.flips.clone()).collect();
        c.eq("flips", flips, vec![vec![4, 5, 3], vec![7, 6], vec![1, 2]]);
        Ok(())
    });
    c.run("distance in G^{140,41}", |c| {
        let g = build_gpq(140, 41)?;
        c.eq("distance to (2,1,4,1,4,1,2)", graph_distance(&g, 0, id(&g, &[2, 1, 4, 1, 4, 1, 2])?)?, Some(3));
        Ok(())
    });
    c.run("distance sweep", |c| {
        for k in 1..=6 {
            let g = build_gk(k)?;
            for b in small_expansions(k, 4).into_iter().filter(|b| b.len() == k) {
                let lens = Lens::from_b(&b)?;
                let gpq = build_gpq_from(&g, &lens)?;
                for (v, vert) in gpq.vertices().iter().enumerate() {
                    let d = graph_distance(&gpq, 0, v)?;
                    c.eq(&format!("distance to {} under {b}", vert.tuple), d, Some(vert.tuple.depth()));
                    let r = depth_recipe(lens.p, lens.q, &vert.tuple, &[])?;
                    c.eq(&format!("recipe length for {}", vert.tuple), r.steps.len(), vert.tuple.depth());
                }
            }
        }
        Ok(())
    });
    c.report(7, "depth recipes and distances")
}

fn word(k: usize, twists: &[(Curve, i64)]) -> Result<TwistWord> {
    let mut w = TwistWord::new(k);
    for &(cv, m) in twists {
        w.add(cv, m)?;
    }
    Ok(w)
}

pub fn monodromy() -> Report {
    use Curve::{Beta, Delta, Gamma};
    let a = Curve::alpha;
    let mut c = Check::new();
    c.run("initial words", |c| {
        c.eq(
            "initial word 24/7",
            initial_word(24, 7)?,
            word(5, &[(a(2), 1), (a(3), 1), (a(4), 1), (a(5), 1), (Gamma(1), 1), (Gamma(3), 2), (Gamma(5), 1)])?,
        );
        c.eq(
            "initial word 81/47",
            initial_word(81, 47)?,
            word(5, &[(a(2), 1), (a(3), 1), (a(4), 1), (a(5), 1), (Gamma(1), 2), (Gamma(3), 1), (Gamma(4), 1), (Gamma(5), 2)])?,
        );
        Ok(())
    });
    c.run("two paths to (2,1,4,1,2)", |c| {
        let want = word(5, &[(Delta(2, 3), 1), (Delta(4, 5), 1), (Beta(3, 4, 5), 1), (Beta(1, 2, 3), 1), (Gamma(2), 1), (Gamma(4), 1)])?;
        let n = z(&[2, 1, 4, 1, 2]);
        c.eq("path [1,3]", word_for(24, 7, &n, Some(&[1, 3]))?, want.clone());
        c.eq("path [3,1]", word_for(24, 7, &n, Some(&[3, 1]))?, want);
        Ok(())
    });
    c.run("positivity", |c| {
        for (p, q) in [(24, 7), (81, 47), (37, 10), (45, 26)] {
            let lens = Lens::new(p, q)?;
            for n in enumerate_zk(lens.k())? {
                let w = word_for(p, q, &n, None)?;
                let filling = n.fits_under(&lens.b);
                c.eq(&format!("{p}/{q} {n} positive"), w.is_positive(), filling);
                if filling {
                    c.eq(&format!("{p}/{q} {n} length"), w.len(), lens.k() as u64 + betti(&n, p, q)?);
                }
            }
        }
        Ok(())
    });
    c.run("length law on small lenses", |c| {
        for b in small_expansions(6, 4) {
            let lens = Lens::from_b(&b)?;
            for n in fillings(&b)? {
                let w = word_for(lens.p, lens.q, &n, None)?;
                c.eq(&format!("{n} under {b}"), w.len(), lens.k() as u64 + betti(&n, lens.p, lens.q)?);
            }
        }
        Ok(())
    });
    c.report(8, "monodromy")
}

pub fn lattice() -> Report {
    let mut c = Check::new();
    c.holds("(4,2,4) even", is_even(&plumbing_form(&h(&[4, 2, 4]))));
    c.holds("(4,2,4,2,4) even", is_even(&plumbing_form(&h(&[4, 2, 4, 2, 4]))));
    c.run("fixtures", |c| {
        for (name, square) in [("l140_41_a", -5), ("l140_41_c", -5), ("l140_41_b", -2)] {
            let f = fixtures::get(name).expect("bundled");
            c.eq(&format!("{name} classes of square {square}"), vectors_of_square(&f, square)?, Vec::new());
        }
        Ok(())
    });
    c.run("chains", |c| {
        let w = h(&[2, 4, 3, 3, 2]);
        let f = plumbing_form(&w);
        let chains = chain_embeddings(&f, &[-2, -5, -3], Some(&adjunction_c1(&w)))?;
        c.eq("(-2,-5,-3) chains", chains.len(), 2);
        if chains.len() == 2 {
            c.eq("Gram matrices", f.gram(&chains[0]), f.gram(&chains[1]));
        }
        let s = |v: &[i64]| LatticeClass::new(v.to_vec());
        let want: BTreeSet<Vec<LatticeClass>> = [
            vec![s(&[1, 0, 0, 0, 0]), s(&[0, 1, 1, 0, 0]), s(&[0, 0, 0, 1, 0])],
            vec![s(&[1, 0, 0, 0, 0]), s(&[0, 1, 1, 0, 0]), s(&[0, 0, 0, 1, 1])],
        ]
        .into_iter()
        .collect();
        c.eq("chain classes", chains.into_iter().collect::<BTreeSet<_>>(), want);
        let even = plumbing_form(&h(&[4, 2, 4]));
        c.eq("(-2,-5) in (4,2,4)", chain_embeddings(&even, &[-2, -5], None)?.len(), 0);
        Ok(())
    });
    c.report(9, "lattice")
}

/// Endpoints of all contiguous flip sequences out of `start`.
fn contiguous_reach(start: &Triangulation) -> Result<HashSet<ZTuple>> {
    fn go(t: &Triangulation, last: Option<usize>, out: &mut HashSet<ZTuple>) -> Result<()> {
        for i in t.distinguished() {
            if let Some(l) = last {
                if !t.has_edge(l + 1, i + 1) {
                    continue;
                }
            }
            let (next, _) = t.flip(i)?;
            out.insert(next.phi());
            go(&next, Some(i), out)?;
        }
        Ok(())
    }
    let mut out = HashSet::new();
    go(start, None, &mut out)?;
    Ok(out)
}

fn all_peel_orders(n: &ZTuple) -> Result<Vec<Vec<usize>>> {
    fn rec(p: EarPeeler, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let cands = p.candidates();
        if cands.is_empty() {
            out.push(acc.clone());
            return Ok(());
        }
        for pos in cands {
            let mut q = p.clone();
            acc.push(q.peel(pos)?);
            rec(q, acc, out)?;
            acc.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(EarPeeler::new(n), &mut Vec::new(), &mut out)?;
    Ok(out)
}

pub fn properties() -> Report {
    let mut c = Check::new();
    c.run("bijection", |c| {
        for k in 2..=10 {
            for t in enumerate_triangulations(k) {
                let n = t.phi();
                c.holds(&format!("phi_inverse(phi(T)) for {n}"), phi_inverse(&n)? == t);
            }
        }
        Ok(())
    });
    c.run("flip grading", |c| {
        for k in 3..=8 {
            for t in enumerate_triangulations(k) {
                let ht = t.phi().height();
                for i in t.distinguished() {
                    c.eq("height after flip", t.flip(i)?.0.phi().height(), ht + 1);
                }
            }
        }
        Ok(())
    });
    c.run("uniqueness, depth one and contiguity", |c| {
        for k in 3..=8 {
            let g = build_gk(k)?;
            let reach = contiguous_reach(&initial_triangulation(k)?)?;
            for (v, vert) in g.vertices().iter().enumerate() {
                if vert.height == 0 {
                    continue;
                }
                let unique = count_paths(&g, 0, v)? == BigUint::from(1u8);
                let depth_one = vert.tuple.depth() == 1;
                let contiguous = reach.contains(&vert.tuple);
                c.holds(&format!("three-way equivalence at {}", vert.tuple), unique == depth_one && depth_one == contiguous);
            }
        }
        Ok(())
    });
    c.run("edge depth bound and grading drop", |c| {
        for k in 3..=6 {
            let g = build_gk(k)?;
            for b in small_expansions(k, 4).into_iter().filter(|b| b.len() == k) {
                let gpq = build_gpq_from(&g, &Lens::from_b(&b)?)?;
                for e in gpq.edges() {
                    let (s, d) = (gpq.vertex(e.src), gpq.vertex(e.dst));
                    c.holds(&format!("depth bound {} -> {}", s.tuple, d.tuple), d.tuple.depth() <= s.tuple.depth() + 1);
                    let drop = s.betti.unwrap_or(0) as i64 - d.betti.unwrap_or(0) as i64;
                    c.eq(&format!("grading drop {} -> {}", s.tuple, d.tuple), drop, e.flips.len() as i64);
                    let src = phi_inverse(&s.tuple)?;
                    c.holds(&format!("edge {} contiguous", e.name()), src.is_contiguous(&e.flips));
                }
            }
        }
        Ok(())
    });
    c.run("path independence", |c| {
        for k in 3..=6 {
            let flat = Lens::from_b(&HJTuple::new(vec![2; k])?)?;
            for n in enumerate_zk(k)? {
                let hull = Lens::from_b(&HJTuple::new(n.entries().iter().map(|&x| x.max(2)).collect())?)?;
                for lens in [&flat, &hull] {
                    let words: Vec<TwistWord> = all_peel_orders(&n)?
                        .iter()
                        .map(|p| word_for(lens.p, lens.q, &n, Some(p)))
                        .collect::<Result<_>>()?;
                    c.holds(&format!("words agree for {n}"), words.windows(2).all(|w| w[0] == w[1]));
                }
            }
        }
        Ok(())
    });
    c.report(10, "property suites")
}

/// All criteria in order.
pub fn run_all() -> Vec<Report> {
    vec![
        continued_fractions(),
        catalan(),
        height_depth(),
        path_counts(),
        graphs(),
        weights(),
        recipes_and_distances(),
        monodromy(),
        lattice(),
        properties(),
    ]
}
