//! Acceptance suite: one PASS/FAIL line per criterion, each checked against
//! oracles local to this file, then cross-checked with `verify::run_all`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use rbd_core::flipgraph::build_gpq_from;
use rbd_core::tuples::interior_ones;
use rbd_core::verify::{self, small_expansions, FILLINGS_140_41};
use rbd_core::*;

type Failures = Vec<String>;
type Criterion = (u8, &'static str, fn() -> Failures);

fn z(v: &[i64]) -> ZTuple {
    ZTuple::new(v.to_vec()).unwrap()
}

fn h(v: &[i64]) -> HJTuple {
    HJTuple::new(v.to_vec()).unwrap()
}

fn expect<T: PartialEq + std::fmt::Debug>(f: &mut Failures, what: &str, got: T, want: T) {
    if got != want {
        f.push(format!("{what}: got {got:?}, expected {want:?}"));
    }
}

/// `[a1,...,ak]` as a reduced fraction, or `None` when a tail hits zero.
fn cf_oracle(t: &[i64]) -> Option<(i128, i128)> {
    let (mut num, mut den) = (1i128, 0i128);
    for &a in t.iter().rev() {
        if num == 0 {
            return None;
        }
        let n = a as i128 * num - den;
        den = num;
        num = n;
    }
    let g = gcd(num.abs(), den.abs()).max(1);
    Some((num / g, den / g))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Z_k by brute force over entries `1..=k`: every proper tail
/// `[n_i,...,n_k]` with `i >= 2` is positive and the whole fraction is 0.
fn zk_oracle(k: usize) -> BTreeSet<Vec<i64>> {
    if k == 1 {
        return [vec![0]].into_iter().collect();
    }
    let admissible = |t: &[i64]| {
        let (mut num, mut den) = (1i128, 0i128);
        for (i, &a) in t.iter().enumerate().rev() {
            let n = a as i128 * num - den;
            den = num;
            num = n;
            if i > 0 && num <= 0 {
                return false;
            }
        }
        num == 0
    };
    let mut out = BTreeSet::new();
    let mut t = vec![1i64; k];
    loop {
        if admissible(&t) {
            out.insert(t.clone());
        }
        let mut i = 0;
        while i < k && t[i] == k as i64 {
            t[i] = 1;
            i += 1;
        }
        if i == k {
            return out;
        }
        t[i] += 1;
    }
}

/// Number of blowdown sequences from `n` to the minimal tuple.
fn paths_oracle(n: &[i64], memo: &mut HashMap<Vec<i64>, u64>) -> u64 {
    let ones = interior_ones(n);
    if ones.is_empty() {
        return 1;
    }
    if let Some(&c) = memo.get(n) {
        return c;
    }
    let c = ones.iter().map(|&j| paths_oracle(&blowdown(n, j + 1).unwrap(), memo)).sum();
    memo.insert(n.to_vec(), c);
    c
}

/// Wahl chains evaluate to `m^2 / (m h - 1)` with `gcd(m, h) = 1`.
fn wahl_oracle(w: &[i64]) -> bool {
    let Some((p, q)) = cf_oracle(w) else { return false };
    let m = (p as f64).sqrt().round() as i128;
    m >= 2 && m * m == p && (q + 1) % m == 0 && gcd(m, (q + 1) / m) == 1
}

fn c1() -> Failures {
    let mut f = Failures::new();
    for (p, q, want) in [(24, 17, vec![2, 2, 4, 2, 2]), (24, 7, vec![4, 2, 4]), (81, 34, vec![3, 2, 3, 3, 3])] {
        let got = hj_expand(p, q).unwrap();
        expect(&mut f, &format!("hj {p}/{q}"), got.entries().to_vec(), want.clone());
        expect(&mut f, &format!("oracle {p}/{q}"), cf_oracle(&want), Some((p as i128, q as i128)));
    }
    for (b, want) in [(vec![3, 2, 3, 3, 3], vec![2, 4, 3, 3, 2]), (vec![2, 2, 2, 4, 2, 2, 3, 2, 5], vec![5, 2, 5, 4, 2, 2, 2])] {
        let d = riemenschneider_dual(&h(&b)).unwrap();
        expect(&mut f, "dual", d.entries().to_vec(), want.clone());
        let (p, q) = cf_oracle(&b).unwrap();
        expect(&mut f, "dual value", cf_oracle(&want), Some((p, p - q)));
    }
    f
}

fn c2() -> Failures {
    let mut f = Failures::new();
    let mut catalan = 1u64;
    for k in 2..=10usize {
        let m = k as u64 - 1;
        if m > 1 {
            catalan = catalan * 2 * (2 * m - 1) / (m + 1);
        }
        let zk = enumerate_zk(k).unwrap();
        expect(&mut f, &format!("|Z_{k}|"), zk.len() as u64, catalan);
        if k <= 7 {
            let got: BTreeSet<Vec<i64>> = zk.into_iter().map(ZTuple::into_vec).collect();
            expect(&mut f, &format!("Z_{k} against brute force"), got, zk_oracle(k));
        }
    }
    f
}

fn c3() -> Failures {
    let mut f = Failures::new();
    let ht = |t: &[i64]| t.iter().sum::<i64>() - 2 * (t.len() as i64 - 1);
    expect(&mut f, "ht", z(&[2, 1, 4, 2, 1, 4, 1]).height() as i64, 3);
    expect(&mut f, "ht oracle", ht(&[2, 1, 4, 2, 1, 4, 1]), 3);
    for (t, d) in [(&[2, 1, 4, 1, 2][..], 2), (&[3, 1, 4, 3, 1, 2, 4, 1, 4][..], 3), (&[2, 1, 4, 1, 4, 1, 2][..], 3)] {
        expect(&mut f, &format!("dpt {t:?}"), z(t).depth(), d);
    }
    f
}

fn c4() -> Failures {
    let mut f = Failures::new();
    let mut memo = HashMap::new();
    for (t, want) in [(&[2, 1, 4, 1, 2][..], 2u64), (&[2, 1, 4, 2, 1, 4, 1][..], 3), (&[3, 2, 1, 4, 2, 1, 4][..], 6)] {
        let g = build_gk(t.len()).unwrap();
        let v = g.id_of(&z(t)).unwrap();
        expect(&mut f, &format!("count {t:?}"), count_paths(&g, 0, v).unwrap(), BigUint::from(want));
        expect(&mut f, &format!("oracle {t:?}"), paths_oracle(t, &mut memo), want);
    }
    f
}

fn edges_of(g: &GradedGraph) -> BTreeSet<(Vec<i64>, Vec<i64>, Vec<i64>)> {
    g.edges()
        .iter()
        .map(|e| {
            (
                g.vertex(e.src).tuple.entries().to_vec(),
                g.vertex(e.dst).tuple.entries().to_vec(),
                e.weights.as_ref().unwrap().entries().to_vec(),
            )
        })
        .collect()
}

fn triples(list: &[(&[i64], &[i64], &[i64])]) -> BTreeSet<(Vec<i64>, Vec<i64>, Vec<i64>)> {
    list.iter().map(|(a, b, c)| (a.to_vec(), b.to_vec(), c.to_vec())).collect()
}

fn fillings_oracle(b: &[i64]) -> BTreeSet<Vec<i64>> {
    zk_oracle(b.len()).into_iter().filter(|n| n.iter().zip(b).all(|(x, y)| x <= y)).collect()
}

fn c5() -> Failures {
    let mut f = Failures::new();
    let u: &[i64] = &[1, 2, 2, 2, 1];
    let g = build_gpq(24, 7).unwrap();
    expect(
        &mut f,
        "24/7",
        edges_of(&g),
        triples(&[
            (u, &[1, 2, 3, 1, 2], &[4]),
            (u, &[2, 1, 3, 2, 1], &[4]),
            (&[1, 2, 3, 1, 2], &[2, 1, 4, 1, 2], &[4]),
            (&[2, 1, 3, 2, 1], &[2, 1, 4, 1, 2], &[4]),
        ]),
    );
    let g = build_gpq(81, 47).unwrap();
    expect(
        &mut f,
        "81/47",
        edges_of(&g),
        triples(&[
            (u, &[2, 1, 3, 2, 1], &[4]),
            (u, &[1, 2, 3, 1, 2], &[4]),
            (u, &[3, 1, 2, 3, 1], &[2, 5]),
            (u, &[3, 2, 1, 3, 2], &[2, 5, 3]),
            (&[2, 1, 3, 2, 1], &[3, 1, 2, 3, 1], &[4]),
            (&[2, 1, 3, 2, 1], &[3, 1, 3, 1, 3], &[5, 2]),
            (&[1, 2, 3, 1, 2], &[3, 1, 3, 1, 3], &[2, 5]),
        ]),
    );
    expect(&mut f, "81/47 vertex count", g.vertices().len(), 6);
    let g = build_gpq(37, 10).unwrap();
    expect(
        &mut f,
        "37/10",
        edges_of(&g),
        triples(&[
            (u, &[2, 1, 3, 2, 1], &[4]),
            (u, &[1, 2, 3, 1, 2], &[4]),
            (u, &[2, 2, 2, 1, 4], &[6, 2, 2]),
            (&[1, 2, 3, 1, 2], &[2, 2, 2, 1, 4], &[5, 2]),
        ]),
    );
    for (p, q) in [(45, 26), (140, 41)] {
        let g = build_gpq(p, q).unwrap();
        let got: BTreeSet<Vec<i64>> = g.vertices().iter().map(|v| v.tuple.entries().to_vec()).collect();
        let b = hj_expand(p, p - q).unwrap();
        expect(&mut f, &format!("{p}/{q} vertices"), got.clone(), fillings_oracle(b.entries()));
        if p == 140 {
            let listed: BTreeSet<Vec<i64>> = FILLINGS_140_41.iter().map(|t| t.to_vec()).collect();
            expect(&mut f, "140/41 listed fillings", got, listed);
        } else {
            expect(&mut f, "45/26 vertex count", got.len(), 4);
        }
    }
    f
}

fn c6() -> Failures {
    let mut f = Failures::new();
    for (flips, want) in [(&[5, 4, 6, 7, 3, 2, 1][..], &[5, 2, 5, 4, 2, 2, 2][..]), (&[2, 1, 3], &[2, 5, 3]), (&[3, 2], &[5, 2])] {
        let w = edge_weights(flips).unwrap();
        expect(&mut f, &format!("weights {flips:?}"), w.entries(), want);
        expect(&mut f, &format!("Wahl {want:?}"), wahl_oracle(want), true);
    }
    for k in 3..=7 {
        let gk = build_gk(k).unwrap();
        for b in small_expansions(k, 4).into_iter().filter(|b| b.len() == k) {
            let g = build_gpq_from(&gk, &Lens::from_b(&b).unwrap()).unwrap();
            for e in g.edges() {
                let w = e.weights.as_ref().unwrap();
                if !wahl_oracle(w.entries()) {
                    f.push(format!("{w} on {} under {b} is not Wahl", e.name()));
                }
            }
        }
    }
    f
}

fn c7() -> Failures {
    let mut f = Failures::new();
    let b = h(&[3, 2, 4, 3, 2, 2, 4, 2, 4]);
    let lens = Lens::from_b(&b).unwrap();
    let n = z(&[3, 1, 4, 3, 1, 2, 4, 1, 4]);
    let r = depth_recipe(lens.p, lens.q, &n, &[Selector::Middle, Selector::Rightmost, Selector::Only]).unwrap();
    let stops: Vec<Vec<i64>> = r.stops.iter().map(|s| s.entries().to_vec()).collect();
    expect(
        &mut f,
        "recipe stops",
        stops,
        vec![vec![1, 2, 2, 2, 2, 2, 2, 2, 1], vec![1, 2, 3, 3, 1, 2, 4, 2, 1], vec![1, 2, 4, 3, 1, 2, 4, 1, 3], n.entries().to_vec()],
    );
    let weights: Vec<Vec<i64>> = r.steps.iter().map(|s| s.weights.entries().to_vec()).collect();
    expect(&mut f, "recipe weights", weights, vec![vec![3, 5, 2], vec![5, 2], vec![2, 5]]);
    let g = build_gpq(140, 41).unwrap();
    let v = g.id_of(&z(&[2, 1, 4, 1, 4, 1, 2])).unwrap();
    expect(&mut f, "140/41 distance", graph_distance(&g, 0, v).unwrap(), Some(3));
    for k in 1..=6 {
        let gk = build_gk(k).unwrap();
        for b in small_expansions(k, 4).into_iter().filter(|b| b.len() == k) {
            let g = build_gpq_from(&gk, &Lens::from_b(&b).unwrap()).unwrap();
            for (v, vert) in g.vertices().iter().enumerate() {
                let d = graph_distance(&g, 0, v).unwrap();
                let ones = interior_ones(vert.tuple.entries()).len();
                if d != Some(ones) {
                    f.push(format!("distance {d:?} to {} under {b}, {ones} interior ones", vert.tuple));
                }
            }
        }
    }
    f
}

fn word(k: usize, list: &[(Curve, i64)]) -> TwistWord {
    let mut w = TwistWord::new(k);
    for &(c, m) in list {
        w.add(c, m).unwrap();
    }
    w
}

fn c8() -> Failures {
    use Curve::{Beta, Delta, Gamma};
    let mut f = Failures::new();
    let alphas = [(Curve::alpha(2), 1), (Curve::alpha(3), 1), (Curve::alpha(4), 1), (Curve::alpha(5), 1)];
    let mut w24 = alphas.to_vec();
    w24.extend([(Gamma(1), 1), (Gamma(3), 2), (Gamma(5), 1)]);
    expect(&mut f, "24/7 initial", initial_word(24, 7).unwrap(), word(5, &w24));
    let mut w81 = alphas.to_vec();
    w81.extend([(Gamma(1), 2), (Gamma(3), 1), (Gamma(4), 1), (Gamma(5), 2)]);
    expect(&mut f, "81/47 initial", initial_word(81, 47).unwrap(), word(5, &w81));
    let target = word(5, &[(Delta(2, 3), 1), (Delta(4, 5), 1), (Beta(3, 4, 5), 1), (Beta(1, 2, 3), 1), (Gamma(2), 1), (Gamma(4), 1)]);
    let n = z(&[2, 1, 4, 1, 2]);
    for path in [[1, 3], [3, 1]] {
        expect(&mut f, &format!("24/7 word via {path:?}"), word_for(24, 7, &n, Some(&path)).unwrap(), target.clone());
    }
    for b in small_expansions(6, 4) {
        let lens = Lens::from_b(&b).unwrap();
        let under: BTreeSet<Vec<i64>> = fillings_oracle(b.entries());
        for m in enumerate_zk(lens.k()).unwrap() {
            let w = word_for(lens.p, lens.q, &m, None).unwrap();
            let filling = under.contains(m.entries());
            if w.is_positive() != filling {
                f.push(format!("positivity of {m} under {b}: {}", w.is_positive()));
            }
            if filling {
                let betti = lens.r() as i64 + 2 * (lens.k() as i64 - 1) - m.entries().iter().sum::<i64>();
                expect(&mut f, &format!("length of word for {m} under {b}"), w.len() as i64, lens.k() as i64 + betti);
            }
        }
    }
    f
}

fn c9() -> Failures {
    let mut f = Failures::new();
    for b in [&[4, 2, 4][..], &[4, 2, 4, 2, 4]] {
        let form = plumbing_form(&h(b));
        expect(&mut f, &format!("{b:?} even"), is_even(&form), true);
        expect(&mut f, &format!("{b:?} diagonal even"), (0..b.len()).all(|i| form.square(&LatticeClass::basis(b.len(), i).coeffs) % 2 == 0), true);
    }
    for (name, c) in [("l140_41_a", -5), ("l140_41_c", -5), ("l140_41_b", -2)] {
        let form = lattice::fixtures::get(name).unwrap();
        expect(&mut f, &format!("{name} square {c}"), vectors_of_square(&form, c).unwrap().len(), 0);
    }
    let w = h(&[2, 4, 3, 3, 2]);
    let form = plumbing_form(&w);
    let chains = chain_embeddings(&form, &[-2, -5, -3], Some(&adjunction_c1(&w))).unwrap();
    let got: BTreeSet<Vec<Vec<i64>>> = chains.iter().map(|ch| ch.iter().map(|c| c.coeffs.clone()).collect()).collect();
    let want: BTreeSet<Vec<Vec<i64>>> = [
        vec![vec![1, 0, 0, 0, 0], vec![0, 1, 1, 0, 0], vec![0, 0, 0, 1, 0]],
        vec![vec![1, 0, 0, 0, 0], vec![0, 1, 1, 0, 0], vec![0, 0, 0, 1, 1]],
    ]
    .into_iter()
    .collect();
    expect(&mut f, "(-2,-5,-3) chains", got, want);
    let chain_gram = |ch: &[LatticeClass]| -> Vec<i64> {
        let mut m = Vec::new();
        for a in ch {
            for b in ch {
                m.push(form.pair(&a.coeffs, &b.coeffs));
            }
        }
        m
    };
    if chains.len() == 2 {
        expect(&mut f, "Gram matrices", chain_gram(&chains[0]), chain_gram(&chains[1]));
        expect(&mut f, "Gram values", chain_gram(&chains[0]), vec![-2, 1, 0, 1, -5, 1, 0, 1, -3]);
    }
    f
}

fn c10() -> Failures {
    let mut f = Failures::new();
    for k in 2..=10 {
        for n in enumerate_zk(k).unwrap() {
            let t = phi_inverse(&n).unwrap();
            if t.phi() != n {
                f.push(format!("phi(phi_inverse({n})) = {}", t.phi()));
            }
        }
    }
    let mut memo = HashMap::new();
    for k in 3..=8 {
        let g = build_gk(k).unwrap();
        for (v, vert) in g.vertices().iter().enumerate() {
            let oracle = paths_oracle(vert.tuple.entries(), &mut memo);
            expect(&mut f, &format!("paths to {}", vert.tuple), count_paths(&g, 0, v).unwrap(), BigUint::from(oracle));
            if vert.height > 0 && (oracle == 1) != (vert.tuple.depth() == 1) {
                f.push(format!("unique path and depth one disagree at {}", vert.tuple));
            }
        }
    }
    let report = verify::properties();
    f.extend(report.detail);
    f
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "continued fractions and duals", c1),
        (2, "Catalan cardinalities of Z_k", c2),
        (3, "height and depth", c3),
        (4, "path counts in G_k", c4),
        (5, "graphs G^{p,q}", c5),
        (6, "edge weights are Wahl", c6),
        (7, "depth recipe and graph distance", c7),
        (8, "monodromy words", c8),
        (9, "lattice obstructions and chains", c9),
        (10, "structural property sweeps", c10),
    ];
    let mut failed = Vec::new();
    for (id, title, run) in criteria {
        let fails = run();
        if fails.is_empty() {
            println!("criterion {id}: PASS {title}");
        } else {
            println!("criterion {id}: FAIL {title}");
            for m in fails.iter().take(10) {
                println!("    {m}");
            }
            failed.push(id);
        }
    }
    if !failed.contains(&5) {
        println!("note: criterion 5 lists (1,2,3,1,3,2,1) among the L(140,41) fillings in place of (1,2,3,1,3,1,2), which is not in Z_7");
    }
    for r in verify::run_all() {
        if !r.passed {
            println!("verify::run_all criterion {} disagrees: {:?}", r.id, r.detail);
            failed.push(r.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
