//! The flip graph `G_k` and the rational blowdown graph `G^{p,q}_k`.
//!
//! Vertex ids follow lexicographic order of the tuples, which puts `u_k`
//! at id 0. Edges of `G_k` are single flips; an edge `u -> v` of `G^{p,q}_k`
//! exists when `G_k` has exactly one directed path from `u` to `v`, and
//! carries that path's flips and plumbing weights.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::contfrac::{HJTuple, Lens};
use crate::error::{fmt_tuple, Error, Result};
use crate::polygon::{initial_triangulation, EarPeeler, Triangulation};
use crate::tuples::{betti_for, check_limit, interior_ones, require_filling, ZTuple};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertex {
    pub tuple: ZTuple,
    pub height: u64,
    pub betti: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub src: usize,
    pub dst: usize,
    pub flips: Vec<usize>,
    pub weights: Option<HJTuple>,
}

impl GraphEdge {
    /// `e_{i1,i2,...}`.
    pub fn name(&self) -> String {
        let body: Vec<String> = self.flips.iter().map(usize::to_string).collect();
        format!("e_{{{}}}", body.join(","))
    }
}

/// A graded DAG whose vertices are elements of `Z_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedGraph {
    k: usize,
    vertices: Vec<GraphVertex>,
    edges: Vec<GraphEdge>,
    out: Vec<Vec<usize>>,
    by_height: Vec<usize>,
    index: HashMap<ZTuple, usize>,
}

impl GradedGraph {
    /// Checks ids, tuple lengths, uniqueness and the height grading.
    pub fn new(k: usize, vertices: Vec<GraphVertex>, mut edges: Vec<GraphEdge>) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (id, v) in vertices.iter().enumerate() {
            if v.tuple.k() != k || v.height != v.tuple.height() {
                return Err(Error::InvalidInput(format!("vertex {id} ({}) does not belong to G_{k}", v.tuple)));
            }
            if index.insert(v.tuple.clone(), id).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vertex {}", v.tuple)));
            }
        }
        edges.sort_by(|x, y| (x.src, x.dst, &x.flips).cmp(&(y.src, y.dst, &y.flips)));
        let mut out = vec![Vec::new(); vertices.len()];
        for (e_id, e) in edges.iter().enumerate() {
            let ok = e.src < vertices.len()
                && e.dst < vertices.len()
                && !e.flips.is_empty()
                && vertices[e.dst].height == vertices[e.src].height + e.flips.len() as u64;
            if !ok {
                return Err(Error::InvalidInput(format!("malformed edge {} -> {}", e.src, e.dst)));
            }
            out[e.src].push(e_id);
        }
        let mut by_height: Vec<usize> = (0..vertices.len()).collect();
        by_height.sort_by_key(|&id| (vertices[id].height, id));
        Ok(GradedGraph { k, vertices, edges, out, by_height, index })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn vertex(&self, id: usize) -> &GraphVertex {
        &self.vertices[id]
    }

    pub fn id_of(&self, tuple: &ZTuple) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    pub fn out_edges(&self, id: usize) -> impl Iterator<Item = &GraphEdge> {
        self.out[id].iter().map(|&e| &self.edges[e])
    }

    pub fn edge(&self, src: usize, dst: usize) -> Option<&GraphEdge> {
        self.out_edges(src).find(|e| e.dst == dst)
    }

    /// Vertices without incoming edges.
    pub fn roots(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.vertices.len()];
        for e in &self.edges {
            has_in[e.dst] = true;
        }
        (0..self.vertices.len()).filter(|&v| !has_in[v]).collect()
    }

    fn check_id(&self, id: usize) -> Result<()> {
        if id < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("no vertex with id {id}")))
        }
    }
}

/// Path counts from one source, with a witness edge into each reached vertex.
#[derive(Debug, Clone)]
pub struct PathCounts {
    pub counts: Vec<BigUint>,
    witness: Vec<Option<usize>>,
}

impl PathCounts {
    /// Flips along the path to `v`, if there is exactly one.
    pub fn unique_path_flips(&self, g: &GradedGraph, v: usize) -> Option<Vec<usize>> {
        if !self.counts[v].is_one() {
            return None;
        }
        let mut parts = Vec::new();
        let mut cur = v;
        while let Some(e) = self.witness[cur] {
            let edge = &g.edges[e];
            parts.push(edge.flips.as_slice());
            cur = edge.src;
        }
        Some(parts.into_iter().rev().flatten().copied().collect())
    }
}

/// Number of directed paths from `u` to every vertex, by DP over heights.
pub fn paths_from(g: &GradedGraph, u: usize) -> Result<PathCounts> {
    g.check_id(u)?;
    let n = g.vertices.len();
    let mut counts = vec![BigUint::zero(); n];
    let mut witness = vec![None; n];
    counts[u] = BigUint::one();
    for &v in &g.by_height {
        if counts[v].is_zero() {
            continue;
        }
        let c = counts[v].clone();
        for &e in &g.out[v] {
            let w = g.edges[e].dst;
            counts[w] += &c;
            witness[w] = Some(e);
        }
    }
    Ok(PathCounts { counts, witness })
}

pub fn count_paths(g: &GradedGraph, u: usize, v: usize) -> Result<BigUint> {
    g.check_id(v)?;
    Ok(paths_from(g, u)?.counts.swap_remove(v))
}

/// Shortest directed path length, or `None` if `v` is unreachable.
pub fn graph_distance(g: &GradedGraph, u: usize, v: usize) -> Result<Option<usize>> {
    g.check_id(u)?;
    g.check_id(v)?;
    let mut dist = vec![usize::MAX; g.vertices.len()];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            return Ok(Some(dist[x]));
        }
        for e in g.out_edges(x) {
            if dist[e.dst] == usize::MAX {
                dist[e.dst] = dist[x] + 1;
                queue.push_back(e.dst);
            }
        }
    }
    Ok(None)
}

/// `G_k`: every triangulation, one edge per distinguished-diagonal flip.
pub fn build_gk(k: usize) -> Result<GradedGraph> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    check_limit(k)?;
    let single = |t: ZTuple| GraphVertex { height: t.height(), tuple: t, betti: None };
    if k <= 2 {
        return GradedGraph::new(k, vec![single(ZTuple::minimal(k))], Vec::new());
    }
    let mut tris: Vec<Triangulation> = vec![initial_triangulation(k)?];
    let mut ids: HashMap<Triangulation, usize> = HashMap::from([(tris[0].clone(), 0)]);
    let mut raw = Vec::new();
    let mut next = 0;
    while next < tris.len() {
        let t = tris[next].clone();
        for i in t.distinguished() {
            let (f, _) = t.flip(i)?;
            let id = *ids.entry(f.clone()).or_insert_with(|| {
                tris.push(f);
                tris.len() - 1
            });
            raw.push((next, id, i));
        }
        next += 1;
    }
    let tuples: Vec<ZTuple> = tris.iter().map(Triangulation::phi).collect();
    let mut order: Vec<usize> = (0..tuples.len()).collect();
    order.sort_by(|&x, &y| tuples[x].cmp(&tuples[y]));
    let mut new_id = vec![0; order.len()];
    for (pos, &old) in order.iter().enumerate() {
        new_id[old] = pos;
    }
    let vertices = order.iter().map(|&old| single(tuples[old].clone())).collect();
    let edges = raw
        .into_iter()
        .map(|(s, d, i)| GraphEdge { src: new_id[s], dst: new_id[d], flips: vec![i], weights: None })
        .collect();
    GradedGraph::new(k, vertices, edges)
}

/// Plumbing weights of the rational blowdown along a contiguous flip run.
pub fn edge_weights(flips: &[usize]) -> Result<HJTuple> {
    if flips.is_empty() {
        return Err(Error::InvalidInput("empty flip sequence".into()));
    }
    if flips.contains(&0) {
        return Err(Error::InvalidInput("diagonal indices start at 1".into()));
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(i) = flips.iter().find(|&&i| !seen.insert(i)) {
        return Err(Error::InvalidInput(format!("diagonal d_{i} repeated in {}", fmt_tuple(flips))));
    }
    let mut w: VecDeque<i64> = VecDeque::from([4]);
    for pair in flips.windows(2) {
        if pair[0] < pair[1] {
            w.push_front(2);
            *w.back_mut().expect("nonempty") += 1;
        } else {
            w.push_back(2);
            *w.front_mut().expect("nonempty") += 1;
        }
    }
    HJTuple::new(w.into())
}

/// `G^{p,q}_k` for the lens space `L(p,q)`.
pub fn build_gpq(p: u64, q: u64) -> Result<GradedGraph> {
    let lens = Lens::new(p, q)?;
    let gk = build_gk(lens.k())?;
    build_gpq_from(&gk, &lens)
}

/// `G^{p,q}_k` using an existing `G_k` for the same `k`.
pub fn build_gpq_from(gk: &GradedGraph, lens: &Lens) -> Result<GradedGraph> {
    if gk.k != lens.k() {
        return Err(Error::InvalidInput(format!("G_{} does not match k = {}", gk.k, lens.k())));
    }
    let members: Vec<usize> = (0..gk.vertices.len()).filter(|&v| gk.vertices[v].tuple.fits_under(&lens.b)).collect();
    let mut local = HashMap::new();
    let mut vertices = Vec::with_capacity(members.len());
    for (pos, &v) in members.iter().enumerate() {
        local.insert(v, pos);
        let tuple = gk.vertices[v].tuple.clone();
        vertices.push(GraphVertex { height: tuple.height(), betti: Some(betti_for(&tuple, lens)?), tuple });
    }
    let mut edges = Vec::new();
    for &u in &members {
        let pc = paths_from(gk, u)?;
        for &v in &members {
            if v == u {
                continue;
            }
            if let Some(flips) = pc.unique_path_flips(gk, v) {
                let weights = Some(edge_weights(&flips)?);
                edges.push(GraphEdge { src: local[&u], dst: local[&v], flips, weights });
            }
        }
    }
    GradedGraph::new(gk.k, vertices, edges)
}

/// Picks one interior 1 among `l` of them, counted from the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    Leftmost,
    Rightmost,
    /// Requires exactly one interior 1.
    Only,
    /// Requires an odd count.
    Middle,
    /// 1-based ordinal.
    Nth(usize),
}

impl Selector {
    /// 1-based ordinal among `l` interior 1's.
    pub fn resolve(self, l: usize) -> Result<usize> {
        let bad = |why: &str| Err(Error::InvalidSelector(format!("{self} with {l} interior 1's: {why}")));
        match self {
            _ if l == 0 => bad("nothing to select"),
            Selector::Leftmost => Ok(1),
            Selector::Rightmost => Ok(l),
            Selector::Only if l == 1 => Ok(1),
            Selector::Only => bad("not unique"),
            Selector::Middle if l % 2 == 1 => Ok(l.div_ceil(2)),
            Selector::Middle => bad("no middle"),
            Selector::Nth(j) if (1..=l).contains(&j) => Ok(j),
            Selector::Nth(_) => bad("out of range"),
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Leftmost => f.write_str("leftmost"),
            Selector::Rightmost => f.write_str("rightmost"),
            Selector::Only => f.write_str("only"),
            Selector::Middle => f.write_str("middle"),
            Selector::Nth(j) => write!(f, "{j}"),
        }
    }
}

impl FromStr for Selector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "leftmost" | "left" | "l" => Ok(Selector::Leftmost),
            "rightmost" | "right" | "r" => Ok(Selector::Rightmost),
            "only" | "unique" => Ok(Selector::Only),
            "middle" | "mid" | "m" => Ok(Selector::Middle),
            other => match other.parse::<usize>() {
                Ok(j) if j >= 1 => Ok(Selector::Nth(j)),
                _ => Err(Error::InvalidSelector(format!("unknown selector '{s}'"))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeStep {
    pub flips: Vec<usize>,
    pub weights: HJTuple,
}

/// A chain of rational blowdowns from `u_k` to a filling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthRecipe {
    /// `u_k` first, the target last.
    pub stops: Vec<ZTuple>,
    pub steps: Vec<RecipeStep>,
}

/// Splits the blowdown history of `n` into phases that each lower the
/// depth by one, blowing down the same-numbered interior 1 within a phase.
/// An empty strategy means all-leftmost.
pub fn depth_recipe(p: u64, q: u64, n: &ZTuple, strategy: &[Selector]) -> Result<DepthRecipe> {
    let lens = Lens::new(p, q)?;
    require_filling(n, &lens)?;
    let l = n.depth();
    if !strategy.is_empty() && strategy.len() < l {
        return Err(Error::InvalidSelector(format!("{} selectors for depth {l}", strategy.len())));
    }
    let mut peeler = EarPeeler::new(n);
    let mut steps = Vec::with_capacity(l);
    for phase in 0..l {
        let sel = strategy.get(phase).copied().unwrap_or(Selector::Leftmost);
        let start = interior_ones(peeler.tuple()).len();
        let ordinal = sel.resolve(start)?;
        let mut flips = Vec::new();
        loop {
            let ones = peeler.candidates();
            if ones.len() < start {
                break;
            }
            flips.push(peeler.peel(ones[ordinal - 1])?);
        }
        let weights = edge_weights(&flips)?;
        steps.push(RecipeStep { flips, weights });
    }
    let mut stops = vec![ZTuple::minimal(n.k())];
    if !steps.is_empty() {
        let mut cur = initial_triangulation(n.k())?;
        for step in &steps {
            cur = cur.flip_all(&step.flips)?.0;
            stops.push(cur.phi());
        }
    }
    if stops.last() != Some(n) {
        return Err(Error::Internal(format!("recipe for {n} does not end at it")));
    }
    for s in &stops {
        require_filling(s, &lens).map_err(|_| Error::Internal(format!("recipe stop {s} is not a filling")))?;
    }
    Ok(DepthRecipe { stops, steps })
}
