//! The `rbd` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rbd_core::lattice::fixtures;
use rbd_core::monodromy::word_trace;
use rbd_core::tuples::parse_tuple;
use rbd_core::{
    adjunction_c1, build_gk, build_gpq, chain_embeddings, depth_recipe, edge_weights, fillings, graph_distance,
    plumbing_form, vectors_of_square, verify, wahl_params, word_stats, Error, GraphExport, HJTuple, IntForm, Lens,
    Result, Selector, ZTuple,
};

#[derive(Debug, Parser)]
#[command(name = "rbd", version, about = "Rational blowdown graphs of minimal symplectic fillings of lens spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print p/(p-q), p/q and the dual expansion.
    Hj { p: u64, q: u64 },
    /// List the minimal fillings of L(p,q) with height, depth and b2.
    Fillings { p: u64, q: u64 },
    /// Emit the blowdown graph of L(p,q).
    Graph {
        p: u64,
        q: u64,
        #[command(flatten)]
        format: Format,
    },
    /// Emit the flip graph of triangulations of the (k+1)-gon.
    Flipgraph {
        k: usize,
        #[command(flatten)]
        format: Format,
    },
    /// Plumbing weights of a contiguous flip run, e.g. 5,4,6,7,3,2,1.
    Weights { flips: String },
    /// Twist word of the filling n of L(p,q) after lantern substitutions.
    Monodromy {
        p: u64,
        q: u64,
        n: String,
        /// Flip order as 1-based diagonal indices, e.g. 1,3.
        #[arg(long)]
        path: Option<String>,
    },
    /// Blowdown recipe of depth dpt(n) for the filling n of L(p,q).
    Recipe {
        p: u64,
        q: u64,
        n: String,
        /// Selectors per phase: leftmost, rightmost, only, middle or a 1-based index.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Search a negative definite lattice for classes or chains.
    Lattice {
        /// Plumbing weights such as 2,4,3,3,2, a bundled fixture @name, or @path to a matrix file.
        source: String,
        #[arg(long, allow_negative_numbers = true, conflicts_with = "chain", required_unless_present = "chain")]
        square: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        chain: Option<String>,
        /// Keep only classes v with <c1, v> = 2 + v^2 for the plumbing.
        #[arg(long)]
        adjunction: bool,
    },
    /// Check every published example and structural property.
    VerifyPaper,
}

#[derive(Debug, Args)]
struct Format {
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, status)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Internal(_) => 2,
                _ => 1,
            }
        }
    }
}

fn list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::InvalidInput(format!("bad {what} '{x}' in '{s}'"))))
        .collect()
}

fn tuple(s: &str) -> Result<ZTuple> {
    ZTuple::new(parse_tuple(s)?)
}

fn emit(text: String, out: Option<PathBuf>) -> Result<String> {
    match out {
        Some(path) => {
            std::fs::write(&path, text)
                .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(text),
    }
}

fn dispatch(cmd: Command) -> Result<(String, i32)> {
    let text = match cmd {
        Command::Hj { p, q } => hj(p, q)?,
        Command::Fillings { p, q } => fillings_table(p, q)?,
        Command::Graph { p, q, format } => {
            let lens = Lens::new(p, q)?;
            let g = build_gpq(p, q)?;
            emit(render(GraphExport::new(&g, Some(&lens))?, &format), format.out)?
        }
        Command::Flipgraph { k, format } => {
            let g = build_gk(k)?;
            emit(render(GraphExport::new(&g, None)?, &format), format.out)?
        }
        Command::Weights { flips } => {
            let w = edge_weights(&list::<usize>(&flips, "flip index")?)?;
            match wahl_params(&w) {
                Some(wp) => format!("{w}  wahl s={},h={}\n", wp.s, wp.h),
                None => format!("{w}  not wahl\n"),
            }
        }
        Command::Monodromy { p, q, n, path } => {
            let n = tuple(&n)?;
            let path = path.map(|s| list::<usize>(&s, "flip index")).transpose()?;
            monodromy(p, q, &n, path.as_deref())?
        }
        Command::Recipe { p, q, n, strategy } => {
            let n = tuple(&n)?;
            let strategy = strategy.map(|s| list::<Selector>(&s, "selector")).transpose()?.unwrap_or_default();
            recipe(p, q, &n, &strategy)?
        }
        Command::Lattice { source, square, chain, adjunction } => lattice(&source, square, chain.as_deref(), adjunction)?,
        Command::VerifyPaper => return Ok(verify_paper()),
    };
    Ok((text, 0))
}

fn hj(p: u64, q: u64) -> Result<String> {
    let lens = Lens::new(p, q)?;
    let mut s = String::new();
    let _ = writeln!(s, "{p}/{} = {}", p - q, lens.b.bracket());
    let _ = writeln!(s, "{p}/{q} = {}", lens.a.bracket());
    let _ = writeln!(s, "dual {} = {}", lens.b.bracket(), lens.a.bracket());
    let _ = writeln!(s, "k = {}, r = {}", lens.k(), lens.r());
    Ok(s)
}

fn fillings_table(p: u64, q: u64) -> Result<String> {
    let lens = Lens::new(p, q)?;
    let rows = fillings(&lens.b)?;
    let mut s = String::new();
    let _ = writeln!(s, "# Z_{}({p}/{}) with b = {}", lens.k(), p - q, lens.b);
    let width = rows.iter().map(|n| n.to_string().len()).max().unwrap_or(1).max(5);
    let _ = writeln!(s, "{:<width$}  {:>3}  {:>3}  {:>3}", "tuple", "ht", "dpt", "b2");
    for n in &rows {
        let b2 = rbd_core::tuples::betti_for(n, &lens)?;
        let _ = writeln!(s, "{:<width$}  {:>3}  {:>3}  {:>3}", n.to_string(), n.height(), n.depth(), b2);
    }
    Ok(s)
}

fn render(e: GraphExport, f: &Format) -> String {
    if f.json {
        let mut j = e.to_json();
        j.push('\n');
        return j;
    }
    if f.dot {
        return e.to_dot();
    }
    let mut s = String::new();
    match (e.p, e.q, &e.hj) {
        (Some(p), Some(q), Some(b)) => {
            let _ = writeln!(s, "G^{{{p},{q}}}_{}: b = {b}, {} vertices, {} edges", e.k, e.vertices.len(), e.edges.len());
        }
        _ => {
            let _ = writeln!(s, "G_{}: {} vertices, {} edges", e.k, e.vertices.len(), e.edges.len());
        }
    }
    for v in &e.vertices {
        let _ = write!(s, "v{} {} ht={}", v.id, v.tuple, v.height);
        if let Some(b) = v.betti {
            let _ = write!(s, " b2={b}");
        }
        s.push('\n');
    }
    for ed in &e.edges {
        let flips: Vec<String> = ed.flips.iter().map(|i| format!("d{i}")).collect();
        let _ = write!(s, "v{} -> v{} [{}]", ed.src, ed.dst, flips.join(","));
        if let Some(w) = &ed.weights {
            let _ = write!(s, " {w}");
        }
        s.push('\n');
    }
    s
}

fn monodromy(p: u64, q: u64, n: &ZTuple, path: Option<&[usize]>) -> Result<String> {
    let (word, steps) = word_trace(p, q, n, path)?;
    let mut s = String::new();
    for st in &steps {
        let ins: Vec<String> = st.inserted.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "flip d{} {} -> {}  new: {}", st.flip, st.quad, st.tuple, if ins.is_empty() { "-".into() } else { ins.join(" ") });
    }
    let stats = word_stats(&word, n);
    let _ = writeln!(s, "word: {word}");
    let _ = writeln!(
        s,
        "positive: {}  length: {}  lanterns: {}",
        if stats.positive { "yes" } else { "no" },
        stats.length,
        stats.lanterns
    );
    Ok(s)
}

fn recipe(p: u64, q: u64, n: &ZTuple, strategy: &[Selector]) -> Result<String> {
    let r = depth_recipe(p, q, n, strategy)?;
    let g = build_gpq(p, q)?;
    let target = g.id_of(n).ok_or_else(|| Error::Internal(format!("{n} missing from the graph")))?;
    let dist = graph_distance(&g, 0, target)?;
    let mut s = String::new();
    let _ = writeln!(s, "{}", r.stops[0]);
    for (step, stop) in r.steps.iter().zip(&r.stops[1..]) {
        let flips: Vec<String> = step.flips.iter().map(|i| format!("d{i}")).collect();
        let _ = writeln!(s, "  -[{}] {}-> {stop}", flips.join(","), step.weights);
    }
    let d = dist.map_or_else(|| "unreachable".to_string(), |d| d.to_string());
    let _ = writeln!(s, "dpt: {}  distance: {d}", n.depth());
    Ok(s)
}

fn lattice(source: &str, square: Option<i64>, chain: Option<&str>, adjunction: bool) -> Result<String> {
    let (form, c1) = if let Some(name) = source.strip_prefix('@') {
        if adjunction {
            return Err(Error::InvalidInput("--adjunction needs plumbing weights, not a matrix".into()));
        }
        let form = match fixtures::get(name) {
            Some(f) => f,
            None => {
                let text = std::fs::read_to_string(name).map_err(|e| {
                    Error::InvalidInput(format!("'{name}' is neither a fixture ({}) nor a readable file: {e}", fixtures::NAMES.join(", ")))
                })?;
                IntForm::parse(&text)?
            }
        };
        (form, None)
    } else {
        let w = HJTuple::new(list::<i64>(source, "weight")?)?;
        let c1 = adjunction.then(|| adjunction_c1(&w));
        (plumbing_form(&w), c1)
    };
    let mut s = String::new();
    match (square, chain) {
        (Some(c), None) => {
            let mut found = vectors_of_square(&form, c)?;
            if let Some(c1) = &c1 {
                found = found
                    .into_iter()
                    .flat_map(|v| [v.neg(), v])
                    .filter(|v| v.coeffs.iter().zip(c1).map(|(a, b)| a * b).sum::<i64>() == 2 + c)
                    .collect();
                found.sort();
                let _ = writeln!(s, "{} classes of square {c} with <c1,v> = {}", found.len(), 2 + c);
            } else {
                let _ = writeln!(s, "{} classes of square {c} (up to sign)", found.len());
            }
            for v in &found {
                let _ = writeln!(s, "{v}");
            }
        }
        (None, Some(list_text)) => {
            let squares = list::<i64>(list_text, "square")?;
            let chains = chain_embeddings(&form, &squares, c1.as_deref())?;
            let _ = writeln!(s, "{} chains", chains.len());
            for ch in chains {
                let parts: Vec<String> = ch.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{}", parts.join(" ; "));
            }
        }
        _ => return Err(Error::InvalidInput("give exactly one of --square or --chain".into())),
    }
    Ok(s)
}

fn verify_paper() -> (String, i32) {
    let mut s = String::new();
    let mut status = 0;
    for r in verify::run_all() {
        let _ = writeln!(s, "criterion {}: {} {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.title);
        for d in &r.detail {
            let _ = writeln!(s, "    {d}");
        }
        if !r.passed {
            status = 2;
        }
    }
    (s, status)
}
