//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 on a mathematical error (a root outside the field, no
//! antipode, failed axioms), 1 on usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;
use serde_json::{json, Value};

use crate::bounds::{self, ExclusionReport, PqVerdict};
use crate::coalgebra::{
    check_algebra, check_coalgebra, coradical, coradical_filtration, grouplikes, nichols_projection, p_spaces, skew_primitives,
    Coalgebra,
};
use crate::error::{Error, Result};
use crate::exactmath::linalg::{self, Vector};
use crate::exactmath::{Scalar, Subspace};
use crate::hopf::{self, HopfAlgebra, StableOutcome};
use crate::io::StructureFile;
use crate::matrixlike::{classify, MatrixLikeSpan};
use crate::zoo::{self, Built, ZooSpec};

#[derive(Parser, Debug)]
#[command(name = "hopfkit", version, about = "Exact computations with coalgebras and Hopf algebras")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Structure-constant file.
    file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the coalgebra, algebra and bialgebra axioms and solve for the antipode.
    Check(Input),
    /// Simple subcoalgebras of the coradical.
    Coradical(Input),
    /// Dimensions of the coradical filtration.
    Filtration(Input),
    /// The coalgebra projection onto the coradical and the spaces P_n.
    Nichols {
        #[command(flatten)]
        input: Input,
        /// Seed for the randomized lift; 0 is the canonical one.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Grouplike elements, with the group table for Hopf algebras.
    Grouplikes(Input),
    /// (g, h)-skew-primitives.
    Skewprim {
        #[command(flatten)]
        input: Input,
        /// A basis name or `;`-separated coordinates.
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// The antipode and its order.
    Antipode(Input),
    /// The Hopf subalgebra generated by a subspace.
    Subalgebra {
        #[command(flatten)]
        input: Input,
        /// Repeat once per spanning vector.
        #[arg(long = "seed-basis", required = true)]
        seed_basis: Vec<String>,
    },
    /// Classify the span of a matrix-like family e11, e12, e21, e22.
    Classify2x2 {
        #[command(flatten)]
        input: Input,
        /// Given four times, in the order e11, e12, e21, e22.
        #[arg(long, num_args = 1, required = true)]
        span: Vec<String>,
    },
    /// Search for an S-stable simple subcoalgebra from two 4-dimensional components swapped by S.
    StableSearch {
        #[command(flatten)]
        input: Input,
        /// Index of a coradical component, as listed by `coradical`.
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
    },
    /// Evaluate the exclusion rules on every coradical shape of a dimension.
    Bounds {
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        assume_no_skew: bool,
    },
    /// The semisimplicity check for dimension pq.
    Pq {
        #[arg(long, requires = "q", conflicts_with = "sweep")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        q: Option<u64>,
        /// All pairs of odd primes up to --limit.
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 40)]
        limit: u64,
    },
    /// Example objects.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
}

#[derive(Subcommand, Debug)]
enum ZooAction {
    /// Write a family member as a structure-constant file.
    Emit {
        /// For example `taft(3)`, `group_algebra(dihedral(7))`, `direct_sum(c3, c2(-1))`.
        family: String,
        /// Defaults to the smallest field containing the needed roots of unity.
        #[arg(long)]
        conductor: Option<u32>,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_mathematical() {
                2
            } else {
                1
            }
        }
    }
}

fn load(input: &Input) -> Result<Built> {
    let text = std::fs::read_to_string(&input.file)
        .map_err(|e| Error::Parse(format!("{}: {e}", input.file.display())))?;
    StructureFile::parse(&text)?.build()
}

fn load_hopf(input: &Input) -> Result<HopfAlgebra> {
    load(input)?.hopf().map_err(|_| Error::Parse("this command needs mul and unit in the file".into()))
}

/// A basis name or `;`-separated coordinates.
fn parse_vector(text: &str, c: &Coalgebra) -> Result<Vector> {
    let n = c.dim();
    if let Some(i) = c.basis_names().iter().position(|b| b == text.trim()) {
        return Ok(linalg::unit_vec(n, i));
    }
    let v = text
        .split(';')
        .map(|s| s.trim().parse::<Scalar>().map_err(|e| Error::Parse(format!("vector '{text}': {e}"))))
        .collect::<Result<Vector>>()?;
    if v.len() != n {
        return Err(Error::Parse(format!("vector '{text}' has {} coordinates, expected {n}", v.len())));
    }
    Ok(v)
}

/// `2·g + x − 1/2·gx`.
fn show_vector(v: &[Scalar], names: &[String]) -> String {
    let mut out = String::new();
    for (x, name) in v.iter().zip(names) {
        if x.is_zero() {
            continue;
        }
        let (neg, mag) = match x.as_rational() {
            Some(q) if q.is_negative() => (true, -x),
            _ => (false, x.clone()),
        };
        let coeff = if mag == Scalar::one() {
            String::new()
        } else if mag.as_rational().is_some() {
            format!("{mag}·")
        } else {
            format!("({mag})·")
        };
        match (out.is_empty(), neg) {
            (true, false) => {}
            (true, true) => out.push('−'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" − "),
        }
        out.push_str(&coeff);
        out.push_str(name);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn json_vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn json_vectors(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| json_vector(v)).collect())
}

fn render(json: bool, value: Value, human: impl FnOnce() -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    } else {
        human()
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let j = cli.json;
    match &cli.command {
        Command::Check(input) => check(&load(input)?, j),
        Command::Coradical(input) => show_coradical(&load(input)?, j),
        Command::Filtration(input) => filtration(&load(input)?, j),
        Command::Nichols { input, seed } => nichols(&load(input)?, *seed, j),
        Command::Grouplikes(input) => show_grouplikes(&load(input)?, j),
        Command::Skewprim { input, g, h } => {
            let b = load(input)?;
            let c = b.coalgebra();
            let (g, h) = (parse_vector(g, c)?, parse_vector(h, c)?);
            let sp = skew_primitives(c, &g, &h)?;
            let value = json!({
                "dim": sp.space.dim(),
                "nontrivial_dim": sp.nontrivial_dim,
                "basis": json_vectors(sp.space.basis()),
            });
            Ok(render(j, value, || {
                let mut s = format!("skew-primitives: dim {}, nontrivial dim {}\n", sp.space.dim(), sp.nontrivial_dim);
                for v in sp.space.basis() {
                    s.push_str(&format!("  {}\n", show_vector(v, c.basis_names())));
                }
                s
            }))
        }
        Command::Antipode(input) => antipode(&load_hopf(input)?, j),
        Command::Subalgebra { input, seed_basis } => {
            let h = load_hopf(input)?;
            let vs = seed_basis.iter().map(|t| parse_vector(t, &h.coalgebra)).collect::<Result<Vec<_>>>()?;
            let seed = Subspace::span_of(h.dim(), &vs);
            let sub = hopf::generated_hopf_subalgebra(&h, &seed)?;
            let value = json!({ "dim": sub.dim(), "basis": json_vectors(sub.basis()) });
            Ok(render(j, value, || {
                let mut s = format!("generated Hopf subalgebra: dim {} of {}\n", sub.dim(), h.dim());
                for v in sub.basis() {
                    s.push_str(&format!("  {}\n", show_vector(v, h.basis_names())));
                }
                s
            }))
        }
        Command::Classify2x2 { input, span } => {
            let b = load(input)?;
            let c = b.coalgebra();
            if span.len() != 4 {
                return Err(Error::Parse(format!("--span must be given 4 times, got {}", span.len())));
            }
            let vs = span.iter().map(|t| parse_vector(t, c)).collect::<Result<Vec<_>>>()?;
            let e: [Vector; 4] = vs.try_into().expect("four vectors");
            let class = classify(&MatrixLikeSpan::new(c.clone(), e)?)?;
            let value = json!({ "tag": class.tag.to_string(), "witness": json_vectors(&class.witness) });
            Ok(render(j, value, || {
                let mut s = format!("span ≅ {}\n", class.tag);
                for v in &class.witness {
                    s.push_str(&format!("  {}\n", show_vector(v, c.basis_names())));
                }
                s
            }))
        }
        Command::StableSearch { input, c, d } => {
            let h = load_hopf(input)?;
            let cor = coradical(&h.coalgebra)?;
            let get = |i: usize| {
                cor.components.get(i).ok_or_else(|| {
                    Error::Parse(format!("component {i} out of range, there are {}", cor.components.len()))
                })
            };
            stable_search(&h, hopf::stable_coalgebra_search(&h, get(*c)?, get(*d)?)?, j)
        }
        Command::Bounds { dim, assume_no_skew } => {
            if *dim < 2 {
                return Err(Error::Parse("--dim must be at least 2".into()));
            }
            let reports = bounds::report(*dim, *assume_no_skew);
            Ok(render(j, serde_json::to_value(&reports).expect("serializable"), || show_bounds(*dim, &reports)))
        }
        Command::Pq { p, q, sweep, limit } => {
            let verdicts = match (p, q, sweep) {
                (Some(p), Some(q), false) => vec![bounds::pq_checker(*p, *q)?],
                (None, None, true) => bounds::pq_sweep(*limit)?,
                _ => return Err(Error::Parse("give either --p and --q, or --sweep".into())),
            };
            Ok(render(j, serde_json::to_value(&verdicts).expect("serializable"), || show_pq(&verdicts, *sweep)))
        }
        Command::Zoo { action: ZooAction::Emit { family, conductor, out } } => {
            let spec: ZooSpec = family.parse()?;
            let conductor = conductor.unwrap_or_else(|| spec.required_conductor());
            let text = StructureFile::from_built(&zoo::build(&spec, conductor)?).to_text();
            match out {
                None => Ok(text),
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let value = json!({ "family": spec.to_string(), "conductor": conductor, "out": path.display().to_string() });
                    Ok(render(j, value, || format!("wrote {spec} to {}\n", path.display())))
                }
            }
        }
    }
}

fn check(b: &Built, j: bool) -> Result<String> {
    let mut violations: Vec<String> = check_coalgebra(b.coalgebra()).iter().map(|v| format!("coalgebra: {v}")).collect();
    let mut antipode_found = None;
    if let Built::Hopf(h) = b {
        violations.extend(check_algebra(&h.algebra).iter().map(|v| format!("algebra: {v}")));
        if violations.is_empty() {
            violations.extend(hopf::check_bialgebra(h).iter().map(|v| format!("bialgebra: {v}")));
        }
        if violations.is_empty() {
            antipode_found = Some(h.s().is_ok());
        }
    }
    if !violations.is_empty() {
        let shown: Vec<&str> = violations.iter().take(5).map(String::as_str).collect();
        return Err(Error::Axioms(format!("{} violation(s): {}", violations.len(), shown.join("; "))));
    }
    if antipode_found == Some(false) {
        return Err(Error::NoAntipode("the bialgebra has no antipode".into()));
    }
    let kind = if antipode_found.is_some() { "Hopf algebra" } else { "coalgebra" };
    let value = json!({ "dim": b.coalgebra().dim(), "kind": kind, "ok": true });
    Ok(render(j, value, || format!("{kind} of dimension {}: all axioms hold\n", b.coalgebra().dim())))
}

fn show_coradical(b: &Built, j: bool) -> Result<String> {
    let c = b.coalgebra();
    let cor = coradical(c)?;
    let comps: Vec<Value> = cor
        .components
        .iter()
        .map(|k| {
            json!({
                "d": k.d,
                "grouplike": k.grouplike().map(|g| json_vector(g)),
                "basis": json_vectors(k.subcoalgebra.basis()),
                "matrix_basis": k.matrix_basis.as_ref().map(|m| json_vectors(m)),
            })
        })
        .collect();
    let value = json!({ "dim": cor.c0.dim(), "components": comps });
    Ok(render(j, value, || {
        let mut s = format!("C_0 dim {}, {} simple component(s)\n", cor.c0.dim(), cor.components.len());
        for (i, k) in cor.components.iter().enumerate() {
            match k.grouplike() {
                Some(g) => s.push_str(&format!("  [{i}] grouplike {}\n", show_vector(g, c.basis_names()))),
                None => {
                    let split = if k.matrix_basis.is_some() { "" } else { ", not split over this field" };
                    s.push_str(&format!("  [{i}] M^c({}) of dim {}{split}\n", k.d, k.subcoalgebra.dim()));
                }
            }
        }
        s
    }))
}

fn filtration(b: &Built, j: bool) -> Result<String> {
    let c = b.coalgebra();
    let dims: Vec<usize> = coradical_filtration(c)?.iter().map(Subspace::dim).collect();
    Ok(render(j, json!({ "dims": dims, "dim": c.dim() }), || {
        let parts: Vec<String> = dims.iter().enumerate().map(|(i, d)| format!("C_{i} dim {d}")).collect();
        let full = if dims.last() == Some(&c.dim()) { " = H" } else { "" };
        format!("{}{full}\n", parts.join(", "))
    }))
}

fn nichols(b: &Built, seed: u64, j: bool) -> Result<String> {
    let c = b.coalgebra();
    let nd = p_spaces(c, &nichols_projection(c, seed)?)?;
    let table: Vec<Value> =
        nd.isotypic.iter().map(|((t, g), d)| json!({ "tau": t, "gamma": g, "dim": d })).collect();
    let value = json!({
        "seed": seed,
        "pi": json_vectors(&nd.pi),
        "p_dims": nd.p_dims(),
        "isotypic": table,
    });
    Ok(render(j, value, || {
        let dims: Vec<String> = nd.p_dims().iter().enumerate().map(|(i, d)| format!("P_{} dim {d}", i + 1)).collect();
        let mut s = format!("seed {seed}: {}\n", dims.join(", "));
        s.push_str("π:\n");
        for (k, name) in c.basis_names().iter().enumerate() {
            let image: Vector = (0..c.dim()).map(|r| nd.pi[r][k].clone()).collect();
            s.push_str(&format!("  {name} ↦ {}\n", show_vector(&image, c.basis_names())));
        }
        s.push_str("isotypic components of P_1 (τ, γ): dim\n");
        for ((t, g), d) in &nd.isotypic {
            s.push_str(&format!("  ({t}, {g}): {d}\n"));
        }
        s
    }))
}

fn show_grouplikes(b: &Built, j: bool) -> Result<String> {
    let c = b.coalgebra();
    let gs = grouplikes(c)?;
    let table = match b {
        Built::Hopf(h) => Some(hopf::group_data(h)?.table),
        Built::Coalgebra(_) => None,
    };
    let value = json!({ "grouplikes": json_vectors(&gs), "table": table });
    Ok(render(j, value, || {
        let mut s = format!("{} grouplike(s)\n", gs.len());
        for (i, g) in gs.iter().enumerate() {
            s.push_str(&format!("  g{i} = {}\n", show_vector(g, c.basis_names())));
        }
        if let Some(t) = &table {
            s.push_str("multiplication table (g_a g_b):\n");
            for row in t {
                let cells: Vec<String> = row.iter().map(|x| format!("g{x}")).collect();
                s.push_str(&format!("  {}\n", cells.join(" ")));
            }
        }
        s
    }))
}

fn antipode(h: &HopfAlgebra, j: bool) -> Result<String> {
    let s = h.s()?;
    let ord = hopf::antipode_order(h)?;
    let images: Vec<Vector> = (0..h.dim()).map(|k| (0..h.dim()).map(|r| s[r][k].clone()).collect()).collect();
    let value = json!({
        "images": json_vectors(&images),
        "order": ord.order,
        "grouplikes": ord.grouplikes,
        "dual_grouplikes": ord.dual_grouplikes,
        "bound": ord.bound,
        "divides": ord.divides,
    });
    Ok(render(j, value, || {
        let mut out = String::new();
        for (name, v) in h.basis_names().iter().zip(&images) {
            out.push_str(&format!("S({name}) = {}\n", show_vector(v, h.basis_names())));
        }
        out.push_str(&format!(
            "order of S: {}; |G(H)| = {}, |G(H*)| = {}, 4·lcm = {}, divides: {}\n",
            ord.order, ord.grouplikes, ord.dual_grouplikes, ord.bound, ord.divides
        ));
        out
    }))
}

fn stable_search(h: &HopfAlgebra, outcome: StableOutcome, j: bool) -> Result<String> {
    let names = h.basis_names();
    let (value, human) = match &outcome {
        StableOutcome::Found { which, basis, .. } => (
            json!({ "outcome": "found", "which": format!("{which:?}"), "basis": json_vectors(basis) }),
            {
                let mut s = format!("S-stable 4-dimensional simple subcoalgebra from {which:?}\n");
                for (l, v) in ["e11", "e12", "e21", "e22"].iter().zip(basis) {
                    s.push_str(&format!("  {l} = {}\n", show_vector(v, names)));
                }
                s
            },
        ),
        StableOutcome::GrouplikeForced { which, class, grouplikes } => (
            json!({
                "outcome": "grouplike_forced",
                "which": format!("{which:?}"),
                "tag": class.tag.to_string(),
                "grouplikes": json_vectors(grouplikes),
            }),
            {
                let mut s = format!("{which:?} spans {}, forcing nontrivial grouplikes\n", class.tag);
                for g in grouplikes {
                    s.push_str(&format!("  {}\n", show_vector(g, names)));
                }
                s
            },
        ),
        StableOutcome::Contradiction(w) => (
            json!({
                "outcome": "contradiction",
                "identities": w.identities,
                "x_primitive": w.x_primitive,
                "f_independent": w.f_independent,
                "is_contradiction": w.is_contradiction(),
            }),
            {
                let mut s = format!("both spans collapse to k·1; contradiction: {}\n", w.is_contradiction());
                for (name, ok) in &w.identities {
                    s.push_str(&format!("  {name}: {ok}\n"));
                }
                s
            },
        ),
    };
    Ok(render(j, value, || human))
}

fn show_bounds(dim: u64, reports: &[ExclusionReport]) -> String {
    let mut s = format!("dimension {dim}: {} non-pointed non-cosemisimple shape(s)\n", reports.len());
    for r in reports {
        let status = if r.excluded { format!("excluded by {}", r.reasons.join(", ")) } else { "OPEN".into() };
        s.push_str(&format!("  {}: {status}\n", r.shape));
    }
    if dim == 14 && reports.iter().all(|r| r.excluded) {
        s.push_str(&format!("{}\n", bounds::DIM14_CONCLUSION));
    }
    s
}

fn show_pq(verdicts: &[PqVerdict], sweep: bool) -> String {
    let mut s = String::new();
    for v in verdicts {
        match v {
            PqVerdict::Semisimple { p, q, steps } => {
                s.push_str(&format!("dim {} = {p}·{q}: semisimple\n", p * q));
                if !sweep {
                    for st in steps {
                        s.push_str(&format!("  {}: {} (contradiction: {})\n", st.case, st.inequality, st.contradiction));
                    }
                }
            }
            PqVerdict::HypothesesFail { p, q, reason } => {
                if !sweep {
                    s.push_str(&format!("dim {} = {p}·{q}: not covered, {reason}\n", p * q));
                }
            }
        }
    }
    if sweep {
        let dims: Vec<String> = verdicts
            .iter()
            .filter_map(|v| match v {
                PqVerdict::Semisimple { p, q, .. } => Some((p * q).to_string()),
                _ => None,
            })
            .collect();
        s.push_str(&format!("semisimple dimensions: {}\n", dims.join(", ")));
    }
    s
}
