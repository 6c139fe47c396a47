//! Command-line front end.
//!
//! ```text
//! monogamy state make ghz --n 3 --out ghz3.json
//! monogamy measure tangle --state ghz3.json --cut '0|1,2'
//! monogamy monogamy ckw --state w3.json --focus 0
//! monogamy sweep haar --dims 2,2,2 --samples 1000 --seed 7 --out sweep.csv
//! ```
//!
//! Exit status is 0 on success, 1 when the computation itself fails (bad
//! state file, dimension mismatch, …) and 2 on usage errors. Scalars are
//! printed with 12 decimals. Every command that draws random numbers needs an
//! explicit `--seed`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::entropy::EntropyKind;
use crate::monogamy::{self, FocusSelection, MonogamyReport, SweepKind};
use crate::qcore::format::{ensemble_to_json, read_state, state_to_json, write_state};
use crate::qcore::{ginibre_random_density, haar_random_pure, purify, Bipartition, DensityOperator, State};
use crate::roof::{self, MarginalEntropy, PureMeasure, RoofConfig, RoofResult};
use crate::squashed::{self, DEFAULT_EXTENSION_DIM};
use crate::states::named_state;
use crate::tangle::{concurrence, eof_two_qubit, pure_tangle, two_qubit_tangle};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "monogamy", version, about = "Entanglement measures and monogamy checks")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Build, sample, reduce or inspect state files.
    #[command(subcommand)]
    State(StateCmd),
    /// Evaluate one measure on a state file.
    Measure(MeasureArgs),
    /// CKW monogamy reports and the qudit violation search.
    #[command(subcommand)]
    Monogamy(MonogamyCmd),
    /// Polygamy reports with assisted measures.
    Polygamy(PolygamyArgs),
    /// Conditional mutual information and squashed-entanglement bounds.
    #[command(subcommand)]
    Squashed(SquashedCmd),
    /// Monogamy reports over random states, written as CSV.
    Sweep(SweepArgs),
    /// Raw convex-roof optimization.
    Roof(RoofArgs),
}

#[derive(Debug, Subcommand)]
enum StateCmd {
    /// ghz, w, bell:<psi+|psi-|phi+|phi->, wclass:a,b,c, basis:<digits>, antisym
    Make {
        name: String,
        /// Number of parties for ghz and w.
        #[arg(long)]
        n: Option<usize>,
        /// Subsystem dims for basis and antisym.
        #[arg(long, value_parser = parse_dims)]
        dims: Option<Dims>,
        /// Rescale wclass amplitudes to unit norm.
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Haar-random pure or Ginibre-random mixed state.
    Random {
        kind: RandomKind,
        #[arg(long, value_parser = parse_dims)]
        dims: Dims,
        /// Ginibre rank; full rank by default.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partial trace onto the listed subsystems.
    Reduce {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_parser = parse_dims)]
        keep: Dims,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Purification with the environment appended as the last subsystem.
    Purify {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dims, kind, trace and spectrum.
    Show {
        #[arg(long)]
        state: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RandomKind {
    Haar,
    Ginibre,
}

#[derive(Debug, Clone)]
struct Dims(Vec<usize>);

fn parse_dims(text: &str) -> Result<Dims, String> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a non-negative integer")))
        .collect::<Result<Vec<_>, _>>()
        .map(Dims)
}

fn parse_cut(text: &str) -> Result<Bipartition, String> {
    Bipartition::parse(text).map_err(|e| e.to_string())
}

fn parse_entropy(text: &str) -> Result<EntropyKind, String> {
    text.parse::<EntropyKind>().map_err(|e| e.to_string())
}

#[derive(Debug, Args, Clone)]
struct RoofOpts {
    /// Ensemble size (default max(r, min(r², 8)) for rank r).
    #[arg(long)]
    cardinality: Option<usize>,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    /// Sweep cap per restart.
    #[arg(long, default_value_t = 2000)]
    max_iterations: usize,
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
}

impl RoofOpts {
    fn config(&self, seed: u64) -> RoofConfig {
        RoofConfig {
            cardinality: self.cardinality,
            restarts: self.restarts,
            max_iterations: self.max_iterations,
            tolerance: self.tolerance,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MeasureKind {
    Tangle,
    Concurrence,
    Eof,
    Entropy,
    AssistedTangle,
    AssistedEntropy,
    Tau1,
    Tau2,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    measure: MeasureKind,
    #[arg(long)]
    state: PathBuf,
    /// Bipartition like `0|1,2`; defaults to the first subsystem against the rest.
    #[arg(long, value_parser = parse_cut)]
    cut: Option<Bipartition>,
    /// Trace out subsystems the cut leaves out.
    #[arg(long)]
    reduce: bool,
    /// Entropy family: linear, vn, renyi:<α>, tsallis:<q>.
    #[arg(long, value_parser = parse_entropy, default_value = "vn")]
    kind: EntropyKind,
    /// Subsystems whose marginal entropy is taken (default: all).
    #[arg(long, value_parser = parse_dims)]
    keep: Option<Dims>,
    /// Needed whenever a roof optimization runs.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    roof: RoofOpts,
    /// Print `{measure, value, direction}` JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum MonogamyCmd {
    /// τ_focus|rest ≥ Σ_j τ_focus,j.
    Ckw {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 0)]
        focus: usize,
        /// Needed for mixed or qudit states.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        roof: RoofOpts,
        #[arg(long)]
        json: bool,
    },
    /// Search random tripartite states for CKW violations.
    Search {
        #[arg(long, value_parser = parse_dims)]
        dims: Dims,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = monogamy::VIOLATION_THRESHOLD)]
        threshold: f64,
        #[command(flatten)]
        roof: RoofOpts,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolygamyKind {
    Tangle,
    Vn,
}

#[derive(Debug, Args)]
struct PolygamyArgs {
    kind: PolygamyKind,
    #[arg(long)]
    state: PathBuf,
    #[arg(long, default_value_t = 0)]
    focus: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    roof: RoofOpts,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum SquashedCmd {
    /// I(A;B|E) for parts like `0|1|2` (E may be empty: `0|1|`).
    Cmi {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        parts: String,
    },
    /// Both sides of I(A;BC|E) = I(A;B|E) + I(A;C|BE) for parts `A|B|C|E`.
    Chain {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        parts: String,
    },
    /// Upper bound on the squashed entanglement across a cut.
    Bound {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_parser = parse_cut)]
        cut: Option<Bipartition>,
        #[arg(long)]
        reduce: bool,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_DIM)]
        dim_e: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        roof: RoofOpts,
        #[arg(long)]
        json: bool,
    },
    /// E(A|BC) against E(AB) + E(AC) on bounds, with the chain rule.
    Monogamy {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_DIM)]
        dim_e: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        roof: RoofOpts,
    },
    /// E(A1A2|B1B2) against E(A1B1) + E(A2B2), subsystems ordered A1,B1,A2,B2.
    Superadditivity {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_DIM)]
        dim_e: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        roof: RoofOpts,
    },
}

#[derive(Debug, Args)]
struct SweepArgs {
    kind: RandomKind,
    #[arg(long, value_parser = parse_dims)]
    dims: Dims,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    /// Focus subsystem index, or `all` for one row per subsystem.
    #[arg(long, default_value = "0")]
    focus: String,
    /// Ginibre rank; full rank by default.
    #[arg(long)]
    rank: Option<usize>,
    #[command(flatten)]
    roof: RoofOpts,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Args)]
struct RoofArgs {
    sense: Sense,
    #[arg(long)]
    state: PathBuf,
    #[arg(long, value_parser = parse_cut)]
    cut: Option<Bipartition>,
    #[arg(long)]
    reduce: bool,
    /// Pure-state measure: an entropy of the marginal (linear = tangle, vn, renyi:α, tsallis:q).
    #[arg(long, value_parser = parse_entropy, default_value = "linear")]
    measure: EntropyKind,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    roof: RoofOpts,
    /// Write the optimal ensemble as JSON.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(Error::Io(e))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parse `args` (including the program name) and execute. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.verb, out) {
        Ok(()) => 0,
        // reader went away (`| head`); nothing left to report to
        Err(Failure::Domain(Error::Io(e))) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(verb: Verb, out: &mut dyn Write) -> Outcome {
    match verb {
        Verb::State(cmd) => state_cmd(cmd, out),
        Verb::Measure(args) => measure_cmd(args, out),
        Verb::Monogamy(cmd) => monogamy_cmd(cmd, out),
        Verb::Polygamy(args) => polygamy_cmd(args, out),
        Verb::Squashed(cmd) => squashed_cmd(cmd, out),
        Verb::Sweep(args) => sweep_cmd(args, out),
        Verb::Roof(args) => roof_cmd(args, out),
    }
}

fn emit_state(state: &State, path: Option<PathBuf>, out: &mut dyn Write) -> Outcome {
    match path {
        Some(p) => write_state(p, state)?,
        None => writeln!(out, "{}", state_to_json(state))?,
    }
    Ok(())
}

fn scalar(out: &mut dyn Write, v: f64) -> Outcome {
    writeln!(out, "{v:.12}")?;
    Ok(())
}

fn need_seed(seed: Option<u64>, why: &str) -> std::result::Result<u64, Failure> {
    seed.ok_or_else(|| Failure::Usage(format!("--seed is required {why}")))
}

fn state_cmd(cmd: StateCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        StateCmd::Make { name, n, dims, normalize, out: path } => {
            let psi = named_state(&name, n, dims.as_ref().map(|d| d.0.as_slice()), normalize)?;
            emit_state(&State::Pure(psi), path, out)
        }
        StateCmd::Random { kind, dims, rank, seed, out: path } => {
            let state = match kind {
                RandomKind::Haar => {
                    if rank.is_some() {
                        return Err(Failure::Usage("--rank applies to ginibre only".into()));
                    }
                    State::Pure(haar_random_pure(&dims.0, seed)?)
                }
                RandomKind::Ginibre => {
                    let full = dims.0.iter().product();
                    State::Mixed(ginibre_random_density(&dims.0, rank.unwrap_or(full), seed)?)
                }
            };
            emit_state(&state, path, out)
        }
        StateCmd::Reduce { state, keep, out: path } => {
            let s = read_state(state)?;
            let reduced = match &s {
                State::Pure(p) => p.reduce(&keep.0)?,
                State::Mixed(m) => m.partial_trace(&keep.0)?,
            };
            emit_state(&State::Mixed(reduced), path, out)
        }
        StateCmd::Purify { state, out: path } => {
            let s = read_state(state)?;
            emit_state(&State::Pure(purify(&s.density())?), path, out)
        }
        StateCmd::Show { state } => {
            let s = read_state(state)?;
            let rho = s.density();
            let spectrum: Vec<String> = rho.spectrum()?.iter().map(|v| format!("{v:.12}")).collect();
            writeln!(out, "kind      {}", s.kind())?;
            writeln!(out, "dims      {:?}", s.dims())?;
            writeln!(out, "trace     {:.12}", rho.trace())?;
            writeln!(out, "purity    {:.12}", crate::entropy::purity(&rho))?;
            writeln!(out, "spectrum  {}", spectrum.join(" "))?;
            Ok(())
        }
    }
}

fn default_cut(parties: usize) -> std::result::Result<Bipartition, Failure> {
    if parties < 2 {
        return Err(Failure::Domain(Error::InvalidCut("a single subsystem has no bipartition".into())));
    }
    Ok(Bipartition::split(&[0], parties)?)
}

/// The state restricted to the cut's support, with the cut relabeled.
/// Non-covering cuts need `reduce`.
fn on_cut(state: &State, cut: Option<Bipartition>, reduce: bool) -> std::result::Result<(State, Bipartition), Failure> {
    let n = state.parties();
    let cut = match cut {
        Some(c) => c,
        None => default_cut(n)?,
    };
    if let Some(&k) = cut.support().iter().find(|&&k| k >= n) {
        return Err(Error::InvalidCut(format!("subsystem {k} out of range for {n} parties")).into());
    }
    if cut.covers(n) {
        return Ok((state.clone(), cut));
    }
    if !reduce {
        return Err(Error::InvalidCut(format!(
            "cut {cut} leaves subsystems out of a {n}-party state; pass --reduce to trace them out"
        ))
        .into());
    }
    let support = cut.support();
    let reduced = match state {
        State::Pure(p) => p.reduce(&support)?,
        State::Mixed(m) => m.partial_trace(&support)?,
    };
    Ok((State::Mixed(reduced), cut.compacted()))
}

#[derive(Serialize)]
struct Valued<'a> {
    measure: &'a str,
    value: f64,
    direction: &'a str,
}

fn report_value(out: &mut dyn Write, json: bool, measure: &str, value: f64, direction: &str) -> Outcome {
    if json {
        let v = Valued { measure, value, direction };
        writeln!(out, "{}", serde_json::to_string(&v).expect("plain struct"))?;
        Ok(())
    } else {
        scalar(out, value)
    }
}

fn two_qubit_view(state: &State, cut: &Bipartition) -> std::result::Result<DensityOperator, Failure> {
    let rho = state.density().regroup(cut)?;
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!("two-qubit cut required, got dims {:?}", rho.dims())).into());
    }
    Ok(rho)
}

fn measure_cmd(a: MeasureArgs, out: &mut dyn Write) -> Outcome {
    let state = read_state(&a.state)?;
    let name = format!("{:?}", a.measure).to_lowercase();
    match a.measure {
        MeasureKind::Tangle
        | MeasureKind::Eof
        | MeasureKind::Concurrence
        | MeasureKind::AssistedTangle
        | MeasureKind::AssistedEntropy => {
            let (s, cut) = on_cut(&state, a.cut.clone(), a.reduce)?;
            let pure = match &s {
                State::Pure(p) => Some(p.clone()),
                State::Mixed(m) => m.as_pure(roof::SUPPORT_CUTOFF),
            };
            let (value, direction) = match (a.measure, pure) {
                (MeasureKind::Tangle | MeasureKind::AssistedTangle, Some(p)) => (pure_tangle(&p, &cut)?.value, "exact"),
                (MeasureKind::Eof | MeasureKind::AssistedEntropy, Some(p)) => {
                    (MarginalEntropy::ENTANGLEMENT_ENTROPY.evaluate(&p, &cut)?, "exact")
                }
                (MeasureKind::Concurrence, _) => (concurrence(&two_qubit_view(&s, &cut)?)?, "exact"),
                (MeasureKind::Tangle, None) if s.density().regroup(&cut)?.dims() == [2, 2] => {
                    (two_qubit_tangle(&two_qubit_view(&s, &cut)?)?.value, "exact")
                }
                (MeasureKind::Eof, None) if s.density().regroup(&cut)?.dims() == [2, 2] => {
                    (eof_two_qubit(&two_qubit_view(&s, &cut)?)?, "exact")
                }
                (kind, None) => {
                    let cfg = a.roof.config(need_seed(a.seed, "for roof-based measures of mixed states")?);
                    let rho = s.density();
                    let r = match kind {
                        MeasureKind::Tangle => roof::roof_tangle(&rho, &cut, &cfg)?,
                        MeasureKind::Eof => roof::roof_formation(&rho, &cut, &cfg)?,
                        MeasureKind::AssistedTangle => roof::tangle_of_assistance(&rho, &cut, &cfg)?,
                        _ => roof::assisted_entanglement(&rho, &cut, &cfg)?,
                    };
                    let dir = if matches!(kind, MeasureKind::Tangle | MeasureKind::Eof) { "upper" } else { "lower" };
                    (r.value, dir)
                }
                _ => unreachable!("all measure kinds are matched above"),
            };
            report_value(out, a.json, &name, value, direction)
        }
        MeasureKind::Entropy => {
            let rho = match &a.keep {
                Some(k) => state.density().partial_trace(&k.0)?,
                None => state.density(),
            };
            report_value(out, a.json, &a.kind.to_string(), a.kind.evaluate(&rho)?, "exact")
        }
        MeasureKind::Tau1 | MeasureKind::Tau2 => {
            let State::Pure(p) = &state else {
                return Err(Error::InvalidState("tau1 and tau2 need a pure three-qubit state".into()).into());
            };
            let v = if matches!(a.measure, MeasureKind::Tau1) { monogamy::tau1(p)? } else { monogamy::tau2(p)? };
            report_value(out, a.json, &name, v, "exact")
        }
    }
}

fn print_report(out: &mut dyn Write, report: &MonogamyReport, json: bool) -> Outcome {
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(())
}

fn monogamy_cmd(cmd: MonogamyCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        MonogamyCmd::Ckw { state, focus, seed, roof, json } => {
            let s = read_state(state)?;
            let needs_roof = matches!(s, State::Mixed(_)) || s.dims().iter().any(|&d| d != 2);
            let seed = if needs_roof { need_seed(seed, "for mixed or qudit states")? } else { seed.unwrap_or(0) };
            let report = monogamy::monogamy_report(&s, focus, &roof.config(seed))?;
            print_report(out, &report, json)
        }
        MonogamyCmd::Search { dims, samples, seed, threshold, roof, out: path } => {
            let result = monogamy::violation_search_at(&dims.0, samples, &roof.config(seed), seed, threshold)?;
            let text = serde_json::to_string_pretty(&result).expect("search results serialize");
            match path {
                Some(p) => std::fs::write(p, text + "\n")?,
                None => writeln!(out, "{text}")?,
            }
            Ok(())
        }
    }
}

fn polygamy_cmd(a: PolygamyArgs, out: &mut dyn Write) -> Outcome {
    let State::Pure(psi) = read_state(&a.state)? else {
        return Err(Error::InvalidState("polygamy reports need a pure state".into()).into());
    };
    let cfg = a.roof.config(a.seed);
    let report = match a.kind {
        PolygamyKind::Tangle => monogamy::polygamy_tangle(&psi, a.focus, &cfg)?,
        PolygamyKind::Vn => monogamy::polygamy_vn_at(&psi, a.focus, &cfg)?,
    };
    print_report(out, &report, a.json)
}

/// `0|1|2` into index lists; empty parts are allowed.
fn parse_parts(text: &str, count: usize) -> std::result::Result<Vec<Vec<usize>>, Failure> {
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != count {
        return Err(Failure::Usage(format!("--parts needs {count} `|`-separated groups, got `{text}`")));
    }
    parts
        .iter()
        .map(|p| {
            if p.trim().is_empty() {
                return Ok(Vec::new());
            }
            parse_dims(p).map(|d| d.0).map_err(Failure::Usage)
        })
        .collect()
}

fn squashed_cmd(cmd: SquashedCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        SquashedCmd::Cmi { state, parts } => {
            let p = parse_parts(&parts, 3)?;
            let rho = read_state(state)?.density();
            scalar(out, squashed::cmi(&rho, &p[0], &p[1], &p[2])?.value)
        }
        SquashedCmd::Chain { state, parts } => {
            let p = parse_parts(&parts, 4)?;
            let rho = read_state(state)?.density();
            let c = squashed::chain_rule_check(&rho, &p[0], &p[1], &p[2], &p[3])?;
            writeln!(out, "lhs      {:.12}", c.lhs)?;
            writeln!(out, "rhs      {:.12}", c.rhs)?;
            writeln!(out, "residue  {:e}", c.residue)?;
            Ok(())
        }
        SquashedCmd::Bound { state, cut, reduce, dim_e, seed, roof, json } => {
            let (s, cut) = on_cut(&read_state(state)?, cut, reduce)?;
            let rho = s.density().regroup(&cut)?;
            let b = squashed::squashed_upper_bound(&rho, dim_e, &roof.config(seed))?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&b).expect("bounds serialize"))?;
                Ok(())
            } else {
                scalar(out, b.value)
            }
        }
        SquashedCmd::Monogamy { state, dim_e, seed, roof } => {
            let r = squashed::squashed_monogamy_diag(&read_state(state)?.density(), dim_e, &roof.config(seed))?;
            writeln!(out, "{}", r.to_json())?;
            Ok(())
        }
        SquashedCmd::Superadditivity { state, dim_e, seed, roof } => {
            let r = squashed::superadditivity_diag(&read_state(state)?.density(), dim_e, &roof.config(seed))?;
            writeln!(out, "{}", r.to_json())?;
            Ok(())
        }
    }
}

fn sweep_cmd(a: SweepArgs, out: &mut dyn Write) -> Outcome {
    if a.samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let focus = if a.focus == "all" {
        FocusSelection::All
    } else {
        FocusSelection::One(
            a.focus
                .parse()
                .map_err(|_| Failure::Usage(format!("--focus must be an index or `all`, got `{}`", a.focus)))?,
        )
    };
    let kind = match a.kind {
        RandomKind::Haar => SweepKind::Haar,
        RandomKind::Ginibre => SweepKind::Ginibre(a.rank),
    };
    let parties = a.dims.0.len();
    let rows = monogamy::sweep(kind, &a.dims.0, a.samples, a.seed, focus, &a.roof.config(a.seed))?;
    match a.out {
        Some(p) => {
            let file =
                File::create(&p).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display()))))?;
            monogamy::write_sweep_csv(io::BufWriter::new(file), parties, &rows)?;
        }
        None => monogamy::write_sweep_csv(&mut *out, parties, &rows)?,
    }
    Ok(())
}

fn roof_cmd(a: RoofArgs, out: &mut dyn Write) -> Outcome {
    let (s, cut) = on_cut(&read_state(&a.state)?, a.cut, a.reduce)?;
    let rho = s.density();
    let cfg = a.roof.config(a.seed);
    let mu = MarginalEntropy(a.measure);
    let r: RoofResult = match a.sense {
        Sense::Minimize => roof::roof_minimize(&rho, &mu, &cut, &cfg)?,
        Sense::Maximize => roof::roof_maximize(&rho, &mu, &cut, &cfg)?,
    };
    writeln!(out, "value      {:.12}", r.value)?;
    writeln!(out, "members    {}", r.witness.len())?;
    writeln!(out, "converged  {}", r.converged)?;
    if let Some(p) = a.witness_out {
        std::fs::write(p, ensemble_to_json(&r.witness) + "\n")?;
    }
    Ok(())
}
