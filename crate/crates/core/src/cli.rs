//! Command-line front end. Exit code 0 on success, 2 for configuration or
//! input errors, 3 for numerical failures. Diagnostics go to stderr.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::circuit::CircuitFile;
use crate::error::{Error, Result};
use crate::io;
use crate::lattice::{
    compute_lattice, compute_lattice_par, fold, gamma_folded, summarize, InfoLattice,
    LatticeSummary, DEFAULT_GAP_THRESHOLD,
};
use crate::models::{
    cat_state, embed_qutrit_to_spins, potts_sweep, reference_state, reference_tableau,
    symmetric_ground_state, write_sweep_csv, Granularity, PottsSpec, ReferenceState, SweepConfig,
};
use crate::report::{self, LatticeReport};
use crate::stabilizer::StabilizerTableau;
use crate::state::PureState;
use crate::witness::{verdict, WitnessOptions, EXACT_TOL, GROUND_STATE_TOL};

/// Environment variable that fixes the worker thread count.
pub const THREADS_ENV: &str = "INFOLATTICE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "infolattice",
    version,
    about = "Information lattices and nonstabilizerness witnesses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full lattice with summary and verdict.
    Lattice(StateCmd),
    /// Information per scale, Ω, Γ and gap.
    Summarize(StateCmd),
    /// Lattice of the folded chain.
    Fold(StateCmd),
    /// One-line verdict (JSON with --format json).
    Witness(StateCmd),
    /// Maximally local generating set of a stabilizer state.
    Mlgs(MlgsCmd),
    /// Potts ground-state sweep over sizes and fields.
    PottsSweep(SweepCmd),
    /// Execute a circuit file and optionally save the final amplitudes.
    CircuitRun(CircuitCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Named state: neel, bell, ghz or cat.
    #[arg(long)]
    pub state: Option<String>,
    /// Circuit file applied to |0…0⟩.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    /// Amplitude file (text or binary).
    #[arg(long)]
    pub amplitudes: Option<PathBuf>,
    /// Symmetric Potts ground state (with --h, --J).
    #[arg(long)]
    pub potts: bool,
    /// Chain length. For --potts this counts spin-½ sites (2 per qutrit).
    #[arg(long = "L")]
    pub len: Option<usize>,
    /// Cat-state branch count.
    #[arg(long, default_value_t = 2)]
    pub q: usize,
    /// Cat-state local dimension (defaults to q).
    #[arg(long)]
    pub d: Option<usize>,
    /// Embed a qutrit chain into spin pairs.
    #[arg(long)]
    pub embed: bool,
    #[arg(long, default_value_t = 0.0)]
    pub h: f64,
    #[arg(long = "J", default_value_t = 1.0)]
    pub coupling: f64,
    #[arg(long, value_enum, default_value_t = GranularityArg::Qubit)]
    pub granularity: GranularityArg,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GranularityArg {
    Qubit,
    Qutrit,
}

impl From<GranularityArg> for Granularity {
    fn from(g: GranularityArg) -> Self {
        match g {
            GranularityArg::Qubit => Granularity::Qubit,
            GranularityArg::Qutrit => Granularity::Qutrit,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct StateCmd {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub output: Output,
    /// Integer tolerance (default 1e-6, or 1e-5 for Potts ground states).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_GAP_THRESHOLD)]
    pub gap_threshold: f64,
    /// Also compute Γ of the folded chain and classify its origin.
    #[arg(long)]
    pub fold: bool,
    /// Evaluate subsystem entropies on the thread pool.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Args, Debug, Clone)]
pub struct MlgsCmd {
    #[arg(long)]
    pub state: Option<String>,
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    /// Generator file, one signed Pauli string per line.
    #[arg(long)]
    pub tableau: Option<PathBuf>,
    #[arg(long = "L")]
    pub len: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct SweepCmd {
    /// JSON or TOML sweep configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated spin-chain lengths.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    /// Comma-separated fields.
    #[arg(long = "h", value_delimiter = ',')]
    pub h_values: Vec<f64>,
    #[arg(long)]
    pub h_min: Option<f64>,
    #[arg(long)]
    pub h_max: Option<f64>,
    #[arg(long)]
    pub h_steps: Option<usize>,
    #[arg(long = "J")]
    pub coupling: Option<f64>,
    #[arg(long)]
    pub gap_threshold: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub fold: bool,
    #[arg(long, value_enum)]
    pub granularity: Option<GranularityArg>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct CircuitCmd {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long = "L")]
    pub len: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Save final amplitudes (binary if the extension is .bin).
    #[arg(long)]
    pub amplitudes_out: Option<PathBuf>,
    /// Print the expanded gate list instead of a JSON summary.
    #[arg(long)]
    pub expand: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Loaded {
    state: PureState,
    ground_state: bool,
}

fn need_len(len: Option<usize>, what: &str) -> Result<usize> {
    len.ok_or_else(|| Error::Config(format!("{what} needs --L")))
}

fn load_state(src: &Source) -> Result<Loaded> {
    let given = [
        src.state.is_some(),
        src.circuit.is_some(),
        src.amplitudes.is_some(),
        src.potts,
    ];
    match given.iter().filter(|&&b| b).count() {
        1 => {}
        0 => {
            return Err(Error::Config(
                "give one of --state, --circuit, --amplitudes, --potts".into(),
            ))
        }
        _ => return Err(Error::Config("give exactly one state source".into())),
    }
    let state = if let Some(name) = &src.state {
        if name.eq_ignore_ascii_case("cat") {
            let len = need_len(src.len, "cat state")?;
            let s = cat_state(len, src.d.unwrap_or(src.q), src.q)?;
            if src.embed {
                embed_qutrit_to_spins(&s)?
            } else {
                s
            }
        } else {
            reference_state(name.parse()?, need_len(src.len, "reference state")?)?
        }
    } else if let Some(path) = &src.circuit {
        let file: CircuitFile = std::fs::read_to_string(path)?.parse()?;
        let c = file.instantiate(src.len, src.seed)?;
        PureState::zero(c.len(), 2)?.apply_circuit(&c)?
    } else if let Some(path) = &src.amplitudes {
        io::read_amplitudes(path).map_err(|e| match e {
            Error::NotNormalized(n) => Error::Config(format!(
                "{}: state is not normalized (norm {n:.12})",
                path.display()
            )),
            e => e,
        })?
    } else {
        let len = need_len(src.len, "--potts")?;
        if len % 2 == 1 {
            return Err(Error::Config(format!(
                "--L {len} must be even for the Potts chain"
            )));
        }
        let gs = symmetric_ground_state(&PottsSpec::new(len / 2, src.coupling, src.h)?)?;
        let state = match src.granularity {
            GranularityArg::Qubit => embed_qutrit_to_spins(&gs.state)?,
            GranularityArg::Qutrit => gs.state,
        };
        return Ok(Loaded {
            state,
            ground_state: true,
        });
    };
    Ok(Loaded {
        state,
        ground_state: false,
    })
}

struct Analysis {
    lattice: InfoLattice,
    summary: LatticeSummary,
    opts: WitnessOptions,
}

fn analyze(cmd: &StateCmd, state: &PureState, ground_state: bool) -> Result<Analysis> {
    let tol = cmd.tol.unwrap_or(if ground_state {
        GROUND_STATE_TOL
    } else {
        EXACT_TOL
    });
    if [tol, cmd.gap_threshold]
        .iter()
        .any(|v| v.is_nan() || *v <= 0.0)
    {
        return Err(Error::Config(
            "tolerance and gap threshold must be positive".into(),
        ));
    }
    let lattice = if cmd.parallel {
        compute_lattice_par(state)?
    } else {
        compute_lattice(state)?
    };
    let mut summary = summarize(&lattice, cmd.gap_threshold);
    if cmd.fold {
        summary = summary.with_gamma_folded(gamma_folded(state, cmd.gap_threshold)?);
    }
    Ok(Analysis {
        lattice,
        summary,
        opts: WitnessOptions {
            tol,
            require_origin: cmd.fold,
        },
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn cmd_state(kind: &Command, cmd: &StateCmd) -> Result<String> {
    let loaded = load_state(&cmd.source)?;
    let fmt = cmd.output.format;
    if let Command::Fold(_) = kind {
        let folded = fold(&loaded.state)?;
        let a = analyze(
            &StateCmd {
                fold: false,
                ..cmd.clone()
            },
            &folded,
            loaded.ground_state,
        )?;
        return Ok(match fmt {
            Format::Json => LatticeReport::new(&a.lattice, &a.summary, None).to_json() + "\n",
            Format::Csv => report::lattice_csv(&a.lattice),
            Format::Pretty => format!(
                "{}gamma_folded = {:.6}\n",
                report::render_triangle(&a.lattice, a.opts.tol),
                a.summary.gamma
            ),
        });
    }
    let a = analyze(cmd, &loaded.state, loaded.ground_state)?;
    let v = verdict(&a.lattice, &a.summary, &a.opts)?;
    Ok(match (kind, fmt) {
        (Command::Lattice(_), Format::Json) => {
            LatticeReport::new(&a.lattice, &a.summary, Some(v)).to_json() + "\n"
        }
        (Command::Lattice(_), Format::Csv) => report::lattice_csv(&a.lattice),
        (Command::Lattice(_), Format::Pretty) => {
            format!("{}{}\n", report::render_triangle(&a.lattice, a.opts.tol), v)
        }
        (Command::Summarize(_), Format::Json) => json(&a.summary),
        (Command::Summarize(_), Format::Csv) => report::summary_csv(&a.summary),
        (Command::Summarize(_), Format::Pretty) => report::render_summary(&a.summary),
        (_, Format::Json) => json(&v),
        (_, _) => format!("{v}\n"),
    })
}

fn cmd_mlgs(cmd: &MlgsCmd) -> Result<String> {
    let given = [
        cmd.state.is_some(),
        cmd.circuit.is_some(),
        cmd.tableau.is_some(),
    ];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::Config(
            "give exactly one of --state, --circuit, --tableau".into(),
        ));
    }
    let t = if let Some(name) = &cmd.state {
        reference_tableau(
            name.parse::<ReferenceState>()?,
            need_len(cmd.len, "reference state")?,
        )?
    } else if let Some(path) = &cmd.circuit {
        let file: CircuitFile = std::fs::read_to_string(path)?.parse()?;
        StabilizerTableau::from_circuit(&file.instantiate(cmd.len, cmd.seed)?)?
    } else {
        io::read_tableau(cmd.tableau.as_deref().expect("checked"))?
    };
    let set = t.maximally_local_generating_set()?;
    Ok(match cmd.output.format {
        Format::Json => json(&report::mlgs_records(&set)),
        Format::Csv => {
            let mut s = String::from("generator,n,l\n");
            for r in report::mlgs_records(&set) {
                s.push_str(&format!("{},{},{}\n", r.generator, r.n, r.l));
            }
            s
        }
        Format::Pretty => report::render_mlgs(&set),
    })
}

fn sweep_config(cmd: &SweepCmd) -> Result<SweepConfig> {
    let mut cfg = match &cmd.config {
        Some(p) => SweepConfig::load(p)?,
        None => {
            let mut c = SweepConfig::new(cmd.sizes.clone(), Vec::new());
            c.h_values = None;
            c.fold = cmd.fold;
            c
        }
    };
    if !cmd.sizes.is_empty() {
        cfg.sizes = cmd.sizes.clone();
    }
    if !cmd.h_values.is_empty() {
        cfg.h_values = Some(cmd.h_values.clone());
        (cfg.h_min, cfg.h_max, cfg.h_steps) = (None, None, None);
    } else if cmd.h_min.is_some() || cmd.h_max.is_some() || cmd.h_steps.is_some() {
        cfg.h_values = None;
        (cfg.h_min, cfg.h_max, cfg.h_steps) = (cmd.h_min, cmd.h_max, cmd.h_steps);
    }
    if let Some(j) = cmd.coupling {
        cfg.coupling = j;
    }
    if let Some(g) = cmd.gap_threshold {
        cfg.gap_threshold = g;
    }
    if let Some(t) = cmd.tol {
        cfg.tol = t;
    }
    if let Some(s) = cmd.seed {
        cfg.seed = s;
    }
    if let Some(g) = cmd.granularity {
        cfg.granularity = g.into();
    }
    cfg.fold |= cmd.fold;
    if cmd.out.is_some() {
        cfg.out = cmd.out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_sweep(cmd: &SweepCmd) -> Result<(String, Option<PathBuf>)> {
    let cfg = sweep_config(cmd)?;
    let rows = potts_sweep(&cfg)?;
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!(
            "error at L={} h={}: {}",
            r.len,
            r.h,
            r.error.as_deref().unwrap_or("")
        );
    }
    if rows.iter().all(|r| r.error.is_some()) {
        return Err(Error::Internal("every sweep point failed".into()));
    }
    let text = match cmd.format {
        Format::Json => json(&rows),
        _ => {
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf)?;
            String::from_utf8(buf).expect("ascii csv")
        }
    };
    Ok((text, cfg.out))
}

fn cmd_circuit(cmd: &CircuitCmd) -> Result<String> {
    let file: CircuitFile = std::fs::read_to_string(&cmd.circuit)?.parse()?;
    let c = file.instantiate(cmd.len, cmd.seed)?;
    if cmd.expand {
        return Ok(c.to_text());
    }
    let state = PureState::zero(c.len(), 2)?.apply_circuit(&c)?;
    if let Some(p) = &cmd.amplitudes_out {
        io::write_amplitudes(p, &state)?;
    }
    Ok(json(&serde_json::json!({
        "L": c.len(),
        "gates": c.gates().len(),
        "t_count": c.t_count(),
        "clifford": c.is_clifford(),
        "norm": state.norm(),
        "amplitudes_out": cmd.amplitudes_out.as_deref().map(Path::display).map(|d| d.to_string()),
    })))
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().map_err(|_| {
            Error::Config(format!("{THREADS_ENV} must be a thread count, got {v:?}"))
        })?;
        // a pool that already exists keeps its size
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}

/// Run a parsed command, writing its output.
pub fn execute(cli: &Cli) -> Result<()> {
    configure_threads()?;
    match &cli.command {
        Command::Lattice(c) | Command::Summarize(c) | Command::Fold(c) | Command::Witness(c) => {
            emit(&c.output.out, &cmd_state(&cli.command, c)?)
        }
        Command::Mlgs(c) => emit(&c.output.out, &cmd_mlgs(c)?),
        Command::PottsSweep(c) => {
            let (text, out) = cmd_sweep(c)?;
            emit(&out, &text)
        }
        Command::CircuitRun(c) => emit(&c.out, &cmd_circuit(c)?),
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// 2 for configuration and input errors, 3 for numerical failures.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_config() {
        2
    } else {
        3
    }
}
