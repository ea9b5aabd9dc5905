use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ecaemu::bench::bench;
use ecaemu::cache::CACHE_ENV;
use ecaemu::config::{RuleSelection, RunConfig};
use ecaemu::export::{export, ExportFormat};
use ecaemu::parallel::Workers;
use ecaemu::pbm::{write_pbm, write_pbm_binary};
use ecaemu::witness::WitnessFile;
use ecaemu::{Error, Result};
use ecaemu_core::hierarchy::{representative, DualityClass};
use ecaemu_core::{
    check_emulation_naive, render_diagram, render_emulated, verify_witness, Diagram, EcaRule, EmulationWitness, Grid,
    Word, WordSampler,
};

/// Emulation between elementary cellular automata via supercells.
///
/// Exit status: 0 on success, 1 when the requested relation does not hold
/// (`emulate`, `verify`,
/// `render-emulation`), 2 on usage or input errors.
#[derive(Parser)]
#[command(name = "ecaemu", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Facts about a single rule.
    Rule {
        #[command(subcommand)]
        command: RuleCommand,
    },
    /// Space-time diagram of a rule on a cyclic grid, as PBM.
    Simulate(SimulateArgs),
    /// Decide whether F is emulated by G with supercells of size K.
    Emulate(EmulateArgs),
    /// Every rule emulated by G with supercells of size K.
    Subalgebras {
        g: u32,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        pool: PoolArgs,
    },
    /// Emulation hierarchy over supercell sizes 1..=KMAX.
    Hierarchy {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        format: FormatArgs,
        /// Drop edges implied by transitivity (for drawing only).
        #[arg(long)]
        reduce: bool,
    },
    /// Classification report (self-similar, memory, zero emulators, chaos) as JSON.
    Classify {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Search for proper subalgebras with at least two elements, per k in 2..=KMAX.
    Chaos {
        g: u32,
        #[arg(long)]
        kmax: usize,
        #[command(flatten)]
        pool: PoolArgs,
    },
    /// Check a witness file by sampling the multi-step commuting identity.
    Verify(VerifyArgs),
    /// Time the naive search over all candidate rules against the subalgebra search.
    Bench {
        #[arg(long)]
        k: usize,
        /// Target rules: all, reps, or a comma-separated list.
        #[arg(long, default_value = "all")]
        rules: String,
    },
    /// Direct and emulated space-time diagrams for F <=_K G, as two PBM files.
    RenderEmulation(RenderArgs),
}

#[derive(Subcommand)]
enum RuleCommand {
    Info { n: u32 },
}

#[derive(Args)]
struct PoolArgs {
    /// Worker threads; output does not depend on this.
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    kmax: usize,
    /// Emulators to search: all, reps, or a comma-separated list.
    #[arg(long, default_value = "reps")]
    rules: String,
    #[command(flatten)]
    pool: PoolArgs,
    /// Directory for cached search results.
    #[arg(long, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct FormatArgs {
    #[arg(long)]
    dot: bool,
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SimulateArgs {
    rule: u32,
    #[arg(long, default_value_t = 64)]
    width: usize,
    #[arg(long, default_value_t = 64)]
    steps: usize,
    /// Initial configuration as a bit string; overrides --width.
    #[arg(long, conflicts_with_all = ["single", "seed"])]
    init: Option<String>,
    /// Start from a single black cell in the middle.
    #[arg(long)]
    single: bool,
    /// Seed for a random initial configuration.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Raw P4 instead of plain P1.
    #[arg(long)]
    binary: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EmulateArgs {
    /// Emulated rule.
    f: u32,
    /// Emulating rule.
    g: u32,
    #[arg(long)]
    k: usize,
    /// Print the witness as JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Also write the witness file here.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 30)]
    length: usize,
    #[arg(long, default_value_t = 5)]
    horizon: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RenderArgs {
    /// Emulated rule.
    f: u32,
    /// Emulating rule.
    g: u32,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 30)]
    width: usize,
    #[arg(long, default_value_t = 50)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Writes PREFIX-direct.pbm and PREFIX-emulated.pbm.
    #[arg(long)]
    out_prefix: PathBuf,
    #[arg(long)]
    binary: bool,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

fn rule(n: u32) -> Result<EcaRule> {
    Ok(EcaRule::from_wolfram(n)?)
}

fn emit(output: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match output {
        Some(path) => fs::write(path, bytes).map_err(|source| Error::Io { path: path.into(), source }),
        None => Ok(std::io::stdout().lock().write_all(bytes)?),
    }
}

fn pbm_bytes(d: &Diagram, binary: bool) -> Vec<u8> {
    if binary {
        write_pbm_binary(d)
    } else {
        write_pbm(d).into_bytes()
    }
}

impl RunArgs {
    fn config(&self, format: ExportFormat) -> Result<RunConfig> {
        let config = RunConfig {
            kmax: self.kmax,
            rules: self.rules.parse::<RuleSelection>()?,
            workers: self.pool.workers,
            cache_dir: self.cache_dir.clone(),
            seed: 0,
            format,
            output: self.output.clone(),
        };
        config.validate()?;
        Ok(config)
    }
}

fn rule_info(r: EcaRule) -> String {
    let table: Vec<String> =
        (0..8usize).map(|i| format!("{}{}{}->{}", i >> 2 & 1, i >> 1 & 1, i & 1, u8::from(r.output(i)))).collect();
    let class = DualityClass::of(r);
    let members: Vec<String> = class.members().iter().map(ToString::to_string).collect();
    format!(
        "rule: {r}\ntable: {}\ndual: {}\nmirror: {}\ncomplement: {}\nclass: {{{}}} (representative {})\nlinear: {}\naffine: {}\n",
        table.join(" "),
        r.dual(),
        r.mirror(),
        r.complement(),
        members.join(", "),
        representative(r),
        r.is_linear(),
        r.is_affine(),
    )
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Rule { command: RuleCommand::Info { n } } => {
            emit(None, rule_info(rule(n)?).as_bytes())?;
        }
        Command::Simulate(a) => {
            let r = rule(a.rule)?;
            let init: Word = match (&a.init, a.single) {
                (Some(bits), _) => bits.parse()?,
                (None, true) => {
                    let mut w = Word::zeros(a.width);
                    if a.width > 0 {
                        w.set(a.width / 2, true);
                    }
                    w
                }
                (None, false) => WordSampler::new(a.seed).next_word(a.width),
            };
            let d = render_diagram(r, &Grid::cyclic(init), a.steps)?;
            emit(a.output.as_deref(), &pbm_bytes(&d, a.binary))?;
        }
        Command::Emulate(a) => {
            let (f, g) = (rule(a.f)?, rule(a.g)?);
            match check_emulation_naive(f, g, a.k)? {
                Some(enc) => {
                    let w = EmulationWitness::new(f, g, enc);
                    let file = WitnessFile::from(&w);
                    if let Some(path) = &a.witness_out {
                        emit(Some(path), file.to_json()?.as_bytes())?;
                    }
                    let text = if a.json { file.to_json()? } else { format!("{w}\n") };
                    emit(None, text.as_bytes())?;
                }
                None => {
                    emit(
                        None,
                        format!("cannot emulate: rule {f} is not emulated by rule {g} with k = {}\n", a.k).as_bytes(),
                    )?;
                    return Ok(1);
                }
            }
        }
        Command::Subalgebras { g, k, pool } => {
            let g = rule(g)?;
            let found = Workers::new(pool.workers)?.emulated_rules(g, k)?;
            let mut out = String::new();
            for (f, enc) in found {
                out.push_str(&format!("{f} {} {}\n", enc.enc0_word(), enc.enc1_word()));
            }
            emit(None, out.as_bytes())?;
        }
        Command::Hierarchy { run, format, reduce } => {
            let format = if format.dot {
                ExportFormat::Dot
            } else if format.json {
                ExportFormat::Json
            } else {
                ExportFormat::Csv
            };
            let config = run.config(format)?;
            let mut graph = config.pool()?.hierarchy(config.kmax, &config.rules.rules(), config.cache().as_ref())?;
            if reduce {
                graph = graph.transitive_reduction();
            }
            emit(config.output.as_deref(), export(&graph, config.format)?.as_bytes())?;
        }
        Command::Classify { run } => {
            let config = run.config(ExportFormat::Json)?;
            let pool = config.pool()?;
            let graph = pool.hierarchy(config.kmax, &config.rules.rules(), config.cache().as_ref())?;
            let report = pool.classify(&graph)?;
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            emit(config.output.as_deref(), text.as_bytes())?;
        }
        Command::Chaos { g, kmax, pool } => {
            let g = rule(g)?;
            if kmax < 2 {
                return Err(ecaemu_core::Error::InvalidArgument("kmax must be at least 2").into());
            }
            let workers = Workers::new(pool.workers)?;
            let mut out = String::new();
            let mut chaotic = true;
            for k in 2..=kmax {
                match workers.proper_subalgebra_search(g, k)? {
                    Some(sub) => {
                        chaotic = false;
                        let cells: Vec<String> = sub.supercells().map(|c| c.to_string()).collect();
                        out.push_str(&format!(
                            "k={k}: proper subalgebra with {} elements: {{{}}}\n",
                            sub.len(),
                            cells.join(", ")
                        ));
                    }
                    None => out.push_str(&format!("k={k}: none\n")),
                }
            }
            out.push_str(&format!("chaos candidate for k <= {kmax}: {}\n", if chaotic { "yes" } else { "no" }));
            emit(None, out.as_bytes())?;
        }
        Command::Verify(a) => {
            let text = fs::read_to_string(&a.file).map_err(|source| Error::Io { path: a.file.clone(), source })?;
            let w = WitnessFile::parse(&text)?.witness()?;
            let ok = verify_witness(&w, a.length, a.horizon, a.samples, a.seed)?;
            emit(None, format!("{}: {w}\n", if ok { "valid" } else { "invalid" }).as_bytes())?;
            if !ok {
                return Ok(1);
            }
        }
        Command::Bench { k, rules } => {
            let targets = rules.parse::<RuleSelection>()?.rules();
            let report = bench(k, &targets)?;
            emit(None, report.to_string().as_bytes())?;
        }
        Command::RenderEmulation(a) => {
            let (f, g) = (rule(a.f)?, rule(a.g)?);
            let Some(enc) = check_emulation_naive(f, g, a.k)? else {
                emit(
                    None,
                    format!("cannot emulate: rule {f} is not emulated by rule {g} with k = {}\n", a.k).as_bytes(),
                )?;
                return Ok(1);
            };
            let w = EmulationWitness::new(f, g, enc);
            let u = WordSampler::new(a.seed).next_word(a.width);
            let (direct, emulated) = render_emulated(&w, &u, a.steps)?;
            let ext = "pbm";
            let name = a.out_prefix.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let path = |suffix: &str| a.out_prefix.with_file_name(format!("{name}-{suffix}.{ext}"));
            emit(Some(&path("direct")), &pbm_bytes(&direct, a.binary))?;
            emit(Some(&path("emulated")), &pbm_bytes(&emulated, a.binary))?;
            emit(None, format!("{w}\ndecoded emulated diagram matches the direct diagram\n").as_bytes())?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
