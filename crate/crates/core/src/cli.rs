//! The `skill-ecm` command-line tool.
//!
//! Every subcommand reads an optional TOML [`RunConfig`], applies its flags on
//! top, writes the effective configuration and a manifest into the output
//! directory, and derives all randomness from the single `--seed`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::agent::{self, Agent, AgentError, Registry, SkillStatus};
use crate::config::{ConfigError, RunConfig};
use crate::convergence::{self, AbstractScenario, ConvergenceError, UselessPrep};
use crate::haptic::{self, HapticError, ModelSet};
use crate::seed::rng_for;
use crate::svg::LineChart;
use crate::world::{Scenario, WorldError};

pub const MANIFEST_FORMAT: &str = "skill-ecm/manifest";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error(transparent)]
    Haptic(#[from] HapticError),
    #[error(transparent)]
    World(#[from] WorldError),
    #[error(transparent)]
    Convergence(#[from] ConvergenceError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(#[from] clap::Error),
    #[error("{0}")]
    Usage(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(name = "skill-ecm", version, about = "Learn preparatory skills by playing")]
pub struct Cli {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory [default: $SKILL_ECM_OUT or ./skill-ecm-out].
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Master seed for every random stream.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// `book`, `box` or a path to a .scenario file.
    #[arg(long, global = true)]
    pub scenario: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Record a haptic database by executing every sensing action.
    GenData(GenDataArgs),
    /// Train the state classifiers and score each sensing action.
    Train(TrainArgs),
    /// Learn a complex skill by playing; resumes from an existing registry.
    Play(PlayArgs),
    /// Execute a skill once without learning and print the trace.
    Exec(ExecArgs),
    /// Convergence study over a population of abstract agents.
    Converge(ConvergeArgs),
    /// Inspect the skill registry or build the skill hierarchy.
    Registry(RegistryArgs),
}

#[derive(Debug, Args)]
pub struct GenDataArgs {
    /// Samples per perceptual state and sensing action.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Label by ground truth instead of the cycling order.
    #[arg(long)]
    pub supervised: bool,
    /// Dataset path [default: OUT/dataset.csv].
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Dataset path [default: OUT/dataset.csv].
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub folds: Option<usize>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub resample_len: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct ParamFlags {
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_succ: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_fail: Option<f64>,
    #[arg(long)]
    pub h_init: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[arg(long)]
    pub skill: String,
    #[arg(long)]
    pub max_rollouts: Option<usize>,
    /// Models trained by `train` [default: OUT/models.json]; only read
    /// when no registry exists yet.
    #[arg(long)]
    pub models: Option<PathBuf>,
    /// Registry to resume from and write to [default: OUT/registry.json].
    #[arg(long)]
    pub registry: Option<PathBuf>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub threshold: Option<f64>,
    #[command(flatten)]
    pub params: ParamFlags,
}

#[derive(Debug, Args)]
pub struct ExecArgs {
    #[arg(long)]
    pub skill: String,
    /// World overrides, e.g. `orientation=open,grasped=false`.
    #[arg(long)]
    pub world: Option<String>,
    #[arg(long)]
    pub registry: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub agents: Option<usize>,
    #[arg(long)]
    pub rollouts: Option<usize>,
    /// Comma-separated numbers of preparatory skills.
    #[arg(long, value_delimiter = ',')]
    pub preps: Option<Vec<usize>>,
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Behaviour of preparatory skills beyond the useful rotations.
    #[arg(long, value_parser = parse_useless)]
    pub useless_preps: Option<UselessPrep>,
    /// Worker threads [default: all cores].
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Skip curve.svg.
    #[arg(long)]
    pub no_svg: bool,
    #[command(flatten)]
    pub params: ParamFlags,
}

fn parse_useless(s: &str) -> Result<UselessPrep, String> {
    match s {
        "identity" => Ok(UselessPrep::Identity),
        "spoiler" => Ok(UselessPrep::Spoiler),
        _ => Err("expected `identity` or `spoiler`".into()),
    }
}

#[derive(Debug, Args)]
pub struct RegistryArgs {
    #[arg(long)]
    pub registry: Option<PathBuf>,
    #[command(subcommand)]
    pub action: RegistryAction,
}

#[derive(Debug, Subcommand)]
pub enum RegistryAction {
    /// List skills, their status and their preparatory skills.
    Show,
    /// Add a confident skill as a preparatory skill of other skills.
    Register {
        #[arg(long)]
        skill: String,
        /// Comma-separated target skills; each is created if unknown.
        #[arg(long, value_delimiter = ',', required = true)]
        into: Vec<String>,
    },
}

#[derive(Serialize)]
struct Manifest {
    format: &'static str,
    tool_version: &'static str,
    command: String,
    seed: u64,
    config_fingerprint: String,
    outputs: Vec<OutputEntry>,
}

#[derive(Serialize)]
struct OutputEntry {
    file: String,
    sha256: String,
}

/// Collects primary outputs and writes config and manifest at the end.
struct Run {
    command: &'static str,
    config: RunConfig,
    out_dir: PathBuf,
    outputs: Vec<PathBuf>,
}

impl Run {
    fn new(command: &'static str, config: RunConfig) -> Result<Self, CliError> {
        config.validate()?;
        let out_dir = config.resolved_out_dir();
        fs::create_dir_all(&out_dir).map_err(io_err(&out_dir))?;
        Ok(Run {
            command,
            config,
            out_dir,
            outputs: Vec::new(),
        })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    fn write(&mut self, path: &Path, bytes: &[u8]) -> Result<(), CliError> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io_err(dir))?;
        }
        fs::write(path, bytes).map_err(io_err(path))?;
        self.outputs.push(path.to_path_buf());
        Ok(())
    }

    fn finish(self) -> Result<(), CliError> {
        let config_path = self.path(&format!("{}.config.toml", self.command));
        fs::write(&config_path, self.config.to_toml()).map_err(io_err(&config_path))?;
        let outputs = self
            .outputs
            .iter()
            .map(|p| {
                let bytes = fs::read(p).map_err(io_err(p))?;
                let shown = p.strip_prefix(&self.out_dir).unwrap_or(p);
                Ok(OutputEntry {
                    file: shown.display().to_string(),
                    sha256: hex(&Sha256::digest(&bytes)),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let manifest = Manifest {
            format: MANIFEST_FORMAT,
            tool_version: env!("CARGO_PKG_VERSION"),
            command: self.command.into(),
            seed: self.config.seed,
            config_fingerprint: self.config.fingerprint(),
            outputs,
        };
        let path = self.path(&format!("{}.manifest.json", self.command));
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        fs::write(&path, text + "\n").map_err(io_err(&path))
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_err(path))
}

fn apply_params(config: &mut RunConfig, p: &ParamFlags) {
    let params = &mut config.params;
    params.lambda_succ = p.lambda_succ.unwrap_or(params.lambda_succ);
    params.lambda_fail = p.lambda_fail.unwrap_or(params.lambda_fail);
    params.h_init = p.h_init.unwrap_or(params.h_init);
    params.gamma = p.gamma.unwrap_or(params.gamma);
}

/// Merges the configuration file and the global flags.
fn base_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut c = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(s) = &cli.scenario {
        c.scenario = s.clone();
    }
    if let Some(o) = &cli.out {
        c.out_dir = Some(o.clone());
    }
    Ok(c)
}

/// Parses `args` (including the program name) and runs the command; output
/// for humans goes to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    execute(cli, stdout)
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = base_config(&cli)?;
    let out = |e: std::io::Error| CliError::Io {
        path: "<stdout>".into(),
        source: e,
    };
    match cli.command {
        Command::GenData(a) => gen_data(config, a, stdout),
        Command::Train(a) => train(config, a, stdout),
        Command::Play(a) => play(config, a, stdout),
        Command::Exec(a) => exec(config, a, stdout),
        Command::Converge(a) => converge(config, a, stdout),
        Command::Registry(a) => registry(config, a, stdout),
    }
    .and_then(|()| stdout.flush().map_err(out))
}

macro_rules! say {
    ($w:expr, $($arg:tt)*) => {
        writeln!($w, $($arg)*).map_err(|e| CliError::Io { path: "<stdout>".into(), source: e })?
    };
}

fn gen_data(mut config: RunConfig, a: GenDataArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    config.data.samples = a.samples.unwrap_or(config.data.samples);
    config.data.supervised |= a.supervised;
    let mut run = Run::new("gen-data", config)?;
    let c = &run.config;
    let scenario = Scenario::load(&c.scenario)?;
    let actions: Vec<String> = scenario.sensing.iter().map(|s| s.id.clone()).collect();
    let mut rng = rng_for(c.seed, "database");
    let db = agent::create_haptic_database(&scenario, &actions, c.data.samples, c.data.supervised, &mut rng)?;
    let mut bytes = Vec::new();
    haptic::write_dataset(&mut bytes, &db)?;
    let path = a.output.unwrap_or_else(|| run.path("dataset.csv"));
    run.write(&path, &bytes)?;
    say!(stdout, "wrote {} series to {}", db.len(), path.display());
    run.finish()
}

fn train(mut config: RunConfig, a: TrainArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let k = &mut config.classifier;
    k.alpha = a.alpha.unwrap_or(k.alpha);
    k.folds = a.folds.unwrap_or(k.folds);
    k.epochs = a.epochs.unwrap_or(k.epochs);
    k.lambda = a.lambda.unwrap_or(k.lambda);
    k.resample_len = a.resample_len.unwrap_or(k.resample_len);
    let mut run = Run::new("train", config)?;
    let data_path = a.data.unwrap_or_else(|| run.path("dataset.csv"));
    let db = haptic::read_dataset(read_text(&data_path)?.as_bytes())?;
    let models = agent::train_models(&db, &run.config.agent_config())?;

    let mut report = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut report);
        let row = |w: &mut csv::Writer<&mut Vec<u8>>, r: [String; 3]| {
            w.write_record(r).map_err(|e| CliError::Usage(e.to_string()))
        };
        row(&mut w, ["sensing_action".into(), "accuracy".into(), "D".into()])?;
        for s in &models.scores {
            row(&mut w, [s.sensing_action.clone(), s.s.to_string(), s.d.to_string()])?;
        }
        w.flush().map_err(io_err(&data_path))?;
    }
    let models_path = run.path("models.json");
    run.write(&models_path, (models.to_json() + "\n").as_bytes())?;
    run.write(&run.path("discrimination.csv"), &report)?;

    say!(stdout, "{:<10} {:>9} {:>14}", "sensing", "accuracy", "D");
    for s in &models.scores {
        say!(stdout, "{:<10} {:>9.3} {:>14.2}", s.sensing_action, s.s, s.d);
    }
    if let Some(best) = models
        .scores
        .iter()
        .reduce(|a, b| if b.d > a.d { b } else { a })
    {
        say!(stdout, "dominant sensing action: {}", best.sensing_action);
    }
    say!(stdout, "models written to {}", models_path.display());
    run.finish()
}

fn load_agent(path: &Path) -> Result<Agent, CliError> {
    Ok(Agent::from_registry(Registry::from_json(&read_text(path)?)?)?)
}

fn play(mut config: RunConfig, a: PlayArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    apply_params(&mut config, &a.params);
    config.play.max_rollouts = a.max_rollouts.unwrap_or(config.play.max_rollouts);
    config.confidence.window = a.window.unwrap_or(config.confidence.window);
    config.confidence.threshold = a.threshold.unwrap_or(config.confidence.threshold);
    let mut run = Run::new("play", config)?;
    let c = run.config.clone();
    let registry_path = a.registry.unwrap_or_else(|| run.path("registry.json"));
    let mut agent = if registry_path.exists() {
        log::info!("resuming from {}", registry_path.display());
        load_agent(&registry_path)?
    } else {
        let models_path = a.models.unwrap_or_else(|| run.path("models.json"));
        let models = ModelSet::from_json(&read_text(&models_path)?)?;
        Agent::new(Scenario::load(&c.scenario)?, models, c.agent_config())
    };
    agent.add_skill(&a.skill)?;
    let played_before = agent.record(&a.skill)?.rollouts_played;
    let mut rng = rng_for(c.seed, &format!("play/{}/{played_before}", a.skill));
    let world = agent.scenario.reset_episode(&agent.scenario.initial_world(), &mut rng);
    let outcome = agent.play(&a.skill, c.play.max_rollouts, &world, &mut rng)?;

    let mut log_bytes = Vec::new();
    agent::write_rollout_log(&mut log_bytes, &outcome.rollouts).map_err(io_err(&registry_path))?;
    run.write(&run.path(&format!("rollouts-{}.csv", a.skill)), &log_bytes)?;
    run.write(&registry_path, (agent.to_registry().to_json() + "\n").as_bytes())?;

    let rec = agent.record(&a.skill)?;
    say!(
        stdout,
        "{}: {} roll-outs this session ({} total), confidence {:.3}, status {}",
        a.skill,
        outcome.rollouts.len(),
        rec.rollouts_played,
        rec.confidence.value(),
        status_name(outcome.status)
    );
    run.finish()
}

fn status_name(s: SkillStatus) -> &'static str {
    match s {
        SkillStatus::Learning => "learning",
        SkillStatus::Confident => "confident",
        SkillStatus::RegisteredAsPrep => "registered",
    }
}

fn exec(config: RunConfig, a: ExecArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let c = config.clone();
    let registry_path = a.registry.unwrap_or_else(|| c.resolved_out_dir().join("registry.json"));
    let agent = load_agent(&registry_path)?;
    let mut world = agent.scenario.initial_world();
    if let Some(spec) = &a.world {
        world = world.with_overrides(spec)?;
    }
    let mut rng = rng_for(c.seed, "exec");
    let (trace, after) = agent.execute_skill(&a.skill, &world, &mut rng)?;
    say!(stdout, "skill:      {}", a.skill);
    say!(
        stdout,
        "world:      orientation={} grasped={} box_open={}",
        world.orientation.name(),
        world.grasped,
        world.box_open
    );
    say!(stdout, "sensing:    {}", trace.sensing);
    say!(stdout, "state:      {}", trace.estimated_state);
    say!(stdout, "prep:       {}", trace.prep.as_deref().unwrap_or("-"));
    say!(stdout, "outcome:    {}", if trace.success { "success" } else { "failure" });
    say!(
        stdout,
        "afterwards: orientation={} grasped={} box_open={} in_box={}",
        after.orientation.name(),
        after.grasped,
        after.box_open,
        after.object_in_box
    );
    Ok(())
}

fn converge(mut config: RunConfig, a: ConvergeArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    apply_params(&mut config, &a.params);
    let k = &mut config.converge;
    k.agents = a.agents.unwrap_or(k.agents);
    k.rollouts = a.rollouts.unwrap_or(k.rollouts);
    if let Some(p) = a.preps {
        k.preps = p;
    }
    k.threshold = a.threshold.unwrap_or(k.threshold);
    k.useless_preps = a.useless_preps.unwrap_or(k.useless_preps);
    let mut run = Run::new("converge", config)?;
    let c = run.config.clone();
    let k = &c.converge;
    let template = AbstractScenario {
        sensing_accuracies: k.accuracies.clone(),
        complex_success: k.complex_success,
        params: c.params,
        alpha: c.classifier.alpha,
        useless_preps: k.useless_preps,
        ..AbstractScenario::default()
    };
    let sweep_fn = || convergence::sweep_preps(&template, &k.preps, k.agents, k.rollouts, k.threshold, c.seed);
    let sweep = match a.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(sweep_fn)?,
        None => sweep_fn()?,
    };

    let mut bytes = Vec::new();
    let csv_err = |e| CliError::Io {
        path: "csv".into(),
        source: e,
    };
    if let Some(first) = sweep.results.first() {
        convergence::write_curve_csv(&mut bytes, first).map_err(csv_err)?;
        run.write(&run.path("curve.csv"), &bytes)?;
        bytes.clear();
        convergence::write_curves_csv(&mut bytes, &sweep).map_err(csv_err)?;
        run.write(&run.path("curves.csv"), &bytes)?;
        bytes.clear();
    }
    convergence::write_sweep_csv(&mut bytes, &sweep).map_err(csv_err)?;
    run.write(&run.path("sweep.csv"), &bytes)?;
    if !a.no_svg && !sweep.results.is_empty() {
        let chart = LineChart {
            title: format!("mean success over {} agents", k.agents),
            x_label: "roll-out".into(),
            y_label: "mean success".into(),
            series: sweep
                .results
                .iter()
                .map(|r| {
                    let pts = r.smoothed_curve.iter().enumerate().map(|(i, &v)| ((i + 1) as f64, v));
                    (format!("N_p = {}", r.num_preps), pts.collect())
                })
                .collect(),
            reference_y: Some(k.threshold),
        };
        run.write(&run.path("curve.svg"), chart.render().as_bytes())?;
    }

    say!(stdout, "{:>5} {:>6} {:>8} {:>10}", "N_p", "N_r", "N_r raw", "asymptote");
    for r in &sweep.results {
        let show = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        say!(
            stdout,
            "{:>5} {:>6} {:>8} {:>10.4}",
            r.num_preps,
            show(r.n_r),
            show(r.n_r_raw),
            r.tail_mean(100)
        );
    }
    run.finish()
}

fn registry(config: RunConfig, a: RegistryArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let path = a
        .registry
        .unwrap_or_else(|| config.resolved_out_dir().join("registry.json"));
    let mut agent = load_agent(&path)?;
    match a.action {
        RegistryAction::Show => {}
        RegistryAction::Register { skill, into } => {
            let mut run = Run::new("registry", config)?;
            for t in &into {
                agent.add_skill(t)?;
            }
            for w in agent.register_as_prep(&skill, &into)? {
                say!(stdout, "warning: {w}");
            }
            run.write(&path, (agent.to_registry().to_json() + "\n").as_bytes())?;
            run.finish()?;
        }
    }
    for rec in agent.records() {
        let learned: Vec<&str> = rec
            .ecm
            .preparatory_skills()
            .filter(|c| agent.scenario.prep(&c.label).is_none())
            .map(|c| c.label.as_str())
            .collect();
        say!(
            stdout,
            "{:<20} {:<10} roll-outs {:>5}  confidence {:.3}  uses [{}]  used by [{}]",
            rec.skill.id,
            status_name(rec.status),
            rec.rollouts_played,
            rec.confidence.value(),
            learned.join(", "),
            rec.registered_into.join(", ")
        );
    }
    Ok(())
}
