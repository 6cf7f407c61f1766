//! `myo`: synthesize, train, extend, test and profile EMG classifiers.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 on a data or model error.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use myo_core::eval::{Calibration, EfficacyMode};
use myo_core::features::features_csv;
use myo_core::label::standard_labels;
use myo_core::lda::{complexity_report, read_model, write_model, ClassifierKind, PooledModel};
use myo_core::session::{
    load_recording, profile_latency, run_session_on, save_recording, synth_generate, FeatureSet,
    PhaseReport, Session, SessionReport, SessionScript, SynthSpec,
};
use myo_core::{Config, MyoError, Result};

#[derive(Debug, Parser)]
#[command(name = "myo", version, about = "EMG pattern recognition with incremental LDA")]
struct Cli {
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for synthetic data.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Model file to read or write. Its calibration lives next to it in
    /// `<model>.cal`.
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    #[arg(long, global = true, default_value = "literal", value_parser = parse_mode)]
    efficacy_mode: EfficacyMode,
    /// Print the designed filter coefficients to stderr before running.
    #[arg(long, global = true)]
    dump_filters: bool,
    #[command(subcommand)]
    command: Command,
}

fn parse_mode(s: &str) -> std::result::Result<EfficacyMode, String> {
    s.parse().map_err(|e: MyoError| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic recording (`.csv` path for CSV, binary otherwise).
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        /// Use only the first N standard labels.
        #[arg(long, default_value_t = 12)]
        classes: usize,
    },
    /// Write the feature vector of every trial window as CSV.
    Features {
        #[arg(long)]
        data: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train the initial model on the first trials of each label.
    Train {
        #[command(flatten)]
        data: DataArgs,
        /// Comma-separated labels (names or ids).
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
    },
    /// Add one class to an existing model.
    AddClass {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        label: String,
    },
    /// Score the last trials of each label against the model.
    Test {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        /// Also write the confusion matrix as CSV.
        #[arg(long)]
        confusion_csv: Option<PathBuf>,
    },
    /// Replay a session script against a recording.
    Session {
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        report: ReportArgs,
        /// Trial counts for the built-in script when no script is given.
        #[arg(long, default_value_t = 15)]
        train_trials: usize,
        #[arg(long, default_value_t = 15)]
        test_trials: usize,
    },
    /// Time each pipeline stage per window.
    Profile {
        #[arg(long)]
        data: PathBuf,
    },
    /// Per-prediction operation counts of common classifiers.
    Complexity {
        /// lda, qda, svm-linear, svm-quadratic, knn or all.
        #[arg(long, default_value = "all")]
        classifier: String,
        #[arg(long)]
        w: u32,
        #[arg(long, default_value_t = 10)]
        q: u32,
        #[arg(long, default_value_t = 100)]
        s: u32,
    },
    /// Print the designed filter coefficients.
    DumpFilters,
}

#[derive(Debug, Args)]
struct DataArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value_t = 15)]
    trials: usize,
    #[command(flatten)]
    report: ReportArgs,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// JSON report path; defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add wall-clock timing to test reports.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if cli.dump_filters {
        eprint!("{}", config.stream.dump_filters()?);
    }
    match &cli.command {
        Command::Synth { out, trials, classes } => {
            let base = SynthSpec::standard(cli.seed);
            if *classes < 1 || *classes > base.classes.len() {
                return Err(MyoError::Config(format!("--classes must be in 1..={}", base.classes.len())));
            }
            let spec = SynthSpec {
                classes: standard_labels()[..*classes].to_vec(),
                amp_matrix: base.amp_matrix[..*classes].to_vec(),
                trials_per_class: *trials,
                sample_rate: config.stream.sample_rate,
                ..base
            };
            if spec.channel_count() != config.stream.channel_count {
                log::warn!(
                    "synthetic data has {} channels, the configuration expects {}",
                    spec.channel_count(),
                    config.stream.channel_count
                );
            }
            save_recording(&synth_generate(&spec)?, out)
        }
        Command::Features { data, out } => {
            let set = FeatureSet::extract(&load_recording(data)?, &config.stream)?;
            let vectors: Vec<_> = set.vectors().cloned().collect();
            emit(out.as_deref(), &features_csv(&vectors, config.stream.channel_count))
        }
        Command::Train { data, labels } => {
            let set = FeatureSet::extract(&load_recording(&data.data)?, &config.stream)?;
            let mut session = Session::new(config.pooling, cli.efficacy_mode);
            let phases = labels
                .iter()
                .map(|l| session.train(&set, l, data.trials).map(PhaseReport::Train))
                .collect::<Result<Vec<_>>>()?;
            let model = session.model()?.clone();
            save_model(model_path(&cli)?, &model, session.calibration())?;
            emit_report(&data.report, &session, phases)
        }
        Command::AddClass { data, label } => {
            let path = model_path(&cli)?;
            let mut session = load_session(path, cli.efficacy_mode)?;
            let set = FeatureSet::extract(&load_recording(&data.data)?, &config.stream)?;
            let phase = PhaseReport::Add(session.add_class(&set, label, data.trials)?);
            let model = session.model()?.clone();
            save_model(path, &model, session.calibration())?;
            emit_report(&data.report, &session, vec![phase])
        }
        Command::Test { data, labels, confusion_csv } => {
            let mut session = load_session(model_path(&cli)?, cli.efficacy_mode)?.with_timing(data.report.timing);
            let set = FeatureSet::extract(&load_recording(&data.data)?, &config.stream)?;
            let report = session.test(&set, labels, data.trials)?;
            if let Some(path) = confusion_csv {
                fs::write(path, report.confusion.to_csv())?;
            }
            emit_report(&data.report, &session, vec![PhaseReport::Test(report)])
        }
        Command::Session { script, data, report, train_trials, test_trials } => {
            let script = match script {
                Some(path) => SessionScript::parse(&fs::read_to_string(path)?)?,
                None => SessionScript::standard(*train_trials, *test_trials),
            };
            let set = FeatureSet::extract(&load_recording(data)?, &config.stream)?;
            let session = Session::new(config.pooling, cli.efficacy_mode).with_timing(report.timing);
            let out = run_session_on(&script, &set, session)?;
            if let Some(path) = &cli.model {
                save_model(path, &out.model, &out.calibration)?;
            }
            emit(report.out.as_deref(), &out.report.to_json())
        }
        Command::Profile { data } => {
            let (model, _) = load_model(model_path(&cli)?)?;
            let report = profile_latency(&config.stream, &load_recording(data)?, &model)?;
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            emit(None, &text)
        }
        Command::Complexity { classifier, w, q, s } => {
            let kinds = if classifier == "all" {
                ClassifierKind::ALL.to_vec()
            } else {
                vec![classifier.parse()?]
            };
            let mut text = String::new();
            for kind in kinds {
                let c = complexity_report(kind, *w, Some(*q), Some(*s))?;
                text.push_str(&format!(
                    "{}: adds={} muls={} squares={} roots={}\n",
                    kind.name(),
                    c.adds,
                    c.muls,
                    c.squares,
                    c.roots
                ));
            }
            emit(None, &text)
        }
        Command::DumpFilters => emit(None, &config.stream.dump_filters()?),
    }
}

fn model_path(cli: &Cli) -> Result<&Path> {
    cli.model
        .as_deref()
        .ok_or_else(|| MyoError::Config("this command needs --model <path>".into()))
}

fn calibration_path(model: &Path) -> PathBuf {
    let mut name = model.as_os_str().to_owned();
    name.push(".cal");
    PathBuf::from(name)
}

fn save_model(path: &Path, model: &PooledModel, calibration: &Calibration) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_model(model, &mut out)?;
    out.flush()?;
    fs::write(calibration_path(path), calibration.to_text())?;
    Ok(())
}

fn load_model(path: &Path) -> Result<(PooledModel, Calibration)> {
    let model = read_model(BufReader::new(File::open(path)?))?;
    let cal_path = calibration_path(path);
    let calibration = if cal_path.exists() {
        Calibration::from_text(&fs::read_to_string(cal_path)?)?
    } else {
        log::warn!("no calibration next to {}; speed estimates will be 0", path.display());
        Calibration::new()
    };
    Ok((model, calibration))
}

fn load_session(path: &Path, mode: EfficacyMode) -> Result<Session> {
    let (model, calibration) = load_model(path)?;
    Ok(Session::from_model(model, calibration, mode))
}

fn emit_report(args: &ReportArgs, session: &Session, phases: Vec<PhaseReport>) -> Result<()> {
    let report = SessionReport {
        efficacy_mode: session.mode(),
        pooling: session.pooling().to_string(),
        phases,
    };
    emit(args.out.as_deref(), &report.to_json())
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
