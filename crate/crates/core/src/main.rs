use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hexlab::error::{Error, Result, EXIT_SUCCESS};
use hexlab::formats::{self, fmt_sig, to_json, write_output};
use hexlab::hexagram::ShaoYongConvention;
use hexlab::metrics::SurpriseModel;
use hexlab::report::{self, AnalysisConfig, CompareConfig, OrderingName, SeriesKind};
use hexlab::schedules::{self, ModulationSchedule, ProfileSource, Strategy};
use hexlab::seedsweep;
use hexlab::stattests::{self, Centering, TestKind};

#[derive(Parser)]
#[command(
    name = "hexlab",
    version,
    about = "Statistics and schedule artifacts for hexagram orderings"
)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Master seed for every random stream.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Worker threads for sampling stages (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderingArg {
    Kingwen,
    Shaoyong,
    Binary,
}

impl From<OrderingArg> for OrderingName {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::Kingwen => OrderingName::Kingwen,
            OrderingArg::Shaoyong => OrderingName::Shaoyong,
            OrderingArg::Binary => OrderingName::Binary,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Reversed,
    Direct,
}

impl From<ConventionArg> for ShaoYongConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Reversed => ShaoYongConvention::Reversed,
            ConventionArg::Direct => ShaoYongConvention::Direct,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Surprise,
    Hamming,
}

impl From<SeriesArg> for SeriesKind {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::Surprise => SeriesKind::Surprise,
            SeriesArg::Hamming => SeriesKind::Hamming,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CenterArg {
    Mean,
    Median,
}

impl From<CenterArg> for Centering {
    fn from(c: CenterArg) -> Self {
        match c {
            CenterArg::Mean => Centering::Mean,
            CenterArg::Median => Centering::Median,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Kingwen,
    Shaoyong,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Sequential,
    Random,
    EasyToHard,
    HardToEasy,
    Kingwen,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Diversity,
    Compression,
}

#[derive(Args)]
struct ModelArg {
    /// `default` or a JSON file with line_weights, change_score, nuclear_weight.
    #[arg(long, default_value = "default")]
    model: String,
}

impl ModelArg {
    fn load(&self) -> Result<SurpriseModel> {
        if self.model == "default" {
            return Ok(SurpriseModel::default());
        }
        let path = Path::new(&self.model);
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::validation(format!("invalid model file {}: {e}", path.display())))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hexagram tables.
    Hexagrams {
        #[command(subcommand)]
        action: HexagramsCmd,
    },
    /// Per-transition surprise.
    Surprise {
        #[command(subcommand)]
        action: SurpriseCmd,
    },
    /// Full statistical characterization.
    Analyze {
        #[command(subcommand)]
        action: AnalyzeCmd,
    },
    /// Pairwise hypothesis tests between orderings.
    Compare(CompareArgs),
    /// Learning-rate modulation schedules.
    Schedule {
        #[command(subcommand)]
        action: ScheduleCmd,
    },
    /// Curriculum batch orderings.
    Curriculum {
        #[command(subcommand)]
        action: CurriculumCmd,
    },
    /// Difficulty score of one batch file.
    Difficulty {
        #[arg(long, value_enum)]
        metric: MetricArg,
        #[arg(long)]
        input: PathBuf,
    },
    /// Seed-sweep noise floor.
    Seeds {
        #[command(subcommand)]
        action: SeedsCmd,
    },
    /// Ljung–Box test on a one-value-per-line series.
    LjungBox {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        lags: usize,
    },
}

#[derive(Subcommand)]
enum HexagramsCmd {
    Dump {
        #[arg(long, value_enum, default_value = "kingwen")]
        ordering: OrderingArg,
        #[arg(long, value_enum, default_value = "reversed")]
        convention: ConventionArg,
    },
}

#[derive(Subcommand)]
enum SurpriseCmd {
    Profile {
        #[arg(long, value_enum, default_value = "kingwen")]
        ordering: OrderingArg,
        #[arg(long, value_enum, default_value = "reversed")]
        convention: ConventionArg,
        #[command(flatten)]
        model: ModelArg,
    },
}

#[derive(Subcommand)]
enum AnalyzeCmd {
    Ordering {
        #[arg(long, value_enum, default_value = "kingwen")]
        name: OrderingArg,
        #[arg(long, value_enum, default_value = "reversed")]
        convention: ConventionArg,
        #[arg(long, default_value_t = 100_000)]
        mc_samples: usize,
        #[arg(long, default_value_t = 1000)]
        random_baseline: usize,
        #[arg(long, value_enum, default_value = "surprise")]
        series: SeriesArg,
        #[arg(long, default_value_t = 5)]
        lags: usize,
        #[arg(long, value_enum, default_value = "mean")]
        levene_center: CenterArg,
        /// Also write the per-ordering summary table as CSV.
        #[arg(long)]
        table_csv: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArg,
    },
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, value_delimiter = ',', default_value = "kingwen,binary,shaoyong")]
    orderings: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    random_baseline: usize,
    #[arg(long, value_delimiter = ',', default_value = "ks,levene,ljungbox")]
    tests: Vec<String>,
    #[arg(long, value_enum, default_value = "reversed")]
    convention: ConventionArg,
    #[arg(long, value_enum, default_value = "surprise")]
    series: SeriesArg,
    #[arg(long, default_value_t = 5)]
    lags: usize,
    #[arg(long, value_enum, default_value = "mean")]
    levene_center: CenterArg,
    #[command(flatten)]
    model: ModelArg,
}

#[derive(Subcommand)]
enum ScheduleCmd {
    Lr {
        #[arg(long, value_enum)]
        profile: ProfileArg,
        #[arg(long)]
        amplitude: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "reversed")]
        convention: ConventionArg,
        #[command(flatten)]
        model: ModelArg,
    },
}

#[derive(Subcommand)]
enum CurriculumCmd {
    Map {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[command(flatten)]
        model: ModelArg,
    },
}

#[derive(Subcommand)]
enum SeedsCmd {
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        candidate: Option<f64>,
    },
}

fn emit(
    global: &Global,
    default: Format,
    json: impl FnOnce() -> Result<String>,
    csv: impl FnOnce() -> Result<String>,
) -> Result<()> {
    let text = match global.format.unwrap_or(default) {
        Format::Json => json()?,
        Format::Csv => csv()?,
    };
    write_output(global.out.as_deref(), &text)
}

fn json_only<T: Serialize>(global: &Global, value: &T) -> Result<()> {
    if global.format == Some(Format::Csv) {
        return Err(Error::validation("this command only writes JSON"));
    }
    write_output(global.out.as_deref(), &to_json(value)?)
}

#[derive(Serialize)]
struct DumpOutput {
    ordering: String,
    convention: ShaoYongConvention,
    entries: Vec<formats::OrderingEntry>,
}

#[derive(Serialize)]
struct ProfileOutput {
    ordering: String,
    model: SurpriseModel,
    transitions: Vec<formats::TransitionRow>,
}

#[derive(Serialize)]
struct ScheduleOutput {
    schedule: ModulationSchedule,
    steps: usize,
    multipliers: Vec<f64>,
}

#[derive(Serialize)]
struct SeedsOutput {
    summary: seedsweep::SweepSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<seedsweep::EffectVerdict>,
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match cli.command {
        Command::Hexagrams {
            action:
                HexagramsCmd::Dump {
                    ordering,
                    convention,
                },
        } => {
            let ord = OrderingName::from(ordering).build(convention.into());
            emit(
                g,
                Format::Json,
                || {
                    to_json(&DumpOutput {
                        ordering: ord.name().to_owned(),
                        convention: convention.into(),
                        entries: formats::ordering_entries(&ord),
                    })
                },
                || Ok(formats::ordering_csv(&ord)),
            )
        }
        Command::Surprise {
            action:
                SurpriseCmd::Profile {
                    ordering,
                    convention,
                    model,
                },
        } => {
            let model = model.load()?;
            let ord = OrderingName::from(ordering).build(convention.into());
            let rows = formats::transition_rows(&ord, &model);
            emit(
                g,
                Format::Csv,
                || {
                    to_json(&ProfileOutput {
                        ordering: ord.name().to_owned(),
                        model: model.clone(),
                        transitions: formats::transition_rows(&ord, &model),
                    })
                },
                || Ok(formats::transitions_csv(&rows)),
            )
        }
        Command::Analyze {
            action:
                AnalyzeCmd::Ordering {
                    name,
                    convention,
                    mc_samples,
                    random_baseline,
                    series,
                    lags,
                    levene_center,
                    table_csv,
                    model,
                },
        } => {
            let model = model.load()?;
            let config = AnalysisConfig {
                ordering: name.into(),
                convention: convention.into(),
                mc_samples,
                seed: g.seed,
                threads: g.threads,
                random_baseline,
                series: series.into(),
                ljung_box_lags: lags,
                levene_centering: levene_center.into(),
            };
            let rep = report::run_full_analysis(&config, &model)?;
            if let Some(path) = table_csv {
                write_output(Some(&path), &rep.table_csv())?;
            }
            emit(g, Format::Json, || to_json(&rep), || Ok(rep.table_csv()))
        }
        Command::Compare(args) => {
            let model = args.model.load()?;
            let config = CompareConfig {
                orderings: args
                    .orderings
                    .iter()
                    .map(|s| OrderingName::parse(s.trim()))
                    .collect::<Result<_>>()?,
                convention: args.convention.into(),
                random_baseline: args.random_baseline,
                tests: args
                    .tests
                    .iter()
                    .map(|s| s.trim().parse::<TestKind>())
                    .collect::<Result<_>>()?,
                series: args.series.into(),
                ljung_box_lags: args.lags,
                levene_centering: args.levene_center.into(),
                seed: g.seed,
                threads: g.threads,
            };
            let rep = report::compare(&config, &model)?;
            emit(
                g,
                Format::Json,
                || to_json(&rep),
                || {
                    let mut out = String::from("a,b,test,statistic,p_value\n");
                    for p in &rep.pairwise {
                        out.push_str(&format!(
                            "{},{},{},{},{}\n",
                            p.a,
                            p.b,
                            p.result.test,
                            fmt_sig(p.result.statistic, 9),
                            fmt_sig(p.result.p_value, 9)
                        ));
                    }
                    for t in &rep.ljung_box {
                        out.push_str(&format!(
                            "{},,{},{},{}\n",
                            t.ordering,
                            t.result.test,
                            fmt_sig(t.result.statistic, 9),
                            fmt_sig(t.result.p_value, 9)
                        ));
                    }
                    Ok(out)
                },
            )
        }
        Command::Schedule {
            action:
                ScheduleCmd::Lr {
                    profile,
                    amplitude,
                    steps,
                    convention,
                    model,
                },
        } => {
            let model = model.load()?;
            let source = match profile {
                ProfileArg::Kingwen => ProfileSource::Kingwen,
                ProfileArg::Shaoyong => ProfileSource::Shaoyong {
                    convention: convention.into(),
                },
                ProfileArg::Random => ProfileSource::Random { seed: g.seed },
            };
            let schedule = ModulationSchedule::new(source, amplitude, &model)?;
            if schedule.amplitude_warning() {
                eprintln!(
                    "warning: amplitude {amplitude} >= 1 can drive multipliers to zero or below"
                );
            }
            let multipliers = schedule.lr_multipliers(steps)?;
            emit(
                g,
                Format::Csv,
                || {
                    to_json(&ScheduleOutput {
                        schedule: schedule.clone(),
                        steps,
                        multipliers: multipliers.clone(),
                    })
                },
                || Ok(formats::multipliers_csv(&multipliers)),
            )
        }
        Command::Curriculum {
            action:
                CurriculumCmd::Map {
                    scores,
                    strategy,
                    model,
                },
        } => {
            let model = model.load()?;
            let values = formats::read_values(&scores)?;
            let strategy = match strategy {
                StrategyArg::Sequential => Strategy::Sequential,
                StrategyArg::Random => Strategy::Random { seed: g.seed },
                StrategyArg::EasyToHard => Strategy::EasyToHard,
                StrategyArg::HardToEasy => Strategy::HardToEasy,
                StrategyArg::Kingwen => Strategy::Kingwen,
            };
            let mapping = schedules::curriculum_map(&values, strategy, &model)?;
            emit(
                g,
                Format::Csv,
                || to_json(&mapping),
                || Ok(formats::mapping_csv(&mapping)),
            )
        }
        Command::Difficulty { metric, input } => {
            let bytes = formats::read_bytes(&input)?;
            let score = match metric {
                MetricArg::Diversity => {
                    schedules::token_diversity(&schedules::decode_tokens(&bytes)?)?
                }
                MetricArg::Compression => schedules::compression_ratio(&bytes)?,
            };
            emit(
                g,
                Format::Csv,
                || to_json(&score),
                || Ok(format!("{}\n", fmt_sig(score.value, 9))),
            )
        }
        Command::Seeds {
            action: SeedsCmd::Analyze { input, candidate },
        } => {
            let values = formats::read_values(&input)?;
            let summary = seedsweep::summarize(&values)?;
            let verdict = candidate.map(|c| seedsweep::classify_effect(c, &summary));
            json_only(g, &SeedsOutput { summary, verdict })
        }
        Command::LjungBox { input, lags } => {
            let values = formats::read_values(&input)?;
            let result = stattests::ljung_box(&values, lags)?;
            json_only(g, &result)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_SUCCESS as u8),
        Err(e) => {
            eprintln!("hexlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
