use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ratpark::action::{construct_fixed_point_general, find_fixed_point, separated_offsets};
use ratpark::affine::mn_swap_dominant;
use ratpark::serial::Json;
use ratpark::sweep::{sweep, sweep_inverse};
use ratpark::tuple::{self, map_b_inverse_by_search, qt_table, zeta, zeta_inverse};
use ratpark::verify::{verify_all, verify_fixtures, verify_shape};
use ratpark::word::{enumerate_words, parking_words};
use ratpark::{
    AffinePermutation, Error, Filter, LabeledPath, OrbitOutcome, Point, SolverConfig, StatDomain, Word, WordKind,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const BUDGET_VAR: &str = "RATPARK_MAX_ITER";

#[derive(Parser)]
#[command(name = "ratpark", version, about = "Rational (m,n)-parking combinatorics")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Shape {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct WordArg {
    #[command(flatten)]
    shape: Shape,
    /// Digits for m <= 10, comma-separated letters otherwise.
    #[arg(long)]
    word: String,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DyckInput {
    /// Boundary path over {N, W}.
    #[arg(long)]
    path: Option<String>,
    /// Comma-separated row minima of a Dyck filter.
    #[arg(long, allow_hyphen_values = true)]
    minima: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Over {
    Parking,
    Dyck,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the parking words of a shape.
    Enumerate {
        #[command(flatten)]
        shape: Shape,
        /// Only weakly increasing words.
        #[arg(long)]
        dyck: bool,
    },
    /// Report whether a word has no, one, or infinitely many fixed points.
    Classify(WordArg),
    /// Iterate a word to its fixed point.
    FixedPoint {
        #[command(flatten)]
        input: WordArg,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Map an A-word to the corresponding B-word.
    Zeta(WordArg),
    /// Map a B-word back to its A-word.
    ZetaInv {
        #[command(flatten)]
        input: WordArg,
        /// Cross-check the solver against exhaustive search.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Apply the sweep map to a Dyck path.
    Sweep {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        input: DyckInput,
    },
    /// Recover the Dyck path whose sweep is the given one.
    SweepInv {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        input: DyckInput,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Area and dinv of a word, or their distributions over a shape.
    Stats {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        word: Option<String>,
    },
    /// Joint area/dinv counts.
    QtTable {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value = "parking")]
        over: Over,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Labelings and tests for an affine permutation window.
    Affine {
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        action: AffineAction,
    },
    /// Run the regression fixtures and property suites.
    Verify {
        #[arg(long, requires = "n")]
        m: Option<usize>,
        #[arg(long, requires = "m")]
        n: Option<usize>,
        /// Only the stored worked examples.
        #[arg(long, alias = "paper", conflicts_with = "m")]
        fixtures: bool,
        /// Random point pairs per shape in the contraction suite.
        #[arg(long, default_value_t = 10_000)]
        pairs: usize,
        /// Include per-suite timings (breaks byte-stable output).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct AffineAction {
    #[arg(long)]
    pak_stanley: bool,
    #[arg(long)]
    anderson: bool,
    #[arg(long)]
    sommers_check: bool,
    #[arg(long)]
    swap: bool,
}

enum Failure {
    Usage(String),
    Internal(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInconsistency(_) | Error::IterationBudgetExhausted { .. } => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn parse_word(input: &WordArg) -> Result<Word, Failure> {
    let word = Word::parse(input.shape.m, &input.word)?;
    if word.n() != input.shape.n {
        return Err(Failure::Usage(format!("expected {} letters, found {}", input.shape.n, word.n())));
    }
    Ok(word)
}

fn parse_ints(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|x| x.trim().parse().map_err(|_| Failure::Usage(format!("`{x}` is not an integer"))))
        .collect()
}

fn solver_config(max_iter: Option<usize>) -> Result<SolverConfig, Failure> {
    let from_env = match std::env::var(BUDGET_VAR) {
        Ok(v) => Some(v.parse().map_err(|_| Failure::Usage(format!("{BUDGET_VAR}={v} is not a count")))?),
        Err(_) => None,
    };
    Ok(SolverConfig { max_iterations: max_iter.or(from_env) })
}

fn dyck_filter(shape: Shape, input: &DyckInput) -> Result<Filter, Failure> {
    let filter = match (&input.path, &input.minima) {
        (Some(p), _) => LabeledPath::parse(shape.m, shape.n, p)?.to_filter()?,
        (None, Some(v)) => Filter::new(shape.m, shape.n, &parse_ints(v)?)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    if !filter.is_dyck() {
        return Err(Failure::Usage(format!("{:?} is not a Dyck filter", filter.row_minima())));
    }
    Ok(filter)
}

fn joined(values: &[i64]) -> String {
    values.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn show_point(p: &Point) -> String {
    if p.is_integral() {
        format!("[{}]", joined(p.coords()))
    } else {
        format!("[{}]/{}", joined(p.coords()), p.denominator())
    }
}

fn lines(json: bool, value: Value, text: String) -> String {
    if json {
        format!("{value}\n")
    } else {
        format!("{text}\n")
    }
}

fn run(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Enumerate { shape, dyck } => {
            let kind = if *dyck { WordKind::Dyck } else { WordKind::Parking };
            let words: Vec<Word> = enumerate_words(shape.m, shape.n, kind).collect();
            let value = Value::Array(words.iter().map(|w| json!(w.to_string())).collect());
            let text = words.iter().map(Word::to_string).collect::<Vec<_>>().join("\n");
            Ok(lines(json, value, text))
        }
        Command::Classify(input) => {
            let word = parse_word(input)?;
            let class = word.classify().as_str();
            Ok(lines(json, json!({ "word": word.to_json(), "classification": class }), class.to_string()))
        }
        Command::FixedPoint { input, max_iter } => fixed_point(&parse_word(input)?, solver_config(*max_iter)?, json),
        Command::Zeta(input) => {
            let image = zeta(&parse_word(input)?)?;
            Ok(lines(json, image.to_json(), image.to_string()))
        }
        Command::ZetaInv { input, oracle, max_iter } => {
            let word = parse_word(input)?;
            let image = zeta_inverse(&word, solver_config(*max_iter)?)?;
            if *oracle {
                let searched = map_b_inverse_by_search(&word)?.map_a();
                if searched != image {
                    return Err(Failure::Internal(format!("solver gives {image}, search gives {searched}")));
                }
            }
            Ok(lines(json, image.to_json(), image.to_string()))
        }
        Command::Sweep { shape, input } => {
            let swept = sweep(&dyck_filter(*shape, input)?)?;
            let path = swept.to_path()?;
            let value = json!({
                "path": path.to_string(),
                "levels": path.levels(),
                "filter": swept.to_json(),
            });
            let text = format!("{path}\nlevels {}\nrow minima {}", joined(path.levels()), joined(&swept.row_minima()));
            Ok(lines(json, value, text))
        }
        Command::SweepInv { shape, input, max_iter } => {
            let pre = sweep_inverse(&dyck_filter(*shape, input)?, solver_config(*max_iter)?)?;
            let path = pre.filter.to_path()?;
            let value = json!({
                "path": path.to_string(),
                "levels": path.levels(),
                "filter": pre.filter.to_json(),
                "vertical_levels": pre.vertical_levels,
                "horizontal_levels": pre.horizontal_levels,
            });
            let text = format!(
                "{path}\nlevels {}\nrow minima {}\nvertical levels {}\nhorizontal levels {}",
                joined(path.levels()),
                joined(&pre.filter.row_minima()),
                joined(&pre.vertical_levels),
                joined(&pre.horizontal_levels)
            );
            Ok(lines(json, value, text))
        }
        Command::Stats { shape, word } => stats(*shape, word.as_deref(), json),
        Command::QtTable { shape, over, format } => {
            let domain = match over {
                Over::Parking => StatDomain::ParkingWords,
                Over::Dyck => StatDomain::DyckWords,
            };
            let table = qt_table(shape.m, shape.n, domain)?;
            Ok(match format {
                TableFormat::Csv if !json => table.to_csv(),
                _ => format!("{}\n", table.to_json()),
            })
        }
        Command::Affine { window, m, action } => {
            let w = AffinePermutation::new(parse_ints(window)?)?;
            if action.sommers_check {
                let inside = w.in_sommers(*m)?;
                Ok(lines(json, json!(inside), inside.to_string()))
            } else if action.swap {
                let swapped = mn_swap_dominant(&w, *m)?;
                Ok(lines(json, swapped.to_json(), swapped.to_string()))
            } else {
                let label = if action.anderson { w.anderson(*m)? } else { w.pak_stanley(*m)? };
                Ok(lines(json, label.to_json(), label.to_string()))
            }
        }
        Command::Verify { m, n, fixtures, pairs, timings } => {
            let report = match (m, n) {
                (Some(m), Some(n)) => verify_shape(*m, *n, *pairs),
                _ if *fixtures => verify_fixtures(),
                _ => verify_all(*pairs),
            };
            let out = if json {
                format!("{}\n", report.to_json(*timings))
            } else {
                report.render_text(*timings)
            };
            if report.ok() {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
    }
}

fn fixed_point(word: &Word, config: SolverConfig, json: bool) -> Outcome {
    let report = find_fixed_point(word, config)?;
    let point = match report.outcome {
        OrbitOutcome::Fixed(p) => Some(p),
        // Shapes with a common factor can have a parking word whose orbit
        // from the staircase never settles; build a witness instead.
        OrbitOutcome::Cycle { .. } if word.is_parking() => {
            Some(construct_fixed_point_general(word, &separated_offsets(word)?)?)
        }
        _ => None,
    };
    Ok(match point {
        Some(p) => lines(json, p.to_json(), show_point(&p)),
        None => {
            let class = word.classify().as_str();
            lines(json, json!({ "fixed_point": null, "classification": class }), class.to_string())
        }
    })
}

fn stats(shape: Shape, word: Option<&str>, json: bool) -> Outcome {
    if let Some(text) = word {
        let word = parse_word(&WordArg { shape, word: text.to_string() })?;
        let (area, dinv) = (tuple::area(&word)?, tuple::dinv(&word)?);
        return Ok(lines(json, json!({ "area": area, "dinv": dinv }), format!("area {area}\ndinv {dinv}")));
    }
    let mut counts: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
    for w in parking_words(shape.m, shape.n) {
        counts.entry(tuple::area(&w)?).or_default().0 += 1;
        counts.entry(tuple::dinv(&w)?).or_default().1 += 1;
    }
    let value = json!({
        "area": counts.iter().map(|(k, c)| (k.to_string(), c.0)).collect::<BTreeMap<_, _>>(),
        "dinv": counts.iter().map(|(k, c)| (k.to_string(), c.1)).collect::<BTreeMap<_, _>>(),
    });
    let mut text = String::from("value area dinv");
    for (k, (a, d)) in &counts {
        text.push_str(&format!("\n{k} {a} {d}"));
    }
    Ok(lines(json, value, text))
}
