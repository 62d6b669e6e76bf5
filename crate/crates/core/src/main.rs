use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use formwidth::cli::registry::{self, RunConfig, Verdict};
use formwidth::cli::{parse_letters, parse_word, render, render_formation};
use formwidth::extremal::{self, ExError, ExQuery, SearchConfig};
use formwidth::formation::{self, FlConfig, Formation, FwConfig, FwOutcome};
use formwidth::word::{self, Construction, Permutation, Word};
use formwidth::{metrics, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "formwidth",
    version,
    about = "Formation width and related extremal quantities"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads; more than one enables the parallel search paths.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Formation width of a word.
    Fw {
        word: String,
        #[arg(long, default_value_t = formation::DEFAULT_S_MAX)]
        s_max: usize,
    },
    /// Least binary (r, s)-formation avoiding the word, if any.
    FwWitness {
        word: String,
        #[arg(long)]
        s: usize,
    },
    /// Formation length by exhaustive enumeration.
    Fl {
        word: String,
        #[arg(long, default_value_t = 8)]
        r_max: usize,
        #[arg(long, default_value_t = formation::DEFAULT_S_MAX)]
        s_max: usize,
        #[arg(long, default_value_t = formation::DEFAULT_FL_BUDGET)]
        budget: u128,
    },
    /// Least k such that up(c, k) contains the word.
    L { word: String },
    /// Least k such that alt(c, k) contains the word.
    R { word: String },
    /// Closed-form l, r and width bounds for a binary formation, e.g. "c=3;e=1,1,1".
    Bounds { spec: String },
    /// Whether TEXT contains PATTERN.
    Contains { text: String, pattern: String },
    /// Sparsity and reducedness of a word.
    Sparse {
        word: String,
        #[arg(long)]
        r: usize,
    },
    /// Build a named sequence or formation.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Exhaustive Ex_c(u, n).
    Ex {
        pattern: String,
        #[arg(long)]
        n: usize,
        /// Defaults to the pattern's number of distinct letters.
        #[arg(long)]
        sparsity: Option<usize>,
        #[arg(long, default_value_t = extremal::DEFAULT_LENGTH_CAP)]
        length_cap: usize,
        #[arg(long, default_value_t = extremal::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Check Ex_d(u,n) <= Ex_c(u,n) <= (1 + Ex_c(u,d-1)) Ex_d(u,n).
    Klazar {
        word: String,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Run the registry of exact values.
    Verify {
        /// Glob over case ids, e.g. "fw/up/*".
        #[arg(long)]
        filter: Option<String>,
        /// Manifest to run instead of the built-in one.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 24)]
        s_max: usize,
        #[arg(long, default_value_t = extremal::DEFAULT_LENGTH_CAP)]
        length_cap: usize,
        #[arg(long, default_value_t = extremal::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// I_c
    I {
        c: usize,
    },
    /// D_c
    D {
        c: usize,
    },
    /// I_pi for a permutation written in any word grammar.
    IPi {
        pi: String,
    },
    /// D_pi
    DPi {
        pi: String,
    },
    Up {
        l: usize,
        t: usize,
    },
    Alt {
        l: usize,
        t: usize,
    },
    /// Iterated k-swap formation avoiding every binary (r, s)-formation.
    EsAvoider {
        r: usize,
        s: usize,
    },
    /// T_k over c letters.
    AltAvoider {
        c: usize,
        k: usize,
    },
    /// f(u) for a two-letter word.
    TwoLetterAvoider {
        word: String,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Exhausted { .. } | Error::Infeasible(_) => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ExError> for Failure {
    fn from(e: ExError) -> Self {
        match e {
            ExError::Query(inner) => inner.into(),
            other => Failure::Budget(other.to_string()),
        }
    }
}

fn permutation(text: &str) -> Result<Permutation, Failure> {
    let raw = parse_letters(text)?;
    let min = raw.iter().copied().min().unwrap_or(0);
    Ok(Permutation::new(
        raw.into_iter().map(|x| x - min).collect(),
    )?)
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn emit_formation(json: bool, f: &Formation) {
    emit(
        json,
        json!({ "r": f.r(), "s": f.s(), "rows": f }),
        render_formation(f),
    );
}

fn emit_word(json: bool, w: &Word) {
    let text = w
        .letters()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    emit(json, json!({ "word": w }), text);
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let json = cli.json;
    let parallel = cli.threads > 1;
    match cli.command {
        Command::Fw { word, s_max } => {
            let u = parse_word(&word)?;
            match formation::fw_with(&u, &FwConfig { s_max, parallel }) {
                FwOutcome::Width(s) => {
                    emit(json, json!({ "word": render(&u), "fw": s }), s.to_string());
                    Ok(0)
                }
                FwOutcome::Exhausted(limit) => {
                    emit(
                        json,
                        json!({ "word": render(&u), "exhausted": limit }),
                        format!("exhausted: every s <= {limit} has an avoiding binary formation"),
                    );
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::FwWitness { word, s } => {
            let u = parse_word(&word)?;
            match formation::fw_witness(&u, s)? {
                Some(f) => emit_formation(json, &f),
                None => emit(json, json!(null), "none".into()),
            }
            Ok(0)
        }
        Command::Fl {
            word,
            r_max,
            s_max,
            budget,
        } => {
            let u = parse_word(&word)?;
            let fl = formation::fl_with(
                &u,
                &FlConfig {
                    r_max,
                    s_max,
                    budget,
                },
            )?;
            emit(
                json,
                json!({ "word": render(&u), "fl": fl }),
                fl.to_string(),
            );
            Ok(0)
        }
        Command::L { word } => {
            let u = parse_word(&word)?;
            let l = metrics::l_metric(&u);
            emit(json, json!({ "word": render(&u), "l": l }), l.to_string());
            Ok(0)
        }
        Command::R { word } => {
            let u = parse_word(&word)?;
            let r = metrics::r_metric(&u);
            emit(json, json!({ "word": render(&u), "r": r }), r.to_string());
            Ok(0)
        }
        Command::Bounds { spec } => {
            let spec: metrics::BinaryFormationSpec = spec.parse()?;
            let b = metrics::binary_closed_forms(&spec);
            emit(
                json,
                json!({ "spec": spec, "bounds": b }),
                format!(
                    "l={} r={} fw in [{}, {}] r>l={}",
                    b.l_value, b.r_value, b.fw_lower, b.fw_upper, b.r_exceeds_l
                ),
            );
            Ok(0)
        }
        Command::Contains { text, pattern } => {
            let found = word::contains(&parse_word(&text)?, &parse_word(&pattern)?);
            emit(json, json!({ "contains": found }), found.to_string());
            Ok(0)
        }
        Command::Sparse { word, r } => {
            let u = parse_word(&word)?;
            let (sparse, reduced) = (word::is_r_sparse(&u, r), word::is_reduced(&u));
            emit(
                json,
                json!({ "word": render(&u), "r": r, "sparse": sparse, "reduced": reduced }),
                format!("sparse={sparse} reduced={reduced}"),
            );
            Ok(0)
        }
        Command::Construct { what } => {
            match what {
                ConstructCmd::I { c } => {
                    emit_word(json, &word::construct(&Construction::Increasing(c))?)
                }
                ConstructCmd::D { c } => {
                    emit_word(json, &word::construct(&Construction::Decreasing(c))?)
                }
                ConstructCmd::IPi { pi } => emit_word(
                    json,
                    &word::construct(&Construction::IncreasingPi(permutation(&pi)?))?,
                ),
                ConstructCmd::DPi { pi } => emit_word(
                    json,
                    &word::construct(&Construction::DecreasingPi(permutation(&pi)?))?,
                ),
                ConstructCmd::Up { l, t } => {
                    emit_word(json, &word::construct(&Construction::Up { l, t })?)
                }
                ConstructCmd::Alt { l, t } => {
                    emit_word(json, &word::construct(&Construction::Alt { l, t })?)
                }
                ConstructCmd::EsAvoider { r, s } => {
                    emit_formation(json, &formation::build_es_avoider(r, s)?)
                }
                ConstructCmd::AltAvoider { c, k } => {
                    emit_formation(json, &formation::build_alt_avoider(c, k)?)
                }
                ConstructCmd::TwoLetterAvoider { word } => emit_formation(
                    json,
                    &formation::build_two_letter_avoider(&parse_word(&word)?)?,
                ),
            }
            Ok(0)
        }
        Command::Ex {
            pattern,
            n,
            sparsity,
            length_cap,
            budget,
        } => {
            let u = parse_word(&pattern)?;
            let sparsity = sparsity.unwrap_or(u.alphabet_size());
            let mut q = ExQuery::with_sparsity(u, n, sparsity)?;
            q.length_cap = length_cap;
            let r = extremal::ex_search(
                &q,
                &SearchConfig {
                    node_budget: budget,
                    parallel,
                },
            )?;
            emit(
                json,
                json!({
                    "pattern": q.pattern,
                    "n": q.n,
                    "sparsity": q.sparsity,
                    "max_length": r.max_length,
                    "witness": r.witness,
                    "nodes_explored": r.nodes_explored,
                }),
                format!(
                    "{} (witness {}, {} nodes)",
                    r.max_length,
                    render(&r.witness),
                    r.nodes_explored
                ),
            );
            Ok(0)
        }
        Command::Klazar { word, c, d, n } => {
            let u = parse_word(&word)?;
            let rep = extremal::check_klazar_inequality(&u, c, d, n)?;
            emit(
                json,
                serde_json::to_value(&rep).expect("report serializes"),
                format!(
                    "Ex_d={} Ex_c={} Ex_c(d-1)={} lower={} upper={}",
                    rep.ex_d, rep.ex_c, rep.ex_c_small, rep.lower_holds, rep.upper_holds
                ),
            );
            Ok(if rep.holds() { 0 } else { EXIT_FAIL })
        }
        Command::Verify {
            filter,
            manifest,
            s_max,
            length_cap,
            budget,
        } => {
            let cases = match manifest {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    registry::parse_manifest(&text)?
                }
                None => registry::builtin_registry(),
            };
            let config = RunConfig {
                s_max,
                length_cap,
                node_budget: budget,
                parallel,
            };
            let report = registry::run_verify(&cases, filter.as_deref(), &config)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                );
            } else {
                for case in &report.cases {
                    println!("{case}");
                }
                println!(
                    "{} passed, {} failed, {} inconclusive",
                    report.count(Verdict::Pass),
                    report.count(Verdict::Fail),
                    report.count(Verdict::Inconclusive)
                );
            }
            Ok(if report.count(Verdict::Fail) > 0 {
                EXIT_FAIL
            } else if report.count(Verdict::Inconclusive) > 0 {
                EXIT_BUDGET
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if cli.threads > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .ok();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exhausted: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}
