//! The `jacstrata` command line. [`run`] does all the work so tests can call
//! it in-process; the binary only forwards `std::env::args` and exits.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jacstrata::{
    certificate_search, filt_equals_kbar_report, flat_limit, oracle_report, strata_dag, stratify,
    Budget, CreateMode, DeformationFamily, EnumFilter, Error, GammaSemimodule, NumericalSemigroup,
};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "jacstrata",
    version,
    about = "Fixed-point combinatorics of compactified Jacobians of monomial curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Args)]
struct Common {
    /// Semigroup generators, e.g. 4,5,6.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    generators: Vec<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Largest power of b in a coefficient.
    #[arg(long = "max-bdeg")]
    max_bdeg: Option<usize>,
    /// Largest number of t-exponents in the family.
    #[arg(long = "max-support")]
    max_support: Option<usize>,
    /// Allowed integer coefficients.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    coefficients: Option<Vec<i64>>,
}

impl BudgetArgs {
    fn resolve(&self, default: Budget) -> Budget {
        Budget {
            max_b_degree: self.max_bdeg.unwrap_or(default.max_b_degree),
            max_support: self.max_support.unwrap_or(default.max_support),
            coefficients: self.coefficients.clone().unwrap_or(default.coefficients),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants, remark checks and curve type of a semigroup.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate semimodules containing the conductor.
    Semimodules {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        codim: Option<usize>,
        /// Only modules containing 0.
        #[arg(long)]
        normalized: bool,
    },
    /// Group normalized semimodules by stratum.
    Stratify {
        #[command(flatten)]
        common: Common,
    },
    /// Flat limit at b = 0 of a one-parameter family of free modules.
    Limit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        family: String,
    },
    /// Search for a family whose flat limit is the given module.
    Closure {
        #[command(flatten)]
        common: Common,
        /// Elements generating the module together with the conductor.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        module: Vec<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Containment graph of strata along the normalization chain.
    Dag {
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force subspace oracle over a small prime field.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        field: u32,
        /// Defaults to the delta invariant.
        #[arg(long)]
        codim: Option<usize>,
    },
    /// Certify every monomial Filt point by a one-parameter family.
    ReportExample2 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Semimodules { .. } => "semimodules",
            Command::Stratify { .. } => "stratify",
            Command::Limit { .. } => "limit",
            Command::Closure { .. } => "closure",
            Command::Dag { .. } => "dag",
            Command::Oracle { .. } => "oracle",
            Command::ReportExample2 { .. } => "report-example2",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Analyze { common }
            | Command::Semimodules { common, .. }
            | Command::Stratify { common }
            | Command::Limit { common, .. }
            | Command::Closure { common, .. }
            | Command::Dag { common }
            | Command::Oracle { common, .. }
            | Command::ReportExample2 { common, .. } => common,
        }
    }
}

/// Exit code and the bytes destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: Vec::new(),
            stderr: msg.into().into_bytes(),
        }
    }

    fn domain(e: &Error) -> Self {
        let doc = json!({ "error": e.code(), "message": e.to_string() });
        Outcome {
            code: EXIT_DOMAIN,
            stdout: Vec::new(),
            stderr: format!("{doc}\n").into_bytes(),
        }
    }
}

enum Rendered {
    Json(Map<String, Value>),
    Dot(String),
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable result")
}

fn object<T: Serialize>(v: &T) -> Map<String, Value> {
    match to_value(v) {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    }
}

fn module_entry(m: &GammaSemimodule) -> Value {
    let mut obj = object(m);
    let ranks = m.ranks();
    obj.insert("codim".into(), json!(ranks.codim));
    obj.insert("r".into(), json!(ranks.r));
    Value::Object(obj)
}

fn execute(cmd: &Command, s: &NumericalSemigroup) -> Result<Rendered, Error> {
    let format = cmd.common().format;
    let out = match cmd {
        Command::Analyze { .. } => {
            let tags = s.classify();
            let chain = s.normalization_chain();
            let mut m = Map::new();
            m.insert("v0".into(), json!(s.conductor()));
            m.insert("delta".into(), json!(s.delta()));
            m.insert("gamma".into(), json!(s.gamma()));
            m.insert("gaps".into(), json!(s.gaps()));
            m.insert(
                "elements_below_v0".into(),
                json!(s.elements_below_conductor()),
            );
            m.insert("multiplicity".into(), json!(s.multiplicity()));
            m.insert("symmetric".into(), json!(s.is_symmetric()));
            m.insert("type".into(), json!(tags.name()));
            m.insert("types".into(), json!(tags.names()));
            m.insert("min_components".into(), json!(s.min_components()));
            m.insert("remarks".into(), to_value(&s.check_remarks()));
            m.insert("condition_0_6".into(), to_value(&s.condition_0_6()));
            let steps: Vec<&[usize]> = chain.steps.iter().map(|g| g.generators()).collect();
            m.insert(
                "normalization_chain".into(),
                json!({ "generators": steps, "deltas": chain.deltas }),
            );
            Rendered::Json(m)
        }
        Command::Semimodules {
            codim, normalized, ..
        } => {
            let filter = EnumFilter {
                codim: *codim,
                normalized: *normalized,
            };
            let mods = GammaSemimodule::enumerate(s, filter);
            let mut m = Map::new();
            m.insert("codim".into(), json!(codim));
            m.insert("normalized".into(), json!(normalized));
            m.insert("count".into(), json!(mods.len()));
            m.insert(
                "semimodules".into(),
                Value::Array(mods.iter().map(module_entry).collect()),
            );
            Rendered::Json(m)
        }
        Command::Stratify { .. } => Rendered::Json(object(&stratify(s))),
        Command::Limit { family, .. } => {
            let fam = DeformationFamily::parse(family, s)?;
            let lim = flat_limit(s, &fam)?;
            let mut m = object(&lim);
            m.insert("family".into(), json!(fam.to_string()));
            m.insert("warnings".into(), json!(fam.warnings()));
            Rendered::Json(m)
        }
        Command::Closure { module, budget, .. } => {
            let target = GammaSemimodule::create(s, module, CreateMode::Generate)?;
            let budget = budget.resolve(Budget::new(3, 3, &[1, -1]));
            let cert = certificate_search(s, &target, &budget)?;
            let verified = match &cert {
                Some(f) => flat_limit(s, f)?.orders == target.below_vec(),
                None => false,
            };
            let mut m = Map::new();
            m.insert("target".into(), to_value(&target));
            m.insert("budget".into(), to_value(&budget));
            m.insert("found".into(), json!(cert.is_some()));
            m.insert("certificate".into(), to_value(&cert));
            m.insert("verified".into(), json!(verified));
            if cert.is_none() {
                m.insert("note".into(), json!("no certificate within budget"));
            }
            Rendered::Json(m)
        }
        Command::Dag { .. } => {
            let dag = strata_dag(s)?;
            if format == Format::Dot {
                Rendered::Dot(dag.to_dot())
            } else {
                Rendered::Json(object(&dag))
            }
        }
        Command::Oracle { field, codim, .. } => {
            let codim = codim.unwrap_or(s.delta());
            let rep = oracle_report(s, *field, codim)?;
            let mut m = object(&rep);
            m.insert("consistent".into(), json!(rep.consistent()));
            Rendered::Json(m)
        }
        Command::ReportExample2 { budget, .. } => {
            let budget = budget.resolve(Budget::report_default());
            let rep = filt_equals_kbar_report(s, &budget);
            let mut m = object(&rep);
            m.insert(
                "note".into(),
                json!("uncertified entries have no certificate within budget"),
            );
            Rendered::Json(m)
        }
    };
    Ok(out)
}

fn text(m: &Map<String, Value>) -> String {
    let mut out = String::new();
    for (k, v) in m {
        let v = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        writeln!(out, "{k}: {v}").unwrap();
    }
    out
}

fn render(cmd: &Command, s: &NumericalSemigroup, r: Rendered) -> String {
    match r {
        Rendered::Dot(d) => d,
        Rendered::Json(body) => {
            let mut doc = Map::new();
            doc.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
            doc.insert("semigroup".into(), json!(s.generators()));
            doc.insert("subcommand".into(), json!(cmd.name()));
            for (k, v) in body {
                doc.entry(k).or_insert(v);
            }
            match cmd.common().format {
                Format::Text => text(&doc),
                _ => {
                    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).unwrap();
                    s.push('\n');
                    s
                }
            }
        }
    }
}

fn threads() -> Result<Option<usize>, String> {
    match std::env::var("JACSTRATA_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!(
                "JACSTRATA_THREADS must be a positive integer, got {v:?}\n"
            )),
        },
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let msg = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: msg.into_bytes(),
                    stderr: Vec::new(),
                }
            } else {
                Outcome::usage(msg)
            };
        }
    };
    let common = cli.command.common();
    if common.format == Format::Dot && !matches!(cli.command, Command::Dag { .. }) {
        return Outcome::usage("--format dot is only available for dag\n");
    }
    let threads = match threads() {
        Ok(t) => t,
        Err(msg) => return Outcome::usage(msg),
    };
    let s = match NumericalSemigroup::from_generators(&common.generators) {
        Ok(s) => s,
        Err(e) => return Outcome::domain(&e),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().expect("thread pool");
    let result = pool.install(|| execute(&cli.command, &s));
    let body = match result {
        Ok(r) => render(&cli.command, &s, r),
        Err(e) => return Outcome::domain(&e),
    };
    if let Some(path) = &common.output {
        if let Err(e) = std::fs::write(path, &body) {
            return Outcome {
                code: EXIT_DOMAIN,
                stdout: Vec::new(),
                stderr: format!(
                    "{}\n",
                    json!({ "error": "Io", "message": format!("{}: {e}", path.display()) })
                )
                .into_bytes(),
            };
        }
        return Outcome {
            code: EXIT_OK,
            stdout: Vec::new(),
            stderr: Vec::new(),
        };
    }
    Outcome {
        code: EXIT_OK,
        stdout: body.into_bytes(),
        stderr: Vec::new(),
    }
}
