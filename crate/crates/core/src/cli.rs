//! The `ctree` command line.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 axiom failure,
//! 3 update or intervention error, 4 check failure.

use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::events::Event;
use crate::interventions::intervene;
use crate::oracle::{check_document, run_random};
use crate::parser::{parse_unchecked, to_dot, CtreeDocument};
use crate::random_vars::BeliefState;
use crate::tree::{format_prob, validate_axioms};

pub const EXIT_PARSE: i32 = 1;
pub const EXIT_AXIOMS: i32 = 2;
pub const EXIT_UPDATE: i32 = 3;
pub const EXIT_CHECK: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ctree", version, about = "Causal probability trees with exact interventions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a document and check the realisation and measure axioms.
    Validate { file: PathBuf },
    /// Run observe/act/posterior steps against a document.
    Query {
        file: PathBuf,
        /// Steps separated by `;` or newlines.
        #[arg(long, conflicts_with = "script_file")]
        script: Option<String>,
        #[arg(long, value_name = "PATH")]
        script_file: Option<PathBuf>,
    },
    /// Print the tree as Graphviz DOT.
    Dot {
        file: PathBuf,
        /// Show the intervention on `VAR=VALUE` and highlight its event.
        #[arg(long, value_name = "VAR=VALUE", conflicts_with = "event")]
        intervene: Option<String>,
        /// Show the intervention on a named event and highlight it.
        #[arg(long, value_name = "NAME")]
        event: Option<String>,
    },
    /// Run the brute-force checks on a document or on random instances.
    Check {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        file: Option<PathBuf>,
        /// Number of random (space, event) instances.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, value_name = "S", default_value_t = 0)]
        seed: u64,
    },
}

/// What a command printed and how it exited.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Output {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Runs the command line `args`, program name first.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::fail(EXIT_PARSE, text)
            } else {
                Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Query {
            file,
            script,
            script_file,
        } => query(&file, script, script_file),
        Command::Dot { file, intervene, event } => dot(&file, intervene, event),
        Command::Check { file, random, seed } => match (file, random) {
            (Some(f), _) => check_file(&f),
            (None, Some(n)) => Ok(check_random(n, seed)),
            (None, None) => Err(Output::fail(EXIT_PARSE, "give a file or --random N")),
        },
    };
    result.unwrap_or_else(|e| e)
}

fn load(file: &PathBuf) -> Result<CtreeDocument, Output> {
    let text =
        std::fs::read_to_string(file).map_err(|e| Output::fail(EXIT_PARSE, format!("{}: {e}", file.display())))?;
    parse_unchecked(&text).map_err(|e| Output::fail(EXIT_PARSE, format!("{}: {e}", file.display())))
}

/// Loads and insists on all axioms.
fn load_valid(file: &PathBuf) -> Result<CtreeDocument, Output> {
    let doc = load(file)?;
    let report = validate_axioms(&doc.space);
    if !report.all_pass() {
        let mut out = Output::fail(EXIT_AXIOMS, format!("{}: axioms violated", file.display()));
        out.stdout = report.to_string();
        return Err(out);
    }
    Ok(doc)
}

fn validate(file: &PathBuf) -> Result<Output, Output> {
    let doc = load(file)?;
    let report = validate_axioms(&doc.space);
    let code = if report.all_pass() { 0 } else { EXIT_AXIOMS };
    let stderr = match report.failures().next() {
        Some((axiom, e)) => format!("{}: {axiom}: {e}\n", file.display()),
        None => String::new(),
    };
    Ok(Output {
        code,
        stdout: report.to_string(),
        stderr,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Step {
    Observe(String, String),
    Act(String, String),
    Posterior(String),
    Marginal(String),
    LeafMass,
}

fn parse_step(text: &str) -> Result<Step, String> {
    let mut words = text.split_whitespace();
    let cmd = words.next().unwrap_or_default();
    let arg = words.next();
    if words.next().is_some() {
        return Err("too many arguments".into());
    }
    let assignment = |a: Option<&str>| -> Result<(String, String), String> {
        let a = a.ok_or("expected VAR=VALUE")?;
        match a.split_once('=') {
            Some((v, x)) if !v.is_empty() && !x.is_empty() => Ok((v.to_string(), x.to_string())),
            _ => Err(format!("expected VAR=VALUE, found `{a}`")),
        }
    };
    let var = |a: Option<&str>| a.map(str::to_string).ok_or_else(|| "expected a variable".to_string());
    match cmd {
        "observe" => assignment(arg).map(|(v, x)| Step::Observe(v, x)),
        "act" => assignment(arg).map(|(v, x)| Step::Act(v, x)),
        "posterior" => var(arg).map(Step::Posterior),
        "marginal" => var(arg).map(Step::Marginal),
        "leafmass" if arg.is_none() => Ok(Step::LeafMass),
        "leafmass" => Err("`leafmass` takes no argument".into()),
        other => Err(format!("unknown step `{other}`")),
    }
}

/// Steps with their source text, checked against the document's variables.
fn parse_script(doc: &CtreeDocument, script: &str) -> Result<Vec<(String, Step)>, String> {
    let mut steps = Vec::new();
    for (i, text) in script
        .split([';', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .enumerate()
    {
        let step = parse_step(text).map_err(|e| format!("step {}: {e}", i + 1))?;
        let (var, value) = match &step {
            Step::Observe(v, x) | Step::Act(v, x) => (Some(v), Some(x)),
            Step::Posterior(v) | Step::Marginal(v) => (Some(v), None),
            Step::LeafMass => (None, None),
        };
        if let Some(v) = var {
            let rv = doc
                .variable(v)
                .ok_or_else(|| format!("step {}: unknown variable `{v}`", i + 1))?;
            if let Some(x) = value {
                if !rv.codomain().contains(x) {
                    return Err(format!("step {}: variable `{v}` has no value `{x}`", i + 1));
                }
            }
        }
        steps.push((text.to_string(), step));
    }
    Ok(steps)
}

fn query(file: &PathBuf, script: Option<String>, script_file: Option<PathBuf>) -> Result<Output, Output> {
    let doc = load_valid(file)?;
    let script = match (script, script_file) {
        (Some(s), _) => s,
        (None, Some(p)) => {
            std::fs::read_to_string(&p).map_err(|e| Output::fail(EXIT_PARSE, format!("{}: {e}", p.display())))?
        }
        (None, None) => String::new(),
    };
    let stdout = run_script(&doc, &script).map_err(|e| Output::fail(e.code, e.message))?;
    Ok(Output {
        code: 0,
        stdout,
        stderr: String::new(),
    })
}

/// A script that could not be read or run; `code` is the CLI exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptError {
    pub code: i32,
    pub message: String,
}

/// Runs `observe`/`act`/`posterior`/`marginal`/`leafmass` steps against a
/// document whose space satisfies the axioms, returning what they print.
pub fn run_script(doc: &CtreeDocument, script: &str) -> Result<String, ScriptError> {
    let steps = parse_script(doc, script).map_err(|message| ScriptError {
        code: EXIT_PARSE,
        message,
    })?;
    let mut belief = BeliefState::new(doc.space.clone());
    let mut out = String::new();
    for (i, (text, step)) in steps.iter().enumerate() {
        let var = |name: &str| doc.variable(name).expect("checked by parse_script");
        let fail = |e: crate::Error| ScriptError {
            code: EXIT_UPDATE,
            message: format!("step {} (`{text}`): {e}", i + 1),
        };
        match step {
            Step::Observe(v, x) => belief = belief.observe(var(v), x).map_err(fail)?,
            Step::Act(v, x) => belief = belief.act(var(v), x).map_err(fail)?,
            Step::Posterior(v) => out.push_str(&belief.posterior(var(v)).map_err(fail)?.to_string()),
            Step::Marginal(v) => out.push_str(&belief.marginal(var(v)).map_err(fail)?.to_string()),
            Step::LeafMass => {
                for (leaf, m) in belief.leaf_masses().map_err(fail)? {
                    writeln!(out, "leafmass {} {}", doc.space.name(leaf), format_prob(&m)).unwrap();
                }
            }
        }
    }
    Ok(out)
}

fn dot(file: &PathBuf, intervention: Option<String>, event: Option<String>) -> Result<Output, Output> {
    let doc = load_valid(file)?;
    let target: Option<Event> = match (intervention, event) {
        (Some(spec), _) => {
            let (v, x) = spec
                .split_once('=')
                .ok_or_else(|| Output::fail(EXIT_PARSE, format!("expected VAR=VALUE, found `{spec}`")))?;
            let rv = doc
                .variable(v)
                .ok_or_else(|| Output::fail(EXIT_PARSE, format!("unknown variable `{v}`")))?;
            Some(
                rv.preimage(&doc.space, x)
                    .map_err(|e| Output::fail(EXIT_PARSE, e.to_string()))?,
            )
        }
        (None, Some(name)) => Some(
            doc.event(&name)
                .cloned()
                .ok_or_else(|| Output::fail(EXIT_PARSE, format!("unknown event `{name}`")))?,
        ),
        (None, None) => None,
    };
    let result = match &target {
        Some(a) => Some(intervene(&doc.space, a).map_err(|e| Output::fail(EXIT_UPDATE, e.to_string()))?),
        None => None,
    };
    Ok(Output {
        code: 0,
        stdout: to_dot(&doc.space, result.as_ref(), target.as_ref()),
        stderr: String::new(),
    })
}

fn check_file(file: &PathBuf) -> Result<Output, Output> {
    let doc = load_valid(file)?;
    let reports = check_document(&doc);
    let mut stdout = String::new();
    for r in &reports {
        writeln!(stdout, "{r}").unwrap();
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    Ok(Output {
        code: if failed == 0 { 0 } else { EXIT_CHECK },
        stdout,
        stderr: if failed == 0 {
            String::new()
        } else {
            format!("{failed} check(s) failed\n")
        },
    })
}

fn check_random(n: usize, seed: u64) -> Output {
    let run = run_random(n, seed);
    let mut stdout = format!(
        "seed {}: {} instances, {} with a defined intervention, {} failures\n",
        run.seed,
        run.instances,
        run.defined,
        run.failures.len()
    );
    for (i, r) in &run.failures {
        writeln!(stdout, "instance {i}: {r}").unwrap();
    }
    Output {
        code: if run.failures.is_empty() { 0 } else { EXIT_CHECK },
        stdout,
        stderr: String::new(),
    }
}
