//! The `khm` command line, runnable in-process through [`run`].
//!
//! Exit codes: 0 success, 1 negative answer (formula false, no plan,
//! derivation rejected, no countermodel, fuzz failures), 2 usage or input
//! error.

use std::ffi::OsString;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::checker::{
    find_countermodel_within, fuzz_soundness, synthesize, Countermodel, ModelParams, Program,
    SearchBounds, SearchError, DEFAULT_BUDGET,
};
use crate::model::{load_model, Model, Plan};
use crate::proofs::{check_derivation, load_corpus, read_derivation, TheoremDb};
use crate::syntax::{parse, Formula};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Outcome of one invocation: exit code, payload for stdout and
/// diagnostics for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult::with(EXIT_OK, stdout)
    }

    fn with(code: i32, stdout: String) -> Self {
        CommandResult {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        CommandResult {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "khm", version, about = "Knowing-how logic toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Emit a JSON document instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and print it in canonical form.
    Parse {
        /// Formula text, or @FILE to read it from a file.
        formula: String,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate a formula on a model.
    Check {
        model: PathBuf,
        formula: String,
        /// Evaluate only at this state.
        #[arg(long)]
        state: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Synthesize the shortest uniform plan.
    Plan {
        model: PathBuf,
        #[arg(long)]
        pre: String,
        #[arg(long)]
        mid: String,
        #[arg(long)]
        post: String,
        #[command(flatten)]
        out: Output,
    },
    /// Check a derivation file.
    Prove {
        derivation: PathBuf,
        /// Manifest of derivations to check and register first.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Search small models for one falsifying a formula.
    Countermodel {
        formula: String,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
        #[arg(long, default_value_t = 2)]
        max_actions: usize,
        /// Candidate models to try before giving up.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Longest plan tried during the search (default 2^max-states).
        #[arg(long)]
        max_plan_len: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Check random instances of every axiom schema on random models.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_states: usize,
        #[arg(long, default_value_t = 3)]
        max_actions: usize,
        #[arg(long, default_value_t = 0.3)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0.5)]
        prop_prob: f64,
        #[command(flatten)]
        out: Output,
    },
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let color = match std::env::var("KHM_COLOR").as_deref() {
        Err(_) | Ok("auto") => std::io::stdout().is_terminal(),
        Ok("never") => false,
        Ok(other) => return CommandResult::usage(format!("KHM_COLOR must be never or auto, not {other:?}")),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult::ok(text)
            };
        }
    };
    let style = Style { color };
    let result = match cli.command {
        Command::Parse { formula, out } => cmd_parse(&formula, out.json),
        Command::Check { model, formula, state, out } => {
            cmd_check(&model, &formula, state.as_deref(), out.json, style)
        }
        Command::Plan { model, pre, mid, post, out } => cmd_plan(&model, &pre, &mid, &post, out.json),
        Command::Prove { derivation, corpus, out } => cmd_prove(&derivation, corpus.as_deref(), out.json, style),
        Command::Countermodel {
            formula,
            max_states,
            max_actions,
            budget,
            max_plan_len,
            out,
        } => {
            let mut bounds = SearchBounds::new(max_states, max_actions);
            if let Some(cap) = max_plan_len {
                bounds.max_plan_len = cap;
            }
            cmd_countermodel(&formula, bounds, budget, out.json)
        }
        Command::Fuzz {
            trials,
            seed,
            max_states,
            max_actions,
            edge_prob,
            prop_prob,
            out,
        } => {
            let params = ModelParams {
                max_states,
                max_actions,
                edge_prob,
                prop_prob,
            };
            cmd_fuzz(trials, seed, params, out.json)
        }
    };
    result.unwrap_or_else(CommandResult::usage)
}

#[derive(Clone, Copy)]
struct Style {
    color: bool,
}

impl Style {
    fn truth(self, value: bool) -> String {
        match (self.color, value) {
            (false, v) => v.to_string(),
            (true, true) => "\x1b[32mtrue\x1b[0m".to_string(),
            (true, false) => "\x1b[31mfalse\x1b[0m".to_string(),
        }
    }

    fn verdict(self, ok: bool, text: &str) -> String {
        match (self.color, ok) {
            (false, _) => text.to_string(),
            (true, true) => format!("\x1b[32m{text}\x1b[0m"),
            (true, false) => format!("\x1b[31m{text}\x1b[0m"),
        }
    }
}

/// Input problems; all map to exit code 2.
type Input<T> = Result<T, String>;

fn formula_arg(text: &str) -> Input<Formula> {
    let source = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
        None => text.to_string(),
    };
    parse(source.trim()).map_err(|e| format!("cannot parse formula {:?}: {e}", source.trim()))
}

fn model_arg(path: &Path) -> Input<Model> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    load_model(&bytes).map_err(|e| format!("{}: {e}", path.display()))
}

fn to_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    text
}

fn plan_json(plan: &Option<Plan>) -> Value {
    match plan {
        Some(p) => Value::String(p.to_compact()),
        None => Value::Null,
    }
}

fn cmd_parse(formula: &str, json: bool) -> Input<CommandResult> {
    let f = formula_arg(formula)?;
    let stdout = if json {
        to_json(&json!({
            "formula": f.render(),
            "letters": f.letters(),
            "size": f.size(),
        }))
    } else {
        format!("{}\n", f.render())
    };
    Ok(CommandResult::ok(stdout))
}

fn cmd_check(path: &Path, formula: &str, state: Option<&str>, json: bool, style: Style) -> Input<CommandResult> {
    let model = model_arg(path)?;
    let f = formula_arg(formula)?;
    let state_index = match state {
        Some(id) => Some(model.state_index(id).map_err(|e| e.to_string())?),
        None => None,
    };
    let program = Program::compile(&f);
    let eval = program.run(&model);
    let ext = eval.extension();
    let witnesses = eval.khm_witnesses(&program, &model);
    let holds = match state_index {
        Some(s) => ext.contains(s),
        None => ext.is_full(),
    };

    let stdout = if json {
        let states: serde_json::Map<String, Value> = model
            .states()
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), Value::Bool(ext.contains(i))))
            .collect();
        let witnesses: Vec<Value> = witnesses
            .iter()
            .map(|(g, plan)| json!({ "formula": g.render(), "holds": plan.is_some(), "plan": plan_json(plan) }))
            .collect();
        let mut doc = json!({
            "formula": f.render(),
            "value": holds,
            "states": states,
            "witnesses": witnesses,
        });
        if let Some(id) = state {
            doc["state"] = Value::String(id.to_string());
        }
        to_json(&doc)
    } else {
        let mut out = String::new();
        match state {
            Some(id) => out.push_str(&format!("{}  at {id}\n", style.truth(holds))),
            None => {
                let verdict = if holds { "at every state" } else { "at some state" };
                out.push_str(&format!("{}  {verdict}\n", style.truth(holds)));
                let width = model.states().iter().map(|s| s.chars().count()).max().unwrap_or(0);
                for (i, id) in model.states().iter().enumerate() {
                    out.push_str(&format!("  {id:<width$}  {}\n", style.truth(ext.contains(i))));
                }
            }
        }
        for (g, plan) in &witnesses {
            match plan {
                Some(p) => out.push_str(&format!("witness {}: {p}\n", g.render())),
                None => out.push_str(&format!("no witness {}\n", g.render())),
            }
        }
        out
    };
    Ok(CommandResult::with(if holds { EXIT_OK } else { EXIT_NEGATIVE }, stdout))
}

fn cmd_plan(path: &Path, pre: &str, mid: &str, post: &str, json: bool) -> Input<CommandResult> {
    let model = model_arg(path)?;
    let [pre, mid, post] = [pre, mid, post].map(formula_arg);
    let ext = |f: Formula| Program::compile(&f).run(&model).extension().clone();
    let plan = synthesize(&model, &ext(pre?), &ext(mid?), &ext(post?));
    let stdout = if json {
        to_json(&json!({ "plan": plan_json(&plan) }))
    } else {
        match &plan {
            Some(p) => format!("{p}\n"),
            None => "no plan\n".to_string(),
        }
    };
    Ok(CommandResult::with(if plan.is_some() { EXIT_OK } else { EXIT_NEGATIVE }, stdout))
}

fn cmd_prove(path: &Path, corpus: Option<&Path>, json: bool, style: Style) -> Input<CommandResult> {
    let db = match corpus {
        Some(manifest) => load_corpus(manifest).map_err(|e| e.to_string())?,
        None => TheoremDb::new(),
    };
    let d = read_derivation(path).map_err(|e| e.to_string())?;
    let verdict = check_derivation(&d, &db);
    let stdout = match (&verdict, json) {
        (Ok(()), true) => to_json(&json!({
            "name": d.name,
            "ok": true,
            "formula": d.conclusion().map(Formula::render),
            "lines": d.lines.len(),
        })),
        (Err(e), true) => to_json(&json!({
            "name": d.name,
            "ok": false,
            "line": e.line,
            "reason": e.reason.as_str(),
            "detail": e.detail,
        })),
        (Ok(()), false) => format!(
            "{} {}: {}\n",
            style.verdict(true, "ok"),
            d.name,
            d.conclusion().map(Formula::render).unwrap_or_default()
        ),
        (Err(e), false) => format!("{} {}: {e}\n", style.verdict(false, "rejected"), d.name),
    };
    Ok(CommandResult::with(if verdict.is_ok() { EXIT_OK } else { EXIT_NEGATIVE }, stdout))
}

fn cmd_countermodel(formula: &str, bounds: SearchBounds, budget: u64, json: bool) -> Input<CommandResult> {
    let f = formula_arg(formula)?;
    match find_countermodel_within(&f, &bounds, budget) {
        Ok(Some(Countermodel { model, state })) => {
            let stdout = if json {
                to_json(&json!({
                    "status": "found",
                    "formula": f.render(),
                    "state": state,
                    "model": model.to_file(),
                }))
            } else {
                format!("countermodel falsifying at {state}:\n{}\n", model.to_json())
            };
            Ok(CommandResult::ok(stdout))
        }
        Ok(None) => {
            let stdout = if json {
                to_json(&json!({ "status": "none", "formula": f.render() }))
            } else {
                "none within bounds\n".to_string()
            };
            Ok(CommandResult::with(EXIT_NEGATIVE, stdout))
        }
        Err(SearchError::BudgetExceeded { budget }) => {
            let stdout = if json {
                to_json(&json!({ "status": "budget-exhausted", "formula": f.render(), "budget": budget }))
            } else {
                format!("budget exhausted after {budget} candidate models\n")
            };
            Ok(CommandResult {
                code: EXIT_NEGATIVE,
                stdout,
                stderr: "warning: search incomplete; no answer within budget\n".to_string(),
            })
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_fuzz(trials: usize, seed: u64, params: ModelParams, json: bool) -> Input<CommandResult> {
    if trials == 0 {
        return Err("--trials must be at least 1".to_string());
    }
    if params.max_states == 0 || params.max_actions == 0 {
        return Err("--max-states and --max-actions must be at least 1".to_string());
    }
    for (flag, p) in [("--edge-prob", params.edge_prob), ("--prop-prob", params.prop_prob)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(format!("{flag} must lie in [0, 1]"));
        }
    }
    let report = fuzz_soundness(trials, params, seed);
    let stdout = if json {
        to_json(&serde_json::to_value(&report).expect("reports serialize"))
    } else {
        let mut out = format!(
            "seed {seed}, {trials} trials, {} axiom instances checked, {} failures\naxioms: {}\n",
            report.instances_checked,
            report.failures.len(),
            report.axioms.join(" "),
        );
        for failure in &report.failures {
            out.push_str(&serde_json::to_string(failure).expect("failures serialize"));
            out.push('\n');
        }
        out
    };
    Ok(CommandResult::with(if report.failures.is_empty() { EXIT_OK } else { EXIT_NEGATIVE }, stdout))
}
