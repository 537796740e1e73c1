//! Command implementations behind the `typeineq` binary.
//!
//! Every command returns an [`Outcome`] instead of printing, so that the
//! binary stays a thin shell and the commands can be tested in-process.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use typeineq::check::check_term;
use typeineq::oracle::{brute_solvable, brute_typable, OracleBudget};
use typeineq::problem::{parse_problem, Payload, Problem};
use typeineq::{solve, Depth, Error, InequationSystem, SolveResult, Substitution, TypeAssignment};

pub const SCHEMA: u64 = 1;

/// Positive verdict.
pub const EXIT_POSITIVE: i32 = 0;
/// Negative verdict.
pub const EXIT_NEGATIVE: i32 = 1;
/// Input or configuration error.
pub const EXIT_ERROR: i32 = 2;
/// `--oracle` disagreed with the solver.
pub const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Subtype,
    Gen,
    Solve,
    Check,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Subtype => "subtype",
            Command::Gen => "gen",
            Command::Solve => "solve",
            Command::Check => "check",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub json: bool,
    pub trace: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Human-readable lines plus the JSON report, rendered per `--json`.
struct Report {
    flags: Flags,
    json: Map<String, Value>,
    text: Vec<String>,
    trace: Vec<String>,
}

impl Report {
    fn new(flags: Flags) -> Self {
        let mut json = Map::new();
        json.insert("schema".into(), json!(SCHEMA));
        Report {
            flags,
            json,
            text: Vec::new(),
            trace: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.json.insert(key.to_string(), value);
    }

    fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    fn finish(self, code: i32) -> Outcome {
        let mut out = Outcome {
            code,
            ..Outcome::default()
        };
        let trace: String = self.trace.iter().map(|l| format!("{l}\n")).collect();
        let text: String = self.text.iter().map(|l| format!("{l}\n")).collect();
        if self.flags.json {
            out.stdout = serde_json::to_string(&Value::Object(self.json)).expect("json") + "\n";
            out.stderr = trace + &text;
        } else {
            out.stdout = trace + &text;
        }
        out
    }
}

fn error_outcome(flags: Flags, code: &str, err: &Error) -> Outcome {
    let mut report = Report::new(flags);
    let mut body = Map::new();
    body.insert("code".into(), json!(code));
    body.insert("message".into(), json!(err.root().to_string()));
    if let Error::At { line, col, .. } = err {
        body.insert("line".into(), json!(line));
        body.insert("col".into(), json!(col));
    }
    if let Error::Incompatible {
        lower,
        middle,
        upper,
    } = err.root()
    {
        body.insert("triple".into(), json!([lower, middle, upper]));
    }
    report.set("error", Value::Object(body));
    report.line(format!("error [{code}]: {err}"));
    let mut out = report.finish(EXIT_ERROR);
    if !flags.json {
        // errors belong on stderr when there is no JSON consumer
        out.stderr = std::mem::take(&mut out.stdout);
    }
    out
}

fn fail(flags: Flags, err: &Error) -> Outcome {
    error_outcome(flags, err.code(), err)
}

fn payload_error(flags: Flags, command: Command, wanted: &str) -> Outcome {
    let err = Error::Parse {
        message: format!("`{}` needs a `{wanted}:` section", command.name()),
    };
    error_outcome(flags, "PAYLOAD_MISMATCH", &err)
}

pub fn run_file(command: Command, path: &str, flags: Flags) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => run_text(command, &text, flags),
        Err(e) => error_outcome(
            flags,
            "IO_ERROR",
            &Error::Parse {
                message: format!("cannot read {path}: {e}"),
            },
        ),
    }
}

pub fn run_text(command: Command, text: &str, flags: Flags) -> Outcome {
    let problem = match parse_problem(text) {
        Ok(p) => p,
        Err(e) => return fail(flags, &e),
    };
    let result = match command {
        Command::Validate => Ok(validate(&problem, flags)),
        Command::Subtype => subtype(&problem, flags),
        Command::Gen => gen(&problem, flags),
        Command::Solve => solve_cmd(&problem, flags),
        Command::Check => check(&problem, flags),
    };
    result.unwrap_or_else(|e| fail(flags, &e))
}

fn validate(problem: &Problem, flags: Flags) -> Outcome {
    let mut report = Report::new(flags);
    let alphabet = &problem.alphabet;
    report.set("command", json!("validate"));
    report.set("verdict", json!("valid"));
    report.set(
        "constructors",
        Value::Array(
            alphabet
                .constructors()
                .iter()
                .map(|c| json!({"name": c.name, "arity": c.arity}))
                .collect(),
        ),
    );
    report.set(
        "order",
        Value::Array(
            alphabet
                .closure()
                .iter()
                .map(|(l, h)| json!([l, h]))
                .collect(),
        ),
    );
    report.line(format!(
        "valid alphabet with {} constructor(s)",
        alphabet.constructors().len()
    ));
    for (lo, hi) in alphabet.closure() {
        report.line(format!("  {lo} <= {hi}"));
    }
    report.finish(EXIT_POSITIVE)
}

fn subtype(problem: &Problem, flags: Flags) -> Result<Outcome, Error> {
    let Some(Payload::Subtype(lhs, rhs)) = &problem.payload else {
        return Ok(payload_error(flags, Command::Subtype, "subtype"));
    };
    let holds = problem.alphabet.subtype(lhs, rhs)?;
    let mut report = Report::new(flags);
    report.set("command", json!("subtype"));
    report.set("lhs", json!(lhs.to_string()));
    report.set("rhs", json!(rhs.to_string()));
    report.set("verdict", json!(if holds { "holds" } else { "fails" }));
    report.line(format!(
        "{lhs} {} {rhs}",
        if holds { "<=" } else { "is not <=" }
    ));
    Ok(report.finish(if holds { EXIT_POSITIVE } else { EXIT_NEGATIVE }))
}

fn gen(problem: &Problem, flags: Flags) -> Result<Outcome, Error> {
    let Some(Payload::Term(term)) = &problem.payload else {
        return Ok(payload_error(flags, Command::Gen, "term"));
    };
    let (gamma, tau, system) = typeineq::check::constraints_for(term, &problem.signatures)?;
    let mut report = Report::new(flags);
    report.set("command", json!("gen"));
    report.set("term", json!(term.to_string()));
    report.set("context", assignment_json(&gamma));
    report.set("type", json!(tau.to_string()));
    report.set("inequations", system_json(&system));
    report.line(format!("term: {term}"));
    for (x, t) in gamma.iter() {
        report.line(format!("  {x} : {t}"));
    }
    report.line(format!("type: {tau}"));
    for ineq in &system {
        report.line(format!("  {ineq}"));
    }
    Ok(report.finish(EXIT_POSITIVE))
}

fn solve_cmd(problem: &Problem, flags: Flags) -> Result<Outcome, Error> {
    let Some(Payload::System(system)) = &problem.payload else {
        return Ok(payload_error(flags, Command::Solve, "solve"));
    };
    let result = solve(system, &problem.alphabet)?;
    let mut report = Report::new(flags);
    report.set("command", json!("solve"));
    let solvable = result.is_solvable();
    report.set(
        "verdict",
        json!(if solvable { "solvable" } else { "unsolvable" }),
    );
    if let Some(w) = &result.witness {
        report.set("witness", substitution_json(w));
    }
    report.set("stats", stats_json(&result));
    trace(&mut report, &result);
    report.line(if solvable { "solvable" } else { "unsolvable" });
    if let Some(w) = &result.witness {
        report.line(format!("  witness: {w}"));
    }
    stats_line(&mut report, &result);

    let mut code = if solvable {
        EXIT_POSITIVE
    } else {
        EXIT_NEGATIVE
    };
    if flags.oracle {
        let depth = oracle_depth(&result);
        let expected = brute_solvable(system, depth, &problem.alphabet)?;
        code = oracle_verdict(&mut report, depth, expected == solvable, code);
    }
    Ok(report.finish(code))
}

fn check(problem: &Problem, flags: Flags) -> Result<Outcome, Error> {
    let Some(Payload::Term(term)) = &problem.payload else {
        return Ok(payload_error(flags, Command::Check, "term"));
    };
    let typing = check_term(term, &problem.signatures, &problem.alphabet)?;
    let typable = typing.is_typable();
    let mut report = Report::new(flags);
    report.set(
        "verdict",
        json!(if typable { "typable" } else { "untypable" }),
    );
    report.line(format!(
        "{term}: {}",
        if typable { "typable" } else { "untypable" }
    ));
    if let (Some(ty), Some(gamma), Some(w)) = (
        typing.inferred_type(),
        typing.inferred_assignment(),
        typing.solution.witness.as_ref(),
    ) {
        report.set("type", json!(ty.to_string()));
        report.set("assignment", assignment_json(&gamma));
        report.set("witness", substitution_json(w));
        report.line(format!("  type: {ty}"));
        for (x, t) in gamma.iter() {
            report.line(format!("  {x} : {t}"));
        }
    }
    report.set("stats", stats_json(&typing.solution));
    trace(&mut report, &typing.solution);
    stats_line(&mut report, &typing.solution);

    let mut code = if typable {
        EXIT_POSITIVE
    } else {
        EXIT_NEGATIVE
    };
    if flags.oracle {
        let depth = oracle_depth(&typing.solution);
        let expected = brute_typable(
            term,
            &problem.signatures,
            &problem.alphabet,
            &OracleBudget::new(depth),
        )?;
        code = oracle_verdict(&mut report, depth, expected == typable, code);
    }
    Ok(report.finish(code))
}

/// Deep enough for any witness the search can produce: the witness depth is
/// at most the number of rounds, and grounding leftover parameters adds one.
fn oracle_depth(result: &SolveResult) -> usize {
    let witness_depth = result.witness.as_ref().map_or(0, Depth::depth);
    3.max(result.stats.generations + 1).max(witness_depth + 1)
}

fn oracle_verdict(report: &mut Report, depth: usize, agree: bool, code: i32) -> i32 {
    report.set("oracle", json!({"depth": depth, "agrees": agree}));
    report.line(format!(
        "oracle (depth {depth}): {}",
        if agree { "agrees" } else { "DISAGREES" }
    ));
    if agree {
        code
    } else {
        EXIT_DISAGREEMENT
    }
}

fn trace(report: &mut Report, result: &SolveResult) {
    if report.flags.trace {
        for (i, n) in result.frontier_sizes.iter().enumerate() {
            report
                .trace
                .push(format!("generation {}: {n} system(s)", i + 1));
        }
    }
}

fn stats_line(report: &mut Report, result: &SolveResult) {
    let s = result.stats;
    report.line(format!(
        "  generations: {}, systems explored: {}, memory: {}",
        s.generations, s.systems_explored, s.memory_size
    ));
}

fn stats_json(result: &SolveResult) -> Value {
    let s = result.stats;
    json!({
        "generations": s.generations,
        "systems_explored": s.systems_explored,
        "memory_size": s.memory_size,
    })
}

fn substitution_json(subst: &Substitution) -> Value {
    let map: BTreeMap<String, String> = subst
        .iter()
        .map(|(p, t)| (p.to_string(), t.to_string()))
        .collect();
    json!(map)
}

fn assignment_json(gamma: &TypeAssignment) -> Value {
    let map: BTreeMap<String, String> = gamma
        .iter()
        .map(|(x, t)| (x.to_string(), t.to_string()))
        .collect();
    json!(map)
}

fn system_json(system: &InequationSystem) -> Value {
    Value::Array(system.iter().map(|i| json!(i.to_string())).collect())
}
