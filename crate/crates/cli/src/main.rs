//! `plausible`: consistency and consequence checks on knowledge bases of
//! necessities, possibilities, defaults and likelihoods.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plausible_core::kernel::{
    decide_consistency, decide_sequent, oracle_decide, theorem_check, Answer, KernelError, Options,
    TerminationRule, Verdict,
};
use plausible_core::modal::{dualize, ModalConjunction, ModalError, Sentence};
use plausible_core::oracle::OracleError;
use plausible_core::suite::run_suite;
use plausible_core::surface::{parse_kb, parse_query, parse_sentence, QueryFlags};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "plausible", version, about)]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Flags {
    /// Test defaults without conjoining the possibility of the antecedent
    #[arg(long, global = true)]
    improper: bool,
    /// Ignore numeric bounds
    #[arg(long, global = true)]
    qualitative: bool,
    /// Also decide with the linear-programming oracle and print its distribution
    #[arg(long, global = true)]
    oracle: bool,
    /// Write the decision trace next to the KB file as <kb>.trace
    #[arg(long, global = true)]
    trace: bool,
    /// Print a JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Largest vocabulary the oracle will enumerate
    #[arg(long, global = true, value_name = "N", default_value_t = 10)]
    max_atoms: usize,
    /// Use the unreconstructed stopping rule for likelihood chains
    #[arg(long, global = true, hide = true)]
    literal_termination: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a KB file is consistent
    Check { kb: PathBuf },
    /// Ask a query against a KB file
    Query { kb: PathBuf, query: String },
    /// Print the dual of an implication between modal sentences
    Dualize { sentence: String },
    /// Run the built-in theorem and scenario suite
    Selftest,
}

enum Failure {
    Parse(String),
    Precondition(String),
    Budget(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Budget(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m)
            | Failure::Precondition(m)
            | Failure::Budget(m)
            | Failure::Internal(m) => m,
        }
    }
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Oracle(
                o @ (OracleError::BudgetExceeded { .. } | OracleError::CaseExplosion { .. }),
            ) => Failure::Budget(o.to_string()),
            KernelError::Oracle(o @ OracleError::MissingBound(_)) => {
                Failure::Precondition(o.to_string())
            }
            KernelError::Oracle(o) => Failure::Internal(o.to_string()),
            e => Failure::Precondition(e.to_string()),
        }
    }
}

const EXIT_UNDECIDED: u8 = 5;

fn options(flags: &Flags, q: QueryFlags) -> Options {
    let mut opts = Options {
        proper: !(flags.improper || q.improper),
        qualitative: flags.qualitative || q.qualitative,
        ..Options::default()
    };
    opts.budget.max_atoms = flags.max_atoms;
    if flags.literal_termination {
        opts.termination = TerminationRule::Literal;
    }
    opts
}

fn mode(opts: &Options) -> String {
    format!(
        "{},{}",
        if opts.qualitative {
            "qualitative"
        } else {
            "quantitative"
        },
        if opts.proper { "proper" } else { "improper" }
    )
}

fn read_kb(path: &Path) -> Result<ModalConjunction, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let doc = parse_kb(&text).map_err(|e| Failure::Parse(format!("{}:{e}", path.display())))?;
    Ok(doc.to_conjunction())
}

enum Question {
    Consistency,
    Goals(Vec<plausible_core::modal::ModalAtom>),
    Theorem(Sentence),
}

fn decide(
    kb: &ModalConjunction,
    question: &Question,
    opts: &Options,
    with_oracle: bool,
) -> Result<(Verdict, Option<Verdict>), Failure> {
    let kernel = match question {
        Question::Consistency => decide_consistency(kb, opts)?,
        Question::Goals(goals) => decide_sequent(kb, goals, opts)?,
        Question::Theorem(s) => theorem_check(s, opts)?,
    };
    if !with_oracle {
        return Ok((kernel, None));
    }
    let oracle = match question {
        Question::Consistency => oracle_decide(kb, None, opts)?,
        Question::Goals(goals) => oracle_decide(kb, Some(goals), opts)?,
        Question::Theorem(_) => return Ok((kernel, None)),
    };
    Ok((kernel, Some(oracle)))
}

fn run_decision(
    flags: &Flags,
    kb_path: &Path,
    question: Question,
    qflags: QueryFlags,
) -> Result<u8, Failure> {
    let kb = read_kb(kb_path)?;
    let opts = options(flags, qflags);
    let with_oracle = flags.oracle || qflags.oracle;
    let question = match question {
        Question::Theorem(s) => Question::Theorem(match kb.to_sentence() {
            Some(p) => Sentence::implies(p, s),
            None => s,
        }),
        q => q,
    };
    let (mut verdict, oracle) = decide(&kb, &question, &opts, with_oracle)?;
    let mut oracle_text = None;
    if let Some(o) = oracle {
        oracle_text = Some(o.answer.to_string());
        if verdict.answer == Answer::Undecided {
            let trace = std::mem::take(&mut verdict.trace);
            verdict = Verdict { trace, ..o.clone() };
        }
        verdict.oracle_used = true;
        if verdict.witness.is_none() {
            verdict.witness = o.witness;
        }
    }
    let mut report = Report::new(&verdict, mode(&opts));
    report.oracle_verdict = oracle_text;
    if flags.trace {
        let mut p = kb_path.as_os_str().to_owned();
        p.push(".trace");
        let path = PathBuf::from(p);
        let body = format!("{}{}", verdict.trace, report.key_values());
        fs::write(&path, body)
            .map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))?;
        report.trace_path = Some(path.display().to_string());
    }
    if flags.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        print!("{}", report.text());
    }
    Ok(if verdict.answer == Answer::Undecided {
        EXIT_UNDECIDED
    } else {
        0
    })
}

fn run_query(flags: &Flags, kb: &Path, text: &str) -> Result<u8, Failure> {
    let q = parse_query(text).map_err(|e| Failure::Parse(format!("query:{e}")))?;
    let question = match (&q.theorem, q.goals.is_empty()) {
        (Some(s), _) => Question::Theorem(s.clone()),
        (None, true) => Question::Consistency,
        (None, false) => Question::Goals(q.goals.clone()),
    };
    run_decision(flags, kb, question, q.flags)
}

fn run_dualize(flags: &Flags, text: &str) -> Result<u8, Failure> {
    let s = parse_sentence(text).map_err(|e| Failure::Parse(format!("sentence:{e}")))?;
    let d = dualize(&s).map_err(|e: ModalError| Failure::Precondition(e.to_string()))?;
    if flags.json {
        println!(
            "{}",
            serde_json::json!({ "input": s.to_string(), "dual": d.to_string() })
        );
    } else {
        println!("{d}");
    }
    Ok(0)
}

fn run_selftest(flags: &Flags) -> u8 {
    let items = run_suite();
    let failed = items.iter().filter(|i| !i.passed).count();
    if flags.json {
        let list: Vec<_> = items
            .iter()
            .map(|i| serde_json::json!({ "name": i.name, "passed": i.passed, "detail": i.detail }))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({ "items": list, "failed": failed }))
                .expect("suite serializes")
        );
    } else {
        for i in &items {
            let tag = if i.passed { "PASS" } else { "FAIL" };
            println!("{tag} {}: {}", i.name, i.detail);
        }
        println!("{} passed, {failed} failed", items.len() - failed);
    }
    u8::from(failed > 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = &cli.flags;
    let result = match &cli.command {
        Command::Check { kb } => run_decision(f, kb, Question::Consistency, QueryFlags::default()),
        Command::Query { kb, query } => run_query(f, kb, query),
        Command::Dualize { sentence } => run_dualize(f, sentence),
        Command::Selftest => Ok(run_selftest(f)),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
