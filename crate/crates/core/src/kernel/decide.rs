//! Routing of flat sequents (premises ⊨ disjunction of goals) and whole
//! sentences to the kernel tests, with the oracle where the kernel has
//! no procedure.

use num_traits::One;

use super::consequence::{default_consequence, likelihood_consequence};
use super::sets::consistent_unchecked;
use super::{consistent, Answer, Bound, KernelError, Options, OracleUse, Trace, Verdict};
use crate::modal::{
    sequents, to_clausal, validate_bounds, BoundViolation, ClausalKb, ConditionalKind, ModalAtom,
    ModalConjunction, Rational, Sentence,
};
use crate::oracle::{oracle_consequence, oracle_consistent_conj, OracleError};
use crate::propcore::Formula;

/// Representative `(ε, e)` pairs used to instantiate qualitative atoms for
/// the oracle. Defaults are kept an order of magnitude below likelihoods.
fn scales() -> [(Rational, Rational); 2] {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    [(r(1, 100), r(1, 10)), (r(1, 10_000), r(1, 100))]
}

/// Replaces every likelihood `A ≈ B` by the default `A ⇒ B`. The result
/// entails the input in the qualitative reading, so its consistency
/// implies the input's. An inconsistent result says nothing.
pub fn strengthen_to_defaults(c: &ModalConjunction) -> ModalConjunction {
    c.atoms()
        .iter()
        .map(|m| match m {
            ModalAtom::Likelihood(cond, _) => ModalAtom::Default(cond.without_bound()),
            other => other.clone(),
        })
        .collect()
}

fn strip(m: &ModalAtom, qualitative: bool) -> ModalAtom {
    if qualitative && m.is_conditional() {
        m.with_bound(None)
    } else {
        m.clone()
    }
}

fn strip_all(c: &ModalConjunction, qualitative: bool) -> ModalConjunction {
    c.atoms().iter().map(|m| strip(m, qualitative)).collect()
}

/// Quantitative mode needs a number on every premise conditional.
fn require_bounds(c: &ModalConjunction) -> Result<(), KernelError> {
    let missing: Vec<usize> = c
        .atoms()
        .iter()
        .filter(|m| m.is_conditional())
        .enumerate()
        .filter(|(_, m)| m.bound().is_none())
        .map(|(i, _)| i + 1)
        .collect();
    if missing.is_empty() {
        return Ok(());
    }
    Err(KernelError::PreconditionViolation(BoundViolation {
        limit: Rational::one(),
        offending: Vec::new(),
        missing,
    }))
}

/// Budget errors become an undecided verdict; anything else is fatal.
fn budget<T>(r: Result<T, OracleError>, strict: bool) -> Result<Result<T, String>, KernelError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ (OracleError::BudgetExceeded { .. } | OracleError::CaseExplosion { .. }))
            if !strict =>
        {
            Ok(Err(e.to_string()))
        }
        Err(e) => Err(e.into()),
    }
}

fn instantiate(c: &ModalConjunction, scale: Option<&(Rational, Rational)>) -> ModalConjunction {
    let Some((eps, e)) = scale else {
        return c.clone();
    };
    c.atoms()
        .iter()
        .map(|m| match m {
            ModalAtom::Default(_) => m.with_bound(Some(eps.clone())),
            ModalAtom::Likelihood(..) => m.with_bound(Some(e.clone())),
            _ => m.clone(),
        })
        .collect()
}

/// Goal bound for the oracle when the goal carries none (or in qualitative
/// mode): twice the premises' default error, and half the product floor
/// over the premises' likelihoods.
fn goal_bound(
    goal: &ModalAtom,
    premises: &ModalConjunction,
    scale: Option<&(Rational, Rational)>,
) -> Rational {
    if let (Some(b), None) = (goal.bound(), scale) {
        return b.clone();
    }
    let two = Rational::from_integer(2.into());
    match goal {
        ModalAtom::Default(_) => {
            let sum: Rational = premises
                .atoms()
                .iter()
                .filter(|m| matches!(m, ModalAtom::Default(_)))
                .filter_map(|m| m.bound())
                .sum();
            let base = match scale {
                Some((eps, _)) if *eps > sum => eps.clone(),
                _ => sum,
            };
            (&two * base).min(Rational::one())
        }
        _ => {
            let liks: Vec<&Rational> = premises
                .atoms()
                .iter()
                .filter(|m| matches!(m, ModalAtom::Likelihood(..)))
                .filter_map(|m| m.bound())
                .collect();
            let e = match scale {
                Some((_, e)) => e.clone(),
                None => liks
                    .iter()
                    .min()
                    .map(|&e| e.clone())
                    .unwrap_or_else(|| Rational::new(1.into(), 2.into())),
            };
            let ratio = &e / (Rational::one() + &e);
            num_traits::pow(ratio, liks.len().max(1)) / two
        }
    }
}

fn oracle_off(opts: &Options, reason: &str, trace: Trace) -> Option<Verdict> {
    (opts.oracle == OracleUse::Never)
        .then(|| Verdict::undecided(format!("{reason}; oracle disabled"), trace))
}

/// Settles the question with the oracle alone, whatever `opts.oracle`
/// says. Budget overruns are errors here rather than undecided verdicts.
/// `goals = None` asks for consistency.
pub fn oracle_decide(
    premises: &ModalConjunction,
    goals: Option<&[ModalAtom]>,
    opts: &Options,
) -> Result<Verdict, KernelError> {
    let prem = strip_all(premises, opts.qualitative);
    if !opts.qualitative {
        require_bounds(&prem)?;
    }
    let opts = Options {
        oracle: OracleUse::Fallback,
        ..*opts
    };
    let v = match goals {
        None => oracle_consistency(&prem, &opts, Trace::default(), "oracle", true)?,
        Some([]) => {
            let mut v = oracle_consistency(&prem, &opts, Trace::default(), "oracle", true)?;
            v.answer = match v.answer {
                Answer::Inconsistent => Answer::Consequence,
                Answer::Consistent => Answer::NotConsequence,
                a => a,
            };
            v
        }
        Some(goals) => {
            let goals: Vec<ModalAtom> = goals.iter().map(|m| strip(m, opts.qualitative)).collect();
            oracle_sequent(&prem, &goals, &opts, Trace::default(), "oracle", true)?
        }
    };
    Ok(v)
}

fn oracle_runs(opts: &Options) -> Vec<Option<(Rational, Rational)>> {
    if opts.qualitative {
        scales().into_iter().map(Some).collect()
    } else {
        vec![None]
    }
}

fn oracle_consistency(
    premises: &ModalConjunction,
    opts: &Options,
    mut trace: Trace,
    reason: &str,
    strict: bool,
) -> Result<Verdict, KernelError> {
    if let Some(v) = oracle_off(opts, reason, trace.clone()) {
        return Ok(v);
    }
    let mut answers = Vec::new();
    let mut witness = None;
    for scale in oracle_runs(opts) {
        let p = instantiate(premises, scale.as_ref());
        match budget(oracle_consistent_conj(&p, &opts.budget), strict)? {
            Err(msg) => {
                let mut v = Verdict::undecided(format!("{reason}; {msg}"), trace);
                v.oracle_used = true;
                return Ok(v);
            }
            Ok(f) => {
                trace.notes.push(format!(
                    "oracle: {} is {}",
                    p.to_sentence().map_or("true".into(), |s| s.to_string()),
                    if f.satisfiable {
                        "satisfiable"
                    } else {
                        "unsatisfiable"
                    }
                ));
                answers.push(f.satisfiable);
                if witness.is_none() {
                    witness = f.witness;
                }
            }
        }
    }
    let mut v = if answers.iter().all(|&s| s) {
        Verdict::new(Answer::Consistent, trace)
    } else if answers.iter().all(|&s| !s) {
        Verdict::new(Answer::Inconsistent, trace)
    } else {
        Verdict::undecided(format!("{reason}; scales disagree"), trace)
    };
    v.oracle_used = true;
    v.witness = witness;
    Ok(v)
}

fn oracle_sequent(
    premises: &ModalConjunction,
    goals: &[ModalAtom],
    opts: &Options,
    mut trace: Trace,
    reason: &str,
    strict: bool,
) -> Result<Verdict, KernelError> {
    if let Some(v) = oracle_off(opts, reason, trace.clone()) {
        return Ok(v);
    }
    let mut answers = Vec::new();
    let mut countermodel = None;
    let mut used = Vec::new();
    for scale in oracle_runs(opts) {
        let p = instantiate(premises, scale.as_ref());
        let g: Vec<ModalAtom> = goals
            .iter()
            .map(|m| {
                if m.is_conditional() {
                    m.with_bound(Some(goal_bound(m, &p, scale.as_ref())))
                } else {
                    m.clone()
                }
            })
            .collect();
        let goal = Sentence::disjunction(g.clone()).expect("at least one goal");
        match budget(oracle_consequence(&p, &goal, &opts.budget), strict)? {
            Err(msg) => {
                let mut v = Verdict::undecided(format!("{reason}; {msg}"), trace);
                v.oracle_used = true;
                return Ok(v);
            }
            Ok(ent) => {
                trace.notes.push(format!(
                    "oracle: goal {goal} {}",
                    if ent.holds { "holds" } else { "fails" }
                ));
                answers.push(ent.holds);
                if countermodel.is_none() {
                    countermodel = ent.countermodel;
                }
                used = g;
            }
        }
    }
    let mut v = if answers.iter().all(|&h| h) {
        let bound = match (opts.qualitative, used.as_slice()) {
            (false, [ModalAtom::Default(c)]) => c.bound.clone().map(Bound::Delta),
            (false, [ModalAtom::Likelihood(c, _)]) => c.bound.clone().map(Bound::Floor),
            _ => None,
        };
        Verdict::new(Answer::Consequence, trace).with_bound(bound)
    } else if answers.iter().all(|&h| !h) {
        Verdict::new(Answer::NotConsequence, trace)
    } else {
        Verdict::undecided(format!("{reason}; scales disagree"), trace)
    };
    v.oracle_used = true;
    v.witness = countermodel;
    Ok(v)
}

/// Consistency of a flat conjunction, homogeneous or not.
pub fn decide_consistency(
    premises: &ModalConjunction,
    opts: &Options,
) -> Result<Verdict, KernelError> {
    let prem = strip_all(premises, opts.qualitative);
    if !opts.qualitative {
        require_bounds(&prem)?;
    }
    if !prem.is_mixed() {
        return consistent(&to_clausal(&prem)?, opts);
    }
    let mut trace = Trace::default();
    if opts.qualitative {
        let kb = to_clausal(&strengthen_to_defaults(&prem))?;
        if consistent_unchecked(&kb, &mut trace) {
            trace
                .notes
                .push("consistent after strengthening likelihoods to defaults".into());
            return Ok(Verdict::new(Answer::Consistent, trace));
        }
        trace
            .notes
            .push("strengthened form is inconsistent, which settles nothing".into());
    }
    oracle_consistency(&prem, opts, trace, "mixed defaults and likelihoods", false)
}

fn bound_covers(found: &Option<Bound>, wanted: Option<&Rational>) -> bool {
    let Some(w) = wanted else { return true };
    match found {
        Some(Bound::Delta(d)) => d <= w,
        Some(Bound::Floor(f)) => w <= f,
        Some(Bound::AnyFloor) => *w < Rational::one(),
        Some(Bound::Order(_)) | None => true,
    }
}

fn kernel_sequent(
    kb: &ClausalKb,
    prem: &ModalConjunction,
    goals: &[ModalAtom],
    opts: &Options,
) -> Result<Verdict, KernelError> {
    let mut trace = Trace::default();
    let (modal, conds): (Vec<&ModalAtom>, Vec<&ModalAtom>) =
        goals.iter().partition(|m| !m.is_conditional());

    if !modal.is_empty() {
        if !opts.qualitative {
            validate_bounds(kb).map_err(KernelError::PreconditionViolation)?;
        }
        let mut test = kb.clone();
        for g in &modal {
            match g {
                ModalAtom::Necessity(f) => test.add_possibility(Formula::not(f.clone())),
                ModalAtom::Possibility(f) => test.add_necessity(Formula::not(f.clone())),
                _ => unreachable!(),
            }
        }
        trace
            .notes
            .push("necessity and possibility goals refuted together".into());
        if !consistent_unchecked(&test, &mut trace) {
            return Ok(Verdict::new(Answer::Consequence, trace));
        }
        if conds.is_empty() {
            return Ok(Verdict::new(Answer::NotConsequence, trace));
        }
    }

    let mut exact = conds.len() == 1 && modal.is_empty();
    for g in &conds {
        let c = g.conditional().expect("conditional goal");
        let v = match (g, kb.kind) {
            (ModalAtom::Default(_), None | Some(ConditionalKind::Default)) => {
                default_consequence(kb, &c.antecedent, &c.consequent, opts)?
            }
            (ModalAtom::Likelihood(..), None | Some(ConditionalKind::Likelihood)) => {
                match likelihood_consequence(kb, &c.antecedent, &c.consequent, opts) {
                    Err(KernelError::InconsistentPremises) => {
                        trace.notes.push("premises are inconsistent".into());
                        return Ok(Verdict::new(Answer::Consequence, trace));
                    }
                    r => r?,
                }
            }
            _ => {
                trace
                    .notes
                    .push(format!("goal `{g}` differs in kind from the premises"));
                exact = false;
                continue;
            }
        };
        let answer = v.answer;
        let bound = v.bound.clone();
        trace.absorb(v.trace);
        if answer == Answer::Consequence {
            if opts.qualitative || bound_covers(&bound, g.bound()) {
                return Ok(Verdict::new(Answer::Consequence, trace).with_bound(bound));
            }
            if let Some(b) = &bound {
                trace
                    .notes
                    .push(format!("kernel bound {b} is weaker than the goal `{g}`"));
            }
            exact = false;
        }
    }
    if exact {
        return Ok(Verdict::new(Answer::NotConsequence, trace));
    }
    oracle_sequent(
        prem,
        goals,
        opts,
        trace,
        "no kernel test decides this goal",
        false,
    )
}

fn sequent_inner(
    premises: &ModalConjunction,
    goals: &[ModalAtom],
    opts: &Options,
    lenient: bool,
) -> Result<Verdict, KernelError> {
    let prem = strip_all(premises, opts.qualitative);
    let goals: Vec<ModalAtom> = goals.iter().map(|m| strip(m, opts.qualitative)).collect();
    if !opts.qualitative {
        require_bounds(&prem)?;
    }
    let fallback = |e: KernelError, goals: &[ModalAtom]| match e {
        KernelError::PreconditionViolation(v) if lenient => {
            let reason = format!("kernel precondition fails ({v})");
            if goals.is_empty() {
                oracle_consistency(&prem, opts, Trace::default(), &reason, false)
            } else {
                oracle_sequent(&prem, goals, opts, Trace::default(), &reason, false)
            }
        }
        e => Err(e),
    };
    if goals.is_empty() {
        let mut v = match decide_consistency(&prem, opts) {
            Ok(v) => v,
            Err(e) => fallback(e, &goals)?,
        };
        v.answer = match v.answer {
            Answer::Inconsistent => Answer::Consequence,
            Answer::Consistent => Answer::NotConsequence,
            a => a,
        };
        return Ok(v);
    }
    if prem.is_mixed() {
        return oracle_sequent(
            &prem,
            &goals,
            opts,
            Trace::default(),
            "mixed defaults and likelihoods in the premises",
            false,
        );
    }
    let kb = to_clausal(&prem)?;
    match kernel_sequent(&kb, &prem, &goals, opts) {
        Err(e) => fallback(e, &goals),
        ok => ok,
    }
}

/// Does the disjunction of `goals` follow from `premises`? With no goals,
/// asks whether the premises are inconsistent.
///
/// Necessity and possibility goals are refuted together. Conditional goals
/// are tried one at a time; when none succeeds alone and more than one goal
/// is present, or kinds mix, the oracle decides.
pub fn decide_sequent(
    premises: &ModalConjunction,
    goals: &[ModalAtom],
    opts: &Options,
) -> Result<Verdict, KernelError> {
    sequent_inner(premises, goals, opts, false)
}

/// A goal already among the premises, at an equal or weaker bound.
fn trivially_closed(premises: &ModalConjunction, goals: &[ModalAtom], qualitative: bool) -> bool {
    goals.iter().any(|g| {
        premises.atoms().iter().any(|p| match (p, g) {
            (ModalAtom::Default(a), ModalAtom::Default(b)) => {
                a.antecedent == b.antecedent
                    && a.consequent == b.consequent
                    && (qualitative || matches!((&a.bound, &b.bound), (Some(x), Some(y)) if x <= y))
            }
            (ModalAtom::Likelihood(a, _), ModalAtom::Likelihood(b, _)) => {
                a.antecedent == b.antecedent
                    && a.consequent == b.consequent
                    && (qualitative || matches!((&a.bound, &b.bound), (Some(x), Some(y)) if y <= x))
            }
            _ => p == g,
        })
    })
}

/// Is `s` true in every distribution (for every admissible error in
/// qualitative mode)? Sentences with any unsubscripted conditional are
/// read qualitatively.
pub fn theorem_check(s: &Sentence, opts: &Options) -> Result<Verdict, KernelError> {
    let bounded = s
        .modal_atoms()
        .iter()
        .filter(|m| m.is_conditional())
        .all(|m| m.bound().is_some());
    let opts = Options {
        qualitative: opts.qualitative || !bounded,
        ..*opts
    };
    let mut trace = Trace::default();
    let mut oracle_used = false;
    let mut undecided = None;
    for (k, seq) in sequents(s).iter().enumerate() {
        trace.notes.push(format!("sequent {}", k + 1));
        if trivially_closed(&seq.premises, &seq.goals, opts.qualitative) {
            trace.notes.push("a goal is among the premises".into());
            continue;
        }
        let v = sequent_inner(&seq.premises, &seq.goals, &opts, true)?;
        oracle_used |= v.oracle_used;
        trace.absorb(v.trace);
        match v.answer {
            Answer::Consequence => {}
            Answer::Undecided => {
                undecided.get_or_insert(v.reason.unwrap_or_default());
            }
            _ => {
                let mut out = Verdict::new(Answer::NotConsequence, trace);
                out.oracle_used = oracle_used;
                out.witness = v.witness;
                return Ok(out);
            }
        }
    }
    let mut out = match undecided {
        Some(reason) => Verdict::undecided(reason, trace),
        None => Verdict::new(Answer::Consequence, trace),
    };
    out.oracle_used = oracle_used;
    Ok(out)
}
