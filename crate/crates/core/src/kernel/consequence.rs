use num_traits::{One, Zero};

use super::sets::{
    consistent_unchecked, forced_null, min_inconsistent_set, null_base, possibilities_survive,
};
use super::{Answer, Bound, KernelError, Options, TerminationRule, Trace, Verdict};
use crate::modal::{
    validate_bounds, validate_bounds_with_count, ClausalKb, Conditional, ConditionalKind,
    ModalError, Rational,
};
use crate::propcore::Formula;

fn check_bounds(kb: &ClausalKb, opts: &Options) -> Result<(), KernelError> {
    if opts.qualitative {
        return Ok(());
    }
    validate_bounds(kb).map_err(KernelError::PreconditionViolation)
}

fn sum_bounds(kb: &ClausalKb) -> Rational {
    kb.bounds().flatten().sum()
}

/// Does `C ⇒ B` follow from a default knowledge base?
///
/// The test conditional `C ⇒ ¬B`, together with `◇C` in proper mode, is
/// added and the result checked for consistency. In quantitative mode the
/// conclusion holds with `δ = Σεᵢ` over the knowledge base.
pub fn default_consequence(
    kb: &ClausalKb,
    c: &Formula,
    b: &Formula,
    opts: &Options,
) -> Result<Verdict, KernelError> {
    if kb.kind == Some(ConditionalKind::Likelihood) {
        return Err(ModalError::MixedKind.into());
    }
    check_bounds(kb, opts)?;
    let mut test = kb.clone();
    test.add_conditional(
        ConditionalKind::Default,
        Conditional::new(c.clone(), Formula::not(b.clone()), None),
        1,
    )?;
    if opts.proper {
        test.add_possibility(c.clone());
    }
    let mut trace = Trace::default();
    trace.notes.push(format!(
        "test conditional {} is C => ~B{}",
        test.len(),
        if opts.proper { ", with poss C" } else { "" }
    ));
    if consistent_unchecked(&test, &mut trace) {
        return Ok(Verdict::new(Answer::NotConsequence, trace));
    }
    let bound = (!opts.qualitative).then(|| Bound::Delta(sum_bounds(kb)));
    Ok(Verdict::new(Answer::Consequence, trace).with_bound(bound))
}

/// Does `C ≈ H` follow from a likelihood knowledge base?
///
/// Grows a chain `I` of conditionals whose satisfaction forces `C ∧ H`
/// until `C ∧ ¬H` is ruled out. The floor is `(e/(1+e))^|I_A|` with `e`
/// the smallest bound, or the order `Σnᵢ` in qualitative mode.
pub fn likelihood_consequence(
    kb: &ClausalKb,
    c: &Formula,
    h: &Formula,
    opts: &Options,
) -> Result<Verdict, KernelError> {
    if kb.kind == Some(ConditionalKind::Default) {
        return Err(ModalError::MixedKind.into());
    }
    let mut trace = Trace::default();
    if !opts.qualitative {
        // Accepted chains stay sound for any bounds below 1; only the
        // consistency side needs eᵢ < 1/|I_A|.
        validate_bounds_with_count(kb, 1).map_err(KernelError::PreconditionViolation)?;
        if let Err(v) = validate_bounds(kb) {
            trace
                .notes
                .push(format!("{v}: a negative answer may be incomplete"));
        }
    }
    let set = min_inconsistent_set(kb, &mut trace);
    let base = null_base(kb, &set);
    if !possibilities_survive(kb, &base, &mut trace) {
        return Err(KernelError::InconsistentPremises);
    }

    let not_h = Formula::not(h.clone());
    let not_goal = Formula::not(Formula::and(c.clone(), h.clone()));
    let mut fs = base.clone();
    fs.push(c.clone());
    fs.push(not_h.clone());
    if !trace.sat("C & ~H against the null set", &fs) {
        let bound = (!opts.qualitative).then_some(Bound::AnyFloor);
        return Ok(Verdict::new(Answer::Consequence, trace).with_bound(bound));
    }

    let mut chain: Vec<usize> = Vec::new();
    loop {
        let accepted = (0..kb.len())
            .filter(|i| !set.indices.contains(&(i + 1)) && !chain.contains(i))
            .find(|&j| {
                let cj = &kb.conditionals[j];
                let mut fs = base.clone();
                fs.push(cj.antecedent.clone());
                fs.push(cj.consequent.clone());
                fs.extend(chain.iter().map(|&i| kb.conditionals[i].material()));
                fs.push(not_goal.clone());
                !trace.sat(
                    format!("chain: does conditional {} force C & H", j + 1),
                    &fs,
                )
            });
        let Some(j) = accepted else {
            return Ok(Verdict::new(Answer::NotConsequence, trace));
        };
        chain.push(j);
        trace.chain.push(j + 1);

        let mut fs = base.clone();
        fs.push(c.clone());
        fs.push(not_h.clone());
        fs.extend(chain.iter().map(|&i| {
            let ci = &kb.conditionals[i];
            match opts.termination {
                TerminationRule::Reconstructed => ci.material(),
                TerminationRule::Literal => ci.antecedent.clone(),
            }
        }));
        if !trace.sat("chain: is C & ~H ruled out", &fs) {
            let bound = if opts.qualitative {
                Bound::Order(kb.orders.iter().sum())
            } else {
                let e = kb
                    .bounds()
                    .flatten()
                    .min()
                    .cloned()
                    .unwrap_or_else(Rational::zero);
                let ratio = &e / (Rational::one() + &e);
                Bound::Floor(num_traits::pow(ratio, kb.len()))
            };
            return Ok(Verdict::new(Answer::Consequence, trace).with_bound(Some(bound)));
        }
    }
}

/// Does `◇C` follow? Adds `□¬C` and checks consistency.
pub fn possibility_consequence(
    kb: &ClausalKb,
    c: &Formula,
    opts: &Options,
) -> Result<Verdict, KernelError> {
    check_bounds(kb, opts)?;
    let mut test = kb.clone();
    test.add_necessity(Formula::not(c.clone()));
    let mut trace = Trace::default();
    let answer = if consistent_unchecked(&test, &mut trace) {
        Answer::NotConsequence
    } else {
        Answer::Consequence
    };
    Ok(Verdict::new(answer, trace))
}

/// Does `□C` follow? Every model gives the null set's antecedents
/// probability zero, and the null set is exactly what all models share.
pub fn necessity_consequence(
    kb: &ClausalKb,
    c: &Formula,
    opts: &Options,
) -> Result<Verdict, KernelError> {
    check_bounds(kb, opts)?;
    let mut trace = Trace::default();
    let set = forced_null(kb, &mut trace);
    let mut fs = null_base(kb, &set);
    if !possibilities_survive(kb, &fs, &mut trace) {
        trace.notes.push("premises are inconsistent".into());
        return Ok(Verdict::new(Answer::Consequence, trace));
    }
    fs.push(Formula::not(c.clone()));
    let answer = if trace.sat("~C against the null set", &fs) {
        Answer::NotConsequence
    } else {
        Answer::Consequence
    };
    Ok(Verdict::new(answer, trace))
}
