use super::{InconsistentSet, KernelError, Options, SetKind, Trace, Verdict};
use crate::modal::{validate_bounds, ClausalKb, ConditionalKind};
use crate::propcore::Formula;

use super::Answer;

/// Removal fixed point: starting from every index, drop `j` while
/// `U ∧ Aⱼ ∧ ⋀_{i∈I}(Aᵢ → Bᵢ)` is satisfiable. Sweeps run in ascending
/// order until one removes nothing.
pub fn max_inconsistent_set(kb: &ClausalKb, trace: &mut Trace) -> InconsistentSet {
    let order: Vec<usize> = (0..kb.len()).collect();
    max_inconsistent_set_in_order(kb, &order, trace)
}

/// As [`max_inconsistent_set`] with sweeps visiting 0-based indices in
/// `order`. The fixed point does not depend on the order.
pub fn max_inconsistent_set_in_order(
    kb: &ClausalKb,
    order: &[usize],
    trace: &mut Trace,
) -> InconsistentSet {
    let mut member = vec![true; kb.len()];
    let mut steps = Vec::new();
    loop {
        let mut changed = false;
        for &j in order {
            if !member[j] {
                continue;
            }
            let mut fs = vec![kb.necessity.clone(), kb.conditionals[j].antecedent.clone()];
            fs.extend(
                (0..kb.len())
                    .filter(|&i| member[i])
                    .map(|i| kb.conditionals[i].material()),
            );
            if trace.sat(
                format!("I_max: can conditional {} be exercised", j + 1),
                &fs,
            ) {
                member[j] = false;
                steps.push(j + 1);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let set = InconsistentSet {
        kind: SetKind::Max,
        indices: (0..kb.len())
            .filter(|&i| member[i])
            .map(|i| i + 1)
            .collect(),
        steps,
    };
    trace.sets.push(set.clone());
    set
}

/// Addition fixed point: starting empty, add `j` while
/// `U ∧ ⋀_{i∈I}¬Aᵢ ∧ Aⱼ ∧ Bⱼ` is unsatisfiable.
pub fn min_inconsistent_set(kb: &ClausalKb, trace: &mut Trace) -> InconsistentSet {
    let order: Vec<usize> = (0..kb.len()).collect();
    min_inconsistent_set_in_order(kb, &order, trace)
}

pub fn min_inconsistent_set_in_order(
    kb: &ClausalKb,
    order: &[usize],
    trace: &mut Trace,
) -> InconsistentSet {
    let mut member = vec![false; kb.len()];
    let mut steps = Vec::new();
    loop {
        let mut changed = false;
        for &j in order {
            if member[j] {
                continue;
            }
            let c = &kb.conditionals[j];
            let mut fs = vec![kb.necessity.clone()];
            fs.extend(
                (0..kb.len())
                    .filter(|&i| member[i])
                    .map(|i| Formula::not(kb.conditionals[i].antecedent.clone())),
            );
            fs.push(c.antecedent.clone());
            fs.push(c.consequent.clone());
            if !trace.sat(format!("I_min: can conditional {} be met", j + 1), &fs) {
                member[j] = true;
                steps.push(j + 1);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let set = InconsistentSet {
        kind: SetKind::Min,
        indices: (0..kb.len())
            .filter(|&i| member[i])
            .map(|i| i + 1)
            .collect(),
        steps,
    };
    trace.sets.push(set.clone());
    set
}

/// The set whose antecedents every model must give probability zero:
/// `I_max` for defaults, `I_min` for likelihoods.
pub(crate) fn forced_null(kb: &ClausalKb, trace: &mut Trace) -> InconsistentSet {
    match kb.kind {
        Some(ConditionalKind::Likelihood) => min_inconsistent_set(kb, trace),
        _ => max_inconsistent_set(kb, trace),
    }
}

/// `U ∧ ⋀_{i∈I}¬Aᵢ`.
pub(crate) fn null_base(kb: &ClausalKb, set: &InconsistentSet) -> Vec<Formula> {
    let mut fs = vec![kb.necessity.clone()];
    fs.extend(
        set.indices
            .iter()
            .map(|&i| Formula::not(kb.conditionals[i - 1].antecedent.clone())),
    );
    fs
}

/// Consistency without the bound precondition check.
pub(crate) fn consistent_unchecked(kb: &ClausalKb, trace: &mut Trace) -> bool {
    let set = forced_null(kb, trace);
    possibilities_survive(kb, &null_base(kb, &set), trace)
}

/// Every `◇Vⱼ` is compatible with the null set, and some world remains.
pub(crate) fn possibilities_survive(kb: &ClausalKb, base: &[Formula], trace: &mut Trace) -> bool {
    for (j, v) in kb.possibilities.iter().enumerate() {
        let mut fs = base.to_vec();
        fs.push(v.clone());
        if !trace.sat(format!("possibility {} against the null set", j + 1), &fs) {
            return false;
        }
    }
    // Some world must carry the mass. Implied by any satisfiable
    // possibility check above.
    if kb.possibilities.is_empty() && !trace.sat("necessity against the null set", base) {
        return false;
    }
    true
}

/// Decides satisfiability of a clausal knowledge base. In quantitative mode
/// the bounds must satisfy the kernel precondition.
pub fn consistent(kb: &ClausalKb, opts: &Options) -> Result<Verdict, KernelError> {
    if !opts.qualitative {
        validate_bounds(kb).map_err(KernelError::PreconditionViolation)?;
    }
    let mut trace = Trace::default();
    let answer = if consistent_unchecked(kb, &mut trace) {
        Answer::Consistent
    } else {
        Answer::Inconsistent
    };
    Ok(Verdict::new(answer, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::to_clausal;
    use crate::surface::parse_kb;

    fn kb(text: &str) -> ClausalKb {
        to_clausal(&parse_kb(text).unwrap().to_conjunction()).unwrap()
    }

    fn answer(text: &str) -> Answer {
        consistent(&kb(text), &Options::qualitative())
            .unwrap()
            .answer
    }

    #[test]
    fn max_set_of_conflicting_pair() {
        let k = kb("def a => b\ndef a => ~b\ndef c => d");
        let mut t = Trace::default();
        assert_eq!(max_inconsistent_set(&k, &mut t).indices, vec![1, 2]);
    }

    #[test]
    fn emu_kb_has_empty_max_set() {
        let k = kb("nec emu -> bird\ndef bird => fly\ndef emu => ~fly");
        let mut t = Trace::default();
        assert!(max_inconsistent_set(&k, &mut t).indices.is_empty());
    }

    #[test]
    fn min_set_examples() {
        let k = kb("nec ~b\nlik a ~> b");
        let mut t = Trace::default();
        assert_eq!(min_inconsistent_set(&k, &mut t).indices, vec![1]);
        let k = kb("nec ~b\nlik a ~> b\nlik b ~> c");
        assert_eq!(min_inconsistent_set(&k, &mut t).indices, vec![1, 2]);
    }

    #[test]
    fn consistency_examples() {
        assert_eq!(answer("def a => b\ndef a => ~b"), Answer::Consistent);
        assert_eq!(
            answer("poss a\ndef a => b\ndef a => ~b"),
            Answer::Inconsistent
        );
        assert_eq!(answer("nec ~b\nposs a\nlik a ~> b"), Answer::Inconsistent);
        assert_eq!(answer("nec ~b\nlik a ~> b"), Answer::Consistent);
        assert_eq!(answer("nec a & ~a"), Answer::Inconsistent);
        assert_eq!(answer(""), Answer::Consistent);
    }

    #[test]
    fn precondition_enforced_in_quantitative_mode() {
        let err = consistent(&kb("def a => b @ 2/3"), &Options::default()).unwrap_err();
        assert!(matches!(err, KernelError::PreconditionViolation(_)));
    }

    #[test]
    fn sat_calls_stay_within_quadratic_bound() {
        let k = kb("poss a\nposs c\ndef a => b\ndef b => c\ndef c => ~a\ndef a => ~b");
        let v = consistent(&k, &Options::qualitative()).unwrap();
        assert!(v.trace.sat_calls.len() <= k.len() * k.len() + k.possibilities.len());
    }
}
