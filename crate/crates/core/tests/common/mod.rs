#![allow(dead_code)]

use plausible_core::modal::{ModalAtom, ModalConjunction, Rational};
use plausible_core::oracle::WorldDistribution;
use plausible_core::propcore::Formula;
use rand::seq::SliceRandom;
use rand::Rng;

pub const ATOMS: [&str; 3] = ["a", "b", "c"];

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn formula<R: Rng>(rng: &mut R, atoms: &[&str], depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        let a = Formula::atom(*atoms.choose(rng).unwrap());
        return if rng.gen_bool(0.3) {
            Formula::not(a)
        } else {
            a
        };
    }
    let x = formula(rng, atoms, depth - 1);
    let y = formula(rng, atoms, depth - 1);
    match rng.gen_range(0..5) {
        0 => Formula::not(x),
        1 | 2 => Formula::and(x, y),
        3 => Formula::or(x, y),
        _ => Formula::implies(x, y),
    }
}

/// An antecedent: `true` now and then, otherwise a small formula.
pub fn antecedent<R: Rng>(rng: &mut R) -> Formula {
    if rng.gen_bool(0.15) {
        Formula::True
    } else {
        formula(rng, &ATOMS, 1)
    }
}

pub fn bound<R: Rng>(rng: &mut R) -> Rational {
    [r(1, 10), r(1, 5), r(1, 4)].choose(rng).unwrap().clone()
}

/// Homogeneous KB over at most three atoms: at most three conditionals of
/// one kind, an optional necessity, and a possibility half the time.
pub fn kb<R: Rng>(rng: &mut R, likelihood: bool) -> ModalConjunction {
    let mut out = ModalConjunction::default();
    if rng.gen_bool(0.3) {
        out.push(ModalAtom::Necessity(formula(rng, &ATOMS, 1)));
    }
    if rng.gen_bool(0.5) {
        out.push(ModalAtom::Possibility(antecedent(rng)));
    }
    for _ in 0..rng.gen_range(0..=3) {
        let a = antecedent(rng);
        let b = formula(rng, &ATOMS, 1);
        let e = Some(bound(rng));
        out.push(if likelihood {
            ModalAtom::lik(a, b, e)
        } else {
            ModalAtom::def(a, b, e)
        });
    }
    out
}

/// Random distribution over `vocab` with small integer weights; about a
/// third of the worlds get weight zero so vacuous cases come up.
pub fn distribution<R: Rng>(rng: &mut R, vocab: &[String]) -> WorldDistribution {
    let worlds = 1usize << vocab.len();
    loop {
        let w: Vec<i64> = (0..worlds)
            .map(|_| {
                if rng.gen_bool(0.33) {
                    0
                } else {
                    rng.gen_range(1..=12)
                }
            })
            .collect();
        let total: i64 = w.iter().sum();
        if total == 0 {
            continue;
        }
        let probs = w.iter().map(|&x| r(x, total)).collect();
        return WorldDistribution::new(vocab.to_vec(), probs).unwrap();
    }
}

pub fn modal_atom<R: Rng>(rng: &mut R, atoms: &[&str]) -> ModalAtom {
    let f = |rng: &mut R| formula(rng, atoms, 2);
    let e = Some(r(rng.gen_range(1..=9), 10));
    match rng.gen_range(0..4) {
        0 => ModalAtom::Necessity(f(rng)),
        1 => ModalAtom::Possibility(f(rng)),
        2 => ModalAtom::def(f(rng), f(rng), e),
        _ => ModalAtom::lik(f(rng), f(rng), e),
    }
}
