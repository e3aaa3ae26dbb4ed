//! Text formats: formulas, knowledge-base files, queries and sentences.
//!
//! ```text
//! nec emu -> bird
//! def emu => ~flies @ 1/100
//! def bird => flies @ 0.01
//! lik prof ~> phd @ 1/2 ^2
//! ```

mod lexer;
mod parser;
mod render;

use thiserror::Error;

use crate::modal::{AtomKind, ModalAtom, ModalConjunction, Sentence};

pub use parser::{parse_formula, parse_kb, parse_query, parse_sentence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: bound `{value}` is outside [0, 1]")]
    BoundRange {
        line: usize,
        col: usize,
        value: String,
    },
    #[error("{line}:{col}: modal operator `{keyword}` cannot be nested inside a formula")]
    Nesting {
        line: usize,
        col: usize,
        keyword: String,
    },
}

impl SurfaceError {
    pub(crate) fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        SurfaceError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Statement {
    pub atom: ModalAtom,
    pub line: usize,
    pub col: usize,
}

/// A parsed KB file. Equality compares statements only, not positions.
#[derive(Debug, Clone, Default)]
pub struct KbDocument {
    pub statements: Vec<Statement>,
}

impl PartialEq for KbDocument {
    fn eq(&self, other: &Self) -> bool {
        self.statements.len() == other.statements.len()
            && self
                .statements
                .iter()
                .zip(&other.statements)
                .all(|(a, b)| a.atom == b.atom)
    }
}

impl Eq for KbDocument {}

impl KbDocument {
    pub fn from_atoms<I: IntoIterator<Item = ModalAtom>>(atoms: I) -> Self {
        KbDocument {
            statements: atoms
                .into_iter()
                .enumerate()
                .map(|(i, atom)| Statement {
                    atom,
                    line: i + 1,
                    col: 1,
                })
                .collect(),
        }
    }

    pub fn atoms(&self) -> impl Iterator<Item = &ModalAtom> {
        self.statements.iter().map(|s| &s.atom)
    }

    pub fn to_conjunction(&self) -> ModalConjunction {
        self.atoms().cloned().collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryFlags {
    pub improper: bool,
    pub qualitative: bool,
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Consistent,
    Default,
    Likelihood,
    Necessity,
    Possibility,
    /// Disjunctive goal mixing several atom kinds.
    Mixed,
    Theorem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    /// Disjunction of goal atoms; empty for consistency and theorem queries.
    pub goals: Vec<ModalAtom>,
    pub theorem: Option<Sentence>,
    pub flags: QueryFlags,
}

impl Query {
    pub fn consistent(flags: QueryFlags) -> Self {
        Query {
            goals: Vec::new(),
            theorem: None,
            flags,
        }
    }

    pub fn goals(goals: Vec<ModalAtom>, flags: QueryFlags) -> Self {
        Query {
            goals,
            theorem: None,
            flags,
        }
    }

    pub fn theorem(s: Sentence, flags: QueryFlags) -> Self {
        Query {
            goals: Vec::new(),
            theorem: Some(s),
            flags,
        }
    }

    pub fn kind(&self) -> QueryKind {
        if self.theorem.is_some() {
            return QueryKind::Theorem;
        }
        let Some(first) = self.goals.first() else {
            return QueryKind::Consistent;
        };
        if self.goals.iter().any(|g| g.kind() != first.kind()) {
            return QueryKind::Mixed;
        }
        match first.kind() {
            AtomKind::Necessity => QueryKind::Necessity,
            AtomKind::Possibility => QueryKind::Possibility,
            AtomKind::Default => QueryKind::Default,
            AtomKind::Likelihood => QueryKind::Likelihood,
        }
    }
}
