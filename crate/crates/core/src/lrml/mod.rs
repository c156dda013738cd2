//! LegalRuleML ingestion: parsing of the supported XML fragment and
//! translation into NMF annotated formulas.
//!
//! The supported fragment covers prescriptive, constitutive and factual
//! statements whose rule bodies and heads are built from atoms,
//! conjunction, disjunction and negation. Suborder lists, deontic
//! operators inside rule bodies, and compound deontic heads are rejected
//! rather than guessed at.

mod parse;
mod translate;

use std::collections::BTreeMap;

use thiserror::Error;

pub use parse::parse_lrml;
pub use translate::{tr_formula, translate_document, translate_statement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatementKind {
    Prescriptive,
    Constitutive,
    Factual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Universal,
    Existential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeonticOp {
    Obligation,
    Permission,
    Prohibition,
}

/// An argument of a RuleML atom: a named individual or a variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LrmlTerm {
    Individual(String),
    Variable(String),
}

/// Inner RuleML formula fragment: atoms, and, or, neg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LrmlFormula {
    Atom {
        relation: String,
        args: Vec<LrmlTerm>,
    },
    And(Vec<LrmlFormula>),
    Or(Vec<LrmlFormula>),
    Neg(Box<LrmlFormula>),
}

/// One parsed statement. For factual statements the whole formula sits
/// in `head` and `body` is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrmlStatement {
    pub kind: StatementKind,
    pub key: String,
    pub closure: Closure,
    /// Set when the source XML had no closure attribute and the
    /// universal default was applied.
    pub closure_defaulted: bool,
    pub body: Option<LrmlFormula>,
    pub head: LrmlFormula,
    pub deontic: Option<DeonticOp>,
    pub bearer: Option<LrmlTerm>,
}

/// A parsed document: statements in document order, plus reference texts
/// and statement-to-reference associations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LrmlDocument {
    pub statements: Vec<LrmlStatement>,
    /// reference key -> reference text
    pub references: BTreeMap<String, String>,
    /// statement key -> associated reference keys
    pub associations: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LrmlError {
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error("statement '{key}': unsupported feature: {feature}")]
    UnsupportedFeature { key: String, feature: String },
    #[error("name '{name}' cannot be sanitized to a TPTP identifier")]
    NameError { name: String },
    #[error("duplicate statement key '{key}'")]
    DuplicateKey { key: String },
    #[error("translation failed for {} statement(s):{}", .0.len(),
        .0.iter().map(|(k, e)| format!("\n  {k}: {e}")).collect::<String>())]
    Aggregate(Vec<(String, Box<LrmlError>)>),
}

impl From<roxmltree::Error> for LrmlError {
    fn from(e: roxmltree::Error) -> Self {
        LrmlError::Xml(e.to_string())
    }
}
