//! Translation of parsed LegalRuleML statements into NMF annotated
//! formulas. Prescriptive statements become `{$$obligation}`-family
//! applications over (body, head), constitutive statements become
//! `{$$constitutive}` applications, factual statements translate
//! directly. Free variables are closed under the statement's closure
//! quantifier; statement keys become formula names and associated
//! references are kept as annotations.

use std::collections::HashMap;

use super::*;
use crate::nmf;
use crate::tptp::{
    AnnotatedFormula, ConnectiveParam, FormulaAst, Language, Payload, Problem, Quantifier, Role,
    TermAst, TypedVar,
};

/// What a source name is used as. Distinct kinds (and distinct arities
/// of the same relation name) sanitize to distinct identifiers so that
/// translated problems use every symbol at one arity only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum NameKind {
    StatementKey,
    Individual,
    Variable,
    Relation(usize),
}

impl NameKind {
    /// TPTP namespace the sanitized name must be unique within: formula
    /// names, functor symbols (relations and individuals share one), or
    /// variables.
    fn namespace(&self) -> u8 {
        match self {
            NameKind::StatementKey => 0,
            NameKind::Individual | NameKind::Relation(_) => 1,
            NameKind::Variable => 2,
        }
    }
}

/// Memoizing name sanitizer. The same (source name, kind) pair always
/// maps to the same identifier; names that collide after sanitization
/// within one namespace are disambiguated with a numeric suffix.
#[derive(Debug, Default)]
pub(crate) struct NameTable {
    assigned: HashMap<(String, NameKind), String>,
    taken: HashMap<(u8, String), usize>,
}

impl NameTable {
    fn sanitize(&mut self, raw: &str, kind: NameKind) -> Result<String, LrmlError> {
        let upper = kind == NameKind::Variable;
        if let Some(done) = self.assigned.get(&(raw.to_string(), kind.clone())) {
            return Ok(done.clone());
        }
        let mut text: String = raw
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        while text.starts_with('_') {
            text.remove(0);
        }
        if text.is_empty() {
            return Err(LrmlError::NameError {
                name: raw.to_string(),
            });
        }
        if text.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            text.insert(0, if upper { 'X' } else { 'x' });
        }
        let mut chars = text.chars();
        let first = chars.next().unwrap();
        let first = if upper {
            first.to_ascii_uppercase()
        } else {
            first.to_ascii_lowercase()
        };
        let mut candidate: String = std::iter::once(first).chain(chars).collect();
        let space = kind.namespace();
        match self.taken.get_mut(&(space, candidate.clone())) {
            Some(count) => {
                *count += 1;
                candidate = format!("{candidate}_{count}");
                self.taken.insert((space, candidate.clone()), 1);
            }
            None => {
                self.taken.insert((space, candidate.clone()), 1);
            }
        }
        self.assigned
            .insert((raw.to_string(), kind), candidate.clone());
        Ok(candidate)
    }

    pub(crate) fn statement_key(&mut self, raw: &str) -> Result<String, LrmlError> {
        self.sanitize(raw, NameKind::StatementKey)
    }

    fn relation(&mut self, raw: &str, arity: usize) -> Result<String, LrmlError> {
        self.sanitize(raw, NameKind::Relation(arity))
    }

    fn individual(&mut self, raw: &str) -> Result<String, LrmlError> {
        self.sanitize(raw, NameKind::Individual)
    }

    fn variable(&mut self, raw: &str) -> Result<String, LrmlError> {
        self.sanitize(raw, NameKind::Variable)
    }
}

fn tr_term(term: &LrmlTerm, names: &mut NameTable) -> Result<TermAst, LrmlError> {
    Ok(match term {
        LrmlTerm::Individual(name) => TermAst::Constant(names.individual(name)?),
        LrmlTerm::Variable(name) => TermAst::Variable(names.variable(name)?),
    })
}

fn tr_formula_with(f: &LrmlFormula, names: &mut NameTable) -> Result<FormulaAst, LrmlError> {
    Ok(match f {
        LrmlFormula::Atom { relation, args } => {
            let pred = names.relation(relation, args.len())?;
            let args = args
                .iter()
                .map(|a| tr_term(a, names))
                .collect::<Result<Vec<_>, _>>()?;
            FormulaAst::Atom { pred, args }
        }
        LrmlFormula::And(parts) => fold_connective(parts, names, FormulaAst::and)?,
        LrmlFormula::Or(parts) => fold_connective(parts, names, FormulaAst::or)?,
        LrmlFormula::Neg(inner) => FormulaAst::negate(tr_formula_with(inner, names)?),
    })
}

fn fold_connective(
    parts: &[LrmlFormula],
    names: &mut NameTable,
    combine: fn(FormulaAst, FormulaAst) -> FormulaAst,
) -> Result<FormulaAst, LrmlError> {
    let mut translated = parts.iter().map(|p| tr_formula_with(p, names));
    let first = translated.next().expect("parser rejects empty connectives")?;
    translated.try_fold(first, |acc, next| Ok(combine(acc, next?)))
}

/// Translates an inner RuleML formula: atoms map to predicate
/// applications, individuals to lower-case constants, variables to
/// upper-case TPTP variables, and/or/neg to `&`/`|`/`~`.
pub fn tr_formula(f: &LrmlFormula) -> Result<FormulaAst, LrmlError> {
    tr_formula_with(f, &mut NameTable::default())
}

/// Variables of the closure quantifier: free variables of body, head and
/// bearer in first-occurrence order, body first. Translated rule
/// formulas contain no binders, so every variable occurrence is free.
fn closure_vars(body: Option<&FormulaAst>, head: &FormulaAst, bearer: Option<&TermAst>) -> Vec<String> {
    fn visit_term(term: &TermAst, seen: &mut Vec<String>) {
        match term {
            TermAst::Variable(v) => {
                if !seen.iter().any(|s| s == v) {
                    seen.push(v.clone());
                }
            }
            TermAst::Constant(_) => {}
            TermAst::Function(_, args) | TermAst::List(args) => {
                for a in args {
                    visit_term(a, seen);
                }
            }
        }
    }
    let mut seen = Vec::new();
    let mut visit = |f: &FormulaAst| {
        f.walk(&mut |node| {
            if let FormulaAst::Atom { args, .. } = node {
                for a in args {
                    visit_term(a, &mut seen);
                }
            }
        });
    };
    if let Some(b) = body {
        visit(b);
    }
    visit(head);
    // a variable bearer is bound by the same closure quantifier
    if let Some(term) = bearer {
        visit_term(term, &mut seen);
    }
    seen
}

fn translate_statement_with(
    statement: &LrmlStatement,
    document: &LrmlDocument,
    names: &mut NameTable,
) -> Result<AnnotatedFormula, LrmlError> {
    let name = names.statement_key(&statement.key)?;

    let formula = match statement.kind {
        StatementKind::Factual => {
            let head = tr_formula_with(&statement.head, names)?;
            if !head.free_vars().is_empty() {
                // the translation scheme adds no quantifier for factual
                // statements, so free variables would leak
                return Err(LrmlError::UnsupportedFeature {
                    key: statement.key.clone(),
                    feature: "free variables in a factual statement".to_string(),
                });
            }
            head
        }
        StatementKind::Prescriptive | StatementKind::Constitutive => {
            let body = match &statement.body {
                Some(b) => tr_formula_with(b, names)?,
                // unconditional norms get the trivially true body
                None => FormulaAst::True,
            };
            let head = tr_formula_with(&statement.head, names)?;

            let connective = match (statement.kind, statement.deontic) {
                (StatementKind::Constitutive, None) => nmf::CONSTITUTIVE,
                (StatementKind::Prescriptive, Some(DeonticOp::Obligation)) => nmf::OBLIGATION,
                (StatementKind::Prescriptive, Some(DeonticOp::Permission)) => nmf::PERMISSION,
                (StatementKind::Prescriptive, Some(DeonticOp::Prohibition)) => nmf::PROHIBITION,
                _ => {
                    return Err(LrmlError::UnsupportedFeature {
                        key: statement.key.clone(),
                        feature: "prescriptive statement without a deontic operator".to_string(),
                    })
                }
            };

            let bearer = statement
                .bearer
                .as_ref()
                .map(|term| tr_term(term, names))
                .transpose()?;
            let params = match &bearer {
                Some(term) => vec![ConnectiveParam::KeyValue {
                    key: "bearer".to_string(),
                    value: term.clone(),
                }],
                None => Vec::new(),
            };

            let vars = closure_vars(Some(&body), &head, bearer.as_ref());
            let applied = FormulaAst::nonclassical(connective, params, vec![body, head]);
            if vars.is_empty() {
                applied
            } else {
                let quantifier = match statement.closure {
                    Closure::Universal => Quantifier::Forall,
                    Closure::Existential => Quantifier::Exists,
                };
                FormulaAst::quantified(
                    quantifier,
                    vars.into_iter().map(TypedVar::untyped).collect(),
                    applied,
                )
            }
        }
    };

    let mut annotations = Vec::new();
    if let Some(ref_keys) = document.associations.get(&statement.key) {
        let texts: Vec<TermAst> = ref_keys
            .iter()
            .map(|k| {
                let text = document.references.get(k).cloned().unwrap_or_else(|| k.clone());
                TermAst::Constant(text)
            })
            .collect();
        if !texts.is_empty() {
            annotations.push(TermAst::Function(
                "references".to_string(),
                vec![TermAst::List(texts)],
            ));
        }
    }
    if statement.closure_defaulted {
        annotations.push(TermAst::Function(
            "default_closure".to_string(),
            vec![TermAst::Constant("universal".to_string())],
        ));
    }

    Ok(AnnotatedFormula {
        language: Language::Tff,
        name,
        role: Role::Axiom,
        payload: Payload::Formula(formula),
        source: None,
        annotations: if annotations.is_empty() {
            None
        } else {
            Some(annotations)
        },
    })
}

/// Translates a single statement against its document context.
pub fn translate_statement(
    statement: &LrmlStatement,
    document: &LrmlDocument,
) -> Result<AnnotatedFormula, LrmlError> {
    translate_statement_with(statement, document, &mut NameTable::default())
}

/// Translates a whole document in statement order. No logic
/// specification is emitted; the result is semantically underspecified
/// NMF. Statement-level failures are aggregated with their keys.
pub fn translate_document(document: &LrmlDocument) -> Result<Problem, LrmlError> {
    let mut names = NameTable::default();
    let mut formulas = Vec::new();
    let mut failures = Vec::new();
    for statement in &document.statements {
        match translate_statement_with(statement, document, &mut names) {
            Ok(formula) => formulas.push(formula),
            Err(e) => failures.push((statement.key.clone(), Box::new(e))),
        }
    }
    if failures.is_empty() {
        Ok(Problem::new(formulas))
    } else {
        Err(LrmlError::Aggregate(failures))
    }
}
