//! The normative meta form (NMF) dialect: the deontic connective
//! vocabulary `$$obligation`/`$$permission`/`$$prohibition`/
//! `$$constitutive` and the `$$normative` logic specification. NMF
//! problems carry no fixed semantics; a target logic is chosen later.

use std::fmt;

use thiserror::Error;

use crate::tptp::{BinOp, ConnectiveParam, FormulaAst, LogicValue, Payload, Problem, Role, TermAst};

pub const OBLIGATION: &str = "$$obligation";
pub const PERMISSION: &str = "$$permission";
pub const PROHIBITION: &str = "$$prohibition";
pub const CONSTITUTIVE: &str = "$$constitutive";

/// The deontic logics a problem can be specialized into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetLogic {
    Sdl,
    AqvistE,
    CarmoJones,
}

impl TargetLogic {
    /// The `$$`-identifier used in logic specifications.
    pub fn spec_ident(self) -> &'static str {
        match self {
            TargetLogic::Sdl => "$$sdl",
            TargetLogic::AqvistE => "$$aqvistE",
            TargetLogic::CarmoJones => "$$carmoJones",
        }
    }

    pub fn from_spec_ident(ident: &str) -> Option<TargetLogic> {
        Some(match ident {
            "$$sdl" => TargetLogic::Sdl,
            "$$aqvistE" => TargetLogic::AqvistE,
            "$$carmoJones" => TargetLogic::CarmoJones,
            _ => return None,
        })
    }

    /// The CLI-facing name.
    pub fn cli_name(self) -> &'static str {
        match self {
            TargetLogic::Sdl => "sdl",
            TargetLogic::AqvistE => "aqvistE",
            TargetLogic::CarmoJones => "carmoJones",
        }
    }
}

impl fmt::Display for TargetLogic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NmfKind {
    Obligation,
    Permission,
    Prohibition,
    Constitutive,
}

impl NmfKind {
    pub fn connective_name(self) -> &'static str {
        match self {
            NmfKind::Obligation => OBLIGATION,
            NmfKind::Permission => PERMISSION,
            NmfKind::Prohibition => PROHIBITION,
            NmfKind::Constitutive => CONSTITUTIVE,
        }
    }

    pub fn from_connective_name(name: &str) -> Option<NmfKind> {
        Some(match name {
            OBLIGATION => NmfKind::Obligation,
            PERMISSION => NmfKind::Permission,
            PROHIBITION => NmfKind::Prohibition,
            CONSTITUTIVE => NmfKind::Constitutive,
            _ => return None,
        })
    }
}

/// A recognized NMF connective occurrence: always binary (body, head),
/// with an optional bearer on the three deontic kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NmfConnective {
    pub kind: NmfKind,
    pub bearer: Option<TermAst>,
}

impl NmfConnective {
    /// Classifies a non-classical application. Returns `Ok(None)` for
    /// connectives that are not part of the NMF vocabulary and an error
    /// message for malformed NMF occurrences.
    pub fn classify(
        connective: &str,
        params: &[ConnectiveParam],
        args: &[FormulaAst],
    ) -> Result<Option<NmfConnective>, String> {
        let kind = match NmfKind::from_connective_name(connective) {
            Some(kind) => kind,
            None => return Ok(None),
        };
        if args.len() != 2 {
            return Err(format!(
                "{connective} takes exactly 2 arguments (body, head), found {}",
                args.len()
            ));
        }
        let mut bearer = None;
        for param in params {
            match param {
                ConnectiveParam::KeyValue { key, value } if key == "bearer" => {
                    if bearer.is_some() {
                        return Err(format!("{connective} has more than one bearer parameter"));
                    }
                    if kind == NmfKind::Constitutive {
                        return Err("$$constitutive does not take a bearer".to_string());
                    }
                    bearer = Some(value.clone());
                }
                ConnectiveParam::KeyValue { key, .. } => {
                    return Err(format!("unknown parameter '{key}' on {connective}"));
                }
                ConnectiveParam::Index(_) => {
                    return Err(format!("index parameters are not valid on {connective}"));
                }
            }
        }
        Ok(Some(NmfConnective { kind, bearer }))
    }
}

/// A validation finding, locating the offending node by formula name and
/// a path into its syntax tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub formula: String,
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "in '{}': {}", self.formula, self.message)
        } else {
            write!(f, "in '{}' at {}: {}", self.formula, self.path, self.message)
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NmfError {
    #[error("invalid logic specification: expected $$normative == [$$logic == <target>] \
             with a known target, found '{found}'")]
    InvalidLogicSpec { found: String },
}

/// Checks that every `$$`-connective in the problem belongs to the NMF
/// vocabulary with correct arity and bearer usage, that the logic
/// specification (if any) has shape `$$normative == [$$logic == ...]`,
/// and that symbol arities are used consistently. Returns findings
/// instead of failing.
pub fn validate_nmf(problem: &Problem) -> Vec<Diagnostic> {
    let mut diagnostics = Vec::new();

    let logic_formulas: Vec<_> = problem
        .formulas
        .iter()
        .filter(|f| f.role == Role::Logic)
        .collect();
    if logic_formulas.len() > 1 {
        diagnostics.push(Diagnostic {
            formula: logic_formulas[1].name.clone(),
            path: String::new(),
            message: "more than one logic specification in the problem".to_string(),
        });
    }
    if let Some(formula) = logic_formulas.first() {
        match formula.payload.as_logic() {
            Some(spec) => {
                if spec.name != "$$normative" {
                    diagnostics.push(Diagnostic {
                        formula: formula.name.clone(),
                        path: String::new(),
                        message: format!(
                            "NMF logic specification must be named $$normative, found {}",
                            spec.name
                        ),
                    });
                } else if spec.options.len() != 1
                    || spec.options[0].0 != "$$logic"
                    || !matches!(spec.options[0].1, LogicValue::Ident(_))
                {
                    diagnostics.push(Diagnostic {
                        formula: formula.name.clone(),
                        path: String::new(),
                        message: "expected shape $$normative == [$$logic == <target>]".to_string(),
                    });
                }
            }
            None => diagnostics.push(Diagnostic {
                formula: formula.name.clone(),
                path: String::new(),
                message: "logic-role formula without a logic specification".to_string(),
            }),
        }
    }

    let mut arities: std::collections::HashMap<String, (usize, String)> =
        std::collections::HashMap::new();
    for formula in &problem.formulas {
        if let Payload::Formula(ast) = &formula.payload {
            check_formula(ast, &formula.name, "formula", &mut diagnostics, &mut arities);
        }
    }
    diagnostics
}

fn check_formula(
    f: &FormulaAst,
    formula_name: &str,
    path: &str,
    diagnostics: &mut Vec<Diagnostic>,
    arities: &mut std::collections::HashMap<String, (usize, String)>,
) {
    match f {
        FormulaAst::True | FormulaAst::False => {}
        FormulaAst::Atom { pred, args } => {
            record_arity(pred, args.len(), formula_name, path, diagnostics, arities);
            for (i, arg) in args.iter().enumerate() {
                check_term(
                    arg,
                    formula_name,
                    &format!("{path}.arg[{i}]"),
                    diagnostics,
                    arities,
                );
            }
        }
        FormulaAst::Not(inner) => check_formula(
            inner,
            formula_name,
            &format!("{path}.neg"),
            diagnostics,
            arities,
        ),
        FormulaAst::Binary { op, left, right } => {
            check_formula(
                left,
                formula_name,
                &format!("{path}.{}lhs", op_tag(*op)),
                diagnostics,
                arities,
            );
            check_formula(
                right,
                formula_name,
                &format!("{path}.{}rhs", op_tag(*op)),
                diagnostics,
                arities,
            );
        }
        FormulaAst::Quantified { body, .. } => check_formula(
            body,
            formula_name,
            &format!("{path}.body"),
            diagnostics,
            arities,
        ),
        FormulaAst::Lambda { body, .. } => check_formula(
            body,
            formula_name,
            &format!("{path}.lambda"),
            diagnostics,
            arities,
        ),
        FormulaAst::Apply { func, .. } => check_formula(
            func,
            formula_name,
            &format!("{path}.apply"),
            diagnostics,
            arities,
        ),
        FormulaAst::NonClassical {
            connective,
            params,
            args,
        } => {
            if connective.starts_with("$$") {
                match NmfConnective::classify(connective, params, args) {
                    Ok(Some(_)) => {}
                    Ok(None) => diagnostics.push(Diagnostic {
                        formula: formula_name.to_string(),
                        path: path.to_string(),
                        message: format!("'{connective}' is not an NMF connective"),
                    }),
                    Err(message) => diagnostics.push(Diagnostic {
                        formula: formula_name.to_string(),
                        path: path.to_string(),
                        message,
                    }),
                }
            }
            for (i, arg) in args.iter().enumerate() {
                check_formula(
                    arg,
                    formula_name,
                    &format!("{path}.{connective}[{i}]"),
                    diagnostics,
                    arities,
                );
            }
        }
    }
}

fn op_tag(op: BinOp) -> &'static str {
    match op {
        BinOp::And => "and.",
        BinOp::Or => "or.",
        BinOp::Implies => "implies.",
        BinOp::Iff => "iff.",
    }
}

fn check_term(
    term: &TermAst,
    formula_name: &str,
    path: &str,
    diagnostics: &mut Vec<Diagnostic>,
    arities: &mut std::collections::HashMap<String, (usize, String)>,
) {
    match term {
        TermAst::Variable(_) => {}
        TermAst::Constant(name) => {
            record_arity(name, 0, formula_name, path, diagnostics, arities)
        }
        TermAst::Function(name, args) => {
            record_arity(name, args.len(), formula_name, path, diagnostics, arities);
            for (i, arg) in args.iter().enumerate() {
                check_term(
                    arg,
                    formula_name,
                    &format!("{path}[{i}]"),
                    diagnostics,
                    arities,
                );
            }
        }
        TermAst::List(_) => diagnostics.push(Diagnostic {
            formula: formula_name.to_string(),
            path: path.to_string(),
            message: "list terms are only valid in annotations".to_string(),
        }),
    }
}

fn record_arity(
    name: &str,
    arity: usize,
    formula_name: &str,
    path: &str,
    diagnostics: &mut Vec<Diagnostic>,
    arities: &mut std::collections::HashMap<String, (usize, String)>,
) {
    match arities.get(name) {
        Some((known, first_seen)) if *known != arity => diagnostics.push(Diagnostic {
            formula: formula_name.to_string(),
            path: path.to_string(),
            message: format!(
                "'{name}' used with arity {arity} but with arity {known} in '{first_seen}'"
            ),
        }),
        Some(_) => {}
        None => {
            arities.insert(name.to_string(), (arity, formula_name.to_string()));
        }
    }
}

/// Reads the declared target logic from the problem's `$$normative`
/// specification. Absent specification means the problem is still
/// semantically underspecified.
pub fn read_logic_spec(problem: &Problem) -> Result<Option<TargetLogic>, NmfError> {
    let spec = match problem.logic_spec() {
        Some(spec) => spec,
        None => return Ok(None),
    };
    let ident = match spec.lookup("$$logic") {
        Some(LogicValue::Ident(ident)) => ident,
        _ => {
            return Err(NmfError::InvalidLogicSpec {
                found: spec.name.clone(),
            })
        }
    };
    match TargetLogic::from_spec_ident(ident) {
        Some(target) => Ok(Some(target)),
        None => Err(NmfError::InvalidLogicSpec {
            found: ident.clone(),
        }),
    }
}

/// Builds the `$$normative == [$$logic == <target>]` specification.
pub fn normative_spec(target: TargetLogic) -> crate::tptp::LogicSpec {
    crate::tptp::LogicSpec {
        name: "$$normative".to_string(),
        options: vec![(
            "$$logic".to_string(),
            LogicValue::Ident(target.spec_ident().to_string()),
        )],
    }
}
