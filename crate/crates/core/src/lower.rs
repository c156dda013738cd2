//! Specialization of NMF problems into concrete deontic logics. SDL
//! rewrites every deontic operator to a guarded `{$box}`/`{$dia}` per
//! the narrow-scope scheme; DDL rewrites to the dyadic `{$$obl}` with
//! swapped argument order. Rewriting is bottom-up, so nested NMF
//! operators translate compositionally.

use thiserror::Error;

use crate::nmf::{self, Diagnostic, NmfConnective, NmfKind, TargetLogic};
use crate::tptp::{
    AnnotatedFormula, ConnectiveParam, FormulaAst, Language, LogicSpec, LogicValue, Payload,
    Problem, Role,
};

pub const BOX: &str = "$box";
pub const DIA: &str = "$dia";
pub const DDL_OBL: &str = "$$obl";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LowerError {
    #[error("input is not valid NMF:{}", .0.iter().map(|d| format!("\n  {d}")).collect::<String>())]
    InvalidNmf(Vec<Diagnostic>),
    #[error("in '{formula}': directed deontic operators (bearer parameters) are not supported in DDL")]
    BearerUnsupported { formula: String },
}

/// Options for the SDL/DDL rewrites. `simplify_true_antecedent`
/// collapses `$true => x` to `x`, matching the shape of unconditional
/// norms in SDL output.
#[derive(Debug, Clone, Copy)]
pub struct LowerOptions {
    pub simplify_true_antecedent: bool,
}

impl Default for LowerOptions {
    fn default() -> Self {
        LowerOptions {
            simplify_true_antecedent: true,
        }
    }
}

fn guard(body: FormulaAst, consequent: FormulaAst, options: LowerOptions) -> FormulaAst {
    if options.simplify_true_antecedent && body == FormulaAst::True {
        consequent
    } else {
        FormulaAst::implies(body, consequent)
    }
}

fn modal_spec() -> LogicSpec {
    LogicSpec {
        name: "$modal".to_string(),
        options: vec![
            (
                "$quantification".to_string(),
                LogicValue::Ident("$constant".to_string()),
            ),
            (
                "$constants".to_string(),
                LogicValue::Ident("$rigid".to_string()),
            ),
            (
                "$modalities".to_string(),
                LogicValue::Ident("$modal_system_D".to_string()),
            ),
        ],
    }
}

fn ddl_spec(system: TargetLogic) -> LogicSpec {
    LogicSpec {
        name: "$$ddl".to_string(),
        options: vec![(
            "$$system".to_string(),
            LogicValue::Ident(system.spec_ident().to_string()),
        )],
    }
}

/// Maps a formula bottom-up, rewriting recognized NMF connectives.
fn rewrite(
    f: &FormulaAst,
    formula_name: &str,
    rule: &impl Fn(NmfConnective, FormulaAst, FormulaAst, &str) -> Result<FormulaAst, LowerError>,
) -> Result<FormulaAst, LowerError> {
    Ok(match f {
        FormulaAst::True | FormulaAst::False | FormulaAst::Atom { .. } => f.clone(),
        FormulaAst::Not(inner) => FormulaAst::negate(rewrite(inner, formula_name, rule)?),
        FormulaAst::Binary { op, left, right } => FormulaAst::binary(
            *op,
            rewrite(left, formula_name, rule)?,
            rewrite(right, formula_name, rule)?,
        ),
        FormulaAst::Quantified {
            quantifier,
            vars,
            body,
        } => FormulaAst::quantified(
            *quantifier,
            vars.clone(),
            rewrite(body, formula_name, rule)?,
        ),
        FormulaAst::Lambda { vars, body } => {
            FormulaAst::lambda(vars.clone(), rewrite(body, formula_name, rule)?)
        }
        FormulaAst::Apply { func, arg } => {
            FormulaAst::apply(rewrite(func, formula_name, rule)?, arg.clone())
        }
        FormulaAst::NonClassical {
            connective,
            params,
            args,
        } => {
            let args = args
                .iter()
                .map(|a| rewrite(a, formula_name, rule))
                .collect::<Result<Vec<_>, _>>()?;
            match NmfConnective::classify(connective, params, &args)
                .expect("validated NMF input")
            {
                Some(occurrence) => {
                    let mut args = args;
                    let head = args.pop().unwrap();
                    let body = args.pop().unwrap();
                    rule(occurrence, body, head, formula_name)?
                }
                None => FormulaAst::nonclassical(connective.clone(), params.clone(), args),
            }
        }
    })
}

fn require_valid(problem: &Problem) -> Result<(), LowerError> {
    let diagnostics = nmf::validate_nmf(problem);
    if diagnostics.is_empty() {
        Ok(())
    } else {
        Err(LowerError::InvalidNmf(diagnostics))
    }
}

fn lowered_problem(
    problem: &Problem,
    suffix: &str,
    spec: LogicSpec,
    rule: impl Fn(NmfConnective, FormulaAst, FormulaAst, &str) -> Result<FormulaAst, LowerError>,
) -> Result<Problem, LowerError> {
    let mut formulas = Vec::with_capacity(problem.len() + 1);
    let spec_name = fresh_spec_name(problem, suffix);
    formulas.push(AnnotatedFormula::new(
        Language::Tff,
        spec_name,
        Role::Logic,
        Payload::Logic(spec),
    ));
    for formula in &problem.formulas {
        // any input logic specification is consumed and replaced
        if formula.role == Role::Logic {
            continue;
        }
        let payload = match &formula.payload {
            Payload::Formula(ast) => Payload::Formula(rewrite(ast, &formula.name, &rule)?),
            other => other.clone(),
        };
        formulas.push(AnnotatedFormula {
            name: format!("{}{}", formula.name, suffix),
            payload,
            ..formula.clone()
        });
    }
    Ok(Problem::new(formulas))
}

fn fresh_spec_name(problem: &Problem, suffix: &str) -> String {
    let mut name = "target".to_string();
    let mut n = 0;
    while problem
        .formulas
        .iter()
        .any(|f| format!("{}{}", f.name, suffix) == name || f.name == name)
    {
        n += 1;
        name = format!("target_{n}");
    }
    name
}

/// Rewrites an NMF problem into SDL (modal logic D). Deontic operators
/// become guarded `{$box}`/`{$dia}` applications; a bearer yields the
/// indexed `{$box(#x)}` form; a `$modal` logic specification is
/// prepended and formula names get the `-sdl` suffix.
pub fn to_sdl(problem: &Problem, options: LowerOptions) -> Result<Problem, LowerError> {
    require_valid(problem)?;
    lowered_problem(problem, "-sdl", modal_spec(), move |occurrence, body, head, _| {
        let params = match &occurrence.bearer {
            Some(bearer) => vec![ConnectiveParam::Index(bearer.clone())],
            None => Vec::new(),
        };
        Ok(match occurrence.kind {
            NmfKind::Obligation => guard(
                body,
                FormulaAst::nonclassical(BOX, params, vec![head]),
                options,
            ),
            NmfKind::Permission => guard(
                body,
                FormulaAst::nonclassical(DIA, params, vec![head]),
                options,
            ),
            NmfKind::Prohibition => guard(
                body,
                FormulaAst::nonclassical(BOX, params, vec![FormulaAst::negate(head)]),
                options,
            ),
            NmfKind::Constitutive => guard(body, head, options),
        })
    })
}

/// Rewrites an NMF problem into DDL with the chosen system (Åqvist E or
/// Carmo-Jones). Note the swapped argument order: `{$$obl} @ (head,
/// body)`. Bearer parameters are not supported here.
pub fn to_ddl(
    problem: &Problem,
    system: TargetLogic,
    options: LowerOptions,
) -> Result<Problem, LowerError> {
    assert!(
        matches!(system, TargetLogic::AqvistE | TargetLogic::CarmoJones),
        "to_ddl targets a dyadic deontic logic"
    );
    require_valid(problem)?;
    lowered_problem(
        problem,
        "-ddl",
        ddl_spec(system),
        move |occurrence, body, head, formula_name| {
            if occurrence.bearer.is_some() {
                return Err(LowerError::BearerUnsupported {
                    formula: formula_name.to_string(),
                });
            }
            Ok(match occurrence.kind {
                NmfKind::Obligation => {
                    FormulaAst::nonclassical(DDL_OBL, vec![], vec![head, body])
                }
                NmfKind::Permission => FormulaAst::negate(FormulaAst::nonclassical(
                    DDL_OBL,
                    vec![],
                    vec![FormulaAst::negate(head), body],
                )),
                NmfKind::Prohibition => FormulaAst::nonclassical(
                    DDL_OBL,
                    vec![],
                    vec![FormulaAst::negate(head), body],
                ),
                NmfKind::Constitutive => guard(body, head, options),
            })
        },
    )
}

/// True when no NMF deontic connective remains anywhere in the problem.
pub fn nmf_erased(problem: &Problem) -> bool {
    !problem.formulas.iter().any(|f| {
        f.payload.as_formula().is_some_and(|ast| {
            let mut found = false;
            ast.walk(&mut |node| {
                if let FormulaAst::NonClassical { connective, .. } = node {
                    if NmfKind::from_connective_name(connective).is_some() {
                        found = true;
                    }
                }
            });
            found
        })
    })
}

/// DDL allows `$$obl` under classical connectives; nesting one `$$obl`
/// inside another is accepted but flagged for attention.
pub fn ddl_nesting_diagnostics(problem: &Problem) -> Vec<Diagnostic> {
    let mut diagnostics = Vec::new();
    for formula in &problem.formulas {
        if let Payload::Formula(ast) = &formula.payload {
            scan_nesting(ast, &formula.name, false, &mut diagnostics);
        }
    }
    diagnostics
}

fn scan_nesting(
    f: &FormulaAst,
    formula_name: &str,
    under_obl: bool,
    diagnostics: &mut Vec<Diagnostic>,
) {
    match f {
        FormulaAst::NonClassical {
            connective, args, ..
        } if connective == DDL_OBL => {
            if under_obl {
                diagnostics.push(Diagnostic {
                    formula: formula_name.to_string(),
                    path: String::new(),
                    message: "nested {$$obl} inside another {$$obl}".to_string(),
                });
            }
            for arg in args {
                scan_nesting(arg, formula_name, true, diagnostics);
            }
        }
        FormulaAst::Not(inner) => scan_nesting(inner, formula_name, under_obl, diagnostics),
        FormulaAst::Binary { left, right, .. } => {
            scan_nesting(left, formula_name, under_obl, diagnostics);
            scan_nesting(right, formula_name, under_obl, diagnostics);
        }
        FormulaAst::Quantified { body, .. } | FormulaAst::Lambda { body, .. } => {
            scan_nesting(body, formula_name, under_obl, diagnostics)
        }
        FormulaAst::NonClassical { args, .. } => {
            for arg in args {
                scan_nesting(arg, formula_name, under_obl, diagnostics);
            }
        }
        FormulaAst::Apply { func, .. } => {
            scan_nesting(func, formula_name, under_obl, diagnostics)
        }
        FormulaAst::True | FormulaAst::False | FormulaAst::Atom { .. } => {}
    }
}
