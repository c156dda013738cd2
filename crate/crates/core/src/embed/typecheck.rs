//! Simple type checking for the THF problems the embedder produces:
//! every symbol must be declared, every formula must have type `$o`,
//! and applications must respect the declared curried types.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::tptp::{FormulaAst, Payload, Problem, Role, TermAst, Type, TypedVar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("type error in '{formula}': {message}")]
pub struct TypeError {
    pub formula: String,
    pub message: String,
}

fn err(formula: &str, message: impl Into<String>) -> TypeError {
    TypeError {
        formula: formula.to_string(),
        message: message.into(),
    }
}

fn o() -> Type {
    Type::base("$o")
}

/// Checks every formula of a THF problem against its `type`-role
/// declarations.
pub fn typecheck_problem(problem: &Problem) -> Result<(), TypeError> {
    let mut symbols: BTreeMap<String, Type> = BTreeMap::new();
    let mut base_types: BTreeSet<String> = ["$o".to_string(), "$i".to_string()].into();

    for formula in &problem.formulas {
        if let Payload::TypeDecl { symbol, ty } = &formula.payload {
            if formula.role != Role::Type {
                return Err(err(&formula.name, "type declaration without type role"));
            }
            if *ty == Type::base("$tType") {
                if !base_types.insert(symbol.clone()) {
                    return Err(err(&formula.name, format!("type '{symbol}' declared twice")));
                }
                continue;
            }
            check_type_wellformed(ty, &base_types, &formula.name)?;
            if symbols.insert(symbol.clone(), ty.clone()).is_some() {
                return Err(err(
                    &formula.name,
                    format!("symbol '{symbol}' declared twice"),
                ));
            }
        }
    }

    for formula in &problem.formulas {
        match (&formula.role, &formula.payload) {
            (Role::Logic, _) => {
                return Err(err(
                    &formula.name,
                    "logic specification in a classical THF problem",
                ))
            }
            (_, Payload::Formula(ast)) => {
                let mut bound: BTreeMap<String, Type> = BTreeMap::new();
                let ty = infer(ast, &symbols, &base_types, &mut bound, &formula.name)?;
                if ty != o() {
                    return Err(err(
                        &formula.name,
                        format!("formula has type {}, expected $o", crate::tptp::print_type(&ty)),
                    ));
                }
            }
            _ => {}
        }
    }
    Ok(())
}

fn check_type_wellformed(
    ty: &Type,
    base_types: &BTreeSet<String>,
    formula: &str,
) -> Result<(), TypeError> {
    match ty {
        Type::Base(name) => {
            if base_types.contains(name) {
                Ok(())
            } else {
                Err(err(formula, format!("unknown base type '{name}'")))
            }
        }
        Type::Fun(a, b) => {
            check_type_wellformed(a, base_types, formula)?;
            check_type_wellformed(b, base_types, formula)
        }
    }
}

fn infer(
    f: &FormulaAst,
    symbols: &BTreeMap<String, Type>,
    base_types: &BTreeSet<String>,
    bound: &mut BTreeMap<String, Type>,
    formula: &str,
) -> Result<Type, TypeError> {
    match f {
        FormulaAst::True | FormulaAst::False => Ok(o()),
        FormulaAst::Atom { pred, args } => {
            let head = symbols
                .get(pred)
                .cloned()
                .ok_or_else(|| err(formula, format!("undeclared symbol '{pred}'")))?;
            apply_args(head, pred, args, symbols, bound, formula)
        }
        FormulaAst::Not(inner) => {
            expect(inner, &o(), symbols, base_types, bound, formula)?;
            Ok(o())
        }
        FormulaAst::Binary { left, right, .. } => {
            expect(left, &o(), symbols, base_types, bound, formula)?;
            expect(right, &o(), symbols, base_types, bound, formula)?;
            Ok(o())
        }
        FormulaAst::Quantified { vars, body, .. } => {
            let saved = bind_vars(vars, base_types, bound, formula)?;
            expect(body, &o(), symbols, base_types, bound, formula)?;
            restore_vars(vars, saved, bound);
            Ok(o())
        }
        FormulaAst::Lambda { vars, body } => {
            let saved = bind_vars(vars, base_types, bound, formula)?;
            let body_ty = infer(body, symbols, base_types, bound, formula)?;
            restore_vars(vars, saved, bound);
            let arg_types: Vec<Type> = vars
                .iter()
                .map(|v| v.ty.clone().expect("checked in bind_vars"))
                .collect();
            Ok(Type::fun_chain(arg_types, body_ty))
        }
        FormulaAst::Apply { func, arg } => {
            let func_ty = infer(func, symbols, base_types, bound, formula)?;
            match func_ty {
                Type::Fun(expected, result) => {
                    let arg_ty = term_type(arg, symbols, bound, formula)?;
                    if arg_ty != *expected {
                        return Err(err(
                            formula,
                            format!(
                                "application argument has type {}, expected {}",
                                crate::tptp::print_type(&arg_ty),
                                crate::tptp::print_type(&expected)
                            ),
                        ));
                    }
                    Ok(*result)
                }
                other => Err(err(
                    formula,
                    format!(
                        "applied a non-function of type {}",
                        crate::tptp::print_type(&other)
                    ),
                )),
            }
        }
        FormulaAst::NonClassical { connective, .. } => Err(err(
            formula,
            format!("non-classical connective {connective} in classical THF"),
        )),
    }
}

fn bind_vars(
    vars: &[TypedVar],
    base_types: &BTreeSet<String>,
    bound: &mut BTreeMap<String, Type>,
    formula: &str,
) -> Result<Vec<Option<Type>>, TypeError> {
    let mut saved = Vec::with_capacity(vars.len());
    for v in vars {
        let ty = v
            .ty
            .clone()
            .ok_or_else(|| err(formula, format!("binder {} lacks a type", v.name)))?;
        check_type_wellformed(&ty, base_types, formula)?;
        saved.push(bound.insert(v.name.clone(), ty));
    }
    Ok(saved)
}

fn restore_vars(vars: &[TypedVar], saved: Vec<Option<Type>>, bound: &mut BTreeMap<String, Type>) {
    for (v, old) in vars.iter().zip(saved) {
        match old {
            Some(ty) => {
                bound.insert(v.name.clone(), ty);
            }
            None => {
                bound.remove(&v.name);
            }
        }
    }
}

fn expect(
    f: &FormulaAst,
    expected: &Type,
    symbols: &BTreeMap<String, Type>,
    base_types: &BTreeSet<String>,
    bound: &mut BTreeMap<String, Type>,
    formula: &str,
) -> Result<(), TypeError> {
    let ty = infer(f, symbols, base_types, bound, formula)?;
    if ty == *expected {
        Ok(())
    } else {
        Err(err(
            formula,
            format!(
                "expected type {}, found {}",
                crate::tptp::print_type(expected),
                crate::tptp::print_type(&ty)
            ),
        ))
    }
}

fn apply_args(
    mut head: Type,
    symbol: &str,
    args: &[TermAst],
    symbols: &BTreeMap<String, Type>,
    bound: &BTreeMap<String, Type>,
    formula: &str,
) -> Result<Type, TypeError> {
    for arg in args {
        let arg_ty = term_type(arg, symbols, bound, formula)?;
        match head {
            Type::Fun(expected, rest) => {
                if arg_ty != *expected {
                    return Err(err(
                        formula,
                        format!(
                            "argument {} of '{symbol}' has type {}, expected {}",
                            crate::tptp::print_term_tff(arg),
                            crate::tptp::print_type(&arg_ty),
                            crate::tptp::print_type(&expected)
                        ),
                    ));
                }
                head = *rest;
            }
            other => {
                return Err(err(
                    formula,
                    format!(
                        "'{symbol}' of type {} applied to too many arguments",
                        crate::tptp::print_type(&other)
                    ),
                ))
            }
        }
    }
    Ok(head)
}

fn term_type(
    term: &TermAst,
    symbols: &BTreeMap<String, Type>,
    bound: &BTreeMap<String, Type>,
    formula: &str,
) -> Result<Type, TypeError> {
    match term {
        TermAst::Variable(v) => bound
            .get(v)
            .cloned()
            .ok_or_else(|| err(formula, format!("unbound variable '{v}'"))),
        TermAst::Constant(name) => symbols
            .get(name)
            .cloned()
            .ok_or_else(|| err(formula, format!("undeclared symbol '{name}'"))),
        TermAst::Function(name, args) => {
            let head = symbols
                .get(name)
                .cloned()
                .ok_or_else(|| err(formula, format!("undeclared symbol '{name}'")))?;
            apply_args(head, name, args, symbols, bound, formula)
        }
        TermAst::List(_) => Err(err(formula, "list term in formula position")),
    }
}
