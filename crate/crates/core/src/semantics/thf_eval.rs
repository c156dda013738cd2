//! Finite evaluation of embedded THF terms: β-normalize, then evaluate
//! by exhaustive quantifier expansion over the finite carriers. Serves
//! as the semantic oracle for the embedding-faithfulness checks.

use std::collections::{BTreeMap, BTreeSet};

use super::{KripkeModel, PreferenceModel, SemanticsError};
use crate::tptp::{BinOp, FormulaAst, TermAst, Type, TypedVar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sort {
    World,
    Indiv,
}

/// Interpretation of one signature symbol over the finite carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolInterp {
    /// Boolean-valued: the table lists the satisfying argument tuples.
    Pred {
        arg_sorts: Vec<Sort>,
        table: BTreeSet<Vec<usize>>,
    },
    /// Element-valued: constants are the zero-argument case.
    Func {
        arg_sorts: Vec<Sort>,
        result: Sort,
        table: BTreeMap<Vec<usize>, usize>,
    },
}

/// A finite interpretation: carrier sizes for worlds and individuals
/// plus per-symbol tables. The world base type defaults to `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInterp {
    pub worlds: usize,
    pub individuals: usize,
    pub world_type: String,
    pub symbols: BTreeMap<String, SymbolInterp>,
}

impl FiniteInterp {
    pub fn new(worlds: usize, individuals: usize) -> FiniteInterp {
        FiniteInterp {
            worlds,
            individuals,
            world_type: "w".to_string(),
            symbols: BTreeMap::new(),
        }
    }

    /// Lifts a Kripke model: `acc` becomes a binary world relation and
    /// every propositional atom a unary world predicate.
    pub fn from_kripke(model: &KripkeModel) -> Result<FiniteInterp, SemanticsError> {
        let mut interp = FiniteInterp::new(model.worlds, 0);
        interp.symbols.insert(
            "acc".to_string(),
            SymbolInterp::Pred {
                arg_sorts: vec![Sort::World, Sort::World],
                table: model.relation.iter().map(|(a, b)| vec![*a, *b]).collect(),
            },
        );
        interp.add_lifted_atoms(&model.valuation)?;
        Ok(interp)
    }

    /// Lifts a preference model: `bet` becomes the betterness relation.
    pub fn from_preference(model: &PreferenceModel) -> Result<FiniteInterp, SemanticsError> {
        let mut interp = FiniteInterp::new(model.worlds, 0);
        interp.symbols.insert(
            "bet".to_string(),
            SymbolInterp::Pred {
                arg_sorts: vec![Sort::World, Sort::World],
                table: model.betterness.iter().map(|(a, b)| vec![*a, *b]).collect(),
            },
        );
        interp.add_lifted_atoms(&model.valuation)?;
        Ok(interp)
    }

    fn add_lifted_atoms(
        &mut self,
        valuation: &BTreeMap<String, BTreeSet<usize>>,
    ) -> Result<(), SemanticsError> {
        for (atom, worlds) in valuation {
            if !atom.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(SemanticsError::TypeMismatch(format!(
                    "only propositional atoms lift to the finite interpretation, found '{atom}'"
                )));
            }
            self.symbols.insert(
                atom.clone(),
                SymbolInterp::Pred {
                    arg_sorts: vec![Sort::World],
                    table: worlds.iter().map(|w| vec![*w]).collect(),
                },
            );
        }
        Ok(())
    }

    /// Adds a fresh world constant, e.g. the evaluation point.
    pub fn with_world_constant(mut self, name: &str, world: usize) -> FiniteInterp {
        self.symbols.insert(
            name.to_string(),
            SymbolInterp::Func {
                arg_sorts: vec![],
                result: Sort::World,
                table: [(vec![], world)].into_iter().collect(),
            },
        );
        self
    }

    fn carrier(&self, sort: Sort) -> usize {
        match sort {
            Sort::World => self.worlds,
            Sort::Indiv => self.individuals,
        }
    }

    fn sort_of_type(&self, ty: &Type) -> Result<Sort, SemanticsError> {
        match ty {
            Type::Base(name) if *name == self.world_type => Ok(Sort::World),
            Type::Base(name) if name == "$i" => Ok(Sort::Indiv),
            other => Err(SemanticsError::TypeMismatch(format!(
                "cannot quantify over type {}",
                crate::tptp::print_type(other)
            ))),
        }
    }
}

/// Evaluates a closed THF formula term to a boolean.
pub fn eval_thf_finite(term: &FormulaAst, interp: &FiniteInterp) -> Result<bool, SemanticsError> {
    let normal = beta_normalize(term.clone());
    eval(&normal, interp, &mut BTreeMap::new())
}

// ---- beta normalization -------------------------------------------------

/// Reduces all `(^[X]: body) @ t` redexes. Terms produced by the
/// embedder are simply typed, so this terminates.
pub fn beta_normalize(f: FormulaAst) -> FormulaAst {
    match f {
        FormulaAst::Apply { func, arg } => {
            let func = beta_normalize(*func);
            match func {
                FormulaAst::Lambda { mut vars, body } => {
                    let first = vars.remove(0);
                    let substituted = substitute(*body, &first.name, &arg);
                    let next = if vars.is_empty() {
                        substituted
                    } else {
                        FormulaAst::Lambda {
                            vars,
                            body: Box::new(substituted),
                        }
                    };
                    beta_normalize(next)
                }
                other => FormulaAst::apply(other, arg),
            }
        }
        FormulaAst::Not(inner) => FormulaAst::negate(beta_normalize(*inner)),
        FormulaAst::Binary { op, left, right } => {
            FormulaAst::binary(op, beta_normalize(*left), beta_normalize(*right))
        }
        FormulaAst::Quantified {
            quantifier,
            vars,
            body,
        } => FormulaAst::quantified(quantifier, vars, beta_normalize(*body)),
        FormulaAst::Lambda { vars, body } => FormulaAst::lambda(vars, beta_normalize(*body)),
        FormulaAst::NonClassical {
            connective,
            params,
            args,
        } => FormulaAst::NonClassical {
            connective,
            params,
            args: args.into_iter().map(beta_normalize).collect(),
        },
        leaf => leaf,
    }
}

fn term_vars(term: &TermAst, out: &mut BTreeSet<String>) {
    match term {
        TermAst::Variable(v) => {
            out.insert(v.clone());
        }
        TermAst::Constant(_) => {}
        TermAst::Function(_, args) | TermAst::List(args) => {
            for a in args {
                term_vars(a, out);
            }
        }
    }
}

fn substitute(f: FormulaAst, var: &str, replacement: &TermAst) -> FormulaAst {
    match f {
        FormulaAst::True | FormulaAst::False => f,
        FormulaAst::Atom { pred, args } => FormulaAst::Atom {
            pred,
            args: args
                .into_iter()
                .map(|a| substitute_term(a, var, replacement))
                .collect(),
        },
        FormulaAst::Not(inner) => FormulaAst::negate(substitute(*inner, var, replacement)),
        FormulaAst::Binary { op, left, right } => FormulaAst::binary(
            op,
            substitute(*left, var, replacement),
            substitute(*right, var, replacement),
        ),
        FormulaAst::Quantified {
            quantifier,
            vars,
            body,
        } => {
            let (vars, body) = substitute_under_binder(vars, *body, var, replacement);
            FormulaAst::quantified(quantifier, vars, body)
        }
        FormulaAst::Lambda { vars, body } => {
            let (vars, body) = substitute_under_binder(vars, *body, var, replacement);
            FormulaAst::lambda(vars, body)
        }
        FormulaAst::NonClassical {
            connective,
            params,
            args,
        } => FormulaAst::NonClassical {
            connective,
            params,
            args: args
                .into_iter()
                .map(|a| substitute(a, var, replacement))
                .collect(),
        },
        FormulaAst::Apply { func, arg } => FormulaAst::apply(
            substitute(*func, var, replacement),
            substitute_term(arg, var, replacement),
        ),
    }
}

fn substitute_under_binder(
    mut vars: Vec<TypedVar>,
    mut body: FormulaAst,
    var: &str,
    replacement: &TermAst,
) -> (Vec<TypedVar>, FormulaAst) {
    if vars.iter().any(|v| v.name == var) {
        return (vars, body); // shadowed
    }
    let mut replacement_vars = BTreeSet::new();
    term_vars(replacement, &mut replacement_vars);
    for bound in vars.iter_mut() {
        if replacement_vars.contains(&bound.name) {
            // rename the binder out of the way of the substituted term
            let fresh = fresh_name(&bound.name, &replacement_vars, &body);
            body = substitute(body, &bound.name, &TermAst::Variable(fresh.clone()));
            bound.name = fresh;
        }
    }
    (vars, substitute(body, var, replacement))
}

fn fresh_name(base: &str, avoid: &BTreeSet<String>, body: &FormulaAst) -> String {
    let mut used = avoid.clone();
    used.extend(body.free_vars());
    let mut n = 0;
    loop {
        n += 1;
        let candidate = format!("{base}_{n}");
        if !used.contains(&candidate) {
            return candidate;
        }
    }
}

fn substitute_term(term: TermAst, var: &str, replacement: &TermAst) -> TermAst {
    match term {
        TermAst::Variable(v) if v == var => replacement.clone(),
        TermAst::Variable(_) | TermAst::Constant(_) => term,
        TermAst::Function(name, args) => TermAst::Function(
            name,
            args.into_iter()
                .map(|a| substitute_term(a, var, replacement))
                .collect(),
        ),
        TermAst::List(items) => TermAst::List(
            items
                .into_iter()
                .map(|a| substitute_term(a, var, replacement))
                .collect(),
        ),
    }
}

// ---- evaluation ----------------------------------------------------------

type Env = BTreeMap<String, (Sort, usize)>;

fn eval(f: &FormulaAst, interp: &FiniteInterp, env: &mut Env) -> Result<bool, SemanticsError> {
    match f {
        FormulaAst::True => Ok(true),
        FormulaAst::False => Ok(false),
        FormulaAst::Not(inner) => Ok(!eval(inner, interp, env)?),
        FormulaAst::Binary { op, left, right } => {
            let l = eval(left, interp, env)?;
            let r = eval(right, interp, env)?;
            Ok(match op {
                BinOp::And => l && r,
                BinOp::Or => l || r,
                BinOp::Implies => !l || r,
                BinOp::Iff => l == r,
            })
        }
        FormulaAst::Quantified {
            quantifier,
            vars,
            body,
        } => eval_quantified(*quantifier, vars, body, interp, env),
        FormulaAst::Atom { pred, args } => {
            let symbol = interp.symbols.get(pred).ok_or_else(|| {
                SemanticsError::TypeMismatch(format!("undeclared symbol '{pred}'"))
            })?;
            match symbol {
                SymbolInterp::Pred { arg_sorts, table } => {
                    let elements = eval_args(pred, args, arg_sorts, interp, env)?;
                    Ok(table.contains(&elements))
                }
                SymbolInterp::Func { .. } => Err(SemanticsError::TypeMismatch(format!(
                    "'{pred}' is element-valued but used as a formula"
                ))),
            }
        }
        FormulaAst::Lambda { .. } => Err(SemanticsError::TypeMismatch(
            "unapplied lambda in formula position".to_string(),
        )),
        FormulaAst::Apply { .. } => Err(SemanticsError::TypeMismatch(
            "application did not reduce to a predicate".to_string(),
        )),
        FormulaAst::NonClassical { connective, .. } => Err(SemanticsError::TypeMismatch(format!(
            "non-classical connective {connective} in THF evaluation"
        ))),
    }
}

fn eval_quantified(
    quantifier: crate::tptp::Quantifier,
    vars: &[TypedVar],
    body: &FormulaAst,
    interp: &FiniteInterp,
    env: &mut Env,
) -> Result<bool, SemanticsError> {
    if vars.is_empty() {
        return eval(body, interp, env);
    }
    let first = &vars[0];
    let rest = &vars[1..];
    let ty = first.ty.as_ref().ok_or_else(|| {
        SemanticsError::TypeMismatch(format!("binder {} lacks a type annotation", first.name))
    })?;
    let sort = interp.sort_of_type(ty)?;
    let forall = quantifier == crate::tptp::Quantifier::Forall;
    for element in 0..interp.carrier(sort) {
        let shadowed = env.insert(first.name.clone(), (sort, element));
        let value = eval_quantified(quantifier, rest, body, interp, env)?;
        match shadowed {
            Some(old) => {
                env.insert(first.name.clone(), old);
            }
            None => {
                env.remove(&first.name);
            }
        }
        if forall && !value {
            return Ok(false);
        }
        if !forall && value {
            return Ok(true);
        }
    }
    Ok(forall)
}

fn eval_args(
    symbol: &str,
    args: &[TermAst],
    arg_sorts: &[Sort],
    interp: &FiniteInterp,
    env: &Env,
) -> Result<Vec<usize>, SemanticsError> {
    if args.len() != arg_sorts.len() {
        return Err(SemanticsError::TypeMismatch(format!(
            "'{symbol}' expects {} arguments, found {}",
            arg_sorts.len(),
            args.len()
        )));
    }
    args.iter()
        .zip(arg_sorts)
        .map(|(arg, expected)| {
            let (sort, element) = eval_term(arg, interp, env)?;
            if sort != *expected {
                return Err(SemanticsError::TypeMismatch(format!(
                    "argument {} of '{symbol}' has the wrong sort",
                    crate::tptp::print_term_tff(arg)
                )));
            }
            Ok(element)
        })
        .collect()
}

fn eval_term(
    term: &TermAst,
    interp: &FiniteInterp,
    env: &Env,
) -> Result<(Sort, usize), SemanticsError> {
    match term {
        TermAst::Variable(v) => env.get(v).copied().ok_or_else(|| {
            SemanticsError::TypeMismatch(format!("unbound variable '{v}'"))
        }),
        TermAst::Constant(name) => apply_func(name, &[], interp, env),
        TermAst::Function(name, args) => apply_func(name, args, interp, env),
        TermAst::List(_) => Err(SemanticsError::TypeMismatch(
            "list term in evaluation".to_string(),
        )),
    }
}

fn apply_func(
    name: &str,
    args: &[TermAst],
    interp: &FiniteInterp,
    env: &Env,
) -> Result<(Sort, usize), SemanticsError> {
    let symbol = interp
        .symbols
        .get(name)
        .ok_or_else(|| SemanticsError::TypeMismatch(format!("undeclared symbol '{name}'")))?;
    match symbol {
        SymbolInterp::Func {
            arg_sorts,
            result,
            table,
        } => {
            let elements = eval_args(name, args, arg_sorts, interp, env)?;
            table
                .get(&elements)
                .map(|e| (*result, *e))
                .ok_or_else(|| {
                    SemanticsError::TypeMismatch(format!("'{name}' has no value for its arguments"))
                })
        }
        SymbolInterp::Pred { .. } => Err(SemanticsError::TypeMismatch(format!(
            "'{name}' is a predicate but used as a term"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tptp::Quantifier;

    fn two_world_interp() -> FiniteInterp {
        // w0 -> w1, help true only at w1
        let model = KripkeModel {
            worlds: 2,
            relation: [(0, 1), (1, 1)].into_iter().collect(),
            valuation: [("help".to_string(), [1].into_iter().collect())]
                .into_iter()
                .collect(),
        };
        FiniteInterp::from_kripke(&model).unwrap()
    }

    fn w_ty() -> Type {
        Type::base("w")
    }

    /// ^[W: w]: ! [V: w]: (acc @ W @ V => help @ V)
    fn lifted_box_help() -> FormulaAst {
        FormulaAst::lambda(
            vec![TypedVar::typed("W", w_ty())],
            FormulaAst::quantified(
                Quantifier::Forall,
                vec![TypedVar::typed("V", w_ty())],
                FormulaAst::implies(
                    FormulaAst::atom("acc", vec![TermAst::var("W"), TermAst::var("V")]),
                    FormulaAst::atom("help", vec![TermAst::var("V")]),
                ),
            ),
        )
    }

    #[test]
    fn applied_lambda_evaluates_like_direct_kripke() {
        let interp = two_world_interp().with_world_constant("at_w", 0);
        let term = FormulaAst::apply(lifted_box_help(), TermAst::constant("at_w"));
        assert_eq!(eval_thf_finite(&term, &interp), Ok(true));

        // at w1 the loop keeps help true as well
        let interp1 = two_world_interp().with_world_constant("at_w", 1);
        let term1 = FormulaAst::apply(lifted_box_help(), TermAst::constant("at_w"));
        assert_eq!(eval_thf_finite(&term1, &interp1), Ok(true));
    }

    #[test]
    fn pointwise_negation_of_valuation() {
        // ~ (help @ at_w)
        for (world, expected) in [(0, true), (1, false)] {
            let interp = two_world_interp().with_world_constant("at_w", world);
            let term = FormulaAst::negate(FormulaAst::atom(
                "help",
                vec![TermAst::constant("at_w")],
            ));
            assert_eq!(eval_thf_finite(&term, &interp), Ok(expected));
        }
    }

    #[test]
    fn seriality_axiom_holds_in_serial_interpretation() {
        let interp = two_world_interp();
        let seriality = FormulaAst::quantified(
            Quantifier::Forall,
            vec![TypedVar::typed("W", w_ty())],
            FormulaAst::quantified(
                Quantifier::Exists,
                vec![TypedVar::typed("V", w_ty())],
                FormulaAst::atom("acc", vec![TermAst::var("W"), TermAst::var("V")]),
            ),
        );
        assert_eq!(eval_thf_finite(&seriality, &interp), Ok(true));
    }

    #[test]
    fn individuals_participate_in_evaluation() {
        let mut interp = FiniteInterp::new(1, 2);
        interp.symbols.insert(
            "owns".to_string(),
            SymbolInterp::Pred {
                arg_sorts: vec![Sort::Indiv, Sort::World],
                table: [vec![0, 0]].into_iter().collect(),
            },
        );
        // ? [X: $i]: owns @ X @ W  under W := w0
        let term = FormulaAst::apply(
            FormulaAst::lambda(
                vec![TypedVar::typed("W", w_ty())],
                FormulaAst::quantified(
                    Quantifier::Exists,
                    vec![TypedVar::typed("X", Type::base("$i"))],
                    FormulaAst::atom("owns", vec![TermAst::var("X"), TermAst::var("W")]),
                ),
            ),
            TermAst::constant("cw"),
        );
        let interp = interp.with_world_constant("cw", 0);
        assert_eq!(eval_thf_finite(&term, &interp), Ok(true));
    }

    #[test]
    fn capture_is_avoided_during_substitution() {
        // (^[W: w]: ! [V: w]: acc @ W @ V) @ V  -- the binder V must be
        // renamed before W := V is substituted
        let term = FormulaAst::apply(
            FormulaAst::lambda(
                vec![TypedVar::typed("W", w_ty())],
                FormulaAst::quantified(
                    Quantifier::Forall,
                    vec![TypedVar::typed("V", w_ty())],
                    FormulaAst::atom("acc", vec![TermAst::var("W"), TermAst::var("V")]),
                ),
            ),
            TermAst::var("V"),
        );
        let normal = beta_normalize(term);
        match normal {
            FormulaAst::Quantified { ref vars, ref body, .. } => {
                assert_ne!(vars[0].name, "V");
                match body.as_ref() {
                    FormulaAst::Atom { args, .. } => {
                        assert_eq!(args[0], TermAst::var("V"));
                        assert_eq!(args[1], TermAst::var(vars[0].name.as_str()));
                    }
                    other => panic!("unexpected body {other:?}"),
                }
            }
            other => panic!("unexpected normal form {other:?}"),
        }
    }

    #[test]
    fn untyped_binder_is_a_type_mismatch() {
        let interp = two_world_interp();
        let term = FormulaAst::quantified(
            Quantifier::Forall,
            vec![TypedVar::untyped("W")],
            FormulaAst::True,
        );
        assert!(matches!(
            eval_thf_finite(&term, &interp),
            Err(SemanticsError::TypeMismatch(_))
        ));
    }
}
