//! Shallow semantical embedding of the specialized problems into
//! classical higher-order logic (THF). Formulas are lifted to world
//! predicates: atoms gain a trailing world argument, `{$box}` becomes a
//! guarded universal over accessible worlds, and the dyadic `{$$obl}`
//! becomes the best-world condition over an unconstrained betterness
//! relation. The resulting problems are plain THF with no logic
//! specification left.

mod typecheck;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::lower::{BOX, DDL_OBL, DIA};
use crate::semantics::AssumptionMode;
use crate::tptp::{
    AnnotatedFormula, ConnectiveParam, FormulaAst, Language, LogicValue, Payload, Problem,
    Quantifier, Role, TermAst, Type, TypedVar,
};

pub use typecheck::{typecheck_problem, TypeError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("cannot embed connective '{0}'")]
    UnsupportedConnective(String),
    #[error("no embedding is provided for target '{0}'")]
    UnsupportedTarget(String),
    #[error("missing or unexpected logic specification: {0}")]
    MissingLogicSpec(String),
    #[error("signature problem: {0}")]
    Signature(String),
}

/// Names of the symbols the embedding introduces; chosen fresh with
/// respect to the problem's own symbols (clashes are renamed with an
/// `emb_` prefix and a numeric suffix if needed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingSignature {
    pub world_type: String,
    pub accessibility: String,
    pub indexed_accessibility: String,
    pub betterness: String,
    pub current_world: String,
    pub mode: AssumptionMode,
}

impl EmbeddingSignature {
    pub fn for_problem(problem: &Problem, mode: AssumptionMode) -> EmbeddingSignature {
        let used = used_symbols(problem);
        let fresh = |base: &str| fresh_symbol(base, &used);
        EmbeddingSignature {
            world_type: fresh("w"),
            accessibility: fresh("acc"),
            indexed_accessibility: fresh("acc_b"),
            betterness: fresh("bet"),
            current_world: fresh("cw"),
            mode,
        }
    }

    fn world(&self) -> Type {
        Type::base(self.world_type.clone())
    }
}

fn fresh_symbol(base: &str, used: &BTreeSet<String>) -> String {
    if !used.contains(base) {
        return base.to_string();
    }
    let prefixed = format!("emb_{base}");
    if !used.contains(&prefixed) {
        return prefixed;
    }
    let mut n = 0;
    loop {
        n += 1;
        let candidate = format!("emb_{base}{n}");
        if !used.contains(&candidate) {
            return candidate;
        }
    }
}

fn used_symbols(problem: &Problem) -> BTreeSet<String> {
    let mut used = BTreeSet::new();
    for formula in &problem.formulas {
        if let Payload::Formula(ast) = &formula.payload {
            ast.walk(&mut |node| match node {
                FormulaAst::Atom { pred, args } => {
                    used.insert(pred.clone());
                    for arg in args {
                        collect_term_symbols(arg, &mut used);
                    }
                }
                FormulaAst::NonClassical { params, .. } => {
                    for param in params {
                        match param {
                            ConnectiveParam::Index(t)
                            | ConnectiveParam::KeyValue { value: t, .. } => {
                                collect_term_symbols(t, &mut used)
                            }
                        }
                    }
                }
                _ => {}
            });
        }
    }
    used
}

fn collect_term_symbols(term: &TermAst, used: &mut BTreeSet<String>) {
    match term {
        TermAst::Variable(_) => {}
        TermAst::Constant(name) => {
            used.insert(name.clone());
        }
        TermAst::Function(name, args) => {
            used.insert(name.clone());
            for arg in args {
                collect_term_symbols(arg, used);
            }
        }
        TermAst::List(items) => {
            for item in items {
                collect_term_symbols(item, used);
            }
        }
    }
}

/// First-order signature of the problem: predicates and functions with
/// their arities, in first-occurrence order.
#[derive(Debug, Default)]
struct FirstOrderSignature {
    predicates: Vec<(String, usize)>,
    functions: Vec<(String, usize)>,
}

fn first_order_signature(problem: &Problem) -> Result<FirstOrderSignature, EmbedError> {
    let mut signature = FirstOrderSignature::default();
    for formula in &problem.formulas {
        if let Payload::Formula(ast) = &formula.payload {
            let mut err = None;
            ast.walk(&mut |node| match node {
                FormulaAst::Atom { pred, args } => {
                    record(&mut signature.predicates, pred, args.len(), &mut err);
                    for arg in args {
                        record_term(arg, &mut signature, &mut err);
                    }
                }
                FormulaAst::NonClassical { params, .. } => {
                    for param in params {
                        match param {
                            ConnectiveParam::Index(t)
                            | ConnectiveParam::KeyValue { value: t, .. } => {
                                record_term(t, &mut signature, &mut err)
                            }
                        }
                    }
                }
                _ => {}
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
    }
    let cross: Vec<&String> = signature
        .predicates
        .iter()
        .map(|(n, _)| n)
        .filter(|n| signature.functions.iter().any(|(f, _)| f == *n))
        .collect();
    if let Some(name) = cross.first() {
        return Err(EmbedError::Signature(format!(
            "'{name}' is used both as a predicate and as a function"
        )));
    }
    Ok(signature)
}

fn record(
    seen: &mut Vec<(String, usize)>,
    name: &str,
    arity: usize,
    err: &mut Option<EmbedError>,
) {
    match seen.iter().find(|(n, _)| n == name) {
        Some((_, known)) if *known != arity => {
            if err.is_none() {
                *err = Some(EmbedError::Signature(format!(
                    "'{name}' used with arities {known} and {arity}"
                )));
            }
        }
        Some(_) => {}
        None => seen.push((name.to_string(), arity)),
    }
}

fn record_term(term: &TermAst, signature: &mut FirstOrderSignature, err: &mut Option<EmbedError>) {
    match term {
        TermAst::Variable(_) => {}
        TermAst::Constant(name) => record(&mut signature.functions, name, 0, err),
        TermAst::Function(name, args) => {
            record(&mut signature.functions, name, args.len(), err);
            for arg in args {
                record_term(arg, signature, err);
            }
        }
        TermAst::List(_) => {
            if err.is_none() {
                *err = Some(EmbedError::Signature(
                    "list term in formula position".to_string(),
                ));
            }
        }
    }
}

/// Deterministic supply of world variables avoiding the names already
/// bound or free in the formula being lifted.
struct WorldVars {
    used: BTreeSet<String>,
    counter: usize,
}

impl WorldVars {
    fn for_formula(f: &FormulaAst) -> WorldVars {
        let mut used = BTreeSet::new();
        f.walk(&mut |node| {
            if let FormulaAst::Quantified { vars, .. } | FormulaAst::Lambda { vars, .. } = node {
                used.extend(vars.iter().map(|v| v.name.clone()));
            }
        });
        used.extend(f.free_vars());
        WorldVars { used, counter: 0 }
    }

    fn fresh(&mut self) -> String {
        const PREFERRED: [&str; 3] = ["W", "V", "U"];
        loop {
            let candidate = if self.counter < PREFERRED.len() {
                PREFERRED[self.counter].to_string()
            } else {
                format!("W{}", self.counter - PREFERRED.len() + 1)
            };
            self.counter += 1;
            if self.used.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}

// ---- modal D -------------------------------------------------------------

fn require_modal_d_spec(problem: &Problem) -> Result<(), EmbedError> {
    let spec = problem
        .logic_spec()
        .ok_or_else(|| EmbedError::MissingLogicSpec("expected a $modal specification".into()))?;
    if spec.name != "$modal" {
        return Err(EmbedError::MissingLogicSpec(format!(
            "expected $modal, found {}",
            spec.name
        )));
    }
    match spec.lookup("$modalities") {
        Some(LogicValue::Ident(system)) if system == "$modal_system_D" => {}
        Some(LogicValue::Ident(system)) => {
            return Err(EmbedError::UnsupportedTarget(system.clone()))
        }
        _ => {
            return Err(EmbedError::MissingLogicSpec(
                "$modal specification lacks $modalities".into(),
            ))
        }
    }
    // the lifting hard-codes constant domains and rigid constants; other
    // settings, when spelled out, must not be silently reinterpreted
    for (key, required) in [("$quantification", "$constant"), ("$constants", "$rigid")] {
        match spec.lookup(key) {
            None => {}
            Some(LogicValue::Ident(value)) if value == required => {}
            Some(LogicValue::Ident(value)) => {
                return Err(EmbedError::UnsupportedTarget(format!(
                    "{key} == {value} (only {required} is embedded)"
                )))
            }
            Some(LogicValue::Options(_)) => {
                return Err(EmbedError::UnsupportedTarget(format!(
                    "{key} with a nested option list"
                )))
            }
        }
    }
    Ok(())
}

/// Lifts one modal formula to a predicate on worlds, as a typed lambda
/// in β-normal form.
pub fn lift_modal_d(
    f: &FormulaAst,
    signature: &EmbeddingSignature,
) -> Result<FormulaAst, EmbedError> {
    let mut vars = WorldVars::for_formula(f);
    let world = vars.fresh();
    let body = lift_modal_at(f, &TermAst::var(world.clone()), signature, &mut vars)?;
    Ok(FormulaAst::lambda(
        vec![TypedVar::typed(world, signature.world())],
        body,
    ))
}

fn lift_modal_at(
    f: &FormulaAst,
    world: &TermAst,
    signature: &EmbeddingSignature,
    vars: &mut WorldVars,
) -> Result<FormulaAst, EmbedError> {
    Ok(match f {
        FormulaAst::True | FormulaAst::False => f.clone(),
        FormulaAst::Atom { pred, args } => {
            let mut args = args.clone();
            args.push(world.clone());
            FormulaAst::Atom {
                pred: pred.clone(),
                args,
            }
        }
        FormulaAst::Not(inner) => {
            FormulaAst::negate(lift_modal_at(inner, world, signature, vars)?)
        }
        FormulaAst::Binary { op, left, right } => FormulaAst::binary(
            *op,
            lift_modal_at(left, world, signature, vars)?,
            lift_modal_at(right, world, signature, vars)?,
        ),
        FormulaAst::Quantified {
            quantifier,
            vars: bound,
            body,
        } => {
            // constant domain, rigid constants: individuals quantify
            // world-independently
            let bound = bound
                .iter()
                .map(|v| TypedVar::typed(v.name.clone(), Type::base("$i")))
                .collect();
            FormulaAst::quantified(
                *quantifier,
                bound,
                lift_modal_at(body, world, signature, vars)?,
            )
        }
        FormulaAst::NonClassical {
            connective,
            params,
            args,
        } if connective == BOX || connective == DIA => {
            if args.len() != 1 {
                return Err(EmbedError::UnsupportedConnective(format!(
                    "{connective} with {} arguments",
                    args.len()
                )));
            }
            let successor = vars.fresh();
            let access = match params.as_slice() {
                [] => FormulaAst::Atom {
                    pred: signature.accessibility.clone(),
                    args: vec![world.clone(), TermAst::var(successor.clone())],
                },
                [ConnectiveParam::Index(bearer)] => FormulaAst::Atom {
                    pred: signature.indexed_accessibility.clone(),
                    args: vec![
                        bearer.clone(),
                        world.clone(),
                        TermAst::var(successor.clone()),
                    ],
                },
                _ => {
                    return Err(EmbedError::UnsupportedConnective(format!(
                        "{connective} with unsupported parameters"
                    )))
                }
            };
            let lifted = lift_modal_at(&args[0], &TermAst::var(successor.clone()), signature, vars)?;
            let binder = vec![TypedVar::typed(successor, signature.world())];
            if connective == BOX {
                FormulaAst::quantified(
                    Quantifier::Forall,
                    binder,
                    FormulaAst::implies(access, lifted),
                )
            } else {
                FormulaAst::quantified(
                    Quantifier::Exists,
                    binder,
                    FormulaAst::and(access, lifted),
                )
            }
        }
        FormulaAst::NonClassical { connective, .. } => {
            return Err(EmbedError::UnsupportedConnective(connective.clone()))
        }
        FormulaAst::Lambda { .. } | FormulaAst::Apply { .. } => {
            return Err(EmbedError::UnsupportedConnective(
                "higher-order construct in NXF input".to_string(),
            ))
        }
    })
}

/// Embeds a modal-D problem into THF. Axioms become world-quantified
/// (global) or anchored at a designated current world (local);
/// conjectures are always validity statements. A seriality axiom for the
/// accessibility relation is emitted, plus an indexed variant when
/// bearer-indexed modalities occur.
pub fn embed_modal_d(problem: &Problem, mode: AssumptionMode) -> Result<Problem, EmbedError> {
    require_modal_d_spec(problem)?;
    let signature = EmbeddingSignature::for_problem(problem, mode);
    let fo = first_order_signature(problem)?;
    let uses_indexed = problem_uses_indexed_modality(problem);

    let mut used_names: BTreeSet<String> =
        problem.formulas.iter().map(|f| f.name.clone()).collect();
    let mut formulas = Vec::new();

    let mut declare = |formulas: &mut Vec<AnnotatedFormula>,
                       used_names: &mut BTreeSet<String>,
                       symbol: &str,
                       ty: Type| {
        let name = fresh_formula_name(&format!("{symbol}_type"), used_names);
        formulas.push(AnnotatedFormula::new(
            Language::Thf,
            name,
            Role::Type,
            Payload::TypeDecl {
                symbol: symbol.to_string(),
                ty,
            },
        ));
    };

    let w = signature.world();
    declare(
        &mut formulas,
        &mut used_names,
        &signature.world_type,
        Type::base("$tType"),
    );
    declare(
        &mut formulas,
        &mut used_names,
        &signature.accessibility,
        Type::fun_chain(vec![w.clone(), w.clone()], Type::base("$o")),
    );
    if uses_indexed {
        declare(
            &mut formulas,
            &mut used_names,
            &signature.indexed_accessibility,
            Type::fun_chain(
                vec![Type::base("$i"), w.clone(), w.clone()],
                Type::base("$o"),
            ),
        );
    }
    if mode == AssumptionMode::Local {
        declare(
            &mut formulas,
            &mut used_names,
            &signature.current_world,
            w.clone(),
        );
    }
    declare_first_order(&fo, &signature, &mut formulas, &mut used_names, &mut declare);

    // frame condition of system D
    let seriality_name = fresh_formula_name("seriality", &mut used_names);
    formulas.push(AnnotatedFormula::axiom(
        Language::Thf,
        seriality_name,
        seriality_axiom(&signature.accessibility, &signature, &[]),
    ));
    if uses_indexed {
        let name = fresh_formula_name("seriality_indexed", &mut used_names);
        formulas.push(AnnotatedFormula::axiom(
            Language::Thf,
            name,
            seriality_axiom(
                &signature.indexed_accessibility,
                &signature,
                &[("X", Type::base("$i"))],
            ),
        ));
    }

    for formula in &problem.formulas {
        match (&formula.role, &formula.payload) {
            (Role::Logic, _) => continue,
            (Role::Type, _) => {
                return Err(EmbedError::Signature(
                    "unexpected type declaration in NXF input".to_string(),
                ))
            }
            (role, Payload::Formula(ast)) => {
                let lifted = match (role, mode) {
                    // conjectures are validity statements in either mode
                    (Role::Conjecture, _) | (_, AssumptionMode::Global) => {
                        globally_lifted(ast, &signature, lift_modal_at)?
                    }
                    (_, AssumptionMode::Local) => {
                        let mut vars = WorldVars::for_formula(ast);
                        lift_modal_at(
                            ast,
                            &TermAst::Constant(signature.current_world.clone()),
                            &signature,
                            &mut vars,
                        )?
                    }
                };
                formulas.push(AnnotatedFormula {
                    language: Language::Thf,
                    name: formula.name.clone(),
                    role: *role,
                    payload: Payload::Formula(lifted),
                    source: formula.source.clone(),
                    annotations: formula.annotations.clone(),
                });
            }
            (_, _) => {
                return Err(EmbedError::Signature(
                    "malformed payload for formula role".to_string(),
                ))
            }
        }
    }
    Ok(Problem::new(formulas))
}

fn problem_uses_indexed_modality(problem: &Problem) -> bool {
    problem.formulas.iter().any(|f| {
        f.payload.as_formula().is_some_and(|ast| {
            let mut found = false;
            ast.walk(&mut |node| {
                if let FormulaAst::NonClassical {
                    connective, params, ..
                } = node
                {
                    if (connective == BOX || connective == DIA) && !params.is_empty() {
                        found = true;
                    }
                }
            });
            found
        })
    })
}

fn seriality_axiom(
    relation: &str,
    signature: &EmbeddingSignature,
    extra_binders: &[(&str, Type)],
) -> FormulaAst {
    let w = signature.world();
    let mut args: Vec<TermAst> = extra_binders
        .iter()
        .map(|(name, _)| TermAst::var(*name))
        .collect();
    args.push(TermAst::var("W"));
    args.push(TermAst::var("V"));
    let mut axiom = FormulaAst::quantified(
        Quantifier::Forall,
        vec![TypedVar::typed("W", w.clone())],
        FormulaAst::quantified(
            Quantifier::Exists,
            vec![TypedVar::typed("V", w.clone())],
            FormulaAst::Atom {
                pred: relation.to_string(),
                args,
            },
        ),
    );
    for (name, ty) in extra_binders.iter().rev() {
        axiom = FormulaAst::quantified(
            Quantifier::Forall,
            vec![TypedVar::typed(*name, ty.clone())],
            axiom,
        );
    }
    axiom
}

fn declare_first_order(
    fo: &FirstOrderSignature,
    signature: &EmbeddingSignature,
    formulas: &mut Vec<AnnotatedFormula>,
    used_names: &mut BTreeSet<String>,
    declare: &mut impl FnMut(&mut Vec<AnnotatedFormula>, &mut BTreeSet<String>, &str, Type),
) {
    for (name, arity) in &fo.functions {
        let ty = Type::fun_chain(vec![Type::base("$i"); *arity], Type::base("$i"));
        declare(formulas, used_names, name, ty);
    }
    for (name, arity) in &fo.predicates {
        let mut args = vec![Type::base("$i"); *arity];
        args.push(signature.world()); // world argument appended last
        let ty = Type::fun_chain(args, Type::base("$o"));
        declare(formulas, used_names, name, ty);
    }
}

fn fresh_formula_name(base: &str, used: &mut BTreeSet<String>) -> String {
    let mut candidate = base.to_string();
    let mut n = 0;
    while used.contains(&candidate) {
        n += 1;
        candidate = format!("{base}_{n}");
    }
    used.insert(candidate.clone());
    candidate
}

fn globally_lifted(
    ast: &FormulaAst,
    signature: &EmbeddingSignature,
    lift: impl Fn(
        &FormulaAst,
        &TermAst,
        &EmbeddingSignature,
        &mut WorldVars,
    ) -> Result<FormulaAst, EmbedError>,
) -> Result<FormulaAst, EmbedError> {
    let mut vars = WorldVars::for_formula(ast);
    let world = vars.fresh();
    let body = lift(ast, &TermAst::var(world.clone()), signature, &mut vars)?;
    Ok(FormulaAst::quantified(
        Quantifier::Forall,
        vec![TypedVar::typed(world, signature.world())],
        body,
    ))
}

// ---- Åqvist E --------------------------------------------------------------

fn require_aqvist_spec(problem: &Problem) -> Result<(), EmbedError> {
    let spec = problem
        .logic_spec()
        .ok_or_else(|| EmbedError::MissingLogicSpec("expected a $$ddl specification".into()))?;
    if spec.name != "$$ddl" {
        return Err(EmbedError::MissingLogicSpec(format!(
            "expected $$ddl, found {}",
            spec.name
        )));
    }
    match spec.lookup("$$system") {
        Some(LogicValue::Ident(system)) if system == "$$aqvistE" => Ok(()),
        Some(LogicValue::Ident(system)) => Err(EmbedError::UnsupportedTarget(system.clone())),
        _ => Err(EmbedError::MissingLogicSpec(
            "$$ddl specification lacks $$system".into(),
        )),
    }
}

/// Lifts one DDL formula to a (world-independent on the obligation
/// parts) predicate on worlds, as a typed lambda in β-normal form.
pub fn lift_aqvist_e(
    f: &FormulaAst,
    signature: &EmbeddingSignature,
) -> Result<FormulaAst, EmbedError> {
    let mut vars = WorldVars::for_formula(f);
    let world = vars.fresh();
    let body = lift_aqvist_at(f, &TermAst::var(world.clone()), signature, &mut vars)?;
    Ok(FormulaAst::lambda(
        vec![TypedVar::typed(world, signature.world())],
        body,
    ))
}

fn lift_aqvist_at(
    f: &FormulaAst,
    world: &TermAst,
    signature: &EmbeddingSignature,
    vars: &mut WorldVars,
) -> Result<FormulaAst, EmbedError> {
    Ok(match f {
        FormulaAst::True | FormulaAst::False => f.clone(),
        FormulaAst::Atom { pred, args } => {
            let mut args = args.clone();
            args.push(world.clone());
            FormulaAst::Atom {
                pred: pred.clone(),
                args,
            }
        }
        FormulaAst::Not(inner) => {
            FormulaAst::negate(lift_aqvist_at(inner, world, signature, vars)?)
        }
        FormulaAst::Binary { op, left, right } => FormulaAst::binary(
            *op,
            lift_aqvist_at(left, world, signature, vars)?,
            lift_aqvist_at(right, world, signature, vars)?,
        ),
        FormulaAst::Quantified {
            quantifier,
            vars: bound,
            body,
        } => {
            let bound = bound
                .iter()
                .map(|v| TypedVar::typed(v.name.clone(), Type::base("$i")))
                .collect();
            FormulaAst::quantified(
                *quantifier,
                bound,
                lift_aqvist_at(body, world, signature, vars)?,
            )
        }
        FormulaAst::NonClassical {
            connective,
            params,
            args,
        } if connective == DDL_OBL => {
            if !params.is_empty() {
                return Err(EmbedError::UnsupportedConnective(format!(
                    "{connective} with parameters"
                )));
            }
            if args.len() != 2 {
                return Err(EmbedError::UnsupportedConnective(format!(
                    "{connective} with {} arguments",
                    args.len()
                )));
            }
            let (head, body) = (&args[0], &args[1]);
            // opt rule: all best body-worlds satisfy the head, where a
            // best body-world is at least as good as every body-world;
            // independent of the evaluation world
            let v = vars.fresh();
            let u = vars.fresh();
            let body_at_v = lift_aqvist_at(body, &TermAst::var(v.clone()), signature, vars)?;
            let body_at_u = lift_aqvist_at(body, &TermAst::var(u.clone()), signature, vars)?;
            let head_at_v = lift_aqvist_at(head, &TermAst::var(v.clone()), signature, vars)?;
            let better = FormulaAst::Atom {
                pred: signature.betterness.clone(),
                args: vec![TermAst::var(v.clone()), TermAst::var(u.clone())],
            };
            let v_is_best = FormulaAst::and(
                body_at_v,
                FormulaAst::quantified(
                    Quantifier::Forall,
                    vec![TypedVar::typed(u, signature.world())],
                    FormulaAst::implies(body_at_u, better),
                ),
            );
            FormulaAst::quantified(
                Quantifier::Forall,
                vec![TypedVar::typed(v, signature.world())],
                FormulaAst::implies(v_is_best, head_at_v),
            )
        }
        FormulaAst::NonClassical { connective, .. } => {
            return Err(EmbedError::UnsupportedConnective(connective.clone()))
        }
        FormulaAst::Lambda { .. } | FormulaAst::Apply { .. } => {
            return Err(EmbedError::UnsupportedConnective(
                "higher-order construct in NXF input".to_string(),
            ))
        }
    })
}

/// Embeds an Åqvist-E problem into THF under global assumptions. System
/// E imposes no frame conditions, so no axioms constrain the betterness
/// relation.
pub fn embed_aqvist_e(problem: &Problem) -> Result<Problem, EmbedError> {
    require_aqvist_spec(problem)?;
    let signature = EmbeddingSignature::for_problem(problem, AssumptionMode::Global);
    let fo = first_order_signature(problem)?;

    let mut used_names: BTreeSet<String> =
        problem.formulas.iter().map(|f| f.name.clone()).collect();
    let mut formulas = Vec::new();
    let mut declare = |formulas: &mut Vec<AnnotatedFormula>,
                       used_names: &mut BTreeSet<String>,
                       symbol: &str,
                       ty: Type| {
        let name = fresh_formula_name(&format!("{symbol}_type"), used_names);
        formulas.push(AnnotatedFormula::new(
            Language::Thf,
            name,
            Role::Type,
            Payload::TypeDecl {
                symbol: symbol.to_string(),
                ty,
            },
        ));
    };

    let w = signature.world();
    declare(
        &mut formulas,
        &mut used_names,
        &signature.world_type,
        Type::base("$tType"),
    );
    declare(
        &mut formulas,
        &mut used_names,
        &signature.betterness,
        Type::fun_chain(vec![w.clone(), w.clone()], Type::base("$o")),
    );
    declare_first_order(&fo, &signature, &mut formulas, &mut used_names, &mut declare);

    for formula in &problem.formulas {
        match (&formula.role, &formula.payload) {
            (Role::Logic, _) => continue,
            (Role::Type, _) => {
                return Err(EmbedError::Signature(
                    "unexpected type declaration in NXF input".to_string(),
                ))
            }
            (role, Payload::Formula(ast)) => {
                let lifted = globally_lifted(ast, &signature, lift_aqvist_at)?;
                formulas.push(AnnotatedFormula {
                    language: Language::Thf,
                    name: formula.name.clone(),
                    role: *role,
                    payload: Payload::Formula(lifted),
                    source: formula.source.clone(),
                    annotations: formula.annotations.clone(),
                });
            }
            (_, _) => {
                return Err(EmbedError::Signature(
                    "malformed payload for formula role".to_string(),
                ))
            }
        }
    }
    Ok(Problem::new(formulas))
}

/// True when the problem contains no non-classical connective
/// applications at all.
pub fn classical_only(problem: &Problem) -> bool {
    !problem.formulas.iter().any(|f| {
        f.payload.as_formula().is_some_and(|ast| {
            let mut found = false;
            ast.walk(&mut |node| {
                if matches!(node, FormulaAst::NonClassical { .. }) {
                    found = true;
                }
            });
            found
        })
    }) && problem.logic_spec().is_none()
}
