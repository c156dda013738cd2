//! Preference semantics for the dyadic obligation fragment and a
//! bounded model search. `{$$obl} @ (head, body)` holds when every
//! best body-world (greater-or-equal to all body-worlds) satisfies the
//! head; the operator is world-independent. The search enumerates all
//! valuations (up to world symmetry) and betterness relations within a
//! world bound, so it can only ever certify satisfiability.

use std::collections::{BTreeMap, BTreeSet};

use super::{
    atom_key, ground_atom_keys, AssumptionMode, PreferenceModel, SemanticsError, Verdict, Witness,
};
use crate::tptp::{BinOp, FormulaAst};

const DDL_OBL: &str = "$$obl";

/// Default cap on the number of (valuation, betterness) combinations the
/// search may evaluate.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Truth at a world under preference semantics.
pub fn eval_pref(
    f: &FormulaAst,
    model: &PreferenceModel,
    at: usize,
) -> Result<bool, SemanticsError> {
    match f {
        FormulaAst::True => Ok(true),
        FormulaAst::False => Ok(false),
        FormulaAst::Atom { pred, args } => {
            if !f.free_vars().is_empty() {
                return Err(SemanticsError::Fragment(format!(
                    "non-ground atom '{}'",
                    atom_key(pred, args)
                )));
            }
            model.atom_true(&atom_key(pred, args), at)
        }
        FormulaAst::Not(inner) => Ok(!eval_pref(inner, model, at)?),
        FormulaAst::Binary { op, left, right } => {
            let l = eval_pref(left, model, at)?;
            let r = eval_pref(right, model, at)?;
            Ok(match op {
                BinOp::And => l && r,
                BinOp::Or => l || r,
                BinOp::Implies => !l || r,
                BinOp::Iff => l == r,
            })
        }
        FormulaAst::NonClassical {
            connective,
            params,
            args,
        } if connective == DDL_OBL => {
            if !params.is_empty() {
                return Err(SemanticsError::Fragment(
                    "parameterized {$$obl} is not supported".to_string(),
                ));
            }
            if args.len() != 2 {
                return Err(SemanticsError::Fragment(
                    "{$$obl} takes exactly two arguments (head, body)".to_string(),
                ));
            }
            let (head, body) = (&args[0], &args[1]);
            // opt rule: every body-world at least as good as all
            // body-worlds must satisfy the head; world-independent
            for v in 0..model.worlds {
                if !eval_pref(body, model, v)? {
                    continue;
                }
                let mut maximal = true;
                for u in 0..model.worlds {
                    if eval_pref(body, model, u)? && !model.at_least_as_good(v, u) {
                        maximal = false;
                        break;
                    }
                }
                if maximal && !eval_pref(head, model, v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        other => Err(SemanticsError::Fragment(format!(
            "outside the dyadic obligation fragment: {}",
            crate::tptp::print_tff(other)
        ))),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub max_worlds: usize,
    pub budget: u64,
    pub mode: AssumptionMode,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_worlds: 3,
            budget: DEFAULT_ENUMERATION_BUDGET,
            mode: AssumptionMode::Global,
        }
    }
}

/// Bounded search with global assumptions and the default budget.
pub fn search_ddl_e(
    axioms: &[FormulaAst],
    max_worlds: usize,
) -> Result<Verdict, SemanticsError> {
    search_ddl_e_with(
        axioms,
        &SearchOptions {
            max_worlds,
            ..SearchOptions::default()
        },
    )
}

/// Enumerates preference models with 1..=max_worlds worlds over the
/// atoms occurring in the axioms. Valuations are enumerated up to world
/// permutation; betterness relations exhaustively. Returns the first
/// satisfying model, or `NoModelUpTo` — never Unsatisfiable.
pub fn search_ddl_e_with(
    axioms: &[FormulaAst],
    options: &SearchOptions,
) -> Result<Verdict, SemanticsError> {
    check_ddl_fragment(axioms)?;
    let atoms: Vec<String> = ground_atom_keys(axioms)?.into_iter().collect();
    let mut evaluated: u64 = 0;

    for worlds in 1..=options.max_worlds.max(1) {
        let profile_count = 1u64 << atoms.len();
        let mut profiles = vec![0u64; worlds];
        loop {
            let valuation = valuation_from_profiles(&atoms, &profiles);
            let betterness_count = 1u64 << (worlds * worlds);
            for bet_mask in 0..betterness_count {
                evaluated += 1;
                if evaluated > options.budget {
                    return Err(SemanticsError::Resource {
                        budget: options.budget,
                    });
                }
                let model = PreferenceModel {
                    worlds,
                    betterness: betterness_from_mask(worlds, bet_mask),
                    valuation: valuation.clone(),
                };
                if let Some(designated) = satisfies(axioms, &model, options.mode)? {
                    return Ok(Verdict::Satisfiable(Witness::Preference {
                        model,
                        designated,
                    }));
                }
            }
            if !advance_profiles(&mut profiles, profile_count) {
                break;
            }
        }
    }
    Ok(Verdict::NoModelUpTo(options.max_worlds))
}

fn check_ddl_fragment(axioms: &[FormulaAst]) -> Result<(), SemanticsError> {
    for axiom in axioms {
        let mut err = None;
        axiom.walk(&mut |node| {
            let bad = match node {
                FormulaAst::Quantified { .. }
                | FormulaAst::Lambda { .. }
                | FormulaAst::Apply { .. } => true,
                FormulaAst::NonClassical { connective, .. } => connective != DDL_OBL,
                _ => false,
            };
            if bad && err.is_none() {
                err = Some(SemanticsError::Fragment(format!(
                    "outside the dyadic obligation fragment: {}",
                    crate::tptp::print_tff(node)
                )));
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(())
}

/// Non-decreasing profile sequences enumerate valuations up to world
/// permutation.
fn advance_profiles(profiles: &mut [u64], count: u64) -> bool {
    for i in (0..profiles.len()).rev() {
        if profiles[i] + 1 < count {
            let next = profiles[i] + 1;
            for p in profiles.iter_mut().skip(i) {
                *p = next;
            }
            return true;
        }
    }
    false
}

fn valuation_from_profiles(
    atoms: &[String],
    profiles: &[u64],
) -> BTreeMap<String, BTreeSet<usize>> {
    let mut valuation: BTreeMap<String, BTreeSet<usize>> = atoms
        .iter()
        .map(|a| (a.clone(), BTreeSet::new()))
        .collect();
    for (world, profile) in profiles.iter().enumerate() {
        for (bit, atom) in atoms.iter().enumerate() {
            if profile & (1 << bit) != 0 {
                valuation.get_mut(atom).unwrap().insert(world);
            }
        }
    }
    valuation
}

fn betterness_from_mask(worlds: usize, mask: u64) -> BTreeSet<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    for v in 0..worlds {
        for u in 0..worlds {
            if mask & (1 << (v * worlds + u)) != 0 {
                pairs.insert((v, u));
            }
        }
    }
    pairs
}

/// Global mode: all axioms at every world. Local mode: all axioms at
/// some world, returned as the designated one.
fn satisfies(
    axioms: &[FormulaAst],
    model: &PreferenceModel,
    mode: AssumptionMode,
) -> Result<Option<Option<usize>>, SemanticsError> {
    match mode {
        AssumptionMode::Global => {
            for axiom in axioms {
                for w in 0..model.worlds {
                    if !eval_pref(axiom, model, w)? {
                        return Ok(None);
                    }
                }
            }
            Ok(Some(None))
        }
        AssumptionMode::Local => {
            'world: for w in 0..model.worlds {
                for axiom in axioms {
                    if !eval_pref(axiom, model, w)? {
                        continue 'world;
                    }
                }
                return Ok(Some(Some(w)));
            }
            Ok(None)
        }
    }
}
