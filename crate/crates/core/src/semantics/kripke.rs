//! Kripke semantics for the propositional `$box`/`$dia` fragment and a
//! complete satisfiability decision for modal D by type elimination.
//!
//! The decision procedure builds every Hintikka set (a boolean
//! assignment over the subformula closure that is propositionally
//! coherent and, for global assumptions, satisfies every axiom) and then
//! iteratively deletes sets whose modal demands cannot be witnessed:
//! a surviving set must have at least one compatible surviving successor
//! (seriality of D), a witness for every true `$dia` subformula, and a
//! witness for every false `$box` subformula. Satisfiability cannot be
//! certified by bounded model enumeration under global assumptions, so
//! elimination is what lets us return a genuine Unsatisfiable.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{atom_key, AssumptionMode, KripkeModel, SemanticsError, Verdict, Witness};
use crate::tptp::{BinOp, FormulaAst};

const BOX: &str = "$box";
const DIA: &str = "$dia";

/// Largest number of atomic components (atoms plus modal subformulas)
/// the decision procedure will enumerate over.
const MAX_ATOMIC_COMPONENTS: usize = 22;

/// Standard Kripke truth at a world. `$box` quantifies over relation
/// successors, `$dia` is its dual. Atoms missing from the valuation are
/// an error, not false.
pub fn eval_kripke(
    f: &FormulaAst,
    model: &KripkeModel,
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
        FormulaAst::Not(inner) => Ok(!eval_kripke(inner, model, at)?),
        FormulaAst::Binary { op, left, right } => {
            let l = eval_kripke(left, model, at)?;
            let r = eval_kripke(right, model, at)?;
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
        } if connective == BOX || connective == DIA => {
            if !params.is_empty() {
                return Err(SemanticsError::Fragment(format!(
                    "parameterized {connective} is not supported by the ground checker"
                )));
            }
            if args.len() != 1 {
                return Err(SemanticsError::Fragment(format!(
                    "{connective} takes exactly one argument"
                )));
            }
            if connective == BOX {
                for v in model.successors(at) {
                    if !eval_kripke(&args[0], model, v)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            } else {
                for v in model.successors(at) {
                    if eval_kripke(&args[0], model, v)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
        other => Err(SemanticsError::Fragment(format!(
            "outside the propositional modal fragment: {}",
            crate::tptp::print_tff(other)
        ))),
    }
}

/// Complete decision for the global reading: the axioms must hold at
/// every world of a serial model.
pub fn decide_sdl_global(axioms: &[FormulaAst]) -> Result<Verdict, SemanticsError> {
    decide(axioms, AssumptionMode::Global)
}

/// Decision for the local reading: the axioms must hold at a designated
/// world of a serial model. The witness carries that world.
pub fn decide_sdl_local(axioms: &[FormulaAst]) -> Result<Verdict, SemanticsError> {
    decide(axioms, AssumptionMode::Local)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Component {
    TrueConst,
    FalseConst,
    Atom(String),
    Not(usize),
    Bin(BinOp, usize, usize),
    BoxOf(usize),
    DiaOf(usize),
}

struct ModalClosure {
    /// Subformula closure; children always precede parents.
    components: Vec<Component>,
    /// Indices of atomic components (atoms and modal subformulas).
    atomic: Vec<usize>,
    /// Closure indices of the axioms.
    axioms: Vec<usize>,
}

fn closure_of(axioms: &[FormulaAst]) -> Result<ModalClosure, SemanticsError> {
    let mut components = Vec::new();
    let mut index: HashMap<FormulaAst, usize> = HashMap::new();
    let mut axiom_indices = Vec::new();
    for axiom in axioms {
        axiom_indices.push(intern(axiom, &mut components, &mut index)?);
    }
    let atomic = components
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            matches!(
                c,
                Component::Atom(_) | Component::BoxOf(_) | Component::DiaOf(_)
            )
        })
        .map(|(i, _)| i)
        .collect();
    Ok(ModalClosure {
        components,
        atomic,
        axioms: axiom_indices,
    })
}

fn intern(
    f: &FormulaAst,
    components: &mut Vec<Component>,
    index: &mut HashMap<FormulaAst, usize>,
) -> Result<usize, SemanticsError> {
    if let Some(i) = index.get(f) {
        return Ok(*i);
    }
    let component = match f {
        FormulaAst::True => Component::TrueConst,
        FormulaAst::False => Component::FalseConst,
        FormulaAst::Atom { pred, args } => {
            if !f.free_vars().is_empty() {
                return Err(SemanticsError::Fragment(format!(
                    "non-ground atom '{}'",
                    atom_key(pred, args)
                )));
            }
            Component::Atom(atom_key(pred, args))
        }
        FormulaAst::Not(inner) => Component::Not(intern(inner, components, index)?),
        FormulaAst::Binary { op, left, right } => {
            let l = intern(left, components, index)?;
            let r = intern(right, components, index)?;
            Component::Bin(*op, l, r)
        }
        FormulaAst::NonClassical {
            connective,
            params,
            args,
        } if (connective == BOX || connective == DIA)
            && params.is_empty()
            && args.len() == 1 =>
        {
            let arg = intern(&args[0], components, index)?;
            if connective == BOX {
                Component::BoxOf(arg)
            } else {
                Component::DiaOf(arg)
            }
        }
        other => {
            return Err(SemanticsError::Fragment(format!(
                "outside the propositional modal fragment: {}",
                crate::tptp::print_tff(other)
            )))
        }
    };
    let i = components.len();
    components.push(component);
    index.insert(f.clone(), i);
    Ok(i)
}

/// A Hintikka set, represented as truth values for every closure entry.
type TypeRow = Vec<bool>;

fn evaluate_row(closure: &ModalClosure, atomic_values: &[bool]) -> TypeRow {
    let mut row = vec![false; closure.components.len()];
    let mut next_atomic = 0;
    for (i, component) in closure.components.iter().enumerate() {
        row[i] = match component {
            Component::TrueConst => true,
            Component::FalseConst => false,
            Component::Atom(_) | Component::BoxOf(_) | Component::DiaOf(_) => {
                let v = atomic_values[next_atomic];
                next_atomic += 1;
                v
            }
            Component::Not(a) => !row[*a],
            Component::Bin(op, l, r) => match op {
                BinOp::And => row[*l] && row[*r],
                BinOp::Or => row[*l] || row[*r],
                BinOp::Implies => !row[*l] || row[*r],
                BinOp::Iff => row[*l] == row[*r],
            },
        };
    }
    row
}

/// `u` can serve as a relation successor of `t`: every boxed formula
/// true at `t` holds in `u`, and every diamond false at `t` stays false.
fn compatible(closure: &ModalClosure, t: &TypeRow, u: &TypeRow) -> bool {
    closure
        .components
        .iter()
        .enumerate()
        .all(|(i, component)| match component {
            Component::BoxOf(arg) => !t[i] || u[*arg],
            Component::DiaOf(arg) => t[i] || !u[*arg],
            _ => true,
        })
}

fn satisfies_axioms(closure: &ModalClosure, row: &TypeRow) -> bool {
    closure.axioms.iter().all(|i| row[*i])
}

fn decide(axioms: &[FormulaAst], mode: AssumptionMode) -> Result<Verdict, SemanticsError> {
    let closure = closure_of(axioms)?;
    let k = closure.atomic.len();
    if k > MAX_ATOMIC_COMPONENTS {
        return Err(SemanticsError::Resource {
            budget: 1u64 << MAX_ATOMIC_COMPONENTS,
        });
    }

    // all propositionally coherent assignments; under global assumptions
    // every world must satisfy every axiom, so filter here
    let mut types: Vec<TypeRow> = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let atomic_values: Vec<bool> = (0..k).map(|bit| mask & (1 << bit) != 0).collect();
        let row = evaluate_row(&closure, &atomic_values);
        if mode == AssumptionMode::Local || satisfies_axioms(&closure, &row) {
            types.push(row);
        }
    }

    let mut alive: Vec<bool> = vec![true; types.len()];
    loop {
        let mut changed = false;
        for t in 0..types.len() {
            if !alive[t] {
                continue;
            }
            if !demands_met(&closure, &types, &alive, t) {
                alive[t] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let seed = match mode {
        AssumptionMode::Global => (0..types.len()).find(|t| alive[*t]),
        AssumptionMode::Local => {
            (0..types.len()).find(|t| alive[*t] && satisfies_axioms(&closure, &types[*t]))
        }
    };
    let seed = match seed {
        Some(seed) => seed,
        None => return Ok(Verdict::Unsatisfiable),
    };

    let model = extract_model(&closure, &types, &alive, seed);
    debug_assert!(model.is_serial());
    #[cfg(debug_assertions)]
    {
        let worlds: Vec<usize> = match mode {
            AssumptionMode::Global => (0..model.worlds).collect(),
            AssumptionMode::Local => vec![0],
        };
        for axiom in axioms {
            for &w in &worlds {
                debug_assert_eq!(eval_kripke(axiom, &model, w), Ok(true));
            }
        }
    }
    let designated = match mode {
        AssumptionMode::Global => None,
        AssumptionMode::Local => Some(0),
    };
    Ok(Verdict::Satisfiable(Witness::Kripke { model, designated }))
}

/// Every requirement of `t` has a surviving witness: a compatible
/// successor per se (seriality), one satisfying `arg` for each true
/// diamond, and one falsifying `arg` for each false box.
fn demands_met(closure: &ModalClosure, types: &[TypeRow], alive: &[bool], t: usize) -> bool {
    let survivors = || {
        types
            .iter()
            .enumerate()
            .filter(|(u, _)| alive[*u])
            .filter(|(_, row)| compatible(closure, &types[t], row))
    };
    if survivors().next().is_none() {
        return false;
    }
    closure
        .components
        .iter()
        .enumerate()
        .all(|(i, component)| match component {
            Component::DiaOf(arg) if types[t][i] => survivors().any(|(_, row)| row[*arg]),
            Component::BoxOf(arg) if !types[t][i] => survivors().any(|(_, row)| !row[*arg]),
            _ => true,
        })
}

/// Builds a witness from the surviving types reachable from `seed`:
/// greedily pick one witness per demand, then take the full
/// compatibility relation restricted to the collected worlds.
fn extract_model(
    closure: &ModalClosure,
    types: &[TypeRow],
    alive: &[bool],
    seed: usize,
) -> KripkeModel {
    let mut picked: Vec<usize> = vec![seed];
    let mut queue = vec![seed];
    while let Some(t) = queue.pop() {
        let mut need: Vec<usize> = Vec::new();
        let compatible_survivors: Vec<usize> = (0..types.len())
            .filter(|u| alive[*u] && compatible(closure, &types[t], &types[*u]))
            .collect();
        // seriality witness
        need.push(
            *compatible_survivors
                .iter()
                .find(|u| picked.contains(u))
                .unwrap_or(&compatible_survivors[0]),
        );
        for (i, component) in closure.components.iter().enumerate() {
            match component {
                Component::DiaOf(arg) if types[t][i] => {
                    let w = compatible_survivors
                        .iter()
                        .find(|u| types[**u][*arg] && picked.contains(u))
                        .or_else(|| compatible_survivors.iter().find(|u| types[**u][*arg]))
                        .expect("demands checked before extraction");
                    need.push(*w);
                }
                Component::BoxOf(arg) if !types[t][i] => {
                    let w = compatible_survivors
                        .iter()
                        .find(|u| !types[**u][*arg] && picked.contains(u))
                        .or_else(|| compatible_survivors.iter().find(|u| !types[**u][*arg]))
                        .expect("demands checked before extraction");
                    need.push(*w);
                }
                _ => {}
            }
        }
        for u in need {
            if !picked.contains(&u) {
                picked.push(u);
                queue.push(u);
            }
        }
    }

    let relation: BTreeSet<(usize, usize)> = picked
        .iter()
        .enumerate()
        .flat_map(|(from, t)| {
            picked
                .iter()
                .enumerate()
                .filter(|(_, u)| compatible(closure, &types[*t], &types[**u]))
                .map(move |(to, _)| (from, to))
        })
        .collect();

    let mut valuation: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for (i, component) in closure.components.iter().enumerate() {
        if let Component::Atom(key) = component {
            let worlds = picked
                .iter()
                .enumerate()
                .filter(|(_, t)| types[**t][i])
                .map(|(w, _)| w)
                .collect();
            valuation.insert(key.clone(), worlds);
        }
    }

    KripkeModel {
        worlds: picked.len(),
        relation,
        valuation,
    }
}
