//! Ground-fragment semantics and decision procedures: Kripke evaluation
//! and a complete type-elimination decision for propositional modal D,
//! bounded preference-model search for the dyadic obligation fragment,
//! and finite evaluation of embedded THF terms.

mod kripke;
mod pref;
mod thf_eval;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::tptp::{print_tff, FormulaAst, TermAst};

pub use kripke::{decide_sdl_global, decide_sdl_local, eval_kripke};
pub use pref::{
    eval_pref, search_ddl_e, search_ddl_e_with, SearchOptions, DEFAULT_ENUMERATION_BUDGET,
};
pub use thf_eval::{eval_thf_finite, FiniteInterp, Sort, SymbolInterp};

/// Whether assumptions are required to hold at every world or only at a
/// designated one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssumptionMode {
    Global,
    Local,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("atom '{0}' is not covered by the model's valuation")]
    UnknownAtom(String),
    #[error("outside the supported fragment: {0}")]
    Fragment(String),
    #[error("enumeration budget of {budget} models exceeded")]
    Resource { budget: u64 },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
}

/// Finite Kripke structure. System D expects the relation to be serial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    pub worlds: usize,
    pub relation: BTreeSet<(usize, usize)>,
    pub valuation: BTreeMap<String, BTreeSet<usize>>,
}

impl KripkeModel {
    pub fn is_serial(&self) -> bool {
        (0..self.worlds).all(|w| self.relation.iter().any(|(from, _)| *from == w))
    }

    pub fn successors(&self, world: usize) -> impl Iterator<Item = usize> + '_ {
        self.relation
            .iter()
            .filter(move |(from, _)| *from == world)
            .map(|(_, to)| *to)
    }

    pub fn atom_true(&self, key: &str, world: usize) -> Result<bool, SemanticsError> {
        self.valuation
            .get(key)
            .map(|worlds| worlds.contains(&world))
            .ok_or_else(|| SemanticsError::UnknownAtom(key.to_string()))
    }

    /// Renumbers worlds into a deterministic order (by valuation profile,
    /// then outgoing edges) so witnesses compare stably across runs.
    pub fn canonicalize(&self) -> KripkeModel {
        let order = canonical_order(self.worlds, &self.valuation, &self.relation);
        KripkeModel {
            worlds: self.worlds,
            relation: remap_pairs(&self.relation, &order),
            valuation: remap_valuation(&self.valuation, &order),
        }
    }
}

/// Finite preference structure; `(v, u)` in `betterness` reads "v is at
/// least as good as u". No frame conditions are imposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceModel {
    pub worlds: usize,
    pub betterness: BTreeSet<(usize, usize)>,
    pub valuation: BTreeMap<String, BTreeSet<usize>>,
}

impl PreferenceModel {
    pub fn at_least_as_good(&self, v: usize, u: usize) -> bool {
        self.betterness.contains(&(v, u))
    }

    pub fn atom_true(&self, key: &str, world: usize) -> Result<bool, SemanticsError> {
        self.valuation
            .get(key)
            .map(|worlds| worlds.contains(&world))
            .ok_or_else(|| SemanticsError::UnknownAtom(key.to_string()))
    }

    pub fn canonicalize(&self) -> PreferenceModel {
        let order = canonical_order(self.worlds, &self.valuation, &self.betterness);
        PreferenceModel {
            worlds: self.worlds,
            betterness: remap_pairs(&self.betterness, &order),
            valuation: remap_valuation(&self.valuation, &order),
        }
    }
}

fn canonical_order(
    worlds: usize,
    valuation: &BTreeMap<String, BTreeSet<usize>>,
    pairs: &BTreeSet<(usize, usize)>,
) -> Vec<usize> {
    let profile = |w: usize| {
        let atoms: Vec<bool> = valuation.values().map(|set| set.contains(&w)).collect();
        let out: Vec<usize> = pairs
            .iter()
            .filter(|(from, _)| *from == w)
            .map(|(_, to)| *to)
            .collect();
        (atoms, out, w)
    };
    let mut order: Vec<usize> = (0..worlds).collect();
    order.sort_by_key(|w| profile(*w));
    // order[i] = old index at new position i; invert to old -> new
    let mut inverse = vec![0; worlds];
    for (new, old) in order.iter().enumerate() {
        inverse[*old] = new;
    }
    inverse
}

fn remap_pairs(pairs: &BTreeSet<(usize, usize)>, map: &[usize]) -> BTreeSet<(usize, usize)> {
    pairs.iter().map(|(a, b)| (map[*a], map[*b])).collect()
}

fn remap_valuation(
    valuation: &BTreeMap<String, BTreeSet<usize>>,
    map: &[usize],
) -> BTreeMap<String, BTreeSet<usize>> {
    valuation
        .iter()
        .map(|(k, set)| (k.clone(), set.iter().map(|w| map[*w]).collect()))
        .collect()
}

/// A model that witnesses satisfiability, with the designated world for
/// local-assumption checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Kripke {
        model: KripkeModel,
        designated: Option<usize>,
    },
    Preference {
        model: PreferenceModel,
        designated: Option<usize>,
    },
}

/// Outcome of a satisfiability check. `NoModelUpTo` is an honest
/// "gave up" for bounded searches, never a claim of unsatisfiability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Satisfiable(Witness),
    Unsatisfiable,
    NoModelUpTo(usize),
}

impl Verdict {
    pub fn szs_status(&self) -> &'static str {
        match self {
            Verdict::Satisfiable(_) => "Satisfiable",
            Verdict::Unsatisfiable => "Unsatisfiable",
            Verdict::NoModelUpTo(_) => "GaveUp",
        }
    }

    /// The standard status line, e.g. `% SZS status Satisfiable for x`.
    pub fn szs_line(&self, name: &str) -> String {
        format!("% SZS status {} for {}", self.szs_status(), name)
    }

    pub fn is_satisfiable(&self) -> bool {
        matches!(self, Verdict::Satisfiable(_))
    }
}

/// Canonical propositional key of a ground atom, e.g. `owns(a, b)`.
pub(crate) fn atom_key(pred: &str, args: &[TermAst]) -> String {
    print_tff(&FormulaAst::Atom {
        pred: pred.to_string(),
        args: args.to_vec(),
    })
}

/// Collects the keys of all ground atoms in the given formulas.
pub fn ground_atom_keys(formulas: &[FormulaAst]) -> Result<BTreeSet<String>, SemanticsError> {
    let mut keys = BTreeSet::new();
    for f in formulas {
        let mut err = None;
        f.walk(&mut |node| {
            if let FormulaAst::Atom { pred, args } = node {
                if node.free_vars().is_empty() {
                    keys.insert(atom_key(pred, args));
                } else {
                    err = Some(SemanticsError::Fragment(format!(
                        "non-ground atom '{}'",
                        atom_key(pred, args)
                    )));
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(keys)
}
