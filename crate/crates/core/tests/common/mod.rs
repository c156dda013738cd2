//! Shared proptest strategies and brute-force oracles for the
//! integration suites. The enumeration oracles are deliberately
//! independent of the decision procedures they cross-check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use norma_core::semantics::{eval_kripke, eval_pref, KripkeModel, PreferenceModel};
use norma_core::tptp::{
    AnnotatedFormula, BinOp, ConnectiveParam, FormulaAst, Language, LogicSpec, LogicValue,
    Payload, Problem, Quantifier, Role, TermAst, TypedVar,
};

pub const GROUND_ATOMS: [&str; 3] = ["p", "q", "r"];

// ---- ground modal/DDL formula strategies ---------------------------------

fn arb_ground_leaf(atoms: Vec<&'static str>) -> BoxedStrategy<FormulaAst> {
    prop_oneof![
        Just(FormulaAst::True),
        Just(FormulaAst::False),
        prop::sample::select(atoms).prop_map(FormulaAst::prop),
    ]
    .boxed()
}

fn arb_binop() -> BoxedStrategy<BinOp> {
    prop_oneof![
        Just(BinOp::And),
        Just(BinOp::Or),
        Just(BinOp::Implies),
        Just(BinOp::Iff),
    ]
    .boxed()
}

/// Classical connectives plus `{$box}`/`{$dia}` over the given nullary
/// atoms.
pub fn arb_ground_modal_over(atoms: Vec<&'static str>) -> BoxedStrategy<FormulaAst> {
    arb_ground_leaf(atoms)
        .prop_recursive(3, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(FormulaAst::negate),
                (arb_binop(), inner.clone(), inner.clone())
                    .prop_map(|(op, l, r)| FormulaAst::binary(op, l, r)),
                inner
                    .clone()
                    .prop_map(|f| FormulaAst::nonclassical("$box", vec![], vec![f])),
                inner
                    .clone()
                    .prop_map(|f| FormulaAst::nonclassical("$dia", vec![], vec![f])),
            ]
        })
        .boxed()
}

pub fn arb_ground_modal() -> BoxedStrategy<FormulaAst> {
    arb_ground_modal_over(GROUND_ATOMS.to_vec())
}

/// Purely classical ground formulas over [`GROUND_ATOMS`].
pub fn arb_ground_classical() -> BoxedStrategy<FormulaAst> {
    arb_ground_leaf(GROUND_ATOMS.to_vec())
        .prop_recursive(3, 16, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(FormulaAst::negate),
                (arb_binop(), inner.clone(), inner.clone())
                    .prop_map(|(op, l, r)| FormulaAst::binary(op, l, r)),
            ]
        })
        .boxed()
}

/// Classical connectives plus dyadic `{$$obl}` over nullary atoms.
pub fn arb_ground_ddl() -> BoxedStrategy<FormulaAst> {
    arb_ground_leaf(GROUND_ATOMS.to_vec())
        .prop_recursive(3, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(FormulaAst::negate),
                (arb_binop(), inner.clone(), inner.clone())
                    .prop_map(|(op, l, r)| FormulaAst::binary(op, l, r)),
                (inner.clone(), inner.clone()).prop_map(|(h, b)| {
                    FormulaAst::nonclassical("$$obl", vec![], vec![h, b])
                }),
            ]
        })
        .boxed()
}

// ---- model strategies ------------------------------------------------------

fn valuation_from_masks(atoms: &[&str], masks: &[u32]) -> BTreeMap<String, BTreeSet<usize>> {
    atoms
        .iter()
        .zip(masks)
        .map(|(atom, mask)| {
            let worlds = (0..32usize).filter(|w| mask & (1 << w) != 0).collect();
            (atom.to_string(), worlds)
        })
        .collect()
}

/// Random serial Kripke model with 1..=max_worlds worlds whose valuation
/// covers all of [`GROUND_ATOMS`].
pub fn arb_serial_kripke(max_worlds: usize) -> BoxedStrategy<KripkeModel> {
    (1..=max_worlds)
        .prop_flat_map(|n| {
            let successors = prop::collection::vec(1u32..(1u32 << n), n);
            let valuations = prop::collection::vec(0u32..(1u32 << n), GROUND_ATOMS.len());
            (successors, valuations).prop_map(move |(successors, masks)| {
                let relation = successors
                    .iter()
                    .enumerate()
                    .flat_map(|(from, mask)| {
                        (0..n)
                            .filter(move |to| mask & (1 << to) != 0)
                            .map(move |to| (from, to))
                    })
                    .collect();
                KripkeModel {
                    worlds: n,
                    relation,
                    valuation: valuation_from_masks(&GROUND_ATOMS, &masks),
                }
            })
        })
        .boxed()
}

/// Random preference model with 1..=max_worlds worlds.
pub fn arb_pref_model(max_worlds: usize) -> BoxedStrategy<PreferenceModel> {
    (1..=max_worlds)
        .prop_flat_map(|n| {
            let betterness = prop::collection::vec(any::<bool>(), n * n);
            let valuations = prop::collection::vec(0u32..(1u32 << n), GROUND_ATOMS.len());
            (betterness, valuations).prop_map(move |(bits, masks)| PreferenceModel {
                worlds: n,
                betterness: bits
                    .iter()
                    .enumerate()
                    .filter(|(_, set)| **set)
                    .map(|(i, _)| (i / n, i % n))
                    .collect(),
                valuation: valuation_from_masks(&GROUND_ATOMS, &masks),
            })
        })
        .boxed()
}

// ---- enumeration oracles ----------------------------------------------------

/// Exhaustively enumerates every serial Kripke model with exactly
/// `worlds` worlds over the given atoms.
pub fn serial_models(atoms: &[&str], worlds: usize) -> Vec<KripkeModel> {
    let mut models = Vec::new();
    let succ_options: Vec<u32> = (1..(1u32 << worlds)).collect();
    let mut succ_choice = vec![0usize; worlds];
    loop {
        let relation: BTreeSet<(usize, usize)> = succ_choice
            .iter()
            .enumerate()
            .flat_map(|(from, choice)| {
                let mask = succ_options[*choice];
                (0..worlds)
                    .filter(move |to| mask & (1 << to) != 0)
                    .map(move |to| (from, to))
            })
            .collect();
        for val_mask in 0..(1u64 << (worlds * atoms.len())) {
            let masks: Vec<u32> = (0..atoms.len())
                .map(|a| ((val_mask >> (a * worlds)) & ((1 << worlds) - 1)) as u32)
                .collect();
            models.push(KripkeModel {
                worlds,
                relation: relation.clone(),
                valuation: valuation_from_masks(atoms, &masks),
            });
        }
        if !advance(&mut succ_choice, succ_options.len()) {
            break;
        }
    }
    models
}

/// Exhaustively enumerates every preference model with exactly `worlds`
/// worlds over the given atoms.
pub fn preference_models(atoms: &[&str], worlds: usize) -> Vec<PreferenceModel> {
    let mut models = Vec::new();
    for bet_mask in 0..(1u64 << (worlds * worlds)) {
        let betterness: BTreeSet<(usize, usize)> = (0..worlds * worlds)
            .filter(|i| bet_mask & (1 << i) != 0)
            .map(|i| (i / worlds, i % worlds))
            .collect();
        for val_mask in 0..(1u64 << (worlds * atoms.len())) {
            let masks: Vec<u32> = (0..atoms.len())
                .map(|a| ((val_mask >> (a * worlds)) & ((1 << worlds) - 1)) as u32)
                .collect();
            models.push(PreferenceModel {
                worlds,
                betterness: betterness.clone(),
                valuation: valuation_from_masks(atoms, &masks),
            });
        }
    }
    models
}

fn advance(choice: &mut [usize], options: usize) -> bool {
    for slot in choice.iter_mut() {
        *slot += 1;
        if *slot < options {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Oracle: is there a serial model with at most `max_worlds` worlds that
/// satisfies every axiom at every world?
pub fn enumerator_sat_global(axioms: &[FormulaAst], atoms: &[&str], max_worlds: usize) -> bool {
    for n in 1..=max_worlds {
        for model in serial_models(atoms, n) {
            let all = axioms.iter().all(|a| {
                (0..model.worlds).all(|w| eval_kripke(a, &model, w).unwrap_or(false))
            });
            if all {
                return true;
            }
        }
    }
    false
}

/// Oracle: smallest world count (up to `max_worlds`) of a serial model
/// satisfying every axiom at a designated world.
pub fn enumerator_min_local_worlds(
    axioms: &[FormulaAst],
    atoms: &[&str],
    max_worlds: usize,
) -> Option<usize> {
    for n in 1..=max_worlds {
        for model in serial_models(atoms, n) {
            for at in 0..model.worlds {
                if axioms
                    .iter()
                    .all(|a| eval_kripke(a, &model, at).unwrap_or(false))
                {
                    return Some(n);
                }
            }
        }
    }
    None
}

/// Oracle: smallest world count (up to `max_worlds`) of a preference
/// model satisfying every axiom at some designated world.
pub fn pref_enumerator_min_local_worlds(
    axioms: &[FormulaAst],
    atoms: &[&str],
    max_worlds: usize,
) -> Option<usize> {
    for n in 1..=max_worlds {
        for model in preference_models(atoms, n) {
            for at in 0..model.worlds {
                if axioms
                    .iter()
                    .all(|a| eval_pref(a, &model, at).unwrap_or(false))
                {
                    return Some(n);
                }
            }
        }
    }
    None
}

/// Ground NMF problems over two atoms, for erasure and semantic
/// equivalence checks.
pub fn arb_ground_nmf_problem() -> BoxedStrategy<Problem> {
    let leaf = prop_oneof![
        Just(FormulaAst::True),
        Just(FormulaAst::False),
        prop::sample::select(vec!["p", "q"]).prop_map(FormulaAst::prop),
    ];
    let classical = leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(FormulaAst::negate),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| FormulaAst::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| FormulaAst::or(l, r)),
        ]
    });
    let norm = (
        prop::sample::select(vec![
            "$$obligation",
            "$$permission",
            "$$prohibition",
            "$$constitutive",
        ]),
        classical.clone(),
        classical,
    )
        .prop_map(|(connective, body, head)| {
            FormulaAst::nonclassical(connective, vec![], vec![body, head])
        });
    prop::collection::vec(norm, 1..4)
        .prop_map(|formulas| {
            Problem::new(
                formulas
                    .into_iter()
                    .enumerate()
                    .map(|(i, f)| {
                        AnnotatedFormula::axiom(Language::Tff, format!("n{i}"), f)
                    })
                    .collect(),
            )
        })
        .boxed()
}

// ---- problem strategies for the round-trip property -------------------------

fn arb_plain_lower() -> BoxedStrategy<String> {
    prop::string::string_regex("[a-z][a-z0-9_]{0,6}").unwrap().boxed()
}

fn arb_any_name() -> BoxedStrategy<String> {
    prop_oneof![
        4 => arb_plain_lower(),
        1 => prop::string::string_regex("[a-z][a-z0-9]{0,3}(-[a-z0-9]{1,3}){1,2}").unwrap(),
        1 => prop::string::string_regex("[ -~]{1,8}").unwrap(),
    ]
    .boxed()
}

fn arb_upper_name() -> BoxedStrategy<String> {
    prop::string::string_regex("[A-Z][a-zA-Z0-9_]{0,4}").unwrap().boxed()
}

fn arb_dollar_dollar() -> BoxedStrategy<String> {
    prop::string::string_regex("\\$\\$[a-z][a-zA-Z0-9_]{0,6}").unwrap().boxed()
}

pub fn arb_term() -> BoxedStrategy<TermAst> {
    let leaf = prop_oneof![
        arb_upper_name().prop_map(TermAst::Variable),
        arb_any_name().prop_map(TermAst::Constant),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        (arb_any_name(), prop::collection::vec(inner, 1..3))
            .prop_map(|(name, args)| TermAst::Function(name, args))
    })
    .boxed()
}

fn arb_connective_params() -> BoxedStrategy<Vec<ConnectiveParam>> {
    prop_oneof![
        5 => Just(Vec::new()),
        1 => arb_term().prop_map(|t| vec![ConnectiveParam::Index(t)]),
        1 => (arb_plain_lower(), arb_term()).prop_map(|(key, value)| {
            vec![ConnectiveParam::KeyValue { key, value }]
        }),
    ]
    .boxed()
}

pub fn arb_tff_formula() -> BoxedStrategy<FormulaAst> {
    let leaf = prop_oneof![
        Just(FormulaAst::True),
        Just(FormulaAst::False),
        (arb_any_name(), prop::collection::vec(arb_term(), 0..3))
            .prop_map(|(pred, args)| FormulaAst::Atom { pred, args }),
    ];
    leaf.prop_recursive(3, 32, 3, |inner| {
        let connective_name = prop_oneof![
            2 => prop::sample::select(vec![
                "$box".to_string(),
                "$dia".to_string(),
                "$$obligation".to_string(),
                "$$permission".to_string(),
                "$$prohibition".to_string(),
                "$$constitutive".to_string(),
                "$$obl".to_string(),
            ]),
            1 => arb_dollar_dollar(),
        ];
        prop_oneof![
            inner.clone().prop_map(FormulaAst::negate),
            (arb_binop(), inner.clone(), inner.clone())
                .prop_map(|(op, l, r)| FormulaAst::binary(op, l, r)),
            (
                prop_oneof![Just(Quantifier::Forall), Just(Quantifier::Exists)],
                prop::collection::vec(arb_upper_name(), 1..3),
                inner.clone()
            )
                .prop_map(|(quantifier, vars, body)| {
                    let vars = vars.into_iter().map(TypedVar::untyped).collect();
                    FormulaAst::quantified(quantifier, vars, body)
                }),
            (
                connective_name,
                arb_connective_params(),
                prop::collection::vec(inner.clone(), 1..3)
            )
                .prop_map(|(name, params, args)| FormulaAst::nonclassical(name, params, args)),
        ]
    })
    .boxed()
}

fn arb_logic_value() -> BoxedStrategy<LogicValue> {
    let ident = prop_oneof![
        prop::sample::select(vec![
            "$modal_system_D".to_string(),
            "$constant".to_string(),
            "$rigid".to_string(),
            "$$sdl".to_string(),
            "$$aqvistE".to_string(),
            "$$carmoJones".to_string(),
        ]),
        arb_plain_lower(),
    ];
    ident.prop_map(LogicValue::Ident).boxed()
}

fn arb_logic_spec() -> BoxedStrategy<LogicSpec> {
    let key = prop_oneof![
        prop::sample::select(vec![
            "$modalities".to_string(),
            "$quantification".to_string(),
            "$$logic".to_string(),
            "$$system".to_string(),
        ]),
        arb_plain_lower(),
    ];
    let option = (key, arb_logic_value());
    let name = prop::sample::select(vec![
        "$modal".to_string(),
        "$$normative".to_string(),
        "$$ddl".to_string(),
    ]);
    (name, prop::collection::btree_map(option.0, option.1, 0..3))
        .prop_map(|(name, options)| LogicSpec {
            name,
            options: options.into_iter().collect(),
        })
        .boxed()
}

fn arb_source() -> BoxedStrategy<Option<TermAst>> {
    prop_oneof![
        3 => Just(None),
        1 => arb_term()
            .prop_filter("the unknown source reads back as absent", |t| {
                *t != TermAst::Constant("unknown".into())
            })
            .prop_map(Some),
    ]
    .boxed()
}

fn arb_annotation_term() -> BoxedStrategy<TermAst> {
    arb_term()
        .prop_recursive(2, 8, 2, |inner| {
            prop::collection::vec(inner, 0..3).prop_map(TermAst::List)
        })
        .boxed()
}

fn arb_annotations() -> BoxedStrategy<Option<Vec<TermAst>>> {
    prop_oneof![
        3 => Just(None),
        1 => prop::collection::vec(arb_annotation_term(), 0..3).prop_map(Some),
    ]
    .boxed()
}

/// Structured generator for whole problems: TFF/NXF formulas, logic
/// specifications, sources and annotations, with unique names.
pub fn arb_problem() -> BoxedStrategy<Problem> {
    let formula_entry = (
        arb_any_name(),
        prop_oneof![
            4 => Just(Role::Axiom),
            1 => Just(Role::Definition),
            1 => Just(Role::Conjecture),
        ],
        arb_tff_formula().prop_map(Payload::Formula),
        arb_source(),
        arb_annotations(),
    );
    let logic_entry = (
        arb_any_name(),
        Just(Role::Logic),
        arb_logic_spec().prop_map(Payload::Logic),
        arb_source(),
        arb_annotations(),
    );
    let entry = prop_oneof![6 => formula_entry, 1 => logic_entry];
    prop::collection::vec(entry, 0..6)
        .prop_map(|entries| {
            let formulas = entries
                .into_iter()
                .enumerate()
                .map(|(i, (name, role, payload, source, annotations))| AnnotatedFormula {
                    language: Language::Tff,
                    // suffix guarantees name uniqueness within the problem
                    name: format!("{name}_{i}"),
                    role,
                    payload,
                    source,
                    annotations,
                })
                .collect();
            Problem::new(formulas)
        })
        .boxed()
}
