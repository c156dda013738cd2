//! Cross-module invariants: translation outputs validate as NMF and
//! stay closed, lowering erases the deontic vocabulary and preserves
//! semantics, the modal evaluator satisfies the box/dia duality, the
//! decision procedure agrees with brute-force enumeration, and the
//! embedding respects the global/local mode contrast at the THF level.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use norma_core::embed::{embed_modal_d, lift_modal_d, EmbeddingSignature};
use norma_core::lower::{nmf_erased, to_ddl, to_sdl, LowerOptions};
use norma_core::lrml::{
    translate_document, Closure, DeonticOp, LrmlDocument, LrmlFormula, LrmlStatement, LrmlTerm,
    StatementKind,
};
use norma_core::nmf::{validate_nmf, TargetLogic};
use norma_core::semantics::{
    decide_sdl_global, eval_kripke, eval_thf_finite, FiniteInterp, SymbolInterp, Sort, Verdict,
};
use norma_core::tptp::{parse_problem, print_problem, FormulaAst, Payload, Problem, TermAst};
use norma_core::AssumptionMode;

// ---- LegalRuleML translation invariants -----------------------------------

fn arb_lrml_term(ground: bool) -> BoxedStrategy<LrmlTerm> {
    let individual = prop::sample::select(vec!["car1", "john", "the car", "B2"])
        .prop_map(|s| LrmlTerm::Individual(s.to_string()));
    if ground {
        individual.boxed()
    } else {
        prop_oneof![
            individual,
            prop::sample::select(vec!["X", "Y", "the person"])
                .prop_map(|s| LrmlTerm::Variable(s.to_string())),
        ]
        .boxed()
    }
}

fn arb_lrml_formula(ground: bool) -> BoxedStrategy<LrmlFormula> {
    let atom = (
        prop::sample::select(vec!["help", "tell", "owns", "is insured"]),
        prop::collection::vec(arb_lrml_term(ground), 0..3),
    )
        .prop_map(|(relation, args)| LrmlFormula::Atom {
            relation: relation.to_string(),
            args,
        });
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..3).prop_map(LrmlFormula::And),
            prop::collection::vec(inner.clone(), 1..3).prop_map(LrmlFormula::Or),
            inner.prop_map(|f| LrmlFormula::Neg(Box::new(f))),
        ]
    })
    .boxed()
}

fn arb_lrml_statement(index: usize) -> BoxedStrategy<LrmlStatement> {
    let prescriptive = (
        arb_lrml_formula(false),
        proptest::option::of(arb_lrml_formula(false)),
        prop_oneof![
            Just(DeonticOp::Obligation),
            Just(DeonticOp::Permission),
            Just(DeonticOp::Prohibition),
        ],
        prop_oneof![Just(Closure::Universal), Just(Closure::Existential)],
        proptest::option::of(
            prop::sample::select(vec!["driver", "owner"])
                .prop_map(|s| LrmlTerm::Individual(s.to_string())),
        ),
    )
        .prop_map(move |(head, body, deontic, closure, bearer)| LrmlStatement {
            kind: StatementKind::Prescriptive,
            key: format!("norm {index}"),
            closure,
            closure_defaulted: false,
            body,
            head,
            deontic: Some(deontic),
            bearer,
        });
    let constitutive = (
        arb_lrml_formula(false),
        proptest::option::of(arb_lrml_formula(false)),
        prop_oneof![Just(Closure::Universal), Just(Closure::Existential)],
    )
        .prop_map(move |(head, body, closure)| LrmlStatement {
            kind: StatementKind::Constitutive,
            key: format!("counts as {index}"),
            closure,
            closure_defaulted: false,
            body,
            head,
            deontic: None,
            bearer: None,
        });
    let factual = arb_lrml_formula(true).prop_map(move |head| LrmlStatement {
        kind: StatementKind::Factual,
        key: format!("fact-{index}"),
        closure: Closure::Universal,
        closure_defaulted: false,
        body: None,
        head,
        deontic: None,
        bearer: None,
    });
    prop_oneof![3 => prescriptive, 1 => constitutive, 1 => factual].boxed()
}

fn arb_lrml_document() -> BoxedStrategy<LrmlDocument> {
    prop::collection::vec(Just(()), 0..5)
        .prop_flat_map(|slots| {
            slots
                .iter()
                .enumerate()
                .map(|(i, _)| arb_lrml_statement(i))
                .collect::<Vec<_>>()
        })
        .prop_map(|statements| LrmlDocument {
            statements,
            ..LrmlDocument::default()
        })
        .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn translated_documents_validate_and_stay_closed(document in arb_lrml_document()) {
        let problem = translate_document(&document).unwrap();
        // statement count preservation
        prop_assert_eq!(problem.len(), document.statements.len());
        // every emitted problem is valid NMF
        let diagnostics = validate_nmf(&problem);
        prop_assert!(diagnostics.is_empty(), "diagnostics: {:?}", diagnostics);
        // closure correctness: every emitted formula is closed
        for formula in &problem.formulas {
            if let Payload::Formula(ast) = &formula.payload {
                prop_assert!(ast.free_vars().is_empty(),
                    "free variables in {}", print_problem(&problem));
            }
        }
        // name uniqueness mirrors key uniqueness
        let names: BTreeSet<&str> = problem.formulas.iter().map(|f| f.name.as_str()).collect();
        prop_assert_eq!(names.len(), problem.len());
    }

    #[test]
    fn keys_already_in_tptp_form_are_preserved(count in 0usize..5) {
        let statements: Vec<LrmlStatement> = (0..count)
            .map(|i| LrmlStatement {
                kind: StatementKind::Factual,
                key: format!("fact{i}"),
                closure: Closure::Universal,
                closure_defaulted: false,
                body: None,
                head: LrmlFormula::Atom { relation: "help".into(), args: vec![] },
                deontic: None,
                bearer: None,
            })
            .collect();
        let document = LrmlDocument { statements, ..LrmlDocument::default() };
        let problem = translate_document(&document).unwrap();
        let names: Vec<String> = problem.formulas.iter().map(|f| f.name.clone()).collect();
        let keys: Vec<String> = document.statements.iter().map(|s| s.key.clone()).collect();
        prop_assert_eq!(names, keys);
    }
}

// ---- lowering invariants -----------------------------------------------------

fn axiom_formulas(problem: &Problem) -> Vec<FormulaAst> {
    problem.axioms().map(|(_, f)| f.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lowering_erases_the_nmf_vocabulary(problem in arb_ground_nmf_problem()) {
        let sdl = to_sdl(&problem, LowerOptions::default()).unwrap();
        prop_assert!(nmf_erased(&sdl));
        let ddl = to_ddl(&problem, TargetLogic::AqvistE, LowerOptions::default()).unwrap();
        prop_assert!(nmf_erased(&ddl));
    }

    #[test]
    fn true_antecedent_simplification_is_semantically_sound(
        problem in arb_ground_nmf_problem(),
    ) {
        let simplified = to_sdl(&problem, LowerOptions { simplify_true_antecedent: true }).unwrap();
        let plain = to_sdl(&problem, LowerOptions { simplify_true_antecedent: false }).unwrap();
        for n in 1..=2 {
            for model in serial_models(&["p", "q"], n) {
                for (s, p) in axiom_formulas(&simplified).iter().zip(axiom_formulas(&plain).iter()) {
                    for world in 0..model.worlds {
                        prop_assert_eq!(
                            eval_kripke(s, &model, world).unwrap(),
                            eval_kripke(p, &model, world).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn obligation_implies_permission_in_serial_models(
        body in arb_ground_classical(),
        head in arb_ground_classical(),
        model in arb_serial_kripke(3),
    ) {
        let obligation = Problem::new(vec![norma_core::tptp::AnnotatedFormula::axiom(
            norma_core::tptp::Language::Tff,
            "n",
            FormulaAst::nonclassical("$$obligation", vec![], vec![body.clone(), head.clone()]),
        )]);
        let permission = Problem::new(vec![norma_core::tptp::AnnotatedFormula::axiom(
            norma_core::tptp::Language::Tff,
            "n",
            FormulaAst::nonclassical("$$permission", vec![], vec![body, head]),
        )]);
        let ob = &axiom_formulas(&to_sdl(&obligation, LowerOptions::default()).unwrap())[0];
        let pe = &axiom_formulas(&to_sdl(&permission, LowerOptions::default()).unwrap())[0];
        for world in 0..model.worlds {
            let ob_holds = eval_kripke(ob, &model, world).unwrap();
            let pe_holds = eval_kripke(pe, &model, world).unwrap();
            prop_assert!(!ob_holds || pe_holds);
        }
    }

    #[test]
    fn dia_is_the_dual_of_box(
        inner in arb_ground_modal(),
        model in arb_serial_kripke(3),
    ) {
        let dia = FormulaAst::nonclassical("$dia", vec![], vec![inner.clone()]);
        let dual = FormulaAst::negate(FormulaAst::nonclassical(
            "$box",
            vec![],
            vec![FormulaAst::negate(inner)],
        ));
        for world in 0..model.worlds {
            prop_assert_eq!(
                eval_kripke(&dia, &model, world).unwrap(),
                eval_kripke(&dual, &model, world).unwrap()
            );
        }
    }
}

// ---- decision procedure vs brute-force enumeration ---------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decider_agrees_with_bounded_enumeration(
        axioms in prop::collection::vec(arb_ground_modal_over(vec!["p", "q"]), 0..3),
    ) {
        let verdict = decide_sdl_global(&axioms).unwrap();
        let enumerator_sat = enumerator_sat_global(&axioms, &["p", "q"], 3);
        match verdict {
            Verdict::Satisfiable(_) => {}
            Verdict::Unsatisfiable => {
                prop_assert!(!enumerator_sat, "decider said Unsatisfiable but the enumerator found a model");
            }
            Verdict::NoModelUpTo(_) => prop_assert!(false, "decider never gives up"),
        }
        if enumerator_sat {
            prop_assert!(verdict.is_satisfiable());
        }
    }
}

// ---- embedding mode contrast at the THF level ---------------------------------

const CHISHOLM_SDL: &str = "\
    tff(target, logic, $modal == [$quantification == $constant, \
    $constants == $rigid, $modalities == $modal_system_D]).\n\
    tff('norm1-sdl', axiom, {$box} @ (help)).\n\
    tff('norm2-sdl', axiom, help => {$box} @ (tell)).\n\
    tff('norm3-sdl', axiom, ~help => {$box} @ (~tell)).\n\
    tff('fact1-sdl', axiom, ~help).";

/// All interpretations of {acc, help, tell} over `n` worlds, with an
/// optional current-world constant.
fn interpretations(n: usize, cw: Option<usize>) -> Vec<FiniteInterp> {
    let mut interps = Vec::new();
    for acc_mask in 0u64..(1 << (n * n)) {
        for help_mask in 0u64..(1 << n) {
            for tell_mask in 0u64..(1 << n) {
                let mut interp = FiniteInterp::new(n, 0);
                interp.symbols.insert(
                    "acc".into(),
                    SymbolInterp::Pred {
                        arg_sorts: vec![Sort::World, Sort::World],
                        table: (0..n * n)
                            .filter(|i| acc_mask & (1 << i) != 0)
                            .map(|i| vec![i / n, i % n])
                            .collect(),
                    },
                );
                for (name, mask) in [("help", help_mask), ("tell", tell_mask)] {
                    interp.symbols.insert(
                        name.into(),
                        SymbolInterp::Pred {
                            arg_sorts: vec![Sort::World],
                            table: (0..n).filter(|w| mask & (1 << w) != 0).map(|w| vec![w]).collect(),
                        },
                    );
                }
                if let Some(world) = cw {
                    interp = interp.with_world_constant("cw", world);
                }
                interps.push(interp);
            }
        }
    }
    interps
}

fn embedded_axioms(mode: AssumptionMode) -> Vec<FormulaAst> {
    let problem = parse_problem(CHISHOLM_SDL).unwrap();
    let embedded = embed_modal_d(&problem, mode).unwrap();
    axiom_formulas(&embedded)
}

#[test]
fn global_embedding_has_no_small_thf_model() {
    let axioms = embedded_axioms(AssumptionMode::Global);
    for n in 1..=2 {
        for interp in interpretations(n, None) {
            let all = axioms
                .iter()
                .all(|a| eval_thf_finite(a, &interp).unwrap_or(false));
            assert!(!all, "unexpected model of the globally embedded problem");
        }
    }
}

#[test]
fn local_embedding_has_a_small_thf_model() {
    let axioms = embedded_axioms(AssumptionMode::Local);
    let mut found = false;
    'outer: for n in 1..=2 {
        for cw in 0..n {
            for interp in interpretations(n, Some(cw)) {
                if axioms
                    .iter()
                    .all(|a| eval_thf_finite(a, &interp).unwrap_or(false))
                {
                    found = true;
                    break 'outer;
                }
            }
        }
    }
    assert!(found, "no model of the locally embedded problem with two worlds");
}

// ---- lift exposure sanity -----------------------------------------------------

#[test]
fn aqvist_obligation_lift_agrees_with_eval_pref_on_all_small_models() {
    use norma_core::embed::lift_aqvist_e;
    use norma_core::semantics::eval_pref;

    let signature = EmbeddingSignature::for_problem(&Problem::default(), AssumptionMode::Global);
    let formula = norma_core::tptp::parse_tff_formula("{$$obl} @ (p, $true)").unwrap();
    let lifted = lift_aqvist_e(&formula, &signature).unwrap();
    for n in 1..=2 {
        for model in preference_models(&["p", "q"], n) {
            for at in 0..model.worlds {
                let interp = FiniteInterp::from_preference(&model)
                    .unwrap()
                    .with_world_constant("at_w", at);
                let applied = FormulaAst::apply(lifted.clone(), TermAst::constant("at_w"));
                assert_eq!(
                    eval_thf_finite(&applied, &interp).unwrap(),
                    eval_pref(&formula, &model, at).unwrap(),
                );
            }
        }
    }
}


#[test]
fn exposed_lift_matches_whole_problem_embedding() {
    // the lambda produced by the lift, applied to a world, must agree
    // with evaluating the globally embedded axiom
    let signature = EmbeddingSignature::for_problem(&Problem::default(), AssumptionMode::Global);
    let formula = norma_core::tptp::parse_tff_formula("{$box} @ (p) => {$dia} @ (q)").unwrap();
    let lifted = lift_modal_d(&formula, &signature).unwrap();
    for model in serial_models(&["p", "q", "r"], 2) {
        for at in 0..model.worlds {
            let interp = FiniteInterp::from_kripke(&model)
                .unwrap()
                .with_world_constant("at_w", at);
            let applied = FormulaAst::apply(lifted.clone(), TermAst::constant("at_w"));
            assert_eq!(
                eval_thf_finite(&applied, &interp).unwrap(),
                eval_kripke(&formula, &model, at).unwrap(),
            );
        }
    }
}
