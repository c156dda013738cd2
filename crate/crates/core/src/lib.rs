//! A translation toolchain for normative rules: LegalRuleML documents
//! are ingested into a semantically underspecified normative TPTP
//! dialect (NMF), specialized into concrete deontic logics (SDL over
//! modal D, dyadic deontic logic for Åqvist E and Carmo-Jones), embedded
//! into classical higher-order logic, and checked for satisfiability on
//! the propositional ground fragment with a built-in model finder.
//!
//! The stages compose as pure functions over [`tptp::Problem`] values:
//!
//! ```
//! use norma_core::{lrml, lower, nmf, semantics, tptp};
//!
//! let xml = r#"
//!   <lrml:LegalRuleML xmlns:lrml="l" xmlns:ruleml="r">
//!     <lrml:PrescriptiveStatement key="norm1">
//!       <ruleml:Rule closure="universal">
//!         <ruleml:then>
//!           <lrml:Obligation>
//!             <ruleml:Atom><ruleml:Rel>help</ruleml:Rel></ruleml:Atom>
//!           </lrml:Obligation>
//!         </ruleml:then>
//!       </ruleml:Rule>
//!     </lrml:PrescriptiveStatement>
//!   </lrml:LegalRuleML>"#;
//! let document = lrml::parse_lrml(xml).unwrap();
//! let problem = lrml::translate_document(&document).unwrap();
//! assert!(nmf::validate_nmf(&problem).is_empty());
//!
//! let sdl = lower::to_sdl(&problem, lower::LowerOptions::default()).unwrap();
//! let axioms: Vec<_> = sdl.axioms().map(|(_, f)| f.clone()).collect();
//! let verdict = semantics::decide_sdl_global(&axioms).unwrap();
//! assert!(verdict.is_satisfiable());
//! println!("{}", tptp::print_problem(&sdl));
//! ```

pub mod embed;
pub mod lower;
pub mod lrml;
pub mod nmf;
pub mod semantics;
pub mod tptp;

pub use semantics::AssumptionMode;
