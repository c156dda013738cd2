//! Syntax layer: data model, parser and printer for the TPTP subset used
//! by the pipeline (TFF/NXF on the way in, THF on the way out), including
//! logic specifications and user-defined connectives.
//!
//! All values are immutable after construction; parsing and printing are
//! pure functions.

mod ast;
mod lexer;
mod parser;
mod printer;

pub use ast::{
    AnnotatedFormula, BinOp, ConnectiveParam, FormulaAst, Language, LogicSpec, LogicValue,
    Payload, Problem, Quantifier, Role, TermAst, Type, TypedVar,
};
pub use parser::{parse_problem, parse_tff_formula, ParseError};
pub use printer::{print_annotated, print_name, print_problem, print_term_tff, print_tff,
    print_thf, print_type};
