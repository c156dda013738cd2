//! Deterministic printing of problems. TFF formulas use standard
//! first-order application `f(a, b)`; THF formulas render applications
//! as curried `@`-chains. Output always reparses to an equal AST.

use std::fmt::Write;

use super::ast::*;

/// Prints a whole problem, one annotated formula per line.
pub fn print_problem(problem: &Problem) -> String {
    let mut out = String::new();
    for formula in &problem.formulas {
        out.push_str(&print_annotated(formula));
        out.push('\n');
    }
    out
}

pub fn print_annotated(f: &AnnotatedFormula) -> String {
    let mut out = String::new();
    write!(
        out,
        "{}({}, {}, ",
        f.language.keyword(),
        print_name(&f.name),
        f.role.keyword()
    )
    .unwrap();
    match &f.payload {
        Payload::Formula(formula) => match f.language {
            Language::Tff => out.push_str(&print_tff(formula)),
            Language::Thf => out.push_str(&print_thf(formula)),
        },
        Payload::Logic(spec) => out.push_str(&print_logic_spec(spec)),
        Payload::TypeDecl { symbol, ty } => {
            write!(out, "{}: {}", print_name(symbol), print_type(ty)).unwrap();
        }
    }
    match (&f.source, &f.annotations) {
        (None, None) => {}
        (Some(src), None) => write!(out, ", {}", print_term_tff(src)).unwrap(),
        (src, Some(annots)) => {
            let src_text = src
                .as_ref()
                .map(print_term_tff)
                .unwrap_or_else(|| "unknown".to_string());
            let items: Vec<String> = annots.iter().map(print_term_tff).collect();
            write!(out, ", {}, [{}]", src_text, items.join(", ")).unwrap();
        }
    }
    out.push_str(").");
    out
}

fn is_lower_word(text: &str) -> bool {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Quotes a name unless it is already a plain lower word.
pub fn print_name(name: &str) -> String {
    if is_lower_word(name) {
        name.to_string()
    } else {
        let escaped = name.replace('\\', "\\\\").replace('\'', "\\'");
        format!("'{escaped}'")
    }
}

pub fn print_type(ty: &Type) -> String {
    match ty {
        Type::Base(name) => name.clone(),
        Type::Fun(arg, result) => {
            let arg_text = match arg.as_ref() {
                Type::Fun(..) => format!("({})", print_type(arg)),
                Type::Base(_) => print_type(arg),
            };
            format!("{} > {}", arg_text, print_type(result))
        }
    }
}

fn print_logic_spec(spec: &LogicSpec) -> String {
    format!("{} == {}", spec.name, print_options(&spec.options))
}

fn print_options(options: &[(String, LogicValue)]) -> String {
    let items: Vec<String> = options
        .iter()
        .map(|(key, value)| match value {
            LogicValue::Ident(ident) => format!("{key} == {ident}"),
            LogicValue::Options(nested) => format!("{key} == {}", print_options(nested)),
        })
        .collect();
    format!("[{}]", items.join(", "))
}

pub fn print_term_tff(term: &TermAst) -> String {
    match term {
        TermAst::Variable(v) => v.clone(),
        TermAst::Constant(c) => print_name(c),
        TermAst::Function(name, args) => {
            let items: Vec<String> = args.iter().map(print_term_tff).collect();
            format!("{}({})", print_name(name), items.join(", "))
        }
        TermAst::List(items) => {
            let items: Vec<String> = items.iter().map(print_term_tff).collect();
            format!("[{}]", items.join(", "))
        }
    }
}

fn print_binder(vars: &[TypedVar]) -> String {
    let items: Vec<String> = vars
        .iter()
        .map(|v| match &v.ty {
            Some(ty) => format!("{}: {}", v.name, print_type(ty)),
            None => v.name.clone(),
        })
        .collect();
    format!("[{}]", items.join(", "))
}

fn print_connective_head(connective: &str, params: &[ConnectiveParam]) -> String {
    if params.is_empty() {
        format!("{{{connective}}}")
    } else {
        let items: Vec<String> = params
            .iter()
            .map(|p| match p {
                ConnectiveParam::KeyValue { key, value } => {
                    format!("{} := {}", key, print_term_tff(value))
                }
                ConnectiveParam::Index(term) => format!("#{}", print_term_tff(term)),
            })
            .collect();
        format!("{{{}({})}}", connective, items.join(", "))
    }
}

// ---- TFF rendering -----------------------------------------------------

pub fn print_tff(f: &FormulaAst) -> String {
    match f {
        FormulaAst::True => "$true".into(),
        FormulaAst::False => "$false".into(),
        FormulaAst::Atom { pred, args } => {
            if args.is_empty() {
                print_name(pred)
            } else {
                let items: Vec<String> = args.iter().map(print_term_tff).collect();
                format!("{}({})", print_name(pred), items.join(", "))
            }
        }
        FormulaAst::Not(inner) => format!("~{}", print_tff_unit(inner)),
        FormulaAst::Binary { op, left, right } => format!(
            "{} {} {}",
            print_tff_unit(left),
            op.symbol(),
            print_tff_unit(right)
        ),
        FormulaAst::Quantified {
            quantifier,
            vars,
            body,
        } => format!(
            "{} {}: {}",
            quantifier.symbol(),
            print_binder(vars),
            print_tff_unit(body)
        ),
        FormulaAst::NonClassical {
            connective,
            params,
            args,
        } => {
            let items: Vec<String> = args.iter().map(print_tff).collect();
            format!(
                "{} @ ({})",
                print_connective_head(connective, params),
                items.join(", ")
            )
        }
        // lambda/apply only make sense in THF; rendered curried if forced
        FormulaAst::Lambda { .. } | FormulaAst::Apply { .. } => print_thf(f),
    }
}

/// Prints `f` parenthesized whenever it is not a TPTP unit formula.
fn print_tff_unit(f: &FormulaAst) -> String {
    match f {
        FormulaAst::Binary { .. } | FormulaAst::Quantified { .. } => {
            format!("({})", print_tff(f))
        }
        _ => print_tff(f),
    }
}

// ---- THF rendering -----------------------------------------------------

pub fn print_thf(f: &FormulaAst) -> String {
    match f {
        FormulaAst::True => "$true".into(),
        FormulaAst::False => "$false".into(),
        FormulaAst::Atom { pred, args } => {
            if args.is_empty() {
                print_name(pred)
            } else {
                let mut out = print_name(pred);
                for arg in args {
                    write!(out, " @ {}", print_thf_term(arg)).unwrap();
                }
                out
            }
        }
        FormulaAst::Not(inner) => format!("~{}", print_thf_operand(inner)),
        FormulaAst::Binary { op, left, right } => format!(
            "{} {} {}",
            print_thf_operand(left),
            op.symbol(),
            print_thf_operand(right)
        ),
        FormulaAst::Quantified {
            quantifier,
            vars,
            body,
        } => format!(
            "{} {}: {}",
            quantifier.symbol(),
            print_binder(vars),
            print_thf_body(body)
        ),
        FormulaAst::Lambda { vars, body } => {
            format!("^{}: {}", print_binder(vars), print_thf_body(body))
        }
        FormulaAst::Apply { func, arg } => {
            let func_text = match func.as_ref() {
                FormulaAst::Apply { .. } => print_thf(func),
                _ => print_thf_operand(func),
            };
            format!("{} @ {}", func_text, print_thf_term(arg))
        }
        FormulaAst::NonClassical {
            connective,
            params,
            args,
        } => {
            let mut out = print_connective_head(connective, params);
            for arg in args {
                write!(out, " @ {}", print_thf_operand(arg)).unwrap();
            }
            out
        }
    }
}

/// Operand position: anything that is not atomic gets parentheses.
fn print_thf_operand(f: &FormulaAst) -> String {
    match f {
        FormulaAst::True | FormulaAst::False => print_thf(f),
        FormulaAst::Atom { args, .. } if args.is_empty() => print_thf(f),
        _ => format!("({})", print_thf(f)),
    }
}

/// Quantifier and lambda bodies: nested binders chain without
/// parentheses, everything else is wrapped.
fn print_thf_body(f: &FormulaAst) -> String {
    match f {
        FormulaAst::Quantified { .. } | FormulaAst::Lambda { .. } => print_thf(f),
        _ => print_thf_operand(f),
    }
}

fn print_thf_term(term: &TermAst) -> String {
    match term {
        TermAst::Variable(v) => v.clone(),
        TermAst::Constant(c) => print_name(c),
        TermAst::Function(name, args) => {
            let mut out = print_name(name);
            for arg in args {
                write!(out, " @ {}", print_thf_term(arg)).unwrap();
            }
            format!("({out})")
        }
        TermAst::List(items) => {
            let items: Vec<String> = items.iter().map(print_term_tff).collect();
            format!("[{}]", items.join(", "))
        }
    }
}
