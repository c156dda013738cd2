//! Abstract syntax for the TPTP subset handled by this crate: TFF with
//! non-classical connective applications (NXF) on the input side, THF on
//! the output side.

use std::collections::BTreeSet;

/// Surface language of an annotated formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Language {
    Tff,
    Thf,
}

impl Language {
    pub fn keyword(self) -> &'static str {
        match self {
            Language::Tff => "tff",
            Language::Thf => "thf",
        }
    }
}

/// Role of an annotated formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Axiom,
    Type,
    Definition,
    Conjecture,
    Logic,
}

impl Role {
    pub fn keyword(self) -> &'static str {
        match self {
            Role::Axiom => "axiom",
            Role::Type => "type",
            Role::Definition => "definition",
            Role::Conjecture => "conjecture",
            Role::Logic => "logic",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Role> {
        Some(match word {
            "axiom" => Role::Axiom,
            "type" => Role::Type,
            "definition" => Role::Definition,
            "conjecture" => Role::Conjecture,
            "logic" => Role::Logic,
            _ => return None,
        })
    }
}

/// First-order term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermAst {
    Variable(String),
    Constant(String),
    Function(String, Vec<TermAst>),
    /// General list, only valid inside source/annotation positions.
    List(Vec<TermAst>),
}

impl TermAst {
    pub fn var(name: impl Into<String>) -> TermAst {
        TermAst::Variable(name.into())
    }

    pub fn constant(name: impl Into<String>) -> TermAst {
        TermAst::Constant(name.into())
    }

    pub fn function(name: impl Into<String>, args: Vec<TermAst>) -> TermAst {
        TermAst::Function(name.into(), args)
    }

    fn collect_vars(&self, bound: &BTreeSet<&str>, out: &mut BTreeSet<String>) {
        match self {
            TermAst::Variable(v) => {
                if !bound.contains(v.as_str()) {
                    out.insert(v.clone());
                }
            }
            TermAst::Constant(_) => {}
            TermAst::Function(_, args) | TermAst::List(args) => {
                for a in args {
                    a.collect_vars(bound, out);
                }
            }
        }
    }
}

/// Simple type expressions, used for THF output and typed binders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Type {
    /// A base type: `$o`, `$i`, `$tType` or a user-declared name.
    Base(String),
    /// Curried mapping type `a > b`.
    Fun(Box<Type>, Box<Type>),
}

impl Type {
    pub fn base(name: impl Into<String>) -> Type {
        Type::Base(name.into())
    }

    /// Builds `a1 > a2 > ... > result`.
    pub fn fun_chain(args: Vec<Type>, result: Type) -> Type {
        args.into_iter()
            .rev()
            .fold(result, |acc, a| Type::Fun(Box::new(a), Box::new(acc)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Implies => "=>",
            BinOp::Iff => "<=>",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn symbol(self) -> &'static str {
        match self {
            Quantifier::Forall => "!",
            Quantifier::Exists => "?",
        }
    }
}

/// A bound variable with an optional type annotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypedVar {
    pub name: String,
    pub ty: Option<Type>,
}

impl TypedVar {
    pub fn untyped(name: impl Into<String>) -> TypedVar {
        TypedVar {
            name: name.into(),
            ty: None,
        }
    }

    pub fn typed(name: impl Into<String>, ty: Type) -> TypedVar {
        TypedVar {
            name: name.into(),
            ty: Some(ty),
        }
    }
}

/// Parameter of a non-classical connective, e.g. `bearer := x` or `#x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConnectiveParam {
    /// `key := value`
    KeyValue { key: String, value: TermAst },
    /// `#term` index parameter
    Index(TermAst),
}

/// Formula syntax tree. First-order connectives plus parameterized
/// non-classical applications; lambda and curried application only occur
/// in higher-order (THF) contexts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FormulaAst {
    True,
    False,
    Atom {
        pred: String,
        args: Vec<TermAst>,
    },
    Not(Box<FormulaAst>),
    Binary {
        op: BinOp,
        left: Box<FormulaAst>,
        right: Box<FormulaAst>,
    },
    Quantified {
        quantifier: Quantifier,
        vars: Vec<TypedVar>,
        body: Box<FormulaAst>,
    },
    /// `{name} @ (arg1, ..., argn)` with optional parameters on the name.
    NonClassical {
        connective: String,
        params: Vec<ConnectiveParam>,
        args: Vec<FormulaAst>,
    },
    /// THF lambda abstraction `^[X: t]: body`.
    Lambda {
        vars: Vec<TypedVar>,
        body: Box<FormulaAst>,
    },
    /// THF application of a formula-valued function to a term.
    Apply {
        func: Box<FormulaAst>,
        arg: TermAst,
    },
}

impl FormulaAst {
    pub fn atom(pred: impl Into<String>, args: Vec<TermAst>) -> FormulaAst {
        FormulaAst::Atom {
            pred: pred.into(),
            args,
        }
    }

    pub fn prop(pred: impl Into<String>) -> FormulaAst {
        FormulaAst::atom(pred, Vec::new())
    }

    pub fn negate(f: FormulaAst) -> FormulaAst {
        FormulaAst::Not(Box::new(f))
    }

    pub fn binary(op: BinOp, left: FormulaAst, right: FormulaAst) -> FormulaAst {
        FormulaAst::Binary {
            op,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn and(left: FormulaAst, right: FormulaAst) -> FormulaAst {
        FormulaAst::binary(BinOp::And, left, right)
    }

    pub fn or(left: FormulaAst, right: FormulaAst) -> FormulaAst {
        FormulaAst::binary(BinOp::Or, left, right)
    }

    pub fn implies(left: FormulaAst, right: FormulaAst) -> FormulaAst {
        FormulaAst::binary(BinOp::Implies, left, right)
    }

    pub fn iff(left: FormulaAst, right: FormulaAst) -> FormulaAst {
        FormulaAst::binary(BinOp::Iff, left, right)
    }

    pub fn quantified(
        quantifier: Quantifier,
        vars: Vec<TypedVar>,
        body: FormulaAst,
    ) -> FormulaAst {
        FormulaAst::Quantified {
            quantifier,
            vars,
            body: Box::new(body),
        }
    }

    pub fn nonclassical(
        connective: impl Into<String>,
        params: Vec<ConnectiveParam>,
        args: Vec<FormulaAst>,
    ) -> FormulaAst {
        FormulaAst::NonClassical {
            connective: connective.into(),
            params,
            args,
        }
    }

    pub fn lambda(vars: Vec<TypedVar>, body: FormulaAst) -> FormulaAst {
        FormulaAst::Lambda {
            vars,
            body: Box::new(body),
        }
    }

    pub fn apply(func: FormulaAst, arg: TermAst) -> FormulaAst {
        FormulaAst::Apply {
            func: Box::new(func),
            arg,
        }
    }

    /// Variables occurring unbound in the formula, in sorted order.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&BTreeSet::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &BTreeSet<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            FormulaAst::True | FormulaAst::False => {}
            FormulaAst::Atom { args, .. } => {
                for a in args {
                    a.collect_vars(bound, out);
                }
            }
            FormulaAst::Not(inner) => inner.collect_free(bound, out),
            FormulaAst::Binary { left, right, .. } => {
                left.collect_free(bound, out);
                right.collect_free(bound, out);
            }
            FormulaAst::Quantified { vars, body, .. } | FormulaAst::Lambda { vars, body } => {
                let mut inner = bound.clone();
                for v in vars {
                    inner.insert(v.name.as_str());
                }
                body.collect_free(&inner, out);
            }
            FormulaAst::NonClassical { params, args, .. } => {
                for p in params {
                    match p {
                        ConnectiveParam::KeyValue { value, .. } => value.collect_vars(bound, out),
                        ConnectiveParam::Index(t) => t.collect_vars(bound, out),
                    }
                }
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            FormulaAst::Apply { func, arg } => {
                func.collect_free(bound, out);
                arg.collect_vars(bound, out);
            }
        }
    }

    /// Calls `f` on this node and every subformula, depth-first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a FormulaAst)) {
        f(self);
        match self {
            FormulaAst::True | FormulaAst::False | FormulaAst::Atom { .. } => {}
            FormulaAst::Not(inner) => inner.walk(f),
            FormulaAst::Binary { left, right, .. } => {
                left.walk(f);
                right.walk(f);
            }
            FormulaAst::Quantified { body, .. } | FormulaAst::Lambda { body, .. } => body.walk(f),
            FormulaAst::NonClassical { args, .. } => {
                for a in args {
                    a.walk(f);
                }
            }
            FormulaAst::Apply { func, .. } => func.walk(f),
        }
    }
}

/// Value of a logic-specification option: an identifier or a nested
/// option list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LogicValue {
    Ident(String),
    Options(Vec<(String, LogicValue)>),
}

/// A logic specification `logic_name == [key == value, ...]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogicSpec {
    pub name: String,
    pub options: Vec<(String, LogicValue)>,
}

impl LogicSpec {
    pub fn lookup(&self, key: &str) -> Option<&LogicValue> {
        self.options
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
    }
}

/// Payload of an annotated formula, determined by its role.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Payload {
    Formula(FormulaAst),
    Logic(LogicSpec),
    /// A `symbol: type` declaration (role `type`).
    TypeDecl { symbol: String, ty: Type },
}

impl Payload {
    pub fn as_formula(&self) -> Option<&FormulaAst> {
        match self {
            Payload::Formula(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_logic(&self) -> Option<&LogicSpec> {
        match self {
            Payload::Logic(spec) => Some(spec),
            _ => None,
        }
    }
}

/// One named, role-tagged TPTP formula with optional source and
/// annotations. Source and annotations are carried opaquely and never
/// interpreted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnotatedFormula {
    pub language: Language,
    pub name: String,
    pub role: Role,
    pub payload: Payload,
    pub source: Option<TermAst>,
    pub annotations: Option<Vec<TermAst>>,
}

impl AnnotatedFormula {
    pub fn new(
        language: Language,
        name: impl Into<String>,
        role: Role,
        payload: Payload,
    ) -> AnnotatedFormula {
        AnnotatedFormula {
            language,
            name: name.into(),
            role,
            payload,
            source: None,
            annotations: None,
        }
    }

    pub fn axiom(language: Language, name: impl Into<String>, f: FormulaAst) -> AnnotatedFormula {
        AnnotatedFormula::new(language, name, Role::Axiom, Payload::Formula(f))
    }
}

/// An ordered list of annotated formulas with unique names and at most
/// one `logic` formula.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Problem {
    pub formulas: Vec<AnnotatedFormula>,
}

impl Problem {
    pub fn new(formulas: Vec<AnnotatedFormula>) -> Problem {
        Problem { formulas }
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn find(&self, name: &str) -> Option<&AnnotatedFormula> {
        self.formulas.iter().find(|f| f.name == name)
    }

    /// The logic specification, if the problem declares one.
    pub fn logic_spec(&self) -> Option<&LogicSpec> {
        self.formulas
            .iter()
            .filter(|f| f.role == Role::Logic)
            .find_map(|f| f.payload.as_logic())
    }

    /// Formulas with role `axiom`, paired with their names.
    pub fn axioms(&self) -> impl Iterator<Item = (&str, &FormulaAst)> {
        self.formulas.iter().filter_map(|f| match (&f.role, &f.payload) {
            (Role::Axiom, Payload::Formula(formula)) => Some((f.name.as_str(), formula)),
            _ => None,
        })
    }

    /// Strips sources and annotations everywhere; used for comparisons
    /// that are defined modulo annotations.
    pub fn without_annotations(&self) -> Problem {
        Problem {
            formulas: self
                .formulas
                .iter()
                .map(|f| AnnotatedFormula {
                    source: None,
                    annotations: None,
                    ..f.clone()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_single_occurrence() {
        let f = FormulaAst::atom("p", vec![TermAst::var("X")]);
        let fv = f.free_vars();
        assert_eq!(fv.into_iter().collect::<Vec<_>>(), vec!["X".to_string()]);
    }

    #[test]
    fn free_vars_binder_removes_variable() {
        // ! [X]: p(X, Y) has only Y free
        let f = FormulaAst::quantified(
            Quantifier::Forall,
            vec![TypedVar::untyped("X")],
            FormulaAst::atom("p", vec![TermAst::var("X"), TermAst::var("Y")]),
        );
        let fv = f.free_vars();
        assert_eq!(fv.into_iter().collect::<Vec<_>>(), vec!["Y".to_string()]);
    }

    #[test]
    fn free_vars_ground_atom_is_closed() {
        let f = FormulaAst::prop("help");
        assert!(f.free_vars().is_empty());
    }

    #[test]
    fn free_vars_sees_connective_parameters() {
        let f = FormulaAst::nonclassical(
            "$$obligation",
            vec![ConnectiveParam::KeyValue {
                key: "bearer".into(),
                value: TermAst::var("B"),
            }],
            vec![FormulaAst::True, FormulaAst::prop("help")],
        );
        assert!(f.free_vars().contains("B"));
    }
}
