//! Recursive-descent parser for the TFF/NXF/THF subset. Binary
//! connectives follow TPTP associativity: `&` and `|` chain, `=>` and
//! `<=>` do not, and mixing connectives requires parentheses.

use std::collections::HashSet;

use thiserror::Error;

use super::ast::*;
use super::lexer::{tokenize, Position, Spanned, Token};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at {line}:{column}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },
    #[error("parse error at {line}:{column}: duplicate formula name '{name}'")]
    DuplicateName {
        name: String,
        line: usize,
        column: usize,
    },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, column: usize, expected: &str, found: &str) -> ParseError {
        ParseError::Syntax {
            line,
            column,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

/// Parses a whole problem file. Every byte of input is consumed;
/// `%`-comments are ignored by the tokenizer.
pub fn parse_problem(input: &str) -> Result<Problem, ParseError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { tokens, at: 0 };
    let mut formulas = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    while parser.peek() != &Token::Eof {
        let name_pos = parser.pos();
        let formula = parser.annotated_formula()?;
        if !seen.insert(formula.name.clone()) {
            return Err(ParseError::DuplicateName {
                name: formula.name,
                line: name_pos.line,
                column: name_pos.column,
            });
        }
        formulas.push(formula);
    }
    Ok(Problem::new(formulas))
}

/// Parses a single TFF formula; used by tests and tooling.
pub fn parse_tff_formula(input: &str) -> Result<FormulaAst, ParseError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { tokens, at: 0 };
    let f = parser.tff_logic_formula()?;
    parser.expect(Token::Eof)?;
    Ok(f)
}

struct Parser {
    tokens: Vec<Spanned>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].token
    }

    fn pos(&self) -> Position {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].token.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let pos = self.pos();
        ParseError::syntax(pos.line, pos.column, expected, &self.peek().describe())
    }

    fn expect(&mut self, token: Token) -> Result<(), ParseError> {
        if *self.peek() == token {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&token.describe()))
        }
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == token {
            self.bump();
            true
        } else {
            false
        }
    }

    // ---- annotated formulas ------------------------------------------

    fn annotated_formula(&mut self) -> Result<AnnotatedFormula, ParseError> {
        let language = match self.peek() {
            Token::LowerWord(w) if w == "tff" => Language::Tff,
            Token::LowerWord(w) if w == "thf" => Language::Thf,
            _ => return Err(self.error("'tff' or 'thf'")),
        };
        self.bump();
        self.expect(Token::LParen)?;
        let name = self.name()?;
        self.expect(Token::Comma)?;
        let role = match self.peek() {
            Token::LowerWord(w) => match Role::from_keyword(w) {
                Some(r) => r,
                None => return Err(self.error("a formula role")),
            },
            _ => return Err(self.error("a formula role")),
        };
        self.bump();
        self.expect(Token::Comma)?;

        let payload = match role {
            Role::Logic => Payload::Logic(self.logic_spec()?),
            Role::Type => self.type_decl()?,
            _ => match language {
                Language::Tff => Payload::Formula(self.tff_logic_formula()?),
                Language::Thf => Payload::Formula(self.thf_logic_formula()?),
            },
        };

        let mut source = None;
        let mut annotations = None;
        if self.eat(&Token::Comma) {
            let term = self.general_term()?;
            // `unknown` is the TPTP placeholder source; treat as absent
            if term != TermAst::Constant("unknown".into()) {
                source = Some(term);
            }
            if self.eat(&Token::Comma) {
                self.expect(Token::LBracket)?;
                let mut items = Vec::new();
                if self.peek() != &Token::RBracket {
                    items.push(self.general_term()?);
                    while self.eat(&Token::Comma) {
                        items.push(self.general_term()?);
                    }
                }
                self.expect(Token::RBracket)?;
                annotations = Some(items);
            }
        }

        self.expect(Token::RParen)?;
        self.expect(Token::Dot)?;
        Ok(AnnotatedFormula {
            language,
            name,
            role,
            payload,
            source,
            annotations,
        })
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Token::LowerWord(w) => {
                self.bump();
                Ok(w)
            }
            Token::SingleQuoted(w) => {
                self.bump();
                Ok(w)
            }
            _ => Err(self.error("a formula name")),
        }
    }

    // ---- logic specifications ----------------------------------------

    fn logic_spec(&mut self) -> Result<LogicSpec, ParseError> {
        let name = self.option_key()?;
        self.expect(Token::EqEq)?;
        let options = self.option_list()?;
        Ok(LogicSpec { name, options })
    }

    fn option_key(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Token::LowerWord(w) | Token::DollarWord(w) | Token::DollarDollarWord(w) => {
                self.bump();
                Ok(w)
            }
            _ => Err(self.error("a logic-specification key")),
        }
    }

    fn option_list(&mut self) -> Result<Vec<(String, LogicValue)>, ParseError> {
        self.expect(Token::LBracket)?;
        let mut options = Vec::new();
        if self.peek() != &Token::RBracket {
            options.push(self.option_pair()?);
            while self.eat(&Token::Comma) {
                options.push(self.option_pair()?);
            }
        }
        self.expect(Token::RBracket)?;
        Ok(options)
    }

    fn option_pair(&mut self) -> Result<(String, LogicValue), ParseError> {
        let key = self.option_key()?;
        self.expect(Token::EqEq)?;
        let value = if self.peek() == &Token::LBracket {
            LogicValue::Options(self.option_list()?)
        } else {
            LogicValue::Ident(self.option_key()?)
        };
        Ok((key, value))
    }

    // ---- type declarations -------------------------------------------

    fn type_decl(&mut self) -> Result<Payload, ParseError> {
        let wrapped = self.eat(&Token::LParen);
        let symbol = match self.peek().clone() {
            Token::LowerWord(w) | Token::SingleQuoted(w) => {
                self.bump();
                w
            }
            _ => return Err(self.error("a symbol to declare")),
        };
        self.expect(Token::Colon)?;
        let ty = self.type_expr()?;
        if wrapped {
            self.expect(Token::RParen)?;
        }
        Ok(Payload::TypeDecl { symbol, ty })
    }

    fn type_expr(&mut self) -> Result<Type, ParseError> {
        let lhs = self.type_primary()?;
        if self.eat(&Token::Gt) {
            let rhs = self.type_expr()?; // right-associative
            Ok(Type::Fun(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn type_primary(&mut self) -> Result<Type, ParseError> {
        match self.peek().clone() {
            Token::LowerWord(w) | Token::DollarWord(w) => {
                self.bump();
                Ok(Type::Base(w))
            }
            Token::LParen => {
                self.bump();
                let ty = self.type_expr()?;
                self.expect(Token::RParen)?;
                Ok(ty)
            }
            _ => Err(self.error("a type")),
        }
    }

    // ---- TFF formulas ------------------------------------------------

    fn tff_logic_formula(&mut self) -> Result<FormulaAst, ParseError> {
        let first = self.tff_unit_formula()?;
        match self.peek() {
            Token::Ampersand => self.assoc_chain(first, BinOp::And, Token::Ampersand, false),
            Token::VLine => self.assoc_chain(first, BinOp::Or, Token::VLine, false),
            Token::Arrow => {
                self.bump();
                let rhs = self.tff_unit_formula()?;
                self.no_further_binary()?;
                Ok(FormulaAst::implies(first, rhs))
            }
            Token::Iff => {
                self.bump();
                let rhs = self.tff_unit_formula()?;
                self.no_further_binary()?;
                Ok(FormulaAst::iff(first, rhs))
            }
            _ => Ok(first),
        }
    }

    fn assoc_chain(
        &mut self,
        first: FormulaAst,
        op: BinOp,
        sep: Token,
        thf: bool,
    ) -> Result<FormulaAst, ParseError> {
        let mut acc = first;
        while self.eat(&sep) {
            let next = if thf {
                self.thf_unit_formula()?
            } else {
                self.tff_unit_formula()?
            };
            acc = FormulaAst::binary(op, acc, next);
        }
        // mixing associative operators without parentheses is not TPTP
        self.no_further_binary()?;
        Ok(acc)
    }

    fn no_further_binary(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Token::Ampersand | Token::VLine | Token::Arrow | Token::Iff => {
                Err(self.error("')' (mixed binary connectives need parentheses)"))
            }
            _ => Ok(()),
        }
    }

    fn tff_unit_formula(&mut self) -> Result<FormulaAst, ParseError> {
        match self.peek().clone() {
            Token::Tilde => {
                self.bump();
                Ok(FormulaAst::negate(self.tff_unit_formula()?))
            }
            Token::Exclam | Token::Question => {
                let quantifier = if self.bump() == Token::Exclam {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                let vars = self.binder_list()?;
                self.expect(Token::Colon)?;
                let body = self.tff_unit_formula()?;
                Ok(FormulaAst::quantified(quantifier, vars, body))
            }
            Token::LBrace => {
                let (connective, params) = self.connective_head()?;
                self.expect(Token::At)?;
                self.expect(Token::LParen)?;
                let mut args = vec![self.tff_logic_formula()?];
                while self.eat(&Token::Comma) {
                    args.push(self.tff_logic_formula()?);
                }
                self.expect(Token::RParen)?;
                Ok(FormulaAst::nonclassical(connective, params, args))
            }
            Token::LParen => {
                self.bump();
                let f = self.tff_logic_formula()?;
                self.expect(Token::RParen)?;
                Ok(f)
            }
            Token::DollarWord(w) if w == "$true" => {
                self.bump();
                Ok(FormulaAst::True)
            }
            Token::DollarWord(w) if w == "$false" => {
                self.bump();
                Ok(FormulaAst::False)
            }
            Token::LowerWord(_) | Token::SingleQuoted(_) => {
                let pred = self.name()?;
                let args = if self.eat(&Token::LParen) {
                    let mut args = vec![self.term()?];
                    while self.eat(&Token::Comma) {
                        args.push(self.term()?);
                    }
                    self.expect(Token::RParen)?;
                    args
                } else {
                    Vec::new()
                };
                Ok(FormulaAst::Atom { pred, args })
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn binder_list(&mut self) -> Result<Vec<TypedVar>, ParseError> {
        self.expect(Token::LBracket)?;
        let mut vars = vec![self.typed_var()?];
        while self.eat(&Token::Comma) {
            vars.push(self.typed_var()?);
        }
        self.expect(Token::RBracket)?;
        Ok(vars)
    }

    fn typed_var(&mut self) -> Result<TypedVar, ParseError> {
        let name = match self.peek().clone() {
            Token::UpperWord(w) => {
                self.bump();
                w
            }
            _ => return Err(self.error("a variable (upper-case word)")),
        };
        let ty = if self.eat(&Token::Colon) {
            Some(self.type_expr()?)
        } else {
            None
        };
        Ok(TypedVar { name, ty })
    }

    fn connective_head(&mut self) -> Result<(String, Vec<ConnectiveParam>), ParseError> {
        self.expect(Token::LBrace)?;
        let connective = match self.peek().clone() {
            Token::DollarWord(w) | Token::DollarDollarWord(w) => {
                self.bump();
                w
            }
            _ => return Err(self.error("a '$'- or '$$'-connective name")),
        };
        let mut params = Vec::new();
        if self.eat(&Token::LParen) {
            params.push(self.connective_param()?);
            while self.eat(&Token::Comma) {
                params.push(self.connective_param()?);
            }
            self.expect(Token::RParen)?;
        }
        self.expect(Token::RBrace)?;
        Ok((connective, params))
    }

    fn connective_param(&mut self) -> Result<ConnectiveParam, ParseError> {
        if self.eat(&Token::Hash) {
            Ok(ConnectiveParam::Index(self.term()?))
        } else {
            let key = self.option_key()?;
            self.expect(Token::ColonEq)?;
            Ok(ConnectiveParam::KeyValue {
                key,
                value: self.term()?,
            })
        }
    }

    fn term(&mut self) -> Result<TermAst, ParseError> {
        match self.peek().clone() {
            Token::UpperWord(w) => {
                self.bump();
                Ok(TermAst::Variable(w))
            }
            Token::LowerWord(_) | Token::SingleQuoted(_) => {
                let name = self.name()?;
                if self.eat(&Token::LParen) {
                    let mut args = vec![self.term()?];
                    while self.eat(&Token::Comma) {
                        args.push(self.term()?);
                    }
                    self.expect(Token::RParen)?;
                    Ok(TermAst::Function(name, args))
                } else {
                    Ok(TermAst::Constant(name))
                }
            }
            _ => Err(self.error("a term")),
        }
    }

    /// Terms in source/annotation position may additionally be lists.
    fn general_term(&mut self) -> Result<TermAst, ParseError> {
        if self.peek() == &Token::LBracket {
            self.bump();
            let mut items = Vec::new();
            if self.peek() != &Token::RBracket {
                items.push(self.general_term()?);
                while self.eat(&Token::Comma) {
                    items.push(self.general_term()?);
                }
            }
            self.expect(Token::RBracket)?;
            return Ok(TermAst::List(items));
        }
        match self.peek().clone() {
            Token::UpperWord(w) => {
                self.bump();
                Ok(TermAst::Variable(w))
            }
            Token::LowerWord(_) | Token::SingleQuoted(_) => {
                let name = self.name()?;
                if self.eat(&Token::LParen) {
                    let mut args = vec![self.general_term()?];
                    while self.eat(&Token::Comma) {
                        args.push(self.general_term()?);
                    }
                    self.expect(Token::RParen)?;
                    Ok(TermAst::Function(name, args))
                } else {
                    Ok(TermAst::Constant(name))
                }
            }
            _ => Err(self.error("a term")),
        }
    }

    // ---- THF formulas --------------------------------------------------

    fn thf_logic_formula(&mut self) -> Result<FormulaAst, ParseError> {
        let first = self.thf_unit_formula()?;
        match self.peek() {
            Token::Ampersand => self.assoc_chain(first, BinOp::And, Token::Ampersand, true),
            Token::VLine => self.assoc_chain(first, BinOp::Or, Token::VLine, true),
            Token::Arrow => {
                self.bump();
                let rhs = self.thf_unit_formula()?;
                self.no_further_binary()?;
                Ok(FormulaAst::implies(first, rhs))
            }
            Token::Iff => {
                self.bump();
                let rhs = self.thf_unit_formula()?;
                self.no_further_binary()?;
                Ok(FormulaAst::iff(first, rhs))
            }
            _ => Ok(first),
        }
    }

    fn thf_unit_formula(&mut self) -> Result<FormulaAst, ParseError> {
        match self.peek().clone() {
            Token::Tilde => {
                self.bump();
                Ok(FormulaAst::negate(self.thf_unit_formula()?))
            }
            Token::Exclam | Token::Question => {
                let quantifier = if self.bump() == Token::Exclam {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                let vars = self.binder_list()?;
                self.expect(Token::Colon)?;
                let body = self.thf_unit_formula()?;
                Ok(FormulaAst::quantified(quantifier, vars, body))
            }
            Token::Caret => {
                self.bump();
                let vars = self.binder_list()?;
                self.expect(Token::Colon)?;
                let body = self.thf_unit_formula()?;
                Ok(FormulaAst::lambda(vars, body))
            }
            _ => self.thf_apply_chain(),
        }
    }

    /// Parses `head @ arg @ ...`. An identifier head applied to plain
    /// terms reconstructs as a first-order atom; a parenthesized head
    /// (typically a lambda) becomes an explicit application node.
    fn thf_apply_chain(&mut self) -> Result<FormulaAst, ParseError> {
        enum Head {
            Ident(String),
            Formula(FormulaAst),
        }

        let head = match self.peek().clone() {
            Token::DollarWord(w) if w == "$true" => {
                self.bump();
                Head::Formula(FormulaAst::True)
            }
            Token::DollarWord(w) if w == "$false" => {
                self.bump();
                Head::Formula(FormulaAst::False)
            }
            Token::LowerWord(_) | Token::SingleQuoted(_) => Head::Ident(self.name()?),
            Token::LBrace => {
                let (connective, params) = self.connective_head()?;
                let mut args = Vec::new();
                while self.eat(&Token::At) {
                    args.push(self.thf_argument_formula()?);
                }
                return Ok(FormulaAst::nonclassical(connective, params, args));
            }
            Token::LParen => {
                self.bump();
                let f = self.thf_logic_formula()?;
                self.expect(Token::RParen)?;
                Head::Formula(f)
            }
            _ => return Err(self.error("a formula")),
        };

        let mut args = Vec::new();
        while self.eat(&Token::At) {
            args.push(self.thf_term_argument()?);
        }

        match head {
            Head::Ident(pred) => Ok(FormulaAst::Atom { pred, args }),
            Head::Formula(f) => {
                Ok(args.into_iter().fold(f, FormulaAst::apply))
            }
        }
    }

    /// A non-classical THF connective argument is a full formula.
    fn thf_argument_formula(&mut self) -> Result<FormulaAst, ParseError> {
        if self.peek() == &Token::LParen {
            self.bump();
            let f = self.thf_logic_formula()?;
            self.expect(Token::RParen)?;
            Ok(f)
        } else {
            self.thf_unit_formula()
        }
    }

    /// Argument position of an application chain: a term. Parenthesized
    /// arguments may be curried function terms like `(f @ a)`.
    fn thf_term_argument(&mut self) -> Result<TermAst, ParseError> {
        match self.peek().clone() {
            Token::UpperWord(w) => {
                self.bump();
                Ok(TermAst::Variable(w))
            }
            Token::LowerWord(_) | Token::SingleQuoted(_) => Ok(TermAst::Constant(self.name()?)),
            Token::LParen => {
                self.bump();
                let name = self.name()?;
                let mut args = Vec::new();
                while self.eat(&Token::At) {
                    args.push(self.thf_term_argument()?);
                }
                self.expect(Token::RParen)?;
                if args.is_empty() {
                    Ok(TermAst::Constant(name))
                } else {
                    Ok(TermAst::Function(name, args))
                }
            }
            _ => Err(self.error("an application argument")),
        }
    }
}
