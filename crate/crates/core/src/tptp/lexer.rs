//! Tokenizer for the TPTP subset. Tracks line/column positions so parse
//! errors can point at the offending token.

use super::parser::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    /// `abc`, possibly with interior dashes (`norm1-sdl`); dashes are
    /// accepted on input, quoted on output.
    LowerWord(String),
    UpperWord(String),
    /// Content of a `'...'` atom, unescaped.
    SingleQuoted(String),
    /// `$word`, stored with the sigil.
    DollarWord(String),
    /// `$$word`, stored with the sigils.
    DollarDollarWord(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    ColonEq,
    EqEq,
    Arrow,    // =>
    Iff,      // <=>
    Gt,       // > (types)
    At,
    Hash,
    Tilde,
    Ampersand,
    VLine,
    Exclam,
    Question,
    Caret,
    Eof,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::LowerWord(w) => format!("'{w}'"),
            Token::UpperWord(w) => format!("'{w}'"),
            Token::SingleQuoted(w) => format!("'{w}'"),
            Token::DollarWord(w) | Token::DollarDollarWord(w) => format!("'{w}'"),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::LBracket => "'['".into(),
            Token::RBracket => "']'".into(),
            Token::LBrace => "'{'".into(),
            Token::RBrace => "'}'".into(),
            Token::Comma => "','".into(),
            Token::Dot => "'.'".into(),
            Token::Colon => "':'".into(),
            Token::ColonEq => "':='".into(),
            Token::EqEq => "'=='".into(),
            Token::Arrow => "'=>'".into(),
            Token::Iff => "'<=>'".into(),
            Token::Gt => "'>'".into(),
            Token::At => "'@'".into(),
            Token::Hash => "'#'".into(),
            Token::Tilde => "'~'".into(),
            Token::Ampersand => "'&'".into(),
            Token::VLine => "'|'".into(),
            Token::Exclam => "'!'".into(),
            Token::Question => "'?'".into(),
            Token::Caret => "'^'".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub struct Spanned {
    pub token: Token,
    pub pos: Position,
}

pub fn tokenize(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut column = 1;

    macro_rules! push {
        ($tok:expr, $len:expr) => {{
            tokens.push(Spanned {
                token: $tok,
                pos: Position { line, column },
            });
            i += $len;
            column += $len;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                column += 1;
            }
            '%' => {
                // line comment
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push!(Token::LParen, 1),
            ')' => push!(Token::RParen, 1),
            '[' => push!(Token::LBracket, 1),
            ']' => push!(Token::RBracket, 1),
            '{' => push!(Token::LBrace, 1),
            '}' => push!(Token::RBrace, 1),
            ',' => push!(Token::Comma, 1),
            '.' => push!(Token::Dot, 1),
            '@' => push!(Token::At, 1),
            '#' => push!(Token::Hash, 1),
            '~' => push!(Token::Tilde, 1),
            '&' => push!(Token::Ampersand, 1),
            '|' => push!(Token::VLine, 1),
            '!' => push!(Token::Exclam, 1),
            '?' => push!(Token::Question, 1),
            '^' => push!(Token::Caret, 1),
            '>' => push!(Token::Gt, 1),
            ':' => {
                if chars.get(i + 1) == Some(&'=') {
                    push!(Token::ColonEq, 2);
                } else {
                    push!(Token::Colon, 1);
                }
            }
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    push!(Token::EqEq, 2);
                } else if chars.get(i + 1) == Some(&'>') {
                    push!(Token::Arrow, 2);
                } else {
                    return Err(ParseError::syntax(line, column, "'==' or '=>'", "'='"));
                }
            }
            '<' => {
                if chars.get(i + 1) == Some(&'=') && chars.get(i + 2) == Some(&'>') {
                    push!(Token::Iff, 3);
                } else {
                    return Err(ParseError::syntax(line, column, "'<=>'", "'<'"));
                }
            }
            '\'' => {
                let start_line = line;
                let start_col = column;
                let mut text = String::new();
                let mut j = i + 1;
                let mut cols = 2; // both quotes
                loop {
                    match chars.get(j) {
                        None | Some('\n') => {
                            return Err(ParseError::syntax(
                                start_line,
                                start_col,
                                "closing single quote",
                                "end of line",
                            ));
                        }
                        Some('\\') => match chars.get(j + 1) {
                            Some(e @ ('\\' | '\'')) => {
                                text.push(*e);
                                j += 2;
                                cols += 2;
                            }
                            _ => {
                                return Err(ParseError::syntax(
                                    start_line,
                                    start_col,
                                    "escape sequence \\\\ or \\'",
                                    "'\\'",
                                ));
                            }
                        },
                        Some('\'') => {
                            j += 1;
                            break;
                        }
                        Some(other) => {
                            text.push(*other);
                            j += 1;
                            cols += 1;
                        }
                    }
                }
                tokens.push(Spanned {
                    token: Token::SingleQuoted(text),
                    pos: Position {
                        line: start_line,
                        column: start_col,
                    },
                });
                i = j;
                column += cols;
            }
            '$' => {
                let dollars = if chars.get(i + 1) == Some(&'$') { 2 } else { 1 };
                let start = i;
                let mut j = i + dollars;
                if !matches!(chars.get(j), Some(c) if c.is_ascii_lowercase()) {
                    return Err(ParseError::syntax(
                        line,
                        column,
                        "lower-case word after '$'",
                        &chars.get(j).map(|c| c.to_string()).unwrap_or_default(),
                    ));
                }
                while matches!(chars.get(j), Some(c) if c.is_ascii_alphanumeric() || *c == '_') {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let len = j - start;
                if dollars == 2 {
                    push!(Token::DollarDollarWord(word), len);
                } else {
                    push!(Token::DollarWord(word), len);
                }
            }
            c if c.is_ascii_lowercase() => {
                let start = i;
                let mut j = i;
                loop {
                    while matches!(chars.get(j), Some(c) if c.is_ascii_alphanumeric() || *c == '_')
                    {
                        j += 1;
                    }
                    // accept interior dashes in names like norm1-sdl
                    if chars.get(j) == Some(&'-')
                        && matches!(chars.get(j + 1), Some(c) if c.is_ascii_alphanumeric())
                    {
                        j += 1;
                        continue;
                    }
                    break;
                }
                let word: String = chars[start..j].iter().collect();
                let len = j - start;
                push!(Token::LowerWord(word), len);
            }
            c if c.is_ascii_uppercase() => {
                let start = i;
                let mut j = i;
                while matches!(chars.get(j), Some(c) if c.is_ascii_alphanumeric() || *c == '_') {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let len = j - start;
                push!(Token::UpperWord(word), len);
            }
            other => {
                return Err(ParseError::syntax(
                    line,
                    column,
                    "a TPTP token",
                    &format!("'{other}'"),
                ));
            }
        }
    }

    tokens.push(Spanned {
        token: Token::Eof,
        pos: Position { line, column },
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(input: &str) -> Vec<Token> {
        tokenize(input)
            .unwrap()
            .into_iter()
            .map(|s| s.token)
            .collect()
    }

    #[test]
    fn lexes_annotated_formula_shape() {
        let t = toks("tff(fact1, axiom, ~help).");
        assert_eq!(
            t,
            vec![
                Token::LowerWord("tff".into()),
                Token::LParen,
                Token::LowerWord("fact1".into()),
                Token::Comma,
                Token::LowerWord("axiom".into()),
                Token::Comma,
                Token::Tilde,
                Token::LowerWord("help".into()),
                Token::RParen,
                Token::Dot,
                Token::Eof,
            ]
        );
    }

    #[test]
    fn dashed_name_is_one_word() {
        let t = toks("norm1-sdl");
        assert_eq!(t, vec![Token::LowerWord("norm1-sdl".into()), Token::Eof]);
    }

    #[test]
    fn comments_are_skipped() {
        let t = toks("% a comment\nhelp");
        assert_eq!(t, vec![Token::LowerWord("help".into()), Token::Eof]);
    }

    #[test]
    fn dollar_words() {
        let t = toks("$true $$obligation");
        assert_eq!(
            t,
            vec![
                Token::DollarWord("$true".into()),
                Token::DollarDollarWord("$$obligation".into()),
                Token::Eof,
            ]
        );
    }

    #[test]
    fn quoted_atom_unescapes() {
        let t = toks(r"'it\'s'");
        assert_eq!(t, vec![Token::SingleQuoted("it's".into()), Token::Eof]);
    }

    #[test]
    fn error_position_points_at_offender() {
        let err = tokenize("help =\n").unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!((line, column), (1, 6));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
