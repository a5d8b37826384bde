//! The ASPARTIX fact format: `arg(a).` declares an argument and `att(a,b).`
//! an attack of `a` on `b`. `%` starts a comment running to the end of the
//! line. Whitespace between tokens is ignored.

use std::collections::BTreeSet;
use std::fmt;

use argtd_core::ArgumentationFramework;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseDiagnostic {
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
    pub kind: DiagnosticKind,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::Semantic => "error",
        };
        write!(f, "{}:{}: {}: {}", self.line, self.column, kind, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Open,
    Close,
    Comma,
    Period,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Open => f.write_str("`(`"),
            Token::Close => f.write_str("`)`"),
            Token::Comma => f.write_str("`,`"),
            Token::Period => f.write_str("`.`"),
            Token::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self { chars: text.chars().peekable(), pos: Pos { line: 1, column: 1 } }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn next_token(&mut self) -> Result<(Token, Pos), ParseDiagnostic> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while self.chars.peek().is_some_and(|&c| c != '\n') {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let at = self.pos;
        let Some(c) = self.bump() else { return Ok((Token::End, at)) };
        let token = match c {
            '(' => Token::Open,
            ')' => Token::Close,
            ',' => Token::Comma,
            '.' => Token::Period,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut id = String::from(c);
                while let Some(&c) = self.chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    id.push(c);
                    self.bump();
                }
                Token::Ident(id)
            }
            other => return Err(syntax(at, format!("unexpected character `{other}`"))),
        };
        Ok((token, at))
    }
}

fn syntax(at: Pos, message: String) -> ParseDiagnostic {
    ParseDiagnostic { line: at.line, column: at.column, message, kind: DiagnosticKind::Syntax }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
}

impl Parser<'_> {
    fn expect(&mut self, want: Token) -> Result<Pos, ParseDiagnostic> {
        let (tok, at) = self.lexer.next_token()?;
        if tok == want {
            Ok(at)
        } else {
            Err(syntax(at, format!("expected {want}, found {tok}")))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseDiagnostic> {
        match self.lexer.next_token()? {
            (Token::Ident(s), at) => Ok((s, at)),
            (tok, at) => Err(syntax(at, format!("expected an identifier, found {tok}"))),
        }
    }
}

/// Parses ASPARTIX facts into a framework.
///
/// Facts may come in any order and repeat. Every attack endpoint must be
/// declared by an `arg` fact somewhere in the text.
pub fn parse_aspartix(text: &str) -> Result<ArgumentationFramework, ParseDiagnostic> {
    let mut p = Parser { lexer: Lexer::new(text) };
    let mut args = BTreeSet::new();
    let mut attacks: Vec<((String, Pos), (String, Pos))> = Vec::new();
    loop {
        let (head, at) = match p.lexer.next_token()? {
            (Token::End, _) => break,
            (Token::Ident(s), at) => (s, at),
            (tok, at) => return Err(syntax(at, format!("expected `arg` or `att`, found {tok}"))),
        };
        p.expect(Token::Open)?;
        match head.as_str() {
            "arg" => {
                let (a, _) = p.ident()?;
                args.insert(a);
            }
            "att" => {
                let a = p.ident()?;
                p.expect(Token::Comma)?;
                let b = p.ident()?;
                attacks.push((a, b));
            }
            other => return Err(syntax(at, format!("unknown predicate `{other}`"))),
        }
        p.expect(Token::Close)?;
        p.expect(Token::Period)?;
    }
    for (id, at) in attacks.iter().flat_map(|(a, b)| [a, b]) {
        if !args.contains(id) {
            return Err(ParseDiagnostic {
                line: at.line,
                column: at.column,
                message: format!("argument `{id}` is used in an attack but never declared"),
                kind: DiagnosticKind::Semantic,
            });
        }
    }
    let pairs: Vec<(String, String)> = attacks.into_iter().map(|((a, _), (b, _))| (a, b)).collect();
    Ok(ArgumentationFramework::new(args, pairs).expect("endpoints checked above"))
}

/// Writes `arg` facts in name order, then `att` facts in pair order, one per
/// line.
pub fn serialize_aspartix(af: &ArgumentationFramework) -> String {
    let mut out = String::new();
    for a in af.arguments() {
        out.push_str(&format!("arg({a}).\n"));
    }
    for (a, b) in af.attacks_named() {
        out.push_str(&format!("att({a},{b}).\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const INPUT_AF: &str = "arg(a). arg(b). arg(c). arg(d). arg(e). arg(f). arg(g).\n\
att(a,b). att(c,b). att(c,d). att(d,c). \n\
att(d,e). att(e,g). att(f,e). att(g,f). \n";

    #[test]
    fn paper_listing() {
        let af = parse_aspartix(INPUT_AF).unwrap();
        assert_eq!(af.len(), 7);
        assert_eq!(af.attack_count(), 8);
        assert!(af.attacks_pair(af.index_of("d").unwrap(), af.index_of("c").unwrap()));
    }

    #[test]
    fn empty_input() {
        let af = parse_aspartix("").unwrap();
        assert!(af.is_empty());
        assert_eq!(af.attack_count(), 0);
        assert!(parse_aspartix("  % only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn unterminated_fact() {
        let e = parse_aspartix("arg(a). att(a,b.").unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::Syntax);
        assert_eq!((e.line, e.column), (1, 16));
    }

    #[test]
    fn syntax_positions_span_lines() {
        let e = parse_aspartix("arg(a).\narg(b)\narg(c).").unwrap_err();
        assert_eq!((e.line, e.column), (3, 1));
        let e = parse_aspartix("arg(a).\n  att(a;b).").unwrap_err();
        assert_eq!((e.line, e.column, e.kind), (2, 8, DiagnosticKind::Syntax));
        let e = parse_aspartix("foo(a).").unwrap_err();
        assert!(e.message.contains("foo"));
        assert!(parse_aspartix("arg(1).").is_err());
        assert!(parse_aspartix("arg((a)).").is_err());
    }

    #[test]
    fn undeclared_endpoint_is_semantic() {
        let e = parse_aspartix("arg(a).\natt(a, typo).").unwrap_err();
        assert_eq!(e.kind, DiagnosticKind::Semantic);
        assert_eq!((e.line, e.column), (2, 8));
        assert!(e.message.contains("typo"));
    }

    #[test]
    fn attacks_may_precede_declarations() {
        let af = parse_aspartix("att(x, y). % trailing comment\narg(y).arg(x).  arg(x).").unwrap();
        assert_eq!(af.arguments(), &["x".to_string(), "y".to_string()]);
        assert_eq!(af.attack_count(), 1);
    }

    #[test]
    fn serialization_order() {
        let af = ArgumentationFramework::new(["b", "a"], [("b", "a")]).unwrap();
        assert_eq!(serialize_aspartix(&af), "arg(a).\narg(b).\natt(b,a).\n");
        let empty = ArgumentationFramework::new(Vec::<String>::new(), Vec::<(String, String)>::new()).unwrap();
        assert_eq!(serialize_aspartix(&empty), "");
        let af = parse_aspartix(INPUT_AF).unwrap();
        assert_eq!(parse_aspartix(&serialize_aspartix(&af)).unwrap(), af);
    }
}
