//! Surface syntax for formulas and sequents.
//!
//! ```text
//! formula  := or
//! or       := and ( "|" and )*
//! and      := unary ( "&" unary )*
//! unary    := "!" unary | quant | atom
//! quant    := ( "forall" | "exists" ) ident "." formula
//! atom     := ident | "0" | "1" | "(" formula ")"
//! sequent  := [ formula ( "," formula )* ] "|-" [ formula ( "," formula )* ]
//! ```
//!
//! Binary connectives associate to the left and quantifiers extend as far
//! right as possible. `¬ ∧ ∨ ⋀ ⋁ ∀ ∃ ⊢` are accepted as aliases. The printer
//! emits operands in canonical order, which need not match the input.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Formula, Kind, RawFormula};
use crate::sequent::{AnnotatedFormula, Sequent, Side};

/// Byte range `[start, end)` in the parsed input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.span.start)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Not,
    And,
    Or,
    LParen,
    RParen,
    Forall,
    Exists,
    Dot,
    Comma,
    Turnstile,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => alloc::format!("identifier `{}`", name),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const FORMULA_START: &[&str] = &["identifier", "`0`", "`1`", "`!`", "`(`", "`forall`", "`exists`"];

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = |tok: Tok| (tok, SourceSpan::new(start, start + c.len_utf8()));
        let tok = match c {
            '!' | '¬' | '~' => single(Tok::Not),
            '&' | '∧' => single(Tok::And),
            '∨' => single(Tok::Or),
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            '.' => single(Tok::Dot),
            ',' => single(Tok::Comma),
            '⊢' => single(Tok::Turnstile),
            '⋀' | '∀' => single(Tok::Forall),
            '⋁' | '∃' => single(Tok::Exists),
            '0' => single(Tok::Zero),
            '1' => single(Tok::One),
            '|' => {
                chars.next();
                if let Some(&(_, '-')) = chars.peek() {
                    chars.next();
                    out.push((Tok::Turnstile, SourceSpan::new(start, start + 2)));
                } else {
                    out.push((Tok::Or, SourceSpan::new(start, start + 1)));
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        end = i + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let word = &text[start..end];
                let tok = match word {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((tok, SourceSpan::new(start, end)));
                continue;
            }
            other => {
                return Err(ParseError {
                    message: alloc::format!("unexpected character `{}`", other),
                    span: SourceSpan::new(start, start + other.len_utf8()),
                    expected: Vec::new(),
                })
            }
        };
        chars.next();
        out.push(tok);
    }
    out.push((Tok::Eof, SourceSpan::new(text.len(), text.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let tok = self.peek();
        let message = match tok {
            Tok::Eof => String::from("unexpected end of input"),
            other => alloc::format!("unexpected {}", other.describe()),
        };
        ParseError {
            message,
            span: self.span(),
            expected: expected.to_vec(),
        }
    }

    fn formula(&mut self) -> Result<RawFormula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = RawFormula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<RawFormula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = RawFormula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<RawFormula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(RawFormula::Not(Box::new(self.unary()?)))
            }
            Tok::Forall | Tok::Exists => {
                let (q, _) = self.bump();
                let name = match self.bump() {
                    (Tok::Ident(name), _) => name,
                    _ => {
                        self.pos -= 1;
                        return Err(self.error(&["identifier"]));
                    }
                };
                if *self.peek() != Tok::Dot {
                    return Err(self.error(&["`.`"]));
                }
                self.bump();
                let body = Box::new(self.formula()?);
                Ok(if q == Tok::Forall {
                    RawFormula::Forall(name, body)
                } else {
                    RawFormula::Exists(name, body)
                })
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(RawFormula::Var(name))
            }
            Tok::Zero => {
                self.bump();
                Ok(RawFormula::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(RawFormula::One)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "`&`", "`|`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(FORMULA_START)),
        }
    }

    fn starts_formula(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Zero | Tok::One | Tok::Not | Tok::LParen | Tok::Forall | Tok::Exists
        )
    }

    fn formula_list(&mut self) -> Result<Vec<(RawFormula, SourceSpan)>, ParseError> {
        let mut out = Vec::new();
        if !self.starts_formula() {
            return Ok(out);
        }
        loop {
            let start = self.span().start;
            let f = self.formula()?;
            let end = self.toks[self.pos.saturating_sub(1)].1.end;
            out.push((f, SourceSpan::new(start, end.max(start))));
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    fn expect_eof(&self, expected: &[&'static str]) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }
}

fn finish(raw: RawFormula, span: SourceSpan) -> Result<Formula, ParseError> {
    raw.canonicalize().map_err(|e| ParseError {
        message: e.to_string(),
        span,
        expected: Vec::new(),
    })
}

/// Parses and canonicalizes a formula.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_raw_formula(text).and_then(|raw| finish(raw, SourceSpan::new(0, text.len())))
}

/// Parses a formula without canonicalizing it.
pub fn parse_raw_formula(text: &str) -> Result<RawFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_eof(&["`&`", "`|`", "end of input"])?;
    Ok(f)
}

/// A parsed sequent: the annotated formulas in textual order.
///
/// One formula on the left yields `(Some(A^L), None)`; one formula on the
/// right yields `(None, Some(B^R))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentText {
    pub first: Option<AnnotatedFormula>,
    pub second: Option<AnnotatedFormula>,
}

impl SequentText {
    pub fn sequent(&self) -> Sequent {
        Sequent::of(self.first.clone(), self.second.clone())
    }
}

pub fn parse_sequent(text: &str) -> Result<SequentText, ParseError> {
    let mut p = Parser::new(text)?;
    let left = p.formula_list()?;
    if *p.peek() != Tok::Turnstile {
        let mut expected = vec!["`|-`", "`,`"];
        if left.is_empty() {
            expected.extend_from_slice(FORMULA_START);
        }
        return Err(p.error(&expected));
    }
    let turnstile = p.span();
    p.bump();
    let right = p.formula_list()?;
    p.expect_eof(&["`,`", "`&`", "`|`", "end of input"])?;
    if left.len() + right.len() > 2 {
        let (_, span) = left.iter().chain(right.iter()).nth(2).expect("third formula");
        return Err(ParseError {
            message: String::from("a sequent holds at most two formulas"),
            span: *span,
            expected: Vec::new(),
        });
    }
    let mut annotated = Vec::new();
    for (raw, span) in left {
        annotated.push(AnnotatedFormula::left(finish(raw, span)?));
    }
    for (raw, span) in right {
        annotated.push(AnnotatedFormula::right(finish(raw, span)?));
    }
    let _ = turnstile;
    let mut it = annotated.into_iter();
    let (a, b) = (it.next(), it.next());
    Ok(match (a, b) {
        (Some(a), None) if a.side == Side::R => SequentText {
            first: None,
            second: Some(a),
        },
        (a, b) => SequentText {
            first: a,
            second: b,
        },
    })
}

const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_ATOM: u8 = 3;

/// Prints with minimal parentheses; `parse_formula` inverts it.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, 0, true);
    out
}

fn write_formula(out: &mut String, f: &Formula, min_prec: u8, tail: bool) {
    match f.kind() {
        Kind::Zero => out.push('0'),
        Kind::One => out.push('1'),
        Kind::Var(x) => out.push_str(x.as_str()),
        Kind::Bound(i) => {
            // Only reachable for terms with dangling indices.
            out.push_str(&alloc::format!("#{}", i));
        }
        Kind::Not(a) => {
            out.push('!');
            write_formula(out, a, PREC_ATOM, tail);
        }
        Kind::And(a, b) | Kind::Or(a, b) => {
            let (prec, op) = if matches!(f.kind(), Kind::And(..)) {
                (PREC_AND, " & ")
            } else {
                (PREC_OR, " | ")
            };
            let wrap = prec < min_prec;
            if wrap {
                out.push('(');
            }
            write_formula(out, a, prec, false);
            out.push_str(op);
            write_formula(out, b, prec + 1, tail || wrap);
            if wrap {
                out.push(')');
            }
        }
        Kind::Forall { .. } | Kind::Exists { .. } => {
            let (q, name, body) = f.open_named().expect("quantifier");
            let wrap = !tail;
            if wrap {
                out.push('(');
            }
            out.push_str(match q {
                crate::formula::Quantifier::Forall => "forall ",
                crate::formula::Quantifier::Exists => "exists ",
            });
            out.push_str(name.as_str());
            out.push_str(". ");
            write_formula(out, &body, 0, true);
            if wrap {
                out.push(')');
            }
        }
    }
}

/// Prints `L-members |- R-members`.
pub fn print_sequent(s: &Sequent) -> String {
    let side = |side: Side| {
        s.members()
            .filter(|m| m.side == side)
            .map(|m| print_formula(&m.formula))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let (l, r) = (side(Side::L), side(Side::R));
    match (l.is_empty(), r.is_empty()) {
        (true, true) => String::from("|-"),
        (true, false) => alloc::format!("|- {}", r),
        (false, true) => alloc::format!("{} |-", l),
        (false, false) => alloc::format!("{} |- {}", l, r),
    }
}

/// Prints a single annotated formula as a one-member sequent.
pub fn print_annotated(a: &AnnotatedFormula) -> String {
    print_sequent(&Sequent::single(a.clone()))
}

/// Parses a sequent that must contain exactly one formula.
pub fn parse_annotated(text: &str) -> Result<AnnotatedFormula, ParseError> {
    let st = parse_sequent(text)?;
    match (st.first, st.second) {
        (Some(a), None) | (None, Some(a)) => Ok(a),
        _ => Err(ParseError {
            message: String::from("expected exactly one annotated formula"),
            span: SourceSpan::new(0, text.len()),
            expected: Vec::new(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(
            p("!x | y & z"),
            Formula::or(Formula::not(p("x")), Formula::and(p("y"), p("z")))
        );
        assert_eq!(p("x & y | z"), Formula::or(p("x & y"), p("z")));
    }

    #[test]
    fn quantifier_extends_right() {
        let f = p("exists x. !x & (y | x)");
        let x = crate::formula::Ident::new("x");
        let expected = Formula::exists(
            &x,
            Formula::and(Formula::not(p("x")), Formula::or(p("y"), p("x"))),
        );
        assert_eq!(f, expected);
        assert_eq!(p("a & forall x. x | b"), Formula::and(p("a"), p("forall x. x | b")));
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(p("⋁x.(¬x ∧ (y ∨ x))"), p("exists x. !x & (y | x)"));
        assert_eq!(p("∀x. x"), p("forall x. x"));
        assert_eq!(
            parse_sequent("x ∧ y ⊢ x").unwrap(),
            parse_sequent("x & y |- x").unwrap()
        );
    }

    #[test]
    fn error_positions() {
        let e = parse_formula("x &").unwrap_err();
        assert_eq!(e.span.start, 3);
        assert!(!e.expected.is_empty());
        let e = parse_formula("x & )").unwrap_err();
        assert_eq!(e.span.start, 4);
        let e = parse_formula("forall forall. x").unwrap_err();
        assert_eq!(e.span.start, 7);
        assert!(parse_formula("exists . x").is_err());
        assert!(parse_formula("x $ y").is_err());
        assert!(parse_formula("(x").is_err());
        assert!(parse_formula("").is_err());
    }

    #[test]
    fn sequent_shapes() {
        let st = parse_sequent("x & y |- x").unwrap();
        assert_eq!(st.first, Some(AnnotatedFormula::left(p("x & y"))));
        assert_eq!(st.second, Some(AnnotatedFormula::right(p("x"))));

        let st = parse_sequent("|- (x & y) | (!x & y)").unwrap();
        assert_eq!(st.first, None);
        assert_eq!(st.second, Some(AnnotatedFormula::right(p("(x & y) | (!x & y)"))));

        let st = parse_sequent("a, b |-").unwrap();
        assert_eq!(st.first.unwrap().side, Side::L);
        assert_eq!(st.second.unwrap().side, Side::L);

        let st = parse_sequent("|- a, b").unwrap();
        assert_eq!(st.first.unwrap().side, Side::R);

        let st = parse_sequent("a |-").unwrap();
        assert!(st.second.is_none());

        let st = parse_sequent("|-").unwrap();
        assert!(st.first.is_none() && st.second.is_none());

        let e = parse_sequent("a |- b, c").unwrap_err();
        assert!(e.message.contains("at most two"));
        assert_eq!(e.span.start, 8);
        assert!(parse_sequent("a b").is_err());
        assert!(parse_sequent("a").is_err());
    }

    #[test]
    fn printer_examples() {
        assert_eq!(print_formula(&p("!(x | y)")), "!(x | y)");
        assert_eq!(print_formula(&p("forall x. (x | !x)")), "forall x. x | !x");
        assert_eq!(print_formula(&Formula::and(p("y"), p("x"))), "x & y");
        assert_eq!(print_formula(&p("x & (y & z)")), "x & (y & z)");
        assert_eq!(print_formula(&p("(x | y) & z")), "z & (x | y)");
        assert_eq!(print_formula(&p("(forall x. x) | y")), "y | forall x. x");
        assert_eq!(print_formula(&p("(forall x. x) & (y | z)")), "(y | z) & forall x. x");
        assert_eq!(print_formula(&p("((forall x. x) & y) | z")), "z | y & forall x. x");
        assert_eq!(print_formula(&p("!(forall x. x) & y")), "y & !forall x. x");
        assert_eq!(print_formula(&p("(exists y. y) & forall x. x")), "(forall x. x) & exists y. y");
        assert_eq!(print_formula(&p("!!x")), "!!x");
    }

    #[test]
    fn sequent_printing() {
        let s = parse_sequent("x & y |- x").unwrap().sequent();
        assert_eq!(print_sequent(&s), "x & y |- x");
        assert_eq!(print_sequent(&Sequent::empty()), "|-");
        let s = parse_sequent("|- b, a").unwrap().sequent();
        assert_eq!(print_sequent(&s), "|- a, b");
    }
}
