//! Recursive-descent parser for S-FEEL conditions.
//!
//! ```text
//! condition := item ("," item)*
//! item      := "-" | "not" "(" term ")" | cmp term | interval | term
//! cmp       := "<" | "<=" | ">" | ">=" | "≤" | "≥"
//! interval  := ("[" | "(") term ".." term ("]" | ")")
//! term      := product (("+" | "-") product)*
//! product   := unary (("*" | "/") unary)*
//! unary     := "-" number | primary
//! primary   := number | string | word | "(" term ")"
//! ```
//!
//! `(` is ambiguous between an open interval and a parenthesized term; the parser
//! tries the interval first and backtracks when no `..` follows the first term.

use super::{fold_term, ArithOp, CmpOp, Condition, DataType, Term, Value};
use crate::error::{Error, Result};

/// Parses condition text for a column of kind `ty`.
///
/// Every term is folded once during parsing, so a successful parse guarantees the
/// condition can be evaluated without arithmetic errors.
pub fn parse_condition(text: &str, ty: DataType) -> Result<Condition> {
    let mut p = Parser::new(text, ty);
    let cond = p.condition()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(cond)
}

/// Parses a single term (an output entry, a literal) for a column of kind `ty`.
pub fn parse_term(text: &str, ty: DataType) -> Result<Term> {
    let mut p = Parser::new(text, ty);
    let term = p.checked_term()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(term)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ty: DataType,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ty: DataType) -> Self {
        Parser { src, pos: 0, ty }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(self.pos, message)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected {token:?}")))
        }
    }

    fn condition(&mut self) -> Result<Condition> {
        let mut items = vec![self.item()?];
        while self.eat(",") {
            items.push(self.item()?);
        }
        Ok(Condition::any_of(items))
    }

    fn item(&mut self) -> Result<Condition> {
        self.skip_ws();
        let start = self.pos;

        if self.eat("-") {
            self.skip_ws();
            if self.at_end() || self.peek() == Some(',') {
                return Ok(Condition::Any);
            }
            self.pos = start;
        }

        if self.rest().starts_with("not") {
            self.pos += 3;
            if self.eat("(") {
                let term = self.checked_term()?;
                if self.eat(",") {
                    return Err(self.error("not(...) takes a single term"));
                }
                self.expect(")")?;
                return Ok(Condition::Not(term));
            }
            self.pos = start;
        }

        if let Some(op) = self.comparison_op() {
            self.require_numeric(start, "comparison")?;
            let term = self.checked_term()?;
            return Ok(Condition::Compare(op, term));
        }

        if self.peek() == Some('[') || self.peek() == Some('(') {
            match self.interval() {
                Ok(Some(cond)) => {
                    self.require_numeric(start, "interval")?;
                    return Ok(cond);
                }
                Ok(None) => self.pos = start,
                Err(err) => return Err(err),
            }
        }

        Ok(Condition::Match(self.checked_term()?))
    }

    fn comparison_op(&mut self) -> Option<CmpOp> {
        for (token, op) in [
            ("<=", CmpOp::Le),
            (">=", CmpOp::Ge),
            ("≤", CmpOp::Le),
            ("≥", CmpOp::Ge),
            ("<", CmpOp::Lt),
            (">", CmpOp::Gt),
        ] {
            if self.eat(token) {
                return Some(op);
            }
        }
        None
    }

    fn require_numeric(&self, at: usize, what: &str) -> Result<()> {
        if self.ty.is_numeric() {
            Ok(())
        } else {
            Err(Error::Type(format!(
                "{what} at offset {at} is not available for {} columns",
                self.ty
            )))
        }
    }

    /// Returns `Ok(None)` when the text is not an interval (so the caller can backtrack).
    fn interval(&mut self) -> Result<Option<Condition>> {
        let lo_closed = match self.peek() {
            Some('[') => true,
            Some('(') => false,
            _ => return Ok(None),
        };
        self.pos += 1;
        let lo = match self.term() {
            Ok(t) => t,
            Err(_) if !lo_closed => return Ok(None),
            Err(e) => return Err(e),
        };
        if !self.eat("..") {
            return if lo_closed {
                Err(self.error("expected \"..\" in interval"))
            } else {
                Ok(None)
            };
        }
        let hi = self.term()?;
        let hi_closed = if self.eat("]") {
            true
        } else if self.eat(")") {
            false
        } else {
            return Err(self.error("expected \"]\" or \")\" closing the interval"));
        };
        fold_term(&lo)?;
        fold_term(&hi)?;
        Ok(Some(Condition::Interval {
            lo_closed,
            lo,
            hi,
            hi_closed,
        }))
    }

    fn checked_term(&mut self) -> Result<Term> {
        let term = self.term()?;
        fold_term(&term)?;
        Ok(term)
    }

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.product()?;
        loop {
            let op = if self.peek_binary_minus() {
                ArithOp::Sub
            } else if self.eat("+") {
                ArithOp::Add
            } else {
                break;
            };
            if op == ArithOp::Sub {
                self.eat("-");
            }
            let rhs = self.product()?;
            lhs = self.arith(op, lhs, rhs)?;
        }
        Ok(lhs)
    }

    /// A `-` after a complete operand is subtraction, unless it is the `..` range marker.
    fn peek_binary_minus(&mut self) -> bool {
        self.skip_ws();
        self.rest().starts_with('-')
    }

    fn product(&mut self) -> Result<Term> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat("*") || self.eat("·") {
                ArithOp::Mul
            } else if self.eat("/") || self.eat("÷") {
                ArithOp::Div
            } else {
                break;
            };
            let rhs = self.unary()?;
            lhs = self.arith(op, lhs, rhs)?;
        }
        Ok(lhs)
    }

    fn arith(&self, op: ArithOp, lhs: Term, rhs: Term) -> Result<Term> {
        if !self.ty.is_numeric() {
            return Err(Error::Type(format!(
                "arithmetic {:?} is not available for {} columns",
                op.symbol(),
                self.ty
            )));
        }
        Ok(Term::apply(op, lhs, rhs))
    }

    fn unary(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.peek() == Some('-') {
            self.pos += 1;
            self.skip_ws();
            return match self.peek() {
                Some(c) if c.is_ascii_digit() => self.number(true),
                _ => Err(self.error("unary minus applies only to numeric literals")),
            };
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Term> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(c) if c.is_ascii_digit() => self.number(false),
            Some('"') => self.quoted(),
            Some('(') => {
                self.pos += 1;
                let inner = self.term()?;
                self.expect(")")?;
                Ok(inner)
            }
            Some(c) if c.is_alphabetic() || c == '_' => self.word(),
            Some(c) => Err(self.error(format!("unexpected character {c:?}"))),
        }
    }

    fn number(&mut self, negative: bool) -> Result<Term> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = self.pos;
        let mut is_real = false;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        // "1..5" is a range, "1.5" a fraction
        if end + 1 < bytes.len() && bytes[end] == b'.' && bytes[end + 1].is_ascii_digit() {
            is_real = true;
            end += 1;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
        }
        if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
            let mut k = end + 1;
            if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                k += 1;
            }
            if k < bytes.len() && bytes[k].is_ascii_digit() {
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                is_real = true;
                end = k;
            }
        }
        let lexeme = &self.src[start..end];
        self.pos = end;
        let value = match self.ty {
            DataType::Integer if is_real => {
                return Err(Error::Type(format!("real literal {lexeme} in an integer column")))
            }
            DataType::Integer => {
                let digits = if negative {
                    format!("-{lexeme}")
                } else {
                    lexeme.to_string()
                };
                Value::Integer(
                    digits
                        .parse()
                        .map_err(|_| Error::syntax(start, format!("integer literal {digits} out of range")))?,
                )
            }
            DataType::Real => {
                let v: f64 = lexeme
                    .parse()
                    .map_err(|_| Error::syntax(start, format!("bad number {lexeme}")))?;
                if !v.is_finite() {
                    return Err(Error::syntax(start, format!("number {lexeme} is not finite")));
                }
                Value::Real(if negative { -v } else { v })
            }
            other => return Err(Error::Type(format!("numeric literal {lexeme} in a {other} column"))),
        };
        Ok(Term::Literal(value))
    }

    fn quoted(&mut self) -> Result<Term> {
        let start = self.pos;
        self.pos += 1;
        let mut out = String::new();
        let mut chars = self.rest().char_indices();
        loop {
            match chars.next() {
                None => return Err(Error::syntax(start, "unterminated string literal")),
                Some((i, '"')) => {
                    self.pos += i + 1;
                    break;
                }
                Some((_, '\\')) => match chars.next() {
                    Some((_, c)) => out.push(c),
                    None => return Err(Error::syntax(start, "unterminated string literal")),
                },
                Some((_, c)) => out.push(c),
            }
        }
        match self.ty {
            DataType::String => Ok(Term::Literal(Value::String(out))),
            other => Err(Error::Type(format!("string literal {out:?} in a {other} column"))),
        }
    }

    fn word(&mut self) -> Result<Term> {
        let len = self
            .rest()
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        let word = &self.rest()[..len];
        let value = match self.ty {
            DataType::String => Value::String(word.to_string()),
            DataType::Boolean => match word {
                "true" => Value::Boolean(true),
                "false" => Value::Boolean(false),
                _ => return Err(Error::Type(format!("{word:?} is not a boolean literal"))),
            },
            other => return Err(Error::Type(format!("{word:?} is not a literal of a {other} column"))),
        };
        self.pos += len;
        Ok(Term::Literal(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Term {
        Term::Literal(Value::Integer(v))
    }

    fn s(v: &str) -> Condition {
        Condition::literal(Value::string(v))
    }

    #[test]
    fn closed_interval() {
        assert_eq!(
            parse_condition("[250..750]", DataType::Integer).unwrap(),
            Condition::Interval {
                lo_closed: true,
                lo: int(250),
                hi: int(750),
                hi_closed: true
            }
        );
    }

    #[test]
    fn string_alternatives() {
        assert_eq!(
            parse_condition("high,medium,low", DataType::String).unwrap(),
            Condition::Alternative(vec![s("high"), s("medium"), s("low")])
        );
    }

    #[test]
    fn dash_is_any() {
        assert_eq!(parse_condition("-", DataType::Real).unwrap(), Condition::Any);
        assert_eq!(parse_condition("  -  ", DataType::String).unwrap(), Condition::Any);
    }

    #[test]
    fn underage_or_old() {
        assert_eq!(
            parse_condition("[0..18],>= 70", DataType::Integer).unwrap(),
            Condition::Alternative(vec![
                Condition::Interval {
                    lo_closed: true,
                    lo: int(0),
                    hi: int(18),
                    hi_closed: true
                },
                Condition::Compare(CmpOp::Ge, int(70)),
            ])
        );
    }

    #[test]
    fn negative_literals_and_arithmetic() {
        assert_eq!(
            parse_condition("-5", DataType::Integer).unwrap(),
            Condition::Match(int(-5))
        );
        assert_eq!(
            parse_condition("[-5..-1]", DataType::Integer).unwrap(),
            Condition::Interval {
                lo_closed: true,
                lo: int(-5),
                hi: int(-1),
                hi_closed: true
            }
        );
        assert_eq!(
            parse_condition("2 * 500 - 1", DataType::Integer).unwrap(),
            Condition::Match(Term::apply(
                ArithOp::Sub,
                Term::apply(ArithOp::Mul, int(2), int(500)),
                int(1)
            ))
        );
        assert_eq!(
            parse_condition("(2*500)", DataType::Integer).unwrap(),
            Condition::Match(Term::apply(ArithOp::Mul, int(2), int(500)))
        );
        assert_eq!(
            parse_condition("((1+2)..(3*4)]", DataType::Integer).unwrap(),
            Condition::Interval {
                lo_closed: false,
                lo: Term::apply(ArithOp::Add, int(1), int(2)),
                hi: Term::apply(ArithOp::Mul, int(3), int(4)),
                hi_closed: true
            }
        );
    }

    #[test]
    fn reals_and_unicode_operators() {
        assert_eq!(
            parse_condition("≥ 0", DataType::Real).unwrap(),
            Condition::Compare(CmpOp::Ge, Term::Literal(Value::Real(0.0)))
        );
        assert_eq!(
            parse_condition("[1.5..2e3)", DataType::Real).unwrap(),
            Condition::Interval {
                lo_closed: true,
                lo: Term::Literal(Value::Real(1.5)),
                hi: Term::Literal(Value::Real(2000.0)),
                hi_closed: false
            }
        );
    }

    #[test]
    fn not_takes_one_term() {
        assert_eq!(
            parse_condition("not(\"Card payoff\")", DataType::String).unwrap(),
            Condition::Not(Term::Literal(Value::string("Card payoff")))
        );
        assert!(matches!(
            parse_condition("not(a, b)", DataType::String),
            Err(Error::Syntax { .. })
        ));
        // a bare word that merely starts with "not" is a string
        assert_eq!(parse_condition("nothing", DataType::String).unwrap(), s("nothing"));
    }

    #[test]
    fn type_errors() {
        for (text, ty) in [
            ("[0..18]", DataType::String),
            ("< 5", DataType::Boolean),
            ("abc", DataType::Integer),
            ("2.5", DataType::Integer),
            ("5", DataType::String),
            ("\"x\"", DataType::Real),
            ("maybe", DataType::Boolean),
        ] {
            assert!(
                matches!(parse_condition(text, ty), Err(Error::Type(_))),
                "{text} as {ty}"
            );
        }
    }

    #[test]
    fn syntax_errors() {
        for text in ["", "[1..", "[1 2]", "1,", "(1..2", ">", "1 2", "@"] {
            assert!(
                matches!(parse_condition(text, DataType::Integer), Err(Error::Syntax { .. })),
                "{text:?}"
            );
        }
    }

    #[test]
    fn division_by_zero_is_reported_while_parsing() {
        assert!(matches!(parse_condition("1/0", DataType::Integer), Err(Error::Eval(_))));
        assert!(matches!(
            parse_condition("[0..1/0]", DataType::Real),
            Err(Error::Eval(_))
        ));
    }
}
