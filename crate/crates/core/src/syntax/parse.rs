//! Recursive-descent parser.
//!
//! Expression grammar, loosest to tightest:
//!
//! ```text
//! expr    := or
//! or      := and ('|' and)*                      left associative
//! and     := unary ('&' unary)*                  left associative
//! unary   := '~' unary | quant
//! quant   := lambda | exists | eq
//! lambda  := '\' VAR (':' argtype)? '.' expr     body extends right
//! exists  := 'exists' VAR (':' argtype)? '.' expr
//! eq      := app ('=' app)?                      not associative
//! app     := atom+                               left associative
//! atom    := '(' expr ')' | NAME | 'true' | 'false'
//! ```
//!
//! Types are right associative: `type := tyatom ('->' type)?` with
//! `tyatom := 'i' | 'o' | '(' type ')'`.

use super::lex::{lex, Tok, Token};
use super::{Decl, Expr, ExprKind, RawClause, RawProgram, TypeExpr};
use crate::diag::{ParseError, Span};

struct Cursor<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.span.lo)
            .unwrap_or(self.src.len())
    }

    fn span(&self) -> Span {
        self.toks
            .get(self.pos)
            .map(|t| t.span)
            .unwrap_or(Span::new(self.src.len(), self.src.len()))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.src, self.here(), msg)
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<Span, ParseError> {
        match self.toks.get(self.pos) {
            Some(t) if &t.tok == want => {
                let sp = t.span;
                self.pos += 1;
                Ok(sp)
            }
            Some(t) => Err(self.error(format!("expected {what}, found {}", t.tok.describe()))),
            None => Err(self.error(format!("expected {what}, found end of input"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span), ParseError> {
        match self.toks.get(self.pos) {
            Some(Token {
                tok: Tok::Ident(s),
                span,
            }) => {
                let out = (s.clone(), *span);
                self.pos += 1;
                Ok(out)
            }
            Some(t) => Err(self.error(format!("expected {what}, found {}", t.tok.describe()))),
            None => Err(self.error(format!("expected {what}, found end of input"))),
        }
    }
}

fn is_var_name(name: &str) -> bool {
    name.chars()
        .next()
        .map(|c| c.is_ascii_uppercase())
        .unwrap_or(false)
}

/// Parse a whole program: declarations `name : type.` and clauses
/// `name <- expr.` (or the fact form `name.`, shorthand for `name <- true.`).
pub fn parse_program(src: &str) -> Result<RawProgram, ParseError> {
    let toks = lex(src)?;
    let mut cur = Cursor { src, toks, pos: 0 };
    let mut prog = RawProgram {
        source: src.to_string(),
        decls: Vec::new(),
        clauses: Vec::new(),
    };
    while cur.peek().is_some() {
        let (name, name_span) = cur.ident("a declaration or clause name")?;
        if is_var_name(&name) {
            return Err(ParseError::at(
                src,
                name_span.lo,
                format!("`{name}` starts uppercase; declaration and clause names are constants (lowercase initial)"),
            ));
        }
        match cur.peek() {
            Some(Tok::Colon) => {
                cur.next();
                let ty = parse_type(&mut cur)?;
                let end = cur.expect(&Tok::Dot, "`.` after declaration")?;
                prog.decls.push(Decl {
                    name,
                    ty,
                    span: name_span.join(end),
                });
            }
            Some(Tok::LArrow) => {
                cur.next();
                let body = parse_expr_bp(&mut cur)?;
                let end = cur.expect(&Tok::Dot, "`.` after clause body")?;
                prog.clauses.push(RawClause {
                    head: name,
                    head_span: name_span,
                    body,
                    span: name_span.join(end),
                });
            }
            Some(Tok::Dot) => {
                let end = cur.span();
                cur.next();
                prog.clauses.push(RawClause {
                    head: name,
                    head_span: name_span,
                    body: Expr::new(name_span, ExprKind::True),
                    span: name_span.join(end),
                });
            }
            Some(t) => {
                let msg = format!(
                    "expected `:`, `<-`, or `.` after `{name}`, found {}",
                    t.describe()
                );
                return Err(cur.error(msg));
            }
            None => {
                return Err(cur.error(format!("expected `:`, `<-`, or `.` after `{name}`")));
            }
        }
    }
    Ok(prog)
}

/// Parse a standalone expression (for queries). A trailing `.` is allowed.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut cur = Cursor { src, toks, pos: 0 };
    if cur.peek().is_none() {
        return Err(cur.error("expected an expression"));
    }
    let e = parse_expr_bp(&mut cur)?;
    if cur.peek() == Some(&Tok::Dot) {
        cur.next();
    }
    if let Some(t) = cur.peek() {
        return Err(cur.error(format!("unexpected {} after expression", t.describe())));
    }
    Ok(e)
}

/// Parse a standalone type, e.g. `(o->o)->o->o`.
pub fn parse_type_text(src: &str) -> Result<TypeExpr, ParseError> {
    let toks = lex(src)?;
    let mut cur = Cursor { src, toks, pos: 0 };
    if cur.peek().is_none() {
        return Err(cur.error("expected a type"));
    }
    let t = parse_type(&mut cur)?;
    if cur.peek() == Some(&Tok::Dot) {
        cur.next();
    }
    if let Some(tok) = cur.peek() {
        return Err(cur.error(format!("unexpected {} after type", tok.describe())));
    }
    Ok(t)
}

fn parse_type(cur: &mut Cursor) -> Result<TypeExpr, ParseError> {
    let at = cur.here();
    let head = parse_type_atom(cur)?;
    if cur.peek() == Some(&Tok::Arrow) {
        cur.next();
        let rest = parse_type(cur)?;
        combine_arrow(cur, at, head, rest)
    } else {
        Ok(head)
    }
}

fn combine_arrow(
    cur: &Cursor,
    at: usize,
    head: TypeExpr,
    rest: TypeExpr,
) -> Result<TypeExpr, ParseError> {
    if rest.is_predicate() {
        TypeExpr::pred(head, rest).map_err(|m| ParseError::at(cur.src, at, m))
    } else {
        // Result is `i` or `i -> ... -> i`: a function-symbol type; all
        // arguments must then be `i` as well.
        let n = match rest {
            TypeExpr::Iota => 0,
            TypeExpr::Fun(n) => n,
            _ => unreachable!(),
        };
        match head {
            TypeExpr::Iota => Ok(TypeExpr::Fun(n + 1)),
            other => Err(ParseError::at(
                cur.src,
                at,
                format!("a type ending in `i` may only take `i` arguments, found {other}"),
            )),
        }
    }
}

fn parse_type_atom(cur: &mut Cursor) -> Result<TypeExpr, ParseError> {
    match cur.peek() {
        Some(Tok::Ident(s)) if s == "i" => {
            cur.next();
            Ok(TypeExpr::Iota)
        }
        Some(Tok::Ident(s)) if s == "o" => {
            cur.next();
            Ok(TypeExpr::Omicron)
        }
        Some(Tok::LParen) => {
            cur.next();
            let t = parse_type(cur)?;
            cur.expect(&Tok::RParen, "`)` closing a type")?;
            Ok(t)
        }
        Some(t) => {
            let msg = format!(
                "expected a type (`i`, `o`, or parenthesized), found {}",
                t.describe()
            );
            Err(cur.error(msg))
        }
        None => Err(cur.error("expected a type, found end of input")),
    }
}

/// Parse a binder annotation, which must be an argument type.
fn parse_argument_type(cur: &mut Cursor) -> Result<TypeExpr, ParseError> {
    let at = cur.here();
    let ty = parse_type(cur)?;
    if !ty.is_argument() {
        return Err(ParseError::at(
            cur.src,
            at,
            format!("binder type must be `i` or a predicate type, found {ty}"),
        ));
    }
    Ok(ty)
}

fn parse_expr_bp(cur: &mut Cursor) -> Result<Expr, ParseError> {
    parse_or(cur)
}

fn parse_or(cur: &mut Cursor) -> Result<Expr, ParseError> {
    let mut lhs = parse_and(cur)?;
    while cur.peek() == Some(&Tok::Pipe) {
        cur.next();
        let rhs = parse_and(cur)?;
        let span = lhs.span.join(rhs.span);
        lhs = Expr::new(span, ExprKind::Or(Box::new(lhs), Box::new(rhs)));
    }
    Ok(lhs)
}

fn parse_and(cur: &mut Cursor) -> Result<Expr, ParseError> {
    let mut lhs = parse_unary(cur)?;
    while cur.peek() == Some(&Tok::Amp) {
        cur.next();
        let rhs = parse_unary(cur)?;
        let span = lhs.span.join(rhs.span);
        lhs = Expr::new(span, ExprKind::And(Box::new(lhs), Box::new(rhs)));
    }
    Ok(lhs)
}

fn parse_unary(cur: &mut Cursor) -> Result<Expr, ParseError> {
    if cur.peek() == Some(&Tok::Tilde) {
        let start = cur.span();
        cur.next();
        let inner = parse_unary(cur)?;
        let span = start.join(inner.span);
        return Ok(Expr::new(span, ExprKind::Not(Box::new(inner))));
    }
    parse_quant(cur)
}

fn parse_quant(cur: &mut Cursor) -> Result<Expr, ParseError> {
    match cur.peek() {
        Some(Tok::Backslash) => {
            let start = cur.span();
            cur.next();
            let (var, var_span) = cur.ident("a variable after `\\`")?;
            if !is_var_name(&var) {
                return Err(ParseError::at(
                    cur.src,
                    var_span.lo,
                    format!("`{var}` cannot be bound: variables start uppercase"),
                ));
            }
            let ann = if cur.peek() == Some(&Tok::Colon) {
                cur.next();
                Some(parse_argument_type(cur)?)
            } else {
                None
            };
            cur.expect(&Tok::Dot, "`.` after the binder")?;
            let body = parse_expr_bp(cur)?;
            let span = start.join(body.span);
            Ok(Expr::new(
                span,
                ExprKind::Lambda {
                    var,
                    ann,
                    body: Box::new(body),
                },
            ))
        }
        Some(Tok::KwExists) => {
            let start = cur.span();
            cur.next();
            let (var, var_span) = cur.ident("a variable after `exists`")?;
            if !is_var_name(&var) {
                return Err(ParseError::at(
                    cur.src,
                    var_span.lo,
                    format!("`{var}` cannot be bound: variables start uppercase"),
                ));
            }
            let ann = if cur.peek() == Some(&Tok::Colon) {
                cur.next();
                Some(parse_argument_type(cur)?)
            } else {
                None
            };
            cur.expect(&Tok::Dot, "`.` after the binder")?;
            let body = parse_expr_bp(cur)?;
            let span = start.join(body.span);
            Ok(Expr::new(
                span,
                ExprKind::Exists {
                    var,
                    ann,
                    body: Box::new(body),
                },
            ))
        }
        _ => parse_eq(cur),
    }
}

fn parse_eq(cur: &mut Cursor) -> Result<Expr, ParseError> {
    let lhs = parse_app(cur)?;
    if cur.peek() == Some(&Tok::EqSign) {
        cur.next();
        let rhs = parse_app(cur)?;
        if cur.peek() == Some(&Tok::EqSign) {
            return Err(cur.error("`=` does not chain; parenthesize to disambiguate"));
        }
        let span = lhs.span.join(rhs.span);
        return Ok(Expr::new(span, ExprKind::Eq(Box::new(lhs), Box::new(rhs))));
    }
    Ok(lhs)
}

fn starts_atom(t: &Tok) -> bool {
    matches!(t, Tok::Ident(_) | Tok::KwTrue | Tok::KwFalse | Tok::LParen)
}

fn parse_app(cur: &mut Cursor) -> Result<Expr, ParseError> {
    let mut lhs = parse_atom(cur)?;
    while cur.peek().map(starts_atom).unwrap_or(false) {
        let rhs = parse_atom(cur)?;
        let span = lhs.span.join(rhs.span);
        lhs = Expr::new(span, ExprKind::App(Box::new(lhs), Box::new(rhs)));
    }
    Ok(lhs)
}

fn parse_atom(cur: &mut Cursor) -> Result<Expr, ParseError> {
    match cur.peek() {
        Some(Tok::Ident(_)) => {
            let (name, span) = cur.ident("a name")?;
            let kind = if is_var_name(&name) {
                ExprKind::Var(name)
            } else {
                ExprKind::Const(name)
            };
            Ok(Expr::new(span, kind))
        }
        Some(Tok::KwTrue) => {
            let span = cur.span();
            cur.next();
            Ok(Expr::new(span, ExprKind::True))
        }
        Some(Tok::KwFalse) => {
            let span = cur.span();
            cur.next();
            Ok(Expr::new(span, ExprKind::False))
        }
        Some(Tok::LParen) => {
            let start = cur.span();
            cur.next();
            let inner = parse_expr_bp(cur)?;
            let end = cur.expect(&Tok::RParen, "`)`")?;
            Ok(Expr::new(start.join(end), inner.kind))
        }
        Some(t) => {
            let msg = format!("expected an expression, found {}", t.describe());
            Err(cur.error(msg))
        }
        None => Err(cur.error("expected an expression, found end of input")),
    }
}
