//! Abstract syntax: types, expressions, programs, and their concrete
//! grammar (lexer, recursive-descent parser, pretty printer).
//!
//! The term language has two kinds of types:
//!
//! * functional types `i -> i -> ... -> i` (only usable by function
//!   symbols, which the checker rejects because they would make the
//!   ground universe infinite), and
//! * predicate types `rho1 -> ... -> rhon -> o`, where each argument
//!   `rho` is either `i` or again a predicate type.
//!
//! Expressions are simply-typed lambda terms extended with the logical
//! connectives `&`, `|`, `~`, equality on individuals, and existential
//! quantification.

mod lex;
mod parse;
mod pretty;

pub use parse::{parse_expr, parse_program, parse_type_text};
pub use pretty::{pretty_expr, pretty_program, pretty_type};

use crate::diag::Span;
use std::fmt;

/// A type expression. Construction through [`TypeExpr::pred`] keeps the
/// grammar invariants: `Pred(arg, res)` always has an argument type
/// (`i` or a predicate type) on the left and a predicate type on the right,
/// and functional types are collapsed into their arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeExpr {
    /// The type `i` of individuals.
    Iota,
    /// The type `o` of truth values.
    Omicron,
    /// `i -> i -> ... -> i` with `n >= 1` arguments.
    Fun(usize),
    /// `rho -> pi`.
    Pred(Box<TypeExpr>, Box<TypeExpr>),
}

impl TypeExpr {
    /// True for `o` and every `rho -> pi`.
    pub fn is_predicate(&self) -> bool {
        matches!(self, TypeExpr::Omicron | TypeExpr::Pred(_, _))
    }

    /// True for types allowed as argument/binder types: `i` or predicate.
    pub fn is_argument(&self) -> bool {
        matches!(self, TypeExpr::Iota) || self.is_predicate()
    }

    /// Build `arg -> res`, checking the grammar side conditions.
    pub fn pred(arg: TypeExpr, res: TypeExpr) -> Result<TypeExpr, String> {
        if !arg.is_argument() {
            return Err(format!(
                "argument type must be i or a predicate type, found {}",
                arg
            ));
        }
        if !res.is_predicate() {
            return Err(format!(
                "result type must be a predicate type, found {}",
                res
            ));
        }
        Ok(TypeExpr::Pred(Box::new(arg), Box::new(res)))
    }

    /// For a predicate type `rho1 -> ... -> rhon -> o`, the list of
    /// argument types (empty for `o`). Panics on non-predicate types.
    pub fn pred_args(&self) -> Vec<&TypeExpr> {
        let mut args = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                TypeExpr::Omicron => return args,
                TypeExpr::Pred(a, r) => {
                    args.push(a.as_ref());
                    cur = r.as_ref();
                }
                other => panic!("pred_args on non-predicate type {other}"),
            }
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Iota => f.write_str("i"),
            TypeExpr::Omicron => f.write_str("o"),
            TypeExpr::Fun(n) => {
                for _ in 0..*n {
                    f.write_str("i->")?;
                }
                f.write_str("i")
            }
            TypeExpr::Pred(a, r) => match a.as_ref() {
                TypeExpr::Pred(_, _) | TypeExpr::Fun(_) => write!(f, "({})->{}", a, r),
                _ => write!(f, "{}->{}", a, r),
            },
        }
    }
}

/// Expression node: a shape plus the source span it was parsed from.
/// Equality ignores spans, so structurally identical expressions parsed
/// from different places compare equal.
#[derive(Debug, Clone)]
pub struct Expr {
    pub span: Span,
    pub kind: ExprKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    /// Variable (uppercase initial).
    Var(String),
    /// Constant (lowercase initial): individual or predicate constant,
    /// resolved against the declaration table during checking.
    Const(String),
    True,
    False,
    /// Application of a declared function symbol to individual terms.
    /// The parser never produces this; checking rejects programs that
    /// declare function symbols, so it only documents the full term shape.
    FunApp(String, Vec<Expr>),
    /// Application `e1 e2`.
    App(Box<Expr>, Box<Expr>),
    /// `\X. e` or `\X:rho. e`.
    Lambda {
        var: String,
        ann: Option<TypeExpr>,
        body: Box<Expr>,
    },
    /// `e1 & e2` at a shared predicate type.
    And(Box<Expr>, Box<Expr>),
    /// `e1 | e2` at a shared predicate type.
    Or(Box<Expr>, Box<Expr>),
    /// `~e` at type `o`.
    Not(Box<Expr>),
    /// `t1 = t2` on individuals.
    Eq(Box<Expr>, Box<Expr>),
    /// `exists X. e` or `exists X:rho. e`, body of type `o`.
    Exists {
        var: String,
        ann: Option<TypeExpr>,
        body: Box<Expr>,
    },
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(span: Span, kind: ExprKind) -> Self {
        Expr { span, kind }
    }

    /// Free variables of the expression, in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut acc = Vec::new();
        let mut bound = Vec::new();
        self.free_vars_into(&mut bound, &mut acc);
        acc
    }

    fn free_vars_into(&self, bound: &mut Vec<String>, acc: &mut Vec<String>) {
        match &self.kind {
            ExprKind::Var(v) => {
                if !bound.iter().any(|b| b == v) && !acc.iter().any(|a| a == v) {
                    acc.push(v.clone());
                }
            }
            ExprKind::Const(_) | ExprKind::True | ExprKind::False => {}
            ExprKind::FunApp(_, args) => {
                for a in args {
                    a.free_vars_into(bound, acc);
                }
            }
            ExprKind::App(a, b) | ExprKind::And(a, b) | ExprKind::Or(a, b) | ExprKind::Eq(a, b) => {
                a.free_vars_into(bound, acc);
                b.free_vars_into(bound, acc);
            }
            ExprKind::Not(a) => a.free_vars_into(bound, acc),
            ExprKind::Lambda { var, body, .. } | ExprKind::Exists { var, body, .. } => {
                bound.push(var.clone());
                body.free_vars_into(bound, acc);
                bound.pop();
            }
        }
    }
}

/// A declaration `name : type.`
#[derive(Debug, Clone)]
pub struct Decl {
    pub name: String,
    pub ty: TypeExpr,
    pub span: Span,
}

impl PartialEq for Decl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.ty == other.ty
    }
}

/// A program clause `head <- body.` (the fact form `head.` is parsed as
/// `head <- true.`).
#[derive(Debug, Clone)]
pub struct RawClause {
    pub head: String,
    pub head_span: Span,
    pub body: Expr,
    pub span: Span,
}

impl PartialEq for RawClause {
    fn eq(&self, other: &Self) -> bool {
        self.head == other.head && self.body == other.body
    }
}

/// Parsed program: declarations and clauses in source order, plus the
/// source text (kept for rendering positions in later diagnostics).
#[derive(Debug, Clone, Default)]
pub struct RawProgram {
    pub source: String,
    pub decls: Vec<Decl>,
    pub clauses: Vec<RawClause>,
}

impl PartialEq for RawProgram {
    fn eq(&self, other: &Self) -> bool {
        self.decls == other.decls && self.clauses == other.clauses
    }
}
