//! Type checking and binder-type inference.
//!
//! Declarations give every constant its type. Checking a clause
//! `p <- e` verifies that `e` is closed and has exactly the declared
//! type of `p`; unannotated binders are inferred from their uses via
//! first-order unification over binder placeholders (no polymorphism —
//! a placeholder that survives solving is an error, code E006, never a
//! guess). The result is a fully annotated tree with the type at every
//! node, which evaluation consumes directly.
//!
//! Diagnostic codes: E001 unbound variable, E002 type mismatch,
//! E003 missing declaration, E004 function symbols present,
//! E005 open clause body, E006 un-inferable binder type.

use crate::diag::{Span, TypeError, TypeErrorCode};
use crate::syntax::{Expr, ExprKind, RawProgram, TypeExpr};
use std::collections::BTreeMap;
use std::fmt;

/// Expression annotated with its type at every node.
#[derive(Debug, Clone)]
pub struct TExpr {
    pub ty: TypeExpr,
    pub span: Span,
    pub kind: TExprKind,
}

#[derive(Debug, Clone)]
pub enum TExprKind {
    Var(String),
    Const(String),
    True,
    False,
    App(Box<TExpr>, Box<TExpr>),
    Lambda {
        var: String,
        var_ty: TypeExpr,
        body: Box<TExpr>,
    },
    And(Box<TExpr>, Box<TExpr>),
    Or(Box<TExpr>, Box<TExpr>),
    Not(Box<TExpr>),
    Eq(Box<TExpr>, Box<TExpr>),
    Exists {
        var: String,
        var_ty: TypeExpr,
        body: Box<TExpr>,
    },
}

/// A checked clause: head constant, its declared type, annotated body.
#[derive(Debug, Clone)]
pub struct TypedClause {
    pub head: String,
    pub ty: TypeExpr,
    pub head_span: Span,
    pub body: TExpr,
}

/// A successfully checked program.
#[derive(Debug, Clone)]
pub struct TypedProgram {
    /// Predicate constants and their types, name-ordered.
    pub predicate_types: BTreeMap<String, TypeExpr>,
    /// Declared individual constants, sorted.
    pub individual_constants: Vec<String>,
    /// Declared function symbols with arities. Programs containing any
    /// are rejected (E004), so this is empty on success; the checker
    /// builds it to report them.
    pub function_symbols: BTreeMap<String, usize>,
    /// Clauses in source order. A predicate may have several; one with
    /// none is interpreted as everywhere-false.
    pub clauses: Vec<TypedClause>,
}

impl TypedProgram {
    pub fn clauses_for<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a TypedClause> {
        self.clauses.iter().filter(move |c| c.head == name)
    }
}

// ----- inference types -------------------------------------------------

/// Inference-time type: the surface grammar plus placeholders standing
/// for unannotated binder types.
#[derive(Debug, Clone, PartialEq)]
enum Ty {
    Iota,
    Omicron,
    Pred(Box<Ty>, Box<Ty>),
    Var(u32),
}

impl Ty {
    fn from_type_expr(t: &TypeExpr) -> Ty {
        match t {
            TypeExpr::Iota => Ty::Iota,
            TypeExpr::Omicron => Ty::Omicron,
            TypeExpr::Pred(a, r) => Ty::Pred(
                Box::new(Ty::from_type_expr(a)),
                Box::new(Ty::from_type_expr(r)),
            ),
            TypeExpr::Fun(_) => {
                unreachable!("function symbol types are rejected before inference")
            }
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Iota => f.write_str("i"),
            Ty::Omicron => f.write_str("o"),
            Ty::Pred(a, r) => match a.as_ref() {
                Ty::Pred(_, _) => write!(f, "({a})->{r}"),
                _ => write!(f, "{a}->{r}"),
            },
            Ty::Var(n) => write!(f, "?{n}"),
        }
    }
}

#[derive(Default)]
struct Solver {
    bindings: Vec<Option<Ty>>,
}

impl Solver {
    fn fresh(&mut self) -> Ty {
        self.bindings.push(None);
        Ty::Var(self.bindings.len() as u32 - 1)
    }

    /// Follow variable bindings at the root.
    fn shallow(&self, t: &Ty) -> Ty {
        let mut cur = t.clone();
        while let Ty::Var(v) = cur {
            match &self.bindings[v as usize] {
                Some(next) => cur = next.clone(),
                None => return Ty::Var(v),
            }
        }
        cur
    }

    /// Fully substitute bindings; `None` if a placeholder remains.
    fn deep(&self, t: &Ty) -> Option<TypeExpr> {
        match self.shallow(t) {
            Ty::Iota => Some(TypeExpr::Iota),
            Ty::Omicron => Some(TypeExpr::Omicron),
            Ty::Pred(a, r) => {
                let arg = self.deep(&a)?;
                let res = self.deep(&r)?;
                Some(TypeExpr::Pred(Box::new(arg), Box::new(res)))
            }
            Ty::Var(_) => None,
        }
    }

    /// Render with bindings substituted as far as possible.
    fn show(&self, t: &Ty) -> String {
        match self.shallow(t) {
            Ty::Pred(a, r) => {
                let arg = self.show(&a);
                let res = self.show(&r);
                if arg.contains("->") {
                    format!("({arg})->{res}")
                } else {
                    format!("{arg}->{res}")
                }
            }
            other => other.to_string(),
        }
    }

    fn occurs(&self, v: u32, t: &Ty) -> bool {
        match self.shallow(t) {
            Ty::Var(w) => w == v,
            Ty::Pred(a, r) => self.occurs(v, &a) || self.occurs(v, &r),
            _ => false,
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> Result<(), String> {
        let (a, b) = (self.shallow(a), self.shallow(b));
        match (a, b) {
            (Ty::Var(v), t) | (t, Ty::Var(v)) => {
                if let Ty::Var(w) = t {
                    if w == v {
                        return Ok(());
                    }
                }
                if self.occurs(v, &t) {
                    return Err("a binder's type would have to contain itself".into());
                }
                self.bindings[v as usize] = Some(t);
                Ok(())
            }
            (Ty::Iota, Ty::Iota) | (Ty::Omicron, Ty::Omicron) => Ok(()),
            (Ty::Pred(a1, r1), Ty::Pred(a2, r2)) => {
                self.unify(&a1, &a2)?;
                self.unify(&r1, &r2)
            }
            (x, y) => Err(format!(
                "expected {}, found {}",
                self.show(&x),
                self.show(&y)
            )),
        }
    }
}

// ----- pre-typed tree ---------------------------------------------------

struct PExpr {
    ty: Ty,
    span: Span,
    kind: PKind,
}

enum PKind {
    Var(String),
    Const(String),
    True,
    False,
    App(Box<PExpr>, Box<PExpr>),
    Lambda {
        var: String,
        var_ty: Ty,
        body: Box<PExpr>,
    },
    And(Box<PExpr>, Box<PExpr>),
    Or(Box<PExpr>, Box<PExpr>),
    Not(Box<PExpr>),
    Eq(Box<PExpr>, Box<PExpr>),
    Exists {
        var: String,
        var_ty: Ty,
        body: Box<PExpr>,
    },
}

/// Declared signature the checker resolves constants against.
struct Sig<'a> {
    predicate_types: &'a BTreeMap<String, TypeExpr>,
    individual_constants: &'a [String],
}

struct Checker<'a> {
    sig: Sig<'a>,
    src: &'a str,
    solver: Solver,
}

impl<'a> Checker<'a> {
    fn err(&self, code: TypeErrorCode, span: Span, msg: impl Into<String>) -> TypeError {
        TypeError::new(code, msg, Some(span), self.src)
    }

    fn infer(&mut self, e: &Expr, env: &mut Vec<(String, Ty)>) -> Result<PExpr, TypeError> {
        let span = e.span;
        match &e.kind {
            ExprKind::Var(v) => match env.iter().rev().find(|(n, _)| n == v) {
                Some((_, ty)) => Ok(PExpr {
                    ty: ty.clone(),
                    span,
                    kind: PKind::Var(v.clone()),
                }),
                None => Err(self.err(
                    TypeErrorCode::UnboundVariable,
                    span,
                    format!("variable `{v}` is not bound by any enclosing binder"),
                )),
            },
            ExprKind::Const(c) => {
                if let Some(t) = self.sig.predicate_types.get(c) {
                    Ok(PExpr {
                        ty: Ty::from_type_expr(t),
                        span,
                        kind: PKind::Const(c.clone()),
                    })
                } else if self.sig.individual_constants.iter().any(|n| n == c) {
                    Ok(PExpr {
                        ty: Ty::Iota,
                        span,
                        kind: PKind::Const(c.clone()),
                    })
                } else {
                    Err(self.err(
                        TypeErrorCode::MissingDeclaration,
                        span,
                        format!("constant `{c}` has no declaration; add `{c} : <type>.`"),
                    ))
                }
            }
            ExprKind::True => Ok(PExpr {
                ty: Ty::Omicron,
                span,
                kind: PKind::True,
            }),
            ExprKind::False => Ok(PExpr {
                ty: Ty::Omicron,
                span,
                kind: PKind::False,
            }),
            ExprKind::FunApp(name, _) => Err(self.err(
                TypeErrorCode::FunctionSymbols,
                span,
                format!("function symbol `{name}` cannot appear in terms"),
            )),
            ExprKind::App(f, x) => {
                let pf = self.infer(f, env)?;
                let px = self.infer(x, env)?;
                let res = self.solver.fresh();
                let want = Ty::Pred(Box::new(px.ty.clone()), Box::new(res.clone()));
                self.solver.unify(&pf.ty, &want).map_err(|m| {
                    self.err(
                        TypeErrorCode::TypeMismatch,
                        span,
                        format!(
                            "cannot apply a value of type {} to an argument of type {}: {m}",
                            self.solver.show(&pf.ty),
                            self.solver.show(&px.ty)
                        ),
                    )
                })?;
                Ok(PExpr {
                    ty: res,
                    span,
                    kind: PKind::App(Box::new(pf), Box::new(px)),
                })
            }
            ExprKind::Lambda { var, ann, body } => {
                let var_ty = match ann {
                    Some(t) => Ty::from_type_expr(t),
                    None => self.solver.fresh(),
                };
                env.push((var.clone(), var_ty.clone()));
                let pb = self.infer(body, env);
                env.pop();
                let pb = pb?;
                let ty = Ty::Pred(Box::new(var_ty.clone()), Box::new(pb.ty.clone()));
                Ok(PExpr {
                    ty,
                    span,
                    kind: PKind::Lambda {
                        var: var.clone(),
                        var_ty,
                        body: Box::new(pb),
                    },
                })
            }
            ExprKind::And(a, b) | ExprKind::Or(a, b) => {
                let pa = self.infer(a, env)?;
                let pb = self.infer(b, env)?;
                self.solver.unify(&pa.ty, &pb.ty).map_err(|m| {
                    self.err(
                        TypeErrorCode::TypeMismatch,
                        span,
                        format!("the two sides of a connective must share one predicate type: {m}"),
                    )
                })?;
                let ty = pa.ty.clone();
                let kind = match &e.kind {
                    ExprKind::And(_, _) => PKind::And(Box::new(pa), Box::new(pb)),
                    _ => PKind::Or(Box::new(pa), Box::new(pb)),
                };
                Ok(PExpr { ty, span, kind })
            }
            ExprKind::Not(x) => {
                let px = self.infer(x, env)?;
                self.solver.unify(&px.ty, &Ty::Omicron).map_err(|m| {
                    self.err(
                        TypeErrorCode::TypeMismatch,
                        span,
                        format!("negation applies only at type o: {m}"),
                    )
                })?;
                Ok(PExpr {
                    ty: Ty::Omicron,
                    span,
                    kind: PKind::Not(Box::new(px)),
                })
            }
            ExprKind::Eq(a, b) => {
                let pa = self.infer(a, env)?;
                let pb = self.infer(b, env)?;
                for (side, p) in [("left", &pa), ("right", &pb)] {
                    self.solver.unify(&p.ty, &Ty::Iota).map_err(|m| {
                        self.err(
                            TypeErrorCode::TypeMismatch,
                            span,
                            format!("the {side} side of `=` must be an individual: {m}"),
                        )
                    })?;
                }
                Ok(PExpr {
                    ty: Ty::Omicron,
                    span,
                    kind: PKind::Eq(Box::new(pa), Box::new(pb)),
                })
            }
            ExprKind::Exists { var, ann, body } => {
                let var_ty = match ann {
                    Some(t) => Ty::from_type_expr(t),
                    None => self.solver.fresh(),
                };
                env.push((var.clone(), var_ty.clone()));
                let pb = self.infer(body, env);
                env.pop();
                let pb = pb?;
                self.solver.unify(&pb.ty, &Ty::Omicron).map_err(|m| {
                    self.err(
                        TypeErrorCode::TypeMismatch,
                        span,
                        format!("the body of `exists` must have type o: {m}"),
                    )
                })?;
                Ok(PExpr {
                    ty: Ty::Omicron,
                    span,
                    kind: PKind::Exists {
                        var: var.clone(),
                        var_ty,
                        body: Box::new(pb),
                    },
                })
            }
        }
    }

    /// Substitute solved types; reject leftover placeholders and nodes
    /// whose solved types violate the grammar's side conditions.
    fn resolve(&self, p: PExpr) -> Result<TExpr, TypeError> {
        let ty = self.solver.deep(&p.ty).ok_or_else(|| {
            self.err(
                TypeErrorCode::UninferableBinder,
                p.span,
                "the type of this expression is not determined by its uses; add an annotation",
            )
        })?;
        let span = p.span;
        let kind = match p.kind {
            PKind::Var(v) => TExprKind::Var(v),
            PKind::Const(c) => TExprKind::Const(c),
            PKind::True => TExprKind::True,
            PKind::False => TExprKind::False,
            PKind::App(f, x) => {
                TExprKind::App(Box::new(self.resolve(*f)?), Box::new(self.resolve(*x)?))
            }
            PKind::Lambda { var, var_ty, body } => {
                let var_ty = self.solver.deep(&var_ty).ok_or_else(|| {
                    self.err(
                        TypeErrorCode::UninferableBinder,
                        span,
                        format!("the type of `{var}` is not determined by its uses; annotate the binder"),
                    )
                })?;
                let body = self.resolve(*body)?;
                if !body.ty.is_predicate() {
                    return Err(self.err(
                        TypeErrorCode::TypeMismatch,
                        span,
                        format!(
                            "a lambda body must have a predicate type, found {}",
                            body.ty
                        ),
                    ));
                }
                TExprKind::Lambda {
                    var,
                    var_ty,
                    body: Box::new(body),
                }
            }
            PKind::And(a, b) => {
                let (a, b) = (self.resolve(*a)?, self.resolve(*b)?);
                if !a.ty.is_predicate() {
                    return Err(self.err(
                        TypeErrorCode::TypeMismatch,
                        span,
                        format!("`&` applies at predicate types only, found {}", a.ty),
                    ));
                }
                TExprKind::And(Box::new(a), Box::new(b))
            }
            PKind::Or(a, b) => {
                let (a, b) = (self.resolve(*a)?, self.resolve(*b)?);
                if !a.ty.is_predicate() {
                    return Err(self.err(
                        TypeErrorCode::TypeMismatch,
                        span,
                        format!("`|` applies at predicate types only, found {}", a.ty),
                    ));
                }
                TExprKind::Or(Box::new(a), Box::new(b))
            }
            PKind::Not(x) => TExprKind::Not(Box::new(self.resolve(*x)?)),
            PKind::Eq(a, b) => {
                TExprKind::Eq(Box::new(self.resolve(*a)?), Box::new(self.resolve(*b)?))
            }
            PKind::Exists { var, var_ty, body } => {
                let var_ty = self.solver.deep(&var_ty).ok_or_else(|| {
                    self.err(
                        TypeErrorCode::UninferableBinder,
                        span,
                        format!("the type of `{var}` is not determined by its uses; annotate the binder"),
                    )
                })?;
                TExprKind::Exists {
                    var,
                    var_ty,
                    body: Box::new(self.resolve(*body)?),
                }
            }
        };
        Ok(TExpr { ty, span, kind })
    }
}

// ----- program checking --------------------------------------------------

/// Check a parsed program. On failure returns every diagnostic found.
pub fn check_program(raw: &RawProgram) -> Result<TypedProgram, Vec<TypeError>> {
    let src = raw.source.as_str();
    let mut errors: Vec<TypeError> = Vec::new();

    let mut predicate_types: BTreeMap<String, TypeExpr> = BTreeMap::new();
    let mut individual_constants: Vec<String> = Vec::new();
    let mut function_symbols: BTreeMap<String, usize> = BTreeMap::new();
    let mut seen: BTreeMap<&str, &TypeExpr> = BTreeMap::new();

    for d in &raw.decls {
        if let Some(prev) = seen.get(d.name.as_str()) {
            errors.push(TypeError::new(
                TypeErrorCode::TypeMismatch,
                format!("`{}` is declared twice (previously as {})", d.name, prev),
                Some(d.span),
                src,
            ));
            continue;
        }
        seen.insert(&d.name, &d.ty);
        match &d.ty {
            TypeExpr::Iota => individual_constants.push(d.name.clone()),
            TypeExpr::Fun(n) => {
                function_symbols.insert(d.name.clone(), *n);
                errors.push(TypeError::new(
                    TypeErrorCode::FunctionSymbols,
                    format!(
                        "function symbol `{}` (arity {}) would make the ground universe infinite; only individual and predicate constants are supported",
                        d.name, n
                    ),
                    Some(d.span),
                    src,
                ));
            }
            t if t.is_predicate() => {
                predicate_types.insert(d.name.clone(), d.ty.clone());
            }
            _ => unreachable!("parser only builds iota, function, and predicate types"),
        }
    }
    individual_constants.sort();

    let mut clauses = Vec::new();
    for c in &raw.clauses {
        let head_ty = match predicate_types.get(&c.head) {
            Some(t) => t.clone(),
            None => {
                let (code, msg) = if individual_constants.iter().any(|n| n == &c.head) {
                    (
                        TypeErrorCode::TypeMismatch,
                        format!(
                            "clause head `{}` is an individual constant, not a predicate",
                            c.head
                        ),
                    )
                } else if function_symbols.contains_key(&c.head) {
                    (
                        TypeErrorCode::FunctionSymbols,
                        format!("clause head `{}` is a function symbol", c.head),
                    )
                } else {
                    (
                        TypeErrorCode::MissingDeclaration,
                        format!(
                            "clause head `{}` has no declaration; add `{} : <type>.`",
                            c.head, c.head
                        ),
                    )
                };
                errors.push(TypeError::new(code, msg, Some(c.head_span), src));
                continue;
            }
        };
        let free = c.body.free_vars();
        if !free.is_empty() {
            errors.push(TypeError::new(
                TypeErrorCode::OpenClauseBody,
                format!(
                    "clause body must be closed; free variable{} {}",
                    if free.len() == 1 { "" } else { "s" },
                    free.join(", ")
                ),
                Some(c.body.span),
                src,
            ));
            continue;
        }
        let mut checker = Checker {
            sig: Sig {
                predicate_types: &predicate_types,
                individual_constants: &individual_constants,
            },
            src,
            solver: Solver::default(),
        };
        let mut env = Vec::new();
        let result = checker.infer(&c.body, &mut env).and_then(|p| {
            checker
                .solver
                .unify(&p.ty, &Ty::from_type_expr(&head_ty))
                .map_err(|m| {
                    checker.err(
                        TypeErrorCode::TypeMismatch,
                        c.body.span,
                        format!("clause body must have the head's type {head_ty}: {m}"),
                    )
                })?;
            checker.resolve(p)
        });
        match result {
            Ok(body) => clauses.push(TypedClause {
                head: c.head.clone(),
                ty: head_ty,
                head_span: c.head_span,
                body,
            }),
            Err(e) => errors.push(e),
        }
    }

    if errors.is_empty() {
        Ok(TypedProgram {
            predicate_types,
            individual_constants,
            function_symbols: BTreeMap::new(),
            clauses,
        })
    } else {
        Err(errors)
    }
}

/// Check a standalone query against a checked program's signature.
/// Queries must be closed and of type `o`.
pub fn check_query(prog: &TypedProgram, src: &str, e: &Expr) -> Result<TExpr, TypeError> {
    let free = e.free_vars();
    if let Some(v) = free.first() {
        return Err(TypeError::new(
            TypeErrorCode::UnboundVariable,
            format!("queries must be closed; variable `{v}` is free"),
            Some(e.span),
            src,
        ));
    }
    let mut checker = Checker {
        sig: Sig {
            predicate_types: &prog.predicate_types,
            individual_constants: &prog.individual_constants,
        },
        src,
        solver: Solver::default(),
    };
    let mut env = Vec::new();
    let p = checker.infer(e, &mut env)?;
    checker.solver.unify(&p.ty, &Ty::Omicron).map_err(|m| {
        checker.err(
            TypeErrorCode::TypeMismatch,
            e.span,
            format!("queries must have type o: {m}"),
        )
    })?;
    checker.resolve(p)
}
