//! Canonical printer. Output always reparses to a structurally equal
//! tree; parentheses are inserted from precedence levels, and binder
//! forms are parenthesized everywhere except positions where their
//! maximal rightward extension cannot capture a following operator.

use super::{Expr, ExprKind, RawProgram, TypeExpr};
use std::fmt::Write as _;

/// Precedence levels, loosest to tightest. Binders get level 0: they are
/// only printed bare where a full expression is expected.
fn level(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Lambda { .. } | ExprKind::Exists { .. } => 0,
        ExprKind::Or(_, _) => 1,
        ExprKind::And(_, _) => 2,
        ExprKind::Not(_) => 3,
        ExprKind::Eq(_, _) => 4,
        ExprKind::App(_, _) | ExprKind::FunApp(_, _) => 5,
        ExprKind::Var(_) | ExprKind::Const(_) | ExprKind::True | ExprKind::False => 6,
    }
}

pub fn pretty_type(ty: &TypeExpr) -> String {
    ty.to_string()
}

pub fn pretty_expr(e: &Expr) -> String {
    let mut out = String::new();
    pp(e, 0, &mut out);
    out
}

fn pp(e: &Expr, min: u8, out: &mut String) {
    if level(e) < min {
        out.push('(');
        pp_bare(e, out);
        out.push(')');
    } else {
        pp_bare(e, out);
    }
}

fn pp_bare(e: &Expr, out: &mut String) {
    match &e.kind {
        ExprKind::Var(n) | ExprKind::Const(n) => out.push_str(n),
        ExprKind::True => out.push_str("true"),
        ExprKind::False => out.push_str("false"),
        ExprKind::FunApp(f, args) => {
            out.push_str(f);
            for a in args {
                out.push(' ');
                pp(a, 6, out);
            }
        }
        ExprKind::App(f, x) => {
            pp(f, 5, out);
            out.push(' ');
            pp(x, 6, out);
        }
        ExprKind::Eq(a, b) => {
            pp(a, 5, out);
            out.push_str(" = ");
            pp(b, 5, out);
        }
        ExprKind::Not(x) => {
            out.push('~');
            pp(x, 3, out);
        }
        ExprKind::And(a, b) => {
            pp(a, 2, out);
            out.push_str(" & ");
            pp(b, 3, out);
        }
        ExprKind::Or(a, b) => {
            pp(a, 1, out);
            out.push_str(" | ");
            pp(b, 2, out);
        }
        ExprKind::Lambda { var, ann, body } => {
            out.push('\\');
            out.push_str(var);
            if let Some(ty) = ann {
                let _ = write!(out, ":{ty}");
            }
            out.push_str(". ");
            pp(body, 0, out);
        }
        ExprKind::Exists { var, ann, body } => {
            out.push_str("exists ");
            out.push_str(var);
            if let Some(ty) = ann {
                let _ = write!(out, ":{ty}");
            }
            out.push_str(". ");
            pp(body, 0, out);
        }
    }
}

/// Print a program, declarations first, one item per line.
pub fn pretty_program(p: &RawProgram) -> String {
    let mut out = String::new();
    for d in &p.decls {
        let _ = writeln!(out, "{} : {}.", d.name, d.ty);
    }
    for c in &p.clauses {
        let _ = writeln!(out, "{} <- {}.", c.head, pretty_expr(&c.body));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{parse_expr, parse_program};
    use super::*;

    fn round(src: &str) {
        let e = parse_expr(src).unwrap();
        let printed = pretty_expr(&e);
        let e2 = parse_expr(&printed)
            .unwrap_or_else(|err| panic!("pretty output `{printed}` failed to parse: {err}"));
        assert_eq!(e, e2, "round trip changed `{src}` -> `{printed}`");
    }

    #[test]
    fn round_trips() {
        for src in [
            "p",
            "s p q",
            "s (p q)",
            "~a & b | c",
            "a | b | c",
            "a | (b | c)",
            "~(a & b)",
            "~~p",
            "\\X. a & b",
            "(\\X. a) & b",
            "\\Q. \\V. Q V",
            "~ exists X. (p X) & ~(q X)",
            "p X & X = a",
            "~(X = a)",
            "f (~x)",
            "exists P:o->o. P a",
        ] {
            round(src);
        }
    }

    #[test]
    fn binders_are_parenthesized_when_followed_by_operators() {
        let e = parse_expr("(\\X. b) & c").unwrap();
        let printed = pretty_expr(&e);
        assert_eq!(printed, "(\\X. b) & c");
    }

    #[test]
    fn program_print_reparses_structurally_equal() {
        let src =
            "s : (o->o)->o->o.\np : o->o.\ns <- \\Q. \\V. Q V.\np <- \\R. R.\nfact : o.\nfact.\n";
        let p = parse_program(src).unwrap();
        let printed = pretty_program(&p);
        let p2 = parse_program(&printed).unwrap();
        assert_eq!(p, p2);
        // The fact shorthand prints in its desugared form.
        assert!(printed.contains("fact <- true."));
    }

    #[test]
    fn types_print_right_associated() {
        let p = parse_program("s : (o->o)->o->o. t : ((i->o)->o)->o. u : i->i->o.").unwrap();
        assert_eq!(pretty_type(&p.decls[0].ty), "(o->o)->o->o");
        assert_eq!(pretty_type(&p.decls[1].ty), "((i->o)->o)->o");
        assert_eq!(pretty_type(&p.decls[2].ty), "i->i->o");
    }
}
