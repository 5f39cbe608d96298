//! Three-valued denotational semantics for checked programs.
//!
//! An interpretation assigns every declared predicate a monotone
//! three-valued table over the ground universe. Expressions evaluate
//! compositionally: application is table lookup, lambdas tabulate their
//! bodies over the argument domain, `&`/`|` are the truth-order meet
//! and join, `~` is the truth complement at `o`, `=` compares ground
//! individuals (always to `true` or `false`), and `exists` joins the
//! body over every element of the bound variable's domain.
//!
//! `psi` is the one-step consequence operator: each predicate maps to
//! the truth-order join of its clause bodies (everywhere-false when it
//! has no clauses). An interpretation is a model when every clause body
//! evaluates below the head's value.

use crate::domains::{DomainError, DomainStore, Flavor, SemValue, Truth3};
use crate::typesys::{TExpr, TExprKind, TypedProgram};
use std::collections::BTreeMap;

/// Predicate name → three-valued table (or truth value at type `o`).
pub type Interp = BTreeMap<String, SemValue>;

/// The ground universe a program runs over: its declared individual
/// constants in sorted order, or one synthetic element when it
/// declares none (so quantifiers always range over something).
pub fn ground_universe(prog: &TypedProgram) -> Vec<String> {
    if prog.individual_constants.is_empty() {
        vec!["c0".to_string()]
    } else {
        prog.individual_constants.clone()
    }
}

/// The everywhere-false interpretation (bottom of the truth order).
pub fn bottom_interp(store: &DomainStore, prog: &TypedProgram) -> Result<Interp, DomainError> {
    prog.predicate_types
        .iter()
        .map(|(name, ty)| Ok((name.clone(), store.three_bottom(ty)?)))
        .collect()
}

/// Evaluate a closed, checked expression under an interpretation.
pub fn eval(store: &DomainStore, interp: &Interp, e: &TExpr) -> Result<SemValue, DomainError> {
    let mut env = Vec::new();
    eval_in(store, interp, e, &mut env)
}

fn eval_in(
    store: &DomainStore,
    interp: &Interp,
    e: &TExpr,
    env: &mut Vec<(String, SemValue)>,
) -> Result<SemValue, DomainError> {
    match &e.kind {
        TExprKind::Var(v) => Ok(env
            .iter()
            .rev()
            .find(|(n, _)| n == v)
            .expect("checked expressions have no unbound variables")
            .1
            .clone()),
        TExprKind::Const(c) => {
            if let Some(val) = interp.get(c) {
                Ok(val.clone())
            } else {
                let idx = store
                    .universe()
                    .iter()
                    .position(|n| n == c)
                    .unwrap_or_else(|| {
                        panic!("constant `{c}` missing from universe and interpretation")
                    });
                Ok(SemValue::Ind(idx))
            }
        }
        TExprKind::True => Ok(SemValue::T3(Truth3::True)),
        TExprKind::False => Ok(SemValue::T3(Truth3::False)),
        TExprKind::App(f, x) => {
            let vf = eval_in(store, interp, f, env)?;
            let vx = eval_in(store, interp, x, env)?;
            let arg_ty = match &f.ty {
                crate::syntax::TypeExpr::Pred(a, _) => a.as_ref(),
                other => {
                    return Err(DomainError::ShapeMismatch(format!(
                        "applied a value of non-predicate type {other}"
                    )))
                }
            };
            let dom = store.arg_domain(arg_ty, Flavor::Three)?;
            let idx = dom.index_of(&vx).ok_or_else(|| {
                DomainError::ShapeMismatch(format!(
                    "argument value is not an element of the domain of {arg_ty}"
                ))
            })?;
            let table = vf.as_table().ok_or_else(|| {
                DomainError::ShapeMismatch("applied a non-table value".to_string())
            })?;
            Ok(table[idx].clone())
        }
        TExprKind::Lambda { var, var_ty, body } => {
            let dom = store.arg_domain(var_ty, Flavor::Three)?;
            let mut entries = Vec::with_capacity(dom.len());
            for key in dom.elems() {
                env.push((var.clone(), key.clone()));
                let out = eval_in(store, interp, body, env);
                env.pop();
                entries.push(out?);
            }
            Ok(SemValue::Table(entries))
        }
        TExprKind::And(a, b) => {
            let va = eval_in(store, interp, a, env)?;
            let vb = eval_in(store, interp, b, env)?;
            store.meet(&va, &vb)
        }
        TExprKind::Or(a, b) => {
            let va = eval_in(store, interp, a, env)?;
            let vb = eval_in(store, interp, b, env)?;
            store.join(&va, &vb)
        }
        TExprKind::Not(x) => {
            let vx = eval_in(store, interp, x, env)?;
            let t = vx.as_t3().ok_or_else(|| {
                DomainError::ShapeMismatch("negated a non-truth value".to_string())
            })?;
            Ok(SemValue::T3(t.complement()))
        }
        TExprKind::Eq(a, b) => {
            let va = eval_in(store, interp, a, env)?;
            let vb = eval_in(store, interp, b, env)?;
            Ok(SemValue::T3(if va == vb {
                Truth3::True
            } else {
                Truth3::False
            }))
        }
        TExprKind::Exists { var, var_ty, body } => {
            let dom = store.arg_domain(var_ty, Flavor::Three)?;
            let mut acc = Truth3::False;
            for key in dom.elems() {
                env.push((var.clone(), key.clone()));
                let out = eval_in(store, interp, body, env);
                env.pop();
                let t = out?.as_t3().ok_or_else(|| {
                    DomainError::ShapeMismatch("exists body produced a non-truth value".to_string())
                })?;
                acc = acc.max(t);
                if acc == Truth3::True {
                    break;
                }
            }
            Ok(SemValue::T3(acc))
        }
    }
}

/// One step of the immediate-consequence operator: each predicate maps
/// to the truth-order join of its clause bodies under `interp`, or the
/// everywhere-false value when it has no clauses.
pub fn psi(
    store: &DomainStore,
    prog: &TypedProgram,
    interp: &Interp,
) -> Result<Interp, DomainError> {
    let mut out = Interp::new();
    for (name, ty) in &prog.predicate_types {
        let mut acc: Option<SemValue> = None;
        for clause in prog.clauses_for(name) {
            let v = eval(store, interp, &clause.body)?;
            acc = Some(match acc {
                None => v,
                Some(prev) => store.join(&prev, &v)?,
            });
        }
        let v = match acc {
            Some(v) => v,
            None => store.three_bottom(ty)?,
        };
        out.insert(name.clone(), v);
    }
    Ok(out)
}

/// Does `m` satisfy every clause, i.e. does each body evaluate at or
/// below the head's value in the truth order?
pub fn is_model(store: &DomainStore, prog: &TypedProgram, m: &Interp) -> Result<bool, DomainError> {
    for clause in &prog.clauses {
        let body = eval(store, m, &clause.body)?;
        let head = m.get(&clause.head).ok_or_else(|| {
            DomainError::ShapeMismatch(format!(
                "interpretation is missing predicate `{}`",
                clause.head
            ))
        })?;
        if !store.leq(&body, head)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::DEFAULT_CAP;
    use crate::syntax::parse_program;
    use crate::typesys::check_program;

    fn setup(src: &str) -> (DomainStore, TypedProgram) {
        let prog = check_program(&parse_program(src).unwrap()).unwrap();
        let store = DomainStore::new(ground_universe(&prog), DEFAULT_CAP);
        (store, prog)
    }

    fn t3(v: &SemValue) -> Truth3 {
        v.as_t3().unwrap()
    }

    #[test]
    fn universe_defaults_to_one_element() {
        let (_, prog) = setup("p : o. p <- true.");
        assert_eq!(ground_universe(&prog), vec!["c0"]);
        let (_, prog) = setup("b : i. a : i. p : o. p <- a = b.");
        assert_eq!(ground_universe(&prog), vec!["a", "b"]);
    }

    #[test]
    fn identity_and_complement_lambdas_tabulate() {
        let (store, prog) = setup("p : o->o. w : o->o. p <- \\R. R. w <- \\R. ~R.");
        let m = psi(&store, &prog, &bottom_interp(&store, &prog).unwrap()).unwrap();
        use Truth3::*;
        assert_eq!(
            m["p"],
            SemValue::Table(vec![
                SemValue::T3(False),
                SemValue::T3(Undef),
                SemValue::T3(True)
            ])
        );
        assert_eq!(
            m["w"],
            SemValue::Table(vec![
                SemValue::T3(True),
                SemValue::T3(Undef),
                SemValue::T3(False)
            ])
        );
    }

    #[test]
    fn connectives_are_pointwise_meet_and_join() {
        let (store, prog) =
            setup("m : o->o. j : o->o. m <- (\\R. R) & (\\R. ~R). j <- (\\R. R) | (\\R. ~R).");
        let m = psi(&store, &prog, &bottom_interp(&store, &prog).unwrap()).unwrap();
        use Truth3::*;
        assert_eq!(
            m["m"],
            SemValue::Table(vec![
                SemValue::T3(False),
                SemValue::T3(Undef),
                SemValue::T3(False)
            ])
        );
        assert_eq!(
            m["j"],
            SemValue::Table(vec![
                SemValue::T3(True),
                SemValue::T3(Undef),
                SemValue::T3(True)
            ])
        );
    }

    #[test]
    fn equality_never_returns_undef() {
        let (store, prog) = setup("a : i. b : i. p : o. q : o. p <- a = a. q <- a = b.");
        let m = psi(&store, &prog, &bottom_interp(&store, &prog).unwrap()).unwrap();
        assert_eq!(t3(&m["p"]), Truth3::True);
        assert_eq!(t3(&m["q"]), Truth3::False);
    }

    #[test]
    fn exists_joins_over_the_universe() {
        let (store, prog) = setup(
            "a : i. b : i. p : i->o. q : o. r : o.\n\
             p <- \\X. X = a.\n\
             q <- exists X. p X.\n\
             r <- exists X. (p X) & (X = b).",
        );
        let m0 = psi(&store, &prog, &bottom_interp(&store, &prog).unwrap()).unwrap();
        let m = psi(&store, &prog, &m0).unwrap();
        assert_eq!(t3(&m["q"]), Truth3::True);
        assert_eq!(t3(&m["r"]), Truth3::False);
    }

    #[test]
    fn defaulted_predicates_are_everywhere_false() {
        let (store, prog) = setup("p : o->o. q : o.");
        let m = psi(&store, &prog, &bottom_interp(&store, &prog).unwrap()).unwrap();
        assert_eq!(
            m["p"],
            store.three_bottom(&prog.predicate_types["p"]).unwrap()
        );
        assert_eq!(t3(&m["q"]), Truth3::False);
    }

    #[test]
    fn subset_queries_evaluate_through_application() {
        let src = "a : i. b : i.\n\
                   p : i->o. q : i->o.\n\
                   subset : (i->o)->(i->o)->o.\n\
                   p <- \\X. X = a.\n\
                   q <- \\X. (X = a) | (X = b).\n\
                   subset <- \\P. \\Q. ~ exists X. (P X) & ~(Q X).";
        let (store, prog) = setup(src);
        let m = psi(&store, &prog, &bottom_interp(&store, &prog).unwrap()).unwrap();
        let q1 = crate::typesys::check_query(
            &prog,
            "subset p q",
            &crate::syntax::parse_expr("subset p q").unwrap(),
        )
        .unwrap();
        let q2 = crate::typesys::check_query(
            &prog,
            "subset q p",
            &crate::syntax::parse_expr("subset q p").unwrap(),
        )
        .unwrap();
        assert_eq!(t3(&eval(&store, &m, &q1).unwrap()), Truth3::True);
        assert_eq!(t3(&eval(&store, &m, &q2).unwrap()), Truth3::False);
    }

    #[test]
    fn model_check_accepts_and_rejects() {
        let (store, prog) = setup("p : o. q : o. p <- ~q. q <- ~p.");
        use Truth3::*;
        let interp = |p: Truth3, q: Truth3| {
            Interp::from([
                ("p".to_string(), SemValue::T3(p)),
                ("q".to_string(), SemValue::T3(q)),
            ])
        };
        assert!(is_model(&store, &prog, &interp(Undef, Undef)).unwrap());
        assert!(is_model(&store, &prog, &interp(True, False)).unwrap());
        assert!(is_model(&store, &prog, &interp(True, True)).unwrap());
        assert!(!is_model(&store, &prog, &interp(False, False)).unwrap());
        assert!(!is_model(&store, &prog, &interp(False, Undef)).unwrap());
    }

    #[test]
    fn psi_is_monotone_on_the_truth_order_for_negation_free_programs() {
        let (store, prog) = setup("a : i. p : i->o. q : o. p <- \\X. X = a. q <- exists X. p X.");
        let bot = bottom_interp(&store, &prog).unwrap();
        let m1 = psi(&store, &prog, &bot).unwrap();
        let m2 = psi(&store, &prog, &m1).unwrap();
        for name in prog.predicate_types.keys() {
            assert!(store.leq(&bot[name], &m1[name]).unwrap());
            assert!(store.leq(&m1[name], &m2[name]).unwrap());
        }
    }
}
