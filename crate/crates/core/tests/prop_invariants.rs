//! Property tests: the pretty printer and parser are mutual inverses
//! on randomly generated types and expressions, and the three-valued /
//! pair-of-estimates conversion is a round trip that preserves both
//! orders at individual-heavy types not covered exhaustively elsewhere.

use holwfs_core::bijection::TauContext;
use holwfs_core::diag::Span;
use holwfs_core::domains::{DomainStore, Flavor};
use holwfs_core::syntax::{
    parse_expr, parse_type_text, pretty_expr, pretty_type, Expr, ExprKind, TypeExpr,
};
use proptest::option;
use proptest::prelude::*;
use proptest::sample::Index;
use std::sync::{Arc, OnceLock};

fn mk(kind: ExprKind) -> Expr {
    Expr::new(Span::new(0, 0), kind)
}

fn var_name() -> impl Strategy<Value = String> {
    "[A-Z][a-z0-9]{0,3}"
}

fn const_name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9]{0,3}".prop_filter("reserved word", |s| {
        !matches!(s.as_str(), "true" | "false" | "exists" | "i" | "o")
    })
}

fn pred_type(depth: u32) -> BoxedStrategy<TypeExpr> {
    if depth == 0 {
        Just(TypeExpr::Omicron).boxed()
    } else {
        prop_oneof![
            2 => Just(TypeExpr::Omicron),
            1 => (arg_type(depth - 1), pred_type(depth - 1)).prop_map(|(a, r)| {
                TypeExpr::pred(a, r).expect("argument types are i or predicate types")
            }),
        ]
        .boxed()
    }
}

fn arg_type(depth: u32) -> BoxedStrategy<TypeExpr> {
    prop_oneof![2 => Just(TypeExpr::Iota), 1 => pred_type(depth)].boxed()
}

/// Individual-level terms: the only shapes the grammar allows around `=`.
fn ind_term() -> impl Strategy<Value = Expr> {
    prop_oneof![
        var_name().prop_map(|v| mk(ExprKind::Var(v))),
        const_name().prop_map(|c| mk(ExprKind::Const(c))),
    ]
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        var_name().prop_map(|v| mk(ExprKind::Var(v))),
        const_name().prop_map(|c| mk(ExprKind::Const(c))),
        Just(mk(ExprKind::True)),
        Just(mk(ExprKind::False)),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| mk(ExprKind::App(Box::new(a), Box::new(b)))),
            (var_name(), option::of(arg_type(2)), inner.clone()).prop_map(|(var, ann, body)| {
                mk(ExprKind::Lambda {
                    var,
                    ann,
                    body: Box::new(body),
                })
            }),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| mk(ExprKind::And(Box::new(a), Box::new(b)))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| mk(ExprKind::Or(Box::new(a), Box::new(b)))),
            inner.clone().prop_map(|a| mk(ExprKind::Not(Box::new(a)))),
            (ind_term(), ind_term()).prop_map(|(a, b)| mk(ExprKind::Eq(Box::new(a), Box::new(b)))),
            (var_name(), option::of(arg_type(2)), inner).prop_map(|(var, ann, body)| {
                mk(ExprKind::Exists {
                    var,
                    ann,
                    body: Box::new(body),
                })
            }),
        ]
    })
}

proptest! {
    #[test]
    fn type_pretty_then_parse_is_identity(ty in pred_type(3)) {
        let text = pretty_type(&ty);
        let back = parse_type_text(&text)
            .unwrap_or_else(|e| panic!("`{text}` failed to re-parse: {e}"));
        prop_assert_eq!(back, ty, "printed as `{}`", text);
    }

    #[test]
    fn argument_type_pretty_then_parse_is_identity(ty in arg_type(3)) {
        let text = pretty_type(&ty);
        let back = parse_type_text(&text)
            .unwrap_or_else(|e| panic!("`{text}` failed to re-parse: {e}"));
        prop_assert_eq!(back, ty, "printed as `{}`", text);
    }

    #[test]
    fn expr_pretty_then_parse_is_identity(e in expr_strategy()) {
        let text = pretty_expr(&e);
        let back = parse_expr(&text)
            .unwrap_or_else(|err| panic!("`{text}` failed to re-parse: {err}"));
        prop_assert_eq!(back, e, "printed as `{}`", text);
    }
}

/// Shared enumeration spaces for the conversion properties, built once:
/// a two-individual and a three-individual universe.
fn spaces() -> &'static [(Arc<DomainStore>, TauContext)] {
    static SPACES: OnceLock<Vec<(Arc<DomainStore>, TauContext)>> = OnceLock::new();
    SPACES.get_or_init(|| {
        [vec!["a", "b"], vec!["a", "b", "c"]]
            .into_iter()
            .map(|names| {
                let store = Arc::new(DomainStore::new(
                    names.into_iter().map(str::to_string).collect(),
                    100_000,
                ));
                let tau = TauContext::new(store.clone());
                (store, tau)
            })
            .collect()
    })
}

fn conversion_types() -> Vec<TypeExpr> {
    ["i->o", "i->i->o", "(i->o)->o"]
        .iter()
        .map(|t| parse_type_text(t).expect("fixed type parses"))
        .collect()
}

proptest! {
    #[test]
    fn conversion_round_trips_at_individual_types(
        which_space in 0usize..2,
        which_ty in 0usize..3,
        i in any::<Index>(),
    ) {
        // The doubly higher-order type only fits the cap over the
        // smaller universe: its key space grows with 3^(3^|D|).
        let which_space = if which_ty == 2 { 0 } else { which_space };
        let (store, tau) = &spaces()[which_space];
        let ty = &conversion_types()[which_ty];
        let three = store.enumerate(ty, Flavor::Three).expect("domain fits the cap");
        let pair = store.enumerate(ty, Flavor::Pair).expect("domain fits the cap");

        let v = i.get(three.elems());
        let (lo, hi) = tau.tau(ty, v).expect("conversion is total");
        prop_assert!(store.leq(&lo, &hi).expect("comparable"), "estimates stay consistent");
        let back = tau.tau_inv(ty, &lo, &hi).expect("conversion is total");
        prop_assert_eq!(&back, v);

        let pv = i.get(pair.elems());
        let (plo, phi) = pv.as_pair().expect("pair domain holds pairs");
        let mid = tau.tau_inv(ty, plo, phi).expect("conversion is total");
        prop_assert!(three.index_of(&mid).is_some(), "image is a three-valued table");
        let (lo2, hi2) = tau.tau(ty, &mid).expect("conversion is total");
        prop_assert_eq!((&lo2, &hi2), (plo, phi));
    }

    #[test]
    fn conversion_preserves_both_orders(
        which_space in 0usize..2,
        which_ty in 0usize..3,
        i in any::<Index>(),
        j in any::<Index>(),
    ) {
        let which_space = if which_ty == 2 { 0 } else { which_space };
        let (store, tau) = &spaces()[which_space];
        let ty = &conversion_types()[which_ty];
        let three = store.enumerate(ty, Flavor::Three).expect("domain fits the cap");
        let pair = store.enumerate(ty, Flavor::Pair).expect("domain fits the cap");

        let f = i.get(three.elems());
        let g = j.get(three.elems());
        let pf = tau.tau_pair(ty, f).expect("conversion is total");
        let pg = tau.tau_pair(ty, g).expect("conversion is total");
        if store.preceq(f, g).expect("comparable") {
            prop_assert!(store.preceq(&pf, &pg).expect("comparable"));
        }
        if store.leq(f, g).expect("comparable") {
            prop_assert!(store.leq(&pf, &pg).expect("comparable"));
        }

        let pf = i.get(pair.elems());
        let pg = j.get(pair.elems());
        let f = tau.tau_inv_pair(ty, pf).expect("conversion is total");
        let g = tau.tau_inv_pair(ty, pg).expect("conversion is total");
        if store.preceq(pf, pg).expect("comparable") {
            prop_assert!(store.preceq(&f, &g).expect("comparable"));
        }
        if store.leq(pf, pg).expect("comparable") {
            prop_assert!(store.leq(&f, &g).expect("comparable"));
        }
    }
}
