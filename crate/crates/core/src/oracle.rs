//! Independent reference semantics for the propositional fragment.
//!
//! Programs whose predicates are all of type `o` and whose clause
//! bodies are conjunctions of literals lower to plain normal logic
//! programs. For those, the well-founded truth values are recomputed
//! here by a completely different route than the engine takes: the
//! classic alternating construction over reducts. Given a set `S` of
//! atoms assumed true, `gamma(S)` is the least model of the program
//! with every rule mentioning `not b` for `b` in `S` deleted and all
//! remaining negative literals erased. `gamma` is antitone, so its
//! square is monotone; the least fixpoint `L` of the square (true
//! atoms) and its companion `G = gamma(L)` (possible atoms) classify
//! every atom as true, false, or undefined.
//!
//! The module also carries the program generators the differential
//! suites draw from, and the comparison driver that runs one source
//! text through both the engine and this oracle.

use crate::aft::AftError;
use crate::domains::Truth3;
use crate::engine::{load_program, Engine, ProgramError};
use crate::typesys::{TExpr, TExprKind, TypedProgram};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("not in normal form: {0}")]
    NotNormalForm(String),
    #[error("the oracle handles at most {max} atoms, got {got}")]
    TooManyAtoms { max: usize, got: usize },
}

/// One rule `head <- pos... & ~neg...` over atom indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalRule {
    pub head: usize,
    pub pos: BTreeSet<usize>,
    pub neg: BTreeSet<usize>,
}

/// A propositional normal program over named atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalProgram {
    pub atoms: Vec<String>,
    pub rules: Vec<NormalRule>,
}

const MAX_ATOMS: usize = 64;

impl NormalProgram {
    fn atom_count_checked(&self) -> Result<usize, OracleError> {
        if self.atoms.len() > MAX_ATOMS {
            Err(OracleError::TooManyAtoms {
                max: MAX_ATOMS,
                got: self.atoms.len(),
            })
        } else {
            Ok(self.atoms.len())
        }
    }

    fn rule_masks(&self) -> Vec<(usize, u64, u64)> {
        self.rules
            .iter()
            .map(|r| {
                let pos = r.pos.iter().fold(0u64, |m, &i| m | (1 << i));
                let neg = r.neg.iter().fold(0u64, |m, &i| m | (1 << i));
                (r.head, pos, neg)
            })
            .collect()
    }
}

/// Least model of the reduct of `p` with respect to the true-atom set
/// `s` (as a bitmask).
fn gamma(masks: &[(usize, u64, u64)], s: u64) -> u64 {
    let mut m = 0u64;
    loop {
        let mut next = m;
        for &(head, pos, neg) in masks {
            if neg & s != 0 {
                continue; // a negated atom is true: rule deleted
            }
            if pos & !m == 0 {
                next |= 1 << head;
            }
        }
        if next == m {
            return m;
        }
        m = next;
    }
}

/// Well-founded truth value of every atom, by the alternating
/// construction.
pub fn well_founded_truths(p: &NormalProgram) -> Result<BTreeMap<String, Truth3>, OracleError> {
    p.atom_count_checked()?;
    let masks = p.rule_masks();
    let mut l = 0u64;
    loop {
        let next = gamma(&masks, gamma(&masks, l));
        debug_assert_eq!(next | l, next, "square iteration must ascend");
        if next == l {
            break;
        }
        l = next;
    }
    let g = gamma(&masks, l);
    let mut out = BTreeMap::new();
    for (i, name) in p.atoms.iter().enumerate() {
        let bit = 1u64 << i;
        let v = if l & bit != 0 {
            Truth3::True
        } else if g & bit == 0 {
            Truth3::False
        } else {
            Truth3::Undef
        };
        out.insert(name.clone(), v);
    }
    Ok(out)
}

/// All two-valued stable models, by brute force over atom sets: `M` is
/// stable exactly when it is the least model of its own reduct.
pub fn two_valued_stable_models(p: &NormalProgram) -> Result<Vec<BTreeSet<String>>, OracleError> {
    let n = p.atom_count_checked()?;
    if n > 20 {
        return Err(OracleError::TooManyAtoms { max: 20, got: n });
    }
    let masks = p.rule_masks();
    let mut out = Vec::new();
    for m in 0u64..(1 << n) {
        if gamma(&masks, m) == m {
            out.push(
                p.atoms
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m & (1 << i) != 0)
                    .map(|(_, a)| a.clone())
                    .collect(),
            );
        }
    }
    Ok(out)
}

// ----- lowering ----------------------------------------------------------

/// Lower a checked program to a normal program, when every predicate
/// has type `o` and every clause body is a conjunction of literals
/// (`true`, an atom, or a negated atom).
pub fn lower_program(prog: &TypedProgram) -> Result<NormalProgram, OracleError> {
    for (name, ty) in &prog.predicate_types {
        if *ty != crate::syntax::TypeExpr::Omicron {
            return Err(OracleError::NotNormalForm(format!(
                "predicate `{name}` has type {ty}, not o"
            )));
        }
    }
    let atoms: Vec<String> = prog.predicate_types.keys().cloned().collect();
    let index: BTreeMap<&str, usize> = atoms
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();
    let mut rules = Vec::new();
    for clause in &prog.clauses {
        let mut pos = BTreeSet::new();
        let mut neg = BTreeSet::new();
        collect_literals(&clause.body, &index, &mut pos, &mut neg)?;
        rules.push(NormalRule {
            head: index[clause.head.as_str()],
            pos,
            neg,
        });
    }
    Ok(NormalProgram { atoms, rules })
}

fn collect_literals(
    e: &TExpr,
    index: &BTreeMap<&str, usize>,
    pos: &mut BTreeSet<usize>,
    neg: &mut BTreeSet<usize>,
) -> Result<(), OracleError> {
    match &e.kind {
        TExprKind::True => Ok(()),
        TExprKind::Const(c) => {
            pos.insert(index[c.as_str()]);
            Ok(())
        }
        TExprKind::Not(inner) => match &inner.kind {
            TExprKind::Const(c) => {
                neg.insert(index[c.as_str()]);
                Ok(())
            }
            other => Err(OracleError::NotNormalForm(format!(
                "negation of a non-atom: {other:?}"
            ))),
        },
        TExprKind::And(a, b) => {
            collect_literals(a, index, pos, neg)?;
            collect_literals(b, index, pos, neg)
        }
        other => Err(OracleError::NotNormalForm(format!(
            "body construct outside the conjunction-of-literals fragment: {other:?}"
        ))),
    }
}

// ----- differential comparison -------------------------------------------

#[derive(Debug, Error)]
pub enum DifferentialError {
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Engine(#[from] AftError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// One disagreement between the engine and the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub atom: String,
    pub engine: Truth3,
    pub oracle: Truth3,
}

/// Run one program through both pipelines and report disagreements.
pub fn differential_check(src: &str) -> Result<Vec<Mismatch>, DifferentialError> {
    let typed = load_program(src)?;
    let oracle = well_founded_truths(&lower_program(&typed)?)?;
    let engine = Engine::with_default_cap(typed);
    let wf = engine.well_founded(0)?;
    let mut out = Vec::new();
    for (atom, want) in oracle {
        let got = wf.model[&atom]
            .as_t3()
            .expect("propositional predicates evaluate to truth values");
        if got != want {
            out.push(Mismatch {
                atom,
                engine: got,
                oracle: want,
            });
        }
    }
    Ok(out)
}

// ----- program generators --------------------------------------------------

const ATOM_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// The candidate rule bodies over two atoms: `true`, single literals,
/// and two-literal conjunctions with at least one negation.
fn two_atom_bodies() -> Vec<&'static str> {
    vec![
        "true", "a", "b", "~a", "~b", "a & ~a", "a & ~b", "b & ~a", "b & ~b",
    ]
}

/// Every program over atoms `a`, `b` built from at most three of the
/// candidate rules (heads times bodies), as source text.
pub fn exhaustive_small_programs() -> Vec<String> {
    let mut rules = Vec::new();
    for head in ["a", "b"] {
        for body in two_atom_bodies() {
            rules.push(format!("{head} <- {body}."));
        }
    }
    let header = "a : o.\nb : o.\n";
    let mut out = Vec::new();
    out.push(header.to_string());
    let n = rules.len();
    for rule in &rules {
        out.push(format!("{header}{rule}\n"));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(format!("{header}{}\n{}\n", rules[i], rules[j]));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                out.push(format!(
                    "{header}{}\n{}\n{}\n",
                    rules[i], rules[j], rules[k]
                ));
            }
        }
    }
    out
}

/// One random normal program as source text: up to `max_atoms` atoms
/// and `max_rules` rules, bodies built by independently including each
/// atom positively, negatively, or not at all.
pub fn random_program(rng: &mut impl Rng, max_atoms: usize, max_rules: usize) -> String {
    let n_atoms = rng.gen_range(1..=max_atoms.min(ATOM_NAMES.len()));
    let atoms = &ATOM_NAMES[..n_atoms];
    let n_rules = rng.gen_range(0..=max_rules);
    let mut out = String::new();
    for a in atoms {
        out.push_str(a);
        out.push_str(" : o.\n");
    }
    for _ in 0..n_rules {
        let head = atoms[rng.gen_range(0..n_atoms)];
        let mut lits = Vec::new();
        for a in atoms {
            match rng.gen_range(0..4) {
                0 => lits.push((*a).to_string()),
                1 => lits.push(format!("~{a}")),
                _ => {}
            }
        }
        let body = if lits.is_empty() {
            "true".to_string()
        } else {
            lits.join(" & ")
        };
        out.push_str(&format!("{head} <- {body}.\n"));
    }
    out
}

/// A deterministic batch of random programs from a fixed seed.
pub fn random_programs(seed: u64, count: usize) -> Vec<String> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_program(&mut rng, 4, 6)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn normal(src: &str) -> NormalProgram {
        lower_program(&load_program(src).unwrap()).unwrap()
    }

    fn truths(src: &str) -> BTreeMap<String, Truth3> {
        well_founded_truths(&normal(src)).unwrap()
    }

    #[test]
    fn facts_are_true_and_unsupported_atoms_false() {
        let t = truths("a : o. b : o. a <- true.");
        assert_eq!(t["a"], Truth3::True);
        assert_eq!(t["b"], Truth3::False);
    }

    #[test]
    fn negation_loop_is_undefined() {
        let t = truths("r : o. r <- ~r.");
        assert_eq!(t["r"], Truth3::Undef);
    }

    #[test]
    fn even_loop_is_undefined_and_has_two_exact_stable_models() {
        let src = "p : o. q : o. p <- ~q. q <- ~p.";
        let t = truths(src);
        assert_eq!(t["p"], Truth3::Undef);
        assert_eq!(t["q"], Truth3::Undef);
        let stable = two_valued_stable_models(&normal(src)).unwrap();
        assert_eq!(
            stable,
            vec![
                BTreeSet::from(["p".to_string()]),
                BTreeSet::from(["q".to_string()]),
            ]
        );
    }

    #[test]
    fn alternating_chain_classifies_all_three_ways() {
        let t = truths("a : o. b : o. c : o. a <- ~b. b <- ~c. c <- true.");
        assert_eq!(t["a"], Truth3::True);
        assert_eq!(t["b"], Truth3::False);
        assert_eq!(t["c"], Truth3::True);
    }

    #[test]
    fn true_atoms_lie_inside_every_stable_model() {
        let srcs = [
            "a : o. b : o. a <- true. b <- ~a.",
            "p : o. q : o. r : o. p <- ~q. q <- ~p. r <- p.",
            "a : o. b : o. c : o. a <- ~b. b <- ~c. c <- true.",
        ];
        for src in srcs {
            let p = normal(src);
            let t = well_founded_truths(&p).unwrap();
            let trues: BTreeSet<String> = t
                .iter()
                .filter(|(_, v)| **v == Truth3::True)
                .map(|(k, _)| k.clone())
                .collect();
            let possibles: BTreeSet<String> = t
                .iter()
                .filter(|(_, v)| **v != Truth3::False)
                .map(|(k, _)| k.clone())
                .collect();
            for m in two_valued_stable_models(&p).unwrap() {
                assert!(trues.is_subset(&m), "{src}: {trues:?} not within {m:?}");
                assert!(
                    m.is_subset(&possibles),
                    "{src}: {m:?} outside {possibles:?}"
                );
            }
        }
    }

    #[test]
    fn non_normal_bodies_are_rejected() {
        let typed = load_program("p : o. p <- ~(~p).").unwrap();
        assert!(matches!(
            lower_program(&typed),
            Err(OracleError::NotNormalForm(_))
        ));
        let typed = load_program("p : o. q : o. p <- p | q.").unwrap();
        assert!(matches!(
            lower_program(&typed),
            Err(OracleError::NotNormalForm(_))
        ));
        let typed = load_program("p : o->o. p <- \\R. R.").unwrap();
        assert!(matches!(
            lower_program(&typed),
            Err(OracleError::NotNormalForm(_))
        ));
    }

    #[test]
    fn engine_and_oracle_agree_on_hand_programs() {
        for src in [
            "a : o. b : o. a <- true. b <- ~a.",
            "p : o. q : o. p <- ~q. q <- ~p.",
            "r : o. r <- ~r.",
            "a : o. b : o. c : o. a <- ~b. b <- ~c. c <- true.",
            "a : o. b : o. a <- a.",
            "a : o. b : o. a <- b & ~a.",
        ] {
            let mismatches = differential_check(src).unwrap();
            assert!(mismatches.is_empty(), "{src}: {mismatches:?}");
        }
    }

    #[test]
    fn exhaustive_generator_produces_the_expected_count() {
        let programs = exhaustive_small_programs();
        assert_eq!(programs.len(), 1 + 18 + 153 + 816);
        assert_eq!(
            programs,
            exhaustive_small_programs(),
            "must be deterministic"
        );
    }

    #[test]
    fn random_generator_is_seed_deterministic() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            assert_eq!(random_program(&mut r1, 4, 6), random_program(&mut r2, 4, 6));
        }
        let mut r3 = ChaCha8Rng::seed_from_u64(8);
        let different =
            (0..10).any(|_| random_program(&mut r3, 4, 6) != random_program(&mut r1, 4, 6));
        assert!(different, "different seeds should give different streams");
    }

    #[test]
    fn random_programs_parse_and_lower() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let src = random_program(&mut rng, 4, 6);
            let typed = load_program(&src).unwrap_or_else(|e| panic!("{src}: {e}"));
            lower_program(&typed).unwrap_or_else(|e| panic!("{src}: {e}"));
        }
    }
}
