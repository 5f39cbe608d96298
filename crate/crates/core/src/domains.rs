//! Finite semantic domains.
//!
//! Every predicate type denotes a finite set once the universe of
//! individuals is fixed, in four flavors:
//!
//! * `Three` — the three-valued denotation: at `o` the truth values
//!   `false / undef / true`; at `i -> pi` tables over the universe; at
//!   `pi1 -> pi2` tables over the three-valued denotation of `pi1` that
//!   are monotone in the information order `⪯` (`preceq` here).
//! * `Ma` — two-valued tables, keyed at predicate argument types by the
//!   *pair* domain of the argument, monotone from the pair information
//!   order into the truth order.
//! * `Am` — the same keying, antitone instead of monotone.
//! * `Pair` — consistent pairs `(lower, upper)` with `lower ∈ Ma`,
//!   `upper ∈ Am`, `lower ≤ upper` pointwise.
//!
//! Two orders run through everything: the truth order `≤` ([`DomainStore::leq`]),
//! under which every flavor at a fixed type is a complete lattice, and
//! the information order `⪯` ([`DomainStore::preceq`]), a chain-complete
//! partial order on the three-valued and pair flavors.
//!
//! Elements are identified by their position in the deterministic
//! enumeration produced by [`DomainStore::enumerate`]; tables store one
//! entry per canonical argument index, in enumeration order. Structural
//! equality of values therefore decides mathematical equality.

use crate::syntax::TypeExpr;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Default hard cap on the number of elements a single domain may have.
pub const DEFAULT_CAP: usize = 20_000;

/// A truth value of the three-valued logic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Truth3 {
    False,
    Undef,
    True,
}

impl Truth3 {
    pub const ALL: [Truth3; 3] = [Truth3::False, Truth3::Undef, Truth3::True];

    /// Truth order: `false < undef < true`.
    pub fn leq(self, other: Truth3) -> bool {
        self <= other
    }

    /// Information order: `undef` below both `false` and `true`, which
    /// are incomparable with each other.
    pub fn preceq(self, other: Truth3) -> bool {
        self == other || self == Truth3::Undef
    }

    /// `true⁻¹ = false`, `false⁻¹ = true`, `undef⁻¹ = undef`.
    pub fn complement(self) -> Truth3 {
        match self {
            Truth3::False => Truth3::True,
            Truth3::Undef => Truth3::Undef,
            Truth3::True => Truth3::False,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Truth3::False => "false",
            Truth3::Undef => "undef",
            Truth3::True => "true",
        }
    }

    /// One-letter form, used in compact table keys.
    pub fn as_letter(self) -> &'static str {
        match self {
            Truth3::False => "f",
            Truth3::Undef => "u",
            Truth3::True => "t",
        }
    }
}

impl fmt::Display for Truth3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which denotation of a type a value or domain belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Three,
    Ma,
    Am,
    Pair,
}

/// A point of some semantic domain. The type and flavor are carried by
/// context, not by the value; tables hold one entry per canonical index
/// of their argument domain. `Pair` appears only as the outermost
/// constructor of pair-flavor values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemValue {
    /// Three-valued scalar (type `o`, flavor `Three`).
    T3(Truth3),
    /// Two-valued scalar (type `o`, flavors `Ma`/`Am`).
    T2(bool),
    /// Individual, by canonical index into the universe.
    Ind(usize),
    /// Function table keyed by canonical argument index.
    Table(Vec<SemValue>),
    /// Consistent pair `(lower, upper)`.
    Pair(Box<SemValue>, Box<SemValue>),
}

impl SemValue {
    pub fn pair(lower: SemValue, upper: SemValue) -> SemValue {
        SemValue::Pair(Box::new(lower), Box::new(upper))
    }

    pub fn as_pair(&self) -> Option<(&SemValue, &SemValue)> {
        match self {
            SemValue::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_t3(&self) -> Option<Truth3> {
        match self {
            SemValue::T3(t) => Some(*t),
            _ => None,
        }
    }

    pub fn as_table(&self) -> Option<&[SemValue]> {
        match self {
            SemValue::Table(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum DomainError {
    #[error(
        "domain of {ty} ({flavor:?}) would exceed the cap of {cap} elements (estimate: {estimate})"
    )]
    CapExceeded {
        ty: String,
        flavor: Flavor,
        cap: usize,
        estimate: u128,
    },
    #[error("{ty} is not a predicate type; only predicate types have truth denotations")]
    NotPredicateType { ty: String },
    #[error("value does not inhabit {ty} ({flavor:?}): {reason}")]
    Invalid {
        ty: String,
        flavor: Flavor,
        reason: String,
    },
    #[error("values have mismatched shapes: {0}")]
    ShapeMismatch(String),
    #[error("information-order lub requested on a set that is not a chain")]
    NotAChain,
    #[error("empty join/meet has no value here; use the lattice bottom/top instead")]
    EmptyJoin,
    #[error("individuals are discrete: distinct individuals have no join")]
    DiscreteJoin,
}

type Result<T> = std::result::Result<T, DomainError>;

/// An enumerated domain: the canonical element list plus reverse lookup.
#[derive(Debug)]
pub struct Domain {
    pub ty: TypeExpr,
    pub flavor: Flavor,
    pub elems: Vec<SemValue>,
    index: HashMap<SemValue, usize>,
}

impl Domain {
    fn new(ty: TypeExpr, flavor: Flavor, elems: Vec<SemValue>) -> Self {
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        Domain {
            ty,
            flavor,
            elems,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, v: &SemValue) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn elems(&self) -> &[SemValue] {
        &self.elems
    }
}

/// Table-monotonicity constraint used during enumeration and validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MonotoneKind {
    /// Three-valued tables: `⪯` on keys to `⪯` on values.
    Preceq,
    /// Ma tables: `⪯` on (pair) keys to `≤` on values.
    Leq,
    /// Am tables: `⪯` on (pair) keys to `≥` on values.
    LeqReversed,
}

/// Materializes and caches domains for one universe of individuals.
/// Domains are immutable once built and the cache is synchronized, so a
/// store can be shared freely.
pub struct DomainStore {
    universe: Vec<String>,
    cap: usize,
    cache: Mutex<HashMap<(TypeExpr, Flavor), Arc<Domain>>>,
}

impl DomainStore {
    pub fn new(universe: Vec<String>, cap: usize) -> Self {
        DomainStore {
            universe,
            cap,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn err_invalid(&self, ty: &TypeExpr, flavor: Flavor, reason: impl Into<String>) -> DomainError {
        DomainError::Invalid {
            ty: ty.to_string(),
            flavor,
            reason: reason.into(),
        }
    }

    // ----- enumeration -------------------------------------------------

    /// The canonical element list of `ty` in `flavor`.
    pub fn enumerate(&self, ty: &TypeExpr, flavor: Flavor) -> Result<Arc<Domain>> {
        // `i` has the same elements in every flavor; normalize the key.
        let key_flavor = if *ty == TypeExpr::Iota {
            Flavor::Three
        } else {
            flavor
        };
        let key = (ty.clone(), key_flavor);
        if let Some(d) = self.cache.lock().unwrap().get(&key) {
            return Ok(Arc::clone(d));
        }
        let dom = Arc::new(self.build(ty, key_flavor)?);
        Ok(Arc::clone(
            self.cache.lock().unwrap().entry(key).or_insert_with(|| dom),
        ))
    }

    fn build(&self, ty: &TypeExpr, flavor: Flavor) -> Result<Domain> {
        match ty {
            TypeExpr::Iota => {
                let elems = (0..self.universe.len()).map(SemValue::Ind).collect();
                Ok(Domain::new(ty.clone(), flavor, elems))
            }
            TypeExpr::Fun(_) => Err(DomainError::NotPredicateType { ty: ty.to_string() }),
            TypeExpr::Omicron => {
                let elems = match flavor {
                    Flavor::Three => Truth3::ALL.iter().map(|t| SemValue::T3(*t)).collect(),
                    Flavor::Ma | Flavor::Am => vec![SemValue::T2(false), SemValue::T2(true)],
                    Flavor::Pair => self.build_pairs(ty)?,
                };
                Ok(Domain::new(ty.clone(), flavor, elems))
            }
            TypeExpr::Pred(arg, res) => {
                let elems = match flavor {
                    Flavor::Three => {
                        let keys = self.arg_domain(arg, Flavor::Three)?;
                        let vals = self.enumerate(res, Flavor::Three)?;
                        self.enumerate_tables(ty, flavor, &keys, &vals, MonotoneKind::Preceq)?
                    }
                    Flavor::Ma => {
                        let keys = self.arg_domain(arg, Flavor::Ma)?;
                        let vals = self.enumerate(res, Flavor::Ma)?;
                        self.enumerate_tables(ty, flavor, &keys, &vals, MonotoneKind::Leq)?
                    }
                    Flavor::Am => {
                        let keys = self.arg_domain(arg, Flavor::Am)?;
                        let vals = self.enumerate(res, Flavor::Am)?;
                        self.enumerate_tables(ty, flavor, &keys, &vals, MonotoneKind::LeqReversed)?
                    }
                    Flavor::Pair => self.build_pairs(ty)?,
                };
                Ok(Domain::new(ty.clone(), flavor, elems))
            }
        }
    }

    fn build_pairs(&self, ty: &TypeExpr) -> Result<Vec<SemValue>> {
        let ma = self.enumerate(ty, Flavor::Ma)?;
        let am = self.enumerate(ty, Flavor::Am)?;
        let mut out = Vec::new();
        for x in &ma.elems {
            for y in &am.elems {
                if self.leq(x, y)? {
                    if out.len() == self.cap {
                        return Err(DomainError::CapExceeded {
                            ty: ty.to_string(),
                            flavor: Flavor::Pair,
                            cap: self.cap,
                            estimate: (ma.len() as u128).saturating_mul(am.len() as u128),
                        });
                    }
                    out.push(SemValue::pair(x.clone(), y.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Domain an argument of type `arg` ranges over within tables of the
    /// given flavor: the universe for `i`; for predicate arguments the
    /// three-valued domain (for `Three` tables) or the pair domain
    /// (for `Ma`/`Am` tables).
    pub fn arg_domain(&self, arg: &TypeExpr, table_flavor: Flavor) -> Result<Arc<Domain>> {
        match arg {
            TypeExpr::Iota => self.enumerate(&TypeExpr::Iota, Flavor::Three),
            _ => match table_flavor {
                Flavor::Three => self.enumerate(arg, Flavor::Three),
                Flavor::Ma | Flavor::Am => self.enumerate(arg, Flavor::Pair),
                Flavor::Pair => Err(self.err_invalid(
                    arg,
                    Flavor::Pair,
                    "pair-flavor values are pairs of tables, not tables",
                )),
            },
        }
    }

    /// Depth-first lexicographic enumeration of monotone tables, with
    /// pruning: a partial assignment is abandoned as soon as one ordered
    /// key pair maps to an unordered value pair.
    fn enumerate_tables(
        &self,
        ty: &TypeExpr,
        flavor: Flavor,
        keys: &Domain,
        vals: &Domain,
        kind: MonotoneKind,
    ) -> Result<Vec<SemValue>> {
        let nk = keys.len();
        let nv = vals.len();
        if nv == 0 {
            // No values: the function space is empty unless there are no
            // keys either, in which case the unique empty table inhabits it.
            return Ok(if nk == 0 {
                vec![SemValue::Table(Vec::new())]
            } else {
                Vec::new()
            });
        }

        // Key-order edges among earlier indices. `i` keys are discrete.
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); nk];
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); nk];
        if keys.ty != TypeExpr::Iota {
            for j in 0..nk {
                for i in 0..j {
                    if self.preceq(&keys.elems[i], &keys.elems[j])? {
                        below[j].push(i);
                    }
                    if self.preceq(&keys.elems[j], &keys.elems[i])? {
                        above[j].push(i);
                    }
                }
            }
        }
        // An Am table is exactly an order-reversed Ma table.
        if kind == MonotoneKind::LeqReversed {
            std::mem::swap(&mut below, &mut above);
        }

        // Value-order matrix: rel[a][b] = value_a R value_b.
        let mut rel = vec![false; nv * nv];
        for a in 0..nv {
            for b in 0..nv {
                rel[a * nv + b] = match kind {
                    MonotoneKind::Preceq => self.preceq(&vals.elems[a], &vals.elems[b])?,
                    _ => self.leq(&vals.elems[a], &vals.elems[b])?,
                };
            }
        }

        let fits = |choice: &[usize], j: usize, v: usize| -> bool {
            below[j].iter().all(|&i| rel[choice[i] * nv + v])
                && above[j].iter().all(|&i| rel[v * nv + choice[i]])
        };

        let estimate = (nv as u128).saturating_pow(nk.min(u32::MAX as usize) as u32);
        let mut out: Vec<SemValue> = Vec::new();
        let mut choice: Vec<usize> = Vec::with_capacity(nk);
        let mut cand: usize = 0;
        loop {
            if choice.len() == nk && cand == 0 {
                if out.len() == self.cap {
                    return Err(DomainError::CapExceeded {
                        ty: ty.to_string(),
                        flavor,
                        cap: self.cap,
                        estimate,
                    });
                }
                out.push(SemValue::Table(
                    choice.iter().map(|&vi| vals.elems[vi].clone()).collect(),
                ));
                if nk == 0 {
                    break;
                }
                cand = nv; // force a backtrack
            }
            if cand >= nv {
                match choice.pop() {
                    None => break,
                    Some(c) => {
                        cand = c + 1;
                        continue;
                    }
                }
            }
            let j = choice.len();
            if fits(&choice, j, cand) {
                choice.push(cand);
                cand = 0;
            } else {
                cand += 1;
            }
        }
        Ok(out)
    }

    // ----- orders -------------------------------------------------------

    /// Truth order `≤`, pointwise on tables, componentwise on pairs,
    /// discrete on individuals. Works across `Ma`/`Am` values of the same
    /// type (they share table shapes).
    pub fn leq(&self, a: &SemValue, b: &SemValue) -> Result<bool> {
        match (a, b) {
            (SemValue::T3(x), SemValue::T3(y)) => Ok(x.leq(*y)),
            (SemValue::T2(x), SemValue::T2(y)) => Ok(*x <= *y),
            (SemValue::Ind(x), SemValue::Ind(y)) => Ok(x == y),
            (SemValue::Table(xs), SemValue::Table(ys)) => {
                if xs.len() != ys.len() {
                    return Err(DomainError::ShapeMismatch(format!(
                        "tables of lengths {} and {}",
                        xs.len(),
                        ys.len()
                    )));
                }
                for (x, y) in xs.iter().zip(ys) {
                    if !self.leq(x, y)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (SemValue::Pair(x1, x2), SemValue::Pair(y1, y2)) => {
                Ok(self.leq(x1, y1)? && self.leq(x2, y2)?)
            }
            _ => Err(DomainError::ShapeMismatch(format!(
                "cannot compare {a:?} with {b:?}"
            ))),
        }
    }

    /// Information order `⪯`: at `o`, `undef` below `false` and `true`;
    /// pointwise on three-valued tables; on pairs `(x1,x2) ⪯ (y1,y2)`
    /// iff `x1 ≤ y1` and `y2 ≤ x2`.
    pub fn preceq(&self, a: &SemValue, b: &SemValue) -> Result<bool> {
        match (a, b) {
            (SemValue::T3(x), SemValue::T3(y)) => Ok(x.preceq(*y)),
            (SemValue::Ind(x), SemValue::Ind(y)) => Ok(x == y),
            (SemValue::Table(xs), SemValue::Table(ys)) => {
                if xs.len() != ys.len() {
                    return Err(DomainError::ShapeMismatch(format!(
                        "tables of lengths {} and {}",
                        xs.len(),
                        ys.len()
                    )));
                }
                for (x, y) in xs.iter().zip(ys) {
                    if !self.preceq(x, y)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (SemValue::Pair(x1, x2), SemValue::Pair(y1, y2)) => {
                Ok(self.leq(x1, y1)? && self.leq(y2, x2)?)
            }
            _ => Err(DomainError::ShapeMismatch(format!(
                "no information order between {a:?} and {b:?}"
            ))),
        }
    }

    // ----- lattice operations --------------------------------------------

    /// Binary join in the truth order (pointwise maximum).
    pub fn join(&self, a: &SemValue, b: &SemValue) -> Result<SemValue> {
        match (a, b) {
            (SemValue::T3(x), SemValue::T3(y)) => Ok(SemValue::T3(*x.max(y))),
            (SemValue::T2(x), SemValue::T2(y)) => Ok(SemValue::T2(*x || *y)),
            (SemValue::Ind(x), SemValue::Ind(y)) => {
                if x == y {
                    Ok(SemValue::Ind(*x))
                } else {
                    Err(DomainError::DiscreteJoin)
                }
            }
            (SemValue::Table(xs), SemValue::Table(ys)) if xs.len() == ys.len() => {
                let entries = xs
                    .iter()
                    .zip(ys)
                    .map(|(x, y)| self.join(x, y))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SemValue::Table(entries))
            }
            (SemValue::Pair(x1, x2), SemValue::Pair(y1, y2)) => {
                Ok(SemValue::pair(self.join(x1, y1)?, self.join(x2, y2)?))
            }
            _ => Err(DomainError::ShapeMismatch(format!(
                "cannot join {a:?} with {b:?}"
            ))),
        }
    }

    /// Binary meet in the truth order (pointwise minimum).
    pub fn meet(&self, a: &SemValue, b: &SemValue) -> Result<SemValue> {
        match (a, b) {
            (SemValue::T3(x), SemValue::T3(y)) => Ok(SemValue::T3(*x.min(y))),
            (SemValue::T2(x), SemValue::T2(y)) => Ok(SemValue::T2(*x && *y)),
            (SemValue::Ind(x), SemValue::Ind(y)) => {
                if x == y {
                    Ok(SemValue::Ind(*x))
                } else {
                    Err(DomainError::DiscreteJoin)
                }
            }
            (SemValue::Table(xs), SemValue::Table(ys)) if xs.len() == ys.len() => {
                let entries = xs
                    .iter()
                    .zip(ys)
                    .map(|(x, y)| self.meet(x, y))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SemValue::Table(entries))
            }
            (SemValue::Pair(x1, x2), SemValue::Pair(y1, y2)) => {
                Ok(SemValue::pair(self.meet(x1, y1)?, self.meet(x2, y2)?))
            }
            _ => Err(DomainError::ShapeMismatch(format!(
                "cannot meet {a:?} with {b:?}"
            ))),
        }
    }

    /// Join of a nonempty set in the truth order.
    pub fn join_all<'a>(&self, items: impl IntoIterator<Item = &'a SemValue>) -> Result<SemValue> {
        let mut it = items.into_iter();
        let first = it.next().ok_or(DomainError::EmptyJoin)?.clone();
        it.try_fold(first, |acc, x| self.join(&acc, x))
    }

    /// Meet of a nonempty set in the truth order.
    pub fn meet_all<'a>(&self, items: impl IntoIterator<Item = &'a SemValue>) -> Result<SemValue> {
        let mut it = items.into_iter();
        let first = it.next().ok_or(DomainError::EmptyJoin)?.clone();
        it.try_fold(first, |acc, x| self.meet(&acc, x))
    }

    /// Least upper bound of a nonempty `⪯`-chain.
    ///
    /// The set must be pairwise `⪯`-comparable. For three-valued values
    /// the lub is computed pointwise; for pairs it is
    /// `(join of lower halves, meet of upper halves)`.
    pub fn chain_lub_preceq(&self, items: &[SemValue]) -> Result<SemValue> {
        if items.is_empty() {
            return Err(DomainError::EmptyJoin);
        }
        for i in 0..items.len() {
            for j in (i + 1)..items.len() {
                if !self.preceq(&items[i], &items[j])? && !self.preceq(&items[j], &items[i])? {
                    return Err(DomainError::NotAChain);
                }
            }
        }
        if items.iter().all(|v| matches!(v, SemValue::Pair(_, _))) {
            let lowers: Vec<&SemValue> = items.iter().map(|v| v.as_pair().unwrap().0).collect();
            let uppers: Vec<&SemValue> = items.iter().map(|v| v.as_pair().unwrap().1).collect();
            return Ok(SemValue::pair(
                self.join_all(lowers)?,
                self.meet_all(uppers)?,
            ));
        }
        // Three-valued: a finite chain has a greatest element.
        let mut best = &items[0];
        for v in &items[1..] {
            if self.preceq(best, v)? {
                best = v;
            }
        }
        Ok(best.clone())
    }

    // ----- bounds ---------------------------------------------------------

    /// `≤`-least three-valued element: everywhere `false`.
    pub fn three_bottom(&self, ty: &TypeExpr) -> Result<SemValue> {
        self.three_const(ty, Truth3::False)
    }

    /// `≤`-greatest three-valued element: everywhere `true`.
    pub fn three_top(&self, ty: &TypeExpr) -> Result<SemValue> {
        self.three_const(ty, Truth3::True)
    }

    /// `⪯`-least three-valued element: everywhere `undef`.
    pub fn three_undef(&self, ty: &TypeExpr) -> Result<SemValue> {
        self.three_const(ty, Truth3::Undef)
    }

    fn three_const(&self, ty: &TypeExpr, t: Truth3) -> Result<SemValue> {
        match ty {
            TypeExpr::Omicron => Ok(SemValue::T3(t)),
            TypeExpr::Pred(arg, res) => {
                let keys = self.arg_domain(arg, Flavor::Three)?;
                let entry = self.three_const(res, t)?;
                Ok(SemValue::Table(vec![entry; keys.len()]))
            }
            _ => Err(DomainError::NotPredicateType { ty: ty.to_string() }),
        }
    }

    /// `≤`-least two-valued element. Constant tables are monotone and
    /// antitone at once, so `Ma` and `Am` share their bottom (and top).
    pub fn two_bottom(&self, ty: &TypeExpr) -> Result<SemValue> {
        self.two_const(ty, false)
    }

    /// `≤`-greatest two-valued element, shared by `Ma` and `Am`.
    pub fn two_top(&self, ty: &TypeExpr) -> Result<SemValue> {
        self.two_const(ty, true)
    }

    fn two_const(&self, ty: &TypeExpr, b: bool) -> Result<SemValue> {
        match ty {
            TypeExpr::Omicron => Ok(SemValue::T2(b)),
            TypeExpr::Pred(arg, res) => {
                let keys = self.arg_domain(arg, Flavor::Ma)?;
                let entry = self.two_const(res, b)?;
                Ok(SemValue::Table(vec![entry; keys.len()]))
            }
            _ => Err(DomainError::NotPredicateType { ty: ty.to_string() }),
        }
    }

    /// `⪯`-least pair: `(bottom, top)`.
    pub fn pair_bottom_preceq(&self, ty: &TypeExpr) -> Result<SemValue> {
        Ok(SemValue::pair(self.two_bottom(ty)?, self.two_top(ty)?))
    }

    // ----- validation ------------------------------------------------------

    /// Check that `v` is a well-formed element of `ty` in `flavor`:
    /// right shape, entries inhabit the result domain, and the flavor's
    /// monotonicity constraint holds.
    pub fn validate(&self, ty: &TypeExpr, flavor: Flavor, v: &SemValue) -> Result<()> {
        match flavor {
            Flavor::Pair => {
                let (lo, hi) = v.as_pair().ok_or_else(|| {
                    self.err_invalid(ty, flavor, "pair flavor requires a pair value")
                })?;
                self.validate(ty, Flavor::Ma, lo)?;
                self.validate(ty, Flavor::Am, hi)?;
                if !self.leq(lo, hi)? {
                    return Err(self.err_invalid(ty, flavor, "lower half exceeds upper half"));
                }
                Ok(())
            }
            Flavor::Three | Flavor::Ma | Flavor::Am => match ty {
                TypeExpr::Iota => match v {
                    SemValue::Ind(i) if *i < self.universe.len() => Ok(()),
                    SemValue::Ind(i) => Err(self.err_invalid(
                        ty,
                        flavor,
                        format!("individual index {i} out of range"),
                    )),
                    _ => Err(self.err_invalid(ty, flavor, "expected an individual")),
                },
                TypeExpr::Omicron => match (flavor, v) {
                    (Flavor::Three, SemValue::T3(_)) => Ok(()),
                    (Flavor::Ma | Flavor::Am, SemValue::T2(_)) => Ok(()),
                    _ => Err(self.err_invalid(ty, flavor, "wrong scalar kind")),
                },
                TypeExpr::Fun(_) => Err(DomainError::NotPredicateType { ty: ty.to_string() }),
                TypeExpr::Pred(arg, res) => {
                    let keys = self.arg_domain(arg, flavor)?;
                    let entries = v
                        .as_table()
                        .ok_or_else(|| self.err_invalid(ty, flavor, "expected a function table"))?;
                    if entries.len() != keys.len() {
                        return Err(self.err_invalid(
                            ty,
                            flavor,
                            format!(
                                "table has {} entries, argument domain has {}",
                                entries.len(),
                                keys.len()
                            ),
                        ));
                    }
                    for e in entries {
                        self.validate(res, flavor, e)?;
                    }
                    if keys.ty != TypeExpr::Iota {
                        for j in 0..keys.len() {
                            for i in 0..keys.len() {
                                if i == j || !self.preceq(&keys.elems[i], &keys.elems[j])? {
                                    continue;
                                }
                                let ok = match flavor {
                                    Flavor::Three => self.preceq(&entries[i], &entries[j])?,
                                    Flavor::Ma => self.leq(&entries[i], &entries[j])?,
                                    Flavor::Am => self.leq(&entries[j], &entries[i])?,
                                    Flavor::Pair => unreachable!(),
                                };
                                if !ok {
                                    return Err(self.err_invalid(
                                        ty,
                                        flavor,
                                        format!("monotonicity violated between argument indices {i} and {j}"),
                                    ));
                                }
                            }
                        }
                    }
                    Ok(())
                }
            },
        }
    }

    // ----- floors and ceilings --------------------------------------------

    /// Least `Am` element above the `Ma` element `a` (fast path).
    ///
    /// At functional types: `floor(a)(k) = join { floor(a(k')) : k ⪯ k' }`,
    /// the least antitone table dominating the pointwise floors.
    pub fn am_floor(&self, ty: &TypeExpr, a: &SemValue) -> Result<SemValue> {
        match ty {
            TypeExpr::Omicron => match a {
                SemValue::T2(_) => Ok(a.clone()),
                _ => Err(self.err_invalid(ty, Flavor::Ma, "expected a two-valued scalar")),
            },
            TypeExpr::Pred(arg, res) => {
                let keys = self.arg_domain(arg, Flavor::Ma)?;
                let entries = a
                    .as_table()
                    .ok_or_else(|| self.err_invalid(ty, Flavor::Ma, "expected a table"))?;
                let pointwise = entries
                    .iter()
                    .map(|e| self.am_floor(res, e))
                    .collect::<Result<Vec<_>>>()?;
                if keys.ty == TypeExpr::Iota {
                    return Ok(SemValue::Table(pointwise));
                }
                let mut out = Vec::with_capacity(keys.len());
                for key in &keys.elems {
                    let mut ups: Vec<&SemValue> = Vec::new();
                    for (other, floor) in keys.elems.iter().zip(&pointwise) {
                        if self.preceq(key, other)? {
                            ups.push(floor);
                        }
                    }
                    out.push(self.join_all(ups)?);
                }
                Ok(SemValue::Table(out))
            }
            _ => Err(DomainError::NotPredicateType { ty: ty.to_string() }),
        }
    }

    /// Greatest `Ma` element below the `Am` element `b` (fast path).
    pub fn ma_ceiling(&self, ty: &TypeExpr, b: &SemValue) -> Result<SemValue> {
        match ty {
            TypeExpr::Omicron => match b {
                SemValue::T2(_) => Ok(b.clone()),
                _ => Err(self.err_invalid(ty, Flavor::Am, "expected a two-valued scalar")),
            },
            TypeExpr::Pred(arg, res) => {
                let keys = self.arg_domain(arg, Flavor::Am)?;
                let entries = b
                    .as_table()
                    .ok_or_else(|| self.err_invalid(ty, Flavor::Am, "expected a table"))?;
                let pointwise = entries
                    .iter()
                    .map(|e| self.ma_ceiling(res, e))
                    .collect::<Result<Vec<_>>>()?;
                if keys.ty == TypeExpr::Iota {
                    return Ok(SemValue::Table(pointwise));
                }
                let mut out = Vec::with_capacity(keys.len());
                for key in &keys.elems {
                    let mut ups: Vec<&SemValue> = Vec::new();
                    for (other, ceiling) in keys.elems.iter().zip(&pointwise) {
                        if self.preceq(key, other)? {
                            ups.push(ceiling);
                        }
                    }
                    out.push(self.meet_all(ups)?);
                }
                Ok(SemValue::Table(out))
            }
            _ => Err(DomainError::NotPredicateType { ty: ty.to_string() }),
        }
    }

    /// Reference path for [`DomainStore::am_floor`]: filter the full `Am`
    /// enumeration to elements above `a` and take their meet.
    pub fn am_floor_scan(&self, ty: &TypeExpr, a: &SemValue) -> Result<SemValue> {
        let am = self.enumerate(ty, Flavor::Am)?;
        let mut cands: Vec<&SemValue> = Vec::new();
        for y in &am.elems {
            if self.leq(a, y)? {
                cands.push(y);
            }
        }
        self.meet_all(cands)
    }

    /// Reference path for [`DomainStore::ma_ceiling`]: filter the full
    /// `Ma` enumeration to elements below `b` and take their join.
    pub fn ma_ceiling_scan(&self, ty: &TypeExpr, b: &SemValue) -> Result<SemValue> {
        let ma = self.enumerate(ty, Flavor::Ma)?;
        let mut cands: Vec<&SemValue> = Vec::new();
        for x in &ma.elems {
            if self.leq(x, b)? {
                cands.push(x);
            }
        }
        self.join_all(cands)
    }
}
