//! The structure-preserving bijection between three-valued denotations
//! and consistent pairs of two-valued denotations.
//!
//! At type `o` it reads a truth value as a (lower, upper) pair of
//! classical bounds:
//!
//! ```text
//! false ↦ (false, false)    undef ↦ (false, true)    true ↦ (true, true)
//! ```
//!
//! At `i -> pi` it maps a table pointwise. At `pi1 -> pi2`, where pair
//! tables are keyed by the *pair* domain of `pi1`, the image of `f` at
//! a pair key `k` is the image of `f`'s value at the three-valued
//! argument `back(k)`; conversely the preimage of `(f1, f2)` at a
//! three-valued argument `d` reads both halves at the pair key
//! `fwd(d)`. Both directions therefore only need the key translation at
//! the *argument* type, which this module materializes once per type as
//! an index permutation.

use crate::domains::{DomainError, DomainStore, Flavor, SemValue, Truth3};
use crate::syntax::TypeExpr;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

type Result<T> = std::result::Result<T, DomainError>;

/// Index translation between the `Three` and `Pair` enumerations of one
/// predicate type: position `i` of the three-valued enumeration maps to
/// position `fwd[i]` of the pair enumeration, and back via `back`.
#[derive(Debug)]
pub struct TauMap {
    pub fwd: Vec<usize>,
    pub back: Vec<usize>,
}

/// Caches [`TauMap`]s per type on top of a shared [`DomainStore`].
pub struct TauContext {
    store: Arc<DomainStore>,
    maps: Mutex<HashMap<TypeExpr, Arc<TauMap>>>,
}

impl TauContext {
    pub fn new(store: Arc<DomainStore>) -> Self {
        TauContext {
            store,
            maps: Mutex::new(HashMap::new()),
        }
    }

    pub fn store(&self) -> &DomainStore {
        &self.store
    }

    /// Forward direction at type `ty`: a three-valued value to its
    /// consistent pair `(lower, upper)`.
    pub fn tau(&self, ty: &TypeExpr, v: &SemValue) -> Result<(SemValue, SemValue)> {
        match ty {
            TypeExpr::Omicron => match v.as_t3() {
                Some(Truth3::False) => Ok((SemValue::T2(false), SemValue::T2(false))),
                Some(Truth3::Undef) => Ok((SemValue::T2(false), SemValue::T2(true))),
                Some(Truth3::True) => Ok((SemValue::T2(true), SemValue::T2(true))),
                None => Err(DomainError::ShapeMismatch(format!(
                    "expected a truth value at o, found {v:?}"
                ))),
            },
            TypeExpr::Pred(arg, res) => {
                let entries = v.as_table().ok_or_else(|| {
                    DomainError::ShapeMismatch(format!("expected a table at {ty}, found {v:?}"))
                })?;
                if **arg == TypeExpr::Iota {
                    let mut lows = Vec::with_capacity(entries.len());
                    let mut highs = Vec::with_capacity(entries.len());
                    for e in entries {
                        let (lo, hi) = self.tau(res, e)?;
                        lows.push(lo);
                        highs.push(hi);
                    }
                    Ok((SemValue::Table(lows), SemValue::Table(highs)))
                } else {
                    let map = self.map_for(arg)?;
                    let nk = map.back.len();
                    let mut lows = Vec::with_capacity(nk);
                    let mut highs = Vec::with_capacity(nk);
                    for k in 0..nk {
                        let i = map.back[k];
                        let e = entries.get(i).ok_or_else(|| {
                            DomainError::ShapeMismatch(format!(
                                "table at {ty} has {} entries, argument domain needs {}",
                                entries.len(),
                                map.fwd.len()
                            ))
                        })?;
                        let (lo, hi) = self.tau(res, e)?;
                        lows.push(lo);
                        highs.push(hi);
                    }
                    Ok((SemValue::Table(lows), SemValue::Table(highs)))
                }
            }
            _ => Err(DomainError::NotPredicateType { ty: ty.to_string() }),
        }
    }

    /// Forward direction packaged as a pair-flavor value.
    pub fn tau_pair(&self, ty: &TypeExpr, v: &SemValue) -> Result<SemValue> {
        let (lo, hi) = self.tau(ty, v)?;
        Ok(SemValue::pair(lo, hi))
    }

    /// Backward direction at type `ty`: a consistent pair of two-valued
    /// values to the three-valued value it bounds.
    pub fn tau_inv(&self, ty: &TypeExpr, lower: &SemValue, upper: &SemValue) -> Result<SemValue> {
        match ty {
            TypeExpr::Omicron => match (lower, upper) {
                (SemValue::T2(false), SemValue::T2(false)) => Ok(SemValue::T3(Truth3::False)),
                (SemValue::T2(false), SemValue::T2(true)) => Ok(SemValue::T3(Truth3::Undef)),
                (SemValue::T2(true), SemValue::T2(true)) => Ok(SemValue::T3(Truth3::True)),
                (SemValue::T2(true), SemValue::T2(false)) => Err(DomainError::ShapeMismatch(
                    "inconsistent pair (true, false) at o".into(),
                )),
                _ => Err(DomainError::ShapeMismatch(format!(
                    "expected two-valued scalars at o, found {lower:?}, {upper:?}"
                ))),
            },
            TypeExpr::Pred(arg, res) => {
                let lo_entries = lower.as_table().ok_or_else(|| {
                    DomainError::ShapeMismatch(format!("expected a table at {ty}, found {lower:?}"))
                })?;
                let hi_entries = upper.as_table().ok_or_else(|| {
                    DomainError::ShapeMismatch(format!("expected a table at {ty}, found {upper:?}"))
                })?;
                if lo_entries.len() != hi_entries.len() {
                    return Err(DomainError::ShapeMismatch(format!(
                        "pair halves have {} and {} entries",
                        lo_entries.len(),
                        hi_entries.len()
                    )));
                }
                if **arg == TypeExpr::Iota {
                    let entries = lo_entries
                        .iter()
                        .zip(hi_entries)
                        .map(|(lo, hi)| self.tau_inv(res, lo, hi))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(SemValue::Table(entries))
                } else {
                    let map = self.map_for(arg)?;
                    let mut entries = Vec::with_capacity(map.fwd.len());
                    for i in 0..map.fwd.len() {
                        let k = map.fwd[i];
                        let (lo, hi) = (
                            lo_entries.get(k).ok_or_else(|| {
                                DomainError::ShapeMismatch(format!(
                                    "table at {ty} has {} entries, pair argument domain needs {}",
                                    lo_entries.len(),
                                    map.back.len()
                                ))
                            })?,
                            &hi_entries[k],
                        );
                        entries.push(self.tau_inv(res, lo, hi)?);
                    }
                    Ok(SemValue::Table(entries))
                }
            }
            _ => Err(DomainError::NotPredicateType { ty: ty.to_string() }),
        }
    }

    /// Backward direction from a pair-flavor value.
    pub fn tau_inv_pair(&self, ty: &TypeExpr, pair: &SemValue) -> Result<SemValue> {
        let (lo, hi) = pair.as_pair().ok_or_else(|| {
            DomainError::ShapeMismatch(format!("expected a pair value, found {pair:?}"))
        })?;
        self.tau_inv(ty, lo, hi)
    }

    /// The index permutation between the `Three` and `Pair` enumerations
    /// of predicate type `ty`. Building it walks every element once and
    /// doubles as a proof that the translation is a bijection on the
    /// enumerated domains.
    pub fn map_for(&self, ty: &TypeExpr) -> Result<Arc<TauMap>> {
        if let Some(m) = self.maps.lock().unwrap().get(ty) {
            return Ok(Arc::clone(m));
        }
        let three = self.store.enumerate(ty, Flavor::Three)?;
        let pairs = self.store.enumerate(ty, Flavor::Pair)?;
        if three.len() != pairs.len() {
            return Err(DomainError::ShapeMismatch(format!(
                "three-valued and pair domains of {ty} have sizes {} and {}",
                three.len(),
                pairs.len()
            )));
        }
        let mut fwd = vec![usize::MAX; three.len()];
        let mut back = vec![usize::MAX; pairs.len()];
        for (i, v) in three.elems.iter().enumerate() {
            let p = self.tau_pair(ty, v)?;
            let k = pairs.index_of(&p).ok_or_else(|| {
                DomainError::ShapeMismatch(format!(
                    "translated value is not a consistent pair of {ty}: {p:?}"
                ))
            })?;
            if back[k] != usize::MAX {
                return Err(DomainError::ShapeMismatch(format!(
                    "two elements of {ty} translate to the same pair"
                )));
            }
            fwd[i] = k;
            back[k] = i;
        }
        let map = Arc::new(TauMap { fwd, back });
        Ok(Arc::clone(
            self.maps
                .lock()
                .unwrap()
                .entry(ty.clone())
                .or_insert_with(|| map),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::DEFAULT_CAP;

    fn ctx(n: usize) -> TauContext {
        let names = (0..n).map(|i| format!("c{i}")).collect();
        TauContext::new(Arc::new(DomainStore::new(names, DEFAULT_CAP)))
    }

    fn o() -> TypeExpr {
        TypeExpr::Omicron
    }

    fn oo() -> TypeExpr {
        TypeExpr::pred(o(), o()).unwrap()
    }

    fn ooo() -> TypeExpr {
        TypeExpr::pred(oo(), o()).unwrap()
    }

    fn io() -> TypeExpr {
        TypeExpr::pred(TypeExpr::Iota, o()).unwrap()
    }

    #[test]
    fn truth_values_map_to_their_bounds() {
        let cx = ctx(0);
        let cases = [
            (Truth3::False, false, false),
            (Truth3::Undef, false, true),
            (Truth3::True, true, true),
        ];
        for (t, lo, hi) in cases {
            let (l, h) = cx.tau(&o(), &SemValue::T3(t)).unwrap();
            assert_eq!(l, SemValue::T2(lo));
            assert_eq!(h, SemValue::T2(hi));
            let back = cx.tau_inv(&o(), &l, &h).unwrap();
            assert_eq!(back, SemValue::T3(t));
        }
        assert!(cx
            .tau_inv(&o(), &SemValue::T2(true), &SemValue::T2(false))
            .is_err());
    }

    #[test]
    fn round_trips_are_exhaustive_at_small_types() {
        for (cx, tys) in [(ctx(0), vec![o(), oo(), ooo()]), (ctx(2), vec![io()])] {
            for ty in tys {
                let st = cx.store();
                let three = st.enumerate(&ty, Flavor::Three).unwrap();
                let pairs = st.enumerate(&ty, Flavor::Pair).unwrap();
                assert_eq!(three.len(), pairs.len(), "cardinality at {ty}");
                for v in &three.elems {
                    let p = cx.tau_pair(&ty, v).unwrap();
                    st.validate(&ty, Flavor::Pair, &p).unwrap();
                    let back = cx.tau_inv_pair(&ty, &p).unwrap();
                    assert_eq!(&back, v, "three -> pair -> three at {ty}");
                }
                for p in &pairs.elems {
                    let v = cx.tau_inv_pair(&ty, p).unwrap();
                    st.validate(&ty, Flavor::Three, &v).unwrap();
                    let p2 = cx.tau_pair(&ty, &v).unwrap();
                    assert_eq!(&p2, p, "pair -> three -> pair at {ty}");
                }
            }
        }
    }

    #[test]
    fn complement_table_translates_to_expected_pair() {
        // The complement table at o->o: its lower half sends the pair
        // keys (f,f), (f,t), (t,t) to t, f, f; the upper half to t, t, f.
        let cx = ctx(0);
        let ty = oo();
        let complement = SemValue::Table(vec![
            SemValue::T3(Truth3::True),
            SemValue::T3(Truth3::Undef),
            SemValue::T3(Truth3::False),
        ]);
        let (lo, hi) = cx.tau(&ty, &complement).unwrap();
        // Pair keys enumerate as (f,f), (f,t), (t,t).
        assert_eq!(
            lo,
            SemValue::Table(vec![
                SemValue::T2(true),
                SemValue::T2(false),
                SemValue::T2(false),
            ])
        );
        assert_eq!(
            hi,
            SemValue::Table(vec![
                SemValue::T2(true),
                SemValue::T2(true),
                SemValue::T2(false),
            ])
        );
    }

    #[test]
    fn order_transport_both_directions() {
        // In both directions the translation matches the two orders:
        // v ⪯ w iff tau v ⪯ tau w, and v ≤ w iff tau v ≤ tau w
        // componentwise; checked exhaustively at o and o->o, together
        // with membership of the translated values.
        for ty in [o(), oo()] {
            let cx = ctx(0);
            let st = cx.store();
            let three = st.enumerate(&ty, Flavor::Three).unwrap();
            for v in &three.elems {
                let p = cx.tau_pair(&ty, v).unwrap();
                st.validate(&ty, Flavor::Pair, &p).unwrap();
            }
            for v in &three.elems {
                for w in &three.elems {
                    let pv = cx.tau_pair(&ty, v).unwrap();
                    let pw = cx.tau_pair(&ty, w).unwrap();
                    assert_eq!(
                        st.preceq(v, w).unwrap(),
                        st.preceq(&pv, &pw).unwrap(),
                        "⪯ transport at {ty}"
                    );
                    assert_eq!(
                        st.leq(v, w).unwrap(),
                        st.leq(&pv, &pw).unwrap(),
                        "≤ transport at {ty}"
                    );
                }
            }
        }
    }
}
