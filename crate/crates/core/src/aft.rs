//! Fixpoint computation over pairs of under/over-approximations.
//!
//! The algorithms here are generic over a [`PairSpace`]: two complete
//! lattices with a shared order — a lower lattice of under-estimates
//! and an upper lattice of over-estimates — where a pair `(a, b)` with
//! `a <= b` brackets an unknown value. Pairs carry two orders: the
//! componentwise (truth) order, and the precision order in which the
//! lower half rises and the upper half falls.
//!
//! An operator on pairs is *reliable* at `(a, b)` when it does not
//! lose precision there, i.e. `(a, b)` precedes its image. Revision
//! replaces a pair by `(lfp of the lower half at fixed b, lfp of the
//! upper half at fixed a)`, where the lower iteration starts at bottom
//! and the upper iteration starts at the least upper-lattice element
//! above `a`. Iterating revision from `(bottom, top)` yields the
//! well-founded fixpoint; iterating the operator itself yields its
//! precision-least fixpoint; the reliable revision fixpoints are the
//! three-valued stable pairs.
//!
//! Every Kleene loop carries a step budget of the relevant lattice
//! size plus one; exceeding it means the supplied operator is not
//! monotone and is reported as an error, never looped through.

use crate::domains::DomainError;
use std::fmt::Debug;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AftError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(
        "{phase} iteration exceeded its step budget of {budget}; the operator is not monotone"
    )]
    BudgetExceeded { phase: &'static str, budget: usize },
    #[error("{phase} iteration produced a non-ascending step; the operator is not monotone")]
    NotAscending { phase: &'static str },
    #[error("{what} has {estimate} points, over the cap of {cap}")]
    Capacity {
        what: String,
        cap: usize,
        estimate: usize,
    },
    #[error("{0}")]
    Space(String),
}

impl AftError {
    /// Did this failure come from a size cap rather than bad input or
    /// a broken operator?
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            AftError::Capacity { .. } | AftError::Domain(DomainError::CapExceeded { .. })
        )
    }
}

type Result<T> = std::result::Result<T, AftError>;

/// Two complete lattices of under- and over-estimates with a shared
/// order, plus the enumeration hooks exhaustive checks need.
pub trait PairSpace {
    type Elem: Clone + PartialEq + Debug;

    /// Shared truth order across both lattices.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;
    /// Least element (in the lower lattice; also least overall).
    fn bottom(&self) -> Result<Self::Elem>;
    /// Greatest element (in the upper lattice; also greatest overall).
    fn top(&self) -> Result<Self::Elem>;
    /// Least upper-lattice element at or above `a`.
    fn am_floor(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Upper bound on the strict steps in any ascending chain of the
    /// lower lattice. Sets the Kleene budget; must be cheap, never an
    /// enumeration.
    fn lower_chain_bound(&self) -> Result<usize>;
    /// The same bound for the upper lattice.
    fn upper_chain_bound(&self) -> Result<usize>;
    /// All lower-lattice elements, in a deterministic order.
    fn enum_lower(&self) -> Result<Vec<Self::Elem>>;
    /// All upper-lattice elements, in a deterministic order.
    fn enum_upper(&self) -> Result<Vec<Self::Elem>>;
}

/// An operator on consistent pairs. Implemented for plain closures.
pub trait Approximator<S: PairSpace> {
    fn apply(&self, a: &S::Elem, b: &S::Elem) -> Result<(S::Elem, S::Elem)>;
}

impl<S, F> Approximator<S> for F
where
    S: PairSpace,
    F: Fn(&S::Elem, &S::Elem) -> Result<(S::Elem, S::Elem)>,
{
    fn apply(&self, a: &S::Elem, b: &S::Elem) -> Result<(S::Elem, S::Elem)> {
        self(a, b)
    }
}

/// Does the pair precede its image, i.e. is no precision lost at it?
pub fn is_reliable<S: PairSpace>(
    space: &S,
    op: &impl Approximator<S>,
    a: &S::Elem,
    b: &S::Elem,
) -> Result<bool> {
    let (ra, rb) = op.apply(a, b)?;
    Ok(space.leq(a, &ra)? && space.leq(&rb, b)?)
}

/// Is `(a, b)` a pre-fixpoint, i.e. does the image sit componentwise
/// at or below it in the truth order?
pub fn is_pre_fixpoint<S: PairSpace>(
    space: &S,
    op: &impl Approximator<S>,
    a: &S::Elem,
    b: &S::Elem,
) -> Result<bool> {
    let (ra, rb) = op.apply(a, b)?;
    Ok(space.leq(&ra, a)? && space.leq(&rb, b)?)
}

/// Least fixpoint of the lower half at fixed upper estimate `b`,
/// by Kleene iteration from bottom. Returns the fixpoint and the
/// number of operator applications.
pub fn lfp_lower<S: PairSpace>(
    space: &S,
    op: &impl Approximator<S>,
    b: &S::Elem,
) -> Result<(S::Elem, usize)> {
    let budget = space.lower_chain_bound()?.saturating_add(1);
    let mut x = space.bottom()?;
    for step in 1..=budget {
        let next = op.apply(&x, b)?.0;
        if !space.leq(&x, &next)? {
            return Err(AftError::NotAscending { phase: "lower" });
        }
        if next == x {
            return Ok((x, step));
        }
        x = next;
    }
    Err(AftError::BudgetExceeded {
        phase: "lower",
        budget,
    })
}

/// Least fixpoint of the upper half at fixed lower estimate `a`,
/// by Kleene iteration from the least upper-lattice element above `a`.
pub fn lfp_upper<S: PairSpace>(
    space: &S,
    op: &impl Approximator<S>,
    a: &S::Elem,
) -> Result<(S::Elem, usize)> {
    let budget = space.upper_chain_bound()?.saturating_add(1);
    let mut y = space.am_floor(a)?;
    for step in 1..=budget {
        let next = op.apply(a, &y)?.1;
        if !space.leq(&y, &next)? {
            return Err(AftError::NotAscending { phase: "upper" });
        }
        if next == y {
            return Ok((y, step));
        }
        y = next;
    }
    Err(AftError::BudgetExceeded {
        phase: "upper",
        budget,
    })
}

/// One revision of a pair: recompute the lower estimate against the
/// old upper one and the upper estimate against the old lower one.
pub fn revise<S: PairSpace>(
    space: &S,
    op: &impl Approximator<S>,
    a: &S::Elem,
    b: &S::Elem,
) -> Result<(S::Elem, S::Elem)> {
    let (lo, _) = lfp_lower(space, op, b)?;
    let (hi, _) = lfp_upper(space, op, a)?;
    Ok((lo, hi))
}

/// One recorded revision step, with the health checks tests assert.
#[derive(Debug, Clone)]
pub struct RevisionStep<E> {
    pub index: usize,
    pub before: (E, E),
    pub after: (E, E),
    /// `(a, b)` preceded its image under the operator.
    pub reliable: bool,
    /// Reliable, and the revised lower estimate stayed above `a`.
    pub prudent: bool,
    /// The revision gained precision: lower rose, upper fell.
    pub ascent: bool,
    /// Revised lower estimate sits at or below the old upper one.
    pub lower_below_old_upper: bool,
    /// Old lower estimate sits at or below the revised upper one.
    pub old_lower_below_new_upper: bool,
    /// Revised upper estimate sits at or below the old upper one.
    pub new_upper_below_old_upper: bool,
    pub lower_steps: usize,
    pub upper_steps: usize,
}

impl<E> RevisionStep<E> {
    /// All recorded health checks passed for this step.
    pub fn healthy(&self) -> bool {
        self.reliable
            && self.prudent
            && self.ascent
            && self.lower_below_old_upper
            && self.old_lower_below_new_upper
            && self.new_upper_below_old_upper
    }
}

#[derive(Debug, Clone)]
pub struct WfResult<E> {
    /// The least revision fixpoint, reached from `(bottom, top)`.
    pub pair: (E, E),
    /// Number of revisions applied (including the confirming one).
    pub steps: usize,
    /// Most recent revision steps, up to the caller's limit.
    pub trace: Vec<RevisionStep<E>>,
    /// True when older steps were dropped to honor the limit.
    pub trace_truncated: bool,
}

pub const DEFAULT_TRACE_LIMIT: usize = 1000;

/// Iterate revision from `(bottom, top)` to its least fixpoint.
pub fn wf_fixpoint<S: PairSpace>(
    space: &S,
    op: &impl Approximator<S>,
    trace_limit: usize,
) -> Result<WfResult<S::Elem>> {
    let budget = space
        .lower_chain_bound()?
        .saturating_add(space.upper_chain_bound()?)
        .saturating_add(1);
    let mut a = space.bottom()?;
    let mut b = space.top()?;
    let mut trace = Vec::new();
    let mut truncated = false;
    for step in 1..=budget {
        let (ra, rb) = op.apply(&a, &b)?;
        let reliable = space.leq(&a, &ra)? && space.leq(&rb, &b)?;
        let (lo, lower_steps) = lfp_lower(space, op, &b)?;
        let (hi, upper_steps) = lfp_upper(space, op, &a)?;
        let ascent = space.leq(&a, &lo)? && space.leq(&hi, &b)?;
        let record = RevisionStep {
            index: step,
            before: (a.clone(), b.clone()),
            after: (lo.clone(), hi.clone()),
            reliable,
            prudent: reliable && space.leq(&a, &lo)?,
            ascent,
            lower_below_old_upper: space.leq(&lo, &b)?,
            old_lower_below_new_upper: space.leq(&a, &hi)?,
            new_upper_below_old_upper: space.leq(&hi, &b)?,
            lower_steps,
            upper_steps,
        };
        if trace_limit > 0 {
            if trace.len() == trace_limit {
                trace.remove(0);
                truncated = true;
            }
            trace.push(record);
        }
        let done = lo == a && hi == b;
        a = lo;
        b = hi;
        if done {
            return Ok(WfResult {
                pair: (a, b),
                steps: step,
                trace,
                trace_truncated: truncated,
            });
        }
    }
    Err(AftError::BudgetExceeded {
        phase: "revision",
        budget,
    })
}

#[derive(Debug, Clone)]
pub struct KkResult<E> {
    /// The precision-least fixpoint of the operator itself.
    pub pair: (E, E),
    pub steps: usize,
}

/// Iterate the operator itself from `(bottom, top)` to its
/// precision-least fixpoint.
pub fn kk_fixpoint<S: PairSpace>(
    space: &S,
    op: &impl Approximator<S>,
) -> Result<KkResult<S::Elem>> {
    let budget = space
        .lower_chain_bound()?
        .saturating_add(space.upper_chain_bound()?)
        .saturating_add(1);
    let mut a = space.bottom()?;
    let mut b = space.top()?;
    for step in 1..=budget {
        let (na, nb) = op.apply(&a, &b)?;
        if !(space.leq(&a, &na)? && space.leq(&nb, &b)?) {
            return Err(AftError::NotAscending { phase: "operator" });
        }
        if na == a && nb == b {
            return Ok(KkResult {
                pair: (a, b),
                steps: step,
            });
        }
        a = na;
        b = nb;
    }
    Err(AftError::BudgetExceeded {
        phase: "operator",
        budget,
    })
}

/// All consistent pairs that are reliable fixpoints of revision,
/// in enumeration order (lower estimate major, upper minor).
pub fn stable_fixpoints<S: PairSpace>(
    space: &S,
    op: &impl Approximator<S>,
) -> Result<Vec<(S::Elem, S::Elem)>> {
    let lowers = space.enum_lower()?;
    let uppers = space.enum_upper()?;
    let mut out = Vec::new();
    for a in &lowers {
        for b in &uppers {
            if !space.leq(a, b)? {
                continue;
            }
            if !is_reliable(space, op, a, b)? {
                continue;
            }
            let (lo, _) = lfp_lower(space, op, b)?;
            if lo != *a {
                continue;
            }
            let (hi, _) = lfp_upper(space, op, a)?;
            if hi == *b {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}
