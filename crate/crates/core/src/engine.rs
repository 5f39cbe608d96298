//! The model-computation engine.
//!
//! A checked program induces an operator on pairs of two-valued
//! interpretations: decode the pair into one three-valued
//! interpretation, apply the one-step consequence operator, and encode
//! the result back into its under/over halves. Running the generic
//! fixpoint algorithms over that operator yields the well-founded
//! model (least revision fixpoint), the operator's own precision-least
//! fixpoint, and the three-valued stable models. Queries evaluate
//! against whichever model the caller computed.

use crate::aft::{
    self, AftError, KkResult, PairSpace, RevisionStep, WfResult, DEFAULT_TRACE_LIMIT,
};
use crate::bijection::TauContext;
use crate::diag::{ParseError, TypeError};
use crate::domains::{DomainStore, Flavor, SemValue, Truth3, DEFAULT_CAP};
use crate::semantics::{self, ground_universe, Interp};
use crate::syntax::{self, TypeExpr};
use crate::typesys::{self, TExpr, TypedProgram};
use std::sync::Arc;
use thiserror::Error;

/// Failure to turn program text into a checked program.
#[derive(Debug, Error)]
pub enum ProgramError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("\n"))]
    Type(Vec<TypeError>),
}

/// Parse and check program text in one step.
pub fn load_program(src: &str) -> Result<TypedProgram, ProgramError> {
    let raw = syntax::parse_program(src)?;
    typesys::check_program(&raw).map_err(ProgramError::Type)
}

/// The well-founded model together with its computation record.
#[derive(Debug, Clone)]
pub struct WellFounded {
    /// Three-valued model, one value per declared predicate.
    pub model: Interp,
    /// Its two-valued under-estimate half.
    pub lower: Interp,
    /// Its two-valued over-estimate half.
    pub upper: Interp,
    /// Revisions applied, including the confirming one.
    pub steps: usize,
    pub trace: Vec<RevisionStep<Interp>>,
    pub trace_truncated: bool,
}

/// The operator's own precision-least fixpoint, decoded.
#[derive(Debug, Clone)]
pub struct KripkeKleene {
    pub model: Interp,
    pub lower: Interp,
    pub upper: Interp,
    pub steps: usize,
}

/// One three-valued stable model, decoded from its stable pair.
#[derive(Debug, Clone)]
pub struct StableModel {
    pub model: Interp,
    pub lower: Interp,
    pub upper: Interp,
}

/// Outcome of exhaustively scanning the interpretation space around a
/// computed model.
#[derive(Debug, Clone)]
pub struct MinimalityReport {
    /// Interpretations enumerated (every three-valued assignment).
    pub interps_checked: usize,
    /// No distinct model sits at or below the computed one.
    pub model_is_minimal: bool,
    /// A strictly smaller model, when one exists.
    pub smaller_model: Option<Interp>,
    /// Every interpretation is a model exactly when its encoded pair
    /// is a pre-fixpoint of the pair operator.
    pub models_match_pre_fixpoints: bool,
}

pub struct Engine {
    program: TypedProgram,
    store: Arc<DomainStore>,
    tau: TauContext,
}

impl Engine {
    /// Build an engine over the program's ground universe with the
    /// given domain-size cap.
    pub fn new(program: TypedProgram, cap: usize) -> Self {
        let store = Arc::new(DomainStore::new(ground_universe(&program), cap));
        let tau = TauContext::new(store.clone());
        Engine {
            program,
            store,
            tau,
        }
    }

    pub fn with_default_cap(program: TypedProgram) -> Self {
        Self::new(program, DEFAULT_CAP)
    }

    pub fn program(&self) -> &TypedProgram {
        &self.program
    }

    pub fn store(&self) -> &DomainStore {
        &self.store
    }

    pub fn universe(&self) -> &[String] {
        self.store.universe()
    }

    fn space(&self) -> InterpPairSpace<'_> {
        InterpPairSpace {
            program: &self.program,
            store: &self.store,
        }
    }

    /// Decode a pair of two-valued interpretations into a three-valued
    /// one, predicate by predicate.
    fn decode(&self, lower: &Interp, upper: &Interp) -> Result<Interp, AftError> {
        let mut out = Interp::new();
        for (name, ty) in &self.program.predicate_types {
            let v = self
                .tau
                .tau_inv(ty, &lower[name], &upper[name])
                .map_err(AftError::Domain)?;
            out.insert(name.clone(), v);
        }
        Ok(out)
    }

    /// Encode a three-valued interpretation as its two halves.
    fn encode(&self, three: &Interp) -> Result<(Interp, Interp), AftError> {
        let mut lower = Interp::new();
        let mut upper = Interp::new();
        for (name, ty) in &self.program.predicate_types {
            let (lo, hi) = self.tau.tau(ty, &three[name]).map_err(AftError::Domain)?;
            lower.insert(name.clone(), lo);
            upper.insert(name.clone(), hi);
        }
        Ok((lower, upper))
    }

    /// The pair operator: decode, take one consequence step, encode.
    fn pair_step(&self, a: &Interp, b: &Interp) -> Result<(Interp, Interp), AftError> {
        let three = self.decode(a, b)?;
        let next = semantics::psi(&self.store, &self.program, &three).map_err(AftError::Domain)?;
        self.encode(&next)
    }

    fn operator(&self) -> impl Fn(&Interp, &Interp) -> Result<(Interp, Interp), AftError> + '_ {
        move |a: &Interp, b: &Interp| self.pair_step(a, b)
    }

    /// Compute the well-founded model.
    pub fn well_founded(&self, trace_limit: usize) -> Result<WellFounded, AftError> {
        let space = self.space();
        let WfResult {
            pair: (lower, upper),
            steps,
            trace,
            trace_truncated,
        } = aft::wf_fixpoint(&space, &self.operator(), trace_limit)?;
        let model = self.decode(&lower, &upper)?;
        Ok(WellFounded {
            model,
            lower,
            upper,
            steps,
            trace,
            trace_truncated,
        })
    }

    pub fn well_founded_default(&self) -> Result<WellFounded, AftError> {
        self.well_founded(DEFAULT_TRACE_LIMIT)
    }

    /// Compute the operator's precision-least fixpoint.
    pub fn kripke_kleene(&self) -> Result<KripkeKleene, AftError> {
        let space = self.space();
        let KkResult {
            pair: (lower, upper),
            steps,
        } = aft::kk_fixpoint(&space, &self.operator())?;
        let model = self.decode(&lower, &upper)?;
        Ok(KripkeKleene {
            model,
            lower,
            upper,
            steps,
        })
    }

    /// Enumerate every three-valued stable model, in the deterministic
    /// order of the underlying pair scan.
    pub fn stable_models(&self) -> Result<Vec<StableModel>, AftError> {
        let space = self.space();
        let pairs = aft::stable_fixpoints(&space, &self.operator())?;
        pairs
            .into_iter()
            .map(|(lower, upper)| {
                let model = self.decode(&lower, &upper)?;
                Ok(StableModel {
                    model,
                    lower,
                    upper,
                })
            })
            .collect()
    }

    /// Parse and check one query against this program's signature.
    pub fn prepare_query(&self, text: &str) -> Result<TExpr, ProgramError> {
        let e = syntax::parse_expr(text)?;
        typesys::check_query(&self.program, text, &e).map_err(|e| ProgramError::Type(vec![e]))
    }

    /// Evaluate a checked query under a model.
    pub fn eval_query(&self, model: &Interp, query: &TExpr) -> Result<Truth3, AftError> {
        let v = semantics::eval(&self.store, model, query).map_err(AftError::Domain)?;
        v.as_t3()
            .ok_or_else(|| AftError::Space("query did not evaluate to a truth value".to_string()))
    }

    /// Does `m` satisfy every clause?
    pub fn is_model(&self, m: &Interp) -> Result<bool, AftError> {
        semantics::is_model(&self.store, &self.program, m).map_err(AftError::Domain)
    }

    /// Every three-valued interpretation of the program's predicates,
    /// in a deterministic order. Errors when the space exceeds the cap.
    pub fn enumerate_interps(&self) -> Result<Vec<Interp>, AftError> {
        let mut doms = Vec::new();
        let mut total: usize = 1;
        for (name, ty) in &self.program.predicate_types {
            let d = self
                .store
                .enumerate(ty, Flavor::Three)
                .map_err(AftError::Domain)?;
            total = total.saturating_mul(d.len());
            doms.push((name.clone(), d));
        }
        if total > self.store.cap() {
            return Err(AftError::Capacity {
                what: "the interpretation space".to_string(),
                cap: self.store.cap(),
                estimate: total,
            });
        }
        let mut out = Vec::with_capacity(total);
        let mut odometer = vec![0usize; doms.len()];
        loop {
            let interp: Interp = doms
                .iter()
                .zip(&odometer)
                .map(|((name, d), &i)| (name.clone(), d.elems()[i].clone()))
                .collect();
            out.push(interp);
            let mut pos = doms.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                odometer[pos] += 1;
                if odometer[pos] < doms[pos].1.len() {
                    break;
                }
                odometer[pos] = 0;
            }
        }
    }

    /// Exhaustively verify that `model` is a minimal model, and that
    /// being a model coincides with encoding to a pre-fixpoint of the
    /// pair operator, across the whole interpretation space.
    pub fn verify_minimal(&self, model: &Interp) -> Result<MinimalityReport, AftError> {
        let space = self.space();
        let op = self.operator();
        let mut smaller: Option<Interp> = None;
        let mut lemma = true;
        let interps = self.enumerate_interps()?;
        for n in &interps {
            let is_model = self.is_model(n)?;
            let (lo, hi) = self.encode(n)?;
            let pre = aft::is_pre_fixpoint(&space, &op, &lo, &hi)?;
            if is_model != pre {
                lemma = false;
            }
            if is_model && n != model && smaller.is_none() {
                let mut below = true;
                for name in self.program.predicate_types.keys() {
                    if !self
                        .store
                        .leq(&n[name], &model[name])
                        .map_err(AftError::Domain)?
                    {
                        below = false;
                        break;
                    }
                }
                if below {
                    smaller = Some(n.clone());
                }
            }
        }
        Ok(MinimalityReport {
            interps_checked: interps.len(),
            model_is_minimal: smaller.is_none(),
            smaller_model: smaller,
            models_match_pre_fixpoints: lemma,
        })
    }

    /// Does the first pair approximate at least as precisely as the
    /// second, i.e. precede it in the precision order?
    pub fn pair_preceq(
        &self,
        (a1, b1): (&Interp, &Interp),
        (a2, b2): (&Interp, &Interp),
    ) -> Result<bool, AftError> {
        for name in self.program.predicate_types.keys() {
            if !(self
                .store
                .leq(&a1[name], &a2[name])
                .map_err(AftError::Domain)?
                && self
                    .store
                    .leq(&b2[name], &b1[name])
                    .map_err(AftError::Domain)?)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // ----- rendering -----------------------------------------------------

    /// Compact one value: truth values as single letters, individuals
    /// by name, tables as bracketed entry lists in domain order.
    pub fn compact_value(&self, ty: &TypeExpr, v: &SemValue) -> Result<String, AftError> {
        compact(&self.store, ty, v)
    }

    /// Render one predicate's table as fully applied rows, one ground
    /// instance per line.
    pub fn render_rows(
        &self,
        name: &str,
        ty: &TypeExpr,
        v: &SemValue,
    ) -> Result<Vec<String>, AftError> {
        let mut rows = Vec::new();
        let mut args = Vec::new();
        self.walk_rows(ty, v, name, &mut args, &mut rows)?;
        Ok(rows)
    }

    fn walk_rows(
        &self,
        ty: &TypeExpr,
        v: &SemValue,
        name: &str,
        args: &mut Vec<String>,
        rows: &mut Vec<String>,
    ) -> Result<(), AftError> {
        match ty {
            TypeExpr::Omicron => {
                let t = v.as_t3().ok_or_else(|| {
                    AftError::Space("expected a truth value at type o".to_string())
                })?;
                let lhs = if args.is_empty() {
                    name.to_string()
                } else {
                    format!("{name} {}", args.join(" "))
                };
                rows.push(format!("{lhs} = {}", t.as_str()));
                Ok(())
            }
            TypeExpr::Pred(arg, res) => {
                let dom = self
                    .store
                    .arg_domain(arg, Flavor::Three)
                    .map_err(AftError::Domain)?;
                let table = v.as_table().ok_or_else(|| {
                    AftError::Space("expected a table at a predicate type".to_string())
                })?;
                for (key, entry) in dom.elems().iter().zip(table) {
                    args.push(compact(&self.store, arg, key)?);
                    self.walk_rows(res, entry, name, args, rows)?;
                    args.pop();
                }
                Ok(())
            }
            other => Err(AftError::Space(format!(
                "predicate table at non-predicate type {other}"
            ))),
        }
    }

    /// JSON form of one value: truth words at `o`, objects keyed by
    /// compact argument text at predicate types.
    pub fn value_to_json(
        &self,
        ty: &TypeExpr,
        v: &SemValue,
    ) -> Result<serde_json::Value, AftError> {
        match ty {
            TypeExpr::Omicron => {
                let t = v.as_t3().ok_or_else(|| {
                    AftError::Space("expected a truth value at type o".to_string())
                })?;
                Ok(serde_json::Value::String(t.as_str().to_string()))
            }
            TypeExpr::Pred(arg, res) => {
                let dom = self
                    .store
                    .arg_domain(arg, Flavor::Three)
                    .map_err(AftError::Domain)?;
                let table = v.as_table().ok_or_else(|| {
                    AftError::Space("expected a table at a predicate type".to_string())
                })?;
                let mut map = serde_json::Map::new();
                for (key, entry) in dom.elems().iter().zip(table) {
                    map.insert(
                        compact(&self.store, arg, key)?,
                        self.value_to_json(res, entry)?,
                    );
                }
                Ok(serde_json::Value::Object(map))
            }
            other => Err(AftError::Space(format!(
                "predicate table at non-predicate type {other}"
            ))),
        }
    }

    /// JSON form of a whole interpretation.
    pub fn model_to_json(&self, model: &Interp) -> Result<serde_json::Value, AftError> {
        let mut preds = serde_json::Map::new();
        for (name, ty) in &self.program.predicate_types {
            let mut entry = serde_json::Map::new();
            entry.insert(
                "type".to_string(),
                serde_json::Value::String(ty.to_string()),
            );
            entry.insert("table".to_string(), self.value_to_json(ty, &model[name])?);
            preds.insert(name.clone(), serde_json::Value::Object(entry));
        }
        Ok(serde_json::json!({
            "universe": self.universe(),
            "predicates": preds,
        }))
    }
}

/// Ground cells in a two-valued table of this type. Every strict step
/// of an ascending chain flips at least one cell from false to true,
/// so this bounds chain length in both halves without enumerating the
/// (possibly huge) table lattices themselves.
fn table_cells(store: &DomainStore, ty: &TypeExpr) -> Result<usize, AftError> {
    match ty {
        TypeExpr::Omicron => Ok(1),
        TypeExpr::Pred(arg, res) => {
            let keys = store
                .arg_domain(arg, Flavor::Ma)
                .map_err(AftError::Domain)?
                .len();
            Ok(keys.saturating_mul(table_cells(store, res)?))
        }
        other => Err(AftError::Space(format!(
            "no table cells at non-predicate type {other}"
        ))),
    }
}

fn compact(store: &DomainStore, ty: &TypeExpr, v: &SemValue) -> Result<String, AftError> {
    match (ty, v) {
        (TypeExpr::Omicron, SemValue::T3(t)) => Ok(t.as_letter().to_string()),
        (TypeExpr::Iota, SemValue::Ind(i)) => store
            .universe()
            .get(*i)
            .cloned()
            .ok_or_else(|| AftError::Space(format!("individual index {i} out of range"))),
        (TypeExpr::Pred(_, res), SemValue::Table(entries)) => {
            let parts = entries
                .iter()
                .map(|e| compact(store, res, e))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(format!("[{}]", parts.join(",")))
        }
        (ty, v) => Err(AftError::Space(format!(
            "value {v:?} does not inhabit type {ty}"
        ))),
    }
}

/// The space of interpretation pairs: per predicate, the lower lattice
/// holds the monotone two-valued tables and the upper lattice the
/// antitone ones, ordered and combined pointwise.
pub struct InterpPairSpace<'a> {
    program: &'a TypedProgram,
    store: &'a DomainStore,
}

impl<'a> InterpPairSpace<'a> {
    fn const_interp(
        &self,
        f: impl Fn(&DomainStore, &TypeExpr) -> Result<SemValue, crate::domains::DomainError>,
    ) -> Result<Interp, AftError> {
        self.program
            .predicate_types
            .iter()
            .map(|(name, ty)| Ok((name.clone(), f(self.store, ty).map_err(AftError::Domain)?)))
            .collect()
    }

    fn enum_interps(&self, flavor: Flavor) -> Result<Vec<Interp>, AftError> {
        let mut doms = Vec::new();
        let mut total: usize = 1;
        for (name, ty) in &self.program.predicate_types {
            let d = self.store.enumerate(ty, flavor).map_err(AftError::Domain)?;
            total = total.saturating_mul(d.len());
            doms.push((name.clone(), d));
        }
        if total > self.store.cap() {
            return Err(AftError::Capacity {
                what: "the interpretation space".to_string(),
                cap: self.store.cap(),
                estimate: total,
            });
        }
        let mut out = Vec::with_capacity(total);
        let mut odometer = vec![0usize; doms.len()];
        loop {
            out.push(
                doms.iter()
                    .zip(&odometer)
                    .map(|((name, d), &i)| (name.clone(), d.elems()[i].clone()))
                    .collect(),
            );
            let mut pos = doms.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                odometer[pos] += 1;
                if odometer[pos] < doms[pos].1.len() {
                    break;
                }
                odometer[pos] = 0;
            }
        }
    }
}

impl<'a> PairSpace for InterpPairSpace<'a> {
    type Elem = Interp;

    fn leq(&self, a: &Interp, b: &Interp) -> Result<bool, AftError> {
        for name in self.program.predicate_types.keys() {
            if !self
                .store
                .leq(&a[name], &b[name])
                .map_err(AftError::Domain)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn bottom(&self) -> Result<Interp, AftError> {
        self.const_interp(|s, ty| s.two_bottom(ty))
    }

    fn top(&self) -> Result<Interp, AftError> {
        self.const_interp(|s, ty| s.two_top(ty))
    }

    fn am_floor(&self, a: &Interp) -> Result<Interp, AftError> {
        self.program
            .predicate_types
            .iter()
            .map(|(name, ty)| {
                Ok((
                    name.clone(),
                    self.store
                        .am_floor(ty, &a[name])
                        .map_err(AftError::Domain)?,
                ))
            })
            .collect()
    }

    fn lower_chain_bound(&self) -> Result<usize, AftError> {
        let mut total: usize = 0;
        for ty in self.program.predicate_types.values() {
            total = total.saturating_add(table_cells(self.store, ty)?);
        }
        Ok(total)
    }

    fn upper_chain_bound(&self) -> Result<usize, AftError> {
        // Lower and upper tables share their key domains, so the cell
        // count bounds both chains.
        self.lower_chain_bound()
    }

    fn enum_lower(&self) -> Result<Vec<Interp>, AftError> {
        self.enum_interps(Flavor::Ma)
    }

    fn enum_upper(&self) -> Result<Vec<Interp>, AftError> {
        self.enum_interps(Flavor::Am)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(src: &str) -> Engine {
        Engine::with_default_cap(load_program(src).unwrap())
    }

    fn t3(m: &Interp, name: &str) -> Truth3 {
        m[name].as_t3().unwrap()
    }

    #[test]
    fn negation_loop_is_undefined_and_fact_is_true() {
        let e = engine("s : o. r : o. s. r <- ~r.");
        let wf = e.well_founded_default().unwrap();
        assert_eq!(t3(&wf.model, "s"), Truth3::True);
        assert_eq!(t3(&wf.model, "r"), Truth3::Undef);
        assert!(wf.trace.iter().all(|s| s.healthy()));
    }

    #[test]
    fn double_negation_is_false_in_wf_but_open_in_kk() {
        let e = engine("p : o. p <- ~(~p).");
        let wf = e.well_founded_default().unwrap();
        assert_eq!(t3(&wf.model, "p"), Truth3::False);
        let kk = e.kripke_kleene().unwrap();
        assert_eq!(t3(&kk.model, "p"), Truth3::Undef);
        let stable = e.stable_models().unwrap();
        assert_eq!(stable.len(), 1);
        assert_eq!(t3(&stable[0].model, "p"), Truth3::False);
    }

    #[test]
    fn even_negation_loop_has_three_stable_models() {
        let e = engine("p : o. q : o. p <- ~q. q <- ~p.");
        let wf = e.well_founded_default().unwrap();
        assert_eq!(t3(&wf.model, "p"), Truth3::Undef);
        assert_eq!(t3(&wf.model, "q"), Truth3::Undef);
        let stable = e.stable_models().unwrap();
        let readings: Vec<(Truth3, Truth3)> = stable
            .iter()
            .map(|s| (t3(&s.model, "p"), t3(&s.model, "q")))
            .collect();
        assert_eq!(
            readings,
            vec![
                (Truth3::Undef, Truth3::Undef),
                (Truth3::False, Truth3::True),
                (Truth3::True, Truth3::False),
            ]
        );
        // The well-founded model is the precision-least stable model.
        for s in &stable {
            assert!(e
                .pair_preceq((&wf.lower, &wf.upper), (&s.lower, &s.upper))
                .unwrap());
        }
    }

    #[test]
    fn higher_order_negation_program_computes_the_expected_tables() {
        let e = engine(
            "s : (o->o)->o->o.\n\
             p : o->o.\n\
             q : o->o.\n\
             w : o->o.\n\
             s <- \\Q. \\V. Q V.\n\
             p <- \\R. R.\n\
             q <- \\R. ~(w R).\n\
             w <- \\R. ~R.\n",
        );
        let wf = e.well_founded_default().unwrap();
        use SemValue::T3;
        use Truth3::*;
        let identity = SemValue::Table(vec![T3(False), T3(Undef), T3(True)]);
        let complement = SemValue::Table(vec![T3(True), T3(Undef), T3(False)]);
        assert_eq!(wf.model["p"], identity);
        assert_eq!(
            wf.model["q"], identity,
            "negating the complement restores identity"
        );
        assert_eq!(wf.model["w"], complement);
        // `s` applies its argument: its table maps every unary key to
        // itself, in the key domain's own enumeration order.
        let keys = e
            .store()
            .enumerate(&e.program().predicate_types["p"], Flavor::Three)
            .unwrap();
        assert_eq!(wf.model["s"], SemValue::Table(keys.elems().to_vec()));
        assert!(wf.trace.iter().all(|s| s.healthy()));
    }

    #[test]
    fn queries_evaluate_under_the_computed_model() {
        let e = engine(
            "a : i. b : i.\n\
             p : i->o. q : i->o.\n\
             subset : (i->o)->(i->o)->o.\n\
             p <- \\X. X = a.\n\
             q <- \\X. (X = a) | (X = b).\n\
             subset <- \\P. \\Q. ~ exists X. (P X) & ~(Q X).",
        );
        let wf = e.well_founded_default().unwrap();
        let yes = e.prepare_query("subset p q").unwrap();
        let no = e.prepare_query("subset q p").unwrap();
        assert_eq!(e.eval_query(&wf.model, &yes).unwrap(), Truth3::True);
        assert_eq!(e.eval_query(&wf.model, &no).unwrap(), Truth3::False);
        assert!(
            e.prepare_query("subset p").is_err(),
            "queries must be type o"
        );
        assert!(e.prepare_query("subset p r").is_err(), "unknown constant");
    }

    #[test]
    fn wf_model_is_minimal_and_models_coincide_with_pre_fixpoints() {
        let e = engine("p : o. q : o. p <- ~q. q <- ~p.");
        let wf = e.well_founded_default().unwrap();
        let report = e.verify_minimal(&wf.model).unwrap();
        assert_eq!(report.interps_checked, 9);
        assert!(
            report.model_is_minimal,
            "smaller model: {:?}",
            report.smaller_model
        );
        assert!(report.models_match_pre_fixpoints);
    }

    #[test]
    fn kk_is_at_most_as_precise_as_wf() {
        for src in [
            "p : o. p <- ~(~p).",
            "p : o. q : o. p <- ~q. q <- ~p.",
            "s : o. r : o. s. r <- ~r.",
            "p : o->o. w : o->o. p <- \\R. R. w <- \\R. ~(p R).",
        ] {
            let e = engine(src);
            let wf = e.well_founded_default().unwrap();
            let kk = e.kripke_kleene().unwrap();
            assert!(e
                .pair_preceq((&kk.lower, &kk.upper), (&wf.lower, &wf.upper))
                .unwrap());
        }
    }

    #[test]
    fn rendering_is_fully_applied_and_deterministic() {
        let e = engine("a : i. b : i. p : i->o. p <- \\X. X = a.");
        let wf = e.well_founded_default().unwrap();
        let rows = e
            .render_rows("p", &e.program().predicate_types["p"], &wf.model["p"])
            .unwrap();
        assert_eq!(rows, vec!["p a = true", "p b = false"]);
        let json = e.model_to_json(&wf.model).unwrap();
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            r#"{"predicates":{"p":{"table":{"a":"true","b":"false"},"type":"i->o"}},"universe":["a","b"]}"#
        );
    }

    #[test]
    fn higher_order_rows_use_compact_argument_keys() {
        let e = engine("w : o->o. w <- \\R. ~R.");
        let wf = e.well_founded_default().unwrap();
        let rows = e
            .render_rows("w", &e.program().predicate_types["w"], &wf.model["w"])
            .unwrap();
        assert_eq!(rows, vec!["w f = true", "w u = undef", "w t = false"]);
    }

    #[test]
    fn clauseless_predicates_are_false_everywhere() {
        let e = engine("p : o->o. q : o.");
        let wf = e.well_founded_default().unwrap();
        assert_eq!(
            wf.model["p"],
            e.store()
                .three_bottom(&TypeExpr::pred(TypeExpr::Omicron, TypeExpr::Omicron).unwrap())
                .unwrap()
        );
        assert_eq!(t3(&wf.model, "q"), Truth3::False);
    }
}
