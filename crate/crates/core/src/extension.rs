//! Cyclic extensions of loops driven by a semi-automorphism.
//!
//! For a loop `N`, a cyclic group `H = ⟨u⟩` of order `h` coprime to 3 and a
//! semi-automorphism `f` of `N` with `f^h = 1`, the product on `N × H` is
//!
//! ```text
//! (x, u^m)(y, u^n) = ( f^{(2m+n)/3}( f^{-(2m+n)/3}(x) · f^{(m-n)/3}(y) ), u^{m+n} )
//! ```
//!
//! Thirds of exponents are realised through the cube-root exponent `t` with
//! `3t ≡ 1 (mod h)`: `f^{k/3}` means `(f^t)^k`. This is well defined because
//! the order of `f` divides `h`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::LoopError;
use crate::iso::{are_isomorphic, IsoOutcome};
use crate::morphisms::{
    classify, conjugation_map, enumerate_semiautomorphisms, is_automorphism, semi_violation, Mapping, MorphError,
    SemiAutOptions,
};
use crate::props::{element_order, gcd, is_group, is_moufang, MoufangMode};
use crate::scan::{first_pair_violation, sample_triples, ScanMode, ScanPolicy};
use crate::subloop::{is_normal, SubsetHandle};
use crate::table::{CayleyTable, Elem, LoopOps, TableError};

/// Default bound on the side length of a materialized extension table.
pub const MATERIALIZE_CAP: usize = 4096;

/// Which hypothesis of a verification failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    NotMoufang,
    NotNormal,
    NotGenerating,
    OrderDivisibleBy3,
    NotStabilizing,
    ExponentNotUnit,
    BetaNotAutomorphism,
}

impl Hypothesis {
    pub fn tag(self) -> &'static str {
        match self {
            Hypothesis::NotMoufang => "not-moufang",
            Hypothesis::NotNormal => "not-normal",
            Hypothesis::NotGenerating => "not-generating",
            Hypothesis::OrderDivisibleBy3 => "order-divisible-by-3",
            Hypothesis::NotStabilizing => "f-not-stabilizing-n",
            Hypothesis::ExponentNotUnit => "alpha-not-coprime-to-h",
            Hypothesis::BetaNotAutomorphism => "beta-not-automorphism",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("order {0} is divisible by 3")]
    CoprimalityViolation(usize),
    #[error("action has order {order}, which does not divide {h}")]
    ActionOrder { order: usize, h: usize },
    #[error("action is not a semi-automorphism (fails at {0:?})")]
    NotSemiAutomorphism((Elem, Elem)),
    #[error("action moves the identity")]
    IdentityMoving,
    #[error("action acts on {actual} elements, base has {expected}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("extension of order {order} exceeds the materialization cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("materialized table failed validation: {0}")]
    ValidationFailed(TableError),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(Hypothesis),
    #[error("verification failed at {0:?}")]
    VerificationFailed((Elem, Elem)),
    #[error("no conjugating semi-automorphism found")]
    NotConjugate,
    #[error("semi-automorphism enumeration budget exhausted")]
    EnumerationBudget,
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Morph(#[from] MorphError),
}

/// The unique `t` in `0..h` with `3t ≡ 1 (mod h)`.
pub fn cube_root_exponent(h: usize) -> Result<usize, ExtensionError> {
    if h == 0 || h.is_multiple_of(3) {
        return Err(ExtensionError::CoprimalityViolation(h));
    }
    Ok((0..h).find(|t| (3 * t) % h == 1 % h).expect("3 is a unit mod h"))
}

/// Element `(x, u^m)` of an extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExtElement {
    pub x: Elem,
    pub m: usize,
}

/// Data of an external semidirect product `N ⋊ ⟨u⟩` with `f = φ(u)`.
#[derive(Debug, Clone)]
pub struct ExtensionSpec {
    base: CayleyTable,
    h: usize,
    action: Mapping,
    t: usize,
    /// `(f^t)^k` for `k` in `0..h`.
    powers: Vec<Mapping>,
}

impl ExtensionSpec {
    pub fn new(base: CayleyTable, h: usize, action: Mapping) -> Result<Self, ExtensionError> {
        let t = cube_root_exponent(h)?;
        if action.len() != base.order() {
            return Err(ExtensionError::SizeMismatch { expected: base.order(), actual: action.len() });
        }
        let order = action.order();
        if !h.is_multiple_of(order) {
            return Err(ExtensionError::ActionOrder { order, h });
        }
        if !action.fixes_identity() {
            return Err(ExtensionError::IdentityMoving);
        }
        if let Some(w) = semi_violation(&base, &action) {
            return Err(ExtensionError::NotSemiAutomorphism(w));
        }
        let step = action.power(t as i64);
        let mut powers = Vec::with_capacity(h);
        let mut cur = Mapping::identity(base.order());
        for _ in 0..h {
            let next = step.compose(&cur).expect("same size");
            powers.push(cur);
            cur = next;
        }
        Ok(Self { base, h, action, t, powers })
    }

    pub fn base(&self) -> &CayleyTable {
        &self.base
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn action(&self) -> &Mapping {
        &self.action
    }

    pub fn cube_root(&self) -> usize {
        self.t
    }

    /// `(f^t)^k` for any integer `k`.
    pub fn root_power(&self, k: i64) -> &Mapping {
        &self.powers[k.rem_euclid(self.h as i64) as usize]
    }

    pub fn index(&self, e: ExtElement) -> Elem {
        e.m * self.base.order() + e.x
    }

    pub fn element(&self, i: Elem) -> ExtElement {
        let n = self.base.order();
        ExtElement { x: i % n, m: i / n }
    }

    /// The twisted product, evaluated directly from the base table.
    pub fn product(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        let h = self.h;
        let (m, n) = (a.m % h, b.m % h);
        let e1 = (2 * m + n) % h;
        let e2 = (h - e1) % h;
        let e3 = (m + h - n) % h;
        let inner = self.base.mul(self.powers[e2].apply(a.x), self.powers[e3].apply(b.x));
        ExtElement { x: self.powers[e1].apply(inner), m: (m + n) % h }
    }

    pub fn materialize(&self) -> Result<CayleyTable, ExtensionError> {
        self.materialize_with_cap(MATERIALIZE_CAP)
    }

    /// Element `(x, u^m)` lands at index `m·|N| + x`.
    pub fn materialize_with_cap(&self, cap: usize) -> Result<CayleyTable, ExtensionError> {
        let order = self.order();
        if order > cap {
            return Err(ExtensionError::CapExceeded { order, cap });
        }
        let mut cells = vec![0u32; order * order];
        cells.par_chunks_mut(order).enumerate().for_each(|(i, row)| {
            for (j, c) in row.iter_mut().enumerate() {
                *c = self.op(i, j) as u32;
            }
        });
        CayleyTable::from_cells(order, cells).map_err(ExtensionError::ValidationFailed)
    }
}

impl LoopOps for ExtensionSpec {
    fn order(&self) -> usize {
        self.base.order() * self.h
    }

    fn op(&self, x: Elem, y: Elem) -> Elem {
        self.index(self.product(self.element(x), self.element(y)))
    }
}

/// Every way of writing each element of `G` as `x·u^m` with `x ∈ N`.
#[derive(Debug, Clone)]
pub struct FactorizationWitness {
    pub normal: SubsetHandle,
    pub u: Elem,
    pub order_u: usize,
    /// `u^k` for `k` in `0..order_u`.
    pub u_powers: Vec<Elem>,
    /// For each `g`, all `(x, m)` with `g = x·u^m`.
    pub decompositions: Vec<Vec<(Elem, usize)>>,
}

impl FactorizationWitness {
    pub fn new(g: &CayleyTable, normal: &SubsetHandle, u: Elem) -> Result<Self, ExtensionError> {
        g.check(u).map_err(LoopError::from)?;
        let order_u = element_order(g, u)?;
        let mut u_powers = vec![0];
        for k in 1..order_u {
            u_powers.push(g.mul(u_powers[k - 1], u));
        }
        let mut decompositions = vec![Vec::new(); g.order()];
        for &x in normal.members() {
            for (m, &um) in u_powers.iter().enumerate() {
                decompositions[g.mul(x, um)].push((x, m));
            }
        }
        if decompositions.iter().any(|d| d.is_empty()) {
            return Err(ExtensionError::HypothesisViolation(Hypothesis::NotGenerating));
        }
        Ok(Self { normal: normal.clone(), u, order_u, u_powers, decompositions })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Witness {
    pub left: (Elem, usize),
    pub right: (Elem, usize),
    pub product: Elem,
    pub formula: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub holds: bool,
    pub pairs_checked: u64,
    pub order_u: usize,
    pub cube_root: usize,
    pub witness: Option<Theorem1Witness>,
}

/// Check the factorized product law over every pair of decompositions of
/// every pair of elements of `G = N⟨u⟩`, after checking the hypotheses.
pub fn verify_theorem1(
    g: &CayleyTable,
    normal: &SubsetHandle,
    u: Elem,
    policy: &ScanPolicy,
) -> Result<Theorem1Report, ExtensionError> {
    let violated = |h| Err(ExtensionError::HypothesisViolation(h));
    if !is_moufang(g, MoufangMode::Single, policy)?.holds {
        return violated(Hypothesis::NotMoufang);
    }
    match is_normal(g, normal) {
        Ok(true) => {}
        Ok(false) | Err(LoopError::NotASubloop) => return violated(Hypothesis::NotNormal),
        Err(e) => return Err(e.into()),
    }
    let w = FactorizationWitness::new(g, normal, u)?;
    if w.order_u % 3 == 0 {
        return violated(Hypothesis::OrderDivisibleBy3);
    }
    let f = conjugation_map(g, u)?;
    if normal.members().iter().any(|&x| !normal.contains(f.apply(x))) {
        return violated(Hypothesis::NotStabilizing);
    }
    let t = cube_root_exponent(w.order_u)?;
    let root = f.power(t as i64);
    let h = w.order_u as i64;
    let pw: Vec<Mapping> = (0..h).map(|k| root.power(k)).collect();
    let tp = |k: i64| &pw[k.rem_euclid(h) as usize];

    let n = g.order();
    let found = (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            let lhs = g.mul(a, b);
            for &(x, m) in &w.decompositions[a] {
                for &(y, k) in &w.decompositions[b] {
                    let (m, k) = (m as i64, k as i64);
                    let e1 = 2 * m + k;
                    let inner = g.mul(tp(-e1).apply(x), tp(m - k).apply(y));
                    let rhs = g.mul(tp(e1).apply(inner), w.u_powers[(m + k).rem_euclid(h) as usize]);
                    if lhs != rhs {
                        return Some(Theorem1Witness {
                            left: (x, m as usize),
                            right: (y, k as usize),
                            product: lhs,
                            formula: rhs,
                        });
                    }
                }
            }
        }
        None
    });
    let pairs_checked = {
        let counts: Vec<u64> = w.decompositions.iter().map(|d| d.len() as u64).collect();
        let total: u64 = counts.iter().sum();
        total * total
    };
    Ok(Theorem1Report { holds: found.is_none(), pairs_checked, order_u: w.order_u, cube_root: t, witness: found })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupCriterion {
    /// Base is a group and the action is an automorphism.
    pub prediction: bool,
    /// The extension is associative.
    pub observed: bool,
    pub moufang: bool,
    /// Set when the observation contradicts the criterion: any mismatch for
    /// Moufang extensions, or prediction without associativity otherwise.
    pub contradiction: bool,
}

pub fn group_criterion(spec: &ExtensionSpec, policy: &ScanPolicy) -> Result<GroupCriterion, ExtensionError> {
    let base_group = is_group(spec.base(), &ScanPolicy { cap: policy.cap.max(spec.base().order()), ..*policy })?.holds;
    let prediction = base_group && is_automorphism(spec.base(), spec.action());
    let (observed, moufang) = match spec.materialize() {
        Ok(t) => (is_group(&t, policy)?.holds, is_moufang(&t, MoufangMode::Single, policy)?.holds),
        Err(ExtensionError::CapExceeded { .. }) => {
            (is_group(spec, policy)?.holds, is_moufang(spec, MoufangMode::Single, policy)?.holds)
        }
        Err(e) => return Err(e),
    };
    let contradiction = if moufang { prediction != observed } else { prediction && !observed };
    Ok(GroupCriterion { prediction, observed, moufang, contradiction })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Remark2Witness {
    pub v: Elem,
    pub x: Elem,
    pub y: Elem,
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Remark2Report {
    pub holds: bool,
    pub mode: ScanMode,
    pub triples_checked: u64,
    pub witness: Option<Remark2Witness>,
}

/// Conjugation by `v` and its powers `-3..=3`, plus `u = v³` and `u²`.
struct CubeData {
    conj: Vec<Vec<u32>>,
    u_pow: [Elem; 3],
}

fn cube_data(g: &CayleyTable, v: Elem) -> CubeData {
    let n = g.order();
    let vi = g.inverse(v);
    let fwd: Vec<u32> = (0..n).map(|x| g.mul(g.mul(v, x), vi) as u32).collect();
    let back: Vec<u32> = (0..n).map(|x| g.mul(g.mul(vi, x), v) as u32).collect();
    let mut conj = vec![Vec::new(); 7];
    conj[3] = (0..n as u32).collect();
    for k in 1..=3 {
        conj[3 + k] = conj[3 + k - 1].iter().map(|&x| fwd[x as usize]).collect();
        conj[3 - k] = conj[3 - k + 1].iter().map(|&x| back[x as usize]).collect();
    }
    let u = g.mul(g.mul(v, v), v);
    CubeData { conj, u_pow: [0, u, g.mul(u, u)] }
}

fn remark2_triple(g: &CayleyTable, d: &CubeData, v: Elem, x: Elem, y: Elem) -> Option<Remark2Witness> {
    let f = |k: i64, e: Elem| d.conj[(k + 3) as usize][e] as Elem;
    for m in 0..2usize {
        for n in 0..2usize {
            let lhs = g.mul(g.mul(x, d.u_pow[m]), g.mul(y, d.u_pow[n]));
            let (mi, ni) = (m as i64, n as i64);
            let e1 = 2 * mi + ni;
            let inner = g.mul(f(-e1, x), f(mi - ni, y));
            let rhs = g.mul(f(e1, inner), d.u_pow[m + n]);
            if lhs != rhs {
                return Some(Remark2Witness { v, x, y, m, n });
            }
        }
    }
    None
}

/// With `u = v³` and `f^{1/3}` conjugation by `v`, checks the factorized
/// product for `(m, n) ∈ {0,1}²` over all (or sampled) `(v, x, y)`.
pub fn verify_remark2(g: &CayleyTable, policy: &ScanPolicy) -> Result<Remark2Report, ExtensionError> {
    if !is_moufang(g, MoufangMode::Single, policy)?.holds {
        return Err(ExtensionError::HypothesisViolation(Hypothesis::NotMoufang));
    }
    let n = g.order();
    let mode = policy.mode_for(n).ok_or(LoopError::CapExceeded { order: n, cap: policy.cap })?;
    let (witness, triples_checked) = match mode {
        ScanMode::Full => {
            let w = (0..n).into_par_iter().find_map_first(|v| {
                let d = cube_data(g, v);
                (0..n).find_map(|x| (0..n).find_map(|y| remark2_triple(g, &d, v, x, y)))
            });
            (w, (n as u64).pow(3))
        }
        ScanMode::Sampled { count, seed } => {
            let samples = sample_triples(n, count, seed);
            let w = samples
                .par_iter()
                .filter_map(|s| {
                    let v = s[0] as Elem;
                    remark2_triple(g, &cube_data(g, v), v, s[1] as Elem, s[2] as Elem)
                })
                .min_by_key(|w| (w.v, w.x, w.y, w.m, w.n));
            (w, count)
        }
    };
    Ok(Remark2Report { holds: witness.is_none(), mode, triples_checked, witness })
}

#[derive(Debug, Clone)]
pub struct Theorem2Report {
    /// `β ∘ f₁^α ∘ β⁻¹`
    pub f2: Mapping,
    /// `ψ(x, u^m) = (β(x), u^{m·α⁻¹})` on materialized indices.
    pub psi: Mapping,
    pub first: CayleyTable,
    pub second: CayleyTable,
    pub alpha_inverse: usize,
}

/// Build and verify the isomorphism between the extensions by `f₁` and by
/// `β ∘ f₁^α ∘ β⁻¹`, where `α(u) = u^alpha_exp`.
pub fn theorem2_isomorphism(
    base: &CayleyTable,
    h: usize,
    f1: &Mapping,
    alpha_exp: usize,
    beta: &Mapping,
) -> Result<Theorem2Report, ExtensionError> {
    cube_root_exponent(h)?;
    let alpha = alpha_exp % h;
    if gcd(alpha, h) != 1 {
        return Err(ExtensionError::HypothesisViolation(Hypothesis::ExponentNotUnit));
    }
    if !classify(base, beta)?.is_automorphism {
        return Err(ExtensionError::HypothesisViolation(Hypothesis::BetaNotAutomorphism));
    }
    let alpha_inverse = (0..h).find(|a| (a * alpha) % h == 1 % h).expect("alpha is a unit");
    let f2 = beta.compose(&f1.power(alpha as i64))?.compose(&beta.invert())?;
    let first = ExtensionSpec::new(base.clone(), h, f1.clone())?.materialize()?;
    let second = ExtensionSpec::new(base.clone(), h, f2.clone())?.materialize()?;
    let n = base.order();
    let psi = Mapping::from_fn(first.order(), |i| {
        let (x, m) = (i % n, i / n);
        ((m * alpha_inverse) % h) * n + beta.apply(x)
    })?;
    if let Some(w) =
        first_pair_violation(first.order(), |a, b| psi.apply(first.mul(a, b)) == second.mul(psi.apply(a), psi.apply(b)))
    {
        return Err(ExtensionError::VerificationFailed(w));
    }
    Ok(Theorem2Report { f2, psi, first, second, alpha_inverse })
}

#[derive(Debug, Clone)]
pub enum CorollaryPath {
    /// Conjugator is an automorphism; the explicit map was built and verified.
    Theorem2(Box<Theorem2Report>),
    /// Conjugator is only a semi-automorphism; fell back to isomorphism search.
    IsomorphismSearch(IsoOutcome),
}

#[derive(Debug, Clone)]
pub struct CorollaryReport {
    pub beta: Mapping,
    pub exponent: usize,
    pub path: CorollaryPath,
}

impl CorollaryReport {
    pub fn isomorphic(&self) -> Option<bool> {
        match &self.path {
            CorollaryPath::Theorem2(_) => Some(true),
            CorollaryPath::IsomorphismSearch(IsoOutcome::Isomorphic(_)) => Some(true),
            CorollaryPath::IsomorphismSearch(IsoOutcome::NotIsomorphic(_)) => Some(false),
            CorollaryPath::IsomorphismSearch(IsoOutcome::Indeterminate { .. }) => None,
        }
    }
}

/// Look for `β ∈ SemiAut(N)` and `j` coprime to `ord(f₁)` with
/// `f₂ = β ∘ f₁^j ∘ β⁻¹`, preferring automorphisms for `β`.
pub fn corollary_check(
    base: &CayleyTable,
    h: usize,
    f1: &Mapping,
    f2: &Mapping,
    budget: u64,
) -> Result<CorollaryReport, ExtensionError> {
    cube_root_exponent(h)?;
    // validates both actions up front
    let spec1 = ExtensionSpec::new(base.clone(), h, f1.clone())?;
    let spec2 = ExtensionSpec::new(base.clone(), h, f2.clone())?;
    let group =
        enumerate_semiautomorphisms(base, SemiAutOptions { budget, identity_fixing: false }).map_err(|e| match e {
            MorphError::BudgetExhausted { .. } => ExtensionError::EnumerationBudget,
            other => other.into(),
        })?;
    let ord1 = f1.order();
    let exps: Vec<usize> = (1..=ord1).filter(|&j| gcd(j, ord1) == 1).collect();
    let (autos, semis): (Vec<&Mapping>, Vec<&Mapping>) = group.maps.iter().partition(|b| is_automorphism(base, b));
    let find = |betas: &[&Mapping]| -> Option<(Mapping, usize)> {
        for &beta in betas {
            let binv = beta.invert();
            for &j in &exps {
                let cand = beta.compose(&f1.power(j as i64)).ok()?.compose(&binv).ok()?;
                if &cand == f2 {
                    return Some((beta.clone(), j));
                }
            }
        }
        None
    };
    if let Some((beta, j)) = find(&autos) {
        // lift j to an exponent that is a unit mod h
        let lifted = (0..h)
            .map(|k| (j + k * ord1) % h)
            .find(|&e| gcd(e, h) == 1)
            .expect("a unit lift exists since ord(f1) divides h");
        let report = theorem2_isomorphism(base, h, f1, lifted, &beta)?;
        return Ok(CorollaryReport { beta, exponent: j, path: CorollaryPath::Theorem2(Box::new(report)) });
    }
    if let Some((beta, j)) = find(&semis) {
        let outcome = are_isomorphic(&spec1.materialize()?, &spec2.materialize()?);
        return Ok(CorollaryReport { beta, exponent: j, path: CorollaryPath::IsomorphismSearch(outcome) });
    }
    Err(ExtensionError::NotConjugate)
}
