//! Bijections of a loop: classification, composition, conjugation maps,
//! inner mappings and semi-automorphism enumeration.

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::LoopError;
use crate::props::lcm;
use crate::scan::{first_pair_violation, ScanPolicy};
use crate::table::{CayleyTable, Elem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphError {
    #[error("images do not form a permutation of 0..{0}")]
    NotBijective(usize),
    #[error("mappings act on sets of different sizes ({0} vs {1})")]
    ParentMismatch(usize, usize),
    #[error("element {0} has no two-sided inverse")]
    NoTwoSidedInverse(Elem),
    #[error("conjugation by {u} is ambiguous at {g}: (ug)u⁻¹ != u(gu⁻¹)")]
    AmbiguousConjugation { u: Elem, g: Elem },
    #[error("search budget of {budget} nodes exhausted after finding {found} mappings")]
    BudgetExhausted { budget: u64, found: usize },
    #[error("enumerated set is not a group: {0}")]
    NotClosed(String),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// A permutation of the elements of some loop.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Mapping {
    images: Vec<u32>,
}

impl fmt::Debug for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mapping{:?}", self.images)
    }
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.images {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

impl Mapping {
    pub fn new(images: Vec<usize>) -> Result<Self, MorphError> {
        Self::from_u32(images.into_iter().map(|x| x as u32).collect())
    }

    pub fn from_u32(images: Vec<u32>) -> Result<Self, MorphError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(MorphError::NotBijective(n));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn from_fn(n: usize, f: impl Fn(Elem) -> Elem) -> Result<Self, MorphError> {
        Self::new((0..n).map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x] as Elem
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn fixes_identity(&self) -> bool {
        self.images.first() == Some(&0)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Mapping) -> Result<Mapping, MorphError> {
        if self.len() != other.len() {
            return Err(MorphError::ParentMismatch(self.len(), other.len()));
        }
        Ok(Mapping { images: other.images.iter().map(|&x| self.images[x as usize]).collect() })
    }

    pub fn invert(&self) -> Mapping {
        let mut inv = vec![0u32; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Mapping { images: inv }
    }

    /// `self^k`, negative `k` allowed.
    pub fn power(&self, k: i64) -> Mapping {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut e = k.unsigned_abs() % self.order() as u64;
        let mut acc = Mapping::identity(self.len());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = sq.compose(&acc).expect("same length");
            }
            sq = sq.compose(&sq).expect("same length");
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, from the cycle structure.
    pub fn order(&self) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut ord = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }
}

/// Classification of a bijection with respect to a loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapClass {
    pub is_automorphism: bool,
    pub is_anti_automorphism: bool,
    pub is_semi_automorphism: bool,
    pub order: usize,
    pub hom_witness: Option<(Elem, Elem)>,
    pub anti_witness: Option<(Elem, Elem)>,
    pub semi_witness: Option<(Elem, Elem)>,
}

/// Short label used in listings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MapKind {
    Both,
    Auto,
    Anti,
    Proper,
    NotSemi,
}

impl MapKind {
    pub fn label(self) -> &'static str {
        match self {
            MapKind::Both => "BOTH",
            MapKind::Auto => "AUTO",
            MapKind::Anti => "ANTI",
            MapKind::Proper => "PROPER",
            MapKind::NotSemi => "NONE",
        }
    }
}

impl MapClass {
    pub fn kind(&self) -> MapKind {
        match (self.is_automorphism, self.is_anti_automorphism, self.is_semi_automorphism) {
            (true, true, _) => MapKind::Both,
            (true, false, _) => MapKind::Auto,
            (false, true, _) => MapKind::Anti,
            (false, false, true) => MapKind::Proper,
            (false, false, false) => MapKind::NotSemi,
        }
    }
}

fn check_len(t: &CayleyTable, m: &Mapping) -> Result<(), MorphError> {
    if t.order() != m.len() {
        return Err(MorphError::ParentMismatch(t.order(), m.len()));
    }
    Ok(())
}

/// First pair `(a, b)` where the semi-automorphism identity fails in either
/// bracketing: `f((ab)a) = (f(a)f(b))f(a)` and `f(a(ba)) = f(a)(f(b)f(a))`.
pub fn semi_violation(t: &CayleyTable, m: &Mapping) -> Option<(Elem, Elem)> {
    first_pair_violation(t.order(), |a, b| {
        let (fa, fb) = (m.apply(a), m.apply(b));
        m.apply(t.mul(t.mul(a, b), a)) == t.mul(t.mul(fa, fb), fa)
            && m.apply(t.mul(a, t.mul(b, a))) == t.mul(fa, t.mul(fb, fa))
    })
}

pub fn is_semi_automorphism(t: &CayleyTable, m: &Mapping) -> bool {
    t.order() == m.len() && semi_violation(t, m).is_none()
}

pub fn is_automorphism(t: &CayleyTable, m: &Mapping) -> bool {
    t.order() == m.len()
        && first_pair_violation(t.order(), |a, b| m.apply(t.mul(a, b)) == t.mul(m.apply(a), m.apply(b))).is_none()
}

/// Exhaustive pair scans for each property.
pub fn classify(t: &CayleyTable, m: &Mapping) -> Result<MapClass, MorphError> {
    check_len(t, m)?;
    let n = t.order();
    let hom = first_pair_violation(n, |a, b| m.apply(t.mul(a, b)) == t.mul(m.apply(a), m.apply(b)));
    let anti = first_pair_violation(n, |a, b| m.apply(t.mul(a, b)) == t.mul(m.apply(b), m.apply(a)));
    let semi = semi_violation(t, m);
    Ok(MapClass {
        is_automorphism: hom.is_none(),
        is_anti_automorphism: anti.is_none(),
        is_semi_automorphism: semi.is_none(),
        order: m.order(),
        hom_witness: hom,
        anti_witness: anti,
        semi_witness: semi,
    })
}

/// `x ↦ x⁻¹` using right inverses.
pub fn inversion(t: &CayleyTable) -> Mapping {
    Mapping::from_fn(t.order(), |x| t.inverse(x)).expect("inversion is a bijection")
}

/// `g ↦ (ug)u⁻¹`, checked against `u(gu⁻¹)` for every `g`.
pub fn conjugation_map(t: &CayleyTable, u: Elem) -> Result<Mapping, MorphError> {
    t.check(u).map_err(LoopError::from)?;
    let ui = t.inverse(u);
    if t.left_inverse(u) != ui {
        return Err(MorphError::NoTwoSidedInverse(u));
    }
    let n = t.order();
    let mut images = Vec::with_capacity(n);
    for g in 0..n {
        let a = t.mul(t.mul(u, g), ui);
        if a != t.mul(u, t.mul(g, ui)) {
            return Err(MorphError::AmbiguousConjugation { u, g });
        }
        images.push(a as u32);
    }
    Mapping::from_u32(images)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum InnerLabel {
    /// `g ↦ (yx)\(y(xg))`
    L { x: Elem, y: Elem },
    /// `g ↦ ((gx)y)/(xy)`
    R { x: Elem, y: Elem },
    /// `g ↦ x\(gx)`
    T { x: Elem },
}

impl fmt::Display for InnerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerLabel::L { x, y } => write!(f, "L({x},{y})"),
            InnerLabel::R { x, y } => write!(f, "R({x},{y})"),
            InnerLabel::T { x } => write!(f, "T({x})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct InnerMap {
    pub label: InnerLabel,
    pub map: Mapping,
}

/// All standard generators of the inner mapping group.
pub fn inner_generators(t: &CayleyTable, policy: &ScanPolicy) -> Result<Vec<InnerMap>, MorphError> {
    let n = t.order();
    if n > policy.cap {
        return Err(LoopError::CapExceeded { order: n, cap: policy.cap }.into());
    }
    let build = |f: &dyn Fn(Elem) -> Elem| Mapping::from_fn(n, f).expect("inner maps are bijections");
    let mut out = Vec::with_capacity(2 * n * n + n);
    for x in 0..n {
        for y in 0..n {
            let yx = t.mul(y, x);
            out.push(InnerMap {
                label: InnerLabel::L { x, y },
                map: build(&|g| t.left_div(yx, t.mul(y, t.mul(x, g)))),
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = t.mul(x, y);
            out.push(InnerMap {
                label: InnerLabel::R { x, y },
                map: build(&|g| t.right_div(t.mul(t.mul(g, x), y), xy)),
            });
        }
    }
    for x in 0..n {
        out.push(InnerMap { label: InnerLabel::T { x }, map: build(&|g| t.left_div(x, t.mul(g, x))) });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemiAutOptions {
    /// Maximum number of search nodes.
    pub budget: u64,
    /// Only keep maps with `f(0) = 0`.
    pub identity_fixing: bool,
}

impl Default for SemiAutOptions {
    fn default() -> Self {
        Self { budget: 50_000_000, identity_fixing: false }
    }
}

/// The semi-automorphism group found by [`enumerate_semiautomorphisms`].
#[derive(Debug, Clone)]
pub struct SemiAutGroup {
    /// Sorted by image array.
    pub maps: Vec<Mapping>,
    pub nodes: u64,
    /// Closure under composition and inversion was checked pairwise.
    pub closure_verified: bool,
}

const UNSET: u32 = u32::MAX;

struct SemiSearch<'a> {
    t: &'a CayleyTable,
    img: Vec<u32>,
    used: Vec<bool>,
    trail: Vec<Elem>,
    queue: Vec<(Elem, Elem)>,
}

impl<'a> SemiSearch<'a> {
    fn new(t: &'a CayleyTable) -> Self {
        let n = t.order();
        Self { t, img: vec![UNSET; n], used: vec![false; n], trail: Vec::with_capacity(n), queue: Vec::new() }
    }

    /// Assign `x ↦ v` and propagate forced images; false on contradiction.
    fn assign(&mut self, x: Elem, v: Elem) -> bool {
        let t = self.t;
        self.queue.clear();
        self.queue.push((x, v));
        while let Some((x, v)) = self.queue.pop() {
            let cur = self.img[x];
            if cur != UNSET {
                if cur as usize != v {
                    return false;
                }
                continue;
            }
            if self.used[v] {
                return false;
            }
            self.img[x] = v as u32;
            self.used[v] = true;
            self.trail.push(x);
            for i in 0..self.trail.len() {
                let a = self.trail[i];
                let fa = self.img[a] as usize;
                for (p, fp, q, fq) in [(a, fa, x, v), (x, v, a, fa)] {
                    // f((pq)p) = (f(p)f(q))f(p), f(p(qp)) = f(p)(f(q)f(p))
                    self.queue.push((t.mul(t.mul(p, q), p), t.mul(t.mul(fp, fq), fp)));
                    self.queue.push((t.mul(p, t.mul(q, p)), t.mul(fp, t.mul(fq, fp))));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.used[self.img[x] as usize] = false;
            self.img[x] = UNSET;
        }
    }

    fn dfs(&mut self, nodes: &AtomicU64, budget: u64, out: &mut Vec<Mapping>) -> bool {
        let Some(x) = self.img.iter().position(|&v| v == UNSET) else {
            out.push(Mapping { images: self.img.clone() });
            return true;
        };
        for v in 0..self.t.order() {
            if self.used[v] {
                continue;
            }
            if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
                return false;
            }
            let mark = self.trail.len();
            if self.assign(x, v) && !self.dfs(nodes, budget, out) {
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

/// All bijections satisfying the semi-automorphism identity in both
/// bracketings. Identity-moving maps are included unless filtered.
pub fn enumerate_semiautomorphisms(t: &CayleyTable, opts: SemiAutOptions) -> Result<SemiAutGroup, MorphError> {
    let n = t.order();
    let nodes = AtomicU64::new(0);
    let first: Vec<Elem> = if opts.identity_fixing { vec![0] } else { (0..n).collect() };
    let branches: Vec<(bool, Vec<Mapping>)> = first
        .par_iter()
        .map(|&v| {
            let mut s = SemiSearch::new(t);
            let mut out = Vec::new();
            if nodes.fetch_add(1, Ordering::Relaxed) >= opts.budget {
                return (false, out);
            }
            let ok = !s.assign(0, v) || s.dfs(&nodes, opts.budget, &mut out);
            (ok, out)
        })
        .collect();
    let complete = branches.iter().all(|(ok, _)| *ok);
    let mut maps: Vec<Mapping> = branches.into_iter().flat_map(|(_, m)| m).collect();
    maps.sort();
    if !complete {
        return Err(MorphError::BudgetExhausted { budget: opts.budget, found: maps.len() });
    }
    if let Some(m) = maps.iter().find(|m| !is_semi_automorphism(t, m)) {
        return Err(MorphError::NotClosed(format!("{m:?} fails the semi-automorphism identity")));
    }
    let closure_verified = verify_group(&maps)?;
    Ok(SemiAutGroup { maps, nodes: nodes.into_inner(), closure_verified })
}

/// Pairwise closure check; skipped (returns false) above 4096 maps.
fn verify_group(maps: &[Mapping]) -> Result<bool, MorphError> {
    if maps.is_empty() || maps.len() > 4096 {
        return Ok(false);
    }
    let set: HashSet<&Mapping> = maps.iter().collect();
    let n = maps[0].len();
    if !set.contains(&Mapping::identity(n)) {
        return Err(MorphError::NotClosed("identity missing".into()));
    }
    for a in maps {
        if !set.contains(&a.invert()) {
            return Err(MorphError::NotClosed(format!("inverse of {a:?} missing")));
        }
    }
    let bad = maps.par_iter().find_any(|a| maps.iter().any(|b| !set.contains(&a.compose(b).expect("same length"))));
    if let Some(a) = bad {
        return Err(MorphError::NotClosed(format!("composition with {a:?} escapes the set")));
    }
    Ok(true)
}
