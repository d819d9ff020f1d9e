//! Loop isomorphism testing: invariant screening followed by backtracking
//! over images of a generating set.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::morphisms::Mapping;
use crate::props::{center, element_order, is_commutative, is_group, nucleus};
use crate::scan::ScanPolicy;
use crate::subloop::subloop_generated;
use crate::table::{CayleyTable, Elem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    /// Witness maps element `i` of the first loop to `map.apply(i)` of the second.
    Isomorphic(Mapping),
    NotIsomorphic(String),
    /// Budget ran out before the search finished.
    Indeterminate {
        nodes: u64,
    },
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&Mapping> {
        match self {
            IsoOutcome::Isomorphic(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IsoOptions {
    pub budget: u64,
    /// Orders above this skip the cubic invariants.
    pub cap: usize,
}

impl Default for IsoOptions {
    fn default() -> Self {
        Self { budget: 2_000_000, cap: 128 }
    }
}

/// Per-element invariant used to match candidate images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Fingerprint {
    order: Option<usize>,
    square_order: Option<usize>,
    commutant: usize,
    left_assoc: usize,
    fixed_by_square: bool,
}

fn fingerprints(t: &CayleyTable, cubic: bool) -> Vec<Fingerprint> {
    let n = t.order();
    (0..n)
        .into_par_iter()
        .map(|x| {
            let commutant = (0..n).filter(|&y| t.mul(x, y) == t.mul(y, x)).count();
            let left_assoc = if cubic {
                (0..n)
                    .map(|y| {
                        let xy = t.mul(x, y);
                        (0..n).filter(|&z| t.mul(xy, z) == t.mul(x, t.mul(y, z))).count()
                    })
                    .sum()
            } else {
                0
            };
            let sq = t.mul(x, x);
            Fingerprint {
                order: element_order(t, x).ok(),
                square_order: element_order(t, sq).ok(),
                commutant,
                left_assoc,
                fixed_by_square: sq == x,
            }
        })
        .collect()
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// Cheap-to-compare invariants; differing screens prove non-isomorphism.
fn screen(a: &CayleyTable, b: &CayleyTable, opts: &IsoOptions) -> Option<String> {
    if a.order() != b.order() {
        return Some(format!("orders differ ({} vs {})", a.order(), b.order()));
    }
    if is_commutative(a).holds != is_commutative(b).holds {
        return Some("commutativity differs".into());
    }
    if a.order() <= opts.cap {
        let p = ScanPolicy::with_cap(opts.cap);
        let ga = is_group(a, &p).map(|o| o.holds).ok();
        let gb = is_group(b, &p).map(|o| o.holds).ok();
        if ga != gb {
            return Some("associativity differs".into());
        }
        let (na, nb) = (nucleus(a, &p).ok().map(|s| s.len()), nucleus(b, &p).ok().map(|s| s.len()));
        if na != nb {
            return Some(format!("nucleus sizes differ ({na:?} vs {nb:?})"));
        }
        let (ca, cb) = (center(a, &p).ok().map(|s| s.len()), center(b, &p).ok().map(|s| s.len()));
        if ca != cb {
            return Some(format!("center sizes differ ({ca:?} vs {cb:?})"));
        }
    }
    let oa: Vec<_> = (0..a.order()).map(|x| element_order(a, x).ok()).collect();
    let ob: Vec<_> = (0..b.order()).map(|x| element_order(b, x).ok()).collect();
    if sorted(&oa) != sorted(&ob) {
        return Some("element order profiles differ".into());
    }
    None
}

const UNSET: u32 = u32::MAX;

struct Search<'a> {
    a: &'a CayleyTable,
    b: &'a CayleyTable,
    map: Vec<u32>,
    used: Vec<bool>,
    dom: Vec<Elem>,
    gens: Vec<Elem>,
    cands: Vec<Vec<Elem>>,
    nodes: u64,
    budget: u64,
    find_all: bool,
    found: Vec<Mapping>,
}

impl Search<'_> {
    /// Close the partial map under products, starting at `dom[start]`.
    fn extend(&mut self, start: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let mut i = start;
        while i < self.dom.len() {
            let x = self.dom[i];
            for j in 0..=i {
                let y = self.dom[j];
                for (p, q) in [(x, y), (y, x)] {
                    let prod = a.mul(p, q);
                    let img = b.mul(self.map[p] as usize, self.map[q] as usize);
                    let cur = self.map[prod];
                    if cur == UNSET {
                        if self.used[img] {
                            return false;
                        }
                        self.map[prod] = img as u32;
                        self.used[img] = true;
                        self.dom.push(prod);
                    } else if cur as usize != img {
                        return false;
                    }
                }
            }
            i += 1;
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.dom.len() > mark {
            let x = self.dom.pop().unwrap();
            self.used[self.map[x] as usize] = false;
            self.map[x] = UNSET;
        }
    }

    /// Returns false when the search should stop (budget, or first hit found).
    fn dfs(&mut self, depth: usize) -> bool {
        if depth == self.gens.len() {
            debug_assert_eq!(self.dom.len(), self.a.order());
            self.found.push(Mapping::from_u32(self.map.clone()).expect("bijective by construction"));
            return self.find_all;
        }
        let g = self.gens[depth];
        for k in 0..self.cands[depth].len() {
            let c = self.cands[depth][k];
            if self.used[c] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            let mark = self.dom.len();
            self.map[g] = c as u32;
            self.used[c] = true;
            self.dom.push(g);
            if self.extend(mark) && !self.dfs(depth + 1) {
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

/// Greedy generating set, rarest fingerprint classes first.
fn generators(t: &CayleyTable, fp: &[Fingerprint]) -> Vec<Elem> {
    let mut class_size: HashMap<Fingerprint, usize> = HashMap::new();
    for f in fp {
        *class_size.entry(*f).or_default() += 1;
    }
    let mut gens = Vec::new();
    let mut closure = subloop_generated(t, &[]).expect("identity is valid");
    while closure.len() < t.order() {
        let next = (0..t.order())
            .filter(|&x| !closure.contains(x))
            .min_by_key(|&x| (class_size[&fp[x]], x))
            .expect("closure is proper");
        gens.push(next);
        closure = subloop_generated(t, &gens).expect("valid elements");
    }
    gens
}

fn run_search(a: &CayleyTable, b: &CayleyTable, opts: &IsoOptions, find_all: bool) -> (Vec<Mapping>, bool, u64) {
    let cubic = a.order() <= opts.cap;
    let (fa, fb) = (fingerprints(a, cubic), fingerprints(b, cubic));
    if sorted(&fa) != sorted(&fb) {
        return (Vec::new(), true, 0);
    }
    let gens = generators(a, &fa);
    let cands = gens.iter().map(|&g| (0..b.order()).filter(|&y| fb[y] == fa[g]).collect()).collect();
    let n = a.order();
    let mut s = Search {
        a,
        b,
        map: vec![UNSET; n],
        used: vec![false; n],
        dom: vec![0],
        gens,
        cands,
        nodes: 0,
        budget: opts.budget,
        find_all,
        found: Vec::new(),
    };
    s.map[0] = 0;
    s.used[0] = true;
    let completed = s.extend(0) && (s.dfs(0) || (!find_all && !s.found.is_empty()));
    (s.found, completed, s.nodes)
}

pub fn are_isomorphic(a: &CayleyTable, b: &CayleyTable) -> IsoOutcome {
    are_isomorphic_with(a, b, &IsoOptions::default())
}

pub fn are_isomorphic_with(a: &CayleyTable, b: &CayleyTable, opts: &IsoOptions) -> IsoOutcome {
    if let Some(reason) = screen(a, b, opts) {
        return IsoOutcome::NotIsomorphic(reason);
    }
    let (mut found, completed, nodes) = run_search(a, b, opts, false);
    match found.pop() {
        Some(m) => IsoOutcome::Isomorphic(m),
        None if completed => IsoOutcome::NotIsomorphic("backtracking exhausted".into()),
        None => IsoOutcome::Indeterminate { nodes },
    }
}

/// Full automorphism group by direct backtracking, sorted; `None` if the
/// budget ran out.
pub fn automorphisms(t: &CayleyTable, opts: &IsoOptions) -> Option<Vec<Mapping>> {
    let (mut found, completed, _) = run_search(t, t, opts, true);
    if !completed {
        return None;
    }
    found.sort();
    Some(found)
}

/// Checks `map(xy) = map(x)map(y)` for all pairs.
pub fn is_isomorphism(a: &CayleyTable, b: &CayleyTable, m: &Mapping) -> bool {
    a.order() == b.order()
        && m.len() == a.order()
        && crate::scan::first_pair_violation(a.order(), |x, y| m.apply(a.mul(x, y)) == b.mul(m.apply(x), m.apply(y)))
            .is_none()
}
