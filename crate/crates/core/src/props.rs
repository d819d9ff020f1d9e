//! Structural predicates: associativity, the Moufang identities,
//! commutativity, element orders, nucleus and center.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::LoopError;
use crate::scan::{first_pair_violation, triple_scan, ScanMode, ScanOutcome, ScanPolicy};
use crate::subloop::SubsetHandle;
use crate::table::{CayleyTable, Elem, LoopOps};

pub type TripleOutcome = ScanOutcome<[Elem; 3]>;
pub type PairOutcome = ScanOutcome<(Elem, Elem)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoufangMode {
    /// `(xy)(zx) = x((yz)x)` only.
    Single,
    /// All four identities, cross-checked against each other.
    AllFour,
}

fn mode_for(n: usize, policy: &ScanPolicy) -> Result<ScanMode, LoopError> {
    policy.mode_for(n).ok_or(LoopError::CapExceeded { order: n, cap: policy.cap })
}

/// Associativity scan. A witness `(x, y, z)` has `(xy)z != x(yz)`.
pub fn is_group<L: LoopOps + ?Sized>(l: &L, policy: &ScanPolicy) -> Result<TripleOutcome, LoopError> {
    let mode = mode_for(l.order(), policy)?;
    Ok(triple_scan(l.order(), mode, |x, y, z| l.op(l.op(x, y), z) == l.op(x, l.op(y, z))))
}

/// `(xy)(zx) = x((yz)x)`
pub fn moufang_1<L: LoopOps + ?Sized>(l: &L, x: Elem, y: Elem, z: Elem) -> bool {
    l.op(l.op(x, y), l.op(z, x)) == l.op(x, l.op(l.op(y, z), x))
}

/// `(xy)(zx) = (x(yz))x`
pub fn moufang_2<L: LoopOps + ?Sized>(l: &L, x: Elem, y: Elem, z: Elem) -> bool {
    l.op(l.op(x, y), l.op(z, x)) == l.op(l.op(x, l.op(y, z)), x)
}

/// `((xy)x)z = x(y(xz))`
pub fn moufang_3<L: LoopOps + ?Sized>(l: &L, x: Elem, y: Elem, z: Elem) -> bool {
    l.op(l.op(l.op(x, y), x), z) == l.op(x, l.op(y, l.op(x, z)))
}

/// `((zx)y)x = z(x(yx))`
pub fn moufang_4<L: LoopOps + ?Sized>(l: &L, x: Elem, y: Elem, z: Elem) -> bool {
    l.op(l.op(l.op(z, x), y), x) == l.op(z, l.op(x, l.op(y, x)))
}

/// Moufang scan. In `AllFour` mode with a full scan the four identities
/// must agree on whether they hold; disagreement is an internal error.
/// Sampled `AllFour` scans report the smallest triple violating any of them.
pub fn is_moufang<L: LoopOps + ?Sized>(
    l: &L,
    mode: MoufangMode,
    policy: &ScanPolicy,
) -> Result<TripleOutcome, LoopError> {
    let n = l.order();
    let scan = mode_for(n, policy)?;
    match mode {
        MoufangMode::Single => Ok(triple_scan(n, scan, |x, y, z| moufang_1(l, x, y, z))),
        MoufangMode::AllFour => {
            let first = triple_scan(n, scan, |x, y, z| moufang_1(l, x, y, z));
            let rest = [
                triple_scan(n, scan, |x, y, z| moufang_2(l, x, y, z)),
                triple_scan(n, scan, |x, y, z| moufang_3(l, x, y, z)),
                triple_scan(n, scan, |x, y, z| moufang_4(l, x, y, z)),
            ];
            match scan {
                ScanMode::Full => {
                    if let Some(i) = rest.iter().position(|o| o.holds != first.holds) {
                        return Err(LoopError::InternalInconsistency(format!(
                            "Moufang identity 1 {} but identity {} {}",
                            if first.holds { "holds" } else { "fails" },
                            i + 2,
                            if rest[i].holds { "holds" } else { "fails" },
                        )));
                    }
                    Ok(first)
                }
                ScanMode::Sampled { .. } => {
                    let witness = std::iter::once(&first).chain(rest.iter()).filter_map(|o| o.witness).min();
                    Ok(ScanOutcome::from_witness(witness, scan))
                }
            }
        }
    }
}

pub fn is_commutative<L: LoopOps + ?Sized>(l: &L) -> PairOutcome {
    let w = first_pair_violation(l.order(), |x, y| l.op(x, y) == l.op(y, x));
    ScanOutcome::from_witness(w, ScanMode::Full)
}

/// Least `k >= 1` with `x^k = 0`, requiring left and right powers to agree.
pub fn element_order<L: LoopOps + ?Sized>(l: &L, x: Elem) -> Result<usize, LoopError> {
    let n = l.order();
    if x >= n {
        return Err(crate::table::TableError::OutOfRange { index: x, order: n }.into());
    }
    let (mut left, mut right) = (x, x);
    for k in 1..=n {
        if left != right {
            return Err(LoopError::NotPowerAssociative(x));
        }
        if left == 0 {
            return Ok(k);
        }
        left = l.op(x, left);
        right = l.op(right, x);
    }
    Err(LoopError::NotPowerAssociative(x))
}

/// Orders of all elements, in index order.
pub fn order_profile<L: LoopOps + ?Sized>(l: &L) -> Result<Vec<usize>, LoopError> {
    (0..l.order()).into_par_iter().map(|x| element_order(l, x)).collect()
}

pub fn exponent<L: LoopOps + ?Sized>(l: &L) -> Result<usize, LoopError> {
    Ok(order_profile(l)?.into_iter().fold(1, lcm))
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn in_nucleus(t: &CayleyTable, a: Elem) -> bool {
    let n = t.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            t.mul(t.mul(a, x), y) == t.mul(a, t.mul(x, y))
                && t.mul(t.mul(x, a), y) == t.mul(x, t.mul(a, y))
                && t.mul(t.mul(x, y), a) == t.mul(x, t.mul(y, a))
        })
    })
}

/// Elements associating with every pair in all three positions.
pub fn nucleus(t: &CayleyTable, policy: &ScanPolicy) -> Result<SubsetHandle, LoopError> {
    let n = t.order();
    if n > policy.cap {
        return Err(LoopError::CapExceeded { order: n, cap: policy.cap });
    }
    let members: Vec<Elem> = (0..n).into_par_iter().filter(|&a| in_nucleus(t, a)).collect();
    SubsetHandle::new(n, members)
}

/// Nucleus elements commuting with everything.
pub fn center(t: &CayleyTable, policy: &ScanPolicy) -> Result<SubsetHandle, LoopError> {
    let nuc = nucleus(t, policy)?;
    let n = t.order();
    let members = nuc.members().iter().copied().filter(|&a| (0..n).all(|x| t.mul(a, x) == t.mul(x, a))).collect();
    SubsetHandle::new(n, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> CayleyTable {
        CayleyTable::from_fn(n, |x, y| (x + y) % n).unwrap()
    }

    fn s3() -> CayleyTable {
        crate::catalog::symmetric(3).unwrap()
    }

    fn order5_loop() -> CayleyTable {
        let rows = ["01234", "10342", "23401", "34120", "42013"]
            .iter()
            .map(|r| r.bytes().map(|b| (b - b'0') as usize).collect())
            .collect::<Vec<Vec<usize>>>();
        CayleyTable::from_rows(&rows).unwrap()
    }

    /// Brute-force associativity oracle independent of the scan helpers.
    fn brute_assoc_witness(t: &CayleyTable) -> Option<[usize; 3]> {
        let n = t.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if t.mul(t.mul(x, y), z) != t.mul(x, t.mul(y, z)) {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    #[test]
    fn groups_are_groups_and_moufang() {
        let p = ScanPolicy::default();
        assert!(is_group(&z(4), &p).unwrap().holds);
        assert!(is_moufang(&s3(), MoufangMode::AllFour, &p).unwrap().holds);
    }

    #[test]
    fn order5_loop_is_not_moufang() {
        let t = order5_loop();
        let p = ScanPolicy::default();
        let m = is_moufang(&t, MoufangMode::AllFour, &p).unwrap();
        assert!(!m.holds);
        let [x, y, z] = m.witness.unwrap();
        assert!(!moufang_1(&t, x, y, z));
        let g = is_group(&t, &p).unwrap();
        assert_eq!(g.witness, brute_assoc_witness(&t));
        // brute force over elements × pairs
        let oracle: Vec<usize> = (0..5).filter(|&a| in_nucleus(&t, a)).collect();
        assert_eq!(oracle, vec![0]);
        assert_eq!(nucleus(&t, &p).unwrap().members(), &[0]);
    }

    #[test]
    fn cap_is_enforced() {
        let t = z(10);
        let p = ScanPolicy::with_cap(8);
        assert_eq!(is_group(&t, &p).unwrap_err(), LoopError::CapExceeded { order: 10, cap: 8 });
        let sampled = ScanPolicy { cap: 8, ..ScanPolicy::sampled(1000, 1) };
        let out = is_group(&t, &sampled).unwrap();
        assert!(out.holds);
        assert_eq!(out.mode, ScanMode::Sampled { count: 1000, seed: 1 });
    }

    #[test]
    fn orders_and_exponent() {
        assert_eq!(element_order(&z(6), 2).unwrap(), 3);
        assert_eq!(element_order(&z(6), 0).unwrap(), 1);
        assert_eq!(exponent(&z(6)).unwrap(), 6);
        assert_eq!(exponent(&s3()).unwrap(), 6);
    }

    #[test]
    fn non_power_associative_element() {
        // 2·2 = 4, then 2·4 = 1 but 4·2 = 0
        let t = order5_loop();
        assert_eq!(element_order(&t, 2).unwrap_err(), LoopError::NotPowerAssociative(2));
        assert_eq!(element_order(&t, 1).unwrap(), 2);
    }

    #[test]
    fn s3_is_not_commutative() {
        let c = is_commutative(&s3());
        assert!(!c.holds);
        let (x, y) = c.witness.unwrap();
        let t = s3();
        assert_ne!(t.mul(x, y), t.mul(y, x));
        assert!(is_commutative(&z(7)).holds);
    }

    #[test]
    fn group_nucleus_is_everything() {
        let p = ScanPolicy::default();
        assert_eq!(nucleus(&s3(), &p).unwrap().len(), 6);
        assert_eq!(center(&s3(), &p).unwrap().members(), &[0]);
        assert_eq!(center(&z(4), &p).unwrap().len(), 4);
    }
}
