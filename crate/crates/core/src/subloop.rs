//! Subsets, subloops, normality and quotients.

use serde::Serialize;

use crate::error::LoopError;
use crate::table::{CayleyTable, Elem, TableError};

/// A sorted, duplicate-free set of elements of a parent loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetHandle {
    parent_order: usize,
    members: Vec<Elem>,
}

impl SubsetHandle {
    pub fn new(parent_order: usize, mut members: Vec<Elem>) -> Result<Self, LoopError> {
        if let Some(&x) = members.iter().find(|&&x| x >= parent_order) {
            return Err(TableError::OutOfRange { index: x, order: parent_order }.into());
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(TableError::Malformed("duplicate subset member".into()).into());
        }
        Ok(Self { parent_order, members })
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent_order];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }

    fn check_parent(&self, t: &CayleyTable) -> Result<(), LoopError> {
        if t.order() != self.parent_order {
            return Err(LoopError::ParentMismatch { expected: t.order(), actual: self.parent_order });
        }
        Ok(())
    }
}

/// Closed under the product and contains the identity.
pub fn is_subloop(t: &CayleyTable, s: &SubsetHandle) -> bool {
    if t.order() != s.parent_order || !s.contains(0) {
        return false;
    }
    let mask = s.mask();
    s.members.iter().all(|&a| s.members.iter().all(|&b| mask[t.mul(a, b)]))
}

/// Closure of `seed ∪ {0}` under multiplication.
pub fn subloop_generated(t: &CayleyTable, seed: &[Elem]) -> Result<SubsetHandle, LoopError> {
    let n = t.order();
    let mut mask = vec![false; n];
    let mut list = vec![0];
    mask[0] = true;
    for &x in seed {
        t.check(x)?;
        if !mask[x] {
            mask[x] = true;
            list.push(x);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for j in 0..=i {
            let b = list[j];
            for p in [t.mul(a, b), t.mul(b, a)] {
                if !mask[p] {
                    mask[p] = true;
                    list.push(p);
                }
            }
        }
        i += 1;
    }
    SubsetHandle::new(n, list)
}

/// The subloop as a table in its own right, members relabelled in sorted order.
pub fn induced_table(t: &CayleyTable, s: &SubsetHandle) -> Result<CayleyTable, LoopError> {
    s.check_parent(t)?;
    if !is_subloop(t, s) {
        return Err(LoopError::NotASubloop);
    }
    let mut local = vec![usize::MAX; t.order()];
    for (i, &x) in s.members.iter().enumerate() {
        local[x] = i;
    }
    let k = s.len();
    Ok(CayleyTable::from_fn(k, |i, j| local[t.mul(s.members[i], s.members[j])])?)
}

fn same_set(a: impl Iterator<Item = Elem>, b: impl Iterator<Item = Elem>, scratch: &mut [u32], stamp: u32) -> bool {
    // a and b have equal length; a's elements are distinct (translations are bijective)
    for x in a {
        scratch[x] = stamp;
    }
    b.into_iter().all(|y| scratch[y] == stamp)
}

/// Normality by cosets: `xS = Sx`, `(Sx)y = S(xy)` and `y(xS) = (yx)S` for all `x, y`.
pub fn is_normal(t: &CayleyTable, s: &SubsetHandle) -> Result<bool, LoopError> {
    s.check_parent(t)?;
    if !is_subloop(t, s) {
        return Err(LoopError::NotASubloop);
    }
    let n = t.order();
    let m = &s.members;
    let mut scratch = vec![0u32; n];
    let mut stamp = 0u32;
    let mut next = || {
        stamp += 1;
        stamp
    };
    for x in 0..n {
        if !same_set(m.iter().map(|&a| t.mul(x, a)), m.iter().map(|&a| t.mul(a, x)), &mut scratch, next()) {
            return Ok(false);
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = t.mul(x, y);
            let yx = t.mul(y, x);
            if !same_set(
                m.iter().map(|&a| t.mul(t.mul(a, x), y)),
                m.iter().map(|&a| t.mul(a, xy)),
                &mut scratch,
                next(),
            ) {
                return Ok(false);
            }
            if !same_set(
                m.iter().map(|&a| t.mul(y, t.mul(x, a))),
                m.iter().map(|&a| t.mul(yx, a)),
                &mut scratch,
                next(),
            ) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Quotient loop together with the coset map.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub table: CayleyTable,
    /// Coset index of every parent element.
    pub coset_of: Vec<usize>,
    /// Members of each coset, sorted.
    pub cosets: Vec<Vec<Elem>>,
}

pub fn quotient(t: &CayleyTable, s: &SubsetHandle) -> Result<Quotient, LoopError> {
    if !is_normal(t, s)? {
        return Err(LoopError::NotNormal);
    }
    let n = t.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<Elem>> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = cosets.len();
        let mut members: Vec<Elem> = s.members.iter().map(|&a| t.mul(a, x)).collect();
        members.sort_unstable();
        for &y in &members {
            if coset_of[y] != usize::MAX {
                return Err(LoopError::InternalInconsistency("cosets of a normal subloop overlap".into()));
            }
            coset_of[y] = id;
        }
        cosets.push(members);
    }
    let k = cosets.len();
    let reps: Vec<Elem> = cosets.iter().map(|c| c[0]).collect();
    let mut cells = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            cells[i * k + j] = coset_of[t.mul(reps[i], reps[j])] as u32;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if cells[coset_of[a] * k + coset_of[b]] as usize != coset_of[t.mul(a, b)] {
                return Err(LoopError::IllDefined(a, b));
            }
        }
    }
    let table = CayleyTable::from_cells(k, cells)?;
    Ok(Quotient { table, coset_of, cosets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::symmetric;

    #[test]
    fn generated_subloops_in_s3() {
        let s3 = symmetric(3).unwrap();
        // find a 3-cycle: element of order 3
        let c = (0..6).find(|&x| crate::props::element_order(&s3, x).unwrap() == 3).unwrap();
        assert_eq!(subloop_generated(&s3, &[c]).unwrap().len(), 3);
        assert_eq!(subloop_generated(&s3, &[0]).unwrap().members(), &[0]);
    }

    #[test]
    fn normality_in_s3() {
        let s3 = symmetric(3).unwrap();
        let c = (0..6).find(|&x| crate::props::element_order(&s3, x).unwrap() == 3).unwrap();
        let tr = (0..6).find(|&x| crate::props::element_order(&s3, x).unwrap() == 2).unwrap();
        let a3 = subloop_generated(&s3, &[c]).unwrap();
        let t2 = subloop_generated(&s3, &[tr]).unwrap();
        assert!(is_normal(&s3, &a3).unwrap());
        assert!(!is_normal(&s3, &t2).unwrap());
        let q = quotient(&s3, &a3).unwrap();
        assert_eq!(q.table.order(), 2);
        assert_eq!(q.coset_of[0], 0);
        assert_eq!(quotient(&s3, &t2).unwrap_err(), LoopError::NotNormal);
    }

    #[test]
    fn non_subloop_rejected() {
        let s3 = symmetric(3).unwrap();
        let s = SubsetHandle::new(6, vec![0, 1, 2]).unwrap();
        if !is_subloop(&s3, &s) {
            assert_eq!(is_normal(&s3, &s).unwrap_err(), LoopError::NotASubloop);
        }
        assert!(SubsetHandle::new(6, vec![0, 0]).is_err());
        assert!(SubsetHandle::new(6, vec![6]).is_err());
    }
}
