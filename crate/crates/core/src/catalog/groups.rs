use std::collections::HashMap;

use super::{CatalogError, MAX_CATALOG_ORDER};
use crate::props::is_group;
use crate::scan::ScanPolicy;
use crate::table::CayleyTable;

pub fn cyclic(n: usize) -> Result<CayleyTable, CatalogError> {
    if n == 0 {
        return Err(CatalogError::BadParameter("cyclic group of order 0".into()));
    }
    if n > MAX_CATALOG_ORDER {
        return Err(CatalogError::TooLarge(n));
    }
    Ok(CayleyTable::from_fn(n, |x, y| (x + y) % n)?)
}

/// `(ℤ_p)^k` with index = base-`p` digits, least significant first.
pub fn elementary_abelian(p: usize, k: usize) -> Result<CayleyTable, CatalogError> {
    if p < 2 {
        return Err(CatalogError::BadParameter(format!("modulus {p}")));
    }
    let n = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&v| v <= MAX_CATALOG_ORDER));
    let n = n.ok_or(CatalogError::TooLarge(usize::MAX))?;
    Ok(CayleyTable::from_fn(n, |x, y| {
        let (mut x, mut y, mut out, mut place) = (x, y, 0, 1);
        for _ in 0..k {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    })?)
}

fn permutation_group(n: usize, keep: impl Fn(&[usize]) -> bool) -> Result<CayleyTable, CatalogError> {
    if n == 0 || n > 4 {
        return Err(CatalogError::BadParameter(format!("permutation degree {n} (1..=4 supported)")));
    }
    let mut perms = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        if keep(&cur) {
            perms.push(cur.clone());
        }
        if !next_permutation(&mut cur) {
            break;
        }
    }
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // (στ)(i) = σ(τ(i))
    Ok(CayleyTable::from_fn(perms.len(), |a, b| {
        let prod: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
        index[&prod]
    })?)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn is_even(p: &[usize]) -> bool {
    let inversions =
        (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

/// Permutations in lexicographic order, so the identity is element 0.
pub fn symmetric(n: usize) -> Result<CayleyTable, CatalogError> {
    permutation_group(n, |_| true)
}

pub fn alternating(n: usize) -> Result<CayleyTable, CatalogError> {
    permutation_group(n, is_even)
}

/// Elements `1, -1, i, -i, j, -j, k, -k` in that order.
pub fn quaternion8() -> CayleyTable {
    // unit products: (unit index, sign flip)
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    CayleyTable::from_fn(8, |a, b| {
        let (ua, sa) = (a / 2, a % 2 == 1);
        let (ub, sb) = (b / 2, b % 2 == 1);
        let (u, flip) = UNIT[ua][ub];
        2 * u + usize::from(sa ^ sb ^ flip)
    })
    .expect("Q8 table is valid")
}

/// Dihedral group of order `2n`: `r^k s^e` at index `e·n + k`.
pub fn dihedral(n: usize) -> Result<CayleyTable, CatalogError> {
    if n == 0 || 2 * n > MAX_CATALOG_ORDER {
        return Err(CatalogError::BadParameter(format!("dihedral parameter {n}")));
    }
    Ok(CayleyTable::from_fn(2 * n, |a, b| {
        let (ka, ea) = (a % n, a / n);
        let (kb, eb) = (b % n, b / n);
        let k = if ea == 0 { (ka + kb) % n } else { (ka + n - kb) % n };
        ((ea + eb) % 2) * n + k
    })?)
}

/// The order-`2|N|` loop on `N ∪ Nu` with `(xu)y = (xy⁻¹)u`,
/// `x(yu) = (yx)u` and `(xu)(yu) = y⁻¹x`. Element `xu` sits at `|N| + x`.
pub fn chein_double(base: &CayleyTable) -> Result<CayleyTable, CatalogError> {
    let n = base.order();
    if !is_group(base, &ScanPolicy::default())?.holds || base.inverse_mismatch().is_some() {
        return Err(CatalogError::NotAGroup);
    }
    let inv = |x| base.inverse(x);
    let t = CayleyTable::from_fn(2 * n, |a, b| match (a < n, b < n) {
        (true, true) => base.mul(a, b),
        (false, true) => n + base.mul(a - n, inv(b)),
        (true, false) => n + base.mul(b - n, a),
        (false, false) => base.mul(inv(b - n), a - n),
    })?;
    Ok(match base.name() {
        Some(name) => t.with_name(format!("chein:{name}")),
        None => t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::props::{exponent, is_commutative};

    #[test]
    fn small_groups() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!is_commutative(&s3).holds);
        assert!(is_group(&s3, &ScanPolicy::default()).unwrap().holds);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert!(is_group(&quaternion8(), &ScanPolicy::default()).unwrap().holds);
        assert_eq!(exponent(&quaternion8()).unwrap(), 4);
        assert!(is_group(&dihedral(5).unwrap(), &ScanPolicy::default()).unwrap().holds);
        assert!(symmetric(5).is_err());
    }

    #[test]
    fn elementary_abelian_3_4() {
        let t = elementary_abelian(3, 4).unwrap();
        assert_eq!(t.order(), 81);
        assert_eq!(exponent(&t).unwrap(), 3);
        assert!(is_group(&t, &ScanPolicy::default()).unwrap().holds);
    }

    #[test]
    fn q8_has_one_involution() {
        let q = quaternion8();
        let inv: Vec<_> = (1..8).filter(|&x| q.mul(x, x) == 0).collect();
        assert_eq!(inv, vec![1]);
    }

    #[test]
    fn chein_laws_hold_verbatim() {
        let s3 = symmetric(3).unwrap();
        let m = chein_double(&s3).unwrap();
        let u = 6;
        for x in 0..6 {
            for y in 0..6 {
                let xu = m.mul(x, u);
                let yu = m.mul(y, u);
                assert_eq!(m.mul(xu, y), m.mul(m.mul(x, s3.inverse(y)), u));
                assert_eq!(m.mul(x, yu), m.mul(m.mul(y, x), u));
                assert_eq!(m.mul(xu, yu), m.mul(s3.inverse(y), x));
            }
        }
    }

    #[test]
    fn chein_of_z2_is_klein() {
        let m = chein_double(&cyclic(2).unwrap()).unwrap();
        assert!(is_commutative(&m).holds);
        assert_eq!(exponent(&m).unwrap(), 2);
    }

    #[test]
    fn chein_rejects_non_groups() {
        let rows = ["01234", "10342", "23401", "34120", "42013"]
            .iter()
            .map(|r| r.bytes().map(|b| (b - b'0') as usize).collect())
            .collect::<Vec<Vec<usize>>>();
        let t = CayleyTable::from_rows(&rows).unwrap();
        assert_eq!(chein_double(&t).unwrap_err(), CatalogError::NotAGroup);
    }
}
