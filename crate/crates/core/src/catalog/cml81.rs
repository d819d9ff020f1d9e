//! The two commutative Moufang loops of order 81 and exponent 3.
//!
//! Elements are vectors in `(ℤ₃)⁴` indexed by `x₁ + 3x₂ + 9x₃ + 27x₄`.
//! The nonassociative loop uses the classical construction
//! `x∘y = x + y + (0, 0, 0, (x₁ − y₁)(x₂y₃ − x₃y₂))`; a verification gate
//! runs at construction and refuses to return a table that fails it.

use super::{elementary_abelian, CatalogError};
use crate::iso::are_isomorphic;
use crate::props::{exponent, is_commutative, is_group, is_moufang, MoufangMode};
use crate::scan::ScanPolicy;
use crate::table::CayleyTable;

fn digits(x: usize) -> [i64; 4] {
    [(x % 3) as i64, ((x / 3) % 3) as i64, ((x / 9) % 3) as i64, ((x / 27) % 3) as i64]
}

fn index(v: [i64; 4]) -> usize {
    v.iter().rev().fold(0, |acc, &d| acc * 3 + d.rem_euclid(3) as usize)
}

/// Product in the nonassociative loop, on element indices.
pub fn cml81_product(x: usize, y: usize) -> usize {
    let (a, b) = (digits(x), digits(y));
    let twist = (a[0] - b[0]) * (a[1] * b[2] - a[2] * b[1]);
    index([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3] + twist])
}

pub fn cml81_associative() -> Result<CayleyTable, CatalogError> {
    Ok(elementary_abelian(3, 4)?.with_name("cml81-assoc"))
}

pub fn cml81_nonassociative() -> Result<CayleyTable, CatalogError> {
    let t = CayleyTable::from_fn(81, cml81_product)?.with_name("cml81");
    let policy = ScanPolicy::default();
    let fail = |what: &str| Err(CatalogError::GateFailed(format!("cml81: {what}")));
    if !is_commutative(&t).holds {
        return fail("not commutative");
    }
    if exponent(&t)? != 3 {
        return fail("exponent is not 3");
    }
    if !is_moufang(&t, MoufangMode::Single, &policy)?.holds {
        return fail("not Moufang");
    }
    if is_group(&t, &policy)?.holds {
        return fail("associative");
    }
    if are_isomorphic(&t, &elementary_abelian(3, 4)?).is_isomorphic() {
        return fail("isomorphic to the elementary abelian group");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_zero_and_symmetric_twist() {
        for x in 0..81 {
            assert_eq!(cml81_product(0, x), x);
            for y in 0..81 {
                assert_eq!(cml81_product(x, y), cml81_product(y, x));
            }
        }
    }

    #[test]
    fn gate_passes() {
        let t = cml81_nonassociative().unwrap();
        let w = is_group(&t, &ScanPolicy::default()).unwrap().witness.unwrap();
        let [x, y, z] = w;
        assert_ne!(t.mul(t.mul(x, y), z), t.mul(x, t.mul(y, z)));
    }
}
