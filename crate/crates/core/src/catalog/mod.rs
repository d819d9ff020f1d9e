//! Constructors for the loops and mappings used throughout: small groups,
//! the doubles `M(N, 2)`, the Heisenberg group over a prime field with a
//! proper semi-automorphism, and the commutative Moufang loops of order 81.

mod cml81;
mod groups;
mod u3;

use thiserror::Error;

pub use cml81::{cml81_associative, cml81_nonassociative, cml81_product};
pub use groups::{alternating, chein_double, cyclic, dihedral, elementary_abelian, quaternion8, symmetric};
pub use u3::{rajah_loop, rajah_semiauto, u3_group, PrimeField, U3Group, UnipotentCoord};

use crate::error::LoopError;
use crate::table::{CayleyTable, TableError};

/// Largest order any catalog constructor materializes.
pub const MAX_CATALOG_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("requested order {0} exceeds the catalog limit")]
    TooLarge(usize),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("input loop is not a group")]
    NotAGroup,
    #[error("multiplicative order {order} of k is not an admissible prime for q = {q}")]
    BadOrder { order: u64, q: u64 },
    #[error("construction gate failed: {0}")]
    GateFailed(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// Resolve a short catalog name: `z5`, `sym3`, `alt4`, `q8`, `dih4`,
/// `abelian:3:4`, `u3:3`, `cml81`, `cml81-assoc`, `chein:<name>`.
/// `s<n>` and `a<n>` abbreviate `sym<n>` and `alt<n>`.
pub fn named(name: &str) -> Result<CayleyTable, CatalogError> {
    let bad = || CatalogError::BadParameter(format!("unknown catalog name {name:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let t = if let Some(rest) = name.strip_prefix("chein:") {
        chein_double(&named(rest)?)?
    } else if let Some(rest) = name.strip_prefix("abelian:") {
        let (p, k) = rest.split_once(':').ok_or_else(bad)?;
        elementary_abelian(num(p)?, num(k)?)?
    } else if let Some(q) = name.strip_prefix("u3:") {
        u3_group(num(q)? as u64)?.materialize()?
    } else if name == "q8" {
        quaternion8()
    } else if name == "cml81" {
        cml81_nonassociative()?
    } else if name == "cml81-assoc" {
        cml81_associative()?
    } else if let Some(n) = name.strip_prefix("sym") {
        symmetric(num(n)?)?
    } else if let Some(n) = name.strip_prefix("alt") {
        alternating(num(n)?)?
    } else if let Some(n) = name.strip_prefix("dih") {
        dihedral(num(n)?)?
    } else if let Some(n) = name.strip_prefix('z') {
        cyclic(num(n)?)?
    } else if let Some(n) = name.strip_prefix('s') {
        symmetric(num(n)?)?
    } else if let Some(n) = name.strip_prefix('a') {
        alternating(num(n)?)?
    } else {
        return Err(bad());
    };
    Ok(t.with_name(name))
}

/// Moufang loops of order at most 81 used as test substrates.
pub fn moufang_catalog() -> Vec<CayleyTable> {
    [
        "z1",
        "z2",
        "z3",
        "z4",
        "z5",
        "z6",
        "abelian:2:2",
        "abelian:2:3",
        "sym3",
        "alt4",
        "sym4",
        "q8",
        "dih4",
        "dih5",
        "chein:z3",
        "chein:sym3",
        "chein:q8",
        "chein:dih4",
        "chein:alt4",
        "u3:3",
        "abelian:3:4",
        "cml81",
    ]
    .iter()
    .map(|n| named(n).expect("catalog entries construct"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(named("z5").unwrap().order(), 5);
        assert_eq!(named("chein:sym3").unwrap().order(), 12);
        assert_eq!(named("abelian:3:2").unwrap().order(), 9);
        assert_eq!(named("u3:3").unwrap().order(), 27);
        assert_eq!(named("sym3").unwrap().name(), Some("sym3"));
        assert!(named("bogus").is_err());
        assert!(named("zq").is_err());
    }
}
