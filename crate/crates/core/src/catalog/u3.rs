//! Unipotent upper triangular 3×3 matrices over a prime field.
//!
//! The matrix `[[1, a, c], [0, 1, b], [0, 0, 1]]` is stored as `(a, b, c)`;
//! products follow matrix multiplication, so `c'' = c + c' + a·b'`.

use serde::Serialize;

use super::{CatalogError, MAX_CATALOG_ORDER};
use crate::extension::ExtensionSpec;
use crate::morphisms::Mapping;
use crate::table::{CayleyTable, Elem, LoopOps};

/// Arithmetic modulo an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, CatalogError> {
        let prime = q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d));
        if !prime {
            return Err(CatalogError::NotPrime(q));
        }
        if q == 2 {
            return Err(CatalogError::BadParameter("q must be odd".into()));
        }
        Ok(Self { q })
    }

    pub fn modulus(self) -> u64 {
        self.q
    }

    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    pub fn add(self, x: u64, y: u64) -> u64 {
        (x + y) % self.q
    }

    pub fn mul(self, x: u64, y: u64) -> u64 {
        (x * y) % self.q
    }

    pub fn pow(self, mut x: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.q;
        x %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(self, x: u64) -> u64 {
        assert!(!x.is_multiple_of(self.q), "zero has no inverse");
        self.pow(x, self.q - 2)
    }

    /// Multiplicative order of a nonzero residue.
    pub fn mult_order(self, x: u64) -> u64 {
        let mut y = x % self.q;
        let mut k = 1;
        while y != 1 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnipotentCoord {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

/// `U₃(𝔽_q)`, evaluated from coordinates without a table.
#[derive(Debug, Clone, Copy)]
pub struct U3Group {
    field: PrimeField,
}

pub fn u3_group(q: u64) -> Result<U3Group, CatalogError> {
    Ok(U3Group { field: PrimeField::new(q)? })
}

impl U3Group {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q
    }

    pub fn coord(&self, x: Elem) -> UnipotentCoord {
        let q = self.q() as usize;
        UnipotentCoord { a: (x % q) as u64, b: ((x / q) % q) as u64, c: (x / (q * q)) as u64 }
    }

    pub fn index(&self, p: UnipotentCoord) -> Elem {
        let q = self.q();
        (p.c * q * q + p.b * q + p.a) as Elem
    }

    pub fn mul_coord(&self, x: UnipotentCoord, y: UnipotentCoord) -> UnipotentCoord {
        let f = self.field;
        UnipotentCoord { a: f.add(x.a, y.a), b: f.add(x.b, y.b), c: f.add(f.add(x.c, y.c), f.mul(x.a, y.b)) }
    }

    pub fn materialize(&self) -> Result<CayleyTable, CatalogError> {
        let n = self.order();
        if n > MAX_CATALOG_ORDER {
            return Err(CatalogError::TooLarge(n));
        }
        Ok(CayleyTable::from_fn(n, |x, y| self.op(x, y))?.with_name(format!("u3:{}", self.q())))
    }
}

impl LoopOps for U3Group {
    fn order(&self) -> usize {
        (self.q() * self.q() * self.q()) as usize
    }

    fn op(&self, x: Elem, y: Elem) -> Elem {
        self.index(self.mul_coord(self.coord(x), self.coord(y)))
    }
}

/// `(a, b, c) ↦ (a·k⁻¹, b·k⁻¹, c·k + a·b·(k⁻² − k)/2)` on `U₃(𝔽_q)`,
/// where `k` has prime multiplicative order `p ≠ 3`.
pub fn rajah_semiauto(q: u64, k: u64) -> Result<Mapping, CatalogError> {
    let g = u3_group(q)?;
    let f = g.field();
    let k = k % q;
    if k == 0 {
        return Err(CatalogError::BadOrder { order: 0, q });
    }
    let p = f.mult_order(k);
    let p_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if !p_prime || p == 3 || !(q - 1).is_multiple_of(p) {
        return Err(CatalogError::BadOrder { order: p, q });
    }
    let kinv = f.inv(k);
    let kinv2 = f.mul(kinv, kinv);
    let half = f.inv(2);
    // (k⁻² − k)/2
    let coeff = f.mul(f.reduce(kinv2 as i64 - k as i64), half);
    let n = g.order();
    Ok(Mapping::from_fn(n, |x| {
        let UnipotentCoord { a, b, c } = g.coord(x);
        g.index(UnipotentCoord {
            a: f.mul(a, kinv),
            b: f.mul(b, kinv),
            c: f.add(f.mul(c, k), f.mul(f.mul(a, b), coeff)),
        })
    })
    .expect("the map is a bijection"))
}

/// The order-`p·q³` extension of `U₃(𝔽_q)` by `rajah_semiauto(q, k)`.
pub fn rajah_loop(q: u64, k: u64) -> Result<ExtensionSpec, CatalogError> {
    let action = rajah_semiauto(q, k)?;
    let p = PrimeField::new(q)?.mult_order(k % q) as usize;
    let base = u3_group(q)?.materialize()?;
    ExtensionSpec::new(base, p, action).map_err(|e| CatalogError::GateFailed(e.to_string()))
}
