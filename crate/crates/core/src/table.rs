//! Dense Cayley tables for finite loops.
//!
//! A [`CayleyTable`] is an `n × n` Latin square whose element `0` is a
//! two-sided identity. Everything else in the crate is built on top of it.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Index of an element relative to a specific table.
pub type Elem = usize;

/// Anything that can multiply element indices. Element `0` is the identity.
pub trait LoopOps: Sync {
    fn order(&self) -> usize;
    fn op(&self, x: Elem, y: Elem) -> Elem;
}

impl<T: LoopOps + ?Sized> LoopOps for &T {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn op(&self, x: Elem, y: Elem) -> Elem {
        (**self).op(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(i) => write!(f, "row {i}"),
            Line::Column(j) => write!(f, "column {j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("not a Latin square: {line} repeats value {value}")]
    NotLatinSquare { line: Line, value: usize },
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("element {index} out of range for order {order}")]
    OutOfRange { index: usize, order: usize },
}

/// Validated multiplication table of a finite loop.
#[derive(Clone)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<u32>,
    name: Option<String>,
    // ldiv[x*n + z] = x\z, rdiv[y*n + z] = z/y
    ldiv: OnceLock<Vec<u32>>,
    rdiv: OnceLock<Vec<u32>>,
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyTable").field("order", &self.n).field("name", &self.name).finish()
    }
}

impl PartialEq for CayleyTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.cells == other.cells
    }
}

impl Eq for CayleyTable {}

impl CayleyTable {
    /// Validate a raw square array as a loop table.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, TableError> {
        let n = rows.len();
        if n == 0 {
            return Err(TableError::Malformed("empty table".into()));
        }
        if n > u32::MAX as usize {
            return Err(TableError::Malformed("order too large".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(TableError::Malformed(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(TableError::Malformed(format!("entry {v} in row {i} out of range 0..{n}")));
                }
                cells.push(v as u32);
            }
        }
        Self::from_cells(n, cells)
    }

    /// Validate a row-major cell vector of length `n * n`.
    pub fn from_cells(n: usize, cells: Vec<u32>) -> Result<Self, TableError> {
        if n == 0 || cells.len() != n * n {
            return Err(TableError::Malformed(format!("expected {} cells for order {n}, got {}", n * n, cells.len())));
        }
        if let Some(&v) = cells.iter().find(|&&v| v as usize >= n) {
            return Err(TableError::Malformed(format!("entry {v} out of range 0..{n}")));
        }
        check_latin(n, &cells)?;
        for x in 0..n {
            if cells[x] as usize != x || cells[x * n] as usize != x {
                return Err(TableError::NoIdentity);
            }
        }
        Ok(Self { n, cells, name: None, ldiv: OnceLock::new(), rdiv: OnceLock::new() })
    }

    /// Build a table from a product function. The result is validated.
    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self, TableError> {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(f(x, y) as u32);
            }
        }
        Self::from_cells(n, cells)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.cells.chunks(self.n)
    }

    pub fn check(&self, x: Elem) -> Result<Elem, TableError> {
        if x < self.n {
            Ok(x)
        } else {
            Err(TableError::OutOfRange { index: x, order: self.n })
        }
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.cells[x * self.n + y] as Elem
    }

    pub fn try_mul(&self, x: Elem, y: Elem) -> Result<Elem, TableError> {
        Ok(self.mul(self.check(x)?, self.check(y)?))
    }

    /// The unique `y` with `x * y = z`.
    #[inline]
    pub fn left_div(&self, x: Elem, z: Elem) -> Elem {
        let ldiv = self.ldiv.get_or_init(|| {
            let n = self.n;
            let mut out = vec![0u32; n * n];
            for x in 0..n {
                for y in 0..n {
                    out[x * n + self.mul(x, y)] = y as u32;
                }
            }
            out
        });
        ldiv[x * self.n + z] as Elem
    }

    /// The unique `x` with `x * y = z`.
    #[inline]
    pub fn right_div(&self, z: Elem, y: Elem) -> Elem {
        let rdiv = self.rdiv.get_or_init(|| {
            let n = self.n;
            let mut out = vec![0u32; n * n];
            for x in 0..n {
                for y in 0..n {
                    out[y * n + self.mul(x, y)] = x as u32;
                }
            }
            out
        });
        rdiv[y * self.n + z] as Elem
    }

    /// Right inverse: the unique `y` with `x * y = 0`.
    pub fn inverse(&self, x: Elem) -> Elem {
        self.left_div(x, 0)
    }

    /// Left inverse: the unique `y` with `y * x = 0`.
    pub fn left_inverse(&self, x: Elem) -> Elem {
        self.right_div(0, x)
    }

    /// First element whose left and right inverses differ, if any.
    pub fn inverse_mismatch(&self) -> Option<Elem> {
        (0..self.n).find(|&x| self.inverse(x) != self.left_inverse(x))
    }

    /// Relabel elements by a permutation: new index of old element `i` is `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, TableError> {
        let n = self.n;
        if perm.len() != n {
            return Err(TableError::Malformed("permutation length mismatch".into()));
        }
        let mut cells = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[perm[x] * n + perm[y]] = perm[self.mul(x, y)] as u32;
            }
        }
        let mut t = Self::from_cells(n, cells)?;
        t.name = self.name.clone();
        Ok(t)
    }
}

impl LoopOps for CayleyTable {
    fn order(&self) -> usize {
        self.n
    }
    #[inline]
    fn op(&self, x: Elem, y: Elem) -> Elem {
        self.mul(x, y)
    }
}

fn check_latin(n: usize, cells: &[u32]) -> Result<(), TableError> {
    let mut seen = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let v = cells[i * n + j] as usize;
            if seen[v] == i {
                return Err(TableError::NotLatinSquare { line: Line::Row(i), value: v });
            }
            seen[v] = i;
        }
    }
    seen.fill(usize::MAX);
    for j in 0..n {
        for i in 0..n {
            let v = cells[i * n + j] as usize;
            if seen[v] == j {
                return Err(TableError::NotLatinSquare { line: Line::Column(j), value: v });
            }
            seen[v] = j;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> CayleyTable {
        CayleyTable::from_fn(n, |x, y| (x + y) % n).unwrap()
    }

    #[test]
    fn z3_validates() {
        let rows = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let t = CayleyTable::from_rows(&rows).unwrap();
        assert_eq!(t.order(), 3);
    }

    #[test]
    fn duplicate_in_row_rejected() {
        let err = CayleyTable::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, TableError::NotLatinSquare { line: Line::Row(1), value: 1 });
    }

    #[test]
    fn reordered_rows_have_no_identity() {
        let rows = vec![vec![1, 2, 0], vec![0, 1, 2], vec![2, 0, 1]];
        assert_eq!(CayleyTable::from_rows(&rows).unwrap_err(), TableError::NoIdentity);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(CayleyTable::from_rows(&[vec![0, 1], vec![1]]), Err(TableError::Malformed(_))));
        assert!(matches!(CayleyTable::from_rows(&[vec![0, 2], vec![1, 0]]), Err(TableError::Malformed(_))));
        assert!(matches!(CayleyTable::from_rows(&[]), Err(TableError::Malformed(_))));
    }

    #[test]
    fn z5_arithmetic() {
        let t = z(5);
        assert_eq!(t.mul(2, 4), 1);
        assert_eq!(t.inverse(2), 3);
        assert!(t.try_mul(5, 0).is_err());
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(t.left_div(x, t.mul(x, y)), y);
                assert_eq!(t.right_div(t.mul(x, y), y), x);
            }
        }
    }

    #[test]
    fn one_sided_inverses_are_detected() {
        // order-5 loop where element 1 has different left and right inverses
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 2, 0, 4, 3],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 0, 3, 1, 2],
        ];
        let t = CayleyTable::from_rows(&rows).unwrap();
        assert_eq!(t.inverse(1), 2);
        assert_eq!(t.left_inverse(1), 4);
        assert_eq!(t.inverse_mismatch(), Some(1));
        assert_eq!(z(4).inverse_mismatch(), None);
    }
}
