//! Finite abelian groups presented as direct products of cyclic groups.
//!
//! Elements are coordinate vectors. The enumeration order is lexicographic
//! in the coordinates (last factor varies fastest), which gives a stable
//! bijection between elements and indices `0..order`. Designs built from a
//! group use these indices as point labels.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Default upper bound on the group order for anything that enumerates
/// elements.
pub const ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u64>,
    order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [x] = self.coords[..] {
            return write!(f, "{x}");
        }
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl AbelianGroup {
    /// `Z_{n_1} x ... x Z_{n_d}`. An empty list gives the trivial group.
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        let mut order: u64 = 1;
        for &n in &orders {
            if n == 0 {
                return Err(Error::InvalidGroup("cyclic factor of order 0".into()));
            }
            order = order
                .checked_mul(n)
                .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
        }
        Ok(AbelianGroup { orders, order })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(alloc::vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: alloc::vec![0; self.orders.len()],
        }
    }

    /// Validates and wraps a coordinate vector.
    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        let e = GroupElement { coords };
        self.check(&e)?;
        Ok(e)
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::DimensionMismatch {
                expected: self.orders.len(),
                found: coords.len(),
            });
        }
        let coords = coords
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| x.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.coords.len() != self.orders.len() {
            return Err(Error::DimensionMismatch {
                expected: self.orders.len(),
                found: a.coords.len(),
            });
        }
        for (factor, (&x, &n)) in a.coords.iter().zip(&self.orders).enumerate() {
            if x >= n {
                return Err(Error::ResidueOutOfRange {
                    factor,
                    residue: x,
                    order: n,
                });
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| ((x as u128 + y as u128) % n as u128) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn negate(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let coords = a
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.negate(b)?;
        self.add(a, &nb)
    }

    /// All elements in lexicographic coordinate order, refusing groups
    /// larger than `cap`.
    pub fn enumerate_capped(&self, cap: u64) -> Result<Vec<GroupElement>> {
        if self.order > cap {
            return Err(Error::EnumerationCap {
                order: self.order,
                cap,
            });
        }
        Ok((0..self.order as usize)
            .map(|i| self.element_at(i))
            .collect())
    }

    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        self.enumerate_capped(ENUMERATION_CAP)
    }

    /// Position of `a` in the enumeration order.
    pub fn index_of(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        let mut idx: u64 = 0;
        for (&x, &n) in a.coords.iter().zip(&self.orders) {
            idx = idx * n + x;
        }
        Ok(idx as usize)
    }

    /// Inverse of [`index_of`](Self::index_of). Panics if `index >= order`.
    pub fn element_at(&self, index: usize) -> GroupElement {
        assert!((index as u64) < self.order, "index {index} out of range");
        let mut rest = index as u64;
        let mut coords = alloc::vec![0; self.orders.len()];
        for (slot, &n) in coords.iter_mut().zip(&self.orders).rev() {
            *slot = rest % n;
            rest /= n;
        }
        GroupElement { coords }
    }

    /// Index-level addition: `index(element_at(a) + element_at(b))`.
    pub fn add_indices(&self, a: usize, b: usize) -> usize {
        let mut ra = a as u64;
        let mut rb = b as u64;
        let mut out: u64 = 0;
        let mut scale: u64 = 1;
        for &n in self.orders.iter().rev() {
            let s = (ra % n + rb % n) % n;
            out += s * scale;
            scale *= n;
            ra /= n;
            rb /= n;
        }
        out as usize
    }

    pub fn negate_index(&self, a: usize) -> usize {
        let mut ra = a as u64;
        let mut out: u64 = 0;
        let mut scale: u64 = 1;
        for &n in self.orders.iter().rev() {
            let x = ra % n;
            out += ((n - x) % n) * scale;
            scale *= n;
            ra /= n;
        }
        out as usize
    }

    pub fn sub_indices(&self, a: usize, b: usize) -> usize {
        self.add_indices(a, self.negate_index(b))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "Z_1");
        }
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "Z_{n}")?;
        }
        Ok(())
    }
}
