//! Formal GF(2) sums of basis monomials.
//!
//! Every homology or cohomology value in the engine is a finite set of basis
//! monomials; adding a monomial that is already present cancels it.

use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign};

/// Monomials that carry a grading.
pub trait Graded {
    fn degree(&self) -> u32;
}

/// A GF(2) linear combination of monomials of type `T`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Class<T: Ord> {
    terms: BTreeSet<T>,
}

impl<T: Ord> Default for GF2Class<T> {
    fn default() -> Self {
        GF2Class { terms: BTreeSet::new() }
    }
}

impl<T: Ord> GF2Class<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(t: T) -> Self {
        let mut c = Self::zero();
        c.toggle(t);
        c
    }

    /// Add a single monomial, cancelling it if already present.
    pub fn toggle(&mut self, t: T) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn contains(&self, t: &T) -> bool {
        self.terms.contains(t)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, T> {
        self.terms.iter()
    }

    pub fn first(&self) -> Option<&T> {
        self.terms.first()
    }

    pub fn last(&self) -> Option<&T> {
        self.terms.last()
    }

    /// Keep only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&T) -> bool) -> Self
    where
        T: Clone,
    {
        GF2Class { terms: self.terms.iter().filter(|t| keep(t)).cloned().collect() }
    }

    /// Apply a linear map given on basis monomials.
    pub fn map_linear<U: Ord, E>(&self, mut f: impl FnMut(&T) -> Result<GF2Class<U>, E>) -> Result<GF2Class<U>, E> {
        let mut out = GF2Class::zero();
        for t in &self.terms {
            out += f(t)?;
        }
        Ok(out)
    }
}

impl<T: Ord + Graded> GF2Class<T> {
    /// Degree of the class, `None` for the zero class.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(Graded::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(Graded::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }
}

impl<T: Ord> FromIterator<T> for GF2Class<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut c = Self::zero();
        for t in iter {
            c.toggle(t);
        }
        c
    }
}

impl<T: Ord> IntoIterator for GF2Class<T> {
    type Item = T;
    type IntoIter = btree_set::IntoIter<T>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, T: Ord> IntoIterator for &'a GF2Class<T> {
    type Item = &'a T;
    type IntoIter = btree_set::Iter<'a, T>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<T: Ord> AddAssign for GF2Class<T> {
    fn add_assign(&mut self, rhs: Self) {
        for t in rhs.terms {
            self.toggle(t);
        }
    }
}

impl<T: Ord + Clone> AddAssign<&GF2Class<T>> for GF2Class<T> {
    fn add_assign(&mut self, rhs: &Self) {
        for t in &rhs.terms {
            self.toggle(t.clone());
        }
    }
}

impl<T: Ord> Add for GF2Class<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<T: Ord + Clone> Add for &GF2Class<T> {
    type Output = GF2Class<T>;
    fn add(self, rhs: Self) -> GF2Class<T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<T: Ord + fmt::Display> fmt::Display for GF2Class<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl<T: Ord + fmt::Display> fmt::Debug for GF2Class<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Class({self})")
    }
}

/// An elementary tensor `left ⊗ right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor<T>(pub T, pub T);

impl<T: Graded> Graded for Tensor<T> {
    fn degree(&self) -> u32 {
        self.0.degree() + self.1.degree()
    }
}

impl<T: fmt::Display> fmt::Display for Tensor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.0, self.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toggling_cancels() {
        let mut c: GF2Class<u32> = [1, 2, 3].into_iter().collect();
        c.toggle(2);
        assert_eq!(c.iter().copied().collect::<Vec<_>>(), vec![1, 3]);
        let d = &c + &c;
        assert!(d.is_zero());
        assert_eq!(format!("{d}"), "0");
    }
}
