use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An exponent vector in ℤⁿ: the multidegree of a monomial, a basis element
/// or a homogeneous element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<i64>);

impl Multidegree {
    pub fn new(exponents: Vec<i64>) -> Self {
        Self(exponents)
    }

    pub fn zero(num_vars: usize) -> Self {
        Self(vec![0; num_vars])
    }

    pub fn ones(num_vars: usize) -> Self {
        Self(vec![1; num_vars])
    }

    /// The `i`-th unit vector.
    pub fn unit(num_vars: usize, i: usize) -> Self {
        let mut v = vec![0; num_vars];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<i64> {
        self.0
    }

    fn zip(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Self) -> Self {
        self.zip(other, i64::max)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        self.zip(other, i64::min)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    /// Componentwise `self ≤ other`, i.e. `x^self` divides `x^other`.
    pub fn le(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lt(&self, other: &Self) -> bool {
        self.le(other) && self != other
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// All exponents are 0 or 1.
    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| (0..=1).contains(&e))
    }

    /// `self ∧ (1, …, 1)`.
    pub fn squarefree_cap(&self) -> Self {
        Self(self.0.iter().map(|&e| e.min(1)).collect())
    }

    /// Support as a set of variable indices.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != 0).collect()
    }
}

impl fmt::Display for Multidegree {
    /// Renders as a monomial in `x1, …, xn`, e.g. `x1^2*x3`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn check_len(a: &Multidegree, b: &Multidegree) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(())
}

pub fn join(a: &Multidegree, b: &Multidegree) -> Result<Multidegree> {
    check_len(a, b)?;
    Ok(a.join(b))
}

pub fn meet(a: &Multidegree, b: &Multidegree) -> Result<Multidegree> {
    check_len(a, b)?;
    Ok(a.meet(b))
}

pub fn divides(a: &Multidegree, b: &Multidegree) -> Result<bool> {
    check_len(a, b)?;
    Ok(a.le(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    #[test]
    fn join_meet_divides() {
        assert_eq!(join(&md(&[2, 1, 0]), &md(&[1, 0, 2])).unwrap(), md(&[2, 1, 2]));
        let a = md(&[3, 0, 1]);
        assert_eq!(meet(&a, &a).unwrap(), a);
        assert!(divides(&md(&[1, 1, 0]), &md(&[1, 1, 1])).unwrap());
        assert!(!divides(&md(&[1, 1, 1]), &md(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert_eq!(join(&md(&[1]), &md(&[1, 2])), Err(Error::LengthMismatch(1, 2)));
        assert!(meet(&md(&[1]), &md(&[1, 2])).is_err());
        assert!(divides(&md(&[1]), &md(&[1, 2])).is_err());
    }

    #[test]
    fn display_as_monomial() {
        assert_eq!(md(&[2, 0, 1]).to_string(), "x1^2*x3");
        assert_eq!(md(&[0, 0]).to_string(), "1");
    }

    proptest! {
        #[test]
        fn distributive_lattice(a in prop::collection::vec(-3i64..4, 4),
                                b in prop::collection::vec(-3i64..4, 4),
                                c in prop::collection::vec(-3i64..4, 4)) {
            let (a, b, c) = (md(&a), md(&b), md(&c));
            prop_assert_eq!(a.join(&b.meet(&c)), a.join(&b).meet(&a.join(&c)));
            prop_assert_eq!(a.meet(&b.join(&c)), a.meet(&b).join(&a.meet(&c)));
            prop_assert!(a.meet(&b).le(&a) && a.le(&a.join(&b)));
        }
    }
}
