//! Finite commutative unital rings and their lifts to Krasner F^(m,n)-hyperrings.

use crate::error::{Error, Result};
use crate::fuzzy::{Carrier, FuzzySubset};
use crate::scalar::{Grade, GradeScalar};
use crate::structure::KrasnerStructure;
use crate::table::HyperOperationTable;

/// Addition and multiplication tables of a finite commutative ring with unity, checked
/// on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    labels: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
    neg: Vec<usize>,
}

impl FiniteRing {
    /// Tables are row-major: `add[a * k + b] = a + b`.
    pub fn new(labels: Vec<String>, add: Vec<usize>, mul: Vec<usize>) -> Result<Self> {
        let k = labels.len();
        let bad = |what: &str| Error::usage(format!("not a commutative unital ring: {what}"));
        if k == 0 || add.len() != k * k || mul.len() != k * k {
            return Err(bad("table shape"));
        }
        if add.iter().chain(&mul).any(|&x| x >= k) {
            return Err(bad("table value out of range"));
        }
        let a = |x: usize, y: usize| add[x * k + y];
        let p = |x: usize, y: usize| mul[x * k + y];
        let zero = (0..k)
            .find(|&z| (0..k).all(|x| a(x, z) == x))
            .ok_or_else(|| bad("no additive identity"))?;
        let one = (0..k)
            .find(|&u| (0..k).all(|x| p(x, u) == x))
            .ok_or_else(|| bad("no multiplicative identity"))?;
        let mut neg = Vec::with_capacity(k);
        for x in 0..k {
            neg.push(
                (0..k)
                    .find(|&y| a(x, y) == zero)
                    .ok_or_else(|| bad("missing additive inverse"))?,
            );
        }
        for x in 0..k {
            for y in 0..k {
                if a(x, y) != a(y, x) {
                    return Err(bad("addition not commutative"));
                }
                if p(x, y) != p(y, x) {
                    return Err(bad("multiplication not commutative"));
                }
                for z in 0..k {
                    if a(a(x, y), z) != a(x, a(y, z)) {
                        return Err(bad("addition not associative"));
                    }
                    if p(p(x, y), z) != p(x, p(y, z)) {
                        return Err(bad("multiplication not associative"));
                    }
                    if p(x, a(y, z)) != a(p(x, y), p(x, z)) {
                        return Err(bad("not distributive"));
                    }
                }
            }
        }
        Ok(FiniteRing {
            labels,
            add,
            mul,
            zero,
            one,
            neg,
        })
    }

    /// `Z_k` with labels `0 … k−1`.
    pub fn integers_mod(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::usage("Z_0 is not finite"));
        }
        let labels = (0..k).map(|i| i.to_string()).collect();
        let add = (0..k * k).map(|i| (i / k + i % k) % k).collect();
        let mul = (0..k * k).map(|i| (i / k) * (i % k) % k).collect();
        FiniteRing::new(labels, add, mul)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size() + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }
}

/// Lifts a ring: `f(a_1 … a_m)` is the fuzzy point of the m-fold sum at grade `t1`,
/// `g(a_1 … a_n)` the fuzzy point of the n-fold product at grade `t2`.
///
/// The result uses support-level equality; it satisfies the axioms strictly only when
/// `t1 = t2`.
pub fn ring_lift<S: GradeScalar>(
    ring: &FiniteRing,
    m: usize,
    n: usize,
    t1: Grade<S>,
    t2: Grade<S>,
) -> Result<KrasnerStructure<S>> {
    if !t1.is_positive() || !t2.is_positive() {
        return Err(Error::usage("lift thresholds must be positive"));
    }
    let k = ring.size();
    let f = HyperOperationTable::from_fn(k, m, |t| {
        let sum = t[1..].iter().fold(t[0], |acc, &x| ring.add(acc, x));
        FuzzySubset::point(k, sum, t1.clone())
    })?;
    let g = HyperOperationTable::from_fn(k, n, |t| {
        let prod = t[1..].iter().fold(t[0], |acc, &x| ring.mul(acc, x));
        FuzzySubset::point(k, prod, t2.clone())
    })?;
    let negation = (0..k).map(|a| ring.neg(a)).collect();
    KrasnerStructure::new(
        Carrier::new(ring.labels().to_vec())?,
        f,
        g,
        ring.zero(),
        negation,
    )?
    .with_scalar_identity(Some(ring.one()))?
    .into_validated()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_rings() {
        // Z_3 with a multiplication that has no unity.
        let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        let add = (0..9).map(|i| (i / 3 + i % 3) % 3).collect();
        let mul = vec![0; 9];
        assert!(matches!(
            FiniteRing::new(labels.clone(), add, mul),
            Err(Error::Usage(_))
        ));
        // Addition that is not a group.
        let add = (0..9).map(|i| (i / 3).max(i % 3)).collect();
        let mul = (0..9).map(|i| (i / 3) * (i % 3) % 3).collect();
        assert!(FiniteRing::new(labels, add, mul).is_err());
    }

    #[test]
    fn z6_tables() {
        let r = FiniteRing::integers_mod(6).unwrap();
        assert_eq!(r.add(4, 5), 3);
        assert_eq!(r.mul(4, 5), 2);
        assert_eq!(r.neg(2), 4);
        assert_eq!((r.zero(), r.one()), (0, 1));
    }
}
