//! Direct products with pointwise-min grades.

use crate::error::{Error, Result};
use crate::fuzzy::{Carrier, EqualityMode, FuzzySubset};
use crate::scalar::GradeScalar;
use crate::structure::KrasnerStructure;
use crate::table::HyperOperationTable;

/// Index of the pair `(a, b)` in a product whose second factor has `right_size`
/// elements.
pub fn pair_index(right_size: usize, a: usize, b: usize) -> usize {
    a * right_size + b
}

/// `R1 × R2` with `op((a_i, b_i))(a, b) = min(op_1(a_i)(a), op_2(b_i)(b))`.
///
/// The scalar identity is the pair of scalar identities when both exist. The product
/// compares strictly only when both factors do.
pub fn product<S: GradeScalar>(
    r1: &KrasnerStructure<S>,
    r2: &KrasnerStructure<S>,
) -> Result<KrasnerStructure<S>> {
    if r1.m() != r2.m() || r1.n() != r2.n() {
        return Err(Error::usage(format!(
            "arity mismatch: ({},{}) against ({},{})",
            r1.m(),
            r1.n(),
            r2.m(),
            r2.n()
        )));
    }
    let (k1, k2) = (r1.size(), r2.size());
    let size = k1
        .checked_mul(k2)
        .ok_or_else(|| Error::usage("product carrier too large"))?;
    let pair = |a, b| pair_index(k2, a, b);
    let combine = |left: &FuzzySubset<S>, right: &FuzzySubset<S>| {
        let mut pairs = Vec::with_capacity(left.support_len() * right.support_len());
        for (a, ga) in left.entries() {
            for (b, gb) in right.entries() {
                pairs.push((pair(*a, *b), ga.clone().min(gb.clone())));
            }
        }
        FuzzySubset::from_pairs(size, pairs)
    };
    let op = |t1: &HyperOperationTable<S>, t2: &HyperOperationTable<S>| {
        let mut left = vec![0; t1.arity()];
        let mut right = vec![0; t1.arity()];
        HyperOperationTable::from_fn(size, t1.arity(), |tuple| {
            for (i, &x) in tuple.iter().enumerate() {
                left[i] = x / k2;
                right[i] = x % k2;
            }
            combine(t1.entry(&left), t2.entry(&right))
        })
    };
    let f = op(r1.f(), r2.f())?;
    let g = op(r1.g(), r2.g())?;
    let labels = (0..size).map(|x| {
        format!(
            "({},{})",
            r1.carrier().label(x / k2),
            r2.carrier().label(x % k2)
        )
    });
    let negation = (0..size)
        .map(|x| pair(r1.negate(x / k2), r2.negate(x % k2)))
        .collect();
    let e_prime = match (r1.scalar_identity(), r2.scalar_identity()) {
        (Some(a), Some(b)) => Some(pair(a, b)),
        _ => None,
    };
    let mode = if r1.mode() == EqualityMode::Strict && r2.mode() == EqualityMode::Strict {
        EqualityMode::Strict
    } else {
        EqualityMode::Support
    };
    KrasnerStructure::new(
        Carrier::new(labels)?,
        f,
        g,
        pair(r1.identity(), r2.identity()),
        negation,
    )?
    .with_scalar_identity(e_prime)?
    .with_mode(mode)
    .into_validated()
}
