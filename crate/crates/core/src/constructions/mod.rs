//! Structures built from other structures.

pub mod hom;
pub mod product;
pub mod quotient;
pub mod ring;

use crate::fuzzy::full_set;
use crate::ideals::find_tuple;
use crate::scalar::GradeScalar;
use crate::structure::KrasnerStructure;

/// Whether `supp(g(a_1^n)) = {e}` forces some `a_i = e`.
pub fn is_hyperintegral_f_domain<S: GradeScalar>(r: &KrasnerStructure<S>) -> bool {
    zero_divisor_witness(r).is_none()
}

/// An n-tuple without `e` whose product has support `{e}`.
pub fn zero_divisor_witness<S: GradeScalar>(r: &KrasnerStructure<S>) -> Option<Vec<usize>> {
    let e = r.identity();
    let all: Vec<usize> = full_set(r.size()).ones().collect();
    find_tuple(&all, r.n(), |t| {
        if t.contains(&e) {
            return None;
        }
        let supp = r.g().support(t);
        (supp.count_ones(..) == 1 && supp.contains(e)).then(|| t.to_vec())
    })
}
