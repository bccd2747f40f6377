//! Homomorphisms between structures, checked at support level.

use crate::error::{Error, Result};
use crate::fuzzy::{element_set, ElementSet};
use crate::ideals::{find_tuple, is_f_hyperideal, prime_witness};
use crate::scalar::GradeScalar;
use crate::structure::KrasnerStructure;
use crate::verdict::Verdict;

use super::quotient::Quotient;

/// A total map between carriers. Compatibility with the operations is not assumed; see
/// [`check_homomorphism`].
#[derive(Clone, Debug)]
pub struct Homomorphism<'a, S> {
    source: &'a KrasnerStructure<S>,
    target: &'a KrasnerStructure<S>,
    map: Vec<usize>,
}

/// The first condition a map fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    /// `h(e)` is not the target identity.
    Identity { image: usize },
    /// `h(supp(f(t))) ≠ supp(f(h(t)))`.
    F {
        tuple: Vec<usize>,
        image: ElementSet,
        expected: ElementSet,
    },
    /// `h(supp(g(t))) ≠ supp(g(h(t)))`.
    G {
        tuple: Vec<usize>,
        image: ElementSet,
        expected: ElementSet,
    },
}

impl<'a, S: GradeScalar> Homomorphism<'a, S> {
    pub fn new(
        source: &'a KrasnerStructure<S>,
        target: &'a KrasnerStructure<S>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&x| x >= target.size()) {
            return Err(Error::usage(
                "the map must send every source element into the target",
            ));
        }
        if source.m() != target.m() || source.n() != target.n() {
            return Err(Error::usage("source and target arities differ"));
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(r: &'a KrasnerStructure<S>) -> Self {
        Homomorphism {
            source: r,
            target: r,
            map: (0..r.size()).collect(),
        }
    }

    pub fn source(&self) -> &'a KrasnerStructure<S> {
        self.source
    }

    pub fn target(&self) -> &'a KrasnerStructure<S> {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn image_of(&self, set: &ElementSet) -> ElementSet {
        element_set(self.target.size(), set.ones().map(|a| self.map[a]))
    }

    pub fn is_surjective(&self) -> bool {
        self.image_of(&self.source.full_set()).count_ones(..) == self.target.size()
    }

    pub fn describe(&self, v: &HomViolation) -> String {
        let (src, tgt) = (self.source.carrier(), self.target.carrier());
        match v {
            HomViolation::Identity { image } => format!(
                "h({}) = {} is not the identity {}",
                src.label(self.source.identity()),
                tgt.label(*image),
                tgt.label(self.target.identity())
            ),
            HomViolation::F {
                tuple,
                image,
                expected,
            }
            | HomViolation::G {
                tuple,
                image,
                expected,
            } => {
                let op = if matches!(v, HomViolation::F { .. }) {
                    "f"
                } else {
                    "g"
                };
                format!(
                    "h(supp({op}({}))) = {} but supp({op}({})) = {}",
                    src.format_tuple(tuple),
                    tgt.format_set(image),
                    tgt.format_tuple(&tuple.iter().map(|&a| self.map[a]).collect::<Vec<_>>()),
                    tgt.format_set(expected)
                )
            }
        }
    }
}

/// Checks `h(e) = e` and `h(supp(op(t))) = supp(op(h(t)))` for `f` and `g` over all tuples.
pub fn check_homomorphism<S: GradeScalar>(h: &Homomorphism<'_, S>) -> Verdict<HomViolation> {
    let image = h.apply(h.source.identity());
    if image != h.target.identity() {
        return Verdict::Fails(HomViolation::Identity { image });
    }
    let all: Vec<usize> = (0..h.source.size()).collect();
    let check = |arity: usize, is_f: bool| {
        find_tuple(&all, arity, |t| {
            let (src, tgt) = if is_f {
                (h.source.f(), h.target.f())
            } else {
                (h.source.g(), h.target.g())
            };
            let mapped: Vec<usize> = t.iter().map(|&a| h.apply(a)).collect();
            let image = h.image_of(src.support(t));
            let expected = tgt.support(&mapped);
            if image == *expected {
                return None;
            }
            let tuple = t.to_vec();
            let expected = expected.clone();
            Some(if is_f {
                HomViolation::F {
                    tuple,
                    image,
                    expected,
                }
            } else {
                HomViolation::G {
                    tuple,
                    image,
                    expected,
                }
            })
        })
    };
    match check(h.source.m(), true).or_else(|| check(h.source.n(), false)) {
        Some(v) => Verdict::Fails(v),
        None => Verdict::Holds,
    }
}

/// `{ a | h(a) ∈ P }` for an ideal `P` of the target. When `P` is prime the preimage is
/// checked to be a prime ideal of the source.
pub fn preimage_ideal<S: GradeScalar>(
    h: &Homomorphism<'_, S>,
    p: &ElementSet,
) -> Result<ElementSet> {
    if let Verdict::Fails(v) = check_homomorphism(h) {
        return Err(Error::usage(format!(
            "not a homomorphism: {}",
            h.describe(&v)
        )));
    }
    if p.len() != h.target.size() || p.is_clear() || !is_f_hyperideal(h.target, p)?.holds() {
        return Err(Error::usage("the target set is not an F-hyperideal"));
    }
    let pre = element_set(
        h.source.size(),
        (0..h.source.size()).filter(|&a| p.contains(h.apply(a))),
    );
    if prime_witness(h.target, p).is_none() {
        let is_ideal = is_f_hyperideal(h.source, &pre)?.holds();
        if !is_ideal || prime_witness(h.source, &pre).is_some() {
            return Err(Error::consistency(format!(
                "preimage {} of the prime {} is not a prime F-hyperideal",
                h.source.carrier().format_set(&pre),
                h.target.carrier().format_set(p)
            )));
        }
    }
    Ok(pre)
}

/// `a ↦` the coset of `a`, onto the quotient built from `base`.
pub fn natural_projection<'a, S: GradeScalar>(
    base: &'a KrasnerStructure<S>,
    quotient: &'a Quotient<S>,
) -> Result<Homomorphism<'a, S>> {
    if quotient.class_map().len() != base.size() {
        return Err(Error::usage(
            "the quotient was not built from this structure",
        ));
    }
    Homomorphism::new(base, quotient.structure(), quotient.class_map().to_vec())
}
