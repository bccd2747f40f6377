//! F-hyperideals: recognition, closure-based enumeration and the element-level
//! predicates (generated ideals, F-invertibility, radicals by powers).

mod lattice;

use std::collections::HashSet;

use smallvec::SmallVec;

pub use lattice::{ClassifyOptions, IdealClass, IdealLattice, RadicalMethod, SUBSET_ORACLE_BUDGET};

use crate::axioms::Axiom;
use crate::error::{Error, Result};
use crate::fuzzy::{element_set, members, set_order, Carrier, ElementSet};
use crate::scalar::GradeScalar;
use crate::structure::KrasnerStructure;
use crate::table::{decode, tuple_count, TupleBuf};
use crate::verdict::Verdict;

/// Why a subset is not an F-hyperideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealViolation {
    MissingIdentity,
    NotFClosed {
        tuple: Vec<usize>,
        support: ElementSet,
    },
    NotGClosed {
        tuple: Vec<usize>,
        support: ElementSet,
    },
    NotNegationClosed {
        element: usize,
    },
    NotAbsorbing {
        tuple: Vec<usize>,
        position: usize,
        support: ElementSet,
    },
    /// The induced structure on the subset fails an axiom.
    SubstructureAxiom {
        axiom: Axiom,
        tuple: Vec<usize>,
    },
}

impl IdealViolation {
    pub fn describe(&self, carrier: &Carrier) -> String {
        match self {
            IdealViolation::MissingIdentity => "does not contain the identity".into(),
            IdealViolation::NotFClosed { tuple, support } => format!(
                "not closed under f: supp(f({})) = {}",
                carrier.format_tuple(tuple),
                carrier.format_set(support)
            ),
            IdealViolation::NotGClosed { tuple, support } => format!(
                "not closed under g: supp(g({})) = {}",
                carrier.format_tuple(tuple),
                carrier.format_set(support)
            ),
            IdealViolation::NotNegationClosed { element } => {
                format!("not closed under negation at {}", carrier.label(*element))
            }
            IdealViolation::NotAbsorbing {
                tuple,
                position,
                support,
            } => format!(
                "not absorbing: supp(g({})) = {} with the ideal element at position {}",
                carrier.format_tuple(tuple),
                carrier.format_set(support),
                position + 1
            ),
            IdealViolation::SubstructureAxiom { axiom, tuple } => format!(
                "induced structure fails {axiom} at ({})",
                carrier.format_tuple(tuple)
            ),
        }
    }
}

/// Iterates all `arity`-tuples over `elements` (in lexicographic order) until `visit`
/// returns `Some`.
pub(crate) fn find_tuple<T>(
    elements: &[usize],
    arity: usize,
    mut visit: impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    let k = elements.len();
    if k == 0 {
        return None;
    }
    let count = tuple_count(k, arity).expect("tuple count") as u64;
    let mut digits: TupleBuf = SmallVec::from_elem(0, arity);
    let mut tuple: TupleBuf = SmallVec::from_elem(0, arity);
    for i in 0..count {
        decode(i, k, &mut digits);
        for (t, &d) in tuple.iter_mut().zip(&digits) {
            *t = elements[d];
        }
        if let Some(x) = visit(&tuple) {
            return Some(x);
        }
    }
    None
}

/// Decides whether `set` is an F-hyperideal, reporting the first violated condition.
///
/// Checks, in order: the identity, support closure under f, support closure under g,
/// closure under negation, absorption `supp(g(a_1^{i−1}, S, a_{i+1}^n)) ⊆ S` at every
/// position, and finally the axioms of the induced structure.
pub fn is_f_hyperideal<S: GradeScalar>(
    r: &KrasnerStructure<S>,
    set: &ElementSet,
) -> Result<Verdict<IdealViolation>> {
    if set.len() != r.size() {
        return Err(Error::usage("subset over a different carrier"));
    }
    if set.is_clear() {
        return Err(Error::usage("an F-hyperideal must be non-empty"));
    }
    if !set.contains(r.identity()) {
        return Ok(Verdict::Fails(IdealViolation::MissingIdentity));
    }
    let elems = members(set);
    let outside = |supp: &ElementSet| !supp.is_subset(set);
    if let Some(v) = find_tuple(&elems, r.m(), |t| {
        let supp = r.f().support(t);
        outside(supp).then(|| IdealViolation::NotFClosed {
            tuple: t.to_vec(),
            support: supp.clone(),
        })
    }) {
        return Ok(Verdict::Fails(v));
    }
    if let Some(v) = find_tuple(&elems, r.n(), |t| {
        let supp = r.g().support(t);
        outside(supp).then(|| IdealViolation::NotGClosed {
            tuple: t.to_vec(),
            support: supp.clone(),
        })
    }) {
        return Ok(Verdict::Fails(v));
    }
    if let Some(&a) = elems.iter().find(|&&a| !set.contains(r.negate(a))) {
        return Ok(Verdict::Fails(IdealViolation::NotNegationClosed {
            element: a,
        }));
    }
    let all: Vec<usize> = (0..r.size()).collect();
    if let Some(v) = find_tuple(&all, r.n(), |t| {
        let position = t.iter().position(|&x| set.contains(x))?;
        let supp = r.g().support(t);
        outside(supp).then(|| IdealViolation::NotAbsorbing {
            tuple: t.to_vec(),
            position,
            support: supp.clone(),
        })
    }) {
        return Ok(Verdict::Fails(v));
    }
    let sub = r.restrict(&elems)?;
    let report = sub.validate()?;
    if let Some((axiom, w)) = report.failures().next() {
        return Ok(Verdict::Fails(IdealViolation::SubstructureAxiom {
            axiom,
            tuple: w.tuple.iter().map(|&i| elems[i]).collect(),
        }));
    }
    Ok(Verdict::Holds)
}

/// Smallest subset containing a seed that holds the identity and is closed under
/// negation, f-support and g-absorption.
pub(crate) struct Closer<'a, S> {
    r: &'a KrasnerStructure<S>,
    /// For each element, the union of supp(g(t)) over tuples `t` containing it.
    absorb: Vec<ElementSet>,
}

impl<'a, S: GradeScalar> Closer<'a, S> {
    pub(crate) fn new(r: &'a KrasnerStructure<S>) -> Self {
        let size = r.size();
        let mut absorb = vec![ElementSet::with_capacity(size); size];
        let all: Vec<usize> = (0..size).collect();
        find_tuple::<()>(&all, r.n(), |t| {
            let supp = r.g().support(t);
            for &a in t {
                absorb[a].union_with(supp);
            }
            None
        });
        Closer { r, absorb }
    }

    pub(crate) fn close(&self, seed: &ElementSet) -> ElementSet {
        let r = self.r;
        let mut set = seed.clone();
        set.insert(r.identity());
        loop {
            let before = set.count_ones(..);
            let elems = members(&set);
            for &a in &elems {
                set.insert(r.negate(a));
                set.union_with(&self.absorb[a]);
            }
            find_tuple::<()>(&elems, r.m(), |t| {
                set.union_with(r.f().support(t));
                None
            });
            if set.count_ones(..) == before {
                return set;
            }
        }
    }

    pub(crate) fn is_closed(&self, set: &ElementSet) -> bool {
        self.close(set) == *set
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    /// Largest carrier accepted.
    pub max_carrier: usize,
    /// Carriers up to this size get an exhaustive sweep over all subsets certifying that
    /// nothing was missed.
    pub certify_up_to: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_carrier: 16,
            certify_up_to: 12,
        }
    }
}

pub fn enumerate_ideals<S: GradeScalar>(r: &KrasnerStructure<S>) -> Result<IdealLattice<'_, S>> {
    enumerate_ideals_with(r, EnumerationOptions::default())
}

/// All F-hyperideals of `r`.
///
/// Every ideal is the closure of the union of the closures of its elements, so closing
/// single elements and then joining with those generators until nothing new appears
/// reaches the whole lattice.
pub fn enumerate_ideals_with<S: GradeScalar>(
    r: &KrasnerStructure<S>,
    opts: EnumerationOptions,
) -> Result<IdealLattice<'_, S>> {
    let size = r.size();
    if size > opts.max_carrier {
        return Err(Error::Budget {
            what: "ideal enumeration carrier size".into(),
            needed: size as u128,
            bound: opts.max_carrier as u128,
        });
    }
    let closer = Closer::new(r);
    let mut generators: Vec<ElementSet> = Vec::new();
    let mut known: HashSet<ElementSet> = HashSet::new();
    for x in 0..size {
        let c = closer.close(&element_set(size, [x]));
        if known.insert(c.clone()) {
            generators.push(c);
        }
    }
    let mut queue = generators.clone();
    while let Some(a) = queue.pop() {
        for gen in &generators {
            if gen.is_subset(&a) {
                continue;
            }
            let mut union = a.clone();
            union.union_with(gen);
            let c = closer.close(&union);
            if known.insert(c.clone()) {
                queue.push(c);
            }
        }
    }
    let mut ideals: Vec<ElementSet> = known.into_iter().collect();
    ideals.sort_by(set_order);
    for ideal in &ideals {
        if let Verdict::Fails(v) = is_f_hyperideal(r, ideal)? {
            return Err(Error::consistency(format!(
                "closed subset {} is not an F-hyperideal: {}",
                r.carrier().format_set(ideal),
                v.describe(r.carrier())
            )));
        }
    }
    if size <= opts.certify_up_to {
        let found: HashSet<&ElementSet> = ideals.iter().collect();
        for mask in 1u64..(1u64 << size) {
            let set = element_set(size, (0..size).filter(|i| mask >> i & 1 == 1));
            if closer.is_closed(&set) && !found.contains(&set) {
                return Err(Error::consistency(format!(
                    "enumeration missed the closed subset {}",
                    r.carrier().format_set(&set)
                )));
            }
        }
    }
    Ok(IdealLattice::new(r, ideals))
}

/// `⟨x⟩_F`: the union of `supp(g(r, x, e′^(n−2)))` over all `r`.
pub fn generated_ideal<S: GradeScalar>(r: &KrasnerStructure<S>, x: usize) -> Result<ElementSet> {
    let e_prime = r.require_scalar_identity("the generated ideal")?;
    if x >= r.size() {
        return Err(Error::usage("element out of range"));
    }
    let mut out = ElementSet::with_capacity(r.size());
    let mut tuple = vec![e_prime; r.n()];
    tuple[1] = x;
    for y in 0..r.size() {
        tuple[0] = y;
        out.union_with(r.g().support(&tuple));
    }
    if let Verdict::Fails(v) = is_f_hyperideal(r, &out)? {
        return Err(Error::consistency(format!(
            "generated set {} is not an F-hyperideal: {}",
            r.carrier().format_set(&out),
            v.describe(r.carrier())
        )));
    }
    Ok(out)
}

/// Some `y` with `supp(g(x, y, e′^(n−2))) = {e′}`, if one exists.
pub fn f_inverse<S: GradeScalar>(r: &KrasnerStructure<S>, x: usize) -> Result<Option<usize>> {
    let e_prime = r.require_scalar_identity("F-invertibility")?;
    if x >= r.size() {
        return Err(Error::usage("element out of range"));
    }
    let mut tuple = vec![e_prime; r.n()];
    tuple[0] = x;
    Ok((0..r.size()).find(|&y| {
        tuple[1] = y;
        let supp = r.g().support(&tuple);
        supp.count_ones(..) == 1 && supp.contains(e_prime)
    }))
}

pub fn is_f_invertible<S: GradeScalar>(r: &KrasnerStructure<S>, x: usize) -> Result<bool> {
    Ok(f_inverse(r, x)?.is_some())
}

/// Elements some iterated g-power of which has support inside `ideal`.
///
/// Exponents `1 … n` are tried directly; beyond that the nested powers
/// `s = l(n−1)+1` are followed until their support set repeats, which on a finite
/// carrier must happen.
pub fn f_radical_by_powers<S: GradeScalar>(
    r: &KrasnerStructure<S>,
    ideal: &ElementSet,
) -> Result<ElementSet> {
    r.require_scalar_identity("the F-radical by powers")?;
    let n = r.n();
    let mut out = ElementSet::with_capacity(r.size());
    for a in 0..r.size() {
        if power_lands_in(r, a, ideal, n)? {
            out.insert(a);
        }
    }
    Ok(out)
}

fn power_lands_in<S: GradeScalar>(
    r: &KrasnerStructure<S>,
    a: usize,
    ideal: &ElementSet,
    n: usize,
) -> Result<bool> {
    for s in 1..=n {
        if r.iterated_g(a, s)?.support().is_subset(ideal) {
            return Ok(true);
        }
    }
    let single = [a];
    let mut current = r.g().support(&vec![a; n]).clone();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    seen.insert(current.clone());
    loop {
        let inner = members(&current);
        let mut args: Vec<&[usize]> = vec![&single; n];
        args[0] = &inner;
        current = r.g().extend_support(&args);
        if current.is_subset(ideal) {
            return Ok(true);
        }
        if !seen.insert(current.clone()) {
            return Ok(false);
        }
    }
}

/// An n-tuple with `supp(g(t)) ⊆ p` and no coordinate in `p`. Its absence is the
/// element-wise prime condition; `p` is not checked to be an ideal.
pub fn prime_witness<S: GradeScalar>(
    r: &KrasnerStructure<S>,
    p: &ElementSet,
) -> Option<Vec<usize>> {
    let all: Vec<usize> = (0..r.size()).collect();
    find_tuple(&all, r.n(), |t| {
        (t.iter().all(|&a| !p.contains(a)) && r.g().support(t).is_subset(p)).then(|| t.to_vec())
    })
}

/// Whether every g-product of elements of `t` stays inside `t`.
pub fn is_g_support_closed<S: GradeScalar>(r: &KrasnerStructure<S>, t: &ElementSet) -> bool {
    let elems = members(t);
    find_tuple(&elems, r.n(), |tuple| {
        (!r.g().support(tuple).is_subset(t)).then_some(())
    })
    .is_none()
}
