//! Quotients `R/I` by an F-hyperideal.

use crate::error::{Error, Result};
use crate::fuzzy::{element_set, members, Carrier, ElementSet, EqualityMode, FuzzySubset};
use crate::ideals::{find_tuple, is_f_hyperideal};
use crate::scalar::GradeScalar;
use crate::structure::KrasnerStructure;
use crate::table::HyperOperationTable;
use crate::verdict::Verdict;

/// The quotient structure together with its cosets.
///
/// The coset of `a` is `supp(f(a, I, e^(m−2)))`. Induced entries take a tuple of cosets
/// to the grade-1 characteristic function of the cosets met by the product of any
/// choice of representatives; every choice is checked to give the same answer.
#[derive(Clone, Debug, PartialEq)]
pub struct Quotient<S> {
    structure: KrasnerStructure<S>,
    ideal: ElementSet,
    cosets: Vec<ElementSet>,
    class_of: Vec<usize>,
}

impl<S: GradeScalar> Quotient<S> {
    pub fn structure(&self) -> &KrasnerStructure<S> {
        &self.structure
    }

    pub fn into_structure(self) -> KrasnerStructure<S> {
        self.structure
    }

    pub fn ideal(&self) -> &ElementSet {
        &self.ideal
    }

    /// Cosets in order of their least element.
    pub fn cosets(&self) -> &[ElementSet] {
        &self.cosets
    }

    /// Index of the coset containing `a`.
    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }
}

pub fn coset<S: GradeScalar>(r: &KrasnerStructure<S>, ideal: &ElementSet, a: usize) -> ElementSet {
    let single = [a];
    let identity = [r.identity()];
    let inside = members(ideal);
    let mut args: Vec<&[usize]> = vec![&identity; r.m()];
    args[0] = &single;
    args[1] = &inside;
    r.f().extend_support(&args)
}

pub fn quotient<S: GradeScalar>(
    r: &KrasnerStructure<S>,
    ideal: &ElementSet,
) -> Result<Quotient<S>> {
    if ideal.len() != r.size() || ideal.is_clear() {
        return Err(Error::usage(
            "the ideal must be a non-empty subset of the carrier",
        ));
    }
    if let Verdict::Fails(v) = is_f_hyperideal(r, ideal)? {
        return Err(Error::usage(format!(
            "{} is not an F-hyperideal: {}",
            r.carrier().format_set(ideal),
            v.describe(r.carrier())
        )));
    }
    let size = r.size();
    let mut cosets: Vec<ElementSet> = Vec::new();
    let mut class_of = vec![usize::MAX; size];
    #[allow(clippy::needless_range_loop)]
    for a in 0..size {
        let c = coset(r, ideal, a);
        if !c.contains(a) {
            return Err(Error::consistency(format!(
                "element {} is missing from its own coset",
                r.carrier().label(a)
            )));
        }
        match cosets.iter().position(|d| *d == c) {
            Some(i) => class_of[a] = i,
            None => {
                if let Some(d) = cosets.iter().find(|d| !d.is_disjoint(&c)) {
                    return Err(Error::consistency(format!(
                        "cosets {} and {} overlap",
                        r.carrier().format_set(d),
                        r.carrier().format_set(&c)
                    )));
                }
                class_of[a] = cosets.len();
                cosets.push(c);
            }
        }
    }
    for (a, &c) in class_of.iter().enumerate() {
        if !cosets[c].contains(a) {
            return Err(Error::consistency("coset assignment is not a partition"));
        }
    }
    if cosets[class_of[r.identity()]] != *ideal {
        return Err(Error::consistency(
            "the coset of the identity differs from the ideal",
        ));
    }
    let q = cosets.len();
    let classes_of = |supp: &ElementSet| element_set(q, supp.ones().map(|x| class_of[x]));
    let induced = |table: &HyperOperationTable<S>, what: &str| -> Result<HyperOperationTable<S>> {
        let mut failure = None;
        let t = HyperOperationTable::from_fn(q, table.arity(), |tuple| {
            let reps: Vec<Vec<usize>> = tuple.iter().map(|&c| members(&cosets[c])).collect();
            let first: Vec<usize> = reps.iter().map(|r| r[0]).collect();
            let expected = classes_of(table.support(&first));
            let mut counters = vec![0usize; tuple.len()];
            let mut tuple_buf = first.clone();
            loop {
                for (slot, (r, &c)) in tuple_buf.iter_mut().zip(reps.iter().zip(&counters)) {
                    *slot = r[c];
                }
                if failure.is_none() && classes_of(table.support(&tuple_buf)) != expected {
                    failure = Some((first.clone(), tuple_buf.clone()));
                }
                let mut pos = tuple.len();
                let done = loop {
                    if pos == 0 {
                        break true;
                    }
                    pos -= 1;
                    counters[pos] += 1;
                    if counters[pos] < reps[pos].len() {
                        break false;
                    }
                    counters[pos] = 0;
                };
                if done {
                    break;
                }
            }
            FuzzySubset::characteristic_set(&expected)
        })?;
        if let Some((a, b)) = failure {
            return Err(Error::consistency(format!(
                "induced {what} is not well defined: ({}) and ({}) give different cosets",
                r.carrier().format_tuple(&a),
                r.carrier().format_tuple(&b)
            )));
        }
        Ok(t)
    };
    let f = induced(r.f(), "f")?;
    let g = induced(r.g(), "g")?;
    let mut negation = vec![0; q];
    for a in 0..size {
        let target = class_of[r.negate(a)];
        if a == members(&cosets[class_of[a]])[0] {
            negation[class_of[a]] = target;
        } else if negation[class_of[a]] != target {
            return Err(Error::consistency("negation is not constant on cosets"));
        }
    }
    let carrier = Carrier::new(cosets.iter().map(|c| r.carrier().format_set(c)))?;
    let structure = KrasnerStructure::new(carrier, f, g, class_of[r.identity()], negation)?
        .with_scalar_identity(r.scalar_identity().map(|x| class_of[x]))?
        .with_mode(EqualityMode::Support)
        .into_validated()?;
    Ok(Quotient {
        structure,
        ideal: ideal.clone(),
        cosets,
        class_of,
    })
}

/// Whether `supp(f(a_1^{i−1}, I, a_{i+1}^m))` is the same for every position `i` and
/// every choice of the other arguments equal to `e` except one copy of `a`.
pub fn cosets_position_independent<S: GradeScalar>(
    r: &KrasnerStructure<S>,
    ideal: &ElementSet,
) -> bool {
    let inside = members(ideal);
    let identity = [r.identity()];
    (0..r.size()).all(|a| {
        let single = [a];
        let reference = coset(r, ideal, a);
        let all: Vec<usize> = (0..r.m()).collect();
        find_tuple(&all, 2, |pair| {
            let (i, j) = (pair[0], pair[1]);
            if i == j {
                return None;
            }
            let mut args: Vec<&[usize]> = vec![&identity; r.m()];
            args[j] = &single;
            args[i] = &inside;
            (r.f().extend_support(&args) != reference).then_some(())
        })
        .is_none()
    })
}
