//! Fuzzy subsets of a finite carrier.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Grade, GradeScalar};

/// A crisp subset of a carrier, indexed by carrier position.
pub type ElementSet = FixedBitSet;

pub fn element_set(len: usize, members: impl IntoIterator<Item = usize>) -> ElementSet {
    let mut set = FixedBitSet::with_capacity(len);
    for i in members {
        set.insert(i);
    }
    set
}

pub fn full_set(len: usize) -> ElementSet {
    let mut set = FixedBitSet::with_capacity(len);
    set.insert_range(..);
    set
}

/// Sorted member indices; used as the lexicographic key wherever a deterministic order of
/// subsets is needed.
pub fn members(set: &ElementSet) -> Vec<usize> {
    set.ones().collect()
}

/// Orders subsets by size, then lexicographically by sorted members.
pub fn set_order(a: &ElementSet, b: &ElementSet) -> std::cmp::Ordering {
    a.count_ones(..)
        .cmp(&b.count_ones(..))
        .then_with(|| members(a).cmp(&members(b)))
}

/// The ground set: distinct labels in a fixed index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn new<L: Into<String>>(labels: impl IntoIterator<Item = L>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::usage("a carrier needs at least one element"));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Carrier { labels, index })
    }

    /// Carrier `0, 1, …, size-1`.
    pub fn numbered(size: usize) -> Result<Self> {
        Carrier::new((0..size).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn lookup(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::usage(format!("unknown element {label:?}")))
    }

    pub fn set_of<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<ElementSet> {
        let mut set = FixedBitSet::with_capacity(self.len());
        for l in labels {
            set.insert(self.lookup(l)?);
        }
        Ok(set)
    }

    /// `{a,b,c}` rendering of a subset.
    pub fn format_set(&self, set: &ElementSet) -> String {
        let parts: Vec<&str> = set.ones().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn format_tuple(&self, tuple: &[usize]) -> String {
        let parts: Vec<&str> = tuple.iter().map(|&i| self.label(i)).collect();
        parts.join(",")
    }
}

/// How equalities between fuzzy subsets are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EqualityMode {
    /// Identical grades at every element.
    Strict,
    /// Identical supports.
    #[default]
    Support,
}

impl EqualityMode {
    pub fn equal<S: GradeScalar>(self, a: &FuzzySubset<S>, b: &FuzzySubset<S>) -> bool {
        a.equal(b, self)
    }
}

impl fmt::Display for EqualityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EqualityMode::Strict => "strict",
            EqualityMode::Support => "support",
        })
    }
}

impl std::str::FromStr for EqualityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(EqualityMode::Strict),
            "support" => Ok(EqualityMode::Support),
            other => Err(Error::usage(format!("unknown equality mode {other:?}"))),
        }
    }
}

/// A total grade assignment over a carrier of `len` elements.
///
/// Stored sparsely as `(index, grade)` pairs with positive grades, sorted by index, so the
/// derived equality is grade-level equality.
#[derive(Clone, PartialEq, Debug)]
pub struct FuzzySubset<S> {
    len: usize,
    entries: Vec<(usize, Grade<S>)>,
}

impl<S: GradeScalar> FuzzySubset<S> {
    pub fn zero(len: usize) -> Self {
        FuzzySubset {
            len,
            entries: Vec::new(),
        }
    }

    /// `H_t`: grade `t` on `members`, zero elsewhere.
    pub fn threshold(len: usize, members: impl IntoIterator<Item = usize>, t: Grade<S>) -> Self {
        if !t.is_positive() {
            return FuzzySubset::zero(len);
        }
        let mut idx: Vec<usize> = members.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        assert!(idx.last().is_none_or(|&i| i < len), "element out of range");
        FuzzySubset {
            len,
            entries: idx.into_iter().map(|i| (i, t.clone())).collect(),
        }
    }

    pub fn threshold_set(set: &ElementSet, t: Grade<S>) -> Self {
        FuzzySubset::threshold(set.len(), set.ones(), t)
    }

    pub fn characteristic(len: usize, members: impl IntoIterator<Item = usize>) -> Self {
        FuzzySubset::threshold(len, members, Grade::one())
    }

    pub fn characteristic_set(set: &ElementSet) -> Self {
        FuzzySubset::threshold_set(set, Grade::one())
    }

    /// The fuzzy point `x_t`.
    pub fn point(len: usize, x: usize, t: Grade<S>) -> Self {
        FuzzySubset::threshold(len, [x], t)
    }

    pub fn from_grades(grades: impl IntoIterator<Item = Grade<S>>) -> Self {
        let mut len = 0;
        let mut entries = Vec::new();
        for (i, g) in grades.into_iter().enumerate() {
            len = i + 1;
            if g.is_positive() {
                entries.push((i, g));
            }
        }
        FuzzySubset { len, entries }
    }

    /// Builds from `(index, grade)` pairs; repeated indices keep the larger grade.
    pub fn from_pairs(len: usize, pairs: impl IntoIterator<Item = (usize, Grade<S>)>) -> Self {
        let mut entries: Vec<(usize, Grade<S>)> =
            pairs.into_iter().filter(|(_, g)| g.is_positive()).collect();
        assert!(
            entries.iter().all(|&(i, _)| i < len),
            "element out of range"
        );
        entries.sort_by_key(|a| a.0);
        let mut merged: Vec<(usize, Grade<S>)> = Vec::with_capacity(entries.len());
        for (i, g) in entries {
            match merged.last_mut() {
                Some((j, h)) if *j == i => {
                    if g > *h {
                        *h = g;
                    }
                }
                _ => merged.push((i, g)),
            }
        }
        FuzzySubset {
            len,
            entries: merged,
        }
    }

    pub fn carrier_len(&self) -> usize {
        self.len
    }

    pub fn grade(&self, i: usize) -> Grade<S> {
        match self.entries.binary_search_by(|(j, _)| j.cmp(&i)) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Grade::zero(),
        }
    }

    pub fn grades(&self) -> Vec<Grade<S>> {
        (0..self.len).map(|i| self.grade(i)).collect()
    }

    /// Positively graded `(index, grade)` pairs in index order.
    pub fn entries(&self) -> &[(usize, Grade<S>)] {
        &self.entries
    }

    pub fn support(&self) -> ElementSet {
        element_set(self.len, self.support_indices())
    }

    pub fn support_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_nonzero(&self) -> bool {
        !self.entries.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.entries.binary_search_by(|(j, _)| j.cmp(&i)).is_ok()
    }

    /// Pointwise maximum of two fuzzy subsets.
    pub fn join_with(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "fuzzy subsets over different carriers");
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1.clone().max(b[j].1.clone())));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        FuzzySubset {
            len: self.len,
            entries: out,
        }
    }

    /// Pointwise maximum of a non-empty family.
    pub fn join<'a>(mus: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        S: 'a,
    {
        let mut it = mus.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::usage("join of an empty family"))?;
        let mut acc = first.clone();
        for mu in it {
            if mu.len != acc.len {
                return Err(Error::usage(
                    "join of fuzzy subsets over different carriers",
                ));
            }
            acc = acc.join_with(mu);
        }
        Ok(acc)
    }

    pub fn equal(&self, other: &Self, mode: EqualityMode) -> bool {
        match mode {
            EqualityMode::Strict => self == other,
            EqualityMode::Support => {
                self.len == other.len
                    && self.entries.len() == other.entries.len()
                    && self
                        .entries
                        .iter()
                        .zip(&other.entries)
                        .all(|(a, b)| a.0 == b.0)
            }
        }
    }

    /// Restricts to the elements of `keep`, reindexed in ascending order.
    pub(crate) fn restrict(&self, keep: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.len];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        FuzzySubset {
            len: keep.len(),
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| pos[*i] != usize::MAX)
                .map(|(i, g)| (pos[*i], g.clone()))
                .collect(),
        }
    }

    /// Renders as `{a:1/2, b:1/3}` through a carrier.
    pub fn display<'a>(&'a self, carrier: &'a Carrier) -> impl fmt::Display + 'a {
        DisplayFuzzy { mu: self, carrier }
    }
}

struct DisplayFuzzy<'a, S> {
    mu: &'a FuzzySubset<S>,
    carrier: &'a Carrier,
}

impl<S: GradeScalar> fmt::Display for DisplayFuzzy<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, g)) in self.mu.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", self.carrier.label(*i), g)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    type Mu = FuzzySubset<Rational>;

    fn g(p: i64, q: i64) -> Grade<Rational> {
        Grade::ratio(p, q).unwrap()
    }

    #[test]
    fn support_examples() {
        assert_eq!(members(&Mu::characteristic(4, [2]).support()), vec![2]);
        assert!(members(&Mu::zero(4).support()).is_empty());
        let h = Mu::threshold(4, [0, 1], g(1, 3));
        assert_eq!(members(&h.support()), vec![0, 1]);
        assert_eq!(h.grade(0), g(1, 3));
        assert_eq!(h.grade(3), Grade::zero());
    }

    #[test]
    fn join_examples() {
        let a = Mu::point(3, 1, g(3, 10));
        let b = Mu::point(3, 1, g(3, 5));
        assert_eq!(Mu::join([&a, &b]).unwrap(), b);
        assert_eq!(Mu::join([&a, &Mu::zero(3)]).unwrap(), a);
        let ab = Mu::join([&Mu::characteristic(3, [0]), &Mu::characteristic(3, [1])]).unwrap();
        assert_eq!(ab, Mu::characteristic(3, [0, 1]));
        assert!(matches!(Mu::join(std::iter::empty()), Err(Error::Usage(_))));
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(
            Mu::threshold(3, [0], Grade::one()),
            Mu::characteristic(3, [0])
        );
        let h = Mu::threshold(3, [0, 1], g(1, 2));
        assert_eq!(h.grades(), vec![g(1, 2), g(1, 2), Grade::zero()]);
        assert_eq!(Mu::threshold(3, [], g(1, 2)), Mu::zero(3));
    }

    #[test]
    fn equality_modes() {
        let half = Mu::point(3, 0, g(1, 2));
        let third = Mu::point(3, 0, g(1, 3));
        assert!(half.equal(&half.clone(), EqualityMode::Strict));
        assert!(!half.equal(&third, EqualityMode::Strict));
        assert!(half.equal(&third, EqualityMode::Support));
        let a = Mu::characteristic(3, [0]);
        let b = Mu::characteristic(3, [1]);
        assert!(!a.equal(&b, EqualityMode::Support));
    }

    #[test]
    fn carrier_rejects_duplicates() {
        assert_eq!(
            Carrier::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert!(Carrier::new(Vec::<String>::new()).is_err());
    }

    fn grade_vec(len: usize) -> impl Strategy<Value = Vec<Grade<Rational>>> {
        prop::collection::vec((0i64..=4, 1i64..=4), len).prop_map(|v| {
            v.into_iter()
                .map(|(p, q)| Grade::ratio(p.min(q), q).unwrap())
                .collect()
        })
    }

    proptest! {
        #[test]
        fn join_laws(a in grade_vec(5), b in grade_vec(5), c in grade_vec(5)) {
            let (a, b, c) = (Mu::from_grades(a), Mu::from_grades(b), Mu::from_grades(c));
            prop_assert_eq!(a.join_with(&b), b.join_with(&a));
            prop_assert_eq!(a.join_with(&b).join_with(&c), a.join_with(&b.join_with(&c)));
            prop_assert_eq!(a.join_with(&a), a.clone());
            prop_assert_eq!(a.join_with(&Mu::zero(5)), a.clone());
            let mut union = a.support();
            union.union_with(&b.support());
            prop_assert_eq!(a.join_with(&b).support(), union);
        }

        #[test]
        fn threshold_support(set in prop::collection::btree_set(0usize..6, 0..6), p in 1i64..=5) {
            let mu = Mu::threshold(6, set.iter().copied(), g(p, 5));
            prop_assert_eq!(members(&mu.support()), set.into_iter().collect::<Vec<_>>());
        }

        #[test]
        fn strict_implies_support(a in grade_vec(4), b in grade_vec(4)) {
            let (a, b) = (Mu::from_grades(a), Mu::from_grades(b));
            if a.equal(&b, EqualityMode::Strict) {
                prop_assert!(a.equal(&b, EqualityMode::Support));
            }
        }
    }
}
