//! Fuzzy-valued k-ary operation tables and their extension to fuzzy arguments.

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::fuzzy::{ElementSet, FuzzySubset};
use crate::scalar::GradeScalar;

pub(crate) type TupleBuf = SmallVec<[usize; 16]>;

/// Number of `arity`-tuples over `size` elements, or `None` on overflow.
pub fn tuple_count(size: usize, arity: usize) -> Option<u128> {
    (size as u128).checked_pow(arity as u32)
}

/// Writes the tuple with lexicographic rank `index` into `out` (first position most
/// significant).
pub(crate) fn decode(mut index: u64, size: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % size as u64) as usize;
        index /= size as u64;
    }
}

/// One argument of an extended operation: an element, a crisp subset, or a fuzzy subset.
/// Elements and subsets are read as their characteristic functions.
#[derive(Clone, Copy, Debug)]
pub enum Arg<'a, S> {
    Element(usize),
    Set(&'a ElementSet),
    Fuzzy(&'a FuzzySubset<S>),
}

/// A total map from `arity`-tuples of carrier indices to non-zero fuzzy subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperOperationTable<S> {
    size: usize,
    arity: usize,
    entries: Vec<FuzzySubset<S>>,
    supports: Vec<ElementSet>,
}

impl<S: GradeScalar> HyperOperationTable<S> {
    /// Entries are given in lexicographic tuple order.
    pub fn new(size: usize, arity: usize, entries: Vec<FuzzySubset<S>>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::usage(format!(
                "operation arity must be at least 2, got {arity}"
            )));
        }
        if size == 0 {
            return Err(Error::usage("operation over an empty carrier"));
        }
        let expected = tuple_count(size, arity)
            .filter(|&c| c <= usize::MAX as u128)
            .ok_or_else(|| Error::usage("operation table too large"))?
            as usize;
        if entries.len() != expected {
            let missing = entries.len().min(expected);
            let mut buf = vec![0; arity];
            decode(missing as u64, size, &mut buf);
            return Err(Error::Totality {
                table: format!("{arity}-ary"),
                tuple: format!("{buf:?}"),
            });
        }
        for (i, mu) in entries.iter().enumerate() {
            if mu.carrier_len() != size {
                return Err(Error::usage("table entry over a different carrier"));
            }
            if !mu.is_nonzero() {
                let mut buf = vec![0; arity];
                decode(i as u64, size, &mut buf);
                return Err(Error::Domain(format!(
                    "table entry at {buf:?} is the zero fuzzy subset"
                )));
            }
        }
        let supports = entries.iter().map(FuzzySubset::support).collect();
        Ok(HyperOperationTable {
            size,
            arity,
            entries,
            supports,
        })
    }

    pub fn from_fn(
        size: usize,
        arity: usize,
        mut entry: impl FnMut(&[usize]) -> FuzzySubset<S>,
    ) -> Result<Self> {
        let count = tuple_count(size, arity).ok_or_else(|| Error::usage("table too large"))?;
        let mut buf = vec![0; arity];
        let entries = (0..count as u64)
            .map(|i| {
                decode(i, size, &mut buf);
                entry(&buf)
            })
            .collect();
        HyperOperationTable::new(size, arity, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &a| acc * self.size + a)
    }

    pub fn entry(&self, tuple: &[usize]) -> &FuzzySubset<S> {
        &self.entries[self.index_of(tuple)]
    }

    pub fn entry_at(&self, index: usize) -> &FuzzySubset<S> {
        &self.entries[index]
    }

    pub fn entries(&self) -> &[FuzzySubset<S>] {
        &self.entries
    }

    pub fn support(&self, tuple: &[usize]) -> &ElementSet {
        &self.supports[self.index_of(tuple)]
    }

    pub fn support_at(&self, index: usize) -> &ElementSet {
        &self.supports[index]
    }

    /// Replaces a single entry.
    pub fn with_entry(&self, tuple: &[usize], value: FuzzySubset<S>) -> Result<Self> {
        let mut entries = self.entries.clone();
        entries[self.index_of(tuple)] = value;
        HyperOperationTable::new(self.size, self.arity, entries)
    }

    /// Extension to fuzzy arguments: the join of the entries over every tuple drawn from
    /// the argument supports. Argument grades play no role.
    pub fn extend(&self, args: &[&FuzzySubset<S>]) -> Result<FuzzySubset<S>> {
        self.check_args(args.len())?;
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|mu| {
                if mu.carrier_len() != self.size {
                    return Err(Error::usage("argument over a different carrier"));
                }
                Ok(mu.support_indices().collect())
            })
            .collect::<Result<_>>()?;
        self.extend_checked(&supports)
    }

    /// Extension with mixed element / subset / fuzzy arguments.
    pub fn extend_mixed(&self, args: &[Arg<'_, S>]) -> Result<FuzzySubset<S>> {
        self.check_args(args.len())?;
        let supports: Vec<Vec<usize>> = args
            .iter()
            .map(|a| match a {
                Arg::Element(x) => {
                    if *x >= self.size {
                        Err(Error::usage(format!("element index {x} out of range")))
                    } else {
                        Ok(vec![*x])
                    }
                }
                Arg::Set(s) => Ok(s.ones().collect()),
                Arg::Fuzzy(mu) => Ok(mu.support_indices().collect()),
            })
            .collect::<Result<_>>()?;
        self.extend_checked(&supports)
    }

    fn check_args(&self, n: usize) -> Result<()> {
        if n != self.arity {
            return Err(Error::usage(format!(
                "{}-ary operation applied to {n} arguments",
                self.arity
            )));
        }
        Ok(())
    }

    fn extend_checked(&self, supports: &[Vec<usize>]) -> Result<FuzzySubset<S>> {
        if let Some(pos) = supports.iter().position(Vec::is_empty) {
            return Err(Error::Domain(format!(
                "argument {} has empty support",
                pos + 1
            )));
        }
        let refs: SmallVec<[&[usize]; 16]> = supports.iter().map(Vec::as_slice).collect();
        Ok(self.extend_indices(&refs))
    }

    /// Extension over non-empty support lists; the workhorse behind every axiom scan.
    pub(crate) fn extend_indices(&self, args: &[&[usize]]) -> FuzzySubset<S> {
        debug_assert_eq!(args.len(), self.arity);
        debug_assert!(args.iter().all(|a| !a.is_empty()));
        if args.iter().all(|a| a.len() == 1) {
            let idx = args.iter().fold(0, |acc, a| acc * self.size + a[0]);
            return self.entries[idx].clone();
        }
        let mut pairs = Vec::new();
        let mut counters: TupleBuf = SmallVec::from_elem(0, self.arity);
        loop {
            let idx = args
                .iter()
                .zip(&counters)
                .fold(0, |acc, (a, &c)| acc * self.size + a[c]);
            pairs.extend(self.entries[idx].entries().iter().cloned());
            let mut pos = self.arity;
            loop {
                if pos == 0 {
                    return FuzzySubset::from_pairs(self.size, pairs);
                }
                pos -= 1;
                counters[pos] += 1;
                if counters[pos] < args[pos].len() {
                    break;
                }
                counters[pos] = 0;
            }
        }
    }

    /// Support of the extension, computed on bitsets only.
    pub(crate) fn extend_support(&self, args: &[&[usize]]) -> ElementSet {
        let mut out = ElementSet::with_capacity(self.size);
        if args.iter().any(|a| a.is_empty()) {
            return out;
        }
        let mut counters: TupleBuf = SmallVec::from_elem(0, self.arity);
        loop {
            let idx = args
                .iter()
                .zip(&counters)
                .fold(0, |acc, (a, &c)| acc * self.size + a[c]);
            out.union_with(&self.supports[idx]);
            let mut pos = self.arity;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                counters[pos] += 1;
                if counters[pos] < args[pos].len() {
                    break;
                }
                counters[pos] = 0;
            }
        }
    }

    /// The table restricted to tuples over `keep` (ascending), with entries restricted too.
    pub(crate) fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let k = keep.len();
        HyperOperationTable::from_fn(k, self.arity, |tuple| {
            let orig: TupleBuf = tuple.iter().map(|&i| keep[i]).collect();
            self.entry(&orig).restrict(keep)
        })
    }
}
