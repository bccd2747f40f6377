use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::{f_radical_by_powers, find_tuple, is_g_support_closed, prime_witness};
use crate::error::{Error, Result};
use crate::fuzzy::{members, set_order, ElementSet};
use crate::scalar::GradeScalar;
use crate::structure::KrasnerStructure;

/// Largest `(2^|G|)^n` the subset-quantified prime oracle will sweep.
pub const SUBSET_ORACLE_BUDGET: u128 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Iterated g-powers with cycle detection.
    Powers,
    /// Intersection of the primes containing the ideal.
    Primes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Exclude the whole carrier from being prime or primary.
    pub require_proper: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            require_proper: true,
        }
    }
}

/// Classification of one ideal. `primary` and `radical` are absent when the structure
/// has no scalar identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealClass {
    pub ideal: ElementSet,
    pub prime: bool,
    pub maximal: bool,
    pub primary: Option<bool>,
    pub radical: Option<ElementSet>,
}

/// The complete family of F-hyperideals of a structure, sorted by size then
/// lexicographically, with the containment relation precomputed.
#[derive(Clone, Debug)]
pub struct IdealLattice<'a, S> {
    structure: &'a KrasnerStructure<S>,
    ideals: Vec<ElementSet>,
    /// `supersets[i]` holds every `j` with `ideals[i] ⊆ ideals[j]`.
    supersets: Vec<FixedBitSet>,
}

impl<'a, S: GradeScalar> IdealLattice<'a, S> {
    pub(crate) fn new(structure: &'a KrasnerStructure<S>, ideals: Vec<ElementSet>) -> Self {
        let count = ideals.len();
        let supersets = ideals
            .iter()
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(count);
                for (j, b) in ideals.iter().enumerate() {
                    row.set(j, a.is_subset(b));
                }
                row
            })
            .collect();
        IdealLattice {
            structure,
            ideals,
            supersets,
        }
    }

    pub fn structure(&self) -> &'a KrasnerStructure<S> {
        self.structure
    }

    pub fn ideals(&self) -> &[ElementSet] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn position(&self, set: &ElementSet) -> Option<usize> {
        self.ideals
            .binary_search_by(|probe| set_order(probe, set))
            .ok()
    }

    pub fn contains(&self, set: &ElementSet) -> bool {
        self.position(set).is_some()
    }

    /// Whether `ideals[i] ⊆ ideals[j]`.
    pub fn included(&self, i: usize, j: usize) -> bool {
        self.supersets[i].contains(j)
    }

    fn require(&self, set: &ElementSet) -> Result<usize> {
        self.position(set).ok_or_else(|| {
            Error::usage(format!(
                "{} is not an F-hyperideal",
                self.structure.carrier().format_set(set)
            ))
        })
    }

    fn is_carrier(&self, set: &ElementSet) -> bool {
        set.count_ones(..) == self.structure.size()
    }

    /// An n-tuple with `supp(g(t)) ⊆ p` and no coordinate in `p`, if any.
    pub fn prime_witness(&self, p: &ElementSet) -> Result<Option<Vec<usize>>> {
        self.require(p)?;
        Ok(prime_witness(self.structure, p))
    }

    /// Element-wise primality: every n-tuple whose product lands in `p` has a
    /// coordinate in `p`.
    pub fn is_prime(&self, p: &ElementSet, require_proper: bool) -> Result<bool> {
        let witness = self.prime_witness(p)?;
        Ok(!(require_proper && self.is_carrier(p)) && witness.is_none())
    }

    /// Primality quantified over non-empty subsets `S_1 … S_n`: whenever the extended
    /// product lands in `p`, some `S_i ⊆ p`. Properness is not imposed.
    pub fn is_prime_by_subsets(&self, p: &ElementSet) -> Result<bool> {
        self.require(p)?;
        Ok(subset_prime_flags(self.structure, std::slice::from_ref(p))?[0])
    }

    /// [`Self::is_prime_by_subsets`] for every ideal in one sweep.
    pub fn primes_by_subsets(&self) -> Result<Vec<bool>> {
        subset_prime_flags(self.structure, &self.ideals)
    }

    pub fn prime_ideals(&self, require_proper: bool) -> Vec<ElementSet> {
        self.ideals
            .iter()
            .filter(|p| self.is_prime(p, require_proper).expect("listed ideal"))
            .cloned()
            .collect()
    }

    pub fn is_maximal(&self, m: &ElementSet) -> Result<bool> {
        let i = self.require(m)?;
        Ok(!self.is_carrier(m)
            && self.supersets[i]
                .ones()
                .all(|j| j == i || self.is_carrier(&self.ideals[j])))
    }

    pub fn maximal_ideals(&self) -> Vec<ElementSet> {
        self.ideals
            .iter()
            .filter(|m| self.is_maximal(m).expect("listed ideal"))
            .cloned()
            .collect()
    }

    /// Intersection of the maximal ideals, or the carrier if there are none.
    pub fn jacobson_radical(&self) -> ElementSet {
        intersect_or_carrier(self.structure.size(), self.maximal_ideals().iter())
    }

    pub fn f_radical(&self, ideal: &ElementSet, method: RadicalMethod) -> Result<ElementSet> {
        self.require(ideal)?;
        match method {
            RadicalMethod::Powers => f_radical_by_powers(self.structure, ideal),
            RadicalMethod::Primes => {
                let primes = self.prime_ideals(true);
                Ok(intersect_or_carrier(
                    self.structure.size(),
                    primes.iter().filter(|p| ideal.is_subset(p)),
                ))
            }
        }
    }

    /// An n-tuple with product in `q`, no coordinate in `q`, and no position whose
    /// complementary product (e′ substituted there) lands in the F-radical of `q`.
    pub fn primary_witness(&self, q: &ElementSet) -> Result<Option<Vec<usize>>> {
        self.require(q)?;
        let r = self.structure;
        let e_prime = r.require_scalar_identity("primary classification")?;
        let radical = f_radical_by_powers(r, q)?;
        let all: Vec<usize> = (0..r.size()).collect();
        Ok(find_tuple(&all, r.n(), |t| {
            if !r.g().support(t).is_subset(q) {
                return None;
            }
            let mut swapped = t.to_vec();
            let rescued = (0..t.len()).any(|i| {
                if q.contains(t[i]) {
                    return true;
                }
                swapped[i] = e_prime;
                let ok = r.g().support(&swapped).is_subset(&radical);
                swapped[i] = t[i];
                ok
            });
            (!rescued).then(|| t.to_vec())
        }))
    }

    pub fn is_primary(&self, q: &ElementSet, require_proper: bool) -> Result<bool> {
        let witness = self.primary_witness(q)?;
        Ok(!(require_proper && self.is_carrier(q)) && witness.is_none())
    }

    /// A maximal lattice ideal containing `ideal` and disjoint from `avoid`
    /// (lexicographically least among maximal candidates), checked to be prime.
    pub fn prime_disjoint_from(
        &self,
        ideal: &ElementSet,
        avoid: &ElementSet,
    ) -> Result<Option<ElementSet>> {
        self.require(ideal)?;
        let r = self.structure;
        if avoid.len() != r.size() || avoid.is_clear() {
            return Err(Error::usage("the avoided set must be a non-empty subset"));
        }
        if !is_g_support_closed(r, avoid) {
            return Err(Error::usage("the avoided set is not closed under g"));
        }
        if !ideal.is_disjoint(avoid) {
            return Err(Error::usage("the ideal meets the avoided set"));
        }
        let candidates: Vec<usize> = (0..self.len())
            .filter(|&j| ideal.is_subset(&self.ideals[j]) && self.ideals[j].is_disjoint(avoid))
            .collect();
        let chosen = candidates
            .iter()
            .copied()
            .filter(|&j| candidates.iter().all(|&k| k == j || !self.included(j, k)))
            .min_by(|&a, &b| lex_order(&self.ideals[a], &self.ideals[b]));
        let Some(j) = chosen else {
            return Ok(None);
        };
        let p = self.ideals[j].clone();
        if !self.is_prime(&p, false)? {
            return Err(Error::consistency(format!(
                "maximal ideal {} avoiding {} is not prime",
                r.carrier().format_set(&p),
                r.carrier().format_set(avoid)
            )));
        }
        Ok(Some(p))
    }

    /// Per-ideal flags, in lattice order.
    pub fn classify(&self, opts: ClassifyOptions) -> Result<Vec<IdealClass>> {
        let has_e_prime = self.structure.scalar_identity().is_some();
        self.ideals
            .par_iter()
            .map(|ideal| {
                let (primary, radical) = if has_e_prime {
                    (
                        Some(self.is_primary(ideal, opts.require_proper)?),
                        Some(self.f_radical(ideal, RadicalMethod::Powers)?),
                    )
                } else {
                    (None, None)
                };
                Ok(IdealClass {
                    ideal: ideal.clone(),
                    prime: self.is_prime(ideal, opts.require_proper)?,
                    maximal: self.is_maximal(ideal)?,
                    primary,
                    radical,
                })
            })
            .collect()
    }
}

fn intersect_or_carrier<'s>(size: usize, sets: impl Iterator<Item = &'s ElementSet>) -> ElementSet {
    let mut out = crate::fuzzy::full_set(size);
    for s in sets {
        out.intersect_with(s);
    }
    out
}

/// Lexicographic order on sorted member lists.
fn lex_order(a: &ElementSet, b: &ElementSet) -> std::cmp::Ordering {
    members(a).cmp(&members(b))
}

fn mask_of(set: &ElementSet) -> u64 {
    set.ones().fold(0, |acc, i| acc | 1 << i)
}

/// For each candidate, whether it passes the subset-quantified prime condition.
///
/// Subsets are bitmasks. `T_j` tabulates the support of g with the first `j`
/// arguments ranging over subsets and the rest over elements; each level is filled by
/// splitting off the lowest member of the new subset. The last argument is streamed
/// so that only `T_{n−1}` is stored.
fn subset_prime_flags<S: GradeScalar>(
    r: &KrasnerStructure<S>,
    candidates: &[ElementSet],
) -> Result<Vec<bool>> {
    let k = r.size();
    let n = r.n();
    let needed = (1u128 << k.min(127)).saturating_pow(n as u32);
    if k > 30 || needed > SUBSET_ORACLE_BUDGET {
        return Err(Error::Budget {
            what: "subset-quantified prime oracle".into(),
            needed,
            bound: SUBSET_ORACLE_BUDGET,
        });
    }
    let b = 1usize << k;
    let elem_count = k.pow(n as u32);
    let mut table: Vec<u64> = (0..elem_count)
        .map(|idx| mask_of(r.g().support_at(idx)))
        .collect();
    // Lift argument j from elements to subsets, for j = 0 … n−2.
    for j in 0..n - 1 {
        let prefix = b.pow(j as u32);
        let suffix = k.pow((n - j - 1) as u32);
        let mut next = vec![0u64; prefix * b * suffix];
        for p in 0..prefix {
            for s in 1..b {
                let low = s.trailing_zeros() as usize;
                let rest = s & (s - 1);
                for e in 0..suffix {
                    let from_rest = next[(p * b + rest) * suffix + e];
                    let from_low = table[(p * k + low) * suffix + e];
                    next[(p * b + s) * suffix + e] = from_rest | from_low;
                }
            }
        }
        table = next;
    }
    let targets: Vec<u64> = candidates.iter().map(mask_of).collect();
    let mut prime = vec![true; candidates.len()];
    let prefixes = b.pow((n - 1) as u32);
    let mut digits = vec![0usize; n - 1];
    let mut row = vec![0u64; b];
    for p in 0..prefixes {
        let mut rest = p;
        for d in digits.iter_mut().rev() {
            *d = rest % b;
            rest /= b;
        }
        if digits.contains(&0) {
            continue;
        }
        // Candidates for which none of S_1 … S_{n−1} lies inside.
        let open: Vec<usize> = (0..targets.len())
            .filter(|&c| prime[c] && digits.iter().all(|&s| s as u64 & !targets[c] != 0))
            .collect();
        if open.is_empty() {
            continue;
        }
        for s in 1..b {
            let low = s.trailing_zeros() as usize;
            row[s] = row[s & (s - 1)] | table[p * k + low];
            for &c in &open {
                if row[s] & !targets[c] == 0 && s as u64 & !targets[c] != 0 {
                    prime[c] = false;
                }
            }
        }
    }
    Ok(prime)
}
