//! Exhaustive and seeded random generation of small structures, and witness hunting.
//!
//! Candidates are built on the carrier `0 … k−1` with `0` as the identity. Entries the
//! axioms pin down at support level are fixed up front: `f(a, e, …, e)` and its
//! permutations have support `{a}`, every g-tuple containing `e` has support `{e}`,
//! and both tables are support-symmetric (one support per multiset of arguments).
//! Negation ranges over involutions fixing `e`. Validity in support mode depends on
//! supports alone, so each support skeleton is validated once and all grade
//! assignments over the grid are emitted for the skeletons that pass.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::axioms::{ValidationOptions, DEFAULT_TUPLE_BUDGET};
use crate::error::{Error, Result};
use crate::fuzzy::{
    element_set, members, set_order, Carrier, ElementSet, EqualityMode, FuzzySubset,
};
use crate::ideals::{enumerate_ideals_with, f_inverse, EnumerationOptions, IdealLattice};
use crate::scalar::{Grade, GradeScalar};
use crate::structure::KrasnerStructure;
use crate::table::{decode, tuple_count, HyperOperationTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SupportPolicy {
    SingletonOnly,
    AnyNonempty,
}

impl fmt::Display for SupportPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportPolicy::SingletonOnly => "singleton-only",
            SupportPolicy::AnyNonempty => "any-nonempty",
        })
    }
}

impl FromStr for SupportPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singleton-only" => Ok(SupportPolicy::SingletonOnly),
            "any-nonempty" => Ok(SupportPolicy::AnyNonempty),
            other => Err(Error::usage(format!("unknown support policy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpace<S> {
    carrier_size: usize,
    m: usize,
    n: usize,
    grade_grid: Vec<Grade<S>>,
    policy: SupportPolicy,
    /// Maximum number of support skeletons examined.
    budget: u64,
}

impl<S: GradeScalar> SearchSpace<S> {
    pub fn new(
        carrier_size: usize,
        m: usize,
        n: usize,
        grade_grid: Vec<Grade<S>>,
        policy: SupportPolicy,
        budget: u64,
    ) -> Result<Self> {
        if carrier_size == 0 {
            return Err(Error::usage("carrier size must be at least 1"));
        }
        if carrier_size > 8 {
            return Err(Error::usage(
                "exhaustive search is limited to carriers of size 8",
            ));
        }
        if m < 2 || n < 2 {
            return Err(Error::usage("arities must be at least 2"));
        }
        if grade_grid.is_empty() || grade_grid.iter().any(|g| !g.is_positive()) {
            return Err(Error::usage(
                "the grade grid must be non-empty and inside (0,1]",
            ));
        }
        Ok(SearchSpace {
            carrier_size,
            m,
            n,
            grade_grid,
            policy,
            budget,
        })
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grade_grid(&self) -> &[Grade<S>] {
        &self.grade_grid
    }

    pub fn policy(&self) -> SupportPolicy {
        self.policy
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Lazily enumerates every validated structure in a fixed order.
    pub fn enumerate(&self) -> Result<StructureStream<S>> {
        StructureStream::new(self.clone())
    }

    /// Number of support skeletons in the space (saturating).
    pub fn skeleton_count(&self) -> Result<u128> {
        Ok(Layout::new(self)?.total)
    }
}

#[derive(Clone, Debug)]
enum Slot {
    Fixed(ElementSet),
    Orbit(usize),
}

#[derive(Clone, Debug)]
struct Layout {
    involutions: Vec<Vec<usize>>,
    options: Vec<ElementSet>,
    f_slots: Vec<Slot>,
    g_slots: Vec<Slot>,
    orbits: usize,
    total: u128,
}

impl Layout {
    fn new<S: GradeScalar>(space: &SearchSpace<S>) -> Result<Self> {
        let k = space.carrier_size;
        let mut involutions = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        collect_involutions(&mut current, 1, &mut involutions);
        let options: Vec<ElementSet> = match space.policy {
            SupportPolicy::SingletonOnly => (0..k).map(|a| element_set(k, [a])).collect(),
            SupportPolicy::AnyNonempty => {
                let mut all: Vec<ElementSet> = (1u32..1 << k)
                    .map(|mask| element_set(k, (0..k).filter(|i| mask >> i & 1 == 1)))
                    .collect();
                all.sort_by(set_order);
                all
            }
        };
        let mut orbit_ids: HashMap<(bool, Vec<usize>), usize> = HashMap::new();
        let mut slots = |arity: usize, is_f: bool| -> Result<Vec<Slot>> {
            let count = tuple_count(k, arity)
                .filter(|&c| c <= 1 << 24)
                .ok_or_else(|| Error::usage("search table too large"))?;
            let mut tuple = vec![0; arity];
            let mut out = Vec::with_capacity(count as usize);
            for i in 0..count as u64 {
                decode(i, k, &mut tuple);
                let mut sorted = tuple.clone();
                sorted.sort_unstable();
                let non_e: Vec<usize> = sorted.iter().copied().filter(|&x| x != 0).collect();
                let fixed = if is_f {
                    match non_e.len() {
                        0 => Some(0),
                        1 => Some(non_e[0]),
                        _ => None,
                    }
                } else {
                    (non_e.len() < arity).then_some(0)
                };
                out.push(match fixed {
                    Some(a) => Slot::Fixed(element_set(k, [a])),
                    None => {
                        let next = orbit_ids.len();
                        Slot::Orbit(*orbit_ids.entry((is_f, sorted)).or_insert(next))
                    }
                });
            }
            Ok(out)
        };
        let f_slots = slots(space.m, true)?;
        let g_slots = slots(space.n, false)?;
        let orbits = orbit_ids.len();
        let total = (options.len() as u128)
            .checked_pow(orbits as u32)
            .and_then(|x| x.checked_mul(involutions.len() as u128))
            .unwrap_or(u128::MAX);
        Ok(Layout {
            involutions,
            options,
            f_slots,
            g_slots,
            orbits,
            total,
        })
    }

    /// Supports and negation of skeleton number `index`.
    fn skeleton(&self, mut index: u128) -> (Vec<usize>, Vec<usize>) {
        let base = self.options.len() as u128;
        let mut choice = vec![0; self.orbits];
        for slot in choice.iter_mut().rev() {
            *slot = (index % base) as usize;
            index /= base;
        }
        (self.involutions[index as usize].clone(), choice)
    }

    fn support<'a>(&'a self, slot: &'a Slot, choice: &[usize]) -> &'a ElementSet {
        match slot {
            Slot::Fixed(s) => s,
            Slot::Orbit(o) => &self.options[choice[*o]],
        }
    }

    /// Number of grade slots for a skeleton: one per support element per table entry.
    fn grade_slots(&self, choice: &[usize]) -> usize {
        self.f_slots
            .iter()
            .chain(&self.g_slots)
            .map(|s| self.support(s, choice).count_ones(..))
            .sum()
    }

    fn build<S: GradeScalar>(
        &self,
        k: usize,
        arities: (usize, usize),
        negation: Vec<usize>,
        choice: &[usize],
        grid: &[Grade<S>],
        grades: &mut impl Iterator<Item = usize>,
    ) -> Result<KrasnerStructure<S>> {
        let mut table = |slots: &[Slot], arity: usize| {
            let entries = slots
                .iter()
                .map(|slot| {
                    let supp = self.support(slot, choice);
                    FuzzySubset::from_pairs(
                        k,
                        supp.ones()
                            .map(|a| (a, grid[grades.next().unwrap_or(0)].clone())),
                    )
                })
                .collect();
            HyperOperationTable::new(k, arity, entries)
        };
        let f = table(&self.f_slots, arities.0)?;
        let g = table(&self.g_slots, arities.1)?;
        let r = KrasnerStructure::new(Carrier::numbered(k)?, f, g, 0, negation)?
            .with_mode(EqualityMode::Support);
        let e_prime = r.detect_scalar_identity();
        r.with_scalar_identity(e_prime)
    }
}

fn collect_involutions(current: &mut Vec<usize>, from: usize, out: &mut Vec<Vec<usize>>) {
    let k = current.len();
    let Some(i) = (from..k).find(|&i| current[i] == i) else {
        out.push(current.clone());
        return;
    };
    // `i` is the smallest element not yet paired; it is fixed or paired with a later one.
    collect_involutions(current, i + 1, out);
    for j in i + 1..k {
        if current[j] == j {
            current.swap(i, j);
            collect_involutions(current, i + 1, out);
            current.swap(i, j);
        }
    }
}

/// Validated structures of a [`SearchSpace`] in deterministic order. When the budget
/// stops the scan early, [`StructureStream::truncated`] reports it.
pub struct StructureStream<S> {
    space: SearchSpace<S>,
    layout: Layout,
    next_skeleton: u128,
    examined: u64,
    truncated: bool,
    pending: VecDeque<ValidSkeleton>,
    variant: u128,
}

const BATCH: u128 = 256;

/// Negation, entry choice and grade-variant count of a skeleton that passed validation.
type ValidSkeleton = (Vec<usize>, Vec<usize>, u128);

impl<S: GradeScalar> StructureStream<S> {
    fn new(space: SearchSpace<S>) -> Result<Self> {
        let layout = Layout::new(&space)?;
        Ok(StructureStream {
            space,
            layout,
            next_skeleton: 0,
            examined: 0,
            truncated: false,
            pending: VecDeque::new(),
            variant: 0,
        })
    }

    /// Whether the budget ran out before the space was exhausted.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Support skeletons validated so far.
    pub fn examined(&self) -> u64 {
        self.examined
    }

    fn refill(&mut self) -> Result<()> {
        let remaining = self.layout.total - self.next_skeleton;
        let allowance = (self.space.budget - self.examined) as u128;
        if remaining > 0 && allowance == 0 {
            self.truncated = true;
            return Ok(());
        }
        let take = remaining.min(allowance).min(BATCH);
        let start = self.next_skeleton;
        let k = self.space.carrier_size;
        let arities = (self.space.m, self.space.n);
        let layout = &self.layout;
        let grid = &self.space.grade_grid;
        let grid_len = grid.len() as u128;
        let valid: Vec<Option<ValidSkeleton>> = (start..start + take)
            .into_par_iter()
            .map(|idx| {
                let (negation, choice) = layout.skeleton(idx);
                let r = layout.build(
                    k,
                    arities,
                    negation.clone(),
                    &choice,
                    grid,
                    &mut std::iter::empty(),
                )?;
                let report = r.validate_with(ValidationOptions {
                    mode: Some(EqualityMode::Support),
                    budget: DEFAULT_TUPLE_BUDGET,
                })?;
                let variants = grid_len
                    .checked_pow(layout.grade_slots(&choice) as u32)
                    .unwrap_or(u128::MAX);
                Ok(report.passed().then_some((negation, choice, variants)))
            })
            .collect::<Result<_>>()?;
        self.next_skeleton += take;
        self.examined += take as u64;
        self.pending.extend(valid.into_iter().flatten());
        Ok(())
    }

    fn emit(&mut self) -> Option<Result<KrasnerStructure<S>>> {
        let (negation, choice, variants) = self.pending.front()?.clone();
        let slots = self.layout.grade_slots(&choice);
        let base = self.space.grade_grid.len() as u128;
        let mut digits = vec![0usize; slots];
        let mut rest = self.variant;
        for d in digits.iter_mut().rev() {
            *d = (rest % base) as usize;
            rest /= base;
        }
        let built = self.layout.build(
            self.space.carrier_size,
            (self.space.m, self.space.n),
            negation,
            &choice,
            &self.space.grade_grid,
            &mut digits.into_iter(),
        );
        self.variant += 1;
        if self.variant >= variants {
            self.variant = 0;
            self.pending.pop_front();
        }
        Some(built)
    }
}

impl<S: GradeScalar> Iterator for StructureStream<S> {
    type Item = Result<KrasnerStructure<S>>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(item) = self.emit() {
                return Some(item);
            }
            if self.truncated || self.next_skeleton >= self.layout.total {
                return None;
            }
            if let Err(e) = self.refill() {
                return Some(Err(e));
            }
        }
    }
}

/// Validated structures drawn uniformly from the candidate space with a seeded
/// generator; rejected candidates are dropped, so at most `attempts` are returned.
pub fn random_structures<S: GradeScalar>(
    space: &SearchSpace<S>,
    seed: u64,
    attempts: usize,
) -> Result<Vec<KrasnerStructure<S>>> {
    let layout = Layout::new(space)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..attempts {
        let (negation, choice) = layout.skeleton(rng.gen_range(0..layout.total));
        let slots = layout.grade_slots(&choice);
        let grid_len = space.grade_grid.len();
        let mut grades = (0..slots)
            .map(|_| rng.gen_range(0..grid_len))
            .collect::<Vec<_>>()
            .into_iter();
        let r = layout.build(
            space.carrier_size,
            (space.m, space.n),
            negation,
            &choice,
            &space.grade_grid,
            &mut grades,
        )?;
        if r.validate()?.passed() {
            out.push(r);
        }
    }
    Ok(out)
}

/// Properties a structure/ideal pair can be searched for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessPredicate {
    /// Primary but not prime.
    PrimaryNotPrime,
    /// A proper ideal that is not primary.
    IdealNotPrimary,
    /// Prime but not maximal.
    PrimeNotMaximal,
    /// A maximal ideal outside of which every element is F-invertible.
    UniqueMaximal,
}

impl WitnessPredicate {
    pub const ALL: [WitnessPredicate; 4] = [
        WitnessPredicate::PrimaryNotPrime,
        WitnessPredicate::IdealNotPrimary,
        WitnessPredicate::PrimeNotMaximal,
        WitnessPredicate::UniqueMaximal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WitnessPredicate::PrimaryNotPrime => "primary-not-prime",
            WitnessPredicate::IdealNotPrimary => "ideal-not-primary",
            WitnessPredicate::PrimeNotMaximal => "prime-not-maximal",
            WitnessPredicate::UniqueMaximal => "unique-maximal",
        }
    }

    /// First ideal of the lattice (in lattice order) satisfying the predicate. Predicates
    /// that need a scalar identity never match structures without one.
    pub fn first_match<S: GradeScalar>(
        self,
        lattice: &IdealLattice<'_, S>,
    ) -> Result<Option<ElementSet>> {
        let r = lattice.structure();
        let needs_e_prime = self != WitnessPredicate::PrimeNotMaximal;
        if needs_e_prime && r.scalar_identity().is_none() {
            return Ok(None);
        }
        let full = r.size();
        for ideal in lattice.ideals() {
            let proper = ideal.count_ones(..) < full;
            let hit = match self {
                WitnessPredicate::PrimaryNotPrime => {
                    lattice.is_primary(ideal, true)? && !lattice.is_prime(ideal, true)?
                }
                WitnessPredicate::IdealNotPrimary => proper && !lattice.is_primary(ideal, true)?,
                WitnessPredicate::PrimeNotMaximal => {
                    lattice.is_prime(ideal, true)? && !lattice.is_maximal(ideal)?
                }
                WitnessPredicate::UniqueMaximal => {
                    let mut outside = (0..full).filter(|&a| !ideal.contains(a));
                    lattice.is_maximal(ideal)?
                        && outside.try_fold(true, |acc, a| {
                            Ok::<_, Error>(acc && f_inverse(r, a)?.is_some())
                        })?
                }
            };
            if hit {
                return Ok(Some(ideal.clone()));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for WitnessPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WitnessPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WitnessPredicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::usage(format!(
                    "unknown predicate {s:?}; expected one of {}",
                    WitnessPredicate::ALL.map(|p| p.name()).join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessHit<S> {
    /// Position of the structure in the searched sequence.
    pub index: usize,
    pub structure: KrasnerStructure<S>,
    pub ideal: ElementSet,
}

/// First structure/ideal pair in the given order satisfying `predicate`.
pub fn find_witness<S: GradeScalar>(
    structures: impl IntoIterator<Item = Result<KrasnerStructure<S>>>,
    predicate: WitnessPredicate,
    opts: EnumerationOptions,
) -> Result<Option<WitnessHit<S>>> {
    for (index, r) in structures.into_iter().enumerate() {
        let r = r?;
        let hit = {
            let lattice = enumerate_ideals_with(&r, opts)?;
            predicate.first_match(&lattice)?
        };
        if let Some(ideal) = hit {
            return Ok(Some(WitnessHit {
                index,
                structure: r,
                ideal,
            }));
        }
    }
    Ok(None)
}

/// [`find_witness`] over a search space; the flag reports budget truncation.
pub fn find_witness_in_space<S: GradeScalar>(
    space: &SearchSpace<S>,
    predicate: WitnessPredicate,
) -> Result<(Option<WitnessHit<S>>, bool)> {
    let mut stream = space.enumerate()?;
    let hit = find_witness(&mut stream, predicate, EnumerationOptions::default())?;
    Ok((hit, stream.truncated()))
}

/// Support-level description of a structure, used to compare search output.
pub fn support_signature<S: GradeScalar>(
    r: &KrasnerStructure<S>,
) -> (Vec<usize>, Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let f = (0..r.f().len())
        .map(|i| members(r.f().support_at(i)))
        .collect();
    let g = (0..r.g().len())
        .map(|i| members(r.g().support_at(i)))
        .collect();
    (r.negation().to_vec(), f, g)
}
