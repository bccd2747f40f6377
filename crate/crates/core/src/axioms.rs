//! Exhaustive axiom checking for canonical F^m-hypergroups and Krasner F^(m,n)-hyperrings.
//!
//! Every scan walks tuples in lexicographic carrier-index order and reports the first
//! failure. Scans run in parallel over tuple ranges; `find_map_first` keeps the reported
//! witness the lexicographically least one regardless of scheduling.

use std::fmt;

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::fuzzy::{EqualityMode, FuzzySubset};
use crate::scalar::GradeScalar;
use crate::structure::KrasnerStructure;
use crate::table::{decode, tuple_count, HyperOperationTable, TupleBuf};

pub const DEFAULT_TUPLE_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Identity,
    Inverses,
    FSymmetry,
    FAssociativity,
    GAssociativity,
    GCommutativity,
    Distributivity,
    AbsorbingZero,
    ScalarIdentity,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::FAssociativity,
        Axiom::Identity,
        Axiom::Inverses,
        Axiom::FSymmetry,
        Axiom::GAssociativity,
        Axiom::GCommutativity,
        Axiom::Distributivity,
        Axiom::AbsorbingZero,
        Axiom::ScalarIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Identity => "identity",
            Axiom::Inverses => "inverses",
            Axiom::FSymmetry => "f-symmetry",
            Axiom::FAssociativity => "f-associativity",
            Axiom::GAssociativity => "g-associativity",
            Axiom::GCommutativity => "g-commutativity",
            Axiom::Distributivity => "distributivity",
            Axiom::AbsorbingZero => "absorbing-zero",
            Axiom::ScalarIdentity => "scalar-identity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A concrete failing instance.
///
/// `tuple` holds the quantified elements in the order the axiom lists them, `positions`
/// the 0-based slots involved, and `left`/`right` the two fuzzy subsets that were compared
/// (for containment-style axioms, `right` is the characteristic function that should have
/// been matched or contained).
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<S> {
    pub tuple: Vec<usize>,
    pub positions: Vec<usize>,
    pub left: FuzzySubset<S>,
    pub right: FuzzySubset<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AxiomVerdict<S> {
    Pass,
    Fail(Witness<S>),
    /// The axiom does not apply (e.g. no scalar identity declared).
    NotApplicable,
}

impl<S> AxiomVerdict<S> {
    pub fn is_failure(&self) -> bool {
        matches!(self, AxiomVerdict::Fail(_))
    }

    pub fn witness(&self) -> Option<&Witness<S>> {
        match self {
            AxiomVerdict::Fail(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<S> {
    pub mode: EqualityMode,
    pub verdicts: Vec<(Axiom, AxiomVerdict<S>)>,
}

impl<S> AxiomReport<S> {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| !v.is_failure())
    }

    pub fn verdict(&self, axiom: Axiom) -> &AxiomVerdict<S> {
        &self
            .verdicts
            .iter()
            .find(|(a, _)| *a == axiom)
            .expect("every axiom is reported")
            .1
    }

    pub fn failures(&self) -> impl Iterator<Item = (Axiom, &Witness<S>)> {
        self.verdicts
            .iter()
            .filter_map(|(a, v)| v.witness().map(|w| (*a, w)))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ValidationOptions {
    /// Overrides the structure's own equality mode.
    pub mode: Option<EqualityMode>,
    /// Refuse carriers with `|G|^(2·max(m,n)−1)` above this many tuple evaluations.
    pub budget: u128,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            mode: None,
            budget: DEFAULT_TUPLE_BUDGET,
        }
    }
}

fn scan<S, F>(size: usize, width: usize, check: F) -> Option<Witness<S>>
where
    S: GradeScalar,
    F: Fn(&[usize]) -> Option<Witness<S>> + Sync,
{
    let count = tuple_count(size, width).expect("budget checked") as u64;
    (0..count).into_par_iter().find_map_first(|i| {
        let mut buf: TupleBuf = SmallVec::from_elem(0, width);
        decode(i, size, &mut buf);
        check(&buf)
    })
}

fn verdict<S>(w: Option<Witness<S>>) -> AxiomVerdict<S> {
    match w {
        Some(w) => AxiomVerdict::Fail(w),
        None => AxiomVerdict::Pass,
    }
}

/// `op(t_0 … t_{i−1}, op(t_i … t_{i+k−1}), t_{i+k} …)` for a `(2k−1)`-tuple.
fn compose_at<S: GradeScalar>(
    op: &HyperOperationTable<S>,
    t: &[usize],
    i: usize,
) -> FuzzySubset<S> {
    let k = op.arity();
    let inner: Vec<usize> = op.entry(&t[i..i + k]).support_indices().collect();
    let mut args: SmallVec<[&[usize]; 16]> = SmallVec::with_capacity(k);
    args.extend(t[..i].iter().map(std::slice::from_ref));
    args.push(&inner);
    args.extend(t[i + k..].iter().map(std::slice::from_ref));
    op.extend_indices(&args)
}

fn associativity<S: GradeScalar>(
    op: &HyperOperationTable<S>,
    mode: EqualityMode,
) -> Option<Witness<S>> {
    let k = op.arity();
    scan(op.size(), 2 * k - 1, |t| {
        let base = compose_at(op, t, 0);
        (1..k).find_map(|i| {
            let other = compose_at(op, t, i);
            (!base.equal(&other, mode)).then(|| Witness {
                tuple: t.to_vec(),
                positions: vec![0, i],
                left: base.clone(),
                right: other,
            })
        })
    })
}

fn symmetry<S: GradeScalar>(op: &HyperOperationTable<S>, mode: EqualityMode) -> Option<Witness<S>> {
    scan(op.size(), op.arity(), |t| {
        let mut sorted: TupleBuf = t.iter().copied().collect();
        sorted.sort_unstable();
        let a = op.entry(t);
        let b = op.entry(&sorted);
        (!a.equal(b, mode)).then(|| Witness {
            tuple: t.to_vec(),
            positions: Vec::new(),
            left: a.clone(),
            right: b.clone(),
        })
    })
}

fn is_singleton_of<S: GradeScalar>(mu: &FuzzySubset<S>, a: usize) -> bool {
    mu.support_len() == 1 && mu.contains(a)
}

impl<S: GradeScalar> KrasnerStructure<S> {
    /// Validates under the structure's own equality mode and the default budget.
    pub fn validate(&self) -> Result<AxiomReport<S>> {
        self.validate_with(ValidationOptions::default())
    }

    pub fn validate_with(&self, opts: ValidationOptions) -> Result<AxiomReport<S>> {
        let size = self.size();
        let (m, n) = (self.m(), self.n());
        let width = 2 * m.max(n) - 1;
        let needed = tuple_count(size, width).unwrap_or(u128::MAX);
        if needed > opts.budget {
            return Err(Error::Budget {
                what: format!("axiom scan over |G|^{width} tuples"),
                needed,
                bound: opts.budget,
            });
        }
        let mode = opts.mode.unwrap_or(self.mode());
        let (f, g) = (self.f(), self.g());
        let e = self.identity();
        let chi = |a: usize| FuzzySubset::characteristic(size, [a]);

        let f_assoc = associativity(f, mode);

        let identity = scan(size, 1, |t| {
            let mut tuple = vec![e; m];
            tuple[0] = t[0];
            let got = f.entry(&tuple);
            (!is_singleton_of(got, t[0])).then(|| Witness {
                tuple,
                positions: vec![0],
                left: got.clone(),
                right: chi(t[0]),
            })
        });

        let involution = scan(size, 1, |t| {
            let back = self.negate(self.negate(t[0]));
            (back != t[0]).then(|| Witness {
                tuple: vec![t[0]],
                positions: Vec::new(),
                left: chi(back),
                right: chi(t[0]),
            })
        });
        let inverses = involution.or_else(|| {
            scan(size, m, |t| {
                let result = f.entry(t);
                for a in result.support_indices() {
                    for i in 0..m {
                        let mut flipped: Vec<usize> = t.iter().map(|&x| self.negate(x)).collect();
                        flipped[i] = a;
                        let back = f.entry(&flipped);
                        if !back.contains(t[i]) {
                            let mut tuple = t.to_vec();
                            tuple.push(a);
                            return Some(Witness {
                                tuple,
                                positions: vec![i],
                                left: back.clone(),
                                right: chi(t[i]),
                            });
                        }
                    }
                }
                None
            })
        });

        let f_sym = symmetry(f, mode);
        let g_assoc = associativity(g, mode);
        let g_comm = symmetry(g, mode);

        let distributivity = scan(size, n - 1 + m, |t| {
            let (xs, addends) = t.split_at(n - 1);
            let sum: Vec<usize> = f.entry(addends).support_indices().collect();
            (0..n).find_map(|i| {
                let mut args: SmallVec<[&[usize]; 16]> = SmallVec::new();
                for x in &xs[..i] {
                    args.push(std::slice::from_ref(x));
                }
                args.push(&sum);
                for x in &xs[i..] {
                    args.push(std::slice::from_ref(x));
                }
                let left = g.extend_indices(&args);

                let products: Vec<Vec<usize>> = addends
                    .iter()
                    .map(|&a| {
                        let mut tuple: TupleBuf = xs.iter().copied().collect();
                        tuple.insert(i, a);
                        g.entry(&tuple).support_indices().collect()
                    })
                    .collect();
                let refs: SmallVec<[&[usize]; 16]> = products.iter().map(Vec::as_slice).collect();
                let right = f.extend_indices(&refs);
                (!left.equal(&right, mode)).then(|| Witness {
                    tuple: t.to_vec(),
                    positions: vec![i],
                    left,
                    right,
                })
            })
        });

        let absorbing = scan(size, n - 1, |t| {
            (0..n).find_map(|i| {
                let mut tuple = t.to_vec();
                tuple.insert(i, e);
                let got = g.entry(&tuple);
                (!is_singleton_of(got, e)).then(|| Witness {
                    tuple,
                    positions: vec![i],
                    left: got.clone(),
                    right: chi(e),
                })
            })
        });

        let scalar = match self.scalar_identity() {
            None => AxiomVerdict::NotApplicable,
            Some(ep) => verdict(scan(size, 1, |t| {
                let mut tuple = vec![ep; n];
                tuple[0] = t[0];
                let got = g.entry(&tuple);
                (!is_singleton_of(got, t[0])).then(|| Witness {
                    tuple,
                    positions: vec![0],
                    left: got.clone(),
                    right: chi(t[0]),
                })
            })),
        };

        Ok(AxiomReport {
            mode,
            verdicts: vec![
                (Axiom::FAssociativity, verdict(f_assoc)),
                (Axiom::Identity, verdict(identity)),
                (Axiom::Inverses, verdict(inverses)),
                (Axiom::FSymmetry, verdict(f_sym)),
                (Axiom::GAssociativity, verdict(g_assoc)),
                (Axiom::GCommutativity, verdict(g_comm)),
                (Axiom::Distributivity, verdict(distributivity)),
                (Axiom::AbsorbingZero, verdict(absorbing)),
                (Axiom::ScalarIdentity, scalar),
            ],
        })
    }

    /// Validates and returns the structure, or a consistency error naming the first
    /// failing axiom.
    pub fn into_validated(self) -> Result<Self> {
        let report = self.validate()?;
        let failure = report.failures().next().map(|(axiom, w)| {
            format!(
                "axiom {axiom} fails at ({})",
                self.carrier().format_tuple(&w.tuple)
            )
        });
        match failure {
            None => Ok(self),
            Some(msg) => Err(Error::consistency(msg)),
        }
    }
}
