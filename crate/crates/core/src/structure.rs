//! The Krasner F^(m,n)-hyperring data: carrier, the two operation tables, and the
//! distinguished elements.

use crate::error::{Error, Result};
use crate::fuzzy::{Carrier, ElementSet, EqualityMode, FuzzySubset};
use crate::scalar::GradeScalar;
use crate::table::HyperOperationTable;

/// A candidate Krasner F^(m,n)-hyperring.
///
/// Construction only checks that the pieces fit together (arities, carrier sizes, index
/// ranges). Whether the axioms hold is decided by [`KrasnerStructure::validate`]; every
/// kernel routine outside the axiom checker assumes a structure that passes it.
#[derive(Clone, Debug, PartialEq)]
pub struct KrasnerStructure<S> {
    carrier: Carrier,
    f: HyperOperationTable<S>,
    g: HyperOperationTable<S>,
    identity: usize,
    negation: Vec<usize>,
    scalar_identity: Option<usize>,
    mode: EqualityMode,
}

impl<S: GradeScalar> KrasnerStructure<S> {
    pub fn new(
        carrier: Carrier,
        f: HyperOperationTable<S>,
        g: HyperOperationTable<S>,
        identity: usize,
        negation: Vec<usize>,
    ) -> Result<Self> {
        let size = carrier.len();
        if f.size() != size || g.size() != size {
            return Err(Error::usage(
                "operation tables do not match the carrier size",
            ));
        }
        if identity >= size {
            return Err(Error::usage("identity element out of range"));
        }
        if negation.len() != size || negation.iter().any(|&a| a >= size) {
            return Err(Error::usage(
                "negation must map every element into the carrier",
            ));
        }
        Ok(KrasnerStructure {
            carrier,
            f,
            g,
            identity,
            negation,
            scalar_identity: None,
            mode: EqualityMode::default(),
        })
    }

    pub fn with_scalar_identity(mut self, e_prime: Option<usize>) -> Result<Self> {
        if let Some(x) = e_prime {
            if x >= self.size() {
                return Err(Error::usage("scalar identity out of range"));
            }
        }
        self.scalar_identity = e_prime;
        Ok(self)
    }

    pub fn with_mode(mut self, mode: EqualityMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_carrier(mut self, carrier: Carrier) -> Result<Self> {
        if carrier.len() != self.size() {
            return Err(Error::usage("relabelling must keep the carrier size"));
        }
        self.carrier = carrier;
        Ok(self)
    }

    pub fn with_f(mut self, f: HyperOperationTable<S>) -> Result<Self> {
        if f.size() != self.size() || f.arity() != self.m() {
            return Err(Error::usage("replacement f-table does not fit"));
        }
        self.f = f;
        Ok(self)
    }

    pub fn with_g(mut self, g: HyperOperationTable<S>) -> Result<Self> {
        if g.size() != self.size() || g.arity() != self.n() {
            return Err(Error::usage("replacement g-table does not fit"));
        }
        self.g = g;
        Ok(self)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn m(&self) -> usize {
        self.f.arity()
    }

    pub fn n(&self) -> usize {
        self.g.arity()
    }

    pub fn f(&self) -> &HyperOperationTable<S> {
        &self.f
    }

    pub fn g(&self) -> &HyperOperationTable<S> {
        &self.g
    }

    /// The F-identity `e` of the additive part.
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn negate(&self, a: usize) -> usize {
        self.negation[a]
    }

    pub fn negation(&self) -> &[usize] {
        &self.negation
    }

    /// The scalar F-identity `e′`, when declared.
    pub fn scalar_identity(&self) -> Option<usize> {
        self.scalar_identity
    }

    pub fn mode(&self) -> EqualityMode {
        self.mode
    }

    pub(crate) fn require_scalar_identity(&self, what: &str) -> Result<usize> {
        self.scalar_identity
            .ok_or_else(|| Error::usage(format!("{what} needs a scalar identity e′")))
    }

    /// First element `x` with `supp(g(a, x, …, x)) = {a}` for all `a`, if any.
    pub fn detect_scalar_identity(&self) -> Option<usize> {
        let n = self.n();
        (0..self.size()).find(|&x| {
            (0..self.size()).all(|a| {
                let mut tuple = vec![x; n];
                tuple[0] = a;
                let supp = self.g.support(&tuple);
                supp.count_ones(..) == 1 && supp.contains(a)
            })
        })
    }

    pub fn full_set(&self) -> ElementSet {
        crate::fuzzy::full_set(self.size())
    }

    /// `g` applied to `s` copies of `a`.
    ///
    /// For `s ≤ n` the remaining slots hold `e′`; for `s = l(n−1)+1 > n` this is the
    /// `l`-fold nested product `g(g(…g(a^(n)), a^(n−1)…), a^(n−1))`.
    pub fn iterated_g(&self, a: usize, s: usize) -> Result<FuzzySubset<S>> {
        let n = self.n();
        if a >= self.size() {
            return Err(Error::usage("element out of range"));
        }
        if s == 0 {
            return Err(Error::usage("power exponent must be positive"));
        }
        if s <= n {
            let mut tuple = vec![a; n];
            if s < n {
                let e_prime = self.require_scalar_identity("a power below the arity")?;
                tuple[s..].fill(e_prime);
            }
            return Ok(self.g.entry(&tuple).clone());
        }
        if !(s - 1).is_multiple_of(n - 1) {
            return Err(Error::usage(format!(
                "exponent {s} is not of the form l({})+1",
                n - 1
            )));
        }
        let levels = (s - 1) / (n - 1);
        let mut acc = self.g.entry(&vec![a; n]).clone();
        let single = [a];
        for _ in 1..levels {
            let inner: Vec<usize> = acc.support_indices().collect();
            let mut args: Vec<&[usize]> = vec![&single; n];
            args[0] = &inner;
            acc = self.g.extend_indices(&args);
        }
        Ok(acc)
    }

    /// Structure induced on a subset closed under both operations, relabelled in
    /// ascending index order. The scalar identity is not carried over.
    pub(crate) fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let mut pos = vec![usize::MAX; self.size()];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let identity = pos[self.identity];
        if identity == usize::MAX {
            return Err(Error::usage("restriction must contain the identity"));
        }
        let negation = keep
            .iter()
            .map(|&a| pos[self.negation[a]])
            .collect::<Vec<_>>();
        if negation.contains(&usize::MAX) {
            return Err(Error::usage("restriction must be closed under negation"));
        }
        let carrier = Carrier::new(keep.iter().map(|&i| self.carrier.label(i).to_string()))?;
        Ok(KrasnerStructure::new(
            carrier,
            self.f.restrict(keep)?,
            self.g.restrict(keep)?,
            identity,
            negation,
        )?
        .with_mode(self.mode))
    }
}
