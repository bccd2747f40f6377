//! The standard structure corpus: ring lifts, their pairwise products and every
//! searched structure on at most two elements.

use crate::constructions::product::product;
use crate::constructions::ring::{ring_lift, FiniteRing};
use crate::error::Result;
use crate::scalar::Grade;
use crate::search::{SearchSpace, SupportPolicy};
use crate::ExactStructure;

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub structure: ExactStructure,
}

/// Moduli of the binary lifts, in corpus order.
pub const LIFT_MODULI: [usize; 6] = [2, 3, 4, 5, 6, 12];

/// `Z_k` lifted with thresholds `t1 = 1/2`, `t2 = 1/3`.
pub fn z_lift(k: usize, m: usize, n: usize) -> Result<ExactStructure> {
    ring_lift(
        &FiniteRing::integers_mod(k)?,
        m,
        n,
        Grade::ratio(1, 2)?,
        Grade::ratio(1, 3)?,
    )
}

/// The binary lifts of [`LIFT_MODULI`] followed by the ternary-f lift of `Z_2`.
pub fn ring_lifts() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for k in LIFT_MODULI {
        out.push(CorpusEntry {
            name: format!("Z_{k}"),
            structure: z_lift(k, 2, 2)?,
        });
    }
    out.push(CorpusEntry {
        name: "Z_2 (m=3)".into(),
        structure: z_lift(2, 3, 2)?,
    });
    Ok(out)
}

/// Products of distinct binary lifts, `Z_a × Z_b` for `a < b`.
pub fn lift_products() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (i, &a) in LIFT_MODULI.iter().enumerate() {
        for &b in &LIFT_MODULI[i + 1..] {
            out.push(CorpusEntry {
                name: format!("Z_{a} x Z_{b}"),
                structure: product(&z_lift(a, 2, 2)?, &z_lift(b, 2, 2)?)?,
            });
        }
    }
    Ok(out)
}

/// Every structure found by exhaustive search on one and two elements with `m = n = 2`,
/// grade grid `{1}` and arbitrary non-empty supports.
pub fn enumerated_small() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for size in 1..=2 {
        let space = SearchSpace::new(
            size,
            2,
            2,
            vec![Grade::one()],
            SupportPolicy::AnyNonempty,
            1 << 20,
        )?;
        for (i, r) in space.enumerate()?.enumerate() {
            out.push(CorpusEntry {
                name: format!("search |G|={size} #{i}"),
                structure: r?,
            });
        }
    }
    Ok(out)
}

pub fn standard() -> Result<Vec<CorpusEntry>> {
    let mut out = ring_lifts()?;
    out.extend(lift_products()?);
    out.extend(enumerated_small()?);
    Ok(out)
}
