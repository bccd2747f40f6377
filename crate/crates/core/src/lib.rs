//! Exact finite Krasner F^(m,n)-hyperrings.

pub mod axioms;
pub mod constructions;
pub mod corpus;
pub mod document;
pub mod error;
pub mod fuzzy;
pub mod ideals;
pub mod scalar;
pub mod search;
pub mod structure;
pub mod table;
pub mod verdict;

pub use axioms::{Axiom, AxiomReport, AxiomVerdict, ValidationOptions, Witness};
pub use constructions::hom::{
    check_homomorphism, natural_projection, preimage_ideal, HomViolation, Homomorphism,
};
pub use constructions::product::{pair_index, product};
pub use constructions::quotient::{quotient, Quotient};
pub use constructions::ring::{ring_lift, FiniteRing};
pub use constructions::{is_hyperintegral_f_domain, zero_divisor_witness};
pub use document::{parse_structure, serialize_structure, StructureDocument};
pub use error::{Error, Result};
pub use fuzzy::{Carrier, ElementSet, EqualityMode, FuzzySubset};
pub use ideals::{
    enumerate_ideals, enumerate_ideals_with, f_radical_by_powers, generated_ideal, is_f_hyperideal,
    is_f_invertible, prime_witness, ClassifyOptions, EnumerationOptions, IdealClass, IdealLattice,
    IdealViolation, RadicalMethod,
};
pub use scalar::{Grade, GradeScalar};
pub use search::{
    find_witness, find_witness_in_space, random_structures, SearchSpace, StructureStream,
    SupportPolicy, WitnessHit, WitnessPredicate,
};
pub use structure::KrasnerStructure;
pub use table::{Arg, HyperOperationTable};
pub use verdict::Verdict;

/// Exact rational grades, the default scalar.
pub type Rational = num_rational::Rational64;

pub type ExactGrade = Grade<Rational>;
pub type ExactFuzzySubset = FuzzySubset<Rational>;
pub type ExactStructure = KrasnerStructure<Rational>;

pub type FloatGrade = Grade<f64>;
pub type FloatStructure = KrasnerStructure<f64>;
