//! Lifts of Z_k checked against elementary number theory: the ideals of Z_k are the
//! multiples of the divisors of k, and everything else follows from divisibility.

use krasner_core::corpus::z_lift;
use krasner_core::fuzzy::element_set;
use krasner_core::search::support_signature;
use krasner_core::{
    enumerate_ideals, is_hyperintegral_f_domain, product, quotient, ElementSet, EnumerationOptions,
    RadicalMethod,
};

fn divisors(k: usize) -> Vec<usize> {
    (1..=k).filter(|d| k.is_multiple_of(*d)).collect()
}

fn prime_factors(mut d: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while d > 1 {
        if d.is_multiple_of(p) {
            out.push(p);
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        p += 1;
    }
    out
}

fn is_prime_number(d: usize) -> bool {
    d > 1 && prime_factors(d) == [d]
}

/// `dZ_k` as a set of residues.
fn multiples(k: usize, d: usize) -> ElementSet {
    element_set(k, (0..k).filter(|x| x % d == 0))
}

fn sorted(mut sets: Vec<ElementSet>) -> Vec<Vec<usize>> {
    sets.sort_by_key(|s| s.ones().collect::<Vec<_>>());
    sets.iter().map(|s| s.ones().collect()).collect()
}

#[test]
fn ideals_are_divisor_multiples() {
    for k in 1..=16 {
        let r = z_lift(k, 2, 2).unwrap();
        let lat = enumerate_ideals(&r).unwrap();
        let expected: Vec<ElementSet> = divisors(k).iter().map(|&d| multiples(k, d)).collect();
        assert_eq!(sorted(lat.ideals().to_vec()), sorted(expected), "Z_{k}");
    }
}

#[test]
fn prime_maximal_primary_and_radical() {
    for k in 2..=16 {
        let r = z_lift(k, 2, 2).unwrap();
        let lat = enumerate_ideals(&r).unwrap();
        for d in divisors(k) {
            let i = multiples(k, d);
            let factors = prime_factors(d);
            assert_eq!(
                lat.is_prime(&i, true).unwrap(),
                is_prime_number(d),
                "Z_{k} ({d})"
            );
            assert_eq!(
                lat.is_maximal(&i).unwrap(),
                is_prime_number(d),
                "Z_{k} ({d})"
            );
            assert_eq!(
                lat.is_primary(&i, true).unwrap(),
                factors.len() == 1,
                "Z_{k} ({d})"
            );
            let rad: usize = factors.iter().product();
            for method in [RadicalMethod::Powers, RadicalMethod::Primes] {
                assert_eq!(
                    lat.f_radical(&i, method).unwrap(),
                    multiples(k, rad),
                    "Z_{k} ({d}) {method:?}"
                );
            }
        }
        let jacobson: usize = prime_factors(k).iter().product();
        assert_eq!(lat.jacobson_radical(), multiples(k, jacobson), "Z_{k}");
    }
}

#[test]
fn ternary_addition_has_the_same_lattice() {
    for k in 2..=6 {
        let binary = z_lift(k, 2, 2).unwrap();
        let ternary = z_lift(k, 3, 2).unwrap();
        assert_eq!(
            enumerate_ideals(&binary).unwrap().ideals(),
            enumerate_ideals(&ternary).unwrap().ideals()
        );
    }
}

#[test]
fn cubic_multiplication_radicals() {
    for k in [4, 8, 9, 12] {
        let r = z_lift(k, 2, 3).unwrap();
        let lat = enumerate_ideals(&r).unwrap();
        for d in divisors(k) {
            let rad: usize = prime_factors(d).iter().product();
            assert_eq!(
                lat.f_radical(&multiples(k, d), RadicalMethod::Powers)
                    .unwrap(),
                multiples(k, rad),
                "Z_{k} ({d})"
            );
        }
    }
}

#[test]
fn quotient_by_multiples_is_the_smaller_lift() {
    for k in 2..=12 {
        let r = z_lift(k, 2, 2).unwrap();
        for d in divisors(k) {
            let q = quotient(&r, &multiples(k, d)).unwrap();
            let smaller = z_lift(d, 2, 2).unwrap();
            assert_eq!(
                support_signature(q.structure()),
                support_signature(&smaller),
                "Z_{k} / ({d})"
            );
            assert_eq!(
                is_hyperintegral_f_domain(q.structure()),
                d == 1 || is_prime_number(d),
                "Z_{k} / ({d})"
            );
        }
    }
}

#[test]
fn product_ideals_are_products_of_ideals() {
    let opts = EnumerationOptions {
        max_carrier: 64,
        ..EnumerationOptions::default()
    };
    for (a, b) in [(2, 3), (2, 4), (3, 4), (4, 6), (6, 6)] {
        let r = product(&z_lift(a, 2, 2).unwrap(), &z_lift(b, 2, 2).unwrap()).unwrap();
        let lat = krasner_core::enumerate_ideals_with(&r, opts).unwrap();
        let mut expected = Vec::new();
        for da in divisors(a) {
            for db in divisors(b) {
                expected.push(element_set(
                    a * b,
                    (0..a * b).filter(|i| (i / b) % da == 0 && (i % b) % db == 0),
                ));
            }
        }
        assert_eq!(
            sorted(lat.ideals().to_vec()),
            sorted(expected),
            "Z_{a} x Z_{b}"
        );
    }
}
