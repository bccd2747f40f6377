//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if any
//! criterion fails. Every comparison is exact; the only numeric tolerances are the
//! pinned time limits below.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use krasner_core::axioms::ValidationOptions;
use krasner_core::corpus::{self, CorpusEntry};
use krasner_core::fuzzy::{element_set, members};
use krasner_core::ideals::SUBSET_ORACLE_BUDGET;
use krasner_core::search::support_signature;
use krasner_core::{
    check_homomorphism, enumerate_ideals_with, is_f_hyperideal, is_f_invertible,
    is_hyperintegral_f_domain, natural_projection, pair_index, parse_structure, preimage_ideal,
    product, quotient, serialize_structure, Arg, Axiom, ElementSet, EnumerationOptions,
    EqualityMode, Error, ExactFuzzySubset, ExactStructure, Grade, IdealLattice, RadicalMethod,
    SearchSpace, SupportPolicy, WitnessPredicate,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock limit per criterion.
const TIME_LIMIT: Duration = Duration::from_secs(60);
/// Mutation count and seed for criterion 1.
const MUTATIONS: usize = 50;
const MUTATION_SEED: u64 = 0x6b72_6173;
/// Frozen structure count for the size-2 search regression.
const SEARCH_COUNT_SIZE_2: usize = 2;

const LATTICE: EnumerationOptions = EnumerationOptions {
    max_carrier: 128,
    certify_up_to: 12,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err(e: Error) -> String {
    e.to_string()
}

fn rat(p: i64, q: i64) -> Grade<krasner_core::Rational> {
    Grade::ratio(p, q).unwrap()
}

fn fmt_set(r: &ExactStructure, s: &ElementSet) -> String {
    r.carrier().format_set(s)
}

fn set_of(r: &ExactStructure, labels: &[&str]) -> ElementSet {
    r.carrier().set_of(labels.iter().copied()).unwrap()
}

fn lift(k: usize) -> ExactStructure {
    corpus::z_lift(k, 2, 2).unwrap()
}

fn lattice(r: &ExactStructure) -> Result<IdealLattice<'_, krasner_core::Rational>, String> {
    enumerate_ideals_with(r, LATTICE).map_err(err)
}

struct Corpus {
    entries: Vec<CorpusEntry>,
}

impl Corpus {
    fn load() -> Self {
        Corpus {
            entries: corpus::standard().expect("corpus builds"),
        }
    }

    fn iter(&self) -> impl Iterator<Item = (&str, &ExactStructure)> {
        self.entries.iter().map(|e| (e.name.as_str(), &e.structure))
    }
}

fn criterion_1() -> Outcome {
    let z6 = lift(6);
    let support = z6.validate().map_err(err)?;
    ensure!(
        support.passed(),
        "support mode: {:?}",
        support.failures().next()
    );
    let strict = z6
        .validate_with(ValidationOptions {
            mode: Some(EqualityMode::Strict),
            ..ValidationOptions::default()
        })
        .map_err(err)?;
    let failed: Vec<Axiom> = strict.failures().map(|(a, _)| a).collect();
    ensure!(
        failed == [Axiom::Distributivity],
        "strict failures {failed:?}"
    );
    let w = strict.verdict(Axiom::Distributivity).witness().unwrap();
    let grades = |mu: &ExactFuzzySubset| -> BTreeSet<String> {
        mu.entries()
            .iter()
            .map(|(_, g)| g.to_fraction_string())
            .collect()
    };
    ensure!(
        grades(&w.left) == BTreeSet::from(["1/3".to_string()])
            && grades(&w.right) == BTreeSet::from(["1/2".to_string()]),
        "witness grades {:?} vs {:?}",
        grades(&w.left),
        grades(&w.right)
    );

    let mut rng = ChaCha8Rng::seed_from_u64(MUTATION_SEED);
    let grid = [rat(1, 3), rat(1, 2), rat(1, 1)];
    let k = z6.size();
    for i in 0..MUTATIONS {
        let use_f = rng.gen_bool(0.5);
        let table = if use_f { z6.f() } else { z6.g() };
        let index = rng.gen_range(0..table.len());
        let old = table.entry_at(index).support();
        let support = loop {
            let mask: u32 = rng.gen_range(1..1 << k);
            let s = element_set(k, (0..k).filter(|b| mask >> b & 1 == 1));
            if s != old {
                break s;
            }
        };
        let value = ExactFuzzySubset::from_pairs(
            k,
            support
                .ones()
                .map(|a| (a, grid[rng.gen_range(0..grid.len())].clone())),
        );
        let mut tuple = vec![0; table.arity()];
        let mut rest = index;
        for slot in tuple.iter_mut().rev() {
            *slot = rest % k;
            rest /= k;
        }
        let mutated = table.with_entry(&tuple, value).map_err(err)?;
        let r = if use_f {
            z6.clone().with_f(mutated)
        } else {
            z6.clone().with_g(mutated)
        }
        .map_err(err)?;
        let report = r.validate().map_err(err)?;
        ensure!(
            !report.passed(),
            "mutation {i} of {} at ({}) to {} passes every axiom",
            if use_f { "f" } else { "g" },
            z6.carrier().format_tuple(&tuple),
            fmt_set(&z6, &support)
        );
    }
    Ok(format!(
        "strict distributivity 1/3 vs 1/2; {MUTATIONS} support mutations all rejected"
    ))
}

fn criterion_2(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    for (name, r) in corpus.iter().filter(|(_, r)| r.size() <= 8) {
        let k = r.size();
        let mut naive = Vec::new();
        for mask in 1u32..1 << k {
            let s = element_set(k, (0..k).filter(|b| mask >> b & 1 == 1));
            if is_f_hyperideal(r, &s).map_err(err)?.holds() {
                naive.push(s);
            }
        }
        let lat = lattice(r)?;
        let mut found: Vec<ElementSet> = lat.ideals().to_vec();
        naive.sort_by_key(members);
        found.sort_by_key(members);
        ensure!(
            found == naive,
            "{name}: enumeration differs from the naive filter"
        );
        checked += 1;
    }
    let (z6, z12) = (lift(6), lift(12));
    let (n6, n12) = (lattice(&z6)?.len(), lattice(&z12)?.len());
    ensure!(n6 == 4 && n12 == 6, "Z_6 has {n6} ideals, Z_12 has {n12}");
    Ok(format!(
        "{checked} structures match the naive filter; Z_6 4 ideals, Z_12 6"
    ))
}

fn criterion_3(corpus: &Corpus) -> Outcome {
    let (mut ideals, mut structures, mut beyond) = (0, 0, Vec::new());
    for (name, r) in corpus.iter() {
        let lat = lattice(r)?;
        let oracle = match lat.primes_by_subsets() {
            Ok(flags) => flags,
            Err(Error::Budget { .. }) => {
                beyond.push((name, r.size()));
                continue;
            }
            Err(e) => return Err(err(e)),
        };
        for (p, by_subsets) in lat.ideals().iter().zip(oracle) {
            let elementwise = lat.is_prime(p, false).map_err(err)?;
            ensure!(
                elementwise == by_subsets,
                "{name}: {} element-wise {elementwise}, by subsets {by_subsets}",
                fmt_set(r, p)
            );
            ideals += 1;
        }
        structures += 1;
    }
    ensure!(
        beyond.iter().all(|(_, size)| *size > 12),
        "oracle skipped a structure with |G| <= 12"
    );
    Ok(format!(
        "{ideals} ideals over {structures} structures agree; subset oracle (budget 2^{}) out of reach for {} products: {}",
        SUBSET_ORACLE_BUDGET.trailing_zeros(),
        beyond.len(),
        beyond
            .iter()
            .map(|(name, size)| format!("{name} (|G|={size})"))
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

fn criterion_4(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    for (name, r) in corpus.iter() {
        let lat = lattice(r)?;
        for p in lat.ideals() {
            let prime = lat.is_prime(p, false).map_err(err)?;
            let q = quotient(r, p).map_err(err)?;
            let domain = is_hyperintegral_f_domain(q.structure());
            ensure!(
                prime == domain,
                "{name}: {} prime {prime}, quotient domain {domain}",
                fmt_set(r, p)
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} ideals"))
}

fn criterion_5(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    for (name, r) in corpus.iter().filter(|(_, r)| r.scalar_identity().is_some()) {
        let lat = lattice(r)?;
        for q in lat.ideals() {
            if lat.is_prime(q, false).map_err(err)? {
                ensure!(
                    lat.is_primary(q, false).map_err(err)?,
                    "{name}: prime {} is not primary",
                    fmt_set(r, q)
                );
            }
            checked += 1;
        }
    }
    let z12 = lift(12);
    let lat = lattice(&z12)?;
    let q = set_of(&z12, &["0", "4", "8"]);
    let (primary, prime) = (
        lat.is_primary(&q, true).map_err(err)?,
        lat.is_prime(&q, true).map_err(err)?,
    );
    ensure!(
        primary && !prime,
        "Z_12 {{0,4,8}} primary {primary} prime {prime}"
    );
    Ok(format!(
        "{checked} ideals; Z_12 {{0,4,8}} primary and not prime"
    ))
}

fn criterion_6(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    for (name, r) in corpus.iter().filter(|(_, r)| r.scalar_identity().is_some()) {
        let lat = lattice(r)?;
        for i in lat.ideals() {
            let powers = lat.f_radical(i, RadicalMethod::Powers).map_err(err)?;
            let primes = lat.f_radical(i, RadicalMethod::Primes).map_err(err)?;
            ensure!(
                powers == primes,
                "{name}: radical of {} is {} by powers, {} by primes",
                fmt_set(r, i),
                fmt_set(r, &powers),
                fmt_set(r, &primes)
            );
            if lat.is_primary(i, true).map_err(err)? {
                ensure!(
                    lat.is_prime(&powers, true).map_err(err)?,
                    "{name}: radical {} of primary {} is not prime",
                    fmt_set(r, &powers),
                    fmt_set(r, i)
                );
            }
            checked += 1;
        }
    }
    let z12 = lift(12);
    let lat = lattice(&z12)?;
    let rad = lat
        .f_radical(&set_of(&z12, &["0", "4", "8"]), RadicalMethod::Powers)
        .map_err(err)?;
    ensure!(
        rad == set_of(&z12, &["0", "2", "4", "6", "8", "10"]),
        "Z_12 radical of {{0,4,8}} is {}",
        fmt_set(&z12, &rad)
    );
    Ok(format!(
        "{checked} ideals; Z_12 radical of {{0,4,8}} = {{0,2,4,6,8,10}}"
    ))
}

fn criterion_7(corpus: &Corpus) -> Outcome {
    let (mut pairs, mut preimages) = (0, 0);
    for (name, r) in corpus.iter() {
        let lat = lattice(r)?;
        for i in lat.ideals() {
            let q = quotient(r, i).map_err(err)?;
            let h = natural_projection(r, &q).map_err(err)?;
            ensure!(
                check_homomorphism(&h).holds() && h.is_surjective(),
                "{name}: projection modulo {} is not a surjective homomorphism",
                fmt_set(r, i)
            );
            let qlat = lattice(q.structure())?;
            for p in qlat.prime_ideals(false) {
                let pre = preimage_ideal(&h, &p).map_err(err)?;
                ensure!(
                    lat.contains(&pre) && lat.is_prime(&pre, false).map_err(err)?,
                    "{name}: preimage {} is not a prime ideal",
                    fmt_set(r, &pre)
                );
                preimages += 1;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} projections; {preimages} prime preimages"))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for a in [2, 3] {
        for b in [2, 3] {
            let (r1, r2) = (lift(a), lift(b));
            let prod = product(&r1, &r2).map_err(err)?;
            ensure!(
                prod.validate().map_err(err)?.passed(),
                "Z_{a} x Z_{b} fails validation"
            );
            let plat = lattice(&prod)?;
            let k2 = r2.size();
            for p1 in lattice(&r1)?.prime_ideals(true) {
                let lifted = element_set(
                    prod.size(),
                    p1.ones()
                        .flat_map(|x| (0..k2).map(move |y| pair_index(k2, x, y))),
                );
                ensure!(
                    plat.contains(&lifted) && plat.is_prime(&lifted, true).map_err(err)?,
                    "Z_{a} x Z_{b}: {} x R2 is not prime",
                    fmt_set(&r1, &p1)
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} ideals P x R2 prime"))
}

fn criterion_9(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    for (name, r) in corpus.iter() {
        let Some(e_prime) = r.scalar_identity() else {
            continue;
        };
        let lat = lattice(r)?;
        let j = lat.jacobson_radical();
        for i in lat.ideals() {
            let mut args = vec![Arg::Element(e_prime), Arg::Set(i)];
            args.extend((2..r.m()).map(|_| Arg::Element(r.identity())));
            let shifted = r.f().extend_mixed(&args).map_err(err)?.support();
            let mut all_invertible = true;
            for x in shifted.ones() {
                all_invertible &= is_f_invertible(r, x).map_err(err)?;
            }
            let inside = i.is_subset(&j);
            ensure!(
                all_invertible == inside,
                "{name}: I = {}: invertible {all_invertible}, I in J {inside}",
                fmt_set(r, i)
            );
            checked += 1;
        }
    }
    let z4 = lift(4);
    let lat = lattice(&z4)?;
    let m = set_of(&z4, &["0", "2"]);
    ensure!(
        lat.maximal_ideals() == [m.clone()],
        "Z_4 maximal ideals differ"
    );
    for a in (0..z4.size()).filter(|&a| !m.contains(a)) {
        ensure!(
            is_f_invertible(&z4, a).map_err(err)?,
            "Z_4: {a} outside {{0,2}} is not invertible"
        );
    }
    ensure!(
        WitnessPredicate::UniqueMaximal
            .first_match(&lat)
            .map_err(err)?
            == Some(m),
        "Z_4 unique-maximal predicate misses {{0,2}}"
    );
    Ok(format!(
        "{checked} ideals; Z_4 unique maximal {{0,2}} with invertible complement"
    ))
}

fn criterion_10(corpus: &Corpus) -> Outcome {
    let (mut structures, mut runs) = (0, 0);
    for (name, r) in corpus.iter().filter(|(_, r)| r.size() <= 6) {
        let lat = lattice(r)?;
        let k = r.size();
        let closed: Vec<ElementSet> = (1u32..1 << k)
            .filter(|mask| mask.count_ones() <= 4)
            .map(|mask| element_set(k, (0..k).filter(|b| mask >> b & 1 == 1)))
            .filter(|t| krasner_core::ideals::is_g_support_closed(r, t))
            .collect();
        for i in lat.ideals() {
            for t in closed.iter().filter(|t| t.is_disjoint(i)) {
                let p = lat
                    .prime_disjoint_from(i, t)
                    .map_err(|e| format!("{name}: {}", err(e)))?;
                let Some(p) = p else {
                    return Err(format!(
                        "{name}: nothing avoids {} above {}",
                        fmt_set(r, t),
                        fmt_set(r, i)
                    ));
                };
                ensure!(
                    i.is_subset(&p) && p.is_disjoint(t) && lat.is_prime(&p, false).map_err(err)?,
                    "{name}: {} is not a prime above {} avoiding {}",
                    fmt_set(r, &p),
                    fmt_set(r, i),
                    fmt_set(r, t)
                );
                runs += 1;
            }
        }
        structures += 1;
    }
    Ok(format!("{runs} (I, T) pairs over {structures} structures"))
}

fn criterion_11() -> Outcome {
    let space = SearchSpace::new(
        2,
        2,
        2,
        vec![Grade::one()],
        SupportPolicy::SingletonOnly,
        1_000_000,
    )
    .map_err(err)?;
    let run = || -> Result<(Vec<String>, bool), String> {
        let mut stream = space.enumerate().map_err(err)?;
        let found = stream
            .by_ref()
            .map(|r| r.map(|r| serialize_structure(&r)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok((found, stream.truncated()))
    };
    let (first, truncated) = run()?;
    ensure!(!truncated, "search truncated");
    ensure!(
        first.len() == SEARCH_COUNT_SIZE_2,
        "count {} != stored {SEARCH_COUNT_SIZE_2}",
        first.len()
    );
    let z2 = support_signature(&lift(2));
    let includes = first
        .iter()
        .any(|text| support_signature(&parse_structure(text).unwrap()) == z2);
    ensure!(includes, "Z_2 lift not found");
    let (second, _) = run()?;
    ensure!(first == second, "second run differs");
    Ok(format!("count {SEARCH_COUNT_SIZE_2}, includes Z_2, stable"))
}

fn krasner(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_krasner"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.success(),
        "krasner {} exited with {:?}",
        args.join(" "),
        out.status.code()
    );
    Ok(out.stdout)
}

fn classify_run(path: &Path) -> Result<(Vec<u8>, String), String> {
    let p = path.to_str().unwrap();
    let text = krasner(&["classify", p])?;
    let json: serde_json::Value =
        serde_json::from_slice(&krasner(&["classify", p, "--json", "-"])?)
            .map_err(|e| e.to_string())?;
    Ok((text, json["canonical"].to_string()))
}

fn criterion_12(corpus: &Corpus) -> Outcome {
    for (name, r) in corpus.iter() {
        let text = serialize_structure(r);
        let back = parse_structure(&text).map_err(err)?;
        ensure!(&back == r, "{name}: round trip changes the structure");
        ensure!(
            serialize_structure(&back) == text,
            "{name}: round trip changes the text"
        );
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("z12.json");
    std::fs::write(&path, serialize_structure(&lift(12))).map_err(|e| e.to_string())?;
    let first = classify_run(&path)?;
    let second = classify_run(&path)?;
    ensure!(first == second, "classify output differs between runs");
    let table = String::from_utf8(first.0).map_err(|e| e.to_string())?;
    let row = table
        .lines()
        .find(|l| l.starts_with("{0,4,8} "))
        .ok_or("no {0,4,8} row")?;
    let cols: Vec<&str> = row.split_whitespace().collect();
    ensure!(
        cols[1..4] == ["no", "no", "yes"],
        "{{0,4,8}} row reads {row:?}"
    );
    Ok(format!(
        "{} structures round-trip; Z_12 classify byte-identical across runs",
        corpus.entries.len()
    ))
}

fn main() -> ExitCode {
    let corpus = Corpus::load();
    let criteria: Vec<Criterion<'_>> = vec![
        ("axiom soundness", Box::new(criterion_1)),
        (
            "ideal enumeration oracle",
            Box::new(|| criterion_2(&corpus)),
        ),
        ("prime characterization", Box::new(|| criterion_3(&corpus))),
        (
            "prime iff quotient domain",
            Box::new(|| criterion_4(&corpus)),
        ),
        ("prime implies primary", Box::new(|| criterion_5(&corpus))),
        ("radical agreement", Box::new(|| criterion_6(&corpus))),
        ("homomorphism suite", Box::new(|| criterion_7(&corpus))),
        ("product theorem", Box::new(criterion_8)),
        (
            "invertibility biconditional",
            Box::new(|| criterion_9(&corpus)),
        ),
        ("prime avoidance", Box::new(|| criterion_10(&corpus))),
        ("search regression", Box::new(criterion_11)),
        ("round trip", Box::new(|| criterion_12(&corpus))),
    ];
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > TIME_LIMIT => Err(format!("took {elapsed:.1?}")),
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {} ({name}): {status}  [{detail}] ({:.2}s)",
            n + 1,
            elapsed.as_secs_f64()
        );
        failures += outcome.is_err() as usize;
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
