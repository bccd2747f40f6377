use std::path::Path;

use krasner_core::constructions::hom::check_homomorphism;
use krasner_core::corpus;
use krasner_core::fuzzy::{members, ElementSet};
use krasner_core::{
    enumerate_ideals_with, find_witness, is_hyperintegral_f_domain, natural_projection, product,
    quotient, ring_lift, AxiomVerdict, ClassifyOptions, EnumerationOptions, Error, ExactGrade,
    ExactStructure, FiniteRing, Grade, Homomorphism, RadicalMethod, Result, SearchSpace,
    StructureDocument, ValidationOptions,
};
use serde::Deserialize;
use serde_json::json;

use crate::report::{Check, Report};
use crate::{Command, CorpusArg, Global, MethodArg};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path, global: &Global, report: &mut Report) -> Result<ExactStructure> {
    let doc = StructureDocument::parse(&read(path)?)?;
    report.digest(doc.digest());
    let r = doc.to_structure()?;
    Ok(match global.mode {
        Some(mode) => r.with_mode(mode),
        None => r,
    })
}

fn validation(global: &Global) -> ValidationOptions {
    ValidationOptions {
        mode: global.mode,
        budget: global.budget,
    }
}

fn enumeration(global: &Global) -> EnumerationOptions {
    EnumerationOptions {
        max_carrier: global.max_ideal_carrier,
        ..EnumerationOptions::default()
    }
}

/// Adds one check per axiom, or a single summary check, and reports whether all pass.
fn check_axioms(
    r: &ExactStructure,
    global: &Global,
    report: &mut Report,
    detailed: bool,
) -> Result<bool> {
    let axioms = r.validate_with(validation(global))?;
    let carrier = r.carrier();
    let describe = |w: &krasner_core::Witness<krasner_core::Rational>| {
        format!(
            "at ({}): {} vs {}",
            carrier.format_tuple(&w.tuple),
            w.left.display(carrier),
            w.right.display(carrier)
        )
    };
    if detailed {
        for (axiom, verdict) in &axioms.verdicts {
            let (name, holds, witness) = match verdict {
                AxiomVerdict::Pass => (axiom.to_string(), true, None),
                AxiomVerdict::NotApplicable => (format!("{axiom} (not applicable)"), true, None),
                AxiomVerdict::Fail(w) => (axiom.to_string(), false, Some(describe(w))),
            };
            report.check(Check::new(name, holds, witness));
        }
    } else {
        let first = axioms
            .failures()
            .next()
            .map(|(a, w)| format!("{a} {}", describe(w)));
        report.check(Check::new(
            "structure satisfies the axioms",
            first.is_none(),
            first,
        ));
    }
    Ok(axioms.passed())
}

fn parse_set(r: &ExactStructure, text: &str) -> Result<ElementSet> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let labels: Vec<&str> = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    r.carrier().set_of(labels)
}

fn fmt_set(r: &ExactStructure, set: &ElementSet) -> String {
    r.carrier().format_set(set)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(command: &Command, global: &Global) -> Result<Report> {
    match command {
        Command::Validate { file } => {
            let mut report = Report::new("validate", vec![file.display().to_string()]);
            let r = load(file, global, &mut report)?;
            let mode = global.mode.unwrap_or(r.mode());
            report.line(format!(
                "carrier {} elements, m = {}, n = {}, mode {mode}",
                r.size(),
                r.m(),
                r.n()
            ));
            check_axioms(&r, global, &mut report, true)?;
            report.canonical.data = json!({
                "size": r.size(),
                "m": r.m(),
                "n": r.n(),
                "mode": mode.to_string(),
            });
            Ok(report)
        }
        Command::Ideals { file } => {
            let mut report = Report::new("ideals", vec![file.display().to_string()]);
            let r = load(file, global, &mut report)?;
            if !check_axioms(&r, global, &mut report, false)? {
                return Ok(report);
            }
            let lattice = enumerate_ideals_with(&r, enumeration(global))?;
            let ideals: Vec<String> = lattice.ideals().iter().map(|i| fmt_set(&r, i)).collect();
            report.line(format!("{} F-hyperideals", ideals.len()));
            for i in &ideals {
                report.line(format!("  {i}"));
            }
            report.canonical.data = json!({ "ideals": ideals });
            Ok(report)
        }
        Command::Classify {
            file,
            literal_definitions,
        } => {
            let mut args = vec![file.display().to_string()];
            if *literal_definitions {
                args.push("--literal-definitions".into());
            }
            let mut report = Report::new("classify", args);
            let r = load(file, global, &mut report)?;
            if !check_axioms(&r, global, &mut report, false)? {
                return Ok(report);
            }
            let lattice = enumerate_ideals_with(&r, enumeration(global))?;
            let table = lattice.classify(ClassifyOptions {
                require_proper: !literal_definitions,
            })?;
            let opt = |b: Option<bool>| b.map_or("n/a", yes_no);
            let width = table
                .iter()
                .map(|c| fmt_set(&r, &c.ideal).chars().count())
                .max()
                .unwrap_or(0)
                .max(5);
            report.line(format!(
                "{:<width$}  prime  maximal  primary  radical",
                "ideal"
            ));
            let mut rows = Vec::new();
            for c in &table {
                let ideal = fmt_set(&r, &c.ideal);
                let radical = c.radical.as_ref().map(|s| fmt_set(&r, s));
                report.line(format!(
                    "{ideal:<width$}  {:<5}  {:<7}  {:<7}  {}",
                    yes_no(c.prime),
                    yes_no(c.maximal),
                    opt(c.primary),
                    radical.as_deref().unwrap_or("n/a")
                ));
                rows.push(json!({
                    "ideal": ideal,
                    "prime": c.prime,
                    "maximal": c.maximal,
                    "primary": c.primary,
                    "radical": radical,
                }));
            }
            report.canonical.data = json!({
                "require_proper": !literal_definitions,
                "ideals": rows,
                "jacobson_radical": fmt_set(&r, &lattice.jacobson_radical()),
            });
            report.line(format!(
                "Jacobson radical {}",
                fmt_set(&r, &lattice.jacobson_radical())
            ));
            Ok(report)
        }
        Command::Radical {
            file,
            ideal,
            method,
        } => {
            let mut report = Report::new(
                "radical",
                vec![
                    file.display().to_string(),
                    format!("--ideal={ideal}"),
                    format!("--method={method:?}").to_lowercase(),
                ],
            );
            let r = load(file, global, &mut report)?;
            if !check_axioms(&r, global, &mut report, false)? {
                return Ok(report);
            }
            let set = parse_set(&r, ideal)?;
            let lattice = enumerate_ideals_with(&r, enumeration(global))?;
            let mut data = serde_json::Map::new();
            data.insert("ideal".into(), json!(fmt_set(&r, &set)));
            let powers = matches!(method, MethodArg::Powers | MethodArg::Both)
                .then(|| lattice.f_radical(&set, RadicalMethod::Powers))
                .transpose()?;
            let primes = matches!(method, MethodArg::Primes | MethodArg::Both)
                .then(|| lattice.f_radical(&set, RadicalMethod::Primes))
                .transpose()?;
            if let Some(p) = &powers {
                report.line(format!("powers: {}", fmt_set(&r, p)));
                data.insert("powers".into(), json!(fmt_set(&r, p)));
            }
            if let Some(p) = &primes {
                report.line(format!("primes: {}", fmt_set(&r, p)));
                data.insert("primes".into(), json!(fmt_set(&r, p)));
            }
            if let (Some(a), Some(b)) = (&powers, &primes) {
                data.insert("agreement".into(), json!(a == b));
                report.check(Check::new("powers and primes methods agree", a == b, None));
            }
            report.canonical.data = data.into();
            Ok(report)
        }
        Command::Quotient { file, ideal, out } => {
            let mut report = Report::new(
                "quotient",
                vec![file.display().to_string(), format!("--ideal={ideal}")],
            );
            let r = load(file, global, &mut report)?;
            if !check_axioms(&r, global, &mut report, false)? {
                return Ok(report);
            }
            let set = parse_set(&r, ideal)?;
            let q = quotient(&r, &set)?;
            let pi = natural_projection(&r, &q)?;
            let hom = check_homomorphism(&pi);
            report.check(Check::new(
                "natural projection is a homomorphism",
                hom.holds(),
                hom.failure().map(|v| pi.describe(v)),
            ));
            report.check(Check::new(
                "natural projection is onto",
                pi.is_surjective(),
                None,
            ));
            let cosets: Vec<String> = q.cosets().iter().map(|c| fmt_set(&r, c)).collect();
            let domain = is_hyperintegral_f_domain(q.structure());
            report.line(format!("{} cosets: {}", cosets.len(), cosets.join(" ")));
            report.line(format!("hyperintegral F-domain: {}", yes_no(domain)));
            let doc = StructureDocument::from_structure(q.structure());
            report.canonical.data = json!({
                "cosets": cosets,
                "domain": domain,
                "quotient_digest": doc.digest(),
            });
            if let Some(path) = out {
                write(path, &doc.to_text())?;
            }
            Ok(report)
        }
        Command::Product { left, right, out } => {
            let mut report = Report::new(
                "product",
                vec![left.display().to_string(), right.display().to_string()],
            );
            let a = load(left, global, &mut report)?;
            let b = load(right, global, &mut report)?;
            let ok_a = check_axioms(&a, global, &mut report, false)?;
            let ok_b = check_axioms(&b, global, &mut report, false)?;
            if !(ok_a && ok_b) {
                return Ok(report);
            }
            let p = product(&a, &b)?;
            report.check(Check::new("product satisfies the axioms", true, None));
            let doc = StructureDocument::from_structure(&p);
            report.line(format!("product carrier: {} elements", p.size()));
            report.canonical.data = json!({ "size": p.size(), "product_digest": doc.digest() });
            if let Some(path) = out {
                write(path, &doc.to_text())?;
            }
            Ok(report)
        }
        Command::HomCheck {
            source,
            target,
            map,
        } => {
            let mut report = Report::new(
                "hom-check",
                vec![
                    source.display().to_string(),
                    target.display().to_string(),
                    format!("--map={map}"),
                ],
            );
            let a = load(source, global, &mut report)?;
            let b = load(target, global, &mut report)?;
            let mut images = vec![None; a.size()];
            for pair in map.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (x, y) = pair
                    .split_once(':')
                    .ok_or_else(|| Error::Usage(format!("map entry {pair:?} is not a:b")))?;
                let x = a.carrier().lookup(x.trim())?;
                images[x] = Some(b.carrier().lookup(y.trim())?);
            }
            let images = images
                .iter()
                .enumerate()
                .map(|(x, y)| {
                    y.ok_or_else(|| {
                        Error::Usage(format!("no image given for {}", a.carrier().label(x)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let h = Homomorphism::new(&a, &b, images)?;
            let verdict = check_homomorphism(&h);
            report.check(Check::new(
                "map is a homomorphism",
                verdict.holds(),
                verdict.failure().map(|v| h.describe(v)),
            ));
            report.canonical.data = json!({ "surjective": h.is_surjective() });
            report.line(format!("surjective: {}", yes_no(h.is_surjective())));
            Ok(report)
        }
        Command::Lift {
            modulus,
            ring,
            m,
            n,
            t1,
            t2,
            out,
        } => {
            let source = match (modulus, ring) {
                (Some(k), None) => format!("--modulus={k}"),
                (None, Some(p)) => format!("--ring={}", p.display()),
                _ => {
                    return Err(Error::Usage(
                        "give exactly one of --modulus or --ring".into(),
                    ))
                }
            };
            let mut report = Report::new(
                "lift",
                vec![
                    source,
                    format!("--m={m}"),
                    format!("--n={n}"),
                    format!("--t1={t1}"),
                    format!("--t2={t2}"),
                ],
            );
            let base = match (modulus, ring) {
                (Some(k), _) => FiniteRing::integers_mod(*k)?,
                (_, Some(path)) => {
                    let ring_file: RingFile =
                        serde_json::from_str(&read(path)?).map_err(|e| Error::Parse {
                            line: e.line(),
                            column: e.column(),
                            message: e.to_string(),
                        })?;
                    FiniteRing::new(
                        ring_file.labels,
                        ring_file.add.into_iter().flatten().collect(),
                        ring_file.mul.into_iter().flatten().collect(),
                    )?
                }
                _ => unreachable!(),
            };
            let (t1, t2): (ExactGrade, ExactGrade) = (Grade::parse(t1)?, Grade::parse(t2)?);
            let r = ring_lift(&base, *m, *n, t1, t2)?;
            check_axioms(&r, global, &mut report, false)?;
            let doc = StructureDocument::from_structure(&r);
            report.digest(doc.digest());
            report.canonical.data = json!({ "size": r.size() });
            match out {
                Some(path) => {
                    write(path, &doc.to_text())?;
                    report.line(format!("wrote {}", path.display()));
                }
                None => report.line(doc.to_text().trim_end()),
            }
            Ok(report)
        }
        Command::Search {
            size,
            m,
            n,
            grid,
            policy,
            limit,
            out_dir,
        } => {
            let mut report = Report::new(
                "search",
                vec![
                    format!("--size={size}"),
                    format!("--m={m}"),
                    format!("--n={n}"),
                    format!("--grid={grid}"),
                    format!("--policy={policy}"),
                    format!("--limit={limit}"),
                ],
            );
            let grades = grid
                .split(',')
                .map(|g| Grade::parse(g.trim()))
                .collect::<Result<Vec<ExactGrade>>>()?;
            let space = SearchSpace::new(*size, *m, *n, grades, *policy, *limit)?;
            let mut stream = space.enumerate()?;
            let mut digests = Vec::new();
            for (i, r) in stream.by_ref().enumerate() {
                let doc = StructureDocument::from_structure(&r?);
                if let Some(dir) = out_dir {
                    write(&dir.join(format!("structure-{i}.json")), &doc.to_text())?;
                }
                digests.push(doc.digest());
            }
            report.line(format!(
                "{} structures from {} support skeletons",
                digests.len(),
                stream.examined()
            ));
            report.check(Check::new(
                "search space exhausted within the limit",
                !stream.truncated(),
                None,
            ));
            report.canonical.data = json!({
                "count": digests.len(),
                "skeletons_examined": stream.examined(),
                "truncated": stream.truncated(),
                "digests": digests,
            });
            Ok(report)
        }
        Command::Witness {
            predicate,
            files,
            corpus: which,
        } => {
            let mut args = vec![predicate.to_string()];
            let mut report;
            let entries: Vec<(String, ExactStructure)> = if files.is_empty() {
                args.push(format!("--corpus={which:?}").to_lowercase());
                report = Report::new("witness", args);
                let list = match which {
                    CorpusArg::Lifts => corpus::ring_lifts()?,
                    CorpusArg::Standard => corpus::standard()?,
                };
                list.into_iter().map(|e| (e.name, e.structure)).collect()
            } else {
                args.extend(files.iter().map(|f| f.display().to_string()));
                report = Report::new("witness", args);
                let mut v = Vec::new();
                for f in files {
                    v.push((f.display().to_string(), load(f, global, &mut report)?));
                }
                v
            };
            let opts = EnumerationOptions {
                max_carrier: global.max_ideal_carrier.max(128),
                ..EnumerationOptions::default()
            };
            let names: Vec<String> = entries.iter().map(|(n, _)| n.clone()).collect();
            let hit = find_witness(entries.into_iter().map(|(_, r)| Ok(r)), *predicate, opts)?;
            match hit {
                Some(h) => {
                    let ideal = fmt_set(&h.structure, &h.ideal);
                    report.line(format!(
                        "{predicate}: {} with ideal {ideal}",
                        names[h.index]
                    ));
                    report.canonical.data = json!({
                        "found": true,
                        "structure": names[h.index],
                        "ideal": ideal,
                        "ideal_members": members(&h.ideal),
                    });
                }
                None => {
                    report.line(format!("{predicate}: no witness"));
                    report.canonical.data = json!({ "found": false });
                }
            }
            Ok(report)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}
