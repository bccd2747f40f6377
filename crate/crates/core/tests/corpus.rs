use krasner_core::corpus;
use krasner_core::{enumerate_ideals_with, EnumerationOptions, RadicalMethod};

const OPTS: EnumerationOptions = EnumerationOptions {
    max_carrier: 128,
    certify_up_to: 12,
};

#[test]
fn corpus_shape() {
    let all = corpus::standard().unwrap();
    assert_eq!(corpus::ring_lifts().unwrap().len(), 7);
    assert_eq!(corpus::lift_products().unwrap().len(), 15);
    assert_eq!(all.len(), 28);
    for e in &all {
        assert!(e.structure.validate().unwrap().passed(), "{}", e.name);
    }
}

/// With n = 2 the pairwise form `ab ⊆ Q ⇒ a ∈ Q or b ∈ √Q` gives the same verdicts as
/// the some-position form used by `is_primary`.
#[test]
fn binary_primary_form_agrees_on_corpus() {
    let mut checked = 0;
    for e in corpus::standard().unwrap() {
        let r = &e.structure;
        if r.scalar_identity().is_none() || r.n() != 2 {
            continue;
        }
        let lat = enumerate_ideals_with(r, OPTS).unwrap();
        for q in lat.ideals() {
            let rad = lat.f_radical(q, RadicalMethod::Powers).unwrap();
            let pairwise = (0..r.size()).all(|a| {
                (0..r.size()).all(|b| {
                    !r.g().support(&[a, b]).is_subset(q) || q.contains(a) || rad.contains(b)
                })
            });
            assert_eq!(
                lat.is_primary(q, false).unwrap(),
                pairwise,
                "{} {}",
                e.name,
                r.carrier().format_set(q)
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 170);
}
