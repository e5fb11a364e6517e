mod common;

use common::checks::{lemma_base, lemma_har, lemma_ratg, lemma_zero, sample_points};
use common::{random_point, rng, systems};
use proptest::prelude::*;
use tropgon::gonality::indeterminacy_set;
use tropgon::image_tree::ImageTree;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn base_zero_ratg_on_every_fixture(seed in any::<u64>()) {
        let mut r = rng(seed);
        for (name, s) in systems() {
            let zs = sample_points(&mut r, &s, 6);
            for _ in 0..4 {
                let (x, y) = (random_point(&mut r, s.curve()), random_point(&mut r, s.curve()));
                lemma_base(&s, &x, &y, &zs).map_err(|e| TestCaseError::fail(format!("{name}: {e}")))?;
                lemma_zero(&s, &x, &y).map_err(|e| TestCaseError::fail(format!("{name}: {e}")))?;
                lemma_ratg(&s, &x, &y, &zs).map_err(|e| TestCaseError::fail(format!("{name}: {e}")))?;
            }
        }
    }

    #[test]
    fn har_away_from_indeterminacy(seed in any::<u64>()) {
        let mut r = rng(seed);
        for (name, s) in systems() {
            let tree = ImageTree::build(&s).unwrap();
            let bad: Vec<_> = indeterminacy_set(&s, &tree).unwrap().into_iter().map(|(p, _)| p).collect();
            let fine = tree.phi.source().clone();
            for _ in 0..4 {
                let x = random_point(&mut r, &fine);
                if bad.contains(&tree.refinement.original_point(s.curve(), &x)) {
                    continue;
                }
                lemma_har(&s, &tree, &x).map_err(|e| TestCaseError::fail(format!("{name}: {e}")))?;
            }
        }
    }
}

#[test]
fn segment_points_are_hit() {
    // The truncation formula must actually be exercised.
    let mut r = rng(7);
    let mut hits = 0;
    for (_, s) in systems() {
        let zs = sample_points(&mut r, &s, 10);
        for _ in 0..20 {
            let (x, y) = (random_point(&mut r, s.curve()), random_point(&mut r, s.curve()));
            hits += lemma_base(&s, &x, &y, &zs).unwrap();
        }
    }
    assert!(hits > 100, "{hits}");
}
