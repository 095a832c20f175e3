mod common;

use common::*;
use proptest::prelude::*;
use um_core::consensus::GwpmMatcher;
use um_core::knapsack::{brute_force, solve};
use um_core::profile::ProfileMatcher;
use um_core::weighted::WpmMatcher;
use um_core::{gwpm, profile_match, wpm, Algo, ProbThreshold, ScoreThreshold};

fn split(windows: usize, cut: usize) -> [std::ops::Range<usize>; 2] {
    let cut = 1 + cut % (windows + 1);
    [1..cut, cut..windows + 1]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn range_scans_concatenate(seed in any::<u64>(), cut in any::<usize>()) {
        let mut rng = rng(seed);
        let t = weighted(&mut rng, 80, 3, 3);
        let p = text(&mut rng, 3, 3);
        let z = ProbThreshold::power_of_two(4);
        let m = WpmMatcher::new(&p, &t).unwrap();
        let parts: Vec<usize> = split(m.windows(), cut)
            .into_iter()
            .flat_map(|r| m.scan(&z, Some(r)).into_iter().map(|(pos, _)| pos))
            .collect();
        prop_assert_eq!(parts, wpm(&p, &t, &z).unwrap());

        let prof = profile(&mut rng, 4, 3, 5);
        let tt = text(&mut rng, 80, 3);
        let m = ProfileMatcher::new(&prof, &tt).unwrap();
        let parts: Vec<usize> = split(m.windows(), cut)
            .into_iter()
            .flat_map(|r| m.scan(ScoreThreshold(3), Some(r)).occurrences)
            .collect();
        prop_assert_eq!(parts, profile_match(&prof, &tt, ScoreThreshold(3)).unwrap());

        let pw = weighted(&mut rng, 4, 3, 3);
        let tw = implant(&mut rng, &t, &pw, 3);
        let z = ProbThreshold::power_of_two(5);
        let g = GwpmMatcher::new(&pw, &tw, &z).unwrap();
        let mut ws = Vec::new();
        for r in split(g.windows(), cut) {
            ws.extend(g.scan(Some(r), Algo::Auto).unwrap());
        }
        prop_assert_eq!(g.finish(ws).occurrences, gwpm(&pw, &tw, &z, Algo::Auto).unwrap().occurrences);
    }

    #[test]
    fn swapping_axes_keeps_feasibility(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let inst = knapsack(&mut rng, 1 << 10, 8, 4, 15);
        let expected = brute_force(&inst).unwrap().is_some();
        prop_assert_eq!(solve(&inst.swapped()).is_some(), expected);
    }
}
