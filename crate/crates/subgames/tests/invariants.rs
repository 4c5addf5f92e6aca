//! Cross-checks of the production kernels against the naive reference
//! implementations, plus the classical period bounds over full enumerations.

mod common;

use common::{naive_grundy, naive_outcomes, naive_period};
use proptest::prelude::*;
use subgames::*;

fn subsets_with_max(max_s: u64) -> Vec<Ruleset> {
    let below = max_s - 1;
    (0..(1u64 << below))
        .map(|mask| {
            let mut moves: Vec<u64> = (0..below)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            moves.push(max_s);
            Ruleset::new(moves).unwrap()
        })
        .collect()
}

#[test]
fn golomb_bound_holds_up_to_14() {
    // preperiod + period <= 2^maxS + maxS for outcome sequences.
    for m in 1..=14u64 {
        for s in subsets_with_max(m) {
            let cert = period::analyze_outcome(&s, 8_000_000).unwrap();
            assert!(cert.certified, "{s}");
            assert!(
                cert.preperiod + cert.period <= (1 << m) + m,
                "{s}: l+p = {}",
                cert.preperiod + cert.period
            );
        }
    }
}

#[test]
fn grundy_bound_holds_up_to_10() {
    // preperiod + period <= (|S|+1)^maxS + maxS for nim sequences.
    for m in 1..=10u64 {
        for s in subsets_with_max(m) {
            let cert = period::analyze_nim(&s, 8_000_000).unwrap();
            assert!(cert.certified, "{s}");
            let bound = (s.len() as u64 + 1).pow(m as u32) + m;
            assert!(cert.preperiod + cert.period <= bound, "{s}");
        }
    }
}

fn arb_ruleset() -> impl Strategy<Value = Ruleset> {
    proptest::collection::btree_set(1..120u64, 1..6)
        .prop_map(|set| Ruleset::new(set.into_iter().collect()).unwrap())
}

fn arb_seed(max_s: u64) -> impl Strategy<Value = Seed> {
    proptest::collection::vec(prop_oneof![Just(Outcome::P), Just(Outcome::N)], max_s as usize)
        .prop_map(Seed::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn packed_kernel_matches_direct_recursion(rules in arb_ruleset(), h in 1usize..500) {
        let seq = OutcomeSequence::compute(&rules, None, h as u64).unwrap();
        let expect = naive_outcomes(&rules, None, h);
        for x in 0..h {
            prop_assert_eq!(seq.is_p(x as u64), expect[x]);
        }
    }

    #[test]
    fn seeded_kernel_matches_direct_recursion(
        (rules, seed) in arb_ruleset().prop_flat_map(|r| {
            let s = arb_seed(r.max_s());
            (Just(r), s)
        }),
        h in 1usize..400,
    ) {
        let seq = OutcomeSequence::compute(&rules, Some(&seed), h as u64).unwrap();
        let expect = naive_outcomes(&rules, Some(&seed), h);
        for x in 0..h {
            prop_assert_eq!(seq.is_p(x as u64), expect[x]);
        }
    }

    #[test]
    fn outcome_grundy_consistency(rules in arb_ruleset(), h in 1usize..400) {
        // outcome[x] = P  <=>  grundy[x] = 0, under the default seed.
        let seq = OutcomeSequence::compute(&rules, None, h as u64).unwrap();
        let g = GrundySequence::compute(&rules, h as u64).unwrap();
        for x in 0..h as u64 {
            prop_assert_eq!(seq.is_p(x), g.get(x) == 0);
        }
    }

    #[test]
    fn grundy_matches_direct_recursion(rules in arb_ruleset(), h in 1usize..400) {
        let g = GrundySequence::compute(&rules, h as u64).unwrap();
        let expect = naive_grundy(&rules, h);
        let got: Vec<u64> = g.values().iter().map(|&v| v as u64).collect();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn seed_recursion_exactness(
        (rules, seed) in arb_ruleset().prop_flat_map(|r| {
            let s = arb_seed(r.max_s());
            (Just(r), s)
        }),
        h in 1usize..300,
    ) {
        // Recomputing any outcome from its predecessors (with seed lookup)
        // reproduces the stored symbol.
        let seq = OutcomeSequence::compute(&rules, Some(&seed), h as u64).unwrap();
        for x in 0..h as i64 {
            let n = rules.moves().iter().any(|&s| {
                let y = x - s as i64;
                if y >= 0 {
                    seq.is_p(y as u64)
                } else {
                    seed.lookup(y).is_p()
                }
            });
            prop_assert_eq!(seq.is_p(x as u64), !n);
        }
    }

    #[test]
    fn certificate_matches_quadratic_scan(rules in arb_ruleset(), h in 64usize..400) {
        let seq = OutcomeSequence::compute(&rules, None, h as u64).unwrap();
        let cert = seq.certify();
        let symbols: Vec<bool> = (0..h as u64).map(|x| seq.is_p(x)).collect();
        match naive_period(&symbols, rules.max_s() as usize) {
            Some((l, p)) => {
                prop_assert!(cert.certified);
                prop_assert_eq!((cert.preperiod as usize, cert.period as usize), (l, p));
            }
            None => prop_assert!(!cert.certified),
        }
    }

    #[test]
    fn certified_periodicity_is_exact(rules in arb_ruleset()) {
        // Whatever the certificate claims must hold verbatim on the data.
        let cert = period::analyze_outcome(&rules, 500_000).unwrap();
        if cert.certified {
            let seq = OutcomeSequence::compute(&rules, None, cert.horizon).unwrap();
            let (l, p) = (cert.preperiod, cert.period);
            for x in l..cert.horizon - p {
                prop_assert_eq!(seq.is_p(x), seq.is_p(x + p));
            }
            // Minimality of the preperiod for this period.
            if l > 0 {
                prop_assert!(seq.is_p(l - 1) != seq.is_p(l - 1 + p));
            }
        }
    }

    #[test]
    fn fes_incremental_matches_direct(ex in proptest::collection::btree_set(1..12u64, 1..5), h in 1usize..250) {
        let rules = FesRuleset::new(ex.into_iter().collect()).unwrap();
        let fast = fes_grundy(&rules, h as u64).unwrap();
        let mut slow: Vec<u64> = Vec::with_capacity(h);
        for n in 0..h {
            let opts: Vec<u64> = (1..=n)
                .filter(|m| !rules.excluded().contains(&(*m as u64)))
                .map(|m| slow[n - m])
                .collect();
            let mut v = 0u64;
            while opts.contains(&v) {
                v += 1;
            }
            slow.push(v);
        }
        prop_assert_eq!(fast.values(), &slow[..]);
    }

    #[test]
    fn grid_cells_satisfy_recurrence(
        moves in proptest::collection::btree_set((0u32..12, 0u32..12), 1..5),
        w in 1u32..96,
        h in 1u32..48,
    ) {
        let moves: Vec<(u32, u32)> = moves.into_iter().filter(|&m| m != (0, 0)).collect();
        prop_assume!(!moves.is_empty());
        let rules = Ruleset2D::new(moves).unwrap();
        let grid = outcomes2d(&rules, w, h).unwrap();
        for y in 0..h {
            for x in 0..w {
                let n = rules
                    .moves()
                    .iter()
                    .any(|&(a, b)| x >= a && y >= b && grid.is_p(x - a, y - b));
                prop_assert_eq!(grid.is_p(x, y), !n, "({}, {})", x, y);
            }
        }
        prop_assert!(grid.is_p(0, 0));
    }
}

#[test]
fn a_max_symmetric_nim_counterexample_is_pinned() {
    // {2,3,6,7,9} is max-symmetric with a purely periodic outcome sequence
    // but a nim-sequence that is periodic only from 12 on; this pins the
    // refutation of the claimed nim extension of the pure-periodicity
    // theorem (the acceptance suite keeps the original claim, which fails).
    let s = Ruleset::new(vec![2, 3, 6, 7, 9]).unwrap();
    assert!(s.is_max_symmetric());
    let a = analyze(&s, 100_000).unwrap();
    assert!(a.outcome.is_pure());
    assert_eq!(a.outcome.period, 28);
    assert!(a.nim.certified);
    assert_eq!((a.nim.preperiod, a.nim.period), (12, 28));
    // Direct witness: G(4) = 2 but G(32) = 4.
    let g = GrundySequence::compute(&s, 64).unwrap();
    assert_eq!((g.get(4), g.get(32)), (2, 4));
}
