// Temporary fact-finder. Not part of the deliverable.
use subgames::*;

fn par_map<T: Send, U: Send>(items: Vec<T>, f: impl Fn(T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

fn all_subsets_with_max(max_s: u64) -> Vec<Ruleset> {
    // all nonempty S ⊆ {1..max_s} with max = max_s
    let below = max_s - 1;
    let mut out = Vec::new();
    for mask in 0..(1u64 << below) {
        let mut moves: Vec<u64> = (0..below).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        moves.push(max_s);
        out.push(Ruleset::new(moves).unwrap());
    }
    out
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    match which.as_str() {
        "fib" => {
            // premise variants over max_s <= 16
            for m in 2..=16u64 {
                let sets = all_subsets_with_max(m);
                let results = par_map(sets, |s| {
                    let prem_eq = 2 * s.min_s() <= s.max_s()
                        || (s.len() > 1 && s.moves()[0] + s.moves()[1] <= s.max_s());
                    let prem_ne = s.len() > 1 && s.moves()[0] + s.moves()[1] <= s.max_s();
                    if !prem_eq {
                        return None;
                    }
                    let cert = analyze(&s, 2_000_000).unwrap().outcome;
                    assert!(cert.certified, "{s}");
                    Some((s.to_string(), prem_ne, cert.period))
                });
                let bound = ceil_two_phi_pow(m) - 1; // floor(2 phi^m)
                let mut worst = 0u64;
                for r in results.into_iter().flatten() {
                    let (s, ne, p) = r;
                    worst = worst.max(p);
                    if p as u128 > bound {
                        println!("VIOLATION m={m} {s} p={p} ne={ne} bound={bound}");
                    }
                }
                println!("m={m}: worst qualifying period {worst}, floor(2phi^m) = {bound}");
            }
        }
        "golomb" => {
            for m in 1..=14u64 {
                let sets = all_subsets_with_max(m);
                let results = par_map(sets, |s| {
                    let cert = analyze(&s, 8_000_000).unwrap().outcome;
                    (s.to_string(), cert)
                });
                let bound = (1u64 << m) + m;
                let mut worst = 0;
                for (s, c) in results {
                    assert!(c.certified, "{s}");
                    worst = worst.max(c.preperiod + c.period);
                    if c.preperiod + c.period > bound {
                        println!("GOLOMB VIOLATION {s} l+p={}", c.preperiod + c.period);
                    }
                }
                println!("golomb m={m}: worst l+p = {worst} bound {bound}");
            }
        }
        "gbound" => {
            for m in 1..=10u64 {
                let sets = all_subsets_with_max(m);
                let results = par_map(sets, |s| {
                    let cert = analyze(&s, 8_000_000).unwrap().nim;
                    (s.to_string(), s.len() as u64, cert)
                });
                let mut worst = 0;
                for (s, k, c) in results {
                    assert!(c.certified, "{s}");
                    worst = worst.max(c.preperiod + c.period);
                    let bound = (k + 1).pow(m as u32) + m;
                    if c.preperiod + c.period > bound {
                        println!("GRUNDY BOUND VIOLATION {s} l+p={}", c.preperiod + c.period);
                    }
                }
                println!("grundy m={m}: worst l+p = {worst}");
            }
        }
        "plurality" => {
            for s3 in [3u64, 4, 5, 7, 10, 15, 20, 31, 45, 60] {
                if s3 < 3 { continue; }
                let grid = classify_three_move(s3, 1..=s3 - 2, 2..=s3 - 1, 4_000_000).unwrap();
                let counts: Vec<(PeriodClass, usize)> = [
                    PeriodClass::SumS1S2,
                    PeriodClass::SumS1S3,
                    PeriodClass::SumS2S3,
                    PeriodClass::Diagonal,
                    PeriodClass::Other,
                    PeriodClass::Unknown,
                ]
                .into_iter()
                .map(|c| (c, grid.count(c)))
                .collect();
                println!("s3={s3}: {counts:?} populated={}", grid.populated());
            }
        }
        "other20" => {
            let mut total = 0usize;
            let mut other = 0usize;
            for s3 in 3..=20u64 {
                let grid = classify_three_move(s3, 1..=s3 - 2, 2..=s3 - 1, 4_000_000).unwrap();
                total += grid.populated();
                other += grid.count(PeriodClass::Other);
                assert_eq!(grid.count(PeriodClass::Unknown), 0);
            }
            println!("maxS<=20: other {other} of {total} = {:.4}", other as f64 / total as f64);
        }
        "maxsym" => {
            let mut n = 0;
            for m in 1..=16u64 {
                for s in all_subsets_with_max(m) {
                    if !s.is_max_symmetric() {
                        continue;
                    }
                    n += 1;
                    let a = analyze(&s, 4_000_000).unwrap();
                    assert!(a.outcome.certified && a.nim.certified, "{s}");
                    if a.outcome.preperiod != 0 || a.nim.preperiod != 0 {
                        println!("MAXSYM NOT PURE {s} o={:?} n={:?}", a.outcome, a.nim);
                    }
                }
            }
            println!("max-symmetric sets checked: {n}");
        }
        "seeded" => {
            for n in 2..=4u64 {
                let (rules, seed) = seeded_family(n).unwrap();
                let seq = OutcomeSequence::compute(&rules, Some(&seed), 1_000_000).unwrap();
                let c = seq.certify();
                println!(
                    "n={n} S={rules} cert=({},{},{}) ratio={:.4}",
                    c.preperiod,
                    c.period,
                    c.certified,
                    c.period as f64 / rules.max_s() as f64
                );
            }
        }
        "berlekamp" => {
            let mut exceptions = Vec::new();
            for m in 1..=7u64 {
                for s in all_subsets_with_max(m) {
                    let c = analyze(&s, 1_000_000).unwrap().nim;
                    assert!(c.certified);
                    let sums: Vec<u64> = s
                        .moves()
                        .iter()
                        .flat_map(|&a| s.moves().iter().map(move |&b| a + b))
                        .collect();
                    if !sums.iter().any(|&sum| sum % c.period == 0) {
                        exceptions.push((s.to_string(), c.period));
                    }
                }
            }
            println!("divisor-exceptions maxS<=7: {exceptions:?}");
        }
        "sym20" => {
            let mut n = 0;
            for a in 1..=19u64 {
                for b in a + 1..=20 {
                    let p = a + b;
                    // symmetric sets with min a, max b: unions of pairs {s, p-s}
                    let interior: Vec<u64> = (a + 1..b).filter(|&s| s < p - s).collect();
                    let center: Option<u64> = (p % 2 == 0 && p / 2 > a && p / 2 < b).then(|| p / 2);
                    let npairs = interior.len() + center.is_some() as usize;
                    for mask in 0..(1u64 << npairs) {
                        let mut moves = vec![a, b];
                        for (i, &s) in interior.iter().enumerate() {
                            if mask >> i & 1 == 1 {
                                moves.push(s);
                                moves.push(p - s);
                            }
                        }
                        if let Some(c) = center {
                            if npairs > 0 && mask >> (npairs - 1) & 1 == 1 {
                                moves.push(c);
                            }
                        }
                        let s = Ruleset::new(moves).unwrap();
                        assert_eq!(s.symmetry_period(), Some(p), "{s}");
                        n += 1;
                        let cert = analyze(&s, 1_000_000).unwrap().nim;
                        assert!(cert.certified, "{s}");
                        if cert.preperiod != 0 || p % cert.period != 0 {
                            println!("SYMMETRIC VIOLATION {s}: {cert:?} p={p}");
                        }
                    }
                }
            }
            println!("symmetric sets checked: {n}");
        }
        "short15" => {
            let mut n = 0;
            for m in 1..=15u64 {
                for s in all_subsets_with_max(m) {
                    if !s.has_small_gaps() {
                        continue;
                    }
                    n += 1;
                    let s1 = s.min_s();
                    let seq = OutcomeSequence::compute(&s, None, 600).unwrap();
                    for x in 0..600u64 {
                        let expect = (x % (s1 + m)) < s1;
                        if seq.is_p(x) != expect {
                            println!("SHORT-PERIOD VIOLATION {s} at {x}");
                            break;
                        }
                    }
                }
            }
            println!("short-period sets checked: {n}");
        }
        _ => eprintln!("unknown section"),
    }
}
// appended sections via second match in main would be unreachable; instead extend by env var
