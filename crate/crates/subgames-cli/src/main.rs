//! `subgames`: outcome/Grundy sequences of finite subtraction games,
//! periodicity certificates, all-but nim, ruleset searches, and 2-d grids.
//!
//! Exit status: 0 = success, 1 = input or usage error, 2 = result
//! inconclusive (uncertified or not found) so batch scripts can distinguish.

mod output;
mod parse;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use output::{digest_values, fnv1a64, Record};
use parse::{parse_range, parse_ruleset, Parsed};
use subgames::{
    analyze, austin_adjoin_check, bipartite_check, classify_three_move, conjecture_harness,
    expansion_set, family_eval, fes_grundy, line_periodicity, outcomes2d, record_holders,
    zhang_scan, Conjecture, FamilySpec, Filter, GrundySequence, Line, OutcomeSequence,
    PeriodicityCertificate, Ruleset, Seed, Verdict, DEFAULT_HORIZON_CAP,
};

#[derive(Parser)]
#[command(name = "subgames", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Horizon (positions to compute); for certificate commands this caps
    /// the automatic horizon growth.
    #[arg(long, global = true)]
    horizon: Option<u64>,
    /// Worker threads for search subcommands (records, classify3, family,
    /// zhang); other subcommands are single-threaded.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Pgm,
}

#[derive(Subcommand)]
enum Cmd {
    /// Outcome sequence (P/N per heap size).
    Outcomes {
        ruleset: String,
        /// Terminal seed string of P/N symbols, leftmost = position -max S.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Nim-value (Grundy) sequence.
    Grundy { ruleset: String },
    /// Outcome and nim periodicity certificates.
    Period { ruleset: String },
    /// Misère-convention outcomes, with the divergence point against the
    /// seed N^{min S} P^{max S - min S} the literature identifies with it.
    Misere { ruleset: String },
    /// Certificate for outcomes under a terminal seed.
    SeedPeriod {
        ruleset: String,
        #[arg(long)]
        seed: String,
    },
    /// Expansion set: moves adjoinable without changing the nim-sequence.
    Expand {
        ruleset: String,
        /// Largest candidate move to test.
        #[arg(long, default_value_t = 50)]
        bound: u64,
    },
    /// Austin's theorem check: p - s is adjoinable for purely periodic S.
    AdjoinCheck { ruleset: String },
    /// Bipartite criterion and ultimate bipartiteness.
    Bipartite { ruleset: String },
    /// All-but-nim Grundy values and arithmetic periodicity.
    Fes { ruleset: String },
    /// Empirical verdict for an all-but-nim conjecture at (a, b).
    FesConjecture {
        /// sleator-slusky | abuku-suetsugu-lemma | abuku-suetsugu-period |
        /// abuku-suetsugu-pure
        name: String,
        #[arg(short, long)]
        a: u64,
        #[arg(short, long)]
        b: u64,
    },
    /// Evaluate a parameterized family (preset name or affine move list
    /// like `5n-2,5n+3,10n+2`) over `--range`.
    Family {
        spec: String,
        #[arg(long)]
        range: String,
    },
    /// Record-holder table over a range of max S.
    Records {
        #[arg(long)]
        range: String,
        #[arg(short = 'k', long, default_value_t = 3)]
        k: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
    },
    /// Period-class grid for 3-move rulesets at fixed s3.
    Classify3 {
        #[arg(long)]
        s3: u64,
        /// s1 range A..B (default 1..s3-2).
        #[arg(long)]
        s1: Option<String>,
        /// s2 range A..B (default 2..s3-1).
        #[arg(long)]
        s2: Option<String>,
    },
    /// Adjoin-one-move scan: certificates of S ∪ {c} for c ≡ residue
    /// (mod modulus), with linear fits in c.
    Zhang {
        ruleset: String,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        residue: u64,
        #[arg(long)]
        range: String,
    },
    /// Two-dimensional outcome grid: statistics, digest, or image.
    Grid2d {
        ruleset: String,
        #[arg(long)]
        width: u32,
        #[arg(long)]
        height: u32,
        /// Also report the empirical periodicity of this row.
        #[arg(long)]
        row: Option<u32>,
    },
    /// Compute a 2-d outcome grid and write it as a PGM image.
    Render {
        ruleset: String,
        #[arg(long)]
        width: u32,
        #[arg(long)]
        height: u32,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum FilterArg {
    All,
    MaxSymmetric,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Filter {
        match f {
            FilterArg::All => Filter::All,
            FilterArg::MaxSymmetric => Filter::MaxSymmetric,
        }
    }
}

/// Everything a subcommand produces; the format picks what is written.
struct CmdOut {
    record: Record,
    text: String,
    csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    image: Option<Vec<u8>>,
    exit: u8,
}

impl CmdOut {
    fn new(record: Record) -> Self {
        CmdOut {
            record,
            text: String::new(),
            csv: None,
            image: None,
            exit: 0,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let started = Instant::now();
    match run(&cli) {
        Ok(mut out) => {
            out.record.finish(started.elapsed().as_secs_f64() * 1e3);
            if let Err(e) = emit(&cli, &mut out) {
                eprintln!("error: {e:#}");
                std::process::exit(1);
            }
            std::process::exit(out.exit as i32);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn emit(cli: &Cli, out: &mut CmdOut) -> anyhow::Result<()> {
    let bytes: Vec<u8> = match cli.format {
        Format::Text => {
            let mut t = out.text.clone();
            if !t.ends_with('\n') && !t.is_empty() {
                t.push('\n');
            }
            t.into_bytes()
        }
        Format::Json => {
            let mut s = out.record.to_json();
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let (header, rows) = out
                .csv
                .take()
                .ok_or_else(|| anyhow!("this subcommand has no CSV form"))?;
            let mut buf = Vec::new();
            output::write_csv(&mut buf, &header, rows)?;
            buf
        }
        Format::Pgm => out
            .image
            .take()
            .ok_or_else(|| anyhow!("this subcommand has no image form"))?,
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}

fn one_d(text: &str) -> anyhow::Result<Ruleset> {
    match parse_ruleset(text)? {
        Parsed::OneD(r) => Ok(r),
        Parsed::Fes(_) => bail!("expected a plain ruleset, got a FES set (use the fes subcommand)"),
        Parsed::TwoD(_) => bail!("expected a 1-d ruleset, got move vectors (use grid2d/render)"),
    }
}

fn cert_fields(record: &mut Record, prefix: &str, c: &PeriodicityCertificate) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}_{k}")
        }
    };
    record.set(&key("preperiod"), c.preperiod);
    record.set(&key("period"), c.period);
    record.set(&key("certified"), c.certified);
    record.set(&key("horizon"), c.horizon);
}

fn cert_line(name: &str, c: &PeriodicityCertificate) -> String {
    format!(
        "{name}: preperiod {} period {}{}",
        c.preperiod,
        c.period,
        if c.certified { "" } else { " (NOT certified)" }
    )
}

/// Certificate for seeded outcomes with horizon doubling up to `cap`.
fn seeded_certificate(
    rules: &Ruleset,
    seed: &Seed,
    cap: u64,
) -> anyhow::Result<PeriodicityCertificate> {
    let mut h = (16 * rules.max_s() + 64).min(cap.max(1));
    loop {
        let cert = OutcomeSequence::compute(rules, Some(seed), h)?.certify();
        if cert.certified || h >= cap {
            return Ok(cert);
        }
        h = (h * 2).min(cap);
    }
}

fn run(cli: &Cli) -> anyhow::Result<CmdOut> {
    let cap = cli.horizon.unwrap_or(DEFAULT_HORIZON_CAP);
    match &cli.command {
        Cmd::Outcomes { ruleset, seed } => {
            let rules = one_d(ruleset)?;
            let seed = seed.as_deref().map(Seed::parse).transpose()?;
            let h = cli.horizon.unwrap_or(64);
            let seq = OutcomeSequence::compute(&rules, seed.as_ref(), h)?;
            let symbols = seq.to_symbol_string();
            let mut record = Record::new("outcomes", ruleset);
            record
                .set("horizon", h)
                .set("symbols", &symbols)
                .set("digest", format!("{:016x}", fnv1a64(symbols.bytes())));
            if let Some(s) = &seed {
                record.set("seed", s.to_string());
            }
            let mut out = CmdOut::new(record);
            out.text = symbols;
            Ok(out)
        }
        Cmd::Grundy { ruleset } => {
            let rules = one_d(ruleset)?;
            let h = cli.horizon.unwrap_or(64);
            let g = GrundySequence::compute(&rules, h)?;
            let values: Vec<u16> = g.values().to_vec();
            let mut record = Record::new("grundy", ruleset);
            record.set("horizon", h).set("values", &values).set(
                "digest",
                format!("{:016x}", digest_values(values.iter().map(|&v| v as u64))),
            );
            let mut out = CmdOut::new(record);
            out.text = values.iter().map(u16::to_string).collect::<Vec<_>>().join(" ");
            Ok(out)
        }
        Cmd::Period { ruleset } => {
            let rules = one_d(ruleset)?;
            let a = analyze(&rules, cap)?;
            let mut record = Record::new("period", ruleset);
            cert_fields(&mut record, "", &a.outcome);
            cert_fields(&mut record, "nim", &a.nim);
            let mut out = CmdOut::new(record);
            out.text = format!(
                "{}\n{}",
                cert_line("outcomes", &a.outcome),
                cert_line("nim-values", &a.nim)
            );
            out.csv = Some((
                vec!["ruleset", "kind", "preperiod", "period", "certified", "horizon"],
                vec![
                    vec![
                        rules.to_string(),
                        "outcome".into(),
                        a.outcome.preperiod.to_string(),
                        a.outcome.period.to_string(),
                        a.outcome.certified.to_string(),
                        a.outcome.horizon.to_string(),
                    ],
                    vec![
                        rules.to_string(),
                        "nim".into(),
                        a.nim.preperiod.to_string(),
                        a.nim.period.to_string(),
                        a.nim.certified.to_string(),
                        a.nim.horizon.to_string(),
                    ],
                ],
            ));
            out.exit = if a.outcome.certified && a.nim.certified { 0 } else { 2 };
            Ok(out)
        }
        Cmd::Misere { ruleset } => {
            let rules = one_d(ruleset)?;
            let h = cli.horizon.unwrap_or(64);
            let seq = OutcomeSequence::misere(&rules, h)?;
            let symbols = seq.to_symbol_string();
            let divergence = subgames::outcome::misere_seed_divergence(&rules, h)?;
            let mut record = Record::new("misere", ruleset);
            record
                .set("horizon", h)
                .set("symbols", &symbols)
                .set("digest", format!("{:016x}", fnv1a64(symbols.bytes())))
                .set("seed_divergence", divergence);
            let mut out = CmdOut::new(record);
            out.text = match divergence {
                Some(x) => {
                    format!("{symbols}\ndiverges from seed N^min P^(max-min) at position {x}")
                }
                None => format!("{symbols}\nmatches seed N^min P^(max-min) over the horizon"),
            };
            Ok(out)
        }
        Cmd::SeedPeriod { ruleset, seed } => {
            let rules = one_d(ruleset)?;
            let seed = Seed::parse(seed)?;
            seed.check_len(&rules)?;
            let cert = seeded_certificate(&rules, &seed, cap)?;
            let mut record = Record::new("seed-period", ruleset);
            record.set("seed", seed.to_string());
            cert_fields(&mut record, "", &cert);
            let mut out = CmdOut::new(record);
            out.text = cert_line("seeded outcomes", &cert);
            out.exit = if cert.certified { 0 } else { 2 };
            Ok(out)
        }
        Cmd::Expand { ruleset, bound } => {
            let rules = one_d(ruleset)?;
            let h = cli
                .horizon
                .unwrap_or_else(|| 16 * (bound + rules.max_s()) + 512);
            let rep = expansion_set(&rules, *bound, h)?;
            let mut record = Record::new("expand", ruleset);
            record
                .set("bound", bound)
                .set("horizon", h)
                .set("adjoinable", &rep.adjoinable)
                .set("unverified", &rep.unverified)
                .set("certified", rep.certified);
            let mut out = CmdOut::new(record);
            out.text = format!(
                "adjoinable: {}{}",
                join(&rep.adjoinable),
                if rep.unverified.is_empty() {
                    String::new()
                } else {
                    format!("\nunverified (horizon too small): {}", join(&rep.unverified))
                }
            );
            out.csv = Some((
                vec!["candidate", "adjoinable"],
                rep.adjoinable
                    .iter()
                    .map(|c| vec![c.to_string(), "true".into()])
                    .chain(
                        rep.unverified
                            .iter()
                            .map(|c| vec![c.to_string(), "unverified".into()]),
                    )
                    .collect(),
            ));
            out.exit = if rep.certified { 0 } else { 2 };
            Ok(out)
        }
        Cmd::AdjoinCheck { ruleset } => {
            let rules = one_d(ruleset)?;
            let h = cli.horizon.unwrap_or_else(|| (64 * rules.max_s()).max(4096));
            let rep = austin_adjoin_check(&rules, h)?;
            let mut record = Record::new("adjoin-check", ruleset);
            record.set("period", rep.period).set("verified", &rep.verified);
            let mut out = CmdOut::new(record);
            out.text = format!(
                "period {}; verified adjoinable: {}",
                rep.period,
                join(&rep.verified)
            );
            Ok(out)
        }
        Cmd::Bipartite { ruleset } => {
            let rules = one_d(ruleset)?;
            let h = cli.horizon.unwrap_or_else(|| (64 * rules.max_s()).max(4096));
            let rep = bipartite_check(&rules, h)?;
            let mut record = Record::new("bipartite", ruleset);
            record
                .set("horizon", h)
                .set("bipartite", rep.bipartite)
                .set("ultimately_bipartite", rep.ultimately_bipartite)
                .set("onset", rep.onset);
            let mut out = CmdOut::new(record);
            out.text = format!(
                "bipartite: {}; ultimately bipartite: {}{}",
                tri(rep.bipartite, "not applicable (gcd > 1)"),
                tri(rep.ultimately_bipartite, "unknown (uncertified)"),
                rep.onset.map(|o| format!(" from {o}")).unwrap_or_default()
            );
            out.exit = if rep.ultimately_bipartite.is_none() { 2 } else { 0 };
            Ok(out)
        }
        Cmd::Fes { ruleset } => {
            let Parsed::Fes(rules) = parse_ruleset(ruleset)? else {
                bail!("fes expects an excluded set like !2,4");
            };
            let h = cli.horizon.unwrap_or(20_000);
            let seq = fes_grundy(&rules, h)?;
            let ap = seq.detect();
            let mut record = Record::new("fes", ruleset);
            record
                .set("horizon", h)
                .set(
                    "digest",
                    format!("{:016x}", digest_values(seq.values().iter().copied())),
                )
                .set("arithmetic_periodicity", ap);
            let mut out = CmdOut::new(record);
            let prefix: Vec<String> = seq
                .values()
                .iter()
                .take(32.min(seq.values().len()))
                .map(u64::to_string)
                .collect();
            out.text = match ap {
                Some(ap) => format!(
                    "values: {} ...\narithmetic periodicity: preperiod {} period {} saltus {}",
                    prefix.join(" "),
                    ap.preperiod,
                    ap.period,
                    ap.saltus
                ),
                None => format!(
                    "values: {} ...\nno arithmetic periodicity found within horizon {h}",
                    prefix.join(" ")
                ),
            };
            out.exit = if ap.is_some() { 0 } else { 2 };
            Ok(out)
        }
        Cmd::FesConjecture { name, a, b } => {
            let which = match name.as_str() {
                "sleator-slusky" => Conjecture::SleatorSlusky,
                "abuku-suetsugu-lemma" => Conjecture::AbukuSuetsuguLemma,
                "abuku-suetsugu-period" => Conjecture::AbukuSuetsuguPeriod,
                "abuku-suetsugu-pure" => Conjecture::AbukuSuetsuguPure,
                other => bail!("unknown conjecture {other:?}"),
            };
            let h = cli.horizon.unwrap_or(30_000);
            let rep = conjecture_harness(which, *a, *b, h)?;
            let mut record = Record::new("fes-conjecture", &format!("{name} a={a} b={b}"));
            record
                .set("set", rep.set.to_string())
                .set("predicted_periods", &rep.predicted_periods)
                .set("matched_case", &rep.matched_case)
                .set("observed", rep.observed)
                .set("verdict", &rep.verdict);
            let mut out = CmdOut::new(record);
            out.text = format!(
                "{} on {}: {}",
                name,
                rep.set,
                match &rep.verdict {
                    Verdict::HoldsOverWindow => "holds over window".to_string(),
                    Verdict::ViolatedAt { witness, detail } =>
                        format!("VIOLATED (witness {witness}): {detail}"),
                    Verdict::Inconclusive { reason } => format!("inconclusive: {reason}"),
                }
            );
            out.exit = match rep.verdict {
                Verdict::Inconclusive { .. } => 2,
                _ => 0,
            };
            Ok(out)
        }
        Cmd::Family { spec, range } => {
            let fam = FamilySpec::preset(spec)
                .map(Ok)
                .unwrap_or_else(|| FamilySpec::parse(spec, spec))?;
            let (lo, hi) = parse_range(range)?;
            let rows = family_eval(&fam, lo..=hi, cap);
            let mut record = Record::new("family", spec);
            record.set("range", [lo, hi]).set("rows", &rows);
            let mut out = CmdOut::new(record);
            let mut text = String::new();
            let mut csv_rows = Vec::new();
            let mut inconclusive = false;
            for row in &rows {
                let set = row
                    .ruleset
                    .as_ref()
                    .map(|r| r.to_string())
                    .unwrap_or_else(|| "-".into());
                let fmt_c = |c: &Option<PeriodicityCertificate>| match c {
                    Some(c) if c.certified => format!("({},{})", c.preperiod, c.period),
                    Some(_) => "uncertified".to_string(),
                    None => "-".to_string(),
                };
                let status = match (&row.note, row.prediction_ok) {
                    (Some(note), _) => note.clone(),
                    (None, Some(true)) => "ok".into(),
                    (None, Some(false)) => "MISMATCH".into(),
                    (None, None) => "inconclusive".into(),
                };
                inconclusive |= row.prediction_ok.is_none() || row.prediction_ok == Some(false);
                writeln!(
                    text,
                    "n={:<3} S={:<24} outcome {:<12} nim {:<12} {}",
                    row.n,
                    set,
                    fmt_c(&row.outcome),
                    fmt_c(&row.nim),
                    status
                )
                .unwrap();
                csv_rows.push(vec![
                    row.n.to_string(),
                    set,
                    fmt_c(&row.outcome),
                    fmt_c(&row.nim),
                    status,
                ]);
            }
            out.text = text;
            out.csv = Some((vec!["n", "ruleset", "outcome", "nim", "status"], csv_rows));
            out.exit = if inconclusive { 2 } else { 0 };
            Ok(out)
        }
        Cmd::Records { range, k, filter } => {
            let (lo, hi) = parse_range(range)?;
            let table = record_holders(lo..=hi, *k, (*filter).into(), cap)?;
            let mut record = Record::new("records", &format!("maxS {lo}..{hi} k={k}"));
            record.set("rows", &table.rows);
            let mut out = CmdOut::new(record);
            let mut text = String::new();
            let mut csv_rows = Vec::new();
            let mut uncertified = 0;
            for row in &table.rows {
                uncertified += row.uncertified;
                let holders: Vec<String> =
                    row.holders.iter().map(|h| h.ruleset.to_string()).collect();
                writeln!(
                    text,
                    "maxS={:<3} period={:<10} holders: {}{}",
                    row.max_s,
                    row.period,
                    holders.join(" | "),
                    if row.uncertified > 0 {
                        format!("  ({} uncertified skipped)", row.uncertified)
                    } else {
                        String::new()
                    }
                )
                .unwrap();
                for h in &row.holders {
                    csv_rows.push(vec![
                        row.max_s.to_string(),
                        h.ruleset.to_string(),
                        h.outcome.preperiod.to_string(),
                        h.outcome.period.to_string(),
                        h.nim.preperiod.to_string(),
                        h.nim.period.to_string(),
                        row.uncertified.to_string(),
                    ]);
                }
            }
            out.text = text;
            out.csv = Some((
                vec![
                    "max_s",
                    "ruleset",
                    "outcome_preperiod",
                    "outcome_period",
                    "nim_preperiod",
                    "nim_period",
                    "uncertified_in_class",
                ],
                csv_rows,
            ));
            out.exit = if uncertified > 0 { 2 } else { 0 };
            Ok(out)
        }
        Cmd::Classify3 { s3, s1, s2 } => {
            let s1r = match s1 {
                Some(t) => parse_range(t)?,
                None => (1, s3.saturating_sub(2).max(1)),
            };
            let s2r = match s2 {
                Some(t) => parse_range(t)?,
                None => (2, s3.saturating_sub(1).max(2)),
            };
            let grid = classify_three_move(*s3, s1r.0..=s1r.1, s2r.0..=s2r.1, cap)?;
            let counts: Vec<(String, usize)> = [
                ("s1+s2", subgames::PeriodClass::SumS1S2),
                ("s1+s3", subgames::PeriodClass::SumS1S3),
                ("s2+s3", subgames::PeriodClass::SumS2S3),
                ("diagonal", subgames::PeriodClass::Diagonal),
                ("other", subgames::PeriodClass::Other),
                ("unknown", subgames::PeriodClass::Unknown),
            ]
            .into_iter()
            .map(|(n, c)| (n.to_string(), grid.count(c)))
            .collect();
            let image = grid.to_pgm();
            let mut record = Record::new("classify3", &format!("s3={s3}"));
            record
                .set("s1_range", [s1r.0, s1r.1])
                .set("s2_range", [s2r.0, s2r.1])
                .set("counts", &counts)
                .set("cells", grid.populated())
                .set("digest", format!("{:016x}", fnv1a64(image.iter().copied())));
            let mut out = CmdOut::new(record);
            out.text = counts
                .iter()
                .map(|(n, c)| format!("{n}: {c}"))
                .collect::<Vec<_>>()
                .join("\n");
            out.csv = Some((
                vec!["s1", "s2", "s3", "class"],
                grid.cells()
                    .map(|(s1, s2, c)| {
                        vec![s1.to_string(), s2.to_string(), s3.to_string(), format!("{c:?}")]
                    })
                    .collect(),
            ));
            out.image = Some(image);
            out.exit = if grid.count(subgames::PeriodClass::Unknown) > 0 {
                2
            } else {
                0
            };
            Ok(out)
        }
        Cmd::Zhang {
            ruleset,
            modulus,
            residue,
            range,
        } => {
            let rules = one_d(ruleset)?;
            let (lo, hi) = parse_range(range)?;
            let rep = zhang_scan(&rules, *residue, *modulus, lo..=hi, cap)?;
            let mut record = Record::new("zhang", ruleset);
            record
                .set("modulus", modulus)
                .set("residue", residue)
                .set("base_period", rep.base_period)
                .set("threshold", rep.threshold)
                .set("rows", &rep.rows)
                .set("uncertified", &rep.uncertified)
                .set("preperiod_fit", rep.preperiod_fit)
                .set("period_fit", rep.period_fit);
            let mut out = CmdOut::new(record);
            let mut text = String::new();
            for r in &rep.rows {
                writeln!(
                    text,
                    "c={:<6} preperiod={:<8} period={:<8}{}",
                    r.c,
                    r.certificate.preperiod,
                    r.certificate.period,
                    if r.above_threshold { "" } else { " (below threshold)" }
                )
                .unwrap();
            }
            if let (Some(lf), Some(pf)) = (rep.preperiod_fit, rep.period_fit) {
                writeln!(
                    text,
                    "preperiod ~ {:.4} c + {:.4} (max dev above/below threshold {:.3}/{:.3})",
                    lf.slope, lf.intercept, lf.max_dev_above, lf.max_dev_below
                )
                .unwrap();
                writeln!(
                    text,
                    "period    ~ {:.4} c + {:.4} (max dev above/below threshold {:.3}/{:.3})",
                    pf.slope, pf.intercept, pf.max_dev_above, pf.max_dev_below
                )
                .unwrap();
            }
            out.text = text;
            out.csv = Some((
                vec!["c", "preperiod", "period", "certified", "above_threshold"],
                rep.rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.c.to_string(),
                            r.certificate.preperiod.to_string(),
                            r.certificate.period.to_string(),
                            r.certificate.certified.to_string(),
                            r.above_threshold.to_string(),
                        ]
                    })
                    .collect(),
            ));
            out.exit = if rep.uncertified.is_empty() { 0 } else { 2 };
            Ok(out)
        }
        Cmd::Grid2d {
            ruleset,
            width,
            height,
            row,
        } => {
            let Parsed::TwoD(rules) = parse_ruleset(ruleset)? else {
                bail!("grid2d expects move vectors like (2,6),(3,3)");
            };
            let grid = outcomes2d(&rules, *width, *height)?;
            let image = grid.to_pgm();
            let digest = fnv1a64(image.iter().copied());
            let mut record = Record::new("grid2d", ruleset);
            record
                .set("width", width)
                .set("height", height)
                .set("p_count", grid.p_count())
                .set("digest", format!("{digest:016x}"));
            let mut text = format!(
                "{width} x {height} grid, {} P-positions, digest {digest:016x}",
                grid.p_count()
            );
            if let Some(y) = row {
                let cert = line_periodicity(&grid, Line::Row(*y));
                record.set("row", y).set("row_periodicity", cert);
                match cert {
                    Some(c) => {
                        let _ = write!(
                            text,
                            "\nrow {y}: empirical preperiod {} period {}",
                            c.preperiod, c.period
                        );
                    }
                    None => {
                        let _ = write!(text, "\nrow {y}: no empirical period found");
                    }
                }
            }
            let mut out = CmdOut::new(record);
            out.text = text;
            out.image = Some(image);
            Ok(out)
        }
        Cmd::Render {
            ruleset,
            width,
            height,
        } => {
            let Parsed::TwoD(rules) = parse_ruleset(ruleset)? else {
                bail!("render expects move vectors like (2,6),(3,3)");
            };
            let grid = outcomes2d(&rules, *width, *height)?;
            let image = grid.to_pgm();
            let digest = fnv1a64(image.iter().copied());
            let mut record = Record::new("render", ruleset);
            record
                .set("width", width)
                .set("height", height)
                .set("digest", format!("{digest:016x}"));
            let mut out = CmdOut::new(record);
            out.text = format!("rendered {width} x {height}, digest {digest:016x}");
            out.image = Some(image);
            Ok(out)
        }
    }
}

fn join(v: &[u64]) -> String {
    if v.is_empty() {
        "(none)".to_string()
    } else {
        v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }
}

fn tri(v: Option<bool>, none: &str) -> String {
    match v {
        Some(b) => b.to_string(),
        None => none.to_string(),
    }
}
