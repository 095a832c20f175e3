//! The `um` command line tool.

pub mod format;
pub mod gen;

use std::io::Write;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use um_core::consensus::GwpmMatcher;
use um_core::knapsack::{brute_force, solve, solve_k};
use um_core::profile::ProfileMatcher;
use um_core::reference::{naive_gwpm, naive_profile_match, naive_wpm};
use um_core::weighted::WpmMatcher;
use um_core::{knapsack_to_wc, weighted_consensus, Algo, Alphabet, Letter, ProbThreshold, ScoreThreshold};

use crate::format::{parse_mck, parse_profile, parse_pwm, parse_text};
use crate::gen::GenArgs;

#[derive(Debug, Parser)]
#[command(name = "um", version, about = "Exact matching on weighted sequences and scoring profiles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// auto, naive, mim, k=<int> or sdwc.
    #[arg(long, global = true, default_value = "auto")]
    pub algo: Algo,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Worker threads for window scans.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Report elapsed time on stderr.
    #[arg(long, global = true)]
    pub time: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    JsonLines,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Windows of a text scoring at least Z against a profile.
    Pm {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        text: PathBuf,
        #[arg(long = "Z", allow_hyphen_values = true)]
        score: i64,
    },
    /// Occurrences of a plain pattern in a weighted text.
    Wpm {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        text: PathBuf,
        /// Threshold z as a decimal or 2^<int>.
        #[arg(long, value_parser = parse_z)]
        z: ProbThreshold,
    },
    /// A string matching two weighted sequences, or a knapsack instance
    /// rewritten as such a pair.
    Consensus {
        #[arg(long, requires_all = ["y", "z"], conflicts_with = "mck")]
        x: Option<PathBuf>,
        #[arg(long, requires = "x")]
        y: Option<PathBuf>,
        #[arg(long, value_parser = parse_z)]
        z: Option<ProbThreshold>,
        #[arg(long, required_unless_present = "x")]
        mck: Option<PathBuf>,
        /// Complete each row to probability one with two filler letters.
        #[arg(long, requires = "mck")]
        normalize: bool,
    },
    /// Windows of a weighted text sharing a consensus with a weighted pattern.
    Gwpm {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        text: PathBuf,
        #[arg(long, value_parser = parse_z)]
        z: ProbThreshold,
        /// Print a consensus string next to each position.
        #[arg(long)]
        witness: bool,
    },
    /// Multichoice knapsack feasibility.
    Knapsack {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Random instance file.
    Gen {
        #[command(flatten)]
        args: GenArgs,
        /// Output path; stdout by default.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit status of a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Found,
    NotFound,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Found => 0,
            Outcome::NotFound => 1,
        }
    }
}

fn parse_z(s: &str) -> std::result::Result<ProbThreshold, um_core::Error> {
    ProbThreshold::parse(s)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn with_file<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// Runs `work` over windows `1..=windows` split into `jobs` contiguous
/// chunks; results come back in window order.
fn chunked<R: Send>(
    windows: usize,
    jobs: usize,
    work: impl Fn(Range<usize>) -> Result<Vec<R>> + Sync,
) -> Result<Vec<R>> {
    let jobs = jobs.clamp(1, windows.max(1));
    if jobs == 1 {
        return work(1..windows + 1);
    }
    let size = windows.div_ceil(jobs);
    let parts: Vec<Result<Vec<R>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|t| {
                let lo = 1 + t * size;
                let hi = (lo + size).min(windows + 1);
                let work = &work;
                s.spawn(move || if lo < hi { work(lo..hi) } else { Ok(Vec::new()) })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

struct Printer<'a> {
    out: &'a mut dyn Write,
    format: OutputFormat,
}

impl Printer<'_> {
    fn position(&mut self, p: usize, witness: Option<&str>) -> Result<()> {
        match (self.format, witness) {
            (OutputFormat::Text, None) => writeln!(self.out, "{p}")?,
            (OutputFormat::Text, Some(w)) => writeln!(self.out, "{p}\t{w}")?,
            (OutputFormat::JsonLines, None) => writeln!(self.out, "{}", json!({ "position": p }))?,
            (OutputFormat::JsonLines, Some(w)) => writeln!(self.out, "{}", json!({ "position": p, "witness": w }))?,
        }
        Ok(())
    }

    fn consensus(&mut self, s: Option<&str>) -> Result<Outcome> {
        match self.format {
            OutputFormat::Text => writeln!(self.out, "{}", s.unwrap_or("NONE"))?,
            OutputFormat::JsonLines => writeln!(self.out, "{}", json!({ "witness": s }))?,
        }
        Ok(if s.is_some() { Outcome::Found } else { Outcome::NotFound })
    }

    fn knapsack(&mut self, picks: Option<&[usize]>) -> Result<Outcome> {
        match (self.format, picks) {
            (OutputFormat::Text, None) => writeln!(self.out, "NO")?,
            (OutputFormat::Text, Some(picks)) => {
                writeln!(self.out, "YES")?;
                for (i, j) in picks.iter().enumerate() {
                    writeln!(self.out, "{} {}", i + 1, j + 1)?;
                }
            }
            (OutputFormat::JsonLines, _) => {
                let picks: Option<Vec<usize>> = picks.map(|p| p.iter().map(|j| j + 1).collect());
                writeln!(self.out, "{}", json!({ "feasible": picks.is_some(), "picks": picks }))?
            }
        }
        Ok(if picks.is_some() { Outcome::Found } else { Outcome::NotFound })
    }
}

fn decode(alphabet: &Alphabet, s: &[Letter]) -> String {
    alphabet.decode(s)
}

/// Executes one command, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let started = Instant::now();
    let mut pr = Printer { out, format: cli.format };
    let outcome = match &cli.command {
        Command::Pm { profile, text, score } => {
            let p = with_file(profile, parse_profile)?;
            let t = with_file(text, |s| parse_text(s, p.alphabet()))?;
            let z = ScoreThreshold(*score);
            let found = if cli.algo == Algo::Naive {
                naive_profile_match(&p, &t, z)
            } else {
                let matcher = ProfileMatcher::new(&p, &t)?;
                chunked(matcher.windows(), cli.jobs, |r| Ok(matcher.scan(z, Some(r)).occurrences))?
            };
            for pos in found {
                pr.position(pos, None)?;
            }
            Outcome::Found
        }
        Command::Wpm { pattern, text, z } => {
            let t = with_file(text, parse_pwm)?;
            let p = with_file(pattern, |s| parse_text(s, t.alphabet()))?;
            let found = if cli.algo == Algo::Naive {
                naive_wpm(&p, &t, z)
            } else {
                let matcher = WpmMatcher::new(&p, &t)?;
                chunked(matcher.windows(), cli.jobs, |r| {
                    Ok(matcher.scan(z, Some(r)).into_iter().map(|(pos, _)| pos).collect())
                })?
            };
            for pos in found {
                pr.position(pos, None)?;
            }
            Outcome::Found
        }
        Command::Consensus { x, y, z, mck, normalize } => {
            let (xs, ys, z) = match (x, y, z, mck) {
                (Some(x), Some(y), Some(z), None) => (with_file(x, parse_pwm)?, with_file(y, parse_pwm)?, *z),
                (None, None, _, Some(m)) => {
                    let inst = with_file(m, parse_mck)?;
                    let wc = knapsack_to_wc(&inst, *normalize)?;
                    (wc.x, wc.y, wc.z)
                }
                _ => bail!("give either --x, --y and --z, or --mck"),
            };
            if xs.alphabet() != ys.alphabet() {
                bail!("--x and --y use different alphabets");
            }
            let found = weighted_consensus(&xs, &ys, &z, cli.algo)?;
            pr.consensus(found.as_deref().map(|s| decode(xs.alphabet(), s)).as_deref())?
        }
        Command::Gwpm { pattern, text, z, witness } => {
            let p = with_file(pattern, parse_pwm)?;
            let t = with_file(text, parse_pwm)?;
            let found: Vec<(usize, Vec<Letter>)> = if cli.algo == Algo::Naive {
                naive_gwpm(&p, &t, z)?
            } else {
                let matcher = GwpmMatcher::new(&p, &t, z)?;
                let ws = chunked(matcher.windows(), cli.jobs, |r| Ok(matcher.scan(Some(r), cli.algo)?))?;
                let res = matcher.finish(ws);
                res.occurrences
                    .iter()
                    .map(|&pos| Ok((pos, um_core::gwpm_witness(&res, pos)?)))
                    .collect::<Result<_>>()?
            };
            for (pos, s) in found {
                let w = witness.then(|| decode(t.alphabet(), &s));
                pr.position(pos, w.as_deref())?;
            }
            Outcome::Found
        }
        Command::Knapsack { instance } => {
            let inst = with_file(instance, parse_mck)?;
            let choice = match cli.algo {
                Algo::Auto | Algo::Mim => solve(&inst),
                Algo::K(k) => solve_k(&inst, k)?,
                Algo::Naive => brute_force(&inst)?,
                Algo::Sdwc => bail!("--algo sdwc applies to consensus and gwpm only"),
            };
            pr.knapsack(choice.as_ref().map(|c| c.picks.as_slice()))?
        }
        Command::Gen { args, out } => {
            let content = gen::generate(args)?;
            match out {
                Some(path) => {
                    std::fs::write(path, content).with_context(|| format!("cannot write {}", path.display()))?
                }
                None => pr.out.write_all(content.as_bytes())?,
            }
            Outcome::Found
        }
    };
    if cli.time {
        eprintln!("elapsed_ms\t{:.3}", started.elapsed().as_secs_f64() * 1e3);
    }
    Ok(outcome)
}
