//! Argument parsing and dispatch. Every flag can also be set from the
//! config file (same key as the long flag name); explicit flags and the
//! documented env vars win over the file.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;
use sl2free::pingpong::certify_tuple;
use sl2free::words::find_relation;
use sl2free::{BallSpec, Norm, Rat, SampleIndex, SampleSeed, SubgroupKind, SubgroupSpec, Verdict};
use std::path::PathBuf;

use crate::config::Config;
use crate::manifest::{self, RunInfo};
use crate::output::{csv, json_doc};
use crate::{census, fit, fr, gamma0, matrices, phi3, rate};

#[derive(Parser, Debug)]
#[command(
    name = "sl2free",
    version,
    about = "Exact counting, uniform sampling, ping-pong freeness certificates, \
             and relation search for 2x2 integer matrices of determinant 1"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,

    /// Config file with `key = value` lines; flags override it
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Write primary output here instead of stdout (manifest goes to
    /// <PATH>.manifest.json)
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Emit JSON instead of CSV/text
    #[arg(long, global = true)]
    pub json: bool,

    /// Master seed for all sampling
    #[arg(long, global = true, env = "SL2FREE_SEED")]
    pub seed: Option<u64>,

    /// Worker threads (results are identical for any value)
    #[arg(long, global = true, env = "SL2FREE_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Exact size of a norm ball
    Count {
        #[arg(long = "X")]
        x: Option<i64>,
        /// Comma-separated radii; one CSV row each
        #[arg(long = "X-grid", value_delimiter = ',')]
        x_grid: Option<Vec<i64>>,
        #[arg(long = "Q")]
        q: Option<i64>,
        /// full | gamma0 | gamma1 | gamma
        #[arg(long)]
        subgroup: Option<String>,
        /// height | op
        #[arg(long)]
        norm: Option<String>,
        /// Restrict to the c != 0 stratum
        #[arg(long = "c-nonzero")]
        c_nonzero: bool,
    },
    /// Uniform draws from a norm ball, one "a b c d" line each
    Sample {
        #[arg(long = "X")]
        x: Option<i64>,
        #[arg(long = "Q")]
        q: Option<i64>,
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long)]
        norm: Option<String>,
        #[arg(long = "c-nonzero")]
        c_nonzero: bool,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Ping-pong freeness certificate for a matrix tuple (file or stdin)
    Certify {
        /// Matrix list, one "a b c d" per line; "-" or absent reads stdin
        file: Option<PathBuf>,
    },
    /// Search for a relation witness over a matrix tuple (file or stdin)
    Relate {
        file: Option<PathBuf>,
        #[arg(long = "max-len")]
        max_len: Option<u32>,
    },
    /// Ordered-pair census of ping-pong failures on the c != 0 stratum
    Census {
        #[arg(long = "X")]
        x: Option<i64>,
        #[arg(long = "X-grid", value_delimiter = ',')]
        x_grid: Option<Vec<i64>>,
        #[arg(long = "Q")]
        q: Option<i64>,
        /// exact | mc
        #[arg(long)]
        mode: Option<String>,
        /// Pair draws in mc mode
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Certified / relation / inconclusive frequencies over uniform s-tuples
    Rate {
        #[arg(long)]
        s: Option<u32>,
        #[arg(long = "X")]
        x: Option<i64>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long = "max-word-len")]
        max_word_len: Option<u32>,
    },
    /// Half-disk overlap frequencies on the operator-norm ball
    Fr {
        #[arg(long = "X")]
        x: Option<i64>,
        #[arg(long = "X-grid", value_delimiter = ',')]
        x_grid: Option<Vec<i64>>,
        /// Overlap radius, e.g. "1/2" or "2.01"
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Congruence-ball sizes against the exact totient-sum lower bound
    Gamma0 {
        #[arg(long = "Q")]
        q: Option<i64>,
        #[arg(long = "Q-grid", value_delimiter = ',')]
        q_grid: Option<Vec<i64>>,
        #[arg(long = "X")]
        x: Option<i64>,
        #[arg(long = "X-grid", value_delimiter = ',')]
        x_grid: Option<Vec<i64>>,
    },
    /// Trace −1 (order 3) counts and the tuple lower bound they imply
    Phi3 {
        #[arg(long)]
        s: Option<u32>,
        #[arg(long = "X")]
        x: Option<i64>,
        #[arg(long = "X-grid", value_delimiter = ',')]
        x_grid: Option<Vec<i64>>,
    },
    /// Least-squares exponent of log y vs log x over CSV columns
    Fit {
        /// CSV with a header row; "-" or absent reads stdin
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long = "x-col")]
        x_col: Option<String>,
        #[arg(long = "y-col")]
        y_col: Option<String>,
    },
}

pub fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let seed: u64 = config.resolve(cli.seed, "seed", 0)?;
    let threads: Option<usize> = config.resolve_opt(cli.threads, "threads")?;
    if let Some(t) = threads {
        anyhow::ensure!(t >= 1, "--threads must be at least 1");
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("initializing the thread pool")?;
    }
    let json = config.resolve_switch(cli.json, "json")?;
    let out: Option<PathBuf> = match cli.out {
        Some(p) => Some(p),
        None => config.resolve_opt(None, "out")?,
    };

    let primary = dispatch(&cli.cmd, &config, seed, json)?;

    manifest::emit(
        &RunInfo {
            seed,
            threads: threads.unwrap_or_else(rayon::current_num_threads),
            out,
            config: config.snapshot().clone(),
        },
        &primary,
    )
}

fn parse_subgroup(cfg: &Config, kind: Option<String>, q: Option<i64>) -> Result<SubgroupSpec> {
    let kind = cfg.resolve(kind, "subgroup", "gamma0".to_string())?;
    let q = cfg.resolve(q, "Q", 1)?;
    let kind = match kind.as_str() {
        "full" => SubgroupKind::Full,
        "gamma0" => SubgroupKind::Gamma0,
        "gamma1" => SubgroupKind::Gamma1,
        "gamma" => SubgroupKind::Gamma,
        other => bail!("unknown subgroup {other:?} (expected full, gamma0, gamma1, gamma)"),
    };
    Ok(SubgroupSpec::new(kind, q)?)
}

fn parse_norm(cfg: &Config, norm: Option<String>) -> Result<Norm> {
    let norm = cfg.resolve(norm, "norm", "height".to_string())?;
    match norm.as_str() {
        "height" => Ok(Norm::Height),
        "op" => Ok(Norm::Operator),
        other => bail!("unknown norm {other:?} (expected height or op)"),
    }
}

/// --X-grid, falling back to the single --X.
fn resolve_xs(cfg: &Config, x: Option<i64>, x_grid: Option<Vec<i64>>) -> Result<Vec<i64>> {
    match cfg.resolve_grid(x_grid, "X-grid")? {
        Some(g) if !g.is_empty() => Ok(g),
        _ => Ok(vec![cfg.resolve_required(x, "X")?]),
    }
}

fn dispatch(cmd: &Cmd, cfg: &Config, seed: u64, json: bool) -> Result<String> {
    match cmd {
        Cmd::Count {
            x,
            x_grid,
            q,
            subgroup,
            norm,
            c_nonzero,
        } => {
            let xs = resolve_xs(cfg, *x, x_grid.clone())?;
            let sub = parse_subgroup(cfg, subgroup.clone(), *q)?;
            let norm = parse_norm(cfg, norm.clone())?;
            let c_nonzero = cfg.resolve_switch(*c_nonzero, "c-nonzero")?;
            let mut rows = Vec::new();
            let mut objects = Vec::new();
            for &x in &xs {
                let spec = BallSpec::new(x, sub.clone(), norm, c_nonzero)?;
                let count = spec.count();
                rows.push(format!(
                    "{},{},{},{},{},{}",
                    x,
                    sub.modulus(),
                    sub.kind_name(),
                    norm.name(),
                    c_nonzero,
                    count
                ));
                objects.push(json!({
                    "X": x,
                    "Q": sub.modulus(),
                    "subgroup": sub.kind_name(),
                    "norm": norm.name(),
                    "c_nonzero": c_nonzero,
                    "count": count as u64,
                }));
            }
            Ok(if json {
                json_doc(&json!({ "rows": objects }))
            } else {
                csv("X,Q,subgroup,norm,c_nonzero,count", &rows)
            })
        }

        Cmd::Sample {
            x,
            q,
            subgroup,
            norm,
            c_nonzero,
            samples,
        } => {
            let x = cfg.resolve_required(*x, "X")?;
            let sub = parse_subgroup(cfg, subgroup.clone(), *q)?;
            let norm = parse_norm(cfg, norm.clone())?;
            let c_nonzero = cfg.resolve_switch(*c_nonzero, "c-nonzero")?;
            let n = cfg.resolve(*samples, "samples", 10u64)?;
            let spec = BallSpec::new(x, sub, norm, c_nonzero)?;
            let index = SampleIndex::build(&spec).map_err(|e| anyhow!("{e}"))?;
            let mats = index.sample(n as usize, &SampleSeed::new(seed, 1));
            Ok(if json {
                let arr: Vec<_> = mats
                    .iter()
                    .map(|m| {
                        json!([
                            m.a().to_i64().unwrap(),
                            m.b().to_i64().unwrap(),
                            m.c().to_i64().unwrap(),
                            m.d().to_i64().unwrap()
                        ])
                    })
                    .collect();
                json_doc(&json!({ "matrices": arr }))
            } else {
                let mut s = String::new();
                for m in &mats {
                    s.push_str(&m.to_string());
                    s.push('\n');
                }
                s
            })
        }

        Cmd::Certify { file } => {
            let tuple = matrices::read_matrices(file.as_deref())?;
            let report = certify_tuple(&tuple)?;
            Ok(if json {
                let v = match &report.verdict {
                    Verdict::Certified => {
                        let witness: Vec<_> = report
                            .witness
                            .iter()
                            .map(|d| {
                                json!({
                                    "center": d.center().to_string(),
                                    "radius": d.radius().to_string(),
                                })
                            })
                            .collect();
                        json!({ "verdict": "certified", "witness": witness })
                    }
                    Verdict::CZeroFailure { index } => {
                        json!({ "verdict": "czero-failure", "index": index })
                    }
                    Verdict::TraceFailure { index } => {
                        json!({ "verdict": "trace-failure", "index": index })
                    }
                    Verdict::PairFailure { i, j, which } => json!({
                        "verdict": "pair-failure",
                        "i": i,
                        "j": j,
                        "overlap": which.name(),
                    }),
                };
                json_doc(&v)
            } else {
                let mut s = String::new();
                match &report.verdict {
                    Verdict::Certified => {
                        s.push_str("verdict: certified\n");
                        for d in &report.witness {
                            s.push_str(&format!("disk: {d}\n"));
                        }
                    }
                    Verdict::CZeroFailure { index } => {
                        s.push_str(&format!("verdict: czero-failure at index {index}\n"));
                    }
                    Verdict::TraceFailure { index } => {
                        s.push_str(&format!("verdict: trace-failure at index {index}\n"));
                    }
                    Verdict::PairFailure { i, j, which } => {
                        s.push_str(&format!(
                            "verdict: pair-failure at ({i}, {j}): {}\n",
                            which.name()
                        ));
                    }
                }
                s
            })
        }

        Cmd::Relate { file, max_len } => {
            let tuple = matrices::read_matrices(file.as_deref())?;
            let max_len = cfg.resolve(*max_len, "max-len", 12)?;
            let report = find_relation(&tuple, max_len);
            let word = report.witness.as_ref().map(|w| w.word.to_string());
            Ok(if json {
                json_doc(&json!({
                    "found": word.is_some(),
                    "word": word,
                    "checked_words": report.checked_words,
                    "max_len": report.max_len,
                }))
            } else {
                let mut s = String::new();
                match &word {
                    Some(w) => s.push_str(&format!("found: {w}\n")),
                    None => s.push_str(&format!("found: none (up to length {})\n", report.max_len)),
                }
                s.push_str(&format!("checked_words: {}\n", report.checked_words));
                s
            })
        }

        Cmd::Census {
            x,
            x_grid,
            q,
            mode,
            samples,
        } => {
            let xs = resolve_xs(cfg, *x, x_grid.clone())?;
            let q = cfg.resolve(*q, "Q", 1)?;
            let mode = cfg.resolve(mode.clone(), "mode", "exact".to_string())?;
            let mut rows = Vec::new();
            for &x in &xs {
                let row = match mode.as_str() {
                    "exact" => census::census_exact(q, x)?,
                    "mc" => {
                        let n = cfg.resolve(*samples, "samples", 100_000u64)?;
                        census::census_mc(q, x, n, seed)?
                    }
                    other => bail!("unknown mode {other:?} (expected exact or mc)"),
                };
                rows.push(row);
            }
            Ok(render_rows(
                json,
                census::CensusRow::CSV_HEADER,
                &rows,
                census::CensusRow::csv_row,
                census::CensusRow::to_json,
            ))
        }

        Cmd::Rate {
            s,
            x,
            samples,
            max_word_len,
        } => {
            let s = cfg.resolve(*s, "s", 2)?;
            let x = cfg.resolve_required(*x, "X")?;
            let n = cfg.resolve(*samples, "samples", 10_000u64)?;
            let l = cfg.resolve(*max_word_len, "max-word-len", 12)?;
            let rows = vec![rate::nonfree_rate(s, x, n, l, seed)?];
            Ok(render_rows(
                json,
                rate::RateReport::CSV_HEADER,
                &rows,
                rate::RateReport::csv_row,
                rate::RateReport::to_json,
            ))
        }

        Cmd::Fr {
            x,
            x_grid,
            r,
            samples,
        } => {
            let xs = resolve_xs(cfg, *x, x_grid.clone())?;
            let r: Rat = cfg
                .resolve(r.clone(), "r", "1/2".to_string())?
                .parse()
                .map_err(|e| anyhow!("--r: {e}"))?;
            let n = cfg.resolve(*samples, "samples", 100_000u64)?;
            let rows = xs
                .iter()
                .map(|&x| fr::fr_disproof(x, &r, n, seed))
                .collect::<Result<Vec<_>>>()?;
            Ok(render_rows(
                json,
                fr::FrRow::CSV_HEADER,
                &rows,
                fr::FrRow::csv_row,
                fr::FrRow::to_json,
            ))
        }

        Cmd::Gamma0 {
            q,
            q_grid,
            x,
            x_grid,
        } => {
            let xs = resolve_xs(cfg, *x, x_grid.clone())?;
            let qs = match cfg.resolve_grid(q_grid.clone(), "Q-grid")? {
                Some(g) if !g.is_empty() => g,
                _ => vec![cfg.resolve(*q, "Q", 1)?],
            };
            let rows = gamma0::gamma0_size_check(&qs, &xs)?;
            Ok(render_rows(
                json,
                gamma0::Gamma0Row::CSV_HEADER,
                &rows,
                gamma0::Gamma0Row::csv_row,
                gamma0::Gamma0Row::to_json,
            ))
        }

        Cmd::Phi3 { s, x, x_grid } => {
            let s = cfg.resolve(*s, "s", 2)?;
            let xs = resolve_xs(cfg, *x, x_grid.clone())?;
            let rows = xs
                .iter()
                .map(|&x| phi3::phi3_lower_bound(s, x))
                .collect::<Result<Vec<_>>>()?;
            Ok(render_rows(
                json,
                phi3::Phi3Row::CSV_HEADER,
                &rows,
                phi3::Phi3Row::csv_row,
                phi3::Phi3Row::to_json,
            ))
        }

        Cmd::Fit { input, x_col, y_col } => {
            let x_col = cfg.resolve(x_col.clone(), "x-col", "X".to_string())?;
            let y_col = cfg.resolve_required(y_col.clone(), "y-col")?;
            let text = match input.as_deref() {
                Some(p) if p != std::path::Path::new("-") => std::fs::read_to_string(p)
                    .with_context(|| format!("reading {}", p.display()))?,
                _ => {
                    use std::io::Read;
                    let mut buf = String::new();
                    std::io::stdin().read_to_string(&mut buf)?;
                    buf
                }
            };
            let points = fit::read_xy_csv(&text, &x_col, &y_col)?;
            let rows = vec![fit::fit_exponent(&points)?];
            Ok(render_rows(
                json,
                fit::FitResult::CSV_HEADER,
                &rows,
                fit::FitResult::csv_row,
                fit::FitResult::to_json,
            ))
        }
    }
}

fn render_rows<T>(
    json: bool,
    header: &str,
    rows: &[T],
    to_csv: impl Fn(&T) -> String,
    to_json: impl Fn(&T) -> serde_json::Value,
) -> String {
    if json {
        let objects: Vec<_> = rows.iter().map(to_json).collect();
        json_doc(&json!({ "rows": objects }))
    } else {
        let lines: Vec<String> = rows.iter().map(to_csv).collect();
        csv(header, &lines)
    }
}
