//! Benchmark sweeps over planted instances.
//!
//! A suite spec is a comma-separated list of `key=values` entries with keys
//! `n` (root vertices), `p` (root edge probability), `r` (noise edges), and
//! `k` (budget). Integer values accept `a..b` inclusive ranges with an
//! optional `:step`, `x|y|z` lists, or single values; `p` accepts lists and
//! single values. Missing keys fall back to `n=20, p=0.3, r=1, k=2`. The
//! sweep is the cross product in `n, p, r, k` order; instance `i` uses seed
//! `base + i`.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use lgk_core::{kernelize, planted_instance, GenSpec, KernelOutcome};
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct Sweep {
    pub n: Vec<usize>,
    pub p: Vec<f64>,
    pub r: Vec<usize>,
    pub k: Vec<usize>,
}

pub fn parse_suite(spec: &str) -> Result<Sweep> {
    let mut sweep = Sweep {
        n: vec![20],
        p: vec![0.3],
        r: vec![1],
        k: vec![2],
    };
    for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let (key, values) = part
            .split_once('=')
            .with_context(|| format!("expected key=values in {part:?}"))?;
        match key.trim() {
            "n" => sweep.n = parse_ints(values)?,
            "p" => sweep.p = parse_floats(values)?,
            "r" => sweep.r = parse_ints(values)?,
            "k" => sweep.k = parse_ints(values)?,
            other => bail!("unknown sweep key {other:?} (expected n, p, r, k)"),
        }
    }
    Ok(sweep)
}

/// `a..b[:step]` inclusive range (`a > b` is empty), `x|y|z` list, or a
/// single value.
fn parse_ints(values: &str) -> Result<Vec<usize>> {
    let values = values.trim();
    if let Some((lo, rest)) = values.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (hi, step.trim().parse::<usize>().context("range step")?),
            None => (rest, 1),
        };
        if step == 0 {
            bail!("range step must be positive");
        }
        let a = lo.trim().parse::<usize>().context("range start")?;
        let b = hi.trim().parse::<usize>().context("range end")?;
        if a > b {
            return Ok(Vec::new());
        }
        return Ok((a..=b).step_by(step).collect());
    }
    values
        .split('|')
        .map(|v| v.trim().parse::<usize>().context("integer value"))
        .collect()
}

fn parse_floats(values: &str) -> Result<Vec<f64>> {
    values
        .trim()
        .split('|')
        .map(|v| {
            let p: f64 = v.trim().parse().context("probability value")?;
            if !(0.0..=1.0).contains(&p) {
                bail!("probability {p} outside [0, 1]");
            }
            Ok(p)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub idx: usize,
    pub spec: GenSpec,
    pub k: usize,
    pub outcome: KernelOutcome,
}

/// Runs the sweep, kernelizing each planted instance. Work is parallel up
/// to the `LGK_THREADS` cap; rows come back in instance order.
pub fn run_sweep(sweep: &Sweep, base_seed: u64) -> Result<Vec<BenchRow>> {
    let mut jobs: Vec<(usize, GenSpec, usize)> = Vec::new();
    for &n in &sweep.n {
        for &p in &sweep.p {
            for &r in &sweep.r {
                for &k in &sweep.k {
                    let idx = jobs.len();
                    let spec = GenSpec {
                        n,
                        p,
                        r,
                        seed: base_seed.wrapping_add(idx as u64),
                    };
                    jobs.push((idx, spec, k));
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_cap())
        .build()
        .context("building bench thread pool")?;
    pool.install(|| {
        jobs.par_iter()
            .map(|(idx, spec, k)| {
                let (g, _) = planted_instance(spec)
                    .with_context(|| format!("generating instance {idx} ({spec:?})"))?;
                let outcome =
                    kernelize(&g, *k).with_context(|| format!("kernelizing instance {idx}"))?;
                Ok(BenchRow {
                    idx: *idx,
                    spec: spec.clone(),
                    k: *k,
                    outcome,
                })
            })
            .collect()
    })
}

fn thread_cap() -> usize {
    std::env::var("LGK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
}

pub const CSV_HEADER: &str = "idx,seed,root_n,p,r,k,n,m,s_size,l1,l2,l3,l4,kernel_n,bound,\
kernel_m,verdict,modulator_ms,witness_ms,levels_ms,rr1_ms,rr2_ms,rr3_ms,total_ms";

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let s = &row.outcome.stats;
        let t = &row.outcome.timings;
        let level = |d: usize| s.levels.get(d).copied().unwrap_or(0);
        let total = t.modulator_ms + t.witness_ms + t.levels_ms + t.rr1_ms + t.rr2_ms + t.rr3_ms;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:.3},{:.3},{:.3},{:.3},{:.3},{:.3},{:.3}",
            row.idx,
            row.spec.seed,
            row.spec.n,
            row.spec.p,
            row.spec.r,
            row.k,
            s.n,
            s.m,
            s.s_size,
            level(0),
            level(1),
            level(2),
            level(3),
            s.kernel_n,
            s.bound,
            s.kernel_m,
            s.verdict,
            t.modulator_ms,
            t.witness_ms,
            t.levels_ms,
            t.rr1_ms,
            t.rr2_ms,
            t.rr3_ms,
            total,
        );
    }
    out
}
