//! The half-disk overlap experiment on the operator-norm ball: empirical
//! frequency of |a₁/c₁ − a₂/c₂| ≤ r over uniform pairs, and of |a/c| ≤ 1
//! over uniform singles. The overlap frequency staying bounded away from
//! zero as the radius grows is the point of the experiment.

use anyhow::{anyhow, bail, Result};
use serde_json::json;
use sl2free::{BallSpec, Mat2, Norm, Rat, SampleIndex, SampleSeed, SubgroupSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct FrRow {
    pub x: i64,
    pub r: Rat,
    pub prob_overlap: f64,
    pub prob_ac_le_1: f64,
    pub sample_size: u64,
}

impl FrRow {
    pub const CSV_HEADER: &'static str = "X,r,prob_overlap,prob_ac_le_1,sample_size";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.x,
            self.r,
            crate::output::f6(self.prob_overlap),
            crate::output::f6(self.prob_ac_le_1),
            self.sample_size
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "X": self.x,
            "r": self.r.to_string(),
            "prob_overlap": self.prob_overlap,
            "prob_ac_le_1": self.prob_ac_le_1,
            "sample_size": self.sample_size,
        })
    }
}

fn entries_i128(m: &Mat2) -> (i128, i128) {
    (
        m.a().to_i128().expect("ball entries fit i128"),
        m.c().to_i128().expect("ball entries fit i128"),
    )
}

pub fn fr_disproof(x: i64, r: &Rat, n: u64, seed: u64) -> Result<FrRow> {
    if x < 2 {
        bail!("fr: --X must be at least 2");
    }
    if n < 1000 {
        bail!("fr: --samples must be at least 1000 for a meaningful frequency");
    }
    if !r.is_positive() {
        bail!("fr: --r must be positive");
    }
    let rn = r.num().to_i128().ok_or_else(|| anyhow!("fr: --r too large"))?;
    let rd = r.den().to_i128().ok_or_else(|| anyhow!("fr: --r too large"))?;

    let spec = BallSpec::new(x, SubgroupSpec::full(), Norm::Operator, false)?;
    let index = SampleIndex::build(&spec).map_err(|e| anyhow!("{e}"))?;

    let mut singles = SampleSeed::new(seed, 1).rng();
    let mut ac_hits = 0u64;
    for _ in 0..n {
        let (a, c) = entries_i128(&index.draw(&mut singles));
        if c != 0 && a.abs() <= c.abs() {
            ac_hits += 1;
        }
    }

    let mut left = SampleSeed::new(seed, 2).rng();
    let mut right = SampleSeed::new(seed, 3).rng();
    let mut overlap_hits = 0u64;
    for _ in 0..n {
        let (a1, c1) = entries_i128(&index.draw(&mut left));
        let (a2, c2) = entries_i128(&index.draw(&mut right));
        if c1 == 0 || c2 == 0 {
            continue;
        }
        // |a1/c1 - a2/c2| <= r, cross-multiplied over positive c1*c2*rd.
        if (a1 * c2 - a2 * c1).abs() * rd <= rn * (c1 * c2).abs() {
            overlap_hits += 1;
        }
    }

    Ok(FrRow {
        x,
        r: r.clone(),
        prob_overlap: overlap_hits as f64 / n as f64,
        prob_ac_le_1: ac_hits as f64 / n as f64,
        sample_size: n,
    })
}
