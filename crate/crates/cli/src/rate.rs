//! Monte-Carlo estimate of how often uniform s-tuples certify as free, with
//! the failures split honestly: an explicit relation witness proves
//! non-freeness, everything else stays "inconclusive" (the certificate is
//! sufficient, not necessary).

use anyhow::{anyhow, bail, Result};
use rayon::prelude::*;
use serde_json::json;
use sl2free::pingpong::certify_tuple;
use sl2free::words::find_relation;
use sl2free::{BallSpec, Mat2, SampleIndex, SampleSeed};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateReport {
    pub s: u32,
    pub x: i64,
    pub n: u64,
    pub max_word_len: u32,
    pub certified: u64,
    pub relation: u64,
    pub inconclusive: u64,
}

impl RateReport {
    pub const CSV_HEADER: &'static str = "s,X,n,max_word_len,certified,relation,inconclusive,certified_frac,relation_frac,inconclusive_frac";

    pub fn certified_frac(&self) -> f64 {
        self.certified as f64 / self.n as f64
    }

    pub fn relation_frac(&self) -> f64 {
        self.relation as f64 / self.n as f64
    }

    pub fn inconclusive_frac(&self) -> f64 {
        self.inconclusive as f64 / self.n as f64
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.s,
            self.x,
            self.n,
            self.max_word_len,
            self.certified,
            self.relation,
            self.inconclusive,
            crate::output::f6(self.certified_frac()),
            crate::output::f6(self.relation_frac()),
            crate::output::f6(self.inconclusive_frac()),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "s": self.s,
            "X": self.x,
            "n": self.n,
            "max_word_len": self.max_word_len,
            "certified": self.certified,
            "relation": self.relation,
            "inconclusive": self.inconclusive,
            "certified_frac": self.certified_frac(),
            "relation_frac": self.relation_frac(),
            "inconclusive_frac": self.inconclusive_frac(),
        })
    }
}

enum Outcome {
    Certified,
    Relation,
    Inconclusive,
}

fn classify(tuple: &[Mat2], max_word_len: u32) -> Outcome {
    let report = certify_tuple(tuple).expect("tuples are nonempty");
    if report.certified() {
        return Outcome::Certified;
    }
    if find_relation(tuple, max_word_len).witness.is_some() {
        Outcome::Relation
    } else {
        Outcome::Inconclusive
    }
}

pub fn nonfree_rate(s: u32, x: i64, n: u64, max_word_len: u32, seed: u64) -> Result<RateReport> {
    if s == 0 {
        bail!("rate: --s must be at least 1");
    }
    if n == 0 {
        bail!("rate: --samples must be positive");
    }
    let spec = BallSpec::full_height(x)?;
    let index = SampleIndex::build(&spec).map_err(|e| anyhow!("{e}"))?;
    // Draws are sequential on one stream; only the per-tuple classification
    // fans out. That keeps the sample, and hence the report, independent of
    // the worker count.
    let mut rng = SampleSeed::new(seed, 1).rng();
    let tuples: Vec<Vec<Mat2>> = (0..n)
        .map(|_| (0..s).map(|_| index.draw(&mut rng)).collect())
        .collect();
    let (certified, relation, inconclusive) = tuples
        .par_iter()
        .map(|t| match classify(t, max_word_len) {
            Outcome::Certified => (1u64, 0u64, 0u64),
            Outcome::Relation => (0, 1, 0),
            Outcome::Inconclusive => (0, 0, 1),
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    Ok(RateReport {
        s,
        x,
        n,
        max_word_len,
        certified,
        relation,
        inconclusive,
    })
}
