//! Pair censuses over the c ≠ 0 stratum of a congruence ball: for every
//! ordered pair (diagonal included), does the ping-pong test fail, and which
//! of the disk comparisons is to blame? A pair failing several conditions
//! increments every matching counter but `nonpingpong_pairs` once.

use anyhow::{anyhow, bail, Result};
use rayon::prelude::*;
use serde_json::json;
use sl2free::pingpong::DiskProfile;
use sl2free::{BallSpec, Mat2, Norm, SampleIndex, SampleSeed, SubgroupSpec};

pub const EXACT_PAIR_BUDGET: u128 = 10_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub x: i64,
    pub q: i64,
    pub mode: &'static str,
    pub total_pairs: u64,
    pub nonpingpong_pairs: u64,
    pub trace_fail: u64,
    pub overlap_dd: u64,
    pub overlap_dinv_dinv: u64,
    pub overlap_ddinv: u64,
}

impl CensusRow {
    pub const CSV_HEADER: &'static str =
        "X,Q,mode,total_pairs,nonpingpong_pairs,trace_fail,overlap_DD,overlap_DinvDinv,overlap_DDinv";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.x,
            self.q,
            self.mode,
            self.total_pairs,
            self.nonpingpong_pairs,
            self.trace_fail,
            self.overlap_dd,
            self.overlap_dinv_dinv,
            self.overlap_ddinv
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "X": self.x,
            "Q": self.q,
            "mode": self.mode,
            "total_pairs": self.total_pairs,
            "nonpingpong_pairs": self.nonpingpong_pairs,
            "trace_fail": self.trace_fail,
            "overlap_DD": self.overlap_dd,
            "overlap_DinvDinv": self.overlap_dinv_dinv,
            "overlap_DDinv": self.overlap_ddinv,
        })
    }
}

/// Disk data flattened to machine words: center p/q, radius u/v as
/// [p, q, u, v] with q, v > 0. Entries are bounded by the ball radius, so
/// the cross-multiplied comparison below never leaves i128.
#[derive(Clone, Copy)]
struct Packed {
    trace_ok: bool,
    d: [i64; 4],
    di: [i64; 4],
}

fn pack_disk(d: &sl2free::HalfDisk) -> [i64; 4] {
    [
        d.center().num().to_i64().expect("center within ball radius"),
        d.center().den().to_i64().expect("center within ball radius"),
        d.radius().num().to_i64().expect("radius within ball radius"),
        d.radius().den().to_i64().expect("radius within ball radius"),
    ]
}

fn pack(m: &Mat2) -> Packed {
    let prof = DiskProfile::new(m).expect("census stratum has c != 0");
    Packed {
        trace_ok: prof.trace_separated,
        d: pack_disk(&prof.disk),
        di: pack_disk(&prof.inv_disk),
    }
}

/// |p1/q1 - p2/q2| > u1/v1 + u2/v2, cross-multiplied.
fn disjoint(a: &[i64; 4], b: &[i64; 4]) -> bool {
    let [p1, q1, u1, v1] = a.map(i128::from);
    let [p2, q2, u2, v2] = b.map(i128::from);
    (p1 * q2 - p2 * q1).abs() * (v1 * v2) > (u1 * v2 + u2 * v1) * (q1 * q2)
}

#[derive(Default, Clone, Copy)]
struct Tally {
    nonpp: u64,
    trace: u64,
    dd: u64,
    didi: u64,
    cross: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            nonpp: self.nonpp + o.nonpp,
            trace: self.trace + o.trace,
            dd: self.dd + o.dd,
            didi: self.didi + o.didi,
            cross: self.cross + o.cross,
        }
    }

    fn add_pair(&mut self, a: &Packed, b: &Packed, weight: u64) {
        let trace = !(a.trace_ok && b.trace_ok);
        let dd = !disjoint(&a.d, &b.d);
        let didi = !disjoint(&a.di, &b.di);
        let cross = !disjoint(&a.d, &b.di) || !disjoint(&a.di, &b.d);
        if trace {
            self.trace += weight;
        }
        if dd {
            self.dd += weight;
        }
        if didi {
            self.didi += weight;
        }
        if cross {
            self.cross += weight;
        }
        if trace || dd || didi || cross {
            self.nonpp += weight;
        }
    }
}

fn stratum_spec(q: i64, x: i64) -> Result<BallSpec> {
    let sub = SubgroupSpec::gamma0(q)?;
    Ok(BallSpec::new(x, sub, Norm::Height, true)?)
}

pub fn census_exact(q: i64, x: i64) -> Result<CensusRow> {
    let spec = stratum_spec(q, x)?;
    let n = spec.count();
    if n * n > EXACT_PAIR_BUDGET {
        bail!(
            "census: {n}^2 ordered pairs exceeds the exact budget of 10^10; \
             rerun with --mode mc"
        );
    }
    let packed: Vec<Packed> = spec.iter().map(|m| pack(&m)).collect();
    // Every per-pair condition is symmetric in the two slots, so the ordered
    // census is the upper triangle at weight 2 plus the diagonal at weight 1.
    // Summing per-row tallies makes the result independent of thread count.
    let t = (0..packed.len())
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            let a = &packed[i];
            t.add_pair(a, a, 1);
            for b in &packed[i + 1..] {
                t.add_pair(a, b, 2);
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    let n = n as u64;
    Ok(CensusRow {
        x,
        q,
        mode: "exact",
        total_pairs: n * n,
        nonpingpong_pairs: t.nonpp,
        trace_fail: t.trace,
        overlap_dd: t.dd,
        overlap_dinv_dinv: t.didi,
        overlap_ddinv: t.cross,
    })
}

pub fn census_mc(q: i64, x: i64, samples: u64, seed: u64) -> Result<CensusRow> {
    if samples == 0 {
        bail!("census: --samples must be positive in mc mode");
    }
    let spec = stratum_spec(q, x)?;
    let index = SampleIndex::build(&spec).map_err(|e| anyhow!("{e}"))?;
    let mut rng1 = SampleSeed::new(seed, 1).rng();
    let mut rng2 = SampleSeed::new(seed, 2).rng();
    let mut t = Tally::default();
    for _ in 0..samples {
        let a = pack(&index.draw(&mut rng1));
        let b = pack(&index.draw(&mut rng2));
        t.add_pair(&a, &b, 1);
    }
    Ok(CensusRow {
        x,
        q,
        mode: "mc",
        total_pairs: samples,
        nonpingpong_pairs: t.nonpp,
        trace_fail: t.trace,
        overlap_dd: t.dd,
        overlap_dinv_dinv: t.didi,
        overlap_ddinv: t.cross,
    })
}
