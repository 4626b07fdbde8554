//! The order-3 construction: matrices of trace −1 satisfy A³ = I exactly
//! (they are companion pieces of x² + x + 1), and their count grows linearly
//! with the radius. Padding one with s−1 arbitrary ball elements gives the
//! lower-bound count reported here.

use anyhow::{bail, Result};
use serde_json::json;
use sl2free::{enumerate_fixed_trace, BallSpec, Int};

use crate::CheckFailed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phi3Row {
    pub s: u32,
    pub x: i64,
    pub trace_minus1_count: u64,
    pub total_count: u64,
    pub implied_lower_bound: Int,
}

impl Phi3Row {
    pub const CSV_HEADER: &'static str = "s,X,trace_minus1_count,total_count,implied_lower_bound";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.s, self.x, self.trace_minus1_count, self.total_count, self.implied_lower_bound
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "s": self.s,
            "X": self.x,
            "trace_minus1_count": self.trace_minus1_count,
            "total_count": self.total_count,
            // Exact and possibly wider than u64, so a decimal string.
            "implied_lower_bound": self.implied_lower_bound.to_string(),
        })
    }
}

pub fn phi3_lower_bound(s: u32, x: i64) -> Result<Phi3Row> {
    if s == 0 {
        bail!("phi3: --s must be at least 1");
    }
    let mats = enumerate_fixed_trace(-1, x, 1)?;
    for m in &mats {
        if !m.mul(&m).mul(m).is_identity() {
            return Err(CheckFailed(format!(
                "phi3: trace -1 matrix {m} does not cube to the identity"
            ))
            .into());
        }
    }
    let total = BallSpec::full_height(x)?.count() as u64;
    let implied = &Int::from(mats.len() as u64) * &Int::from(total).pow(s - 1);
    Ok(Phi3Row {
        s,
        x,
        trace_minus1_count: mats.len() as u64,
        total_count: total,
        implied_lower_bound: implied,
    })
}
