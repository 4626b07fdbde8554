//! Size checks for the c ≡ 0 (mod Q) balls: exact counts, the X²/Q
//! normalization, and the exact totient-sum lower bound
//! Σ_{1 ≤ e ≤ X/Q} φ(eQ), which every count must dominate.

use anyhow::Result;
use serde_json::json;
use sl2free::int::euler_phi_sieve;
use sl2free::{BallSpec, Norm, SubgroupSpec};

use crate::CheckFailed;

#[derive(Debug, Clone, PartialEq)]
pub struct Gamma0Row {
    pub q: i64,
    pub x: i64,
    pub count: u64,
    pub ratio: f64,
    pub phi_lower_bound: u64,
}

impl Gamma0Row {
    pub const CSV_HEADER: &'static str = "Q,X,count,ratio,phi_lower_bound";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.q,
            self.x,
            self.count,
            crate::output::f6(self.ratio),
            self.phi_lower_bound
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "Q": self.q,
            "X": self.x,
            "count": self.count,
            "ratio": self.ratio,
            "phi_lower_bound": self.phi_lower_bound,
        })
    }
}

/// Σ_{1 ≤ e ≤ x/q} φ(e·q), given a totient table covering index x.
fn phi_sum(phi: &[u64], q: i64, x: i64) -> u64 {
    let (q, x) = (q as usize, x as usize);
    (1..=x / q).map(|e| phi[e * q]).sum()
}

pub fn gamma0_size_check(qs: &[i64], xs: &[i64]) -> Result<Vec<Gamma0Row>> {
    anyhow::ensure!(!qs.is_empty() && !xs.is_empty(), "gamma0: empty Q or X grid");
    let max_x = *xs.iter().max().unwrap();
    anyhow::ensure!(max_x >= 1, "gamma0: X must be positive");
    let phi = euler_phi_sieve(max_x as usize);
    let mut rows = Vec::new();
    for &q in qs {
        for &x in xs {
            anyhow::ensure!(1 <= q && q <= x, "gamma0: need 1 <= Q <= X, got Q={q} X={x}");
            let spec = BallSpec::new(x, SubgroupSpec::gamma0(q)?, Norm::Height, false)?;
            let count = spec.count() as u64;
            let bound = phi_sum(&phi, q, x);
            if count < bound {
                return Err(CheckFailed(format!(
                    "gamma0: count {count} at Q={q}, X={x} is below the totient-sum \
                     lower bound {bound}"
                ))
                .into());
            }
            rows.push(Gamma0Row {
                q,
                x,
                count,
                ratio: count as f64 * q as f64 / (x as f64 * x as f64),
                phi_lower_bound: bound,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_grid_row() {
        let rows = gamma0_size_check(&[1, 5], &[50]).unwrap();
        assert_eq!(rows[0].count, 24_756);
        assert_eq!(rows[1].count, 4_138);
        // Σ_{e<=50} φ(e) and Σ_{e<=10} φ(5e), against a direct sum.
        let phi = euler_phi_sieve(50);
        assert_eq!(rows[0].phi_lower_bound, phi[1..=50].iter().sum::<u64>());
        let by_hand: u64 = [4u64, 4, 8, 8, 20, 8, 24, 16, 24, 20].iter().sum(); // φ(5),φ(10),…,φ(50)
        assert_eq!(rows[1].phi_lower_bound, by_hand);
        for r in &rows {
            assert!(r.count >= r.phi_lower_bound);
        }
    }

    #[test]
    fn degenerate_q_equals_x() {
        // Only the e = 1 term survives: count >= φ(Q) >= 1.
        let rows = gamma0_size_check(&[7], &[7]).unwrap();
        assert_eq!(rows[0].phi_lower_bound, 6);
        assert!(rows[0].count >= 6);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(gamma0_size_check(&[], &[10]).is_err());
        assert!(gamma0_size_check(&[3], &[2]).is_err());
        assert!(gamma0_size_check(&[0], &[5]).is_err());
    }
}
