//! Half-disk geometry and the ping-pong freeness certificate.
//!
//! For A = [a b; c d] with c != 0, the action disk is D(A) = B(a/c, 1/|c|)
//! and D(A^-1) = B(-d/c, 1/|c|): everything outside the closed inverse disk
//! is mapped into the open disk. A pair is "ping pong" when all four closed
//! disks are pairwise disjoint; a tuple whose pairs all are generates a free
//! group — that is the certificate. Failure certifies nothing.
//!
//! Every predicate reduces to an integer comparison by cross-multiplying,
//! so tangent closures (exact equality) are decided, not guessed: tangency
//! fails certification, as the certificate needs a point outside all
//! closures.

use crate::mat2::Mat2;
use crate::rat::{QComplex, Rat};
use alloc::vec::Vec;
use core::fmt;

/// A closed half-disk B(center, radius) on the upper half-plane boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfDisk {
    center: Rat,
    radius: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonPositiveRadius;

impl fmt::Display for NonPositiveRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("half-disk radius must be positive")
    }
}

impl core::error::Error for NonPositiveRadius {}

impl HalfDisk {
    pub fn new(center: Rat, radius: Rat) -> Result<HalfDisk, NonPositiveRadius> {
        if !radius.is_positive() {
            return Err(NonPositiveRadius);
        }
        Ok(HalfDisk { center, radius })
    }

    pub fn center(&self) -> &Rat {
        &self.center
    }

    pub fn radius(&self) -> &Rat {
        &self.radius
    }
}

impl fmt::Display for HalfDisk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({}, {})", self.center, self.radius)
    }
}

/// The matrix has c = 0: its action fixes infinity and it has no disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CZero;

impl fmt::Display for CZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("matrix has c = 0, no action disk")
    }
}

impl core::error::Error for CZero {}

/// D(A) = B(a/c, 1/|c|).
pub fn disk(m: &Mat2) -> Result<HalfDisk, CZero> {
    if m.c().is_zero() {
        return Err(CZero);
    }
    let center = Rat::new(m.a().clone(), m.c().clone()).expect("c != 0");
    let radius = Rat::new(crate::int::Int::ONE, m.c().abs()).expect("c != 0");
    Ok(HalfDisk { center, radius })
}

/// D(A^-1) = B(-d/c, 1/|c|), computed from A directly.
pub fn disk_inv(m: &Mat2) -> Result<HalfDisk, CZero> {
    if m.c().is_zero() {
        return Err(CZero);
    }
    let center = Rat::new(-m.d(), m.c().clone()).expect("c != 0");
    let radius = Rat::new(crate::int::Int::ONE, m.c().abs()).expect("c != 0");
    Ok(HalfDisk { center, radius })
}

/// Whether the closed disks are disjoint: |center1 - center2| > r1 + r2,
/// decided by integer cross-multiplication (tangency is NOT disjoint).
pub fn closed_disjoint(d1: &HalfDisk, d2: &HalfDisk) -> bool {
    // |n1/e1 - n2/e2| > p1/q1 + p2/q2 with all denominators positive
    // <=> |n1 e2 - n2 e1| * q1 q2 > (p1 q2 + p2 q1) * e1 e2.
    let (n1, e1) = (d1.center.num(), d1.center.den());
    let (n2, e2) = (d2.center.num(), d2.center.den());
    let (p1, q1) = (d1.radius.num(), d1.radius.den());
    let (p2, q2) = (d2.radius.num(), d2.radius.den());
    let lhs = (&(n1 * e2) - &(n2 * e1)).abs() * (q1 * q2);
    let rhs = (&(p1 * q2) + &(p2 * q1)) * (e1 * e2);
    lhs > rhs
}

/// |Tr A| > 2. For c != 0 this is exactly "D(A) and D(A^-1) have disjoint
/// closures": the centers are |a + d| / |c| apart and the radii sum to
/// 2 / |c|.
pub fn separated_trace(m: &Mat2) -> bool {
    let two = crate::int::Int::from(2i64);
    m.trace().abs() > two
}

/// Everything the pair predicates need about one matrix, precomputed once.
/// Used by the census loops, where the same matrix enters many pairs.
#[derive(Debug, Clone)]
pub struct DiskProfile {
    pub disk: HalfDisk,
    pub inv_disk: HalfDisk,
    pub trace_separated: bool,
}

impl DiskProfile {
    pub fn new(m: &Mat2) -> Result<DiskProfile, CZero> {
        Ok(DiskProfile {
            disk: disk(m)?,
            inv_disk: disk_inv(m)?,
            trace_separated: separated_trace(m),
        })
    }
}

/// The four cross comparisons of a pair, each true when the closures MEET
/// (i.e. the ping-pong condition fails there). Within-matrix separation is
/// the `trace_separated` flag on each profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairOverlaps {
    /// D(A1) meets D(A2)
    pub dd: bool,
    /// D(A1^-1) meets D(A2^-1)
    pub dinv_dinv: bool,
    /// D(A1) meets D(A2^-1)
    pub d_dinv: bool,
    /// D(A1^-1) meets D(A2)
    pub dinv_d: bool,
}

impl PairOverlaps {
    pub fn any(&self) -> bool {
        self.dd || self.dinv_dinv || self.d_dinv || self.dinv_d
    }

    /// Either mixed comparison (symmetric in the pair).
    pub fn cross(&self) -> bool {
        self.d_dinv || self.dinv_d
    }
}

/// Evaluates all four cross comparisons (no short-circuit; census loops
/// histogram every failure mode).
pub fn pair_overlaps(p1: &DiskProfile, p2: &DiskProfile) -> PairOverlaps {
    PairOverlaps {
        dd: !closed_disjoint(&p1.disk, &p2.disk),
        dinv_dinv: !closed_disjoint(&p1.inv_disk, &p2.inv_disk),
        d_dinv: !closed_disjoint(&p1.disk, &p2.inv_disk),
        dinv_d: !closed_disjoint(&p1.inv_disk, &p2.disk),
    }
}

/// c = 0 on one input of a pair test; carries which one (0 or 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CZeroAt {
    pub index: usize,
}

impl fmt::Display for CZeroAt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matrix {} has c = 0, no action disk", self.index)
    }
}

impl core::error::Error for CZeroAt {}

/// Whether the four closed half-disks of A1, A2 are pairwise disjoint:
/// six exact comparisons (two via traces), short-circuiting.
pub fn is_ping_pong_pair(a1: &Mat2, a2: &Mat2) -> Result<bool, CZeroAt> {
    let p1 = DiskProfile::new(a1).map_err(|_| CZeroAt { index: 0 })?;
    let p2 = DiskProfile::new(a2).map_err(|_| CZeroAt { index: 1 })?;
    Ok(p1.trace_separated
        && p2.trace_separated
        && closed_disjoint(&p1.disk, &p2.disk)
        && closed_disjoint(&p1.disk, &p2.inv_disk)
        && closed_disjoint(&p1.inv_disk, &p2.disk)
        && closed_disjoint(&p1.inv_disk, &p2.inv_disk))
}

/// Which of the four cross-disk comparisons of a pair failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapKind {
    DiskDisk,
    DiskInvDisk,
    InvDiskDisk,
    InvDiskInvDisk,
}

impl OverlapKind {
    pub fn name(&self) -> &'static str {
        match self {
            OverlapKind::DiskDisk => "disk-disk",
            OverlapKind::DiskInvDisk => "disk-invdisk",
            OverlapKind::InvDiskDisk => "invdisk-disk",
            OverlapKind::InvDiskInvDisk => "invdisk-invdisk",
        }
    }
}

/// Outcome of certifying a tuple. `Certified` is a freeness proof; every
/// other verdict is inconclusive about freeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    /// Some matrix has c = 0 (first index).
    CZeroFailure { index: usize },
    /// Some matrix has |Tr| <= 2 (first index, after the c scan).
    TraceFailure { index: usize },
    /// First pair (i < j, scanned lexicographically) with meeting disks,
    /// and which of the four cross comparisons met first
    /// (checked in the order DD, D-Dinv, Dinv-D, Dinv-Dinv).
    PairFailure {
        i: usize,
        j: usize,
        which: OverlapKind,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PingPongReport {
    pub verdict: Verdict,
    /// When certified: the 2s pairwise disjoint closed disks, in tuple
    /// order D(A_0), D(A_0^-1), D(A_1), ... Empty otherwise.
    pub witness: Vec<HalfDisk>,
}

impl PingPongReport {
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptyTuple;

impl fmt::Display for EmptyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("cannot certify an empty tuple")
    }
}

impl core::error::Error for EmptyTuple {}

/// The ping-pong certificate for an s-tuple (s >= 1).
///
/// Scan order is deterministic: first the c = 0 scan, then the trace scan,
/// then pairs (i, j), i < j, lexicographically with the four cross
/// comparisons in the order DD, D-Dinv, Dinv-D, Dinv-Dinv; the first
/// failure is reported.
pub fn certify_tuple(tuple: &[Mat2]) -> Result<PingPongReport, EmptyTuple> {
    if tuple.is_empty() {
        return Err(EmptyTuple);
    }
    for (i, m) in tuple.iter().enumerate() {
        if m.c().is_zero() {
            return Ok(PingPongReport {
                verdict: Verdict::CZeroFailure { index: i },
                witness: Vec::new(),
            });
        }
    }
    let profiles: Vec<DiskProfile> = tuple
        .iter()
        .map(|m| DiskProfile::new(m).expect("c = 0 was scanned out"))
        .collect();
    for (i, p) in profiles.iter().enumerate() {
        if !p.trace_separated {
            return Ok(PingPongReport {
                verdict: Verdict::TraceFailure { index: i },
                witness: Vec::new(),
            });
        }
    }
    for i in 0..profiles.len() {
        for j in i + 1..profiles.len() {
            let (p, q) = (&profiles[i], &profiles[j]);
            let checks = [
                (&p.disk, &q.disk, OverlapKind::DiskDisk),
                (&p.disk, &q.inv_disk, OverlapKind::DiskInvDisk),
                (&p.inv_disk, &q.disk, OverlapKind::InvDiskDisk),
                (&p.inv_disk, &q.inv_disk, OverlapKind::InvDiskInvDisk),
            ];
            for (d1, d2, which) in checks {
                if !closed_disjoint(d1, d2) {
                    return Ok(PingPongReport {
                        verdict: Verdict::PairFailure { i, j, which },
                        witness: Vec::new(),
                    });
                }
            }
        }
    }
    let witness = profiles
        .into_iter()
        .flat_map(|p| [p.disk, p.inv_disk])
        .collect();
    Ok(PingPongReport {
        verdict: Verdict::Certified,
        witness,
    })
}

/// The geometric fact behind the certificate, evaluated at a rational test
/// point: "|cz + d| > 1 implies |Az - a/c| <= 1/|c|". Returns that
/// implication (always true; exists to be property-tested). Requires c != 0
/// and im(z) > 0.
pub fn check_e_to_b(m: &Mat2, z: &QComplex) -> bool {
    assert!(!m.c().is_zero(), "check_e_to_b needs c != 0");
    assert!(z.im().is_positive(), "check_e_to_b needs im(z) > 0");
    let c = Rat::from(m.c().clone());
    let d = Rat::from(m.d().clone());
    // |cz + d|^2 > 1 <=> |z - (-d/c)|^2 > 1/c^2.
    let w = QComplex::new(&(&c * z.re()) + &d, &c * z.im());
    let antecedent = w.norm_sq() > Rat::from_int(1i64);
    if !antecedent {
        return true;
    }
    let image = m.mobius(z);
    let dk = disk(m).expect("c != 0");
    let dist_sq = image.sub_real(dk.center()).norm_sq();
    dist_sq <= dk.radius().square()
}
