//! Stratified enumeration of norm balls in SL(2,Z) and its congruence
//! subgroups, without materializing anything.
//!
//! A ball splits into the c = 0 block (a = d = +-1, b free) and, for each
//! pair (c != 0, a) with gcd(a, |c|) = 1, an arithmetic progression: d runs
//! over d0 + k|c| (d0 the inverse of a mod |c|) and b = (ad - 1)/c is then
//! forced, moving in lockstep b0 + k * a * sgn(c). Every constraint used here
//! — entry bounds, the congruences of Gamma_1/Gamma, the operator-norm bound
//! — cuts each progression to a contiguous run or a coarser progression, so
//! a stratum is four integers plus a length. Counting is summing lengths;
//! enumeration and O(1) unranking read elements straight off the formula.
//!
//! The operator-norm cut uses convexity: the squared Frobenius norm is a
//! convex quadratic in k, so the feasible set along any progression is an
//! interval, found by a vertex probe plus binary search at the two ends.

use crate::int::{gcd_i64, mod_inverse};
use crate::mat2::{Mat2, SubgroupKind, SubgroupSpec};
use alloc::vec::Vec;
use core::fmt;

/// Hard cap on ball radii. Keeps every intermediate in the stratum builder
/// (products like |c| * step and the convexity probe) inside i128 with a
/// wide margin; desk-scale experiments sit orders of magnitude below it.
pub const MAX_RADIUS: i64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    /// Largest entry in absolute value.
    Height,
    /// Spectral norm, decided exactly via the Frobenius identity.
    Operator,
}

impl Norm {
    pub fn name(&self) -> &'static str {
        match self {
            Norm::Height => "height",
            Norm::Operator => "op",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    RadiusOutOfRange { x: i64 },
    ModulusExceedsRadius { q: i64, x: i64 },
    BadModulus { q: i64 },
    BadCBound { y: i64, x: i64 },
    /// Sampling was requested from a spec that contains no matrices.
    EmptySet,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::RadiusOutOfRange { x } => {
                write!(f, "radius must be in [1, {MAX_RADIUS}], got {x}")
            }
            SpecError::ModulusExceedsRadius { q, x } => {
                write!(f, "modulus {q} exceeds radius {x}: the ball misses the subgroup")
            }
            SpecError::BadModulus { q } => write!(f, "modulus must be >= 1, got {q}"),
            SpecError::BadCBound { y, x } => {
                write!(f, "c-bound must satisfy 1 <= Y <= X, got Y = {y}, X = {x}")
            }
            SpecError::EmptySet => f.write_str("the spec selects no matrices"),
        }
    }
}

impl core::error::Error for SpecError {}

/// A validated ball description: radius, subgroup, norm, and whether the
/// c = 0 block is excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BallSpec {
    x: i64,
    subgroup: SubgroupSpec,
    norm: Norm,
    c_nonzero: bool,
}

impl BallSpec {
    pub fn new(
        x: i64,
        subgroup: SubgroupSpec,
        norm: Norm,
        c_nonzero: bool,
    ) -> Result<BallSpec, SpecError> {
        if !(1..=MAX_RADIUS).contains(&x) {
            return Err(SpecError::RadiusOutOfRange { x });
        }
        if subgroup.modulus() > x {
            return Err(SpecError::ModulusExceedsRadius {
                q: subgroup.modulus(),
                x,
            });
        }
        Ok(BallSpec {
            x,
            subgroup,
            norm,
            c_nonzero,
        })
    }

    /// The full group, naive height, c = 0 included.
    pub fn full_height(x: i64) -> Result<BallSpec, SpecError> {
        BallSpec::new(x, SubgroupSpec::full(), Norm::Height, false)
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn subgroup(&self) -> &SubgroupSpec {
        &self.subgroup
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn c_nonzero(&self) -> bool {
        self.c_nonzero
    }

    /// Exact cardinality, by summing stratum lengths.
    pub fn count(&self) -> u128 {
        self.strata(self.x).map(|s| s.count() as u128).sum()
    }

    /// Matrices in canonical order: the c = 0 block (a = d = -1 then +1,
    /// b ascending), then c ascending, a ascending, d ascending.
    pub fn iter(&self) -> BallIter<'_> {
        BallIter {
            strata: self.strata(self.x),
            cur: None,
        }
    }

    pub(crate) fn strata(&self, c_cap: i64) -> StrataIter<'_> {
        StrataIter {
            spec: self,
            c_cap: c_cap.min(self.x),
            state: State::CZero { e: -1 },
        }
    }

    /// max F = a^2+b^2+c^2+d^2 allowed by the operator ball, or None for
    /// height. sigma <= x iff F <= x^2 + x^-2 iff F <= floor((x^4+1)/x^2).
    fn frobenius_cap(&self) -> Option<i128> {
        match self.norm {
            Norm::Height => None,
            Norm::Operator => {
                let x = self.x as i128;
                Some((x * x * x * x + 1) / (x * x))
            }
        }
    }
}

/// One arithmetic-progression stratum of a ball.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Stratum {
    /// a = d = e, c = 0, b = b_first + i * b_step.
    CZero {
        e: i64,
        b_first: i64,
        b_step: i64,
        count: u64,
    },
    /// Fixed (c, a); d = d_first + i * d_step, b = (a d - 1) / c.
    CNonZero {
        c: i64,
        a: i64,
        d_first: i64,
        d_step: i64,
        count: u64,
    },
}

impl Stratum {
    pub(crate) fn count(&self) -> u64 {
        match self {
            Stratum::CZero { count, .. } | Stratum::CNonZero { count, .. } => *count,
        }
    }

    /// Row-major entries of the idx-th element (0-based, idx < count).
    pub(crate) fn entries(&self, idx: u64) -> (i64, i64, i64, i64) {
        match self {
            Stratum::CZero {
                e, b_first, b_step, count,
            } => {
                debug_assert!(idx < *count);
                (*e, b_first + idx as i64 * b_step, 0, *e)
            }
            Stratum::CNonZero {
                c, a, d_first, d_step, count,
            } => {
                debug_assert!(idx < *count);
                let d = *d_first as i128 + idx as i128 * *d_step as i128;
                let b = (*a as i128 * d - 1) / *c as i128;
                (*a, b as i64, *c, d as i64)
            }
        }
    }

    pub(crate) fn matrix(&self, idx: u64) -> Mat2 {
        let (a, b, c, d) = self.entries(idx);
        Mat2::from_i64(a, b, c, d).expect("stratum elements are unimodular by construction")
    }
}

enum State {
    CZero { e: i64 },
    NonZero { t: i64, a: i64 },
    Done,
}

/// Streams strata in canonical order; O(log) work per (c, a) cell, no
/// allocation. `c_cap` restricts to |c| <= c_cap (counting by c-bound).
pub(crate) struct StrataIter<'s> {
    spec: &'s BallSpec,
    c_cap: i64,
    state: State,
}

impl Iterator for StrataIter<'_> {
    type Item = Stratum;

    fn next(&mut self) -> Option<Stratum> {
        let q = self.spec.subgroup.modulus();
        let tmax = self.c_cap / q; // c = t * q, t in [-tmax, tmax] \ {0}
        loop {
            match self.state {
                State::CZero { e } => {
                    self.state = if e == -1 {
                        State::CZero { e: 1 }
                    } else {
                        State::NonZero { t: -tmax, a: -self.spec.x }
                    };
                    if self.spec.c_nonzero {
                        continue;
                    }
                    if let Some(s) = czero_stratum(self.spec, e) {
                        return Some(s);
                    }
                }
                State::NonZero { t, a } => {
                    if t > tmax {
                        self.state = State::Done;
                        return None;
                    }
                    let (mut nt, mut na) = (t, a + 1);
                    if na > self.spec.x {
                        nt = if t == -1 { 1 } else { t + 1 };
                        na = -self.spec.x;
                    }
                    self.state = State::NonZero { t: nt, a: na };
                    if t == 0 {
                        // unreachable by construction (t skips 0), guard anyway
                        continue;
                    }
                    if let Some(s) = nonzero_stratum(self.spec, t * q, a) {
                        return Some(s);
                    }
                }
                State::Done => return None,
            }
        }
    }
}

/// The c = 0 block for one sign e: matrices [e b; 0 e].
fn czero_stratum(spec: &BallSpec, e: i64) -> Option<Stratum> {
    let q = spec.subgroup.modulus();
    match spec.subgroup.kind() {
        SubgroupKind::Full | SubgroupKind::Gamma0 => {}
        SubgroupKind::Gamma1 | SubgroupKind::Gamma => {
            if (e - 1).rem_euclid(q) != 0 {
                return None;
            }
        }
    }
    let mut bmax = spec.x;
    if let Some(fmax) = spec.frobenius_cap() {
        // F = 2 + b^2 here.
        let cap = fmax - 2;
        debug_assert!(cap >= 0);
        bmax = bmax.min((cap as u128).isqrt() as i64);
    }
    Some(if spec.subgroup.kind() == SubgroupKind::Gamma {
        let t = bmax / q;
        Stratum::CZero {
            e,
            b_first: -t * q,
            b_step: q,
            count: (2 * t + 1) as u64,
        }
    } else {
        Stratum::CZero {
            e,
            b_first: -bmax,
            b_step: 1,
            count: (2 * bmax + 1) as u64,
        }
    })
}

/// The stratum at fixed (c != 0, a), or None when empty.
fn nonzero_stratum(spec: &BallSpec, c: i64, a: i64) -> Option<Stratum> {
    debug_assert!(c != 0 && c % spec.subgroup.modulus() == 0);
    let x = spec.x;
    let q = spec.subgroup.modulus();
    let m = c.abs();
    let kind = spec.subgroup.kind();

    if matches!(kind, SubgroupKind::Gamma1 | SubgroupKind::Gamma)
        && (a - 1).rem_euclid(q) != 0
    {
        return None;
    }
    let d0 = mod_inverse(a, m)?;
    // d = d0 (mod m) and q | m, so d mod q is already decided here.
    if matches!(kind, SubgroupKind::Gamma1 | SubgroupKind::Gamma)
        && (d0 - 1).rem_euclid(q) != 0
    {
        return None;
    }

    // b moves in lockstep with d: d = d0 + k m, b = b0 + k * beta.
    let b0 = (a as i128 * d0 as i128 - 1) / c as i128;
    let beta = (a * c.signum()) as i128;

    // Height clamps |d| <= x, |b| <= x; both ranges are intervals in k.
    let (mut klo, mut khi) = (i128::MIN, i128::MAX);
    if !clamp_linear(&mut klo, &mut khi, d0 as i128, m as i128, -(x as i128), x as i128) {
        return None;
    }
    if !clamp_linear(&mut klo, &mut khi, b0, beta, -(x as i128), x as i128) {
        return None;
    }
    if klo > khi {
        return None;
    }

    // Gamma's b = 0 (mod q) thins k to a progression of step q / gcd.
    let (mut kfirst, step, mut cnt) = if kind == SubgroupKind::Gamma {
        progression_mod(b0, beta, q, klo, khi)?
    } else {
        (klo, 1, (khi - klo + 1) as u128)
    };

    // Operator norm: convex in k, so it cuts the progression to an interval.
    if let Some(fmax) = spec.frobenius_cap() {
        let fixed = (a as i128) * (a as i128) + (c as i128) * (c as i128);
        let u0 = d0 as i128 + kfirst * m as i128;
        let u1 = m as i128 * step;
        let v0 = b0 + kfirst * beta;
        let v1 = beta * step;
        let (jfirst, jcnt) = convex_interval(fixed, u0, u1, v0, v1, cnt, fmax)?;
        // The step along k is unchanged; only the window moved.
        kfirst += jfirst * step;
        cnt = jcnt;
    }

    debug_assert!(cnt > 0);
    Some(Stratum::CNonZero {
        c,
        a,
        d_first: (d0 as i128 + kfirst * m as i128) as i64,
        d_step: m
            .checked_mul(i64::try_from(step).expect("step fits i64"))
            .expect("d_step fits i64 under MAX_RADIUS"),
        count: u64::try_from(cnt).expect("stratum length fits u64"),
    })
}

/// Intersect [klo, khi] with { k : lo <= v0 + k * step <= hi }.
/// Returns false when the intersection is empty.
fn clamp_linear(klo: &mut i128, khi: &mut i128, v0: i128, step: i128, lo: i128, hi: i128) -> bool {
    if step == 0 {
        return lo <= v0 && v0 <= hi;
    }
    let (a, b) = if step > 0 {
        (div_ceil(lo - v0, step), div_floor(hi - v0, step))
    } else {
        (div_ceil(hi - v0, step), div_floor(lo - v0, step))
    };
    *klo = (*klo).max(a);
    *khi = (*khi).min(b);
    *klo <= *khi
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Thin { klo..=khi } to { k : b0 + k * beta = 0 (mod q) }, returned as
/// (first k, step, length) or None when no k qualifies.
fn progression_mod(b0: i128, beta: i128, q: i64, klo: i128, khi: i128) -> Option<(i128, i128, u128)> {
    let qq = q as i128;
    if q == 1 {
        return Some((klo, 1, (khi - klo + 1) as u128));
    }
    let bet = beta.rem_euclid(qq);
    let r = (-b0).rem_euclid(qq); // want bet * k = r (mod q)
    if bet == 0 {
        return if r == 0 {
            Some((klo, 1, (khi - klo + 1) as u128))
        } else {
            None
        };
    }
    let g = gcd_i64(bet as i64, q) as i128;
    if r % g != 0 {
        return None;
    }
    let q2 = qq / g;
    let inv = mod_inverse((bet / g) as i64, q2 as i64).expect("coprime after dividing out gcd") as i128;
    let k0 = (r / g % q2) * inv % q2;
    let kfirst = klo + (k0 - klo).rem_euclid(q2);
    if kfirst > khi {
        return None;
    }
    Some((kfirst, q2, ((khi - kfirst) / q2 + 1) as u128))
}

/// Feasible window of j in [0, cnt) for
/// fixed + (u0 + j u1)^2 + (v0 + j v1)^2 <= fmax, with u1 > 0.
/// The quadratic is strictly convex, so the window is an interval: probe the
/// integer(s) nearest the real vertex, then binary-search both edges.
fn convex_interval(
    fixed: i128,
    u0: i128,
    u1: i128,
    v0: i128,
    v1: i128,
    cnt: u128,
    fmax: i128,
) -> Option<(i128, u128)> {
    debug_assert!(u1 > 0 && cnt > 0);
    let last = (cnt - 1) as i128;
    let g = |j: i128| -> i128 {
        let u = u0 + j * u1;
        let v = v0 + j * v1;
        fixed + u * u + v * v
    };
    let feasible = |j: i128| g(j) <= fmax;

    // Integer argmin of a strictly convex quadratic: floor(vertex) or the
    // next integer, clamped into range.
    let denom = u1 * u1 + v1 * v1;
    let jv = div_floor(-(u0 * u1 + v0 * v1), denom);
    let mut probe = None;
    for j in [jv.clamp(0, last), (jv + 1).clamp(0, last)] {
        if feasible(j) {
            probe = Some(j);
            break;
        }
    }
    let probe = probe?;

    // First feasible j in [0, probe]: feasibility is F..FT..T there because
    // the feasible set is an interval containing probe.
    let (mut lo, mut hi) = (0, probe);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let jlo = lo;

    // Last feasible j in [probe, last]: T..TF..F.
    let (mut lo, mut hi) = (probe, last);
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let jhi = lo;

    Some((jlo, (jhi - jlo + 1) as u128))
}

/// Lazy iterator over the matrices of a ball, in canonical order.
pub struct BallIter<'s> {
    strata: StrataIter<'s>,
    cur: Option<(Stratum, u64)>,
}

impl Iterator for BallIter<'_> {
    type Item = Mat2;

    fn next(&mut self) -> Option<Mat2> {
        loop {
            if let Some((stratum, pos)) = &mut self.cur {
                if *pos < stratum.count() {
                    let m = stratum.matrix(*pos);
                    *pos += 1;
                    return Some(m);
                }
                self.cur = None;
            }
            self.cur = Some((self.strata.next()?, 0));
        }
    }
}

/// Matrices in Gamma_0(Q; X) with 0 < |c| <= Y, counted exactly.
/// Y below Q selects nothing (the stratum is empty, not an error);
/// Y outside [1, X] is a domain error.
pub fn count_c_bounded(q: i64, x: i64, y: i64) -> Result<u128, SpecError> {
    let sub = SubgroupSpec::gamma0(q).map_err(|e| SpecError::BadModulus { q: e.q })?;
    let spec = BallSpec::new(x, sub, Norm::Height, true)?;
    if !(1..=x).contains(&y) {
        return Err(SpecError::BadCBound { y, x });
    }
    Ok(spec.strata(y).map(|s| s.count() as u128).sum())
}

/// Number of matrices in Gamma_0(Q; X) (naive height, c = 0 included) with
/// trace exactly `t`.
pub fn count_fixed_trace(t: i64, x: i64, q: i64) -> Result<u128, SpecError> {
    fixed_trace(t, x, q, |_| {}).map(|n| n as u128)
}

/// The matrices behind [`count_fixed_trace`], materialized. Order: the c = 0
/// block first, then |c| ascending (negative sign first), a ascending.
pub fn enumerate_fixed_trace(t: i64, x: i64, q: i64) -> Result<Vec<Mat2>, SpecError> {
    let mut out = Vec::new();
    fixed_trace(t, x, q, |m| out.push(m))?;
    Ok(out)
}

fn fixed_trace(
    t: i64,
    x: i64,
    q: i64,
    mut emit: impl FnMut(Mat2),
) -> Result<u64, SpecError> {
    if !(1..=MAX_RADIUS).contains(&x) {
        return Err(SpecError::RadiusOutOfRange { x });
    }
    if q < 1 {
        return Err(SpecError::BadModulus { q });
    }
    let mut total = 0u64;
    // c = 0 forces a = d = +-1, so only traces +-2 meet the block; b is free.
    if t == 2 || t == -2 {
        let e = t / 2;
        for b in -x..=x {
            emit(Mat2::from_i64(e, b, 0, e).expect("unimodular by construction"));
        }
        total += (2 * x + 1) as u64;
    }
    let mut c = q;
    while c <= x {
        let alo = (-x).max(t - x);
        let ahi = x.min(t + x);
        for a in alo..=ahi {
            let d = t - a;
            let ad1 = a as i128 * d as i128 - 1;
            if ad1.rem_euclid(c as i128) != 0 {
                continue;
            }
            let b = ad1 / c as i128;
            if b.unsigned_abs() <= x as u128 {
                // (a, b, c, d) and its mirror (a, -b, -c, d) both qualify.
                emit(Mat2::from_i64(a, -(b as i64), -c, d).expect("unimodular"));
                emit(Mat2::from_i64(a, b as i64, c, d).expect("unimodular"));
                total += 2;
            }
        }
        c += q;
    }
    Ok(total)
}
