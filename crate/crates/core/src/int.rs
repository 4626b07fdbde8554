//! Exact integers with an `i128` fast path.
//!
//! Every decision predicate in this crate bottoms out in integer comparisons,
//! so the integer type has to be exact and cheap at the same time. `Int`
//! keeps values inline as `i128` while they fit and promotes to a heap
//! [`BigInt`] only on overflow. The promotion is one-way per value but
//! results of big-path operations are renormalized, so `Big` never holds a
//! value that would fit in an `i128`. That invariant makes derived equality
//! and the mixed-variant ordering below correct.
//!
//! Word products over SL(2,Z;X) genuinely need the big path: a product of
//! twelve generators of height 10^3 can reach ~4*10^39, past `i128::MAX`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i128),
    Big(BigInt),
}

use Int::{Big, Small};

impl Int {
    pub const ZERO: Int = Small(0);
    pub const ONE: Int = Small(1);

    /// Renormalize a `BigInt` into the canonical representation.
    fn from_bigint(b: BigInt) -> Int {
        match b.to_i128() {
            Some(v) => Small(v),
            None => Big(b),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Small(v) => BigInt::from(*v),
            Big(b) => b.clone(),
        }
    }

    pub fn to_i128(&self) -> Option<i128> {
        match self {
            Small(v) => Some(*v),
            Big(_) => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Small(v) => i64::try_from(*v).ok(),
            Big(_) => None,
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        match self {
            Small(v) => u128::try_from(*v).ok(),
            Big(b) => b.to_u128(),
        }
    }

    /// Lossy conversion for reporting; never used in a decision.
    pub fn to_f64(&self) -> f64 {
        match self {
            Small(v) => *v as f64,
            Big(b) => b.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Small(v) => *v < 0,
            Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Small(v) => *v > 0,
            Big(b) => b.is_positive(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Small(v) => v.signum() as i32,
            Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Small(v) => match v.checked_abs() {
                Some(a) => Small(a),
                None => Big(BigInt::from(*v).abs()),
            },
            Big(b) => Int::from_bigint(b.abs()),
        }
    }

    pub fn pow(&self, exp: u32) -> Int {
        let mut acc = Int::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Small(a), Small(b)) => Small(gcd_i128(*a, *b)),
            _ => Int::from_bigint(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    /// Least non-negative residue; `m` must be positive.
    pub fn rem_euclid(&self, m: &Int) -> Int {
        debug_assert!(m.is_positive(), "modulus must be positive");
        match (self, m) {
            (Small(a), Small(mm)) => Small(a.rem_euclid(*mm)),
            _ => Int::from_bigint(self.to_bigint().mod_floor(&m.to_bigint())),
        }
    }

    /// Exact division; the caller guarantees `d` divides `self`.
    pub fn div_exact(&self, d: &Int) -> Int {
        debug_assert!(!d.is_zero());
        match (self, d) {
            (Small(a), Small(b)) => {
                debug_assert_eq!(a % b, 0, "div_exact with remainder");
                Small(a / b)
            }
            _ => {
                let (q, r) = self.to_bigint().div_rem(&d.to_bigint());
                debug_assert!(r == BigInt::from(0), "div_exact with remainder");
                Int::from_bigint(q)
            }
        }
    }
}

/// gcd on i128 without overflow traps: |i128::MIN| escapes to u128.
fn gcd_i128(a: i128, b: i128) -> i128 {
    let mut x = a.unsigned_abs();
    let mut y = b.unsigned_abs();
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    // x <= max(|a|,|b|) <= 2^127 only when an operand is i128::MIN and the
    // other is 0 or i128::MIN; callers never hit that, but stay total anyway.
    i128::try_from(x).unwrap_or(i128::MAX)
}

impl Default for Int {
    fn default() -> Int {
        Int::ZERO
    }
}

macro_rules! int_from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Int {
            fn from(v: $t) -> Int {
                Small(v as i128)
            }
        }
    )*};
}
int_from_prim!(i8, i16, i32, i64, i128, u8, u16, u32, u64);

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_bigint(b)
    }
}

impl Add for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Small(a), Small(b)) => match a.checked_add(*b) {
                Some(v) => Small(v),
                None => Int::from_bigint(BigInt::from(*a) + BigInt::from(*b)),
            },
            _ => Int::from_bigint(self.to_bigint() + rhs.to_bigint()),
        }
    }
}

impl Sub for &Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Small(a), Small(b)) => match a.checked_sub(*b) {
                Some(v) => Small(v),
                None => Int::from_bigint(BigInt::from(*a) - BigInt::from(*b)),
            },
            _ => Int::from_bigint(self.to_bigint() - rhs.to_bigint()),
        }
    }
}

impl Mul for &Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Small(a), Small(b)) => match a.checked_mul(*b) {
                Some(v) => Small(v),
                None => Int::from_bigint(BigInt::from(*a) * BigInt::from(*b)),
            },
            _ => Int::from_bigint(self.to_bigint() * rhs.to_bigint()),
        }
    }
}

macro_rules! int_binop_val {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for Int {
            type Output = Int;
            fn $f(self, rhs: Int) -> Int {
                $tr::$f(&self, &rhs)
            }
        }
        impl $tr<&Int> for Int {
            type Output = Int;
            fn $f(self, rhs: &Int) -> Int {
                $tr::$f(&self, rhs)
            }
        }
        impl $tr<Int> for &Int {
            type Output = Int;
            fn $f(self, rhs: Int) -> Int {
                $tr::$f(self, &rhs)
            }
        }
    )*};
}
int_binop_val!(Add::add, Sub::sub, Mul::mul);

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Small(v) => match v.checked_neg() {
                Some(n) => Small(n),
                None => Int::from_bigint(-BigInt::from(*v)),
            },
            Big(b) => Int::from_bigint(-b.clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Small(a), Small(b)) => a.cmp(b),
            (Big(a), Big(b)) => a.cmp(b),
            // Big is outside i128 range by invariant, so its sign decides.
            (Big(a), Small(_)) => {
                if a.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Small(_), Big(b)) => {
                if b.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Small(v) => write!(f, "{v}"),
            Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseIntError;

impl fmt::Display for ParseIntError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid integer literal")
    }
}

impl core::error::Error for ParseIntError {}

impl FromStr for Int {
    type Err = ParseIntError;
    fn from_str(s: &str) -> Result<Int, ParseIntError> {
        match s.parse::<i128>() {
            Ok(v) => Ok(Small(v)),
            Err(_) => BigInt::from_str(s)
                .map(Int::from_bigint)
                .map_err(|_| ParseIntError),
        }
    }
}

/// Errors from the arithmetic functions below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    /// Argument must be nonzero.
    ZeroArgument,
    /// Argument must be positive.
    NonPositive,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::ZeroArgument => f.write_str("argument must be nonzero"),
            ArithError::NonPositive => f.write_str("argument must be positive"),
        }
    }
}

impl core::error::Error for ArithError {}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let mut x = a.unsigned_abs();
    let mut y = b.unsigned_abs();
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    i64::try_from(x).expect("gcd overflows only for i64::MIN inputs")
}

/// Inverse of `a` modulo `m` (m >= 1), in `[0, m)`. `None` when gcd(a,m) > 1.
/// m = 1 returns 0: every residue is congruent to 1 mod 1.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    debug_assert!(m >= 1);
    if m == 1 {
        return Some(0);
    }
    // Extended Euclid on (a mod m, m); coefficients stay below m in absolute
    // value so i64 is safe for any m.
    let a = a.rem_euclid(m);
    let (mut r0, mut r1) = (a, m);
    let (mut t0, mut t1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m))
}

/// Factor a positive `u128` by trial division, yielding (prime, exponent).
fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u128, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e = 0;
    while n % 2 == 0 {
        n /= 2;
        e += 1;
    }
    push(2, e);
    let mut p: u128 = 3;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        push(p, e);
        p += 2;
    }
    if n > 1 {
        push(n, 1);
    }
    out
}

/// Number of positive divisors of `|k|`; `k = 0` is a domain error.
pub fn divisor_count(k: &Int) -> Result<Int, ArithError> {
    if k.is_zero() {
        return Err(ArithError::ZeroArgument);
    }
    let n = k
        .abs()
        .to_u128()
        .expect("divisor_count argument exceeds u128; not reachable at this crate's scales");
    let tau: u128 = factorize(n).iter().map(|&(_, e)| (e as u128) + 1).product();
    Ok(Int::from(tau as i128))
}

/// Euler's totient of `k >= 1`; smaller arguments are a domain error.
pub fn euler_phi(k: &Int) -> Result<Int, ArithError> {
    if !k.is_positive() {
        return Err(ArithError::NonPositive);
    }
    let n = k
        .to_u128()
        .expect("euler_phi argument exceeds u128; not reachable at this crate's scales");
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    Ok(Int::from(phi as i128))
}

/// phi(k) for all k in [0, n] via a linear sieve; `phi[0]` is 0.
pub fn euler_phi_sieve(n: usize) -> Vec<u64> {
    let mut phi = vec![0u64; n + 1];
    if n >= 1 {
        phi[1] = 1;
    }
    let mut primes: Vec<usize> = Vec::new();
    let mut mpf = vec![0usize; n + 1]; // minimal prime factor
    for i in 2..=n {
        if mpf[i] == 0 {
            mpf[i] = i;
            primes.push(i);
            phi[i] = (i - 1) as u64;
        }
        for &p in &primes {
            let ip = i.checked_mul(p);
            match ip {
                Some(ip) if ip <= n && p <= mpf[i] => {
                    mpf[ip] = p;
                    phi[ip] = if i % p == 0 {
                        phi[i] * p as u64
                    } else {
                        phi[i] * (p - 1) as u64
                    };
                }
                _ => break,
            }
        }
    }
    phi
}
