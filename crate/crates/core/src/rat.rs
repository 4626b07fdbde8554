//! Exact rationals and rational points of the upper half-plane.
//!
//! `Rat` is always canonical: positive denominator, gcd(num, den) = 1. All
//! comparisons cross-multiply, so ordering two rationals never divides and
//! never rounds. This is what makes disk tangency decidable: two disks at
//! rational centers with rational radii touch exactly when an integer
//! equality holds, and `Rat`'s `Ord` sees that equality.

use crate::int::Int;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: Int,
    den: Int, // > 0, coprime to num
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroDenominator;

impl fmt::Display for ZeroDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("zero denominator")
    }
}

impl core::error::Error for ZeroDenominator {}

impl Rat {
    pub fn new(num: Int, den: Int) -> Result<Rat, ZeroDenominator> {
        if den.is_zero() {
            return Err(ZeroDenominator);
        }
        Ok(Rat::reduced(num, den))
    }

    /// Canonicalize: move the sign to the numerator, divide out the gcd.
    fn reduced(num: Int, den: Int) -> Rat {
        debug_assert!(!den.is_zero());
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        if num.is_zero() {
            return Rat {
                num: Int::ZERO,
                den: Int::ONE,
            };
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Rat { num, den }
        } else {
            Rat {
                num: num.div_exact(&g),
                den: den.div_exact(&g),
            }
        }
    }

    pub fn from_int(n: impl Into<Int>) -> Rat {
        Rat {
            num: n.into(),
            den: Int::ONE,
        }
    }

    pub fn zero() -> Rat {
        Rat::from_int(0i64)
    }

    pub fn num(&self) -> &Int {
        &self.num
    }

    pub fn den(&self) -> &Int {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn square(&self) -> Rat {
        // Already reduced, so no gcd pass is needed.
        Rat {
            num: &self.num * &self.num,
            den: &self.den * &self.den,
        }
    }

    pub fn recip(&self) -> Result<Rat, ZeroDenominator> {
        Rat::new(self.den.clone(), self.num.clone())
    }

    /// Lossy conversion for reporting; never used in a decision.
    pub fn to_f64(&self) -> f64 {
        self.num.to_f64() / self.den.to_f64()
    }
}

impl From<Int> for Rat {
    fn from(n: Int) -> Rat {
        Rat::from_int(n)
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! rat_binop_val {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for Rat {
            type Output = Rat;
            fn $f(self, rhs: Rat) -> Rat {
                $tr::$f(&self, &rhs)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $f(self, rhs: &Rat) -> Rat {
                $tr::$f(&self, rhs)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $f(self, rhs: Rat) -> Rat {
                $tr::$f(self, &rhs)
            }
        }
    )*};
}
rat_binop_val!(Add::add, Sub::sub, Mul::mul);

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseRatError;

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected an integer, p/q, or a decimal literal")
    }
}

impl core::error::Error for ParseRatError {}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `p`, `p/q`, and decimal literals like `2.01` (exactly 201/100).
    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let num: Int = p.trim().parse().map_err(|_| ParseRatError)?;
            let den: Int = q.trim().parse().map_err(|_| ParseRatError)?;
            return Rat::new(num, den).map_err(|_| ParseRatError);
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRatError);
            }
            let negative = whole.starts_with('-');
            let whole: Int = if whole.is_empty() || whole == "-" {
                Int::ZERO
            } else {
                whole.parse().map_err(|_| ParseRatError)?
            };
            let frac_num: Int = frac.parse().map_err(|_| ParseRatError)?;
            let scale = Int::from(10i64).pow(frac.len() as u32);
            let magnitude = &whole.abs() * &scale + &frac_num;
            let num = if negative { -magnitude } else { magnitude };
            return Rat::new(num, scale).map_err(|_| ParseRatError);
        }
        let num: Int = s.parse().map_err(|_| ParseRatError)?;
        Ok(Rat::from_int(num))
    }
}

/// A point x + y*i with rational coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QComplex {
    re: Rat,
    im: Rat,
}

impl QComplex {
    pub fn new(re: Rat, im: Rat) -> QComplex {
        QComplex { re, im }
    }

    /// The base point i of the upper half-plane.
    pub fn i() -> QComplex {
        QComplex {
            re: Rat::zero(),
            im: Rat::from_int(1i64),
        }
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn im(&self) -> &Rat {
        &self.im
    }

    /// Squared modulus |z|^2 = re^2 + im^2, exactly.
    pub fn norm_sq(&self) -> Rat {
        &self.re.square() + &self.im.square()
    }

    /// z - r for real rational r (horizontal translation).
    pub fn sub_real(&self, r: &Rat) -> QComplex {
        QComplex {
            re: &self.re - r,
            im: self.im.clone(),
        }
    }
}

impl fmt::Display for QComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}
