//! 2x2 integer matrices of determinant one.
//!
//! `Mat2` can only be constructed with determinant exactly 1, so inverses
//! stay integral ([a b; c d]^-1 = [d -b; -c a]) and every product stays in
//! the group. Entries are [`Int`], so word products may grow past machine
//! range without losing exactness.

use crate::int::Int;
use crate::rat::{QComplex, Rat};
use alloc::string::String;
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: Int,
    b: Int,
    c: Int,
    d: Int,
}

/// Determinant was not 1; carries the offending determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotUnimodular {
    pub det: Int,
}

impl fmt::Display for NotUnimodular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not unimodular: det = {}", self.det)
    }
}

impl core::error::Error for NotUnimodular {}

impl Mat2 {
    pub fn new(a: Int, b: Int, c: Int, d: Int) -> Result<Mat2, NotUnimodular> {
        let det = &(&a * &d) - &(&b * &c);
        if !det.is_one() {
            return Err(NotUnimodular { det });
        }
        Ok(Mat2 { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Mat2, NotUnimodular> {
        Mat2::new(Int::from(a), Int::from(b), Int::from(c), Int::from(d))
    }

    pub fn identity() -> Mat2 {
        Mat2 {
            a: Int::ONE,
            b: Int::ZERO,
            c: Int::ZERO,
            d: Int::ONE,
        }
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    pub fn b(&self) -> &Int {
        &self.b
    }

    pub fn c(&self) -> &Int {
        &self.c
    }

    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// Naive height: the largest entry in absolute value.
    pub fn height(&self) -> Int {
        let mut h = self.a.abs();
        for e in [&self.b, &self.c, &self.d] {
            let v = e.abs();
            if v > h {
                h = v;
            }
        }
        h
    }

    pub fn trace(&self) -> Int {
        &self.a + &self.d
    }

    /// Sum of squared entries. For determinant one this equals
    /// sigma^2 + sigma^-2 where sigma is the larger singular value.
    pub fn frobenius_sq(&self) -> Int {
        let mut s = Int::ZERO;
        for e in [&self.a, &self.b, &self.c, &self.d] {
            s = &s + &(e * e);
        }
        s
    }

    /// Whether the operator (spectral) norm is at most `x`, decided exactly.
    ///
    /// With F = frobenius_sq and determinant 1, the singular values satisfy
    /// sigma^2 + sigma^-2 = F, so sigma <= x iff F <= x^2 + x^-2, i.e. iff
    /// F * x^2 <= x^4 + 1 over the integers. Requires `x >= 1`.
    pub fn in_op_ball(&self, x: i64) -> bool {
        assert!(x >= 1, "operator ball radius must be >= 1");
        let x = Int::from(x);
        let x2 = &x * &x;
        &self.frobenius_sq() * &x2 <= &(&x2 * &x2) + &Int::ONE
    }

    pub fn inverse(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        // det is multiplicative, so the product is unimodular by construction.
        Mat2 {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        }
    }

    pub fn member(&self, g: &SubgroupSpec) -> bool {
        let q = Int::from(g.modulus());
        let cong = |v: &Int, r: i64| (v - &Int::from(r)).rem_euclid(&q).is_zero();
        match g.kind() {
            SubgroupKind::Full => true,
            SubgroupKind::Gamma0 => cong(&self.c, 0),
            SubgroupKind::Gamma1 => cong(&self.c, 0) && cong(&self.a, 1) && cong(&self.d, 1),
            SubgroupKind::Gamma => {
                cong(&self.c, 0) && cong(&self.a, 1) && cong(&self.d, 1) && cong(&self.b, 0)
            }
        }
    }

    /// Exact Moebius action z -> (az + b) / (cz + d) on the upper half-plane.
    ///
    /// Writing cz + d = p + qi, the image has imaginary part y / (p^2 + q^2)
    /// (the determinant-one identity), strictly positive whenever im z > 0,
    /// so the action never leaves the half-plane and never divides by zero.
    pub fn mobius(&self, z: &QComplex) -> QComplex {
        debug_assert!(z.im().is_positive(), "mobius input must be above the real axis");
        let (x, y) = (z.re(), z.im());
        let a = Rat::from(self.a.clone());
        let b = Rat::from(self.b.clone());
        let c = Rat::from(self.c.clone());
        let d = Rat::from(self.d.clone());
        let u = &(&a * x) + &b; // re(az + b)
        let v = &a * y; //          im(az + b)
        let p = &(&c * x) + &d; // re(cz + d)
        let q = &c * y; //          im(cz + d)
        let n = &p.square() + &q.square();
        let ninv = n.recip().expect("cz+d = 0 off the real axis");
        let re = &(&(&u * &p) + &(&v * &q)) * &ninv;
        let im = y * &ninv;
        QComplex::new(re, im)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::mul(self, rhs)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseMatrixError {
    /// The line did not contain exactly four integers.
    Syntax(String),
    NotUnimodular(Int),
}

impl fmt::Display for ParseMatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseMatrixError::Syntax(line) => {
                write!(f, "expected four integers `a b c d`, got {line:?}")
            }
            ParseMatrixError::NotUnimodular(det) => write!(f, "not unimodular: det = {det}"),
        }
    }
}

impl core::error::Error for ParseMatrixError {}

impl FromStr for Mat2 {
    type Err = ParseMatrixError;

    /// Parses the row-major form `a b c d` (any whitespace between entries).
    fn from_str(s: &str) -> Result<Mat2, ParseMatrixError> {
        let mut it = s.split_whitespace();
        let mut next = || -> Result<Int, ParseMatrixError> {
            it.next()
                .ok_or_else(|| ParseMatrixError::Syntax(String::from(s)))?
                .parse()
                .map_err(|_| ParseMatrixError::Syntax(String::from(s)))
        };
        let (a, b, c, d) = (next()?, next()?, next()?, next()?);
        if it.next().is_some() {
            return Err(ParseMatrixError::Syntax(String::from(s)));
        }
        Mat2::new(a, b, c, d).map_err(|e| ParseMatrixError::NotUnimodular(e.det))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupKind {
    Full,
    Gamma0,
    Gamma1,
    Gamma,
}

/// A congruence subgroup selector: the full group, or Gamma_0(Q) (c = 0 mod
/// Q), Gamma_1(Q) (c = 0, a = d = 1 mod Q), Gamma(Q) (b = 0 mod Q as well).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubgroupSpec {
    kind: SubgroupKind,
    q: i64, // >= 1; Full is normalized to q = 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BadModulus {
    pub q: i64,
}

impl fmt::Display for BadModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "modulus must be >= 1, got {}", self.q)
    }
}

impl core::error::Error for BadModulus {}

impl SubgroupSpec {
    pub fn full() -> SubgroupSpec {
        SubgroupSpec {
            kind: SubgroupKind::Full,
            q: 1,
        }
    }

    pub fn new(kind: SubgroupKind, q: i64) -> Result<SubgroupSpec, BadModulus> {
        if q < 1 {
            return Err(BadModulus { q });
        }
        let q = match kind {
            SubgroupKind::Full => 1,
            _ => q,
        };
        Ok(SubgroupSpec { kind, q })
    }

    pub fn gamma0(q: i64) -> Result<SubgroupSpec, BadModulus> {
        SubgroupSpec::new(SubgroupKind::Gamma0, q)
    }

    pub fn gamma1(q: i64) -> Result<SubgroupSpec, BadModulus> {
        SubgroupSpec::new(SubgroupKind::Gamma1, q)
    }

    pub fn gamma(q: i64) -> Result<SubgroupSpec, BadModulus> {
        SubgroupSpec::new(SubgroupKind::Gamma, q)
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    pub fn modulus(&self) -> i64 {
        self.q
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            SubgroupKind::Full => "full",
            SubgroupKind::Gamma0 => "gamma0",
            SubgroupKind::Gamma1 => "gamma1",
            SubgroupKind::Gamma => "gamma",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::from_i64(a, b, c, d).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d)).unwrap()
    }

    #[test]
    fn construction_enforces_det_one() {
        assert!(Mat2::from_i64(1, 0, 0, 1).is_ok());
        assert_eq!(
            Mat2::from_i64(2, 0, 0, 1).unwrap_err(),
            NotUnimodular { det: Int::from(2i64) }
        );
        assert_eq!(
            Mat2::from_i64(1, 0, 0, -1).unwrap_err().det,
            Int::from(-1i64)
        );
    }

    #[test]
    fn inverse_and_product() {
        let a = m(2, 1, 1, 1);
        assert_eq!(a.inverse(), m(1, -1, -1, 2));
        assert!(a.mul(&a.inverse()).is_identity());
        assert!(a.inverse().mul(&a).is_identity());
        let s = m(0, -1, 1, 0);
        let t = m(1, 1, 0, 1);
        assert_eq!(s.mul(&t), m(0, -1, 1, 1));
        assert_eq!(t.mul(&s), m(1, -1, 1, 0));
        assert_eq!(&s * &t, s.mul(&t));
    }

    #[test]
    fn height_trace_frobenius_examples() {
        let a = m(5, 7, 2, 3);
        assert_eq!(a.height(), Int::from(7i64));
        assert_eq!(a.trace(), Int::from(8i64));
        assert_eq!(a.frobenius_sq(), Int::from(25 + 49 + 4 + 9i64));
        assert_eq!(m(-1, 0, 0, -1).height(), Int::ONE);
    }

    #[test]
    fn op_ball_examples() {
        // The identity has operator norm 1.
        assert!(Mat2::identity().in_op_ball(1));
        // [1 1; 0 1] has norm (1+sqrt5)/2 ~ 1.618: outside x=1, inside x=2.
        let t = m(1, 1, 0, 1);
        assert!(!t.in_op_ball(1));
        assert!(t.in_op_ball(2));
        // [2 1; 1 1] has norm (3+sqrt5)/2 ~ 2.618: outside x=2, inside x=3.
        let f = m(2, 1, 1, 1);
        assert!(!f.in_op_ball(2));
        assert!(f.in_op_ball(3));
    }

    #[test]
    fn op_ball_matches_f64_singular_values() {
        // Floating-point cross-check on a dense family. sigma_max^2 is the
        // larger root of s^2 - F s + 1 = 0.
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in -6i64..=6 {
                    for d in -6i64..=6 {
                        if a * d - b * c != 1 {
                            continue;
                        }
                        let mm = m(a, b, c, d);
                        let f = (a * a + b * b + c * c + d * d) as f64;
                        let sigma2 = (f + (f * f - 4.0).sqrt()) / 2.0;
                        let sigma = sigma2.sqrt();
                        for x in 2..=12i64 {
                            // Skip near-ties; those are exactly what f64
                            // cannot referee and the exact test exists for.
                            if (sigma - x as f64).abs() < 1e-9 {
                                continue;
                            }
                            assert_eq!(
                                mm.in_op_ball(x),
                                sigma <= x as f64,
                                "[{a} {b}; {c} {d}] vs x={x}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let g0 = SubgroupSpec::gamma0(4).unwrap();
        let g1 = SubgroupSpec::gamma1(4).unwrap();
        let g = SubgroupSpec::gamma(4).unwrap();
        let full = SubgroupSpec::full();
        let a = m(1, 1, 4, 5);
        assert!(a.member(&full));
        assert!(a.member(&g0));
        assert!(a.member(&g1));
        assert!(!a.member(&g)); // b = 1 not divisible by 4
    }

    #[test]
    fn membership_examples_more() {
        let g0 = SubgroupSpec::gamma0(4).unwrap();
        let g1 = SubgroupSpec::gamma1(4).unwrap();
        let g = SubgroupSpec::gamma(4).unwrap();
        // a = 3 fails the a = 1 (mod 4) condition of Gamma_1.
        let a = m(3, 1, 8, 3);
        assert!(a.member(&g0));
        assert!(!a.member(&g1));
        // [1 4; 4 17] satisfies all four congruences at level 4.
        let b = m(1, 4, 4, 17);
        assert!(b.member(&g));
        // Everything is in level 1.
        assert!(m(0, -1, 1, 0).member(&SubgroupSpec::gamma(1).unwrap()));
        // -I is in Gamma_1(2) but not Gamma_1(4).
        let minus_i = m(-1, 0, 0, -1);
        assert!(minus_i.member(&SubgroupSpec::gamma1(2).unwrap()));
        assert!(!minus_i.member(&g1));
        assert_eq!(SubgroupSpec::gamma0(0).unwrap_err(), BadModulus { q: 0 });
    }

    #[test]
    fn mobius_examples() {
        // S = [0 -1; 1 0] sends i to i.
        let s = m(0, -1, 1, 0);
        let i = QComplex::i();
        assert_eq!(s.mobius(&i), i);
        // T = [1 1; 0 1] translates by one.
        let t = m(1, 1, 0, 1);
        assert_eq!(t.mobius(&i), QComplex::new(r(1, 1), r(1, 1)));
        // S at 2i: -1/(2i) = i/2.
        let z = QComplex::new(r(0, 1), r(2, 1));
        assert_eq!(s.mobius(&z), QComplex::new(r(0, 1), r(1, 2)));
        // Imaginary part transforms as y / |cz+d|^2.
        let a = m(2, 1, 1, 1);
        let w = a.mobius(&QComplex::new(r(1, 3), r(1, 2))); // |z/1 + ...|
        let n = &(&r(1, 3) + &r(1, 1)).square() + &r(1, 2).square(); // (4/3)^2 + (1/2)^2
        assert_eq!(w.im(), &(&r(1, 2) * &n.recip().unwrap()));
    }

    #[test]
    fn mobius_composes() {
        let mats = [m(1, 1, 0, 1), m(0, -1, 1, 0), m(2, 1, 1, 1), m(1, 0, 2, 1)];
        let pts = [
            QComplex::i(),
            QComplex::new(r(1, 3), r(2, 5)),
            QComplex::new(r(-7, 2), r(1, 9)),
        ];
        for x in &mats {
            for y in &mats {
                for z in &pts {
                    assert_eq!(x.mul(y).mobius(z), x.mobius(&y.mobius(z)));
                }
            }
        }
    }

    #[test]
    fn display_and_parse() {
        let a = m(2, 1, 1, 1);
        assert_eq!(a.to_string(), "2 1 1 1");
        assert_eq!("2 1 1 1".parse::<Mat2>().unwrap(), a);
        assert_eq!("  -1 0\t0 -1 ".parse::<Mat2>().unwrap(), m(-1, 0, 0, -1));
        assert!(matches!(
            "2 0 0 1".parse::<Mat2>(),
            Err(ParseMatrixError::NotUnimodular(d)) if d == Int::from(2i64)
        ));
        assert!(matches!(
            "1 0 0".parse::<Mat2>(),
            Err(ParseMatrixError::Syntax(_))
        ));
        assert!(matches!(
            "1 0 0 1 5".parse::<Mat2>(),
            Err(ParseMatrixError::Syntax(_))
        ));
    }
}
