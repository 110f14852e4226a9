use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::point::Point2;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Closed half-plane `{p : a*p.x + b*p.y <= c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    a: Rational,
    b: Rational,
    c: Rational,
    // The same inequality scaled to integer coefficients, for sign tests.
    ia: BigInt,
    ib: BigInt,
    ic: BigInt,
}

impl HalfPlane {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::Domain("half-plane normal must be non-zero".into()));
        }
        let l = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |q: &Rational| q.numer() * (&l / q.denom());
        let (ia, ib, ic) = (scale(&a), scale(&b), scale(&c));
        Ok(Self {
            a,
            b,
            c,
            ia,
            ib,
            ic,
        })
    }

    /// `{p : normal . p <= offset}`; `normal` must be non-zero.
    pub fn from_normal(normal: &Point2, offset: Rational) -> Result<Self> {
        Self::new(normal.x.clone(), normal.y.clone(), offset)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn normal(&self) -> Point2 {
        Point2::new(self.a.clone(), self.b.clone())
    }

    /// Signed slack `a*x + b*y - c`; non-positive inside.
    pub fn eval(&self, p: &Point2) -> Rational {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    /// Sign of [`eval`](Self::eval) without forming the rational slack.
    pub fn side(&self, p: &Point2) -> Ordering {
        let (xn, xd) = (p.x.numer(), p.x.denom());
        let (yn, yd) = (p.y.numer(), p.y.denom());
        let lhs = &self.ia * xn * yd + &self.ib * yn * xd;
        let rhs = &self.ic * xd * yd;
        lhs.cmp(&rhs)
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.side(p) != Ordering::Greater
    }

    pub fn translate(&self, v: &Point2) -> HalfPlane {
        let c = &self.c + &self.a * &v.x + &self.b * &v.y;
        HalfPlane::new(self.a.clone(), self.b.clone(), c).expect("normal unchanged")
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x + {}*y <= {}", self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, rat};

    #[test]
    fn zero_normal_rejected() {
        assert!(HalfPlane::new(int(0), int(0), int(1)).is_err());
    }

    #[test]
    fn closed_membership() {
        let h = HalfPlane::new(int(1), int(0), int(1)).unwrap();
        assert!(h.contains(&Point2::int(1, 7)));
        assert!(h.contains(&Point2::int(-4, 0)));
        assert!(!h.contains(&Point2::int(2, 0)));
    }

    #[test]
    fn side_agrees_with_slack() {
        let h = HalfPlane::new(rat(2, 3), rat(-5, 7), rat(1, 11)).unwrap();
        for i in -6..=6 {
            for j in -6..=6 {
                let p = Point2::new(rat(i, 5), rat(j, 3));
                assert_eq!(h.side(&p), h.eval(&p).cmp(&int(0)), "{p}");
            }
        }
    }

    #[test]
    fn translation_moves_the_boundary() {
        let h = HalfPlane::new(int(1), int(0), int(1)).unwrap();
        let t = h.translate(&Point2::int(2, 5));
        assert!(t.contains(&Point2::int(3, 0)));
        assert!(!t.contains(&Point2::int(4, 0)));
    }
}
