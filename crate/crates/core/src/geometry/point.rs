use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, int, to_f64, Rational};

/// A point (or vector) in the plane with exact rational coordinates.
///
/// The derived ordering is lexicographic in `(x, y)`; it is used for
/// tie-breaking and for the canonical rotation of polygons.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    /// Convenience constructor from integers.
    pub fn int(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }

    /// A point on the horizontal axis; 1D setpoints live here.
    pub fn on_axis(x: Rational) -> Self {
        Self::new(x, Rational::zero())
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn dot(&self, other: &Point2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// z-component of the cross product.
    pub fn cross(&self, other: &Point2) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn dist_sq(&self, other: &Point2) -> Rational {
        (self - other).norm_sq()
    }

    pub fn scale(&self, k: &Rational) -> Point2 {
        Point2::new(&self.x * k, &self.y * k)
    }

    /// Rotates by -90 degrees: the outward normal of a CCW edge.
    pub fn rot_cw(&self) -> Point2 {
        Point2::new(self.y.clone(), -&self.x)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

/// Sign of the turn `a -> b -> c`: `Greater` for a left (CCW) turn.
pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> Ordering {
    let v = (b - a).cross(&(c - a));
    if v.is_positive() {
        Ordering::Greater
    } else if v.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Point2> for &Point2 {
            type Output = Point2;
            fn $method(self, rhs: &Point2) -> Point2 {
                Point2::new((&self.x).$method(&rhs.x), (&self.y).$method(&rhs.y))
            }
        }
        impl $trait<Point2> for Point2 {
            type Output = Point2;
            fn $method(self, rhs: Point2) -> Point2 {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Point2> for Point2 {
            type Output = Point2;
            fn $method(self, rhs: &Point2) -> Point2 {
                (&self).$method(rhs)
            }
        }
        impl $trait<Point2> for &Point2 {
            type Output = Point2;
            fn $method(self, rhs: Point2) -> Point2 {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);

impl Neg for &Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-&self.x, -&self.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        -&self
    }
}

// Serialized as a two-element array of rational strings: ["-7/2", "1"].
impl Serialize for Point2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coords = Vec::<super::rational::serde_str::RationalText>::deserialize(d)?;
        let mut qs = coords
            .into_iter()
            .map(|t| t.into_rational().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        match qs.len() {
            // A lone coordinate is a 1D setpoint.
            1 => Ok(Point2::on_axis(qs.remove(0))),
            2 => {
                let y = qs.pop().unwrap();
                let x = qs.pop().unwrap();
                Ok(Point2::new(x, y))
            }
            n => Err(D::Error::custom(format!(
                "expected 1 or 2 coordinates, got {n}"
            ))),
        }
    }
}
