//! Exact arithmetic in Q(sqrt 5).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rational = Ratio<i128>;

/// `a + b * sqrt(5)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Q5 {
    pub a: Rational,
    pub b: Rational,
}

impl Q5 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn int(n: i128) -> Self {
        Self { a: Rational::from_integer(n), b: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// The golden ratio `(1 + sqrt 5) / 2 = 2 cos(pi / 5)`.
    pub fn phi() -> Self {
        let half = Rational::new(1, 2);
        Self { a: half, b: half }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign, comparing `a^2` with `5 b^2` when the parts disagree.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                let lhs = self.a * self.a;
                let rhs = self.b * self.b * Rational::from_integer(5);
                match lhs.cmp(&rhs) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn recip(&self) -> Option<Self> {
        let norm = self.a * self.a - self.b * self.b * Rational::from_integer(5);
        if norm.is_zero() {
            return None;
        }
        Some(Self { a: self.a / norm, b: -self.b / norm })
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
        f(self.a) + f(self.b) * 5f64.sqrt()
    }
}

impl Add for Q5 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for Q5 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Mul for Q5 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let five = Rational::from_integer(5);
        Self { a: self.a * o.a + five * self.b * o.b, b: self.a * o.b + self.b * o.a }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for Q5 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.recip().expect("division by zero in Q(sqrt 5)")
    }
}

impl Neg for Q5 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b }
    }
}

impl PartialOrd for Q5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q5 {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum()
    }
}

impl fmt::Display for Q5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        let mag = self.b.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{mag}*") };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coeff}sqrt5")
        } else {
            write!(f, "{}{sign}{coeff}sqrt5", self.a)
        }
    }
}

impl fmt::Debug for Q5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
