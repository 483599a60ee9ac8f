//! Exact reals of the form `sign * sqrt(square)` with rational `square`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::num::{q_string, q_to_f64, sign_of, Q};

/// A real number whose square is rational.
///
/// Volumes and measure constants are nonnegative (`sign` is `0` or `1`);
/// limits of general families may carry `sign == -1`. Equality is decided
/// on `(sign, square)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadConst {
    pub square: Q,
    pub sign: i8,
}

impl QuadConst {
    pub fn zero() -> Self {
        QuadConst { square: Q::zero(), sign: 0 }
    }

    pub fn one() -> Self {
        QuadConst { square: Q::one(), sign: 1 }
    }

    /// `sqrt(square)` for `square >= 0`.
    pub fn sqrt(square: Q) -> Self {
        assert!(!square.is_negative(), "negative square");
        let sign = if square.is_zero() { 0 } else { 1 };
        QuadConst { square, sign }
    }

    /// `coeff * sqrt(radicand)`.
    pub fn scaled(coeff: &Q, radicand: &Q) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        let s = sign_of(coeff) * if radicand.is_zero() { 0 } else { 1 };
        if s == 0 {
            return Self::zero();
        }
        QuadConst { square: coeff * coeff * radicand, sign: s }
    }

    pub fn from_rational(x: &Q) -> Self {
        Self::scaled(x, &Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn mul(&self, o: &QuadConst) -> QuadConst {
        let sign = self.sign * o.sign;
        if sign == 0 {
            return Self::zero();
        }
        QuadConst { square: &self.square * &o.square, sign }
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * q_to_f64(&self.square).sqrt()
    }

    /// Rational value when the square is a perfect rational square.
    pub fn as_rational(&self) -> Option<Q> {
        if self.sign == 0 {
            return Some(Q::zero());
        }
        let n = self.square.numer().sqrt();
        let d = self.square.denom().sqrt();
        if &(&n * &n) == self.square.numer() && &(&d * &d) == self.square.denom() {
            let r = Q::new(n, d);
            Some(if self.sign < 0 { -r } else { r })
        } else {
            None
        }
    }

    /// Compact rendering: `3/2`, `sqrt(3)`, `-sqrt(5/4)`.
    pub fn render(&self) -> String {
        if let Some(r) = self.as_rational() {
            return q_string(&r);
        }
        let body = format!("sqrt({})", q_string(&self.square));
        if self.sign < 0 {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl PartialOrd for QuadConst {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for QuadConst {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.sign.cmp(&o.sign) {
            Ordering::Equal => match self.sign {
                0 => Ordering::Equal,
                1 => self.square.cmp(&o.square),
                _ => o.square.cmp(&self.square),
            },
            other => other,
        }
    }
}

impl fmt::Debug for QuadConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for QuadConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Serialize for QuadConst {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadConst", 3)?;
        st.serialize_field("square", &q_string(&self.square))?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("value", &self.render())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qf};

    #[test]
    fn perfect_squares_render_as_rationals() {
        assert_eq!(QuadConst::sqrt(qf(9, 4)).render(), "3/2");
        assert_eq!(QuadConst::sqrt(q(3)).render(), "sqrt(3)");
        assert_eq!(QuadConst::scaled(&q(-2), &q(3)).render(), "-sqrt(12)");
    }

    #[test]
    fn ordering_respects_sign() {
        let a = QuadConst::scaled(&q(-1), &q(2));
        let b = QuadConst::zero();
        let c = QuadConst::sqrt(q(2));
        assert!(a < b && b < c);
        assert!(QuadConst::scaled(&q(-2), &q(1)) < QuadConst::scaled(&q(-1), &q(1)));
    }
}
