//! Quaternion scalar `q = a + b·i + c·j + d·k` over `f64`.
//!
//! The imaginary units obey `ij = k`, `jk = i`, `ki = j` and
//! `i² = j² = k² = ijk = −1`, so multiplication is not commutative:
//! `ji = −ij`. Every operation here is a pure value function.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::Error;

/// A quaternion with real part `a` and imaginary coefficients `b`, `c`, `d`
/// on `i`, `j`, `k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    /// Builds a quaternion without checking finiteness. Use
    /// [`Quaternion::try_new`] for values coming from outside the crate.
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    /// Builds a quaternion, rejecting NaN and infinite components.
    pub fn try_new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, Error> {
        let q = Quaternion::new(a, b, c, d);
        if q.is_finite() {
            Ok(q)
        } else {
            Err(Error::NonFinite(format!("quaternion {a}, {b}, {c}, {d}")))
        }
    }

    pub const fn real(a: f64) -> Self {
        Quaternion::new(a, 0.0, 0.0, 0.0)
    }

    /// The four components in `[a, b, c, d]` order.
    pub const fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub const fn from_array(v: [f64; 4]) -> Self {
        Quaternion::new(v[0], v[1], v[2], v[3])
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.a == 0.0 && self.b == 0.0 && self.c == 0.0 && self.d == 0.0
    }

    /// `a − b·i − c·j − d·k`.
    pub fn conj(self) -> Self {
        Quaternion::new(self.a, -self.b, -self.c, -self.d)
    }

    /// `|q|² = a² + b² + c² + d²`.
    pub fn norm_sqr(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// `|q|`, rescaled internally when `|q|²` would underflow or overflow.
    pub fn norm(self) -> f64 {
        let n2 = self.norm_sqr();
        if n2.is_normal() && n2.is_finite() {
            return n2.sqrt();
        }
        let m = self.to_array().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        self.scale(1.0 / m).norm_sqr().sqrt() * m
    }

    pub fn scale(self, r: f64) -> Self {
        Quaternion::new(r * self.a, r * self.b, r * self.c, r * self.d)
    }

    /// Quaternion sign: `q / |q|` for nonzero `q`, exactly zero for `q = 0`.
    ///
    /// The zero branch is taken only when the modulus is exactly zero.
    pub fn sgn(self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            Quaternion::ZERO
        } else {
            Quaternion::new(self.a / n, self.b / n, self.c / n, self.d / n)
        }
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c, self.d + rhs.d)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.a - rhs.a, self.b - rhs.b, self.c - rhs.c, self.d - rhs.d)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    /// Hamilton product `self · rhs`.
    fn mul(self, rhs: Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (rhs.a, rhs.b, rhs.c, rhs.d);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;

    fn mul(self, rhs: f64) -> Quaternion {
        self.scale(rhs)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;

    fn mul(self, rhs: Quaternion) -> Quaternion {
        rhs.scale(self)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Quaternion) {
        *self = *self + rhs;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, rhs: Quaternion) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |acc, q| acc + q)
    }
}

impl From<f64> for Quaternion {
    fn from(a: f64) -> Self {
        Quaternion::real(a)
    }
}

/// Renders as `a+bi+cj+dk` (with `-` in place of `+` for negative
/// coefficients). Components use the shortest representation that parses
/// back to the identical `f64`.
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        for (v, unit) in [(self.b, 'i'), (self.c, 'j'), (self.d, 'k')] {
            if v.is_sign_negative() {
                write!(f, "-{}{}", -v, unit)?;
            } else {
                write!(f, "+{}{}", v, unit)?;
            }
        }
        Ok(())
    }
}

/// Parses sums of signed terms such as `1+2i-3j+4k`, `2k`, `-i + 0.5`,
/// `1e-7-2.5e3j`. A bare unit (`i`, `-j`) has coefficient one. Each
/// component may appear at most once. Whitespace is ignored.
impl FromStr for Quaternion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| Error::ParseQuaternion {
            input: s.to_string(),
            reason: why.to_string(),
        };
        let text: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad("empty literal"));
        }

        let mut comps: [Option<f64>; 4] = [None; 4];
        let mut pos = 0;
        while pos < text.len() {
            let mut sign = 1.0;
            if text[pos] == '+' || text[pos] == '-' {
                if text[pos] == '-' {
                    sign = -1.0;
                }
                pos += 1;
                // "+ -3j" style: a separator followed by a signed coefficient.
                if pos < text.len() && (text[pos] == '+' || text[pos] == '-') {
                    if text[pos] == '-' {
                        sign = -sign;
                    }
                    pos += 1;
                }
            } else if pos != 0 {
                return Err(bad("expected '+' or '-' between terms"));
            }

            // Numeric part: digits, '.', and an exponent with its own sign.
            let start = pos;
            while pos < text.len() {
                let ch = text[pos];
                let exponent_sign = (ch == '+' || ch == '-') && pos > start && matches!(text[pos - 1], 'e' | 'E');
                if ch.is_ascii_digit() || ch == '.' || ch == 'e' || ch == 'E' || exponent_sign {
                    pos += 1;
                } else {
                    break;
                }
            }
            let number: String = text[start..pos].iter().collect();

            let slot = match text.get(pos) {
                Some('i') => 1,
                Some('j') => 2,
                Some('k') => 3,
                Some('+') | Some('-') | None => 0,
                Some(other) => return Err(bad(&format!("unexpected character '{other}'"))),
            };
            if slot != 0 {
                pos += 1;
            }

            let magnitude = if number.is_empty() {
                if slot == 0 {
                    return Err(bad("missing number"));
                }
                1.0
            } else {
                number
                    .parse::<f64>()
                    .map_err(|_| bad(&format!("invalid number '{number}'")))?
            };
            if !magnitude.is_finite() {
                return Err(bad("non-finite component"));
            }
            if comps[slot].is_some() {
                return Err(bad("component given twice"));
            }
            comps[slot] = Some(sign * magnitude);
        }

        let [a, b, c, d] = comps.map(|v| v.unwrap_or(0.0));
        Ok(Quaternion::new(a, b, c, d))
    }
}
