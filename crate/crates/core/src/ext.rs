//! Extended reals `(-inf, +inf]` with saturating arithmetic.
//!
//! Support functions of unbounded sets take the value `+inf`; `-inf` never
//! occurs because random sets are almost surely non-empty. Multiplication by
//! a nonnegative scalar follows the support-function convention `0 * inf = 0`.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExtReal {
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn finite(x: f64) -> Self {
        ExtReal::Finite(x)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            ExtReal::PosInf => None,
        }
    }

    /// Finite value or `f64::INFINITY`; handy for comparisons and rendering.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::Finite(x) => x,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    pub fn add_f64(self, c: f64) -> ExtReal {
        self + ExtReal::Finite(c)
    }

    /// Scale by `c >= 0` with the convention `0 * inf = 0`.
    pub fn scale(self, c: f64) -> ExtReal {
        debug_assert!(c >= 0.0);
        match self {
            ExtReal::Finite(x) => ExtReal::Finite(c * x),
            ExtReal::PosInf => {
                if c == 0.0 {
                    ExtReal::Finite(0.0)
                } else {
                    ExtReal::PosInf
                }
            }
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, other: ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::PosInf,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::PosInf => write!(f, "inf"),
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::Finite(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturating_rules() {
        assert_eq!(ExtReal::Finite(1.0) + ExtReal::PosInf, ExtReal::PosInf);
        assert_eq!(ExtReal::PosInf.scale(2.0), ExtReal::PosInf);
        assert_eq!(ExtReal::PosInf.scale(0.0), ExtReal::Finite(0.0));
        assert_eq!(ExtReal::Finite(3.0).scale(0.5), ExtReal::Finite(1.5));
    }
}
