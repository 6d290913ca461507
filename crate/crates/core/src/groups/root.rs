use std::fmt;
use std::ops::{Div, Mul};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// The root of unity `exp(2πi·k/n)`, stored as the numerator `k mod n`.
///
/// Multiplying roots adds numerators. Both operands must share the same
/// ambient order; use [`RootExp::lift`] to move into a larger `μ_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootExp {
    k: u64,
    n: u64,
}

impl RootExp {
    pub fn new(k: i64, n: u64) -> Self {
        assert!(n >= 1, "root order must be positive");
        RootExp {
            k: k.rem_euclid(n as i64) as u64,
            n,
        }
    }

    pub fn one(n: u64) -> Self {
        RootExp::new(0, n)
    }

    pub fn numerator(self) -> u64 {
        self.k
    }

    pub fn ambient(self) -> u64 {
        self.n
    }

    pub fn is_one(self) -> bool {
        self.k == 0
    }

    pub fn inv(self) -> Self {
        RootExp {
            k: (self.n - self.k) % self.n,
            n: self.n,
        }
    }

    pub fn pow(self, e: i64) -> Self {
        let k = (self.k as i128 * e as i128).rem_euclid(self.n as i128) as u64;
        RootExp { k, n: self.n }
    }

    /// Re-expresses the same root inside `μ_m`; requires `n | m`.
    pub fn lift(self, m: u64) -> Self {
        assert!(m % self.n == 0, "cannot lift μ_{} into μ_{}", self.n, m);
        RootExp {
            k: self.k * (m / self.n),
            n: m,
        }
    }

    /// Multiplicative order of the root.
    pub fn order(self) -> u64 {
        self.n / self.k.gcd(&self.n)
    }
}

impl Mul for RootExp {
    type Output = RootExp;

    fn mul(self, rhs: RootExp) -> RootExp {
        assert_eq!(self.n, rhs.n, "root orders differ");
        RootExp {
            k: (self.k + rhs.k) % self.n,
            n: self.n,
        }
    }
}

impl Div for RootExp {
    type Output = RootExp;

    fn div(self, rhs: RootExp) -> RootExp {
        self * rhs.inv()
    }
}

impl fmt::Debug for RootExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ{}^{}", self.n, self.k)
    }
}
