use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::InstanceError;

/// The gap factor, an exact fraction `num / den` strictly greater than one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawEta")]
pub struct Eta {
    num: u64,
    den: u64,
}

#[derive(Deserialize)]
struct RawEta {
    num: u64,
    den: u64,
}

impl TryFrom<RawEta> for Eta {
    type Error = InstanceError;

    fn try_from(raw: RawEta) -> Result<Self, Self::Error> {
        Eta::new(raw.num, raw.den)
    }
}

impl Eta {
    /// Reduces the fraction; rejects a zero denominator and values `<= 1`.
    pub fn new(num: u64, den: u64) -> Result<Self, InstanceError> {
        if den == 0 || num <= den {
            return Err(InstanceError::InvalidEta { num, den });
        }
        let g = num.gcd(&den);
        Ok(Eta {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }
}

impl fmt::Display for Eta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Eta {
    type Err = InstanceError;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InstanceError::EtaSyntax(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        Eta::new(num, den)
    }
}

/// The promise parameters: cover-size bound `d` and gap factor `eta`.
///
/// Every comparison involving `eta` is done by cross-multiplying into `i128`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GapParams {
    d: u64,
    eta: Eta,
}

impl GapParams {
    pub fn new(d: u64, eta: Eta) -> Result<Self, InstanceError> {
        if d == 0 {
            return Err(InstanceError::ZeroBound);
        }
        Ok(GapParams { d, eta })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn eta(&self) -> Eta {
        self.eta
    }

    fn parts(&self) -> (i128, i128, i128) {
        (i128::from(self.eta.num), i128::from(self.eta.den), i128::from(self.d))
    }

    /// `d > 2m / (3 eta - 1)`.
    pub fn set_cover_in_range(&self, m: usize) -> bool {
        let (p, q, d) = self.parts();
        d * (3 * p - q) > 2 * m as i128 * q
    }

    /// `d > n / (2 eta)`.
    pub fn hypergraph_in_range(&self, n: usize) -> bool {
        let (p, q, d) = self.parts();
        2 * p * d > n as i128 * q
    }

    /// `x > eta * d`.
    pub fn exceeds_eta_d(&self, x: usize) -> bool {
        let (p, q, d) = self.parts();
        x as i128 * q > p * d
    }

    /// `ceil(2 eta d - total)`. For an integer count `c`, `c >= 2 eta d - total`
    /// iff `c >= ` this value.
    pub fn zero_positions_required(&self, total: usize) -> i128 {
        let (p, q, d) = self.parts();
        Integer::div_ceil(&(2 * p * d - total as i128 * q), &q)
    }

    /// `size <= 2 (total - eta d)`.
    pub fn within_support_bound(&self, size: usize, total: usize) -> bool {
        let (p, q, d) = self.parts();
        size as i128 * q <= 2 * (total as i128 * q - p * d)
    }

    /// `eta d - 2 (total - eta d) > d`, i.e. `3 eta d - 2 total - d > 0`.
    pub fn threshold_gap_holds(&self, total: usize) -> bool {
        let (p, q, d) = self.parts();
        3 * p * d - 2 * total as i128 * q - d * q > 0
    }
}
