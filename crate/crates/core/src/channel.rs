//! I.i.d. Pauli channels parameterised by total rate and Z bias.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Bias `A = 2p_Z / (p − p_Z)`. `Infinite` is the pure phase-flip limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bias {
    Finite(f64),
    Infinite,
}

impl Bias {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_infinite() && a > 0.0 {
            return Ok(Bias::Infinite);
        }
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidParameters(format!("bias must be ≥ 0 or inf, got {a}")));
        }
        Ok(Bias::Finite(a))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Bias::Infinite)
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Bias::Finite(a) => a,
            Bias::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Bias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bias::Finite(a) => write!(f, "{a}"),
            Bias::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Bias {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Bias::Infinite),
            other => other
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bias must be a number or 'inf', got {s:?}")))
                .and_then(Bias::new),
        }
    }
}

impl Serialize for Bias {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Bias::Finite(a) => serializer.serialize_f64(*a),
            Bias::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bias {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(a) => Bias::new(a),
            Raw::Text(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Per-qubit probabilities of X, Y and Z errors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
}

impl ChannelModel {
    pub fn new(p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if !(ok(p_x) && ok(p_y) && ok(p_z)) || p_x + p_y + p_z > 1.0 + 1e-12 {
            return Err(Error::InvalidParameters(format!(
                "channel probabilities must be non-negative with sum ≤ 1, got ({p_x}, {p_y}, {p_z})"
            )));
        }
        Ok(Self { p_x, p_y, p_z })
    }

    /// `p_Z = pA/(A+2)`, `p_X = p_Y = p/(A+2)`; `A = ∞` gives `p_Z = p`.
    pub fn from_bias(p: f64, bias: Bias) -> Result<Self> {
        match bias {
            Bias::Infinite => Self::new(0.0, 0.0, p),
            Bias::Finite(a) => Self::new(p / (a + 2.0), p / (a + 2.0), p * a / (a + 2.0)),
        }
    }

    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::from_bias(p, Bias::Finite(1.0))
    }

    pub fn phase_flip(p: f64) -> Result<Self> {
        Self::from_bias(p, Bias::Infinite)
    }

    pub fn p(&self) -> f64 {
        self.p_x + self.p_y + self.p_z
    }

    /// Recovers `A = 2p_Z/(p − p_Z)`; `p_X = p_Y = 0` with `p_Z > 0` is infinite.
    pub fn bias(&self) -> Option<Bias> {
        let rest = self.p() - self.p_z;
        if rest <= 0.0 {
            return (self.p_z > 0.0).then_some(Bias::Infinite);
        }
        Some(Bias::Finite(2.0 * self.p_z / rest))
    }
}

/// A channel with exact rational probabilities, used for exact `β_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactChannel {
    pub p_x: BigRational,
    pub p_y: BigRational,
    pub p_z: BigRational,
}

impl ExactChannel {
    /// Channel with bias `num/den` and unit total rate (β_j is independent of `p`).
    pub fn from_bias_ratio(num: i64, den: i64) -> Result<Self> {
        if den <= 0 || num < 0 {
            return Err(Error::InvalidParameters(format!("bias ratio must be ≥ 0, got {num}/{den}")));
        }
        let a = BigRational::new(BigInt::from(num), BigInt::from(den));
        let two = BigRational::from_integer(BigInt::from(2));
        let denom = &a + &two;
        let px = BigRational::one() / &denom;
        Ok(Self {
            p_x: px.clone(),
            p_y: px,
            p_z: a / denom,
        })
    }

    pub fn from_bias_integer(a: i64) -> Result<Self> {
        Self::from_bias_ratio(a, 1)
    }

    pub fn phase_flip() -> Self {
        Self {
            p_x: BigRational::zero(),
            p_y: BigRational::zero(),
            p_z: BigRational::one(),
        }
    }

    pub fn p(&self) -> BigRational {
        &self.p_x + &self.p_y + &self.p_z
    }
}
