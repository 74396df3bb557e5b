use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A utility value: a finite real or one of the two saturating sentinels.
///
/// Finite arithmetic is clamped to `±f64::MAX`, so the sentinels only ever
/// come from input. `+∞ + −∞` is `−∞`: a vetoed outcome stays vetoed.
#[derive(Debug, Clone, Copy)]
pub enum Utility {
    NegInfinity,
    Finite(f64),
    PosInfinity,
}

impl Utility {
    /// Maps IEEE infinities to the sentinels. NaN is rejected.
    pub fn new(value: f64) -> Option<Self> {
        if value.is_nan() {
            None
        } else if value == f64::INFINITY {
            Some(Utility::PosInfinity)
        } else if value == f64::NEG_INFINITY {
            Some(Utility::NegInfinity)
        } else {
            // fold -0.0 into 0.0 so equality is plain numeric equality
            Some(Utility::Finite(value + 0.0))
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Utility::NegInfinity => f64::NEG_INFINITY,
            Utility::Finite(v) => v,
            Utility::PosInfinity => f64::INFINITY,
        }
    }

    fn rank(self) -> u8 {
        match self {
            Utility::NegInfinity => 0,
            Utility::Finite(_) => 1,
            Utility::PosInfinity => 2,
        }
    }
}

/// Panics on NaN; use [`Utility::new`] for untrusted input.
impl From<f64> for Utility {
    fn from(value: f64) -> Self {
        Utility::new(value).expect("utility must not be NaN")
    }
}

impl Add for Utility {
    type Output = Utility;

    fn add(self, rhs: Utility) -> Utility {
        use Utility::*;
        match (self, rhs) {
            (NegInfinity, _) | (_, NegInfinity) => NegInfinity,
            (PosInfinity, _) | (_, PosInfinity) => PosInfinity,
            (Finite(a), Finite(b)) => Finite((a + b).clamp(-f64::MAX, f64::MAX) + 0.0),
        }
    }
}

impl PartialEq for Utility {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Utility {}

impl PartialOrd for Utility {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Utility {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Utility::Finite(a), Utility::Finite(b)) => a.total_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Utility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Utility::NegInfinity => f.write_str("-inf"),
            Utility::Finite(v) => write!(f, "{v}"),
            Utility::PosInfinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for Utility {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Utility::NegInfinity => s.serialize_str("-inf"),
            Utility::Finite(v) => s.serialize_f64(*v),
            Utility::PosInfinity => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Utility {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct UtilityVisitor;

        impl Visitor<'_> for UtilityVisitor {
            type Value = Utility;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number, \"+inf\" or \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Utility, E> {
                Utility::new(v).ok_or_else(|| E::custom("utility must not be NaN"))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Utility, E> {
                Ok(Utility::Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Utility, E> {
                Ok(Utility::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Utility, E> {
                match v {
                    "+inf" | "inf" => Ok(Utility::PosInfinity),
                    "-inf" => Ok(Utility::NegInfinity),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        d.deserialize_any(UtilityVisitor)
    }
}
