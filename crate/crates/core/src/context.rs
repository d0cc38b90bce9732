//! Operating context: the two binary environment flags driving the gate.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Night/rain flags for one sample. Exactly four values exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    pub is_night: bool,
    pub is_rain: bool,
}

impl Context {
    pub const DAY_CLEAR: Context = Context {
        is_night: false,
        is_rain: false,
    };
    pub const NIGHT_CLEAR: Context = Context {
        is_night: true,
        is_rain: false,
    };
    pub const DAY_RAIN: Context = Context {
        is_night: false,
        is_rain: true,
    };
    pub const NIGHT_RAIN: Context = Context {
        is_night: true,
        is_rain: true,
    };

    /// All four contexts in the canonical bucket order.
    pub const ALL: [Context; 4] = [
        Context::DAY_CLEAR,
        Context::NIGHT_CLEAR,
        Context::DAY_RAIN,
        Context::NIGHT_RAIN,
    ];

    /// Index of this context in [`Context::ALL`].
    pub fn bucket_index(self) -> usize {
        (self.is_night as usize) + 2 * (self.is_rain as usize)
    }

    /// Stable bucket name used in reports and manifests.
    pub fn bucket_name(self) -> &'static str {
        match (self.is_night, self.is_rain) {
            (false, false) => "day_clear",
            (true, false) => "night_clear",
            (false, true) => "day_rain",
            (true, true) => "night_rain",
        }
    }

    /// The gate-network input vector: (night, rain) as 0/1.
    pub fn as_input<T: crate::Real>(self) -> [T; 2] {
        [
            if self.is_night { T::one() } else { T::zero() },
            if self.is_rain { T::one() } else { T::zero() },
        ]
    }
}

#[derive(Serialize, Deserialize)]
struct ContextWire {
    is_night: u8,
    is_rain: u8,
}

// Serialized as two 0/1 integers.
impl Serialize for Context {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ContextWire {
            is_night: self.is_night as u8,
            is_rain: self.is_rain as u8,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Context {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = ContextWire::deserialize(deserializer)?;
        let flag = |v: u8, name: &str| match v {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(D::Error::custom(format!(
                "context flag {name} must be 0 or 1, got {other}"
            ))),
        };
        Ok(Context {
            is_night: flag(wire.is_night, "is_night")?,
            is_rain: flag(wire.is_rain, "is_rain")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bucket_indices_cover_all_four() {
        for (i, ctx) in Context::ALL.iter().enumerate() {
            assert_eq!(ctx.bucket_index(), i);
        }
    }

    #[test]
    fn serializes_as_zero_one_integers() {
        let json = serde_json::to_string(&Context::NIGHT_CLEAR).unwrap();
        assert_eq!(json, r#"{"is_night":1,"is_rain":0}"#);
        let back: Context = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Context::NIGHT_CLEAR);
    }

    #[test]
    fn rejects_non_binary_flags() {
        let err = serde_json::from_str::<Context>(r#"{"is_night":2,"is_rain":0}"#);
        assert!(err.is_err());
    }
}
