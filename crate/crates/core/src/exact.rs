//! Exact rational values and their textual forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Rational = BigRational;

pub fn ratio(numer: u128, denom: u128) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: u128) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `"n/d"`, or just `"n"` for integers.
pub fn fraction(value: &Rational) -> String {
    value.to_string()
}

/// Parses the output of [`fraction`].
pub fn parse_fraction(text: &str) -> Option<Rational> {
    text.trim().parse().ok()
}

/// Decimal rendering rounded half away from zero.
pub fn decimal(value: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = value * Rational::from_integer(scale.clone());
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let rounded = if scaled.is_negative() {
        -((-scaled) + half).floor()
    } else {
        (scaled + half).floor()
    }
    .to_integer();
    let negative = rounded.is_negative();
    let digits = rounded.abs().to_string();
    let places = places as usize;
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if negative && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Lossy conversion for plotting.
pub fn to_f64(value: &Rational) -> f64 {
    decimal(value, 12).parse().unwrap_or(f64::NAN)
}

/// Serde adapter writing a rational as `{"exact": "n/d", "decimal": "x.xxxxxx"}`.
pub mod serde_exact {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Rational;

    #[derive(Serialize, Deserialize)]
    struct Repr {
        exact: String,
        decimal: String,
    }

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            exact: super::fraction(value),
            decimal: super::decimal(value, 6),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let repr = Repr::deserialize(d)?;
        super::parse_fraction(&repr.exact)
            .ok_or_else(|| D::Error::custom(format!("invalid fraction `{}`", repr.exact)))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let repr = Option::<Repr>::deserialize(d)?;
            repr.map(|r| {
                super::super::parse_fraction(&r.exact)
                    .ok_or_else(|| D::Error::custom(format!("invalid fraction `{}`", r.exact)))
            })
            .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&ratio(2, 3), 6), "0.666667");
        assert_eq!(decimal(&ratio(1, 2), 0), "1");
        assert_eq!(decimal(&integer(4338), 2), "4338.00");
        assert_eq!(decimal(&ratio(1, 2_000_000), 6), "0.000001");
        assert_eq!(decimal(&-ratio(1, 3), 3), "-0.333");
        assert_eq!(decimal(&ratio(0, 5), 3), "0.000");
    }

    #[test]
    fn fraction_round_trip() {
        for v in [ratio(2, 3), integer(7), ratio(433838, 218993)] {
            assert_eq!(parse_fraction(&fraction(&v)), Some(v));
        }
        assert_eq!(fraction(&ratio(4, 6)), "2/3");
    }
}
