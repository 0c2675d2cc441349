//! P-values, S-values and the information units they are measured in.
//!
//! An S-value is the surprisal `-log(p)` of a P-value. The base of the
//! logarithm fixes the unit: base 2 gives bits, base e gives nats and
//! base 10 gives dits (also called hartleys or bans). Nats are the working
//! unit of the rest of the crate; bits are the default for display.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun;

/// A probability in the half-open interval (0, 1].
///
/// Zero is rejected because its surprisal is infinite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct PValue(f64);

impl PValue {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value <= 1.0 {
            Ok(PValue(value))
        } else {
            Err(Error::InvalidPValue(value))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PValue {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        PValue::new(value)
    }
}

impl From<PValue> for f64 {
    fn from(p: PValue) -> f64 {
        p.0
    }
}

impl<'de> Deserialize<'de> for PValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        PValue::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Unit of information, determined by the logarithm base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfoUnit {
    Bits,
    Nats,
    Dits,
}

impl InfoUnit {
    pub const ALL: [InfoUnit; 3] = [InfoUnit::Bits, InfoUnit::Nats, InfoUnit::Dits];

    /// Nats carried by one unit: ln 2, 1 and ln 10.
    #[inline]
    pub fn nats_per_unit(self) -> f64 {
        match self {
            InfoUnit::Bits => std::f64::consts::LN_2,
            InfoUnit::Nats => 1.0,
            InfoUnit::Dits => std::f64::consts::LN_10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InfoUnit::Bits => "bits",
            InfoUnit::Nats => "nats",
            InfoUnit::Dits => "dits",
        }
    }
}

impl fmt::Display for InfoUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InfoUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bits" | "bit" => Ok(InfoUnit::Bits),
            "nats" | "nat" => Ok(InfoUnit::Nats),
            "dits" | "dit" | "hartleys" | "bans" => Ok(InfoUnit::Dits),
            other => Err(domain(format!(
                "unknown information unit `{other}` (expected bits, nats or dits)"
            ))),
        }
    }
}

/// A non-negative surprisal tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SValue {
    value: f64,
    unit: InfoUnit,
}

impl SValue {
    pub fn new(value: f64, unit: InfoUnit) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(SValue { value, unit })
        } else {
            Err(Error::InvalidSValue(value))
        }
    }

    /// Builds a value in nats, clamping the `-0.0` and tiny negative
    /// rounding residue that log-space arithmetic can produce to zero.
    pub(crate) fn from_nats_clamped(nats: f64) -> Result<Self> {
        SValue::new(if nats <= 0.0 { 0.0 } else { nats }, InfoUnit::Nats)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.value
    }

    #[inline]
    pub fn unit(self) -> InfoUnit {
        self.unit
    }

    #[inline]
    pub fn nats(self) -> f64 {
        self.convert(InfoUnit::Nats).value
    }

    /// Rescales into `target`. Returns `self` unchanged when the unit already matches.
    pub fn convert(self, target: InfoUnit) -> SValue {
        if target == self.unit {
            return self;
        }
        let value = match (self.unit, target) {
            // Use the exact reciprocal pair where one exists so that
            // converting there and back loses at most one rounding.
            (InfoUnit::Bits, InfoUnit::Nats) => self.value * std::f64::consts::LN_2,
            (InfoUnit::Nats, InfoUnit::Bits) => self.value * std::f64::consts::LOG2_E,
            (InfoUnit::Dits, InfoUnit::Nats) => self.value * std::f64::consts::LN_10,
            (InfoUnit::Nats, InfoUnit::Dits) => self.value * std::f64::consts::LOG10_E,
            (InfoUnit::Dits, InfoUnit::Bits) => self.value * std::f64::consts::LOG2_10,
            (InfoUnit::Bits, InfoUnit::Dits) => self.value * std::f64::consts::LOG10_2,
            _ => unreachable!("identical units handled above"),
        };
        SValue {
            value,
            unit: target,
        }
    }
}

impl fmt::Display for SValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

/// The S-value `-log(p)` in the requested unit.
pub fn surprisal(p: PValue, unit: InfoUnit) -> SValue {
    let p = p.get();
    let value = match unit {
        InfoUnit::Bits => -p.log2(),
        InfoUnit::Nats => -p.ln(),
        InfoUnit::Dits => -p.log10(),
    };
    // -log(1) is -0.0; normalise it.
    SValue {
        value: value.max(0.0),
        unit,
    }
}

/// Converts an S-value to another unit.
#[inline]
pub fn convert(s: SValue, target: InfoUnit) -> SValue {
    s.convert(target)
}

/// Inverse of [`surprisal`]: `base^(-s)`.
///
/// The result can underflow for very large surprisals, in which case
/// the smallest positive double is returned rather than zero.
pub fn from_surprisal(s: SValue) -> PValue {
    let p = match s.unit {
        InfoUnit::Bits => (-s.value).exp2(),
        InfoUnit::Nats => (-s.value).exp(),
        InfoUnit::Dits => 10f64.powf(-s.value),
    };
    PValue(p.max(f64::from_bits(1)))
}

/// Number of consecutive heads from a coin tested for loading toward
/// heads that carries the same information as `p`.
///
/// The count is the S-value in bits rounded half-to-even. The gauge is
/// one-sided, and reads the same way whether `p` came from a one- or a
/// two-sided test.
pub fn coin_toss_gauge(p: PValue) -> u64 {
    surprisal(p, InfoUnit::Bits).value.round_ties_even() as u64
}

/// Translates a two-sided P-value into a one-sided sigma: the standard
/// normal deviate whose upper-tail probability equals `p`.
///
/// `p = 1` would give minus infinity and is rejected.
pub fn two_sided_to_sigma(p: PValue) -> Result<f64> {
    let p = p.get();
    if p >= 1.0 {
        return Err(domain(
            "sigma translation requires p < 1 (p = 1 maps to an infinite negative sigma)",
        ));
    }
    // Phi^-1(1 - p) = -Phi^-1(p); the right-hand form keeps small p exact.
    Ok(-specfun::normal_quantile(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn pv(x: f64) -> PValue {
        PValue::new(x).unwrap()
    }

    #[test]
    fn pvalue_domain() {
        assert!(PValue::new(1.0).is_ok());
        assert!(PValue::new(f64::MIN_POSITIVE).is_ok());
        for bad in [0.0, -0.1, 1.0000001, f64::NAN, f64::INFINITY] {
            assert!(PValue::new(bad).is_err(), "{bad} accepted");
        }
    }

    #[test]
    fn surprisal_examples() {
        assert_eq!(surprisal(pv(1.0), InfoUnit::Bits).value(), 0.0);
        assert!(surprisal(pv(1.0), InfoUnit::Nats)
            .value()
            .is_sign_positive());
        assert_eq!(surprisal(pv(0.5), InfoUnit::Bits).value(), 1.0);
        assert_relative_eq!(
            surprisal(pv(0.05), InfoUnit::Bits).value(),
            4.321_928_094_887_362,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            surprisal(pv(0.05), InfoUnit::Nats).value(),
            2.995_732_273_553_991,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            surprisal(pv(0.05), InfoUnit::Dits).value(),
            1.301_029_995_663_981,
            max_relative = 1e-14
        );
    }

    #[test]
    // Literal values on purpose, so the test does not reuse the constants under test.
    #[allow(clippy::approx_constant)]
    fn convert_examples() {
        let one_bit = SValue::new(1.0, InfoUnit::Bits).unwrap();
        assert_relative_eq!(
            one_bit.convert(InfoUnit::Nats).value(),
            0.693_147_180_559_945_3,
            max_relative = 1e-15
        );
        let one_dit = SValue::new(1.0, InfoUnit::Dits).unwrap();
        assert_relative_eq!(
            one_dit.convert(InfoUnit::Bits).value(),
            3.321_928_094_887_362,
            max_relative = 1e-15
        );
        let s = SValue::new(2.5, InfoUnit::Nats).unwrap();
        assert_eq!(s.convert(InfoUnit::Nats), s);
    }

    #[test]
    fn from_surprisal_examples() {
        assert_eq!(
            from_surprisal(SValue::new(1.0, InfoUnit::Bits).unwrap()).get(),
            0.5
        );
        assert_eq!(
            from_surprisal(SValue::new(0.0, InfoUnit::Nats).unwrap()).get(),
            1.0
        );
        let p = from_surprisal(SValue::new(4.321_928_094_887_362, InfoUnit::Bits).unwrap());
        assert_relative_eq!(p.get(), 0.05, max_relative = 1e-14);
        // Underflow saturates at the smallest subnormal instead of zero.
        assert!(from_surprisal(SValue::new(1e6, InfoUnit::Nats).unwrap()).get() > 0.0);
    }

    #[test]
    fn svalue_rejects_negative_and_nonfinite() {
        assert!(SValue::new(-1e-300, InfoUnit::Bits).is_err());
        assert!(SValue::new(f64::INFINITY, InfoUnit::Bits).is_err());
        assert!(SValue::new(f64::NAN, InfoUnit::Nats).is_err());
    }

    #[test]
    fn coin_toss_examples() {
        assert_eq!(coin_toss_gauge(pv(0.5)), 1);
        assert_eq!(coin_toss_gauge(pv(0.05)), 4);
        assert_eq!(coin_toss_gauge(pv(0.25)), 2);
        assert_eq!(coin_toss_gauge(pv(1.0)), 0);
        // 2.5 bits rounds to the even neighbour.
        assert_eq!(coin_toss_gauge(pv(2f64.powf(-2.5))), 2);
        assert_eq!(coin_toss_gauge(pv(2f64.powf(-3.5))), 4);
    }

    #[test]
    fn sigma_examples() {
        assert!((two_sided_to_sigma(pv(0.05)).unwrap() - 1.644_853_626_951_472_7).abs() < 1e-9);
        assert!(two_sided_to_sigma(pv(0.5)).unwrap().abs() < 1e-15);
        assert!((two_sided_to_sigma(pv(0.0027)).unwrap() - 2.782_150_453_784_607).abs() < 1e-9);
        assert!(two_sided_to_sigma(pv(1.0)).is_err());
    }

    #[test]
    fn unit_parsing() {
        assert_eq!("bits".parse::<InfoUnit>().unwrap(), InfoUnit::Bits);
        assert_eq!("Hartleys".parse::<InfoUnit>().unwrap(), InfoUnit::Dits);
        assert!("furlongs".parse::<InfoUnit>().is_err());
    }

    fn unit() -> impl Strategy<Value = InfoUnit> {
        prop::sample::select(InfoUnit::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn strictly_antitone(a in 1e-300f64..1.0, b in 1e-300f64..1.0, u in unit()) {
            prop_assume!(a != b);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(surprisal(pv(lo), u).value() > surprisal(pv(hi), u).value());
        }

        #[test]
        fn product_rule(a in 1e-150f64..=1.0, b in 1e-150f64..=1.0, u in unit()) {
            let lhs = surprisal(pv(a * b), u).value();
            let rhs = surprisal(pv(a), u).value() + surprisal(pv(b), u).value();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-300) || (lhs - rhs).abs() < 1e-15);
        }

        #[test]
        fn unit_round_trip(v in 0.0f64..1e6, from in unit(), to in unit()) {
            let s = SValue::new(v, from).unwrap();
            let back = s.convert(to).convert(from);
            prop_assert_eq!(back.unit(), from);
            prop_assert!((back.value() - v).abs() <= 1e-12 * v);
        }

        #[test]
        fn nats_are_bits_times_ln2(p in 1e-300f64..=1.0) {
            let nats = surprisal(pv(p), InfoUnit::Nats).value();
            let bits = surprisal(pv(p), InfoUnit::Bits).value();
            prop_assert!((nats - bits * std::f64::consts::LN_2).abs() <= 1e-12 * nats.max(1e-300) || nats < 1e-300);
        }

        #[test]
        fn from_surprisal_inverts(p in 1e-300f64..=1.0, u in unit()) {
            let back = from_surprisal(surprisal(pv(p), u)).get();
            prop_assert!((back - p).abs() <= 1e-12 * p);
        }
    }
}
