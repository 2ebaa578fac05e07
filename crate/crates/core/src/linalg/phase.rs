use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact element of ℝ/ℤ, stored as its representative in `[0, 1)`.
///
/// `BigRational` keeps the fraction reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseModOne(BigRational);

impl PhaseModOne {
    pub fn zero() -> Self {
        PhaseModOne(BigRational::zero())
    }

    pub fn new(value: BigRational) -> Self {
        let floor = value.floor();
        PhaseModOne(value - floor)
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(BigRational::new(numer.into(), denom.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        Self::new(&self.0 * BigRational::from_integer(n.clone()))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self::new(&self.0 * r)
    }

    /// `cos 2πθ` and `sin 2πθ`, for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        // Reduce to lowest terms first so huge numerators do not lose range.
        let (n, d) = (self.numer(), self.denom());
        let theta = n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0);
        let angle = std::f64::consts::TAU * theta;
        let (mut s, mut c) = angle.sin_cos();
        // Exact quarter turns render without rounding noise.
        let four = BigInt::from(4);
        if (n * &four).is_multiple_of(d) {
            let quarter = ((n * &four) / d).to_i64().unwrap_or(0);
            (c, s) = match quarter.rem_euclid(4) {
                0 => (1.0, 0.0),
                1 => (0.0, 1.0),
                2 => (-1.0, 0.0),
                _ => (0.0, -1.0),
            };
        }
        (c, s)
    }

    /// Renders `exp(2πiθ)` with `digits` decimals.
    pub fn render_complex(&self, digits: usize) -> String {
        let (re, im) = self.to_complex_f64();
        let fix = |x: f64| {
            let s = format!("{x:.digits$}");
            // Avoid printing "-0.000".
            if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
                s.trim_start_matches('-').to_string()
            } else {
                s
            }
        };
        let im_s = fix(im);
        if let Some(stripped) = im_s.strip_prefix('-') {
            format!("{} - {}i", fix(re), stripped)
        } else {
            format!("{} + {}i", fix(re), im_s)
        }
    }
}

impl Default for PhaseModOne {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &PhaseModOne {
    type Output = PhaseModOne;
    fn add(self, rhs: &PhaseModOne) -> PhaseModOne {
        PhaseModOne::new(&self.0 + &rhs.0)
    }
}

impl Add for PhaseModOne {
    type Output = PhaseModOne;
    fn add(self, rhs: PhaseModOne) -> PhaseModOne {
        &self + &rhs
    }
}

impl Sub for &PhaseModOne {
    type Output = PhaseModOne;
    fn sub(self, rhs: &PhaseModOne) -> PhaseModOne {
        PhaseModOne::new(&self.0 - &rhs.0)
    }
}

impl Sub for PhaseModOne {
    type Output = PhaseModOne;
    fn sub(self, rhs: PhaseModOne) -> PhaseModOne {
        &self - &rhs
    }
}

impl Neg for &PhaseModOne {
    type Output = PhaseModOne;
    fn neg(self) -> PhaseModOne {
        PhaseModOne::new(-&self.0)
    }
}

impl Neg for PhaseModOne {
    type Output = PhaseModOne;
    fn neg(self) -> PhaseModOne {
        -&self
    }
}

impl From<BigRational> for PhaseModOne {
    fn from(r: BigRational) -> Self {
        PhaseModOne::new(r)
    }
}

impl fmt::Display for PhaseModOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

impl fmt::Debug for PhaseModOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhaseModOne({})", format_rational(&self.0))
    }
}

impl FromStr for PhaseModOne {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(PhaseModOne::new)
    }
}

impl Serialize for PhaseModOne {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PhaseModOne {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Always `num/den`, including integers (`3/1`).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|e| format!("bad numerator in `{s}`: {e}"))?;
    let d: BigInt = d.parse().map_err(|e| format!("bad denominator in `{s}`: {e}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(n, d))
}
