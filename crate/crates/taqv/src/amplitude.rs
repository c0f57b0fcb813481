//! Exact amplitude arithmetic for Clifford+T circuits.
//!
//! Every amplitude reachable from a computational basis state through the
//! supported gate set has the form `(1/sqrt(2))^k * (a + b*w + c*w^2 + d*w^3)`
//! where `w = e^{i*pi/4}` is the primitive eighth root of unity and
//! `a, b, c, d, k` are integers. [`AlgebraicAmplitude`] stores that 5-tuple
//! with arbitrary-precision integers, so amplitude comparison is exact and
//! never goes through floating point.
//!
//! Useful identities: `w^2 = i`, `w^4 = -1`, and `w - w^3 = sqrt(2)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

/// Magnitude bound on the scale exponent beyond which `to_complex` refuses to
/// produce a float. `2^(-1000)` already underflows `f64`, so nothing of
/// interest lies past this point.
const MAX_FLOAT_EXPONENT: i64 = 2_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AmplitudeError {
    /// The value does not fit in `f64` range (the scale exponent or a
    /// coefficient is too large in magnitude).
    #[error("amplitude out of f64 range: {0}")]
    NumericRange(String),
    /// A textual amplitude tuple could not be parsed.
    #[error("malformed amplitude tuple: {0}")]
    Malformed(String),
}

/// An exact amplitude `(1/sqrt(2))^k * (a + b*w + c*w^2 + d*w^3)`.
///
/// Values are kept in a canonical form (see `canonicalize`), so structural
/// equality coincides with equality of the represented complex numbers, and
/// the derived ordering is a deterministic total order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraicAmplitude {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
    k: BigInt,
}

/// One `z / sqrt(2)` step on the coefficient vector, valid only when all four
/// results are integers: multiply by `(w - w^3) / 2`.
fn coeff_div_sqrt2(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    ((b - d) / 2, (a + c) / 2, (b + d) / 2, (c - a) / 2)
}

/// One `z * sqrt(2)` step on the coefficient vector: multiply by `w - w^3`.
fn coeff_mul_sqrt2(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    (b - d, a + c, b + d, c - a)
}

impl AlgebraicAmplitude {
    /// Builds an amplitude from raw tuple components and canonicalizes it.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
        k: impl Into<BigInt>,
    ) -> Self {
        let mut amp = AlgebraicAmplitude {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
            k: k.into(),
        };
        amp.canonicalize();
        amp
    }

    pub fn zero() -> Self {
        AlgebraicAmplitude::new(0, 0, 0, 0, 0)
    }

    pub fn one() -> Self {
        AlgebraicAmplitude::new(1, 0, 0, 0, 0)
    }

    /// `w^p` for any exponent (reduced mod 8).
    pub fn omega_pow(p: i64) -> Self {
        AlgebraicAmplitude::one().mul_omega_pow(p)
    }

    /// `(1/sqrt(2))^k`.
    pub fn inv_sqrt2_pow(k: i64) -> Self {
        AlgebraicAmplitude::new(1, 0, 0, 0, k)
    }

    /// The tuple `(a, b, c, d, k)` in canonical form.
    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c, &self.d, &self.k)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Rewrites into the canonical representative: the zero tuple for zero,
    /// otherwise the unique form whose coefficient vector is not divisible by
    /// `sqrt(2)` in `Z[w]`. Dividing both the vector and the scale by
    /// `sqrt(2)` preserves the value, and stripping every such factor makes
    /// representatives unique, so equal values become identical tuples. The
    /// exponent `k` may go negative for values like plain `sqrt(2)`.
    fn canonicalize(&mut self) {
        if self.is_zero() {
            self.k = BigInt::zero();
            return;
        }
        // `z` is divisible by sqrt(2) in Z[w] iff a = c and b = d mod 2.
        while (&self.a - &self.c).is_even() && (&self.b - &self.d).is_even() {
            let (a, b, c, d) = coeff_div_sqrt2(&self.a, &self.b, &self.c, &self.d);
            self.a = a;
            self.b = b;
            self.c = c;
            self.d = d;
            self.k -= 1;
        }
    }

    /// Coefficient vector of this value re-expressed at scale exponent
    /// `k_target >= self.k` (a non-canonical view used to align addends).
    fn coeffs_at(&self, k_target: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
        let steps = (k_target - &self.k)
            .to_u64()
            .expect("scale alignment gap out of range");
        let mut v = (self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone());
        for _ in 0..steps {
            v = coeff_mul_sqrt2(&v.0, &v.1, &v.2, &v.3);
        }
        v
    }

    pub fn add(&self, other: &AlgebraicAmplitude) -> AlgebraicAmplitude {
        let k = self.k.clone().max(other.k.clone());
        let x = self.coeffs_at(&k);
        let y = other.coeffs_at(&k);
        AlgebraicAmplitude::new(x.0 + y.0, x.1 + y.1, x.2 + y.2, x.3 + y.3, k)
    }

    pub fn sub(&self, other: &AlgebraicAmplitude) -> AlgebraicAmplitude {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> AlgebraicAmplitude {
        AlgebraicAmplitude::new(-&self.a, -&self.b, -&self.c, -&self.d, self.k.clone())
    }

    /// Multiplies by `w^p`. One `w` step maps `(a,b,c,d)` to `(-d,a,b,c)`
    /// because `w^4 = -1`.
    pub fn mul_omega_pow(&self, p: i64) -> AlgebraicAmplitude {
        let steps = p.rem_euclid(8);
        let mut v = (self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone());
        for _ in 0..steps {
            v = (-v.3, v.0, v.1, v.2);
        }
        AlgebraicAmplitude::new(v.0, v.1, v.2, v.3, self.k.clone())
    }

    /// Divides by `sqrt(2)`. On a canonical tuple this is exactly `k + 1`.
    pub fn div_sqrt2(&self) -> AlgebraicAmplitude {
        AlgebraicAmplitude::new(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            &self.k + 1,
        )
    }

    /// Multiplies by `sqrt(2)`.
    pub fn mul_sqrt2(&self) -> AlgebraicAmplitude {
        let (a, b, c, d) = coeff_mul_sqrt2(&self.a, &self.b, &self.c, &self.d);
        AlgebraicAmplitude::new(a, b, c, d, self.k.clone())
    }

    /// Evaluates to a complex float. Fails only for values whose exponent or
    /// coefficients leave `f64` range; everything a bounded circuit produces
    /// converts fine.
    pub fn to_complex(&self) -> Result<Complex64, AmplitudeError> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let k = self
            .k
            .to_i64()
            .filter(|k| k.abs() <= MAX_FLOAT_EXPONENT)
            .ok_or_else(|| AmplitudeError::NumericRange(format!("exponent {}", self.k)))?;
        let coeff = |x: &BigInt| -> Result<f64, AmplitudeError> {
            x.to_f64()
                .filter(|f| f.is_finite())
                .ok_or_else(|| AmplitudeError::NumericRange(format!("coefficient {x}")))
        };
        let (a, b, c, d) = (coeff(&self.a)?, coeff(&self.b)?, coeff(&self.c)?, coeff(&self.d)?);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        // w = (1+i)/sqrt(2), w^2 = i, w^3 = (-1+i)/sqrt(2).
        let re = a + (b - d) * inv_sqrt2;
        let im = c + (b + d) * inv_sqrt2;
        let scale = 2f64.powf(-0.5 * k as f64);
        let value = Complex64::new(re * scale, im * scale);
        if value.re.is_finite() && value.im.is_finite() {
            Ok(value)
        } else {
            Err(AmplitudeError::NumericRange(self.to_string()))
        }
    }

    /// Squared magnitude as a float, via `to_complex`.
    pub fn norm_sqr(&self) -> Result<f64, AmplitudeError> {
        Ok(self.to_complex()?.norm_sqr())
    }

    /// Human-oriented rendering such as `1/sqrt(2)*(1+w^2)`, used in Dirac
    /// notation output. The `Display` impl keeps the machine-oriented tuple.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<String> = Vec::new();
        let names = ["", "w", "w^2", "w^3"];
        for (x, name) in [&self.a, &self.b, &self.c, &self.d].into_iter().zip(names) {
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            let body = if name.is_empty() {
                mag.to_string()
            } else if mag == BigInt::from(1) {
                name.to_string()
            } else {
                format!("{mag}*{name}")
            };
            if terms.is_empty() {
                terms.push(if x.is_negative() { format!("-{body}") } else { body });
            } else if x.is_negative() {
                terms.push(format!(" - {body}"));
            } else {
                terms.push(format!(" + {body}"));
            }
        }
        let z = terms.concat();
        let k = &self.k;
        if k.is_zero() {
            z
        } else {
            let z = if terms.len() > 1 { format!("({z})") } else { z };
            if k == &BigInt::from(1) {
                format!("1/sqrt(2)*{z}")
            } else if k.is_negative() {
                format!("sqrt(2)^{}*{z}", -k)
            } else {
                format!("(1/sqrt(2))^{k}*{z}")
            }
        }
    }
}

impl fmt::Display for AlgebraicAmplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.a, self.b, self.c, self.d, self.k)
    }
}

impl FromStr for AlgebraicAmplitude {
    type Err = AmplitudeError;

    /// Parses the tuple syntax `(a,b,c,d,k)`, whitespace tolerated.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| AmplitudeError::Malformed(format!("expected (a,b,c,d,k), got `{s}`")))?;
        let fields: Vec<&str> = inner.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(AmplitudeError::Malformed(format!(
                "expected 5 components in `{s}`, got {}",
                fields.len()
            )));
        }
        let mut parsed = Vec::with_capacity(5);
        for f in fields {
            let v = BigInt::from_str(f)
                .map_err(|_| AmplitudeError::Malformed(format!("bad integer `{f}` in `{s}`")))?;
            parsed.push(v);
        }
        let k = parsed.pop().unwrap();
        let d = parsed.pop().unwrap();
        let c = parsed.pop().unwrap();
        let b = parsed.pop().unwrap();
        let a = parsed.pop().unwrap();
        Ok(AlgebraicAmplitude::new(a, b, c, d, k))
    }
}
