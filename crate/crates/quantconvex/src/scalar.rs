//! Exact rational scalars with an optional binary64 fallback mode.
//!
//! All certified quantities in this crate are carried by [`Scalar`] in exact
//! mode. Approximate mode exists for large stress runs only and is rejected
//! by every certification path. Irrational quantities (norms, angles, pi)
//! never appear as scalars directly; they are handled through certified
//! rational enclosures computed here.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;

/// An exact rational (default) or binary64 scalar.
///
/// Exact values are always kept in reduced canonical form by `BigRational`.
/// Mixing exact and approximate operands taints the result approximate.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Exact(r)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Returns the exact rational payload or an error in approximate mode.
    pub fn expect_exact(&self) -> Result<&BigRational, Error> {
        match self {
            Scalar::Exact(r) => Ok(r),
            Scalar::Approx(_) => Err(Error::ApproximateInCertifiedPath),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx(x) => *x == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Approx(x) => *x > 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Approx(x) => *x < 0.0,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Approx(x) => Scalar::Approx(x.abs()),
        }
    }

    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                assert!(!r.is_zero(), "division by zero");
                Scalar::Exact(r.recip())
            }
            Scalar::Approx(x) => Scalar::Approx(1.0 / x),
        }
    }

    /// Renders `num/den` with canonical sign on the numerator; integers drop
    /// the denominator.
    pub fn render(&self) -> String {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Approx(x) => format!("~{x}"),
        }
    }

    /// Parses `"p/q"`, `"p"`, or `"~x"` (approximate mode).
    pub fn parse(s: &str) -> Result<Scalar, Error> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('~') {
            let x: f64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad approximate scalar {s:?}")))?;
            if !x.is_finite() {
                return Err(Error::Parse(format!("non-finite scalar {s:?}")));
            }
            return Ok(Scalar::Approx(x));
        }
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num_s.trim())
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den = BigInt::from_str(den_s.trim())
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Scalar::Exact(BigRational::new(num, den)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            (a, b) => a
                .to_f64()
                .partial_cmp(&b.to_f64())
                .expect("non-finite approximate scalar"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.$method(b)),
                    (a, b) => Scalar::Approx(a.to_f64().$method(b.to_f64())),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(_) => ser.serialize_str(&self.render()),
            Scalar::Approx(x) => ser.serialize_f64(*x),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Scalar;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or a number")
            }
            fn visit_str<E: serde::de::Error>(self, s: &str) -> Result<Scalar, E> {
                Scalar::parse(s).map_err(E::custom)
            }
            fn visit_f64<E: serde::de::Error>(self, x: f64) -> Result<Scalar, E> {
                if x.is_finite() {
                    Ok(Scalar::Approx(x))
                } else {
                    Err(E::custom("non-finite scalar"))
                }
            }
            fn visit_i64<E: serde::de::Error>(self, n: i64) -> Result<Scalar, E> {
                Ok(Scalar::from_int(n))
            }
            fn visit_u64<E: serde::de::Error>(self, n: u64) -> Result<Scalar, E> {
                Ok(Scalar::Exact(BigRational::from_integer(BigInt::from(n))))
            }
        }
        de.deserialize_any(V)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

// ---------------------------------------------------------------------------
// Certified rational enclosures.
// ---------------------------------------------------------------------------

/// A closed rational interval guaranteed to contain some real value.
#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn point(r: BigRational) -> Self {
        Enclosure { lo: r.clone(), hi: r }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn add(&self, o: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Enclosure) -> Enclosure {
        Enclosure { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        Enclosure {
            lo: cands.iter().min().unwrap().clone(),
            hi: cands.iter().max().unwrap().clone(),
        }
    }

    /// Division; requires the divisor interval to exclude zero.
    pub fn div(&self, o: &Enclosure) -> Enclosure {
        assert!(
            o.lo.is_positive() || o.hi.is_negative(),
            "division by interval containing zero"
        );
        let inv = Enclosure { lo: o.hi.recip(), hi: o.lo.recip() };
        self.mul(&inv)
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, r: &BigRational) -> Enclosure {
        self.mul(&Enclosure::point(r.clone()))
    }

    /// True if the whole enclosure is strictly below `x`.
    pub fn strictly_below(&self, x: &BigRational) -> bool {
        &self.hi < x
    }

    /// True if the whole enclosure is strictly above `x`.
    pub fn strictly_above(&self, x: &BigRational) -> bool {
        &self.lo > x
    }
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Certified enclosure of sqrt(x) for x >= 0, with absolute width <= prec.
pub fn sqrt_enclosure(x: &BigRational, prec: &BigRational) -> Enclosure {
    assert!(!x.is_negative(), "sqrt of negative rational");
    assert!(prec.is_positive());
    if x.is_zero() {
        return Enclosure::point(BigRational::zero());
    }
    // sqrt(p/q) = sqrt(p*q)/q. Scale by m so that 1/(q*m) <= prec.
    let p = x.numer().to_biguint().expect("nonneg numerator");
    let q = x.denom().to_biguint().expect("positive denominator");
    let inv = prec.recip();
    let m_int = (inv.numer().to_biguint().unwrap() / inv.denom().to_biguint().unwrap())
        + BigUint::one();
    let scaled = &p * &q * &m_int * &m_int;
    let root = scaled.sqrt(); // floor of the integer square root
    let den = BigInt::from_biguint(Sign::Plus, &q * &m_int);
    if &root * &root == scaled {
        return Enclosure::point(BigRational::new(
            BigInt::from_biguint(Sign::Plus, root),
            den,
        ));
    }
    let lo = BigRational::new(BigInt::from_biguint(Sign::Plus, root.clone()), den.clone());
    let hi = BigRational::new(BigInt::from_biguint(Sign::Plus, root + BigUint::one()), den);
    debug_assert!(&lo * &lo <= *x && &hi * &hi >= *x);
    Enclosure { lo, hi }
}

/// Certified rational upper bound on the Euclidean norm of a vector.
pub fn norm_upper(coords: &[BigRational], prec: &BigRational) -> BigRational {
    let sq: BigRational = coords.iter().map(|c| c * c).sum();
    sqrt_enclosure(&sq, prec).hi
}

/// Certified rational lower bound on the Euclidean norm of a vector.
pub fn norm_lower(coords: &[BigRational], prec: &BigRational) -> BigRational {
    let sq: BigRational = coords.iter().map(|c| c * c).sum();
    sqrt_enclosure(&sq, prec).lo
}

/// Default enclosure precision: 1e-9.
pub fn default_prec() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000_000i64))
}

/// Enclosure of arctan(1/x) for integer x >= 2, via the alternating series.
fn arctan_inv_enclosure(x: i64, prec: &BigRational) -> Enclosure {
    let xr = big(x);
    let x2 = &xr * &xr;
    let mut term = xr.recip(); // 1/x
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    // Alternating series with strictly decreasing terms: consecutive partial
    // sums bracket the limit.
    loop {
        let signed = if k % 2 == 0 { term.clone() } else { -term.clone() };
        sum += &signed;
        let next = &term / &x2 * big(2 * k + 1) / big(2 * k + 3);
        if &next < prec {
            let (lo, hi) = if k % 2 == 0 {
                (&sum - &next, sum.clone())
            } else {
                (sum.clone(), &sum + &next)
            };
            return Enclosure { lo, hi };
        }
        term = next;
        k += 1;
    }
}

/// Certified enclosure of pi via Machin's formula.
pub fn pi_enclosure(prec: &BigRational) -> Enclosure {
    let p = prec / big(64);
    let a = arctan_inv_enclosure(5, &p);
    let b = arctan_inv_enclosure(239, &p);
    a.scale(&big(16)).sub(&b.scale(&big(4)))
}

/// Certified enclosure of e^2 via the exponential series at 2.
pub fn e_squared_enclosure(prec: &BigRational) -> Enclosure {
    // e^2 = sum 2^k / k!; tail after n terms is < t_n * 2/(n+1) * 2 once n >= 3.
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let mut k: i64 = 1;
    loop {
        term = term * big(2) / big(k);
        sum += &term;
        if k >= 4 {
            let tail_bound = &term * big(4) / big(k + 1);
            if &tail_bound < prec {
                return Enclosure { lo: sum.clone(), hi: sum + tail_bound };
            }
        }
        k += 1;
    }
}

/// Enclosure of the Lemma-2.6 radius constant (pi/e^2) * d^(-2d-2).
pub fn steinitz_radius_constant(d: usize, prec: &BigRational) -> Enclosure {
    let p = prec / big(16);
    let pi = pi_enclosure(&p);
    let e2 = e_squared_enclosure(&p);
    let mut pow = BigRational::one();
    let dd = big(d as i64);
    for _ in 0..(2 * d + 2) {
        pow *= &dd;
    }
    pi.div(&e2).div(&Enclosure::point(pow))
}

/// Enclosure of sin(x) for rational x in [0, 2], via the Taylor series.
pub fn sin_enclosure(x: &BigRational, prec: &BigRational) -> Enclosure {
    assert!(!x.is_negative() && *x <= big(2), "sin enclosure domain is [0, 2]");
    let x2 = x * x;
    let mut term = x.clone();
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    loop {
        let signed = if k % 2 == 0 { term.clone() } else { -term.clone() };
        sum += &signed;
        let next = &term * &x2 / big((2 * k + 2) * (2 * k + 3));
        // Terms decrease strictly for x <= 2 from k = 0, so partial sums
        // bracket the limit.
        if &next < prec {
            let (lo, hi) = if k % 2 == 0 {
                (&sum - &next, sum.clone())
            } else {
                (sum.clone(), &sum + &next)
            };
            return Enclosure { lo, hi };
        }
        term = next;
        k += 1;
    }
}

/// Enclosure of cos(x) for rational x in [0, 2].
pub fn cos_enclosure(x: &BigRational, prec: &BigRational) -> Enclosure {
    assert!(!x.is_negative() && *x <= big(2), "cos enclosure domain is [0, 2]");
    let x2 = x * x;
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    loop {
        let signed = if k % 2 == 0 { term.clone() } else { -term.clone() };
        sum += &signed;
        let next = &term * &x2 / big((2 * k + 1) * (2 * k + 2));
        // For x <= 2 the term ratio is < 1 from k = 1 onward; only take the
        // alternating tail bound once terms are strictly decreasing.
        if k >= 1 && next < term && &next < prec {
            let (lo, hi) = if k % 2 == 0 {
                (&sum - &next, sum.clone())
            } else {
                (sum.clone(), &sum + &next)
            };
            return Enclosure { lo, hi };
        }
        term = next;
        k += 1;
    }
}

/// Enclosure of tan(x) for rational x in (0, 1.5); requires cos(x) certified
/// positive at the given precision.
pub fn tan_enclosure(x: &BigRational, prec: &BigRational) -> Enclosure {
    let s = sin_enclosure(x, prec);
    let c = cos_enclosure(x, prec);
    assert!(c.lo.is_positive(), "tan enclosure needs cos bounded away from 0");
    s.div(&c)
}
