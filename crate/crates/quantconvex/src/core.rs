//! Shared domain types: points, half-spaces, polytopes, balls, colored
//! families, and the certificate records every pipeline emits.
//!
//! All types are immutable values. Construction enforces the dimension
//! invariants; JSON deserialization goes through [`validate`] hooks so that
//! untrusted input cannot build ill-formed values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of `R^d`, coordinates as exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Parse("point needs dimension >= 1".into()));
        }
        Ok(Point(coords))
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Scalar::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn dot(&self, other: &Point) -> Scalar {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn dot_slice(&self, other: &[Scalar]) -> Scalar {
        assert_eq!(self.dim(), other.len());
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn sub(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Point {
        Point(self.0.iter().map(|c| c * s).collect())
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|c| -c).collect())
    }

    pub fn norm_sq(&self) -> Scalar {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().all(|c| c.is_exact())
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: self.dim() });
        }
        Ok(())
    }
}

/// The closed half-space `a . x <= b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub a: Vec<Scalar>,
    pub b: Scalar,
}

impl HalfSpace {
    pub fn new(a: Vec<Scalar>, b: Scalar) -> Result<Self> {
        let h = HalfSpace { a, b };
        h.check_normal()?;
        Ok(h)
    }

    fn check_normal(&self) -> Result<()> {
        if self.a.is_empty() {
            return Err(Error::Parse("half-space needs dimension >= 1".into()));
        }
        if self.a.iter().all(|c| c.is_zero()) {
            return Err(Error::Parse("half-space normal must be nonzero".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dot_slice(&self.a) <= self.b
    }

    /// Constraint slack `a . p - b`: negative strictly inside, zero on the
    /// boundary hyperplane.
    pub fn eval(&self, p: &Point) -> Scalar {
        &p.dot_slice(&self.a) - &self.b
    }

    /// Canonical form for equality tests: scaled so the first nonzero normal
    /// coordinate is +1 or -1.
    pub fn canonical(&self) -> HalfSpace {
        let lead = self
            .a
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero normal")
            .abs();
        HalfSpace {
            a: self.a.iter().map(|c| c / &lead).collect(),
            b: &self.b / &lead,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.a.iter().all(|c| c.is_exact()) && self.b.is_exact()
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        self.check_normal()?;
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: self.dim() });
        }
        Ok(())
    }
}

/// Convex polytope as an intersection of half-spaces. May be empty or
/// unbounded; queries must handle both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
}

impl HPolytope {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        let p = HPolytope { dim, halfspaces };
        p.validate()?;
        Ok(p)
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Parse("polytope needs dimension >= 1".into()));
        }
        for h in &self.halfspaces {
            h.validate(self.dim)?;
        }
        Ok(())
    }
}

/// Convex polytope as the hull of a nonempty point list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolytope {
    pub dim: usize,
    pub vertices: Vec<Point>,
}

impl VPolytope {
    pub fn new(dim: usize, vertices: Vec<Point>) -> Result<Self> {
        let p = VPolytope { dim, vertices };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Parse("polytope needs dimension >= 1".into()));
        }
        if self.vertices.is_empty() {
            return Err(Error::Parse("vertex list must be nonempty".into()));
        }
        for v in &self.vertices {
            v.validate(self.dim)?;
        }
        Ok(())
    }
}

/// The Euclidean ball `B_r(center)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: Scalar,
}

impl Ball {
    pub fn new(center: Point, radius: Scalar) -> Result<Self> {
        if radius.is_negative() {
            return Err(Error::Parse("ball radius must be >= 0".into()));
        }
        Ok(Ball { center, radius })
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        self.center.validate(dim)?;
        if self.radius.is_negative() {
            return Err(Error::Parse("ball radius must be >= 0".into()));
        }
        Ok(())
    }
}

/// A sequence of color classes, each a finite point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredFamily {
    pub dim: usize,
    pub classes: Vec<Vec<Point>>,
}

impl ColoredFamily {
    pub fn new(dim: usize, classes: Vec<Vec<Point>>) -> Result<Self> {
        let f = ColoredFamily { dim, classes };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Parse("family needs dimension >= 1".into()));
        }
        if self.classes.is_empty() {
            return Err(Error::Parse("family needs at least one class".into()));
        }
        for class in &self.classes {
            if class.is_empty() {
                return Err(Error::Parse("every color class must be nonempty".into()));
            }
            for p in class {
                p.validate(self.dim)?;
            }
        }
        Ok(())
    }
}

/// Certificate kinds, one per pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    CaratheodorySelection,
    SteinitzBall,
    SteinitzVolume,
    HellyVolume,
    HellyDiameter,
    ColorfulHelly,
    Tverberg,
    ColorfulTverberg,
}

/// One selected point: class index and point index within the class, with
/// the convex weight used by the producer when one is available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selected {
    pub class: usize,
    pub point: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Scalar>,
}

/// A selected point in a Tverberg instance: the source set (and color class
/// in colorful mode) plus the point index within that set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetPick {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
    pub set: usize,
    pub point: usize,
}

/// Partition witness for the Tverberg pipelines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionWitness {
    /// Selected points, one entry per used source set.
    pub picks: Vec<SetPick>,
    /// Parts as index lists into `picks`.
    pub parts: Vec<Vec<usize>>,
    /// Common point of the part hulls (the Tverberg point of the centers).
    pub common: Point,
    /// Source sets never selected from.
    #[serde(default)]
    pub unused_sets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// Rainbow selection, one point per class.
    Selection(Vec<Selected>),
    /// Subfamily of the input half-space family, by index.
    Subfamily(Vec<usize>),
    /// One half-space index per family.
    RainbowChoice(Vec<usize>),
    /// Partition of selected points with a common point.
    Partition(PartitionWitness),
}

/// Quantitative payload of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `ball` is contained in every relevant witness hull.
    Ball(Ball),
    /// Ratio of the witness volume to the reference volume, exact.
    VolumeRatio(Scalar),
    /// Squared ratio of the witness diameter to the reference diameter;
    /// squared to stay rational.
    DiameterRatioSq(Scalar),
}

/// A witness plus its quantitative claim. `verified` is set only by the
/// oracle module; producers always emit `false`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub witness: Witness,
    pub claim: Claim,
    pub verified: bool,
    /// Producer-side trace for humans; the oracle never reads this.
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub trace: serde_json::Value,
}

impl Certificate {
    pub fn new(kind: CertKind, witness: Witness, claim: Claim) -> Self {
        Certificate { kind, witness, claim, verified: false, trace: serde_json::Value::Null }
    }

    pub fn with_trace(mut self, trace: serde_json::Value) -> Self {
        self.trace = trace;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn dimension_agreement_enforced() {
        assert!(Point::new(vec![]).is_err());
        assert!(HalfSpace::new(vec![Scalar::zero(), Scalar::zero()], Scalar::one()).is_err());
        let h = HalfSpace::new(vec![s(1, 1), s(0, 1)], s(1, 1)).unwrap();
        assert!(HPolytope::new(3, vec![h.clone()]).is_err());
        assert!(HPolytope::new(2, vec![h]).is_ok());
        assert!(VPolytope::new(2, vec![]).is_err());
        let p = Point::new(vec![s(1, 2), s(1, 3)]).unwrap();
        assert!(VPolytope::new(1, vec![p.clone()]).is_err());
        assert!(VPolytope::new(2, vec![p]).is_ok());
        assert!(Ball::new(Point::origin(2), s(-1, 2)).is_err());
    }

    #[test]
    fn halfspace_canonical_form() {
        let h = HalfSpace::new(vec![s(-2, 1), s(4, 1)], s(6, 1)).unwrap();
        let c = h.canonical();
        assert_eq!(c.a, vec![s(-1, 1), s(2, 1)]);
        assert_eq!(c.b, s(3, 1));
        // Canonicalization is idempotent.
        assert_eq!(c.canonical(), c);
    }

    #[test]
    fn json_roundtrip() {
        let h = HalfSpace::new(vec![s(1, 2), s(-1, 3)], s(5, 7)).unwrap();
        let js = serde_json::to_string(&h).unwrap();
        assert_eq!(js, r#"{"a":["1/2","-1/3"],"b":"5/7"}"#);
        let back: HalfSpace = serde_json::from_str(&js).unwrap();
        assert_eq!(back, h);

        let fam = ColoredFamily::new(
            2,
            vec![vec![Point::new(vec![s(1, 1), s(0, 1)]).unwrap()]],
        )
        .unwrap();
        let js = serde_json::to_string(&fam).unwrap();
        let back: ColoredFamily = serde_json::from_str(&js).unwrap();
        assert_eq!(back, fam);
    }

    #[test]
    fn certificate_roundtrip() {
        let cert = Certificate::new(
            CertKind::SteinitzBall,
            Witness::Selection(vec![Selected { class: 0, point: 1, weight: Some(s(1, 2)) }]),
            Claim::Ball(Ball::new(Point::origin(2), s(1, 100)).unwrap()),
        );
        let js = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&js).unwrap();
        assert_eq!(back, cert);
        assert!(!back.verified);
    }
}
