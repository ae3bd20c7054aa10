//! Small shared value types.

use num_complex::Complex64;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A complex number as it appears in serialized specifications: a two-element
/// `[re, im]` array. Deserialization rejects non-finite components.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn c64(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        Complex64::new(p.re, p.im)
    }
}

impl From<f64> for ComplexPoint {
    fn from(x: f64) -> Self {
        Self { re: x, im: 0.0 }
    }
}

impl Serialize for ComplexPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.re, self.im).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (re, im) = <(f64, f64)>::deserialize(deserializer)?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(D::Error::custom("complex point components must be finite"));
        }
        Ok(Self { re, im })
    }
}

/// A value together with a reliability flag. Transform evaluations outside
/// the trusted radius of an `N`-dimensional truncation are still returned,
/// but arrive flagged rather than silently degraded.
#[derive(Clone, Copy, Debug)]
pub struct Flagged<T> {
    pub value: T,
    /// `true` when the evaluation is inside the reliability region.
    pub reliable: bool,
}

impl<T> Flagged<T> {
    pub fn reliable(value: T) -> Self {
        Self { value, reliable: true }
    }

    // The pair of constructors is named for the two states on purpose.
    #[allow(clippy::self_named_constructors)]
    pub fn flagged(value: T) -> Self {
        Self { value, reliable: false }
    }
}
