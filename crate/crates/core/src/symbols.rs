//! Parametric symbol functions.
//!
//! Operators are constructed from *descriptions* of their symbols rather than
//! bare closures, so that symbol identity can be serialized, hashed into
//! reports, and manipulated symbolically where closed forms exist (Gaussian
//! smoothing, translation, sup bounds).
//!
//! Three domains appear:
//!
//! * [`SymbolSpec`] — functions on the complex plane (Toeplitz symbols,
//!   convolution kernels);
//! * [`LineProfile`] — bounded functions on the real line (Fourier multipliers
//!   of singular integral operators, vertical-symbol generators);
//! * [`RadialProfile`] — functions of the radius alone, which induce diagonal
//!   Toeplitz matrices;
//!
//! plus [`AnalyticSpec`] for entire functions given by finite data (weights of
//! composition operators, derivatives of Volterra symbols) and [`MeasureSpec`]
//! for the averaging measures of Hausdorff operators.

use crate::error::{FockError, Result};
use crate::types::ComplexPoint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// One Gaussian bump `amp * e^{-c r^2}` of a radial mixture.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianTerm {
    pub amp: f64,
    pub c: f64,
}

/// A function of the radius `r = |z|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RadialProfile {
    /// `g(r) = value`.
    Constant { value: f64 },
    /// `g(r) = e^{-c r^2}`.
    Gaussian { c: f64 },
    /// `g(r) = r^k`.
    Power { k: u32 },
    /// Indicator of the annulus `r0 <= r < r1`.
    Indicator { r0: f64, r1: f64 },
    /// `g(r) = sum_j amp_j e^{-c_j r^2}`.
    GaussianMix { terms: Vec<GaussianTerm> },
}

impl RadialProfile {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            RadialProfile::Constant { value } => *value,
            RadialProfile::Gaussian { c } => (-c * r * r).exp(),
            RadialProfile::Power { k } => r.powi(*k as i32),
            RadialProfile::Indicator { r0, r1 } => {
                if r >= *r0 && r < *r1 {
                    1.0
                } else {
                    0.0
                }
            }
            RadialProfile::GaussianMix { terms } => {
                terms.iter().map(|t| t.amp * (-t.c * r * r).exp()).sum()
            }
        }
    }

    /// A bound on `sup_r |g(r)|`, or `None` if the profile is unbounded on
    /// `[0, oo)`.
    pub fn sup_abs(&self) -> Option<f64> {
        match self {
            RadialProfile::Constant { value } => Some(value.abs()),
            RadialProfile::Gaussian { c } => {
                if *c >= 0.0 {
                    Some(1.0)
                } else {
                    None
                }
            }
            RadialProfile::Power { k } => {
                if *k == 0 {
                    Some(1.0)
                } else {
                    None
                }
            }
            RadialProfile::Indicator { .. } => Some(1.0),
            RadialProfile::GaussianMix { terms } => {
                if terms.iter().all(|t| t.c >= 0.0) {
                    Some(terms.iter().map(|t| t.amp.abs()).sum())
                } else {
                    None
                }
            }
        }
    }
}

/// A bounded function on the real line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LineProfile {
    /// `m(x) = value`.
    Constant { value: f64 },
    /// `m(x) = below` for `x < threshold`, `above` otherwise.
    BoundedStep { threshold: f64, below: f64, above: f64 },
    /// `m(x) = amp * e^{-((x - center)/width)^2}`.
    Gaussian { amp: f64, center: f64, width: f64 },
    /// `m(x) = amp * cos(omega x + phase)`.
    Cosine { amp: f64, omega: f64, phase: f64 },
    /// Piecewise-linear interpolation of `(xs, values)`, clamped to the end
    /// values outside the grid. `xs` must be strictly increasing.
    Grid { xs: Vec<f64>, values: Vec<f64> },
    /// Smoothed step `below + (above - below) (1 + erf(rate (x - threshold)))/2`.
    Erf { threshold: f64, below: f64, above: f64, rate: f64 },
    /// `m(x) = inner(x - shift)`.
    Translated { shift: f64, inner: Box<LineProfile> },
}

impl LineProfile {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            LineProfile::Constant { value } => *value,
            LineProfile::BoundedStep { threshold, below, above } => {
                if x < *threshold {
                    *below
                } else {
                    *above
                }
            }
            LineProfile::Gaussian { amp, center, width } => {
                let u = (x - center) / width;
                amp * (-u * u).exp()
            }
            LineProfile::Cosine { amp, omega, phase } => amp * (omega * x + phase).cos(),
            LineProfile::Grid { xs, values } => {
                if xs.is_empty() {
                    return 0.0;
                }
                if x <= xs[0] {
                    return values[0];
                }
                if x >= xs[xs.len() - 1] {
                    return values[values.len() - 1];
                }
                let j = xs.partition_point(|&p| p <= x).min(xs.len() - 1);
                let (x0, x1) = (xs[j - 1], xs[j]);
                let t = (x - x0) / (x1 - x0);
                values[j - 1] * (1.0 - t) + values[j] * t
            }
            LineProfile::Erf { threshold, below, above, rate } => {
                below + (above - below) * 0.5 * (1.0 + erf(rate * (x - threshold)))
            }
            LineProfile::Translated { shift, inner } => inner.eval(x - shift),
        }
    }

    /// `sup_x |m(x)|` where it is cheap to bound exactly.
    pub fn sup_abs(&self) -> f64 {
        match self {
            LineProfile::Constant { value } => value.abs(),
            LineProfile::BoundedStep { below, above, .. }
            | LineProfile::Erf { below, above, .. } => below.abs().max(above.abs()),
            LineProfile::Gaussian { amp, .. } => amp.abs(),
            LineProfile::Cosine { amp, .. } => amp.abs(),
            LineProfile::Grid { values, .. } => {
                values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
            }
            LineProfile::Translated { inner, .. } => inner.sup_abs(),
        }
    }

    /// Convolution with the Gaussian kernel `g(x) = sqrt(2/pi) e^{-2 x^2}`
    /// (unit mass), returned in closed form.
    ///
    /// The kernel has variance 1/4, so a Gaussian profile widens by
    /// `width^2 -> width^2 + 1/2`, a cosine is attenuated by `e^{-omega^2/8}`,
    /// and a step becomes an [`LineProfile::Erf`] ramp of rate `sqrt(2)`.
    pub fn gaussian_smoothed(&self) -> Result<LineProfile> {
        match self {
            LineProfile::Constant { value } => Ok(LineProfile::Constant { value: *value }),
            LineProfile::BoundedStep { threshold, below, above } => Ok(LineProfile::Erf {
                threshold: *threshold,
                below: *below,
                above: *above,
                rate: SQRT_2,
            }),
            LineProfile::Gaussian { amp, center, width } => {
                let widened = (width * width + 0.5).sqrt();
                Ok(LineProfile::Gaussian {
                    amp: amp * width / widened,
                    center: *center,
                    width: widened,
                })
            }
            LineProfile::Cosine { amp, omega, phase } => Ok(LineProfile::Cosine {
                amp: amp * (-omega * omega / 8.0).exp(),
                omega: *omega,
                phase: *phase,
            }),
            LineProfile::Translated { shift, inner } => Ok(LineProfile::Translated {
                shift: *shift,
                inner: Box::new(inner.gaussian_smoothed()?),
            }),
            LineProfile::Grid { .. } | LineProfile::Erf { .. } => Err(FockError::Unsupported(
                "closed-form Gaussian smoothing is not available for grid or erf profiles".into(),
            )),
        }
    }

    /// The profile translated right by `shift`.
    pub fn translated(&self, shift: f64) -> LineProfile {
        LineProfile::Translated { shift, inner: Box::new(self.clone()) }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LineProfile::Grid { xs, values } => {
                if xs.len() != values.len() || xs.is_empty() {
                    return Err(FockError::InvalidParameter(
                        "grid profile needs equal, nonzero numbers of xs and values".into(),
                    ));
                }
                if xs.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(FockError::InvalidParameter(
                        "grid profile xs must be strictly increasing".into(),
                    ));
                }
                if xs.iter().chain(values).any(|v| !v.is_finite()) {
                    return Err(FockError::NonFinite("grid profile data".into()));
                }
                Ok(())
            }
            LineProfile::Gaussian { width, .. } => {
                if *width > 0.0 {
                    Ok(())
                } else {
                    Err(FockError::InvalidParameter("gaussian profile width must be positive".into()))
                }
            }
            LineProfile::Translated { inner, .. } => inner.validate(),
            _ => Ok(()),
        }
    }
}

/// Which half of the imaginary axis a vertical symbol reads its line profile
/// from: `f(z) = m0(sign * Im z)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerticalSign {
    #[default]
    Plus,
    Minus,
}

impl VerticalSign {
    pub fn factor(self) -> f64 {
        match self {
            VerticalSign::Plus => 1.0,
            VerticalSign::Minus => -1.0,
        }
    }
}

/// A symbol function on the complex plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SymbolSpec {
    /// Radial symbol `f(z) = g(|z|)`.
    RadialProfile { g: RadialProfile },
    /// `f(z) = (z/|z|)^power`, with `f(0) = 0` for nonzero power.
    Angular { power: i64 },
    /// `f(w) = e^{2 i Im(w conj(z0)) + |z0|^2 / 2}`, the symbol whose Toeplitz
    /// operator is the Weyl operator `W_{z0}`.
    PlaneWave { z0: ComplexPoint },
    /// Vertical symbol `f(z) = m0(sign * Im z)`.
    VerticalFromLine {
        m0: LineProfile,
        #[serde(default)]
        sign: VerticalSign,
    },
    /// `f(z) = e^{-c |z|^2}`.
    GaussianRadial { c: f64 },
    /// Nearest-neighbor interpolation of scattered samples.
    GridSamples { points: Vec<ComplexPoint>, values: Vec<ComplexPoint> },
    /// A line profile read along the real axis: `f(z) = m(Re z)`.
    Line { profile: LineProfile },
    /// `f(w) = scale * e^{sq |w|^2 + lin conj(w)} * factor(arg_scale w + arg_shift)`.
    ///
    /// This family is closed under the Berezin-side manipulations used for
    /// weighted composition operators.
    ExpQuadratic {
        scale: ComplexPoint,
        sq: ComplexPoint,
        lin: ComplexPoint,
        factor: AnalyticSpec,
        arg_scale: ComplexPoint,
        arg_shift: ComplexPoint,
    },
}

impl SymbolSpec {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            SymbolSpec::RadialProfile { g } => Complex64::new(g.eval(z.norm()), 0.0),
            SymbolSpec::Angular { power } => {
                if *power == 0 {
                    Complex64::ONE
                } else if z == Complex64::ZERO {
                    Complex64::ZERO
                } else {
                    Complex64::from_polar(1.0, *power as f64 * z.arg())
                }
            }
            SymbolSpec::PlaneWave { z0 } => {
                let z0: Complex64 = (*z0).into();
                let im = (z * z0.conj()).im;
                Complex64::new(0.0, 2.0 * im).exp() * (0.5 * z0.norm_sqr()).exp()
            }
            SymbolSpec::VerticalFromLine { m0, sign } => {
                Complex64::new(m0.eval(sign.factor() * z.im), 0.0)
            }
            SymbolSpec::GaussianRadial { c } => Complex64::new((-c * z.norm_sqr()).exp(), 0.0),
            SymbolSpec::GridSamples { points, values } => {
                let mut best = 0usize;
                let mut best_d = f64::INFINITY;
                for (i, p) in points.iter().enumerate() {
                    let d = (z - Complex64::from(*p)).norm_sqr();
                    if d < best_d {
                        best_d = d;
                        best = i;
                    }
                }
                values.get(best).copied().map(Complex64::from).unwrap_or(Complex64::ZERO)
            }
            SymbolSpec::Line { profile } => Complex64::new(profile.eval(z.re), 0.0),
            SymbolSpec::ExpQuadratic { scale, sq, lin, factor, arg_scale, arg_shift } => {
                let scale: Complex64 = (*scale).into();
                let sq: Complex64 = (*sq).into();
                let lin: Complex64 = (*lin).into();
                let arg = Complex64::from(*arg_scale) * z + Complex64::from(*arg_shift);
                scale * (sq * z.norm_sqr() + lin * z.conj()).exp() * factor.eval(arg)
            }
        }
    }

    /// A bound on `sup_z |f(z)|` where one is available.
    pub fn sup_abs(&self) -> Option<f64> {
        match self {
            SymbolSpec::RadialProfile { g } => g.sup_abs(),
            SymbolSpec::Angular { .. } => Some(1.0),
            SymbolSpec::PlaneWave { z0 } => {
                Some((0.5 * Complex64::from(*z0).norm_sqr()).exp())
            }
            SymbolSpec::VerticalFromLine { m0, .. } => Some(m0.sup_abs()),
            SymbolSpec::GaussianRadial { c } => if *c >= 0.0 { Some(1.0) } else { None },
            SymbolSpec::GridSamples { values, .. } => Some(
                values
                    .iter()
                    .fold(0.0f64, |acc, v| acc.max(Complex64::from(*v).norm())),
            ),
            SymbolSpec::Line { profile } => Some(profile.sup_abs()),
            SymbolSpec::ExpQuadratic { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SymbolSpec::GridSamples { points, values } => {
                if points.len() != values.len() || points.is_empty() {
                    return Err(FockError::InvalidParameter(
                        "grid samples need equal, nonzero numbers of points and values".into(),
                    ));
                }
                Ok(())
            }
            SymbolSpec::VerticalFromLine { m0, .. } => m0.validate(),
            SymbolSpec::Line { profile } => profile.validate(),
            _ => Ok(()),
        }
    }
}

/// An entire function described by finite data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AnalyticSpec {
    /// `f(z) = sum_k coeffs[k] z^k`.
    Polynomial { coeffs: Vec<ComplexPoint> },
    /// `f(z) = c K_b(z) = c e^{z conj(b)}`.
    KernelMultiple { c: ComplexPoint, b: ComplexPoint },
    /// `f(z) = p(z) e^{z conj(c)}` with `p` given by `coeffs`.
    ExpLinearTimesPoly { coeffs: Vec<ComplexPoint>, c: ComplexPoint },
}

impl AnalyticSpec {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            AnalyticSpec::Polynomial { coeffs } => horner(coeffs, z),
            AnalyticSpec::KernelMultiple { c, b } => {
                Complex64::from(*c) * (z * Complex64::from(*b).conj()).exp()
            }
            AnalyticSpec::ExpLinearTimesPoly { coeffs, c } => {
                horner(coeffs, z) * (z * Complex64::from(*c).conj()).exp()
            }
        }
    }

    /// Monomial coefficients `f(z) = sum_k a_k z^k`, truncated to `len`.
    pub fn monomial_coeffs(&self, len: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::ZERO; len];
        match self {
            AnalyticSpec::Polynomial { coeffs } => {
                for (k, c) in coeffs.iter().enumerate().take(len) {
                    out[k] = (*c).into();
                }
            }
            AnalyticSpec::KernelMultiple { c, b } => {
                let c: Complex64 = (*c).into();
                let bbar = Complex64::from(*b).conj();
                let mut term = c;
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot = term;
                    term *= bbar / (k as f64 + 1.0);
                }
            }
            AnalyticSpec::ExpLinearTimesPoly { coeffs, c } => {
                let cbar = Complex64::from(*c).conj();
                // exp coefficients cbar^j / j!
                let mut exp_co = vec![Complex64::ZERO; len];
                let mut term = Complex64::ONE;
                for (j, slot) in exp_co.iter_mut().enumerate() {
                    *slot = term;
                    term *= cbar / (j as f64 + 1.0);
                }
                for (k, p) in coeffs.iter().enumerate() {
                    let p: Complex64 = (*p).into();
                    if p == Complex64::ZERO {
                        continue;
                    }
                    for j in 0..len.saturating_sub(k) {
                        out[k + j] += p * exp_co[j];
                    }
                }
            }
        }
        out
    }

    /// Coefficients against the orthonormal basis `e_k = z^k / sqrt(k!)`,
    /// truncated to `len`: if `f = sum a_k z^k` then
    /// `<f, e_k> = a_k sqrt(k!)`.
    pub fn basis_coeffs(&self, len: usize) -> Vec<Complex64> {
        let mut out = self.monomial_coeffs(len);
        let mut sqrt_fact = 1.0f64;
        for (k, slot) in out.iter_mut().enumerate() {
            if k > 0 {
                sqrt_fact *= (k as f64).sqrt();
            }
            *slot *= sqrt_fact;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AnalyticSpec::Polynomial { coeffs } => {
                coeffs.iter().all(|c| Complex64::from(*c) == Complex64::ZERO)
            }
            AnalyticSpec::KernelMultiple { c, .. } => Complex64::from(*c) == Complex64::ZERO,
            AnalyticSpec::ExpLinearTimesPoly { coeffs, .. } => {
                coeffs.iter().all(|c| Complex64::from(*c) == Complex64::ZERO)
            }
        }
    }

    /// Value at the origin.
    pub fn at_zero(&self) -> Complex64 {
        match self {
            AnalyticSpec::Polynomial { coeffs } | AnalyticSpec::ExpLinearTimesPoly { coeffs, .. } => {
                coeffs.first().copied().map(Complex64::from).unwrap_or(Complex64::ZERO)
            }
            AnalyticSpec::KernelMultiple { c, .. } => (*c).into(),
        }
    }
}

fn horner(coeffs: &[ComplexPoint], z: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for c in coeffs.iter().rev() {
        acc = acc * z + Complex64::from(*c);
    }
    acc
}

/// A point mass of a [`MeasureSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureAtom {
    pub location: f64,
    pub weight: ComplexPoint,
}

/// A density on `[1, t_max]` sampled on a log-spaced grid and interpolated
/// linearly in `log t`. `values[k]` is the density (with respect to `dt`) at
/// `t_k = t_max^{k/(K-1)}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub t_max: f64,
    pub values: Vec<f64>,
}

/// A finite measure on `[1, oo)`: finitely many atoms plus an optional
/// density part.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpec {
    #[serde(default)]
    pub atoms: Vec<MeasureAtom>,
    #[serde(default)]
    pub density: Option<DensityProfile>,
}

impl MeasureSpec {
    pub fn from_atoms(atoms: &[(f64, f64)]) -> Self {
        MeasureSpec {
            atoms: atoms
                .iter()
                .map(|&(location, w)| MeasureAtom { location, weight: ComplexPoint::new(w, 0.0) })
                .collect(),
            density: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for atom in &self.atoms {
            if !(atom.location >= 1.0) {
                return Err(FockError::MeasureSupport(format!(
                    "rho((0, 1)) = 0 is required: atom at t = {} lies outside [1, oo)",
                    atom.location
                )));
            }
            if !atom.location.is_finite() || !Complex64::from(atom.weight).is_finite() {
                return Err(FockError::NonFinite("measure atom".into()));
            }
        }
        if let Some(d) = &self.density {
            if !(d.t_max > 1.0) {
                return Err(FockError::MeasureSupport(format!(
                    "density upper endpoint t_max = {} must exceed 1",
                    d.t_max
                )));
            }
            if d.values.len() < 2 {
                return Err(FockError::InvalidParameter(
                    "density profile needs at least two grid values".into(),
                ));
            }
            if d.values.iter().any(|v| !v.is_finite()) {
                return Err(FockError::NonFinite("density profile values".into()));
            }
        }
        Ok(())
    }

    /// The mass placed exactly at `t = 1` (atoms only; the density part gives
    /// no mass to a point).
    pub fn mass_at_one(&self) -> Complex64 {
        self.atoms
            .iter()
            .filter(|a| a.location == 1.0)
            .map(|a| Complex64::from(a.weight))
            .sum()
    }

    /// The moment `int t^{-(n+1)} drho(t)`.
    ///
    /// Density segments are integrated in closed form: on each grid interval
    /// the substitution `t = e^tau` turns the integrand into
    /// `e^{-n tau} (a + b tau)` with the profile linear in `tau`.
    pub fn moment(&self, n: usize) -> Complex64 {
        let mut acc: Complex64 = self
            .atoms
            .iter()
            .map(|a| {
                Complex64::from(a.weight) * (-(n as f64 + 1.0) * a.location.ln()).exp()
            })
            .sum();
        if let Some(d) = &self.density {
            acc += Complex64::new(density_moment(d, n as f64, false), 0.0);
        }
        acc
    }

    /// `int (1/t) d|rho|(t)`, the quantity controlling the operator norm.
    pub fn weighted_total_variation(&self) -> f64 {
        let mut acc: f64 = self
            .atoms
            .iter()
            .map(|a| Complex64::from(a.weight).norm() / a.location)
            .sum();
        if let Some(d) = &self.density {
            acc += density_moment(d, 0.0, true);
        }
        acc
    }
}

/// `int t^{-(n+1)} v(t) dt` over the density support, in closed form per
/// segment; with `absolute` the integrand is `t^{-(n+1)} |v(t)|` and segments
/// are split where the interpolant changes sign.
fn density_moment(d: &DensityProfile, n: f64, absolute: bool) -> f64 {
    let count = d.values.len();
    let dtau = d.t_max.ln() / (count - 1) as f64;
    let mut acc = 0.0;
    for seg in 0..count - 1 {
        let tau0 = seg as f64 * dtau;
        // v(e^tau) = a + b (tau - tau0) on the segment, density w.r.t. dt;
        // the dt integral of t^{-(n+1)} v is int e^{-n tau} vtilde dtau.
        let v0 = d.values[seg];
        let v1 = d.values[seg + 1];
        let b = (v1 - v0) / dtau;
        if absolute && v0 * v1 < 0.0 {
            // Split at the interpolant's root.
            let u_root = -v0 / b;
            acc += segment_integral(tau0, v0.abs(), v0.signum() * b, u_root, n);
            acc += segment_integral(tau0 + u_root, 0.0, v1.signum() * b, dtau - u_root, n);
        } else if absolute {
            let sign = if v0 != 0.0 { v0.signum() } else { v1.signum() };
            acc += segment_integral(tau0, v0.abs(), sign * b, dtau, n);
        } else {
            acc += segment_integral(tau0, v0, b, dtau, n);
        }
    }
    acc
}

/// `int_0^h e^{-n (tau0 + u)} (a + b u) du` in closed form.
fn segment_integral(tau0: f64, a: f64, b: f64, h: f64, n: f64) -> f64 {
    if n == 0.0 {
        return a * h + 0.5 * b * h * h;
    }
    let scale = (-n * tau0).exp();
    let e = (-n * h).exp();
    scale * (a * (1.0 - e) / n + b * (1.0 - (1.0 + n * h) * e) / (n * n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn line_profiles_evaluate() {
        let step = LineProfile::BoundedStep { threshold: 0.5, below: -1.0, above: 2.0 };
        assert_eq!(step.eval(0.4), -1.0);
        assert_eq!(step.eval(0.6), 2.0);
        assert_eq!(step.sup_abs(), 2.0);

        let grid = LineProfile::Grid { xs: vec![0.0, 1.0, 2.0], values: vec![0.0, 1.0, 0.0] };
        grid.validate().unwrap();
        assert_relative_eq!(grid.eval(0.25), 0.25);
        assert_relative_eq!(grid.eval(1.5), 0.5);
        assert_eq!(grid.eval(-3.0), 0.0);
        assert_eq!(grid.eval(9.0), 0.0);

        let shifted = step.translated(1.0);
        assert_eq!(shifted.eval(1.4), -1.0);
        assert_eq!(shifted.eval(1.6), 2.0);
    }

    #[test]
    fn gaussian_smoothing_matches_numerical_convolution() {
        // Oracle: m(x) = int g(y) m0(x - y) dy with g(y) = sqrt(2/pi) e^{-2y^2},
        // computed by trapezoidal quadrature on y in [-6, 6], split at any
        // discontinuity of the translated profile so the rule never straddles
        // a jump.
        let numeric = |m0: &LineProfile, x: f64| -> f64 {
            let g = |y: f64| (2.0 / std::f64::consts::PI).sqrt() * (-2.0 * y * y).exp();
            let trapz = |lo: f64, hi: f64| -> f64 {
                let steps = 20_000;
                let h = (hi - lo) / steps as f64;
                let mut acc = 0.0;
                for i in 0..=steps {
                    let y = lo + i as f64 * h;
                    let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
                    acc += w * g(y) * m0.eval(x - y);
                }
                acc * h
            };
            // Exclude a negligible sliver around the jump so every
            // trapezoid endpoint sees a one-sided value.
            let mut cuts = vec![(-6.0f64, 6.0f64)];
            if let LineProfile::BoundedStep { threshold, .. } = m0 {
                let jump = x - threshold;
                if jump > -6.0 && jump < 6.0 {
                    cuts = vec![(-6.0, jump - 1e-12), (jump + 1e-12, 6.0)];
                }
            }
            cuts.into_iter().map(|(lo, hi)| trapz(lo, hi)).sum()
        };
        let cases = vec![
            LineProfile::BoundedStep { threshold: 0.3, below: 0.0, above: 1.0 },
            LineProfile::Gaussian { amp: 2.0, center: -0.5, width: 0.8 },
            LineProfile::Cosine { amp: 1.5, omega: 2.0, phase: 0.7 },
            LineProfile::Constant { value: 0.75 },
        ];
        for m0 in cases {
            let smoothed = m0.gaussian_smoothed().unwrap();
            for &x in &[-1.2, 0.0, 0.3, 1.7] {
                let want = numeric(&m0, x);
                let got = smoothed.eval(x);
                assert!(
                    (want - got).abs() < 1e-7,
                    "{m0:?} at {x}: closed form {got} vs numeric {want}"
                );
            }
        }
    }

    #[test]
    fn smoothing_rejects_unsupported_profiles() {
        let grid = LineProfile::Grid { xs: vec![0.0, 1.0], values: vec![0.0, 1.0] };
        assert!(matches!(grid.gaussian_smoothed(), Err(FockError::Unsupported(_))));
    }

    #[test]
    fn plane_wave_symbol_matches_formula() {
        let z0 = Complex64::new(0.4, -0.9);
        let f = SymbolSpec::PlaneWave { z0: z0.into() };
        let w = Complex64::new(-1.1, 0.3);
        let expected = (Complex64::new(0.0, 2.0 * (w * z0.conj()).im)
            + 0.5 * z0.norm_sqr())
        .exp();
        let got = f.eval(w);
        assert!((got - expected).norm() < 1e-14);
        assert_relative_eq!(f.sup_abs().unwrap(), (0.5 * z0.norm_sqr()).exp());
    }

    #[test]
    fn angular_symbol_is_unimodular_off_origin() {
        let f = SymbolSpec::Angular { power: -3 };
        let z = Complex64::new(0.7, 0.2);
        let got = f.eval(z);
        assert_relative_eq!(got.norm(), 1.0, epsilon = 1e-14);
        let direct = (z / z.norm()).powi(-3);
        assert!((got - direct).norm() < 1e-13);
        assert_eq!(f.eval(Complex64::ZERO), Complex64::ZERO);
    }

    #[test]
    fn analytic_specs_expand_consistently() {
        let z = Complex64::new(0.6, -0.4);
        let specs = vec![
            AnalyticSpec::Polynomial {
                coeffs: vec![
                    ComplexPoint::new(1.0, 0.5),
                    ComplexPoint::new(0.0, -2.0),
                    ComplexPoint::new(0.3, 0.0),
                ],
            },
            AnalyticSpec::KernelMultiple {
                c: ComplexPoint::new(0.7, -0.1),
                b: ComplexPoint::new(0.9, 0.4),
            },
            AnalyticSpec::ExpLinearTimesPoly {
                coeffs: vec![ComplexPoint::new(0.2, 0.0), ComplexPoint::new(1.0, 1.0)],
                c: ComplexPoint::new(-0.3, 0.8),
            },
        ];
        for spec in specs {
            let coeffs = spec.monomial_coeffs(64);
            let mut series = Complex64::ZERO;
            let mut zp = Complex64::ONE;
            for c in &coeffs {
                series += c * zp;
                zp *= z;
            }
            let direct = spec.eval(z);
            assert!(
                (series - direct).norm() < 1e-12,
                "{spec:?}: series {series} vs direct {direct}"
            );
            assert!((spec.at_zero() - spec.eval(Complex64::ZERO)).norm() < 1e-14);
        }
    }

    #[test]
    fn kernel_multiple_basis_coeffs_are_normalized_kernel() {
        // c K_b has <f, e_n> = c conj(b)^n / sqrt(n!).
        let b = Complex64::new(0.8, -0.3);
        let spec = AnalyticSpec::KernelMultiple { c: ComplexPoint::new(1.0, 0.0), b: b.into() };
        let coeffs = spec.basis_coeffs(12);
        let mut expect = Complex64::ONE;
        for (n, got) in coeffs.iter().enumerate() {
            assert!((got - expect).norm() < 1e-13, "n={n}");
            expect *= b.conj() / ((n as f64 + 1.0).sqrt());
        }
    }

    #[test]
    fn measure_moments_match_closed_forms() {
        // Atom at x: moment_n = x^{-(n+1)}.
        let atoms = MeasureSpec::from_atoms(&[(2.0, 1.0), (3.0, 2.0)]);
        atoms.validate().unwrap();
        for n in 0..20 {
            let got = atoms.moment(n);
            let want = 2f64.powi(-(n as i32 + 1)) + 2.0 * 3f64.powi(-(n as i32 + 1));
            assert_relative_eq!(got.re, want, max_relative = 1e-14);
            assert_eq!(got.im, 0.0);
        }
        assert_eq!(atoms.mass_at_one(), Complex64::ZERO);
        assert_relative_eq!(atoms.weighted_total_variation(), 0.5 + 2.0 / 3.0);

        // Density 1/t^2 on [1, 10]: int t^{-(n+1)} t^{-2} dt = (1 - 10^{-(n+2)})/(n+2).
        let count = 20_001;
        let t_max = 10.0f64;
        let values: Vec<f64> = (0..count)
            .map(|k| {
                let t = (t_max.ln() * k as f64 / (count - 1) as f64).exp();
                t.powi(-2)
            })
            .collect();
        let dens = MeasureSpec { atoms: vec![], density: Some(DensityProfile { t_max, values }) };
        dens.validate().unwrap();
        for n in [0usize, 1, 5, 15] {
            let got = dens.moment(n).re;
            let want = (1.0 - t_max.powi(-(n as i32 + 2))) / (n as f64 + 2.0);
            assert_relative_eq!(got, want, max_relative = 5e-8);
        }
    }

    #[test]
    fn measure_validation_rejects_bad_support() {
        let bad = MeasureSpec::from_atoms(&[(0.5, 1.0)]);
        assert!(matches!(bad.validate(), Err(FockError::MeasureSupport(_))));
        let bad_density = MeasureSpec {
            atoms: vec![],
            density: Some(DensityProfile { t_max: 0.9, values: vec![1.0, 1.0] }),
        };
        assert!(matches!(bad_density.validate(), Err(FockError::MeasureSupport(_))));
    }

    #[test]
    fn absolute_variation_splits_sign_changes() {
        // v(t) linear in tau from -1 to 1 on [1, e]: total variation of the
        // signed integral is less than the absolute integral.
        let spec = MeasureSpec {
            atoms: vec![],
            density: Some(DensityProfile {
                t_max: std::f64::consts::E,
                values: vec![-1.0, 1.0],
            }),
        };
        // int (1/t)|v| dt = int_0^1 |(-1 + 2u)| du = 1/2.
        assert_relative_eq!(spec.weighted_total_variation(), 0.5, max_relative = 1e-12);
        // Signed: int_0^1 (-1 + 2u) du = 0.
        assert!(spec.moment(0).norm() < 1e-14);
    }

    #[test]
    fn vertical_symbol_reads_imaginary_part() {
        let m0 = LineProfile::BoundedStep { threshold: 0.0, below: 0.0, above: 1.0 };
        let plus = SymbolSpec::VerticalFromLine { m0: m0.clone(), sign: VerticalSign::Plus };
        let minus = SymbolSpec::VerticalFromLine { m0, sign: VerticalSign::Minus };
        let z = Complex64::new(5.0, 2.0);
        assert_eq!(plus.eval(z), Complex64::ONE);
        assert_eq!(minus.eval(z), Complex64::ZERO);
    }

    #[test]
    fn symbol_specs_roundtrip_through_toml() {
        let symbols = vec![
            SymbolSpec::GaussianRadial { c: 1.0 },
            SymbolSpec::Angular { power: 2 },
            SymbolSpec::PlaneWave { z0: ComplexPoint::new(0.3, -0.2) },
            SymbolSpec::RadialProfile {
                g: RadialProfile::GaussianMix {
                    terms: vec![GaussianTerm { amp: 1.0, c: 1.0 }, GaussianTerm { amp: 2.0, c: 2.0 }],
                },
            },
            SymbolSpec::VerticalFromLine {
                m0: LineProfile::BoundedStep { threshold: 0.0, below: 0.0, above: 1.0 },
                sign: VerticalSign::Minus,
            },
            SymbolSpec::Line {
                profile: LineProfile::Cosine { amp: 1.0, omega: 2.0, phase: 0.0 },
            },
        ];
        for sym in symbols {
            let text = toml::to_string(&sym).unwrap();
            let back: SymbolSpec = toml::from_str(&text).unwrap();
            assert_eq!(sym, back, "roundtrip failed for {text}");
        }
    }
}
