//! Berezin transforms, the Fourier-Weyl transform, quantum-harmonic-analysis
//! convolutions, the Bargmann transform, and the heat semigroup.
//!
//! Evaluations that read a truncated matrix through coherent states are only
//! trustworthy while the normalized-kernel coefficient mass stays inside the
//! truncation. The coefficients `|c_n(z)|^2` follow a Poisson distribution
//! with mean `|z|^2`, so the guarded region is `|z| <= sqrt(N)/2`: inside it
//! the discarded mass is a deep Poisson tail. Evaluations outside are still
//! computed but come back [`Flagged`] as unreliable.

use num_complex::Complex64;

use crate::basis::normalized_kernel_coeffs;
use crate::error::{FockError, Result};
use crate::operators::{
    adjoint, compose, weyl_matrix, weyl_scaled_basis_coeffs, Provenance, TruncatedOperator,
};
use crate::quad::QuadratureRule;
use crate::types::Flagged;

/// The canonical kernel grows like `e^{(|z|^2+|w|^2)/2}`; beyond this radius
/// per argument the prefactor alone exceeds `e^{36}` and evaluations are
/// refused rather than flagged.
pub const KERNEL_GUARD_RADIUS: f64 = 6.0;

/// Largest `|z|` at which [`bargmann_transform`] trusts the default 200-node
/// line rule: the integral recenters the Gaussian at distance `|z|` from the
/// origin, and the node range covers that displacement with margin up to
/// this radius.
pub const BARGMANN_SAFE_RADIUS: f64 = 8.0;

/// Radius of the disc on which kernel-based evaluations of an `N`-section
/// are reliable.
pub fn reliability_radius(dim: usize) -> f64 {
    0.5 * (dim as f64).sqrt()
}

/// Berezin transform `A~(z) = <A k_z, k_z>` of the truncated operator.
pub fn berezin(op: &TruncatedOperator, z: Complex64) -> Flagged<Complex64> {
    bivariate_berezin(op, z, z)
}

/// Bivariate Berezin transform `A~(w, z) = <A k_w, k_z>`, holomorphic in
/// `conj(w)` and `z` separately; its diagonal is [`berezin`].
pub fn bivariate_berezin(op: &TruncatedOperator, w: Complex64, z: Complex64) -> Flagged<Complex64> {
    let cw = normalized_kernel_coeffs(w, op.dim);
    let cz = normalized_kernel_coeffs(z, op.dim);
    let mut value = Complex64::ZERO;
    for (m, czm) in cz.iter().enumerate() {
        let mut row_dot = Complex64::ZERO;
        for (a, c) in op.row(m).iter().zip(&cw) {
            row_dot += a * c;
        }
        value += czm.conj() * row_dot;
    }
    let radius = reliability_radius(op.dim);
    Flagged { value, reliable: w.norm() <= radius && z.norm() <= radius }
}

/// Canonical integral kernel `K_A(z, w) = e^{(|w|^2+|z|^2)/2} <A k_w, k_z>`,
/// satisfying `A f(z) = int K_A(z, w) f(w) dmu(w)`.
///
/// Arguments beyond [`KERNEL_GUARD_RADIUS`] are rejected with
/// [`FockError::KernelOverflow`].
pub fn canonical_kernel(
    op: &TruncatedOperator,
    w: Complex64,
    z: Complex64,
) -> Result<Flagged<Complex64>> {
    if w.norm() > KERNEL_GUARD_RADIUS || z.norm() > KERNEL_GUARD_RADIUS {
        return Err(FockError::KernelOverflow {
            max: KERNEL_GUARD_RADIUS,
            z: z.norm(),
            w: w.norm(),
        });
    }
    let inner = bivariate_berezin(op, w, z);
    Ok(Flagged {
        value: inner.value * (0.5 * (w.norm_sqr() + z.norm_sqr())).exp(),
        reliable: inner.reliable,
    })
}

/// A function sampled on a point set, with per-point reliability flags.
#[derive(Clone, Debug)]
pub struct GridFunction {
    pub points: Vec<Complex64>,
    pub values: Vec<Complex64>,
    pub reliable: Vec<bool>,
}

/// Uniform `side x side` grid on the square `[-radius, radius]^2`
/// (row-major, endpoints included; `side >= 2`).
pub fn square_grid(radius: f64, side: usize) -> Vec<Complex64> {
    if side < 2 {
        return vec![Complex64::ZERO];
    }
    let step = 2.0 * radius / (side - 1) as f64;
    let mut points = Vec::with_capacity(side * side);
    for i in 0..side {
        let y = -radius + step * i as f64;
        for j in 0..side {
            points.push(Complex64::new(-radius + step * j as f64, y));
        }
    }
    points
}

/// Berezin transform sampled over a point set.
pub fn berezin_grid(op: &TruncatedOperator, points: &[Complex64]) -> GridFunction {
    let mut values = Vec::with_capacity(points.len());
    let mut reliable = Vec::with_capacity(points.len());
    for &z in points {
        let b = berezin(op, z);
        values.push(b.value);
        reliable.push(b.reliable);
    }
    GridFunction { points: points.to_vec(), values, reliable }
}

/// Heat semigroup on symbols,
/// `f^{(t)}(w) = (pi t)^{-1} int f(u) e^{-|w-u|^2/t} dA(u)`, evaluated by the
/// recentred planar rule (`u = w - sqrt(t) xi` turns the heat kernel into the
/// Gaussian measure in `xi`). `t = 0` returns `f(w)` itself; `t = 1` is the
/// Berezin transform of the multiplication symbol.
pub fn heat_transform<F>(f: F, t: f64, w: Complex64, rule: &QuadratureRule) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    if !t.is_finite() || t < 0.0 {
        return Err(FockError::InvalidParameter(format!(
            "heat transform needs t >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(f(w));
    }
    let planar = rule.as_planar()?;
    let root_t = t.sqrt();
    let mut acc = Complex64::ZERO;
    for (&weight, &xi) in planar.weights.iter().zip(&planar.points) {
        acc += weight * f(w - root_t * xi);
    }
    if !acc.is_finite() {
        return Err(FockError::NonFinite("heat transform accumulation".into()));
    }
    Ok(acc)
}

/// Both sides of the kernel composition identity
/// `(B A)~(w, z) = pi^{-1} int A~(w, xi) B~(xi, z) dA(xi)`.
#[derive(Clone, Copy, Debug)]
pub struct CompositionCheck {
    /// Bivariate Berezin transform of the composed section `B A`.
    pub composed: Complex64,
    /// The integral of the two bivariate transforms over the middle variable.
    pub integrated: Complex64,
    pub reliable: bool,
}

/// Evaluates the composition identity for a pair of sections at `(w, z)`.
///
/// For sections the identity is exact (the coherent-state resolution of the
/// identity truncates to the identity matrix), so the two fields differ only
/// by quadrature roundoff whenever the rule resolves polynomial degree
/// `dim - 1` per variable.
pub fn compose_berezin_check(
    a: &TruncatedOperator,
    b: &TruncatedOperator,
    w: Complex64,
    z: Complex64,
    rule: &QuadratureRule,
) -> Result<CompositionCheck> {
    let planar = rule.as_planar()?;
    let ba = compose(b, a)?;
    let lhs = bivariate_berezin(&ba, w, z);

    let dim = a.dim;
    let cw = normalized_kernel_coeffs(w, dim);
    let cz = normalized_kernel_coeffs(z, dim);
    // y = M_A c(w), g = c(z)^H M_B; the integrand is then
    // (c(xi)^H y)(g c(xi)), which carries e^{-|xi|^2} through the two kernel
    // coefficient vectors.
    let y = a.apply(&cw)?;
    let mut g = vec![Complex64::ZERO; dim];
    for (m, czm) in cz.iter().enumerate() {
        let factor = czm.conj();
        for (slot, e) in g.iter_mut().zip(b.row(m)) {
            *slot += factor * e;
        }
    }
    let mut acc = Complex64::ZERO;
    let mut cxi = vec![Complex64::ZERO; dim];
    for (idx, &xi) in planar.points.iter().enumerate() {
        let weight = planar.scaled_weights[idx];
        // Kernel coefficients at xi, inlined to reuse the buffer.
        cxi[0] = Complex64::new((-0.5 * planar.sq_abs[idx]).exp(), 0.0);
        let xc = xi.conj();
        for n in 1..dim {
            cxi[n] = cxi[n - 1] * xc / (n as f64).sqrt();
        }
        let mut left = Complex64::ZERO;
        let mut right = Complex64::ZERO;
        for ((c, yv), gv) in cxi.iter().zip(&y).zip(&g) {
            left += c.conj() * yv;
            right += gv * c;
        }
        acc += weight * left * right;
    }
    Ok(CompositionCheck { composed: lhs.value, integrated: acc, reliable: lhs.reliable })
}

/// Parity conjugation `R A R` (entrywise sign `(-1)^{m+n}`); exact.
pub fn parity_conjugate(op: &TruncatedOperator) -> TruncatedOperator {
    let dim = op.dim;
    let mut entries = op.entries.clone();
    for m in 0..dim {
        for n in 0..dim {
            if (m + n) % 2 == 1 {
                entries[m * dim + n] = -entries[m * dim + n];
            }
        }
    }
    TruncatedOperator {
        dim,
        entries,
        provenance: Provenance::Derived(format!("parity-conjugate({})", op.provenance)),
        tail_bound: op.tail_bound,
    }
}

/// The shift `alpha_z(A) = W_z A W_z^*` at the section level.
///
/// The product of sections differs from the section of the product by tail
/// leakage through the truncation edge; compare leading blocks when testing
/// shift-covariance identities.
pub fn shift_operator(op: &TruncatedOperator, z: Complex64) -> Result<TruncatedOperator> {
    let w = weyl_matrix(z, op.dim)?;
    compose(&compose(&w, op)?, &adjoint(&w))
}

/// Function-operator convolution from quantum harmonic analysis,
/// `(f * B) = int_C f(z) alpha_z(B) dA(z)`.
///
/// With the scaled Weyl sections `W^(z) = e^{|z|^2/2} W_z` (polynomially
/// bounded columns) the integrand regroups as
/// `pi f(z) W^(z) B W^(z)^H dmu(z)`, so the planar rule applies with plain
/// weights and every factor stays bounded.
pub fn qha_convolve_function_operator<F>(
    f: F,
    b: &TruncatedOperator,
    rule: &QuadratureRule,
) -> Result<TruncatedOperator>
where
    F: Fn(Complex64) -> Complex64,
{
    let planar = rule.as_planar()?;
    let dim = b.dim;
    let mut entries = vec![Complex64::ZERO; dim * dim];
    let mut what = vec![Complex64::ZERO; dim * dim];
    let mut t = vec![Complex64::ZERO; dim * dim];
    for (idx, &z) in planar.points.iter().enumerate() {
        let c = std::f64::consts::PI * planar.weights[idx] * f(z);
        if c == Complex64::ZERO {
            continue;
        }
        for q in 0..dim {
            let col = weyl_scaled_basis_coeffs(z, q, dim);
            for (m, &value) in col.iter().enumerate() {
                what[m * dim + q] = value;
            }
        }
        // t = B W^H, then P = W t, accumulated as c * P.
        for p in 0..dim {
            let b_row = b.row(p);
            let t_row = &mut t[p * dim..(p + 1) * dim];
            for n in 0..dim {
                let w_row = &what[n * dim..(n + 1) * dim];
                let mut acc = Complex64::ZERO;
                for (bq, wq) in b_row.iter().zip(w_row) {
                    acc += bq * wq.conj();
                }
                t_row[n] = acc;
            }
        }
        for m in 0..dim {
            let w_row = &what[m * dim..(m + 1) * dim];
            let out_row = &mut entries[m * dim..(m + 1) * dim];
            for (p, &wp) in w_row.iter().enumerate() {
                if wp == Complex64::ZERO {
                    continue;
                }
                let cw = c * wp;
                for (slot, tv) in out_row.iter_mut().zip(&t[p * dim..(p + 1) * dim]) {
                    *slot += cw * tv;
                }
            }
        }
    }
    TruncatedOperator::new(
        dim,
        entries,
        Provenance::Derived(format!("qha-function-convolution({})", b.provenance)),
    )
}

/// Operator-operator convolution from quantum harmonic analysis,
/// `(A * B)(z) = tr(A alpha_z(R B R))`, a function on the plane.
pub fn qha_convolve_operator_operator(
    a: &TruncatedOperator,
    b: &TruncatedOperator,
    z: Complex64,
) -> Result<Flagged<Complex64>> {
    if a.dim != b.dim {
        return Err(FockError::DimensionMismatch(format!(
            "convolving dimensions {} and {}",
            a.dim, b.dim
        )));
    }
    let dim = a.dim;
    let rbr = parity_conjugate(b);
    let mut what = vec![Complex64::ZERO; dim * dim];
    for q in 0..dim {
        let col = weyl_scaled_basis_coeffs(z, q, dim);
        for (m, &value) in col.iter().enumerate() {
            what[m * dim + q] = value;
        }
    }
    // u = W (R B R) W^H; tr(A alpha_z(RBR)) = e^{-|z|^2} sum A[m][p] u[p][m].
    let mut t = vec![Complex64::ZERO; dim * dim];
    for p in 0..dim {
        let rbr_row = rbr.row(p);
        for n in 0..dim {
            let w_row = &what[n * dim..(n + 1) * dim];
            let mut acc = Complex64::ZERO;
            for (bq, wq) in rbr_row.iter().zip(w_row) {
                acc += bq * wq.conj();
            }
            t[p * dim + n] = acc;
        }
    }
    let mut trace = Complex64::ZERO;
    for m in 0..dim {
        let a_row = a.row(m);
        for (p, &ap) in a_row.iter().enumerate() {
            if ap == Complex64::ZERO {
                continue;
            }
            let w_row = &what[p * dim..(p + 1) * dim];
            // u[p][m] = sum_k W[p][k] t-conjugation... regroup: (W t)[p][m]
            let mut upm = Complex64::ZERO;
            for (wk, tk) in w_row.iter().zip(t.iter().skip(m).step_by(dim)) {
                upm += wk * tk;
            }
            trace += ap * upm;
        }
    }
    let value = trace * (-z.norm_sqr()).exp();
    Ok(Flagged { value, reliable: z.norm() <= reliability_radius(dim) })
}

/// Fourier-Weyl transform `F_W(A)(xi) = tr(A W_{-xi})`.
pub fn fourier_weyl(op: &TruncatedOperator, xi: Complex64) -> Result<Flagged<Complex64>> {
    let w = weyl_matrix(-xi, op.dim)?;
    let dim = op.dim;
    let mut trace = Complex64::ZERO;
    for m in 0..dim {
        for (n, &a) in op.row(m).iter().enumerate() {
            trace += a * w.entries[n * dim + m];
        }
    }
    Ok(Flagged { value: trace, reliable: xi.norm() <= reliability_radius(dim) })
}

/// Bargmann transform
/// `B f(z) = (2/pi)^{1/4} int f(x) e^{2xz - x^2 - z^2/2} dx`,
/// mapping `L^2(R)` unitarily onto `F^2`; the Hermite functions
/// [`crate::basis::hermite_function`] map to the monomial basis.
pub fn bargmann_transform<F>(
    f: F,
    z: Complex64,
    rule: &QuadratureRule,
) -> Result<Flagged<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    let line = rule.as_line()?;
    let mut acc = Complex64::ZERO;
    for (k, &x) in line.nodes.iter().enumerate() {
        acc += line.weights[k] * f(x) * (2.0 * x * z).exp();
    }
    let value = acc * (2.0 / std::f64::consts::PI).powf(0.25) * (-0.5 * z * z).exp();
    if !value.is_finite() {
        return Err(FockError::NonFinite(format!("bargmann transform at {z}")));
    }
    Ok(Flagged { value, reliable: z.norm() <= BARGMANN_SAFE_RADIUS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::hermite_function;
    use crate::operators::{max_entry_distance, toeplitz_matrix, toeplitz_type_matrix};
    use crate::quad::{make_rule, RuleKind};
    use crate::symbols::SymbolSpec;

    fn planar() -> QuadratureRule {
        make_rule(RuleKind::PlanarPolar, &[200, 256]).unwrap()
    }

    fn line() -> QuadratureRule {
        make_rule(RuleKind::LineHermite, &[200]).unwrap()
    }

    #[test]
    fn berezin_of_identity_is_one_inside_the_radius() {
        let id = TruncatedOperator::identity(32);
        for &z in &[Complex64::ZERO, Complex64::new(1.0, -0.5), Complex64::new(1.9, 1.9)] {
            let b = berezin(&id, z);
            assert!(b.reliable, "z = {z} should be inside radius {}", reliability_radius(32));
            assert!(
                (b.value - Complex64::ONE).norm() <= 1e-8,
                "berezin({z}) = {}",
                b.value
            );
        }
        let outside = berezin(&id, Complex64::new(4.0, 3.0));
        assert!(!outside.reliable);
    }

    #[test]
    fn berezin_of_gaussian_toeplitz_matches_closed_form() {
        // T_{e^{-c|w|^2}} has Berezin transform e^{-c|z|^2/(1+c)} / (1+c).
        let c = 1.0;
        let op = toeplitz_matrix(&SymbolSpec::GaussianRadial { c }, 48, &planar()).unwrap();
        for &z in &[Complex64::new(0.3, 0.0), Complex64::new(-0.8, 1.1), Complex64::new(0.0, 1.5)] {
            let got = berezin(&op, z);
            assert!(got.reliable);
            let want = (-c * z.norm_sqr() / (1.0 + c)).exp() / (1.0 + c);
            assert!(
                (got.value.re - want).abs() <= 1e-10 && got.value.im.abs() <= 1e-10,
                "z = {z}: {} vs {want}",
                got.value
            );
        }
    }

    #[test]
    fn bivariate_diagonal_is_the_berezin_transform() {
        let op = weyl_matrix(Complex64::new(0.4, 0.7), 24).unwrap();
        let z = Complex64::new(0.9, -0.3);
        let diag = bivariate_berezin(&op, z, z);
        let single = berezin(&op, z);
        assert_eq!(diag.value, single.value);
    }

    #[test]
    fn canonical_kernel_of_weyl_matches_closed_form() {
        // K_{W_a}(z, w) = e^{z conj(a) - |a|^2/2 + (z - a) conj(w)}.
        let a = Complex64::new(0.5, -0.3);
        let op = weyl_matrix(a, 48).unwrap();
        for &(w, z) in &[
            (Complex64::new(0.6, 0.2), Complex64::new(-0.4, 0.9)),
            (Complex64::new(1.5, -1.0), Complex64::new(1.0, 1.0)),
            (Complex64::ZERO, Complex64::new(2.0, 0.0)),
        ] {
            let got = canonical_kernel(&op, w, z).unwrap();
            assert!(got.reliable);
            let want =
                (z * a.conj() - 0.5 * a.norm_sqr() + (z - a) * w.conj()).exp();
            assert!(
                (got.value - want).norm() <= 1e-10 * want.norm().max(1.0),
                "({w}, {z}): {} vs {want}",
                got.value
            );
        }
    }

    #[test]
    fn canonical_kernel_refuses_far_arguments() {
        let op = TruncatedOperator::identity(8);
        let err = canonical_kernel(&op, Complex64::new(7.0, 0.0), Complex64::ZERO).unwrap_err();
        assert!(matches!(err, FockError::KernelOverflow { .. }));
    }

    #[test]
    fn heat_transform_of_gaussian_has_closed_form() {
        // Heat flow of e^{-c|u|^2}: amplitude 1/(1+ct), width c/(1+ct).
        let c = 0.9;
        let f = |u: Complex64| Complex64::new((-c * u.norm_sqr()).exp(), 0.0);
        let rule = planar();
        for &t in &[0.25, 1.0, 2.5] {
            for &w in &[Complex64::new(1.2, -0.4), Complex64::ZERO] {
                let got = heat_transform(f, t, w, &rule).unwrap();
                let want = (-c * w.norm_sqr() / (1.0 + c * t)).exp() / (1.0 + c * t);
                assert!(
                    (got.re - want).abs() <= 1e-10 && got.im.abs() <= 1e-12,
                    "t = {t}, w = {w}: {got} vs {want}"
                );
            }
        }
        // t = 0 evaluates the symbol itself.
        let w = Complex64::new(0.7, 0.1);
        assert_eq!(heat_transform(f, 0.0, w, &rule).unwrap(), f(w));
        assert!(heat_transform(f, -1.0, w, &rule).is_err());
    }

    #[test]
    fn composition_identity_is_exact_for_sections() {
        let a = weyl_matrix(Complex64::new(0.3, 0.1), 20).unwrap();
        let b = toeplitz_matrix(&SymbolSpec::GaussianRadial { c: 0.7 }, 20, &planar()).unwrap();
        let rule = planar();
        for &(w, z) in &[
            (Complex64::new(0.5, 0.5), Complex64::new(-0.2, 0.8)),
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)),
        ] {
            let check = compose_berezin_check(&a, &b, w, z, &rule).unwrap();
            assert!(check.reliable);
            assert!(
                (check.composed - check.integrated).norm() <= 1e-11,
                "({w}, {z}): {} vs {}",
                check.composed,
                check.integrated
            );
        }
    }

    #[test]
    fn parity_conjugation_negates_the_weyl_parameter() {
        let z = Complex64::new(0.8, -0.6);
        let conjugated = parity_conjugate(&weyl_matrix(z, 24).unwrap());
        let negated = weyl_matrix(-z, 24).unwrap();
        assert!(max_entry_distance(&conjugated, &negated).unwrap() <= 1e-13);
    }

    #[test]
    fn shifting_a_weyl_operator_multiplies_by_a_phase() {
        // alpha_v(W_z) = e^{2i Im(z conj(v))} W_z.
        let z = Complex64::new(0.5, 0.2);
        let v = Complex64::new(-0.3, 0.4);
        let shifted = shift_operator(&weyl_matrix(z, 48).unwrap(), v).unwrap();
        let phase = Complex64::new(0.0, 2.0 * (z * v.conj()).im).exp();
        let mut expected = weyl_matrix(z, 48).unwrap();
        for e in expected.entries.iter_mut() {
            *e *= phase;
        }
        let dist = max_entry_distance(
            &shifted.leading_block(24).unwrap(),
            &expected.leading_block(24).unwrap(),
        )
        .unwrap();
        assert!(dist <= 1e-8, "leading-block distance {dist:.3e}");
    }

    #[test]
    fn function_convolution_with_a_projector_is_toeplitz_type() {
        // (1/pi) f * (e_j (x) e_j) = T_f^{(j)}, computed here on different
        // rules for the two sides.
        let j = 2;
        let dim = 10;
        let symbol = SymbolSpec::GaussianRadial { c: 0.8 };
        let direct =
            toeplitz_type_matrix(&symbol, j, dim, &make_rule(RuleKind::PlanarPolar, &[72, 144]).unwrap())
                .unwrap();
        let mut projector = TruncatedOperator::zeros(dim, Provenance::Derived("e_j x e_j".into()));
        projector.set(j, j, Complex64::ONE);
        let convolved = qha_convolve_function_operator(
            |u| symbol.eval(u),
            &projector,
            &make_rule(RuleKind::PlanarPolar, &[64, 64]).unwrap(),
        )
        .unwrap();
        let mut scaled = convolved.clone();
        for e in scaled.entries.iter_mut() {
            *e /= std::f64::consts::PI;
        }
        let dist = max_entry_distance(&scaled, &direct).unwrap();
        assert!(dist <= 1e-8, "convolution vs direct distance {dist:.3e}");
    }

    #[test]
    fn projector_autoconvolution_is_a_laguerre_density() {
        // (e_j (x) e_j) * (e_j (x) e_j) (z) = |<W_z e_j, e_j>|^2
        //                                   = e^{-|z|^2} L_j(|z|^2)^2.
        let dim = 24;
        for j in [0usize, 1] {
            let mut projector =
                TruncatedOperator::zeros(dim, Provenance::Derived("e_j x e_j".into()));
            projector.set(j, j, Complex64::ONE);
            for &z in &[Complex64::new(0.7, 0.0), Complex64::new(-0.4, 1.1)] {
                let got = qha_convolve_operator_operator(&projector, &projector, z).unwrap();
                assert!(got.reliable);
                let s = z.norm_sqr();
                let laguerre = if j == 0 { 1.0 } else { 1.0 - s };
                let want = (-s).exp() * laguerre * laguerre;
                assert!(
                    (got.value.re - want).abs() <= 1e-12 && got.value.im.abs() <= 1e-12,
                    "j = {j}, z = {z}: {} vs {want}",
                    got.value
                );
            }
        }
    }

    #[test]
    fn fourier_weyl_of_projectors_gives_laguerre_values() {
        // tr((e_j (x) e_j) W_{-xi}) = e^{-|xi|^2/2} L_j(|xi|^2).
        let dim = 32;
        let xi = Complex64::new(0.9, -0.5);
        let s = xi.norm_sqr();
        for (j, lag) in [(0usize, 1.0), (1, 1.0 - s), (2, 1.0 - 2.0 * s + 0.5 * s * s)] {
            let mut projector =
                TruncatedOperator::zeros(dim, Provenance::Derived("e_j x e_j".into()));
            projector.set(j, j, Complex64::ONE);
            let got = fourier_weyl(&projector, xi).unwrap();
            assert!(got.reliable);
            let want = (-0.5 * s).exp() * lag;
            assert!(
                (got.value.re - want).abs() <= 1e-12 && got.value.im.abs() <= 1e-14,
                "j = {j}: {} vs {want}",
                got.value
            );
        }
    }

    #[test]
    fn bargmann_transform_sends_hermite_functions_to_monomials() {
        let rule = line();
        for n in 0..=8usize {
            for &z in &[Complex64::new(0.6, 0.0), Complex64::new(-0.5, 1.2), Complex64::new(0.0, 2.0)] {
                let got = bargmann_transform(|x| hermite_function(n, x).into(), z, &rule).unwrap();
                assert!(got.reliable);
                let want = crate::basis::monomial_basis_eval(n, z);
                assert!(
                    (got.value - want).norm() <= 1e-9,
                    "n = {n}, z = {z}: {} vs {want}",
                    got.value
                );
            }
        }
    }

    #[test]
    fn grid_sampling_flags_points_outside_the_radius() {
        let op = TruncatedOperator::identity(16);
        let points = square_grid(3.0, 5);
        assert_eq!(points.len(), 25);
        let grid = berezin_grid(&op, &points);
        let radius = reliability_radius(16);
        for (i, &p) in grid.points.iter().enumerate() {
            assert_eq!(grid.reliable[i], p.norm() <= radius);
        }
        // The centre point is exact.
        let centre = points.iter().position(|p| *p == Complex64::ZERO).unwrap();
        assert_eq!(grid.values[centre], Complex64::ONE);
    }
}
