//! Closed-form checks for the Weyl and Toeplitz constructors.

use fock_core::basis::ln_factorial;
use fock_core::operators::{
    adjoint, compose, max_entry_distance, parity_matrix, toeplitz_matrix,
    toeplitz_radial_eigenvalues, weyl_matrix,
};
use fock_core::quad::make_rule;
use fock_core::symbols::{RadialProfile, SymbolSpec};
use fock_core::{QuadratureRule, RuleKind, TruncatedOperator};
use num_complex::Complex64;

fn planar() -> QuadratureRule {
    make_rule(RuleKind::PlanarPolar, &[200, 256]).unwrap()
}

fn radial() -> QuadratureRule {
    make_rule(RuleKind::RadialLaguerre, &[200]).unwrap()
}

/// Associated Laguerre polynomial `L_n^{(alpha)}(x)` by the three-term
/// recurrence; exact for the small degrees used here.
fn assoc_laguerre(n: usize, alpha: usize, x: f64) -> f64 {
    let a = alpha as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Independent closed form for the Weyl matrix entry `<W_z e_n, e_m>`:
/// the displaced-oscillator expression through associated Laguerre
/// polynomials.
fn weyl_entry_oracle(z: Complex64, m: usize, n: usize) -> Complex64 {
    let s = z.norm_sqr();
    let gauss = (-0.5 * s).exp();
    if m >= n {
        let scale = (0.5 * (ln_factorial(n) - ln_factorial(m))).exp();
        gauss * scale * z.conj().powu((m - n) as u32) * assoc_laguerre(n, m - n, s)
    } else {
        let scale = (0.5 * (ln_factorial(m) - ln_factorial(n))).exp();
        gauss * scale * (-z).powu((n - m) as u32) * assoc_laguerre(m, n - m, s)
    }
}

#[test]
fn weyl_entries_match_laguerre_oracle() {
    let dim = 20;
    for &z in &[
        Complex64::new(1.0, 0.0),
        Complex64::new(0.5, -0.3),
        Complex64::new(0.0, 0.9),
        Complex64::new(-1.2, 0.7),
    ] {
        let w = weyl_matrix(z, dim).unwrap();
        for m in 0..dim {
            for n in 0..dim {
                let want = weyl_entry_oracle(z, m, n);
                let got = w.entry(m, n);
                assert!(
                    (got - want).norm() <= 1e-12,
                    "z={z} entry ({m},{n}): {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn weyl_truncations_are_nested() {
    let z = Complex64::new(0.8, -0.6);
    let big = weyl_matrix(z, 64).unwrap();
    let small = weyl_matrix(z, 48).unwrap();
    let block = big.leading_block(48).unwrap();
    assert!(max_entry_distance(&block, &small).unwrap() <= 1e-14);
}

#[test]
fn weyl_adjoint_is_weyl_of_negated_argument() {
    let z = Complex64::new(0.7, 0.4);
    let w = weyl_matrix(z, 32).unwrap();
    let w_neg = weyl_matrix(-z, 32).unwrap();
    assert!(max_entry_distance(&adjoint(&w), &w_neg).unwrap() <= 1e-13);
}

#[test]
fn weyl_near_unitarity_on_leading_block() {
    let dim = 48;
    for &z in &[Complex64::new(1.0, 0.0), Complex64::new(0.6, -0.8)] {
        let w = weyl_matrix(z, dim).unwrap();
        let gram = compose(&adjoint(&w), &w).unwrap();
        let mut defect = gram.leading_block(dim / 2).unwrap();
        for n in 0..defect.dim {
            let d = defect.entry(n, n) - Complex64::ONE;
            defect.set(n, n, d);
        }
        let norm = defect.spectral_norm();
        assert!(norm <= 1e-8, "z={z}: defect {norm:.3e}");
    }
}

#[test]
fn weyl_satisfies_ccr_on_leading_block() {
    let dim = 48;
    let cases = [
        (Complex64::new(0.4, 0.3), Complex64::new(-0.2, 0.5)),
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)),
        (Complex64::new(-0.7, -0.1), Complex64::new(0.3, -0.6)),
    ];
    for (z, w) in cases {
        let lhs = compose(&weyl_matrix(z, dim).unwrap(), &weyl_matrix(w, dim).unwrap()).unwrap();
        let phase = Complex64::new(0.0, -(z * w.conj()).im).exp();
        let mut rhs = weyl_matrix(z + w, dim).unwrap();
        for e in rhs.entries.iter_mut() {
            *e *= phase;
        }
        let lhs_block = lhs.leading_block(dim / 2).unwrap();
        let rhs_block = rhs.leading_block(dim / 2).unwrap();
        let dist = max_entry_distance(&lhs_block, &rhs_block).unwrap();
        assert!(dist <= 1e-8, "z={z}, w={w}: {dist:.3e}");
    }
}

#[test]
fn parity_conjugation_negates_the_weyl_parameter() {
    let dim = 32;
    let z = Complex64::new(0.9, -0.2);
    let r = parity_matrix(dim);
    let conjugated = compose(&r, &compose(&weyl_matrix(z, dim).unwrap(), &r).unwrap()).unwrap();
    let w_neg = weyl_matrix(-z, dim).unwrap();
    assert!(max_entry_distance(&conjugated, &w_neg).unwrap() <= 1e-13);
}

#[test]
fn constant_symbol_gives_identity() {
    let rule = planar();
    let t = toeplitz_matrix(
        &SymbolSpec::RadialProfile { g: RadialProfile::Constant { value: 1.0 } },
        24,
        &rule,
    )
    .unwrap();
    assert!(max_entry_distance(&t, &TruncatedOperator::identity(24)).unwrap() <= 1e-13);
}

#[test]
fn gaussian_radial_diagonal_is_geometric() {
    // f_x with x = 2: diagonal 2^{-(n+1)}.
    for rule in [radial(), planar()] {
        let t = toeplitz_matrix(&SymbolSpec::GaussianRadial { c: 1.0 }, 32, &rule).unwrap();
        for n in 0..32 {
            let want = 2f64.powi(-(n as i32 + 1));
            let got = t.entry(n, n);
            assert!(
                (got.re - want).abs() <= 1e-12 * want && got.im == 0.0,
                "n={n}: {got} vs {want}"
            );
            for m in 0..32 {
                if m != n {
                    assert_eq!(t.entry(m, n), Complex64::ZERO);
                }
            }
        }
    }
}

#[test]
fn radial_eigenvalue_sequences_match_closed_forms() {
    let rule = radial();
    let ones = toeplitz_radial_eigenvalues(&RadialProfile::Constant { value: 1.0 }, 40, &rule)
        .unwrap();
    for (n, a) in ones.iter().enumerate() {
        assert!((a - 1.0).abs() <= 1e-12, "n={n}: {a}");
    }
    // g(r) = r^2: a_n = Gamma(n+2)/n! = n + 1.
    let squares = toeplitz_radial_eigenvalues(&RadialProfile::Power { k: 2 }, 40, &rule).unwrap();
    for (n, a) in squares.iter().enumerate() {
        let want = (n + 1) as f64;
        assert!((a - want).abs() <= 1e-11 * want, "n={n}: {a} vs {want}");
    }
    let gauss = toeplitz_radial_eigenvalues(&RadialProfile::Gaussian { c: 1.0 }, 40, &rule)
        .unwrap();
    for (n, a) in gauss.iter().enumerate() {
        let want = 2f64.powi(-(n as i32 + 1));
        assert!((a - want).abs() <= 1e-12 * want, "n={n}");
    }
}

#[test]
fn angular_symbol_obeys_selection_rule() {
    let rule = planar();
    let t = toeplitz_matrix(&SymbolSpec::Angular { power: 2 }, 12, &rule).unwrap();
    // Even total degree: the radial integral is a polynomial moment, exact.
    assert!((t.entry(2, 0).re - 0.5f64.sqrt()).abs() <= 1e-13);
    for m in 0..12 {
        for n in 0..12 {
            if m != n + 2 {
                assert_eq!(t.entry(m, n), Complex64::ZERO, "({m},{n})");
            } else {
                // Oracle: Gamma((n+m)/2 + 1)/sqrt(n! m!).
                let want = (statrs::function::gamma::ln_gamma((n + m) as f64 / 2.0 + 1.0)
                    - 0.5 * (ln_factorial(n) + ln_factorial(m)))
                .exp();
                assert!(
                    (t.entry(m, n).re - want).abs() <= 1e-12,
                    "({m},{n}): {} vs {want}",
                    t.entry(m, n).re
                );
            }
        }
    }
    // Odd total degree: the radial integrand has a sqrt singularity in s, so
    // Gauss-Laguerre converges algebraically; 200 nodes give ~4e-5.
    let t1 = toeplitz_matrix(&SymbolSpec::Angular { power: 1 }, 8, &rule).unwrap();
    let want = 0.5 * std::f64::consts::PI.sqrt();
    assert!(
        (t1.entry(1, 0).re - want).abs() <= 1e-4,
        "{} vs {want}",
        t1.entry(1, 0).re
    );
}

#[test]
fn plane_wave_toeplitz_equals_weyl_matrix() {
    let rule = planar();
    let z0 = Complex64::new(0.4, -0.3);
    let t = toeplitz_matrix(&SymbolSpec::PlaneWave { z0: z0.into() }, 16, &rule).unwrap();
    let w = weyl_matrix(z0, 16).unwrap();
    let dist = max_entry_distance(&t, &w).unwrap();
    assert!(dist <= 1e-10, "distance {dist:.3e}");
}

#[test]
fn toeplitz_norm_is_dominated_by_symbol_sup() {
    let rule = planar();
    let symbols = vec![
        SymbolSpec::GaussianRadial { c: 1.0 },
        SymbolSpec::Angular { power: 2 },
        SymbolSpec::RadialProfile { g: RadialProfile::Indicator { r0: 0.5, r1: 1.5 } },
        SymbolSpec::PlaneWave { z0: (Complex64::new(0.3, 0.3)).into() },
    ];
    for f in symbols {
        let t = toeplitz_matrix(&f, 48, &rule).unwrap();
        let sup = f.sup_abs().expect("bounded test symbols");
        let norm = t.spectral_norm();
        assert!(norm <= sup + 1e-8, "{f:?}: norm {norm} vs sup {sup}");
    }
}

#[test]
fn nonnegative_symbols_give_positive_semidefinite_sections() {
    let rule = planar();
    let symbols = vec![
        SymbolSpec::RadialProfile { g: RadialProfile::Indicator { r0: 0.7, r1: 2.0 } },
        SymbolSpec::GaussianRadial { c: 0.5 },
    ];
    for f in symbols {
        let t = toeplitz_matrix(&f, 32, &rule).unwrap();
        assert!(t.hermitian_defect() <= 1e-12);
        let eigs = t.to_dmatrix().symmetric_eigenvalues();
        let min = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(min >= -1e-10, "{f:?}: min eigenvalue {min:.3e}");
    }
}

#[test]
fn toeplitz_rejects_mismatched_rules() {
    let line = make_rule(RuleKind::LineHermite, &[64]).unwrap();
    assert!(toeplitz_matrix(&SymbolSpec::GaussianRadial { c: 1.0 }, 8, &line).is_err());
    let radial_rule = radial();
    // Full-plane symbols need a planar rule.
    assert!(toeplitz_matrix(
        &SymbolSpec::PlaneWave { z0: Complex64::ONE.into() },
        8,
        &radial_rule
    )
    .is_err());
}
