//! q-Jacobi machinery for the q-Witt algebra and the q-Virasoro residual.
//!
//! The Gamma-weighted cyclic identity closes exactly for the q-Witt algebra.
//! For the central extension two renderings of the residual circulate: the
//! sigma-weighted form and a reduced cubic form. They are not the same
//! thing, so both are computed independently and compared, never assumed
//! equal. Measured behavior, guarded by the tests: on `m+n+p = 0` the
//! `<.>` factor of every `sigma_{a+b}<c>` term cancels and the sigma form
//! collapses to the cube-kernel cyclic sum, which telescopes to exactly
//! zero; the cubic rendering drops the bracket weights and is generically
//! nonzero.

use crate::qfield::{qangle, qint, sigma, QParam, Scalar};

/// The Gamma-weighted q-Jacobi combination
/// `[m-n][m+n-p]<p> + [n-p][n+p-m]<m> + [p-m][p+m-n]<n>`;
/// identically zero for all integer triples.
pub fn qjacobi_witt(m: i64, n: i64, p: i64, q: &QParam) -> Scalar {
    let t1 = qint(m - n, q) * qint(m + n - p, q) * qangle(p, q);
    let t2 = qint(n - p, q) * qint(n + p - m, q) * qangle(m, q);
    let t3 = qint(p - m, q) * qint(p + m - n, q) * qangle(n, q);
    t1 + t2 + t3
}

/// The two graded components of the cyclic sum
/// `[[L_m,L_n], Gamma(L_p)] + [[L_n,L_p], Gamma(L_m)] + [[L_p,L_m], Gamma(L_n)]`
/// in the centrally extended algebra.
#[derive(Clone, Debug)]
pub struct GammaBracketParts {
    /// Coefficient of the degree `m+n+p` generator; vanishes identically.
    pub ell_coeff: Scalar,
    /// Coefficient of the central generator; supported on `m+n+p = 0` and
    /// weighted by the sigma structure constants.
    pub chat_coeff: Scalar,
}

/// Cyclic double bracket with `Gamma(L_p) = <p> L_p`, split into the
/// generator part and the central part. Uses `[chat, L_p] = 0` (the central
/// generator has degree zero, so its q-bracket with anything closes to zero).
pub fn gamma_bracket_cyclic(m: i64, n: i64, p: i64, q: &QParam) -> GammaBracketParts {
    let ell_coeff = qjacobi_witt(m, n, p, q);
    let chat_coeff = if m + n + p == 0 {
        vir_sigma_form(m, n, p, q)
    } else {
        Scalar::zero(q.mode())
    };
    GammaBracketParts {
        ell_coeff,
        chat_coeff,
    }
}

/// The sigma-weighted residual
/// `sigma_{m+n}[m-n]<p> + sigma_{n+p}[n-p]<m> + sigma_{p+m}[p-m]<n>`.
fn vir_sigma_form(m: i64, n: i64, p: i64, q: &QParam) -> Scalar {
    let t1 = sigma(m + n, q) * qint(m - n, q) * qangle(p, q);
    let t2 = sigma(n + p, q) * qint(n - p, q) * qangle(m, q);
    let t3 = sigma(p + m, q) * qint(p - m, q) * qangle(n, q);
    t1 + t2 + t3
}

/// The reduced cubic combination
/// `[m+n+1][m+n][m+n-1] + [n+p+1][n+p][n+p-1] + [p+m+1][p+m][p+m-1]`,
/// which on `m+n+p = 0` collapses to
/// `[m+n+1][m+n][m+n-1] - [m+1][m][m-1] - [n+1][n][n-1]`.
fn vir_cubic_form(m: i64, n: i64, p: i64, q: &QParam) -> Scalar {
    let cube = |k: i64| qint(k + 1, q) * qint(k, q) * qint(k - 1, q);
    cube(m + n) + cube(n + p) + cube(p + m)
}

/// Outcome of the q-Virasoro Jacobi check at one triple.
#[derive(Clone, Debug)]
pub struct VirJacobiReport {
    /// Whether `m+n+p = 0`; residuals off the constraint are zero by the
    /// delta and flagged here.
    pub valid_triple: bool,
    /// The sigma-weighted residual; measures zero on every summing triple.
    pub sigma_form: Scalar,
    /// The reduced cubic rendering, which drops the bracket weights and is
    /// generically nonzero.
    pub cubic_form: Scalar,
    /// Whether the two independently coded forms agree exactly; reported, not
    /// presumed, since the reduction drops bracket weights.
    pub forms_equal: bool,
}

/// Residual of the Jacobi identity for the centrally extended algebra.
///
/// For triples off the `m+n+p = 0` constraint both forms are zero and the
/// report is flagged invalid.
pub fn vir_jacobi_residual(m: i64, n: i64, p: i64, q: &QParam) -> VirJacobiReport {
    if m + n + p != 0 {
        let zero = Scalar::zero(q.mode());
        return VirJacobiReport {
            valid_triple: false,
            sigma_form: zero.clone(),
            cubic_form: zero.clone(),
            forms_equal: true,
        };
    }
    let sigma_form = vir_sigma_form(m, n, p, q);
    let cubic_form = vir_cubic_form(m, n, p, q);
    let forms_equal = sigma_form == cubic_form;
    VirJacobiReport {
        valid_triple: true,
        sigma_form,
        cubic_form,
        forms_equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{default_schedule, Mode, DEFAULT_PIT_SEED};

    fn q2() -> QParam {
        QParam::from_ratio(2, 1).unwrap()
    }

    #[test]
    fn witt_jacobi_vanishes_on_degenerate_and_generic_triples() {
        let q = q2();
        assert!(qjacobi_witt(3, 3, 3, &q).is_zero());
        assert!(qjacobi_witt(2, 1, 0, &q).is_zero());
        let q32 = QParam::from_ratio(3, 2).unwrap();
        assert!(qjacobi_witt(5, -3, 2, &q32).is_zero());
    }

    #[test]
    fn witt_jacobi_vanishes_across_the_sample_schedule() {
        for q in default_schedule(8, DEFAULT_PIT_SEED) {
            for (m, n, p) in [(4, 2, -1), (6, -5, 3), (1, 0, -6), (-2, -3, -4)] {
                assert!(
                    qjacobi_witt(m, n, p, &q).is_zero(),
                    "failed at ({m},{n},{p}), q={q}"
                );
            }
        }
    }

    #[test]
    fn gamma_bracket_generator_part_always_cancels() {
        let q = QParam::from_ratio(7, 3).unwrap();
        for (m, n, p) in [(2, 1, -3), (4, 0, 1), (-2, 5, -3), (3, 3, -6)] {
            let parts = gamma_bracket_cyclic(m, n, p, &q);
            assert!(parts.ell_coeff.is_zero(), "({m},{n},{p})");
        }
    }

    #[test]
    fn gamma_bracket_central_part_cancels() {
        let q = q2();
        // zero off the constraint by the delta
        let parts = gamma_bracket_cyclic(2, 1, 5, &q);
        assert!(parts.chat_coeff.is_zero());
        // and measured zero on it: the <.> factors cancel against the sigma
        // denominators and the cube kernel telescopes
        let parts = gamma_bracket_cyclic(3, 2, -5, &q);
        assert!(parts.chat_coeff.is_zero());
    }

    #[test]
    fn vir_residual_vanishes_on_low_triples() {
        let q = q2();
        let report = vir_jacobi_residual(1, -1, 0, &q);
        assert!(report.valid_triple);
        assert!(report.sigma_form.is_zero());
    }

    #[test]
    fn vir_sigma_form_cancels_at_the_reference_triple() {
        // direct evaluation at q = 2, (m,n,p) = (3,2,-5): the three terms
        // reduce to ([6][5][4] - [4][3][2][7] + [3][2][8]) / ([2][3])
        // and that combination is exactly zero
        let q = q2();
        let report = vir_jacobi_residual(3, 2, -5, &q);
        assert!(report.valid_triple);
        assert_eq!(
            report.sigma_form,
            sigma(5, &q) * qint(1, &q) * qangle(5, &q) - sigma(3, &q) * qint(7, &q) * qangle(3, &q)
                + sigma(2, &q) * qint(8, &q) * qangle(2, &q)
        );
        assert!(report.sigma_form.is_zero());
    }

    #[test]
    fn vir_sigma_form_cancels_identically() {
        let q = QParam::from_ratio(7, 5).unwrap();
        for m in -5..=5i64 {
            for n in -5..=5i64 {
                let report = vir_jacobi_residual(m, n, -m - n, &q);
                assert!(
                    report.sigma_form.is_zero(),
                    "sigma residual unexpectedly nonzero at ({m},{n},{})",
                    -m - n
                );
            }
        }
    }

    #[test]
    fn vir_cubic_form_is_nonzero_and_disagrees() {
        // the reduced rendering drops the bracket weights; it does not vanish
        // and therefore differs from the (cancelling) sigma form
        let q = q2();
        let report = vir_jacobi_residual(3, 2, -5, &q);
        assert_eq!(report.cubic_form, Scalar::from_ratio(38_939_565, 4096));
        assert!(!report.cubic_form.is_zero());
        assert!(!report.forms_equal);
    }

    #[test]
    fn vir_residual_is_cyclic() {
        let q = QParam::from_ratio(5, 4).unwrap();
        for (m, n, p) in [(3, 2, -5), (4, -1, -3), (6, -2, -4)] {
            let a = vir_jacobi_residual(m, n, p, &q).sigma_form;
            let b = vir_jacobi_residual(n, p, m, &q).sigma_form;
            let c = vir_jacobi_residual(p, m, n, &q).sigma_form;
            assert_eq!(a, b);
            assert_eq!(b, c);
        }
    }

    #[test]
    fn degenerate_sigma_arguments_contribute_nothing() {
        // any sigma argument in {-1, 0, 1} kills its term
        let q = q2();
        let report = vir_jacobi_residual(2, -1, -1, &q);
        // sigma_{m+n} = sigma_1 = 0 and the remaining terms pair up
        let t2 = sigma(-2, &q) * qint(0, &q) * qangle(2, &q);
        let t3 = sigma(1, &q) * qint(-3, &q) * qangle(-1, &q);
        assert_eq!(report.sigma_form, t2 + t3);
    }

    #[test]
    fn off_constraint_triples_are_flagged() {
        let q = q2();
        let report = vir_jacobi_residual(1, 2, 3, &q);
        assert!(!report.valid_triple);
        assert!(report.sigma_form.is_zero());
        assert!(report.cubic_form.is_zero());
    }

    #[test]
    fn the_two_residual_forms_are_compared_not_assumed() {
        let q = q2();
        let report = vir_jacobi_residual(3, 2, -5, &q);
        // agreement is a finding either way; here the comparison surfaces
        // that the claimed reduction is not an identity
        assert_eq!(report.forms_equal, report.sigma_form == report.cubic_form);
        assert!(!report.forms_equal);
    }

    #[test]
    fn cubic_form_collapses_on_the_constraint() {
        let q = QParam::from_ratio(9, 5).unwrap();
        let cube = |k: i64| qint(k + 1, &q) * qint(k, &q) * qint(k - 1, &q);
        for (m, n) in [(3i64, 2i64), (5, -2), (-4, 1)] {
            let p = -m - n;
            let report = vir_jacobi_residual(m, n, p, &q);
            assert_eq!(report.cubic_form, cube(m + n) - cube(m) - cube(n));
        }
    }

    #[test]
    fn cubic_residual_fails_identity_testing() {
        // sampling certifies nonvanishing just as well: one nonzero
        // evaluation refutes the identity
        use crate::qfield::{default_schedule, pit_verify, DEFAULT_PIT_SEED};
        let samples = default_schedule(25, DEFAULT_PIT_SEED);
        let ok = pit_verify(
            |q| vir_jacobi_residual(3, 2, -5, q).cubic_form,
            20,
            &samples,
        )
        .unwrap();
        assert!(!ok);
        // while the sigma rendering passes as an identity
        let ok = pit_verify(
            |q| vir_jacobi_residual(3, 2, -5, q).sigma_form,
            20,
            &samples,
        )
        .unwrap();
        assert!(ok);
    }

    #[test]
    fn witt_jacobi_without_gamma_weights_fails() {
        // the plain cyclic combination (no <.> weights) does not vanish, which
        // is exactly why the Gamma twist is needed
        let q = q2();
        let plain =
            qint(1, &q) * qint(3, &q) + qint(1, &q) * qint(-1, &q) + qint(-2, &q) * qint(1, &q);
        assert!(!plain.is_zero());
        assert_eq!(plain, Scalar::from_ratio(7, 4));
    }

    #[test]
    fn chat_part_formula_matches_an_explicit_walk() {
        let q = q2();
        let (m, n, p) = (3i64, 2i64, -5i64);
        let parts = gamma_bracket_cyclic(m, n, p, &q);
        let mut want = Scalar::zero(Mode::Exact);
        for (a, b, c) in [(m, n, p), (n, p, m), (p, m, n)] {
            want = want + sigma(a + b, &q) * qint(a - b, &q) * qangle(c, &q);
        }
        assert_eq!(parts.chat_coeff, want);
    }
}
