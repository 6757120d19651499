//! Property suites behind the `verify` command: each runner measures a set
//! of exact identities (or exact non-identities) and returns report rows.
//!
//! Expected-nonzero properties are first class: residuals the theory leaves
//! nonvanishing are asserted nonzero, so a refactor that accidentally zeroes
//! them is caught. The one exception is the cube-kernel cocycle residual,
//! which measures exactly zero on every summing triple; its row expects zero
//! and guards the cancellation instead.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::central::{
    antisymmetry_residual, cocycle_residual, cocycle_residual_generators, CentralFunctional,
    CentralVariant,
};
use crate::error::Result;
use crate::euler::{
    classical_bracket, classical_coad, classical_pairing, classical_rhs, coad_bracket_pairing,
    coad_rhs, gelfand_fuks,
};
use crate::jacobi::{gamma_bracket_cyclic, qjacobi_witt, vir_jacobi_residual};
use crate::laurent::LaurentField;
use crate::qfield::{default_schedule, qangle, qint, sigma, Mode, QParam, Scalar};
use crate::qop::{generator, generator_bracket, qbracket_vf, qbracket_vf_double_sum};
use crate::report::{Expectation, ReportRow};

/// Knobs shared by the suites; all deterministic given the seed.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub qs: Vec<QParam>,
    /// Generator index limit for bracket and closed-form sweeps.
    pub max_index: i64,
    /// Randomized-identity trial count.
    pub trials: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            qs: default_qs(),
            max_index: 8,
            trials: 100,
            seed: crate::qfield::DEFAULT_PIT_SEED,
        }
    }
}

/// Default rational q set used when the caller does not pass one.
pub fn default_qs() -> Vec<QParam> {
    [(2, 1), (3, 2), (5, 3), (-2, 1), (7, 5)]
        .into_iter()
        .map(|(p, r)| QParam::from_ratio(p, r).expect("valid default q"))
        .collect()
}

/// Random exact-mode field with support inside `[lo, hi]`.
pub fn random_exact_field(
    rng: &mut ChaCha8Rng,
    lo: i64,
    hi: i64,
    max_terms: usize,
) -> LaurentField {
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut pairs = Vec::with_capacity(terms);
    for _ in 0..terms {
        let n = rng.gen_range(lo..=hi);
        let num = rng.gen_range(-9..=9i64);
        let den = rng.gen_range(1..=4i64);
        if num != 0 {
            pairs.push((n, Scalar::from_ratio(num, den)));
        }
    }
    let field = LaurentField::from_pairs(Mode::Exact, &pairs);
    if field.is_zero() {
        LaurentField::basis(rng.gen_range(lo..=hi), Mode::Exact)
    } else {
        field
    }
}

fn row(suite: &str, property: &str, expectation: Expectation, passed: bool) -> ReportRow {
    ReportRow::new(suite, property, expectation, passed)
}

/// Generator bracket closure, the vector-field bracket cross-check, and the
/// residue-integral calculus.
pub fn bracket_suite(opts: &SuiteOptions) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    let suite = "bracket";
    let schedule = default_schedule(25, opts.seed);

    // operator-level closure at every index pair, certified across the schedule
    let limit = opts.max_index;
    let mut closure_ok = true;
    let mut first_failure: Option<(i64, i64)> = None;
    for m in -limit..=limit {
        for n in -limit..=limit {
            for q in &schedule {
                let got = crate::qop::weighted_generator_bracket(m, n, q);
                let (constant, degree) = generator_bracket(m, n, q);
                let want = generator(degree, q).scale(&constant);
                if got != want {
                    closure_ok = false;
                    first_failure.get_or_insert((m, n));
                }
            }
        }
    }
    let mut r = row(
        suite,
        "generator_bracket_closure",
        Expectation::Equal,
        closure_ok,
    );
    if let Some((m, n)) = first_failure {
        r = r.with_indices(&[m, n]);
    }
    rows.push(r);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for q in &opts.qs {
        let mut vf_ok = true;
        let mut calculus_ok = true;
        for _ in 0..opts.trials {
            let f = random_exact_field(&mut rng, -6, 6, 5);
            let g = random_exact_field(&mut rng, -6, 6, 5);
            if qbracket_vf(&f, &g, q) != qbracket_vf_double_sum(&f, &g, q) {
                vf_ok = false;
            }
            // residue of any q-derivative vanishes
            if !f.dq_apply(q).residue_integral().is_zero() {
                calculus_ok = false;
            }
            // integration by parts
            let ibp = f.tau_apply(1, q).mul(&g.dq_apply(q)).residue_integral()
                + f.dq_apply(q).mul(&g.tau_apply(-1, q)).residue_integral();
            if !ibp.is_zero() {
                calculus_ok = false;
            }
            // scaled pairs: residue((tau f)(tau g)) = q^-1 residue(f g)
            let scaled = f.tau_apply(1, q).mul(&g.tau_apply(1, q)).residue_integral()
                - q.pow(-1) * f.mul(&g).residue_integral();
            if !scaled.is_zero() {
                calculus_ok = false;
            }
            // shifted-derivative adjointness, first and third order
            let adj1 = f.mul(&g.d_apply(q)).residue_integral()
                + g.mul(&f.dhat_apply(q)).residue_integral();
            let d3 = g.d_apply(q).d_apply(q).d_apply(q);
            let dh3 = f.dhat_apply(q).dhat_apply(q).dhat_apply(q);
            let adj3 = f.mul(&d3).residue_integral() + g.mul(&dh3).residue_integral();
            if !adj1.is_zero() || !adj3.is_zero() {
                calculus_ok = false;
            }
        }
        rows.push(row(suite, "vf_bracket_double_sum", Expectation::Equal, vf_ok).with_q(q));
        rows.push(
            row(
                suite,
                "integration_calculus",
                Expectation::Zero,
                calculus_ok,
            )
            .with_q(q),
        );
    }
    Ok(rows)
}

/// Generator closed forms, antisymmetry, and coadjoint adjointness for every
/// central functional.
pub fn central_suite(opts: &SuiteOptions) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    let suite = "central";
    let limit = opts.max_index;
    for q in &opts.qs {
        for variant in CentralVariant::ALL {
            let psi = CentralFunctional::unit(variant, Mode::Exact);
            let mut closed_ok = true;
            for n in -limit..=limit {
                for m in [-n, -n + 1, 2 - n] {
                    let f = LaurentField::basis(n + 1, Mode::Exact);
                    let g = LaurentField::basis(m + 1, Mode::Exact);
                    if psi.evaluate(&f, &g, q)? != psi.generator_closed_form(n, m, q)? {
                        closed_ok = false;
                    }
                }
            }
            rows.push(
                row(
                    suite,
                    "generator_closed_form",
                    Expectation::Equal,
                    closed_ok,
                )
                .with_variant(variant.name())
                .with_q(q),
            );
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xa5a5);
    for q in &opts.qs {
        for variant in CentralVariant::ANTISYMMETRIC {
            let psi = CentralFunctional::unit(variant, Mode::Exact);
            let mut ok = true;
            for n in -limit..=limit {
                for m in -limit..=limit {
                    let f = LaurentField::basis(n + 1, Mode::Exact);
                    let g = LaurentField::basis(m + 1, Mode::Exact);
                    if !antisymmetry_residual(&psi, &f, &g, q)?.is_zero() {
                        ok = false;
                    }
                }
            }
            for _ in 0..opts.trials / 2 {
                let f = random_exact_field(&mut rng, -6, 6, 4);
                let g = random_exact_field(&mut rng, -6, 6, 4);
                if !antisymmetry_residual(&psi, &f, &g, q)?.is_zero() {
                    ok = false;
                }
            }
            rows.push(
                row(suite, "antisymmetry", Expectation::Zero, ok)
                    .with_variant(variant.name())
                    .with_q(q),
            );
        }
    }

    // psi0 fails antisymmetry; exhibit the reference pair
    let q2 = QParam::from_ratio(2, 1).expect("q = 2");
    let psi0 = CentralFunctional::unit(CentralVariant::Psi0, Mode::Exact);
    let exhibit = antisymmetry_residual(
        &psi0,
        &LaurentField::basis(3, Mode::Exact),
        &LaurentField::basis(-1, Mode::Exact),
        &q2,
    )?;
    rows.push(
        row(
            suite,
            "antisymmetry_failure",
            Expectation::Nonzero,
            !exhibit.is_zero(),
        )
        .with_variant("psi0")
        .with_indices(&[2, -2])
        .with_q(&q2)
        .with_residual(&exhibit),
    );

    // adjointness of the coadjoint derivation, every functional
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5a5a);
    for q in &opts.qs {
        for variant in CentralVariant::ALL {
            let psi = CentralFunctional::unit(variant, Mode::Exact);
            let mut ok = true;
            for _ in 0..opts.trials / 2 {
                let f = random_exact_field(&mut rng, -5, 5, 4);
                let g = random_exact_field(&mut rng, -5, 5, 4);
                let u = random_exact_field(&mut rng, -5, 5, 4);
                let c = Scalar::from_ratio(rng.gen_range(1..=9), rng.gen_range(1..=4));
                let lhs = coad_bracket_pairing(&f, &g, &u, &c, q, &psi)?;
                let rhs = g
                    .tau_apply(1, q)
                    .mul(&coad_rhs(&f, &u, &c, q, &psi)?)
                    .residue_integral();
                if lhs != rhs {
                    ok = false;
                }
            }
            rows.push(
                row(suite, "coadjoint_adjointness", Expectation::Equal, ok)
                    .with_variant(variant.name())
                    .with_q(q),
            );
        }
    }
    Ok(rows)
}

/// Cocycle residuals: path agreement everywhere, nonzero exhibits where the
/// theory leaves them nonzero, and the structural zero of the cube kernel.
pub fn cocycle_suite(opts: &SuiteOptions) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    let suite = "cocycle";
    let triples: Vec<(i64, i64, i64)> = {
        let mut v = Vec::new();
        for n in -4..=4i64 {
            for m in -4..=4i64 {
                v.push((n, m, -n - m));
            }
        }
        v
    };

    for q in &opts.qs {
        for variant in CentralVariant::ALL {
            let psi = CentralFunctional::unit(variant, Mode::Exact);
            let mut agree = true;
            for &(n, m, s) in &triples {
                let f = LaurentField::basis(n + 1, Mode::Exact);
                let g = LaurentField::basis(m + 1, Mode::Exact);
                let h = LaurentField::basis(s + 1, Mode::Exact);
                let field = cocycle_residual(&psi, &f, &g, &h, q)?;
                let closed = cocycle_residual_generators(&psi, n, m, s, q)?;
                if field != closed {
                    agree = false;
                }
            }
            rows.push(
                row(suite, "residual_path_agreement", Expectation::Equal, agree)
                    .with_variant(variant.name())
                    .with_q(q),
            );
        }
    }

    let q2 = QParam::from_ratio(2, 1).expect("q = 2");
    for (variant, (n, m, s)) in [
        (CentralVariant::Psi0, (2i64, 1i64, -3i64)),
        (CentralVariant::PsiCanonical, (3, -1, -2)),
    ] {
        let psi = CentralFunctional::unit(variant, Mode::Exact);
        let value = cocycle_residual_generators(&psi, n, m, s, &q2)?;
        rows.push(
            row(
                suite,
                "cocycle_failure",
                Expectation::Nonzero,
                !value.is_zero(),
            )
            .with_variant(variant.name())
            .with_indices(&[n, m, s])
            .with_q(&q2)
            .with_residual(&value),
        );
    }

    // the cube kernel cancels: measured zero on every summing triple
    let psi_tilde = CentralFunctional::unit(CentralVariant::PsiTilde, Mode::Exact);
    let mut tilde_zero = true;
    let mut witness = Scalar::zero(Mode::Exact);
    for q in &opts.qs {
        for &(n, m, s) in &triples {
            let value = cocycle_residual_generators(&psi_tilde, n, m, s, q)?;
            if !value.is_zero() {
                tilde_zero = false;
                witness = value;
            }
        }
    }
    rows.push(
        row(
            suite,
            "cube_kernel_cocycle_cancellation",
            Expectation::Zero,
            tilde_zero,
        )
        .with_variant("psi-tilde")
        .with_residual(&witness),
    );
    Ok(rows)
}

/// Gamma-weighted q-Jacobi identity, the cyclic bracket decomposition, and
/// the centrally extended residual in both renderings. The `corrupt_sigma`
/// hook shifts the sigma values fed into the structure-constant check to
/// prove the suite can fail.
pub fn jacobi_suite(opts: &SuiteOptions, corrupt_sigma: bool) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    let suite = "jacobi";
    let limit = opts.max_index.min(4);
    for q in &opts.qs {
        // sigma_m <m> [2][3] = [m+1][m][m-1]: the check where a corrupted
        // sigma is guaranteed visible
        let mut sigma_ok = true;
        for m in -2 * limit..=2 * limit {
            let mut s = sigma(m, q);
            if corrupt_sigma {
                s = s + Scalar::one(Mode::Exact);
            }
            let lhs = s * qangle(m, q) * qint(2, q) * qint(3, q);
            let rhs = qint(m + 1, q) * qint(m, q) * qint(m - 1, q);
            if lhs != rhs {
                sigma_ok = false;
            }
        }
        rows.push(
            row(
                suite,
                "sigma_structure_constant",
                Expectation::Equal,
                sigma_ok,
            )
            .with_q(q),
        );

        let mut jacobi_ok = true;
        let mut ell_ok = true;
        let mut chat_match = true;
        let mut chat_zero = true;
        for m in -limit..=limit {
            for n in -limit..=limit {
                for p in -limit..=limit {
                    if !qjacobi_witt(m, n, p, q).is_zero() {
                        jacobi_ok = false;
                    }
                    let parts = gamma_bracket_cyclic(m, n, p, q);
                    if !parts.ell_coeff.is_zero() {
                        ell_ok = false;
                    }
                    // recompute the central part through an independent walk
                    let mut want = Scalar::zero(Mode::Exact);
                    if m + n + p == 0 {
                        for (a, b, c) in [(m, n, p), (n, p, m), (p, m, n)] {
                            want = want + sigma(a + b, q) * qint(a - b, q) * qangle(c, q);
                        }
                    }
                    if parts.chat_coeff != want {
                        chat_match = false;
                    }
                    if !parts.chat_coeff.is_zero() {
                        chat_zero = false;
                    }
                }
            }
        }
        rows.push(row(suite, "witt_q_jacobi", Expectation::Zero, jacobi_ok).with_q(q));
        rows.push(
            row(
                suite,
                "gamma_bracket_generator_part",
                Expectation::Zero,
                ell_ok,
            )
            .with_q(q),
        );
        rows.push(
            row(
                suite,
                "gamma_bracket_central_part",
                Expectation::Equal,
                chat_match,
            )
            .with_q(q),
        );
        rows.push(
            row(
                suite,
                "sigma_residual_cancellation",
                Expectation::Zero,
                chat_zero,
            )
            .with_q(q),
        );
    }

    let q2 = QParam::from_ratio(2, 1).expect("q = 2");
    let report = vir_jacobi_residual(3, 2, -5, &q2);
    // the sigma rendering cancels identically; the cubic rendering does not,
    // and the mismatch between the two is itself reported
    rows.push(
        row(
            suite,
            "vir_q_sigma_residual",
            Expectation::Zero,
            report.sigma_form.is_zero(),
        )
        .with_indices(&[3, 2, -5])
        .with_q(&q2)
        .with_residual(&report.sigma_form),
    );
    rows.push(
        row(
            suite,
            "vir_q_cubic_residual_failure",
            Expectation::Nonzero,
            !report.cubic_form.is_zero(),
        )
        .with_indices(&[3, 2, -5])
        .with_q(&q2)
        .with_residual(&report.cubic_form),
    );
    rows.push(
        row(
            suite,
            "vir_q_reduction_mismatch",
            Expectation::Nonzero,
            !report.forms_equal,
        )
        .with_indices(&[3, 2, -5])
        .with_q(&q2)
        .with_residual(format!(
            "sigma={} cubic={}",
            report.sigma_form, report.cubic_form
        )),
    );
    Ok(rows)
}

/// Classical baseline: the Gelfand-Fuks cocycle, the pairing identity, and
/// the Euler derivation of the classical flow.
pub fn classical_suite(opts: &SuiteOptions) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    let suite = "classical";
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xc1a5);

    let mut cocycle_ok = true;
    let mut pairing_ok = true;
    let mut euler_ok = true;
    for _ in 0..opts.trials {
        let f = random_exact_field(&mut rng, -6, 6, 5);
        let g = random_exact_field(&mut rng, -6, 6, 5);
        let h = random_exact_field(&mut rng, -6, 6, 5);
        let cyclic = gelfand_fuks(&classical_bracket(&f, &g), &h)
            + gelfand_fuks(&classical_bracket(&g, &h), &f)
            + gelfand_fuks(&classical_bracket(&h, &f), &g);
        if !cyclic.is_zero() {
            cocycle_ok = false;
        }
        let c = Scalar::from_ratio(rng.gen_range(1..=9), rng.gen_range(1..=4));
        let b = Scalar::from_ratio(rng.gen_range(-9..=9), 3);
        let lhs = classical_pairing(&classical_bracket(&f, &g), &gelfand_fuks(&f, &g), &h, &c);
        let rhs = classical_pairing(
            &g,
            &b,
            &classical_coad(&f, &h, &c),
            &Scalar::zero(Mode::Exact),
        );
        if lhs != rhs {
            pairing_ok = false;
        }
        // Euler flow: coadjoint path equals -3uu' - cu''' exactly
        let got = classical_rhs(&f, &c);
        let want = f
            .mul(&f.ddz_apply())
            .scale(&Scalar::from_int(-3, Mode::Exact))
            .sub(&f.ddz_apply().ddz_apply().ddz_apply().scale(&c));
        if got != want {
            euler_ok = false;
        }
        // Burgers is the centerless case
        let burgers = classical_rhs(&f, &Scalar::zero(Mode::Exact));
        if burgers
            != f.mul(&f.ddz_apply())
                .scale(&Scalar::from_int(-3, Mode::Exact))
        {
            euler_ok = false;
        }
    }
    rows.push(row(
        suite,
        "gelfand_fuks_cocycle",
        Expectation::Zero,
        cocycle_ok,
    ));
    rows.push(row(
        suite,
        "coadjoint_pairing",
        Expectation::Equal,
        pairing_ok,
    ));
    rows.push(row(suite, "euler_flow_form", Expectation::Equal, euler_ok));
    Ok(rows)
}

/// Runs one named suite (or all of them).
pub fn run_suite(name: &str, opts: &SuiteOptions, corrupt_sigma: bool) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    let mut matched = false;
    if name == "bracket" || name == "all" {
        rows.extend(bracket_suite(opts)?);
        matched = true;
    }
    if name == "central" || name == "all" {
        rows.extend(central_suite(opts)?);
        matched = true;
    }
    if name == "cocycle" || name == "all" {
        rows.extend(cocycle_suite(opts)?);
        matched = true;
    }
    if name == "jacobi" || name == "all" {
        rows.extend(jacobi_suite(opts, corrupt_sigma)?);
        matched = true;
    }
    if name == "classical" || name == "all" {
        rows.extend(classical_suite(opts)?);
        matched = true;
    }
    if !matched {
        return Err(crate::error::Error::Parse(format!(
            "unknown suite {name:?}; expected bracket, central, cocycle, jacobi, classical, or all"
        )));
    }
    Ok(rows)
}
