//! Hierarchy coefficient calculus: the one-sided q-difference operator, the
//! triangular solves for the symbol coefficients s0, s1, s2, the w-assembly,
//! and the hierarchy right-hand side.
//!
//! The infinite alternating series the coefficients formally require are
//! replaced by their closed mode-diagonal solves: `(1 + tau) s = f` becomes
//! `s_m = f_m / (1 + q^m)` per mode, exactly. Multiplication by x is the mode
//! shift `n -> n+1` (x and z are the same circle variable). The `(q+1)`
//! weight in the w1 assembly is implemented literally as printed, not as the
//! symmetric q-integer `[2]`.

use crate::error::Result;
use crate::laurent::{DiagKind, LaurentField};
use crate::qfield::{QParam, Scalar};

/// One-sided (Jackson-type) q-derivative
/// `D_q f = (f(qx) - f(x)) / ((q-1) x)`, i.e. `x^m -> ((q^m-1)/(q-1)) x^{m-1}`.
pub fn jackson_dq(f: &LaurentField, q: &QParam) -> LaurentField {
    let one = Scalar::one(q.mode());
    let den = q.pow(1) - &one;
    let mut out = LaurentField::zero(f.mode());
    for (m, c) in f.iter() {
        let num = q.pow(m) - &one;
        out.add_to(m - 1, c * &(num / &den));
    }
    out
}

/// Symbol and assembled coefficients of the third-order hierarchy flow.
///
/// Defining relations, exact by construction and re-checked in tests:
/// `tau s0 + s0 = u1`, `s1 + tau s1 = u - D_q s0 - s0^2`,
/// `tau s2 + s2 = -D_q s1 - s0 s1 - s1 tau^-1 s0`.
#[derive(Clone, Debug)]
pub struct HierarchyCoeffs {
    pub u1: LaurentField,
    pub s0: LaurentField,
    pub s1: LaurentField,
    pub s2: LaurentField,
    pub w0: LaurentField,
    pub w1: LaurentField,
    pub w2: LaurentField,
}

/// Solves the coefficient chain for a given field `u`.
///
/// Fails with the offending mode if some `1 + q^m` vanishes on an
/// encountered mode (impossible for rational q, possible for complex q).
pub fn solve_coeffs(u: &LaurentField, q: &QParam) -> Result<HierarchyCoeffs> {
    let one = Scalar::one(q.mode());
    let q_minus_1 = q.pow(1) - &one;
    let q_plus_1 = q.pow(1) + &one;

    // u1 = (q-1) x u
    let u1 = u.shift(1).scale(&q_minus_1);
    let s0 = u1.diag_inverse(DiagKind::OnePlusTau, q)?;

    let f1 = u.sub(&jackson_dq(&s0, q)).sub(&s0.mul(&s0));
    let s1 = f1.diag_inverse(DiagKind::OnePlusTau, q)?;

    let f2 = jackson_dq(&s1, q)
        .add(&s0.mul(&s1))
        .add(&s1.mul(&s0.tau_apply(-1, q)))
        .neg();
    let s2 = f2.diag_inverse(DiagKind::OnePlusTau, q)?;

    let w2 = s0.tau_apply(2, q).add(&u1);
    let w1 = jackson_dq(&s0, q)
        .tau_apply(1, q)
        .scale(&q_plus_1)
        .add(&s1.tau_apply(2, q))
        .add(&s0.tau_apply(1, q).add(&s0).mul(&s0.tau_apply(1, q)))
        .add(u);
    let w0 = jackson_dq(&jackson_dq(&s0, q), q)
        .add(&jackson_dq(&s1, q).tau_apply(1, q).scale(&q_plus_1))
        .add(&u1.mul(&jackson_dq(&s0, q)))
        .add(&u1.mul(&s1.tau_apply(1, q)))
        .add(&u.mul(&s0))
        .add(&s2.tau_apply(2, q));

    Ok(HierarchyCoeffs {
        u1,
        s0,
        s1,
        s2,
        w0,
        w1,
        w2,
    })
}

/// The hierarchy flow
/// `D_q^3 u + w2 D_q^2 u + w1 D_q u - (D_q^2 w0 + u1 D_q w0)`.
pub fn hierarchy_rhs(u: &LaurentField, q: &QParam) -> Result<LaurentField> {
    let coeffs = solve_coeffs(u, q)?;
    Ok(hierarchy_rhs_from(u, &coeffs, q))
}

/// Same flow from precomputed coefficients.
pub fn hierarchy_rhs_from(u: &LaurentField, coeffs: &HierarchyCoeffs, q: &QParam) -> LaurentField {
    let d1 = jackson_dq(u, q);
    let d2 = jackson_dq(&d1, q);
    let d3 = jackson_dq(&d2, q);
    let dw0 = jackson_dq(&coeffs.w0, q);
    let ddw0 = jackson_dq(&dw0, q);
    d3.add(&coeffs.w2.mul(&d2))
        .add(&coeffs.w1.mul(&d1))
        .sub(&ddw0.add(&coeffs.u1.mul(&dw0)))
}

/// Truncated alternating series `sum_{n<terms} (-1)^n tau^n f` solving
/// `(1 + tau) s = f`; converges mode-wise when every `|q^m| < 1` on the
/// support. Kept as a rendering check against the exact diagonal solve.
pub fn one_plus_tau_series(f: &LaurentField, q: &QParam, terms: u32) -> LaurentField {
    let mut acc = LaurentField::zero(f.mode());
    for n in 0..terms {
        let term = f.tau_apply(n as i64, q);
        acc = if n % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}
