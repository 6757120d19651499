//! Duality pairing, the coadjoint-action derivation, and right-hand-side
//! builders for the qKdV-type evolution equations and their classical
//! counterparts.
//!
//! The nonlinear term of every q-variant is the expanded coadjoint form
//! `(dq u) u + dq((tau^2 u)(tau u))`; the compact `(1+q tau)^2 u dq u`
//! shorthand is kept as a separate expression whose disagreement with the
//! expanded form is surfaced, never silently resolved (their classical
//! limits differ: 3uu' versus 4uu').

use num::complex::Complex64;

use crate::central::CentralFunctional;
use crate::error::{Error, Result};
use crate::laurent::{DiagKind, LaurentField};
use crate::qfield::{Mode, QParam, Scalar};
use crate::qop::{qbracket_vf, OperatorPipeline, SkewOperator, Stage};

/// Evolution equation selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationTag {
    ClassicalKdv,
    ClassicalBurgers,
    /// Third-order linear operator `tau d^3` (from `psi0`).
    QKdvPsi0,
    /// Linear operator `tau d^3 tau^-3` (from `psi-tilde`).
    QKdvPsiTilde,
    /// Linear operator `tau d^2 tau^2 (tau+tau^-1)^-1 d tau^-5`.
    QKdvCanonical,
    /// Linear operator `tau^-4 d^2 (tau+tau^-1)^-1 d tau^2`.
    QKdvAlt,
    /// Linear operator `tau^-4 d^3 tau^2 Gamma^-1`.
    QKdvGamma,
}

impl EquationTag {
    pub const ALL: [EquationTag; 7] = [
        EquationTag::ClassicalKdv,
        EquationTag::ClassicalBurgers,
        EquationTag::QKdvPsi0,
        EquationTag::QKdvPsiTilde,
        EquationTag::QKdvCanonical,
        EquationTag::QKdvAlt,
        EquationTag::QKdvGamma,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EquationTag::ClassicalKdv => "classical-kdv",
            EquationTag::ClassicalBurgers => "classical-burgers",
            EquationTag::QKdvPsi0 => "qkdv-psi0",
            EquationTag::QKdvPsiTilde => "qkdv-psi-tilde",
            EquationTag::QKdvCanonical => "qkdv-canonical",
            EquationTag::QKdvAlt => "qkdv-alt",
            EquationTag::QKdvGamma => "qkdv-gamma",
        }
    }

    pub fn parse(name: &str) -> Result<EquationTag> {
        EquationTag::ALL
            .into_iter()
            .find(|t| t.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown equation variant {name:?}")))
    }

    pub fn is_classical(&self) -> bool {
        matches!(
            self,
            EquationTag::ClassicalKdv | EquationTag::ClassicalBurgers
        )
    }
}

/// An equation with its central constant, fixed over a run.
#[derive(Clone, Debug)]
pub struct EquationVariant {
    pub tag: EquationTag,
    pub c: Scalar,
}

impl EquationVariant {
    pub fn new(tag: EquationTag, c: Scalar) -> Self {
        EquationVariant { tag, c }
    }
}

/// Duality pairing `<(v d, a), (u, c)> = residue(v tau^-1 u) + a c`.
pub fn pairing(v: &LaurentField, a: &Scalar, u: &LaurentField, c: &Scalar, q: &QParam) -> Scalar {
    v.mul(&u.tau_apply(-1, q)).residue_integral() + a * c
}

/// Classical pairing `residue(v u) + a c`.
pub fn classical_pairing(v: &LaurentField, a: &Scalar, u: &LaurentField, c: &Scalar) -> Scalar {
    v.mul(u).residue_integral() + a * c
}

/// Expanded coadjoint nonlinearity `(dq u) u + dq((tau^2 u)(tau u))`.
pub fn nonlinear_expanded(u: &LaurentField, q: &QParam) -> LaurentField {
    let first = u.dq_apply(q).mul(u);
    let second = u.tau_apply(2, q).mul(&u.tau_apply(1, q)).dq_apply(q);
    first.add(&second)
}

/// The compact shorthand `(1 + q tau)^2 (u dq u)`, expanded as
/// `1 + 2q tau + q^2 tau^2` acting on the product.
pub fn nonlinear_shorthand(u: &LaurentField, q: &QParam) -> LaurentField {
    let w = u.mul(&u.dq_apply(q));
    let two_q = Scalar::from_int(2, q.mode()) * q.pow(1);
    w.add(&w.tau_apply(1, q).scale(&two_q))
        .add(&w.tau_apply(2, q).scale(&q.pow(2)))
}

/// Coadjoint right-hand side field
/// `(dq f) u + dq((tau^2 f)(tau u)) + c · M_psi(f)`,
/// where `M_psi` is the central term's full operator.
pub fn coad_rhs(
    f: &LaurentField,
    u: &LaurentField,
    c: &Scalar,
    q: &QParam,
    psi: &CentralFunctional,
) -> Result<LaurentField> {
    let nonlinear = f
        .dq_apply(q)
        .mul(u)
        .add(&f.tau_apply(2, q).mul(&u.tau_apply(1, q)).dq_apply(q));
    let central = psi.central_operator(q).apply(f, q)?.scale(c);
    Ok(nonlinear.add(&central))
}

/// The bracket pairing that [`coad_rhs`] must reproduce:
/// `residue((-[f,g]_q) u) + c psi(f,g)`, computed through the bracket and the
/// functional instead of the coadjoint expansion. The defining adjointness is
/// `residue((tau g) · coad_rhs(f,u,c,psi)) = coad_bracket_pairing(f,g,u,c,psi)`.
pub fn coad_bracket_pairing(
    f: &LaurentField,
    g: &LaurentField,
    u: &LaurentField,
    c: &Scalar,
    q: &QParam,
    psi: &CentralFunctional,
) -> Result<Scalar> {
    let bracket_part = qbracket_vf(f, g, q).neg().mul(u).residue_integral();
    Ok(bracket_part + c * &psi.evaluate(f, g, q)?)
}

/// Linear operator pipeline of a q-variant (`None` for the classical tags).
pub fn linear_pipeline(tag: EquationTag, q: &QParam) -> Option<OperatorPipeline> {
    let mode = q.mode();
    let tau = |k: i64| SkewOperator::tau_op(k, mode);
    let d = SkewOperator::d_op(q);
    let d2 = d.compose(&d, q);
    let d3 = d2.compose(&d, q);
    match tag {
        EquationTag::ClassicalKdv | EquationTag::ClassicalBurgers => None,
        EquationTag::QKdvPsi0 => Some(OperatorPipeline::new(
            mode,
            vec![Stage::Op(tau(1).compose(&d3, q))],
        )),
        EquationTag::QKdvPsiTilde => Some(OperatorPipeline::new(
            mode,
            vec![Stage::Op(tau(1).compose(&d3, q).compose(&tau(-3), q))],
        )),
        EquationTag::QKdvCanonical => Some(OperatorPipeline::new(
            mode,
            vec![
                Stage::Op(d.compose(&tau(-5), q)),
                Stage::DiagInv(DiagKind::TauPlusTauInv),
                Stage::Op(tau(1).compose(&d2, q).compose(&tau(2), q)),
            ],
        )),
        EquationTag::QKdvAlt => Some(OperatorPipeline::new(
            mode,
            vec![
                Stage::Op(d.compose(&tau(2), q)),
                Stage::DiagInv(DiagKind::TauPlusTauInv),
                Stage::Op(tau(-4).compose(&d2, q)),
            ],
        )),
        EquationTag::QKdvGamma => Some(OperatorPipeline::new(
            mode,
            vec![
                Stage::DiagInv(DiagKind::Gamma),
                Stage::Op(tau(-4).compose(&d3, q).compose(&tau(2), q)),
            ],
        )),
    }
}

/// Classical coadjoint action `2 f' u + f u' + c f'''` (derivatives are d/dz).
pub fn classical_coad(f: &LaurentField, u: &LaurentField, c: &Scalar) -> LaurentField {
    let fp = f.ddz_apply();
    let up = u.ddz_apply();
    let fppp = fp.ddz_apply().ddz_apply();
    fp.mul(u)
        .scale(&Scalar::from_int(2, f.mode()))
        .add(&f.mul(&up))
        .add(&fppp.scale(c))
}

/// Classical bracket `f'g - fg'` (the minus-sign convention of the baseline).
pub fn classical_bracket(f: &LaurentField, g: &LaurentField) -> LaurentField {
    f.ddz_apply().mul(g).sub(&f.mul(&g.ddz_apply()))
}

/// Gelfand-Fuks cocycle `residue(f' g'')` on Laurent modes.
pub fn gelfand_fuks(f: &LaurentField, g: &LaurentField) -> Scalar {
    f.ddz_apply()
        .mul(&g.ddz_apply().ddz_apply())
        .residue_integral()
}

/// Classical Euler right-hand side `-(2u'u + uu' + cu''') = -3uu' - cu'''`,
/// computed through the coadjoint expansion. `c = 0` is the nonviscous
/// Burgers case.
pub fn classical_rhs(u: &LaurentField, c: &Scalar) -> LaurentField {
    classical_coad(u, u, c).neg()
}

/// Evolution right-hand side `du/dt` of the selected equation.
///
/// q-variants use `-(expanded nonlinearity) - c L(u)`; classical tags ignore
/// `q` and differentiate modes with d/dz.
pub fn kdv_rhs(u: &LaurentField, variant: &EquationVariant, q: &QParam) -> Result<LaurentField> {
    match variant.tag {
        EquationTag::ClassicalKdv => Ok(classical_rhs(u, &variant.c)),
        EquationTag::ClassicalBurgers => Ok(classical_rhs(u, &Scalar::zero(u.mode()))),
        _ => {
            let pipeline = linear_pipeline(variant.tag, q).expect("q-variant has a pipeline");
            let linear = pipeline.apply(u, q)?.scale(&variant.c);
            Ok(nonlinear_expanded(u, q).add(&linear).neg())
        }
    }
}

/// Truncated geometric expansion of a diagonal inverse: per mode the branch
/// with ratio magnitude below one is summed for `terms` terms.
pub fn diag_partial_series(
    f: &LaurentField,
    kind: DiagKind,
    q: &QParam,
    terms: u32,
) -> Result<LaurentField> {
    let mut out = LaurentField::zero(f.mode());
    for (m, c) in f.iter() {
        // write the weight as prefactor * (1 + x); expand 1/(1+x) when |x|<1,
        // otherwise flip to the reciprocal branch
        let (prefactor, x) = match kind {
            DiagKind::TauPlusTauInv => (q.pow(-m), q.pow(2 * m)),
            DiagKind::OnePlusTau => (Scalar::one(q.mode()), q.pow(m)),
            DiagKind::Gamma => (q.pow(-(m - 1)), q.pow(2 * (m - 1))),
        };
        let (lead, ratio) = if ratio_below_one(&x)? {
            (prefactor.recip(), x)
        } else {
            let xi = x.recip();
            if !ratio_below_one(&xi)? {
                return Err(Error::DivergentMode {
                    mode: m,
                    ratio: x.magnitude(),
                });
            }
            ((prefactor * &x).recip(), xi)
        };
        // lead * sum_{n<terms} (-ratio)^n
        let mut sum = Scalar::zero(q.mode());
        let mut pow = Scalar::one(q.mode());
        for n in 0..terms {
            if n > 0 {
                pow = pow * &ratio;
            }
            sum = if n % 2 == 0 { sum + &pow } else { sum - &pow };
        }
        out.add_to(m, c * &lead * sum);
    }
    Ok(out)
}

fn ratio_below_one(x: &Scalar) -> Result<bool> {
    match x {
        Scalar::Exact(r) => {
            use num::Signed;
            let abs = r.abs();
            if abs == num::BigRational::from_integer(1.into()) {
                return Ok(false);
            }
            Ok(abs < num::BigRational::from_integer(1.into()))
        }
        Scalar::Float(c) => Ok(c.norm() < 1.0),
    }
}

/// Result of comparing a series-rendered right-hand side against the
/// mode-diagonal one.
#[derive(Clone, Debug)]
pub struct SeriesCheck {
    /// Largest mode-wise relative difference (absolute where the diagonal
    /// value vanishes).
    pub max_rel_diff: f64,
    pub per_mode: Vec<(i64, f64)>,
}

/// Compares the truncated-series rendering of the linear operator against the
/// exact diagonal-inverse pipeline for the two series-form variants.
/// Float mode; divergent modes are reported as errors.
pub fn series_vs_diagonal_check(
    u: &LaurentField,
    tag: EquationTag,
    q: &QParam,
    terms: u32,
) -> Result<SeriesCheck> {
    if !matches!(tag, EquationTag::QKdvAlt | EquationTag::QKdvGamma) {
        return Err(Error::Precondition(format!(
            "series rendering only exists for qkdv-alt and qkdv-gamma, got {}",
            tag.name()
        )));
    }
    if u.mode() != Mode::Float || q.mode() != Mode::Float {
        return Err(Error::WrongMode {
            expected: "float",
            context: "series_vs_diagonal_check",
        });
    }
    let pipeline = linear_pipeline(tag, q).expect("series variants have pipelines");
    let diagonal = pipeline.apply(u, q)?;
    let mut series = u.clone();
    for stage in pipeline.stages() {
        series = match stage {
            Stage::Op(op) => op.apply(&series, q),
            Stage::DiagInv(kind) => diag_partial_series(&series, *kind, q, terms)?,
        };
    }
    let mut modes: Vec<i64> = diagonal.iter().map(|(n, _)| n).collect();
    for (n, _) in series.iter() {
        if !modes.contains(&n) {
            modes.push(n);
        }
    }
    modes.sort_unstable();
    let mut per_mode = Vec::with_capacity(modes.len());
    let mut max_rel = 0.0f64;
    for n in modes {
        let d = diagonal.coeff(n);
        let s = series.coeff(n);
        let diff = (&s - &d).magnitude();
        let rel = if d.is_zero() {
            diff
        } else {
            diff / d.magnitude()
        };
        max_rel = max_rel.max(rel);
        per_mode.push((n, rel));
    }
    Ok(SeriesCheck {
        max_rel_diff: max_rel,
        per_mode,
    })
}

/// One fitted point of the classical-limit study.
#[derive(Clone, Debug)]
pub struct LimitFit {
    pub q: Complex64,
    /// Fitted coefficient of `u u'`.
    pub a: Complex64,
    /// Fitted coefficient of `u'''`.
    pub b: Complex64,
    /// Largest mode-wise magnitude of `rhs - a uu' - b u'''`.
    pub max_residual: f64,
}

/// Fits the q-variant right-hand side against the closest classical form
/// `a uu' + b u'''` for each q in the schedule, reporting the fitted
/// constants and residuals. Float mode.
pub fn classical_limit_check(
    u: &LaurentField,
    tag: EquationTag,
    c: &Scalar,
    q_schedule: &[Complex64],
) -> Result<Vec<LimitFit>> {
    if u.mode() != Mode::Float {
        return Err(Error::WrongMode {
            expected: "float",
            context: "classical_limit_check",
        });
    }
    if tag.is_classical() {
        return Err(Error::Precondition(
            "classical_limit_check takes a q-variant".into(),
        ));
    }
    let p = u.mul(&u.ddz_apply());
    let qqq = u.ddz_apply().ddz_apply().ddz_apply();
    let mut out = Vec::with_capacity(q_schedule.len());
    for &qv in q_schedule {
        let q = QParam::new(Scalar::from_complex(qv))?;
        let variant = EquationVariant::new(tag, c.clone());
        let rhs = kdv_rhs(u, &variant, &q)?;
        let (a, b, max_residual) = fit_two_fields(&rhs, &p, &qqq);
        out.push(LimitFit {
            q: qv,
            a,
            b,
            max_residual,
        });
    }
    Ok(out)
}

/// Complex least squares of `r ~ a p + b s` over the union of modes.
fn fit_two_fields(
    r: &LaurentField,
    p: &LaurentField,
    s: &LaurentField,
) -> (Complex64, Complex64, f64) {
    let mut modes: Vec<i64> = Vec::new();
    for field in [r, p, s] {
        for (n, _) in field.iter() {
            if !modes.contains(&n) {
                modes.push(n);
            }
        }
    }
    let zero = Complex64::new(0.0, 0.0);
    let (mut g11, mut g12, mut g22, mut r1, mut r2) = (zero, zero, zero, zero, zero);
    for &n in &modes {
        let pv = p.coeff(n).to_complex();
        let sv = s.coeff(n).to_complex();
        let rv = r.coeff(n).to_complex();
        g11 += pv.conj() * pv;
        g12 += pv.conj() * sv;
        g22 += sv.conj() * sv;
        r1 += pv.conj() * rv;
        r2 += sv.conj() * rv;
    }
    let det = g11 * g22 - g12 * g12.conj();
    let (a, b) = if det.norm() == 0.0 {
        (zero, zero)
    } else {
        (
            (r1 * g22 - g12 * r2) / det,
            (g11 * r2 - g12.conj() * r1) / det,
        )
    };
    let mut max_residual = 0.0f64;
    for &n in &modes {
        let err =
            r.coeff(n).to_complex() - a * p.coeff(n).to_complex() - b * s.coeff(n).to_complex();
        max_residual = max_residual.max(err.norm());
    }
    (a, b, max_residual)
}
