//! The five bilinear central-term functionals and their property verifiers:
//! antisymmetry residuals, generator closed forms, and cocycle residuals.
//!
//! Every functional evaluates as a residue integral `psi(f,g) =
//! residue((tau g) · M(f))` for a variant-specific operator `M`, with the
//! central operator `chat = tau^2` folded into the integrand acting on `f`
//! so the value stays scalar; the trailing `chat` on generator closed forms
//! is bookkeeping metadata only. Each variant carries an overall constant;
//! the normalizations are fixed so that the generator closed forms are
//!
//! * `psi0`:          `c · q^{3n-1} [n+1][n][n-1] · delta_{m+n,0}`
//! * `psi-tilde`:     `c · q^{-4} [n+1][n][n-1] · delta_{m+n,0}`
//! * `psi-canonical`: `c · [n+1][n][n-1] / ([2][3]<n>) · delta_{m+n,0}`
//! * `psi-alt`, `psi-gamma`: `c · q^6 [n+1][n][n-1] / <n> · delta_{m+n,0}`

use crate::error::Result;
use crate::laurent::{DiagKind, LaurentField};
use crate::qfield::{qint, xi, QParam, Scalar};
use crate::qop::{qbracket_vf, OperatorPipeline, SkewOperator, Stage};

/// Selects one of the five central terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralVariant {
    Psi0,
    PsiTilde,
    PsiCanonical,
    PsiAlt,
    PsiGamma,
}

impl CentralVariant {
    pub const ALL: [CentralVariant; 5] = [
        CentralVariant::Psi0,
        CentralVariant::PsiTilde,
        CentralVariant::PsiCanonical,
        CentralVariant::PsiAlt,
        CentralVariant::PsiGamma,
    ];

    /// Variants that are antisymmetric (everything except `psi0`).
    pub const ANTISYMMETRIC: [CentralVariant; 4] = [
        CentralVariant::PsiTilde,
        CentralVariant::PsiCanonical,
        CentralVariant::PsiAlt,
        CentralVariant::PsiGamma,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CentralVariant::Psi0 => "psi0",
            CentralVariant::PsiTilde => "psi-tilde",
            CentralVariant::PsiCanonical => "psi-canonical",
            CentralVariant::PsiAlt => "psi-alt",
            CentralVariant::PsiGamma => "psi-gamma",
        }
    }

    pub fn parse(name: &str) -> Option<CentralVariant> {
        CentralVariant::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// A central term: variant plus its constant prefactor.
#[derive(Clone, Debug)]
pub struct CentralFunctional {
    variant: CentralVariant,
    constant: Scalar,
}

impl CentralFunctional {
    pub fn new(variant: CentralVariant, constant: Scalar) -> Self {
        CentralFunctional { variant, constant }
    }

    /// Variant with unit constant in the given scalar mode.
    pub fn unit(variant: CentralVariant, mode: crate::qfield::Mode) -> Self {
        CentralFunctional::new(variant, Scalar::one(mode))
    }

    pub fn variant(&self) -> CentralVariant {
        self.variant
    }

    pub fn constant(&self) -> &Scalar {
        &self.constant
    }

    /// Where the central operator `chat = tau^2` sits in this variant's
    /// integrand (it always ends up acting on the first argument, and the
    /// trailing copy on generators is dropped from scalar output).
    pub fn chat_convention(&self) -> &'static str {
        match self.variant {
            CentralVariant::Psi0 => {
                "folded invisibly: tau d^3 tau^-2 chat f = tau d^3 f; scalar output drops the trailing chat"
            }
            CentralVariant::PsiTilde => {
                "folded invisibly into tau d^3 tau^-3 f; scalar output drops the trailing chat"
            }
            CentralVariant::PsiCanonical => {
                "chat = tau^2 inserted between d^2 and the diagonal inverse, acting on f"
            }
            CentralVariant::PsiAlt => "chat = tau^2 applied to f first (rightmost factor)",
            CentralVariant::PsiGamma => "chat = tau^2 applied after Gamma^-1, before d^3",
        }
    }

    /// The trailing central factor carried by generator closed forms,
    /// reported as metadata rather than folded into the scalar.
    pub fn trailing_central_factor(&self) -> &'static str {
        "tau^2"
    }

    /// The full operator `M` with `psi(f,g) = residue((tau g) · M f)`,
    /// including the variant constant and normalization.
    pub fn central_operator(&self, q: &QParam) -> OperatorPipeline {
        let mode = q.mode();
        let tau = |k: i64| SkewOperator::tau_op(k, mode);
        let d = SkewOperator::d_op(q);
        let d2 = d.compose(&d, q);
        let d3 = d2.compose(&d, q);
        match self.variant {
            CentralVariant::Psi0 => {
                // tau d^3, scaled by c
                let op = tau(1).compose(&d3, q).scale(&self.constant);
                OperatorPipeline::new(mode, vec![Stage::Op(op)])
            }
            CentralVariant::PsiTilde => {
                // tau d^3 tau^-3, scaled by c
                let op = tau(1)
                    .compose(&d3, q)
                    .compose(&tau(-3), q)
                    .scale(&self.constant);
                OperatorPipeline::new(mode, vec![Stage::Op(op)])
            }
            CentralVariant::PsiCanonical => {
                // (c q^6/[2][3]) · tau d^2 tau^2 (tau+tau^-1)^-1 d tau^-5
                let scale = &self.constant * &q.pow(6) / (qint(2, q) * qint(3, q));
                let pre = d.compose(&tau(-5), q);
                let post = tau(1).compose(&d2, q).compose(&tau(2), q).scale(&scale);
                OperatorPipeline::new(
                    mode,
                    vec![
                        Stage::Op(pre),
                        Stage::DiagInv(DiagKind::TauPlusTauInv),
                        Stage::Op(post),
                    ],
                )
            }
            CentralVariant::PsiAlt => {
                // (c q^-5) · tau^-4 d^2 (tau+tau^-1)^-1 d tau^2
                let scale = &self.constant * &q.pow(-5);
                let pre = d.compose(&tau(2), q);
                let post = tau(-4).compose(&d2, q).scale(&scale);
                OperatorPipeline::new(
                    mode,
                    vec![
                        Stage::Op(pre),
                        Stage::DiagInv(DiagKind::TauPlusTauInv),
                        Stage::Op(post),
                    ],
                )
            }
            CentralVariant::PsiGamma => {
                // (c q^-5) · tau^-4 d^3 tau^2 Gamma^-1
                let scale = &self.constant * &q.pow(-5);
                let post = tau(-4).compose(&d3, q).compose(&tau(2), q).scale(&scale);
                OperatorPipeline::new(mode, vec![Stage::DiagInv(DiagKind::Gamma), Stage::Op(post)])
            }
        }
    }

    /// `psi(f, g)` through the operator pipeline.
    pub fn evaluate(&self, f: &LaurentField, g: &LaurentField, q: &QParam) -> Result<Scalar> {
        let mf = self.central_operator(q).apply(f, q)?;
        Ok(g.tau_apply(1, q).mul(&mf).residue_integral())
    }

    /// `psi(f, g)` as the explicit mode sum `sum_k f_{k+1} g_{-k+1} K(k)`;
    /// an independent code path used to cross-check
    /// [`evaluate`](CentralFunctional::evaluate).
    pub fn evaluate_mode_sum(
        &self,
        f: &LaurentField,
        g: &LaurentField,
        q: &QParam,
    ) -> Result<Scalar> {
        let mut acc = Scalar::zero(q.mode());
        for (nf, a) in f.iter() {
            let k = nf - 1;
            let b = g.coeff(1 - k);
            if b.is_zero() {
                continue;
            }
            acc = acc + a * &b * self.kernel(k, q)?;
        }
        Ok(acc)
    }

    /// Diagonal kernel `K(n)` with `psi(z^{n+1}, z^{m+1}) = K(n) delta_{m+n,0}`.
    pub fn kernel(&self, n: i64, q: &QParam) -> Result<Scalar> {
        let cube = qint(n + 1, q) * qint(n, q) * qint(n - 1, q);
        let value = match self.variant {
            CentralVariant::Psi0 => q.pow(3 * n - 1) * cube,
            CentralVariant::PsiTilde => q.pow(-4) * cube,
            CentralVariant::PsiCanonical => xi(n, q) / (qint(2, q) * qint(3, q)),
            CentralVariant::PsiAlt | CentralVariant::PsiGamma => q.pow(6) * xi(n, q),
        };
        Ok(&self.constant * &value)
    }

    /// Closed form on generators, `K(n) delta_{m+n,0}` including the variant
    /// constant. The trailing `chat` factor is metadata
    /// ([`trailing_central_factor`](CentralFunctional::trailing_central_factor)),
    /// not folded into the scalar.
    pub fn generator_closed_form(&self, n: i64, m: i64, q: &QParam) -> Result<Scalar> {
        if m + n != 0 {
            return Ok(Scalar::zero(q.mode()));
        }
        self.kernel(n, q)
    }
}

/// `psi(f,g) + psi(g,f)`: zero exactly for the antisymmetric variants,
/// generically nonzero for `psi0`.
pub fn antisymmetry_residual(
    psi: &CentralFunctional,
    f: &LaurentField,
    g: &LaurentField,
    q: &QParam,
) -> Result<Scalar> {
    Ok(psi.evaluate(f, g, q)? + psi.evaluate(g, f, q)?)
}

/// The cyclic cocycle residual
/// `psi(f,[g,h]) + psi(h,[f,g]) + psi(g,[h,f])` with the vector-field
/// q-bracket in the second slot.
pub fn cocycle_residual(
    psi: &CentralFunctional,
    f: &LaurentField,
    g: &LaurentField,
    h: &LaurentField,
    q: &QParam,
) -> Result<Scalar> {
    let term1 = psi.evaluate(f, &qbracket_vf(g, h, q), q)?;
    let term2 = psi.evaluate(h, &qbracket_vf(f, g, q), q)?;
    let term3 = psi.evaluate(g, &qbracket_vf(h, f, q), q)?;
    Ok(term1 + term2 + term3)
}

/// Closed-form cocycle residual on generators:
/// `K(n)[s-m] + K(s)[m-n] + K(m)[n-s]` for `n+m+s = 0`, zero otherwise
/// (the delta in each pairing kills non-summing triples).
pub fn cocycle_residual_generators(
    psi: &CentralFunctional,
    n: i64,
    m: i64,
    s: i64,
    q: &QParam,
) -> Result<Scalar> {
    if n + m + s != 0 {
        return Ok(Scalar::zero(q.mode()));
    }
    let t1 = psi.kernel(n, q)? * qint(s - m, q);
    let t2 = psi.kernel(s, q)? * qint(m - n, q);
    let t3 = psi.kernel(m, q)? * qint(n - s, q);
    Ok(t1 + t2 + t3)
}
