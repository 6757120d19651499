//! Finitely supported Laurent fields on the circle and the residue integral.
//!
//! A field is `f(z) = sum f_n z^n` with finitely many nonzero coefficients,
//! stored sparsely so operator application can shift exponents freely.
//! Stored coefficients are never zero (canonical form).

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qfield::{Mode, QParam, Scalar};

/// Diagonal operators with mode-wise scalar inverses.
///
/// * `TauPlusTauInv`: weight `<m> = q^m + q^-m` on `z^m`
/// * `OnePlusTau`: weight `1 + q^m`
/// * `Gamma`: weight `<m-1>` (so `z^{n+1}` carries `<n>`)
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagKind {
    TauPlusTauInv,
    OnePlusTau,
    Gamma,
}

impl DiagKind {
    pub fn name(&self) -> &'static str {
        match self {
            DiagKind::TauPlusTauInv => "(tau + tau^-1)",
            DiagKind::OnePlusTau => "(1 + tau)",
            DiagKind::Gamma => "Gamma",
        }
    }

    /// Forward diagonal weight on mode `m`.
    pub fn weight(&self, m: i64, q: &QParam) -> Scalar {
        match self {
            DiagKind::TauPlusTauInv => q.pow(m) + q.pow(-m),
            DiagKind::OnePlusTau => Scalar::one(q.mode()) + q.pow(m),
            DiagKind::Gamma => q.pow(m - 1) + q.pow(-(m - 1)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentField {
    mode: Mode,
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentField {
    pub fn zero(mode: Mode) -> Self {
        LaurentField {
            mode,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(n: i64, coeff: Scalar) -> Self {
        let mut f = LaurentField::zero(coeff.mode());
        f.set(n, coeff);
        f
    }

    /// `z^n` with unit coefficient.
    pub fn basis(n: i64, mode: Mode) -> Self {
        LaurentField::monomial(n, Scalar::one(mode))
    }

    pub fn constant(c: Scalar) -> Self {
        LaurentField::monomial(0, c)
    }

    pub fn from_pairs(mode: Mode, pairs: &[(i64, Scalar)]) -> Self {
        let mut f = LaurentField::zero(mode);
        for (n, c) in pairs {
            assert!(c.mode() == mode, "coefficient mode mismatch in from_pairs");
            f.add_to(*n, c.clone());
        }
        f
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_min(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn support_max(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: i64) -> Scalar {
        self.coeffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.mode))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    fn set(&mut self, n: i64, c: Scalar) {
        assert!(c.mode() == self.mode, "coefficient mode mismatch");
        if c.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, c);
        }
    }

    pub(crate) fn add_to(&mut self, n: i64, c: Scalar) {
        let cur = self.coeff(n);
        self.set(n, cur + c);
    }

    pub fn add(&self, other: &LaurentField) -> LaurentField {
        self.expect_same_mode(other, "laurent add");
        let mut out = self.clone();
        for (n, c) in other.iter() {
            out.add_to(n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentField) -> LaurentField {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentField {
        let mut out = LaurentField::zero(self.mode);
        for (n, c) in self.iter() {
            out.set(n, -c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> LaurentField {
        assert!(s.mode() == self.mode, "scale mode mismatch");
        let mut out = LaurentField::zero(self.mode);
        if s.is_zero() {
            return out;
        }
        for (n, c) in self.iter() {
            out.set(n, c * s);
        }
        out
    }

    /// Cauchy convolution; `support(f g)` lies inside `support(f) + support(g)`.
    pub fn mul(&self, other: &LaurentField) -> LaurentField {
        self.expect_same_mode(other, "laurent mul");
        let mut out = LaurentField::zero(self.mode);
        for (n, a) in self.iter() {
            for (m, b) in other.iter() {
                out.add_to(n + m, a * b);
            }
        }
        out
    }

    /// Multiplication by `z^k` (exponent shift).
    pub fn shift(&self, k: i64) -> LaurentField {
        let mut out = LaurentField::zero(self.mode);
        for (n, c) in self.iter() {
            out.set(n + k, c.clone());
        }
        out
    }

    /// The circle integral: extraction of the `z^-1` coefficient.
    pub fn residue_integral(&self) -> Scalar {
        self.coeff(-1)
    }

    /// Scaling operator `tau^k`: coefficient at `n` picks up `q^{kn}`.
    pub fn tau_apply(&self, k: i64, q: &QParam) -> LaurentField {
        let mut out = LaurentField::zero(self.mode);
        for (n, c) in self.iter() {
            out.set(n, c * &q.pow(k * n));
        }
        out
    }

    /// Symmetric q-derivative: `z^n -> [n] z^{n-1}`; kills constants.
    pub fn dq_apply(&self, q: &QParam) -> LaurentField {
        let mut out = LaurentField::zero(self.mode);
        for (n, c) in self.iter() {
            out.add_to(n - 1, c * &crate::qfield::qint(n, q));
        }
        out
    }

    /// Shifted derivative `d = dq tau`: `z^n -> q^n [n] z^{n-1}`.
    pub fn d_apply(&self, q: &QParam) -> LaurentField {
        self.tau_apply(1, q).dq_apply(q)
    }

    /// Companion derivative `dhat = dq tau^-1`: `z^n -> q^-n [n] z^{n-1}`.
    pub fn dhat_apply(&self, q: &QParam) -> LaurentField {
        self.tau_apply(-1, q).dq_apply(q)
    }

    /// Algebraic derivative `d/dz`: `z^n -> n z^{n-1}` (classical baseline).
    pub fn ddz_apply(&self) -> LaurentField {
        let mut out = LaurentField::zero(self.mode);
        for (n, c) in self.iter() {
            out.add_to(n - 1, c * &Scalar::from_int(n, self.mode));
        }
        out
    }

    /// Mode-diagonal inverse of the selected operator, exact per mode.
    ///
    /// Fails with the offending mode when the diagonal weight vanishes there.
    pub fn diag_inverse(&self, kind: DiagKind, q: &QParam) -> Result<LaurentField> {
        let mut out = LaurentField::zero(self.mode);
        for (n, c) in self.iter() {
            let w = kind.weight(n, q);
            if w.is_zero() {
                return Err(Error::DegenerateMode {
                    mode: n,
                    denom: w.to_string(),
                    op: kind.name(),
                });
            }
            out.set(n, c / &w);
        }
        Ok(out)
    }

    /// Forward application of the diagonal operator (for inverse round-trips).
    pub fn diag_forward(&self, kind: DiagKind, q: &QParam) -> LaurentField {
        let mut out = LaurentField::zero(self.mode);
        for (n, c) in self.iter() {
            out.set(n, c * &kind.weight(n, q));
        }
        out
    }

    /// Largest coefficient magnitude (0 for the zero field).
    pub fn max_magnitude(&self) -> f64 {
        self.iter().map(|(_, c)| c.magnitude()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.iter().all(|(_, c)| c.is_finite())
    }

    /// Lossy conversion of every coefficient into float mode.
    pub fn to_float_mode(&self) -> LaurentField {
        let mut out = LaurentField::zero(Mode::Float);
        for (n, c) in self.iter() {
            out.set(n, c.to_float_mode());
        }
        out
    }

    fn expect_same_mode(&self, other: &LaurentField, context: &'static str) {
        assert!(
            self.mode == other.mode,
            "field mode mismatch ({} vs {}) in {}",
            self.mode,
            other.mode,
            context
        );
    }

    /// JSON rendering `{"modes": [[n, re, im], ...]}`; exact mode emits the
    /// coefficients as rational strings.
    pub fn to_json(&self) -> Value {
        let modes: Vec<Value> = self
            .iter()
            .map(|(n, c)| match c {
                Scalar::Exact(_) => json!([n, c.to_string(), "0"]),
                Scalar::Float(v) => json!([n, v.re, v.im]),
            })
            .collect();
        json!({ "modes": modes })
    }

    pub fn from_json(value: &Value) -> Result<LaurentField> {
        let modes = value
            .get("modes")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("expected object with a \"modes\" array".into()))?;
        let mut mode: Option<Mode> = None;
        let mut pairs: Vec<(i64, Scalar)> = Vec::new();
        for entry in modes {
            let triple = entry
                .as_array()
                .filter(|v| v.len() == 3)
                .ok_or_else(|| Error::Parse("each mode must be [n, re, im]".into()))?;
            let n = triple[0]
                .as_i64()
                .ok_or_else(|| Error::Parse("mode exponent must be an integer".into()))?;
            let coeff = match (&triple[1], &triple[2]) {
                (Value::String(re), im) => {
                    let im_zero = match im {
                        Value::String(s) => Scalar::parse_rational(s)
                            .map(|v| v.is_zero())
                            .unwrap_or(false),
                        Value::Number(x) => x.as_f64() == Some(0.0),
                        _ => false,
                    };
                    if !im_zero {
                        return Err(Error::Parse(
                            "exact-mode coefficients must have zero imaginary part".into(),
                        ));
                    }
                    Scalar::parse_rational(re)?
                }
                (Value::Number(re), Value::Number(im)) => {
                    Scalar::from_complex(num::complex::Complex64::new(
                        re.as_f64().unwrap_or(f64::NAN),
                        im.as_f64().unwrap_or(f64::NAN),
                    ))
                }
                _ => {
                    return Err(Error::Parse(
                        "coefficient must be numbers or strings".into(),
                    ))
                }
            };
            match mode {
                None => mode = Some(coeff.mode()),
                Some(m) if m != coeff.mode() => {
                    return Err(Error::ModeMismatch("laurent JSON coefficients"))
                }
                _ => {}
            }
            pairs.push((n, coeff));
        }
        let mode = mode.unwrap_or(Mode::Exact);
        Ok(LaurentField::from_pairs(mode, &pairs))
    }
}

impl fmt::Display for LaurentField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·z")?,
                _ => write!(f, "{c}·z^{n}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{qint, QParam};

    fn q2() -> QParam {
        QParam::from_ratio(2, 1).unwrap()
    }

    fn f(pairs: &[(i64, (i64, i64))]) -> LaurentField {
        LaurentField::from_pairs(
            Mode::Exact,
            &pairs
                .iter()
                .map(|(n, (p, r))| (*n, Scalar::from_ratio(*p, *r)))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn mul_examples() {
        let one = LaurentField::basis(0, Mode::Exact);
        assert_eq!(
            LaurentField::basis(1, Mode::Exact).mul(&LaurentField::basis(-1, Mode::Exact)),
            one
        );
        let zero = LaurentField::zero(Mode::Exact);
        assert_eq!(f(&[(2, (1, 1)), (1, (3, 1))]).mul(&zero), zero);
        // (z^2 + z)(z - 1) = z^3 - z
        let got = f(&[(2, (1, 1)), (1, (1, 1))]).mul(&f(&[(1, (1, 1)), (0, (-1, 1))]));
        assert_eq!(got, f(&[(3, (1, 1)), (1, (-1, 1))]));
    }

    #[test]
    fn residue_picks_the_inverse_mode() {
        assert_eq!(
            LaurentField::basis(-1, Mode::Exact).residue_integral(),
            Scalar::one(Mode::Exact)
        );
        assert_eq!(
            LaurentField::basis(3, Mode::Exact).residue_integral(),
            Scalar::zero(Mode::Exact)
        );
    }

    #[test]
    fn tau_scales_modes_and_composes() {
        let q = q2();
        let g = LaurentField::basis(3, Mode::Exact);
        assert_eq!(
            g.tau_apply(1, &q).coeff(3),
            Scalar::from_int(8, Mode::Exact)
        );
        let h = f(&[(-2, (7, 3)), (0, (1, 1)), (5, (-2, 1))]);
        assert_eq!(h.tau_apply(0, &q), h);
        assert_eq!(h.tau_apply(2, &q).tau_apply(-2, &q), h);
        assert_eq!(h.tau_apply(1, &q).tau_apply(1, &q), h.tau_apply(2, &q));
    }

    #[test]
    fn derivatives_on_monomials() {
        let q = q2();
        assert!(LaurentField::basis(0, Mode::Exact).dq_apply(&q).is_zero());
        assert_eq!(
            LaurentField::basis(2, Mode::Exact).dq_apply(&q),
            LaurentField::monomial(1, qint(2, &q))
        );
        // d z^m = q^m [m] z^{m-1}, dhat z^m = q^-m [m] z^{m-1}
        for m in -4..=4i64 {
            let zm = LaurentField::basis(m, Mode::Exact);
            assert_eq!(
                zm.d_apply(&q),
                LaurentField::monomial(m - 1, q.pow(m) * qint(m, &q))
            );
            assert_eq!(
                zm.dhat_apply(&q),
                LaurentField::monomial(m - 1, q.pow(-m) * qint(m, &q))
            );
        }
        assert!(LaurentField::basis(0, Mode::Exact).dhat_apply(&q).is_zero());
    }

    #[test]
    fn dq_integrates_to_zero() {
        let q = q2();
        let h = f(&[(-3, (1, 2)), (-1, (4, 1)), (0, (9, 7)), (2, (-3, 5))]);
        assert!(h.dq_apply(&q).residue_integral().is_zero());
    }

    #[test]
    fn diag_inverse_matches_the_stated_weights() {
        let q = q2();
        for m in -5..=5i64 {
            let zm = LaurentField::basis(m, Mode::Exact);
            let inv = zm.diag_inverse(DiagKind::TauPlusTauInv, &q).unwrap();
            assert_eq!(inv.coeff(m), (q.pow(m) + q.pow(-m)).recip());
            let gamma = zm.diag_inverse(DiagKind::Gamma, &q).unwrap();
            assert_eq!(gamma.coeff(m), (q.pow(m - 1) + q.pow(1 - m)).recip());
            let opt = zm.diag_inverse(DiagKind::OnePlusTau, &q).unwrap();
            assert_eq!(opt.coeff(m), (Scalar::one(Mode::Exact) + q.pow(m)).recip());
        }
    }

    #[test]
    fn diag_inverse_round_trips() {
        let q = QParam::from_ratio(7, 3).unwrap();
        let h = f(&[(-4, (2, 3)), (-1, (1, 1)), (0, (5, 2)), (3, (-7, 4))]);
        for kind in [
            DiagKind::TauPlusTauInv,
            DiagKind::OnePlusTau,
            DiagKind::Gamma,
        ] {
            let inv = h.diag_inverse(kind, &q).unwrap();
            assert_eq!(inv.diag_forward(kind, &q), h);
        }
    }

    #[test]
    fn degenerate_diagonal_mode_is_reported() {
        // 1 + q^m = 0 at m = 1 for float q = -1 is excluded by QParam, so use
        // a complex float q with q^2 = -1.
        let q = QParam::new(Scalar::from_complex(num::complex::Complex64::new(0.0, 1.0))).unwrap();
        let h = LaurentField::basis(2, Mode::Float);
        let err = h.diag_inverse(DiagKind::OnePlusTau, &q).unwrap_err();
        match err {
            Error::DegenerateMode { mode, .. } => assert_eq!(mode, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn json_round_trip_exact_and_float() {
        let h = f(&[(-2, (7, 3)), (4, (-1, 1))]);
        let back = LaurentField::from_json(&h.to_json()).unwrap();
        assert_eq!(h, back);

        let fl = LaurentField::from_pairs(
            Mode::Float,
            &[(0, Scalar::from_f64(1.5)), (3, Scalar::from_f64(-0.25))],
        );
        let back = LaurentField::from_json(&fl.to_json()).unwrap();
        assert_eq!(fl, back);
    }
}
