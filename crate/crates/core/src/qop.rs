//! The skew operator algebra: normal-formed words in multiplication
//! operators, the scaling operator tau, and the symmetric q-derivative.
//!
//! Normal form puts coefficients left: each term is `f(z) · tau^b · dq^a`,
//! merged on equal `(b, a)` and sorted. Rewriting uses exactly
//!
//! * `dq ∘ mul(f) = mul(tau f) ∘ dq + mul(dq f) ∘ tau^-1`
//! * `dq ∘ tau = q · tau ∘ dq`
//! * `tau^k ∘ mul(f) = mul(tau^k f) ∘ tau^k`
//!
//! Diagonal inverses are not polynomial in these generators, so operator
//! words containing them are represented as pipelines alternating normal
//! skew operators with diagonal-inverse stages.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::laurent::{DiagKind, LaurentField};
use crate::qfield::{qint, Mode, QParam, Scalar};

/// Primitive word factors accepted by [`normalize`].
#[derive(Clone, Debug)]
pub enum Factor {
    Mul(LaurentField),
    Tau(i64),
    Dq,
}

/// A normal-formed sum of terms `coeff(z) · tau^b · dq^a`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewOperator {
    mode: Mode,
    // keyed by (tau_power, dq_power); coefficients are nonzero fields
    terms: BTreeMap<(i64, u32), LaurentField>,
}

impl SkewOperator {
    pub fn zero(mode: Mode) -> Self {
        SkewOperator {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(mode: Mode) -> Self {
        SkewOperator::mul_op(LaurentField::basis(0, mode))
    }

    /// Multiplication by a fixed field.
    pub fn mul_op(f: LaurentField) -> Self {
        let mut op = SkewOperator::zero(f.mode());
        op.add_term(f, 0, 0);
        op
    }

    pub fn tau_op(k: i64, mode: Mode) -> Self {
        let mut op = SkewOperator::zero(mode);
        op.add_term(LaurentField::basis(0, mode), k, 0);
        op
    }

    pub fn dq_op(mode: Mode) -> Self {
        let mut op = SkewOperator::zero(mode);
        op.add_term(LaurentField::basis(0, mode), 0, 1);
        op
    }

    /// The shifted derivative `d = dq ∘ tau`, i.e. `q · tau ∘ dq`.
    pub fn d_op(q: &QParam) -> Self {
        let mut op = SkewOperator::zero(q.mode());
        op.add_term(LaurentField::constant(q.pow(1)), 1, 1);
        op
    }

    /// The companion `dhat = dq ∘ tau^-1 = q^-1 · tau^-1 ∘ dq`.
    pub fn dhat_op(q: &QParam) -> Self {
        let mut op = SkewOperator::zero(q.mode());
        op.add_term(LaurentField::constant(q.pow(-1)), -1, 1);
        op
    }

    /// The central operator `chat = tau^2`.
    pub fn chat_op(mode: Mode) -> Self {
        SkewOperator::tau_op(2, mode)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &LaurentField)> {
        self.terms.iter().map(|((b, a), f)| (*b, *a, f))
    }

    fn add_term(&mut self, coeff: LaurentField, tau_pow: i64, dq_pow: u32) {
        assert!(coeff.mode() == self.mode, "term mode mismatch");
        if coeff.is_zero() {
            return;
        }
        let key = (tau_pow, dq_pow);
        let merged = match self.terms.remove(&key) {
            Some(existing) => existing.add(&coeff),
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn add(&self, other: &SkewOperator) -> SkewOperator {
        assert!(self.mode == other.mode, "operator mode mismatch in add");
        let mut out = self.clone();
        for (b, a, f) in other.terms() {
            out.add_term(f.clone(), b, a);
        }
        out
    }

    pub fn sub(&self, other: &SkewOperator) -> SkewOperator {
        self.add(&other.scale(&-Scalar::one(other.mode)))
    }

    pub fn scale(&self, s: &Scalar) -> SkewOperator {
        let mut out = SkewOperator::zero(self.mode);
        for (b, a, f) in self.terms() {
            out.add_term(f.scale(s), b, a);
        }
        out
    }

    /// Operator composition `self ∘ other` (self applied last), rewritten to
    /// normal form.
    pub fn compose(&self, other: &SkewOperator, q: &QParam) -> SkewOperator {
        assert!(self.mode == other.mode, "operator mode mismatch in compose");
        let mut out = SkewOperator::zero(self.mode);
        for (b, a, f) in self.terms() {
            for (d, c, g) in other.terms() {
                // push dq^a through mul(g): a sum of mul(h) tau^t dq^j pieces
                for (h, t, j) in push_dq_through(a, g, q) {
                    // f tau^b (h tau^t dq^j) tau^d dq^c
                    let coeff = f.mul(&h.tau_apply(b, q)).scale(&q.pow(j as i64 * d));
                    out.add_term(coeff, b + t + d, j + c);
                }
            }
        }
        out
    }

    /// Applies the operator to a field: per term, `dq^a` first, then `tau^b`,
    /// then multiplication by the coefficient. Modes must agree.
    pub fn apply(&self, field: &LaurentField, q: &QParam) -> LaurentField {
        assert!(
            self.mode == field.mode() && self.mode == q.mode(),
            "mode mismatch in operator apply"
        );
        let mut out = LaurentField::zero(self.mode);
        for (b, a, f) in self.terms() {
            let mut v = field.clone();
            for _ in 0..a {
                v = v.dq_apply(q);
            }
            v = v.tau_apply(b, q);
            out = out.add(&f.mul(&v));
        }
        out
    }
}

/// `dq^a ∘ mul(g)` as a list of `(coeff, tau_power, dq_power)` pieces.
fn push_dq_through(a: u32, g: &LaurentField, q: &QParam) -> Vec<(LaurentField, i64, u32)> {
    let mut pieces = vec![(g.clone(), 0i64, 0u32)];
    for _ in 0..a {
        let mut next: Vec<(LaurentField, i64, u32)> = Vec::with_capacity(pieces.len() * 2);
        for (h, t, j) in pieces {
            // dq ∘ (h tau^t dq^j) = q^t (tau h) tau^t dq^{j+1} + (dq h) tau^{t-1} dq^j
            let lead = h.tau_apply(1, q).scale(&q.pow(t));
            if !lead.is_zero() {
                next.push((lead, t, j + 1));
            }
            let deriv = h.dq_apply(q);
            if !deriv.is_zero() {
                next.push((deriv, t - 1, j));
            }
        }
        pieces = next;
    }
    pieces
}

/// Rewrites a finite product of primitives (leftmost applied last) to normal
/// form.
pub fn normalize(word: &[Factor], q: &QParam) -> SkewOperator {
    let mode = q.mode();
    let mut acc = SkewOperator::identity(mode);
    for factor in word.iter().rev() {
        let op = match factor {
            Factor::Mul(f) => SkewOperator::mul_op(f.clone()),
            Factor::Tau(k) => SkewOperator::tau_op(*k, mode),
            Factor::Dq => SkewOperator::dq_op(mode),
        };
        acc = op.compose(&acc, q);
    }
    acc
}

/// The degree-m generator, realized as `-z^{m+1} ∘ d` with `d = dq tau`.
///
/// This is the realization whose q-bracket closes with structure constant
/// `[m-n]`: `q^{m-n} L_m L_n - q^{n-m} L_n L_m = [m-n] L_{m+n}` exactly.
pub fn generator(m: i64, q: &QParam) -> SkewOperator {
    let coeff = LaurentField::monomial(m + 1, -Scalar::one(q.mode()));
    SkewOperator::mul_op(coeff).compose(&SkewOperator::d_op(q), q)
}

/// Left side of the generator bracket relation as a normal-formed operator:
/// `q^{m-n} L_m L_n - q^{n-m} L_n L_m`.
pub fn weighted_generator_bracket(m: i64, n: i64, q: &QParam) -> SkewOperator {
    let lm = generator(m, q);
    let ln = generator(n, q);
    let left = lm.compose(&ln, q).scale(&q.pow(m - n));
    let right = ln.compose(&lm, q).scale(&q.pow(n - m));
    left.sub(&right)
}

/// Closed form of the generator bracket: structure constant `[m-n]` on the
/// degree `m+n` generator.
pub fn generator_bracket(m: i64, n: i64, q: &QParam) -> (Scalar, i64) {
    (qint(m - n, q), m + n)
}

/// q-bracket of vector fields, composed from the derivative form
/// `(tau v)(dq w) - (tau w)(dq v)`.
///
/// On monomials `v = z^n`, `w = z^m` the coefficient field is
/// `(q^n [m] - q^m [n]) z^{n+m-1} = [m-n] z^{n+m-1}`; under the generator
/// correspondence `L_k ~ -z^{k+1} d` this is exactly the `[m-n]` closure of
/// [`generator_bracket`]. Bilinear and antisymmetric.
pub fn qbracket_vf(v: &LaurentField, w: &LaurentField, q: &QParam) -> LaurentField {
    let lead = v.tau_apply(1, q).mul(&w.dq_apply(q));
    let swap = w.tau_apply(1, q).mul(&v.dq_apply(q));
    lead.sub(&swap)
}

/// The same bracket as an explicit double sum over mode pairs,
/// `sum a_n b_m (q^n [m] - q^m [n]) z^{n+m-1}`; an independent code path used
/// to cross-check [`qbracket_vf`].
pub fn qbracket_vf_double_sum(v: &LaurentField, w: &LaurentField, q: &QParam) -> LaurentField {
    let mut out = LaurentField::zero(v.mode());
    for (n, a) in v.iter() {
        for (m, b) in w.iter() {
            let weight = q.pow(n) * qint(m, q) - q.pow(m) * qint(n, q);
            out.add_to(n + m - 1, a * b * weight);
        }
    }
    out
}

/// One stage of an operator pipeline: a normal-formed skew operator or a
/// diagonal inverse.
#[derive(Clone, Debug)]
pub enum Stage {
    Op(SkewOperator),
    DiagInv(DiagKind),
}

/// A pipeline of stages applied in order (stage 0 first). Keeps diagonal
/// inverses exact while the polynomial parts stay in normal form.
#[derive(Clone, Debug)]
pub struct OperatorPipeline {
    mode: Mode,
    stages: Vec<Stage>,
}

impl OperatorPipeline {
    pub fn new(mode: Mode, stages: Vec<Stage>) -> Self {
        OperatorPipeline { mode, stages }
    }

    pub fn identity(mode: Mode) -> Self {
        OperatorPipeline {
            mode,
            stages: Vec::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn apply(&self, field: &LaurentField, q: &QParam) -> Result<LaurentField> {
        let mut v = field.clone();
        for stage in &self.stages {
            v = match stage {
                Stage::Op(op) => op.apply(&v, q),
                Stage::DiagInv(kind) => v.diag_inverse(*kind, q)?,
            };
        }
        Ok(v)
    }

    /// Scales the final output by `s` (folded into the last operator stage, or
    /// an appended scalar stage when the pipeline ends with a diagonal inverse).
    pub fn scaled(&self, s: &Scalar) -> OperatorPipeline {
        let mut stages = self.stages.clone();
        match stages.last_mut() {
            Some(Stage::Op(op)) => *op = op.scale(s),
            _ => stages.push(Stage::Op(SkewOperator::identity(self.mode).scale(s))),
        }
        OperatorPipeline {
            mode: self.mode,
            stages,
        }
    }
}

impl fmt::Display for SkewOperator {
    /// Debug grammar: terms joined by " + ", each term
    /// `coeff·tau^b·dq^a` with unit factors dropped; coefficients print as
    /// scalar·z^k monomials, parenthesized when the field has several modes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, a, coeff) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            let coeff_str = coeff.to_string();
            let is_unit = coeff_str == "1";
            if !is_unit || (b == 0 && a == 0) {
                if coeff.support_len() > 1 {
                    factors.push(format!("({coeff_str})"));
                } else {
                    factors.push(coeff_str);
                }
            }
            if b != 0 {
                factors.push(format!("τ^{b}"));
            }
            if a != 0 {
                factors.push(format!("∂_q^{a}"));
            }
            write!(f, "{}", factors.join("·"))?;
        }
        Ok(())
    }
}

impl fmt::Display for OperatorPipeline {
    /// Pretty form in mathematical order: last-applied stage leftmost.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.stages.is_empty() {
            return write!(f, "id");
        }
        let mut parts: Vec<String> = Vec::new();
        for stage in self.stages.iter().rev() {
            parts.push(match stage {
                Stage::Op(op) => format!("[{op}]"),
                Stage::DiagInv(kind) => format!("{}^-1", kind.name()),
            });
        }
        write!(f, "{}", parts.join(" ∘ "))
    }
}
