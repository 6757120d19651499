//! Exact scalar arithmetic, the q-number primitives, and a randomized
//! polynomial-identity-testing harness used by every verifier.

pub mod pit;
mod scalar;

pub use pit::{default_schedule, degree_bound, pit_verify, DEFAULT_PIT_SEED};
pub use scalar::{Mode, QParam, Scalar};

/// Symmetric q-integer `[m] = (q^m - q^-m)/(q - q^-1)`.
///
/// Satisfies `[-m] = -[m]`, `[0] = 0`, `[1] = 1` and the q-Pascal rule
/// `[m+n] = q^n [m] + q^-m [n]`.
pub fn qint(m: i64, q: &QParam) -> Scalar {
    if m == 0 {
        return Scalar::zero(q.mode());
    }
    let num = q.pow(m) - q.pow(-m);
    let den = q.pow(1) - q.pow(-1);
    num / den
}

/// The symbol `<m> = q^m + q^-m`; even in `m`, with `<0> = 2`.
pub fn qangle(m: i64, q: &QParam) -> Scalar {
    q.pow(m) + q.pow(-m)
}

/// The odd kernel `Xi(n) = [n+1][n][n-1] / <n>` carried by the canonical
/// central term. `Xi(-n) = -Xi(n)` and `Xi(-1) = Xi(0) = Xi(1) = 0`.
pub fn xi(n: i64, q: &QParam) -> Scalar {
    let num = qint(n + 1, q) * qint(n, q) * qint(n - 1, q);
    num / qangle(n, q)
}

/// Structure constant `sigma_m = [m+1][m][m-1] / (<m> [2] [3]) = Xi(m)/([2][3])`.
pub fn sigma(m: i64, q: &QParam) -> Scalar {
    xi(m, q) / (qint(2, q) * qint(3, q))
}
