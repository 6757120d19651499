//! Polynomial identity testing over the rational q-line.
//!
//! Every generator identity handled here is a Laurent polynomial in q whose
//! degree span is bounded linearly by the indices involved. Evaluating at more
//! distinct rational points than the bound therefore certifies the identity
//! exactly; this is a proof, not a heuristic, as long as the bound is correct.

use std::collections::BTreeSet;

use num::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qfield::{Mode, QParam, Scalar};

/// Seed of the default reproducible sample schedule.
pub const DEFAULT_PIT_SEED: u64 = 0x9e37_79b9;

/// Degree bound `D = 6 (|m| + |n| + |p| + 3)` for identities indexed by up to
/// three integers; callers pass zeros for unused slots.
pub fn degree_bound(indices: &[i64]) -> u32 {
    let total: u64 = indices.iter().map(|i| i.unsigned_abs()).sum();
    (6 * (total + 3)) as u32
}

/// Deterministic schedule of `count` distinct valid rational q values.
pub fn default_schedule(count: usize, seed: u64) -> Vec<QParam> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: BTreeSet<BigRational> = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let num: i64 = rng.gen_range(2..=9999);
        let den: i64 = rng.gen_range(1..=97);
        let sign = if rng.gen_bool(0.25) { -1 } else { 1 };
        let value = Scalar::from_ratio(sign * num, den);
        let q = match QParam::new(value) {
            Ok(q) => q,
            Err(_) => continue,
        };
        let key = q.scalar().as_exact().expect("schedule is exact").clone();
        if seen.insert(key) {
            out.push(q);
        }
    }
    out
}

/// Certifies `identity(q) == 0` by evaluation at every sample.
///
/// Requires strictly more than `degree_bound` distinct exact-mode samples.
/// Returns `Ok(false)` as soon as one sample evaluates to a nonzero value.
pub fn pit_verify<F>(identity: F, degree_bound: u32, samples: &[QParam]) -> Result<bool>
where
    F: Fn(&QParam) -> Scalar,
{
    if samples.len() <= degree_bound as usize {
        return Err(Error::Precondition(format!(
            "need more than {degree_bound} samples, got {}",
            samples.len()
        )));
    }
    let mut distinct: BTreeSet<BigRational> = BTreeSet::new();
    for q in samples {
        if q.mode() != Mode::Exact {
            return Err(Error::WrongMode {
                expected: "exact",
                context: "pit_verify samples",
            });
        }
        let key = q.scalar().as_exact().expect("checked above").clone();
        if !distinct.insert(key) {
            return Err(Error::Precondition(format!("duplicate sample q = {q}")));
        }
    }
    for q in samples {
        if !identity(q).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{qangle, qint};

    #[test]
    fn zero_identity_verifies() {
        let samples = default_schedule(25, DEFAULT_PIT_SEED);
        assert!(pit_verify(|q| Scalar::zero(q.mode()), 20, &samples).unwrap());
    }

    #[test]
    fn schedule_is_reproducible_and_distinct() {
        let a = default_schedule(40, 7);
        let b = default_schedule(40, 7);
        assert_eq!(a, b);
        let set: BTreeSet<_> = a
            .iter()
            .map(|q| q.scalar().as_exact().unwrap().clone())
            .collect();
        assert_eq!(set.len(), 40);
    }

    #[test]
    fn insufficient_samples_is_a_precondition_error() {
        let samples = default_schedule(5, DEFAULT_PIT_SEED);
        assert!(pit_verify(|q| Scalar::zero(q.mode()), 20, &samples).is_err());
    }

    #[test]
    fn witt_jacobi_combination_at_small_indices_verifies() {
        // 2[3] - <2> - [2]<1> expands to zero for every q.
        let samples = default_schedule(25, DEFAULT_PIT_SEED);
        let ok = pit_verify(
            |q| {
                Scalar::from_int(2, Mode::Exact) * qint(3, q)
                    - qangle(2, q)
                    - qint(2, q) * qangle(1, q)
            },
            20,
            &samples,
        )
        .unwrap();
        assert!(ok);
    }

    #[test]
    fn nonzero_identity_is_rejected() {
        let samples = default_schedule(25, DEFAULT_PIT_SEED);
        let ok = pit_verify(|q| qint(2, q) - qint(3, q), 20, &samples).unwrap();
        assert!(!ok);
    }
}
