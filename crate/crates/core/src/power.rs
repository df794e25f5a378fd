//! Cycle detection on the power sequence `f, f², f³, …`.
//!
//! In a category with finite hom-sets the sequence is eventually periodic,
//! so it contains exactly one idempotent: `f^N` for the least multiple `N`
//! of the period that is at least the preperiod.

use crate::category::{power, FactorizationSystem};
use crate::error::{Error, Result};

/// Shape of the power sequence of an endomorphism.
#[derive(Debug, Clone)]
pub struct PowerCycle<M> {
    /// Least exponent `m ≥ 1` with `f^m` on the cycle.
    pub preperiod: u64,
    /// Least `k ≥ 1` with `f^{m+k} = f^m`.
    pub period: u64,
    /// Least `N ≥ 1` with `f^{2N} = f^N`.
    pub exponent: u64,
    pub idempotent: M,
}

/// `n!`, saturating; the bound on power-sequence steps for a set of size `n`.
pub fn factorial_cap(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

/// Finds preperiod and period of `f, f², …` with Brent's algorithm, then the
/// unique idempotent power. More than `cap` steps is an error rather than a
/// silent loop.
pub fn idempotent_power<C: FactorizationSystem>(
    f: &C::Morphism,
    cap: u128,
) -> Result<PowerCycle<C::Morphism>> {
    let step = |m: &C::Morphism| C::compose(m, f);
    let mut steps: u128 = 0;
    let mut tick = || {
        steps += 1;
        if steps > cap.max(2) * 2 {
            Err(Error::GuardExceeded { what: "power sequence did not cycle".into(), limit: cap })
        } else {
            Ok(())
        }
    };

    // Period: the hare runs ahead, the tortoise teleports at powers of two.
    let mut power_of_two: u64 = 1;
    let mut period: u64 = 1;
    let mut tortoise = f.clone();
    let mut hare = step(f)?;
    while !C::equal(&tortoise, &hare) {
        tick()?;
        if power_of_two == period {
            tortoise = hare.clone();
            power_of_two *= 2;
            period = 0;
        }
        hare = step(&hare)?;
        period += 1;
    }

    // Preperiod: walk two pointers `period` apart from the start.
    let mut tortoise = f.clone();
    let mut hare = power::<C>(f, period + 1)?;
    let mut preperiod: u64 = 1;
    while !C::equal(&tortoise, &hare) {
        tick()?;
        tortoise = step(&tortoise)?;
        hare = step(&hare)?;
        preperiod += 1;
    }

    let exponent = preperiod.div_ceil(period) * period;
    let idempotent = power::<C>(f, exponent)?;
    let square = C::compose(&idempotent, &idempotent)?;
    if !C::equal(&square, &idempotent) {
        return Err(Error::ContractViolation(format!(
            "f^{exponent} from cycle detection is not idempotent"
        )));
    }
    Ok(PowerCycle { preperiod, period, exponent, idempotent })
}
