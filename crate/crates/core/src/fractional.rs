//! Candidate data sets for roots of powers `t^power` of the twist.
//!
//! Condition III becomes `a + b = power * a * b (mod n)`; the remaining
//! conditions are unchanged. These candidates are not known to be in
//! bijection with conjugacy classes, so the enumeration is an exploration
//! aid restricted to small degree and genus.

use std::ops::ControlFlow;

use crate::dataset::{Cone, DataSet, FractionalDataSet, ValidationReport};
use crate::enumeration::{scaled_twist_pairs, ResidueSearch};
use crate::error::{Error, Result};
use crate::numtheory::divisors;

pub const FRACTIONAL_MAX_DEGREE: u64 = 30;
pub const FRACTIONAL_MAX_GENUS: u64 = 12;

/// Checks conditions I, II, IV and the scaled condition III.
pub fn validate_fractional(candidate: &FractionalDataSet) -> Result<ValidationReport> {
    if candidate.power == 0 {
        return Err(Error::PreconditionViolated(
            "power must be at least 1".into(),
        ));
    }
    Ok(candidate.dataset.check(candidate.power))
}

/// All candidates of genus `g` and degree `n` for `t^power`, up to swapping
/// `a` and `b`, reducing residues and reordering cones. Sorted.
pub fn fractional_datasets(g: u64, n: u64, power: u64) -> Result<Vec<FractionalDataSet>> {
    if power == 0 {
        return Err(Error::PreconditionViolated(
            "power must be at least 1".into(),
        ));
    }
    if !(2..=FRACTIONAL_MAX_DEGREE).contains(&n) || g > FRACTIONAL_MAX_GENUS {
        return Err(Error::RangeExceeded(format!(
            "fractional enumeration needs 2 <= n <= {FRACTIONAL_MAX_DEGREE} and \
             g <= {FRACTIONAL_MAX_GENUS}, got n = {n}, g = {g}"
        )));
    }
    let mut out = Vec::new();
    if g == 0 {
        return Ok(out);
    }
    let pairs = scaled_twist_pairs(n, power);
    // Doubled genus contribution (n/d)(d - 1) per cone.
    let orders: Vec<(u64, u64)> = divisors(n)?
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| (d, (n / d) * (d - 1)))
        .collect();
    for g0 in 0..=g / n {
        let mut multisets = Vec::new();
        doubled_multisets(
            &orders,
            0,
            2 * (g - g0 * n),
            &mut Vec::new(),
            &mut multisets,
        );
        for multiset in multisets {
            let search = ResidueSearch::new(n, &multiset);
            for &(a, b) in &pairs {
                let _ = search.visit::<()>(a + b, &mut |residues| {
                    let cones = multiset
                        .iter()
                        .zip(residues)
                        .map(|(&order, &residue)| Cone { order, residue })
                        .collect();
                    out.push(FractionalDataSet {
                        dataset: DataSet::from_parts(n, g0, a, b, cones),
                        power,
                    });
                    ControlFlow::Continue(())
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

fn doubled_multisets(
    orders: &[(u64, u64)],
    start: usize,
    remaining: u64,
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for (i, &(d, w)) in orders.iter().enumerate().skip(start) {
        if w <= remaining {
            current.push(d);
            doubled_multisets(orders, i, remaining - w, current, out);
            current.pop();
        }
    }
}
