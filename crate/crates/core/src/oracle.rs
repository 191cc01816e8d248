//! Brute-force verification of the closed-form bounds.
//!
//! [`sweep_pairs`] enumerates every pair of distributions on a 2- or
//! 3-element simplex grid whose total variation lies within half a grid cell
//! of ε, evaluates a measure on each, and reports
//!
//! * validity: no pair beats the bound evaluated at the pair's own total
//!   variation (one-sided, `1e-12` slack for rounding only);
//! * tightness: the best pair found lands within `2 / grid_steps` of the
//!   bound at ε.
//!
//! The search uses only [`crate::fdiv`] on explicit distributions; it never
//! touches the extremal-pair constructors.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bounds;
use crate::dist::{total_variation, Distribution};
use crate::error::{Error, Result};
use crate::fdiv;

/// Slack on the validity side; covers rounding, nothing else.
pub const VALIDITY_SLACK: f64 = 1e-12;

/// Measures the oracle knows a closed form for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Chernoff,
    Capacitory,
    Jeffreys,
    HellingerSq,
    /// Relative entropy, checked against `L(ε)`.
    Kl,
    /// Bhattacharyya coefficient against its lower bound `1 − ε`.
    BhattacharyyaMin,
    /// Bhattacharyya coefficient against its upper bound `√(1 − ε²)`.
    BhattacharyyaMax,
}

impl Measure {
    pub const ALL: [Measure; 7] = [
        Measure::Chernoff,
        Measure::Capacitory,
        Measure::Jeffreys,
        Measure::HellingerSq,
        Measure::Kl,
        Measure::BhattacharyyaMin,
        Measure::BhattacharyyaMax,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Measure::Chernoff => "chernoff",
            Measure::Capacitory => "capacitory",
            Measure::Jeffreys => "jeffreys",
            Measure::HellingerSq => "hellinger_sq",
            Measure::Kl => "kl",
            Measure::BhattacharyyaMin => "bhattacharyya_min",
            Measure::BhattacharyyaMax => "bhattacharyya_max",
        }
    }

    /// The oracle looks for a maximum instead of a minimum.
    pub fn is_upper_bound(self) -> bool {
        matches!(self, Measure::BhattacharyyaMax)
    }

    pub fn evaluate(self, p: &Distribution, q: &Distribution) -> f64 {
        match self {
            Measure::Chernoff => fdiv::chernoff_information(p, q).value,
            Measure::Capacitory => fdiv::capacitory(p, q),
            Measure::Jeffreys => fdiv::jeffreys(p, q),
            Measure::HellingerSq => fdiv::hellinger_sq(p, q),
            Measure::Kl => fdiv::kl(p, q),
            Measure::BhattacharyyaMin | Measure::BhattacharyyaMax => {
                fdiv::bhattacharyya_coefficient(p, q)
            }
        }
    }

    /// The bound at total variation ε.
    pub fn closed_form(self, epsilon: f64) -> Result<f64> {
        match self {
            Measure::Chernoff => bounds::chernoff_min(epsilon),
            Measure::Capacitory => bounds::capacitory_min(epsilon),
            Measure::Jeffreys => {
                if epsilon == 1.0 {
                    Ok(f64::INFINITY)
                } else {
                    bounds::jeffreys_min(epsilon)
                }
            }
            Measure::HellingerSq => {
                if epsilon == 1.0 {
                    Ok(2.0)
                } else {
                    bounds::symmetric_fdiv_infimum(&fdiv::FDivergenceSpec::hellinger_sq(), epsilon)
                }
            }
            Measure::Kl => {
                if epsilon == 1.0 {
                    Ok(f64::INFINITY)
                } else {
                    bounds::l_curve(epsilon).map(|point| point.value)
                }
            }
            Measure::BhattacharyyaMin => bounds::bhattacharyya_bounds(epsilon).map(|b| b.0),
            Measure::BhattacharyyaMax => bounds::bhattacharyya_bounds(epsilon).map(|b| b.1),
        }
    }

    fn respects(self, value: f64, bound: f64) -> bool {
        if self.is_upper_bound() {
            value <= bound + VALIDITY_SLACK
        } else {
            value >= bound - VALIDITY_SLACK
        }
    }

    fn improves(self, candidate: f64, incumbent: f64) -> bool {
        if self.is_upper_bound() {
            candidate > incumbent
        } else {
            candidate < incumbent
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.label() == s)
            .ok_or_else(|| Error::UnknownMeasure(s.to_string()))
    }
}

/// Outcome of one oracle sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub measure: Measure,
    pub epsilon: f64,
    pub support: usize,
    pub grid_steps: usize,
    pub closed_form: f64,
    /// Minimum found (maximum for [`Measure::BhattacharyyaMax`]).
    pub oracle_extremum: f64,
    pub witness_p: Distribution,
    pub witness_q: Distribution,
    /// `|oracle_extremum − closed_form|`.
    pub gap: f64,
    /// Tightness tolerance, `2 / grid_steps`.
    pub tolerance: f64,
    pub pairs_examined: usize,
    /// Pairs that beat the bound at their own total variation.
    pub violations: usize,
}

impl OracleReport {
    pub fn is_valid(&self) -> bool {
        self.violations == 0
    }

    pub fn is_tight(&self) -> bool {
        self.gap <= self.tolerance
    }

    pub fn passed(&self) -> bool {
        self.is_valid() && self.is_tight()
    }
}

/// Default grid resolution: 200 steps for 2-element, 40 for 3-element supports.
pub fn default_grid_steps(support: usize) -> usize {
    if support <= 2 {
        200
    } else {
        40
    }
}

/// All compositions of `total` into `parts` nonnegative parts, in
/// lexicographic order.
fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(parts: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(parts - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, total, &mut Vec::with_capacity(parts), &mut out);
    out
}

fn to_distribution(counts: &[u32], steps: u32) -> Distribution {
    let n = f64::from(steps);
    Distribution::from_vec_unchecked(counts.iter().map(|&c| f64::from(c) / n).collect())
}

fn l1_counts(a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).map(|(&x, &y)| x.abs_diff(y)).sum()
}

// |l1 / (2N) − ε| ≤ 1 / (2N)  ⇔  |l1 − 2Nε| ≤ 1
fn within_slack(l1: u32, steps: u32, epsilon: f64) -> bool {
    libm::fabs(f64::from(l1) - 2.0 * f64::from(steps) * epsilon) <= 1.0 + 1e-9
}

struct Search {
    measure: Measure,
    epsilon: f64,
    best: Option<(f64, Vec<u32>, Vec<u32>, u32)>,
    pairs: usize,
    violations: usize,
}

impl Search {
    fn visit(&mut self, p: &[u32], q: &[u32], steps: u32) -> Result<()> {
        if !within_slack(l1_counts(p, q), steps, self.epsilon) {
            return Ok(());
        }
        let (pd, qd) = (to_distribution(p, steps), to_distribution(q, steps));
        let value = self.measure.evaluate(&pd, &qd);
        let bound = self.measure.closed_form(total_variation(&pd, &qd))?;
        self.pairs += 1;
        if !self.measure.respects(value, bound) {
            self.violations += 1;
        }
        let better = match &self.best {
            None => true,
            Some((incumbent, ..)) => self.measure.improves(value, *incumbent),
        };
        if better {
            self.best = Some((value, p.to_vec(), q.to_vec(), steps));
        }
        Ok(())
    }
}

/// Neighbours of `counts · 2` on the grid of `2 · steps`, each coordinate but
/// the last moved by at most one cell, the last absorbing the difference.
fn refined_neighbours(counts: &[u32]) -> Vec<Vec<u32>> {
    let doubled: Vec<i64> = counts.iter().map(|&c| 2 * i64::from(c)).collect();
    let total: i64 = doubled.iter().sum();
    let free = doubled.len() - 1;
    let mut out = Vec::new();
    let combos = 3usize.pow(free as u32);
    for code in 0..combos {
        let mut candidate = doubled.clone();
        let mut rest = code;
        for slot in candidate.iter_mut().take(free) {
            *slot += (rest % 3) as i64 - 1;
            rest /= 3;
        }
        let head: i64 = candidate[..free].iter().sum();
        candidate[free] = total - head;
        if candidate.iter().all(|&c| c >= 0) {
            out.push(candidate.into_iter().map(|c| c as u32).collect());
        }
    }
    out.sort();
    out
}

/// Grid search for the extremum of `measure` over pairs on a `support`-element
/// simplex at total variation ε. See the module docs.
pub fn sweep_pairs(
    support: usize,
    epsilon: f64,
    grid_steps: usize,
    measure: Measure,
) -> Result<OracleReport> {
    if !(2..=3).contains(&support) {
        return Err(Error::ParameterOutOfRange {
            name: "support",
            value: support as f64,
        });
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    if !(10..=100_000).contains(&grid_steps) {
        return Err(Error::ParameterOutOfRange {
            name: "grid_steps",
            value: grid_steps as f64,
        });
    }
    let steps = grid_steps as u32;
    let grid = compositions(support, steps);
    let mut search = Search {
        measure,
        epsilon,
        best: None,
        pairs: 0,
        violations: 0,
    };
    for p in &grid {
        for q in &grid {
            search.visit(p, q, steps)?;
        }
    }

    // one round of grid halving around the witness
    if let Some((_, wp, wq, _)) = search.best.clone() {
        let fine = 2 * steps;
        let ps = refined_neighbours(&wp);
        let qs = refined_neighbours(&wq);
        for p in &ps {
            for q in &qs {
                search.visit(p, q, fine)?;
            }
        }
    }

    let closed_form = measure.closed_form(epsilon)?;
    let (extremum, wp, wq, wsteps) = search.best.ok_or(Error::EpsilonOutOfRange(epsilon))?;
    Ok(OracleReport {
        measure,
        epsilon,
        support,
        grid_steps,
        closed_form,
        oracle_extremum: extremum,
        witness_p: to_distribution(&wp, wsteps),
        witness_q: to_distribution(&wq, wsteps),
        gap: libm::fabs(extremum - closed_form),
        tolerance: 2.0 / grid_steps as f64,
        pairs_examined: search.pairs,
        violations: search.violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_are_complete_and_ordered() {
        let c = compositions(3, 4);
        assert_eq!(c.len(), 15);
        assert_eq!(c.first().unwrap(), &[0, 0, 4]);
        assert_eq!(c.last().unwrap(), &[4, 0, 0]);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn measure_labels_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.label().parse::<Measure>().unwrap(), m);
        }
        assert_eq!(
            "tsallis".parse::<Measure>(),
            Err(Error::UnknownMeasure("tsallis".into()))
        );
    }

    #[test]
    fn chernoff_two_element() {
        let r = sweep_pairs(2, 0.5, 200, Measure::Chernoff).unwrap();
        assert!(r.passed());
        assert!((r.oracle_extremum - 0.143_841_036_225_890_46).abs() < 1e-10);
        assert_eq!(r.witness_p.probs(), &[0.25, 0.75]);
        assert_eq!(r.witness_q.probs(), &[0.75, 0.25]);
    }

    #[test]
    fn bhattacharyya_max_two_element() {
        let r = sweep_pairs(2, 0.5, 200, Measure::BhattacharyyaMax).unwrap();
        assert!(r.passed());
        assert!((r.oracle_extremum - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn bhattacharyya_min_needs_three_elements() {
        let three = sweep_pairs(3, 0.5, 40, Measure::BhattacharyyaMin).unwrap();
        assert!(three.passed());
        assert!((three.oracle_extremum - 0.5).abs() < 1e-12);
        let two = sweep_pairs(2, 0.5, 200, Measure::BhattacharyyaMin).unwrap();
        assert!(two.is_valid());
        assert!(!two.is_tight());
        assert!(two.oracle_extremum > 0.7);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(sweep_pairs(4, 0.5, 40, Measure::Kl).is_err());
        assert!(sweep_pairs(2, 0.0, 40, Measure::Kl).is_err());
        assert!(sweep_pairs(2, 0.5, 5, Measure::Kl).is_err());
    }
}
