//! Tight bounds on symmetric divergences at a fixed total variation distance ε.
//!
//! Every minimum here is attained by the two-element pair
//! `P = ((1−ε)/2, (1+ε)/2)`, `Q = ((1+ε)/2, (1−ε)/2)`; the lower Bhattacharyya
//! bound needs the three-element pair `P = (ε, 1−ε, 0)`, `Q = (0, 1−ε, ε)`.
//! See [`make_extremal_pair`].
//!
//! The relative entropy is not symmetric and has no closed form; its minimum
//! `L(ε)` is computed by [`l_curve`] as a one-dimensional minimization over
//! two-element pairs.

use alloc::vec;

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::fdiv::{self, FDivergenceSpec};
use crate::math;
use crate::search::{bisect_increasing, golden_section_min};

/// Which attaining construction to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalKind {
    TwoElement,
    ThreeElement,
}

/// A pair of distributions at total variation exactly `epsilon`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalPair {
    pub p: Distribution,
    pub q: Distribution,
    pub kind: ExtremalKind,
    pub epsilon: f64,
}

fn check_closed_unit(epsilon: f64) -> Result<()> {
    if (0.0..=1.0).contains(&epsilon) {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange(epsilon))
    }
}

fn check_half_open_unit(epsilon: f64) -> Result<()> {
    if (0.0..1.0).contains(&epsilon) {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange(epsilon))
    }
}

pub fn make_extremal_pair(epsilon: f64, kind: ExtremalKind) -> Result<ExtremalPair> {
    check_closed_unit(epsilon)?;
    let (p, q) = match kind {
        ExtremalKind::TwoElement => {
            let lo = 0.5 * (1.0 - epsilon);
            let hi = 0.5 * (1.0 + epsilon);
            (vec![lo, hi], vec![hi, lo])
        }
        ExtremalKind::ThreeElement => (
            vec![epsilon, 1.0 - epsilon, 0.0],
            vec![0.0, 1.0 - epsilon, epsilon],
        ),
    };
    Ok(ExtremalPair {
        p: Distribution::from_vec_unchecked(p),
        q: Distribution::from_vec_unchecked(q),
        kind,
        epsilon,
    })
}

/// Minimum of a symmetric f-divergence at total variation ε:
/// `(1−ε) f((1+ε)/(1−ε)) − 2 f'(1) ε`.
pub fn symmetric_fdiv_infimum(spec: &FDivergenceSpec, epsilon: f64) -> Result<f64> {
    check_half_open_unit(epsilon)?;
    if !fdiv::is_symmetric(spec, spec.symmetry_constant()) {
        return Err(Error::NotSymmetric(spec.name()));
    }
    if epsilon == 0.0 {
        return Ok(0.0);
    }
    let ratio = (1.0 + epsilon) / (1.0 - epsilon);
    Ok((1.0 - epsilon) * spec.eval(ratio) - 2.0 * spec.f_prime_at_1() * epsilon)
}

/// `(1 − ε, √(1 − ε²))`: the range of the Bhattacharyya coefficient at
/// total variation ε.
pub fn bhattacharyya_bounds(epsilon: f64) -> Result<(f64, f64)> {
    check_closed_unit(epsilon)?;
    Ok((1.0 - epsilon, math::sqrt(1.0 - epsilon * epsilon)))
}

/// Minimum Chernoff information at total variation ε: `−½ ln(1 − ε²)`,
/// `+inf` at ε = 1.
pub fn chernoff_min(epsilon: f64) -> Result<f64> {
    check_closed_unit(epsilon)?;
    if epsilon == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(-0.5 * math::ln_1p(-epsilon * epsilon))
}

/// Bernoulli relative entropy `d(p‖q)` with `0 ln 0 = 0`.
pub fn bernoulli_kl(p: f64, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
        });
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "q",
            value: q,
        });
    }
    Ok((math::xlogy_ratio(p, q) + math::xlogy_ratio(1.0 - p, 1.0 - q)).max(0.0))
}

/// Binary entropy `h(p)` in nats.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
        });
    }
    Ok(-math::xlogx(p) - math::xlogx(1.0 - p))
}

/// Minimum capacitory discrimination at total variation ε:
/// `2 d((1−ε)/2 ‖ ½)`.
pub fn capacitory_min(epsilon: f64) -> Result<f64> {
    check_closed_unit(epsilon)?;
    Ok(2.0 * bernoulli_kl(0.5 * (1.0 - epsilon), 0.5)?)
}

/// Minimum Jeffreys divergence at total variation ε: `ε ln((1+ε)/(1−ε))`.
pub fn jeffreys_min(epsilon: f64) -> Result<f64> {
    check_half_open_unit(epsilon)?;
    Ok(jeffreys_min_unchecked(epsilon))
}

// ε ln((1+ε)/(1−ε)) = 2 ε atanh(ε); +inf at ε = 1.
fn jeffreys_min_unchecked(epsilon: f64) -> f64 {
    if epsilon >= 1.0 {
        f64::INFINITY
    } else {
        2.0 * epsilon * math::atanh(epsilon)
    }
}

/// Infimum of Jeffreys' divergence over pairs with `D(P‖Q) = kl_value`,
/// namely `kl_value / 2`. Not attained: the dual divergence can only be made
/// arbitrarily small.
pub fn jeffreys_min_given_kl(kl_value: f64) -> Result<f64> {
    if !(kl_value > 0.0 && kl_value.is_finite()) {
        return Err(Error::ParameterOutOfRange {
            name: "kl_value",
            value: kl_value,
        });
    }
    Ok(0.5 * kl_value)
}

/// Absolute tolerance on ε for [`jeffreys_epsilon_solver`].
pub const JEFFREYS_SOLVER_TOLERANCE: f64 = 1e-12;

/// The unique `ε ∈ [0, 1)` with `ε ln((1+ε)/(1−ε)) = x`.
pub fn jeffreys_epsilon_solver(x: f64) -> Result<f64> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::ParameterOutOfRange {
            name: "x",
            value: x,
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(bisect_increasing(
        jeffreys_min_unchecked,
        x,
        0.0,
        1.0,
        JEFFREYS_SOLVER_TOLERANCE,
    ))
}

/// A point on the curve of minimal relative entropy at fixed total variation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LCurvePoint {
    pub epsilon: f64,
    /// `L(ε)` in nats.
    pub value: f64,
    /// Minimizing β in `[ε − 1, 0]`.
    pub beta_opt: f64,
}

/// Bracket width on β for [`l_curve`].
pub const L_CURVE_BETA_TOLERANCE: f64 = 1e-10;
/// Tolerance on ε for [`l_curve_inverse`].
pub const L_CURVE_INVERSE_TOLERANCE: f64 = 1e-10;

/// `D(P_β ‖ Q_β)` for the two-element family at total variation ε,
/// `P_β = ((1+ε−β)/2, (1−ε+β)/2)`, `Q_β = ((1−ε−β)/2, (1+ε+β)/2)`:
///
/// `((ε+1−β)/2) ln((β−1−ε)/(β−1+ε)) + ((β+1−ε)/2) ln((β+1−ε)/(β+1+ε))`.
///
/// Defined for `β ∈ [ε−1, 1−ε]`; a term whose coefficient vanishes is 0 and a
/// vanishing denominator gives `+inf`.
pub fn l_curve_objective(epsilon: f64, beta: f64) -> f64 {
    let first_coeff = 0.5 * (1.0 + epsilon - beta);
    let second_coeff = 0.5 * (1.0 - epsilon + beta);
    let first = if first_coeff <= 0.0 {
        0.0
    } else {
        let denom = 1.0 - epsilon - beta;
        if denom <= 0.0 {
            return f64::INFINITY;
        }
        first_coeff * math::ln_1p(2.0 * epsilon / denom)
    };
    let second = if second_coeff <= 0.0 {
        0.0
    } else {
        second_coeff * math::ln_1p(-2.0 * epsilon / (1.0 + epsilon + beta))
    };
    first + second
}

// Closed interval: for ε near 1 the minimum sits on β = ε − 1 (P = (1, 0)),
// where the objective's limit form is exact.
fn l_curve_bracket(epsilon: f64) -> (f64, f64) {
    (epsilon - 1.0, 0.0)
}

/// `L(ε) = inf { D(P‖Q) : d_TV(P, Q) = ε }` by golden-section search over
/// `β ∈ [ε−1, 0]`. `L(1) = +inf` is outside the domain.
///
/// The objective is convex in β (relative entropy is jointly convex and the
/// family is affine in β), so the search is global; [`l_curve_validated`]
/// cross-checks it against a grid scan.
pub fn l_curve(epsilon: f64) -> Result<LCurvePoint> {
    check_half_open_unit(epsilon)?;
    if epsilon == 0.0 {
        return Ok(LCurvePoint {
            epsilon,
            value: 0.0,
            beta_opt: 0.0,
        });
    }
    let (lo, hi) = l_curve_bracket(epsilon);
    let min = golden_section_min(
        |beta| l_curve_objective(epsilon, beta),
        lo,
        hi,
        L_CURVE_BETA_TOLERANCE,
    );
    Ok(LCurvePoint {
        epsilon,
        value: min.value.max(0.0),
        beta_opt: min.x,
    })
}

/// [`l_curve`] checked against a `grid_points` scan of the β bracket. If the
/// scan finds a value more than `1e-8` below the golden-section result, the
/// search is rerun inside the grid cell around the scan minimum.
pub fn l_curve_validated(epsilon: f64, grid_points: usize) -> Result<LCurvePoint> {
    let golden = l_curve(epsilon)?;
    if epsilon == 0.0 || grid_points < 2 {
        return Ok(golden);
    }
    let (lo, hi) = l_curve_bracket(epsilon);
    let step = (hi - lo) / (grid_points - 1) as f64;
    let (best_i, best_value) = (0..grid_points)
        .map(|i| (i, l_curve_objective(epsilon, lo + step * i as f64)))
        .fold(
            (0, f64::INFINITY),
            |acc, cur| if cur.1 < acc.1 { cur } else { acc },
        );
    if best_value >= golden.value - 1e-8 {
        return Ok(golden);
    }
    let centre = lo + step * best_i as f64;
    let min = golden_section_min(
        |beta| l_curve_objective(epsilon, beta),
        (centre - step).max(lo),
        (centre + step).min(hi),
        L_CURVE_BETA_TOLERANCE,
    );
    Ok(LCurvePoint {
        epsilon,
        value: min.value.max(0.0),
        beta_opt: min.x,
    })
}

/// `ε` with `L(ε) = target`, by bisection on the increasing map `ε ↦ L(ε)`.
/// Targets beyond the representable range return ε just below 1.
pub fn l_curve_inverse(target: f64) -> Result<f64> {
    if !(target >= 0.0 && target.is_finite()) {
        return Err(Error::ParameterOutOfRange {
            name: "target",
            value: target,
        });
    }
    if target == 0.0 {
        return Ok(0.0);
    }
    Ok(bisect_increasing(
        |epsilon| {
            l_curve(epsilon)
                .map(|point| point.value)
                .unwrap_or(f64::INFINITY)
        },
        target,
        0.0,
        1.0,
        L_CURVE_INVERSE_TOLERANCE,
    ))
}

/// Partial sum `Σ_{ν=1}^{terms} ε^{2ν} / (ν (2ν − 1))` of Topsøe's series,
/// which converges to [`capacitory_min`] for ε < 1.
pub fn topsoe_series(epsilon: f64, terms: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::ParameterOutOfRange {
            name: "epsilon",
            value: epsilon,
        });
    }
    if terms == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "terms",
            value: 0.0,
        });
    }
    let eps_sq = epsilon * epsilon;
    let mut power = 1.0;
    let mut sum = 0.0;
    for nu in 1..=terms {
        power *= eps_sq;
        if power == 0.0 {
            break;
        }
        let nu = nu as f64;
        sum += power / (nu * (2.0 * nu - 1.0));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::total_variation;

    const LN_2: f64 = core::f64::consts::LN_2;

    #[test]
    fn extremal_pair_examples() {
        let pair = make_extremal_pair(0.0, ExtremalKind::TwoElement).unwrap();
        assert_eq!(pair.p.probs(), &[0.5, 0.5]);
        assert_eq!(pair.q.probs(), &[0.5, 0.5]);
        let pair = make_extremal_pair(0.5, ExtremalKind::TwoElement).unwrap();
        assert_eq!(pair.p.probs(), &[0.25, 0.75]);
        assert_eq!(pair.q.probs(), &[0.75, 0.25]);
        let pair = make_extremal_pair(0.5, ExtremalKind::ThreeElement).unwrap();
        assert_eq!(pair.p.probs(), &[0.5, 0.5, 0.0]);
        assert_eq!(pair.q.probs(), &[0.0, 0.5, 0.5]);
        assert_eq!(total_variation(&pair.p, &pair.q), 0.5);
        assert_eq!(
            make_extremal_pair(1.5, ExtremalKind::TwoElement),
            Err(Error::EpsilonOutOfRange(1.5))
        );
    }

    #[test]
    fn symmetric_infimum_examples() {
        for spec in [FDivergenceSpec::jeffreys(), FDivergenceSpec::capacitory()] {
            assert_eq!(symmetric_fdiv_infimum(&spec, 0.0).unwrap(), 0.0);
        }
        let j = symmetric_fdiv_infimum(&FDivergenceSpec::jeffreys(), 0.5).unwrap();
        assert!((j - 0.549_306_144_334_054_8).abs() < 1e-12);
        let c = symmetric_fdiv_infimum(&FDivergenceSpec::capacitory(), 0.5).unwrap();
        assert!((c - 0.261_624_071_882_273_9).abs() < 1e-12);
        let tv = symmetric_fdiv_infimum(&FDivergenceSpec::total_variation(), 0.3).unwrap();
        assert!((tv - 0.3).abs() < 1e-15);
        assert_eq!(
            symmetric_fdiv_infimum(&FDivergenceSpec::kl(), 0.5),
            Err(Error::NotSymmetric("kl"))
        );
        assert!(symmetric_fdiv_infimum(&FDivergenceSpec::jeffreys(), 1.0).is_err());
    }

    #[test]
    fn bhattacharyya_bounds_examples() {
        assert_eq!(bhattacharyya_bounds(0.0).unwrap(), (1.0, 1.0));
        assert_eq!(bhattacharyya_bounds(1.0).unwrap(), (0.0, 0.0));
        let (lo, hi) = bhattacharyya_bounds(0.5).unwrap();
        assert_eq!(lo, 0.5);
        assert!((hi - 0.866_025_403_784_438_6).abs() < 1e-15);
    }

    #[test]
    fn chernoff_min_examples() {
        assert_eq!(chernoff_min(0.0).unwrap(), 0.0);
        assert!((chernoff_min(0.5).unwrap() - 0.143_841_036_225_890_46).abs() < 1e-15);
        assert_eq!(chernoff_min(1.0).unwrap(), f64::INFINITY);
        assert!(chernoff_min(-0.1).is_err());
    }

    #[test]
    fn capacitory_min_examples() {
        assert_eq!(capacitory_min(0.0).unwrap(), 0.0);
        assert!((capacitory_min(1.0).unwrap() - 2.0 * LN_2).abs() < 1e-15);
        assert!((capacitory_min(0.5).unwrap() - 0.261_624_071_882_273_9).abs() < 1e-15);
        for eps in [0.1, 0.37, 0.5, 0.9, 0.999] {
            let closed = (1.0 + eps) * libm::log(1.0 + eps) + (1.0 - eps) * libm::log(1.0 - eps);
            assert!((capacitory_min(eps).unwrap() - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn bernoulli_kl_examples() {
        assert_eq!(bernoulli_kl(0.3, 0.3).unwrap(), 0.0);
        assert!((bernoulli_kl(0.25, 0.5).unwrap() - 0.130_812_035_941_136_96).abs() < 1e-15);
        let via_entropy = LN_2 - binary_entropy(0.25).unwrap();
        assert!((bernoulli_kl(0.25, 0.5).unwrap() - via_entropy).abs() < 1e-15);
        assert!((bernoulli_kl(0.0, 0.5).unwrap() - LN_2).abs() < 1e-15);
        assert!(bernoulli_kl(0.5, 0.0).is_err());
        assert!(bernoulli_kl(1.2, 0.5).is_err());
    }

    #[test]
    fn jeffreys_min_examples() {
        assert_eq!(jeffreys_min(0.0).unwrap(), 0.0);
        assert!((jeffreys_min(0.5).unwrap() - 0.549_306_144_334_054_8).abs() < 1e-15);
        assert!((jeffreys_min(0.9).unwrap() - 2.649_995_081_249_796_4).abs() < 1e-14);
        assert!(jeffreys_min(1.0).is_err());
        assert!(
            (jeffreys_min(0.999_999).unwrap() - 0.999_999 * libm::log(1_999_999.0)).abs() < 1e-8
        );
    }

    #[test]
    fn jeffreys_given_kl_examples() {
        assert_eq!(jeffreys_min_given_kl(1.0).unwrap(), 0.5);
        assert_eq!(jeffreys_min_given_kl(0.2).unwrap(), 0.1);
        assert!(jeffreys_min_given_kl(0.0).is_err());
    }

    #[test]
    fn jeffreys_solver_examples() {
        assert_eq!(jeffreys_epsilon_solver(0.0).unwrap(), 0.0);
        let eps = jeffreys_epsilon_solver(0.549_306_144_334_054_8).unwrap();
        assert!((eps - 0.5).abs() < 1e-12);
        // mpmath root of ε ln((1+ε)/(1−ε)) = 2e-4
        let small = jeffreys_epsilon_solver(2e-4).unwrap();
        assert!((small - 0.009_999_833_333_055_577).abs() < 1e-12);
        assert!((small - libm::sqrt(1e-4)).abs() / 0.01 < 1e-4);
        assert!(jeffreys_epsilon_solver(-1.0).is_err());
        assert!(jeffreys_epsilon_solver(f64::INFINITY).is_err());
    }

    #[test]
    fn l_curve_examples() {
        let zero = l_curve(0.0).unwrap();
        assert_eq!(zero.value, 0.0);
        let small = l_curve(0.01).unwrap();
        assert!((small.value / 2e-4 - 1.0).abs() < 0.01);
        // mpmath brute-force minimum of D(P‖Q) over 2-element pairs at TV 0.5
        let half = l_curve(0.5).unwrap();
        assert!((half.value - 0.532_297_908_891_999_9).abs() < 1e-12);
        assert!(half.beta_opt >= -0.5 && half.beta_opt <= 0.0);
        assert!((l_curve(0.9).unwrap().value - 2.302_182_884_412_987_6).abs() < 1e-11);
        assert!(l_curve(1.0).is_err());
    }

    #[test]
    fn l_curve_objective_at_beta_zero_is_jeffreys_min() {
        for eps in [0.1, 0.5, 0.8] {
            let at_zero = l_curve_objective(eps, 0.0);
            assert!((at_zero - jeffreys_min(eps).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn l_curve_minimum_reaches_degenerate_endpoint() {
        // for ε = 0.98 the optimum is P = (1, 0), Q = (0.02, 0.98)
        let point = l_curve(0.98).unwrap();
        assert_eq!(point.beta_opt, 0.98 - 1.0);
        assert!((point.value + libm::log(1.0 - 0.98)).abs() < 1e-14);
    }

    #[test]
    fn l_curve_objective_endpoint_limits() {
        // β = ε − 1: P = (1, 0), Q = (1 − ε, ε), D = −ln(1 − ε)
        let eps = 0.4;
        let v = l_curve_objective(eps, eps - 1.0);
        assert!((v + libm::log(1.0 - eps)).abs() < 1e-15);
        assert_eq!(l_curve_objective(eps, 1.0 - eps), f64::INFINITY);
    }

    #[test]
    fn l_curve_inverse_examples() {
        assert_eq!(l_curve_inverse(0.0).unwrap(), 0.0);
        let half = l_curve(0.5).unwrap().value;
        assert!((l_curve_inverse(half).unwrap() - 0.5).abs() < 1e-8);
        assert!((l_curve_inverse(2e-4).unwrap() / 0.01 - 1.0).abs() < 0.01);
        assert!(l_curve_inverse(-1.0).is_err());
        let huge = l_curve_inverse(1e6).unwrap();
        assert!(huge < 1.0 && huge > 1.0 - 1e-9);
    }

    #[test]
    fn topsoe_examples() {
        assert_eq!(topsoe_series(0.0, 7).unwrap(), 0.0);
        assert_eq!(topsoe_series(0.5, 1).unwrap(), 0.25);
        let series = topsoe_series(0.5, 200).unwrap();
        assert!((series - capacitory_min(0.5).unwrap()).abs() < 1e-12);
        assert!(topsoe_series(0.5, 0).is_err());
        assert!(topsoe_series(1.5, 3).is_err());
    }
}
