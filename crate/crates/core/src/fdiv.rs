//! f-divergences and related affinity measures.
//!
//! `D_f(P‖Q) = Σ q(x) f(p(x)/q(x))` with the boundary conventions
//!
//! * `0 · f(0/0) = 0`
//! * `q(x) = 0 < p(x)` contributes `p(x) · lim_{u→∞} f(u)/u`
//! * `p(x) = 0 < q(x)` contributes `q(x) · lim_{t→0+} f(t)`
//!
//! Everything is in nats. Infinite results are returned as `f64::INFINITY`.

use crate::dist::{aligned, Distribution};
use crate::error::{Error, Result};
use crate::math;
use crate::search::golden_section_min;

/// Convex generator `f: (0, ∞) → ℝ` of an f-divergence.
pub type Generator = fn(f64) -> f64;

/// An f-divergence described by its generator and boundary limits.
#[derive(Debug, Clone, Copy)]
pub struct FDivergenceSpec {
    name: &'static str,
    f: Generator,
    f_at_zero: f64,
    slope_at_infinity: f64,
    f_prime_at_1: f64,
}

// Midpoint-convexity probe grid: log-spaced over [1e-3, 1e3].
const CONVEXITY_GRID: usize = 121;
const CONVEXITY_SPAN_DECADES: f64 = 3.0;

// Symmetry probe grid: log-spaced over [1e-4, 1e4].
const SYMMETRY_GRID: usize = 161;
const SYMMETRY_SPAN_DECADES: f64 = 4.0;
const SYMMETRY_TOLERANCE: f64 = 1e-10;

fn log_grid(points: usize, decades: f64) -> impl Iterator<Item = f64> {
    let step = 2.0 * decades / (points - 1) as f64;
    (0..points).map(move |i| libm::pow(10.0, -decades + step * i as f64))
}

impl FDivergenceSpec {
    /// Builds a spec after checking `f(1) = 0` and midpoint convexity on a grid.
    pub fn new(
        name: &'static str,
        f: Generator,
        f_at_zero: f64,
        slope_at_infinity: f64,
        f_prime_at_1: f64,
    ) -> Result<Self> {
        let at_one = f(1.0);
        if math::abs(at_one) > 1e-12 {
            return Err(Error::NonZeroAtOne {
                name,
                value: at_one,
            });
        }
        let grid: alloc::vec::Vec<f64> = log_grid(CONVEXITY_GRID, CONVEXITY_SPAN_DECADES).collect();
        for w in grid.windows(3) {
            let (a, b) = (w[0], w[2]);
            let mid = 0.5 * (a + b);
            let (fa, fb, fm) = (f(a), f(b), f(mid));
            let scale = 1.0 + math::abs(fa) + math::abs(fb);
            if fm > 0.5 * (fa + fb) + 1e-12 * scale {
                return Err(Error::NotConvex { name, at: mid });
            }
        }
        Ok(Self {
            name,
            f,
            f_at_zero,
            slope_at_infinity,
            f_prime_at_1,
        })
    }

    /// `f(t) = t ln t`.
    pub fn kl() -> Self {
        Self::builtin("kl", kl_generator, 0.0, f64::INFINITY, 1.0)
    }

    /// `f(t) = −ln t`, the dual relative entropy `D(Q‖P)`.
    pub fn reverse_kl() -> Self {
        Self::builtin("kl_dual", reverse_kl_generator, f64::INFINITY, 0.0, -1.0)
    }

    /// `f(t) = (t − 1) ln(t) / 2`.
    pub fn jeffreys() -> Self {
        Self::builtin(
            "jeffreys",
            jeffreys_generator,
            f64::INFINITY,
            f64::INFINITY,
            0.0,
        )
    }

    /// `f(t) = (√t − 1)²`.
    pub fn hellinger_sq() -> Self {
        Self::builtin("hellinger_sq", hellinger_generator, 1.0, 1.0, 0.0)
    }

    /// `f(x) = x ln x − (x + 1) ln(1 + x) + 2 ln 2`.
    pub fn capacitory() -> Self {
        Self::builtin(
            "capacitory",
            capacitory_generator,
            2.0 * core::f64::consts::LN_2,
            0.0,
            -core::f64::consts::LN_2,
        )
    }

    /// `f(t) = |t − 1| / 2`. Not differentiable at 1; `f'(1)` is taken as the
    /// midpoint subgradient 0.
    pub fn total_variation() -> Self {
        Self::builtin("tv", tv_generator, 0.5, 0.5, 0.0)
    }

    fn builtin(
        name: &'static str,
        f: Generator,
        f_at_zero: f64,
        slope_at_infinity: f64,
        f_prime_at_1: f64,
    ) -> Self {
        Self {
            name,
            f,
            f_at_zero,
            slope_at_infinity,
            f_prime_at_1,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// `f(t)` for `t > 0`.
    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn f_at_zero(&self) -> f64 {
        self.f_at_zero
    }

    pub fn slope_at_infinity(&self) -> f64 {
        self.slope_at_infinity
    }

    pub fn f_prime_at_1(&self) -> f64 {
        self.f_prime_at_1
    }

    /// `a = 2 f'(1)`, the constant in `f(u) = u f(1/u) + a (u − 1)`.
    pub fn symmetry_constant(&self) -> f64 {
        2.0 * self.f_prime_at_1
    }
}

fn kl_generator(t: f64) -> f64 {
    t * math::ln(t)
}

fn reverse_kl_generator(t: f64) -> f64 {
    -math::ln(t)
}

fn jeffreys_generator(t: f64) -> f64 {
    0.5 * (t - 1.0) * math::ln(t)
}

fn hellinger_generator(t: f64) -> f64 {
    let s = math::sqrt(t) - 1.0;
    s * s
}

fn capacitory_generator(x: f64) -> f64 {
    x * math::ln(x) - (x + 1.0) * math::ln_1p(x) + 2.0 * core::f64::consts::LN_2
}

fn tv_generator(t: f64) -> f64 {
    0.5 * math::abs(t - 1.0)
}

/// Generic `D_f(P‖Q)` under the boundary conventions in the module docs.
pub fn f_divergence(spec: &FDivergenceSpec, p: &Distribution, q: &Distribution) -> f64 {
    let mut total = 0.0;
    for (a, b) in aligned(p, q) {
        let term = match (a > 0.0, b > 0.0) {
            (false, false) => 0.0,
            (true, false) => a * spec.slope_at_infinity,
            (false, true) => b * spec.f_at_zero,
            (true, true) => b * spec.eval(a / b),
        };
        if term == f64::INFINITY {
            return f64::INFINITY;
        }
        total += term;
    }
    total.max(0.0)
}

/// Whether `f(u) = u f(1/u) + a (u − 1)` holds on a log grid over
/// `u ∈ [1e-4, 1e4]`, to `1e-10` relative to `max(1, |f(u)|, |u f(1/u)|)`.
pub fn is_symmetric(spec: &FDivergenceSpec, a: f64) -> bool {
    log_grid(SYMMETRY_GRID, SYMMETRY_SPAN_DECADES).all(|u| {
        let lhs = spec.eval(u);
        let mirrored = u * spec.eval(1.0 / u);
        let rhs = mirrored + a * (u - 1.0);
        let scale = 1.0_f64.max(math::abs(lhs)).max(math::abs(mirrored));
        math::abs(lhs - rhs) <= SYMMETRY_TOLERANCE * scale
    })
}

/// Relative entropy `D(P‖Q) = Σ p ln(p/q)`.
pub fn kl(p: &Distribution, q: &Distribution) -> f64 {
    let mut total = 0.0;
    for (a, b) in aligned(p, q) {
        let term = math::xlogy_ratio(a, b);
        if term == f64::INFINITY {
            return f64::INFINITY;
        }
        total += term;
    }
    total.max(0.0)
}

/// Jeffreys' divergence `(D(P‖Q) + D(Q‖P)) / 2`.
pub fn jeffreys(p: &Distribution, q: &Distribution) -> f64 {
    0.5 * (kl(p, q) + kl(q, p))
}

/// Squared Hellinger distance `Σ (√p − √q)²`, in `[0, 2]`.
pub fn hellinger_sq(p: &Distribution, q: &Distribution) -> f64 {
    aligned(p, q)
        .map(|(a, b)| {
            let s = math::sqrt(a) - math::sqrt(b);
            s * s
        })
        .sum()
}

/// Capacitory discrimination `D(P‖M) + D(Q‖M)` with `M = (P + Q)/2`.
/// Twice the Jensen–Shannon divergence; bounded by `2 ln 2`.
pub fn capacitory(p: &Distribution, q: &Distribution) -> f64 {
    aligned(p, q)
        .map(|(a, b)| {
            let m = 0.5 * (a + b);
            math::xlogy_ratio(a, m) + math::xlogy_ratio(b, m)
        })
        .sum::<f64>()
        .max(0.0)
}

/// Bhattacharyya coefficient `Z(P, Q) = Σ √(p q)`, in `[0, 1]`.
pub fn bhattacharyya_coefficient(p: &Distribution, q: &Distribution) -> f64 {
    aligned(p, q)
        .map(|(a, b)| math::sqrt(a * b))
        .sum::<f64>()
        .min(1.0)
}

/// Bhattacharyya distance `−ln Z(P, Q)`; `+inf` for disjoint supports.
pub fn bhattacharyya_distance(p: &Distribution, q: &Distribution) -> f64 {
    let z = bhattacharyya_coefficient(p, q);
    if z == 0.0 {
        f64::INFINITY
    } else {
        (-math::ln(z)).max(0.0)
    }
}

/// `ln Σ p^λ q^(1−λ)` over the common support, computed in log space.
/// `−inf` when the supports are disjoint.
fn log_moment(log_pairs: &[(f64, f64)], lambda: f64) -> f64 {
    let exponents = log_pairs
        .iter()
        .map(|&(lp, lq)| lambda * lp + (1.0 - lambda) * lq);
    let max = exponents.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let sum: f64 = exponents.map(|e| math::exp(e - max)).sum();
    max + math::ln(sum)
}

fn common_support_logs(p: &Distribution, q: &Distribution) -> alloc::vec::Vec<(f64, f64)> {
    aligned(p, q)
        .filter(|&(a, b)| a > 0.0 && b > 0.0)
        .map(|(a, b)| (math::ln(a), math::ln(b)))
        .collect()
}

/// Rényi divergence of order `λ ∈ (0, 1)`: `(1/(λ−1)) ln Σ p^λ q^(1−λ)`.
pub fn renyi_divergence(p: &Distribution, q: &Distribution, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let g = log_moment(&common_support_logs(p, q), lambda);
    if g == f64::NEG_INFINITY {
        return Ok(f64::INFINITY);
    }
    Ok((g / (lambda - 1.0)).max(0.0))
}

/// Chernoff information and the exponent that attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffResult {
    /// `C(P, Q)` in nats; `+inf` for disjoint supports.
    pub value: f64,
    /// Minimizer of `λ ↦ ln Σ p^λ q^(1−λ)` on `[0, 1]`. Meaningless (reported
    /// as 0.5) when `value` is infinite.
    pub lambda_opt: f64,
}

/// Bracket width on λ for the Chernoff search.
pub const CHERNOFF_LAMBDA_TOLERANCE: f64 = 1e-12;

/// `C(P, Q) = −min_{λ∈[0,1]} ln Σ p^λ q^(1−λ)`.
///
/// The objective is convex in λ, so golden-section search on `[0, 1]` finds
/// the global minimum.
pub fn chernoff_information(p: &Distribution, q: &Distribution) -> ChernoffResult {
    let logs = common_support_logs(p, q);
    if logs.is_empty() {
        return ChernoffResult {
            value: f64::INFINITY,
            lambda_opt: 0.5,
        };
    }
    let min = golden_section_min(
        |lambda| log_moment(&logs, lambda),
        0.0,
        1.0,
        CHERNOFF_LAMBDA_TOLERANCE,
    );
    // C(P, Q) ≤ min(D(P‖Q), D(Q‖P)); the clamp also makes P = Q exactly 0
    let ceiling = kl(p, q).min(kl(q, p));
    ChernoffResult {
        value: (-min.value).clamp(0.0, ceiling),
        lambda_opt: min.x,
    }
}
