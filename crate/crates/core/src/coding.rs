//! Audit of uniquely-decodable (UD) source codes through their length profile.
//!
//! A code over a `d`-ary alphabet with lengths `l(u)` induces
//! `Q(u) = d^{−l(u)} / c` with Kraft sum `c = Σ d^{−l(u)} ≤ 1`. The average
//! redundancy `Δ = E[l] − H_d(P)` controls how far the source `P` is from `Q`
//! in L1 distance; three bounds on `Σ |P − Q|` are provided by [`l1_bounds`].
//!
//! Units: redundancy is in `d`-ary digits (`_dary`), divergences in nats
//! (`_nats`). `Δ · ln d` converts the former to the latter.

use alloc::vec::Vec;

use crate::bounds;
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::fdiv;
use crate::math;

/// Slack on `c ≤ 1` that admits floating-point dyadic sums.
pub const KRAFT_TOLERANCE: f64 = 1e-12;

// log_d(1/P) values this close to an integer are snapped to it before
// rounding up, so exact d-adic masses are not pushed one digit too long.
const CEIL_SNAP: f64 = 1e-9;

/// Codeword lengths over a `d`-ary alphabet, paired with the source they encode.
#[derive(Debug, Clone, PartialEq)]
pub struct UdCode {
    d: u32,
    lengths: Vec<u32>,
    source: Distribution,
    kraft_sum: f64,
}

impl UdCode {
    /// Validates alphabet size, lengths and the Kraft–McMillan inequality.
    pub fn new(d: u32, lengths: Vec<u32>, source: Distribution) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidAlphabet(d));
        }
        if lengths.len() != source.len() {
            return Err(Error::LengthCountMismatch {
                lengths: lengths.len(),
                symbols: source.len(),
            });
        }
        if let Some(index) = lengths.iter().position(|&l| l == 0) {
            return Err(Error::ZeroLength { index });
        }
        let kraft_sum = kraft_sum(d, &lengths);
        if kraft_sum > 1.0 + KRAFT_TOLERANCE {
            return Err(Error::KraftViolation { sum: kraft_sum });
        }
        Ok(Self {
            d,
            lengths,
            source,
            kraft_sum,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn source(&self) -> &Distribution {
        &self.source
    }

    /// `c = Σ d^{−l(u)}`.
    pub fn kraft_sum(&self) -> f64 {
        self.kraft_sum
    }

    fn ln_d(&self) -> f64 {
        math::ln(f64::from(self.d))
    }

    /// `E[l(U)]` in `d`-ary digits.
    pub fn average_length(&self) -> f64 {
        self.source
            .probs()
            .iter()
            .zip(&self.lengths)
            .map(|(&p, &l)| p * f64::from(l))
            .sum()
    }

    /// Per-symbol slack `δ(u) = l(u) + log_d P(u)`.
    pub fn slack(&self) -> Result<Vec<f64>> {
        let ln_d = self.ln_d();
        self.source
            .probs()
            .iter()
            .zip(&self.lengths)
            .enumerate()
            .map(|(index, (&p, &l))| {
                if p == 0.0 {
                    Err(Error::ZeroMassSymbol { index })
                } else {
                    Ok(f64::from(l) + math::ln(p) / ln_d)
                }
            })
            .collect()
    }

    // E[δ d^{−δ}] under P.
    fn slack_moment(&self) -> Result<f64> {
        let ln_d = self.ln_d();
        let slack = self.slack()?;
        Ok(self
            .source
            .probs()
            .iter()
            .zip(slack)
            .map(|(&p, delta)| p * delta * math::exp(-delta * ln_d))
            .sum())
    }
}

fn kraft_sum(d: u32, lengths: &[u32]) -> f64 {
    let d = f64::from(d);
    lengths
        .iter()
        .map(|&l| math::powi(d, -(l.min(i32::MAX as u32) as i32)))
        .sum()
}

/// `⌈log_d(1/p)⌉` for `p ∈ (0, 1]`.
fn ceil_log_inverse(p: f64, d: u32) -> u32 {
    let x = -math::ln(p) / math::ln(f64::from(d));
    let nearest = libm::round(x);
    let x = if math::abs(x - nearest) <= CEIL_SNAP {
        nearest
    } else {
        x
    };
    math::ceil(x).max(0.0) as u32
}

/// `Q(u) = d^{−l(u)} / c`.
pub fn induced_distribution(code: &UdCode) -> Distribution {
    let d = f64::from(code.d);
    let c = code.kraft_sum;
    let probs = code
        .lengths
        .iter()
        .map(|&l| math::powi(d, -(l as i32)) / c)
        .collect();
    Distribution::from_vec_unchecked(probs)
}

/// Average redundancy `Δ = E[l] − H_d(P)` in `d`-ary digits.
pub fn redundancy(code: &UdCode) -> f64 {
    let entropy = code.source.entropy_nats() / code.ln_d();
    (code.average_length() - entropy).max(0.0)
}

/// `D(P‖Q) = Δ ln d + ln c`, in nats.
pub fn kl_to_induced(code: &UdCode) -> f64 {
    (redundancy(code) * code.ln_d() + math::ln(code.kraft_sum)).max(0.0)
}

/// `D(Q‖P) = −ln c − (ln d / c) E[δ d^{−δ}]`, in nats.
pub fn kl_from_induced(code: &UdCode) -> Result<f64> {
    let moment = code.slack_moment()?;
    Ok((-math::ln(code.kraft_sum) - code.ln_d() / code.kraft_sum * moment).max(0.0))
}

/// `J(P, Q) = ½ [Δ ln d − (ln d / c) E[δ d^{−δ}]]`, in nats.
pub fn jeffreys_to_induced(code: &UdCode) -> Result<f64> {
    let moment = code.slack_moment()?;
    let ln_d = code.ln_d();
    Ok((0.5 * (redundancy(code) * ln_d - ln_d / code.kraft_sum * moment)).max(0.0))
}

/// Whether `l(u) ≥ ⌈log_d 1/P(u)⌉` for every symbol (equivalently `δ ≥ 0`).
/// Shannon, Shannon–Fano–Elias and arithmetic codes satisfy it; Huffman
/// codes in general do not.
pub fn length_condition_holds(code: &UdCode) -> Result<bool> {
    for (index, (&p, &l)) in code.source.probs().iter().zip(&code.lengths).enumerate() {
        if p == 0.0 {
            return Err(Error::ZeroMassSymbol { index });
        }
        if l < ceil_log_inverse(p, code.d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shannon code: `l(u) = max(1, ⌈log_d 1/P(u)⌉)`.
pub fn shannon_code(source: &Distribution, d: u32) -> Result<UdCode> {
    if d < 2 {
        return Err(Error::InvalidAlphabet(d));
    }
    let lengths = source
        .probs()
        .iter()
        .enumerate()
        .map(|(index, &p)| {
            if p == 0.0 {
                Err(Error::ZeroMassSymbol { index })
            } else {
                Ok(ceil_log_inverse(p, d).max(1))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    UdCode::new(d, lengths, source.clone())
}

/// Upper bounds on `Σ_u |P(u) − Q(u)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Bounds {
    /// `min(√(2 Δ ln d), 2)`, Pinsker applied to `D(P‖Q) ≤ Δ ln d`.
    pub csiszar: f64,
    /// `min(2 L⁻¹(Δ ln d), 2)`, the exact minimum relative entropy in place
    /// of Pinsker.
    pub kl_tight: f64,
    /// `2 ε(Δ ln d / 2)` from the Jeffreys minimum; only valid for codes that
    /// satisfy [`length_condition_holds`].
    pub jeffreys_tight: Option<f64>,
}

/// All three bounds as functions of the redundancy alone (`delta_dary ≥ 0`).
/// The Jeffreys bound is always filled in; whether it applies to a given
/// code is the caller's call.
pub fn l1_bounds_for_redundancy(delta_dary: f64, d: u32) -> Result<L1Bounds> {
    if d < 2 {
        return Err(Error::InvalidAlphabet(d));
    }
    if !(delta_dary >= 0.0 && delta_dary.is_finite()) {
        return Err(Error::ParameterOutOfRange {
            name: "delta",
            value: delta_dary,
        });
    }
    let nats = delta_dary * math::ln(f64::from(d));
    Ok(L1Bounds {
        csiszar: math::sqrt(2.0 * nats).min(2.0),
        kl_tight: (2.0 * bounds::l_curve_inverse(nats)?).min(2.0),
        jeffreys_tight: Some(2.0 * bounds::jeffreys_epsilon_solver(0.5 * nats)?),
    })
}

/// Bounds for a specific code; the Jeffreys bound is present iff the length
/// condition holds.
pub fn l1_bounds(code: &UdCode) -> Result<L1Bounds> {
    let mut out = l1_bounds_for_redundancy(redundancy(code), code.d)?;
    let applies = matches!(length_condition_holds(code), Ok(true));
    if !applies {
        out.jeffreys_tight = None;
    }
    Ok(out)
}

/// Everything known about one code.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeReport {
    pub kraft_sum: f64,
    pub q_induced: Distribution,
    pub average_length_dary: f64,
    pub redundancy_dary: f64,
    pub kl_pq_nats: f64,
    /// `+inf` when some source symbol has zero mass.
    pub kl_qp_nats: f64,
    /// `+inf` when some source symbol has zero mass.
    pub jeffreys_nats: f64,
    pub l1_actual: f64,
    pub bound_csiszar: f64,
    pub bound_kl: f64,
    pub bound_jeffreys: Option<f64>,
    pub condition_holds: bool,
}

impl CodeReport {
    /// Smallest bound that applies to this code.
    pub fn tightest_bound(&self) -> f64 {
        let best = self.bound_csiszar.min(self.bound_kl);
        self.bound_jeffreys.map_or(best, |j| best.min(j))
    }
}

pub fn analyze(code: &UdCode) -> Result<CodeReport> {
    let q = induced_distribution(code);
    let l1_actual = code
        .source
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(&a, &b)| math::abs(a - b))
        .sum();
    let bounds = l1_bounds(code)?;
    let (kl_qp_nats, jeffreys_nats) = match (kl_from_induced(code), jeffreys_to_induced(code)) {
        (Ok(dual), Ok(j)) => (dual, j),
        (Err(Error::ZeroMassSymbol { .. }), _) | (_, Err(Error::ZeroMassSymbol { .. })) => {
            (f64::INFINITY, f64::INFINITY)
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    Ok(CodeReport {
        kraft_sum: code.kraft_sum,
        average_length_dary: code.average_length(),
        redundancy_dary: redundancy(code),
        kl_pq_nats: kl_to_induced(code),
        kl_qp_nats,
        jeffreys_nats,
        l1_actual,
        bound_csiszar: bounds.csiszar,
        bound_kl: bounds.kl_tight,
        bound_jeffreys: bounds.jeffreys_tight,
        condition_holds: bounds.jeffreys_tight.is_some(),
        q_induced: q,
    })
}

/// Direct divergences between `P` and `Q`, computed without the closed forms.
pub fn direct_divergences(code: &UdCode) -> (f64, f64, f64) {
    let q = induced_distribution(code);
    (
        fdiv::kl(&code.source, &q),
        fdiv::kl(&q, &code.source),
        fdiv::jeffreys(&code.source, &q),
    )
}
