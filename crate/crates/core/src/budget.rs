//! From an information budget to an error-correction budget: quantization
//! plan, minimum block size, complexity scaling and the published-information
//! audit.
//!
//! Two conventions coexist through the headroom parameter `kappa`. The
//! entropy ceiling `e_c` satisfies `H(e_c) = H(e_AB) + delta_i_per_digit`:
//! spending the whole per-digit secret rate on the error-correction gap
//! (`kappa = 1`) gives the absolute block-size floor, while `kappa = 0.5`
//! spends half and keeps `(1 - kappa) * delta_i` per digit as net key.

use serde::{Deserialize, Serialize};

use crate::channel::{propagate, ChannelPoint, InfoBudget};
use crate::numerics::{h2, inv_h2, q_inv, Bits, Probability};
use crate::{Error, Result};

/// Best laboratory-grade codes reach the Shannon minimum within this gap.
pub const LDPC_REFERENCE_GAP_DB: f64 = 0.0045;

/// Transmittance of the 3.1 dB demonstration point used as the complexity
/// reference.
pub const REFERENCE_TRANSMISSION: f64 = 0.49;

/// How a complexity ratio between two channel points is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMode {
    /// Pure power law `(eta_a / eta_b)^4`.
    PowerLawEta4,
    /// Ratio of squared block sizes from the full pipeline, evaluated with
    /// fractional digit counts so sweeps stay smooth.
    FullPipeline,
}

impl std::fmt::Display for ScalingMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScalingMode::PowerLawEta4 => "power_law_eta4",
            ScalingMode::FullPipeline => "full_pipeline",
        })
    }
}

/// Outcome of quantizing one continuous key element into binary digits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DigitPlan {
    /// Digits per key element, `max(1, ceil(fractional_digits))`.
    pub digits_per_element: u32,
    /// Pre-rounding digit count, kept for smooth sweeps.
    pub fractional_digits: f64,
    /// Bit error rate of a typical digit between Alice and Bob.
    pub ber: Probability,
    /// `H(ber)`, per digit.
    pub entropy_per_digit: Bits,
    /// Secret rate per digit, `delta_i / digits_per_element`.
    pub secret_per_digit: Bits,
}

/// Error-correction block sizing for one digit plan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockBound {
    /// Entropy ceiling: `H(e_c) = H(e_AB) + secret_per_digit`.
    pub e_c: Probability,
    /// Correctable error fraction: `H(e_rec) = H(e_AB) + headroom * secret_per_digit`.
    pub e_rec: Probability,
    /// Fraction `kappa` of the per-digit secret rate spent on the gap.
    pub headroom: f64,
    /// Tolerated failure probability `1 - beta`.
    pub beta_fail: Probability,
    /// `Q^{-1}(beta_fail)^2`.
    pub q_squared: f64,
    /// Minimum block size from the Gaussian fluctuation bound, at `e_rec`.
    pub m_min: u64,
    /// Linearized form of the bound (first-order gap, `kappa = 1`).
    pub m_linearized: u64,
    /// Net key per digit after the gap: `(1 - headroom) * secret_per_digit`.
    pub net_secret_per_digit: Bits,
}

impl BlockBound {
    /// Checks the self-contained invariants of the bound.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.e_rec.value() > self.e_c.value() + tol || self.e_c.value() >= 0.5 + tol {
            return Err(Error::Domain(format!(
                "threshold ordering violated: e_rec={} e_c={}",
                self.e_rec.value(),
                self.e_c.value()
            )));
        }
        if self.m_min < 1 {
            return Err(Error::Domain("block size must be at least 1".into()));
        }
        let q = q_inv(self.beta_fail.value());
        if (q * q - self.q_squared).abs() > tol * self.q_squared.max(1.0) {
            return Err(Error::Domain(
                "q_squared inconsistent with beta_fail".into(),
            ));
        }
        Ok(())
    }
}

/// Relative cost of error correction at one block size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityEstimate {
    /// Block size the estimate refers to.
    pub block_size: u64,
    /// Cost relative to the reference point (cost is of order `m^2`).
    pub relative_complexity: f64,
    pub scaling_mode: ScalingMode,
}

/// The published-information audit of one operating point, integer bits.
///
/// This reproduces coarse budget-sheet arithmetic: the secret rate is
/// quoted to one significant figure before the element count is formed,
/// exactly as the figures it mirrors were derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    /// Secret rate per element as quoted (one significant figure).
    pub delta_i_quoted: f64,
    /// Key elements consumed per distilled secret bit.
    pub elements_per_secret_bit: u64,
    /// Binary digits carrying those elements.
    pub digits_total: u64,
    /// Shannon-minimum correction information for those digits.
    pub leak_min_bits: u64,
    /// Most correction information that may be published before Eve knows
    /// everything: the minimum leak plus the one secret bit.
    pub eve_budget_bits: u64,
    /// `digits_total + leak_min_bits`.
    pub total_digits_plus_leak: u64,
    /// `eve_budget_bits / leak_min_bits`; absent when no leak is required.
    pub required_efficiency: Option<f64>,
    /// Required closeness to the Shannon limit, in dB.
    pub required_gap_db: f64,
    /// Reference gap of laboratory-grade codes, dB.
    pub ldpc_reference_gap_db: f64,
}

impl AuditReport {
    /// Checks the accounting identities.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.eve_budget_bits != self.leak_min_bits + 1 {
            return Err(Error::Domain(
                "eve budget must exceed the minimum leak by exactly the one secret bit".into(),
            ));
        }
        if self.total_digits_plus_leak != self.digits_total + self.leak_min_bits {
            return Err(Error::Domain("total bits inconsistent".into()));
        }
        match self.required_efficiency {
            Some(eff) => {
                if self.leak_min_bits == 0 {
                    return Err(Error::Domain("efficiency defined despite zero leak".into()));
                }
                let expected = self.eve_budget_bits as f64 / self.leak_min_bits as f64;
                if (eff - expected).abs() > tol {
                    return Err(Error::Domain("efficiency inconsistent".into()));
                }
            }
            None => {
                if self.leak_min_bits != 0 {
                    return Err(Error::Domain("efficiency missing despite leak".into()));
                }
            }
        }
        let expected_gap = 10.0
            * ((self.digits_total + self.eve_budget_bits) as f64
                / self.total_digits_plus_leak as f64)
                .log10();
        if (self.required_gap_db - expected_gap).abs() > tol {
            return Err(Error::Domain("gap dB inconsistent".into()));
        }
        Ok(())
    }
}

/// Quantizes an information budget into binary digits.
///
/// The digit count must resolve the noise gap between Alice and Eve:
/// `fractional_digits = 0.5 log2(v_b / (v_b|e - v_b|a))`, rounded up with a
/// floor of one. The typical per-digit error rate then follows from the
/// symmetric-channel identity `d * H(e_AB) = d - I_AB`.
pub fn plan_quantization(info: &InfoBudget) -> Result<DigitPlan> {
    info.validate(1e-9)?;
    let delta_i = info.delta_i.value();
    if delta_i <= 0.0 {
        return Err(Error::Infeasible(
            "no positive secret rate to distill (delta_i <= 0)".into(),
        ));
    }
    let gap = info.v_b_given_e - info.v_b_given_a;
    if gap <= 0.0 {
        return Err(Error::Infeasible(
            "no noise gap between Alice and Eve to resolve".into(),
        ));
    }
    let fractional = 0.5 * (info.v_b / gap).log2();
    let digits = fractional.ceil().max(1.0);
    let entropy_target = 1.0 - info.i_ab.value() / digits;
    if entropy_target < 0.0 {
        return Err(Error::Infeasible(format!(
            "digits carry more than one bit each (I_AB = {} over {} digits)",
            info.i_ab.value(),
            digits
        )));
    }
    Ok(DigitPlan {
        digits_per_element: digits as u32,
        fractional_digits: fractional,
        ber: Probability::new_unchecked(inv_h2(entropy_target)),
        entropy_per_digit: Bits::new_unchecked(entropy_target),
        secret_per_digit: Bits::new_unchecked(delta_i / digits),
    })
}

/// Minimum block size for a digit plan; see [`block_size_from_rates`].
pub fn block_size_bound(
    plan: &DigitPlan,
    beta_fail: Probability,
    headroom: f64,
) -> Result<BlockBound> {
    block_size_from_rates(plan.ber, plan.secret_per_digit, beta_fail, headroom)
}

/// Minimum block size from a bit error rate and a per-digit secret rate.
///
/// The error count over a block of `m` digits fluctuates binomially with
/// variance `m e (1-e)`; demanding that it stays below `m * e_rec` except
/// with probability `beta_fail` gives
///
/// ```text
/// m = e (1-e) / (e_rec - e)^2 * Q^{-1}(beta_fail)^2
/// ```
///
/// `m_min` evaluates this at the exact `e_rec`; `m_linearized` replaces
/// `e_c - e` by its first-order value `delta_i / log2((1-e)/e)`, which
/// over-bounds `m_min` at `kappa = 1` because `H` is concave.
pub fn block_size_from_rates(
    ber: Probability,
    secret_per_digit: Bits,
    beta_fail: Probability,
    headroom: f64,
) -> Result<BlockBound> {
    let e = ber.value();
    let di = secret_per_digit.value();
    let beta = beta_fail.value();
    if beta <= 0.0 || beta >= 0.5 {
        return Err(Error::Domain(format!(
            "failure probability {beta} outside (0, 0.5)"
        )));
    }
    if !(headroom > 0.0 && headroom <= 1.0) {
        return Err(Error::Domain(format!("headroom {headroom} outside (0, 1]")));
    }
    if di <= 0.0 {
        return Err(Error::Infeasible(
            "per-digit secret rate must be positive".into(),
        ));
    }
    if e >= 0.5 {
        return Err(Error::Domain(format!(
            "bit error rate {e} must be below 0.5"
        )));
    }

    let q = q_inv(beta);
    let q_squared = q * q;
    let h_e = h2(e);
    if h_e + di >= 1.0 {
        return Err(Error::Infeasible(format!(
            "entropy ceiling H(e)+dI = {} reaches 1; e_c is undefined below 0.5",
            h_e + di
        )));
    }
    let e_c = inv_h2(h_e + di);
    let e_rec = inv_h2(h_e + headroom * di);
    let net = Bits::new_unchecked((1.0 - headroom) * di);

    if e == 0.0 {
        // nothing to correct; one digit suffices
        return Ok(BlockBound {
            e_c: Probability::new_unchecked(e_c),
            e_rec: Probability::new_unchecked(e_rec),
            headroom,
            beta_fail,
            q_squared,
            m_min: 1,
            m_linearized: 1,
            net_secret_per_digit: net,
        });
    }

    let gap = e_rec - e;
    if gap <= 0.0 {
        return Err(Error::Infeasible(
            "headroom too small to open a gap above the error rate".into(),
        ));
    }
    let m_real = e * (1.0 - e) / (gap * gap) * q_squared;
    let slope = ((1.0 - e) / e).log2();
    let m_lin_real = e * (1.0 - e) * slope * slope / (di * di) * q_squared;

    Ok(BlockBound {
        e_c: Probability::new_unchecked(e_c),
        e_rec: Probability::new_unchecked(e_rec),
        headroom,
        beta_fail,
        q_squared,
        m_min: m_real.ceil() as u64,
        m_linearized: m_lin_real.ceil() as u64,
        net_secret_per_digit: net,
    })
}

/// Unrounded pipeline block size with fractional digit counts, for smooth
/// distance sweeps. Returns the real-valued `m`.
pub fn pipeline_block_size_smooth(
    point: &ChannelPoint,
    beta_fail: Probability,
    headroom: f64,
) -> Result<f64> {
    let beta = beta_fail.value();
    if beta <= 0.0 || beta >= 0.5 {
        return Err(Error::Domain(format!(
            "failure probability {beta} outside (0, 0.5)"
        )));
    }
    if !(headroom > 0.0 && headroom <= 1.0) {
        return Err(Error::Domain(format!("headroom {headroom} outside (0, 1]")));
    }
    let info = propagate(point)?;
    let delta_i = info.delta_i.value();
    if delta_i <= 0.0 {
        return Err(Error::Infeasible("no positive secret rate".into()));
    }
    let gap = info.v_b_given_e - info.v_b_given_a;
    if gap <= 0.0 {
        return Err(Error::Infeasible("no noise gap to resolve".into()));
    }
    let digits = 0.5 * (info.v_b / gap).log2();
    let entropy_target = 1.0 - info.i_ab.value() / digits;
    if entropy_target <= 0.0 {
        return Err(Error::Infeasible(
            "fractional digit count cannot carry the mutual information".into(),
        ));
    }
    let di = delta_i / digits;
    let e = inv_h2(entropy_target);
    if entropy_target + di >= 1.0 {
        return Err(Error::Infeasible("entropy ceiling reaches 1".into()));
    }
    let e_rec = inv_h2(entropy_target + headroom * di);
    let gap_e = e_rec - e;
    if gap_e <= 0.0 {
        return Err(Error::Infeasible("no gap above the error rate".into()));
    }
    let q = q_inv(beta);
    Ok(e * (1.0 - e) / (gap_e * gap_e) * (q * q))
}

/// Complexity of point `b` relative to point `a` (cost of order `m^2`).
pub fn relative_complexity(
    a: &ChannelPoint,
    b: &ChannelPoint,
    mode: ScalingMode,
    beta_fail: Probability,
    headroom: f64,
) -> Result<f64> {
    match mode {
        ScalingMode::PowerLawEta4 => {
            a.validate()?;
            b.validate()?;
            Ok((a.transmission / b.transmission).powi(4))
        }
        ScalingMode::FullPipeline => {
            let m_a = pipeline_block_size_smooth(a, beta_fail, headroom)?;
            let m_b = pipeline_block_size_smooth(b, beta_fail, headroom)?;
            let ratio = m_b / m_a;
            Ok(ratio * ratio)
        }
    }
}

/// Rounds to one significant decimal figure.
fn quote_one_significant(x: f64) -> f64 {
    let scale = 10f64.powf(x.abs().log10().floor());
    (x / scale).round() * scale
}

/// Worked audit of the published-information budget at one operating point.
///
/// Counts, per distilled secret bit: key elements, binary digits, the
/// Shannon-minimum correction leak, the largest publishable leak (one more
/// bit), and the implied efficiency and dB gap the error correction must
/// reach. The secret rate enters quoted to one significant figure, matching
/// the budget-sheet arithmetic this audit reproduces.
pub fn audit_worked_example(info: &InfoBudget, plan: &DigitPlan) -> Result<AuditReport> {
    let delta_i = info.delta_i.value();
    if delta_i <= 0.0 {
        return Err(Error::Infeasible("no positive secret rate to audit".into()));
    }
    let quoted = quote_one_significant(delta_i);
    let elements = (1.0 / quoted).ceil() as u64;
    let digits_per_element = plan.digits_per_element as u64;
    let digits_total = elements * digits_per_element;
    let leak_real = elements as f64 * (digits_per_element as f64 - info.i_ab.value());
    let leak_min_bits = leak_real.round_ties_even() as u64;
    let eve_budget_bits = leak_min_bits + 1;
    let total = digits_total + leak_min_bits;
    let required_efficiency = if leak_min_bits == 0 {
        None
    } else {
        Some(eve_budget_bits as f64 / leak_min_bits as f64)
    };
    let required_gap_db = 10.0 * ((digits_total + eve_budget_bits) as f64 / total as f64).log10();
    Ok(AuditReport {
        delta_i_quoted: quoted,
        elements_per_secret_bit: elements,
        digits_total,
        leak_min_bits,
        eve_budget_bits,
        total_digits_plus_leak: total,
        required_efficiency,
        required_gap_db,
        ldpc_reference_gap_db: LDPC_REFERENCE_GAP_DB,
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle values keep their digits
mod tests {
    use super::*;
    use crate::channel::ChannelPoint;

    fn assert_abs(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "{actual} vs {expected}: abs err {:e}",
            (actual - expected).abs()
        );
    }

    fn assert_rel(actual: f64, expected: f64, rtol: f64) {
        let err = ((actual - expected) / expected).abs();
        assert!(err <= rtol, "{actual} vs {expected}: rel err {err:e}");
    }

    fn reference_plan() -> (InfoBudget, DigitPlan) {
        let point = ChannelPoint::from_transmission(0.01, 100.0).unwrap();
        let info = propagate(&point).unwrap();
        let plan = plan_quantization(&info).unwrap();
        (info, plan)
    }

    #[test]
    fn quantization_at_20db() {
        let (_, plan) = reference_plan();
        assert_eq!(plan.digits_per_element, 4);
        // oracle: 0.5*log2(200)
        assert_abs(plan.fractional_digits, 3.8219280948873623, 1e-12);
        assert_abs(plan.entropy_per_digit.value(), 0.875, 1e-12);
        // oracle: inv_H(0.875) at 60 digits
        assert_abs(plan.ber.value(), 0.29492619359996412, 1e-10);
        assert_abs(plan.secret_per_digit.value(), 0.0017944116221337552, 1e-12);
    }

    #[test]
    fn quantization_floors_at_one_digit() {
        // ratio v_b / gap below 4 => a single digit
        let point = ChannelPoint::from_transmission(0.9, 2.0).unwrap();
        let info = propagate(&point).unwrap();
        assert!(info.v_b / (info.v_b_given_e - info.v_b_given_a) <= 4.0);
        let plan = plan_quantization(&info).unwrap();
        assert_eq!(plan.digits_per_element, 1);
        assert_abs(plan.fractional_digits, 0.4502321632245428, 1e-12);
        assert_abs(plan.ber.value(), 0.043314200761841912, 1e-10);
        assert_abs(plan.secret_per_digit.value(), 0.6609640474436812, 1e-12);
    }

    #[test]
    fn quantization_at_10db() {
        let point = ChannelPoint::from_transmission(0.1, 100.0).unwrap();
        let info = propagate(&point).unwrap();
        let plan = plan_quantization(&info).unwrap();
        assert_abs(plan.fractional_digits, 3.3226490819743156, 1e-12);
        assert_eq!(plan.digits_per_element, 4);
        assert_abs(plan.secret_per_digit.value(), 0.018802105319137310, 1e-12);
    }

    #[test]
    fn quantization_infeasible_cases() {
        // zero modulation: no secret rate at all
        let point = ChannelPoint::from_transmission(0.9999, 0.0).unwrap();
        let info = propagate(&point).unwrap();
        assert!(matches!(
            plan_quantization(&info),
            Err(Error::Infeasible(_))
        ));
        // digits would have to carry more than one bit each
        let point = ChannelPoint::from_transmission(0.9, 8.0).unwrap();
        let info = propagate(&point).unwrap();
        assert!(matches!(
            plan_quantization(&info),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn block_bound_at_20db_full_headroom() {
        let (_, plan) = reference_plan();
        let bound = block_size_bound(&plan, Probability::new(1e-7).unwrap(), 1.0).unwrap();
        assert_abs(bound.q_squared, 27.033111293602647, 1e-7);
        // oracle: ceil(2738571.392...)
        assert_eq!(bound.m_min, 2_738_572);
        assert_eq!(bound.m_linearized, 2_760_329);
        assert!(bound.m_linearized >= bound.m_min);
        assert_abs(bound.e_c.value(), 0.29635890905563156, 1e-10);
        assert_eq!(bound.e_rec, bound.e_c);
        assert_eq!(bound.net_secret_per_digit.value(), 0.0);
        bound.validate(1e-9).unwrap();
    }

    #[test]
    fn block_bound_at_20db_half_headroom() {
        let (_, plan) = reference_plan();
        let bound = block_size_bound(&plan, Probability::new(1e-7).unwrap(), 0.5).unwrap();
        // oracle: ceil(10997822.477...)
        assert_eq!(bound.m_min, 10_997_823);
        assert_abs(bound.e_rec.value(), 0.29564113200465881, 1e-10);
        assert_abs(
            bound.net_secret_per_digit.value(),
            0.5 * 0.0017944116221337552,
            1e-12,
        );
    }

    #[test]
    fn block_bound_error_free_channel() {
        let bound = block_size_from_rates(
            Probability::new(0.0).unwrap(),
            Bits::new(0.3).unwrap(),
            Probability::new(1e-7).unwrap(),
            1.0,
        )
        .unwrap();
        assert_eq!(bound.m_min, 1);
    }

    #[test]
    fn block_bound_domain_and_infeasible() {
        let ber = Probability::new(0.29).unwrap();
        let di = Bits::new(0.001).unwrap();
        let beta = Probability::new(1e-7).unwrap();
        assert!(block_size_from_rates(ber, di, Probability::new(0.7).unwrap(), 1.0).is_err());
        assert!(block_size_from_rates(ber, di, beta, 0.0).is_err());
        assert!(block_size_from_rates(ber, di, beta, 1.5).is_err());
        assert!(block_size_from_rates(ber, Bits::new(0.0).unwrap(), beta, 1.0).is_err());
        // H(e) + dI >= 1: ceiling undefined
        let res = block_size_from_rates(
            Probability::new(0.45).unwrap(),
            Bits::new(0.5).unwrap(),
            beta,
            1.0,
        );
        assert!(matches!(res, Err(Error::Infeasible(_))));
    }

    #[test]
    fn complexity_power_law_anchors() {
        let a = ChannelPoint::from_transmission(0.49, 100.0).unwrap();
        let b = ChannelPoint::from_transmission(0.1, 100.0).unwrap();
        let c = ChannelPoint::from_transmission(0.01, 100.0).unwrap();
        let beta = Probability::new(1e-7).unwrap();
        let r = relative_complexity(&a, &b, ScalingMode::PowerLawEta4, beta, 0.5).unwrap();
        assert_rel(r, 576.4801, 1e-9);
        let r = relative_complexity(&a, &c, ScalingMode::PowerLawEta4, beta, 0.5).unwrap();
        assert_rel(r, 5_764_801.0, 1e-6);
        let r = relative_complexity(&a, &a, ScalingMode::PowerLawEta4, beta, 0.5).unwrap();
        assert_eq!(r, 1.0);
    }

    #[test]
    fn complexity_full_pipeline_identity() {
        let a = ChannelPoint::from_distance(50.0, 0.2, 100.0).unwrap();
        let beta = Probability::new(1e-7).unwrap();
        let r = relative_complexity(&a, &a, ScalingMode::FullPipeline, beta, 0.5).unwrap();
        assert_eq!(r, 1.0);
    }

    #[test]
    fn audit_reproduces_reference_figures() {
        let (info, plan) = reference_plan();
        let audit = audit_worked_example(&info, &plan).unwrap();
        assert_abs(audit.delta_i_quoted, 0.007, 1e-15);
        assert_eq!(audit.elements_per_secret_bit, 143);
        assert_eq!(audit.digits_total, 572);
        assert_eq!(audit.leak_min_bits, 500);
        assert_eq!(audit.eve_budget_bits, 501);
        assert_eq!(audit.total_digits_plus_leak, 1072);
        assert_abs(audit.required_efficiency.unwrap(), 1.002, 1e-12);
        // oracle: 10*log10(1073/1072)
        assert_abs(audit.required_gap_db, 0.004049366091998691, 1e-12);
        assert_eq!(audit.ldpc_reference_gap_db, 0.0045);
        audit.validate(1e-9).unwrap();
    }

    #[test]
    fn audit_degenerate_zero_leak() {
        // hypothetical error-free channel: one perfect digit per element,
        // delta_i = 0.5, I_AB = 1, so the minimum leak is zero
        let info = InfoBudget {
            v_b: 4.0,
            v_b_given_a: 1.0,
            v_b_given_e: 2.0,
            i_ab: Bits::new(1.0).unwrap(),
            i_be: Bits::new(0.5).unwrap(),
            delta_i: Bits::new(0.5).unwrap(),
        };
        info.validate(1e-12).unwrap();
        let plan = plan_quantization(&info).unwrap();
        assert_eq!(plan.digits_per_element, 1);
        assert_eq!(plan.ber.value(), 0.0);
        let audit = audit_worked_example(&info, &plan).unwrap();
        assert_eq!(audit.elements_per_secret_bit, 2);
        assert_eq!(audit.leak_min_bits, 0);
        assert_eq!(audit.eve_budget_bits, 1);
        assert!(audit.required_efficiency.is_none());
        audit.validate(1e-9).unwrap();
    }

    #[test]
    fn one_significant_figure_quotes() {
        assert_abs(quote_one_significant(0.007177646488535021), 0.007, 1e-15);
        assert_abs(quote_one_significant(0.5), 0.5, 1e-15);
        assert_abs(quote_one_significant(0.095), 0.1, 1e-15);
        assert_abs(quote_one_significant(0.07520842127654924), 0.08, 1e-15);
    }
}
