//! Report rendering: JSON with 6 significant digits for humans, CSV at full
//! precision for plots.

use recon_core::budget::{AuditReport, BlockBound, ComplexityEstimate, DigitPlan};
use recon_core::channel::{ChannelPoint, InfoBudget};
use recon_core::montecarlo::MonteCarloReport;
use serde_json::Value;

/// Frozen column set of the analyze CSV row.
pub const ANALYZE_CSV_HEADER: &str = "transmission,mod_variance,distance_km,attenuation_db_per_km,\
v_b,v_b_given_a,v_b_given_e,i_ab,i_be,delta_i,\
fractional_digits,digits,ber,entropy_per_digit,secret_per_digit,\
e_c,e_rec,headroom,beta_fail,q_squared,m_min,m_linearized,net_secret_per_digit,\
relative_complexity,scaling_mode";

/// Frozen column set of the audit CSV row.
pub const AUDIT_CSV_HEADER: &str = "delta_i_quoted,elements_per_secret_bit,digits_total,\
leak_min_bits,eve_budget_bits,total_digits_plus_leak,required_efficiency,\
required_gap_db,ldpc_reference_gap_db";

/// Frozen column set of the montecarlo CSV row.
pub const MONTECARLO_CSV_HEADER: &str = "block_size,ber,threshold,trials,successes,\
beta_hat,beta_gaussian,beta_exact,std_error,seed,generator_id";

/// Serializes a document as pretty JSON with every float quoted to six
/// significant digits. Integers pass through untouched.
pub fn render_json(value: Value) -> String {
    let mut value = value;
    round_floats(&mut value);
    serde_json::to_string_pretty(&value).expect("report serialization cannot fail")
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                let rounded = round_sig(n.as_f64().unwrap(), 6);
                *value = Value::Number(
                    serde_json::Number::from_f64(rounded).expect("rounded float is finite"),
                );
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits - 1 - magnitude);
    (x * factor).round() / factor
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn analyze_csv(
    point: &ChannelPoint,
    info: &InfoBudget,
    plan: &DigitPlan,
    bound: &BlockBound,
    complexity: &ComplexityEstimate,
) -> String {
    let mut out = String::from(ANALYZE_CSV_HEADER);
    out.push('\n');
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        point.transmission,
        point.mod_variance,
        opt(point.distance_km),
        point.attenuation_db_per_km,
        info.v_b,
        info.v_b_given_a,
        info.v_b_given_e,
        info.i_ab.value(),
        info.i_be.value(),
        info.delta_i.value(),
        plan.fractional_digits,
        plan.digits_per_element,
        plan.ber.value(),
        plan.entropy_per_digit.value(),
        plan.secret_per_digit.value(),
        bound.e_c.value(),
        bound.e_rec.value(),
        bound.headroom,
        bound.beta_fail.value(),
        bound.q_squared,
        bound.m_min,
        bound.m_linearized,
        bound.net_secret_per_digit.value(),
        complexity.relative_complexity,
        complexity.scaling_mode,
    ));
    out
}

pub fn audit_csv(audit: &AuditReport) -> String {
    let mut out = String::from(AUDIT_CSV_HEADER);
    out.push('\n');
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{}\n",
        audit.delta_i_quoted,
        audit.elements_per_secret_bit,
        audit.digits_total,
        audit.leak_min_bits,
        audit.eve_budget_bits,
        audit.total_digits_plus_leak,
        opt(audit.required_efficiency),
        audit.required_gap_db,
        audit.ldpc_reference_gap_db,
    ));
    out
}

pub fn montecarlo_csv(report: &MonteCarloReport) -> String {
    let mut out = String::from(MONTECARLO_CSV_HEADER);
    out.push('\n');
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{}\n",
        report.block_size,
        report.ber.value(),
        report.threshold.value(),
        report.trials,
        report.successes,
        report.beta_hat.value(),
        report.beta_gaussian.value(),
        report.beta_exact.value(),
        report.std_error,
        report.seed,
        report.generator_id,
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::round_sig;

    #[test]
    fn six_significant_digits() {
        assert_eq!(round_sig(0.007177646488535021, 6), 0.00717765);
        assert_eq!(round_sig(27.033111293602647, 6), 27.0331);
        assert_eq!(round_sig(0.5, 6), 0.5);
        assert_eq!(round_sig(0.0, 6), 0.0);
        assert_eq!(round_sig(-1.959963984540054, 6), -1.95996);
        assert_eq!(round_sig(576.4801, 6), 576.48);
    }
}
