//! Distance sweep: one row per distance with the full pipeline evaluated,
//! plus a least-squares fit of `ln(relative_complexity)` against distance.

use recon_core::budget::{
    block_size_bound, pipeline_block_size_smooth, plan_quantization, ScalingMode,
};
use recon_core::channel::{propagate, ChannelPoint};
use recon_core::numerics::Probability;
use recon_core::{Error, Result};
use serde::Serialize;

/// Frozen column set of the sweep CSV.
pub const SWEEP_CSV_HEADER: &str = "distance_km,transmission,i_ab,i_be,delta_i,\
fractional_digits,digits,ber,secret_per_digit,m_min,relative_complexity,feasible";

/// One distance of a sweep. Infeasible stages leave their columns empty;
/// `feasible` marks rows that carry every column and enter the fit.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub distance_km: f64,
    pub transmission: f64,
    pub i_ab: Option<f64>,
    pub i_be: Option<f64>,
    pub delta_i: Option<f64>,
    pub fractional_digits: Option<f64>,
    pub digits: Option<u32>,
    pub ber: Option<f64>,
    pub secret_per_digit: Option<f64>,
    pub m_min: Option<u64>,
    pub relative_complexity: Option<f64>,
    pub feasible: bool,
}

/// Least-squares fit of `ln(relative_complexity)` over distance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FitResult {
    pub slope_per_km: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub mode: ScalingMode,
}

pub struct SweepParams {
    pub dist_start: f64,
    pub dist_end: f64,
    pub step: f64,
    pub attenuation_db_per_km: f64,
    pub mod_variance: f64,
    pub beta_fail: Probability,
    pub headroom: f64,
    pub mode: ScalingMode,
}

/// Runs the sweep. The fit is present when at least two rows are feasible.
pub fn run_sweep(params: &SweepParams) -> Result<(Vec<SweepRow>, Option<FitResult>)> {
    if !params.dist_start.is_finite()
        || !params.dist_end.is_finite()
        || params.dist_start >= params.dist_end
    {
        return Err(Error::Domain(format!(
            "sweep needs dist_start < dist_end, got {} and {}",
            params.dist_start, params.dist_end
        )));
    }
    if params.step.is_nan() || params.step <= 0.0 {
        return Err(Error::Domain(format!(
            "step {} must be positive",
            params.step
        )));
    }

    let mut distances = Vec::new();
    let mut km = params.dist_start;
    while km <= params.dist_end + 1e-9 {
        distances.push(km);
        km = params.dist_start + params.step * (distances.len() as f64);
    }

    // first pass: pipeline per distance; smooth block size when that mode
    // will need it
    let mut rows = Vec::with_capacity(distances.len());
    let mut smooth_m = vec![None; distances.len()];
    for (idx, &km) in distances.iter().enumerate() {
        let mut row = SweepRow {
            distance_km: km,
            transmission: 0.0,
            i_ab: None,
            i_be: None,
            delta_i: None,
            fractional_digits: None,
            digits: None,
            ber: None,
            secret_per_digit: None,
            m_min: None,
            relative_complexity: None,
            feasible: false,
        };
        let point = match ChannelPoint::from_distance(
            km,
            params.attenuation_db_per_km,
            params.mod_variance,
        ) {
            Ok(point) => point,
            Err(_) => {
                rows.push(row);
                continue;
            }
        };
        row.transmission = point.transmission;
        if let Ok(info) = propagate(&point) {
            row.i_ab = Some(info.i_ab.value());
            row.i_be = Some(info.i_be.value());
            row.delta_i = Some(info.delta_i.value());
            if let Ok(plan) = plan_quantization(&info) {
                row.fractional_digits = Some(plan.fractional_digits);
                row.digits = Some(plan.digits_per_element);
                row.ber = Some(plan.ber.value());
                row.secret_per_digit = Some(plan.secret_per_digit.value());
                if let Ok(bound) = block_size_bound(&plan, params.beta_fail, params.headroom) {
                    row.m_min = Some(bound.m_min);
                }
            }
        }
        if params.mode == ScalingMode::FullPipeline {
            smooth_m[idx] =
                pipeline_block_size_smooth(&point, params.beta_fail, params.headroom).ok();
        }
        rows.push(row);
    }

    // second pass: normalize complexity to the first pipeline-complete row
    let complete = |idx: usize, rows: &[SweepRow]| -> bool {
        rows[idx].m_min.is_some()
            && (params.mode == ScalingMode::PowerLawEta4 || smooth_m[idx].is_some())
    };
    let reference = (0..rows.len()).find(|&i| complete(i, &rows));
    if let Some(ref_idx) = reference {
        let ref_eta = rows[ref_idx].transmission;
        let ref_m = smooth_m[ref_idx];
        for idx in 0..rows.len() {
            match params.mode {
                ScalingMode::PowerLawEta4 => {
                    if rows[idx].transmission > 0.0 {
                        rows[idx].relative_complexity =
                            Some((ref_eta / rows[idx].transmission).powi(4));
                    }
                }
                ScalingMode::FullPipeline => {
                    if let (Some(m), Some(m0)) = (smooth_m[idx], ref_m) {
                        let ratio = m / m0;
                        rows[idx].relative_complexity = Some(ratio * ratio);
                    }
                }
            }
            rows[idx].feasible = complete(idx, &rows) && rows[idx].relative_complexity.is_some();
        }
    }

    let feasible: Vec<&SweepRow> = rows.iter().filter(|r| r.feasible).collect();
    let fit = if feasible.len() >= 2 {
        let xs: Vec<f64> = feasible.iter().map(|r| r.distance_km).collect();
        let ys: Vec<f64> = feasible
            .iter()
            .map(|r| r.relative_complexity.unwrap().ln())
            .collect();
        let (slope_per_km, intercept, r_squared) = linear_fit(&xs, &ys);
        Some(FitResult {
            slope_per_km,
            intercept,
            r_squared,
            mode: params.mode,
        })
    } else {
        None
    };
    Ok((rows, fit))
}

/// Ordinary least squares of `y` on `x`, returning `(slope, intercept, r^2)`.
fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    (slope, intercept, r_squared)
}

pub fn sweep_csv(rows: &[SweepRow], fit: Option<&FitResult>, error: Option<&str>) -> String {
    fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
        v.map(|x| x.to_string()).unwrap_or_default()
    }
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.distance_km,
            r.transmission,
            opt(r.i_ab),
            opt(r.i_be),
            opt(r.delta_i),
            opt(r.fractional_digits),
            opt(r.digits),
            opt(r.ber),
            opt(r.secret_per_digit),
            opt(r.m_min),
            opt(r.relative_complexity),
            r.feasible,
        ));
    }
    if let Some(fit) = fit {
        out.push_str(&format!(
            "# fit slope_per_km={} intercept={} r_squared={} mode={}\n",
            fit.slope_per_km, fit.intercept, fit.r_squared, fit.mode
        ));
    }
    if let Some(reason) = error {
        out.push_str(&format!("# error infeasible: {reason}\n"));
    }
    out
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle values keep their digits
mod tests {
    use super::*;

    fn params(mode: ScalingMode) -> SweepParams {
        SweepParams {
            dist_start: 15.0,
            dist_end: 100.0,
            step: 5.0,
            attenuation_db_per_km: 0.2,
            mod_variance: 100.0,
            beta_fail: Probability::new(1e-7).unwrap(),
            headroom: 0.5,
            mode,
        }
    }

    #[test]
    fn power_law_sweep_fits_the_attenuation_slope() {
        let (rows, fit) = run_sweep(&params(ScalingMode::PowerLawEta4)).unwrap();
        assert_eq!(rows.len(), 18);
        assert!(rows.iter().all(|r| r.feasible));
        let fit = fit.unwrap();
        // exact slope is 0.4 ln(10) / 10
        assert!((fit.slope_per_km - 0.18420680743952367).abs() < 1e-9);
        assert!(fit.r_squared > 0.999999);
        // first row is the normalization point
        assert_eq!(rows[0].relative_complexity.unwrap(), 1.0);
    }

    #[test]
    fn full_pipeline_sweep_is_monotone() {
        let (rows, fit) = run_sweep(&params(ScalingMode::FullPipeline)).unwrap();
        assert!(fit.is_some());
        let mut last = 0.0;
        for row in &rows {
            assert!(row.feasible, "row at {} km infeasible", row.distance_km);
            let rc = row.relative_complexity.unwrap();
            assert!(rc > last || last == 0.0);
            last = rc;
        }
    }

    #[test]
    fn row_ratio_between_3db_and_10db_points() {
        // 15.5 km (3.1 dB) vs 50 km (10 dB): complexity ratio near 576
        let mut p = params(ScalingMode::PowerLawEta4);
        p.dist_start = 15.5;
        p.dist_end = 50.0;
        p.step = 34.5;
        let (rows, _) = run_sweep(&p).unwrap();
        assert_eq!(rows.len(), 2);
        let ratio = rows[1].relative_complexity.unwrap() / rows[0].relative_complexity.unwrap();
        // exact value 10^2.76
        assert!((ratio - 575.4399373371569).abs() < 1e-9);
        assert!((ratio - 576.0).abs() / 576.0 < 0.01);
    }

    #[test]
    fn degenerate_ranges_rejected() {
        let mut p = params(ScalingMode::PowerLawEta4);
        p.dist_end = p.dist_start;
        assert!(run_sweep(&p).is_err());
        let mut p = params(ScalingMode::PowerLawEta4);
        p.step = 0.0;
        assert!(run_sweep(&p).is_err());
    }

    #[test]
    fn single_point_range_has_no_fit() {
        let mut p = params(ScalingMode::PowerLawEta4);
        p.dist_end = 16.0;
        let (rows, fit) = run_sweep(&p).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(fit.is_none());
    }

    #[test]
    fn zero_modulation_rows_are_flagged() {
        let mut p = params(ScalingMode::PowerLawEta4);
        p.mod_variance = 0.0;
        let (rows, fit) = run_sweep(&p).unwrap();
        assert!(rows.iter().all(|r| !r.feasible));
        assert!(rows.iter().all(|r| r.i_ab.is_some())); // info still present
        assert!(fit.is_none());
    }
}
