//! Losses-only Gaussian channel with a beamsplitter eavesdropper.
//!
//! Alice's field carries Gaussian modulation of variance `V` on top of one
//! unit of vacuum noise (total `V + 1`, shot-noise units, `N0 = 1`). A
//! beamsplitter of transmittance `eta` passes the attenuated mode to Bob and
//! reflects the rest to Eve, who homodynes her beam directly — the
//! "classical Eve" assumption behind every figure here. There is no excess
//! noise and the type deliberately has no field for it.
//!
//! Reverse reconciliation: Bob's data is the reference, so the mutual
//! informations that matter are `I(A;B)` and `I(B;E)`, both fixed by the
//! conditional variances of Bob's quadrature. The secret rate per key
//! element `delta_i = I_AB - I_BE` grows linearly in `eta` for small `eta`
//! (property-tested), which is what drives the `1/eta^4` complexity scaling
//! downstream.

use serde::{Deserialize, Serialize};

use crate::numerics::Bits;
use crate::{Error, Result};

/// Standard fiber attenuation, dB/km.
pub const DEFAULT_ATTENUATION_DB_PER_KM: f64 = 0.2;

/// Power transmittance of a fiber of the given length.
///
/// `eta = 10^(-attenuation * distance / 10)`.
pub fn transmission_from_distance(distance_km: f64, attenuation_db_per_km: f64) -> Result<f64> {
    if !distance_km.is_finite() || distance_km < 0.0 {
        return Err(Error::Domain(format!(
            "distance {distance_km} km must be finite and non-negative"
        )));
    }
    if !attenuation_db_per_km.is_finite() || attenuation_db_per_km <= 0.0 {
        return Err(Error::Domain(format!(
            "attenuation {attenuation_db_per_km} dB/km must be finite and positive"
        )));
    }
    let eta = 10f64.powf(-attenuation_db_per_km * distance_km / 10.0);
    if eta <= 0.0 {
        return Err(Error::Domain(format!(
            "loss of {} dB underflows the transmittance",
            attenuation_db_per_km * distance_km
        )));
    }
    Ok(eta)
}

/// One operating point of the channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelPoint {
    /// Power transmittance `eta` in `(0, 1]`.
    pub transmission: f64,
    /// Alice's modulation variance `V`, shot-noise units.
    pub mod_variance: f64,
    /// Fiber length in km when the point was specified by distance.
    pub distance_km: Option<f64>,
    /// Fiber attenuation in dB/km.
    pub attenuation_db_per_km: f64,
}

impl ChannelPoint {
    /// Point specified directly by transmittance.
    pub fn from_transmission(transmission: f64, mod_variance: f64) -> Result<Self> {
        let point = Self {
            transmission,
            mod_variance,
            distance_km: None,
            attenuation_db_per_km: DEFAULT_ATTENUATION_DB_PER_KM,
        };
        point.validate()?;
        Ok(point)
    }

    /// Point specified by fiber length; the transmittance is derived.
    pub fn from_distance(
        distance_km: f64,
        attenuation_db_per_km: f64,
        mod_variance: f64,
    ) -> Result<Self> {
        let transmission = transmission_from_distance(distance_km, attenuation_db_per_km)?;
        let point = Self {
            transmission,
            mod_variance,
            distance_km: Some(distance_km),
            attenuation_db_per_km,
        };
        point.validate()?;
        Ok(point)
    }

    /// Checks the type invariants, including consistency of a stored
    /// distance with the transmittance to 1e-12 relative. Documents that
    /// round-tripped through a serialized report need the looser
    /// [`ChannelPoint::validate_tol`].
    pub fn validate(&self) -> Result<()> {
        self.validate_tol(1e-12)
    }

    /// [`ChannelPoint::validate`] with an explicit relative tolerance on the
    /// distance/transmittance consistency check.
    pub fn validate_tol(&self, tol: f64) -> Result<()> {
        if !self.transmission.is_finite() || self.transmission <= 0.0 || self.transmission > 1.0 {
            return Err(Error::Domain(format!(
                "transmission {} outside (0, 1]",
                self.transmission
            )));
        }
        if !self.mod_variance.is_finite() || self.mod_variance < 0.0 {
            return Err(Error::Domain(format!(
                "modulation variance {} must be finite and non-negative",
                self.mod_variance
            )));
        }
        if !self.attenuation_db_per_km.is_finite() || self.attenuation_db_per_km <= 0.0 {
            return Err(Error::Domain(format!(
                "attenuation {} dB/km must be finite and positive",
                self.attenuation_db_per_km
            )));
        }
        if let Some(distance) = self.distance_km {
            let expected = transmission_from_distance(distance, self.attenuation_db_per_km)?;
            if ((self.transmission - expected) / expected).abs() > tol {
                return Err(Error::Domain(format!(
                    "transmission {} inconsistent with {} km at {} dB/km (expected {})",
                    self.transmission, distance, self.attenuation_db_per_km, expected
                )));
            }
        }
        Ok(())
    }
}

/// Mutual-information ledger for one channel point, shot-noise units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoBudget {
    /// Variance of Bob's measurement.
    pub v_b: f64,
    /// Bob's variance conditioned on Alice's modulation (pure vacuum).
    pub v_b_given_a: f64,
    /// Bob's variance conditioned on Eve's measurement.
    pub v_b_given_e: f64,
    /// Mutual information Alice-Bob per key element.
    pub i_ab: Bits,
    /// Mutual information Eve-Bob per key element.
    pub i_be: Bits,
    /// Secret rate per key element, `i_ab - i_be`.
    pub delta_i: Bits,
}

impl InfoBudget {
    /// Checks the type invariants: the variance ordering and the identity
    /// `delta_i = 0.5 log2(v_b_given_e / v_b_given_a)`, each to `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.v_b_given_a.is_nan() || self.v_b_given_a <= 0.0 {
            return Err(Error::Domain(
                "conditional variance must be positive".into(),
            ));
        }
        if self.v_b_given_e < self.v_b_given_a - tol || self.v_b < self.v_b_given_e - tol {
            return Err(Error::Domain(format!(
                "variance ordering violated: v_b={} v_b|e={} v_b|a={}",
                self.v_b, self.v_b_given_e, self.v_b_given_a
            )));
        }
        let delta = self.i_ab.value() - self.i_be.value();
        if (self.delta_i.value() - delta).abs() > tol {
            return Err(Error::Domain("delta_i is not i_ab - i_be".into()));
        }
        let direct = 0.5 * (self.v_b_given_e / self.v_b_given_a).log2();
        if (self.delta_i.value() - direct).abs() > tol {
            return Err(Error::Domain(
                "delta_i inconsistent with the conditional variances".into(),
            ));
        }
        Ok(())
    }
}

/// Propagates a channel point into its information budget.
///
/// With total field variance `V + 1` at Alice: Bob sees `v_b = eta*V + 1`;
/// Alice's side information leaves vacuum only, `v_b|a = 1`; Eve's beam has
/// variance `V_E = (1-eta)(V+1) + eta` and covariance-squared
/// `C^2 = eta(1-eta)V^2` with Bob, so `v_b|e = v_b - C^2/V_E`. Gaussian
/// mutual informations are then half the log-ratios of the variances.
pub fn propagate(point: &ChannelPoint) -> Result<InfoBudget> {
    point.validate()?;
    let eta = point.transmission;
    let v = point.mod_variance;

    let v_b = eta * v + 1.0;
    let v_b_given_a = 1.0;
    let v_eve = (1.0 - eta) * (v + 1.0) + eta;
    let cov_sq = eta * (1.0 - eta) * v * v;
    // mathematically v_b|e - 1 = eta*V/V_E >= 0; the max guards rounding
    let v_b_given_e = (v_b - cov_sq / v_eve).max(v_b_given_a);

    let i_ab = 0.5 * (v_b / v_b_given_a).log2();
    let i_be = 0.5 * (v_b / v_b_given_e).log2();
    let delta_i = (i_ab - i_be).max(0.0);

    Ok(InfoBudget {
        v_b,
        v_b_given_a,
        v_b_given_e,
        i_ab: Bits::new_unchecked(i_ab),
        i_be: Bits::new_unchecked(i_be),
        delta_i: Bits::new_unchecked(delta_i),
    })
}
