use serde::Serialize;

use super::bounds::RateTriple;

/// Comparison of one coordinate between a trade-off point and a baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoordinateGain {
    pub tradeoff: f64,
    pub baseline: f64,
    /// `tradeoff - baseline`
    pub difference: f64,
    /// `10 log10(|baseline| / |tradeoff|)`: positive when the trade-off
    /// magnitude is smaller. `None` when either side is zero or the signs
    /// differ.
    pub db_decrease: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GainMetrics {
    pub coordinates: [CoordinateGain; 3],
}

impl GainMetrics {
    pub fn first(&self) -> &CoordinateGain {
        &self.coordinates[0]
    }
    pub fn second(&self) -> &CoordinateGain {
        &self.coordinates[1]
    }
    pub fn third(&self) -> &CoordinateGain {
        &self.coordinates[2]
    }
}

fn db_decrease(tradeoff: f64, baseline: f64) -> Option<f64> {
    let same_sign = tradeoff.signum() == baseline.signum();
    if tradeoff == 0.0 || baseline == 0.0 || !same_sign || !tradeoff.is_finite() || !baseline.is_finite() {
        return None;
    }
    Some(10.0 * (baseline.abs() / tradeoff.abs()).log10())
}

/// Per-coordinate additive differences and dB ratios.
pub fn gain_metrics(tradeoff_point: &RateTriple, baseline_point: &RateTriple) -> GainMetrics {
    let t = tradeoff_point.coords();
    let b = baseline_point.coords();
    let coordinates = std::array::from_fn(|i| CoordinateGain {
        tradeoff: t[i],
        baseline: b[i],
        difference: t[i] - b[i],
        db_decrease: db_decrease(t[i], b[i]),
    });
    GainMetrics { coordinates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::RegionTag;

    #[test]
    fn caption_rounded_figures() {
        let ea = RateTriple::new(RegionTag::Cqe, 10.67, 0.0, -9.09);
        let tr = RateTriple::new(RegionTag::Cqe, 10.51, 0.0, -5.0);
        let m = gain_metrics(&tr, &ea);
        assert!((m.first().db_decrease.unwrap() - 0.0656).abs() < 1e-3);
        assert!((m.third().db_decrease.unwrap() - 2.596).abs() < 1e-3);
        assert_eq!(m.second().db_decrease, None);
        assert!((m.third().difference - 4.09).abs() < 1e-12);
    }

    #[test]
    fn identical_points() {
        let p = RateTriple::new(RegionTag::Rps, 2.0, 1.0, 0.5);
        let m = gain_metrics(&p, &p);
        for c in m.coordinates {
            assert_eq!(c.difference, 0.0);
            assert_eq!(c.db_decrease, Some(0.0));
        }
    }

    #[test]
    fn undefined_ratios() {
        let a = RateTriple::new(RegionTag::Cqe, 1.0, -1.0, 0.0);
        let b = RateTriple::new(RegionTag::Cqe, 0.0, 1.0, 0.0);
        let m = gain_metrics(&a, &b);
        assert!(m.coordinates.iter().all(|c| c.db_decrease.is_none()));
    }
}
