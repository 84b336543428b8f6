use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Adjacent-channel (carrier) rejection of a receiver as a function of the
/// offset from its tuned frequency.
///
/// Stored as a piecewise-linear table of `(offset Hz, rejection dB)` points.
/// The first point is always `(0, 0)`; beyond the last point the rejection
/// stays at the last value.
#[derive(Debug, Clone, PartialEq)]
pub struct RejectionCurve {
    points: Vec<(f64, f64)>,
}

impl RejectionCurve {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        let Some(&(first_offset, first_db)) = points.first() else {
            return Err(Error::RejectionCurve("no points".into()));
        };
        if first_offset != 0.0 || first_db != 0.0 {
            return Err(Error::RejectionCurve(format!(
                "must start at (0 Hz, 0 dB), starts at ({first_offset} Hz, {first_db} dB)"
            )));
        }
        for (i, &(offset, db)) in points.iter().enumerate() {
            if !offset.is_finite() || !db.is_finite() || offset < 0.0 || db < 0.0 {
                return Err(Error::RejectionCurve(format!(
                    "point {i} ({offset}, {db}) must be finite and non-negative"
                )));
            }
            if i > 0 && offset < points[i - 1].0 {
                return Err(Error::RejectionCurve(format!(
                    "offsets must be non-decreasing (point {i})"
                )));
            }
        }
        Ok(RejectionCurve { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Shipped table for the 2.4 GHz transceiver: better than 50 dB at 2 MHz.
    pub fn cc2500() -> Self {
        RejectionCurve {
            points: vec![
                (0.0, 0.0),
                (250e3, 1.0),
                (500e3, 6.0),
                (1e6, 25.0),
                (1.5e6, 42.0),
                (2e6, 51.0),
                (3e6, 54.0),
                (5e6, 57.0),
                (10e6, 60.0),
                (20e6, 65.0),
            ],
        }
    }

    /// Shipped table for the sub-GHz transceiver: 50 dB at 100 kHz, nearly
    /// flat afterwards.
    pub fn cc1310() -> Self {
        RejectionCurve {
            points: vec![
                (0.0, 0.0),
                (20e3, 2.0),
                (40e3, 12.0),
                (70e3, 35.0),
                (100e3, 51.0),
                (200e3, 53.0),
                (500e3, 55.0),
                (1e6, 56.0),
            ],
        }
    }

    /// No selectivity at all.
    pub fn flat() -> Self {
        RejectionCurve {
            points: vec![(0.0, 0.0)],
        }
    }

    pub fn named(name: &str) -> Option<Self> {
        match name {
            "cc2500" => Some(Self::cc2500()),
            "cc1310" => Some(Self::cc1310()),
            "flat" => Some(Self::flat()),
            _ => None,
        }
    }

    /// Rejection in dB at `offset_hz` (absolute value is taken).
    pub fn at(&self, offset_hz: f64) -> f64 {
        let x = offset_hz.abs();
        let pts = &self.points;
        let last = pts[pts.len() - 1];
        if x >= last.0 {
            return last.1;
        }
        // First point whose offset exceeds x; guaranteed to exist and be > 0.
        let hi = pts.partition_point(|&(o, _)| o <= x);
        let (x0, y0) = pts[hi - 1];
        let (x1, y1) = pts[hi];
        if x1 == x0 {
            return y1;
        }
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Linear attenuation factor (≤ 1) at the offset.
    pub fn attenuation(&self, offset_hz: f64) -> f64 {
        10f64.powf(-self.at(offset_hz) / 10.0)
    }
}

/// Rejection in dB of a component `offset` away from the tuned frequency.
pub fn carrier_rejection(curve: &RejectionCurve, offset_hz: f64) -> f64 {
    curve.at(offset_hz)
}

impl Serialize for RejectionCurve {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RejectionCurve {
    /// Accepts either a list of `[offset_hz, rejection_db]` pairs or the name
    /// of a shipped table (`"cc2500"`, `"cc1310"`, `"flat"`).
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Named(String),
            Points(Vec<(f64, f64)>),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Named(name) => RejectionCurve::named(&name).ok_or_else(|| {
                serde::de::Error::custom(format!(
                    "unknown rejection curve `{name}` (expected cc2500, cc1310 or flat)"
                ))
            }),
            Repr::Points(points) => RejectionCurve::new(points).map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_offset_is_zero() {
        assert_eq!(carrier_rejection(&RejectionCurve::cc2500(), 0.0), 0.0);
        assert_eq!(carrier_rejection(&RejectionCurve::cc1310(), 0.0), 0.0);
    }

    #[test]
    fn shipped_tables_reject_the_carrier_by_50_db() {
        assert!(carrier_rejection(&RejectionCurve::cc2500(), 2e6) >= 50.0);
        assert!(carrier_rejection(&RejectionCurve::cc1310(), 100e3) >= 50.0);
    }

    #[test]
    fn interpolates_and_clamps() {
        let c = RejectionCurve::new(vec![(0.0, 0.0), (10.0, 20.0), (20.0, 30.0)]).unwrap();
        assert_eq!(c.at(5.0), 10.0);
        assert_eq!(c.at(15.0), 25.0);
        assert_eq!(c.at(20.0), 30.0);
        assert_eq!(c.at(1e9), 30.0);
        assert_eq!(c.at(-5.0), 10.0);
    }

    #[test]
    fn step_points_take_the_upper_value() {
        let c = RejectionCurve::new(vec![(0.0, 0.0), (10.0, 0.0), (10.0, 40.0)]).unwrap();
        assert_eq!(c.at(9.999), 0.0);
        assert_eq!(c.at(10.0), 40.0);
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(RejectionCurve::new(vec![]).is_err());
        assert!(RejectionCurve::new(vec![(1.0, 0.0)]).is_err());
        assert!(RejectionCurve::new(vec![(0.0, 3.0)]).is_err());
        assert!(RejectionCurve::new(vec![(0.0, 0.0), (5.0, 1.0), (4.0, 2.0)]).is_err());
        assert!(RejectionCurve::new(vec![(0.0, 0.0), (5.0, -1.0)]).is_err());
    }

    #[test]
    fn deserializes_named_or_points() {
        let c: RejectionCurve = serde_json::from_str("\"cc1310\"").unwrap();
        assert_eq!(c, RejectionCurve::cc1310());
        let c: RejectionCurve = serde_json::from_str("[[0,0],[1000,20]]").unwrap();
        assert_eq!(c.at(500.0), 10.0);
        assert!(serde_json::from_str::<RejectionCurve>("\"nope\"").is_err());
        assert!(serde_json::from_str::<RejectionCurve>("[[1,0]]").is_err());
    }

    proptest! {
        #[test]
        fn monotone_for_monotone_tables(a in 0.0f64..30e6, b in 0.0f64..30e6) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            for curve in [RejectionCurve::cc2500(), RejectionCurve::cc1310()] {
                prop_assert!(curve.at(lo) <= curve.at(hi));
            }
        }
    }
}
