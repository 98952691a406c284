//! Observables (co/cross powers, polarisation rotation) and parameter sweeps.
//!
//! Both half-spaces are air and the transmitted wave leaves at the incidence
//! angle, so powers are plain squared amplitudes normalised by the incident
//! intensity.

use rayon::prelude::*;

use crate::direct::solve_direct;
use crate::error::{Result, TmmError};
use crate::scalar::Scalar;
use crate::stack::Stack;
use crate::tmm::{solve, Response};
use crate::Cx;

/// Below this transmitted power the rotation angle is undefined.
pub const MIN_ROTATION_TRANSMITTANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBreakdown<T: Scalar> {
    pub r_co: T,
    pub r_cross: T,
    pub t_co: T,
    pub t_cross: T,
    pub r_total: T,
    pub t_total: T,
    /// `|R_total + T_total - 1|`.
    pub conservation_residual: T,
}

pub fn powers<T: Scalar>(resp: &Response<T>) -> Result<PowerBreakdown<T>> {
    let inc = resp.incident[0].norm_sqr() + resp.incident[1].norm_sqr();
    if !(inc > T::zero()) {
        return Err(TmmError::ZeroIncident);
    }
    let r_co = resp.r_co().norm_sqr() / inc;
    let r_cross = resp.r_cross().norm_sqr() / inc;
    let t_co = resp.t_co().norm_sqr() / inc;
    let t_cross = resp.t_cross().norm_sqr() / inc;
    let r_total = r_co + r_cross;
    let t_total = t_co + t_cross;
    Ok(PowerBreakdown {
        r_co,
        r_cross,
        t_co,
        t_cross,
        r_total,
        t_total,
        conservation_residual: (r_total + t_total - T::one()).abs(),
    })
}

/// Azimuth rotation of the transmitted polarisation, `atan2(|t_cross|, |t_co|)`
/// in degrees within `[0, 90]`.
pub fn rotation_angle<T: Scalar>(resp: &Response<T>) -> Result<T> {
    let p = powers(resp)?;
    if !(p.t_total > T::lit(MIN_ROTATION_TRANSMITTANCE)) {
        return Err(TmmError::NegligibleTransmission(p.t_total.to_f64().unwrap_or(0.0)));
    }
    Ok(resp.t_cross().norm().atan2(resp.t_co().norm()).to_degrees())
}

/// Which solver evaluates each point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Transfer-matrix cascade.
    #[default]
    Cascade,
    /// Global boundary-condition system.
    Direct,
}

impl Engine {
    pub fn solve<T: Scalar>(self, stack: &Stack<T>, freq: T, theta_i: T, incident: [Cx<T>; 2]) -> Result<Response<T>> {
        match self {
            Engine::Cascade => solve(stack, freq, theta_i, incident),
            Engine::Direct => solve_direct(stack, freq, theta_i, incident),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Engine::Cascade => "cascade",
            Engine::Direct => "direct",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Frequency in Hz at fixed incidence angle.
    Frequency,
    /// Incidence angle in degrees at fixed frequency.
    Angle,
}

/// Evenly spaced samples along one axis with the other parameter fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid<T: Scalar> {
    pub axis: SweepAxis,
    pub start: T,
    pub stop: T,
    pub count: usize,
    /// Whether `stop` itself is sampled (`linspace` with or without endpoint).
    pub include_stop: bool,
    /// Incidence angle in degrees for frequency sweeps, frequency in Hz for
    /// angle sweeps.
    pub fixed: T,
}

fn valid_freq<T: Scalar>(f: T) -> bool {
    f > T::zero() && f.is_finite()
}

fn valid_angle_deg<T: Scalar>(a: T) -> bool {
    a >= T::zero() && a < T::lit(90.0)
}

impl<T: Scalar> SweepGrid<T> {
    pub fn frequency(start_hz: T, stop_hz: T, count: usize, theta_deg: T) -> Result<Self> {
        Self {
            axis: SweepAxis::Frequency,
            start: start_hz,
            stop: stop_hz,
            count,
            include_stop: true,
            fixed: theta_deg,
        }
        .validated()
    }

    pub fn angle(start_deg: T, stop_deg: T, count: usize, include_stop: bool, freq_hz: T) -> Result<Self> {
        Self {
            axis: SweepAxis::Angle,
            start: start_deg,
            stop: stop_deg,
            count,
            include_stop,
            fixed: freq_hz,
        }
        .validated()
    }

    /// One point at `(freq_hz, theta_deg)`.
    pub fn single(freq_hz: T, theta_deg: T) -> Result<Self> {
        Self::frequency(freq_hz, freq_hz, 1, theta_deg)
    }

    pub fn validated(self) -> Result<Self> {
        let bad = |msg: String| Err(TmmError::InvalidGrid(msg));
        if self.count == 0 {
            return bad("count must be at least 1".into());
        }
        if self.count == 1 && self.start != self.stop {
            return bad("a 1-point grid needs start == stop".into());
        }
        if !(self.stop >= self.start) {
            return bad(format!("stop {} is below start {}", self.stop, self.start));
        }
        let (freqs, angles) = match self.axis {
            SweepAxis::Frequency => ([self.start, self.stop], [self.fixed, self.fixed]),
            SweepAxis::Angle => ([self.fixed, self.fixed], [self.start, self.stop]),
        };
        let last_angle_ok = match self.axis {
            SweepAxis::Angle if !self.include_stop => self.stop <= T::lit(90.0),
            _ => valid_angle_deg(angles[1]),
        };
        if !freqs.into_iter().all(valid_freq) {
            return bad("frequencies must be positive and finite".into());
        }
        if !(valid_angle_deg(angles[0]) && last_angle_ok) {
            return bad("angles must lie in [0, 90) degrees".into());
        }
        Ok(self)
    }

    fn axis_value(&self, i: usize) -> T {
        if self.count == 1 {
            return self.start;
        }
        let steps = if self.include_stop { self.count - 1 } else { self.count };
        let frac = T::lit(i as f64) / T::lit(steps as f64);
        self.start + (self.stop - self.start) * frac
    }

    /// `(frequency_hz, theta_deg)` for every grid point in order.
    pub fn points(&self) -> Vec<(T, T)> {
        (0..self.count)
            .map(|i| {
                let v = self.axis_value(i);
                match self.axis {
                    SweepAxis::Frequency => (v, self.fixed),
                    SweepAxis::Angle => (self.fixed, v),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T: Scalar> {
    pub frequency_hz: T,
    pub theta_deg: T,
    pub powers: PowerBreakdown<T>,
    /// `None` when transmission is too weak for a rotation angle to exist.
    pub rotation_deg: Option<T>,
}

/// A grid point whose evaluation failed.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub index: usize,
    pub frequency_hz: f64,
    pub theta_deg: f64,
    pub error: TmmError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome<T: Scalar> {
    /// Successful rows in grid order.
    pub rows: Vec<SweepRow<T>>,
    pub failures: Vec<SweepFailure>,
    pub points: usize,
}

impl<T: Scalar> SweepOutcome<T> {
    pub fn all_failed(&self) -> bool {
        self.points > 0 && self.rows.is_empty()
    }
}

/// Solves one point and derives its observables.
pub fn evaluate_point<T: Scalar>(
    stack: &Stack<T>,
    freq_hz: T,
    theta_deg: T,
    incident: [Cx<T>; 2],
    engine: Engine,
) -> Result<SweepRow<T>> {
    let resp = engine.solve(stack, freq_hz, theta_deg.to_radians(), incident)?;
    let p = powers(&resp)?;
    if !(p.r_total.is_finite() && p.t_total.is_finite()) {
        return Err(TmmError::ResonanceSingularity { cond: f64::INFINITY });
    }
    let rotation_deg = match rotation_angle(&resp) {
        Ok(a) => Some(a),
        Err(TmmError::NegligibleTransmission(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        frequency_hz: freq_hz,
        theta_deg,
        powers: p,
        rotation_deg,
    })
}

/// Evaluates every grid point (in parallel on the current rayon pool) and
/// returns rows in grid order. Per-point errors are collected, not raised.
pub fn run_sweep<T: Scalar>(
    stack: &Stack<T>,
    grid: &SweepGrid<T>,
    incident: [Cx<T>; 2],
    engine: Engine,
) -> SweepOutcome<T> {
    let points = grid.points();
    let results: Vec<Result<SweepRow<T>>> = points
        .par_iter()
        .map(|&(f, th)| evaluate_point(stack, f, th, incident, engine))
        .collect();
    let mut rows = Vec::with_capacity(points.len());
    let mut failures = Vec::new();
    for (index, (res, (f, th))) in results.into_iter().zip(&points).enumerate() {
        match res {
            Ok(row) => rows.push(row),
            Err(error) => failures.push(SweepFailure {
                index,
                frequency_hz: f.to_f64().unwrap_or(f64::NAN),
                theta_deg: th.to_f64().unwrap_or(f64::NAN),
                error,
            }),
        }
    }
    SweepOutcome {
        rows,
        failures,
        points: points.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::media::MaterialParams;
    use crate::scalar::consts::wavelength;
    use crate::stack::Layer;
    use crate::tmm::parallel;

    const F0: f64 = 1e12;

    fn resp(r: [Cx<f64>; 2], t: [Cx<f64>; 2]) -> Response<f64> {
        Response {
            incident: parallel(),
            reflected: r,
            transmitted: t,
        }
    }

    #[test]
    fn pure_transmission() {
        let z = Cx::new(0.0, 0.0);
        let p = powers(&resp([z, z], [Cx::new(1.0, 0.0), z])).unwrap();
        assert_eq!(p.t_co, 1.0);
        assert_eq!(p.r_total + p.t_cross, 0.0);
        assert_eq!(p.conservation_residual, 0.0);
        assert_eq!(rotation_angle(&resp([z, z], [Cx::new(1.0, 0.0), z])).unwrap(), 0.0);
    }

    #[test]
    fn rotation_needs_transmission() {
        let z = Cx::new(0.0, 0.0);
        let err = rotation_angle(&resp([Cx::new(1.0, 0.0), z], [z, z])).unwrap_err();
        assert!(matches!(err, TmmError::NegligibleTransmission(_)));
    }

    #[test]
    fn single_chiral_slab_rotation() {
        // rotation of a lossless chiral slab at normal incidence is k0 kappa d
        let kappa = 0.1;
        let d = wavelength(F0) / 4.0;
        let stack = Stack::new(vec![
            Layer::new(MaterialParams::lossless(2.0, 1.0, kappa).unwrap(), d).unwrap()
        ]);
        let r = solve(&stack, F0, 0.0, parallel()).unwrap();
        assert!((rotation_angle(&r).unwrap() - 9.0).abs() < 1e-12);
    }

    #[test]
    fn grid_points() {
        let g = SweepGrid::frequency(1.0, 3.0, 5, 0.0).unwrap();
        let f: Vec<f64> = g.points().iter().map(|p| p.0).collect();
        assert_eq!(f, vec![1.0, 1.5, 2.0, 2.5, 3.0]);
        let g = SweepGrid::angle(0.0, 90.0, 4, false, F0).unwrap();
        let a: Vec<f64> = g.points().iter().map(|p| p.1).collect();
        assert_eq!(a, vec![0.0, 22.5, 45.0, 67.5]);
        assert!(SweepGrid::angle(0.0, 90.0, 4, true, F0).is_err());
        assert!(SweepGrid::frequency(0.0, 1.0, 4, 0.0).is_err());
        assert!(SweepGrid::frequency(1.0, 2.0, 0, 0.0).is_err());
        assert!(SweepGrid::frequency(1.0, 2.0, 1, 0.0).is_err());
    }

    #[test]
    fn one_point_sweep_is_single_evaluation() {
        let stack = Stack::new(vec![
            Layer::new(MaterialParams::lossless(2.0, 1.5, 0.2).unwrap(), 3e-5).unwrap()
        ]);
        let g = SweepGrid::single(1.3e12, 20.0).unwrap();
        let out = run_sweep(&stack, &g, parallel(), Engine::Cascade);
        assert_eq!(out.rows.len(), 1);
        let single = evaluate_point(&stack, 1.3e12, 20.0, parallel(), Engine::Cascade).unwrap();
        assert_eq!(out.rows[0], single);
    }

    #[test]
    fn sweep_collects_failures() {
        // a slab so thick the evanescent exponent overflows at oblique incidence
        let stack = Stack::new(vec![Layer::new(
            MaterialParams::lossless(1.6e-4, 1e-5, 0.1).unwrap(),
            1.0,
        )
        .unwrap()]);
        let g = SweepGrid::angle(0.0, 60.0, 3, true, F0).unwrap();
        let out = run_sweep(&stack, &g, parallel(), Engine::Cascade);
        assert_eq!(out.points, 3);
        assert_eq!(out.failures.len(), 2);
        assert!(matches!(out.failures[0].error, TmmError::EvanescentOverflow { .. }));
        assert_eq!(out.rows.len(), 1);
    }
}
