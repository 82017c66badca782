//! Trace generation by composing elementary slit maps, and recovery of the
//! driving function by unzipping.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::config::SimConfig;
use super::loewner::sqrt_upper;
use super::stream_rng;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub t: f64,
    pub re: f64,
    pub im: f64,
}

impl TracePoint {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Brownian driving `U_n = √κ B_{n dt}` for `n = 1..=steps`.
pub fn brownian_driving(cfg: &SimConfig, stream: u64) -> Vec<f64> {
    let mut rng = stream_rng(cfg.seed, stream);
    let s = (cfg.kappa * cfg.dt).sqrt();
    let mut u = 0.0;
    (0..cfg.steps())
        .map(|_| {
            let g: f64 = rng.sample(StandardNormal);
            u += s * g;
            u
        })
        .collect()
}

/// Tip `γ(t_n) = f_1 ∘ … ∘ f_n(U_n)` with `f_j(w) = U_j + √((w − U_j)² − 4dt)`.
pub fn trace_from_driving(driving: &[f64], dt: f64) -> Vec<TracePoint> {
    let four_dt = Complex64::new(4.0 * dt, 0.0);
    (0..driving.len())
        .map(|n| {
            let mut z = Complex64::new(driving[n], 0.0);
            for j in (0..=n).rev() {
                let u = driving[j];
                z = sqrt_upper((z - u) * (z - u) - four_dt) + u;
            }
            TracePoint {
                t: (n + 1) as f64 * dt,
                re: z.re,
                im: z.im,
            }
        })
        .collect()
}

pub fn trace_generate(cfg: &SimConfig) -> Result<Vec<TracePoint>> {
    cfg.validate()?;
    Ok(trace_from_driving(&brownian_driving(cfg, 0), cfg.dt))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DrivingSample {
    pub t: f64,
    pub u: f64,
}

/// Unzip a polyline: each segment is mapped to a vertical slit by the
/// current map, which yields `U_j` and the capacity increment.
pub fn driving_recovery(path: &[Complex64]) -> Result<Vec<DrivingSample>> {
    const TOL: f64 = 1e-12;
    if let Some(i) = path.iter().position(|z| !z.is_finite() || z.im < -TOL) {
        return Err(Error::PathLeavesHalfPlane { index: i });
    }
    let mut pts: Vec<Complex64> = path.to_vec();
    let mut out = Vec::with_capacity(pts.len());
    let mut t = 0.0;
    for j in 0..pts.len() {
        let p = pts[j];
        if p.im < -1e-9 {
            return Err(Error::PathLeavesHalfPlane { index: j });
        }
        let u = p.re;
        let y = p.im.max(0.0);
        t += y * y / 4.0;
        out.push(DrivingSample { t, u });
        let y2 = Complex64::new(y * y, 0.0);
        for z in pts.iter_mut().skip(j + 1) {
            *z = sqrt_upper((*z - u) * (*z - u) + y2) + u;
        }
    }
    Ok(out)
}

pub fn write_csv<W: std::io::Write>(mut w: W, trace: &[TracePoint]) -> std::io::Result<()> {
    writeln!(w, "t,re,im")?;
    for p in trace {
        writeln!(w, "{},{},{}", p.t, p.re, p.im)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_driving_is_vertical_slit() {
        let tr = trace_from_driving(&[0.0; 400], 1e-3);
        for p in &tr {
            assert!(p.re.abs() < 1e-12);
            assert!((p.im - 2.0 * p.t.sqrt()).abs() < 1e-9);
        }
        let rec = driving_recovery(&tr.iter().map(TracePoint::z).collect::<Vec<_>>()).unwrap();
        assert!(rec.iter().all(|s| s.u.abs() < 1e-12));
        assert!((rec.last().unwrap().t - 0.4).abs() < 1e-9);
    }

    #[test]
    fn linear_driving_round_trip() {
        let dt = 1e-3;
        let drv: Vec<f64> = (1..=300).map(|n| 1.5 * n as f64 * dt).collect();
        let tr = trace_from_driving(&drv, dt);
        let rec = driving_recovery(&tr.iter().map(TracePoint::z).collect::<Vec<_>>()).unwrap();
        for (r, u) in rec.iter().zip(&drv) {
            assert!((r.u - u).abs() < 1e-8, "{} vs {}", r.u, u);
        }
    }

    #[test]
    fn lower_half_plane_rejected() {
        let bad = [Complex64::new(0.0, 0.1), Complex64::new(0.0, -0.5)];
        assert!(matches!(driving_recovery(&bad), Err(Error::PathLeavesHalfPlane { index: 1 })));
    }

    #[test]
    fn csv_header() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[TracePoint { t: 0.1, re: 0.0, im: 1.0 }]).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("t,re,im\n0.1,0,1"));
    }
}
