//! Monte-Carlo martingale checks.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::config::SimConfig;
use super::group::{noise_scale, CVec, GroupFactor};
use super::loewner::{swallow_radius, LoewnerState};
use super::stream_rng;
use crate::error::{Error, Result};

pub const INDICIAL_TOL: f64 = 1e-9;
pub const MIN_SAMPLES: usize = 100;
pub const Z_THRESHOLD: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    InsufficientSamples,
}

#[derive(Clone, Debug, Serialize)]
pub struct Checkpoint {
    pub t: f64,
    pub mean: f64,
    pub stderr: Option<f64>,
    pub z: Option<f64>,
    pub mean_im: f64,
    pub stderr_im: Option<f64>,
    pub z_im: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MartingaleReport {
    pub observable: String,
    #[serde(rename = "M0")]
    pub m0: [f64; 2],
    pub checkpoints: Vec<Checkpoint>,
    pub verdict: Verdict,
    pub samples: usize,
    pub excluded: usize,
    pub swallowed: usize,
    pub seed: u64,
    pub kappa: f64,
    pub tau: f64,
    pub h: f64,
    pub p: f64,
    pub indicial_residual: f64,
    pub warnings: Vec<String>,
}

/// Values of one stream at each checkpoint.
pub struct StreamOutcome {
    pub values: Vec<Complex64>,
    pub swallowed: bool,
}

fn zscore(diff: f64, se: Option<f64>, scale: f64) -> Option<f64> {
    let se = se?;
    if se > 0.0 {
        Some(diff / se)
    } else if diff.abs() <= 1e-12 * (1.0 + scale) {
        Some(0.0)
    } else {
        Some(f64::INFINITY)
    }
}

/// Run `cfg.samples` independent streams and aggregate in stream order.
pub fn mc_harness<F>(cfg: &SimConfig, observable: String, m0: Complex64, run: F) -> Result<MartingaleReport>
where
    F: Fn(&mut ChaCha8Rng) -> StreamOutcome + Sync,
{
    cfg.validate()?;
    let outcomes: Vec<StreamOutcome> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|s| run(&mut stream_rng(cfg.seed, s)))
        .collect();
    let total = outcomes.len();
    let good: Vec<&StreamOutcome> = outcomes.iter().filter(|o| o.values.iter().all(|v| v.is_finite())).collect();
    let excluded = total - good.len();
    if excluded * 100 > total {
        return Err(Error::NonFinite { bad: excluded, total });
    }
    let n = good.len();
    let times: Vec<f64> = cfg.checkpoint_steps().iter().map(|&s| s as f64 * cfg.dt).collect();
    let scale = m0.norm();
    let mut checkpoints = Vec::new();
    for (c, &t) in times.iter().enumerate() {
        let nf = n as f64;
        let (mut sr, mut si) = (0.0, 0.0);
        for o in &good {
            sr += o.values[c].re;
            si += o.values[c].im;
        }
        let (mr, mi) = (sr / nf, si / nf);
        let se = |f: &dyn Fn(&Complex64) -> f64, m: f64| {
            (n >= 2).then(|| {
                let var = good.iter().map(|o| (f(&o.values[c]) - m).powi(2)).sum::<f64>() / (nf - 1.0);
                (var / nf).sqrt()
            })
        };
        let ser = se(&|v| v.re, mr);
        let sei = se(&|v| v.im, mi);
        checkpoints.push(Checkpoint {
            t,
            mean: mr,
            stderr: ser,
            z: zscore(mr - m0.re, ser, scale),
            mean_im: mi,
            stderr_im: sei,
            z_im: zscore(mi - m0.im, sei, scale),
        });
    }
    let verdict = if n < MIN_SAMPLES {
        Verdict::InsufficientSamples
    } else if checkpoints
        .iter()
        .all(|c| c.z.is_some_and(|z| z.abs() <= Z_THRESHOLD) && c.z_im.is_some_and(|z| z.abs() <= Z_THRESHOLD))
    {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut warnings = Vec::new();
    if excluded > 0 {
        warnings.push(format!("{excluded} non-finite samples excluded"));
    }
    if n < MIN_SAMPLES {
        warnings.push(format!("insufficient samples: {n} < {MIN_SAMPLES}"));
    }
    Ok(MartingaleReport {
        observable,
        m0: [m0.re, m0.im],
        checkpoints,
        verdict,
        samples: n,
        excluded,
        swallowed: good.iter().filter(|o| o.swallowed).count(),
        seed: cfg.seed,
        kappa: cfg.kappa,
        tau: cfg.tau,
        h: 0.0,
        p: 0.0,
        indicial_residual: 0.0,
        warnings,
    })
}

/// `2p + (κ/2) p(p−1) + (τ/2) q − 2h`.
pub fn indicial_residual(kappa: f64, tau: f64, q: f64, h: f64, p: f64) -> f64 {
    2.0 * p + 0.5 * kappa * p * (p - 1.0) + 0.5 * tau * q - 2.0 * h
}

/// Root of the indicial relation continuous in `κ → 0`.
pub fn indicial_exponent(kappa: f64, tau: f64, q: f64, h: f64) -> Result<f64> {
    let c0 = 0.5 * tau * q - 2.0 * h;
    if kappa == 0.0 {
        return Ok(-c0 / 2.0);
    }
    let a = 0.5 * kappa;
    let b = 2.0 - 0.5 * kappa;
    let disc = b * b - 4.0 * a * c0;
    if disc < 0.0 {
        return Err(Error::NotMartingale(format!(
            "no power ansatz: indicial relation has no real root (discriminant {disc})"
        )));
    }
    Ok((-b + disc.sqrt()) / (2.0 * a))
}

fn check_indicial(res: f64, force: bool, warnings: &mut Vec<String>) -> Result<()> {
    if res.abs() > INDICIAL_TOL {
        if !force {
            return Err(Error::NotMartingale(format!(
                "indicial relation violated by {res:e}; pass force to run anyway"
            )));
        }
        warnings.push(format!("forced run: indicial residual {res:e}"));
    }
    Ok(())
}

/// `M_t = (w′)^h w^p` for the point started at `i`.
pub fn power_martingale_mc(cfg: &SimConfig, h: f64, p: f64, force: bool) -> Result<MartingaleReport> {
    cfg.validate()?;
    let res = indicial_residual(cfg.kappa, 0.0, 0.0, h, p);
    let mut warnings = Vec::new();
    check_indicial(res, force, &mut warnings)?;
    let z0 = Complex64::new(0.0, 1.0);
    let m0 = (p * z0.ln()).exp();
    let cps = cfg.checkpoint_steps();
    let sk = (cfg.kappa * cfg.dt).sqrt();
    let radius = swallow_radius(cfg.dt);
    let mut rep = mc_harness(cfg, format!("(w')^{h} w^{p}"), m0, |rng| {
        let mut st = LoewnerState::new(vec![z0]);
        let mut values = Vec::with_capacity(cps.len());
        let mut next = 0;
        for n in 1..=cps[cps.len() - 1] {
            let g: f64 = rng.sample(StandardNormal);
            st.step(sk * g, cfg.dt, cfg.loewner, radius);
            while next < cps.len() && cps[next] == n {
                values.push((h * st.dlogw[0] + p * st.points[0].ln()).exp());
                next += 1;
            }
        }
        StreamOutcome {
            values,
            swallowed: st.swallowed[0],
        }
    })?;
    rep.h = h;
    rep.p = p;
    rep.indicial_residual = res;
    warnings.append(&mut rep.warnings);
    rep.warnings = warnings;
    Ok(rep)
}

/// Coset one-point observable `M_t = (w′)^h w^p v_t[i]`, with the group factor
/// driven by `dv = (√τ/w) Σ dθᵃ Tᵃ v`. The exponent solves the indicial
/// relation unless given.
pub fn coset_onepoint_martingale_mc(
    cfg: &SimConfig,
    h: f64,
    group: &GroupFactor,
    index: usize,
    p: Option<f64>,
    force: bool,
) -> Result<MartingaleReport> {
    cfg.validate()?;
    if index >= group.dim {
        return Err(Error::InvalidParameter(format!("vector index {index} out of range")));
    }
    let q = group
        .casimir_eigenvalue(index)
        .ok_or_else(|| Error::InvalidParameter(format!("basis vector {index} is not a Casimir eigenvector")))?;
    let p = match p {
        Some(p) => p,
        None => indicial_exponent(cfg.kappa, cfg.tau, q, h)?,
    };
    let res = indicial_residual(cfg.kappa, cfg.tau, q, h, p);
    let mut warnings = Vec::new();
    check_indicial(res, force, &mut warnings)?;
    let (sigma, warn) = noise_scale(cfg.tau);
    warnings.extend(warn);
    let z0 = Complex64::new(0.0, 1.0);
    let m0 = (p * z0.ln()).exp();
    let mut v0 = CVec::zeros(group.dim);
    v0[index] = Complex64::new(1.0, 0.0);
    let cps = cfg.checkpoint_steps();
    let sk = (cfg.kappa * cfg.dt).sqrt();
    let radius = swallow_radius(cfg.dt);
    let mut rep = mc_harness(cfg, format!("(w')^{h} w^{p} v[{index}]"), m0, |rng| {
        let mut st = LoewnerState::new(vec![z0]);
        let mut v = v0.clone();
        let mut values = Vec::with_capacity(cps.len());
        let mut next = 0;
        for n in 1..=cps[cps.len() - 1] {
            if !st.swallowed[0] {
                let w = st.points[0];
                v = group.step(&v, sigma / w, cfg.dt, cfg.group, rng);
            }
            let g: f64 = rng.sample(StandardNormal);
            st.step(sk * g, cfg.dt, cfg.loewner, radius);
            while next < cps.len() && cps[next] == n {
                values.push((h * st.dlogw[0] + p * st.points[0].ln()).exp() * v[index]);
                next += 1;
            }
        }
        StreamOutcome {
            values,
            swallowed: st.swallowed[0],
        }
    })?;
    rep.h = h;
    rep.p = p;
    rep.indicial_residual = res;
    warnings.append(&mut rep.warnings);
    rep.warnings = warnings;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::coset::EmbeddingSpec;
    use crate::lie::irrep::Irrep;

    fn cfg(kappa: f64, tau: f64, samples: usize) -> SimConfig {
        SimConfig {
            kappa,
            tau,
            samples,
            seed: 3,
            ..SimConfig::default()
        }
    }

    #[test]
    fn exponents() {
        assert!((indicial_exponent(3.0, 0.0, 0.0, 0.5).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        let p = indicial_exponent(3.0, 1.0, 1.0, 0.5).unwrap();
        assert!((p - (13f64.sqrt() - 1.0) / 6.0).abs() < 1e-12);
        assert!(indicial_exponent(8.0, 10.0, 4.0, 0.0).is_err());
    }

    #[test]
    fn trivial_observable_is_exact() {
        let r = power_martingale_mc(&cfg(3.0, 0.0, 100), 0.0, 0.0, false).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.checkpoints.iter().all(|c| c.mean == 1.0 && c.z == Some(0.0)));
    }

    #[test]
    fn precondition_and_degenerate_sample() {
        assert!(matches!(
            power_martingale_mc(&cfg(4.0, 0.0, 10), 0.5, 2.0 / 3.0, false),
            Err(Error::NotMartingale(_))
        ));
        let r = power_martingale_mc(&cfg(3.0, 0.0, 1), 0.5, 2.0 / 3.0, false).unwrap();
        assert_eq!(r.verdict, Verdict::InsufficientSamples);
        assert!(r.checkpoints[0].stderr.is_none());
    }

    #[test]
    fn deterministic_across_runs() {
        let a = power_martingale_mc(&cfg(3.0, 0.0, 200), 0.5, 2.0 / 3.0, false).unwrap();
        let b = power_martingale_mc(&cfg(3.0, 0.0, 200), 0.5, 2.0 / 3.0, false).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn coset_requires_eigenvector_and_real_root() {
        let g = GroupFactor::new(&EmbeddingSpec::su2_u1(), &Irrep::su2_spin(1)).unwrap();
        assert!(coset_onepoint_martingale_mc(&cfg(3.0, 1.0, 10), 0.5, &g, 5, None, false).is_err());
        let r = coset_onepoint_martingale_mc(&cfg(3.0, 1.0, 10), 0.5, &g, 0, None, false).unwrap();
        assert!(r.indicial_residual.abs() < 1e-12);
    }
}
