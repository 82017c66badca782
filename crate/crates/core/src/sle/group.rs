//! Brownian motion on the complement directions acting on an irrep vector.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::config::{GroupScheme, SimConfig};
use super::stream_rng;
use crate::error::{Error, Result};
use crate::lie::coset::EmbeddingSpec;
use crate::lie::irrep::Irrep;
use crate::scalar::rational_to_f64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Complement generators, orthonormal under the parent form, in an irrep.
#[derive(Clone, Debug)]
pub struct GroupFactor {
    pub generators: Vec<CMat>,
    /// `Q = Σ_a Tᵃ Tᵃ`.
    pub casimir: CMat,
    pub dim: usize,
}

impl GroupFactor {
    pub fn new(emb: &EmbeddingSpec, irrep: &Irrep) -> Result<Self> {
        let dim = irrep.dim;
        let m = emb.complement.len();
        let gram = emb.complement_gram();
        let g = DMatrix::from_fn(m, m, |i, j| rational_to_f64(&gram[i][j]));
        let lower = if m == 0 {
            DMatrix::zeros(0, 0)
        } else {
            g.cholesky()
                .ok_or_else(|| Error::InvalidParameter("complement form is not positive definite".into()))?
                .l()
        };
        let linv = lower
            .try_inverse()
            .ok_or_else(|| Error::InvalidParameter("singular complement form".into()))?;
        let raw: Vec<CMat> = emb
            .complement
            .iter()
            .map(|u| {
                let mut acc = CMat::zeros(dim, dim);
                for (a, coef) in u.iter().enumerate() {
                    let c = rational_to_f64(coef);
                    if c != 0.0 {
                        acc += to_cmat(&irrep.matrices[a]) * Complex64::new(c, 0.0);
                    }
                }
                acc
            })
            .collect();
        let generators: Vec<CMat> = (0..m)
            .map(|i| {
                let mut acc = CMat::zeros(dim, dim);
                for (j, r) in raw.iter().enumerate() {
                    acc += r * Complex64::new(linv[(i, j)], 0.0);
                }
                acc
            })
            .collect();
        let mut casimir = CMat::zeros(dim, dim);
        for t in &generators {
            casimir += t * t;
        }
        Ok(Self { generators, casimir, dim })
    }

    /// Eigenvalue of `Q` on basis vector `i`, if it is an eigenvector.
    pub fn casimir_eigenvalue(&self, i: usize) -> Option<f64> {
        let col = self.casimir.column(i);
        let q = col[i];
        let off = col.iter().enumerate().filter(|(r, _)| *r != i).map(|(_, x)| x.norm()).fold(0.0, f64::max);
        (off < 1e-12 && q.im.abs() < 1e-12).then_some(q.re)
    }

    /// One update with noise scale `sigma` (may be complex).
    pub fn step<R: Rng>(&self, v: &CVec, sigma: Complex64, dt: f64, scheme: GroupScheme, rng: &mut R) -> CVec {
        let sdt = dt.sqrt();
        let mut a = CMat::zeros(self.dim, self.dim);
        for t in &self.generators {
            let g: f64 = rng.sample(StandardNormal);
            a += t * (sigma * g * sdt);
        }
        match scheme {
            GroupScheme::ItoLinear => v + &a * v,
            GroupScheme::ItoDrift => v + &a * v + (&self.casimir * v) * (sigma * sigma * 0.5 * dt),
            GroupScheme::Exponential => a.exp() * v,
        }
    }

    /// `exp(½τ Q t) v`.
    pub fn mean_oracle(&self, v: &CVec, tau: f64, t: f64) -> CVec {
        (&self.casimir * Complex64::new(0.5 * tau * t, 0.0)).exp() * v
    }
}

fn to_cmat(m: &[Vec<crate::scalar::Scalar>]) -> CMat {
    let n = m.len();
    CMat::from_fn(n, n, |i, j| m[i][j].to_complex())
}

pub fn noise_scale(tau: f64) -> (Complex64, Option<String>) {
    if tau >= 0.0 {
        (Complex64::new(tau.sqrt(), 0.0), None)
    } else {
        (
            Complex64::new(0.0, (-tau).sqrt()),
            Some(format!("tau = {tau} < 0: group noise uses the imaginary scale i*sqrt(|tau|)")),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub scheme: GroupScheme,
    pub tau: f64,
    pub t: f64,
    pub dt: f64,
    pub samples: usize,
    pub vector_index: usize,
    pub mean: Vec<[f64; 2]>,
    pub stderr: Vec<f64>,
    pub oracle: Vec<[f64; 2]>,
    pub rel_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub warnings: Vec<String>,
}

/// Pure group walk `dv = √τ Σ dθᵃ Tᵃ v` against `exp(½τ Q t) v₀`.
pub fn generator_check(cfg: &SimConfig, group: &GroupFactor, index: usize) -> Result<GeneratorReport> {
    cfg.validate()?;
    if index >= group.dim {
        return Err(Error::InvalidParameter(format!("vector index {index} out of range")));
    }
    let (sigma, warn) = noise_scale(cfg.tau);
    let mut v0 = CVec::zeros(group.dim);
    v0[index] = Complex64::new(1.0, 0.0);
    let steps = cfg.steps();
    let t = steps as f64 * cfg.dt;
    let finals: Vec<CVec> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream_rng(cfg.seed, s);
            let mut v = v0.clone();
            for _ in 0..steps {
                v = group.step(&v, sigma, cfg.dt, cfg.group, &mut rng);
            }
            v
        })
        .collect();
    let good: Vec<&CVec> = finals.iter().filter(|v| v.iter().all(|x| x.is_finite())).collect();
    let bad = finals.len() - good.len();
    if bad * 100 > finals.len() {
        return Err(Error::NonFinite { bad, total: finals.len() });
    }
    let n = good.len() as f64;
    let mut mean = CVec::zeros(group.dim);
    for v in &good {
        mean += *v;
    }
    mean /= Complex64::new(n, 0.0);
    let stderr: Vec<f64> = (0..group.dim)
        .map(|i| {
            if good.len() < 2 {
                return f64::NAN;
            }
            let var = good.iter().map(|v| (v[i] - mean[i]).norm_sqr()).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        })
        .collect();
    let oracle = group.mean_oracle(&v0, cfg.tau, t);
    let rel_error = (&mean - &oracle).norm() / oracle.norm();
    let tolerance = 0.05;
    let mut warnings: Vec<String> = warn.into_iter().collect();
    if bad > 0 {
        warnings.push(format!("{bad} non-finite samples excluded"));
    }
    if cfg.group == GroupScheme::ItoLinear {
        warnings.push("ito-linear updates preserve the mean; the exponential oracle is not expected to match".into());
    }
    Ok(GeneratorReport {
        scheme: cfg.group,
        tau: cfg.tau,
        t,
        dt: cfg.dt,
        samples: good.len(),
        vector_index: index,
        mean: mean.iter().map(|x| [x.re, x.im]).collect(),
        stderr,
        oracle: oracle.iter().map(|x| [x.re, x.im]).collect(),
        rel_error,
        tolerance,
        pass: rel_error < tolerance && good.len() >= 100,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fundamental() -> GroupFactor {
        GroupFactor::new(&EmbeddingSpec::su2_u1(), &Irrep::su2_spin(1)).unwrap()
    }

    #[test]
    fn fundamental_casimir_is_identity() {
        let g = fundamental();
        assert_eq!(g.generators.len(), 2);
        assert!((&g.casimir - CMat::identity(2, 2)).norm() < 1e-12);
        assert!((g.casimir_eigenvalue(0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spin_one_casimir_eigenvalues() {
        // 2(j(j+1) − m²)
        let g = GroupFactor::new(&EmbeddingSpec::su2_u1(), &Irrep::su2_spin(2)).unwrap();
        assert!((g.casimir_eigenvalue(0).unwrap() - 2.0).abs() < 1e-12);
        assert!((g.casimir_eigenvalue(1).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_value() {
        let g = fundamental();
        let mut v = CVec::zeros(2);
        v[0] = Complex64::new(1.0, 0.0);
        let o = g.mean_oracle(&v, 1.0, 0.5);
        assert!((o[0].re - 0.25f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn generator_matches_exponential() {
        let cfg = SimConfig {
            tau: 1.0,
            dt: 1e-3,
            t_max: 0.5,
            samples: 4000,
            seed: 11,
            ..SimConfig::default()
        };
        let r = generator_check(&cfg, &fundamental(), 0).unwrap();
        assert!(r.pass, "{r:?}");
        let lin = generator_check(&SimConfig { group: GroupScheme::ItoLinear, ..cfg }, &fundamental(), 0).unwrap();
        assert!(!lin.pass);
    }
}
