//! Exact finite-dimensional representations carrying the zero modes.

use num_traits::{One, Zero};

use super::AlgebraSpec;
use crate::error::{Error, Result};
use crate::scalar::{q, qi, Scalar};

pub type SMatrix = Vec<Vec<Scalar>>;

/// Matrices `M^a` with `[M^a, M^b] = i Σ_c f_abc M^c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Irrep {
    pub dim: usize,
    pub matrices: Vec<SMatrix>,
    /// Highest weight in Dynkin labels.
    pub highest_weight: Vec<i64>,
}

impl Irrep {
    pub fn trivial(spec: &AlgebraSpec) -> Self {
        Self {
            dim: 1,
            matrices: vec![vec![vec![Scalar::zero()]]; spec.dim],
            highest_weight: vec![0; spec.rank],
        }
    }

    /// Adjoint: `(ad t_a)_{cb} = i f_abc`.
    pub fn adjoint(spec: &AlgebraSpec, highest_weight: Vec<i64>) -> Self {
        let n = spec.dim;
        let matrices = (0..n)
            .map(|a| {
                (0..n)
                    .map(|c| (0..n).map(|b| &Scalar::i() * &Scalar::from(spec.f(a, b, c).clone())).collect())
                    .collect()
            })
            .collect();
        Self {
            dim: n,
            matrices,
            highest_weight,
        }
    }

    /// Spin-`μ/2` irrep of su(2) in the basis `e_r`, `r = 0..=μ`, with `S³ e_r = (μ/2 − r) e_r`.
    ///
    /// Raising acts with unit coefficients and lowering carries `(j−m)(j+m+1)`,
    /// so every entry is exact.
    pub fn su2_spin(twice_j: i64) -> Self {
        let n = (twice_j + 1) as usize;
        let j = q(twice_j, 2);
        let m = |r: usize| &j - qi(r as i64);
        let mut plus = vec![vec![Scalar::zero(); n]; n];
        let mut minus = vec![vec![Scalar::zero(); n]; n];
        let mut s3 = vec![vec![Scalar::zero(); n]; n];
        for r in 0..n {
            s3[r][r] = Scalar::from(m(r));
            if r + 1 < n {
                // e_{r+1} has weight m(r) − 1; S⁺ e_{r+1} = e_r
                plus[r][r + 1] = Scalar::one();
                let lower = m(r + 1);
                let b = (&j - &lower) * (&j + &lower + qi(1));
                minus[r + 1][r] = Scalar::from(b);
            }
        }
        let half = Scalar::frac(1, 2);
        let s1 = add_scaled(&plus, &minus, &half, &half);
        let mi_half = &Scalar::i() * &Scalar::frac(-1, 2);
        let s2 = add_scaled(&plus, &minus, &mi_half, &(-&mi_half));
        Self {
            dim: n,
            matrices: vec![s1, s2, s3],
            highest_weight: vec![twice_j],
        }
    }

    /// Irrep of the given highest weight, for the cases the engine supports.
    pub fn for_weight(spec: &AlgebraSpec, weight: &[i64]) -> Result<Self> {
        if weight.len() != spec.rank {
            return Err(Error::WeightDimension {
                expected: spec.rank,
                got: weight.len(),
            });
        }
        if weight.iter().all(|&w| w == 0) {
            return Ok(Self::trivial(spec));
        }
        if spec.name == "su2" || spec.name == "so3" {
            if weight[0] < 0 {
                return Err(Error::InvalidParameter("negative Dynkin label".into()));
            }
            return Ok(Self::su2_spin(weight[0]));
        }
        if spec.name == "su3" && weight == [1, 1] {
            return Ok(Self::adjoint(spec, weight.to_vec()));
        }
        Err(Error::Unsupported(format!(
            "no exact irrep of {} with highest weight {weight:?}",
            spec.name
        )))
    }

    /// Index of the su(2) weight vector with `S³` eigenvalue `twice_m / 2`.
    pub fn su2_weight_index(&self, twice_m: i64) -> Option<usize> {
        let twice_j = self.highest_weight[0];
        if twice_m.abs() > twice_j || (twice_j - twice_m) % 2 != 0 {
            return None;
        }
        Some(((twice_j - twice_m) / 2) as usize)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }
}

fn add_scaled(x: &SMatrix, y: &SMatrix, a: &Scalar, b: &Scalar) -> SMatrix {
    x.iter()
        .zip(y)
        .map(|(rx, ry)| rx.iter().zip(ry).map(|(u, v)| &(a * u) + &(b * v)).collect())
        .collect()
}

pub fn mat_mul(x: &SMatrix, y: &SMatrix) -> SMatrix {
    let n = x.len();
    let m = y.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = Scalar::zero();
                    for (k, yk) in y.iter().enumerate() {
                        if !x[i][k].is_zero() && !yk[j].is_zero() {
                            s += &(&x[i][k] * &yk[j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_brackets(spec: &AlgebraSpec, rep: &Irrep) {
        for a in 0..spec.dim {
            for b in 0..spec.dim {
                let ab = mat_mul(&rep.matrices[a], &rep.matrices[b]);
                let ba = mat_mul(&rep.matrices[b], &rep.matrices[a]);
                for i in 0..rep.dim {
                    for j in 0..rep.dim {
                        let lhs = &ab[i][j] - &ba[i][j];
                        let mut rhs = Scalar::zero();
                        for c in 0..spec.dim {
                            rhs += &(&Scalar::i() * &(&Scalar::from(spec.f(a, b, c).clone()) * &rep.matrices[c][i][j]));
                        }
                        assert_eq!(lhs, rhs, "{} rep {:?} [{a},{b}]", spec.name, rep.highest_weight);
                    }
                }
            }
        }
    }

    #[test]
    fn su2_spins_represent_the_algebra() {
        let su2 = AlgebraSpec::su2();
        for tj in 0..5 {
            check_brackets(&su2, &Irrep::su2_spin(tj));
        }
    }

    #[test]
    fn su2_casimir_on_spin_irreps() {
        // Σ K^{-1}_ab M^a M^b = (μ, μ+2ρ) · 1
        let su2 = AlgebraSpec::su2();
        for tj in 0..5 {
            let rep = Irrep::su2_spin(tj);
            let c = Scalar::from(su2.casimir_eigenvalue(&[tj]).unwrap());
            let mut cas = vec![vec![Scalar::zero(); rep.dim]; rep.dim];
            for a in 0..3 {
                let sq = mat_mul(&rep.matrices[a], &rep.matrices[a]);
                let w = Scalar::from(su2.form_inv[a][a].clone());
                for i in 0..rep.dim {
                    for j in 0..rep.dim {
                        cas[i][j] += &(&w * &sq[i][j]);
                    }
                }
            }
            for i in 0..rep.dim {
                for j in 0..rep.dim {
                    assert_eq!(cas[i][j], if i == j { c.clone() } else { Scalar::zero() });
                }
            }
        }
    }

    #[test]
    fn su3_adjoint_and_gell_mann() {
        let su3 = AlgebraSpec::su3();
        check_brackets(&su3, &Irrep::for_weight(&su3, &[1, 1]).unwrap());
        // Fundamental from Gell-Mann matrices (eighth rescaled): an independent
        // oracle for the hard-coded structure constants.
        let z = Scalar::zero;
        let one = Scalar::frac(1, 2);
        let i = &Scalar::i() * &Scalar::frac(1, 2);
        let mi = -&i;
        let mut mats = vec![vec![vec![z(); 3]; 3]; 8];
        let set = |m: &mut SMatrix, r: usize, c: usize, v: Scalar| m[r][c] = v;
        set(&mut mats[0], 0, 1, one.clone());
        set(&mut mats[0], 1, 0, one.clone());
        set(&mut mats[1], 0, 1, mi.clone());
        set(&mut mats[1], 1, 0, i.clone());
        set(&mut mats[2], 0, 0, one.clone());
        set(&mut mats[2], 1, 1, -&one);
        set(&mut mats[3], 0, 2, one.clone());
        set(&mut mats[3], 2, 0, one.clone());
        set(&mut mats[4], 0, 2, mi.clone());
        set(&mut mats[4], 2, 0, i.clone());
        set(&mut mats[5], 1, 2, one.clone());
        set(&mut mats[5], 2, 1, one.clone());
        set(&mut mats[6], 1, 2, mi);
        set(&mut mats[6], 2, 1, i);
        set(&mut mats[7], 0, 0, one.clone());
        set(&mut mats[7], 1, 1, one);
        set(&mut mats[7], 2, 2, Scalar::int(-1));
        let rep = Irrep {
            dim: 3,
            matrices: mats,
            highest_weight: vec![1, 0],
        };
        check_brackets(&su3, &rep);
        // trace form reproduces K
        for a in 0..8 {
            for b in 0..8 {
                let p = mat_mul(&rep.matrices[a], &rep.matrices[b]);
                let tr = &(&p[0][0] + &p[1][1]) + &p[2][2];
                assert_eq!(tr, Scalar::from(su3.form[a][b].clone()));
            }
        }
    }

    #[test]
    fn weight_indices() {
        let rep = Irrep::su2_spin(2);
        assert_eq!(rep.su2_weight_index(2), Some(0));
        assert_eq!(rep.su2_weight_index(0), Some(1));
        assert_eq!(rep.su2_weight_index(-2), Some(2));
        assert_eq!(rep.su2_weight_index(1), None);
        assert_eq!(Irrep::su2_spin(0).su2_weight_index(2), None);
    }
}
