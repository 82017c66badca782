//! Sugawara modes and the coset commutation check.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::coeff::Coeff;
use super::engine::{Engine, EngineMode, HwContext, MAX_LEVEL};
use super::poly::{GeneratorSymbol, OperatorPoly, Sector};
use crate::error::{Error, Result};
use crate::lie::{coset::physical_charge, enumerate_fields, AlgebraSpec, EmbeddingSpec, Irrep};
use crate::linalg::{invert, QMatrix};
use crate::scalar::{fmt_rational, qi, Rational, Scalar};

/// `pref · Σ_ab W_ab Σ_m :J^a_m J^b_{n−m}:` keeping the terms whose rightmost
/// mode is at most the level budget; the dropped terms annihilate every state
/// of level ≤ 2.
fn bilinear(dim: usize, weights: &QMatrix, pref: &Rational, n: i64) -> OperatorPoly {
    let mut out = OperatorPoly::zero();
    let lo = n.div_euclid(2) + n.rem_euclid(2);
    for r in lo..=MAX_LEVEL {
        let p = n - r;
        let mult = if p == r { qi(1) } else { qi(2) };
        for a in 0..dim {
            for b in 0..dim {
                let w = &weights[a][b];
                if w.is_zero() {
                    continue;
                }
                out.add_term(
                    vec![GeneratorSymbol::j(a, p), GeneratorSymbol::j(b, r)],
                    Coeff::rational(pref * w * &mult),
                );
            }
        }
    }
    out
}

fn check_mode(n: i64) -> Result<()> {
    if n.abs() > MAX_LEVEL {
        return Err(Error::ModeRange(n));
    }
    Ok(())
}

/// Sugawara mode `L_n = 1/(2(k+h^∨)) Σ K^{-1}_ab Σ_m :J^a_m J^b_{n−m}:`, normal-ordered.
pub fn sugawara_mode(spec: &AlgebraSpec, k: &Rational, n: i64) -> Result<OperatorPoly> {
    check_mode(n)?;
    let den = qi(2) * (k + &spec.dual_coxeter);
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let pref = Rational::from_integer(1.into()) / den;
    let engine = Engine::new(EngineMode::SugawaraCoset, spec.clone());
    engine.normal_order(&bilinear(spec.dim, &spec.form_inv, &pref, n))
}

/// Subalgebra Sugawara mode at level `index·k`, written in parent currents.
pub fn sub_sugawara_mode(emb: &EmbeddingSpec, k: &Rational, n: i64) -> Result<OperatorPoly> {
    check_mode(n)?;
    let sub = &emb.sub;
    let ka = emb.sub_level(k);
    let den = qi(2) * (&ka + &sub.dual_coxeter);
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let pref = Rational::from_integer(1.into()) / den;
    let np = emb.parent.dim;
    let mut w = vec![vec![Rational::zero(); np]; np];
    let kinv = invert(&sub.form)?;
    for b in 0..sub.dim {
        for c in 0..sub.dim {
            for a in 0..np {
                for a2 in 0..np {
                    w[a][a2] += &kinv[b][c] * &emb.coefficients[b][a] * &emb.coefficients[c][a2];
                }
            }
        }
    }
    let engine = Engine::with_embedding(EngineMode::SugawaraCoset, emb.clone());
    engine.normal_order(&bilinear(np, &w, &pref, n))
}

/// Coset Virasoro mode `L_n = L^𝔤_n − L^𝔞_n`.
pub fn coset_virasoro(emb: &EmbeddingSpec, k: &Rational, n: i64) -> Result<OperatorPoly> {
    Ok(sugawara_mode(&emb.parent, k, n)?.sub(&sub_sugawara_mode(emb, k, n)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorResidual {
    pub n: i64,
    pub m: i64,
    pub sub_index: usize,
    pub highest_weight: Vec<i64>,
    pub nonzero_entries: usize,
    #[serde(serialize_with = "crate::solver::report::ser_rational")]
    pub max_abs: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationReport {
    pub embedding: String,
    pub level: i64,
    pub checked: Vec<CommutatorResidual>,
    /// `(n, m)` pairs whose result would leave the level budget.
    pub skipped: Vec<(i64, i64)>,
    #[serde(serialize_with = "crate::solver::report::ser_rational")]
    pub max_residual: Rational,
}

impl CommutationReport {
    pub fn is_clean(&self) -> bool {
        self.max_residual.is_zero() && self.checked.iter().all(|r| r.nonzero_entries == 0)
    }
}

/// Evaluate `[L^{coset}_n, J̃^b_m]` on every vector of every primary irrep of the
/// enumerated fields, for `n, m ∈ −2..=2` within the level budget.
pub fn coset_commutation_check(emb: &EmbeddingSpec, k: i64) -> Result<CommutationReport> {
    let kq = qi(k);
    let engine = Engine::with_embedding(EngineMode::SugawaraCoset, emb.clone());
    let mut weights: Vec<Vec<i64>> = enumerate_fields(emb, k)?
        .into_iter()
        .flat_map(|o| o.members.into_iter().map(|f| f.mu))
        .collect();
    weights.sort();
    weights.dedup();
    let modes: Vec<OperatorPoly> = (-2..=2).map(|n| coset_virasoro(emb, &kq, n)).collect::<Result<_>>()?;
    let mut report = CommutationReport {
        embedding: emb.name.clone(),
        level: k,
        checked: Vec::new(),
        skipped: Vec::new(),
        max_residual: Rational::zero(),
    };
    for n in -2..=2i64 {
        for m in -2..=2i64 {
            if n + m < -MAX_LEVEL {
                report.skipped.push((n, m));
            }
        }
    }
    for mu in &weights {
        let irrep = Irrep::for_weight(&emb.parent, mu)?;
        let ctx = HwContext {
            label: format!("{mu:?}"),
            h: Rational::zero(),
            c: Rational::zero(),
            k: kq.clone(),
            irrep,
        };
        for n in -2..=2i64 {
            let l = &modes[(n + 2) as usize];
            for m in -2..=2i64 {
                if n + m < -MAX_LEVEL {
                    continue;
                }
                for b in 0..emb.sub.dim {
                    let jt = OperatorPoly::symbol(GeneratorSymbol::current(Sector::Sub, b, m));
                    let mut nonzero = 0;
                    let mut max_abs = Rational::zero();
                    for i in 0..ctx.irrep.dim {
                        let v = ctx.irrep.basis_vector(i);
                        let lj = engine.apply_to_hw(&l.mul(&jt), &ctx, &v)?;
                        let jl = engine.apply_to_hw(&jt.mul(l), &ctx, &v)?;
                        for (_, vec) in lj.sub(&jl).entries() {
                            for x in vec {
                                for (_, s) in x.terms() {
                                    nonzero += 1;
                                    for part in s.parts() {
                                        let a = part.abs();
                                        if a > max_abs {
                                            max_abs = a;
                                        }
                                    }
                                }
                            }
                        }
                    }
                    if max_abs > report.max_residual {
                        report.max_residual = max_abs.clone();
                    }
                    report.checked.push(CommutatorResidual {
                        n,
                        m,
                        sub_index: b,
                        highest_weight: mu.clone(),
                        nonzero_entries: nonzero,
                        max_abs,
                    });
                }
            }
        }
    }
    Ok(report)
}

impl std::fmt::Display for CommutationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "coset commutation check {} level {}: {} evaluations, max residual {}",
            self.embedding,
            self.level,
            self.checked.len(),
            fmt_rational(&self.max_residual)
        )?;
        if !self.skipped.is_empty() {
            let s: Vec<String> = self.skipped.iter().map(|(n, m)| format!("({n},{m})")).collect();
            writeln!(f, "skipped (level budget): {}", s.join(" "))?;
        }
        Ok(())
    }
}

/// Exact `L_0` eigenvalue of the coset Sugawara operator on a realizable field vector.
pub fn coset_l0_on_field(emb: &EmbeddingSpec, k: i64, mu: &[i64], nu: &[i64]) -> Result<Scalar> {
    let kq = qi(k);
    let engine = Engine::with_embedding(EngineMode::SugawaraCoset, emb.clone());
    let irrep = Irrep::for_weight(&emb.parent, mu)?;
    let charge = physical_charge(emb, nu, k);
    let idx = irrep
        .su2_weight_index(charge[0])
        .ok_or_else(|| Error::Unsupported(format!("charge {charge:?} is not a weight of {mu:?}")))?;
    let ctx = HwContext {
        label: format!("{mu:?};{nu:?}"),
        h: Rational::zero(),
        c: Rational::zero(),
        k: kq.clone(),
        irrep,
    };
    let v = ctx.irrep.basis_vector(idx);
    let s = engine.apply_to_hw(&coset_virasoro(emb, &kq, 0)?, &ctx, &v)?;
    let comp = s.primary_component();
    Ok(comp[idx].get(&[0; 4]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::conformal_weight;
    use crate::scalar::q;

    #[test]
    fn l0_on_primaries_is_the_sugawara_weight() {
        let su2 = AlgebraSpec::su2();
        let engine = Engine::new(EngineMode::SugawaraCoset, su2.clone());
        for tj in 0..4 {
            let k = qi(3);
            let irrep = Irrep::su2_spin(tj);
            let ctx = HwContext {
                label: String::new(),
                h: Rational::zero(),
                c: Rational::zero(),
                k: k.clone(),
                irrep,
            };
            let l0 = sugawara_mode(&su2, &k, 0).unwrap();
            let v = ctx.irrep.basis_vector(0);
            let s = engine.apply_to_hw(&l0, &ctx, &v).unwrap();
            let expect = su2.sugawara_weight(&[tj], &k).unwrap();
            assert_eq!(s.primary_component()[0], Coeff::rational(expect));
        }
    }

    #[test]
    fn abelian_zero_mode() {
        // u(1) at level 2k with J̃ = 2J³: ν²/(4k)
        let emb = EmbeddingSpec::su2_u1();
        assert_eq!(coset_l0_on_field(&emb, 2, &[2], &[0]).unwrap(), Scalar::frac(1, 2));
        assert_eq!(coset_l0_on_field(&emb, 2, &[1], &[1]).unwrap(), Scalar::frac(1, 16));
        assert_eq!(
            Scalar::from(conformal_weight(&emb, &[1], &[1], 3).unwrap()),
            coset_l0_on_field(&emb, 3, &[1], &[1]).unwrap()
        );
        let u1 = AlgebraSpec::u1();
        let k = qi(4);
        let l0 = sugawara_mode(&u1, &k, 0).unwrap();
        let e = Engine::new(EngineMode::SugawaraCoset, u1.clone());
        let irrep = Irrep {
            dim: 1,
            matrices: vec![vec![vec![Scalar::int(3)]]],
            highest_weight: vec![3],
        };
        let ctx = HwContext {
            label: String::new(),
            h: Rational::zero(),
            c: Rational::zero(),
            k,
            irrep,
        };
        let s = e.apply_to_hw(&l0, &ctx, &[Scalar::int(1)]).unwrap();
        assert_eq!(s.primary_component()[0], Coeff::rational(q(9, 8)));
    }

    #[test]
    fn l2_against_lowering_current() {
        // [L₂, J^a₋₁] acts as J^a₁ on states of level ≤ 1; on the primary both vanish,
        // so test on J^b₋₁φ: [L₂, J^a₋₁] J^b₋₁ φ = J^a₁ J^b₋₁ φ.
        let su2 = AlgebraSpec::su2();
        let k = qi(2);
        let e = Engine::new(EngineMode::SugawaraCoset, su2.clone());
        let l2 = sugawara_mode(&su2, &k, 2).unwrap();
        let ctx = HwContext {
            label: String::new(),
            h: Rational::zero(),
            c: Rational::zero(),
            k,
            irrep: Irrep::su2_spin(1),
        };
        let v = ctx.irrep.basis_vector(0);
        for a in 0..3 {
            for b in 0..3 {
                let ja = OperatorPoly::symbol(GeneratorSymbol::j(a, -1));
                let jb = OperatorPoly::symbol(GeneratorSymbol::j(b, -1));
                let comm = l2.mul(&ja).sub(&ja.mul(&l2)).mul(&jb);
                let lhs = e.apply_to_hw(&comm, &ctx, &v).unwrap();
                let rhs = e
                    .apply_to_hw(&OperatorPoly::word(vec![GeneratorSymbol::j(a, 1), GeneratorSymbol::j(b, -1)]), &ctx, &v)
                    .unwrap();
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn trivial_coset_virasoro_vanishes() {
        let emb = EmbeddingSpec::trivial(AlgebraSpec::su2());
        for n in -2..=2 {
            assert!(coset_virasoro(&emb, &qi(2), n).unwrap().is_zero());
        }
        assert!(matches!(sugawara_mode(&AlgebraSpec::su2(), &qi(1), 3), Err(Error::ModeRange(3))));
    }

    #[test]
    fn commutation_check_level_one() {
        let r = coset_commutation_check(&EmbeddingSpec::su2_u1(), 1).unwrap();
        assert!(r.is_clean(), "{r}");
        assert!(!r.checked.is_empty());
        assert!(r.skipped.contains(&(-2, -1)));
    }
}
