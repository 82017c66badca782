//! Level-two null candidates.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine::{coset_virasoro, sugawara_mode, Coeff, Engine, EngineMode, GeneratorSymbol, HwContext, OperatorPoly, Sector, StateVector, Var};
use crate::error::{Error, Result};
use crate::lie::coset::{physical_charge, sugawara_difference};
use crate::lie::{coset_central_charge, AlgebraSpec, CosetFamily, CosetField, EmbeddingSpec, Irrep};
use crate::linalg::QMatrix;
use crate::scalar::{qi, Rational, Scalar};

/// Normalization of the group term in the candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `Σ_{a ∈ C} J^a J^a` over a complement basis orthonormal for the form.
    Orthonormal,
    /// `Σ_ab K^{-1}_ab J^a J^b − Σ_bc K̃^{-1}_bc J̃^b J̃^c`, form-weighted sums.
    FormDifference,
}

/// `ψ = (−2L₋₂ + (κ/2)L₋₁² + (τ/2) Σ W_ab J^a₋₁ J^b₋₁) φ` on one realized vector.
#[derive(Clone, Debug)]
pub struct NullCandidate {
    pub label: String,
    pub field: Option<CosetField>,
    pub mode: EngineMode,
    pub normalization: Normalization,
    pub engine: Engine,
    pub context: HwContext,
    /// Index of the realized weight vector in the irrep basis.
    pub vector_index: usize,
    pub weights: QMatrix,
    pub operator: OperatorPoly,
    pub state: StateVector,
}

impl NullCandidate {
    pub fn vector(&self) -> Vec<Scalar> {
        self.context.irrep.basis_vector(self.vector_index)
    }

    pub fn virasoro(&self, n: i64) -> Result<OperatorPoly> {
        virasoro_mode(&self.engine, &self.context.k, n)
    }

    /// Apply an operator to the candidate state.
    pub fn act(&self, p: &OperatorPoly) -> Result<StateVector> {
        self.engine.act(p, &self.state, &self.context)
    }

    /// Candidate state with τ set to zero.
    pub fn tau_zero_state(&self) -> StateVector {
        let mut s = self.state.clone();
        s.substitute(Var::Tau, &Rational::zero());
        s
    }
}

/// `L_n` in the engine's mode: a symbol in semidirect mode, a Sugawara bilinear otherwise.
pub fn virasoro_mode(engine: &Engine, k: &Rational, n: i64) -> Result<OperatorPoly> {
    match (engine.mode, &engine.embedding) {
        (EngineMode::Semidirect, Some(_)) => Ok(OperatorPoly::symbol(GeneratorSymbol::virasoro(Sector::Coset, n))),
        (EngineMode::Semidirect, None) => Ok(OperatorPoly::symbol(GeneratorSymbol::l(n))),
        (EngineMode::SugawaraCoset, Some(emb)) => coset_virasoro(emb, k, n),
        (EngineMode::SugawaraCoset, None) => sugawara_mode(&engine.parent, k, n),
    }
}

/// Group-term weights `W_ab` for the chosen normalization.
pub fn group_weights(emb: &EmbeddingSpec, normalization: Normalization) -> Result<QMatrix> {
    match normalization {
        Normalization::Orthonormal => emb.complement_weights(),
        Normalization::FormDifference => {
            let sub = emb.sub_weights()?;
            Ok(emb
                .parent
                .form_inv
                .iter()
                .zip(&sub)
                .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
                .collect())
        }
    }
}

fn candidate_operator(engine: &Engine, k: &Rational, weights: &QMatrix) -> Result<OperatorPoly> {
    let kappa = Coeff::var(Var::Kappa);
    let tau = Coeff::var(Var::Tau);
    let l1 = virasoro_mode(engine, k, -1)?;
    let mut psi = virasoro_mode(engine, k, -2)?.scale(&Scalar::int(-2));
    psi = psi.add(&l1.mul(&l1).scale_coeff(&kappa.scale(&Scalar::frac(1, 2))));
    let half_tau = tau.scale(&Scalar::frac(1, 2));
    for (a, row) in weights.iter().enumerate() {
        for (b, w) in row.iter().enumerate() {
            if !w.is_zero() {
                psi.add_term(
                    vec![GeneratorSymbol::j(a, -1), GeneratorSymbol::j(b, -1)],
                    half_tau.scale(&Scalar::from(w.clone())),
                );
            }
        }
    }
    Ok(psi)
}

/// Index of the weight vector realizing a coset label inside the parent irrep.
pub fn realizing_vector(emb: &EmbeddingSpec, field: &CosetField, irrep: &Irrep) -> Result<usize> {
    match emb.family {
        CosetFamily::Su2U1 => {
            let charge = physical_charge(emb, &field.nu, field.level)[0];
            irrep.su2_weight_index(charge).ok_or_else(|| {
                Error::Unsupported(format!(
                    "representative {} not realizable: charge {charge} is not a weight of the spin-{}/2 irrep",
                    field.label(),
                    field.mu[0]
                ))
            })
        }
        _ => Ok(0),
    }
}

/// Build the candidate for a coset field in the given engine mode.
pub fn build_null_candidate(
    field: &CosetField,
    emb: &EmbeddingSpec,
    mode: EngineMode,
    normalization: Normalization,
) -> Result<NullCandidate> {
    if mode == EngineMode::SugawaraCoset && emb.family == CosetFamily::Custom {
        return Err(Error::Unsupported(format!(
            "embedding {} in sugawara-coset mode",
            emb.name
        )));
    }
    let irrep = Irrep::for_weight(&emb.parent, &field.mu)?;
    let vector_index = realizing_vector(emb, field, &irrep)?;
    let charge = physical_charge(emb, &field.nu, field.level);
    let h = match emb.family {
        CosetFamily::Su2U1 => sugawara_difference(emb, &field.mu, &charge, field.level)?,
        _ => field.h.clone(),
    };
    let k = qi(field.level);
    let context = HwContext {
        label: field.label(),
        h,
        c: coset_central_charge(emb, field.level),
        k: k.clone(),
        irrep,
    };
    let engine = Engine::with_embedding(mode, emb.clone());
    let weights = group_weights(emb, normalization)?;
    let operator = candidate_operator(&engine, &k, &weights)?;
    let state = engine.apply_to_hw(&operator, &context, &context.irrep.basis_vector(vector_index))?;
    Ok(NullCandidate {
        label: field.label(),
        field: Some(field.clone()),
        mode,
        normalization,
        engine,
        context,
        vector_index,
        weights,
        operator,
        state,
    })
}

/// WZNW candidate: the group term runs over the whole algebra with `K^{-1}` weights.
pub fn build_wznw_candidate(spec: &AlgebraSpec, k: i64, weight: &[i64]) -> Result<NullCandidate> {
    if k < 1 {
        return Err(Error::InvalidParameter(format!("level must be >= 1, got {k}")));
    }
    let kq = qi(k);
    let irrep = Irrep::for_weight(spec, weight)?;
    let context = HwContext {
        label: format!("{}_{k} {:?}", spec.name, weight),
        h: spec.sugawara_weight(weight, &kq)?,
        c: spec.wznw_central_charge(&kq),
        k: kq.clone(),
        irrep,
    };
    let engine = Engine::new(EngineMode::Semidirect, spec.clone());
    let weights = spec.form_inv.clone();
    let operator = candidate_operator(&engine, &kq, &weights)?;
    let state = engine.apply_to_hw(&operator, &context, &context.irrep.basis_vector(0))?;
    Ok(NullCandidate {
        label: context.label.clone(),
        field: None,
        mode: EngineMode::Semidirect,
        normalization: Normalization::FormDifference,
        engine,
        context,
        vector_index: 0,
        weights,
        operator,
        state,
    })
}

/// Cartan–Weyl form of the su(2) complement sum: `J⁺J⁻ + J⁻J⁺` with
/// `J^± = (J¹ ± iJ²)/√2` equals `J¹J¹ + J²J²` at any pair of modes.
pub fn cartan_weyl_complement(n: i64, m: i64) -> OperatorPoly {
    let r = Scalar::sqrt2().inv().expect("nonzero");
    let i = Scalar::i();
    let plus = |n| {
        let mut p = OperatorPoly::term(vec![GeneratorSymbol::j(0, n)], Coeff::constant(r.clone()));
        p.add_term(vec![GeneratorSymbol::j(1, n)], Coeff::constant(&r * &i));
        p
    };
    let minus = |n| {
        let mut p = OperatorPoly::term(vec![GeneratorSymbol::j(0, n)], Coeff::constant(r.clone()));
        p.add_term(vec![GeneratorSymbol::j(1, n)], Coeff::constant(-&(&r * &i)));
        p
    };
    plus(n).mul(&minus(m)).add(&minus(n).mul(&plus(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn field(mu: i64, nu: i64, k: i64) -> CosetField {
        CosetField::new(&EmbeddingSpec::su2_u1(), &[mu], &[nu], k).unwrap()
    }

    #[test]
    fn candidate_has_three_term_groups() {
        let emb = EmbeddingSpec::su2_u1();
        let c = build_null_candidate(&field(2, 0, 2), &emb, EngineMode::Semidirect, Normalization::Orthonormal).unwrap();
        let words: Vec<String> = c
            .operator
            .terms()
            .map(|(w, _)| w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        assert_eq!(words, vec!["Lc[-2]", "Lc[-1] Lc[-1]", "J1[-1] J1[-1]", "J2[-1] J2[-1]"]);
    }

    #[test]
    fn normalizations_agree_on_su2_u1() {
        let emb = EmbeddingSpec::su2_u1();
        assert_eq!(
            group_weights(&emb, Normalization::Orthonormal).unwrap(),
            group_weights(&emb, Normalization::FormDifference).unwrap()
        );
    }

    #[test]
    fn cartan_weyl_sum_is_real_complement_sum() {
        let e = Engine::new(EngineMode::Semidirect, AlgebraSpec::su2());
        let cw = e.normal_order(&cartan_weyl_complement(-1, -1)).unwrap();
        let mut direct = OperatorPoly::word(vec![GeneratorSymbol::j(0, -1), GeneratorSymbol::j(0, -1)]);
        direct.add_term(vec![GeneratorSymbol::j(1, -1), GeneratorSymbol::j(1, -1)], Coeff::one());
        assert_eq!(cw, direct);
    }

    #[test]
    fn unrealizable_representative() {
        let emb = EmbeddingSpec::su2_u1();
        let r = build_null_candidate(&field(0, 2, 2), &emb, EngineMode::Semidirect, Normalization::Orthonormal);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn tau_zero_is_a_virasoro_candidate() {
        // ψ|τ=0 = −2(L₋₂ − (κ/4)L₋₁²)φ
        let emb = EmbeddingSpec::su2_u1();
        let c = build_null_candidate(&field(2, 0, 2), &emb, EngineMode::Semidirect, Normalization::Orthonormal).unwrap();
        let s = c.tau_zero_state();
        let mut vir = OperatorPoly::term(vec![GeneratorSymbol::virasoro(Sector::Coset, -2)], Coeff::one());
        vir.add_term(
            vec![GeneratorSymbol::virasoro(Sector::Coset, -1), GeneratorSymbol::virasoro(Sector::Coset, -1)],
            Coeff::var(Var::Kappa).scale(&Scalar::frac(-1, 4)),
        );
        let expect = c.engine.apply_to_hw(&vir.scale(&Scalar::int(-2)), &c.context, &c.vector()).unwrap();
        assert_eq!(s, expect);
        assert_eq!(c.context.h, q(1, 2));
    }
}
