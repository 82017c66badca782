//! Constraint rows `aκ + bτ + d = 0` extracted from raising-operator actions.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::candidate::NullCandidate;
use crate::affine::{Coeff, GeneratorSymbol, OperatorPoly, Sector, StateVector};
use crate::error::{Error, Result};
use crate::lie::coset::physical_charge;
use crate::lie::{coset_central_charge, CosetFamily, CosetField, EmbeddingSpec};
use crate::scalar::{q, qi, Rational};

const PARTS: [&str; 4] = ["re", "re*r2", "im", "im*r2"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowTag {
    /// Raising operator that produced the row, e.g. `L2`, `Jt1[1]L1`.
    pub operator: String,
    /// Surviving descendant word, empty for the primary.
    pub word: String,
    /// Irrep component.
    pub component: usize,
    /// Coordinate in the `(1, √2, i, i√2)` basis.
    pub part: String,
}

impl std::fmt::Display for RowTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.operator)?;
        if !self.word.is_empty() {
            write!(f, " @{}", self.word)?;
        }
        write!(f, " [{}:{}]", self.component, self.part)
    }
}

/// `a·κ + b·τ + d = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintRow {
    #[serde(serialize_with = "super::report::ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "super::report::ser_rational")]
    pub b: Rational,
    #[serde(serialize_with = "super::report::ser_rational")]
    pub d: Rational,
    pub tag: RowTag,
}

impl ConstraintRow {
    pub fn new(a: Rational, b: Rational, d: Rational, tag: RowTag) -> Self {
        Self { a, b, d, tag }
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.d.is_zero()
    }

    pub fn eval(&self, kappa: &Rational, tau: &Rational) -> Rational {
        &self.a * kappa + &self.b * tau + &self.d
    }

    /// Scaled so the first nonzero coefficient is one.
    pub fn normalized(&self) -> [Rational; 3] {
        let v = [self.a.clone(), self.b.clone(), self.d.clone()];
        match v.iter().find(|x| !x.is_zero()) {
            Some(p) => {
                let p = p.clone();
                v.map(|x| x / &p)
            }
            None => v,
        }
    }

    /// Equal up to a nonzero rational factor.
    pub fn proportional(&self, other: &ConstraintRow) -> bool {
        self.normalized() == other.normalized()
    }
}

impl std::fmt::Display for ConstraintRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::scalar::fmt_rational as r;
        write!(f, "({})*kappa + ({})*tau + ({}) = 0", r(&self.a), r(&self.b), r(&self.d))
    }
}

/// Where a system's rows come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowSource {
    Engine,
    /// Literal closed-form rows with `+c` in the `L₂` row.
    ClosedFormPaper,
    /// Literal closed-form rows with `−c` in the `L₂` row.
    ClosedFormEngineSign,
}

impl RowSource {
    pub fn name(self) -> &'static str {
        match self {
            RowSource::Engine => "engine",
            RowSource::ClosedFormPaper => "closed-form(+c)",
            RowSource::ClosedFormEngineSign => "closed-form(-c)",
        }
    }
}

/// Raising operators used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RaisingSet {
    /// `L₂`, `L₁²`, and `J̃^b₁L₁` for subalgebra directions.
    PaperSubset,
    /// `L₁`, `L₂`, every `J^a₁`, `J^a₂`, plus the composites of the subset.
    FullClosure,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintSystem {
    pub field: String,
    pub source: RowSource,
    pub raising: Option<RaisingSet>,
    pub rows: Vec<ConstraintRow>,
}

impl ConstraintSystem {
    pub fn new(field: String, source: RowSource, raising: Option<RaisingSet>) -> Self {
        Self {
            field,
            source,
            raising,
            rows: Vec::new(),
        }
    }

    /// Append unless trivial or proportional to an existing row.
    pub fn push(&mut self, row: ConstraintRow) {
        if row.is_trivial() || self.rows.iter().any(|r| r.proportional(&row)) {
            return;
        }
        self.rows.push(row);
    }

    pub fn rows_for(&self, operator: &str) -> Vec<&ConstraintRow> {
        self.rows.iter().filter(|r| r.tag.operator == operator).collect()
    }

    /// Operators that contributed at least one nontrivial row.
    pub fn active_operators(&self) -> Vec<String> {
        let mut ops: Vec<String> = Vec::new();
        for r in &self.rows {
            if !ops.contains(&r.tag.operator) {
                ops.push(r.tag.operator.clone());
            }
        }
        ops
    }
}

fn affine_parts(x: &Coeff) -> Result<[[Rational; 3]; 4]> {
    let mut out: [[Rational; 3]; 4] = Default::default();
    for (m, s) in x.terms() {
        let slot = match m {
            [1, 0, 0, 0] => 0,
            [0, 1, 0, 0] => 1,
            [0, 0, 0, 0] => 2,
            _ => {
                return Err(Error::Unsupported(format!(
                    "constraint coefficient {x} is not affine in (kappa, tau)"
                )))
            }
        };
        for (p, v) in s.parts().into_iter().enumerate() {
            out[p][slot] += v;
        }
    }
    Ok(out)
}

/// Rows from every entry of a state that must vanish.
pub fn rows_from_state(operator: &str, state: &StateVector, system: &mut ConstraintSystem) -> Result<()> {
    for (w, v) in state.entries() {
        let word = w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
        for (component, x) in v.iter().enumerate() {
            for (p, [a, b, d]) in affine_parts(x)?.into_iter().enumerate() {
                system.push(ConstraintRow::new(
                    a,
                    b,
                    d,
                    RowTag {
                        operator: operator.to_string(),
                        word: word.clone(),
                        component,
                        part: PARTS[p].into(),
                    },
                ));
            }
        }
    }
    Ok(())
}

fn raising_operators(c: &NullCandidate, set: RaisingSet) -> Result<Vec<(String, OperatorPoly)>> {
    let l1 = c.virasoro(1)?;
    let l2 = c.virasoro(2)?;
    let mut ops = vec![("L2".to_string(), l2), ("L1L1".to_string(), l1.mul(&l1))];
    match &c.engine.embedding {
        Some(emb) => {
            for b in 0..emb.sub.dim {
                let jt = OperatorPoly::symbol(GeneratorSymbol::current(Sector::Sub, b, 1));
                ops.push((format!("Jt{}[1]L1", b + 1), jt.mul(&l1)));
            }
        }
        None => {
            for a in 0..c.engine.parent.dim {
                let j = OperatorPoly::symbol(GeneratorSymbol::j(a, 1));
                ops.push((format!("J{}[1]L1", a + 1), j.mul(&l1)));
            }
        }
    }
    if set == RaisingSet::FullClosure {
        ops.push(("L1".to_string(), l1));
        for n in [1, 2] {
            for a in 0..c.engine.parent.dim {
                ops.push((format!("J{}[{n}]", a + 1), OperatorPoly::symbol(GeneratorSymbol::j(a, n))));
            }
        }
    }
    Ok(ops)
}

/// Apply the raising operators to the candidate and collect the rows.
pub fn derive_constraints(candidate: &NullCandidate, set: RaisingSet) -> Result<ConstraintSystem> {
    let mut system = ConstraintSystem::new(candidate.label.clone(), RowSource::Engine, Some(set));
    for (name, op) in raising_operators(candidate, set)? {
        let state = candidate.act(&op)?;
        rows_from_state(&name, &state, &mut system)?;
    }
    Ok(system)
}

/// Literal closed-form rows for su(2)_k/u(1):
/// `(3κ−8)h ± c + τk`, `12h + 2κh(2h+1) + τ(C_μ − C̃_ν)` and
/// `(−6 + κ + τ + 2κh)·m` with `m` the `J³₀` eigenvalue.
pub fn closed_form_constraints(field: &CosetField, emb: &EmbeddingSpec, source: RowSource) -> Result<ConstraintSystem> {
    if emb.family != CosetFamily::Su2U1 {
        return Err(Error::Unsupported("closed-form rows exist for su2_u1 only".into()));
    }
    let sign = match source {
        RowSource::ClosedFormPaper => qi(1),
        RowSource::ClosedFormEngineSign => qi(-1),
        RowSource::Engine => return Err(Error::InvalidParameter("closed-form source expected".into())),
    };
    let h = &field.h;
    let k = qi(field.level);
    let c = coset_central_charge(emb, field.level);
    let tag = |op: &str| RowTag {
        operator: op.into(),
        word: String::new(),
        component: 0,
        part: "re".into(),
    };
    let mut s = ConstraintSystem::new(field.label(), source, None);
    s.push(ConstraintRow::new(qi(3) * h, k, qi(-8) * h + sign * c, tag("L2")));
    s.push(ConstraintRow::new(
        qi(2) * h * (qi(2) * h + qi(1)),
        &field.casimir_mu - &field.casimir_nu,
        qi(12) * h,
        tag("L1L1"),
    ));
    let charge = physical_charge(emb, &field.nu, field.level)[0];
    let m = if field.mu[0] == 0 { Rational::zero() } else { q(charge, 2) };
    s.push(ConstraintRow::new(
        &m * (qi(1) + qi(2) * h),
        m.clone(),
        &m * qi(-6),
        tag("Jt1[1]L1"),
    ));
    Ok(s)
}

/// Whether `(κ, τ)` satisfies every row exactly.
pub fn satisfies(system: &ConstraintSystem, kappa: &Rational, tau: &Rational) -> bool {
    system.rows.iter().all(|r| r.eval(kappa, tau).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::EngineMode;
    use crate::solver::candidate::{build_null_candidate, Normalization};

    fn field(mu: i64, nu: i64, k: i64) -> CosetField {
        CosetField::new(&EmbeddingSpec::su2_u1(), &[mu], &[nu], k).unwrap()
    }

    fn engine_rows(mu: i64, nu: i64, k: i64) -> ConstraintSystem {
        let emb = EmbeddingSpec::su2_u1();
        let c = build_null_candidate(&field(mu, nu, k), &emb, EngineMode::Semidirect, Normalization::Orthonormal).unwrap();
        derive_constraints(&c, RaisingSet::PaperSubset).unwrap()
    }

    #[test]
    fn l2_row_for_two_zero() {
        let s = engine_rows(2, 0, 2);
        let r = s.rows_for("L2");
        assert_eq!(r.len(), 1);
        assert!(r[0].proportional(&ConstraintRow::new(q(3, 2), qi(2), q(-9, 2), r[0].tag.clone())));
        let r = s.rows_for("L1L1");
        assert!(r[0].proportional(&ConstraintRow::new(qi(2), qi(4), qi(-6), r[0].tag.clone())));
        assert!(s.rows_for("Jt1[1]L1").is_empty());
    }

    #[test]
    fn l1_squared_row_matches_hand_evaluation() {
        // −12h + 2κh(2h+1) + τ(C_μ − ν²/2), derived by commuting L₁ twice through ψ.
        for (mu, nu, k) in [(1, 1, 2), (2, 0, 2), (1, 1, 3), (2, 2, 3), (3, 1, 3), (1, 1, 1)] {
            let f = field(mu, nu, k);
            let emb = EmbeddingSpec::su2_u1();
            let c = build_null_candidate(&f, &emb, EngineMode::Semidirect, Normalization::Orthonormal).unwrap();
            let rows = crate::solver::classify::operator_rows(&c, "L1L1").unwrap();
            let h = f.h.clone();
            let ch = physical_charge(&EmbeddingSpec::su2_u1(), &f.nu, k)[0];
            let expect = ConstraintRow::new(
                qi(2) * &h * (qi(2) * &h + qi(1)),
                &f.casimir_mu - q(ch * ch, 2),
                qi(-12) * &h,
                rows[0].tag.clone(),
            );
            assert_eq!(rows.len(), 1);
            assert!(rows[0].proportional(&expect), "({mu},{nu}) k={k}");
        }
    }

    #[test]
    fn closed_form_rows() {
        let emb = EmbeddingSpec::su2_u1();
        let s = closed_form_constraints(&field(1, 1, 2), &emb, RowSource::ClosedFormPaper).unwrap();
        // (3κ−8)/16 + 1/2 + 2τ
        assert_eq!(s.rows[0].normalized(), [qi(1), q(32, 3), qi(0)]);
        let s = closed_form_constraints(&field(0, 0, 2), &emb, RowSource::ClosedFormPaper).unwrap();
        assert_eq!(s.rows.len(), 1);
        assert_eq!((s.rows[0].a.clone(), s.rows[0].b.clone(), s.rows[0].d.clone()), (qi(0), qi(2), q(1, 2)));
        assert!(s.rows_for("Jt1[1]L1").is_empty());
    }
}
