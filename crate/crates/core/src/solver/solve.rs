//! Exact elimination of constraint systems in (κ, τ).

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::constraints::{ConstraintSystem, RowSource};
use crate::linalg::{solve_affine, AffineSolution};
use crate::scalar::{fmt_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Unique,
    OneParameterFamily,
    Inconsistent,
    /// No nontrivial rows: every (κ, τ) is a solution.
    Underdetermined,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Unique => "unique",
            Status::OneParameterFamily => "one-parameter family",
            Status::Inconsistent => "inconsistent",
            Status::Underdetermined => "underdetermined",
        }
    }

    pub fn is_admissible(self) -> bool {
        self != Status::Inconsistent
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityResult {
    pub status: Status,
    /// Particular solution `(κ, τ)`.
    #[serde(serialize_with = "super::report::ser_rational_opt_vec")]
    pub solution: Option<Vec<Rational>>,
    /// Null-space directions of the family.
    #[serde(serialize_with = "super::report::ser_rational_vecs")]
    pub directions: Vec<Vec<Rational>>,
    /// Row residuals at the particular solution; all zero by construction.
    #[serde(serialize_with = "super::report::ser_rational_vec")]
    pub residuals: Vec<Rational>,
    pub sign_convention: String,
    pub warnings: Vec<String>,
}

impl AdmissibilityResult {
    pub fn describe(&self) -> String {
        match (&self.solution, self.status) {
            (_, Status::Inconsistent) => "inconsistent".into(),
            (_, Status::Underdetermined) => "underdetermined (no constraints)".into(),
            (Some(p), Status::Unique) => format!("unique (kappa, tau) = ({}, {})", fmt_rational(&p[0]), fmt_rational(&p[1])),
            (Some(p), Status::OneParameterFamily) => {
                let d = &self.directions[0];
                format!(
                    "family (kappa, tau) = ({}, {}) + s*({}, {})",
                    fmt_rational(&p[0]),
                    fmt_rational(&p[1]),
                    fmt_rational(&d[0]),
                    fmt_rational(&d[1])
                )
            }
            _ => self.status.name().into(),
        }
    }
}

fn convention(source: RowSource) -> String {
    match source {
        RowSource::Engine => "engine (-c)".into(),
        RowSource::ClosedFormPaper => "paper (+c)".into(),
        RowSource::ClosedFormEngineSign => "engine (-c)".into(),
    }
}

/// Gaussian elimination over Q; every reported solution is re-substituted.
pub fn solve_constraints(system: &ConstraintSystem) -> AdmissibilityResult {
    let rows: Vec<_> = system.rows.iter().filter(|r| !r.is_trivial()).collect();
    let mut result = AdmissibilityResult {
        status: Status::Underdetermined,
        solution: None,
        directions: Vec::new(),
        residuals: Vec::new(),
        sign_convention: convention(system.source),
        warnings: Vec::new(),
    };
    if rows.is_empty() {
        result.solution = Some(vec![Rational::zero(), Rational::zero()]);
        result.directions = vec![
            vec![Rational::from_integer(1.into()), Rational::zero()],
            vec![Rational::zero(), Rational::from_integer(1.into())],
        ];
        result.residuals = vec![Rational::zero(); system.rows.len()];
        return result;
    }
    let a: Vec<Vec<Rational>> = rows.iter().map(|r| vec![r.a.clone(), r.b.clone()]).collect();
    let b: Vec<Rational> = rows.iter().map(|r| -r.d.clone()).collect();
    match solve_affine(&a, &b, 2) {
        AffineSolution::Inconsistent => result.status = Status::Inconsistent,
        AffineSolution::Solutions { particular, directions } => {
            result.status = match directions.len() {
                0 => Status::Unique,
                1 => Status::OneParameterFamily,
                _ => Status::Underdetermined,
            };
            result.residuals = system.rows.iter().map(|r| r.eval(&particular[0], &particular[1])).collect();
            assert!(result.residuals.iter().all(Zero::is_zero), "elimination residual");
            for d in &directions {
                assert!(rows.iter().all(|r| (&r.a * &d[0] + &r.b * &d[1]).is_zero()));
            }
            if result.status == Status::Unique && !particular[1].is_positive() {
                result.warnings.push(format!(
                    "tau = {} is not positive; reported as a formal solution",
                    fmt_rational(&particular[1])
                ));
            }
            result.solution = Some(particular);
            result.directions = directions;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::constraints::{ConstraintRow, RowTag};
    use crate::scalar::{q, qi};

    fn tag() -> RowTag {
        RowTag {
            operator: "t".into(),
            word: String::new(),
            component: 0,
            part: "re".into(),
        }
    }

    #[test]
    fn two_row_elimination() {
        let mut s = ConstraintSystem::new("x".into(), RowSource::Engine, None);
        s.push(ConstraintRow::new(q(3, 2), qi(2), q(-9, 2), tag()));
        s.push(ConstraintRow::new(qi(2), qi(4), qi(-6), tag()));
        let r = solve_constraints(&s);
        assert_eq!(r.status, Status::Unique);
        assert_eq!(r.solution, Some(vec![qi(3), qi(0)]));
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn statuses() {
        let s = ConstraintSystem::new("x".into(), RowSource::Engine, None);
        assert_eq!(solve_constraints(&s).status, Status::Underdetermined);
        let mut s = ConstraintSystem::new("x".into(), RowSource::Engine, None);
        s.push(ConstraintRow::new(qi(0), qi(2), q(1, 2), tag()));
        let r = solve_constraints(&s);
        assert_eq!(r.status, Status::OneParameterFamily);
        assert_eq!(r.solution.unwrap()[1], q(-1, 4));
        s.push(ConstraintRow::new(qi(0), qi(1), qi(1), tag()));
        assert_eq!(solve_constraints(&s).status, Status::Inconsistent);
    }
}
