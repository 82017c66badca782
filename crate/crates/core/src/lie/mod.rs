//! Finite-dimensional Lie algebra data and coset bookkeeping.
//!
//! Basis conventions: `[t_a, t_b] = i Σ_c f_abc t_c`, with the invariant form
//! `K_ab` stored explicitly. Built-ins are normalized so that long roots have
//! length² = 2; `K` need not be the identity in the chosen basis.

pub mod coset;
pub mod irrep;

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{invert, QMatrix};
use crate::scalar::{fmt_rational, parse_rational, q, qi, Rational};

pub use coset::{
    canonical_representative, conformal_weight, coset_central_charge, enumerate_fields,
    CosetFamily, CosetField, EmbeddingSpec, SimpleCurrentOrbit,
};
pub use irrep::Irrep;

/// A finite-dimensional Lie algebra given by structure constants and an invariant form.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub rank: usize,
    f: Vec<Rational>,
    pub form: QMatrix,
    pub form_inv: QMatrix,
    pub dual_coxeter: Rational,
    /// Quadratic form on Dynkin labels: `(λ, λ') = λᵀ G λ'`.
    pub weyl_quadratic: QMatrix,
}

impl AlgebraSpec {
    /// Assemble and validate. Every structural identity must hold exactly.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        rank: usize,
        f_entries: &[(usize, usize, usize, Rational)],
        form: QMatrix,
        dual_coxeter: Rational,
        weyl_quadratic: Option<QMatrix>,
    ) -> Result<Self> {
        let name = name.into();
        let mut f = vec![Rational::zero(); dim * dim * dim];
        for (a, b, c, v) in f_entries {
            if *a >= dim || *b >= dim || *c >= dim {
                return Err(Error::Parse {
                    field: "f".into(),
                    message: format!("index ({}, {}, {}) out of range 1..={dim}", a + 1, b + 1, c + 1),
                });
            }
            f[(a * dim + b) * dim + c] = v.clone();
        }
        if form.len() != dim || form.iter().any(|r| r.len() != dim) {
            return Err(Error::Parse {
                field: "form".into(),
                message: format!("expected a {dim}x{dim} matrix"),
            });
        }
        let weyl_quadratic = match weyl_quadratic {
            Some(g) => {
                if g.len() != rank || g.iter().any(|r| r.len() != rank) {
                    return Err(Error::Parse {
                        field: "weyl_quadratic".into(),
                        message: format!("expected a {rank}x{rank} matrix"),
                    });
                }
                g
            }
            None => crate::linalg::identity(rank),
        };
        let form_inv = invert(&form).map_err(|_| Error::Validation {
            identity: "form invertibility".into(),
            indices: "K".into(),
            residual: "singular".into(),
        })?;
        let spec = Self {
            name,
            dim,
            rank,
            f,
            form,
            form_inv,
            dual_coxeter,
            weyl_quadratic,
        };
        spec.validate_structure().into_result()?;
        if spec.is_abelian() && !spec.dual_coxeter.is_zero() {
            return Err(Error::Validation {
                identity: "abelian dual Coxeter".into(),
                indices: "h_dual".into(),
                residual: fmt_rational(&spec.dual_coxeter),
            });
        }
        Ok(spec)
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> &Rational {
        &self.f[(a * self.dim + b) * self.dim + c]
    }

    pub fn is_abelian(&self) -> bool {
        self.f.iter().all(Zero::is_zero)
    }

    /// Built-in algebras: `su2`, `su3`, `u1`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "su2" => Ok(Self::su2()),
            "su3" => Ok(Self::su3()),
            "u1" => Ok(Self::u1()),
            other => Err(Error::Unsupported(format!("no built-in algebra named {other:?}"))),
        }
    }

    /// su(2) in the spin basis: `f_abc = ε_abc`, `K = δ/2`, `h^∨ = 2`.
    pub fn su2() -> Self {
        let mut f = Vec::new();
        for (a, b, c, s) in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1), (1, 0, 2, -1), (2, 1, 0, -1), (0, 2, 1, -1)] {
            f.push((a, b, c, qi(s)));
        }
        let form = diag(&[q(1, 2), q(1, 2), q(1, 2)]);
        Self::new("su2", 3, 1, &f, form, qi(2), Some(vec![vec![q(1, 2)]]))
            .expect("su2 built-in is valid")
    }

    /// su(3) in the Gell-Mann basis `t = λ/2`, with the eighth generator rescaled by √3
    /// so that every structure constant is rational. `K = δ/2` except `K_88 = 3/2`.
    pub fn su3() -> Self {
        let mut f = Vec::new();
        let mut push_total = |i: usize, j: usize, k: usize, v: Rational| {
            // all permutations of a totally antisymmetric triple (1-based input)
            let (i, j, k) = (i - 1, j - 1, k - 1);
            for (a, b, c, s) in [(i, j, k, 1), (j, k, i, 1), (k, i, j, 1), (j, i, k, -1), (i, k, j, -1), (k, j, i, -1)] {
                f.push((a, b, c, &v * qi(s)));
            }
        };
        push_total(1, 2, 3, qi(1));
        push_total(1, 4, 7, q(1, 2));
        push_total(1, 6, 5, q(1, 2));
        push_total(2, 4, 6, q(1, 2));
        push_total(2, 5, 7, q(1, 2));
        push_total(3, 4, 5, q(1, 2));
        push_total(3, 7, 6, q(1, 2));
        // triples through the rescaled eighth generator: output slot carries 1/√3,
        // input slots carry √3 relative to the orthonormal values √3/2
        for (x, y) in [(4usize, 5usize), (6, 7)] {
            let (x, y) = (x - 1, y - 1);
            f.push((x, y, 7, q(1, 2)));
            f.push((y, x, 7, q(-1, 2)));
            f.push((7, x, y, q(3, 2)));
            f.push((x, 7, y, q(-3, 2)));
            f.push((7, y, x, q(-3, 2)));
            f.push((y, 7, x, q(3, 2)));
        }
        let mut d = vec![q(1, 2); 8];
        d[7] = q(3, 2);
        let weyl = vec![vec![q(2, 3), q(1, 3)], vec![q(1, 3), q(2, 3)]];
        Self::new("su3", 8, 2, &f, diag(&d), qi(3), Some(weyl)).expect("su3 built-in is valid")
    }

    /// u(1): one generator, unit form, zero dual Coxeter number.
    pub fn u1() -> Self {
        Self::new("u1", 1, 1, &[], vec![vec![qi(1)]], qi(0), Some(vec![vec![qi(1)]]))
            .expect("u1 built-in is valid")
    }

    /// Load from a TOML document, or a built-in name.
    pub fn load(source: &str) -> Result<Self> {
        let trimmed = source.trim();
        if matches!(trimmed, "su2" | "su3" | "u1") {
            return Self::builtin(trimmed);
        }
        let doc: toml::Table = trimmed.parse().map_err(|e: toml::de::Error| Error::Parse {
            field: "document".into(),
            message: e.to_string().trim().to_string(),
        })?;
        let name = doc
            .get("name")
            .and_then(|v| v.as_str())
            .ok_or_else(|| missing("name"))?;
        let dim = get_usize(&doc, "dim")?;
        let rank = get_usize(&doc, "rank")?;
        let h_dual = match doc.get("h_dual").ok_or_else(|| missing("h_dual"))? {
            toml::Value::String(s) => parse_field(s, "h_dual")?,
            toml::Value::Integer(i) => qi(*i),
            _ => return Err(bad("h_dual", "expected a rational string or integer")),
        };
        let mut entries = Vec::new();
        let f = doc.get("f").and_then(|v| v.as_array()).ok_or_else(|| missing("f"))?;
        for (n, e) in f.iter().enumerate() {
            let field = format!("f[{n}]");
            let arr = e
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| bad(&field, "expected [a, b, c, \"p/q\"]"))?;
            let mut idx = [0usize; 3];
            for (slot, v) in idx.iter_mut().zip(arr) {
                let i = v.as_integer().filter(|&i| i >= 1).ok_or_else(|| bad(&field, "indices are 1-based integers"))?;
                *slot = i as usize - 1;
            }
            let val = value_rational(&arr[3], &field)?;
            entries.push((idx[0], idx[1], idx[2], val));
        }
        let form = get_matrix(&doc, "form")?.ok_or_else(|| missing("form"))?;
        let weyl = get_matrix(&doc, "weyl_quadratic")?;
        Self::new(name, dim, rank, &entries, form, h_dual, weyl)
    }

    /// Residuals of antisymmetry, Jacobi and form symmetry; nonzero entries only.
    pub fn validate_structure(&self) -> StructureReport {
        let n = self.dim;
        let mut report = StructureReport::default();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let r = self.f(a, b, c) + self.f(b, a, c);
                    if !r.is_zero() {
                        report.antisymmetry.push(Residual::new(vec![a, b, c], r));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let mut s = Rational::zero();
                        for e in 0..n {
                            s += self.f(a, b, e) * self.f(e, c, d)
                                + self.f(b, c, e) * self.f(e, a, d)
                                + self.f(c, a, e) * self.f(e, b, d);
                        }
                        if !s.is_zero() {
                            report.jacobi.push(Residual::new(vec![a, b, c, d], s));
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let r = &self.form[a][b] - &self.form[b][a];
                if !r.is_zero() {
                    report.form_symmetry.push(Residual::new(vec![a, b], r));
                }
            }
        }
        report
    }

    /// Weyl vector in Dynkin labels: all ones for semisimple, zero for abelian.
    pub fn rho(&self) -> Vec<Rational> {
        let v = if self.is_abelian() { Rational::zero() } else { Rational::one() };
        vec![v; self.rank]
    }

    /// `(λ, λ + 2ρ)` in the normalization fixed by the spec's quadratic form.
    pub fn casimir_eigenvalue(&self, weight: &[i64]) -> Result<Rational> {
        if weight.len() != self.rank {
            return Err(Error::WeightDimension {
                expected: self.rank,
                got: weight.len(),
            });
        }
        let lam: Vec<Rational> = weight.iter().map(|&x| qi(x)).collect();
        let shifted: Vec<Rational> = lam
            .iter()
            .zip(self.rho())
            .map(|(l, r)| l + qi(2) * r)
            .collect();
        Ok(self.pair(&lam, &shifted))
    }

    fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += &x[i] * &self.weyl_quadratic[i][j] * &y[j];
            }
        }
        s
    }

    /// Sugawara central charge `k dim / (k + h^∨)`; `dim` for abelian algebras.
    pub fn wznw_central_charge(&self, k: &Rational) -> Rational {
        let dim = qi(self.dim as i64);
        if self.is_abelian() {
            dim
        } else {
            k * dim / (k + &self.dual_coxeter)
        }
    }

    /// `(λ, λ+2ρ) / (2(k + h^∨))`.
    pub fn sugawara_weight(&self, weight: &[i64], k: &Rational) -> Result<Rational> {
        Ok(self.casimir_eigenvalue(weight)? / (qi(2) * (k + &self.dual_coxeter)))
    }
}

fn diag(d: &[Rational]) -> QMatrix {
    (0..d.len())
        .map(|i| {
            (0..d.len())
                .map(|j| if i == j { d[i].clone() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

fn missing(field: &str) -> Error {
    bad(field, "missing")
}

fn bad(field: &str, message: &str) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

fn parse_field(s: &str, field: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| bad(field, &format!("cannot parse {s:?} as p/q")))
}

fn value_rational(v: &toml::Value, field: &str) -> Result<Rational> {
    match v {
        toml::Value::String(s) => parse_field(s, field),
        toml::Value::Integer(i) => Ok(qi(*i)),
        _ => Err(bad(field, "expected a \"p/q\" string (floats are rejected)")),
    }
}

fn get_usize(doc: &toml::Table, field: &str) -> Result<usize> {
    doc.get(field)
        .ok_or_else(|| missing(field))?
        .as_integer()
        .filter(|&i| i >= 0)
        .map(|i| i as usize)
        .ok_or_else(|| bad(field, "expected a non-negative integer"))
}

fn get_matrix(doc: &toml::Table, field: &str) -> Result<Option<QMatrix>> {
    let Some(v) = doc.get(field) else {
        return Ok(None);
    };
    let rows = v.as_array().ok_or_else(|| bad(field, "expected an array of rows"))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row
                .as_array()
                .ok_or_else(|| bad(&format!("{field}[{i}]"), "expected an array"))?;
            row.iter()
                .enumerate()
                .map(|(j, x)| value_rational(x, &format!("{field}[{i}][{j}]")))
                .collect()
        })
        .collect::<Result<QMatrix>>()
        .map(Some)
}

/// One nonzero residual at a basis-index tuple (0-based).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub indices: Vec<usize>,
    #[serde(serialize_with = "crate::solver::report::ser_rational")]
    pub value: Rational,
}

impl Residual {
    fn new(indices: Vec<usize>, value: Rational) -> Self {
        Self { indices, value }
    }
}

/// Exact residual report; empty lists mean the identity holds everywhere.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StructureReport {
    pub antisymmetry: Vec<Residual>,
    pub jacobi: Vec<Residual>,
    pub form_symmetry: Vec<Residual>,
}

impl StructureReport {
    pub fn is_clean(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty() && self.form_symmetry.is_empty()
    }

    fn into_result(self) -> Result<()> {
        let fail = |identity: &str, r: &Residual| Error::Validation {
            identity: identity.into(),
            indices: format!("{:?}", r.indices.iter().map(|i| i + 1).collect::<Vec<_>>()),
            residual: fmt_rational(&r.value),
        };
        if let Some(r) = self.antisymmetry.first() {
            return Err(fail("antisymmetry", r));
        }
        if let Some(r) = self.form_symmetry.first() {
            return Err(fail("form symmetry", r));
        }
        if let Some(r) = self.jacobi.first() {
            return Err(fail("jacobi", r));
        }
        Ok(())
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "antisymmetry residuals: {}", self.antisymmetry.len())?;
        writeln!(f, "jacobi residuals: {}", self.jacobi.len())?;
        write!(f, "form symmetry residuals: {}", self.form_symmetry.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn builtins_have_expected_shape() {
        let su2 = AlgebraSpec::builtin("su2").unwrap();
        assert_eq!((su2.dim, su2.rank), (3, 1));
        assert_eq!(su2.dual_coxeter, qi(2));
        let u1 = AlgebraSpec::builtin("u1").unwrap();
        assert_eq!(u1.dim, 1);
        assert!(u1.is_abelian());
        assert_eq!(u1.dual_coxeter, qi(0));
        for spec in [su2, u1, AlgebraSpec::su3()] {
            assert!(spec.validate_structure().is_clean(), "{}", spec.name);
        }
    }

    #[test]
    fn load_document_and_reject_broken_antisymmetry() {
        let doc = r#"
            name = "so3"
            dim = 3
            rank = 1
            h_dual = "2"
            f = [[1,2,3,"1"],[2,3,1,"1"],[3,1,2,"1"],[2,1,3,"-1"],[3,2,1,"-1"],[1,3,2,"-1"]]
            form = [["1/2","0","0"],["0","1/2","0"],["0","0","1/2"]]
            weyl_quadratic = [["1/2"]]
        "#;
        let spec = AlgebraSpec::load(doc).unwrap();
        assert_eq!(spec, AlgebraSpec { name: "so3".into(), ..AlgebraSpec::su2() });

        let broken = doc.replace(r#"[2,1,3,"-1"]"#, r#"[2,1,3,"1"]"#);
        match AlgebraSpec::load(&broken) {
            Err(Error::Validation { identity, .. }) => assert_eq!(identity, "antisymmetry"),
            other => panic!("expected antisymmetry failure, got {other:?}"),
        }
        let float = doc.replace(r#"h_dual = "2""#, "h_dual = 2.0");
        assert!(matches!(AlgebraSpec::load(&float), Err(Error::Parse { .. })));
        assert!(matches!(AlgebraSpec::load("dim = ["), Err(Error::Parse { .. })));
    }

    #[test]
    fn perturbed_entry_shows_up_in_jacobi() {
        // Oracle: recompute the cyclic Jacobi sum with an independent triple loop.
        let base = AlgebraSpec::su2();
        let mut spec = base.clone();
        // [t1, t2] = i(t3 + t1): still antisymmetric, no longer a Lie bracket
        spec.f[(0 * 3 + 1) * 3 + 0] = qi(1);
        spec.f[(1 * 3 + 0) * 3 + 0] = qi(-1);
        let report = spec.validate_structure();
        assert!(report.antisymmetry.is_empty());
        assert!(!report.jacobi.is_empty());
        let f = |a: usize, b: usize, c: usize| spec.f[(a * 3 + b) * 3 + c].clone();
        for r in &report.jacobi {
            let [a, b, c, d] = [r.indices[0], r.indices[1], r.indices[2], r.indices[3]];
            let mut s = Rational::zero();
            for e in 0..3 {
                s += f(a, b, e) * f(e, c, d) + f(b, c, e) * f(e, a, d) + f(c, a, e) * f(e, b, d);
            }
            assert_eq!(s, r.value);
        }
        // the perturbed pair (1,2) must appear among the failing tuples
        assert!(report.jacobi.iter().any(|r| r.indices[..2].contains(&0) && r.indices[..2].contains(&1)));
    }

    #[test]
    fn casimirs() {
        let su2 = AlgebraSpec::su2();
        let u1 = AlgebraSpec::u1();
        assert_eq!(u1.casimir_eigenvalue(&[2]).unwrap(), qi(4));
        assert_eq!(su2.casimir_eigenvalue(&[0]).unwrap(), qi(0));
        assert_eq!(su2.casimir_eigenvalue(&[2]).unwrap(), qi(4));
        assert!(matches!(su2.casimir_eigenvalue(&[1, 1]), Err(Error::WeightDimension { .. })));
        assert_eq!(AlgebraSpec::su3().casimir_eigenvalue(&[1, 1]).unwrap(), qi(6));
    }

    #[test]
    fn adjoint_casimir_matches_matrix_trace() {
        // Oracle: Σ K^{-1}_ab (ad t_a)(ad t_b) in the adjoint matrices built from f,
        // trace divided by the dimension.
        for (spec, top) in [(AlgebraSpec::su2(), vec![2]), (AlgebraSpec::su3(), vec![1, 1])] {
            let n = spec.dim;
            let ad = |a: usize| -> Vec<Vec<Scalar>> {
                (0..n)
                    .map(|c| (0..n).map(|b| &Scalar::i() * &Scalar::from(spec.f(a, b, c).clone())).collect())
                    .collect()
            };
            let mut tr = Scalar::zero();
            for a in 0..n {
                for b in 0..n {
                    let w = Scalar::from(spec.form_inv[a][b].clone());
                    if w.is_zero() {
                        continue;
                    }
                    let (x, y) = (ad(a), ad(b));
                    for i in 0..n {
                        for j in 0..n {
                            tr += &(&w * &(&x[i][j] * &y[j][i]));
                        }
                    }
                }
            }
            let c = tr.scale(&q(1, n as i64));
            assert_eq!(c, Scalar::from(spec.casimir_eigenvalue(&top).unwrap()), "{}", spec.name);
        }
    }

    #[test]
    fn wznw_central_charges() {
        let su2 = AlgebraSpec::su2();
        assert_eq!(su2.wznw_central_charge(&qi(2)), q(3, 2));
        assert_eq!(su2.wznw_central_charge(&qi(1)), qi(1));
        for k in 1..5 {
            assert_eq!(AlgebraSpec::u1().wznw_central_charge(&qi(k)), qi(1));
        }
    }
}
