//! Subalgebra embeddings, coset primary labels and simple-current orbits.

use num_traits::{One, Zero};
use serde::Serialize;

use super::AlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::{invert, QMatrix};
use crate::scalar::{fmt_rational, qi, Rational};

/// Coset families with built-in selection and identification rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CosetFamily {
    /// su(2)_k / u(1), the parafermion family.
    Su2U1,
    /// G/G: the subalgebra is the whole algebra.
    Trivial,
    /// No built-in selection data.
    Custom,
}

/// Embedding `𝔞 ⊂ 𝔤` with `J̃^b = Σ_a m^b_a J^a` and a K-orthogonal complement.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingSpec {
    pub name: String,
    pub parent: AlgebraSpec,
    pub sub: AlgebraSpec,
    /// `dim(sub) × dim(parent)`, row `b` holds `m^b_a`.
    pub coefficients: QMatrix,
    /// Complement directions in the parent basis, one per row.
    pub complement: QMatrix,
    /// Embedding index: `K(J̃^b, J̃^c) = index · K_sub(b, c)`.
    pub index: Rational,
    pub family: CosetFamily,
}

impl EmbeddingSpec {
    pub fn new(
        name: impl Into<String>,
        parent: AlgebraSpec,
        sub: AlgebraSpec,
        coefficients: QMatrix,
        complement: QMatrix,
        family: CosetFamily,
    ) -> Result<Self> {
        let (n, s) = (parent.dim, sub.dim);
        if coefficients.len() != s || coefficients.iter().any(|r| r.len() != n) {
            return Err(Error::Parse {
                field: "coefficients".into(),
                message: format!("expected {s}x{n}"),
            });
        }
        if complement.len() + s != n || complement.iter().any(|r| r.len() != n) {
            return Err(Error::Validation {
                identity: "complement count".into(),
                indices: format!("{} + {s} != {n}", complement.len()),
                residual: "dimension".into(),
            });
        }
        // closure onto the image: Σ m^b_a m^c_a' f_{a a' e} = Σ_d f̃_{bcd} m^d_e
        for b in 0..s {
            for c in 0..s {
                for e in 0..n {
                    let mut lhs = Rational::zero();
                    for a in 0..n {
                        if coefficients[b][a].is_zero() {
                            continue;
                        }
                        for a2 in 0..n {
                            lhs += &coefficients[b][a] * &coefficients[c][a2] * parent.f(a, a2, e);
                        }
                    }
                    let mut rhs = Rational::zero();
                    for d in 0..s {
                        rhs += sub.f(b, c, d) * &coefficients[d][e];
                    }
                    if lhs != rhs {
                        return Err(Error::Validation {
                            identity: "closure".into(),
                            indices: format!("(b={}, c={}, e={})", b + 1, c + 1, e + 1),
                            residual: fmt_rational(&(lhs - rhs)),
                        });
                    }
                }
            }
        }
        let pair = |x: &[Rational], y: &[Rational]| -> Rational {
            let mut acc = Rational::zero();
            for i in 0..n {
                for j in 0..n {
                    acc += &x[i] * &parent.form[i][j] * &y[j];
                }
            }
            acc
        };
        for (i, v) in complement.iter().enumerate() {
            for (b, m) in coefficients.iter().enumerate() {
                let r = pair(v, m);
                if !r.is_zero() {
                    return Err(Error::Validation {
                        identity: "complement orthogonality".into(),
                        indices: format!("(complement {}, sub {})", i + 1, b + 1),
                        residual: fmt_rational(&r),
                    });
                }
            }
        }
        let mut index = None;
        for b in 0..s {
            for c in 0..s {
                let induced = pair(&coefficients[b], &coefficients[c]);
                let own = &sub.form[b][c];
                match (&index, own.is_zero()) {
                    (None, false) => index = Some(induced / own),
                    (Some(ix), _) if induced != ix * own => {
                        return Err(Error::Validation {
                            identity: "induced form proportionality".into(),
                            indices: format!("({}, {})", b + 1, c + 1),
                            residual: fmt_rational(&(induced - ix * own)),
                        })
                    }
                    (None, true) if !induced.is_zero() => {
                        return Err(Error::Validation {
                            identity: "induced form proportionality".into(),
                            indices: format!("({}, {})", b + 1, c + 1),
                            residual: fmt_rational(&induced),
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(Self {
            name: name.into(),
            parent,
            sub,
            coefficients,
            complement,
            index: index.unwrap_or_else(Rational::one),
            family,
        })
    }

    /// u(1) ⊂ su(2) generated by `J̃ = 2J³`, so the u(1) charge of the weight-`m`
    /// vector is `ν = 2m`. The complement is spanned by `J¹, J²`.
    pub fn su2_u1() -> Self {
        let z = Rational::zero;
        Self::new(
            "su2_u1",
            AlgebraSpec::su2(),
            AlgebraSpec::u1(),
            vec![vec![z(), z(), qi(2)]],
            vec![vec![qi(1), z(), z()], vec![z(), qi(1), z()]],
            CosetFamily::Su2U1,
        )
        .expect("su2/u1 embedding is valid")
    }

    /// The coset G/G.
    pub fn trivial(parent: AlgebraSpec) -> Self {
        let n = parent.dim;
        Self::new(
            format!("{}_{}", parent.name, parent.name),
            parent.clone(),
            parent,
            crate::linalg::identity(n),
            Vec::new(),
            CosetFamily::Trivial,
        )
        .expect("identity embedding is valid")
    }

    pub fn builtin(model: &str) -> Result<Self> {
        match model {
            "su2_u1" => Ok(Self::su2_u1()),
            "su2_su2" => Ok(Self::trivial(AlgebraSpec::su2())),
            other => Err(Error::Unsupported(format!("unknown model {other:?}"))),
        }
    }

    pub fn sub_level(&self, k: &Rational) -> Rational {
        &self.index * k
    }

    /// Gram matrix of the complement directions under the parent form.
    pub fn complement_gram(&self) -> QMatrix {
        let n = self.parent.dim;
        self.complement
            .iter()
            .map(|u| {
                self.complement
                    .iter()
                    .map(|v| {
                        let mut acc = Rational::zero();
                        for i in 0..n {
                            for j in 0..n {
                                acc += &u[i] * &self.parent.form[i][j] * &v[j];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// Weights `W_ab` over parent indices such that `Σ_ab W_ab J^a J^b` is the
    /// orthonormal complement sum `Σ_{a ∈ C} J^a J^a`.
    pub fn complement_weights(&self) -> Result<QMatrix> {
        let n = self.parent.dim;
        let mut w = vec![vec![Rational::zero(); n]; n];
        if self.complement.is_empty() {
            return Ok(w);
        }
        let g_inv = invert(&self.complement_gram())?;
        for (i, u) in self.complement.iter().enumerate() {
            for (j, v) in self.complement.iter().enumerate() {
                for a in 0..n {
                    for b in 0..n {
                        w[a][b] += &g_inv[i][j] * &u[a] * &v[b];
                    }
                }
            }
        }
        Ok(w)
    }

    /// Weights for the subalgebra sum `Σ_b J̃^b J̃^b`, orthonormal under the
    /// parent form restricted to the image.
    pub fn sub_weights(&self) -> Result<QMatrix> {
        let n = self.parent.dim;
        let s = self.sub.dim;
        let mut w = vec![vec![Rational::zero(); n]; n];
        let induced: QMatrix = (0..s)
            .map(|b| (0..s).map(|c| &self.index * &self.sub.form[b][c]).collect())
            .collect();
        let inv = invert(&induced)?;
        for b in 0..s {
            for c in 0..s {
                for a in 0..n {
                    for a2 in 0..n {
                        w[a][a2] += &inv[b][c] * &self.coefficients[b][a] * &self.coefficients[c][a2];
                    }
                }
            }
        }
        Ok(w)
    }
}

/// A coset primary label `(μ, ν)` at level `k` with its derived data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetField {
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
    pub level: i64,
    #[serde(serialize_with = "crate::solver::report::ser_rational")]
    pub h: Rational,
    #[serde(serialize_with = "crate::solver::report::ser_rational")]
    pub casimir_mu: Rational,
    #[serde(serialize_with = "crate::solver::report::ser_rational")]
    pub casimir_nu: Rational,
}

impl CosetField {
    /// Validated field; `ν` is reduced into the label range of the family.
    pub fn new(emb: &EmbeddingSpec, mu: &[i64], nu: &[i64], k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidParameter(format!("level must be >= 1, got {k}")));
        }
        let (mu, nu) = normalize_label(emb, mu, nu, k)?;
        let h = conformal_weight(emb, &mu, &nu, k)?;
        let casimir_mu = emb.parent.casimir_eigenvalue(&mu)?;
        let charge = physical_charge(emb, &nu, k);
        let casimir_nu = emb.sub.casimir_eigenvalue(&charge)?;
        Ok(Self {
            mu,
            nu,
            level: k,
            h,
            casimir_mu,
            casimir_nu,
        })
    }

    pub fn label(&self) -> String {
        let j = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        format!("({};{})", j(&self.mu), j(&self.nu))
    }

    pub fn key(&self) -> (Vec<i64>, Vec<i64>) {
        (self.mu.clone(), self.nu.clone())
    }
}

fn normalize_label(emb: &EmbeddingSpec, mu: &[i64], nu: &[i64], k: i64) -> Result<(Vec<i64>, Vec<i64>)> {
    if mu.len() != emb.parent.rank {
        return Err(Error::WeightDimension {
            expected: emb.parent.rank,
            got: mu.len(),
        });
    }
    if nu.len() != emb.sub.rank {
        return Err(Error::WeightDimension {
            expected: emb.sub.rank,
            got: nu.len(),
        });
    }
    match emb.family {
        CosetFamily::Su2U1 => {
            let (m, n) = (mu[0], nu[0].rem_euclid(2 * k));
            if !(0..=k).contains(&m) || (m - n).rem_euclid(2) != 0 {
                return Err(Error::SelectionRule { mu: mu[0], nu: nu[0] });
            }
            Ok((vec![m], vec![n]))
        }
        CosetFamily::Trivial => {
            if mu != nu || mu.iter().any(|&x| x < 0) || mu.iter().sum::<i64>() > k {
                return Err(Error::SelectionRule {
                    mu: mu.first().copied().unwrap_or(0),
                    nu: nu.first().copied().unwrap_or(0),
                });
            }
            Ok((mu.to_vec(), nu.to_vec()))
        }
        CosetFamily::Custom => Err(Error::Unsupported(
            "coset family without selection-rule data".into(),
        )),
    }
}

/// u(1) charge representative in `(−k, k]`; identity for other families.
pub fn physical_charge(emb: &EmbeddingSpec, nu: &[i64], k: i64) -> Vec<i64> {
    match emb.family {
        CosetFamily::Su2U1 => {
            let n = nu[0].rem_euclid(2 * k);
            vec![if n > k { n - 2 * k } else { n }]
        }
        _ => nu.to_vec(),
    }
}

/// Raw Sugawara difference `C_μ/(2(k+h^∨)) − C̃_ν/(2(k_𝔞+h^∨_𝔞))` with `k_𝔞 = index·k`.
pub fn sugawara_difference(emb: &EmbeddingSpec, mu: &[i64], charge: &[i64], k: i64) -> Result<Rational> {
    let k = qi(k);
    Ok(emb.parent.sugawara_weight(mu, &k)? - emb.sub.sugawara_weight(charge, &emb.sub_level(&k))?)
}

/// Simple-current partner `(k − μ, ν + k)` for su(2)_k/u(1).
fn partner(mu: i64, nu: i64, k: i64) -> (i64, i64) {
    (k - mu, (nu + k).rem_euclid(2 * k))
}

/// Conformal weight of the coset primary.
///
/// For su(2)_k/u(1) the Sugawara difference is evaluated on the orbit member
/// whose charge satisfies `|ν| ≤ μ`; other members differ from it by integers.
pub fn conformal_weight(emb: &EmbeddingSpec, mu: &[i64], nu: &[i64], k: i64) -> Result<Rational> {
    let (mu, nu) = normalize_label(emb, mu, nu, k)?;
    match emb.family {
        CosetFamily::Su2U1 => {
            let (m, n) = (mu[0], nu[0]);
            let direct = physical_charge(emb, &[n], k)[0];
            let (m, c) = if direct.abs() <= m {
                (m, direct)
            } else {
                let (pm, pn) = partner(m, n, k);
                (pm, physical_charge(emb, &[pn], k)[0])
            };
            sugawara_difference(emb, &[m], &[c], k)
        }
        CosetFamily::Trivial => Ok(Rational::zero()),
        CosetFamily::Custom => unreachable!("rejected by normalize_label"),
    }
}

/// Central charge of the coset: `c(𝔤, k) − c(𝔞, index·k)`.
pub fn coset_central_charge(emb: &EmbeddingSpec, k: i64) -> Rational {
    let k = qi(k);
    emb.parent.wznw_central_charge(&k) - emb.sub.wznw_central_charge(&emb.sub_level(&k))
}

/// Orbit of a field under simple-current identification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimpleCurrentOrbit {
    pub members: Vec<CosetField>,
    pub canonical: CosetField,
}

/// Orbit and lexicographically least member.
pub fn canonical_representative(emb: &EmbeddingSpec, field: &CosetField) -> Result<SimpleCurrentOrbit> {
    let k = field.level;
    let mut members = vec![field.clone()];
    if emb.family == CosetFamily::Su2U1 {
        let mut cur = (field.mu[0], field.nu[0]);
        loop {
            cur = partner(cur.0, cur.1, k);
            if cur == (field.mu[0], field.nu[0]) {
                break;
            }
            members.push(CosetField::new(emb, &[cur.0], &[cur.1], k)?);
        }
    }
    members.sort_by_key(CosetField::key);
    members.dedup();
    let canonical = members[0].clone();
    Ok(SimpleCurrentOrbit { members, canonical })
}

/// One orbit per equivalence class of selection-rule-passing labels, in canonical order.
pub fn enumerate_fields(emb: &EmbeddingSpec, k: i64) -> Result<Vec<SimpleCurrentOrbit>> {
    if k < 1 {
        return Err(Error::InvalidParameter(format!("level must be >= 1, got {k}")));
    }
    let labels: Vec<(Vec<i64>, Vec<i64>)> = match emb.family {
        CosetFamily::Su2U1 => (0..=k)
            .flat_map(|m| (0..2 * k).map(move |n| (m, n)))
            .filter(|(m, n)| (m - n) % 2 == 0)
            .map(|(m, n)| (vec![m], vec![n]))
            .collect(),
        CosetFamily::Trivial if emb.parent.rank == 1 => (0..=k).map(|m| (vec![m], vec![m])).collect(),
        _ => {
            return Err(Error::Unsupported(
                "field enumeration needs selection-rule data for this coset".into(),
            ))
        }
    };
    let mut orbits: Vec<SimpleCurrentOrbit> = Vec::new();
    for (mu, nu) in labels {
        if orbits.iter().any(|o| o.members.iter().any(|f| f.mu == mu && f.nu == nu)) {
            continue;
        }
        let field = CosetField::new(emb, &mu, &nu, k)?;
        orbits.push(canonical_representative(emb, &field)?);
    }
    orbits.sort_by_key(|o| o.canonical.key());
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn su2_u1_embedding_data() {
        let e = EmbeddingSpec::su2_u1();
        assert_eq!(e.index, qi(2));
        assert_eq!(e.sub_level(&qi(3)), qi(6));
        let w = e.complement_weights().unwrap();
        assert_eq!(w[0][0], qi(2));
        assert_eq!(w[1][1], qi(2));
        assert_eq!(w[2][2], qi(0));
        let s = e.sub_weights().unwrap();
        assert_eq!(s[2][2], qi(2));
    }

    #[test]
    fn complement_must_be_orthogonal() {
        let su2 = AlgebraSpec::su2();
        let z = Rational::zero;
        let bad = EmbeddingSpec::new(
            "bad",
            su2,
            AlgebraSpec::u1(),
            vec![vec![z(), z(), qi(2)]],
            vec![vec![qi(1), z(), z()], vec![z(), qi(1), qi(1)]],
            CosetFamily::Custom,
        );
        match bad {
            Err(Error::Validation { identity, .. }) => assert_eq!(identity, "complement orthogonality"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn central_charges() {
        let e = EmbeddingSpec::su2_u1();
        assert_eq!(coset_central_charge(&e, 2), q(1, 2));
        for k in 1..=6 {
            assert_eq!(coset_central_charge(&e, k), q(2 * (k - 1), k + 2));
        }
        assert_eq!(coset_central_charge(&EmbeddingSpec::trivial(AlgebraSpec::su2()), 3), qi(0));
    }

    #[test]
    fn ising_weights() {
        let e = EmbeddingSpec::su2_u1();
        assert_eq!(conformal_weight(&e, &[0], &[0], 2).unwrap(), qi(0));
        assert_eq!(conformal_weight(&e, &[0], &[2], 2).unwrap(), q(1, 2));
        assert_eq!(conformal_weight(&e, &[2], &[0], 2).unwrap(), q(1, 2));
        assert_eq!(conformal_weight(&e, &[1], &[1], 2).unwrap(), q(1, 16));
        assert!(matches!(
            conformal_weight(&e, &[1], &[0], 2),
            Err(Error::SelectionRule { .. })
        ));
    }

    #[test]
    fn raw_difference_differs_by_integers_off_the_standard_range() {
        let e = EmbeddingSpec::su2_u1();
        let raw = sugawara_difference(&e, &[0], &[2], 2).unwrap();
        assert_eq!(raw, q(-1, 2));
        assert!((conformal_weight(&e, &[0], &[2], 2).unwrap() - raw).is_integer());
    }

    #[test]
    fn orbits_at_level_two() {
        let e = EmbeddingSpec::su2_u1();
        let cases = [((0, 0), vec![(0, 0), (2, 2)]), ((0, 2), vec![(0, 2), (2, 0)]), ((1, 1), vec![(1, 1), (1, 3)])];
        for ((m, n), expected) in cases {
            let f = CosetField::new(&e, &[m], &[n], 2).unwrap();
            let orbit = canonical_representative(&e, &f).unwrap();
            let got: Vec<(i64, i64)> = orbit.members.iter().map(|f| (f.mu[0], f.nu[0])).collect();
            assert_eq!(got, expected);
            assert_eq!((orbit.canonical.mu[0], orbit.canonical.nu[0]), (m, n));
            for member in &orbit.members {
                assert_eq!(member.h, f.h);
            }
        }
    }

    #[test]
    fn enumeration_counts_match_brute_force() {
        // Oracle: count labels passing the rule, then count orbits by union of pairs.
        let e = EmbeddingSpec::su2_u1();
        for k in 1..=6 {
            let mut seen = std::collections::BTreeSet::new();
            let mut classes = 0;
            for m in 0..=k {
                for n in 0..2 * k {
                    if (m - n) % 2 != 0 || seen.contains(&(m, n)) {
                        continue;
                    }
                    classes += 1;
                    seen.insert((m, n));
                    seen.insert((k - m, (n + k) % (2 * k)));
                }
            }
            let orbits = enumerate_fields(&e, k).unwrap();
            assert_eq!(orbits.len(), classes);
            assert_eq!(orbits.len() as i64, k * (k + 1) / 2);
        }
        let k2: Vec<(i64, i64)> = enumerate_fields(&e, 2)
            .unwrap()
            .iter()
            .map(|o| (o.canonical.mu[0], o.canonical.nu[0]))
            .collect();
        assert_eq!(k2, vec![(0, 0), (0, 2), (1, 1)]);
    }

    #[test]
    fn custom_family_cannot_enumerate() {
        let mut e = EmbeddingSpec::su2_u1();
        e.family = CosetFamily::Custom;
        assert!(matches!(enumerate_fields(&e, 2), Err(Error::Unsupported(_))));
    }
}
