//! Polynomial coefficients in the formal symbols κ, τ, c, k.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{Rational, Scalar};

/// Formal parameters appearing in coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    Kappa = 0,
    Tau = 1,
    C = 2,
    K = 3,
}

impl Var {
    const NAMES: [&'static str; 4] = ["kappa", "tau", "c", "k"];
}

/// Exponent vector over `[κ, τ, c, k]`.
pub type Monomial = [u8; 4];

/// Polynomial with exact coefficients in Q(i, √2). Zero terms are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff(BTreeMap<Monomial, Scalar>);

impl Coeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        let mut c = Self::zero();
        c.add_term([0; 4], s);
        c
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(Scalar::from(r))
    }

    pub fn var(v: Var) -> Self {
        let mut m = [0; 4];
        m[v as usize] = 1;
        let mut c = Self::zero();
        c.add_term(m, Scalar::one());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, m: Monomial, s: Scalar) {
        if s.is_zero() {
            return;
        }
        let slot = self.0.entry(m).or_insert_with(Scalar::zero);
        *slot += &s;
        if slot.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Coeff) {
        for (m, s) in &other.0 {
            self.add_term(*m, s.clone());
        }
    }

    pub fn neg(&self) -> Coeff {
        self.scale(&-Scalar::one())
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Coeff {
        let mut out = Coeff::zero();
        for (m, x) in &self.0 {
            out.add_term(*m, x * s);
        }
        out
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (m1, a) in &self.0 {
            for (m2, b) in &other.0 {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]];
                out.add_term(m, a * b);
            }
        }
        out
    }

    /// Replace a variable by an exact rational value.
    pub fn substitute(&self, v: Var, value: &Rational) -> Coeff {
        let mut out = Coeff::zero();
        let val = Scalar::from(value.clone());
        for (m, s) in &self.0 {
            let mut m2 = *m;
            let e = std::mem::replace(&mut m2[v as usize], 0);
            let mut f = s.clone();
            for _ in 0..e {
                f = &f * &val;
            }
            out.add_term(m2, f);
        }
        out
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn get(&self, m: &Monomial) -> Scalar {
        self.0.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn max_degree(&self) -> u32 {
        self.0.keys().map(|m| m.iter().map(|&e| e as u32).sum()).max().unwrap_or(0)
    }
}

impl From<Scalar> for Coeff {
    fn from(s: Scalar) -> Self {
        Coeff::constant(s)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, s) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{s}")?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", Var::NAMES[i])?,
                    _ => write!(f, "*{}^{e}", Var::NAMES[i])?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn arithmetic_and_substitution() {
        let k = Coeff::var(Var::K);
        let c = Coeff::var(Var::C);
        let p = k.mul(&k).add(&c.scale(&Scalar::frac(1, 2)));
        assert_eq!(p.max_degree(), 2);
        let v = p.substitute(Var::K, &qi(3)).substitute(Var::C, &q(1, 2));
        assert_eq!(v, Coeff::rational(q(37, 4)));
        assert!(p.sub(&p).is_zero());
        assert_eq!(format!("{}", p), "1*k^2 + 1/2*c");
    }
}
