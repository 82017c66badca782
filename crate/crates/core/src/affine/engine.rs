//! Commutation relations, normal ordering and highest-weight evaluation.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::coeff::{Coeff, Var};
use super::poly::{word_level, GeneratorSymbol, Kind, OperatorPoly, Sector, Word};
use crate::error::{Error, Result};
use crate::lie::{AlgebraSpec, EmbeddingSpec, Irrep};
use crate::scalar::{q, qi, Rational, Scalar};

/// Descendant level cap for evaluation.
pub const MAX_LEVEL: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Hash, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum EngineMode {
    /// Abstract Virasoro ⋉ affine relations; `[L_n, J^a_m] = −m J^a_{n+m}` for every current.
    Semidirect,
    /// Virasoro modes are Sugawara bilinears and only current relations are used.
    SugawaraCoset,
}

impl EngineMode {
    pub fn name(self) -> &'static str {
        match self {
            EngineMode::Semidirect => "semidirect",
            EngineMode::SugawaraCoset => "sugawara-coset",
        }
    }
}

/// Rewriting engine over one parent algebra, optionally with an embedded subalgebra.
#[derive(Clone, Debug)]
pub struct Engine {
    pub mode: EngineMode,
    pub parent: AlgebraSpec,
    pub embedding: Option<EmbeddingSpec>,
}

impl Engine {
    pub fn new(mode: EngineMode, parent: AlgebraSpec) -> Self {
        Self {
            mode,
            parent,
            embedding: None,
        }
    }

    pub fn with_embedding(mode: EngineMode, embedding: EmbeddingSpec) -> Self {
        Self {
            mode,
            parent: embedding.parent.clone(),
            embedding: Some(embedding),
        }
    }

    /// Write a symbol as a combination of parent-sector symbols.
    fn expand_symbol(&self, s: GeneratorSymbol) -> Result<OperatorPoly> {
        match (s.kind, s.sector) {
            (Kind::Current, Sector::Parent) | (Kind::Virasoro, _) => Ok(OperatorPoly::symbol(s)),
            (Kind::Current, Sector::Sub) => {
                let emb = self
                    .embedding
                    .as_ref()
                    .ok_or_else(|| Error::Unsupported("subalgebra current without an embedding".into()))?;
                let row = emb
                    .coefficients
                    .get(s.index)
                    .ok_or_else(|| Error::InvalidParameter(format!("subalgebra index {}", s.index + 1)))?;
                let mut p = OperatorPoly::zero();
                for (a, m) in row.iter().enumerate() {
                    p.add_term(vec![GeneratorSymbol::j(a, s.mode)], Coeff::rational(m.clone()));
                }
                Ok(p)
            }
            (Kind::Current, Sector::Coset) => Err(Error::Unsupported("coset-sector currents".into())),
        }
    }

    /// Replace subalgebra currents by their parent expansions.
    pub fn expand(&self, p: &OperatorPoly) -> Result<OperatorPoly> {
        let mut out = OperatorPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = OperatorPoly::term(Vec::new(), c.clone());
            for s in w {
                acc = acc.mul(&self.expand_symbol(*s)?);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    fn check_index(&self, s: &GeneratorSymbol) -> Result<()> {
        if s.kind == Kind::Current && s.index >= self.parent.dim {
            return Err(Error::InvalidParameter(format!(
                "current index {} exceeds algebra dimension {}",
                s.index + 1,
                self.parent.dim
            )));
        }
        Ok(())
    }

    /// `[x, y]` for parent-sector currents and Virasoro symbols.
    fn elementary(&self, x: GeneratorSymbol, y: GeneratorSymbol) -> Result<OperatorPoly> {
        self.check_index(&x)?;
        self.check_index(&y)?;
        let (n, m) = (x.mode, y.mode);
        let mut out = OperatorPoly::zero();
        match (x.kind, y.kind) {
            (Kind::Current, Kind::Current) => {
                let (a, b) = (x.index, y.index);
                for c in 0..self.parent.dim {
                    let f = self.parent.f(a, b, c);
                    if !f.is_zero() {
                        let coeff = &Scalar::i() * &Scalar::from(f.clone());
                        out.add_term(vec![GeneratorSymbol::j(c, n + m)], Coeff::constant(coeff));
                    }
                }
                let kab = &self.parent.form[a][b];
                if n + m == 0 && n != 0 && !kab.is_zero() {
                    out.add_term(Vec::new(), Coeff::var(Var::K).scale(&Scalar::from(qi(n) * kab)));
                }
            }
            _ if self.mode == EngineMode::SugawaraCoset => {
                return Err(Error::CosetModeCommutator(format!(
                    "[{x}, {y}]: Virasoro modes must be expanded through sugawara_mode"
                )))
            }
            (Kind::Virasoro, Kind::Virasoro) => {
                if x.sector != y.sector {
                    return Err(Error::CosetModeCommutator(format!("[{x}, {y}] mixes sectors")));
                }
                out.add_term(
                    vec![GeneratorSymbol::virasoro(x.sector, n + m)],
                    Coeff::rational(qi(n - m)),
                );
                if n + m == 0 {
                    out.add_term(Vec::new(), Coeff::var(Var::C).scale(&Scalar::from(q(n * n * n - n, 12))));
                }
            }
            (Kind::Virasoro, Kind::Current) => {
                out.add_term(vec![GeneratorSymbol::j(y.index, n + m)], Coeff::rational(qi(-m)));
            }
            (Kind::Current, Kind::Virasoro) => {
                out.add_term(vec![GeneratorSymbol::j(x.index, n + m)], Coeff::rational(qi(n)));
            }
        }
        Ok(out)
    }

    /// `[x, y]` expanded by the commutation relations of the selected mode.
    pub fn commutator(&self, x: GeneratorSymbol, y: GeneratorSymbol) -> Result<OperatorPoly> {
        let px = self.expand_symbol(x)?;
        let py = self.expand_symbol(y)?;
        let mut out = OperatorPoly::zero();
        for (wx, cx) in px.terms() {
            for (wy, cy) in py.terms() {
                let c = self.elementary(wx[0], wy[0])?;
                out = out.add(&c.scale_coeff(&cx.mul(cy)));
            }
        }
        Ok(out)
    }

    /// `[P, Q] = PQ − QP`, normal-ordered.
    pub fn bracket(&self, p: &OperatorPoly, q: &OperatorPoly) -> Result<OperatorPoly> {
        self.normal_order(&p.mul(q).sub(&q.mul(p)))
    }

    /// Sort every word by the symbol key, inserting commutators at each swap.
    ///
    /// Each swap removes one inversion and each commutator term is shorter,
    /// so the rewriting terminates.
    pub fn normal_order(&self, p: &OperatorPoly) -> Result<OperatorPoly> {
        let mut pending: BTreeMap<Word, Coeff> = BTreeMap::new();
        for (w, c) in self.expand(p)?.into_terms() {
            push(&mut pending, w, c);
        }
        let mut done = OperatorPoly::zero();
        while let Some((w, c)) = pending.pop_first() {
            let Some(i) = (1..w.len()).find(|&i| w[i - 1] > w[i]).map(|i| i - 1) else {
                done.add_term(w, c);
                continue;
            };
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            push(&mut pending, swapped, c.clone());
            for (u, cu) in self.elementary(w[i], w[i + 1])?.terms() {
                let mut nw = w[..i].to_vec();
                nw.extend_from_slice(u);
                nw.extend_from_slice(&w[i + 2..]);
                push(&mut pending, nw, c.mul(cu));
            }
        }
        Ok(done)
    }

    /// Act on a normal-ordered word's zero and positive modes, leaving the
    /// descendant word. `None` when a raising mode annihilates the state.
    fn eval_word(&self, w: &[GeneratorSymbol], v: &[Coeff], ctx: &HwContext) -> Result<Option<(Word, Vec<Coeff>)>> {
        if w.last().is_some_and(|s| s.mode > 0) {
            return Ok(None);
        }
        let split = w.iter().position(|s| s.mode == 0).unwrap_or(w.len());
        let mut vec = v.to_vec();
        for s in w[split..].iter().rev() {
            match s.kind {
                Kind::Virasoro => {
                    let h = Scalar::from(ctx.h.clone());
                    for x in vec.iter_mut() {
                        *x = x.scale(&h);
                    }
                }
                Kind::Current => {
                    let m = &ctx.irrep.matrices[s.index];
                    vec = m
                        .iter()
                        .map(|row| {
                            let mut acc = Coeff::zero();
                            for (mij, vj) in row.iter().zip(&vec) {
                                if !mij.is_zero() && !vj.is_zero() {
                                    acc.add_assign(&vj.scale(mij));
                                }
                            }
                            acc
                        })
                        .collect();
                }
            }
        }
        if vec.iter().all(Coeff::is_zero) {
            return Ok(None);
        }
        let desc = w[..split].to_vec();
        let level = word_level(&desc);
        if level > MAX_LEVEL {
            return Err(Error::LevelBudget {
                level,
                max: MAX_LEVEL,
            });
        }
        Ok(Some((desc, vec)))
    }

    /// Apply an operator to a state built on a highest-weight vector.
    pub fn act(&self, p: &OperatorPoly, state: &StateVector, ctx: &HwContext) -> Result<StateVector> {
        let mut out = StateVector::empty(ctx);
        let mut cache: HashMap<Word, OperatorPoly> = HashMap::new();
        for (w, v) in &state.entries {
            for (pw, pc) in p.terms() {
                let mut full = pw.clone();
                full.extend_from_slice(w);
                if !cache.contains_key(&full) {
                    let no = self.normal_order(&OperatorPoly::word(full.clone()))?;
                    cache.insert(full.clone(), no);
                }
                for (nw, nc) in cache[&full].terms() {
                    if let Some((desc, vec)) = self.eval_word(nw, v, ctx)? {
                        let f = nc.mul(pc);
                        out.add(desc, vec.iter().map(|x| x.mul(&f)).collect());
                    }
                }
            }
        }
        out.substitute_central(ctx);
        Ok(out)
    }

    /// `p` applied to the highest-weight vector `vector` of the context irrep.
    pub fn apply_to_hw(&self, p: &OperatorPoly, ctx: &HwContext, vector: &[Scalar]) -> Result<StateVector> {
        self.act(p, &StateVector::highest_weight(ctx, vector)?, ctx)
    }
}

fn push(map: &mut BTreeMap<Word, Coeff>, w: Word, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(slot) => {
            slot.add_assign(&c);
            if slot.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c);
        }
    }
}

/// Data of the primary the engine evaluates on.
#[derive(Clone, Debug)]
pub struct HwContext {
    pub label: String,
    /// `L_0` eigenvalue on the primary (semidirect mode).
    pub h: Rational,
    pub c: Rational,
    pub k: Rational,
    pub irrep: Irrep,
}

/// `Σ (descendant word) ⊗ (irrep vector)` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    pub field: String,
    pub dim: usize,
    entries: BTreeMap<Word, Vec<Coeff>>,
}

impl StateVector {
    pub fn empty(ctx: &HwContext) -> Self {
        Self {
            field: ctx.label.clone(),
            dim: ctx.irrep.dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn highest_weight(ctx: &HwContext, vector: &[Scalar]) -> Result<Self> {
        if vector.len() != ctx.irrep.dim {
            return Err(Error::InvalidParameter(format!(
                "irrep vector has {} entries, irrep dimension is {}",
                vector.len(),
                ctx.irrep.dim
            )));
        }
        let mut s = Self::empty(ctx);
        s.add(Vec::new(), vector.iter().cloned().map(Coeff::from).collect());
        Ok(s)
    }

    pub fn add(&mut self, w: Word, v: Vec<Coeff>) {
        if v.iter().all(Coeff::is_zero) {
            return;
        }
        let slot = self.entries.entry(w.clone()).or_insert_with(|| vec![Coeff::zero(); v.len()]);
        for (x, y) in slot.iter_mut().zip(&v) {
            x.add_assign(y);
        }
        if slot.iter().all(Coeff::is_zero) {
            self.entries.remove(&w);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, v) in &other.entries {
            out.add(w.clone(), v.iter().map(Coeff::neg).collect());
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &Vec<Coeff>)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Irrep vector multiplying the primary itself.
    pub fn primary_component(&self) -> Vec<Coeff> {
        self.entries.get(&Vec::new()).cloned().unwrap_or_else(|| vec![Coeff::zero(); self.dim])
    }

    pub fn substitute(&mut self, var: Var, value: &Rational) {
        for v in self.entries.values_mut() {
            for x in v.iter_mut() {
                *x = x.substitute(var, value);
            }
        }
        self.entries.retain(|_, v| !v.iter().all(Coeff::is_zero));
    }

    fn substitute_central(&mut self, ctx: &HwContext) {
        self.substitute(Var::C, &ctx.c);
        self.substitute(Var::K, &ctx.k);
    }
}
