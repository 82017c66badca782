#![allow(dead_code)]

use cosetsle::affine::{Engine, EngineMode, GeneratorSymbol, HwContext, OperatorPoly, Sector, StateVector, Word};
use cosetsle::lie::coset::EmbeddingSpec;
use cosetsle::lie::irrep::Irrep;
use cosetsle::scalar::{q, qi, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn engine() -> Engine {
    Engine::with_embedding(EngineMode::Semidirect, EmbeddingSpec::su2_u1())
}

pub fn context() -> HwContext {
    HwContext {
        label: "(1;1)".into(),
        h: q(1, 16),
        c: q(1, 2),
        k: qi(2),
        irrep: Irrep::su2_spin(1),
    }
}

pub fn primary(ctx: &HwContext) -> StateVector {
    let mut v = vec![Scalar::from(qi(0)); ctx.irrep.dim];
    v[0] = Scalar::from(qi(1));
    StateVector::highest_weight(ctx, &v).unwrap()
}

fn symbol(rng: &mut ChaCha8Rng) -> GeneratorSymbol {
    let n = rng.random_range(-2..=2);
    match rng.random_range(0..5) {
        0 => GeneratorSymbol::virasoro(Sector::Coset, n),
        1 => GeneratorSymbol::current(Sector::Sub, 0, n),
        a => GeneratorSymbol::j(a - 2, n),
    }
}

/// Random words whose every right-to-left partial action stays within level 2.
pub fn random_words(seed: u64, count: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let len = rng.random_range(1..=4);
        let w: Word = (0..len).map(|_| symbol(&mut rng)).collect();
        let mut level = 0;
        let ok = w.iter().rev().all(|s| {
            level -= s.mode;
            level <= 2
        });
        if ok {
            out.push(w);
        }
    }
    out
}

pub fn sequential_action(e: &Engine, w: &Word, ctx: &HwContext) -> StateVector {
    let mut st = primary(ctx);
    for s in w.iter().rev() {
        st = e.act(&OperatorPoly::symbol(s.clone()), &st, ctx).unwrap();
    }
    st
}
