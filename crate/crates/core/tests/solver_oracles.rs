use cosetsle::affine::EngineMode;
use cosetsle::lie::coset::{CosetField, EmbeddingSpec};
use cosetsle::lie::AlgebraSpec;
use cosetsle::scalar::{q, qi};
use cosetsle::solver::constraints::satisfies;
use cosetsle::solver::*;

#[test]
fn level_three_orbits_and_resubstitution() {
    let emb = EmbeddingSpec::su2_u1();
    let c = classify_model(&emb, 3, EngineMode::Semidirect, Normalization::Orthonormal).unwrap();
    assert_eq!(c.orbits.len(), 6);
    for o in &c.orbits {
        for r in &o.representatives {
            let systems = r
                .engine
                .iter()
                .flat_map(|e| [&e.paper_subset, &e.full_closure])
                .chain(r.closed_form.iter());
            for s in systems {
                if let Some(p) = &s.result.solution {
                    if s.result.status.is_admissible() {
                        assert!(satisfies(&s.system, &p[0], &p[1]), "{}", r.field.label());
                    }
                }
            }
        }
    }
}

#[test]
fn closed_form_rows_literal() {
    let emb = EmbeddingSpec::su2_u1();
    let f = CosetField::new(&emb, &[1], &[1], 2).unwrap();
    let s = closed_form_constraints(&f, &emb, RowSource::ClosedFormPaper).unwrap();
    let l2 = s.rows_for("L2");
    // (3h)κ + kτ − 8h + c with h = 1/16, c = 1/2
    assert_eq!((&l2[0].a, &l2[0].b, &l2[0].d), (&q(3, 16), &qi(2), &qi(0)));
    let minus = closed_form_constraints(&f, &emb, RowSource::ClosedFormEngineSign).unwrap();
    assert_eq!(minus.rows_for("L2")[0].d, qi(-1));
}

#[test]
fn sugawara_mode_keeps_the_twisted_point() {
    let emb = EmbeddingSpec::su2_u1();
    let f = CosetField::new(&emb, &[1], &[1], 2).unwrap();
    let r = analyse_representative(&f, &emb, EngineMode::SugawaraCoset, Normalization::Orthonormal).unwrap();
    let e = r.engine.unwrap();
    assert_eq!(e.paper_subset.result.solution, Some(vec![q(16, 3), qi(0)]));
    assert_eq!(e.subset_point_preserved, Some(true));
}

#[test]
fn wznw_primary_is_solved() {
    let r = wznw_classify(&AlgebraSpec::su2(), 2, &[1]).unwrap();
    assert_eq!(r.central_charge, q(3, 2));
    assert_eq!(r.h, q(3, 16));
    assert!(r.paper_subset.result.status.is_admissible());
}

#[test]
fn classification_is_deterministic() {
    let emb = EmbeddingSpec::su2_u1();
    let run = || serde_json::to_string(&classify_model(&emb, 2, EngineMode::Semidirect, Normalization::FormDifference).unwrap()).unwrap();
    assert_eq!(run(), run());
}
