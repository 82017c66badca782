//! Serialization helpers and report rendering.

use std::fmt::Write;

use serde::Serializer;

use super::classify::{AuditReport, Classification, SystemResult};
use super::constraints::{ConstraintRow, RowSource};
use crate::scalar::{fmt_rational, Rational};

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

pub fn ser_rational_vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rational))
}

pub fn ser_rational_vecs<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(fmt_rational).collect::<Vec<_>>()))
}

pub fn ser_rational_opt_vec<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_rational_vec(v, s),
        None => s.serialize_none(),
    }
}

/// Aligned plain-text table: one line per orbit (its canonical representative),
/// or per representative when `all_representatives` is set.
pub fn classification_text(c: &Classification, all_representatives: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "model {}  level {}  c = {}  mode {}  normalization {:?}",
        c.model,
        c.level,
        fmt_rational(&c.central_charge),
        c.mode.name(),
        c.normalization
    );
    for n in &c.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let header = [
        "orbit",
        "rep",
        "h",
        "C_mu",
        "C_nu",
        "admissible",
        "closed(+c)",
        "closed(-c)",
        "engine subset",
        "engine full",
    ];
    let mut rows: Vec<[String; 10]> = Vec::new();
    for o in &c.orbits {
        let shown = if all_representatives { o.representatives.len() } else { 1 };
        for r in &o.representatives[..shown] {
            let admissible = {
                let st: Vec<bool> = r.closed_form.iter().map(|s| s.result.status.is_admissible()).collect();
                match (st.is_empty(), st.iter().all(|&x| x), st.iter().any(|&x| x)) {
                    (true, _, _) => "-",
                    (_, true, _) => "yes",
                    (_, _, false) => "no",
                    _ => "sign-dependent",
                }
            };
            let cf = |src: RowSource| {
                r.closed_form
                    .iter()
                    .find(|s| s.system.source == src)
                    .map_or("-".to_string(), |s| s.result.describe())
            };
            let (sub, full) = match &r.engine {
                Some(e) => {
                    let full = match e.subset_point_preserved {
                        Some(true) => format!("{} (subset point kept)", e.full_closure.result.describe()),
                        Some(false) => format!("{} (subset point lost)", e.full_closure.result.describe()),
                        None => e.full_closure.result.describe(),
                    };
                    (e.paper_subset.result.describe(), full)
                }
                None => ("not realizable".to_string(), "-".to_string()),
            };
            rows.push([
                o.canonical.clone(),
                r.field.label(),
                fmt_rational(&r.field.h),
                fmt_rational(&r.field.casimir_mu),
                fmt_rational(&r.field.casimir_nu),
                admissible.to_string(),
                cf(RowSource::ClosedFormPaper),
                cf(RowSource::ClosedFormEngineSign),
                sub,
                full,
            ]);
        }
        if o.representative_sensitive {
            let _ = writeln!(out, "note: orbit {} is representative-sensitive", o.canonical);
        }
    }
    out.push_str(&align(&header, &rows));
    out
}

fn align<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut w = header.map(str::len);
    for r in rows {
        for (i, x) in r.iter().enumerate() {
            w[i] = w[i].max(x.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, x)| format!("{x}{}", " ".repeat(w[i] - x.chars().count())))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// Constraint rows with provenance followed by the solution.
pub fn system_text(s: &SystemResult) -> String {
    let mut out = String::new();
    let raising = s.system.raising.map_or(String::new(), |r| format!(" {r:?}"));
    let _ = writeln!(out, "[{}{}] {}", s.system.source.name(), raising, s.system.field);
    for r in &s.system.rows {
        let _ = writeln!(out, "  {r}    <- {}", r.tag);
    }
    let _ = writeln!(out, "  result: {} [{}]", s.result.describe(), s.result.sign_convention);
    for w in &s.result.warnings {
        let _ = writeln!(out, "  warning: {w}");
    }
    out
}

pub fn audit_text(a: &AuditReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sign audit {} levels {:?}", a.model, a.levels);
    let fmt_rows = |v: &[ConstraintRow]| {
        if v.is_empty() {
            "(none)".to_string()
        } else {
            v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ")
        }
    };
    for e in &a.entries {
        let _ = writeln!(
            out,
            "k={} {} {}:\n  engine   {}\n  +c       {}  [{}]\n  -c       {}  [{}]",
            e.level,
            e.field,
            e.operator,
            fmt_rows(&e.engine),
            fmt_rows(&e.paper),
            if e.match_paper { "match" } else { "differs" },
            fmt_rows(&e.paper_engine_sign),
            if e.match_engine_sign { "match" } else { "differs" },
        );
    }
    for s in &a.skipped {
        let _ = writeln!(out, "skipped {s}");
    }
    let _ = writeln!(out, "L1L1 rows literal: {}", a.l1_squared_literal);
    let _ = writeln!(out, "Jt1[1]L1 rows literal: {}", a.composite_literal);
    let _ = writeln!(
        out,
        "L2 convention: {}",
        a.l2_convention.as_deref().unwrap_or("none consistent")
    );
    out
}
