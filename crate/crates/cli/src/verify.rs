//! Oracle against closed form, one row per curve.

use std::fmt::Write as _;

use anyhow::{Context, Result};
use rayon::prelude::*;
use umbrella_core::frame::{
    closed_form_reference, compare_reports, curvature_numerators, divergence_report, EntryVerdict, FrameFactors,
    Subcase, Verdict,
};
use umbrella_core::model::{build_curve, build_umbrella, default_order, CurveSpec, UmbrellaCoefficients};
use umbrella_core::sampling::sweep_draw;
use umbrella_core::series::{Rational, Valuation};

use crate::report::{combine, curve_label};

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub subcase: Subcase,
    /// `None` for a single configuration.
    pub draw: Option<usize>,
    pub curve: String,
    pub entries: [EntryVerdict<Rational>; 3],
    pub verdict: Verdict,
}

pub fn verify_one(coeffs: &UmbrellaCoefficients, spec: &CurveSpec, order: usize, draw: Option<usize>) -> Result<Row> {
    let subcase = Subcase::of(spec).context("verify")?;
    let umbrella = build_umbrella(coeffs);
    let curve = build_curve(spec, order).context("model")?;
    let factors = FrameFactors::compute(&umbrella, &curve).context("frame")?;
    let oracle = divergence_report(&curvature_numerators(&factors));
    let (_, closed) = closed_form_reference(spec, coeffs).context("frame: closed forms")?;
    let entries = compare_reports(&oracle, &closed, subcase, 0.0);
    let verdict = combine(entries.iter().map(|e| e.verdict));
    Ok(Row { subcase, draw, curve: curve_label(spec), entries, verdict })
}

/// `draws` seeded draws in every subcase, evaluated in parallel and sorted
/// by `(subcase, draw)`.
pub fn sweep(seed: u64, draws: usize) -> Result<Vec<Row>> {
    let jobs: Vec<(Subcase, usize)> = Subcase::ALL.iter().flat_map(|&s| (0..draws).map(move |i| (s, i))).collect();
    let mut rows = jobs
        .par_iter()
        .map(|&(subcase, i)| {
            let (coeffs, spec) = sweep_draw(seed, subcase, i).with_context(|| format!("sampling {}", subcase.name()))?;
            verify_one(&coeffs, &spec, default_order(&coeffs, &spec), Some(i))
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.subcase.index(), r.draw));
    Ok(rows)
}

pub fn has_failures(rows: &[Row]) -> bool {
    rows.iter().any(|r| r.verdict == Verdict::Fail)
}

fn valuation_text(v: &Valuation<Rational>) -> String {
    match v {
        Valuation::Leading { degree, coeff } => format!("{coeff} x^{degree}"),
        Valuation::ZeroToOrder(r) => format!("0 to order {r}"),
    }
}

/// A fixed-width table, a detail line under every entry that did not pass,
/// and a summary line.
pub fn render(rows: &[Row]) -> String {
    let mut out = String::new();
    writeln!(out, "{:<14} {:>5}  {:<11} {:<11} {:<11} row", "subcase", "draw", "k1", "k2", "k3").unwrap();
    for r in rows {
        let draw = r.draw.map_or("-".to_string(), |d| d.to_string());
        let [a, b, c] = &r.entries;
        writeln!(
            out,
            "{:<14} {:>5}  {:<11} {:<11} {:<11} {}",
            r.subcase.name(),
            draw,
            a.verdict.label(),
            b.verdict.label(),
            c.verdict.label(),
            r.verdict.label()
        )
        .unwrap();
        for (i, e) in r.entries.iter().enumerate() {
            if e.verdict != Verdict::Pass {
                writeln!(
                    out,
                    "    k{}: oracle {}, closed form {}  [{}]",
                    i + 1,
                    valuation_text(&e.oracle),
                    valuation_text(&e.closed_form),
                    r.curve
                )
                .unwrap();
            }
        }
    }
    let count = |v: Verdict| rows.iter().filter(|r| r.verdict == v).count();
    writeln!(
        out,
        "rows {}  pass {}  advisory {}  non-generic {}  fail {}",
        rows.len(),
        count(Verdict::Pass),
        count(Verdict::Advisory),
        count(Verdict::NonGeneric),
        count(Verdict::Fail)
    )
    .unwrap();
    out
}
