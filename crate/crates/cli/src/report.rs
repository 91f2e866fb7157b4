//! The invariant report: every module's output for one configuration, as
//! a JSON document with sorted keys.
//!
//! Numbers that come out of the exact pipeline are written `{"exact": "p/q"}`,
//! float results `{"float": x}`. Plain integers (degrees, orders, case
//! numbers) are left bare.

use anyhow::{Context, Result};
use serde_json::{json, Value};
use umbrella_core::developable::{DevelopableData, Order};
use umbrella_core::frame::{
    closed_form_reference, compare_reports, curvature_numerators, divergence_report, CurvatureReport, FrameFactors,
    Subcase, Verdict,
};
use umbrella_core::invariants::{
    c2m_parts, contour_deviation, projection_tangency, self_intersection, self_intersection_tangency, top_invariants,
};
use umbrella_core::model::{build_curve, build_umbrella, classify_tangency, CurveSpec, PlaneCurve, Umbrella};
use umbrella_core::series::{Coeff, Field, Rational, Valuation, FLOAT_TOL};

use crate::config::Validated;

pub fn exact(r: &Rational) -> Value {
    json!({ "exact": r.to_string() })
}

pub fn float(x: f64) -> Value {
    json!({ "float": x })
}

pub fn tagged<C: Coeff>(c: &C) -> Value {
    match C::FIELD {
        Field::Exact => json!({ "exact": c.to_string() }),
        Field::Float => float(c.to_f64()),
    }
}

fn exact3(v: &[Rational; 3]) -> Value {
    Value::Array(v.iter().map(exact).collect())
}

fn float3(v: &[f64; 3]) -> Value {
    Value::Array(v.iter().map(|x| float(*x)).collect())
}

pub fn valuation_json<C: Coeff>(v: &Valuation<C>) -> Value {
    match v {
        Valuation::Leading { degree, coeff } => json!({ "degree": degree, "top": tagged(coeff) }),
        Valuation::ZeroToOrder(r) => json!({ "zero_to_order": r }),
    }
}

pub fn order_label(o: Order) -> String {
    o.to_string()
}

pub fn curve_label(spec: &CurveSpec) -> String {
    let poly = |c: &[Rational]| c.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    match spec {
        CurveSpec::Mpq { m, p, q, c } => format!("mpq m={m} p={p} q={q} c=[{}]", poly(c)),
        CurveSpec::Mp { m, p, c } => format!("mp m={m} p={p} c=[{}]", poly(c)),
        CurveSpec::General { u, v } => format!("general u=[{}] v=[{}]", poly(u), poly(v)),
    }
}

/// Row verdict: any FAIL, else any NON-GENERIC, else any ADVISORY, else PASS.
pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let v: Vec<Verdict> = verdicts.into_iter().collect();
    [Verdict::Fail, Verdict::NonGeneric, Verdict::Advisory]
        .into_iter()
        .find(|w| v.contains(w))
        .unwrap_or(Verdict::Pass)
}

struct Inputs<'a> {
    v: &'a Validated,
    umbrella: Umbrella,
    curve: PlaneCurve,
    factors: FrameFactors<Rational>,
    flags: Vec<String>,
}

pub fn run_report(v: &Validated) -> Result<Value> {
    let umbrella = build_umbrella(&v.coefficients);
    let curve = build_curve(&v.curve, v.order).context("model")?;
    let factors = FrameFactors::compute(&umbrella, &curve).context("frame")?;
    let mut cx = Inputs { v, umbrella, curve, factors, flags: Vec::new() };

    let tangency = tangency_block(&cx)?;
    let curvatures = match v.config.field.field() {
        Field::Exact => {
            let report = divergence_report(&curvature_numerators(&cx.factors));
            curvature_block(&mut cx, &report)?
        }
        Field::Float => {
            let report = divergence_report(&curvature_numerators(&cx.factors.to_float()));
            curvature_block(&mut cx, &report)?
        }
    };
    let invariants = invariants_block(&cx);
    let theorems = theorems_block(&cx);
    let developable = developable_block(&mut cx);
    let numerators = curvature_numerators(&cx.factors);

    Ok(json!({
        "input": {
            "k": v.coefficients.k(),
            "order": v.order,
            "field": v.config.field.field().to_string(),
            "curve": curve_label(&v.curve),
        },
        "tangency": tangency,
        "factors": {
            "alpha": cx.factors.alpha,
            "beta": cx.factors.beta,
            "alpha0": cx.factors.alpha0,
        },
        "curvatures": curvatures,
        "invariants": invariants,
        "theorems": theorems,
        "developable": developable,
        "reliable_orders": {
            "curve": cx.curve.u.order().min(cx.curve.v.order()),
            "tangent_factor": cx.factors.e_t.order(),
            "normal_factor": cx.factors.n.order(),
            "curve_factor": cx.factors.e_c.order(),
            "numerators": numerators.iter().map(|s| s.order()).collect::<Vec<_>>(),
        },
        "flags": cx.flags,
    }))
}

fn tangency_block(cx: &Inputs) -> Result<Value> {
    let t = classify_tangency(&cx.umbrella, &cx.curve).context("model: tangency")?;
    Ok(json!({
        "case": t.case.number(),
        "excess": t.excess,
        "tangent_direction": exact3(&t.tangent_direction),
        "limiting_tangent": float3(&t.limiting_tangent),
    }))
}

fn curvature_block<C: Coeff>(cx: &mut Inputs, oracle: &CurvatureReport<C>) -> Result<Value> {
    for (i, e) in oracle.entries.iter().enumerate() {
        if let Valuation::ZeroToOrder(r) = e {
            cx.flags.push(format!("ZERO_TO_ORDER: curvature numerator {} vanishes to order {r}", i + 1));
        }
    }
    let oracle_json = json!({
        "degrees": oracle.degrees(),
        "entries": oracle.entries.iter().map(valuation_json).collect::<Vec<_>>(),
    });
    let closed = match Subcase::of(&cx.v.curve) {
        Ok(subcase) => {
            let (_, closed) = closed_form_reference(&cx.v.curve, &cx.v.coefficients).context("frame: closed forms")?;
            let verdicts = compare_reports(oracle, &closed, subcase, FLOAT_TOL);
            for (i, ev) in verdicts.iter().enumerate() {
                if ev.verdict == Verdict::NonGeneric {
                    cx.flags.push(format!("NON-GENERIC: entry {} of {}", i + 1, subcase.name()));
                }
            }
            json!({
                "subcase": subcase.name(),
                "entries": closed.entries.iter().map(valuation_json).collect::<Vec<_>>(),
                "verdicts": verdicts.iter().map(|e| e.verdict.label()).collect::<Vec<_>>(),
                "verdict": combine(verdicts.iter().map(|e| e.verdict)).label(),
            })
        }
        Err(_) => Value::Null,
    };
    Ok(json!({ "oracle": oracle_json, "closed_form": closed }))
}

fn invariants_block(cx: &Inputs) -> Value {
    match top_invariants(&cx.v.coefficients, &cx.v.curve) {
        Ok(inv) => {
            let parts = c2m_parts(&cx.v.curve).expect("checked by top_invariants");
            let predicted = inv.predicted_tops(parts.m, &cx.v.coefficients.a(0, 2));
            json!({
                "A": exact(&inv.a),
                "B": exact(&inv.b),
                "C": exact(&inv.c),
                "D": exact(&inv.d),
                "predicted_tops": exact3(&predicted),
            })
        }
        Err(e) => json!({ "not_applicable": e.to_string() }),
    }
}

fn theorems_block(cx: &Inputs) -> Value {
    let mut out = serde_json::Map::new();
    match self_intersection(&cx.v.coefficients) {
        Ok(si) => {
            out.insert(
                "self_intersection".into(),
                json!({
                    "d11": exact(&si.d11),
                    "d21": exact(&si.d21),
                    "d12": exact(&si.d12),
                    "d22": exact(&si.d22),
                    "tangent_direction": exact3(&si.tangent_direction),
                    "symmetric_through_cubic": si.symmetric_through_cubic(),
                }),
            );
            if let Ok(inv) = top_invariants(&cx.v.coefficients, &cx.v.curve) {
                out.insert(
                    "double_point_tangency".into(),
                    match self_intersection_tangency(&si, &cx.factors, &inv) {
                        Ok(t) => json!({
                            "predicate": t.parallel,
                            "b_vanishes": t.b_vanishes,
                            "agrees": t.agrees(),
                        }),
                        Err(e) => json!({ "error": format!("invariants: {e}") }),
                    },
                );
            }
        }
        Err(e) => {
            out.insert("self_intersection".into(), json!({ "error": format!("invariants: {e}") }));
        }
    }
    if c2m_parts(&cx.v.curve).is_ok() {
        out.insert(
            "projection".into(),
            match projection_tangency(&cx.umbrella, &cx.v.curve, &cx.curve) {
                Ok(p) => json!({
                    "verdict": p.verdict.label(),
                    "invariant_verdict": p.invariant_verdict.label(),
                    "b_coefficient": exact(&p.b_coefficient),
                    "n_coefficient": exact(&p.n_coefficient),
                    "agrees": p.agrees(),
                }),
                Err(e) => json!({ "error": format!("invariants: {e}") }),
            },
        );
        out.insert(
            "contour".into(),
            match contour_deviation(&cx.umbrella, &cx.v.curve, &cx.curve) {
                Ok(c) => json!({
                    "exact_coefficient": exact(&c.exact_coefficient),
                    "float_coefficient": float(c.float_coefficient),
                    "c_vanishes": c.c_vanishes,
                    "agrees": c.agrees(),
                }),
                Err(e) => json!({ "error": format!("invariants: {e}") }),
            },
        );
    }
    Value::Object(out)
}

fn opt_float(x: Option<f64>) -> Value {
    x.map_or(Value::Null, float)
}

fn developable_block(cx: &mut Inputs) -> Value {
    let gamma = match cx.umbrella.image_curve(&cx.curve) {
        Ok(g) => g.to_float(),
        Err(e) => return json!({ "error": format!("model: {e}") }),
    };
    let d = match DevelopableData::from_factors(&cx.factors, &gamma) {
        Ok(d) => d,
        Err(e) => return json!({ "error": format!("developable: {e}") }),
    };
    if let Order::Above(j) = d.k_cyl {
        cx.flags.push(format!("ZERO_TO_ORDER: delta vanishes within tolerance through degree {j}"));
    }
    let striction = d.striction.as_ref().map_or(Value::Null, |st| {
        json!({
            "exponent": st.exponent,
            "exists": st.exists,
            "passes_through_umbrella": st.passes_through_umbrella,
        })
    });
    let k_con = d.striction.as_ref().and_then(|st| st.k_con).map(order_label);
    let cl = &d.classification;
    let r = &d.residuals;
    json!({
        "branch": d.branch.branch.label(),
        "alphas": d.reduced.alphas,
        "k_cyl": order_label(d.k_cyl),
        "delta_top": d.k_cyl.exact().map_or(Value::Null, |k| float(d.delta.coeffs()[k])),
        "striction": striction,
        "k_con": k_con,
        "sigma_top": opt_float(d.sigma_top()),
        "case": cl.case.label(),
        "E": cl.e_exact.as_ref().map_or(Value::Null, exact),
        "F": cl.f_exact.as_ref().map_or(Value::Null, exact),
        "E_float": opt_float(cl.e_float),
        "F_float": opt_float(cl.f_float),
        "residuals": {
            "developability": float(r.developability),
            "director_derivative": float(r.director_derivative),
            "director_unit": float(r.director_unit),
            "director_normal": float(r.director_normal),
            "delta_branch": float(r.delta_branch),
            "striction_orthogonality": opt_float(r.striction_orthogonality),
            "striction_collinearity": opt_float(r.striction_collinearity),
            "sigma_identity": opt_float(r.sigma_identity),
            "sigma_branch": opt_float(r.sigma_branch),
        },
    })
}

/// Pretty JSON followed by a newline.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
