//! JSON reports.

use mayocut::discrete::Diagnostics;
use mayocut::measure::{LevelTrace, MeasureSolution};
use mayocut::oracle::GridVerifyReport;
use mayocut::scalar::format_rational;
use mayocut::{CutReport, Hyperplane, Rational, Scalar, Solution, VerifyReport};
use serde_json::{json, Value};

/// Exact values print as fraction strings, floats as JSON numbers.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
}

impl ToJson for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

fn list<S: ToJson>(xs: &[S]) -> Value {
    Value::Array(xs.iter().map(ToJson::to_json).collect())
}

fn distance(d: f64) -> Value {
    if d.is_finite() {
        json!(d)
    } else {
        Value::Null
    }
}

pub fn plane<S: Scalar + ToJson>(h: &Hyperplane<S>) -> Value {
    json!({ "text": h.to_string(), "normal": list(h.normal()), "offset": h.offset().to_json() })
}

pub fn cut_report<S: Scalar + ToJson>(r: &CutReport<S>) -> Value {
    let measures: Vec<Value> = r
        .measures
        .iter()
        .map(|m| {
            json!({
                "name": m.name,
                "total": m.total.to_json(),
                "minus": m.masses.minus.to_json(),
                "on": m.masses.on.to_json(),
                "plus": m.masses.plus.to_json(),
                "touch_witness": m.touch_witness.as_ref().map(|(i, p)| json!({ "index": i, "point": list(p.coords()) })),
                "support_distance": distance(m.support_distance),
                "bisected": m.bisected,
                "touched": m.touched,
            })
        })
        .collect();
    json!({
        "hyperplane": plane(&r.hyperplane),
        "measures": measures,
        "all_bisected": r.all_bisected,
        "all_touched": r.all_touched,
    })
}

fn diagnostics(d: &Diagnostics) -> Value {
    json!({
        "phase": format!("{:?}", d.phase),
        "candidates_examined": d.candidates_examined.to_string(),
        "completions_used": d.completions_used.to_string(),
        "perturbation_retries": d.perturbation_retries,
    })
}

pub fn solution(s: &Solution) -> Value {
    json!({
        "hyperplane": plane(&s.hyperplane),
        "witness_tuple": s.witness_tuple,
        "diagnostics": diagnostics(&s.diagnostics),
        "report": cut_report(&s.report),
    })
}

fn level(l: &LevelTrace) -> Value {
    let measures: Vec<Value> = l
        .measures
        .iter()
        .map(|m| {
            json!({
                "name": m.name,
                "total": m.total,
                "atom_minus": m.atom_masses.minus,
                "atom_on": m.atom_masses.on,
                "atom_plus": m.atom_masses.plus,
                "minus_bound": m.minus_bound,
                "plus_bound": m.plus_bound,
                "slab_mass": m.slab_mass,
                "support_distance": distance(m.support_distance),
                "within_slab_bound": m.within_slab_bound(),
            })
        })
        .collect();
    json!({
        "eps": l.eps,
        "cell_size": l.cell_size,
        "hyperplane": plane(&l.hyperplane),
        "atom_counts": l.atom_counts,
        "directions_examined": l.directions_examined,
        "within_slab_bounds": l.within_slab_bounds(),
        "touches_within_eps": l.touches_within_eps(),
        "atom_incidence": l.atom_incidence(),
        "measures": measures,
    })
}

pub fn measure_solution(s: &MeasureSolution) -> Value {
    let t = &s.trace;
    json!({
        "hyperplane": plane(&s.hyperplane),
        "report": cut_report(&s.report),
        "trace": {
            "levels": t.levels.iter().map(level).collect::<Vec<_>>(),
            "limit": plane(&t.limit),
            "converged": t.converged,
            "angle_change": t.angle_change,
            "offset_change": t.offset_change,
        },
    })
}

pub fn verify_report(r: &VerifyReport<Rational>, h: &Hyperplane<Rational>) -> Value {
    let measures: Vec<Value> = r
        .measures
        .iter()
        .map(|m| {
            json!({
                "name": m.name,
                "total": m.total.to_json(),
                "minus": m.minus.to_json(),
                "on": m.on.to_json(),
                "plus": m.plus.to_json(),
                "bisected": m.bisected,
                "touched": m.touched,
                "witness": m.witness,
                "nearest_distance": distance(m.nearest_distance),
            })
        })
        .collect();
    json!({ "hyperplane": plane(h), "measures": measures, "verdict": r.verdict })
}

pub fn grid_verify_report(r: &GridVerifyReport, h: &Hyperplane<f64>, eps: f64) -> Value {
    let measures: Vec<Value> = r
        .measures
        .iter()
        .map(|m| {
            json!({
                "name": m.name,
                "total": m.total,
                "minus_bound": m.minus_bound,
                "plus_bound": m.plus_bound,
                "slab_mass": m.slab_mass,
                "nearest_distance": distance(m.nearest_distance),
                "bisected": m.bisected,
                "touched": m.touched,
            })
        })
        .collect();
    json!({ "hyperplane": plane(h), "eps": eps, "measures": measures, "verdict": r.verdict })
}
