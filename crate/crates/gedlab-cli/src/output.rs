//! Output serialization: canonical JSON (sorted keys, big integers as
//! decimal strings), CSV with a header row, and a human table.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use gedlab::ged::GedResult;
use gedlab::stability::{FitReport, ReductionReport, StabilityTable};

pub struct Rendered {
    pub json: Value,
    pub table: String,
    pub csv: String,
}

pub fn int_value(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn ints_value(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(int_value).collect())
}

/// Canonical serialization: `serde_json`'s default map is a BTreeMap, so
/// objects come out with sorted keys; parsing and re-serializing the emitted
/// string is byte-identical.
pub fn to_canonical_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON serialization cannot fail")
}

fn obj(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

pub struct PathInfo {
    pub method: &'static str,
    pub paths_agree: Option<bool>,
    pub seed: Option<u64>,
}

pub fn render_ged(command: &str, r: &GedResult, path: &PathInfo) -> Rendered {
    let mut entries = vec![
        ("command", json!(command)),
        ("rows", json!(r.rows)),
        ("cols", json!(r.cols)),
        ("rank", json!(r.rank)),
        ("dimension", json!(r.dimension)),
        ("cm_degrees", ints_value(&r.cm_degrees)),
        ("degree", int_value(&r.degree)),
        ("ged", int_value(&r.ged)),
        ("method", json!(path.method)),
    ];
    if let Some(agree) = path.paths_agree {
        entries.push(("paths_agree", json!(agree)));
    }
    if let Some(seed) = path.seed {
        entries.push(("seed", json!(seed)));
    }
    if let Some(neuro) = &r.neuro {
        entries.push(("input_dim", json!(neuro.input_dim)));
        entries.push(("support", json!(neuro.support)));
    }
    let json = obj(entries);

    let mut table = String::new();
    if let Some(neuro) = &r.neuro {
        table.push_str(&format!(
            "neuro layer: n = {}, support = {:?}, width = {} -> N_S = {}\n",
            neuro.input_dim, neuro.support, r.rank, r.rows
        ));
    }
    table.push_str(&format!(
        "determinantal variety: {} x {} matrices of rank <= {}\n",
        r.rows, r.cols, r.rank
    ));
    table.push_str(&format!("dimension  d = {}\n", r.dimension));
    table.push_str(&format!("degree       = {}\n", r.degree));
    table.push_str(&format!("gED          = {}\n", r.ged));
    table.push_str(&format!(
        "A_j, j=0..d  = {}\n",
        r.cm_degrees
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    table.push_str(&format!("method       = {}", path.method));
    if let Some(agree) = path.paths_agree {
        table.push_str(if agree {
            " (paths agree)"
        } else {
            " (PATHS DISAGREE)"
        });
    }
    if let Some(seed) = path.seed {
        table.push_str(&format!(", seed = {seed}"));
    }
    table.push('\n');

    let csv = format!(
        "rows,cols,rank,dimension,degree,ged,cm_degrees\n{},{},{},{},{},{},{}\n",
        r.rows,
        r.cols,
        r.rank,
        r.dimension,
        r.degree,
        r.ged,
        r.cm_degrees
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );

    Rendered { json, table, csv }
}

pub fn render_fit(rep: &FitReport, grid: &[(u64, u64, BigInt)]) -> Rendered {
    let poly = rep.poly.as_ref().map(|p| {
        Value::Array(
            p.terms()
                .iter()
                .map(|(&(a, b), c)| {
                    obj(vec![
                        ("n_exp", json!(a)),
                        ("m_exp", json!(b)),
                        ("coeff", json!(c.to_string())),
                    ])
                })
                .collect(),
        )
    });
    let validation = Value::Array(
        rep.validation_points
            .iter()
            .map(|v| {
                obj(vec![
                    ("n", json!(v.n)),
                    ("m", json!(v.m)),
                    ("predicted", json!(v.predicted.to_string())),
                    ("actual", json!(v.actual.to_string())),
                    ("exact", json!(v.exact())),
                ])
            })
            .collect(),
    );
    let grid_json = Value::Array(
        grid.iter()
            .map(|(n, m, g)| {
                obj(vec![
                    ("n", json!(n)),
                    ("m", json!(m)),
                    ("ged", int_value(g)),
                ])
            })
            .collect(),
    );
    let json = obj(vec![
        ("command", json!("fit")),
        ("support", json!(rep.support.to_vec())),
        ("width", json!(rep.width)),
        ("n_range", json!([rep.n_range.0, rep.n_range.1])),
        ("m_range", json!([rep.m_range.0, rep.m_range.1])),
        ("max_degree", json!(rep.max_degree)),
        ("stable", json!(rep.stable)),
        (
            "detected_threshold",
            rep.detected_threshold
                .map(|(a, b)| json!([a, b]))
                .unwrap_or(Value::Null),
        ),
        (
            "fit_window",
            rep.fit_window
                .map(|((a, b), (c, d))| json!([[a, b], [c, d]]))
                .unwrap_or(Value::Null),
        ),
        ("polynomial", poly.unwrap_or(Value::Null)),
        ("validation", validation),
        ("grid", grid_json),
    ]);

    let mut table = format!(
        "stable polynomiality probe: support {:?}, width {}\n\
         grid n in [{}, {}], m in [{}, {}], degree cap {}\n",
        rep.support.to_vec(),
        rep.width,
        rep.n_range.0,
        rep.n_range.1,
        rep.m_range.0,
        rep.m_range.1,
        rep.max_degree
    );
    if rep.stable {
        let (lo, hi) = rep.fit_window.unwrap();
        table.push_str(&format!(
            "STABLE: window [{},{}]x[{},{}] validates every held-out point exactly\n",
            lo.0, hi.0, lo.1, hi.1
        ));
        table.push_str("polynomial terms (n_exp, m_exp) -> coeff:\n");
        for (&(a, b), c) in rep.poly.as_ref().unwrap().terms() {
            table.push_str(&format!("  n^{a} m^{b}: {c}\n"));
        }
    } else {
        table.push_str(
            "NOT STABLE within budget: no fit window of degree <= cap reproduced the held-out values exactly\n",
        );
    }
    for v in &rep.validation_points {
        table.push_str(&format!(
            "  held-out ({}, {}): predicted {} actual {}{}\n",
            v.n,
            v.m,
            v.predicted,
            v.actual,
            if v.exact() { "" } else { "  <- mismatch" }
        ));
    }

    let mut csv = String::from("n,m,ged,predicted,exact\n");
    for (n, m, g) in grid {
        let pred = rep
            .poly
            .as_ref()
            .map(|p| p.eval(*n, *m).to_string())
            .unwrap_or_default();
        let exact = rep
            .poly
            .as_ref()
            .map(|p| (p.eval(*n, *m) == gedlab::Rat::from_integer(g.clone())).to_string())
            .unwrap_or_default();
        csv.push_str(&format!("{n},{m},{g},{pred},{exact}\n"));
    }

    Rendered { json, table, csv }
}

pub fn render_reduction(rep: &ReductionReport) -> Rendered {
    let below_stable = rep.agreement_region.is_none();
    let rows = Value::Array(
        rep.rows
            .iter()
            .map(|r| {
                obj(vec![
                    ("n", json!(r.n)),
                    ("m", json!(r.m)),
                    ("n_s_full", json!(r.n_s_full)),
                    ("n_s_monomial", json!(r.n_s_monomial)),
                    ("ged_full", int_value(&r.ged_full)),
                    ("ged_monomial", int_value(&r.ged_monomial)),
                    ("agree", json!(r.agree())),
                ])
            })
            .collect(),
    );
    let json = obj(vec![
        ("command", json!("verify-monomial")),
        ("support", json!(rep.support.to_vec())),
        ("monomial_degree", json!(rep.support.degree())),
        ("width", json!(rep.width)),
        ("n_range", json!([rep.n_range.0, rep.n_range.1])),
        ("m_range", json!([rep.m_range.0, rep.m_range.1])),
        ("rows", rows),
        (
            "agreement_region",
            rep.agreement_region
                .map(|(a, b)| json!([a, b]))
                .unwrap_or(Value::Null),
        ),
        ("upward_closed", json!(rep.upward_closed)),
        ("below_stable_range", json!(below_stable)),
        (
            "first_disagreements",
            json!(rep
                .first_disagreements
                .iter()
                .map(|&(a, b)| vec![a, b])
                .collect::<Vec<_>>()),
        ),
    ]);

    let mut table = format!(
        "monomial reduction: support {:?} vs monomial {{{}}}, width {}\n",
        rep.support.to_vec(),
        rep.support.degree(),
        rep.width
    );
    table.push_str("   n   m      N_S    ged(S)            N_r    ged(r)            agree\n");
    for r in &rep.rows {
        table.push_str(&format!(
            "{:>4}{:>4}{:>9}  {:<18}{:>5}  {:<18}{}\n",
            r.n,
            r.m,
            r.n_s_full,
            r.ged_full.to_string(),
            r.n_s_monomial,
            r.ged_monomial.to_string(),
            r.agree()
        ));
    }
    match rep.agreement_region {
        Some((a, b)) => table.push_str(&format!(
            "agreement region: all points with n >= {a}, m >= {b} agree (upward closed: {})\n",
            rep.upward_closed
        )),
        None => table.push_str(
            "agreement region: empty — the tested grid is below the stable range of the reduction\n",
        ),
    }

    let mut csv = String::from("n,m,n_s_full,ged_full,n_s_monomial,ged_monomial,agree\n");
    for r in &rep.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n,
            r.m,
            r.n_s_full,
            r.ged_full,
            r.n_s_monomial,
            r.ged_monomial,
            r.agree()
        ));
    }

    Rendered { json, table, csv }
}

pub fn render_stability(t: &StabilityTable) -> Rendered {
    let rows = Value::Array(
        t.rows
            .iter()
            .map(|(n, g)| obj(vec![("n", json!(n)), ("ged", int_value(g))]))
            .collect(),
    );
    let json = obj(vec![
        ("command", json!("stability-in-n")),
        ("cols", json!(t.cols)),
        ("rank", json!(t.rank)),
        ("rows", rows),
        (
            "constant_from",
            t.constant_from.map(|v| json!(v)).unwrap_or(Value::Null),
        ),
    ]);

    let mut table = format!(
        "gED across N at cols = {}, rank = {}\n   N  ged\n",
        t.cols, t.rank
    );
    for (n, g) in &t.rows {
        table.push_str(&format!("{:>4}  {}\n", n, g));
    }
    match t.constant_from {
        Some(from) if t.rows.len() > 1 && from < t.rows.last().unwrap().0 => {
            table.push_str(&format!("constant suffix from N = {from}\n"))
        }
        _ => table.push_str("no constant suffix of length > 1 in this range\n"),
    }

    let mut csv = String::from("n,ged\n");
    for (n, g) in &t.rows {
        csv.push_str(&format!("{n},{g}\n"));
    }

    Rendered { json, table, csv }
}

pub fn render_selftest(checks: &[(String, bool)]) -> Rendered {
    let ok = checks.iter().all(|(_, ok)| *ok);
    let json = obj(vec![
        ("command", json!("selftest")),
        (
            "checks",
            Value::Array(
                checks
                    .iter()
                    .map(|(name, ok)| obj(vec![("name", json!(name)), ("ok", json!(ok))]))
                    .collect(),
            ),
        ),
        ("ok", json!(ok)),
    ]);
    let mut table = String::new();
    for (name, ok) in checks {
        table.push_str(&format!("{} {}\n", if *ok { "ok  " } else { "FAIL" }, name));
    }
    table.push_str(&format!(
        "selftest: {}\n",
        if ok { "all checks passed" } else { "FAILURES" }
    ));
    let mut csv = String::from("check,ok\n");
    for (name, ok) in checks {
        csv.push_str(&format!("{name},{ok}\n"));
    }
    Rendered { json, table, csv }
}
