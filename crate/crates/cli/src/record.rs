use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use vdw_core::{
    classify_closed_form, is_cohen_macaulay, is_linearly_presented, is_shellable,
    is_vertex_decomposable, vdw_complex, vdw_dual_ideal, Field, VdwParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Check {
    Vd,
    Shellable,
    Cm,
    Lp,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Vd, Check::Shellable, Check::Cm, Check::Lp];

    pub fn name(self) -> &'static str {
        match self {
            Check::Vd => "vd",
            Check::Shellable => "shellable",
            Check::Cm => "cm",
            Check::Lp => "lp",
        }
    }

    /// Largest `n` a sweep runs this check at without `--force`.
    pub fn sweep_limit(self) -> usize {
        match self {
            Check::Vd => 9,
            Check::Shellable => 8,
            Check::Cm => 10,
            Check::Lp => 10,
        }
    }
}

/// Which checks to run for one `(n, k)` and how.
#[derive(Debug, Clone)]
pub struct Plan {
    pub checks: Vec<Check>,
    pub fields: Vec<Field>,
    pub budget: u64,
    pub timings: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub n: usize,
    pub k: usize,
    pub pure: bool,
    pub vd: Option<bool>,
    pub shellable: Option<bool>,
    #[serde(rename = "cm_Q")]
    pub cm_q: Option<bool>,
    #[serde(rename = "cm_F2")]
    pub cm_f2: Option<bool>,
    /// Results over any further prime fields, keyed like `Fp:3`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub cm_other: BTreeMap<String, bool>,
    pub linearly_presented: Option<bool>,
    pub predicted_vd: bool,
    pub predicted_shellable: bool,
    pub predicted_cm: bool,
    pub agreement: bool,
    /// The shellability search ran out of budget.
    pub undecided: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

/// Column label for a field: `Q`, `F2`, or `Fp:<p>`.
pub fn field_label(f: Field) -> String {
    match f {
        Field::Prime(2) => "F2".into(),
        other => other.to_string(),
    }
}

fn timed<T>(times: &mut BTreeMap<String, f64>, key: String, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    times.insert(key, start.elapsed().as_secs_f64() * 1000.0);
    out
}

pub fn run(p: VdwParams, plan: &Plan) -> SweepRecord {
    let complex = vdw_complex(p);
    let predicted = classify_closed_form(p);
    let mut times = BTreeMap::new();
    let mut rec = SweepRecord {
        n: p.n(),
        k: p.k(),
        pure: complex.is_pure(),
        vd: None,
        shellable: None,
        cm_q: None,
        cm_f2: None,
        cm_other: BTreeMap::new(),
        linearly_presented: None,
        predicted_vd: predicted.vertex_decomposable,
        predicted_shellable: predicted.shellable,
        predicted_cm: predicted.cohen_macaulay,
        agreement: true,
        undecided: false,
        timings_ms: None,
    };
    for &check in &plan.checks {
        match check {
            Check::Vd => {
                let vd = timed(&mut times, "vd".into(), || {
                    is_vertex_decomposable(&complex).expect("vdW complexes are pure")
                });
                rec.vd = Some(vd.is_some());
            }
            Check::Shellable => {
                let out = timed(&mut times, "shellable".into(), || {
                    is_shellable(&complex, plan.budget).expect("vdW complexes are pure")
                });
                rec.shellable = out.is_shellable();
                rec.undecided = rec.shellable.is_none();
            }
            Check::Cm => {
                for &field in &plan.fields {
                    let cm = timed(&mut times, format!("cm_{}", field_label(field)), || {
                        is_cohen_macaulay(&complex, field).expect("field already validated")
                    })
                    .cohen_macaulay;
                    match field {
                        Field::Rational => rec.cm_q = Some(cm),
                        Field::Prime(2) => rec.cm_f2 = Some(cm),
                        other => {
                            rec.cm_other.insert(other.to_string(), cm);
                        }
                    }
                }
            }
            Check::Lp => {
                let lp = timed(&mut times, "lp".into(), || {
                    is_linearly_presented(&vdw_dual_ideal(p))
                        .expect("dual ideals of vdW complexes are equigenerated")
                });
                rec.linearly_presented = Some(lp.linear);
            }
        }
    }
    let agrees = |computed: Option<bool>, predicted: bool| computed.is_none_or(|c| c == predicted);
    rec.agreement = agrees(rec.vd, rec.predicted_vd)
        && agrees(rec.shellable, rec.predicted_shellable)
        && agrees(rec.cm_q, rec.predicted_cm)
        && agrees(rec.cm_f2, rec.predicted_cm)
        && rec.cm_other.values().all(|&c| c == rec.predicted_cm);
    if plan.timings {
        rec.timings_ms = Some(times);
    }
    rec
}

/// Column names for tabular output. Fixed apart from the optional extra-field
/// and timing columns, which depend on the flags and are appended in place.
pub fn header(plan: &Plan) -> Vec<String> {
    let mut cols: Vec<String> = ["n", "k", "pure", "vd", "shellable", "cm_Q", "cm_F2"]
        .map(String::from)
        .to_vec();
    cols.extend(extra_fields(plan).map(|f| format!("cm_{f}")));
    cols.extend(
        [
            "linearly_presented",
            "predicted_vd",
            "predicted_shellable",
            "predicted_cm",
            "agreement",
            "undecided",
        ]
        .map(String::from),
    );
    if plan.timings {
        cols.extend(timing_keys(plan).into_iter().map(|k| format!("ms_{k}")));
    }
    cols
}

fn extra_fields(plan: &Plan) -> impl Iterator<Item = Field> + '_ {
    let cm = plan.checks.contains(&Check::Cm);
    plan.fields
        .iter()
        .copied()
        .filter(move |&f| cm && f != Field::Rational && f != Field::F2)
}

fn timing_keys(plan: &Plan) -> Vec<String> {
    let mut keys = Vec::new();
    for &c in &plan.checks {
        if c == Check::Cm {
            keys.extend(
                plan.fields
                    .iter()
                    .map(|&f| format!("cm_{}", field_label(f))),
            );
        } else {
            keys.push(c.name().to_string());
        }
    }
    keys
}

fn cell(b: Option<bool>) -> String {
    b.map(|b| b.to_string()).unwrap_or_default()
}

pub fn row(rec: &SweepRecord, plan: &Plan) -> Vec<String> {
    let mut out = vec![
        rec.n.to_string(),
        rec.k.to_string(),
        rec.pure.to_string(),
        cell(rec.vd),
        cell(rec.shellable),
        cell(rec.cm_q),
        cell(rec.cm_f2),
    ];
    out.extend(extra_fields(plan).map(|f| cell(rec.cm_other.get(&f.to_string()).copied())));
    out.extend([
        cell(rec.linearly_presented),
        rec.predicted_vd.to_string(),
        rec.predicted_shellable.to_string(),
        rec.predicted_cm.to_string(),
        rec.agreement.to_string(),
        rec.undecided.to_string(),
    ]);
    if plan.timings {
        let times = rec.timings_ms.as_ref();
        out.extend(timing_keys(plan).into_iter().map(|k| {
            times
                .and_then(|t| t.get(&k))
                .map(|ms| format!("{ms:.3}"))
                .unwrap_or_default()
        }));
    }
    out
}
