//! One function per subcommand, each turning parsed flags into an [`Output`].

use std::path::Path;

use serde_json::{json, Value};
use svalue::calibrate::calibration_report;
use svalue::combine::{
    compare_methods, pooled_homogeneity_test, s_summation_test, z_squared_test, Evidence,
    StudyResult,
};
use svalue::curves::{curve, EstimateSpec};
use svalue::simulate::{simulate, NullGenerator, RngSpec, MIN_RELIABLE_N};
use svalue::units::{coin_toss_gauge, from_surprisal, surprisal, two_sided_to_sigma};
use svalue::{InfoUnit, PValue, SValue};

use crate::error::{CliError, CliResult};
use crate::input::{read_studies, Schema};
use crate::render::{json_num, Cell, Output, Table};

fn in_unit(nats: f64, unit: InfoUnit) -> f64 {
    nats / unit.nats_per_unit()
}

/// The input P-value, given directly or recovered from an S-value.
pub enum ConvertInput {
    P(f64),
    S(f64, InfoUnit),
}

pub fn convert(input: ConvertInput) -> CliResult<Output> {
    let p = match input {
        ConvertInput::P(p) => PValue::new(p)?,
        ConvertInput::S(s, unit) => from_surprisal(SValue::new(s, unit)?),
    };
    let mut notes = Vec::new();
    let sigma = match two_sided_to_sigma(p) {
        Ok(z) => Some(z),
        Err(e) => {
            notes.push(format!("sigma undefined: {e}"));
            None
        }
    };
    let s = |unit| Cell::num(surprisal(p, unit).value());
    let table = Table::record(vec![
        ("p", Cell::num(p.get())),
        ("bits", s(InfoUnit::Bits)),
        ("nats", s(InfoUnit::Nats)),
        ("dits", s(InfoUnit::Dits)),
        ("tosses", Cell::Int(coin_toss_gauge(p))),
        ("sigma", Cell::opt(sigma)),
    ]);
    Ok(Output::from_record(table, notes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    SSum,
    Z2,
    Pooled,
    Compare,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::SSum => "s-sum",
            Method::Z2 => "z2",
            Method::Pooled => "pooled",
            Method::Compare => "compare",
        }
    }

    fn schema(self) -> Schema {
        match self {
            Method::SSum => Schema::P,
            _ => Schema::Effect,
        }
    }
}

pub fn combine(path: &Path, method: Method, null: f64, unit: InfoUnit) -> CliResult<Output> {
    if !null.is_finite() {
        return Err(CliError::usage(format!(
            "--null must be finite, got {null}"
        )));
    }
    let studies = read_studies(path, method.schema(), method.name())?;
    let name = Cell::text(method.name());
    let unit_cell = Cell::text(unit.name());
    match method {
        Method::SSum => {
            let r = s_summation_test(&studies)?;
            let table = Table::record(vec![
                ("method", name),
                ("k", Cell::Int(r.k as u64)),
                ("df", Cell::Int(r.df.into())),
                ("unit", unit_cell),
                ("s_plus", Cell::num(r.s_plus.convert(unit).value())),
                ("p_summary", Cell::num(r.p_summary)),
                ("s_summary", Cell::num(r.s_summary.convert(unit).value())),
                ("noise", Cell::num(in_unit(r.expected_noise_nats, unit))),
                ("shrinkage", Cell::num(in_unit(r.shrinkage_nats, unit))),
            ]);
            Ok(Output::from_record(table, Vec::new()))
        }
        Method::Z2 => {
            let zs: Vec<f64> = effects(&studies).map(|(m, se)| (m - null) / se).collect();
            if let Some(bad) = zs.iter().position(|z| !z.is_finite()) {
                return Err(CliError::usage(format!(
                    "study `{}` has a z-score that overflows",
                    studies[bad].id
                )));
            }
            let r = z_squared_test(&zs)?;
            let table = Table::record(vec![
                ("method", name),
                ("k", Cell::Int(r.k as u64)),
                ("df", Cell::Int(r.df.into())),
                ("null", Cell::num(null)),
                ("unit", unit_cell),
                ("statistic", Cell::num(r.statistic)),
                ("p_summary", Cell::num(r.p_summary)),
                ("s_summary", Cell::num(r.s_summary.convert(unit).value())),
            ]);
            Ok(Output::from_record(table, Vec::new()))
        }
        Method::Pooled => {
            let r = pooled_homogeneity_test(&studies, null)?;
            let table = Table::record(vec![
                ("method", name),
                ("k", Cell::Int(r.k as u64)),
                ("df", Cell::Int(r.df.into())),
                ("null", Cell::num(null)),
                ("unit", unit_cell),
                ("pooled_estimate", Cell::num(r.pooled_estimate)),
                ("pooled_se", Cell::num(r.pooled_se)),
                ("z", Cell::num(r.z)),
                ("p_summary", Cell::num(r.p_two_sided)),
                ("s_summary", Cell::num(r.s_summary.convert(unit).value())),
            ]);
            Ok(Output::from_record(table, Vec::new()))
        }
        Method::Compare => compare(&studies, null, unit),
    }
}

fn effects(studies: &[StudyResult]) -> impl Iterator<Item = (f64, f64)> + '_ {
    studies.iter().filter_map(|s| match s.evidence {
        Evidence::Effect {
            estimate,
            std_error,
        } => Some((estimate, std_error)),
        Evidence::P { .. } => None,
    })
}

fn compare(studies: &[StudyResult], null: f64, unit: InfoUnit) -> CliResult<Output> {
    let c = compare_methods(studies, null)?;
    let fisher_s = c.s_summation.s_summary.convert(unit).value();
    let pooled_s = c.pooled.s_summary.convert(unit).value();
    let difference = in_unit(c.difference_nats, unit);
    let columns = [
        "method",
        "k",
        "df",
        "unit",
        "p_summary",
        "s_summary",
        "minus_s_sum",
    ];
    let row = |method: &str, df: u32, p: f64, s: f64, delta: f64| {
        vec![
            Cell::text(method),
            Cell::Int(c.k as u64),
            Cell::Int(df.into()),
            Cell::text(unit.name()),
            Cell::num(p),
            Cell::num(s),
            Cell::num(delta),
        ]
    };
    let summary = Table::rows(
        &columns,
        vec![
            row(
                "s-sum",
                c.s_summation.df,
                c.s_summation.p_summary,
                fisher_s,
                0.0,
            ),
            row(
                "pooled",
                c.pooled.df,
                c.pooled.p_two_sided,
                pooled_s,
                difference,
            ),
        ],
    );
    let per_study = Table::rows(
        &["id", "estimate", "std_error", "p"],
        studies
            .iter()
            .zip(effects(studies))
            .zip(&c.study_p_values)
            .map(|((s, (m, se)), p)| {
                vec![
                    Cell::text(s.id.clone()),
                    Cell::num(m),
                    Cell::num(se),
                    Cell::num(*p),
                ]
            })
            .collect(),
    );
    let studies_json: Vec<Value> = studies
        .iter()
        .zip(&c.study_p_values)
        .map(|(s, p)| json!({ "id": s.id, "p": json_num(*p) }))
        .collect();
    let json = json!({
        "method": "compare",
        "k": c.k,
        "null": json_num(null),
        "unit": unit.name(),
        "studies": studies_json,
        "s_sum": {
            "df": c.s_summation.df,
            "s_plus": json_num(c.s_summation.s_plus.convert(unit).value()),
            "p_summary": json_num(c.s_summation.p_summary),
            "s_summary": json_num(fisher_s),
        },
        "pooled": {
            "df": c.pooled.df,
            "pooled_estimate": json_num(c.pooled.pooled_estimate),
            "pooled_se": json_num(c.pooled.pooled_se),
            "z": json_num(c.pooled.z),
            "p_summary": json_num(c.pooled.p_two_sided),
            "s_summary": json_num(pooled_s),
        },
        "pooled_minus_s_sum": json_num(difference),
        "notes": [],
    });
    Ok(Output {
        json,
        tables: vec![summary.clone(), per_study],
        csv: summary,
        notes: Vec::new(),
    })
}

pub fn calibrate(p: f64, d: u32) -> CliResult<Output> {
    let r = calibration_report(PValue::new(p)?, d)?;
    let table = Table::record(vec![
        ("p", Cell::num(r.p.get())),
        ("d", Cell::Int(r.df_d.into())),
        ("mlr", Cell::opt(r.mlr)),
        ("deviance", Cell::opt(r.deviance)),
        ("aic_delta", Cell::opt(r.aic_delta)),
        ("bf_lower_bound", Cell::opt(r.bf_lower_bound)),
        ("odds_increase_bound", Cell::opt(r.odds_increase_bound)),
        ("conditional_type1", Cell::opt(r.conditional_type1)),
    ]);
    Ok(Output::from_record(table, r.notes))
}

pub struct CurveArgs {
    pub estimate: f64,
    pub se: f64,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

pub fn curve_cmd(args: &CurveArgs, unit: InfoUnit) -> CliResult<Output> {
    let spec = EstimateSpec::new(args.estimate, args.se)?;
    let points = curve(&spec, args.from, args.to, args.steps, unit)?;
    let columns = ["mu1", "p_ge", "p_le", "s_le", "p_two", "s_two"];
    let rows: Vec<Vec<Cell>> = points
        .iter()
        .map(|r| {
            vec![
                Cell::num(r.mu1),
                Cell::num(r.p_ge),
                Cell::num(r.p_le),
                Cell::num(r.s_le.value()),
                Cell::num(r.p_two),
                Cell::num(r.s_two.value()),
            ]
        })
        .collect();
    let table = Table::rows(&columns, rows);
    let points_json: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            Value::Object(
                columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(row.iter().map(Cell::to_json))
                    .collect(),
            )
        })
        .collect();
    let json = json!({
        "estimate": json_num(args.estimate),
        "se": json_num(args.se),
        "unit": unit.name(),
        "points": points_json,
        "notes": [],
    });
    Ok(Output {
        json,
        tables: vec![table.clone()],
        csv: table,
        notes: Vec::new(),
    })
}

pub fn simulate_cmd(
    n: usize,
    rng: RngSpec,
    alphas: &[f64],
    generator: NullGenerator,
) -> CliResult<Output> {
    let s = simulate(n, rng, alphas, generator)?;
    let mut notes = Vec::new();
    if s.low_n {
        notes.push(format!(
            "n = {n} is below {MIN_RELIABLE_N}; rates and means are too noisy to judge validity"
        ));
    }
    let (generator_name, trials, theta0) = match s.generator {
        NullGenerator::Uniform => ("uniform", Cell::Null, Cell::Null),
        NullGenerator::ExactBinomial { trials, theta0 } => {
            ("binomial", Cell::Int(trials.into()), Cell::num(theta0))
        }
    };
    let summary = Table::record(vec![
        ("generator", Cell::text(generator_name)),
        ("trials", trials.clone()),
        ("theta0", theta0.clone()),
        ("seed", Cell::Int(rng.seed)),
        ("stream", Cell::Int(rng.stream)),
        ("n", Cell::Int(s.n as u64)),
        ("mean_s_nats", Cell::num(s.mean_s_nats)),
        ("mean_s_bits", Cell::num(s.mean_s_bits)),
        ("se_of_mean", Cell::num(s.se_of_mean)),
        (
            "dominance_violations",
            Cell::Int(s.dominance_violations as u64),
        ),
    ]);
    let rates = Table::rows(
        &["alpha", "rejection_rate", "upper_band", "violation"],
        s.empirical_type1
            .iter()
            .map(|a| {
                vec![
                    Cell::num(a.alpha),
                    Cell::num(a.rejection_rate),
                    Cell::num(a.upper_band),
                    Cell::Bool(a.violation),
                ]
            })
            .collect(),
    );
    let mut csv_columns = summary.columns.clone();
    csv_columns.extend(rates.columns.iter().cloned());
    let csv = Table {
        layout: rates.layout,
        columns: csv_columns,
        rows: rates
            .rows
            .iter()
            .map(|r| summary.rows[0].iter().chain(r).cloned().collect())
            .collect(),
    };

    let mut json = summary.record_json();
    json.insert(
        "empirical_type1".into(),
        Value::Array(
            rates
                .rows
                .iter()
                .map(|row| {
                    Value::Object(
                        rates
                            .columns
                            .iter()
                            .cloned()
                            .zip(row.iter().map(Cell::to_json))
                            .collect(),
                    )
                })
                .collect(),
        ),
    );
    json.insert("low_n".into(), s.low_n.into());
    json.insert("notes".into(), notes.clone().into());
    Ok(Output {
        json: Value::Object(json),
        tables: vec![summary, rates],
        csv,
        notes,
    })
}
