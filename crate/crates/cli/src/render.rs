use std::fmt::Write as _;

use clap::ValueEnum;
use dehn_roots::numtheory::BezoutWitness;
use dehn_roots::{classify, DataSet, FractionalDataSet, ValidationReport};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Serialize)]
struct DataSetRow {
    degree: u64,
    g0: u64,
    a: u64,
    b: u64,
    cones: Vec<[u64; 2]>,
    genus: u64,
    tag: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    de_params: Option<[u64; 2]>,
}

impl DataSetRow {
    fn new(ds: &DataSet) -> Self {
        let class = classify(ds);
        DataSetRow {
            degree: ds.degree(),
            g0: ds.g0(),
            a: ds.a(),
            b: ds.b(),
            cones: ds.cones().iter().map(|c| [c.residue, c.order]).collect(),
            genus: ds.genus(),
            tag: class.tag.as_str(),
            de_params: class.de_params.map(|(d, e)| [d, e]),
        }
    }
}

#[derive(Serialize)]
struct FractionalRow {
    degree: u64,
    g0: u64,
    a: u64,
    b: u64,
    cones: Vec<[u64; 2]>,
    genus: u64,
    power: u64,
    gcd_caveat: bool,
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn datasets(list: &[DataSet], format: Format) -> String {
    match format {
        Format::Text => list.iter().map(|d| format!("{d}\n")).collect(),
        Format::Json => json(&list.iter().map(DataSetRow::new).collect::<Vec<_>>()),
        Format::Csv => {
            let mut out = String::from("genus,degree,dataset,tag\n");
            for d in list {
                let tag = classify(d).tag;
                writeln!(
                    out,
                    "{},{},{},{tag}",
                    d.genus(),
                    d.degree(),
                    csv_quote(&d.to_string())
                )
                .unwrap();
            }
            out
        }
    }
}

pub fn fractional(list: &[FractionalDataSet], format: Format) -> String {
    match format {
        Format::Text => list
            .iter()
            .map(|f| {
                format!(
                    "{}  power={} gcd_caveat={}\n",
                    f.dataset,
                    f.power,
                    f.may_be_ineffective()
                )
            })
            .collect(),
        Format::Json => json(
            &list
                .iter()
                .map(|f| FractionalRow {
                    degree: f.dataset.degree(),
                    g0: f.dataset.g0(),
                    a: f.dataset.a(),
                    b: f.dataset.b(),
                    cones: f
                        .dataset
                        .cones()
                        .iter()
                        .map(|c| [c.residue, c.order])
                        .collect(),
                    genus: f.dataset.doubled_genus() / 2,
                    power: f.power,
                    gcd_caveat: f.may_be_ineffective(),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut out = String::from("genus,degree,dataset,power,gcd_caveat\n");
            for f in list {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    f.dataset.doubled_genus() / 2,
                    f.dataset.degree(),
                    csv_quote(&f.dataset.to_string()),
                    f.power,
                    f.may_be_ineffective()
                )
                .unwrap();
            }
            out
        }
    }
}

/// GAP list syntax: `[ 1, 2, 3 ]`, and `[  ]` when empty.
pub fn gap_list(values: &[u64]) -> String {
    let items: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("[ {} ]", items.join(", "))
}

pub fn integers(values: &[u64], format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", gap_list(values)),
        Format::Json => format!("{}\n", serde_json::to_string(values).unwrap()),
        Format::Csv => {
            let mut out = String::from("value\n");
            for v in values {
                writeln!(out, "{v}").unwrap();
            }
            out
        }
    }
}

pub fn integer(value: u64, format: Format) -> String {
    match format {
        Format::Csv => format!("value\n{value}\n"),
        Format::Text | Format::Json => format!("{value}\n"),
    }
}

pub fn witness(w: &BezoutWitness, format: Format) -> String {
    match format {
        Format::Text => format!("c1 = {}, c2 = {}\n", w.c1, w.c2),
        Format::Json => format!(
            "{}\n",
            serde_json::json!({ "c1": w.c1, "c2": w.c2, "d1": w.d1, "d2": w.d2 })
        ),
        Format::Csv => format!("c1,c2,d1,d2\n{},{},{},{}\n", w.c1, w.c2, w.d1, w.d2),
    }
}

pub fn report(ds: &DataSet, report: &ValidationReport, format: Format) -> String {
    let genus = report.is_valid().then(|| ds.doubled_genus() / 2);
    match format {
        Format::Text => {
            if let Some(g) = genus {
                format!("valid; genus {g}; degree {}\n", ds.degree())
            } else {
                let details: Vec<String> = report
                    .violations
                    .iter()
                    .map(|v| format!("{}: {}", v.condition, v.detail))
                    .collect();
                format!("invalid; {}\n", details.join("; "))
            }
        }
        Format::Json => json(&serde_json::json!({
            "valid": report.is_valid(),
            "degree": ds.degree(),
            "genus": genus,
            "dataset": ds.to_string(),
            "violations": report.violations.iter().map(|v| serde_json::json!({
                "condition": v.condition.to_string(),
                "detail": v.detail,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let conditions: Vec<String> = report
                .conditions()
                .iter()
                .map(ToString::to_string)
                .collect();
            format!(
                "valid,degree,genus,violations\n{},{},{},{}\n",
                report.is_valid(),
                ds.degree(),
                genus.map(|g| g.to_string()).unwrap_or_default(),
                conditions.join("+")
            )
        }
    }
}
