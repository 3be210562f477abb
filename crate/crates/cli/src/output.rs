//! Table records and their CSV/JSON encodings.

use std::fmt;
use std::str::FromStr;

use anyhow::{Context, Result};
use dcl_core::{BiPoly, Rational, SequenceId};
use serde::{Deserialize, Serialize};

/// A parameter that is either left symbolic or fixed to a rational value.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Param {
    #[default]
    Sym,
    Value(Rational),
}

impl Param {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Param::Sym => None,
            Param::Value(v) => Some(v),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Sym => f.write_str("sym"),
            Param::Value(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Param {
    type Err = dcl_core::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "sym" {
            Ok(Param::Sym)
        } else {
            s.parse().map(Param::Value)
        }
    }
}

/// Serializes through `Display` and parses back through `FromStr`.
mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    #[serde(with = "as_string")]
    pub seq: SequenceId,
    pub n: usize,
    #[serde(with = "as_string")]
    pub lambda: Param,
    #[serde(with = "as_string")]
    pub x: Param,
    #[serde(with = "as_string")]
    pub value: BiPoly,
}

/// CSV row; the sequence name is not part of the CSV layout.
#[derive(Serialize, Deserialize)]
struct CsvRow {
    n: usize,
    #[serde(with = "as_string")]
    lambda: Param,
    #[serde(with = "as_string")]
    x: Param,
    #[serde(with = "as_string")]
    value: BiPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

pub fn build_records(
    seq: SequenceId,
    n_max: usize,
    lambda: &Param,
    x: &Param,
) -> Vec<OutputRecord> {
    let values = dcl_core::sequences::table(seq, n_max);
    (0..=n_max)
        .map(|n| OutputRecord {
            seq,
            n,
            lambda: lambda.clone(),
            x: x.clone(),
            value: values[n].partial_eval(lambda.value(), x.value()),
        })
        .collect()
}

pub fn render(records: &[OutputRecord], format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Csv => render_csv(records),
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(records)?;
            s.push('\n');
            Ok(s)
        }
    }
}

fn render_csv(records: &[OutputRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if records.is_empty() {
        w.write_record(["n", "lambda", "x", "value"])?;
    }
    for r in records {
        w.serialize(CsvRow {
            n: r.n,
            lambda: r.lambda.clone(),
            x: r.x.clone(),
            value: r.value.clone(),
        })?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Parses an emitted table back into records. CSV carries no sequence
/// column, so the caller names the sequence.
pub fn parse(text: &str, format: TableFormat, seq: SequenceId) -> Result<Vec<OutputRecord>> {
    match format {
        TableFormat::Json => serde_json::from_str(text).context("malformed JSON table"),
        TableFormat::Csv => {
            let mut rdr = csv::Reader::from_reader(text.as_bytes());
            rdr.deserialize::<CsvRow>()
                .map(|row| {
                    let row = row.context("malformed CSV row")?;
                    Ok(OutputRecord {
                        seq,
                        n: row.n,
                        lambda: row.lambda,
                        x: row.x,
                        value: row.value,
                    })
                })
                .collect()
        }
    }
}
