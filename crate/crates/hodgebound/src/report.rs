//! Report records and their JSON / CSV serialization.
//!
//! Floats are written with 17 significant digits in JSON and 12 in CSV.
//! Field order is insertion order, so identical runs give identical bytes.

use std::io::{self, Write};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

pub const JSON_DIGITS: usize = 17;
pub const CSV_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }

    pub fn from_holds(holds: bool) -> Self {
        if holds {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Field {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
    Null,
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v as i64)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Real(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_owned())
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::Null, Field::Real)
    }
}

impl Field {
    fn to_csv(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Real(v) => format_sig(*v, CSV_DIGITS),
            Field::Bool(v) => v.to_string(),
            Field::Text(s) => s.clone(),
            Field::Null => String::new(),
        }
    }
}

/// Ordered `name → value` pairs, serialized as a JSON object.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Fields(pub Vec<(String, Field)>);

impl Fields {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.0.push((key.to_owned(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Field>) {
        self.0.push((key.to_owned(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(|(k, v)| format!("{k}={}", v.to_csv()))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub inputs: Fields,
    pub values: Fields,
    pub status: Status,
    pub residual: Option<f64>,
}

impl Record {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Self {
            name: name.into(),
            inputs: Fields::new(),
            values: Fields::new(),
            status,
            residual: None,
        }
    }

    pub fn inputs(mut self, inputs: Fields) -> Self {
        self.inputs = inputs;
        self
    }

    pub fn values(mut self, values: Fields) -> Self {
        self.values = values;
        self
    }

    pub fn residual(mut self, residual: f64) -> Self {
        self.residual = Some(residual);
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    #[serde(rename = "not-applicable")]
    pub not_applicable: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub tolerance: f64,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, seed: u64, tolerance: f64, records: Vec<Record>) -> Self {
        let mut summary = Summary {
            total: records.len(),
            ..Summary::default()
        };
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::NotApplicable => summary.not_applicable += 1,
            }
        }
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_owned(),
            seed,
            tolerance,
            records,
            summary,
        }
    }

    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn write_json(&self, out: impl Write) -> io::Result<()> {
        let mut out = out;
        write_json(&mut out, self)?;
        writeln!(out)
    }

    /// One row per record; inputs and values flattened to `key=value` lists.
    pub fn write_csv(&self, out: impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["name", "status", "residual", "inputs", "values"])?;
        for r in &self.records {
            let residual = r
                .residual
                .map(|x| format_sig(x, CSV_DIGITS))
                .unwrap_or_default();
            w.write_record([
                r.name.as_str(),
                r.status.as_str(),
                residual.as_str(),
                r.inputs.to_csv().as_str(),
                r.values.to_csv().as_str(),
            ])?;
        }
        w.flush()
    }
}

/// A plain table: fixed header and one [`Fields`] per row, in header order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub rows: Vec<Fields>,
}

impl Table {
    pub fn write_csv(&self, out: impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if let Some(first) = self.rows.first() {
            w.write_record(first.0.iter().map(|(k, _)| k.as_str()))?;
        }
        for row in &self.rows {
            w.write_record(row.0.iter().map(|(_, v)| v.to_csv()))?;
        }
        w.flush()
    }
}

/// Pretty JSON with every float at [`JSON_DIGITS`] significant digits.
pub fn write_json<W: Write, T: Serialize + ?Sized>(out: &mut W, value: &T) -> io::Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(out, SigFormatter::default());
    value.serialize(&mut ser).map_err(io::Error::other)
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    write_json(&mut buf, value).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[derive(Default)]
struct SigFormatter<'a> {
    pretty: serde_json::ser::PrettyFormatter<'a>,
}

impl serde_json::ser::Formatter for SigFormatter<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if !value.is_finite() {
            return writer.write_all(b"null");
        }
        writer.write_all(format_sig(value, JSON_DIGITS).as_bytes())
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(w)
    }
}

/// `value` rounded to `digits` significant digits, trailing zeros dropped.
/// Plain notation for exponents in `-5..digits`, scientific otherwise.
pub fn format_sig(value: f64, digits: usize) -> String {
    if !value.is_finite() {
        return if value.is_nan() {
            "NaN".into()
        } else if value > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if value == 0.0 {
        return "0".into();
    }
    // the exponent after rounding, read off the scientific rendering
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{value:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_owned()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_owned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(4.0, 17), "4");
        assert_eq!(format_sig(0.1, 17), "0.10000000000000001");
        assert_eq!(format_sig(0.1, 12), "0.1");
        assert_eq!(format_sig(-2.5e-9, 12), "-2.5e-9");
        assert_eq!(format_sig(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_sig(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(format_sig(0.0, 17), "0");
        assert_eq!(format_sig(9.9999999999999e-6, 12), "0.00001");
    }

    #[test]
    fn json_round_trips_at_17_digits() {
        for x in [0.1, 1.0 / 3.0, -2.0_f64.sqrt(), 6.02214076e23, 1e-300] {
            let s = to_json_string(&x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn summary_counts_records() {
        let records = vec![
            Record::new("a", Status::Pass),
            Record::new("b", Status::Fail),
            Record::new("c", Status::NotApplicable),
            Record::new("d", Status::Pass),
        ];
        let r = Report::new("verify", 0, 1e-9, records);
        assert_eq!(
            (
                r.summary.total,
                r.summary.pass,
                r.summary.fail,
                r.summary.not_applicable
            ),
            (4, 2, 1, 1)
        );
        assert!(r.failed());
    }

    #[test]
    fn null_and_ordered_fields() {
        let f = Fields::new()
            .with("z", 1usize)
            .with("a", None::<f64>)
            .with("m", 0.5);
        let s = to_json_string(&f);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert!(v["a"].is_null());
        assert!(s.find("\"z\"").unwrap() < s.find("\"a\"").unwrap());
    }
}
