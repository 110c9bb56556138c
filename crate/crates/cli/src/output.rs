//! Rendering in the three output formats.

use std::io;

use rapidity_core::chain::{self, ChainRow};
use rapidity_core::numfmt::{format_exact, format_significant};
use rapidity_core::verify::CheckReport;
use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

/// Significant digits in plain output.
pub const PLAIN_DIGITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

impl Format {
    fn number(self, x: f64) -> String {
        match self {
            Format::Plain => format_significant(x, PLAIN_DIGITS),
            _ => format_exact(x),
        }
    }
}

/// Compact JSON with every double written at round-trip precision.
struct ExactFloats;

impl Formatter for ExactFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_exact(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn write_i64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: i64) -> io::Result<()> {
        CompactFormatter.write_i64(writer, value)
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, ExactFloats);
    value.serialize(&mut ser).expect("in-memory JSON serialization");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

#[derive(Debug, Clone, Serialize)]
pub struct ComposedVelocity {
    pub value: f64,
    pub beta: f64,
    pub saturated: bool,
}

pub fn velocity(v: &ComposedVelocity, format: Format) -> String {
    match format {
        Format::Json => to_json(v),
        Format::Csv => format!(
            "value,beta,saturated\n{},{},{}",
            format_exact(v.value),
            format_exact(v.beta),
            v.saturated
        ),
        Format::Plain => {
            let mut s = format!(
                "velocity {}\nbeta     {}",
                format.number(v.value),
                format.number(v.beta)
            );
            if v.saturated {
                s.push_str("\n(saturated: the true result lies closer to light speed)");
            }
            s
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RapidityValue {
    pub rapidity: f64,
}

pub fn rapidity(r: &RapidityValue, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Csv => format!("rapidity\n{}", format_exact(r.rapidity)),
        Format::Plain => format.number(r.rapidity),
    }
}

pub fn chain_table(rows: &[ChainRow], format: Format) -> String {
    match format {
        Format::Json => to_json(rows),
        Format::Csv => chain::to_csv(rows).trim_end().to_string(),
        Format::Plain => {
            let mut lines = vec![format!(
                "{:>8} {:>14} {:>14} {:>14}",
                "step", "sr_beta", "newton_value", "rapidity"
            )];
            for r in rows {
                lines.push(format!(
                    "{:>8} {:>14} {:>14} {:>14}",
                    r.step,
                    format.number(r.sr_beta),
                    format.number(r.newton_value),
                    format.number(r.rapidity)
                ));
            }
            lines.join("\n")
        }
    }
}

pub fn reports(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => to_json(reports),
        Format::Csv => {
            let mut lines =
                vec!["law_name,passed,samples_run,max_abs_violation,tolerance,worst_case_inputs".to_string()];
            for r in reports {
                let worst: Vec<_> = r.worst_case_inputs.iter().map(|x| format_exact(*x)).collect();
                lines.push(format!(
                    "{},{},{},{},{},{}",
                    r.law_name,
                    r.passed,
                    r.samples_run,
                    format_exact(r.max_abs_violation),
                    format_exact(r.tolerance),
                    worst.join(";")
                ));
            }
            lines.join("\n")
        }
        Format::Plain => reports
            .iter()
            .map(|r| {
                let worst: Vec<_> = r.worst_case_inputs.iter().map(|x| format.number(*x)).collect();
                format!(
                    "{} {:<14} max violation {} (tolerance {}) over {} samples, worst at [{}]",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.law_name,
                    format.number(r.max_abs_violation),
                    format.number(r.tolerance),
                    r.samples_run,
                    worst.join(", ")
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}
