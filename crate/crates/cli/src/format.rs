//! Number rendering and CSV/JSON emission shared by all commands.

use serde::Serialize;

use crate::CliError;

/// Renders `x` with 12 significant digits in the style of C's `%.12g`.
pub fn sig12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to what [`sig12`] prints, so JSON and CSV carry the same values.
pub fn round12(x: f64) -> f64 {
    if x.is_finite() {
        let r: f64 = sig12(x).parse().expect("sig12 output parses");
        // no negative zero in the output
        r + 0.0
    } else {
        x
    }
}

/// A row type that can be written as CSV with a fixed header, or as JSON.
pub trait Record: Serialize {
    fn header(&self) -> Vec<&'static str>;
    fn fields(&self) -> Vec<String>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn render<R: Record>(rows: &[R], format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(first) = rows.first() {
                w.write_record(first.header()).map_err(CliError::from_csv)?;
            }
            for row in rows {
                w.write_record(row.fields()).map_err(CliError::from_csv)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(rows).map_err(|e| CliError::Io(e.into()))?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

pub fn num(x: f64) -> String {
    sig12(x)
}

pub fn opt_int(v: Option<u32>) -> String {
    v.map(|n| n.to_string()).unwrap_or_default()
}
