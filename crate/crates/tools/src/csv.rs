//! Trajectory CSV files.
//!
//! Columns are fixed by [`HEADER`]. Floats are written with nine significant
//! digits in `%g` style, and skipped values as `NaN`.

use std::fs;
use std::io;
use std::path::Path;

use pulsecorr_core::CorrelationSample;
use thiserror::Error;

pub const HEADER: &str = "t,ng,qd,qd_doubled,u_exact,u_approx,purity,trace_error";

const SIGNIFICANT: i32 = 9;

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("refusing to write an empty trajectory to {0}")]
    Empty(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Malformed {
        path: String,
        line: usize,
        reason: String,
    },
}

/// Formats `x` like C's `%.9g`.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_owned();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_owned();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.to_owned();
    }
    let sci = format!("{:.*e}", (SIGNIFICANT - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..SIGNIFICANT).contains(&exp) {
        let decimals = (SIGNIFICANT - 1 - exp) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let mantissa = trim_zeros(mantissa.to_owned());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        let keep = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(keep);
    }
    s
}

fn fields(s: &CorrelationSample) -> [String; 8] {
    [
        s.t,
        s.ng,
        s.qd,
        s.qd_doubled(),
        s.u_exact,
        s.u_approx,
        s.purity,
        s.trace_error,
    ]
    .map(format_sig)
}

pub fn render_row(s: &CorrelationSample) -> String {
    fields(s).join(",")
}

fn write_to<W: io::Write>(samples: &[CorrelationSample], sink: W) -> csv::Result<W> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink);
    w.write_record(HEADER.split(','))?;
    for s in samples {
        w.write_record(fields(s))?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

pub fn render(samples: &[CorrelationSample]) -> String {
    let bytes = write_to(samples, Vec::new()).expect("writing to memory");
    String::from_utf8(bytes).expect("ASCII output")
}

/// Writes `samples` to `path`. Nothing is created when `samples` is empty.
pub fn write_trajectory_csv(samples: &[CorrelationSample], path: &Path) -> Result<(), CsvError> {
    if samples.is_empty() {
        return Err(CsvError::Empty(path.display().to_string()));
    }
    let io_err = |source| CsvError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = fs::File::create(path).map_err(io_err)?;
    write_to(samples, io::BufWriter::new(file))
        .map_err(|e| io_err(e.into()))?
        .into_inner()
        .map_err(|e| io_err(e.into_error()))?;
    Ok(())
}

/// Parses a file produced by [`write_trajectory_csv`].
pub fn read_trajectory_csv(path: &Path) -> Result<Vec<CorrelationSample>, CsvError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CsvError::Io {
        path: display.clone(),
        source,
    })?;
    parse(&text).map_err(|(line, reason)| CsvError::Malformed {
        path: display,
        line,
        reason,
    })
}

fn parse(text: &str) -> Result<Vec<CorrelationSample>, (usize, String)> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = r.records();
    match records.next() {
        Some(Ok(h)) if h.iter().eq(HEADER.split(',')) => {}
        Some(Ok(h)) => {
            return Err((
                1,
                format!(
                    "unexpected header `{}`",
                    h.iter().collect::<Vec<_>>().join(",")
                ),
            ))
        }
        Some(Err(e)) => return Err((1, e.to_string())),
        None => return Err((1, "empty file".to_owned())),
    }
    let mut out = Vec::new();
    for (idx, rec) in records.enumerate() {
        let lineno = idx + 2;
        let rec = rec.map_err(|e| (lineno, e.to_string()))?;
        let vals = rec
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|e| (lineno, format!("`{f}`: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let [t, ng, qd, _qd2, u_exact, u_approx, purity, trace_error] = vals[..] else {
            return Err((lineno, format!("expected 8 fields, found {}", vals.len())));
        };
        out.push(CorrelationSample {
            t,
            ng,
            qd,
            u_exact,
            u_approx,
            purity,
            trace_error,
        });
    }
    Ok(out)
}
