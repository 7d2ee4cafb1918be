//! Coefficient files: UTF-8 CSV with header `n,a_re,a_im,b_re,b_im`, one row
//! per `n = 2..=N` in order. The `n = 1` normalization never appears.
//! Lines starting with `#` are comments.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::harmonic::HarmonicSeries;
use crate::numfmt::format_sig;

pub const HEADER: [&str; 5] = ["n", "a_re", "a_im", "b_re", "b_im"];

pub fn read_coefficients<R: Read>(mut reader: R) -> Result<HarmonicSeries> {
    let mut raw = Vec::new();
    reader.read_to_end(&mut raw)?;
    // the csv reader reports the header at line 1 even after comment lines
    let header_line = 1 + raw.split(|&c| c == b'\n').take_while(|l| l.starts_with(b"#")).count() as u64;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .from_reader(raw.as_slice());

    let headers = rdr.headers().map_err(csv_error)?.clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(Error::CoeffFormat {
            line: header_line,
            message: format!("missing header, expected `{}`", HEADER.join(",")),
        });
    }
    if headers.iter().ne(HEADER.iter().copied()) {
        return Err(Error::CoeffFormat {
            line: header_line,
            message: format!(
                "header `{}` does not match `{}`",
                headers.iter().collect::<Vec<_>>().join(","),
                HEADER.join(",")
            ),
        });
    }

    let mut a = Vec::new();
    let mut b = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let bad = |message: String| Error::CoeffFormat { line, message };

        let expected = a.len() + 2;
        let n: usize = record[0]
            .trim()
            .parse()
            .map_err(|_| bad(format!("index `{}` is not a nonnegative integer", &record[0])))?;
        if n != expected {
            return Err(bad(format!("expected index {expected}, found {n}")));
        }
        let mut vals = [0.0; 4];
        for (slot, (field, name)) in vals.iter_mut().zip(record.iter().skip(1).zip(&HEADER[1..])) {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| bad(format!("{name} value `{field}` is not a number")))?;
            if !v.is_finite() {
                return Err(bad(format!("{name} value `{field}` is not finite")));
            }
            *slot = v;
        }
        a.push(Complex64::new(vals[0], vals[1]));
        b.push(Complex64::new(vals[2], vals[3]));
    }
    HarmonicSeries::from_tails(a, b).map_err(|e| Error::CoeffFormat {
        line: 0,
        message: e.to_string(),
    })
}

/// Writes `f` with 17 significant digits, preceded by `# ` comment lines.
pub fn write_coefficients<W: Write>(mut out: W, f: &HarmonicSeries, comments: &[String]) -> Result<()> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    writeln!(out, "{}", HEADER.join(","))?;
    for (n, a, b) in f.terms() {
        writeln!(
            out,
            "{n},{},{},{},{}",
            format_sig(a.re, 17),
            format_sig(a.im, 17),
            format_sig(b.re, 17),
            format_sig(b.im, 17)
        )?;
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    let message = match e.kind() {
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
            format!("expected {expected_len} fields, found {len}")
        }
        csv::ErrorKind::Io(io) => return Error::Io(io.to_string()),
        _ => e.to_string(),
    };
    Error::CoeffFormat { line, message }
}
