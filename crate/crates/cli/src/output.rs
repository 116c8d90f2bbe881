use std::io::{self, Write};

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A real that serialises as a plain number when finite and as the string
/// `inf`, `-inf` or `NaN` otherwise, so JSON keeps non-finite slopes.
#[derive(Debug, Clone, Copy)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = self.0;
        if v.is_finite() {
            s.serialize_f64(v)
        } else if v.is_nan() {
            s.serialize_str("NaN")
        } else if v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

#[derive(Serialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub energy: Real,
}

#[derive(Serialize)]
pub struct RootRow {
    pub m: u32,
    pub k: u32,
    pub q: Real,
    pub residual: Real,
    pub iterations: usize,
}

#[derive(Serialize)]
pub struct CurveRow {
    pub q: Real,
    pub p: Real,
    pub residual: Real,
    pub dpdq: Real,
}

#[derive(Serialize)]
pub struct BmRow {
    pub theta: Real,
    pub n: u32,
    pub r: u32,
    pub e_low: Real,
    pub e_high: Real,
    pub diff: Real,
}

/// Writes `rows` as CSV (header plus LF-terminated records) or as a JSON
/// array with one object per line.
pub fn write_rows<W: Write, R: Serialize>(out: W, format: Format, rows: &[R]) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut wtr = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            for row in rows {
                wtr.serialize(row)?;
            }
            wtr.flush()
        }
        Format::Json => {
            let mut out = io::BufWriter::new(out);
            out.write_all(b"[")?;
            for (i, row) in rows.iter().enumerate() {
                out.write_all(if i == 0 { b"\n" } else { b",\n" })?;
                serde_json::to_writer(&mut out, row)?;
            }
            out.write_all(b"\n]\n")?;
            out.flush()
        }
    }
}
