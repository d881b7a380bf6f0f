//! File formats.
//!
//! CSV files carry a fixed header and write every float with 17 significant
//! digits, which is enough to round-trip any `f64`. JSON documents carry a
//! top-level `"schema_version": 1`.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::continuous::ContinuousSignal;
use crate::dft::DftResult;
use crate::error::{Result, ZcError};
use crate::number_theory::{LegendreTable, PrimeModulus};
use crate::sequence::{ComplexSequence, Origin, ZcParams};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming a directory of cached Legendre tables.
pub const TABLE_DIR_ENV: &str = "ZCKIT_TABLE_DIR";

/// 17 significant digits in scientific notation.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(field: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| ZcError::Format(format!("not a number: {field:?}")))
}

fn csv_err(e: csv::Error) -> ZcError {
    ZcError::Format(e.to_string())
}

fn write_complex_csv<W: Write>(
    out: W,
    index_name: &str,
    rows: impl Iterator<Item = (String, Complex64)>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([index_name, "re", "im"]).map_err(csv_err)?;
    for (idx, c) in rows {
        w.write_record([idx, format_f64(c.re), format_f64(c.im)])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| ZcError::Format(e.to_string()))
}

/// Header `n,re,im`.
pub fn write_sequence_csv<W: Write>(out: W, seq: &ComplexSequence) -> Result<()> {
    write_complex_csv(
        out,
        "n",
        seq.iter().enumerate().map(|(n, c)| (n.to_string(), *c)),
    )
}

/// Header `k,re,im`.
pub fn write_spectrum_csv<W: Write>(out: W, spectrum: &ComplexSequence) -> Result<()> {
    write_complex_csv(
        out,
        "k",
        spectrum
            .iter()
            .enumerate()
            .map(|(k, c)| (k.to_string(), *c)),
    )
}

/// Header `t,re,im`.
pub fn write_waveform_csv<W: Write>(out: W, signal: &ContinuousSignal) -> Result<()> {
    write_complex_csv(
        out,
        "t",
        signal
            .grid
            .instants()
            .zip(signal.samples.iter())
            .map(|(t, c)| (format_f64(t), *c)),
    )
}

fn write_correlation_rows<W: Write>(
    out: W,
    rows: impl Iterator<Item = (String, Complex64)>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["tau", "re", "im", "abs"])
        .map_err(csv_err)?;
    for (tau, r) in rows {
        w.write_record([
            tau,
            format_f64(r.re),
            format_f64(r.im),
            format_f64(r.norm()),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| ZcError::Format(e.to_string()))
}

/// Header `tau,re,im,abs`, with fractional lags.
pub fn write_correlation_csv<W: Write>(out: W, rows: &[(f64, Complex64)]) -> Result<()> {
    write_correlation_rows(out, rows.iter().map(|(tau, r)| (format_f64(*tau), *r)))
}

/// Header `tau,re,im,abs`, with integer lags `0..N`.
pub fn write_lag_correlation_csv<W: Write>(out: W, lags: &ComplexSequence) -> Result<()> {
    write_correlation_rows(
        out,
        lags.iter()
            .enumerate()
            .map(|(tau, r)| (tau.to_string(), *r)),
    )
}

/// Reads an `n,re,im` file; indices must run `0, 1, 2, …`.
pub fn read_sequence_csv<R: Read>(input: R) -> Result<ComplexSequence> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(csv_err)?;
    if headers != vec!["n", "re", "im"] {
        return Err(ZcError::Format(format!("unexpected header {headers:?}")));
    }
    let mut samples = Vec::new();
    for (expected, record) in r.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let n: usize = record[0]
            .parse()
            .map_err(|_| ZcError::Format(format!("bad index {:?}", &record[0])))?;
        if n != expected {
            return Err(ZcError::Format(format!("index {n} out of order")));
        }
        samples.push(Complex64::new(
            parse_f64(&record[1])?,
            parse_f64(&record[2])?,
        ));
    }
    Ok(ComplexSequence::new(samples, Origin::Imported))
}

/// JSON form of a generated sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub schema_version: u32,
    pub n_zc: u64,
    pub u: u64,
    pub q: i64,
    pub samples: Vec<[f64; 2]>,
}

impl SequenceDocument {
    pub fn new(params: &ZcParams, seq: &ComplexSequence) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            n_zc: params.n_zc(),
            u: params.u(),
            q: params.q(),
            samples: seq.iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    pub fn params(&self) -> Result<ZcParams> {
        ZcParams::with_q(self.n_zc, self.u, self.q)
    }

    pub fn sequence(&self) -> ComplexSequence {
        ComplexSequence::new(
            self.samples
                .iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect(),
            Origin::Imported,
        )
    }
}

/// JSON form of a spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub schema_version: u32,
    pub n_zc: u64,
    pub u: u64,
    pub method: String,
    pub coefficients: Vec<[f64; 2]>,
}

impl SpectrumDocument {
    pub fn new(n_zc: u64, u: u64, result: &DftResult) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            n_zc,
            u,
            method: result.method.as_str().into(),
            coefficients: result.coefficients.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, doc: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, doc).map_err(|e| ZcError::Format(e.to_string()))?;
    out.write_all(b"\n")
        .map_err(|e| ZcError::Format(e.to_string()))
}

pub fn read_sequence_json<R: Read>(input: R) -> Result<SequenceDocument> {
    let doc: SequenceDocument =
        serde_json::from_reader(input).map_err(|e| ZcError::Format(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(ZcError::Format(format!(
            "unsupported schema_version {}",
            doc.schema_version
        )));
    }
    if doc.samples.len() as u64 != doc.n_zc {
        return Err(ZcError::Format("sample count does not match n_zc".into()));
    }
    Ok(doc)
}

/// `legendre_<m>.zclt` inside `dir`.
pub fn table_path(dir: &Path, m: PrimeModulus) -> PathBuf {
    dir.join(format!("legendre_{m}.zclt"))
}

/// Loads a cached table from `dir` when present and valid, otherwise builds
/// one and tries to store it there. Cache failures are not errors.
pub fn load_or_build_table(dir: Option<&Path>, m: PrimeModulus) -> LegendreTable {
    let Some(dir) = dir else {
        return LegendreTable::build(m);
    };
    let path = table_path(dir, m);
    if let Some(table) = fs::read(&path)
        .ok()
        .and_then(|bytes| LegendreTable::from_bytes(&bytes).ok())
        .filter(|t| t.modulus() == m)
    {
        return table;
    }
    let table = LegendreTable::build(m);
    let _ = fs::create_dir_all(dir).and_then(|_| fs::write(&path, table.to_bytes()));
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::generate;

    #[test]
    fn floats_use_seventeen_significant_digits() {
        assert_eq!(format_f64(1.0), "1.0000000000000000e0");
        assert_eq!(format_f64(-0.1), "-1.0000000000000001e-1");
        for x in [0.1, -2.5e-300, std::f64::consts::PI, 1e300, -0.0] {
            let back: f64 = format_f64(x).parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits());
        }
    }

    #[test]
    fn sequence_csv_layout() {
        let seq = generate(&ZcParams::new(7, 1).unwrap());
        let mut buf = Vec::new();
        write_sequence_csv(&mut buf, &seq).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 8);
        assert_eq!(lines[0], "n,re,im");
        assert_eq!(lines[1], "0,1.0000000000000000e0,0.0000000000000000e0");
        let back = read_sequence_csv(text.as_bytes()).unwrap();
        assert_eq!(back.samples(), seq.samples());
    }

    #[test]
    fn sequence_csv_rejects_bad_input() {
        assert!(read_sequence_csv("k,re,im\n0,1,0\n".as_bytes()).is_err());
        assert!(read_sequence_csv("n,re,im\n1,1,0\n".as_bytes()).is_err());
        assert!(read_sequence_csv("n,re,im\n0,x,0\n".as_bytes()).is_err());
    }

    #[test]
    fn correlation_csv_layout() {
        let p = ZcParams::new(5, 1).unwrap();
        let lags = crate::sequence::correlation_sweep(&p, &p).unwrap();
        let mut buf = Vec::new();
        write_lag_correlation_csv(&mut buf, &lags).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("tau,re,im,abs"));
        assert!(lines.next().unwrap().starts_with("0,5.0000000000000000e0,"));
        assert_eq!(lines.count(), 4);

        let mut buf = Vec::new();
        write_correlation_csv(&mut buf, &[(0.5, Complex64::new(0.0, -2.0))]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "tau,re,im,abs\n5.0000000000000000e-1,0.0000000000000000e0,\
             -2.0000000000000000e0,2.0000000000000000e0\n"
        );
    }

    #[test]
    fn sequence_json_round_trip() {
        let params = ZcParams::with_q(13, 5, -2).unwrap();
        let doc = SequenceDocument::new(&params, &generate(&params));
        let mut first = Vec::new();
        write_json(&mut first, &doc).unwrap();
        let back = read_sequence_json(first.as_slice()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.params().unwrap(), params);
        let mut second = Vec::new();
        write_json(&mut second, &back).unwrap();
        assert_eq!(first, second);
    }

    proptest::proptest! {
        #[test]
        fn arbitrary_floats_round_trip(
            values in proptest::collection::vec((proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO, proptest::num::f64::NORMAL), 1..40)
        ) {
            let seq = ComplexSequence::new(
                values.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
                Origin::Generated,
            );
            let mut csv_bytes = Vec::new();
            write_sequence_csv(&mut csv_bytes, &seq).unwrap();
            let back = read_sequence_csv(csv_bytes.as_slice()).unwrap();
            proptest::prop_assert_eq!(back.samples(), seq.samples());

            let doc = SequenceDocument {
                schema_version: SCHEMA_VERSION,
                n_zc: seq.len() as u64,
                u: 1,
                q: 0,
                samples: values.iter().map(|&(re, im)| [re, im]).collect(),
            };
            let mut first = Vec::new();
            write_json(&mut first, &doc).unwrap();
            let back = read_sequence_json(first.as_slice()).unwrap();
            proptest::prop_assert_eq!(&back, &doc);
        }
    }

    #[test]
    fn table_cache_builds_then_loads() {
        let dir = tempfile::tempdir().unwrap();
        let m = PrimeModulus::new(139).unwrap();
        let built = load_or_build_table(Some(dir.path()), m);
        let path = table_path(dir.path(), m);
        assert!(path.exists());
        assert_eq!(fs::read(&path).unwrap(), built.to_bytes());
        assert_eq!(load_or_build_table(Some(dir.path()), m), built);

        // a corrupt cache entry is replaced
        fs::write(&path, b"garbage").unwrap();
        assert_eq!(load_or_build_table(Some(dir.path()), m), built);
        assert_eq!(fs::read(&path).unwrap(), built.to_bytes());
    }
}
