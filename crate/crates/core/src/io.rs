//! File formats: headerless matrix CSV, the geolocation dataset CSV and the
//! JSON result documents.
//!
//! Every float written by this module carries 17 significant digits, which
//! round-trips any `f64` exactly.

use std::fs;
use std::io::{self, Read};
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::ser::{Formatter, Serializer as JsonSerializer};

use crate::apps::{GeoDataset, GeoScoreReport};
use crate::error::{MaxminError, Result};
use crate::matrix::DenseMatrix;
use crate::solver::{Diagnostics, MaxminSolution, SolveCase};
use crate::suppvec::SuppVecResult;
use crate::tolerance::ToleranceConfig;

pub const GEO_HEADER: [&str; 7] = ["site", "Twin", "Rwin", "Ewin", "Tsum", "Rsum", "Esum"];

/// Formats a float with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parses a headerless numeric CSV matrix.
///
/// Blank lines are skipped; line and column numbers in errors are 1-based and
/// refer to the raw text.
pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix> {
    let mut entries = Vec::new();
    let mut cols: Option<usize> = None;
    let mut rows = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() {
            continue;
        }
        let mut count = 0;
        for (c, field) in raw.split(',').enumerate() {
            let value: f64 = field.trim().parse().map_err(|_| MaxminError::Parse {
                line,
                column: c + 1,
                message: format!("not a number: {:?}", field.trim()),
            })?;
            if !value.is_finite() {
                return Err(MaxminError::Parse {
                    line,
                    column: c + 1,
                    message: format!("non-finite value {:?}", field.trim()),
                });
            }
            entries.push(value);
            count += 1;
        }
        match cols {
            None => cols = Some(count),
            Some(expected) if expected != count => {
                return Err(MaxminError::Parse {
                    line,
                    column: count.min(expected) + 1,
                    message: format!("expected {expected} fields, found {count}"),
                });
            }
            Some(_) => {}
        }
        rows += 1;
    }
    let cols = cols.ok_or(MaxminError::Parse {
        line: 1,
        column: 1,
        message: "no matrix rows".into(),
    })?;
    DenseMatrix::from_row_major(rows, cols, &entries)
}

pub fn read_matrix_csv(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| MaxminError::Io(format!("{}: {e}", path.display())))?;
    parse_matrix_csv(&text).map_err(|e| match e {
        MaxminError::Parse { line, column, message } => MaxminError::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

pub fn matrix_to_csv(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let fields: Vec<String> = row.iter().map(|&v| format_f64(v)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn write_matrix_csv(path: impl AsRef<Path>, m: &DMatrix<f64>) -> Result<()> {
    fs::write(path, matrix_to_csv(m))?;
    Ok(())
}

/// Reads `site,Twin,Rwin,Ewin,Tsum,Rsum,Esum` records.
pub fn read_geo_dataset<R: Read>(reader: R) -> Result<GeoDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let header = rdr.headers().map_err(csv_error)?;
    let found: Vec<&str> = header.iter().map(str::trim).collect();
    if found != GEO_HEADER {
        return Err(MaxminError::Parse {
            line: 1,
            column: 1,
            message: format!(
                "expected header {:?}, found {:?}",
                GEO_HEADER.join(","),
                found.join(",")
            ),
        });
    }
    let mut names = Vec::new();
    let mut winter = Vec::new();
    let mut summer = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != GEO_HEADER.len() {
            return Err(MaxminError::Parse {
                line,
                column: record.len().min(GEO_HEADER.len()) + 1,
                message: format!("expected {} fields, found {}", GEO_HEADER.len(), record.len()),
            });
        }
        names.push(record[0].trim().to_string());
        for c in 1..GEO_HEADER.len() {
            let value: f64 = record[c]
                .trim()
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| MaxminError::Parse {
                    line,
                    column: c + 1,
                    message: format!("not a number: {:?}", &record[c]),
                })?;
            if c <= 3 {
                winter.push(value);
            } else {
                summer.push(value);
            }
        }
    }
    if names.is_empty() {
        return Err(MaxminError::Parse {
            line: 2,
            column: 1,
            message: "no site rows".into(),
        });
    }
    let n = names.len();
    GeoDataset::new(
        names,
        DenseMatrix::from_row_major(n, 3, &winter)?,
        DenseMatrix::from_row_major(n, 3, &summer)?,
    )
}

pub fn read_geo_dataset_file(path: impl AsRef<Path>) -> Result<GeoDataset> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| MaxminError::Io(format!("{}: {e}", path.display())))?;
    read_geo_dataset(io::BufReader::new(file))
}

fn csv_error(e: csv::Error) -> MaxminError {
    let line = e.position().map_or(0, |p| p.line() as usize);
    MaxminError::Parse {
        line,
        column: 1,
        message: e.to_string(),
    }
}

/// `site,ax,bx,score` rows for plotting.
pub fn scatter_csv(report: &GeoScoreReport) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["site", "ax", "bx", "score"]).map_err(csv_error)?;
    for s in &report.sites {
        wtr.write_record([s.name.clone(), format_f64(s.ax), format_f64(s.bx), format_f64(s.score)])
            .map_err(csv_error)?;
    }
    let bytes = wtr.into_inner().map_err(|e| MaxminError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| MaxminError::Io(e.to_string()))
}

/// JSON formatter writing floats with 17 significant digits.
#[derive(Debug, Clone, Copy, Default)]
pub struct SigDigitsFormatter;

impl Formatter for SigDigitsFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = JsonSerializer::with_formatter(&mut buf, SigDigitsFormatter);
    value.serialize(&mut ser).map_err(|e| MaxminError::Io(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| MaxminError::Io(e.to_string()))
}

pub(crate) fn serialize_columns<S: Serializer>(m: &DMatrix<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let cols: Vec<Vec<f64>> = m.column_iter().map(|c| c.iter().copied().collect()).collect();
    cols.serialize(s)
}

const SOLUTION_SET_NOTE: &str =
    "representatives only: every unit-constraint point in the span of the solutions is optimal";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    #[serde(flatten)]
    pub counts: Diagnostics,
    pub solution_set: String,
}

/// JSON document for a [`MaxminSolution`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub optimal_value: f64,
    pub solutions: Vec<Vec<f64>>,
    pub case_used: SolveCase,
    pub selected_indices: Vec<usize>,
    pub lambda_max: f64,
    pub tolerances: ToleranceConfig,
    pub diagnostics: DiagnosticsRecord,
}

impl SolutionRecord {
    pub fn new(sol: &MaxminSolution, tol: &ToleranceConfig) -> Self {
        Self {
            optimal_value: sol.optimal_value,
            solutions: sol.solutions.iter().map(|x| x.iter().copied().collect()).collect(),
            case_used: sol.case_used,
            selected_indices: sol.selected_indices.clone(),
            lambda_max: sol.lambda_max,
            tolerances: *tol,
            diagnostics: DiagnosticsRecord {
                counts: sol.diagnostics.clone(),
                solution_set: SOLUTION_SET_NOTE.into(),
            },
        }
    }

    pub fn into_solution(self) -> MaxminSolution {
        MaxminSolution {
            optimal_value: self.optimal_value,
            solutions: self.solutions.into_iter().map(DVector::from_vec).collect(),
            case_used: self.case_used,
            selected_indices: self.selected_indices,
            lambda_max: self.lambda_max,
            diagnostics: self.diagnostics.counts,
        }
    }
}

pub fn solution_to_json(sol: &MaxminSolution, tol: &ToleranceConfig) -> Result<String> {
    to_json_string(&SolutionRecord::new(sol, tol))
}

pub fn solution_from_json(text: &str) -> Result<SolutionRecord> {
    serde_json::from_str(text).map_err(|e| MaxminError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

#[derive(Debug, Serialize)]
struct SuppVecRecord<'a> {
    #[serde(flatten)]
    result: &'a SuppVecResult,
    tolerances: &'a ToleranceConfig,
}

pub fn suppvec_to_json(result: &SuppVecResult, tol: &ToleranceConfig) -> Result<String> {
    to_json_string(&SuppVecRecord {
        result,
        tolerances: tol,
    })
}

#[derive(Debug, Serialize)]
struct GeoRecord<'a> {
    #[serde(flatten)]
    report: &'a GeoScoreReport,
    tolerances: &'a ToleranceConfig,
}

pub fn geo_report_to_json(report: &GeoScoreReport, tol: &ToleranceConfig) -> Result<String> {
    to_json_string(&GeoRecord {
        report,
        tolerances: tol,
    })
}
