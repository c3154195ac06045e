//! Laplace spectra of closed hyperbolic surfaces and their text format.
//!
//! ```text
//! # genus: 2
//! # truncation_bound: 12.5
//! lambda
//! 0
//! 0.31
//! 1.7
//! ```
//!
//! Lines starting with `#` are comments; those of the form `# key: value`
//! with key `genus` or `truncation_bound` carry metadata, other keys are
//! ignored. The single data column is headed `lambda`.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Nondecreasing list `0 = λ_0 < λ_1 ≤ ... ≤ λ_L`, multiplicities by repetition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceSpectrum {
    eigenvalues: Vec<f64>,
    genus: Option<u32>,
    /// Lower bound for every omitted eigenvalue `λ_ℓ`, `ℓ > L`.
    truncation_bound: f64,
}

impl SurfaceSpectrum {
    /// Validates the invariants. A missing truncation bound defaults to `λ_L`.
    pub fn new(eigenvalues: Vec<f64>, genus: Option<u32>, truncation_bound: Option<f64>) -> Result<Self> {
        if eigenvalues.len() < 2 {
            return Err(Error::InvalidSpectrum("need at least λ_0 and λ_1".into()));
        }
        if let Some(bad) = eigenvalues.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSpectrum(format!("non-finite eigenvalue {bad}")));
        }
        if eigenvalues[0] != 0.0 {
            return Err(Error::InvalidSpectrum(format!("λ_0 must be 0, got {}", eigenvalues[0])));
        }
        if eigenvalues[1] <= 0.0 {
            return Err(Error::InvalidSpectrum(format!("λ_1 must be positive, got {}", eigenvalues[1])));
        }
        if let Some(i) = eigenvalues.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::InvalidSpectrum(format!(
                "eigenvalues must be nondecreasing: λ_{} = {} > λ_{} = {}",
                i,
                eigenvalues[i],
                i + 1,
                eigenvalues[i + 1]
            )));
        }
        let last = *eigenvalues.last().unwrap();
        let truncation_bound = truncation_bound.unwrap_or(last);
        if !(truncation_bound >= last) {
            return Err(Error::InvalidSpectrum(format!(
                "truncation bound {truncation_bound} is below λ_L = {last}"
            )));
        }
        if let Some(g) = genus {
            if g < 2 {
                return Err(Error::InvalidSpectrum(format!("genus must be at least 2, got {g}")));
            }
            let small = eigenvalues.iter().filter(|&&v| v < 0.25).count();
            let allowed = 2 * g as usize - 2;
            if small > allowed {
                return Err(Error::InvalidSpectrum(format!(
                    "{small} eigenvalues below 1/4 but genus {g} allows at most {allowed}"
                )));
            }
        }
        Ok(Self { eigenvalues, genus, truncation_bound })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn genus(&self) -> Option<u32> {
        self.genus
    }

    pub fn truncation_bound(&self) -> f64 {
        self.truncation_bound
    }

    /// Index of the last listed eigenvalue, `L`.
    pub fn last_index(&self) -> usize {
        self.eigenvalues.len() - 1
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut genus = None;
        let mut truncation_bound = None;
        for (line_no, line) in text.lines().enumerate() {
            if let Some((key, value)) = metadata(line) {
                let parse_err = |message: String| Error::Parse { line: line_no + 1, message };
                match key {
                    "genus" => {
                        genus = Some(value.parse::<u32>().map_err(|e| parse_err(format!("genus: {e}")))?)
                    }
                    "truncation_bound" => {
                        truncation_bound =
                            Some(value.parse::<f64>().map_err(|e| parse_err(format!("truncation_bound: {e}")))?)
                    }
                    _ => {}
                }
            }
        }
        let (header, rows) = read_table(text)?;
        if header != ["lambda"] {
            return Err(Error::Parse { line: 1, message: format!("expected header `lambda`, got `{}`", header.join(",")) });
        }
        let eigenvalues = rows.into_iter().map(|(_, row)| row[0]).collect();
        Self::new(eigenvalues, genus, truncation_bound)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Serializes back into the text format, 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(g) = self.genus {
            let _ = writeln!(out, "# genus: {g}");
        }
        let _ = writeln!(out, "# truncation_bound: {:e}", self.truncation_bound);
        out.push_str("lambda\n");
        for v in &self.eigenvalues {
            let _ = writeln!(out, "{v:e}");
        }
        out
    }
}

/// `# key: value` → `(key, value)`.
pub(crate) fn metadata(line: &str) -> Option<(&str, &str)> {
    let body = line.trim_start().strip_prefix('#')?;
    let (key, value) = body.split_once(':')?;
    let key = key.trim();
    if key.is_empty() || key.contains(char::is_whitespace) {
        return None;
    }
    Some((key, value.trim()))
}

type NumericRows = Vec<(usize, Vec<f64>)>;

/// Reads a comma-separated numeric table with a header row, skipping `#`
/// comment lines. Returns the header and `(line number, values)` rows.
pub(crate) fn read_table(text: &str) -> Result<(Vec<String>, NumericRows)> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let mut values = Vec::with_capacity(record.len());
        for field in record.iter() {
            let v = field
                .parse::<f64>()
                .map_err(|e| Error::Parse { line, message: format!("`{field}`: {e}") })?;
            values.push(v);
        }
        if values.len() != header.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} columns, found {}", header.len(), values.len()),
            });
        }
        rows.push((line, values));
    }
    Ok((header, rows))
}
