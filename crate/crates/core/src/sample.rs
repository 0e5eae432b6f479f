//! Sorted i.i.d. samples and their upper order statistics.
//!
//! Values are stored ascending, `X(1,n) <= ... <= X(n,n)`. Estimators address
//! them only through [`OrderedSample::upper`], where `i = 1` is the maximum
//! and `i = n` the minimum, i.e. `upper(i) = X(n-i+1, n)`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OrderedSample {
    values: Vec<f64>,
}

/// Layout of a sample file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleFormat {
    /// One number per line; blank lines and `#` comments are skipped.
    Plain,
    /// A named column of a comma-separated file with a header row.
    CsvColumn(String),
}

impl OrderedSample {
    pub fn from_raw(data: &[f64]) -> Result<Self> {
        if let Some((index, &value)) = data.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        if data.len() < 2 {
            return Err(Error::TooFewValues(data.len()));
        }
        let mut values = data.to_vec();
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: a sample holds at least two values.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Ascending values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The `i`-th largest value, `X(n-i+1, n)`.
    pub fn upper(&self, i: usize) -> Result<f64> {
        let n = self.len();
        if i == 0 || i > n {
            return Err(Error::Index { index: i, n });
        }
        Ok(self.values[n - i])
    }

    /// `a·X + b` applied to every value; order is preserved for `a > 0`.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self> {
        let mapped: Vec<f64> = self.values.iter().map(|&x| scale * x + shift).collect();
        Self::from_raw(&mapped)
    }

    pub fn load(path: &Path, format: &SampleFormat) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let data = match format {
            SampleFormat::Plain => parse_plain(&text)?,
            SampleFormat::CsvColumn(column) => parse_csv_column(&text, column)?,
        };
        Self::from_raw(&data)
    }
}

/// Free-function form of [`OrderedSample::upper`].
pub fn upper_order_stat(sample: &OrderedSample, i: usize) -> Result<f64> {
    sample.upper(i)
}

pub fn load_sample(path: &Path, format: &SampleFormat) -> Result<OrderedSample> {
    OrderedSample::load(path, format)
}

fn parse_number(token: &str, line: usize) -> Result<f64> {
    token.trim().parse::<f64>().map_err(|_| Error::Parse {
        line,
        token: token.trim().to_string(),
    })
}

fn parse_plain(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_number(line, idx + 1)?);
    }
    Ok(out)
}

fn parse_csv_column(text: &str, column: &str) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let col = reader
        .headers()?
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| Error::MissingColumn(column.to_string()))?;
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        // header is line 1
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = record.get(col).ok_or_else(|| Error::Parse {
            line,
            token: String::new(),
        })?;
        out.push(parse_number(field, line)?);
    }
    Ok(out)
}
