//! CSV persistence of feature records.
//!
//! Files carry the exact canonical header from [`schema::csv_header`].
//! Floats are written with the shortest representation that round-trips
//! to the same bits, so write-then-read is the identity on every value.
//! Unlabelled records leave the class cell empty.

use std::path::Path;

use super::schema::{self, NUM_FEATURES};
use super::{DatasetError, FeatureRecord};

/// Write records to a CSV file with the canonical header.
pub fn write_csv(path: &Path, records: &[FeatureRecord]) -> Result<(), DatasetError> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| DatasetError::Csv(e.to_string()))?;
    write_into(&mut writer, records)?;
    writer.flush()?;
    Ok(())
}

/// Render records to a CSV string (for tests and stdout output).
pub fn to_csv_string(records: &[FeatureRecord]) -> Result<String, DatasetError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    write_into(&mut writer, records)?;
    let bytes = writer.into_inner().map_err(|e| DatasetError::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| DatasetError::Csv(e.to_string()))
}

fn write_into<W: std::io::Write>(
    writer: &mut csv::Writer<W>,
    records: &[FeatureRecord],
) -> Result<(), DatasetError> {
    writer
        .write_record(schema::csv_header())
        .map_err(|e| DatasetError::Csv(e.to_string()))?;
    for record in records {
        let mut row: Vec<String> = Vec::with_capacity(schema::csv_header().len());
        row.push(record.program.clone());
        for value in &record.values[..schema::IDX_CC_NUMBER] {
            row.push(value.to_string());
        }
        row.push(record.cc_grade.to_string());
        for value in &record.values[schema::IDX_CC_NUMBER..] {
            row.push(value.to_string());
        }
        row.push(record.label.map(|l| l.to_string()).unwrap_or_default());
        row.push(record.compilation_errors.to_string());
        row.push(flag(record.cc_module_level));
        row.push(flag(record.compiling_valid));
        row.push(flag(record.execution_time_valid));
        row.push(flag(record.coverage_valid));
        writer.write_record(&row).map_err(|e| DatasetError::Csv(e.to_string()))?;
    }
    Ok(())
}

fn flag(value: bool) -> String {
    u8::from(value).to_string()
}

/// Read records from a CSV file, validating the header and every cell.
pub fn read_csv(path: &Path) -> Result<Vec<FeatureRecord>, DatasetError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DatasetError::Csv(format!("{}: {e}", path.display())))?;
    read_csv_str(&text)
}

/// Read records from CSV text.
pub fn read_csv_str(text: &str) -> Result<Vec<FeatureRecord>, DatasetError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let expected = schema::csv_header();
    let header = reader.headers().map_err(|e| DatasetError::Csv(e.to_string()))?;
    let got: Vec<&str> = header.iter().collect();
    if got != expected {
        for name in &expected {
            if !got.contains(name) {
                return Err(DatasetError::Csv(format!("missing column {name:?}")));
            }
        }
        for name in &got {
            if !expected.contains(name) {
                return Err(DatasetError::Csv(format!("unexpected column {name:?}")));
            }
        }
        return Err(DatasetError::Csv("columns are out of canonical order".to_string()));
    }

    let mut records = Vec::new();
    for (row_index, row) in reader.records().enumerate() {
        let row = row.map_err(|e| DatasetError::Csv(e.to_string()))?;
        let line = row_index + 2; // 1-based, after the header
        if row.len() != expected.len() {
            return Err(DatasetError::Csv(format!(
                "line {line}: expected {} cells, found {}",
                expected.len(),
                row.len()
            )));
        }
        let cell = |i: usize| row.get(i).unwrap_or("");
        let number = |i: usize| -> Result<f64, DatasetError> {
            let raw = cell(i);
            let value: f64 = raw.parse().map_err(|_| {
                DatasetError::Csv(format!("line {line}, column {:?}: bad number {raw:?}", expected[i]))
            })?;
            if !value.is_finite() {
                return Err(DatasetError::Csv(format!(
                    "line {line}, column {:?}: non-finite value {raw:?}",
                    expected[i]
                )));
            }
            Ok(value)
        };

        let mut values = [0.0f64; NUM_FEATURES];
        // Columns: Program, features[..6], CC Grade, features[6..], Class,
        // Compilation Errors, then the four flags.
        for (offset, slot) in values.iter_mut().enumerate().take(schema::IDX_CC_NUMBER) {
            *slot = number(1 + offset)?;
        }
        let grade_cell = cell(1 + schema::IDX_CC_NUMBER);
        let mut grade_chars = grade_cell.chars();
        let cc_grade = match (grade_chars.next(), grade_chars.next()) {
            (Some(c @ 'A'..='F'), None) => c,
            _ => {
                return Err(DatasetError::Csv(format!(
                    "line {line}: bad grade {grade_cell:?}"
                )))
            }
        };
        for offset in schema::IDX_CC_NUMBER..NUM_FEATURES {
            values[offset] = number(2 + offset)?;
        }
        let class_cell = cell(2 + NUM_FEATURES);
        let label = match class_cell {
            "" => None,
            "0" => Some(0),
            "1" => Some(1),
            other => {
                return Err(DatasetError::Csv(format!("line {line}: bad class {other:?}")))
            }
        };
        let errors_cell = cell(3 + NUM_FEATURES);
        let compilation_errors: u32 = errors_cell.parse().map_err(|_| {
            DatasetError::Csv(format!("line {line}: bad error count {errors_cell:?}"))
        })?;
        let flag_at = |i: usize| -> Result<bool, DatasetError> {
            match cell(i) {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(DatasetError::Csv(format!(
                    "line {line}, column {:?}: bad flag {other:?}",
                    expected[i]
                ))),
            }
        };
        records.push(FeatureRecord {
            program: cell(0).to_string(),
            values,
            cc_grade,
            label,
            compilation_errors,
            cc_module_level: flag_at(4 + NUM_FEATURES)?,
            compiling_valid: flag_at(5 + NUM_FEATURES)?,
            execution_time_valid: flag_at(6 + NUM_FEATURES)?,
            coverage_valid: flag_at(7 + NUM_FEATURES)?,
        });
    }
    Ok(records)
}
