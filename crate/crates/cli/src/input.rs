use std::fs::File;
use std::path::Path;

use crate::CliError;

/// Reads `(t, M)` samples from a CSV file with header `t,M`.
///
/// Rows must hold two finite numbers with strictly increasing `t`; errors
/// name the offending line. A file without data rows is a usage error.
pub fn read_evolution_csv(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let file = File::open(path).map_err(|e| CliError::Failure(format!("cannot read {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(file);

    let headers = reader.headers().map_err(|e| CliError::Failure(format!("{}: line 1: {e}", path.display())))?.clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(CliError::Usage(format!("{}: empty input", path.display())));
    }
    if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "M" {
        return Err(CliError::Failure(format!(
            "{}: line 1: expected header `t,M`, found `{}`",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut times = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::Failure(format!("{}: line {line}: {e}", path.display()))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |k: usize, name: &str| -> Result<f64, CliError> {
            let raw = &record[k];
            match raw.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(CliError::Failure(format!(
                    "{}: line {line}: column {name}: `{raw}` is not a finite number",
                    path.display()
                ))),
            }
        };
        let t = field(0, "t")?;
        let m = field(1, "M")?;
        if let Some(&prev) = times.last() {
            if t <= prev {
                return Err(CliError::Failure(format!(
                    "{}: line {line}: t = {t} does not increase (previous {prev})",
                    path.display()
                )));
            }
        }
        times.push(t);
        values.push(m);
    }
    if times.is_empty() {
        return Err(CliError::Usage(format!("{}: no samples", path.display())));
    }
    Ok((times, values))
}
