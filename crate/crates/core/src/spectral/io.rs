//! Plain-text serialization of window ensembles and spectra.
//!
//! Windows travel as CSV with a two-line header — `dt_s,<spacing>` followed
//! by one `w<k>` column label per window — and one row per sample index.
//! Spectra are two-column CSV (`f_hz,s_v2_per_hz` or `f_hz,value` depending
//! on the value unit). Floats are written in exponent form with enough
//! digits to round-trip bit-exactly.

use crate::error::{require, Error, Result};
use crate::spectral::{SignalWindow, SpectrumSeries, SpectrumUnit};
use std::io::{BufRead, Write};

fn io_err(context: &str, err: std::io::Error) -> Error {
    Error::validation(context, err.to_string())
}

fn parse_float(token: &str, field: &str) -> Result<f64> {
    token
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::validation(field, format!("cannot parse '{}' as a number", token.trim())))
}

/// Writes an ensemble of equal-shape windows as CSV, one column per window.
pub fn write_signal_windows<W: Write>(mut out: W, ensemble: &[SignalWindow]) -> Result<()> {
    require(!ensemble.is_empty(), "ensemble", "need at least one window")?;
    let dt = ensemble[0].dt();
    let n = ensemble[0].len();
    require(
        ensemble.iter().all(|w| w.dt() == dt && w.len() == n),
        "ensemble",
        "all windows must share dt and sample count",
    )?;
    writeln!(out, "dt_s,{dt:e}").map_err(|e| io_err("output", e))?;
    let labels: Vec<String> = (0..ensemble.len()).map(|k| format!("w{k}")).collect();
    writeln!(out, "{}", labels.join(",")).map_err(|e| io_err("output", e))?;
    for i in 0..n {
        let row: Vec<String> = ensemble.iter().map(|w| format!("{:e}", w.samples()[i])).collect();
        writeln!(out, "{}", row.join(",")).map_err(|e| io_err("output", e))?;
    }
    Ok(())
}

/// Reads an ensemble written by [`write_signal_windows`].
pub fn read_signal_windows<R: BufRead>(input: R) -> Result<Vec<SignalWindow>> {
    let mut lines = input.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::validation("dt_s", "input is empty"))?
        .map_err(|e| io_err("input", e))?;
    let (key, value) = first
        .split_once(',')
        .ok_or_else(|| Error::validation("dt_s", "first line must be 'dt_s,<spacing>'"))?;
    require(
        key.trim() == "dt_s",
        "dt_s",
        format!("first line must start with 'dt_s', got '{key}'"),
    )?;
    let dt = parse_float(value, "dt_s")?;

    let header = lines
        .next()
        .ok_or_else(|| Error::validation("header", "missing window header line"))?
        .map_err(|e| io_err("input", e))?;
    let labels: Vec<&str> = header.split(',').collect();
    for (k, label) in labels.iter().enumerate() {
        require(
            label.trim() == format!("w{k}"),
            "header",
            format!("expected column 'w{k}', got '{}'", label.trim()),
        )?;
    }
    let n_windows = labels.len();

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); n_windows];
    for (row_index, line) in lines.enumerate() {
        let line = line.map_err(|e| io_err("input", e))?;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        require(
            cells.len() == n_windows,
            "row",
            format!(
                "row {} has {} cells, expected {n_windows}",
                row_index + 1,
                cells.len()
            ),
        )?;
        for (column, cell) in columns.iter_mut().zip(&cells) {
            column.push(parse_float(cell, "row")?);
        }
    }
    columns
        .into_iter()
        .map(|samples| SignalWindow::new(dt, samples))
        .collect()
}

fn value_label(unit: SpectrumUnit) -> &'static str {
    match unit {
        SpectrumUnit::VoltsSquaredPerHz => "s_v2_per_hz",
        SpectrumUnit::Dimensionless => "value",
    }
}

/// Writes a spectrum as two-column CSV with a unit-bearing header.
pub fn write_spectrum<W: Write>(mut out: W, spectrum: &SpectrumSeries) -> Result<()> {
    writeln!(out, "f_hz,{}", value_label(spectrum.unit())).map_err(|e| io_err("output", e))?;
    for (f, v) in spectrum.iter() {
        writeln!(out, "{f:e},{v:e}").map_err(|e| io_err("output", e))?;
    }
    Ok(())
}

/// Reads a spectrum written by [`write_spectrum`], recovering the unit from
/// the header.
pub fn read_spectrum<R: BufRead>(input: R) -> Result<SpectrumSeries> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::validation("header", "input is empty"))?
        .map_err(|e| io_err("input", e))?;
    let unit = match header.trim() {
        h if h == format!("f_hz,{}", value_label(SpectrumUnit::VoltsSquaredPerHz)) => {
            SpectrumUnit::VoltsSquaredPerHz
        }
        h if h == format!("f_hz,{}", value_label(SpectrumUnit::Dimensionless)) => {
            SpectrumUnit::Dimensionless
        }
        other => {
            return Err(Error::validation(
                "header",
                format!("unrecognized spectrum header '{other}'"),
            ))
        }
    };
    let mut f_hz = Vec::new();
    let mut values = Vec::new();
    for line in lines {
        let line = line.map_err(|e| io_err("input", e))?;
        if line.trim().is_empty() {
            continue;
        }
        let (f, v) = line
            .split_once(',')
            .ok_or_else(|| Error::validation("row", format!("malformed row '{line}'")))?;
        f_hz.push(parse_float(f, "f_hz")?);
        values.push(parse_float(v, value_label(unit))?);
    }
    SpectrumSeries::new(f_hz, values, unit)
}
