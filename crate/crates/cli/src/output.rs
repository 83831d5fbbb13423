//! CSV rendering of sweep results.

use std::io::Write;

use vacuum_kinetics::Error;

use crate::config::RunConfig;
use crate::scenarios::{Cell, Evaluated, DIVERGENCE};

/// One evaluated grid point.
pub struct Row {
    pub point: Vec<f64>,
    pub outcome: Result<Evaluated, Error>,
}

impl Row {
    pub fn diverged(&self) -> bool {
        match &self.outcome {
            Ok(ev) => ev.flags.iter().any(|f| f == DIVERGENCE),
            Err(e) => matches!(e, Error::Divergence(_)),
        }
    }
}

/// Shortest text that parses back to the same `f64`.
///
/// Moderate magnitudes use plain decimal notation, the rest scientific, so
/// subnormals do not expand to hundreds of zeros.
pub fn format_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Num(x) => format_f64(*x),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

pub fn header(cfg: &RunConfig) -> Vec<String> {
    let params = cfg.scenario.params();
    let mut h: Vec<String> = params.iter().map(|p| format!("{} [{}]", p.name, p.unit)).collect();
    h.extend(cfg.scenario.outputs().iter().map(|c| format!("{} [{}]", c.name, c.unit)));
    h.push("flags".into());
    h.push("error".into());
    h
}

pub fn write_csv<W: Write>(out: W, cfg: &RunConfig, rows: &[Row], generated: Option<u64>) -> std::io::Result<()> {
    let mut out = out;
    if let Some(secs) = generated {
        writeln!(out, "# generated {secs} (unix time) scenario {}", cfg.scenario.name())?;
    }
    let width = cfg.scenario.outputs().len();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(cfg))?;
    for row in rows {
        let mut rec: Vec<String> = row.point.iter().map(|x| format_f64(*x)).collect();
        match &row.outcome {
            Ok(ev) => {
                rec.extend(ev.cells.iter().map(cell_text));
                rec.push(ev.flags.join(";"));
                rec.push(String::new());
            }
            Err(e) => {
                rec.extend(std::iter::repeat_n(String::new(), width));
                rec.push(if row.diverged() { DIVERGENCE.into() } else { String::new() });
                rec.push(e.to_string());
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips() {
        for x in [0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 1e-4, 9.99e-5, 1e16, 6.02e23, f64::MIN_POSITIVE, 5e-324, -2.5e-310, f64::MAX] {
            let s = format_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {s}");
        }
        assert_eq!(format_f64(5e-324), "5e-324");
        assert_eq!(format_f64(0.25), "0.25");
    }
}
