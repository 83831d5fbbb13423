//! Parameter axes and their Cartesian product.

use crate::error::ConfigError;

/// The values one parameter takes in a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

/// Parses `value`, `a,b,c` or `start:stop:count[:log|:lin]`.
pub fn parse_values(name: &str, spec: &str) -> Result<Vec<f64>, ConfigError> {
    let spec = spec.trim();
    if spec.contains(':') {
        return parse_range(name, spec);
    }
    spec.split(',')
        .map(|s| parse_number(name, s))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|v| non_empty(name, v))
}

fn parse_number(name: &str, s: &str) -> Result<f64, ConfigError> {
    let s = s.trim();
    let x: f64 = s
        .parse()
        .map_err(|_| ConfigError::field(name, format!("'{s}' is not a number")))?;
    if !x.is_finite() {
        return Err(ConfigError::field(name, format!("'{s}' is not finite")));
    }
    Ok(x)
}

fn non_empty(name: &str, v: Vec<f64>) -> Result<Vec<f64>, ConfigError> {
    if v.is_empty() {
        Err(ConfigError::field(name, "empty value list"))
    } else {
        Ok(v)
    }
}

fn parse_range(name: &str, spec: &str) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(ConfigError::field(name, format!("range '{spec}' must be start:stop:count[:log]")));
    }
    let start = parse_number(name, parts[0])?;
    let stop = parse_number(name, parts[1])?;
    let count: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| ConfigError::field(name, format!("count '{}' is not a positive integer", parts[2])))?;
    let log = match parts.get(3).map(|s| s.trim()) {
        None | Some("lin") => false,
        Some("log") => true,
        Some(other) => return Err(ConfigError::field(name, format!("unknown spacing '{other}' (use log or lin)"))),
    };
    if count == 0 {
        return Err(ConfigError::field(name, "range count must be at least 1"));
    }
    if count > 1 && !(stop > start) {
        return Err(ConfigError::field(name, format!("range {start}..{stop} must have positive extent")));
    }
    if log && !(start > 0.0) {
        return Err(ConfigError::field(name, "log ranges need positive end points"));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = |k: usize| k as f64 / (count - 1) as f64;
    Ok((0..count)
        .map(|k| {
            if k == count - 1 {
                stop
            } else if log {
                start * (stop / start).powf(step(k))
            } else {
                start + (stop - start) * step(k)
            }
        })
        .collect())
}

/// All combinations, first axis varying slowest.
pub fn cartesian(axes: &[Axis]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(*v);
                    p
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_list_and_ranges() {
        assert_eq!(parse_values("R", "2.5").unwrap(), vec![2.5]);
        assert_eq!(parse_values("R", "1, 2,3").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_values("R", "0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        let log = parse_values("R", "1e-3:1e3:7:log").unwrap();
        assert_eq!(log.len(), 7);
        assert_eq!(log[6], 1e3);
        assert!((log[3] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_ranges() {
        for bad in ["1:0:3", "1:2:0", "0:1:3:log", "1:2", "1:2:3:cubic", "x", "", "nan"] {
            assert!(parse_values("R", bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn product_order() {
        let axes = [
            Axis { name: "a".into(), values: vec![1.0, 2.0] },
            Axis { name: "b".into(), values: vec![10.0, 20.0, 30.0] },
        ];
        let grid = cartesian(&axes);
        assert_eq!(grid.len(), 6);
        assert_eq!(grid[0], vec![1.0, 10.0]);
        assert_eq!(grid[1], vec![1.0, 20.0]);
        assert_eq!(grid[5], vec![2.0, 30.0]);
    }
}
