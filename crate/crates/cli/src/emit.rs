use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::Context;
use bosonic_tradeoff::regions::{BoundTriple, PointOrigin};
use bosonic_tradeoff::{Frontier, Slice};
use serde::{Deserialize, Serialize};

/// Shortest decimal that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ns: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grid: Option<u32>,
}

impl Metadata {
    pub fn new(command: &str) -> Self {
        Metadata {
            tool: env!("CARGO_PKG_NAME").replace("-cli", ""),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            eta: None,
            ns: None,
            grid: None,
        }
    }
}

/// A frontier as written by `frontier --format json` and read back by
/// `minkowski`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrontierDoc {
    pub metadata: Metadata,
    pub frontier: Frontier,
}

impl FrontierDoc {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing frontier JSON in {}", path.display()))
    }
}

pub fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// One row per point: `region,lambda,rate1,rate2,bound1,bound2,bound3`.
/// `rate1` is the first coordinate and `rate2` the traced one. The ce slice
/// adds `consumption`, the ebits consumed. Points that do not come from a
/// single sharing fraction leave `lambda` and the bounds empty.
pub fn frontier_csv(f: &Frontier) -> String {
    let ce = f.slice == Slice::Ce;
    let mut s = String::from("region,lambda,rate1,rate2,bound1,bound2,bound3");
    if ce {
        s.push_str(",consumption");
    }
    s.push('\n');
    for p in &f.points {
        let (lambda, bounds) = match p.origin {
            PointOrigin::Sharing { share, bounds } => (Some(share.lambda()), Some(bounds)),
            _ => (None, None),
        };
        let _ = write!(
            s,
            "{},{},{},{},{},{},{}",
            f.region(),
            opt_num(lambda),
            num(f.slice.companion(&p.rates)),
            num(f.slice.traced(&p.rates)),
            opt_num(bounds.map(|b| b.b1)),
            opt_num(bounds.map(|b| b.b2)),
            opt_num(bounds.map(|b| b.b3)),
        );
        if ce {
            let _ = write!(s, ",{}", num(0.0 - p.rates.third));
        }
        s.push('\n');
    }
    s
}

pub fn bounds_csv(region: &str, rows: &[(f64, BoundTriple)]) -> String {
    let mut s = String::from("region,lambda,bound1,bound2,bound3\n");
    for (lambda, b) in rows {
        let _ = writeln!(s, "{region},{},{},{},{}", num(*lambda), num(b.b1), num(b.b2), num(b.b3));
    }
    s
}

/// Two-column `quantity,value` table.
pub fn table_csv(rows: &[(&str, String)]) -> String {
    let mut s = String::from("quantity,value\n");
    for (k, v) in rows {
        let _ = writeln!(s, "{k},{v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_round_trip() {
        for x in [0.1, 1.0, 1e-7, 8.676312063704783, f64::MIN_POSITIVE, 123456789.123] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(1.0), "1.0");
    }

    #[test]
    fn table_layout() {
        let t = table_csv(&[("a", num(1.5)), ("b", "unbounded".into())]);
        assert_eq!(t, "quantity,value\na,1.5\nb,unbounded\n");
    }
}
