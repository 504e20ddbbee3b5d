//! Line-oriented problem manifest.
//!
//! One problem per line, tab-separated:
//!
//! ```text
//! name<TAB>n<TAB>f_star<TAB>tags<TAB>lo:hi lo:hi ...
//! ```
//!
//! `tags` is `convex|non-convex,uni-modal|multi-modal`. Blank lines and
//! lines starting with `#` are ignored. Reals are written in shortest
//! round-trip form, so writing and re-parsing is lossless.

use std::fmt::Write as _;

use super::{catalog, lookup, ProblemSpec};
use crate::error::{Error, Result};
use crate::model::Problem;

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub name: String,
    pub n: usize,
    pub f_star: f64,
    pub convex: bool,
    pub multimodal: bool,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

pub const HEADER: &str = "# name\tn\tf_star\ttags\tbounds";

impl ManifestEntry {
    pub fn from_spec(spec: &ProblemSpec) -> Self {
        Self {
            name: spec.family.to_string(),
            n: spec.n,
            f_star: spec.f_star,
            convex: spec.convex,
            multimodal: spec.multimodal,
            lower: spec.lower.clone(),
            upper: spec.upper.clone(),
        }
    }

    pub fn from_problem(p: &Problem) -> Self {
        Self {
            name: p.name.clone(),
            n: p.dim(),
            f_star: p.f_star,
            convex: p.convex,
            multimodal: p.multimodal,
            lower: p.lower.clone(),
            upper: p.upper.clone(),
        }
    }

    /// Catalog objective for this entry, with the manifest's domain, optimum
    /// value and tags. The catalog minimizer is kept only if it lies inside
    /// the manifest domain.
    pub fn resolve(&self) -> Result<Problem> {
        let base = lookup(&self.name, self.n)?;
        let x_star = base.x_star.clone().filter(|x| {
            x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
        });
        let objective = base.clone();
        let p = Problem::new(
            base.name.clone(),
            self.lower.clone(),
            self.upper.clone(),
            self.f_star,
            move |x: &[f64]| objective.eval(x),
        )?
        .with_tags(self.convex, self.multimodal);
        match x_star {
            Some(x) => p.with_optimum(x),
            None => Ok(p),
        }
    }

    fn write_line(&self, out: &mut String) {
        let tags = format!(
            "{},{}",
            if self.convex { "convex" } else { "non-convex" },
            if self.multimodal { "multi-modal" } else { "uni-modal" }
        );
        let _ = write!(out, "{}\t{}\t{:?}\t{}\t", self.name, self.n, self.f_star, tags);
        for (j, (lo, hi)) in self.lower.iter().zip(&self.upper).enumerate() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{lo:?}:{hi:?}");
        }
        out.push('\n');
    }
}

/// Serializes entries, header first.
pub fn write_manifest(entries: &[ManifestEntry]) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for e in entries {
        e.write_line(&mut out);
    }
    out
}

/// Manifest of the whole catalog.
pub fn catalog_manifest() -> String {
    let entries: Vec<ManifestEntry> = catalog().iter().map(ManifestEntry::from_spec).collect();
    write_manifest(&entries)
}

fn parse_real(s: &str, line: usize, what: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid {what} `{s}`"),
    })
}

fn parse_tags(s: &str, line: usize) -> Result<(bool, bool)> {
    let mut convex = None;
    let mut multimodal = None;
    for tag in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match tag {
            "convex" => convex = Some(true),
            "non-convex" => convex = Some(false),
            "multi-modal" => multimodal = Some(true),
            "uni-modal" => multimodal = Some(false),
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown tag `{other}`"),
                })
            }
        }
    }
    match (convex, multimodal) {
        (Some(c), Some(m)) => Ok((c, m)),
        _ => Err(Error::Parse {
            line,
            msg: "tags need a convexity and a modality".into(),
        }),
    }
}

/// Parses a manifest. Line numbers in errors are 1-based.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        if fields.len() != 5 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 5 tab-separated fields, found {}", fields.len()),
            });
        }
        let name = fields[0].trim();
        if name.is_empty() {
            return Err(Error::Parse {
                line,
                msg: "empty problem name".into(),
            });
        }
        let n: usize = fields[1].trim().parse().map_err(|_| Error::Parse {
            line,
            msg: format!("invalid dimension `{}`", fields[1]),
        })?;
        if n == 0 {
            return Err(Error::Parse {
                line,
                msg: "dimension must be positive".into(),
            });
        }
        let f_star = parse_real(fields[2], line, "f_star")?;
        if !f_star.is_finite() {
            return Err(Error::Parse {
                line,
                msg: format!("f_star must be finite, got {f_star}"),
            });
        }
        let (convex, multimodal) = parse_tags(fields[3], line)?;
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for pair in fields[4].split_whitespace() {
            let (lo, hi) = pair.split_once(':').ok_or_else(|| Error::Parse {
                line,
                msg: format!("bound `{pair}` is not lo:hi"),
            })?;
            let (lo, hi) = (parse_real(lo, line, "bound")?, parse_real(hi, line, "bound")?);
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::Parse {
                    line,
                    msg: format!("empty or non-finite interval {lo}:{hi}"),
                });
            }
            lower.push(lo);
            upper.push(hi);
        }
        if lower.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("{} bounds for n = {n}", lower.len()),
            });
        }
        entries.push(ManifestEntry {
            name: name.to_string(),
            n,
            f_star,
            convex,
            multimodal,
            lower,
            upper,
        });
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_round_trips() {
        let text = catalog_manifest();
        let parsed = parse_manifest(&text).unwrap();
        assert_eq!(parsed.len(), 96);
        assert_eq!(write_manifest(&parsed), text);
        for (entry, spec) in parsed.iter().zip(catalog()) {
            assert_eq!(entry, &ManifestEntry::from_spec(&spec));
        }
    }

    #[test]
    fn resolves_against_catalog() {
        let text = "Bukin6\t2\t0.0\tconvex,multi-modal\t-14.0:6.0 -2.7:3.3\n";
        let e = &parse_manifest(text).unwrap()[0];
        let p = e.resolve().unwrap();
        assert_eq!(p.lower, vec![-14.0, -2.7]);
        assert_eq!(p.x_star, Some(vec![-10.0, 1.0]));
        assert!((p.eval(&[-5.0, 0.0]) - 50.05).abs() < 1e-12);
    }

    #[test]
    fn reports_line_numbers() {
        let text = "# comment\n\nSphere\t2\t0\tconvex,uni-modal\t-1:1\n";
        match parse_manifest(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_manifest("Sphere\t2\t0\tconvex\t-1:1 -1:1\n").is_err());
        assert!(parse_manifest("Sphere\t2\t0\tconvex,uni-modal\t1:-1 -1:1\n").is_err());
    }
}
