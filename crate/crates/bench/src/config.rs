//! Sweep configuration: a line-oriented `key = value` file.
//!
//! ```text
//! # GL with the midpoint/minimum average on the small problems
//! variants = gl/13d
//! problems = all
//! n_max = 4
//! m_max = 1000000
//! ```
//!
//! Keys: `variants` (required), `problems`, `manifest`, `n_min`, `n_max`,
//! `tags`, `rho`, `eps_pe`, `eps`, `m_max`, `k_max`, `record_time`, `out`.
//! Blank lines and `#` comments are ignored; repeating a key is an error.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use halrect::problems::{self, manifest};
use halrect::Problem;

use crate::error::{io_err, BenchError, Result};
use crate::variant::{parse_variant_list, Variant};

/// Problem property usable as a filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    Convex,
    NonConvex,
    UniModal,
    MultiModal,
}

impl Tag {
    pub fn matches(self, convex: bool, multimodal: bool) -> bool {
        match self {
            Tag::Convex => convex,
            Tag::NonConvex => !convex,
            Tag::UniModal => !multimodal,
            Tag::MultiModal => multimodal,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Tag::Convex => "convex",
            Tag::NonConvex => "non-convex",
            Tag::UniModal => "uni-modal",
            Tag::MultiModal => "multi-modal",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "convex" => Ok(Tag::Convex),
            "non-convex" => Ok(Tag::NonConvex),
            "uni-modal" => Ok(Tag::UniModal),
            "multi-modal" => Ok(Tag::MultiModal),
            other => Err(format!("unknown tag `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub variants: Vec<Variant>,
    /// Family names to include; empty means every family.
    pub problems: Vec<String>,
    /// Problem list to use instead of the built-in catalog.
    pub manifest: Option<PathBuf>,
    pub n_min: usize,
    pub n_max: usize,
    /// Every listed tag must match.
    pub tags: Vec<Tag>,
    pub rho: Vec<f64>,
    pub eps_pe: f64,
    pub eps: f64,
    pub m_max: usize,
    pub k_max: Option<usize>,
    /// Record wall time per run; off keeps results byte-reproducible.
    pub record_time: bool,
    pub out: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let solver = halrect::SolverConfig::default();
        Self {
            variants: Vec::new(),
            problems: Vec::new(),
            manifest: None,
            n_min: 1,
            n_max: usize::MAX,
            tags: Vec::new(),
            rho: vec![0.0],
            eps_pe: solver.eps_pe,
            eps: solver.eps,
            m_max: solver.m_max,
            k_max: None,
            record_time: false,
            out: None,
        }
    }
}

fn parse_num<T: FromStr>(value: &str, line: usize, key: &str) -> Result<T> {
    value.parse().map_err(|_| BenchError::Config {
        line,
        msg: format!("invalid value `{value}` for `{key}`"),
    })
}

fn parse_real(value: &str, line: usize, key: &str) -> Result<f64> {
    let v: f64 = parse_num(value, line, key)?;
    if !v.is_finite() {
        return Err(BenchError::Config {
            line,
            msg: format!("`{key}` must be finite"),
        });
    }
    Ok(v)
}

impl SweepConfig {
    /// Parses configuration text.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        let mut seen = BTreeSet::new();
        let mut variants_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| BenchError::Config {
                line,
                msg: format!("expected `key = value`, got `{content}`"),
            })?;
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim();
            if !seen.insert(key.clone()) {
                return Err(BenchError::Config {
                    line,
                    msg: format!("duplicate key `{key}`"),
                });
            }
            let cfg_err = |msg: String| BenchError::Config { line, msg };
            match key.as_str() {
                "variants" => {
                    cfg.variants = parse_variant_list(value).map_err(|e| cfg_err(e.to_string()))?;
                    variants_line = line;
                }
                "problems" => {
                    cfg.problems = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty() && !s.eq_ignore_ascii_case("all"))
                        .map(str::to_string)
                        .collect();
                }
                "manifest" => {
                    if value.is_empty() {
                        return Err(cfg_err("empty manifest path".into()));
                    }
                    cfg.manifest = Some(PathBuf::from(value));
                }
                "n_min" => cfg.n_min = parse_num(value, line, &key)?,
                "n_max" => cfg.n_max = parse_num(value, line, &key)?,
                "tags" => {
                    cfg.tags = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse::<Tag>().map_err(cfg_err))
                        .collect::<Result<_>>()?;
                }
                "rho" => {
                    let mut rho = Vec::new();
                    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        let r = parse_real(item, line, &key)?;
                        if r < 0.0 {
                            return Err(cfg_err(format!("rho must be >= 0, got {r}")));
                        }
                        rho.push(r);
                    }
                    if rho.is_empty() {
                        return Err(cfg_err("empty rho list".into()));
                    }
                    rho.sort_by(f64::total_cmp);
                    rho.dedup();
                    cfg.rho = rho;
                }
                "eps_pe" => cfg.eps_pe = parse_real(value, line, &key)?,
                "eps" => cfg.eps = parse_real(value, line, &key)?,
                "m_max" => cfg.m_max = parse_num(value, line, &key)?,
                "k_max" => {
                    cfg.k_max = if value.eq_ignore_ascii_case("none") {
                        None
                    } else {
                        Some(parse_num(value, line, &key)?)
                    }
                }
                "record_time" => cfg.record_time = parse_num(value, line, &key)?,
                "out" => cfg.out = Some(PathBuf::from(value)),
                other => return Err(cfg_err(format!("unknown key `{other}`"))),
            }
        }
        if cfg.variants.is_empty() {
            return Err(BenchError::Config {
                line: variants_line,
                msg: "`variants` must list at least one variant".into(),
            });
        }
        if cfg.n_min > cfg.n_max {
            return Err(BenchError::Config {
                line: 0,
                msg: format!("n_min {} exceeds n_max {}", cfg.n_min, cfg.n_max),
            });
        }
        cfg.solver_config(cfg.variants[0])
            .validate()
            .map_err(|e| BenchError::Config {
                line: 0,
                msg: e.to_string(),
            })?;
        Ok(cfg)
    }

    /// Reads a config file. Relative `manifest` and `out` paths are taken
    /// relative to the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        let mut cfg = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.manifest, &mut cfg.out].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn solver_config(&self, variant: Variant) -> halrect::SolverConfig {
        halrect::SolverConfig {
            eps: self.eps,
            eps_pe: self.eps_pe,
            m_max: self.m_max,
            k_max: self.k_max,
            ..variant.config()
        }
    }

    fn keeps(&self, name: &str, n: usize, convex: bool, multimodal: bool) -> bool {
        (self.problems.is_empty() || self.problems.iter().any(|p| p.eq_ignore_ascii_case(name)))
            && (self.n_min..=self.n_max).contains(&n)
            && self.tags.iter().all(|t| t.matches(convex, multimodal))
    }

    /// Problems selected by the filters, from the manifest if one is set and
    /// from the built-in catalog otherwise.
    pub fn select_problems(&self) -> Result<Vec<Problem>> {
        let all: Vec<Problem> = match &self.manifest {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(io_err(path))?;
                manifest::parse_manifest(&text)?
                    .iter()
                    .map(|e| e.resolve())
                    .collect::<halrect::Result<_>>()?
            }
            None => problems::catalog()
                .iter()
                .map(|s| s.instantiate())
                .collect::<halrect::Result<_>>()?,
        };
        for name in &self.problems {
            if problems::family(name).is_none() {
                return Err(BenchError::Core(halrect::Error::NotFound {
                    name: name.clone(),
                    n: 0,
                }));
            }
        }
        let chosen: Vec<Problem> = all
            .into_iter()
            .filter(|p| self.keeps(&p.name, p.dim(), p.convex, p.multimodal))
            .collect();
        if chosen.is_empty() {
            return Err(BenchError::Empty("no problem matches the sweep filters".into()));
        }
        Ok(chosen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use halrect::{Aggregation, SelectionScheme};

    #[test]
    fn parses_all_keys() {
        let text = "\
# comment
variants = gl/13d, ia/13a
problems = Branin, bukin6
n_min = 2
n_max = 4   # trailing comment
tags = non-convex
rho = 0.05, 0, 0.025
eps_pe = 0.01
eps = 1e-4
m_max = 5000
k_max = 10
record_time = true
out = results
";
        let cfg = SweepConfig::parse(text).unwrap();
        assert_eq!(cfg.variants.len(), 2);
        assert_eq!(cfg.problems, vec!["Branin", "bukin6"]);
        assert_eq!((cfg.n_min, cfg.n_max), (2, 4));
        assert_eq!(cfg.tags, vec![Tag::NonConvex]);
        assert_eq!(cfg.rho, vec![0.0, 0.025, 0.05]);
        assert_eq!((cfg.m_max, cfg.k_max, cfg.record_time), (5000, Some(10), true));
        assert_eq!(cfg.out, Some(PathBuf::from("results")));
        let problems = cfg.select_problems().unwrap();
        assert_eq!(problems.len(), 1);
        assert_eq!(problems[0].name, "Branin");
        let sc = cfg.solver_config(cfg.variants[0]);
        assert_eq!(sc.selection, SelectionScheme::ImprovedAggressive);
        assert_eq!(sc.aggregation, Aggregation::Midpoint);
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            "problems = all",
            "variants = gl/13d\nvariants = ia/13a",
            "variants = gl/13d\nbogus = 1",
            "variants = gl/13d\nm_max = many",
            "variants = gl/13d\nrho = -0.1",
            "variants = gl/13d\nm_max = 0",
            "variants = gl/13d\neps = nan",
            "variants = gl/13d\nn_min = 5\nn_max = 2",
            "variants = gl/13d\njust words",
            "variants = gl/13z",
        ];
        for text in cases {
            assert!(SweepConfig::parse(text).is_err(), "{text:?}");
        }
    }

    #[test]
    fn reports_line_numbers() {
        match SweepConfig::parse("variants = all\n\nm_max = x\n") {
            Err(BenchError::Config { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn filters_small_subset() {
        let cfg = SweepConfig::parse("variants = gl/13d\nn_max = 4").unwrap();
        assert_eq!(cfg.select_problems().unwrap().len(), 51);
        let cfg = SweepConfig::parse("variants = gl/13d\ntags = convex, uni-modal").unwrap();
        assert!(cfg
            .select_problems()
            .unwrap()
            .iter()
            .all(|p| p.convex && !p.multimodal));
        let cfg = SweepConfig::parse("variants = gl/13d\nproblems = nothing").unwrap();
        assert!(cfg.select_problems().is_err());
    }
}
