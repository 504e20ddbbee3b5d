//! Algorithm variants: one selection scheme paired with one aggregation.

use std::fmt;
use std::str::FromStr;

use halrect::{Aggregation, SelectionScheme, SolverConfig};

use crate::error::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variant {
    pub selection: SelectionScheme,
    pub aggregation: Aggregation,
}

impl Variant {
    pub fn new(selection: SelectionScheme, aggregation: Aggregation) -> Self {
        Self {
            selection,
            aggregation,
        }
    }

    /// All twelve combinations, selection-major.
    pub fn all() -> Vec<Variant> {
        SelectionScheme::ALL
            .iter()
            .flat_map(|&s| Aggregation::ALL.iter().map(move |&a| Variant::new(s, a)))
            .collect()
    }

    pub fn config(&self) -> SolverConfig {
        SolverConfig::new(self.selection, self.aggregation)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.selection, self.aggregation)
    }
}

impl FromStr for Variant {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BenchError::Variant(s.to_string());
        let (sel, agg) = s.trim().split_once('/').ok_or_else(bad)?;
        Ok(Variant {
            selection: sel.parse().map_err(|_| bad())?,
            aggregation: agg.parse().map_err(|_| bad())?,
        })
    }
}

/// Parses a comma-separated list; `all` expands to every variant.
pub fn parse_variant_list(s: &str) -> Result<Vec<Variant>, BenchError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if item.eq_ignore_ascii_case("all") {
            out.extend(Variant::all());
        } else {
            out.push(item.parse()?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trip() {
        for v in Variant::all() {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
        assert_eq!(Variant::all().len(), 12);
        assert_eq!(
            "GL/13d".parse::<Variant>().unwrap(),
            Variant::new(SelectionScheme::ParetoGl, Aggregation::MidMinAverage)
        );
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "gl", "gl/", "/13a", "xx/13a", "gl/13e", "gl/13a/1"] {
            assert!(s.parse::<Variant>().is_err(), "{s}");
        }
    }

    #[test]
    fn list_expands_all() {
        assert_eq!(parse_variant_list("all, gl/13d").unwrap().len(), 12);
        assert_eq!(parse_variant_list("ia/13a,gl/13d").unwrap().len(), 2);
    }
}
