//! CSV files: `results.csv`, `oc.csv` and `summary.csv`.
//!
//! Reals are written in scientific notation with 17 significant digits so
//! that they read back bit-exactly. Lines end in `\n` and columns are in a
//! fixed order, so two identical sweeps produce identical bytes.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{io_err, BenchError, Result};
use crate::report::{OcPoint, SummaryRow};
use crate::sweep::SweepRecord;
use crate::variant::Variant;

pub const RESULTS_HEADER: [&str; 9] = ["problem", "n", "variant", "rho", "solved", "m", "pe", "k", "seconds"];
pub const OC_HEADER: [&str; 3] = ["variant", "budget", "proportion"];
pub const SUMMARY_HEADER: [&str; 6] = ["variant", "subset", "runs", "failures", "mean_m", "median_m"];

/// Exact textual form of a real.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

pub fn write_results<W: Write>(w: W, records: &[SweepRecord]) -> Result<()> {
    let mut out = writer(w);
    out.write_record(RESULTS_HEADER)?;
    for r in records {
        out.write_record([
            r.problem.clone(),
            r.n.to_string(),
            r.variant.to_string(),
            fmt_real(r.rho),
            r.solved.to_string(),
            r.m.to_string(),
            fmt_real(r.pe),
            r.k.to_string(),
            fmt_real(r.seconds),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn field(rec: &csv::StringRecord, i: usize, row: usize) -> Result<&str> {
    rec.get(i).ok_or_else(|| BenchError::Record {
        row,
        msg: format!("missing column {}", i + 1),
    })
}

fn num<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, row: usize, what: &str) -> Result<T> {
    let s = field(rec, i, row)?;
    s.trim().parse().map_err(|_| BenchError::Record {
        row,
        msg: format!("bad {what} `{s}`"),
    })
}

fn check_header(rdr: &mut csv::Reader<impl Read>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers()?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(BenchError::Record {
            row: 1,
            msg: format!("expected header `{}`", expected.join(",")),
        });
    }
    Ok(())
}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r)
}

/// Parses a `results.csv`. Row numbers in errors count the header as row 1.
pub fn read_results<R: Read>(r: R) -> Result<Vec<SweepRecord>> {
    let mut rdr = reader(r);
    check_header(&mut rdr, &RESULTS_HEADER)?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec?;
        if rec.len() != RESULTS_HEADER.len() {
            return Err(BenchError::Record {
                row,
                msg: format!("expected {} columns, found {}", RESULTS_HEADER.len(), rec.len()),
            });
        }
        let problem = field(&rec, 0, row)?.to_string();
        if problem.is_empty() {
            return Err(BenchError::Record { row, msg: "empty problem name".into() });
        }
        let variant: Variant = field(&rec, 2, row)?.parse().map_err(|e: BenchError| BenchError::Record {
            row,
            msg: e.to_string(),
        })?;
        out.push(SweepRecord {
            problem,
            n: num(&rec, 1, row, "dimension")?,
            variant,
            rho: num(&rec, 3, row, "rho")?,
            solved: num(&rec, 4, row, "solved flag")?,
            m: num(&rec, 5, row, "evaluation count")?,
            pe: num(&rec, 6, row, "percent error")?,
            k: num(&rec, 7, row, "iteration count")?,
            seconds: num(&rec, 8, row, "seconds")?,
        });
    }
    Ok(out)
}

pub fn write_oc<W: Write>(w: W, points: &[OcPoint]) -> Result<()> {
    let mut out = writer(w);
    out.write_record(OC_HEADER)?;
    for p in points {
        out.write_record([p.variant.to_string(), fmt_real(p.budget), fmt_real(p.proportion)])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_oc<R: Read>(r: R) -> Result<Vec<OcPoint>> {
    let mut rdr = reader(r);
    check_header(&mut rdr, &OC_HEADER)?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec?;
        let variant = field(&rec, 0, row)?.parse().map_err(|e: BenchError| BenchError::Record {
            row,
            msg: e.to_string(),
        })?;
        out.push(OcPoint {
            variant,
            budget: num(&rec, 1, row, "budget")?,
            proportion: num(&rec, 2, row, "proportion")?,
        });
    }
    Ok(out)
}

/// Writes the summary table, preceded by a comment line stating the
/// evaluation count charged to unsolved runs.
pub fn write_summary<W: Write>(mut w: W, rows: &[SummaryRow], budget: usize) -> Result<()> {
    writeln!(w, "# unsolved runs counted as {budget} evaluations")
        .map_err(|e| BenchError::Csv(csv::Error::from(e)))?;
    let mut out = writer(w);
    out.write_record(SUMMARY_HEADER)?;
    for r in rows {
        out.write_record([
            r.variant.to_string(),
            r.subset.to_string(),
            r.runs.to_string(),
            r.failures.to_string(),
            fmt_real(r.mean_m),
            fmt_real(r.median_m),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn create(path: &Path) -> Result<std::io::BufWriter<std::fs::File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let f = std::fs::File::create(path).map_err(io_err(path))?;
    Ok(std::io::BufWriter::new(f))
}

fn open(path: &Path) -> Result<std::fs::File> {
    std::fs::File::open(path).map_err(io_err(path))
}

pub fn save_results(path: &Path, records: &[SweepRecord]) -> Result<()> {
    write_results(create(path)?, records)
}

pub fn load_results(path: &Path) -> Result<Vec<SweepRecord>> {
    read_results(open(path)?)
}

pub fn save_oc(path: &Path, points: &[OcPoint]) -> Result<()> {
    write_oc(create(path)?, points)
}

pub fn save_summary(path: &Path, rows: &[SummaryRow], budget: usize) -> Result<()> {
    write_summary(create(path)?, rows, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{budget_grid, operational_characteristics, summarize, catalog_tags};

    fn sample() -> Vec<SweepRecord> {
        vec![
            SweepRecord {
                problem: "Branin".into(),
                n: 2,
                variant: "gl/13d".parse().unwrap(),
                rho: 0.025,
                solved: true,
                m: 195,
                pe: 0.1 / 3.0,
                k: 14,
                seconds: 0.0,
            },
            SweepRecord {
                problem: "Broken, with comma".into(),
                n: 1,
                variant: "lipschitz/13a".parse().unwrap(),
                rho: 0.0,
                solved: false,
                m: 0,
                pe: f64::NAN,
                k: 0,
                seconds: 1.5,
            },
        ]
    }

    #[test]
    fn results_round_trip() {
        let mut buf = Vec::new();
        write_results(&mut buf, &sample()).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("problem,n,variant,rho,solved,m,pe,k,seconds\n"));
        assert!(!text.contains('\r'));
        let back = read_results(&buf[..]).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0], sample()[0]);
        assert!(back[1].pe.is_nan());
        assert_eq!(back[1].problem, "Broken, with comma");
    }

    #[test]
    fn bad_rows_report_line() {
        let text = "problem,n,variant,rho,solved,m,pe,k,seconds\nSphere,2,gl/13d,0,true,x,0,1,0\n";
        match read_results(text.as_bytes()) {
            Err(BenchError::Record { row, .. }) => assert_eq!(row, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(read_results("a,b\n".as_bytes()).is_err());
    }

    #[test]
    fn oc_round_trip() {
        let pts = operational_characteristics(&sample(), &budget_grid()).unwrap();
        let mut buf = Vec::new();
        write_oc(&mut buf, &pts).unwrap();
        assert_eq!(read_oc(&buf[..]).unwrap(), pts);
    }

    #[test]
    fn summary_has_budget_comment() {
        let rows = summarize(&sample(), 1000, catalog_tags);
        let mut buf = Vec::new();
        write_summary(&mut buf, &rows, 1000).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# unsolved runs counted as 1000 evaluations\nvariant,subset,"));
    }
}
