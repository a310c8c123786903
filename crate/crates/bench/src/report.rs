//! CSV, JSON and trajectory writers.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::config::Format;
use crate::error::BenchError;
use crate::suite::{EpochRecord, SuiteReport};

pub const CSV_HEADER: [&str; 6] =
    ["epoch", "seed", "best_fitness", "best_point", "iterations_to_best", "wall_ms"];
pub const TRAJECTORY_HEADER: [&str; 5] = ["epoch", "iteration", "unit", "point", "fitness"];

/// Coordinates joined with `;`.
pub fn format_point(point: &[f64]) -> String {
    point.iter().map(f64::to_string).collect::<Vec<_>>().join(";")
}

pub fn parse_point(text: &str) -> Result<Vec<f64>, std::num::ParseFloatError> {
    text.split(';').map(str::parse).collect()
}

pub fn write_csv<W: Write>(records: &[EpochRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.epoch.to_string(),
            r.seed.to_string(),
            r.best_fitness.to_string(),
            format_point(&r.best_point),
            r.iterations_to_best.to_string(),
            r.wall_ms.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Report rows plus the summary block and the resolved configuration.
pub fn write_json<W: Write>(report: &SuiteReport, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)
}

pub fn read_json<R: Read>(input: R) -> serde_json::Result<SuiteReport> {
    serde_json::from_reader(input)
}

/// One row per accepted move of every epoch that recorded a trajectory.
pub fn write_trajectory<W: Write>(records: &[EpochRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRAJECTORY_HEADER)?;
    for r in records {
        for p in r.trajectory.iter().flatten() {
            w.write_record([
                r.epoch.to_string(),
                p.iteration.to_string(),
                p.unit.to_string(),
                format_point(&p.position),
                p.fitness.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `runs/f1.csv` → `runs/f1.trajectory.csv`.
pub fn trajectory_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.trajectory.csv"))
}

fn create(path: &Path) -> Result<BufWriter<File>, BenchError> {
    File::create(path).map(BufWriter::new).map_err(|source| BenchError::Io { path: path.to_owned(), source })
}

fn csv_error(path: &Path, e: csv::Error) -> BenchError {
    BenchError::Csv { path: path.to_owned(), source: e }
}

/// Writes `report` in `format` to `destination`, or to stdout when it is `None`. With
/// trajectory recording on, accepted moves go to [`trajectory_path`] next to it.
pub fn emit_report(
    report: &SuiteReport,
    format: Format,
    destination: Option<&Path>,
) -> Result<(), BenchError> {
    let stdout = Path::new("<stdout>");
    let path = destination.unwrap_or(stdout);
    let out: Box<dyn Write> = match destination {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Csv => write_csv(&report.records, out).map_err(|e| csv_error(path, e))?,
        Format::Json => {
            write_json(report, out).map_err(|source| BenchError::Io { path: path.to_owned(), source })?
        }
    }
    if let (true, Some(dest)) = (report.config.trajectory, destination) {
        let tpath = trajectory_path(dest);
        write_trajectory(&report.records, create(&tpath)?).map_err(|e| csv_error(&tpath, e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip_through_text() {
        let p = vec![-2.506_725_782_456_223, 0.1, 1e-300];
        assert_eq!(parse_point(&format_point(&p)).unwrap(), p);
        assert_eq!(format_point(&[1.5, -2.0]), "1.5;-2");
    }

    #[test]
    fn trajectory_file_sits_next_to_the_report() {
        assert_eq!(trajectory_path(Path::new("runs/f1.csv")), PathBuf::from("runs/f1.trajectory.csv"));
        assert_eq!(trajectory_path(Path::new("out")), PathBuf::from("out.trajectory.csv"));
    }

    #[test]
    fn csv_header_and_row() {
        let rec = EpochRecord {
            epoch: 0,
            seed: 9,
            best_fitness: 1.25,
            best_point: vec![0.5, -1.0],
            iterations_to_best: 3,
            wall_ms: 0.5,
            trajectory: None,
        };
        let mut buf = Vec::new();
        write_csv(&[rec], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "epoch,seed,best_fitness,best_point,iterations_to_best,wall_ms\n0,9,1.25,0.5;-1,3,0.5\n"
        );
    }
}
