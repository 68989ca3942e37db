use std::fs;
use std::path::Path;

use super::{DataPoint, DatasetError, Status};

pub const REVIEW_HEADER: &str =
    "noun\tnoun_template\tnoun_lookup_form\troot\tdenominal\tdenominal_template\troot_verbs\tstatus";

fn io_err(path: &Path, e: std::io::Error) -> DatasetError {
    DatasetError::Io {
        path: path.display().to_string(),
        source: e,
    }
}

fn row(p: &DataPoint, status: Status) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        p.noun,
        p.noun_template,
        p.noun_lookup_form,
        p.root,
        p.denominal,
        p.denominal_template,
        p.root_verbs.join(","),
        status
    )
}

/// Serializes points with their status as written.
pub fn write_dataset(points: &[DataPoint]) -> String {
    let mut out = String::from(REVIEW_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&row(p, p.status));
    }
    out
}

/// Contents of the review file a curator edits. Points not yet reviewed are
/// written as `kept`.
pub fn review_text(points: &[DataPoint]) -> Result<String, DatasetError> {
    if points.is_empty() {
        return Err(DatasetError::NothingToExport);
    }
    let mut out = String::from(REVIEW_HEADER);
    out.push('\n');
    for p in points {
        let status = if p.status == Status::Auto {
            Status::Kept
        } else {
            p.status
        };
        out.push_str(&row(p, status));
    }
    Ok(out)
}

pub fn export_for_review(points: &[DataPoint], path: impl AsRef<Path>) -> Result<(), DatasetError> {
    let text = review_text(points)?;
    fs::write(path.as_ref(), text).map_err(|e| io_err(path.as_ref(), e))
}

fn parse(text: &str, reviewed_only: bool) -> Result<Vec<DataPoint>, DatasetError> {
    let bad = |line: usize, message: String| DatasetError::MalformedReviewFile { line, message };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end_matches('\r') == REVIEW_HEADER => {}
        _ => return Err(bad(1, "missing header".into())),
    }
    let mut out = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.is_empty() {
            continue;
        }
        let cols: Vec<&str> = raw.split('\t').collect();
        if cols.len() != 8 {
            return Err(bad(
                line,
                format!("expected 8 columns, found {}", cols.len()),
            ));
        }
        let status: Status = cols[7].trim().parse().map_err(|e| bad(line, e))?;
        if reviewed_only && status == Status::Auto {
            return Err(bad(line, "status must be kept or discarded".into()));
        }
        let p = DataPoint {
            noun: cols[0].into(),
            noun_template: cols[1].into(),
            noun_lookup_form: cols[2].into(),
            root: cols[3].into(),
            denominal: cols[4].into(),
            denominal_template: cols[5].into(),
            root_verbs: if cols[6].is_empty() {
                Vec::new()
            } else {
                cols[6].split(',').map(String::from).collect()
            },
            status,
        };
        p.check().map_err(|e| bad(line, e.to_string()))?;
        out.push(p);
    }
    Ok(out)
}

/// Reads a curated review file; every status must be `kept` or `discarded`.
pub fn import_review(path: impl AsRef<Path>) -> Result<Vec<DataPoint>, DatasetError> {
    let text = fs::read_to_string(path.as_ref()).map_err(|e| io_err(path.as_ref(), e))?;
    parse(&text, true)
}

/// Reads a dataset file in the review format, accepting any status.
pub fn read_dataset(text: &str) -> Result<Vec<DataPoint>, DatasetError> {
    parse(text, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasetgen::SurfacePair;

    fn sample() -> Vec<DataPoint> {
        vec![
            DataPoint::new(
                SurfacePair::new("maxfev", "maCCeC"),
                "xfv".into(),
                SurfacePair::new("lemaxfev", "lemaCCeC"),
                vec!["lexafev".into(), "lehaxfiv".into()],
                "maxfev".into(),
                Status::Auto,
            )
            .unwrap(),
            DataPoint::new(
                SurfacePair::new("taklit", "taCCiC"),
                "klt".into(),
                SurfacePair::new("letaklet", "letaCCeC"),
                vec!["liklot".into()],
                "taklitim".into(),
                Status::Auto,
            )
            .unwrap(),
        ]
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("review.tsv");
        let pts = sample();
        export_for_review(&pts, &path).unwrap();
        let back = import_review(&path).unwrap();
        let want: Vec<DataPoint> = pts
            .into_iter()
            .map(|p| DataPoint {
                status: Status::Kept,
                ..p
            })
            .collect();
        assert_eq!(back, want);
    }

    #[test]
    fn unknown_status() {
        let text = write_dataset(&sample()).replace("\tauto\n", "\tmaybe\n");
        assert!(matches!(
            read_dataset(&text),
            Err(DatasetError::MalformedReviewFile { line: 2, .. })
        ));
    }

    #[test]
    fn auto_rejected_on_import() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.tsv");
        fs::write(&path, write_dataset(&sample())).unwrap();
        assert!(matches!(
            import_review(&path),
            Err(DatasetError::MalformedReviewFile { line: 2, .. })
        ));
        assert_eq!(read_dataset(&write_dataset(&sample())).unwrap(), sample());
    }

    #[test]
    fn header_required() {
        assert!(read_dataset("noun\tx\n").is_err());
        assert!(export_for_review(&[], "/nonexistent/x").is_err());
    }
}
