//! Signature list files: one signature per line, sorted, `#` comments.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::isosig::IsoSig;

/// Renders a signature list with one `# ` comment line per header entry.
pub fn format_signatures<'a, I>(header: &[String], sigs: I) -> String
where
    I: IntoIterator<Item = &'a IsoSig>,
{
    let mut out = String::new();
    for line in header {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    let mut sorted: Vec<&IsoSig> = sigs.into_iter().collect();
    sorted.sort_unstable();
    for sig in sorted {
        out.push_str(sig.as_str());
        out.push('\n');
    }
    out
}

pub fn write_signatures<'a, I>(path: &Path, header: &[String], sigs: I) -> io::Result<()>
where
    I: IntoIterator<Item = &'a IsoSig>,
{
    let mut f = io::BufWriter::new(fs::File::create(path)?);
    f.write_all(format_signatures(header, sigs).as_bytes())?;
    f.flush()
}

/// Parses a signature list, skipping blank lines and comments.
pub fn parse_signatures(text: &str) -> Result<BTreeSet<IsoSig>> {
    let mut out = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let sig: IsoSig = line.parse().map_err(|e: Error| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.insert(sig);
    }
    Ok(out)
}

pub fn read_signatures(path: &Path) -> Result<BTreeSet<IsoSig>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })?;
    parse_signatures(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::Triangulation;

    #[test]
    fn round_trip_with_header() {
        let sigs: Vec<IsoSig> = [1, 2]
            .iter()
            .map(|&n| Triangulation::canonical_sphere(n).unwrap().isosig())
            .collect();
        let text = format_signatures(&["count 2".to_string()], sigs.iter().rev());
        assert!(text.starts_with("# count 2\n"));
        let back = parse_signatures(&text).unwrap();
        assert_eq!(back.into_iter().collect::<Vec<_>>(), {
            let mut s = sigs.clone();
            s.sort();
            s
        });
    }

    #[test]
    fn bad_line_reports_position() {
        let err = parse_signatures("# x\n\n!!\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
