//! CSV rows of path statistics.

use std::io::Write;

use super::path::DecoratedLabelledPath;
use crate::error::{Error, Result};

fn join(v: impl IntoIterator<Item = impl ToString>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub const CSV_HEADER: [&str; 6] = ["area_word", "dr", "w", "dinv", "area", "dcomp"];

/// Writes one row per path. Unlabelled paths get empty `w` and `dinv`.
pub fn write_csv<W: Write, I>(out: W, paths: I) -> Result<usize>
where
    I: IntoIterator<Item = DecoratedLabelledPath>,
{
    let mut wtr = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.into());
    wtr.write_record(CSV_HEADER).map_err(io)?;
    let mut rows = 0;
    for p in paths {
        let (w, dinv) = match &p.labels {
            Some(w) => (join(w), p.dinv()?.to_string()),
            None => (String::new(), String::new()),
        };
        wtr.write_record([
            join(p.path.area_word()),
            join(&p.dr),
            w,
            dinv,
            p.area().to_string(),
            join(p.dcomp().parts()),
        ])
        .map_err(io)?;
        rows += 1;
    }
    wtr.flush()?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate;

    #[test]
    fn rows_and_header() {
        let mut buf = Vec::new();
        let n = write_csv(&mut buf, enumerate(2, 0, 2, None)).unwrap();
        assert_eq!(n, 5);
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("area_word,dr,w,dinv,area,dcomp"));
        assert_eq!(lines.next(), Some("0 0,,1 1,0,0,1 1"));
        assert_eq!(text.lines().count(), 6);
    }
}
