//! Plain-text array format: one row per line, whitespace-separated
//! integers, `#` starts a comment line. Symbols may be 0-based or 1-based;
//! the loader detects which and normalizes to `1..=s`.

use super::{verify, OrthogonalArray};
use crate::error::{Error, Result};

/// Parses rectangular integer rows, skipping blank and `#` lines.
pub fn parse_rows(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("`{tok}` is not a nonnegative integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("ragged row: {} entries, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no rows".into(),
        });
    }
    Ok(rows)
}

/// Loads an array with `s` levels and checks it at strength `t`. With
/// `transpose`, each text line is a column of the array.
pub fn load(text: &str, s: u32, t: u32, transpose: bool) -> Result<OrthogonalArray> {
    let arr = parse(text, s, t, transpose)?;
    let report = verify(&arr);
    if !report.is_ok() {
        return Err(Error::Verification(report.to_string()));
    }
    Ok(arr)
}

/// Like [`load`] without the strength check.
pub fn parse(text: &str, s: u32, t: u32, transpose: bool) -> Result<OrthogonalArray> {
    let mut rows = parse_rows(text)?;
    let min = rows.iter().flatten().copied().min().unwrap_or(1);
    let max = rows.iter().flatten().copied().max().unwrap_or(1);
    if min == 0 {
        if max >= s {
            return Err(Error::MalformedArray(format!(
                "0-based symbols must lie in 0..{s}, found {max}"
            )));
        }
        rows.iter_mut().flatten().for_each(|x| *x += 1);
    } else if max > s {
        return Err(Error::MalformedArray(format!(
            "symbols must lie in 1..={s}, found {max}"
        )));
    }
    let arr = OrthogonalArray::from_rows(rows, s, t)?;
    Ok(if transpose { arr.transpose() } else { arr })
}

/// Renders 1-based rows with a parameter header; `load` reads it back.
pub fn render(arr: &OrthogonalArray) -> String {
    let mut out = format!(
        "# OA({},{},{},{})\n",
        arr.runs(),
        arr.factors(),
        arr.levels(),
        arr.strength()
    );
    for row in arr.rows() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oa::figure1;

    #[test]
    fn ragged_row_is_parse_error() {
        let err = parse_rows("1 2 3\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let rows = parse_rows("# header\n\n1 2\n  # c\n2 1\n").unwrap();
        assert_eq!(rows, vec![vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn garbage_token() {
        assert!(parse_rows("1 x\n").is_err());
    }

    #[test]
    fn zero_based_symbols_are_shifted() {
        let arr = load("0 0\n0 1\n1 0\n1 1\n", 2, 2, false).unwrap();
        assert_eq!(arr.row(3), &[2, 2]);
    }

    #[test]
    fn out_of_alphabet() {
        assert!(load("1 5\n", 4, 1, false).is_err());
        assert!(load("0 4\n", 4, 1, false).is_err());
    }

    #[test]
    fn unbalanced_file_fails_verification() {
        let err = load("1 1\n1 2\n2 1\n1 1\n", 2, 2, false).unwrap_err();
        assert!(matches!(err, Error::Verification(_)));
    }

    #[test]
    fn render_round_trips() {
        let arr = figure1();
        let back = load(&render(&arr), 4, 2, false).unwrap();
        assert_eq!(back, arr);
    }

    #[test]
    fn figure1_second_row() {
        assert_eq!(figure1().row(1), &[1, 2, 2, 2, 2]);
    }
}
