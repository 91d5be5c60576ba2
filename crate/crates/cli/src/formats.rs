//! Text formats: the tournament matrix file and the vertex-set list file.
//!
//! Tournament file: the first significant line is the vertex count n; the
//! next n lines are rows of '0'/'1' where row i, column j is '1' iff the
//! edge i -> j exists. Lines starting with '#' are comments. Parse errors
//! carry 1-based line and column positions.

use num::{BigInt, BigRational};
use pathfree::{Error, Tournament};

fn malformed(line: usize, col: usize, msg: impl std::fmt::Display) -> Error {
    Error::Malformed(format!("line {line}, column {col}: {msg}"))
}

/// Significant lines with their 1-based numbers; comments skipped, interior
/// blank lines rejected by the caller when unexpected.
fn significant_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty())
        .collect()
}

pub fn parse_tournament(text: &str) -> Result<Tournament, Error> {
    let lines = significant_lines(text);
    let Some(&(nline, nstr)) = lines.first() else {
        return Err(malformed(1, 1, "missing vertex count"));
    };
    let n: usize = nstr
        .trim()
        .parse()
        .map_err(|_| malformed(nline, 1, format!("bad vertex count {nstr:?}")))?;
    let rows = &lines[1..];
    if rows.len() != n {
        return Err(malformed(
            nline,
            1,
            format!("expected {n} matrix rows, found {}", rows.len()),
        ));
    }
    let mut matrix = vec![vec![false; n]; n];
    for (i, &(lineno, row)) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(malformed(
                lineno,
                row.len().min(n) + 1,
                format!("row {i} has {} characters, expected {n}", row.len()),
            ));
        }
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => matrix[i][j] = true,
                other => {
                    return Err(malformed(
                        lineno,
                        j + 1,
                        format!("expected '0' or '1', found {other:?}"),
                    ))
                }
            }
        }
    }
    for i in 0..n {
        if matrix[i][i] {
            return Err(malformed(
                rows[i].0,
                i + 1,
                "diagonal entry must be '0'",
            ));
        }
        for j in (i + 1)..n {
            if matrix[i][j] == matrix[j][i] {
                return Err(malformed(
                    rows[j].0,
                    i + 1,
                    format!("pair {{{i},{j}}} must be oriented exactly once"),
                ));
            }
        }
    }
    Tournament::from_fn(n, |u, v| matrix[u][v])
}

pub fn serialize_tournament(t: &Tournament) -> String {
    let n = t.n();
    let mut out = String::with_capacity(n * (n + 1) + 16);
    out.push_str(&n.to_string());
    out.push('\n');
    for u in 0..n {
        for v in 0..n {
            out.push(if u != v && t.has_edge(u, v) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Vertex-set list file: one set per significant line, whitespace-separated
/// indices; '#' lines are comments.
pub fn parse_sets(text: &str) -> Result<Vec<Vec<usize>>, Error> {
    let mut sets = Vec::new();
    for (lineno, line) in significant_lines(text) {
        let mut set = Vec::new();
        let mut col = 1usize;
        for tok in line.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| malformed(lineno, col, format!("bad vertex index {tok:?}")))?;
            set.push(v);
            col += tok.len() + 1;
        }
        sets.push(set);
    }
    Ok(sets)
}

/// Rationals are written "p/q" (or a bare integer); floats are rejected so
/// threshold comparisons stay exact.
pub fn parse_rational(raw: &str) -> Result<BigRational, Error> {
    let raw = raw.trim();
    if raw.contains('.') {
        return Err(Error::Malformed(format!(
            "rational {raw:?} must be written p/q, not a float"
        )));
    }
    let mut parts = raw.splitn(2, '/');
    let num = parts
        .next()
        .and_then(|p| p.trim().parse::<BigInt>().ok())
        .ok_or_else(|| Error::Malformed(format!("bad rational {raw:?}")))?;
    let den = match parts.next() {
        Some(d) => d
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Malformed(format!("bad rational {raw:?}")))?,
        None => BigInt::from(1),
    };
    if den == BigInt::from(0) {
        return Err(Error::Malformed("rational with zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pathfree::random_tournament;
    use proptest::prelude::*;

    #[test]
    fn parse_simple() {
        let text = "# triangle\n3\n010\n001\n100\n";
        let t = parse_tournament(text).unwrap();
        assert!(t.has_edge(0, 1) && t.has_edge(1, 2) && t.has_edge(2, 0));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_tournament("3\n010\n001\n").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        let err = parse_tournament("2\n0x\n10\n").unwrap_err();
        assert!(err.to_string().contains("line 2, column 2"), "{err}");
        assert!(parse_tournament("2\n01\n00\n# ok\n").is_ok());
        let err = parse_tournament("2\n01\n10\n").unwrap_err();
        assert!(err.to_string().contains("oriented exactly once"), "{err}");
        let err = parse_tournament("2\n00\n00\n").unwrap_err();
        assert!(err.to_string().contains("oriented exactly once"), "{err}");
        let err = parse_tournament("2\n11\n00\n").unwrap_err();
        assert!(err.to_string().contains("diagonal"), "{err}");
    }

    #[test]
    fn empty_tournament_round_trips() {
        let t = parse_tournament("0\n").unwrap();
        assert_eq!(t.n(), 0);
        assert_eq!(serialize_tournament(&t), "0\n");
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("1/4").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("2").unwrap(), BigRational::new(2.into(), 1.into()));
        assert!(parse_rational("0.25").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn parse_sets_from_lines() {
        let sets = parse_sets("# seq\n0 1 2\n3 4\n").unwrap();
        assert_eq!(sets, vec![vec![0, 1, 2], vec![3, 4]]);
    }

    proptest! {
        #[test]
        fn round_trip(seed in 0u64..200, n in 1usize..24) {
            let t = random_tournament(n, seed).unwrap();
            let text = serialize_tournament(&t);
            let back = parse_tournament(&text).unwrap();
            prop_assert_eq!(back, t);
        }
    }
}
