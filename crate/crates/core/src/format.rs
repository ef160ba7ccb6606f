//! Text formats: instance files and rhythm box notation.
//!
//! An instance file has one line starting with `S` and one starting with `T`,
//! each followed by whitespace-separated integers. Blank lines and lines
//! starting with `#` are skipped; CRLF line endings are accepted.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::solver::solve;

pub fn parse_instance(text: &str) -> Result<Instance> {
    let (s, t) = parse_points(text)?;
    Instance::new(s, t)
}

/// The `S` and `T` coordinates in file order, without building an instance.
pub fn parse_points(text: &str) -> Result<(Vec<i64>, Vec<i64>)> {
    let mut s: Option<Vec<i64>> = None;
    let mut t: Option<Vec<i64>> = None;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let slot = match tokens.next() {
            Some("S") => &mut s,
            Some("T") => &mut t,
            Some(other) => {
                return Err(Error::Syntax {
                    line,
                    message: format!("expected 'S' or 'T', found {other:?}"),
                })
            }
            None => unreachable!("non-empty line has a token"),
        };
        if slot.is_some() {
            return Err(Error::Syntax {
                line,
                message: "duplicate set line".into(),
            });
        }
        let values = tokens
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| Error::Syntax {
                    line,
                    message: format!("bad integer {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        *slot = Some(values);
    }

    let missing = |name: &str| Error::Syntax {
        line: last_line,
        message: format!("missing {name} line"),
    };
    let s = s.ok_or_else(|| missing("S"))?;
    let t = t.ok_or_else(|| missing("T"))?;
    Ok((s, t))
}

/// Onset positions of a pattern such as `"x..x.x.."`.
pub fn parse_box_notation(pattern: &str) -> Result<Vec<i64>> {
    pattern
        .chars()
        .enumerate()
        .filter_map(|(i, c)| match c {
            'x' | 'X' => Some(Ok(i as i64)),
            '.' => None,
            symbol => Some(Err(Error::BadSymbol {
                symbol,
                position: i,
            })),
        })
        .collect()
}

/// Directed swap distance from rhythm `a` to rhythm `b`: the optimal
/// assignment cost with `a`'s onsets as sources and `b`'s as targets.
///
/// `swap` reverses the direction explicitly.
pub fn rhythm_distance(a: &str, b: &str, swap: bool) -> Result<i64> {
    let (mut s, mut t) = (parse_box_notation(a)?, parse_box_notation(b)?);
    if swap {
        std::mem::swap(&mut s, &mut t);
    }
    let inst = Instance::new(s, t)?;
    Ok(solve(&inst)?.total_cost)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sample() {
        let inst = parse_instance("S 0 3 4 6 13 14 15 16\nT 1 2 8 10 11 12").unwrap();
        assert_eq!(inst.s(), &[0, 3, 4, 6, 13, 14, 15, 16]);
        assert_eq!(inst.t(), &[1, 2, 8, 10, 11, 12]);
    }

    #[test]
    fn skips_comments_and_blanks() {
        let inst = parse_instance("# comment\n\nS 5\r\n  \nT 3\r\n").unwrap();
        assert_eq!(inst.s(), &[5]);
        assert_eq!(inst.t(), &[3]);
    }

    #[test]
    fn order_of_lines_is_free() {
        let inst = parse_instance("T 3\nS 9 -1").unwrap();
        assert_eq!(inst.s(), &[-1, 9]);
    }

    #[test]
    fn cardinality_error_passes_through() {
        let err = parse_instance("S 1\nT 1 2").unwrap_err();
        assert!(matches!(err, Error::InfeasibleCardinality { .. }));
        assert!(err.to_string().contains("swap"));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        assert_eq!(
            parse_instance("S 1\n# x\nT 1 z"),
            Err(Error::Syntax {
                line: 3,
                message: "bad integer \"z\"".into()
            })
        );
        assert!(matches!(
            parse_instance("S 1\nS 2\nT 1"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("Q 1"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(parse_instance("S 1 2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_instance(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn empty_sets() {
        assert_eq!(parse_instance("S\nT 1"), Err(Error::EmptySource));
        assert_eq!(parse_instance("S 1\nT"), Err(Error::EmptyTarget));
    }

    #[test]
    fn round_trip() {
        let inst = parse_instance("T 8 1\nS 4 0 4").unwrap();
        assert_eq!(inst.to_string(), "S 0 4 4\nT 1 8\n");
        assert_eq!(parse_instance(&inst.to_string()).unwrap(), inst);
    }

    #[test]
    fn box_notation() {
        assert_eq!(parse_box_notation("x..x").unwrap(), vec![0, 3]);
        assert_eq!(parse_box_notation("x.x.x").unwrap(), vec![0, 2, 4]);
        assert_eq!(parse_box_notation("X.x").unwrap(), vec![0, 2]);
        assert_eq!(parse_box_notation("....").unwrap(), Vec::<i64>::new());
        assert_eq!(
            parse_box_notation("x.o"),
            Err(Error::BadSymbol {
                symbol: 'o',
                position: 2
            })
        );
    }

    #[test]
    fn rhythm_examples() {
        assert_eq!(rhythm_distance("x.x.", "x.x.", false).unwrap(), 0);
        assert_eq!(rhythm_distance("x.x.", "xx..", false).unwrap(), 1);
        assert_eq!(rhythm_distance("xxx.", "x...", false).unwrap(), 3);
        assert_eq!(
            rhythm_distance("....", "x...", false),
            Err(Error::EmptySource)
        );
    }

    #[test]
    fn rhythm_direction() {
        let err = rhythm_distance("x...", "xxx.", false).unwrap_err();
        assert!(matches!(err, Error::InfeasibleCardinality { .. }));
        assert_eq!(rhythm_distance("x...", "xxx.", true).unwrap(), 3);
    }
}
