//! Textual formats for sequences and partitions.
//!
//! A sequence is a whitespace-separated list of carrier names. A partition
//! is a list of brace-delimited blocks, e.g. `{x m0 m2} {y m1} {z} {m3}`;
//! printed partitions order blocks by least label and list each block in
//! ascending label order.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use thiserror::Error;

use crate::counting::{Carrier, CountingError, FinSeq, Label, SetPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("syntax error at byte {offset}: {reason}")]
    Syntax { offset: usize, reason: String },
    #[error(transparent)]
    Partition(#[from] CountingError),
    #[error("`{0}` is not a natural number")]
    NotANatural(String),
    #[error("name `{0}` is used twice")]
    DuplicateName(String),
}

fn resolve(carrier: &Carrier, name: &str) -> Result<Label, TextError> {
    carrier
        .label_of(name)
        .ok_or_else(|| TextError::UnknownLabel(name.to_string()))
}

pub fn parse_sequence(carrier: &Carrier, text: &str) -> Result<FinSeq, TextError> {
    text.split_whitespace()
        .map(|tok| resolve(carrier, tok))
        .collect::<Result<Vec<_>, _>>()
        .map(FinSeq)
}

pub fn format_sequence(carrier: &Carrier, s: &FinSeq) -> String {
    s.entries()
        .iter()
        .map(|&x| carrier.name(x))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses `{a b} {c} ..`; the blocks must partition the whole carrier.
pub fn parse_partition(carrier: &Carrier, text: &str) -> Result<SetPartition, TextError> {
    let mut blocks: Vec<Vec<Label>> = Vec::new();
    let mut open: Option<Vec<Label>> = None;
    let mut token_start: Option<usize> = None;

    let flush = |start: &mut Option<usize>,
                     end: usize,
                     open: &mut Option<Vec<Label>>|
     -> Result<(), TextError> {
        if let Some(s) = start.take() {
            let name = &text[s..end];
            match open {
                Some(block) => block.push(resolve(carrier, name)?),
                None => {
                    return Err(TextError::Syntax {
                        offset: s,
                        reason: format!("label `{name}` outside braces"),
                    })
                }
            }
        }
        Ok(())
    };

    for (i, c) in text.char_indices() {
        match c {
            '{' => {
                flush(&mut token_start, i, &mut open)?;
                if open.is_some() {
                    return Err(TextError::Syntax {
                        offset: i,
                        reason: "nested `{`".into(),
                    });
                }
                open = Some(Vec::new());
            }
            '}' => {
                flush(&mut token_start, i, &mut open)?;
                match open.take() {
                    Some(block) if block.is_empty() => {
                        return Err(TextError::Syntax {
                            offset: i,
                            reason: "empty block".into(),
                        })
                    }
                    Some(block) => blocks.push(block),
                    None => {
                        return Err(TextError::Syntax {
                            offset: i,
                            reason: "unbalanced `}`".into(),
                        })
                    }
                }
            }
            c if c.is_whitespace() => flush(&mut token_start, i, &mut open)?,
            _ => {
                if token_start.is_none() {
                    token_start = Some(i);
                }
            }
        }
    }
    flush(&mut token_start, text.len(), &mut open)?;
    if open.is_some() {
        return Err(TextError::Syntax {
            offset: text.len(),
            reason: "unclosed `{`".into(),
        });
    }
    Ok(SetPartition::from_blocks(carrier.size(), &blocks)?)
}

pub fn format_partition(carrier: &Carrier, p: &SetPartition) -> String {
    p.blocks()
        .iter()
        .map(|b| {
            let names: Vec<String> = b.iter().map(|&x| carrier.name(x)).collect();
            format!("{{{}}}", names.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_names(names: &[String]) -> Result<(), TextError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(TextError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// Base names followed by markers `m0 .. m{markers - 1}`.
pub fn marker_carrier(base_names: &[String], markers: usize) -> Result<Carrier, TextError> {
    let mut names = base_names.to_vec();
    names.extend((0..markers).map(|j| format!("m{j}")));
    check_names(&names)?;
    Ok(Carrier::named(names)?)
}

/// Name of grid cell `a^row_col`: `a{row}{col}` while both fit in one
/// digit, `a{row}_{col}` otherwise.
pub fn grid_cell_name(side: usize, row: usize, col: usize) -> String {
    if side <= 10 {
        format!("a{row}{col}")
    } else {
        format!("a{row}_{col}")
    }
}

/// Row-major grid cells for sequences of length `<= n`, followed by the
/// plain names.
pub fn grid_carrier(n: usize, plain_names: &[String]) -> Result<Carrier, TextError> {
    let side = n + 2;
    let mut names: Vec<String> = (0..side)
        .flat_map(|j| (0..side).map(move |i| grid_cell_name(side, j, i)))
        .collect();
    names.extend(plain_names.iter().cloned());
    check_names(&names)?;
    Ok(Carrier::named(names)?)
}

pub fn parse_nat(text: &str) -> Result<BigUint, TextError> {
    let t = text.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(TextError::NotANatural(t.to_string()));
    }
    t.parse().map_err(|_| TextError::NotANatural(t.to_string()))
}

pub fn parse_nat_list(text: &str) -> Result<Vec<BigUint>, TextError> {
    text.split_whitespace().map(parse_nat).collect()
}

pub fn format_nat_list(values: &[BigUint]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn partition_round_trip() {
        let c = marker_carrier(&names("x y z"), 4).unwrap();
        let p = parse_partition(&c, "{m2 x m0}  {m1 y}{z} {m3}").unwrap();
        assert_eq!(format_partition(&c, &p), "{x m0 m2} {y m1} {z} {m3}");
    }

    #[test]
    fn partition_errors() {
        let c = marker_carrier(&names("x y"), 1).unwrap();
        for bad in [
            "{x y} {m0",
            "{x {y}} {m0}",
            "{x y}} {m0}",
            "x {y m0}",
            "{x y} {}",
            "{x y} {q m0}",
            "{x y} {y m0}",
            "{x y}",
        ] {
            assert!(parse_partition(&c, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn sequence_round_trip() {
        let c = marker_carrier(&names("x y z"), 0).unwrap();
        let s = parse_sequence(&c, " x y\tx\n").unwrap();
        assert_eq!(s, FinSeq(vec![0, 1, 0]));
        assert_eq!(format_sequence(&c, &s), "x y x");
        assert_eq!(parse_sequence(&c, "w"), Err(TextError::UnknownLabel("w".into())));
        assert_eq!(parse_sequence(&c, "").unwrap(), FinSeq::empty());
    }

    #[test]
    fn carriers() {
        let g = grid_carrier(1, &names("x")).unwrap();
        assert_eq!(g.size(), 10);
        assert_eq!(g.name(0), "a00");
        assert_eq!(g.name(5), "a12");
        assert_eq!(g.label_of("x"), Some(9));
        assert_eq!(grid_cell_name(11, 10, 3), "a10_3");
        assert!(marker_carrier(&names("m0"), 1).is_err());
        assert!(grid_carrier(0, &names("a00")).is_err());
    }

    #[test]
    fn nats() {
        assert_eq!(parse_nat(" 42 ").unwrap(), BigUint::from(42u32));
        assert!(parse_nat("-1").is_err());
        assert!(parse_nat("+1").is_err());
        assert!(parse_nat("").is_err());
        let v = parse_nat_list("1 2  3").unwrap();
        assert_eq!(format_nat_list(&v), "1 2 3");
    }
}
