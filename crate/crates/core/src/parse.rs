//! Text formats: group specs, weight sets, sequences.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::reach::WeightSet;
use crate::sequence::Sequence;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn int<T: std::str::FromStr>(t: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    t.trim().parse().map_err(|e| perr(format!("{t:?}: {e}")))
}

/// Parses `"4,8"`, `"Z4xZ8"`, `"Z_4 + Z_8"` or `"8^2"`, normalizing to
/// invariant factors.
pub fn parse_group(text: &str) -> Result<Group> {
    let mut factors = Vec::new();
    let cleaned = text.replace('⊕', ",");
    for tok in cleaned.split([',', 'x', 'X', '+', '*']) {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(perr(format!("empty factor in {text:?}")));
        }
        let tok = tok.trim_start_matches(['Z', 'z']).trim_start_matches('_');
        let (base, pow) = match tok.split_once('^') {
            Some((b, e)) => (int::<u64>(b)?, int::<usize>(e)?),
            None => (int::<u64>(tok)?, 1),
        };
        factors.extend(std::iter::repeat(base).take(pow));
    }
    if factors.is_empty() {
        return Err(perr(format!("empty group spec {text:?}")));
    }
    Group::normalized(&factors)
}

/// `"pm1"` is `{1, exp - 1}`, `"1..l"` is `[1, l]`, anything else a list of
/// integers reduced mod `exp`.
pub fn parse_weights(text: &str, exponent: u64) -> Result<WeightSet> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("pm1") || t == "±1" {
        return Ok(WeightSet::plus_minus_one(exponent));
    }
    if let Some((a, b)) = t.split_once("..") {
        let (a, b) = (int::<i64>(a)?, int::<i64>(b)?);
        return WeightSet::reduced(&(a..=b).collect::<Vec<_>>(), exponent);
    }
    let ws = t
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(int::<i64>)
        .collect::<Result<Vec<_>>>()?;
    WeightSet::reduced(&ws, exponent)
}

/// Parses either the tuple form `"(0,0)^7 (1,0)"` or the JSON form
/// `[[[0,0],7],[[1,0],1]]`. In cyclic groups bare integers are accepted.
pub fn parse_sequence(group: &Group, text: &str) -> Result<Sequence> {
    let t = text.trim();
    if t.starts_with('[') {
        let items: Vec<(Vec<i64>, usize)> = serde_json::from_str(t)?;
        let mut seq = Sequence::empty();
        for (coords, m) in items {
            seq.push(group.index_of(&group.element(&coords)?)?, m);
        }
        return Ok(seq);
    }
    let mut seq = Sequence::empty();
    let mut rest = t;
    while !rest.is_empty() {
        let (coords, after) = if let Some(r) = rest.strip_prefix('(') {
            let end = r.find(')').ok_or_else(|| perr("unclosed '('"))?;
            let coords = r[..end]
                .split(',')
                .map(int::<i64>)
                .collect::<Result<Vec<_>>>()?;
            (coords, &r[end + 1..])
        } else {
            let end = rest
                .find(|c: char| c.is_whitespace() || c == '^')
                .unwrap_or(rest.len());
            (vec![int::<i64>(&rest[..end])?], &rest[end..])
        };
        let (mult, after) = match after.strip_prefix('^') {
            Some(r) => {
                let end = r.find(char::is_whitespace).unwrap_or(r.len());
                (int::<usize>(&r[..end])?, &r[end..])
            }
            None => (1, after),
        };
        seq.push(group.index_of(&group.element(&coords)?)?, mult);
        rest = after.trim_start();
    }
    Ok(seq)
}

/// Tuple form with `^mult` exponents, in index order.
pub fn format_sequence(group: &Group, seq: &Sequence) -> Result<String> {
    let mut parts = Vec::new();
    for (i, m) in seq.entries() {
        let e = group.element_of(i)?;
        let c = e
            .coords()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        parts.push(if m == 1 {
            format!("({c})")
        } else {
            format!("({c})^{m}")
        });
    }
    Ok(parts.join(" "))
}

/// JSON form: `[[coords, multiplicity], ...]`.
pub fn sequence_json(group: &Group, seq: &Sequence) -> Result<serde_json::Value> {
    let mut out = Vec::new();
    for (i, m) in seq.entries() {
        out.push(serde_json::json!([group.element_of(i)?.coords(), m]));
    }
    Ok(serde_json::Value::Array(out))
}

/// Comma-separated list of unsigned integers; empty text gives an empty list.
pub fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(int::<T>)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_syntaxes() {
        let g = Group::new(&[4, 8]).unwrap();
        for s in ["4,8", "Z4xZ8", "Z_4 x Z_8", "8,4", "Z4⊕Z8"] {
            assert_eq!(parse_group(s).unwrap(), g, "{s}");
        }
        assert_eq!(parse_group("8^2").unwrap(), Group::power(8, 2).unwrap());
        assert_eq!(parse_group("2,3").unwrap(), Group::new(&[6]).unwrap());
        assert!(parse_group("").is_err());
        assert!(parse_group("1").is_err());
        assert!(parse_group("a").is_err());
        assert!(parse_group("4,x").is_err());
        assert!(parse_group("4,").is_err());
    }

    #[test]
    fn weight_syntaxes() {
        assert_eq!(parse_weights("pm1", 8).unwrap().weights(), &[1, 7]);
        assert_eq!(parse_weights("1..3", 8).unwrap().weights(), &[1, 2, 3]);
        assert_eq!(parse_weights("-1,1,9", 8).unwrap().weights(), &[1, 7]);
        assert!(parse_weights("0", 8).is_err());
        assert!(parse_weights("", 8).is_err());
    }

    #[test]
    fn sequence_round_trip() {
        let g = Group::power(8, 2).unwrap();
        let text = "(0,0)^7 (1,0) (2,0) (4,0) (0,1) (0,2) (0,4)";
        let s = parse_sequence(&g, text).unwrap();
        assert_eq!(s.len(), 13);
        assert_eq!(s.multiplicity(0), 7);
        assert_eq!(
            parse_sequence(&g, &format_sequence(&g, &s).unwrap()).unwrap(),
            s
        );
        let j = sequence_json(&g, &s).unwrap().to_string();
        assert_eq!(parse_sequence(&g, &j).unwrap(), s);
        let z5 = Group::new(&[5]).unwrap();
        assert_eq!(
            parse_sequence(&z5, "1^2 3 (4)").unwrap(),
            Sequence::from_indices([1, 1, 3, 4])
        );
        assert!(parse_sequence(&g, "(1)").is_err());
        assert!(parse_sequence(&g, "(1,0").is_err());
    }
}
