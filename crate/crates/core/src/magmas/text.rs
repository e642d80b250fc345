//! Textual forms of magma specs and elements, as used on the command line.
//!
//! Specs: `z`, `n`, `absdiff`, `z5` (or `mod:5`), `z*11` (or `units:11`),
//! `z4xz4` (or `ab:4x4`), `set:4:union`. Elements: integers, `(1,2)` tuples
//! and `{1,3}` subsets.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{MagmaElement, MagmaError, MagmaSpec, SetOp};

/// Splits on commas that are not nested inside brackets or braces.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

fn parse_set_op(s: &str) -> Option<SetOp> {
    Some(match s {
        "union" | "cup" => SetOp::Union,
        "intersection" | "inter" | "cap" => SetOp::Intersection,
        "symdiff" | "xor" => SetOp::SymDiff,
        "cunion" | "complement_union" => SetOp::ComplementUnion,
        "cintersection" | "cinter" | "complement_intersection" => SetOp::ComplementIntersection,
        _ => return None,
    })
}

impl FromStr for MagmaSpec {
    type Err = MagmaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let err = || MagmaError::Parse(s.to_string());
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| err());
        let spec = match lower.as_str() {
            "z" | "int" => MagmaSpec::IntAdd,
            "n" | "nat" => MagmaSpec::NatAdd,
            "absdiff" | "diff" => MagmaSpec::AbsDiff,
            t => {
                if let Some(rest) = t.strip_prefix("set:") {
                    let (u, op) = rest.split_once(':').ok_or_else(err)?;
                    MagmaSpec::SetMagma {
                        universe: u.parse().map_err(|_| err())?,
                        op: parse_set_op(op).ok_or_else(err)?,
                    }
                } else if let Some(rest) = t.strip_prefix("ab:") {
                    let moduli = if rest.is_empty() {
                        Vec::new()
                    } else {
                        rest.split('x').map(num).collect::<Result<_, _>>()?
                    };
                    MagmaSpec::AbelianProduct { moduli }
                } else if let Some(rest) = t.strip_prefix("units:").or_else(|| t.strip_prefix("z*")) {
                    MagmaSpec::ModMulUnits { modulus: num(rest)? }
                } else if let Some(rest) = t.strip_prefix("mod:") {
                    MagmaSpec::ModAdd { modulus: num(rest)? }
                } else if t.contains('x') {
                    let moduli = t
                        .split('x')
                        .map(|p| p.strip_prefix('z').ok_or_else(err).and_then(num))
                        .collect::<Result<_, _>>()?;
                    MagmaSpec::AbelianProduct { moduli }
                } else if let Some(rest) = t.strip_prefix('z') {
                    MagmaSpec::ModAdd { modulus: num(rest)? }
                } else {
                    return Err(err());
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl MagmaSpec {
    /// Parses one element. Integer residues are reduced into range for
    /// `ModAdd` and for `AbelianProduct` coordinates, so `-1` is accepted in
    /// `z5`.
    pub fn parse_element(&self, s: &str) -> Result<MagmaElement, MagmaError> {
        let s = s.trim();
        let err = || MagmaError::Parse(s.to_string());
        let reduce = |t: &str, m: u64| -> Result<u64, MagmaError> {
            let v: BigInt = t.trim().parse().map_err(|_| err())?;
            Ok(num_integer::Integer::mod_floor(&v, &BigInt::from(m)).to_u64().expect("below modulus"))
        };
        let el = match self {
            MagmaSpec::IntAdd | MagmaSpec::NatAdd | MagmaSpec::AbsDiff => {
                MagmaElement::Int(s.parse().map_err(|_| err())?)
            }
            MagmaSpec::ModAdd { modulus } => MagmaElement::Residue(reduce(s, *modulus)?),
            MagmaSpec::ModMulUnits { modulus } => MagmaElement::Residue(reduce(s, *modulus)?),
            MagmaSpec::AbelianProduct { moduli } => {
                let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(err)?;
                let parts = split_top_level(inner);
                if parts.len() != moduli.len() {
                    return Err(err());
                }
                MagmaElement::Tuple(parts.iter().zip(moduli).map(|(p, &m)| reduce(p, m)).collect::<Result<_, _>>()?)
            }
            MagmaSpec::SetMagma { .. } => {
                let inner = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(err)?;
                let mut set = 0u64;
                for p in split_top_level(inner) {
                    let m: u32 = p.parse().map_err(|_| err())?;
                    if !(1..=64).contains(&m) {
                        return Err(err());
                    }
                    set |= 1 << (m - 1);
                }
                MagmaElement::Subset(set)
            }
            MagmaSpec::Table { .. } => MagmaElement::Table(s.parse().map_err(|_| err())?),
        };
        self.check(&el)?;
        Ok(el)
    }

    /// Parses a comma-separated label list such as `1,3,9` or `(0,1),(1,3)`.
    pub fn parse_labels(&self, s: &str) -> Result<Vec<MagmaElement>, MagmaError> {
        split_top_level(s).into_iter().map(|t| self.parse_element(t)).collect()
    }
}
