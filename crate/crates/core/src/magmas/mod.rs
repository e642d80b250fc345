//! Carriers with a binary operation, and the elements that live in them.
//!
//! Elements do not know which magma they belong to; every operation goes
//! through the [`MagmaSpec`]. This keeps label vectors compact and lets the
//! same residue `3` mean different things in `Z_5` and in `Z*_11`.

mod groups;
mod text;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use groups::abelian_groups_of_order;
pub use text::split_top_level;

use crate::graphs::Graph;
use crate::labelling::Labelling;

/// Largest universe for set magmas (subsets are stored as `u64` bitmasks).
pub const MAX_SET_UNIVERSE: u32 = 63;
/// Largest explicit operation table.
pub const MAX_TABLE_SIZE: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MagmaError {
    #[error("invalid magma: {0}")]
    InvalidSpec(String),
    #[error("element {element} does not belong to {spec}")]
    DomainMismatch { spec: String, element: String },
    #[error("{0} has an infinite carrier")]
    InfiniteCarrier(String),
    #[error("carrier of {0} is too large to enumerate")]
    CarrierTooLarge(String),
    #[error("{0} is not a group")]
    NotAGroup(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetOp {
    Union,
    Intersection,
    SymDiff,
    /// `A ⊕ B` is the complement of `A ∪ B`.
    ComplementUnion,
    /// `A ⊕ B` is the complement of `A ∩ B`.
    ComplementIntersection,
}

impl SetOp {
    pub const ALL: [SetOp; 5] = [
        SetOp::Union,
        SetOp::Intersection,
        SetOp::SymDiff,
        SetOp::ComplementUnion,
        SetOp::ComplementIntersection,
    ];
}

/// An explicit operation table: `rows[a][b]` is `a ⊕ b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableMagma {
    rows: Vec<Vec<u8>>,
}

impl TableMagma {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self, MagmaError> {
        let t = TableMagma { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), MagmaError> {
        let n = self.rows.len();
        if n == 0 || n > MAX_TABLE_SIZE {
            return Err(MagmaError::InvalidSpec(format!("table size {n} outside 1..={MAX_TABLE_SIZE}")));
        }
        if self.rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x as usize >= n)) {
            return Err(MagmaError::InvalidSpec("table must be square with entries below its size".into()));
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn get(&self, a: u8, b: u8) -> u8 {
        self.rows[a as usize][b as usize]
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.rows[a][b] == self.rows[b][a]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MagmaSpec {
    /// `(Z, +)`.
    IntAdd,
    /// `(N, +)` on the positive integers.
    NatAdd,
    /// Positive integers with `x ⊖ y = |x − y|`.
    AbsDiff,
    ModAdd { modulus: u64 },
    /// The unit group of `Z_m` under multiplication.
    ModMulUnits { modulus: u64 },
    /// `Z_{m_1} × … × Z_{m_k}` with componentwise addition.
    AbelianProduct { moduli: Vec<u64> },
    /// Subsets of `{1, …, universe}`.
    SetMagma { universe: u32, op: SetOp },
    Table { table: TableMagma },
}

/// A value inside some magma. Subsets are bitmasks: member `i` is bit `i − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MagmaElement {
    Int(BigInt),
    Residue(u64),
    Tuple(Vec<u64>),
    Subset(u64),
    Table(u8),
}

impl MagmaElement {
    pub fn int(v: i64) -> Self {
        MagmaElement::Int(BigInt::from(v))
    }

    /// The subset with the given (1-based) members.
    pub fn subset(members: &[u32]) -> Self {
        MagmaElement::Subset(members.iter().fold(0u64, |acc, &m| acc | 1 << (m - 1)))
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            MagmaElement::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_int().and_then(ToPrimitive::to_i64)
    }
}

impl From<i64> for MagmaElement {
    fn from(v: i64) -> Self {
        MagmaElement::int(v)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn bigint_mod(k: &BigInt, m: u64) -> u64 {
    k.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

impl MagmaSpec {
    pub fn mod_add(modulus: u64) -> Self {
        MagmaSpec::ModAdd { modulus }
    }

    pub fn abelian(moduli: &[u64]) -> Self {
        MagmaSpec::AbelianProduct { moduli: moduli.to_vec() }
    }

    pub fn set(universe: u32, op: SetOp) -> Self {
        MagmaSpec::SetMagma { universe, op }
    }

    pub fn validate(&self) -> Result<(), MagmaError> {
        let bad = |m: String| Err(MagmaError::InvalidSpec(m));
        match self {
            MagmaSpec::ModAdd { modulus } if *modulus < 1 => bad("modulus must be at least 1".into()),
            MagmaSpec::ModMulUnits { modulus } if *modulus < 2 => bad("unit group needs modulus at least 2".into()),
            MagmaSpec::AbelianProduct { moduli } if moduli.contains(&0) => bad("moduli must be at least 1".into()),
            MagmaSpec::SetMagma { universe, .. } if *universe > MAX_SET_UNIVERSE => {
                bad(format!("set universe above {MAX_SET_UNIVERSE}"))
            }
            MagmaSpec::Table { table } => table.validate(),
            _ => Ok(()),
        }
    }

    fn full_set(universe: u32) -> u64 {
        if universe == 64 {
            u64::MAX
        } else {
            (1u64 << universe) - 1
        }
    }

    /// Whether `el` is a member of the carrier, in canonical form.
    pub fn contains(&self, el: &MagmaElement) -> bool {
        use MagmaElement as E;
        match (self, el) {
            (MagmaSpec::IntAdd, E::Int(_)) => true,
            (MagmaSpec::NatAdd | MagmaSpec::AbsDiff, E::Int(v)) => v.is_positive(),
            (MagmaSpec::ModAdd { modulus }, E::Residue(r)) => r < modulus,
            (MagmaSpec::ModMulUnits { modulus }, E::Residue(r)) => r < modulus && r.gcd(modulus) == 1,
            (MagmaSpec::AbelianProduct { moduli }, E::Tuple(t)) => {
                t.len() == moduli.len() && t.iter().zip(moduli).all(|(x, m)| x < m)
            }
            (MagmaSpec::SetMagma { universe, .. }, E::Subset(s)) => s & !Self::full_set(*universe) == 0,
            (MagmaSpec::Table { table }, E::Table(i)) => (*i as usize) < table.size(),
            _ => false,
        }
    }

    fn mismatch(&self, el: &MagmaElement) -> MagmaError {
        MagmaError::DomainMismatch {
            spec: self.to_string(),
            element: format!("{el:?}"),
        }
    }

    pub fn check(&self, el: &MagmaElement) -> Result<(), MagmaError> {
        if self.contains(el) {
            Ok(())
        } else {
            Err(self.mismatch(el))
        }
    }

    /// The magma operation `a ⊕ b`.
    ///
    /// For `AbsDiff` the result can be 0, which lies outside the carrier and
    /// so never matches a label.
    pub fn op(&self, a: &MagmaElement, b: &MagmaElement) -> Result<MagmaElement, MagmaError> {
        // AbsDiff is allowed to receive its own 0 results back.
        let valid = |e: &MagmaElement| {
            self.contains(e) || matches!((self, e), (MagmaSpec::AbsDiff, MagmaElement::Int(v)) if v.is_zero())
        };
        if !valid(a) {
            return Err(self.mismatch(a));
        }
        if !valid(b) {
            return Err(self.mismatch(b));
        }
        Ok(self.op_unchecked(a, b))
    }

    pub(crate) fn op_unchecked(&self, a: &MagmaElement, b: &MagmaElement) -> MagmaElement {
        use MagmaElement as E;
        match (self, a, b) {
            (MagmaSpec::IntAdd | MagmaSpec::NatAdd, E::Int(x), E::Int(y)) => E::Int(x + y),
            (MagmaSpec::AbsDiff, E::Int(x), E::Int(y)) => E::Int((x - y).abs()),
            (MagmaSpec::ModAdd { modulus }, E::Residue(x), E::Residue(y)) => {
                E::Residue(((*x as u128 + *y as u128) % *modulus as u128) as u64)
            }
            (MagmaSpec::ModMulUnits { modulus }, E::Residue(x), E::Residue(y)) => E::Residue(mul_mod(*x, *y, *modulus)),
            (MagmaSpec::AbelianProduct { moduli }, E::Tuple(x), E::Tuple(y)) => E::Tuple(
                x.iter()
                    .zip(y)
                    .zip(moduli)
                    .map(|((a, b), m)| ((*a as u128 + *b as u128) % *m as u128) as u64)
                    .collect(),
            ),
            (MagmaSpec::SetMagma { universe, op }, E::Subset(x), E::Subset(y)) => {
                let full = Self::full_set(*universe);
                E::Subset(match op {
                    SetOp::Union => x | y,
                    SetOp::Intersection => x & y,
                    SetOp::SymDiff => x ^ y,
                    SetOp::ComplementUnion => !(x | y) & full,
                    SetOp::ComplementIntersection => !(x & y) & full,
                })
            }
            (MagmaSpec::Table { table }, E::Table(x), E::Table(y)) => E::Table(table.get(*x, *y)),
            _ => unreachable!("operands were checked against the spec"),
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            MagmaSpec::Table { table } => table.is_commutative(),
            _ => true,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, MagmaSpec::IntAdd | MagmaSpec::NatAdd | MagmaSpec::AbsDiff)
    }

    /// Number of carrier elements, for finite magmas whose size fits in `u64`.
    pub fn carrier_size(&self) -> Result<u64, MagmaError> {
        match self {
            MagmaSpec::IntAdd | MagmaSpec::NatAdd | MagmaSpec::AbsDiff => {
                Err(MagmaError::InfiniteCarrier(self.to_string()))
            }
            MagmaSpec::ModAdd { modulus } => Ok(*modulus),
            MagmaSpec::ModMulUnits { modulus } => Ok((1..*modulus).filter(|r| r.gcd(modulus) == 1).count() as u64),
            MagmaSpec::AbelianProduct { moduli } => moduli
                .iter()
                .try_fold(1u64, |acc, &m| acc.checked_mul(m))
                .ok_or_else(|| MagmaError::CarrierTooLarge(self.to_string())),
            MagmaSpec::SetMagma { universe, .. } => Ok(1u64 << universe),
            MagmaSpec::Table { table } => Ok(table.size() as u64),
        }
    }

    /// The `idx`-th element in enumeration order (`idx < carrier_size()`).
    pub fn element_at(&self, idx: u64) -> MagmaElement {
        match self {
            MagmaSpec::ModAdd { .. } => MagmaElement::Residue(idx),
            MagmaSpec::ModMulUnits { modulus } => MagmaElement::Residue(
                (1..*modulus)
                    .filter(|r| r.gcd(modulus) == 1)
                    .nth(idx as usize)
                    .expect("index within the unit group"),
            ),
            MagmaSpec::AbelianProduct { moduli } => {
                // Mixed radix with the last coordinate varying fastest.
                let mut rest = idx;
                let mut t = vec![0; moduli.len()];
                for (slot, &m) in t.iter_mut().zip(moduli).rev() {
                    *slot = rest % m;
                    rest /= m;
                }
                MagmaElement::Tuple(t)
            }
            MagmaSpec::SetMagma { .. } => MagmaElement::Subset(idx),
            MagmaSpec::Table { .. } => MagmaElement::Table(idx as u8),
            _ => panic!("element_at on an infinite carrier"),
        }
    }

    /// Every carrier element exactly once, in a fixed order.
    pub fn enumerate_carrier(&self) -> Result<impl Iterator<Item = MagmaElement> + '_, MagmaError> {
        let size = self.carrier_size()?;
        Ok((0..size).map(move |i| self.element_at(i)))
    }

    /// Two-sided identity element, if the magma has one.
    pub fn identity(&self) -> Option<MagmaElement> {
        use MagmaElement as E;
        match self {
            MagmaSpec::IntAdd => Some(E::int(0)),
            MagmaSpec::NatAdd | MagmaSpec::AbsDiff => None,
            MagmaSpec::ModAdd { .. } => Some(E::Residue(0)),
            MagmaSpec::ModMulUnits { modulus } => Some(E::Residue(1 % modulus)),
            MagmaSpec::AbelianProduct { moduli } => Some(E::Tuple(vec![0; moduli.len()])),
            MagmaSpec::SetMagma { universe, op } => match op {
                SetOp::Union | SetOp::SymDiff => Some(E::Subset(0)),
                SetOp::Intersection => Some(E::Subset(Self::full_set(*universe))),
                _ if *universe == 0 => Some(E::Subset(0)),
                _ => None,
            },
            MagmaSpec::Table { table } => {
                let n = table.size() as u8;
                (0..n)
                    .find(|&e| (0..n).all(|x| table.get(e, x) == x && table.get(x, e) == x))
                    .map(E::Table)
            }
        }
    }

    fn is_group(&self) -> bool {
        matches!(
            self,
            MagmaSpec::IntAdd
                | MagmaSpec::ModAdd { .. }
                | MagmaSpec::ModMulUnits { .. }
                | MagmaSpec::AbelianProduct { .. }
                | MagmaSpec::SetMagma { op: SetOp::SymDiff, .. }
        )
    }

    /// `k · a` in additive notation (`a^k` for the unit group). Negative `k`
    /// uses inverses. Only defined for the group kinds.
    pub fn scale(&self, k: &BigInt, a: &MagmaElement) -> Result<MagmaElement, MagmaError> {
        use MagmaElement as E;
        if !self.is_group() {
            return Err(MagmaError::NotAGroup(self.to_string()));
        }
        self.check(a)?;
        Ok(match (self, a) {
            (MagmaSpec::IntAdd, E::Int(x)) => E::Int(k * x),
            (MagmaSpec::ModAdd { modulus }, E::Residue(x)) => {
                E::Residue(mul_mod(bigint_mod(k, *modulus), *x, *modulus))
            }
            (MagmaSpec::AbelianProduct { moduli }, E::Tuple(t)) => {
                E::Tuple(t.iter().zip(moduli).map(|(x, &m)| mul_mod(bigint_mod(k, m), *x, m)).collect())
            }
            (MagmaSpec::ModMulUnits { modulus }, E::Residue(x)) => {
                let order = self.order_of(a).expect("unit group is finite");
                E::Residue(pow_mod(*x, bigint_mod(k, order), *modulus))
            }
            (MagmaSpec::SetMagma { .. }, E::Subset(x)) => E::Subset(if k.is_odd() { *x } else { 0 }),
            _ => unreachable!(),
        })
    }

    /// Order of `a` in a finite group.
    pub fn order_of(&self, a: &MagmaElement) -> Option<u64> {
        use MagmaElement as E;
        if !self.contains(a) {
            return None;
        }
        match (self, a) {
            (MagmaSpec::ModAdd { modulus }, E::Residue(x)) => Some(modulus / x.gcd(modulus)),
            (MagmaSpec::AbelianProduct { moduli }, E::Tuple(t)) => {
                Some(t.iter().zip(moduli).fold(1u64, |acc, (x, m)| acc.lcm(&(m / x.gcd(m)))))
            }
            (MagmaSpec::ModMulUnits { modulus }, E::Residue(x)) => {
                let one = 1 % modulus;
                let mut acc = *x;
                let mut k = 1;
                while acc != one {
                    acc = mul_mod(acc, *x, *modulus);
                    k += 1;
                }
                Some(k)
            }
            (MagmaSpec::SetMagma { op: SetOp::SymDiff, .. }, E::Subset(x)) => Some(if *x == 0 { 1 } else { 2 }),
            _ => None,
        }
    }

    /// Human-readable rendering of an element (`{1,2}` for subsets,
    /// `(1,2)` for tuples).
    pub fn render(&self, el: &MagmaElement) -> String {
        match el {
            MagmaElement::Int(v) => v.to_string(),
            MagmaElement::Residue(r) => r.to_string(),
            MagmaElement::Table(i) => i.to_string(),
            MagmaElement::Tuple(t) => {
                format!("({})", t.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            }
            MagmaElement::Subset(s) => {
                format!("{{{}}}", members(*s).iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            }
        }
    }

    pub fn element_to_json(&self, el: &MagmaElement) -> serde_json::Value {
        use serde_json::Value;
        match el {
            MagmaElement::Int(v) => match v.to_i64() {
                Some(x) => Value::from(x),
                None => Value::from(v.to_string()),
            },
            MagmaElement::Residue(r) => Value::from(*r),
            MagmaElement::Table(i) => Value::from(*i),
            MagmaElement::Tuple(t) => Value::from(t.clone()),
            MagmaElement::Subset(s) => Value::from(members(*s)),
        }
    }

    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<MagmaElement, MagmaError> {
        let err = || MagmaError::Parse(v.to_string());
        let el = match self {
            MagmaSpec::IntAdd | MagmaSpec::NatAdd | MagmaSpec::AbsDiff => match v {
                serde_json::Value::Number(n) => MagmaElement::Int(n.as_i64().ok_or_else(err)?.into()),
                serde_json::Value::String(s) => MagmaElement::Int(s.parse().map_err(|_| err())?),
                _ => return Err(err()),
            },
            MagmaSpec::ModAdd { .. } | MagmaSpec::ModMulUnits { .. } => MagmaElement::Residue(v.as_u64().ok_or_else(err)?),
            MagmaSpec::Table { .. } => {
                MagmaElement::Table(v.as_u64().and_then(|x| u8::try_from(x).ok()).ok_or_else(err)?)
            }
            MagmaSpec::AbelianProduct { .. } => MagmaElement::Tuple(
                v.as_array()
                    .ok_or_else(err)?
                    .iter()
                    .map(|x| x.as_u64().ok_or_else(err))
                    .collect::<Result<_, _>>()?,
            ),
            MagmaSpec::SetMagma { .. } => {
                let mut s = 0u64;
                for m in v.as_array().ok_or_else(err)? {
                    let m = m.as_u64().filter(|m| (1..=64).contains(m)).ok_or_else(err)?;
                    s |= 1 << (m - 1);
                }
                MagmaElement::Subset(s)
            }
        };
        self.check(&el)?;
        Ok(el)
    }
}

/// Members (1-based, ascending) of a subset bitmask.
pub fn members(s: u64) -> Vec<u32> {
    (0..64).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Complement of a subset within `{1, …, universe}`.
pub fn complement(universe: u32, s: u64) -> u64 {
    !s & MagmaSpec::full_set(universe)
}

/// The two-value construction showing every graph is a sum graph over some
/// magma: the carrier is `V ∪ {•}` (vertex `i` is table element `i`, `•` is
/// element `n`), and `a ⊕ b` is vertex 0 when `a` and `b` are adjacent
/// vertices, `•` otherwise. The returned labelling maps vertex `i` to `i`.
pub fn universal_magma(g: &Graph) -> Result<(MagmaSpec, Labelling), MagmaError> {
    let n = g.order();
    if n == 0 {
        return Err(MagmaError::InvalidSpec("graph needs at least one vertex".into()));
    }
    if n + 1 > MAX_TABLE_SIZE {
        return Err(MagmaError::InvalidSpec(format!("graph with {n} vertices exceeds the table limit")));
    }
    let bullet = n as u8;
    let rows = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| if a < n && b < n && g.has_edge(a, b) { 0 } else { bullet })
                .collect()
        })
        .collect();
    let spec = MagmaSpec::Table {
        table: TableMagma::new(rows)?,
    };
    let labels = (0..n as u8).map(MagmaElement::Table).collect();
    let lab = Labelling::new(spec.clone(), labels, false).map_err(|e| MagmaError::InvalidSpec(e.to_string()))?;
    Ok((spec, lab))
}

impl fmt::Display for MagmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagmaSpec::IntAdd => write!(f, "z"),
            MagmaSpec::NatAdd => write!(f, "n"),
            MagmaSpec::AbsDiff => write!(f, "absdiff"),
            MagmaSpec::ModAdd { modulus } => write!(f, "z{modulus}"),
            MagmaSpec::ModMulUnits { modulus } => write!(f, "z*{modulus}"),
            MagmaSpec::AbelianProduct { moduli } => {
                if moduli.is_empty() {
                    return write!(f, "ab:");
                }
                let parts: Vec<String> = moduli.iter().map(|m| format!("z{m}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            MagmaSpec::SetMagma { universe, op } => {
                let op = match op {
                    SetOp::Union => "union",
                    SetOp::Intersection => "intersection",
                    SetOp::SymDiff => "symdiff",
                    SetOp::ComplementUnion => "cunion",
                    SetOp::ComplementIntersection => "cintersection",
                };
                write!(f, "set:{universe}:{op}")
            }
            MagmaSpec::Table { table } => write!(f, "table:{}", table.size()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn el(v: i64) -> MagmaElement {
        MagmaElement::int(v)
    }

    #[test]
    fn integer_addition() {
        assert_eq!(MagmaSpec::IntAdd.op(&el(-3), &el(1)).unwrap(), el(-2));
    }

    #[test]
    fn complement_of_union() {
        let spec = MagmaSpec::set(4, SetOp::ComplementUnion);
        let r = spec.op(&MagmaElement::subset(&[1]), &MagmaElement::subset(&[2])).unwrap();
        assert_eq!(r, MagmaElement::subset(&[3, 4]));
        assert_eq!(spec.render(&r), "{3,4}");
    }

    #[test]
    fn unit_group_multiplication() {
        let spec = MagmaSpec::ModMulUnits { modulus: 11 };
        let r = spec.op(&MagmaElement::Residue(3), &MagmaElement::Residue(5)).unwrap();
        assert_eq!(r, MagmaElement::Residue(4));
        assert!(!spec.contains(&MagmaElement::Residue(0)));
        assert_eq!(spec.carrier_size().unwrap(), 10);
    }

    #[test]
    fn absdiff_may_produce_zero() {
        let r = MagmaSpec::AbsDiff.op(&el(4), &el(4)).unwrap();
        assert_eq!(r, el(0));
        assert!(!MagmaSpec::AbsDiff.contains(&r));
        assert_eq!(MagmaSpec::AbsDiff.op(&el(3), &el(7)).unwrap(), el(4));
    }

    #[test]
    fn domain_mismatch() {
        let spec = MagmaSpec::mod_add(5);
        assert!(matches!(
            spec.op(&MagmaElement::Residue(5), &MagmaElement::Residue(1)),
            Err(MagmaError::DomainMismatch { .. })
        ));
        assert!(spec.op(&el(1), &MagmaElement::Residue(1)).is_err());
        assert!(MagmaSpec::NatAdd.op(&el(0), &el(1)).is_err());
    }

    #[test]
    fn carrier_enumeration() {
        let z5: Vec<_> = MagmaSpec::mod_add(5).enumerate_carrier().unwrap().collect();
        assert_eq!(z5, (0..5).map(MagmaElement::Residue).collect::<Vec<_>>());
        let prod: Vec<_> = MagmaSpec::abelian(&[2, 2]).enumerate_carrier().unwrap().collect();
        assert_eq!(prod.len(), 4);
        assert_eq!(prod[1], MagmaElement::Tuple(vec![0, 1]));
        assert_eq!(MagmaSpec::set(3, SetOp::Union).enumerate_carrier().unwrap().count(), 8);
        assert!(matches!(
            MagmaSpec::IntAdd.enumerate_carrier().err(),
            Some(MagmaError::InfiniteCarrier(_))
        ));
    }

    #[test]
    fn enumeration_is_duplicate_free_and_valid() {
        for spec in [
            MagmaSpec::abelian(&[3, 4, 2]),
            MagmaSpec::ModMulUnits { modulus: 20 },
            MagmaSpec::set(4, SetOp::SymDiff),
        ] {
            let all: Vec<_> = spec.enumerate_carrier().unwrap().collect();
            let set: std::collections::HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            assert!(all.iter().all(|e| spec.contains(e)));
        }
    }

    fn finite_specs() -> Vec<MagmaSpec> {
        let mut specs = vec![
            MagmaSpec::mod_add(7),
            MagmaSpec::mod_add(12),
            MagmaSpec::ModMulUnits { modulus: 15 },
            MagmaSpec::abelian(&[4, 6]),
            MagmaSpec::abelian(&[2, 2, 3]),
        ];
        specs.extend(SetOp::ALL.iter().map(|&op| MagmaSpec::set(4, op)));
        specs
    }

    fn random_element(spec: &MagmaSpec, rng: &mut impl Rng) -> MagmaElement {
        let size = spec.carrier_size().unwrap();
        spec.element_at(rng.gen_range(0..size))
    }

    #[test]
    fn finite_kinds_commute() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for spec in finite_specs() {
            for _ in 0..10_000 {
                let a = random_element(&spec, &mut rng);
                let b = random_element(&spec, &mut rng);
                assert_eq!(spec.op(&a, &b).unwrap(), spec.op(&b, &a).unwrap(), "{spec}");
            }
        }
    }

    #[test]
    fn group_kinds_associate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let groups = [
            MagmaSpec::mod_add(12),
            MagmaSpec::ModMulUnits { modulus: 15 },
            MagmaSpec::abelian(&[4, 6]),
            MagmaSpec::set(4, SetOp::SymDiff),
        ];
        for spec in groups {
            for _ in 0..2_000 {
                let [a, b, c] = std::array::from_fn(|_| random_element(&spec, &mut rng));
                let left = spec.op(&spec.op(&a, &b).unwrap(), &c).unwrap();
                let right = spec.op(&a, &spec.op(&b, &c).unwrap()).unwrap();
                assert_eq!(left, right, "{spec}");
            }
        }
    }

    #[test]
    fn symmetric_difference_is_boolean() {
        let spec = MagmaSpec::set(4, SetOp::SymDiff);
        for a in spec.enumerate_carrier().unwrap() {
            assert_eq!(spec.op(&a, &a).unwrap(), MagmaElement::Subset(0));
        }
    }

    #[test]
    fn complement_swaps_dual_operations() {
        for s in 0..=4u32 {
            let pairs = [
                (SetOp::Union, SetOp::Intersection),
                (SetOp::ComplementUnion, SetOp::ComplementIntersection),
            ];
            for (op, dual) in pairs {
                let (a_spec, b_spec) = (MagmaSpec::set(s, op), MagmaSpec::set(s, dual));
                for a in 0..1u64 << s {
                    for b in 0..1u64 << s {
                        let lhs = match a_spec.op(&MagmaElement::Subset(a), &MagmaElement::Subset(b)).unwrap() {
                            MagmaElement::Subset(x) => complement(s, x),
                            _ => unreachable!(),
                        };
                        let rhs = b_spec
                            .op(&MagmaElement::Subset(complement(s, a)), &MagmaElement::Subset(complement(s, b)))
                            .unwrap();
                        assert_eq!(MagmaElement::Subset(lhs), rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn scaling_and_orders() {
        let z10 = MagmaSpec::mod_add(10);
        let two = MagmaElement::Residue(2);
        assert_eq!(z10.order_of(&two), Some(5));
        assert_eq!(z10.scale(&BigInt::from(-1), &two).unwrap(), MagmaElement::Residue(8));
        let units = MagmaSpec::ModMulUnits { modulus: 11 };
        let three = MagmaElement::Residue(3);
        assert_eq!(units.order_of(&three), Some(5));
        assert_eq!(units.scale(&BigInt::from(3), &three).unwrap(), MagmaElement::Residue(5));
        assert_eq!(units.scale(&BigInt::from(-1), &three).unwrap(), MagmaElement::Residue(4));
        let prod = MagmaSpec::abelian(&[4, 4]);
        assert_eq!(prod.order_of(&MagmaElement::Tuple(vec![1, 2])), Some(4));
        assert!(MagmaSpec::set(3, SetOp::Union).scale(&BigInt::from(1), &MagmaElement::Subset(1)).is_err());
    }

    #[test]
    fn identities() {
        assert_eq!(MagmaSpec::set(3, SetOp::Intersection).identity(), Some(MagmaElement::Subset(7)));
        assert_eq!(MagmaSpec::set(3, SetOp::ComplementUnion).identity(), None);
        assert_eq!(MagmaSpec::NatAdd.identity(), None);
    }

    #[test]
    fn json_rendering() {
        let spec = MagmaSpec::set(4, SetOp::Union);
        let e = MagmaElement::subset(&[1, 3]);
        let j = spec.element_to_json(&e);
        assert_eq!(j, serde_json::json!([1, 3]));
        assert_eq!(spec.element_from_json(&j).unwrap(), e);
        let big = MagmaElement::Int(BigInt::from(10).pow(30));
        let j = MagmaSpec::IntAdd.element_to_json(&big);
        assert_eq!(MagmaSpec::IntAdd.element_from_json(&j).unwrap(), big);
        let spec_json = serde_json::to_value(MagmaSpec::abelian(&[4, 4])).unwrap();
        assert_eq!(spec_json, serde_json::json!({"kind": "abelian_product", "moduli": [4, 4]}));
        assert!(MagmaSpec::mod_add(5).element_from_json(&serde_json::json!(7)).is_err());
    }

    #[test]
    fn universal_magma_labels_any_graph() {
        use crate::graphs::{build_family, FamilySpec};
        use crate::labelling::verify;
        for fam in [FamilySpec::Complete(2), FamilySpec::EmptyGraph(3), FamilySpec::Petersen] {
            let g = build_family(&fam).unwrap();
            let (spec, lab) = universal_magma(&g).unwrap();
            assert!(verify(&lab, &g).unwrap().ok, "{fam}");
            if fam == FamilySpec::Complete(2) {
                let MagmaSpec::Table { table } = &spec else { panic!() };
                assert_eq!(table.get(0, 1), 0);
                assert_eq!(table.get(1, 0), 0);
                assert_eq!(table.get(0, 0), 2);
                assert_eq!(table.get(2, 1), 2);
            }
        }
    }
}
