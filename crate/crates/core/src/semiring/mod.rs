//! Commutative semirings with exact arithmetic.
//!
//! Every carrier here is exact: tropical values are rationals extended by
//! `-inf` (bottom, the max-plus ⊕-unit) and, transiently inside residuation,
//! `+inf` (top). Text forms are `3`, `-7/2`, `-inf`, `+inf`.

pub mod linalg;

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use thiserror::Error;

pub use linalg::{
    combine, extract_basis, principal_solution, residual, row_rank, solve_combination, Matrix,
    RowAlgebra, TropicalMatrix,
};

/// Exact rational used by every numeric carrier.
pub type Q = Rational64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid {carrier} value `{text}`")]
pub struct ValueParseError {
    pub carrier: &'static str,
    pub text: String,
}

/// What kind of values a semiring carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    ExtendedRational,
    Rational,
    Natural,
    Boolean,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiringDescriptor {
    pub name: &'static str,
    pub carrier: Carrier,
    pub plus: &'static str,
    pub times: &'static str,
    pub zero: &'static str,
    pub one: &'static str,
    pub idempotent_plus: bool,
}

/// A commutative semiring whose elements are owned values.
pub trait Semiring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn descriptor() -> SemiringDescriptor;

    /// The natural number `n` as a value of this carrier (the numeric
    /// embedding used for "report |V(G)|"-style parameters).
    fn from_count(n: u64) -> Self;

    /// A rational weight, if the carrier can hold it.
    fn from_rational(q: &Q) -> Option<Self>;

    /// A max-plus value, if this carrier is max-plus.
    fn from_tropical(_v: &TropicalValue) -> Option<Self> {
        None
    }

    fn parse_value(text: &str) -> Result<Self, ValueParseError>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |acc, x| acc.plus(x))
    }
}

pub(crate) fn parse_rational(text: &str) -> Option<Q> {
    let t = text.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let q = Q::from_str(t).ok()?;
    if *q.denom() == 0 {
        return None;
    }
    Some(q)
}

/// Max-plus value: `Bottom` is −∞ (⊕-unit), `Top` is +∞ and only ever
/// appears as an intermediate result of [`residual`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropicalValue {
    Bottom,
    Finite(Q),
    Top,
}

impl TropicalValue {
    pub fn int(n: i64) -> Self {
        TropicalValue::Finite(Q::from_integer(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropicalValue::Finite(_))
    }

    pub fn finite(&self) -> Option<Q> {
        match self {
            TropicalValue::Finite(q) => Some(*q),
            _ => None,
        }
    }

    /// Order-dual embedding into min-plus (negation).
    pub fn to_min_plus(&self) -> MinPlus {
        match self {
            TropicalValue::Bottom => MinPlus::Infinity,
            TropicalValue::Finite(q) => MinPlus::Finite(-q),
            TropicalValue::Top => panic!("top has no min-plus counterpart"),
        }
    }
}

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalValue::Bottom => f.write_str("-inf"),
            TropicalValue::Finite(q) => write!(f, "{q}"),
            TropicalValue::Top => f.write_str("+inf"),
        }
    }
}

impl FromStr for TropicalValue {
    type Err = ValueParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(TropicalValue::Bottom),
            "+inf" | "inf" => Ok(TropicalValue::Top),
            t => parse_rational(t).map(TropicalValue::Finite).ok_or(ValueParseError {
                carrier: "max-plus",
                text: s.to_string(),
            }),
        }
    }
}

impl Semiring for TropicalValue {
    fn zero() -> Self {
        TropicalValue::Bottom
    }
    fn one() -> Self {
        TropicalValue::Finite(Q::zero())
    }
    fn plus(&self, rhs: &Self) -> Self {
        *self.max(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        use TropicalValue::*;
        match (self, rhs) {
            (Bottom, _) | (_, Bottom) => Bottom,
            (Top, _) | (_, Top) => Top,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }
    fn descriptor() -> SemiringDescriptor {
        SemiringDescriptor {
            name: "maxplus",
            carrier: Carrier::ExtendedRational,
            plus: "max",
            times: "rational addition",
            zero: "-inf",
            one: "0",
            idempotent_plus: true,
        }
    }
    fn from_count(n: u64) -> Self {
        TropicalValue::Finite(Q::from_integer(n as i64))
    }
    fn from_rational(q: &Q) -> Option<Self> {
        Some(TropicalValue::Finite(*q))
    }
    fn from_tropical(v: &TropicalValue) -> Option<Self> {
        Some(*v)
    }
    fn parse_value(text: &str) -> Result<Self, ValueParseError> {
        text.parse()
    }
}

/// Min-plus value; `Infinity` is the ⊕-unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MinPlus {
    Finite(Q),
    Infinity,
}

impl MinPlus {
    /// Negation into max-plus; an isomorphism of semirings.
    pub fn to_max_plus(&self) -> TropicalValue {
        match self {
            MinPlus::Finite(q) => TropicalValue::Finite(-q),
            MinPlus::Infinity => TropicalValue::Bottom,
        }
    }
}

impl fmt::Display for MinPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinPlus::Finite(q) => write!(f, "{q}"),
            MinPlus::Infinity => f.write_str("+inf"),
        }
    }
}

impl Semiring for MinPlus {
    fn zero() -> Self {
        MinPlus::Infinity
    }
    fn one() -> Self {
        MinPlus::Finite(Q::zero())
    }
    fn plus(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (MinPlus::Infinity, x) | (x, MinPlus::Infinity) => *x,
            (MinPlus::Finite(a), MinPlus::Finite(b)) => MinPlus::Finite(*a.min(b)),
        }
    }
    fn times(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (MinPlus::Finite(a), MinPlus::Finite(b)) => MinPlus::Finite(a + b),
            _ => MinPlus::Infinity,
        }
    }
    fn descriptor() -> SemiringDescriptor {
        SemiringDescriptor {
            name: "minplus",
            carrier: Carrier::ExtendedRational,
            plus: "min",
            times: "rational addition",
            zero: "+inf",
            one: "0",
            idempotent_plus: true,
        }
    }
    fn from_count(n: u64) -> Self {
        MinPlus::Finite(Q::from_integer(n as i64))
    }
    fn from_rational(q: &Q) -> Option<Self> {
        Some(MinPlus::Finite(*q))
    }
    fn parse_value(text: &str) -> Result<Self, ValueParseError> {
        match text.trim() {
            "+inf" | "inf" => Ok(MinPlus::Infinity),
            t => parse_rational(t).map(MinPlus::Finite).ok_or(ValueParseError {
                carrier: "min-plus",
                text: text.to_string(),
            }),
        }
    }
}

/// The natural numbers with ordinary addition and multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nat(pub u64);

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Semiring for Nat {
    fn zero() -> Self {
        Nat(0)
    }
    fn one() -> Self {
        Nat(1)
    }
    fn plus(&self, rhs: &Self) -> Self {
        Nat(self.0.checked_add(rhs.0).expect("natural semiring overflow"))
    }
    fn times(&self, rhs: &Self) -> Self {
        Nat(self.0.checked_mul(rhs.0).expect("natural semiring overflow"))
    }
    fn descriptor() -> SemiringDescriptor {
        SemiringDescriptor {
            name: "nat",
            carrier: Carrier::Natural,
            plus: "addition",
            times: "multiplication",
            zero: "0",
            one: "1",
            idempotent_plus: false,
        }
    }
    fn from_count(n: u64) -> Self {
        Nat(n)
    }
    fn from_rational(q: &Q) -> Option<Self> {
        if q.is_integer() && *q.numer() >= 0 {
            Some(Nat(*q.numer() as u64))
        } else {
            None
        }
    }
    fn parse_value(text: &str) -> Result<Self, ValueParseError> {
        text.trim().parse().map(Nat).map_err(|_| ValueParseError {
            carrier: "natural",
            text: text.to_string(),
        })
    }
}

/// The rational field viewed as a semiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Q);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Semiring for Rat {
    fn zero() -> Self {
        Rat(Q::zero())
    }
    fn one() -> Self {
        Rat(Q::one())
    }
    fn plus(&self, rhs: &Self) -> Self {
        Rat(self.0 + rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        Rat(self.0 * rhs.0)
    }
    fn descriptor() -> SemiringDescriptor {
        SemiringDescriptor {
            name: "rat",
            carrier: Carrier::Rational,
            plus: "addition",
            times: "multiplication",
            zero: "0",
            one: "1",
            idempotent_plus: false,
        }
    }
    fn from_count(n: u64) -> Self {
        Rat(Q::from_integer(n as i64))
    }
    fn from_rational(q: &Q) -> Option<Self> {
        Some(Rat(*q))
    }
    fn parse_value(text: &str) -> Result<Self, ValueParseError> {
        parse_rational(text).map(Rat).ok_or(ValueParseError {
            carrier: "rational",
            text: text.to_string(),
        })
    }
}

/// Booleans with `or` / `and`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Boolean(pub bool);

impl fmt::Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "true" } else { "false" })
    }
}

impl Semiring for Boolean {
    fn zero() -> Self {
        Boolean(false)
    }
    fn one() -> Self {
        Boolean(true)
    }
    fn plus(&self, rhs: &Self) -> Self {
        Boolean(self.0 || rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        Boolean(self.0 && rhs.0)
    }
    fn descriptor() -> SemiringDescriptor {
        SemiringDescriptor {
            name: "bool",
            carrier: Carrier::Boolean,
            plus: "or",
            times: "and",
            zero: "false",
            one: "true",
            idempotent_plus: true,
        }
    }
    fn from_count(n: u64) -> Self {
        Boolean(n > 0)
    }
    fn from_rational(q: &Q) -> Option<Self> {
        Some(Boolean(!q.is_zero()))
    }
    fn parse_value(text: &str) -> Result<Self, ValueParseError> {
        match text.trim() {
            "true" | "1" => Ok(Boolean(true)),
            "false" | "0" => Ok(Boolean(false)),
            _ => Err(ValueParseError {
                carrier: "boolean",
                text: text.to_string(),
            }),
        }
    }
}
