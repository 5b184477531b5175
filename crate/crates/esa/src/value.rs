//! Field identifiers and typed literal values.
//!
//! Decimals are exact base-10 fixed-point numbers, never binary floats, so
//! comparisons and entailment are reproducible bit-for-bit across platforms.

use std::cmp::Ordering;
use std::fmt;

/// A case-sensitive identifier (field, table or consumer name).
///
/// Identifiers order case-insensitively (tie broken by the raw string) so
/// canonical field lists read naturally: `[age, ethnicity, PSA]` rather than
/// `[PSA, age, ethnicity]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ident(String);

impl Ident {
    pub fn new(s: impl Into<String>) -> Self {
        Ident(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True if the raw text lexes as a bare identifier.
    pub fn is_bare(&self) -> bool {
        let mut chars = self.0.chars();
        match chars.next() {
            Some(c) if c.is_alphabetic() || c == '_' => {}
            _ => return false,
        }
        chars.all(|c| c.is_alphanumeric() || c == '_')
    }
}

impl PartialOrd for Ident {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ident {
    fn cmp(&self, other: &Self) -> Ordering {
        let fold = |s: &str| s.to_lowercase();
        fold(&self.0)
            .cmp(&fold(&other.0))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Ident {
    fn from(s: &str) -> Self {
        Ident::new(s)
    }
}

/// Exact decimal: `mantissa / 10^scale`, normalized so the scale is minimal
/// and strictly positive (integral values live in [`Value::Int`] instead).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: i128,
    scale: u32,
}

impl Decimal {
    fn normalized(mut mantissa: i128, mut scale: u32) -> (i128, u32) {
        while scale > 0 && mantissa % 10 == 0 {
            mantissa /= 10;
            scale -= 1;
        }
        (mantissa, scale)
    }

    pub fn mantissa(&self) -> i128 {
        self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    fn pow10(exp: u32) -> i128 {
        10i128.checked_pow(exp).expect("decimal scale overflow")
    }

    /// Value as a scaled pair for exact cross-scale arithmetic.
    fn widened(&self, to_scale: u32) -> i128 {
        self.mantissa
            .checked_mul(Self::pow10(to_scale - self.scale))
            .expect("decimal magnitude overflow")
    }

    pub fn cmp_exact(&self, other: &Decimal) -> Ordering {
        let scale = self.scale.max(other.scale);
        self.widened(scale).cmp(&other.widened(scale))
    }

    pub fn midpoint(a: &Decimal, b: &Decimal) -> Decimal {
        // (a+b)/2 of two finite decimals is again a finite decimal.
        let scale = a.scale.max(b.scale);
        let sum = a
            .widened(scale)
            .checked_add(b.widened(scale))
            .expect("decimal magnitude overflow");
        if sum % 2 == 0 {
            let (m, s) = Self::normalized(sum / 2, scale);
            Decimal { mantissa: m, scale: s }
        } else {
            let (m, s) = Self::normalized(
                sum.checked_mul(5).expect("decimal magnitude overflow"),
                scale + 1,
            );
            Decimal { mantissa: m, scale: s }
        }
    }

    pub fn floor(&self) -> i128 {
        let div = Self::pow10(self.scale);
        self.mantissa.div_euclid(div)
    }

    pub fn ceil(&self) -> i128 {
        let div = Self::pow10(self.scale);
        let q = self.mantissa.div_euclid(div);
        if self.mantissa.rem_euclid(div) == 0 {
            q
        } else {
            q + 1
        }
    }

    pub fn offset_int(&self, delta: i128) -> Decimal {
        let (m, s) = Self::normalized(
            self.mantissa
                .checked_add(delta.checked_mul(Self::pow10(self.scale)).expect("overflow"))
                .expect("overflow"),
            self.scale,
        );
        Decimal { mantissa: m, scale: s }
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.mantissa);
        }
        let sign = if self.mantissa < 0 { "-" } else { "" };
        let abs = self.mantissa.unsigned_abs();
        let div = 10u128.pow(self.scale);
        let int = abs / div;
        let frac = abs % div;
        write!(f, "{sign}{int}.{frac:0width$}", width = self.scale as usize)
    }
}

/// A literal value of the agreement language.
///
/// `null` compares equal only to `null` and satisfies no ordering comparison,
/// so predicates never match masked (deleted) data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Int(i64),
    Decimal(Decimal),
    Text(String),
    Bool(bool),
    Null,
}

impl Value {
    /// Exact decimal from mantissa and scale. Integral results are demoted to
    /// [`Value::Int`] so each number has a single canonical representation.
    pub fn decimal(mantissa: i128, scale: u32) -> Value {
        let (m, s) = Decimal::normalized(mantissa, scale);
        if s == 0 {
            if let Ok(i) = i64::try_from(m) {
                return Value::Int(i);
            }
        }
        Value::Decimal(Decimal { mantissa: m, scale: s })
    }

    pub fn text(s: impl Into<String>) -> Value {
        Value::Text(s.into())
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Value::Int(_) | Value::Decimal(_))
    }

    pub fn is_null(&self) -> bool {
        matches!(self, Value::Null)
    }

    pub fn as_decimal(&self) -> Option<Decimal> {
        match self {
            Value::Int(i) => Some(Decimal { mantissa: *i as i128, scale: 0 }),
            Value::Decimal(d) => Some(*d),
            _ => None,
        }
    }

    /// Numeric ordering across `Int` and `Decimal`; `None` if either side is
    /// not numeric.
    pub fn numeric_cmp(&self, other: &Value) -> Option<Ordering> {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => Some(a.cmp(b)),
            _ => Some(self.as_decimal()?.cmp_exact(&other.as_decimal()?)),
        }
    }

    /// The kind name used in error messages and schema checks.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "int",
            Value::Decimal(_) => "decimal",
            Value::Text(_) => "text",
            Value::Bool(_) => "bool",
            Value::Null => "null",
        }
    }
}

impl fmt::Display for Value {
    /// Canonical literal syntax: text is always double-quoted with `\"` and
    /// `\\` escapes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Decimal(d) => write!(f, "{d}"),
            Value::Text(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
            Value::Bool(b) => write!(f, "{b}"),
            Value::Null => f.write_str("null"),
        }
    }
}
