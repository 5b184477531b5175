//! Boolean predicate AST over typed field comparisons, and its evaluator.

use std::collections::BTreeMap;
use std::fmt;

use crate::value::{Ident, Value};
use crate::EsaError;

/// Comparison operators of the agreement language. Negation is not a
/// connective; each operator has a complement instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }

    pub fn is_ordering(&self) -> bool {
        matches!(self, CmpOp::Lt | CmpOp::Le | CmpOp::Gt | CmpOp::Ge)
    }
}

/// A single atom `field op literal`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Comparison {
    pub field: Ident,
    pub op: CmpOp,
    pub rhs: Value,
}

impl Comparison {
    /// Atoms with an ordering operator require a numeric right-hand side.
    pub fn validate(&self) -> Result<(), EsaError> {
        if self.op.is_ordering() && !self.rhs.is_numeric() {
            return Err(EsaError::OrderingNeedsNumber {
                field: self.field.as_str().to_string(),
                op: self.op.symbol(),
                rhs: self.rhs.to_string(),
            });
        }
        Ok(())
    }

    /// Truth of the atom against a concrete left-hand value.
    ///
    /// `null` is equal only to `null`; every other comparison against a null
    /// on either side is false (so `!=` does not match null either).
    pub fn matches(&self, lhs: &Value) -> Result<bool, EsaError> {
        match (lhs, &self.rhs) {
            (Value::Null, Value::Null) => {
                return Ok(matches!(self.op, CmpOp::Eq));
            }
            // A null (masked) value never matches anything else, not even
            // by `!=`.
            (Value::Null, _) => return Ok(false),
            // A present value is verifiably not null.
            (_, Value::Null) => return Ok(matches!(self.op, CmpOp::Ne)),
            _ => {}
        }
        match self.op {
            CmpOp::Eq | CmpOp::Ne => {
                let eq = if lhs.is_numeric() && self.rhs.is_numeric() {
                    lhs.numeric_cmp(&self.rhs) == Some(std::cmp::Ordering::Equal)
                } else {
                    match (lhs, &self.rhs) {
                        (Value::Text(a), Value::Text(b)) => a == b,
                        (Value::Bool(a), Value::Bool(b)) => a == b,
                        _ => {
                            return Err(EsaError::TypeMismatch {
                                field: self.field.as_str().to_string(),
                                expected: self.rhs.kind_name(),
                                found: lhs.kind_name(),
                            })
                        }
                    }
                };
                Ok(if matches!(self.op, CmpOp::Eq) { eq } else { !eq })
            }
            _ => {
                let ord = lhs.numeric_cmp(&self.rhs).ok_or_else(|| EsaError::TypeMismatch {
                    field: self.field.as_str().to_string(),
                    expected: "number",
                    found: lhs.kind_name(),
                })?;
                Ok(match self.op {
                    CmpOp::Lt => ord.is_lt(),
                    CmpOp::Le => ord.is_le(),
                    CmpOp::Gt => ord.is_gt(),
                    CmpOp::Ge => ord.is_ge(),
                    _ => unreachable!(),
                })
            }
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.field, self.op.symbol(), self.rhs)
    }
}

/// Predicate AST. `And`/`Or` lists are non-empty; a parenthesised group in
/// source text is preserved as a nested node so rendering round-trips.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Predicate {
    True,
    False,
    Atom(Comparison),
    And(Vec<Predicate>),
    Or(Vec<Predicate>),
}

impl Predicate {
    pub fn atom(field: impl Into<Ident>, op: CmpOp, rhs: Value) -> Predicate {
        Predicate::Atom(Comparison { field: field.into(), op, rhs })
    }

    /// Conjunction that flattens nested `And`s and collapses singletons.
    pub fn and(parts: Vec<Predicate>) -> Predicate {
        Self::joined(parts, true)
    }

    /// Disjunction that flattens nested `Or`s and collapses singletons.
    pub fn or(parts: Vec<Predicate>) -> Predicate {
        Self::joined(parts, false)
    }

    fn joined(parts: Vec<Predicate>, conj: bool) -> Predicate {
        let mut flat = Vec::with_capacity(parts.len());
        for p in parts {
            match (conj, p) {
                (true, Predicate::And(xs)) => flat.extend(xs),
                (false, Predicate::Or(xs)) => flat.extend(xs),
                (_, p) => flat.push(p),
            }
        }
        match flat.len() {
            0 => panic!("empty connective"),
            1 => flat.pop().unwrap(),
            _ if conj => Predicate::And(flat),
            _ => Predicate::Or(flat),
        }
    }

    /// All field identifiers referenced by the predicate, in first-use order.
    pub fn fields(&self) -> Vec<Ident> {
        let mut out = Vec::new();
        self.collect_fields(&mut out);
        out
    }

    fn collect_fields(&self, out: &mut Vec<Ident>) {
        match self {
            Predicate::True | Predicate::False => {}
            Predicate::Atom(c) => {
                if !out.contains(&c.field) {
                    out.push(c.field.clone());
                }
            }
            Predicate::And(xs) | Predicate::Or(xs) => {
                for x in xs {
                    x.collect_fields(out);
                }
            }
        }
    }

    pub fn atoms(&self) -> Vec<&Comparison> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Comparison>) {
        match self {
            Predicate::True | Predicate::False => {}
            Predicate::Atom(c) => out.push(c),
            Predicate::And(xs) | Predicate::Or(xs) => {
                for x in xs {
                    x.collect_atoms(out);
                }
            }
        }
    }

    /// Structural validity: non-empty connectives, ordering atoms numeric.
    pub fn validate(&self) -> Result<(), EsaError> {
        match self {
            Predicate::True | Predicate::False => Ok(()),
            Predicate::Atom(c) => c.validate(),
            Predicate::And(xs) | Predicate::Or(xs) => {
                if xs.is_empty() {
                    return Err(EsaError::EmptyConnective);
                }
                xs.iter().try_for_each(Predicate::validate)
            }
        }
    }
}

/// A complete assignment of values to fields.
pub type Assignment = BTreeMap<Ident, Value>;

/// Evaluates `p` over a complete field assignment.
///
/// Errors on a field missing from the assignment or on a comparison whose
/// operand kinds are incompatible; null operands are not an error and simply
/// fail every comparison except `= null`.
pub fn eval_predicate(p: &Predicate, assignment: &Assignment) -> Result<bool, EsaError> {
    match p {
        Predicate::True => Ok(true),
        Predicate::False => Ok(false),
        Predicate::Atom(c) => {
            let lhs = assignment.get(&c.field).ok_or_else(|| EsaError::MissingField {
                field: c.field.as_str().to_string(),
            })?;
            c.matches(lhs)
        }
        Predicate::And(xs) => {
            let mut acc = true;
            for x in xs {
                // No short-circuit: missing fields and type errors surface
                // regardless of the truth of earlier conjuncts.
                acc &= eval_predicate(x, assignment)?;
            }
            Ok(acc)
        }
        Predicate::Or(xs) => {
            let mut acc = false;
            for x in xs {
                acc |= eval_predicate(x, assignment)?;
            }
            Ok(acc)
        }
    }
}
