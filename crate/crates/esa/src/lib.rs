//! The executable sharing-agreement notation.
//!
//! An agreement grants a requester access to a set of fields of one
//! consumer's rows in one domain, gated by predicates over the request
//! context and over the row contents:
//!
//! ```text
//! Bob, requester = "Stanford Medical Center" and purpose = research :
//!     [age, ethnicity, PSA] of EHR, PSA >= 2
//! ```
//!
//! This crate defines the predicate AST and value model, the text parser,
//! the canonical renderer (whose output is the hashing preimage), the
//! natural-language renderer, and the content hash. Everything here is a
//! pure function over immutable values.

mod agreement;
mod predicate;
mod render;
mod value;

pub mod parse;

pub use agreement::{digest_hex, hash_esa, Digest, Esa, EsaKind, PURPOSE_FIELD, REQUESTER_FIELD};
pub use parse::{parse_esa, parse_predicate_str};
pub use predicate::{eval_predicate, Assignment, CmpOp, Comparison, Predicate};
pub use render::{render_esa, render_natural_language, render_predicate};
pub use value::{Decimal, Ident, Value};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EsaError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: u32, col: u32, msg: String },
    #[error("{line}:{col}: unknown operator `{op}`")]
    UnknownOperator { line: u32, col: u32, op: String },
    #[error("write agreements cannot carry a row predicate")]
    WriteRowPredicate,
    #[error("`{field} {op} {rhs}`: ordering comparisons require a numeric right-hand side")]
    OrderingNeedsNumber { field: String, op: &'static str, rhs: String },
    #[error("agreement field list is empty")]
    EmptyFieldList,
    #[error("context predicate references `{field}`; only `requester` and `purpose` are allowed")]
    InvalidContextField { field: String },
    #[error("`and`/`or` needs at least one operand")]
    EmptyConnective,
    #[error("field `{field}` is missing from the assignment")]
    MissingField { field: String },
    #[error("field `{field}`: expected {expected}, found {found}")]
    TypeMismatch { field: String, expected: &'static str, found: &'static str },
}
