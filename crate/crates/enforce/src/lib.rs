//! Row-level access enforcement over an in-memory relational store.
//!
//! Reads are rewritten to be compliant by construction: the projection is
//! intersected with the fields the agreements in force allow, and the
//! where-clause is conjoined with a disjunction of per-agreement clauses
//! `(owner = γ and <context> and <row predicate>)`. Writes are masked so
//! only granted columns are stored; deletion is always allowed; revoking a
//! write agreement overwrites the columns it alone granted.
//!
//! The final rewritten query is what gets logged, and [`check_compliance`]
//! re-verifies any logged query by entailment against the agreements that
//! were in force — no trust in the rewriter is needed after the fact.

mod csvio;
mod engine;
mod entail;
mod query;
mod rewrite;
mod schema;

pub use csvio::{load_table_csv, save_table_csv};
pub use engine::{Database, ExecOutcome, ResultSet, Row};
pub use entail::{entails, satisfiable, DomainMap, FieldDomain};
pub use query::{parse_query, Delete, Insert, Query, Select, Update};
pub use rewrite::{
    allowed_field_union, apply_deletion, apply_revocation, check_compliance, compliance_guard,
    rewrite_select, rewrite_write, run_select, ComplianceContext, SelectRun, WriteDecision,
};
pub use schema::{Column, Schema, ValueKind};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnforceError {
    #[error("unknown table `{table}`")]
    UnknownTable { table: String },
    #[error("table `{table}` has no column `{column}`")]
    UnknownColumn { table: String, column: String },
    #[error("table `{table}`, column `{column}`: expected {expected}, found {found}")]
    KindMismatch { table: String, column: String, expected: &'static str, found: &'static str },
    #[error("table `{table}`: rows must name their owner")]
    MissingOwner { table: String },
    #[error("invalid schema for `{table}`: {reason}")]
    BadSchema { table: String, reason: String },
    #[error("csv header mismatch for `{table}`: expected `{expected}`, found `{found}`")]
    BadHeader { table: String, expected: String, found: String },
    #[error("table `{table}`, column `{column}`: {reason}")]
    BadCell { table: String, column: String, reason: String },
    #[error("write rewriting applies to INSERT and UPDATE only")]
    NotAWrite,
    #[error(transparent)]
    Language(#[from] urm_esa::EsaError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
