//! Compliant-by-construction query rewriting, per-row masking, compliance
//! checking of logged queries, write masking, deletion and revocation.

use std::collections::BTreeSet;

use urm_esa::{
    eval_predicate, Assignment, CmpOp, Esa, EsaKind, Ident, Predicate, Value, PURPOSE_FIELD,
    REQUESTER_FIELD,
};

use crate::engine::{Database, ResultSet};
use crate::entail::{entails, satisfiable};
use crate::query::{Delete, Insert, Query, Select, Update};
use crate::schema::Schema;
use crate::EnforceError;

/// The request context a query executes under: who is asking, for what
/// declared purpose, and which agreements are currently in force. Every
/// agreement held here is valid (revoked ones never enter a context).
#[derive(Debug, Clone)]
pub struct ComplianceContext {
    pub requester: String,
    pub purpose: String,
    pub agreements: Vec<Esa>,
}

impl ComplianceContext {
    pub fn new(requester: impl Into<String>, purpose: impl Into<String>, agreements: Vec<Esa>) -> Self {
        ComplianceContext { requester: requester.into(), purpose: purpose.into(), agreements }
    }

    fn context_assignment(&self) -> Assignment {
        [
            (Ident::new(REQUESTER_FIELD), Value::text(self.requester.clone())),
            (Ident::new(PURPOSE_FIELD), Value::text(self.purpose.clone())),
        ]
        .into_iter()
        .collect()
    }

    /// Partial evaluation of an agreement's context predicate against the
    /// requester and purpose; ill-typed contexts simply do not match.
    pub fn context_satisfied(&self, esa: &Esa) -> bool {
        eval_predicate(&esa.context_predicate, &self.context_assignment()).unwrap_or(false)
    }

    pub fn read_agreements_for(&self, table: &Ident) -> Vec<&Esa> {
        self.agreements
            .iter()
            .filter(|e| e.kind == EsaKind::Read && &e.domain == table)
            .collect()
    }

    /// Write agreements for one consumer's rows in one table whose context
    /// predicate admits this requester and purpose.
    pub fn write_agreements_for(&self, table: &Ident, consumer: &Ident) -> Vec<&Esa> {
        self.agreements
            .iter()
            .filter(|e| {
                e.kind == EsaKind::Write
                    && &e.domain == table
                    && &e.consumer == consumer
                    && self.context_satisfied(e)
            })
            .collect()
    }
}

/// Union of the field sets granted by a set of agreements.
pub fn allowed_field_union<'a>(agreements: impl IntoIterator<Item = &'a Esa>) -> BTreeSet<Ident> {
    agreements.into_iter().flat_map(|e| e.fields.iter().cloned()).collect()
}

/// One agreement's clause in the rewritten where-clause:
/// `(owner = γ and <context evaluated to a constant> and <row predicate>)`.
fn agreement_clause(esa: &Esa, ctx: &ComplianceContext, owner_col: &Ident) -> Predicate {
    Predicate::And(vec![
        Predicate::atom(owner_col.clone(), CmpOp::Eq, Value::text(esa.consumer.as_str())),
        if ctx.context_satisfied(esa) { Predicate::True } else { Predicate::False },
        esa.row_predicate.clone(),
    ])
}

/// The disjunction of agreement clauses; the empty disjunction is `false`.
pub fn compliance_guard(agreements: &[&Esa], ctx: &ComplianceContext, owner_col: &Ident) -> Predicate {
    let mut clauses: Vec<Predicate> = agreements
        .iter()
        .map(|e| agreement_clause(e, ctx, owner_col))
        .collect();
    match clauses.len() {
        0 => Predicate::False,
        1 => clauses.pop().unwrap(),
        _ => Predicate::Or(clauses),
    }
}

/// Rewrites a read so its result is compliant by construction: projected
/// fields are intersected with the allowed union and the where-clause is
/// conjoined with the agreement guard. With no applicable agreement the
/// rewritten query returns the empty set (its guard is `false`), which is
/// a result, not an error.
pub fn rewrite_select(q: &Select, ctx: &ComplianceContext, schema: &Schema) -> Select {
    let applicable = ctx.read_agreements_for(&q.table);
    let allowed = allowed_field_union(applicable.iter().copied());
    let fields: Vec<Ident> = q.fields.iter().filter(|f| allowed.contains(f)).cloned().collect();
    let guard = compliance_guard(&applicable, ctx, &schema.owner_ident());
    Select {
        table: q.table.clone(),
        fields,
        where_clause: Predicate::And(vec![q.where_clause.clone(), guard]),
    }
}

/// A read run end to end: the rewritten query as it will be logged, plus its
/// result with per-row masking applied.
#[derive(Debug, Clone)]
pub struct SelectRun {
    pub rewritten: Select,
    pub result: ResultSet,
}

/// Rewrites, executes and masks a read. A returned row necessarily satisfies
/// at least one agreement clause; fields of that row granted by none of the
/// clauses it satisfies come back as null.
pub fn run_select(db: &Database, q: &Select, ctx: &ComplianceContext) -> Result<SelectRun, EnforceError> {
    db.validate_query(&Query::Select(q.clone()))?;
    let schema = db.schema(&q.table)?;
    let owner_col = schema.owner_ident();
    let rewritten = rewrite_select(q, ctx, schema);
    let applicable = ctx.read_agreements_for(&q.table);

    let mut rows_out = Vec::new();
    for row in db.rows(&q.table)? {
        if !eval_predicate(&rewritten.where_clause, row)? {
            continue;
        }
        let granted: BTreeSet<&Ident> = applicable
            .iter()
            .filter(|esa| row_satisfies(esa, row, ctx, &owner_col))
            .flat_map(|esa| esa.fields.iter())
            .collect();
        rows_out.push(
            rewritten
                .fields
                .iter()
                .map(|f| if granted.contains(f) { row[f].clone() } else { Value::Null })
                .collect(),
        );
    }
    let result = ResultSet { fields: rewritten.fields.clone(), rows: rows_out };
    Ok(SelectRun { rewritten, result })
}

fn row_satisfies(esa: &Esa, row: &Assignment, ctx: &ComplianceContext, owner_col: &Ident) -> bool {
    row.get(owner_col) == Some(&Value::text(esa.consumer.as_str()))
        && ctx.context_satisfied(esa)
        && eval_predicate(&esa.row_predicate, row).unwrap_or(false)
}

/// Verifies a logged (already rewritten) read against the agreements in
/// force: its projection must stay inside the allowed union and its
/// where-clause must entail the agreement guard. A query that can return no
/// row at all is compliant outright.
pub fn check_compliance(q: &Select, ctx: &ComplianceContext, schema: &Schema) -> bool {
    let domains = schema.domains();
    if !satisfiable(&q.where_clause, &domains) {
        return true;
    }
    let applicable = ctx.read_agreements_for(&q.table);
    let allowed = allowed_field_union(applicable.iter().copied());
    if !q.fields.iter().all(|f| allowed.contains(f)) {
        return false;
    }
    let guard = compliance_guard(&applicable, ctx, &schema.owner_ident());
    entails(&q.where_clause, &guard, &domains)
}

/// Outcome of intercepting a write.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WriteDecision {
    /// Masked as needed; execute and log.
    Executed,
    /// No write agreement covers the owner: do not execute, do not log.
    Rejected,
}

/// Masks a write against the owner's write agreements: assignments to
/// columns outside the allowed union become null (the owner column itself is
/// the row identity and is kept). With no agreement at all every non-owner
/// assignment is nulled and the write is flagged [`WriteDecision::Rejected`].
pub fn rewrite_write(
    q: &Query,
    agreements: &[&Esa],
    owner_col: &Ident,
) -> Result<(Query, WriteDecision), EnforceError> {
    let allowed = allowed_field_union(agreements.iter().copied());
    let mask = |set: &[(Ident, Value)]| -> Vec<(Ident, Value)> {
        set.iter()
            .map(|(col, val)| {
                if col == owner_col || allowed.contains(col) {
                    (col.clone(), val.clone())
                } else {
                    (col.clone(), Value::Null)
                }
            })
            .collect()
    };
    let masked = match q {
        Query::Insert(i) => Query::Insert(Insert {
            table: i.table.clone(),
            assignments: mask(&i.assignments),
        }),
        Query::Update(u) => Query::Update(Update {
            table: u.table.clone(),
            set: mask(&u.set),
            where_clause: u.where_clause.clone(),
        }),
        _ => return Err(EnforceError::NotAWrite),
    };
    let decision = if agreements.is_empty() { WriteDecision::Rejected } else { WriteDecision::Executed };
    Ok((masked, decision))
}

/// Deletion reduces stored data, so it is always allowed and runs
/// unmodified; the caller logs every deletion.
pub fn apply_deletion(db: &mut Database, q: &Delete) -> Result<usize, EnforceError> {
    Ok(db.execute(&Query::Delete(q.clone()))?.count())
}

/// After revoking a write agreement, overwrites columns no longer granted by
/// any remaining write agreement with null, or deletes the consumer's rows
/// outright when nothing remains granted. Returns the executed queries so
/// the caller can log them.
pub fn apply_revocation(
    db: &mut Database,
    revoked: &Esa,
    remaining: &[Esa],
) -> Result<Vec<Query>, EnforceError> {
    if revoked.kind != EsaKind::Write {
        return Ok(Vec::new());
    }
    let schema = db.schema(&revoked.domain)?;
    let owner_col = schema.owner_ident();
    let owner_match = Predicate::atom(
        owner_col.clone(),
        CmpOp::Eq,
        Value::text(revoked.consumer.as_str()),
    );
    let remaining_union = allowed_field_union(remaining.iter().filter(|e| {
        e.kind == EsaKind::Write && e.consumer == revoked.consumer && e.domain == revoked.domain
    }));

    let queries = if remaining_union.is_empty() {
        vec![Query::Delete(Delete { table: revoked.domain.clone(), where_clause: owner_match })]
    } else {
        let to_null: Vec<Ident> = revoked
            .fields
            .iter()
            .filter(|f| !remaining_union.contains(f) && **f != owner_col)
            .cloned()
            .collect();
        if to_null.is_empty() {
            Vec::new()
        } else {
            vec![Query::Update(Update {
                table: revoked.domain.clone(),
                set: to_null.into_iter().map(|f| (f, Value::Null)).collect(),
                where_clause: owner_match,
            })]
        }
    };
    for q in &queries {
        db.execute(q)?;
    }
    Ok(queries)
}
