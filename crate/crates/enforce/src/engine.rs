//! In-memory relational store: just enough engine to make query rewriting
//! observable. One writer at a time; reads take immutable snapshots.

use std::collections::BTreeMap;

use urm_esa::{eval_predicate, Assignment, Ident, Predicate, Value};

use crate::query::{Delete, Insert, Query, Select, Update};
use crate::schema::Schema;
use crate::EnforceError;

/// A stored row: a complete column-to-value assignment.
pub type Row = Assignment;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultSet {
    pub fields: Vec<Ident>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExecOutcome {
    Rows(ResultSet),
    Count(usize),
}

impl ExecOutcome {
    pub fn rows(self) -> ResultSet {
        match self {
            ExecOutcome::Rows(r) => r,
            ExecOutcome::Count(_) => panic!("write outcome where rows expected"),
        }
    }

    pub fn count(self) -> usize {
        match self {
            ExecOutcome::Count(n) => n,
            ExecOutcome::Rows(_) => panic!("row outcome where count expected"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Database {
    schemas: BTreeMap<Ident, Schema>,
    tables: BTreeMap<Ident, Vec<Row>>,
}

impl Database {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_table(&mut self, schema: Schema) -> Result<(), EnforceError> {
        schema.validate()?;
        let name = schema.table_ident();
        self.schemas.insert(name.clone(), schema);
        self.tables.entry(name).or_default();
        Ok(())
    }

    pub fn schema(&self, table: &Ident) -> Result<&Schema, EnforceError> {
        self.schemas
            .get(table)
            .ok_or_else(|| EnforceError::UnknownTable { table: table.as_str().into() })
    }

    pub fn schemas(&self) -> impl Iterator<Item = &Schema> {
        self.schemas.values()
    }

    pub fn rows(&self, table: &Ident) -> Result<&[Row], EnforceError> {
        self.schema(table)?;
        Ok(self.tables.get(table).map(Vec::as_slice).unwrap_or(&[]))
    }

    /// Replaces a table's rows wholesale (fixture loading). Rows are
    /// normalized to the full column set.
    pub fn set_rows(&mut self, table: &Ident, rows: Vec<Row>) -> Result<(), EnforceError> {
        let schema = self.schema(table)?.clone();
        let mut normalized = Vec::with_capacity(rows.len());
        for row in rows {
            normalized.push(normalize_row(&schema, row.into_iter().collect())?);
        }
        self.tables.insert(table.clone(), normalized);
        Ok(())
    }

    /// Static validity of a query against the schema: referenced columns
    /// exist and every comparison is kind-compatible, so evaluation cannot
    /// fail midway through a scan.
    pub fn validate_query(&self, q: &Query) -> Result<(), EnforceError> {
        let schema = self.schema(q.table())?;
        let check_pred = |p: &Predicate| -> Result<(), EnforceError> {
            p.validate()?;
            for atom in p.atoms() {
                let col = schema.column(&atom.field).ok_or_else(|| EnforceError::UnknownColumn {
                    table: schema.table.clone(),
                    column: atom.field.as_str().into(),
                })?;
                let compatible = match &atom.rhs {
                    Value::Null => true,
                    v => {
                        col.kind.admits(v)
                            || (matches!(col.kind, crate::schema::ValueKind::Int) && v.is_numeric())
                    }
                };
                if !compatible {
                    return Err(EnforceError::KindMismatch {
                        table: schema.table.clone(),
                        column: atom.field.as_str().into(),
                        expected: col.kind.name(),
                        found: atom.rhs.kind_name(),
                    });
                }
            }
            Ok(())
        };
        let check_assignments = |set: &[(Ident, Value)]| -> Result<(), EnforceError> {
            for (col, val) in set {
                let c = schema.column(col).ok_or_else(|| EnforceError::UnknownColumn {
                    table: schema.table.clone(),
                    column: col.as_str().into(),
                })?;
                if !c.kind.admits(val) {
                    return Err(EnforceError::KindMismatch {
                        table: schema.table.clone(),
                        column: col.as_str().into(),
                        expected: c.kind.name(),
                        found: val.kind_name(),
                    });
                }
            }
            Ok(())
        };
        match q {
            Query::Select(s) => {
                for f in &s.fields {
                    if !schema.has_column(f) {
                        return Err(EnforceError::UnknownColumn {
                            table: schema.table.clone(),
                            column: f.as_str().into(),
                        });
                    }
                }
                check_pred(&s.where_clause)
            }
            Query::Insert(i) => check_assignments(&i.assignments),
            Query::Update(u) => {
                check_assignments(&u.set)?;
                check_pred(&u.where_clause)
            }
            Query::Delete(d) => check_pred(&d.where_clause),
        }
    }

    /// Executes a query. Selects return projected rows; writes mutate and
    /// return the affected-row count.
    pub fn execute(&mut self, q: &Query) -> Result<ExecOutcome, EnforceError> {
        self.validate_query(q)?;
        match q {
            Query::Select(s) => Ok(ExecOutcome::Rows(self.execute_select(s)?)),
            Query::Insert(i) => Ok(ExecOutcome::Count(self.execute_insert(i)?)),
            Query::Update(u) => Ok(ExecOutcome::Count(self.execute_update(u)?)),
            Query::Delete(d) => Ok(ExecOutcome::Count(self.execute_delete(d)?)),
        }
    }

    fn execute_select(&self, s: &Select) -> Result<ResultSet, EnforceError> {
        let rows = self.tables.get(&s.table).map(Vec::as_slice).unwrap_or(&[]);
        let mut out = Vec::new();
        for row in rows {
            if eval_predicate(&s.where_clause, row)? {
                out.push(s.fields.iter().map(|f| row[f].clone()).collect());
            }
        }
        Ok(ResultSet { fields: s.fields.clone(), rows: out })
    }

    fn execute_insert(&mut self, i: &Insert) -> Result<usize, EnforceError> {
        let schema = self.schema(&i.table)?.clone();
        let row = normalize_row(&schema, i.assignments.clone())?;
        self.tables.entry(i.table.clone()).or_default().push(row);
        Ok(1)
    }

    fn execute_update(&mut self, u: &Update) -> Result<usize, EnforceError> {
        let rows = self.tables.entry(u.table.clone()).or_default();
        let mut count = 0;
        for row in rows.iter_mut() {
            if eval_predicate(&u.where_clause, row)? {
                for (col, val) in &u.set {
                    row.insert(col.clone(), val.clone());
                }
                count += 1;
            }
        }
        Ok(count)
    }

    fn execute_delete(&mut self, d: &Delete) -> Result<usize, EnforceError> {
        let rows = self.tables.entry(d.table.clone()).or_default();
        let before = rows.len();
        let mut err = None;
        rows.retain(|row| match eval_predicate(&d.where_clause, row) {
            Ok(matched) => !matched,
            Err(e) => {
                err.get_or_insert(e);
                true
            }
        });
        if let Some(e) = err {
            return Err(e.into());
        }
        Ok(before - rows.len())
    }
}

/// Fills missing columns with null and requires a non-null owner value.
fn normalize_row(schema: &Schema, assignments: Vec<(Ident, Value)>) -> Result<Row, EnforceError> {
    let mut row: Row = schema
        .column_idents()
        .into_iter()
        .map(|c| (c, Value::Null))
        .collect();
    for (col, val) in assignments {
        if !schema.has_column(&col) {
            return Err(EnforceError::UnknownColumn {
                table: schema.table.clone(),
                column: col.as_str().into(),
            });
        }
        row.insert(col, val);
    }
    let owner = schema.owner_ident();
    if row[&owner].is_null() {
        return Err(EnforceError::MissingOwner { table: schema.table.clone() });
    }
    Ok(row)
}
