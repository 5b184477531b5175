//! The minimal query language mirroring the stored SQL fragments:
//! SELECT/INSERT/UPDATE/DELETE over one table with the agreement-language
//! predicate grammar.

use std::fmt;

use urm_esa::parse::Cursor;
use urm_esa::{render_predicate, Ident, Predicate, Value};

use crate::EnforceError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Select {
    pub table: Ident,
    pub fields: Vec<Ident>,
    pub where_clause: Predicate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Insert {
    pub table: Ident,
    pub assignments: Vec<(Ident, Value)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Update {
    pub table: Ident,
    pub set: Vec<(Ident, Value)>,
    pub where_clause: Predicate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delete {
    pub table: Ident,
    pub where_clause: Predicate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Select(Select),
    Insert(Insert),
    Update(Update),
    Delete(Delete),
}

impl Query {
    pub fn table(&self) -> &Ident {
        match self {
            Query::Select(q) => &q.table,
            Query::Insert(q) => &q.table,
            Query::Update(q) => &q.table,
            Query::Delete(q) => &q.table,
        }
    }

    pub fn is_write(&self) -> bool {
        !matches!(self, Query::Select(_))
    }
}

/// Parses the textual query form. SQL keywords are case-insensitive;
/// identifiers and the predicate grammar are those of the agreement
/// language.
pub fn parse_query(text: &str) -> Result<Query, EnforceError> {
    let mut cur = Cursor::new(text)?;
    let q = if cur.eat_keyword("select") {
        cur.expect_punct('[')?;
        let mut fields = vec![cur.expect_ident()?];
        while cur.eat_punct(',') {
            fields.push(cur.expect_ident()?);
        }
        cur.expect_punct(']')?;
        cur.expect_keyword("from")?;
        let table = cur.expect_ident()?;
        let where_clause = parse_where(&mut cur)?;
        Query::Select(Select { table, fields, where_clause })
    } else if cur.eat_keyword("insert") {
        cur.expect_keyword("into")?;
        let table = cur.expect_ident()?;
        cur.expect_keyword("set")?;
        let assignments = parse_assignments(&mut cur)?;
        Query::Insert(Insert { table, assignments })
    } else if cur.eat_keyword("update") {
        let table = cur.expect_ident()?;
        cur.expect_keyword("set")?;
        let set = parse_assignments(&mut cur)?;
        let where_clause = parse_where(&mut cur)?;
        Query::Update(Update { table, set, where_clause })
    } else if cur.eat_keyword("delete") {
        cur.expect_keyword("from")?;
        let table = cur.expect_ident()?;
        let where_clause = parse_where(&mut cur)?;
        Query::Delete(Delete { table, where_clause })
    } else {
        return Err(cur
            .error("expected SELECT, INSERT, UPDATE or DELETE")
            .into());
    };
    cur.expect_end()?;
    Ok(q)
}

fn parse_where(cur: &mut Cursor) -> Result<Predicate, EnforceError> {
    if cur.eat_keyword("where") {
        Ok(cur.parse_predicate()?)
    } else {
        Ok(Predicate::True)
    }
}

fn parse_assignments(cur: &mut Cursor) -> Result<Vec<(Ident, Value)>, EnforceError> {
    let mut out = Vec::new();
    loop {
        let col = cur.expect_ident()?;
        match cur.advance() {
            Some(urm_esa::parse::Tok::Op(urm_esa::CmpOp::Eq)) => {}
            _ => return Err(cur.error("expected `=` in assignment").into()),
        }
        let val = cur.expect_literal()?;
        out.push((col, val));
        // A comma continues the SET list only if another assignment follows;
        // DELETE/UPDATE never follow SET with a comma otherwise.
        if !cur.eat_punct(',') {
            break;
        }
    }
    Ok(out)
}

fn fmt_assignments(out: &mut fmt::Formatter<'_>, set: &[(Ident, Value)]) -> fmt::Result {
    for (i, (col, val)) in set.iter().enumerate() {
        if i > 0 {
            out.write_str(", ")?;
        }
        write!(out, "{col} = {val}")?;
    }
    Ok(())
}

impl fmt::Display for Select {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fields: Vec<&str> = self.fields.iter().map(|f| f.as_str()).collect();
        write!(
            f,
            "SELECT [{}] FROM {} WHERE {}",
            fields.join(", "),
            self.table,
            render_predicate(&self.where_clause)
        )
    }
}

impl fmt::Display for Insert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "INSERT INTO {} SET ", self.table)?;
        fmt_assignments(f, &self.assignments)
    }
}

impl fmt::Display for Update {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPDATE {} SET ", self.table)?;
        fmt_assignments(f, &self.set)?;
        write!(f, " WHERE {}", render_predicate(&self.where_clause))
    }
}

impl fmt::Display for Delete {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DELETE FROM {} WHERE {}",
            self.table,
            render_predicate(&self.where_clause)
        )
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Select(q) => q.fmt(f),
            Query::Insert(q) => q.fmt(f),
            Query::Update(q) => q.fmt(f),
            Query::Delete(q) => q.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_select_with_bracketed_fields() {
        let q = parse_query("SELECT [age, name] FROM EHR WHERE PSA >= 5").unwrap();
        match q {
            Query::Select(s) => {
                assert_eq!(s.table.as_str(), "EHR");
                assert_eq!(s.fields.len(), 2);
                assert_eq!(s.where_clause.to_owned(), urm_esa::parse_predicate_str("PSA >= 5").unwrap());
            }
            other => panic!("expected select, got {other:?}"),
        }
    }

    #[test]
    fn parses_the_reference_insert() {
        let q = parse_query(
            "INSERT INTO EHR SET person = \"Bob\", age = 52, ethnicity = white, PSA = 1.5, \
             phone = \"555-555-5555\", smoker = TRUE, consumesAlcohol = FALSE",
        )
        .unwrap();
        match q {
            Query::Insert(i) => {
                assert_eq!(i.assignments.len(), 7);
                assert_eq!(i.assignments[0].1, Value::text("Bob"));
                assert_eq!(i.assignments[3].1, Value::decimal(15, 1));
                assert_eq!(i.assignments[5].1, Value::Bool(true));
                // Bare `white` is a text literal.
                assert_eq!(i.assignments[2].1, Value::text("white"));
            }
            other => panic!("expected insert, got {other:?}"),
        }
    }

    #[test]
    fn missing_where_means_true() {
        let q = parse_query("delete from EHR").unwrap();
        match q {
            Query::Delete(d) => assert_eq!(d.where_clause, Predicate::True),
            other => panic!("expected delete, got {other:?}"),
        }
    }

    #[test]
    fn renders_canonically_and_roundtrips() {
        let texts = [
            "SELECT [age] FROM EHR WHERE PSA >= 5 and (person = \"Bob\" and true and PSA >= 2)",
            "INSERT INTO EHR SET person = \"Bob\", age = 52",
            "UPDATE EHR SET medication = null WHERE person = \"Bob\"",
            "DELETE FROM EHR WHERE false",
        ];
        for text in texts {
            let q = parse_query(text).unwrap();
            assert_eq!(q.to_string(), text);
            assert_eq!(parse_query(&q.to_string()).unwrap(), q);
        }
    }

    #[test]
    fn rejects_unknown_statements() {
        assert!(parse_query("DROP TABLE EHR").is_err());
        assert!(parse_query("SELECT [age] FROM EHR WHERE").is_err());
    }
}
