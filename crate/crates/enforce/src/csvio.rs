//! CSV table fixtures. The header row must match the schema's column order
//! (owner first); an empty cell is null.

use std::path::Path;

use urm_esa::{Ident, Value};

use crate::engine::Row;
use crate::schema::{Schema, ValueKind};
use crate::EnforceError;

fn parse_cell(schema: &Schema, column: &str, kind: ValueKind, cell: &str) -> Result<Value, EnforceError> {
    if cell.is_empty() {
        return Ok(Value::Null);
    }
    let bad = |reason: String| EnforceError::BadCell {
        table: schema.table.clone(),
        column: column.to_string(),
        reason,
    };
    match kind {
        ValueKind::Int => cell
            .parse::<i64>()
            .map(Value::Int)
            .map_err(|e| bad(format!("`{cell}` is not an integer: {e}"))),
        ValueKind::Decimal => match cell.split_once('.') {
            None => cell
                .parse::<i64>()
                .map(Value::Int)
                .map_err(|e| bad(format!("`{cell}` is not a number: {e}"))),
            Some((int, frac)) => {
                if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad(format!("`{cell}` is not a decimal")));
                }
                let joined = format!("{int}{frac}");
                let mantissa = joined
                    .parse::<i128>()
                    .map_err(|e| bad(format!("`{cell}` is not a decimal: {e}")))?;
                Ok(Value::decimal(mantissa, frac.len() as u32))
            }
        },
        ValueKind::Text => Ok(Value::text(cell)),
        ValueKind::Bool => match cell {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            _ => Err(bad(format!("`{cell}` is not a bool"))),
        },
    }
}

fn render_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Text(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn load_table_csv(schema: &Schema, path: &Path) -> Result<Vec<Row>, EnforceError> {
    schema.validate()?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let headers = reader.headers()?.clone();
    let expected: Vec<&str> = schema.columns.iter().map(|c| c.name.as_str()).collect();
    let found: Vec<&str> = headers.iter().collect();
    if found != expected {
        return Err(EnforceError::BadHeader {
            table: schema.table.clone(),
            expected: expected.join(","),
            found: found.join(","),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let mut row = Row::new();
        for (col, cell) in schema.columns.iter().zip(record.iter()) {
            row.insert(
                Ident::new(&col.name),
                parse_cell(schema, &col.name, col.kind, cell)?,
            );
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn save_table_csv(schema: &Schema, rows: &[Row], path: &Path) -> Result<(), EnforceError> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(schema.columns.iter().map(|c| c.name.as_str()))?;
    for row in rows {
        let record: Vec<String> = schema
            .columns
            .iter()
            .map(|c| render_cell(&row[&Ident::new(&c.name)]))
            .collect();
        writer.write_record(&record)?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::Column;

    fn schema() -> Schema {
        Schema {
            table: "T".into(),
            owner_column: "owner".into(),
            columns: vec![
                Column { name: "owner".into(), kind: ValueKind::Text },
                Column { name: "x".into(), kind: ValueKind::Int },
                Column { name: "p".into(), kind: ValueKind::Decimal },
                Column { name: "ok".into(), kind: ValueKind::Bool },
            ],
        }
    }

    #[test]
    fn roundtrips_through_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        std::fs::write(&path, "owner,x,p,ok\nBob,52,1.5,true\nCarol,,2,\n").unwrap();
        let rows = load_table_csv(&schema(), &path).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0][&Ident::new("p")], Value::decimal(15, 1));
        assert_eq!(rows[1][&Ident::new("x")], Value::Null);
        assert_eq!(rows[1][&Ident::new("ok")], Value::Null);

        let out = dir.path().join("out.csv");
        save_table_csv(&schema(), &rows, &out).unwrap();
        let again = load_table_csv(&schema(), &out).unwrap();
        assert_eq!(rows, again);
    }

    #[test]
    fn header_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        std::fs::write(&path, "x,owner,p,ok\n").unwrap();
        assert!(matches!(
            load_table_csv(&schema(), &path),
            Err(EnforceError::BadHeader { .. })
        ));
    }
}
