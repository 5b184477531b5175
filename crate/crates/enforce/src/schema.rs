//! Table schemas. Every table carries an owner column naming the consumer
//! whose agreement protects each row.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use urm_esa::{Ident, Value};

use crate::entail::FieldDomain;
use crate::EnforceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    Int,
    Decimal,
    Text,
    Bool,
}

impl ValueKind {
    /// Null is storable in any column; decimal columns also admit integral
    /// values.
    pub fn admits(&self, v: &Value) -> bool {
        match (self, v) {
            (_, Value::Null) => true,
            (ValueKind::Int, Value::Int(_)) => true,
            (ValueKind::Decimal, Value::Int(_) | Value::Decimal(_)) => true,
            (ValueKind::Text, Value::Text(_)) => true,
            (ValueKind::Bool, Value::Bool(_)) => true,
            _ => false,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ValueKind::Int => "int",
            ValueKind::Decimal => "decimal",
            ValueKind::Text => "text",
            ValueKind::Bool => "bool",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub kind: ValueKind,
}

/// One table's shape: ordered columns, the first of which is the owner
/// column.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Schema {
    pub table: String,
    pub columns: Vec<Column>,
    pub owner_column: String,
}

impl Schema {
    pub fn table_ident(&self) -> Ident {
        Ident::new(&self.table)
    }

    pub fn owner_ident(&self) -> Ident {
        Ident::new(&self.owner_column)
    }

    pub fn column(&self, name: &Ident) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name.as_str())
    }

    pub fn has_column(&self, name: &Ident) -> bool {
        self.column(name).is_some()
    }

    pub fn column_idents(&self) -> Vec<Ident> {
        self.columns.iter().map(|c| Ident::new(&c.name)).collect()
    }

    pub fn validate(&self) -> Result<(), EnforceError> {
        if self.columns.is_empty() {
            return Err(EnforceError::BadSchema {
                table: self.table.clone(),
                reason: "no columns".into(),
            });
        }
        let mut seen = BTreeMap::new();
        for c in &self.columns {
            if seen.insert(c.name.clone(), ()).is_some() {
                return Err(EnforceError::BadSchema {
                    table: self.table.clone(),
                    reason: format!("duplicate column `{}`", c.name),
                });
            }
        }
        match self.columns.first() {
            Some(first) if first.name == self.owner_column => {}
            _ => {
                return Err(EnforceError::BadSchema {
                    table: self.table.clone(),
                    reason: format!("first column must be the owner column `{}`", self.owner_column),
                })
            }
        }
        let owner = self.columns.first().unwrap();
        if owner.kind != ValueKind::Text {
            return Err(EnforceError::BadSchema {
                table: self.table.clone(),
                reason: "owner column must be text".into(),
            });
        }
        Ok(())
    }

    /// Value domains used by the entailment procedure: integers unbounded,
    /// text over mentioned literals plus a fresh witness.
    pub fn domains(&self) -> BTreeMap<Ident, FieldDomain> {
        self.columns
            .iter()
            .map(|c| {
                let dom = match c.kind {
                    ValueKind::Int => FieldDomain::Int { min: None, max: None },
                    ValueKind::Decimal => FieldDomain::Decimal,
                    ValueKind::Text => FieldDomain::Text,
                    ValueKind::Bool => FieldDomain::Bool,
                };
                (Ident::new(&c.name), dom)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn ehr() -> Schema {
        Schema {
            table: "EHR".into(),
            owner_column: "person".into(),
            columns: vec![
                Column { name: "person".into(), kind: ValueKind::Text },
                Column { name: "name".into(), kind: ValueKind::Text },
                Column { name: "age".into(), kind: ValueKind::Int },
                Column { name: "ethnicity".into(), kind: ValueKind::Text },
                Column { name: "PSA".into(), kind: ValueKind::Decimal },
                Column { name: "phone".into(), kind: ValueKind::Text },
                Column { name: "medication".into(), kind: ValueKind::Text },
                Column { name: "smoker".into(), kind: ValueKind::Bool },
                Column { name: "consumesAlcohol".into(), kind: ValueKind::Bool },
            ],
        }
    }

    #[test]
    fn owner_must_come_first() {
        let mut s = ehr();
        s.validate().unwrap();
        s.columns.swap(0, 1);
        assert!(matches!(s.validate(), Err(EnforceError::BadSchema { .. })));
    }

    #[test]
    fn kinds_admit_expected_values() {
        assert!(ValueKind::Decimal.admits(&Value::Int(2)));
        assert!(ValueKind::Decimal.admits(&Value::decimal(15, 1)));
        assert!(!ValueKind::Int.admits(&Value::decimal(15, 1)));
        assert!(ValueKind::Int.admits(&Value::Null));
        assert!(!ValueKind::Bool.admits(&Value::text("true")));
    }
}
