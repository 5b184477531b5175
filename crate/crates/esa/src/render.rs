//! Canonical text rendering and the rule-based natural-language translation.

use crate::agreement::{Esa, EsaKind, PURPOSE_FIELD, REQUESTER_FIELD};
use crate::predicate::{CmpOp, Comparison, Predicate};
use crate::value::Value;

/// Canonical predicate text. Deterministic: single spaces, lowercase
/// connectives, nested connectives parenthesised, strings double-quoted.
pub fn render_predicate(p: &Predicate) -> String {
    fn part(p: &Predicate, out: &mut String) {
        match p {
            Predicate::And(_) | Predicate::Or(_) => {
                out.push('(');
                top(p, out);
                out.push(')');
            }
            _ => top(p, out),
        }
    }
    fn top(p: &Predicate, out: &mut String) {
        match p {
            Predicate::True => out.push_str("true"),
            Predicate::False => out.push_str("false"),
            Predicate::Atom(c) => out.push_str(&c.to_string()),
            Predicate::And(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" and ");
                    }
                    part(x, out);
                }
            }
            Predicate::Or(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" or ");
                    }
                    part(x, out);
                }
            }
        }
    }
    let mut out = String::new();
    top(p, &mut out);
    out
}

/// Canonical agreement text: the inverse of parsing. Field lists render in
/// their canonical (case-insensitive) order, read agreements always spell
/// out their row predicate, write agreements end at `.write`.
pub fn render_esa(esa: &Esa) -> String {
    let consumer = if esa.consumer.is_bare() {
        esa.consumer.as_str().to_string()
    } else {
        Value::text(esa.consumer.as_str()).to_string()
    };
    let fields: Vec<&str> = esa.fields.iter().map(|f| f.as_str()).collect();
    let mut out = format!(
        "{consumer}, {} : [{}] of {}",
        render_predicate(&esa.context_predicate),
        fields.join(", "),
        esa.domain,
    );
    match esa.kind {
        EsaKind::Write => out.push_str(".write"),
        EsaKind::Read => {
            out.push_str(", ");
            out.push_str(&render_predicate(&esa.row_predicate));
        }
    }
    out
}

fn op_phrase(op: CmpOp) -> &'static str {
    match op {
        CmpOp::Eq => "equal to",
        CmpOp::Ne => "not equal to",
        CmpOp::Lt => "less than",
        CmpOp::Le => "less than or equal to",
        CmpOp::Gt => "greater than",
        CmpOp::Ge => "greater than or equal to",
    }
}

fn value_phrase(v: &Value) -> String {
    match v {
        Value::Text(s) => s.clone(),
        other => other.to_string(),
    }
}

fn atom_phrase(c: &Comparison) -> String {
    format!("the {} is {} {}", c.field, op_phrase(c.op), value_phrase(&c.rhs))
}

fn predicate_phrase(p: &Predicate) -> String {
    fn part(p: &Predicate) -> String {
        match p {
            Predicate::And(_) | Predicate::Or(_) => format!("({})", predicate_phrase(p)),
            _ => predicate_phrase(p),
        }
    }
    match p {
        Predicate::True => "always".to_string(),
        Predicate::False => "never".to_string(),
        Predicate::Atom(c) => atom_phrase(c),
        Predicate::And(xs) => xs.iter().map(part).collect::<Vec<_>>().join(" and "),
        Predicate::Or(xs) => xs.iter().map(part).collect::<Vec<_>>().join(" or "),
    }
}

/// The fields as prose: "the age, ethnicity and PSA".
fn fields_phrase(esa: &Esa) -> String {
    let names: Vec<&str> = esa.fields.iter().map(|f| f.as_str()).collect();
    let mut out = String::from("the ");
    match names.len() {
        1 => out.push_str(names[0]),
        n => {
            out.push_str(&names[..n - 1].join(", "));
            out.push_str(" and ");
            out.push_str(names[n - 1]);
        }
    }
    out
}

/// Looks up `field = <text>` among the top-level conjuncts of the context
/// predicate.
fn context_equality(p: &Predicate, field: &str) -> Option<String> {
    let conjuncts: Vec<&Predicate> = match p {
        Predicate::And(xs) => xs.iter().collect(),
        other => vec![other],
    };
    conjuncts.iter().find_map(|c| match c {
        Predicate::Atom(Comparison { field: f, op: CmpOp::Eq, rhs: Value::Text(v) })
            if f.as_str() == field =>
        {
            Some(v.clone())
        }
        _ => None,
    })
}

/// Rule-based translation to a natural-language sentence.
///
/// Deterministic by construction; the sentence follows the template
/// "<requester> can read the <fields> of <consumer>'s <domain> for <purpose>
/// and if <row predicate>." with `store` as the verb for write agreements
/// and the trailing clause elided when the row predicate is vacuous.
pub fn render_natural_language(esa: &Esa) -> String {
    let requester =
        context_equality(&esa.context_predicate, REQUESTER_FIELD).unwrap_or_else(|| "Anyone".into());
    let purpose =
        context_equality(&esa.context_predicate, PURPOSE_FIELD).unwrap_or_else(|| "any purpose".into());
    let verb = match esa.kind {
        EsaKind::Read => "read",
        EsaKind::Write => "store",
    };
    let mut out = format!(
        "{requester} can {verb} {} of {}'s {} for {purpose}",
        fields_phrase(esa),
        esa.consumer,
        esa.domain,
    );
    if esa.row_predicate != Predicate::True {
        out.push_str(" and if ");
        out.push_str(&predicate_phrase(&esa.row_predicate));
    }
    out.push('.');
    out
}
