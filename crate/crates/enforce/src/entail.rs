//! Entailment over the agreement predicate fragment.
//!
//! `pi ⊨ phi` holds when every assignment over the declared value domains
//! that satisfies `pi` also satisfies `phi`. The fragment has no joins and
//! no arithmetic, so predicate truth is constant on the cells induced by the
//! constants each predicate mentions. Checking one representative per cell
//! is therefore exact, and no external solver is needed:
//!
//! - integer fields: every mentioned constant plus its immediate neighbours,
//!   clamped to the declared bounds;
//! - decimal fields: mentioned constants, midpoints of adjacent constants,
//!   and one point beyond each extreme;
//! - text fields: mentioned literals plus one fresh witness;
//! - boolean fields: both values.
//!
//! Domains exclude null: masked values are filtered at execution time, and
//! audited predicates speak about rows that were actually returned.

use std::collections::{BTreeMap, BTreeSet};

use urm_esa::{Comparison, Decimal, Ident, Predicate, Value};

/// Declared value domain of one field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldDomain {
    Int { min: Option<i64>, max: Option<i64> },
    Decimal,
    Text,
    Bool,
}

pub type DomainMap = BTreeMap<Ident, FieldDomain>;

/// Total evaluation for grid points: a kind-incompatible atom is simply
/// false rather than an error.
fn eval_total(p: &Predicate, assignment: &BTreeMap<Ident, Value>) -> bool {
    match p {
        Predicate::True => true,
        Predicate::False => false,
        Predicate::Atom(c) => assignment
            .get(&c.field)
            .map(|lhs| c.matches(lhs).unwrap_or(false))
            .unwrap_or(false),
        Predicate::And(xs) => xs.iter().all(|x| eval_total(x, assignment)),
        Predicate::Or(xs) => xs.iter().any(|x| eval_total(x, assignment)),
    }
}

fn numeric_constants(atoms: &[&Comparison], field: &Ident) -> Vec<Decimal> {
    let mut out: Vec<Decimal> = Vec::new();
    for a in atoms {
        if &a.field == field {
            if let Some(d) = a.rhs.as_decimal() {
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
    }
    out.sort_by(|a, b| a.cmp_exact(b));
    out
}

fn text_constants(atoms: &[&Comparison], field: &Ident) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for a in atoms {
        if &a.field == field {
            if let Value::Text(s) = &a.rhs {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        }
    }
    out
}

/// Representative points for one field. An empty vector means the declared
/// domain itself is empty (e.g. an inverted integer range).
fn field_points(atoms: &[&Comparison], field: &Ident, domain: FieldDomain) -> Vec<Value> {
    match domain {
        FieldDomain::Bool => vec![Value::Bool(false), Value::Bool(true)],
        FieldDomain::Text => {
            let mut lits = text_constants(atoms, field);
            let mut fresh = String::from("~fresh~");
            while lits.contains(&fresh) {
                fresh.push('~');
            }
            lits.push(fresh);
            lits.into_iter().map(Value::Text).collect()
        }
        FieldDomain::Int { min, max } => {
            let clamp = |x: i128| -> i64 { x.clamp(i64::MIN as i128, i64::MAX as i128) as i64 };
            let mut pts: BTreeSet<i64> = BTreeSet::new();
            for c in numeric_constants(atoms, field) {
                let (fl, ce) = (c.floor(), c.ceil());
                for p in [fl - 1, fl, ce, ce + 1] {
                    pts.insert(clamp(p));
                }
            }
            if let Some(lo) = min {
                pts.insert(lo);
            }
            if let Some(hi) = max {
                pts.insert(hi);
            }
            if pts.is_empty() {
                pts.insert(0);
            }
            pts.into_iter()
                .filter(|p| min.map_or(true, |lo| *p >= lo) && max.map_or(true, |hi| *p <= hi))
                .map(Value::Int)
                .collect()
        }
        FieldDomain::Decimal => {
            let consts = numeric_constants(atoms, field);
            if consts.is_empty() {
                return vec![Value::Int(0)];
            }
            let mut pts: Vec<Decimal> = Vec::new();
            pts.push(consts[0].offset_int(-1));
            for (i, c) in consts.iter().enumerate() {
                pts.push(*c);
                if let Some(next) = consts.get(i + 1) {
                    pts.push(Decimal::midpoint(c, next));
                }
            }
            pts.push(consts[consts.len() - 1].offset_int(1));
            pts.into_iter()
                .map(|d| Value::decimal(d.mantissa(), d.scale()))
                .collect()
        }
    }
}

/// Domain for a field nobody declared: dense numeric if it is compared
/// against numbers, text otherwise.
fn inferred_domain(atoms: &[&Comparison], field: &Ident) -> FieldDomain {
    if !numeric_constants(atoms, field).is_empty() {
        FieldDomain::Decimal
    } else {
        FieldDomain::Text
    }
}

fn grid(preds: &[&Predicate], domains: &DomainMap) -> Option<Vec<BTreeMap<Ident, Value>>> {
    let mut atoms = Vec::new();
    for p in preds {
        atoms.extend(p.atoms());
    }
    let mut fields: Vec<Ident> = Vec::new();
    for a in &atoms {
        if !fields.contains(&a.field) {
            fields.push(a.field.clone());
        }
    }
    let mut assignments: Vec<BTreeMap<Ident, Value>> = vec![BTreeMap::new()];
    for f in &fields {
        let dom = domains.get(f).copied().unwrap_or_else(|| inferred_domain(&atoms, f));
        let pts = field_points(&atoms, f, dom);
        if pts.is_empty() {
            // Empty declared domain: no assignments exist at all.
            return None;
        }
        let mut next = Vec::with_capacity(assignments.len() * pts.len());
        for a in &assignments {
            for v in &pts {
                let mut b = a.clone();
                b.insert(f.clone(), v.clone());
                next.push(b);
            }
        }
        assignments = next;
    }
    Some(assignments)
}

/// True iff every assignment over the declared domains satisfying `pi` also
/// satisfies `phi`. Total: never errors.
pub fn entails(pi: &Predicate, phi: &Predicate, domains: &DomainMap) -> bool {
    match grid(&[pi, phi], domains) {
        None => true, // empty domain: vacuous
        Some(points) => points
            .iter()
            .all(|a| !eval_total(pi, a) || eval_total(phi, a)),
    }
}

/// True iff some assignment over the declared domains satisfies `p`.
pub fn satisfiable(p: &Predicate, domains: &DomainMap) -> bool {
    match grid(&[p], domains) {
        None => false,
        Some(points) => points.iter().any(|a| eval_total(p, a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use urm_esa::parse_predicate_str as pp;

    fn int_domains(bound: Option<(i64, i64)>) -> DomainMap {
        let dom = match bound {
            Some((lo, hi)) => FieldDomain::Int { min: Some(lo), max: Some(hi) },
            None => FieldDomain::Int { min: None, max: None },
        };
        [(Ident::new("x"), dom), (Ident::new("y"), dom)].into_iter().collect()
    }

    #[test]
    fn false_entails_anything() {
        let d = int_domains(None);
        assert!(entails(&Predicate::False, &pp("x = 1").unwrap(), &d));
        assert!(entails(&pp("x > 1 and x < 1").unwrap(), &Predicate::False, &d));
    }

    #[test]
    fn interval_containment() {
        let d = int_domains(None);
        assert!(entails(&pp("PSA >= 3").unwrap(), &pp("PSA >= 2").unwrap(), &d));
        assert!(!entails(&pp("PSA >= 2").unwrap(), &pp("PSA >= 3").unwrap(), &d));
    }

    #[test]
    fn disjunctive_cover_is_recognized() {
        // A disjunction can cover even when no single disjunct does.
        let d = int_domains(None);
        assert!(entails(&Predicate::True, &pp("x < 4 or x >= 4").unwrap(), &d));
        assert!(entails(&pp("x >= 0").unwrap(), &pp("x <= 10 or x >= 5").unwrap(), &d));
    }

    #[test]
    fn bounds_matter() {
        // Over 0..=7 every x >= 6 is <= 7; over unbounded integers it is not.
        let bounded = int_domains(Some((0, 7)));
        let unbounded = int_domains(None);
        let pi = pp("x >= 6").unwrap();
        let phi = pp("x <= 7").unwrap();
        assert!(entails(&pi, &phi, &bounded));
        assert!(!entails(&pi, &phi, &unbounded));
    }

    #[test]
    fn dense_versus_integral_gaps() {
        // No integer sits strictly between 1 and 2, but a decimal does.
        let int_d = int_domains(None);
        let pi = pp("x > 1 and x < 2").unwrap();
        assert!(!satisfiable(&pi, &int_d));
        let dec_d: DomainMap =
            [(Ident::new("x"), FieldDomain::Decimal)].into_iter().collect();
        assert!(satisfiable(&pi, &dec_d));
    }

    #[test]
    fn text_fresh_witness_blocks_overclaims() {
        let d: DomainMap = [(Ident::new("s"), FieldDomain::Text)].into_iter().collect();
        // Knowing s != "a" does not pin s to "b".
        assert!(!entails(&pp("s != \"a\"").unwrap(), &pp("s = \"b\"").unwrap(), &d));
        assert!(entails(&pp("s = \"a\"").unwrap(), &pp("s != \"b\"").unwrap(), &d));
    }

    #[test]
    fn decimal_constants_partition_integer_fields() {
        let d = int_domains(None);
        // Over integers, x > 1.5 is exactly x >= 2.
        assert!(entails(&pp("x > 1.5").unwrap(), &pp("x >= 2").unwrap(), &d));
        assert!(entails(&pp("x >= 2").unwrap(), &pp("x > 1.5").unwrap(), &d));
    }

    /// Brute-force oracle over small bounded integer domains, evaluated with
    /// the public (erroring) evaluator rather than the grid machinery.
    fn oracle_entails(pi: &Predicate, phi: &Predicate, lo: i64, hi: i64) -> bool {
        for x in lo..=hi {
            for y in lo..=hi {
                let a: urm_esa::Assignment = [
                    (Ident::new("x"), Value::Int(x)),
                    (Ident::new("y"), Value::Int(y)),
                ]
                .into_iter()
                .collect();
                if urm_esa::eval_predicate(pi, &a).unwrap()
                    && !urm_esa::eval_predicate(phi, &a).unwrap()
                {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn randomized_agreement_with_brute_force() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let d = int_domains(Some((0, 7)));
        let ops = [
            urm_esa::CmpOp::Eq,
            urm_esa::CmpOp::Ne,
            urm_esa::CmpOp::Lt,
            urm_esa::CmpOp::Le,
            urm_esa::CmpOp::Gt,
            urm_esa::CmpOp::Ge,
        ];
        fn gen_pred(rng: &mut impl rand::Rng, depth: u32, ops: &[urm_esa::CmpOp]) -> Predicate {
            if depth == 0 || rng.gen_bool(0.5) {
                let field = if rng.gen_bool(0.5) { "x" } else { "y" };
                let op = ops[rng.gen_range(0..ops.len())];
                return Predicate::atom(field, op, Value::Int(rng.gen_range(-1..9)));
            }
            let n = rng.gen_range(2..4);
            let parts: Vec<Predicate> =
                (0..n).map(|_| gen_pred(rng, depth - 1, ops)).collect();
            if rng.gen_bool(0.5) {
                Predicate::And(parts)
            } else {
                Predicate::Or(parts)
            }
        }
        for _ in 0..300 {
            let pi = gen_pred(&mut rng, 3, &ops);
            let phi = gen_pred(&mut rng, 3, &ops);
            assert_eq!(
                entails(&pi, &phi, &d),
                oracle_entails(&pi, &phi, 0, 7),
                "pi = {pi:?}, phi = {phi:?}"
            );
        }
    }
}
