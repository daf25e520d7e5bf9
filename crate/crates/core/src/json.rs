//! Canonical JSON encoding of matrices, formal sums, tables, Farey paths,
//! coset sums and period vectors, with the matching imports.
//!
//! Matrix entries are decimal strings. Object keys come out sorted because
//! `serde_json::Map` is ordered, so encoding the same value twice gives the
//! same bytes.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::cosets::CosetTable;
use crate::error::{Error, Result};
use crate::formal::{Beta, FormalSum, LewisReport, PeriodVector, Seed};
use crate::gl2::{CosetKey, Mat2};
use crate::hecke::CosetSum;
use crate::stern::FareyPath;

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got {v}"))
}

fn int_to_json(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

/// Reads an integer given as a decimal string or a JSON integer.
pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => BigInt::from_str(s).map_err(|_| parse_err("a decimal integer", v)),
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| parse_err("an integer", v)),
        _ => Err(parse_err("an integer", v)),
    }
}

fn u64_field(obj: &Value, key: &str) -> Result<u64> {
    obj.get(key).and_then(Value::as_u64).ok_or_else(|| Error::Parse(format!("missing or invalid field \"{key}\"")))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(what, v))
}

/// [["a","b"],["c","d"]].
pub fn mat_to_json(m: &Mat2) -> Value {
    json!([[int_to_json(&m.a), int_to_json(&m.b)], [int_to_json(&m.c), int_to_json(&m.d)]])
}

pub fn mat_from_json(v: &Value) -> Result<Mat2> {
    let rows = array(v, "a 2×2 matrix")?;
    if rows.len() != 2 {
        return Err(parse_err("a 2×2 matrix", v));
    }
    let mut e = Vec::with_capacity(4);
    for row in rows {
        let row = array(row, "a matrix row")?;
        if row.len() != 2 {
            return Err(parse_err("a matrix row of length 2", v));
        }
        for x in row {
            e.push(int_from_json(x)?);
        }
    }
    let [a, b, c, d]: [BigInt; 4] = e.try_into().expect("four entries");
    Ok(Mat2 { a, b, c, d })
}

/// Coefficients that fit in i64 become JSON integers, others decimal strings.
fn coeff_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(k) => json!(k),
        None => int_to_json(c),
    }
}

/// [{"coeff": c, "matrix": [[..],[..]]}, …] in canonical matrix order.
pub fn formal_sum_to_json(w: &FormalSum) -> Value {
    Value::Array(w.iter().map(|(m, c)| json!({"coeff": coeff_to_json(c), "matrix": mat_to_json(m)})).collect())
}

pub fn formal_sum_from_json(v: &Value) -> Result<FormalSum> {
    let terms = array(v, "a list of terms")?
        .iter()
        .map(|t| Ok((mat_from_json(field(t, "matrix")?)?, int_from_json(field(t, "coeff")?)?)))
        .collect::<Result<Vec<_>>>()?;
    FormalSum::try_from_terms(terms)
}

/// {"n", "mu", "entries": [{"ordinal","c","b","d","A","R","h","class"}]}.
pub fn table_to_json(t: &CosetTable) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|e| {
            json!({
                "ordinal": e.ordinal,
                "c": e.c,
                "b": e.b,
                "d": e.d,
                "A": mat_to_json(&e.a_mat),
                "R": mat_to_json(&e.r),
                "h": t.h[e.ordinal],
                "class": [e.class.0, e.class.1],
            })
        })
        .collect();
    json!({"n": t.n, "mu": t.mu, "entries": entries})
}

/// Reads an exported table back: rebuilds the table of the stated level and
/// rejects the document unless it matches entry for entry.
pub fn table_from_json(v: &Value) -> Result<std::sync::Arc<CosetTable>> {
    let n = u64_field(v, "n")?;
    if n == 0 {
        return Err(Error::Parse("table level must be positive".into()));
    }
    let t = CosetTable::get(n)?;
    if table_to_json(&t) != *v {
        return Err(Error::Parse(format!("document is not the index table of level {n}")));
    }
    Ok(t)
}

/// {"q": "a/b", "points": ["-1/0", …], "m": [matrices]}.
pub fn farey_to_json(p: &FareyPath) -> Value {
    let points: Vec<Value> = p.num.iter().zip(&p.den).map(|(a, b)| Value::String(format!("{a}/{b}"))).collect();
    json!({
        "q": p.q.to_string(),
        "points": points,
        "m": p.m.iter().map(mat_to_json).collect::<Vec<_>>(),
    })
}

pub fn farey_from_json(v: &Value) -> Result<FareyPath> {
    let q = field(v, "q")?.as_str().ok_or_else(|| Error::Parse("\"q\" must be a string".into()))?;
    let q = parse_rational(q)?;
    let mut num = Vec::new();
    let mut den = Vec::new();
    for pt in array(field(v, "points")?, "a list of points")? {
        let s = pt.as_str().ok_or_else(|| parse_err("a fraction string", pt))?;
        let (a, b) = s.split_once('/').ok_or_else(|| parse_err("a/b", pt))?;
        num.push(BigInt::from_str(a).map_err(|_| parse_err("a/b", pt))?);
        den.push(BigInt::from_str(b).map_err(|_| parse_err("a/b", pt))?);
    }
    let m = array(field(v, "m")?, "a list of matrices")?.iter().map(mat_from_json).collect::<Result<_>>()?;
    let path = FareyPath { q, num, den, m };
    if path.num.len() != path.m.len() + 1 {
        return Err(Error::Parse("Farey path has inconsistent lengths".into()));
    }
    path.check()?;
    Ok(path)
}

/// Parses "a/b" or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("expected a rational a/b, got \"{s}\""));
    match s.split_once('/') {
        Some((a, b)) => {
            let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if b == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s.trim()).map_err(|_| bad())?)),
    }
}

/// {"level", "cosets": [{"class": [c, d], "hnf": matrix, "multiplicity": k}]}.
pub fn coset_sum_to_json(s: &CosetSum) -> Value {
    let cosets: Vec<Value> = s
        .keys
        .iter()
        .map(|(k, m)| json!({"class": [k.class.0, k.class.1], "hnf": mat_to_json(&k.hnf), "multiplicity": m}))
        .collect();
    json!({"level": s.level, "cosets": cosets})
}

pub fn coset_sum_from_json(v: &Value) -> Result<CosetSum> {
    let level = u64_field(v, "level")?;
    let mut s = CosetSum::new(level);
    for c in array(field(v, "cosets")?, "a list of cosets")? {
        let class = array(field(c, "class")?, "a class pair")?;
        let pair: Vec<u64> = class.iter().filter_map(Value::as_u64).collect();
        if pair.len() != 2 {
            return Err(parse_err("a class pair", c));
        }
        let key = CosetKey { level, class: (pair[0], pair[1]), hnf: mat_from_json(field(c, "hnf")?)? };
        s.insert(key, u64_field(c, "multiplicity")?);
    }
    Ok(s)
}

/// {"level", "seed", "beta", "weights": [formal sums]}.
pub fn weights_to_json(v: &PeriodVector) -> Value {
    json!({
        "level": v.n,
        "seed": v.seed.name(),
        "beta": v.beta.to_string(),
        "weights": v.weights.iter().map(formal_sum_to_json).collect::<Vec<_>>(),
    })
}

pub fn weights_from_json(v: &Value) -> Result<PeriodVector> {
    let n = u64_field(v, "level")?;
    let seed =
        Seed::parse(field(v, "seed")?.as_str().ok_or_else(|| Error::Parse("\"seed\" must be a string".into()))?)?;
    let beta =
        Beta::parse(field(v, "beta")?.as_str().ok_or_else(|| Error::Parse("\"beta\" must be a string".into()))?)?;
    let weights = array(field(v, "weights")?, "a list of formal sums")?
        .iter()
        .map(formal_sum_from_json)
        .collect::<Result<Vec<_>>>()?;
    Ok(PeriodVector::new(n, seed, beta, weights))
}

/// {"n", "beta", "mode", "components": [{"index","status","failPoints"}]}.
pub fn lewis_report_to_json(r: &LewisReport) -> Value {
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| json!({"index": c.index, "status": c.status.name(), "failPoints": c.fail_points}))
        .collect();
    json!({"n": r.n, "beta": r.beta.to_string(), "mode": r.mode.name(), "components": components})
}

/// Pretty-printed canonical form followed by a newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// An empty JSON object, for building records field by field.
pub fn object() -> Map<String, Value> {
    Map::new()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stern::{farey_path, psi_total, psi_vector};

    #[test]
    fn psi_one_export() {
        let v = formal_sum_to_json(&psi_total(1).unwrap());
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[{"coeff":1,"matrix":[["1","0"],["0","1"]]}]"#);
    }

    #[test]
    fn round_trips() {
        let t = CosetTable::get(6).unwrap();
        assert!(std::sync::Arc::ptr_eq(&table_from_json(&table_to_json(&t)).unwrap(), &t));
        let p = farey_path(&parse_rational("5/13").unwrap()).unwrap();
        assert_eq!(farey_from_json(&farey_to_json(&p)).unwrap(), p);
        let s = crate::hecke::h_hat_coset_sum(2, 4).unwrap();
        assert_eq!(coset_sum_from_json(&coset_sum_to_json(&s)).unwrap(), s);
        let v = PeriodVector::new(3, Seed::Eisenstein, Beta::Int(2), psi_vector(3).unwrap());
        assert_eq!(weights_from_json(&weights_to_json(&v)).unwrap(), v);
        let big = FormalSum::from_mat(Mat2::new(BigInt::from(10).pow(30), 1, 0, 1)).scale(&BigInt::from(10).pow(25));
        assert_eq!(formal_sum_from_json(&formal_sum_to_json(&big)).unwrap(), big);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(mat_from_json(&json!([["1", "x"], ["0", "1"]])).is_err());
        assert!(mat_from_json(&json!([["1"], ["0", "1"]])).is_err());
        assert!(formal_sum_from_json(&json!([{"coeff": 1, "matrix": [["1", "1"], ["1", "1"]]}])).is_err());
        assert!(table_from_json(&json!({"n": 3, "mu": 4, "entries": []})).is_err());
    }
}
