//! JSON rendering of ideals and cover reports. Integers of any size are
//! written as JSON numbers.

use num_bigint::BigUint;
use serde_json::{json, Map, Number, Value};

use tricover_core::covers::CoverReport;
use tricover_core::residue::PrimeIdeal;
use tricover_core::sl2::GroupId;

pub fn big(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal digits"))
}

pub fn opt_big(n: Option<&BigUint>) -> Value {
    n.map_or(Value::Null, big)
}

pub fn ideal_summary(ideal: &PrimeIdeal) -> Value {
    json!({
        "index": ideal.index,
        "p": ideal.p,
        "g_coeffs": ideal.g.coeffs(),
        "e": ideal.e,
        "f": ideal.f,
    })
}

pub fn galois(g: &GroupId) -> Value {
    let mut m = Map::new();
    m.insert("label".into(), g.label().into());
    match *g {
        GroupId::Dihedral { s } => {
            m.insert("s".into(), s.into());
        }
        GroupId::Sl2 { p, m: deg } | GroupId::Psl2 { p, m: deg } => {
            m.insert("p".into(), p.into());
            m.insert("m".into(), deg.into());
        }
        GroupId::Sl2F5 | GroupId::Psl2F5 => {
            m.insert("p".into(), 5.into());
            m.insert("m".into(), 1.into());
        }
        GroupId::Cyclic { .. } | GroupId::Unknown { .. } => {}
    }
    Value::Object(m)
}

pub fn report(r: &CoverReport) -> Value {
    let ramification: Vec<Value> = r
        .ramification
        .iter()
        .map(|rd| {
            let fiber: Vec<Value> = rd
                .fiber
                .iter()
                .map(|(count, e)| json!({ "count": big(count), "e": e }))
                .collect();
            json!({ "base": rd.base_point.name(), "fiber": fiber })
        })
        .collect();
    json!({
        "q": r.q,
        "p": r.p,
        "ideal": {
            "index": r.ideal.index,
            "g_coeffs": r.ideal.g.coeffs(),
            "e": r.ideal.e,
            "f": r.ideal.f,
        },
        "residue_order": big(&r.residue_order()),
        "galois": galois(&r.galois),
        "index_mu_bar": big(&r.index_mu_bar),
        "degenerate": r.degenerate,
        "genus_full": opt_big(r.genus_full.as_ref()),
        "genus_borel": opt_big(r.genus_borel.as_ref()),
        "ramification": ramification,
        "oracle_checked": r.oracle_checked,
        "notes": r.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_numbers_stay_exact() {
        let n: BigUint = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big(&n).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn galois_fields() {
        assert_eq!(
            galois(&GroupId::Dihedral { s: 5 }),
            json!({"label": "D_10", "s": 5})
        );
        assert_eq!(
            galois(&GroupId::Psl2 { p: 3, m: 2 }),
            json!({"label": "PSL2(3^2)", "p": 3, "m": 2})
        );
    }
}
