//! JSON rendering of component tables. Big integers are emitted as JSON
//! numbers of arbitrary length.

use serde_json::{json, Number, Value};

use crate::polyring::TauPoly;
use crate::qkz::hom::ComponentTable;
use crate::scalar::Rat;

pub fn big_number(x: &num_bigint::BigInt) -> Value {
    Value::Number(
        x.to_string()
            .parse::<Number>()
            .expect("integer literals are valid JSON numbers"),
    )
}

pub fn tau_poly_json(p: &TauPoly) -> Value {
    Value::Array(p.coeffs().iter().map(big_number).collect())
}

/// {"n", "tau": "sym" | "p/q", "components": [{"a", "value"}]}; symbolic
/// values are coefficient lists in ascending powers of τ.
pub fn table_json(table: &ComponentTable, tau: Option<&Rat>) -> Value {
    let components: Vec<Value> = table
        .entries()
        .iter()
        .map(|(idx, p)| {
            let value = match tau {
                None => tau_poly_json(p),
                Some(t) => Value::String(p.eval(t).to_string()),
            };
            json!({ "a": idx.indices(), "value": value })
        })
        .collect();
    json!({
        "n": table.n(),
        "tau": tau.map_or_else(|| "sym".to_string(), |t| t.to_string()),
        "components": components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qkz::psi_table;

    #[test]
    fn symbolic_and_specialized() {
        let t = psi_table(1);
        let v = table_json(&t, None);
        assert_eq!(v["tau"], "sym");
        assert_eq!(v["components"][1]["a"], json!([2]));
        assert_eq!(v["components"][1]["value"].to_string(), "[0,1]");
        let v = table_json(&t, Some(&Rat::from(3)));
        assert_eq!(v["components"][1]["value"], "3");
    }
}
