//! JSON rendering of elements, tensors and series.
//!
//! Every term is `{"legs": [...], "coeff": "p/q"}`; an element is a single-leg
//! tensor, so all three kinds share one schema.

use hv_twist_core::scalar::to_pq;
use hv_twist_core::{Basis, Combination, Series};
use serde_json::{json, Value};

pub fn combination_json<K: Basis>(x: &Combination<K>) -> Value {
    Value::Array(
        x.iter()
            .map(|(k, c)| {
                let legs: Vec<String> = k.legs().iter().map(|m| m.to_string()).collect();
                json!({ "legs": legs, "coeff": to_pq(c) })
            })
            .collect(),
    )
}

/// `{"order": N, "coefficients": [[terms of t^0], …, [terms of t^N]]}`.
pub fn series_json<K: Basis>(s: &Series<K>) -> Value {
    json!({
        "order": s.order(),
        "coefficients": s.coeffs().iter().map(combination_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hv_twist_core::scalar::rat;
    use hv_twist_core::{tensor2, Element, Generator};

    #[test]
    fn tensor_terms() {
        let e = Element::generator(Generator::i(1));
        let t = tensor2(&Element::one(), &e).scale(&rat(-3, 2));
        assert_eq!(
            combination_json(&t),
            json!([{ "legs": ["1", "I(1)"], "coeff": "-3/2" }])
        );
        assert_eq!(combination_json(&e), json!([{ "legs": ["I(1)"], "coeff": "1/1" }]));
    }
}
