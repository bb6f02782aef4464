//! Structured tree serialization.
//!
//! The encoding is bit-stable: terms appear in canonical sorted order and
//! scalars are exact reduced rational strings. See `docs/FORMAT.md` for
//! the schema.

use serde_json::{json, Value};

use crate::cohomology::DeltaClass;
use crate::forms::{ScalarForm, VectorForm};
use crate::scalar::Scalar;

use super::FormValue;

fn scalar_json(s: &Scalar) -> Value {
    json!({ "re": s.re().to_string(), "im": s.im().to_string() })
}

fn coeff_entries(form: &ScalarForm, idx: &crate::forms::MultiIndex) -> Value {
    let entries: Vec<Value> = form
        .coeff_at(idx)
        .terms()
        .map(|(key, s)| {
            let mut v = scalar_json(s);
            v.as_object_mut()
                .expect("object")
                .insert("key".to_string(), json!(key));
            v
        })
        .collect();
    Value::Array(entries)
}

/// Scalar form as a structured tree.
pub fn scalar_form_to_json(form: &ScalarForm) -> Value {
    let terms: Vec<Value> = form
        .terms()
        .map(|(idx, _)| {
            json!({
                "idx": idx.axes(),
                "coeff": coeff_entries(form, idx),
            })
        })
        .collect();
    json!({
        "kind": "scalar",
        "chart": form.chart().to_string(),
        "degree": form.degree(),
        "terms": terms,
    })
}

/// Vector form as a structured tree; components are listed per slot.
pub fn vector_form_to_json(form: &VectorForm) -> Value {
    let mut terms = Vec::new();
    for j in 1..=form.chart().dim() {
        let comp = form.component(j);
        for (idx, _) in comp.terms() {
            terms.push(json!({
                "slot": j,
                "idx": idx.axes(),
                "coeff": coeff_entries(comp, idx),
            }));
        }
    }
    json!({
        "kind": "vector",
        "chart": form.chart().to_string(),
        "degree": form.degree(),
        "terms": terms,
    })
}

pub fn form_to_json(value: &FormValue) -> Value {
    match value {
        FormValue::Scalar(f) => scalar_form_to_json(f),
        FormValue::Vector(f) => vector_form_to_json(f),
    }
}

/// Delta-cohomology class as a structured tree.
pub fn delta_class_to_json(class: &DeltaClass) -> Value {
    json!({
        "kind": "delta-class",
        "chart": class.chart().to_string(),
        "degree": class.degree(),
        "dr_part": scalar_form_to_json(class.dr_part()),
        "traceless_part": vector_form_to_json(class.traceless_part()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::ChartSpec;

    #[test]
    fn deterministic_encoding() {
        let chart = ChartSpec::poly(2).unwrap();
        let ident = VectorForm::identity(chart);
        let a = vector_form_to_json(&ident).to_string();
        let b = vector_form_to_json(&ident).to_string();
        assert_eq!(a, b);
        assert!(a.contains("\"kind\":\"vector\""));
        assert!(a.contains("\"chart\":\"poly:2\""));
    }
}
