//! Canonical deterministic printer.
//!
//! Terms are emitted sorted by (vector slot, multi-index, coefficient
//! key). A real coefficient contributes its sign to the `+`/`-` joiner;
//! a magnitude of 1 is dropped when a monomial or mode identifies the
//! term (and for positive 1, also when a wedge does). Gaussian
//! coefficients with nonzero real and imaginary part print parenthesized,
//! pure imaginary ones as `i` / `<rat>*i`. Identical values always print
//! byte-identically.

use std::fmt;

use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::chart::ChartKind;
use crate::coeff::CoeffKey;
use crate::forms::{MultiIndex, ScalarForm, VectorForm};
use crate::scalar::Scalar;

use super::FormValue;

struct TermText {
    negative: bool,
    text: String,
}

fn rat_text(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn mono_text(kind: ChartKind, key: &CoeffKey) -> String {
    match kind {
        ChartKind::Poly => {
            let parts: Vec<String> = key
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        format!("x{}", j + 1)
                    } else {
                        format!("x{}^{}", j + 1, e)
                    }
                })
                .collect();
            parts.join("*")
        }
        ChartKind::Fourier => {
            if key.iter().all(|&n| n == 0) {
                String::new()
            } else {
                let freqs: Vec<String> = key.iter().map(|n| n.to_string()).collect();
                format!("E[{}]", freqs.join(","))
            }
        }
    }
}

/// Scalar text plus the sign carried out to the term joiner.
fn scalar_text(s: &Scalar, has_mono: bool, has_wedge: bool) -> (bool, String) {
    if s.is_real() {
        let negative = s.re().is_negative();
        let mag = if negative { -s.re().clone() } else { s.re().clone() };
        if mag.is_one() && (has_mono || (!negative && has_wedge)) {
            return (negative, String::new());
        }
        (negative, rat_text(&mag))
    } else if s.re().is_zero() {
        let negative = s.im().is_negative();
        let mag = if negative { -s.im().clone() } else { s.im().clone() };
        let text = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", rat_text(&mag))
        };
        (negative, text)
    } else {
        let re = rat_text(s.re());
        let im_mag = s.im().abs();
        let im = if im_mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", rat_text(&im_mag))
        };
        let op = if s.im().is_negative() { '-' } else { '+' };
        (false, format!("({re}{op}{im})"))
    }
}

fn render_term(
    kind: ChartKind,
    scalar: &Scalar,
    key: &CoeffKey,
    idx: &MultiIndex,
    slot: Option<usize>,
) -> TermText {
    let mono = mono_text(kind, key);
    let wedge = idx.to_string();
    let (negative, coeff) = scalar_text(scalar, !mono.is_empty(), !wedge.is_empty());
    let mut text = match (coeff.is_empty(), mono.is_empty()) {
        (false, false) => format!("{coeff}*{mono}"),
        (false, true) => coeff,
        (true, false) => mono,
        (true, true) => String::new(),
    };
    if !wedge.is_empty() {
        if text.is_empty() {
            text = wedge;
        } else {
            text = format!("{text} {wedge}");
        }
    } else if text.is_empty() {
        text = "1".to_string();
    }
    if let Some(j) = slot {
        text = format!("{text} @ e{j}");
    }
    TermText { negative, text }
}

fn scalar_terms(form: &ScalarForm, slot: Option<usize>, out: &mut Vec<TermText>) {
    let kind = form.chart().kind();
    for (idx, coeff) in form.terms() {
        for (key, scalar) in coeff.terms() {
            out.push(render_term(kind, scalar, key, idx, slot));
        }
    }
}

fn join_terms(terms: Vec<TermText>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, term) in terms.iter().enumerate() {
        if i == 0 {
            if term.negative {
                out.push('-');
            }
        } else if term.negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&term.text);
    }
    out
}

/// Canonical text for a scalar form.
pub fn print_scalar_form(form: &ScalarForm) -> String {
    let mut terms = Vec::new();
    scalar_terms(form, None, &mut terms);
    join_terms(terms)
}

/// Canonical text for a vector-valued form.
pub fn print_vector_form(form: &VectorForm) -> String {
    let mut terms = Vec::new();
    for j in 1..=form.chart().dim() {
        scalar_terms(form.component(j), Some(j), &mut terms);
    }
    join_terms(terms)
}

/// Canonical text for either kind.
pub fn print_form(value: &FormValue) -> String {
    match value {
        FormValue::Scalar(f) => print_scalar_form(f),
        FormValue::Vector(f) => print_vector_form(f),
    }
}

impl fmt::Display for ScalarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_scalar_form(self))
    }
}

impl fmt::Display for VectorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_vector_form(self))
    }
}

impl fmt::Display for FormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_form(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::ChartSpec;
    use crate::coeff::CoeffFn;
    use crate::dsl::parse_form;

    fn poly2() -> ChartSpec {
        ChartSpec::poly(2).unwrap()
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(print_scalar_form(&ScalarForm::zero(poly2(), 1)), "0");
        assert_eq!(print_vector_form(&VectorForm::zero(poly2(), 2)), "0");
    }

    #[test]
    fn identity_print() {
        let ident = VectorForm::identity(poly2());
        assert_eq!(print_vector_form(&ident), "dx1 @ e1 + dx2 @ e2");
    }

    #[test]
    fn documented_canonical_ordering() {
        // (x1/2) dx1 (x) d1 - (x1/2) dx2 (x) d2 + dx1 (x) d2
        let chart = poly2();
        let half_x1 = CoeffFn::var(chart, 1)
            .unwrap()
            .scale(&Scalar::from_ratio(1, 2));
        let k = VectorForm::from_components(
            chart,
            vec![
                ScalarForm::basis(chart, &[1])
                    .unwrap()
                    .scale_coeff(&half_x1)
                    .unwrap(),
                ScalarForm::basis(chart, &[1])
                    .unwrap()
                    .sub(
                        &ScalarForm::basis(chart, &[2])
                            .unwrap()
                            .scale_coeff(&half_x1)
                            .unwrap(),
                    )
                    .unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            print_vector_form(&k),
            "1/2*x1 dx1 @ e1 + dx1 @ e2 - 1/2*x1 dx2 @ e2"
        );
    }

    #[test]
    fn negative_unit_coefficient_with_wedge_prints_magnitude() {
        let chart = poly2();
        let k = VectorForm::decomposable(
            &ScalarForm::basis(chart, &[1, 2]).unwrap().neg(),
            1,
        )
        .unwrap();
        assert_eq!(print_vector_form(&k), "-1 dx1^dx2 @ e1");
    }

    #[test]
    fn fourier_scalars_round_trip() {
        let chart = ChartSpec::fourier(2).unwrap();
        let mode = CoeffFn::mode(chart, &[1, 0]).unwrap();
        // -i E[1,0]
        let f = ScalarForm::from_coeff(mode.scale(&-Scalar::i()));
        let text = print_scalar_form(&f);
        assert_eq!(text, "-i*E[1,0]");
        let back = parse_form(&text, chart).unwrap();
        assert_eq!(back, FormValue::Scalar(f));

        // (1 - 2i) E[1,0] dx1
        let coeff = mode.scale(&Scalar::new(
            crate::scalar::rat(1, 1),
            crate::scalar::rat(-2, 1),
        ));
        let f = ScalarForm::basis(chart, &[1])
            .unwrap()
            .scale_coeff(&coeff)
            .unwrap();
        let text = print_scalar_form(&f);
        assert_eq!(text, "(1-2*i)*E[1,0] dx1");
        let back = parse_form(&text, chart).unwrap();
        assert_eq!(back, FormValue::Scalar(f));
    }

    #[test]
    fn printer_output_reparses() {
        let chart = poly2();
        let samples = [
            "1/2*x1 dx1 @ e1 + dx1 @ e2 - 1/2*x1 dx2 @ e2",
            "-1 dx1^dx2 @ e1",
            "dx1^dx2",
            "5",
            "-1",
            "x1^2*x2",
        ];
        for text in samples {
            let v = parse_form(text, chart).unwrap();
            assert_eq!(print_form(&v), text, "canonical fixed point for {text}");
        }
    }
}
