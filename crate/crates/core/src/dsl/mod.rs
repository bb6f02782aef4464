//! Expression language for forms and diffeomorphisms.
//!
//! Canonical grammar (ASCII):
//!
//! ```text
//! form     := ['-'] term (('+'|'-') term)*
//! term     := [coeff '*'?] wedge ['@' 'e' INT] | coeff
//! coeff    := factor ('*' factor)*
//! factor   := rational | 'i' | mono | mode | '(' coeffsum ')'
//! coeffsum := ['-'] coeff (('+'|'-') coeff)*
//! mono     := 'x' INT ['^' NAT]
//! mode     := 'E' '[' INT (',' INT)* ']'
//! rational := NAT ['/' NAT]
//! wedge    := 'dx' INT ('^' 'dx' INT)* | '1'
//! ```
//!
//! The token after `^` disambiguates: digits continue a power, `dx`
//! continues a wedge. Monomials and `(`-sums appear on poly charts only,
//! `i` and modes on fourier charts only. A term with a `@ e<j>` slot is a
//! vector term; a form must use slots on all terms or none, and must be
//! degree-homogeneous. `0` denotes the zero form of any kind and degree.
//!
//! Diffeomorphisms: `map:(expr,...); inv:(expr,...)` on poly charts,
//! `matrix:[[a,b],[c,d]]` (unimodular, integer) on fourier charts.
//!
//! Printing is canonical and deterministic: terms sort by (vector slot,
//! multi-index, coefficient key), rationals are reduced, a coefficient of
//! `1` is dropped when anything else identifies the term, and parsing a
//! printed value reproduces it exactly.

mod json;
mod lexer;
mod parser;
mod printer;

pub use json::{delta_class_to_json, form_to_json, scalar_form_to_json, vector_form_to_json};
pub use parser::{parse_diffeo, parse_form};
pub use printer::{print_form, print_scalar_form, print_vector_form};

use crate::forms::{ScalarForm, VectorForm};

/// A parsed form: scalar- or tangent-valued.
#[derive(Clone, Debug, PartialEq)]
pub enum FormValue {
    Scalar(ScalarForm),
    Vector(VectorForm),
}

impl FormValue {
    pub fn chart(&self) -> crate::chart::ChartSpec {
        match self {
            FormValue::Scalar(f) => f.chart(),
            FormValue::Vector(f) => f.chart(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            FormValue::Scalar(f) => f.degree(),
            FormValue::Vector(f) => f.degree(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FormValue::Scalar(f) => f.is_zero(),
            FormValue::Vector(f) => f.is_zero(),
        }
    }

    pub fn as_scalar(&self) -> Option<&ScalarForm> {
        match self {
            FormValue::Scalar(f) => Some(f),
            FormValue::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&VectorForm> {
        match self {
            FormValue::Vector(f) => Some(f),
            FormValue::Scalar(_) => None,
        }
    }

    /// Equality that lets the zero scalar and zero vector forms agree
    /// (both print as `0`).
    pub fn same_value(&self, other: &FormValue) -> bool {
        match (self, other) {
            (FormValue::Scalar(a), FormValue::Scalar(b)) => a == b,
            (FormValue::Vector(a), FormValue::Vector(b)) => a == b,
            (a, b) => a.is_zero() && b.is_zero() && a.chart() == b.chart(),
        }
    }
}

impl From<ScalarForm> for FormValue {
    fn from(f: ScalarForm) -> Self {
        FormValue::Scalar(f)
    }
}

impl From<VectorForm> for FormValue {
    fn from(f: VectorForm) -> Self {
        FormValue::Vector(f)
    }
}
