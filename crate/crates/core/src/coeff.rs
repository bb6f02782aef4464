//! The two exact coefficient-function algebras.
//!
//! A [`CoeffFn`] is a finite linear combination of basis functions over a
//! chart: monomials `x^alpha` on polynomial charts, Fourier modes
//! `E[n] = exp(i<n,x>)` on torus charts. Terms are keyed by the exponent or
//! frequency vector, stored sorted with no zero coefficients, so structural
//! equality is exact function equality.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::traits::Zero;

use crate::chart::{ChartKind, ChartSpec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent multi-index (poly) or frequency vector (fourier), length `m`.
pub type CoeffKey = Vec<i32>;

/// An exact coefficient function on a chart.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffFn {
    chart: ChartSpec,
    terms: BTreeMap<CoeffKey, Scalar>,
}

/// A substitution argument for [`CoeffFn::compose`].
pub enum Substitution<'a> {
    /// Polynomial components, one per coordinate.
    Poly(&'a [CoeffFn]),
    /// Integer matrix `A` acting as `x -> Ax` on a torus (row-major).
    FourierMatrix(&'a [Vec<i64>]),
}

impl CoeffFn {
    pub fn zero(chart: ChartSpec) -> Self {
        CoeffFn {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: ChartSpec, value: Scalar) -> Self {
        let mut f = Self::zero(chart);
        f.insert_term(vec![0; chart.dim()], value);
        f
    }

    pub fn one(chart: ChartSpec) -> Self {
        Self::constant(chart, Scalar::one())
    }

    /// The coordinate function `x_j` (poly charts only, 1-based axis).
    pub fn var(chart: ChartSpec, axis: usize) -> Result<Self> {
        chart.ensure_axis(axis)?;
        if !chart.is_poly() {
            return Err(Error::ChartMismatch(
                "coordinate monomials exist only on poly charts".into(),
            ));
        }
        let mut key = vec![0; chart.dim()];
        key[axis - 1] = 1;
        let mut f = Self::zero(chart);
        f.insert_term(key, Scalar::one());
        Ok(f)
    }

    /// The monomial `x^alpha` (poly charts only).
    pub fn monomial(chart: ChartSpec, exponents: &[i32]) -> Result<Self> {
        if !chart.is_poly() {
            return Err(Error::ChartMismatch(
                "monomial keys exist only on poly charts".into(),
            ));
        }
        Self::check_key(chart, exponents)?;
        let mut f = Self::zero(chart);
        f.insert_term(exponents.to_vec(), Scalar::one());
        Ok(f)
    }

    /// The Fourier mode `E[n] = exp(i<n,x>)` (fourier charts only).
    pub fn mode(chart: ChartSpec, freqs: &[i32]) -> Result<Self> {
        if !chart.is_fourier() {
            return Err(Error::ChartMismatch(
                "mode keys exist only on fourier charts".into(),
            ));
        }
        Self::check_key(chart, freqs)?;
        let mut f = Self::zero(chart);
        f.insert_term(freqs.to_vec(), Scalar::one());
        Ok(f)
    }

    fn check_key(chart: ChartSpec, key: &[i32]) -> Result<()> {
        if key.len() != chart.dim() {
            return Err(Error::ChartMismatch(format!(
                "key length {} does not match dimension {}",
                key.len(),
                chart.dim()
            )));
        }
        if chart.is_poly() && key.iter().any(|&e| e < 0) {
            return Err(Error::ChartMismatch(
                "negative exponent on a poly chart".into(),
            ));
        }
        Ok(())
    }

    /// Accumulate `value` into the term keyed by `key`, dropping zeros.
    pub fn insert_term(&mut self, key: CoeffKey, value: Scalar) {
        if value.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoeffKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the constant basis function (`x^0` resp. `E[0]`).
    pub fn constant_part(&self) -> Scalar {
        let key = vec![0; self.chart.dim()];
        self.terms.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// True if the function is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        let key = vec![0; self.chart.dim()];
        self.terms.keys().all(|k| *k == key)
    }

    pub fn add(&self, other: &CoeffFn) -> Result<CoeffFn> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = self.clone();
        for (key, value) in &other.terms {
            out.insert_term(key.clone(), value.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CoeffFn) -> Result<CoeffFn> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CoeffFn {
        CoeffFn {
            chart: self.chart,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> CoeffFn {
        if factor.is_zero() {
            return Self::zero(self.chart);
        }
        CoeffFn {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * factor))
                .collect(),
        }
    }

    pub fn scale_rat(&self, factor: &BigRational) -> CoeffFn {
        if factor.is_zero() {
            return Self::zero(self.chart);
        }
        CoeffFn {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.scale_rat(factor)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &CoeffFn) -> Result<CoeffFn> {
        self.chart.ensure_same(&other.chart)?;
        let mut out = Self::zero(self.chart);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let key: CoeffKey = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.insert_term(key, va * vb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> CoeffFn {
        let mut out = Self::one(self.chart);
        for _ in 0..exp {
            out = out.mul(self).expect("same chart");
        }
        out
    }

    /// Partial derivative along a 1-based axis.
    ///
    /// Poly: `x^alpha -> alpha_j x^(alpha - e_j)`. Fourier:
    /// `E[n] -> i n_j E[n]`.
    pub fn partial(&self, axis: usize) -> Result<CoeffFn> {
        self.chart.ensure_axis(axis)?;
        let mut out = Self::zero(self.chart);
        let idx = axis - 1;
        for (key, value) in &self.terms {
            match self.chart.kind() {
                ChartKind::Poly => {
                    let e = key[idx];
                    if e == 0 {
                        continue;
                    }
                    let mut k = key.clone();
                    k[idx] -= 1;
                    out.insert_term(k, value.scale_rat(&BigRational::from_integer(e.into())));
                }
                ChartKind::Fourier => {
                    let n = key[idx];
                    if n == 0 {
                        continue;
                    }
                    out.insert_term(key.clone(), value.mul_i_int(n as i64));
                }
            }
        }
        Ok(out)
    }

    /// Exact substitution `f(map(x))`.
    ///
    /// Poly charts accept arbitrary polynomial components; Fourier charts
    /// only substitutions induced by an integer matrix on frequencies.
    pub fn compose(&self, map: &Substitution<'_>) -> Result<CoeffFn> {
        match (self.chart.kind(), map) {
            (ChartKind::Poly, Substitution::Poly(comps)) => {
                if comps.len() != self.chart.dim() {
                    return Err(Error::UnsupportedSubstitution(format!(
                        "expected {} components, got {}",
                        self.chart.dim(),
                        comps.len()
                    )));
                }
                for c in comps.iter() {
                    self.chart.ensure_same(&c.chart)?;
                }
                let mut out = Self::zero(self.chart);
                for (key, value) in &self.terms {
                    let mut term = Self::constant(self.chart, value.clone());
                    for (j, &e) in key.iter().enumerate() {
                        if e > 0 {
                            term = term.mul(&comps[j].pow(e as u32))?;
                        }
                    }
                    out = out.add(&term)?;
                }
                Ok(out)
            }
            (ChartKind::Fourier, Substitution::FourierMatrix(matrix)) => {
                let m = self.chart.dim();
                if matrix.len() != m || matrix.iter().any(|row| row.len() != m) {
                    return Err(Error::UnsupportedSubstitution(format!(
                        "expected a {m}x{m} integer matrix"
                    )));
                }
                // <n, Ax> = <A^T n, x>
                let mut out = Self::zero(self.chart);
                for (key, value) in &self.terms {
                    let new_key: CoeffKey = (0..m)
                        .map(|col| {
                            (0..m)
                                .map(|row| matrix[row][col] * key[row] as i64)
                                .sum::<i64>() as i32
                        })
                        .collect();
                    out.insert_term(new_key, value.clone());
                }
                Ok(out)
            }
            (ChartKind::Poly, Substitution::FourierMatrix(_)) => Err(
                Error::UnsupportedSubstitution("matrix substitution on a poly chart".into()),
            ),
            (ChartKind::Fourier, Substitution::Poly(_)) => Err(Error::UnsupportedSubstitution(
                "general substitution on a fourier chart; only integer matrix actions are exact"
                    .into(),
            )),
        }
    }

    /// The zero-frequency part (fourier) or constant part (poly) as a function.
    pub fn harmonic_part(&self) -> CoeffFn {
        Self::constant(self.chart, self.constant_part())
    }

    /// Drop the zero-frequency/constant term.
    pub fn oscillating_part(&self) -> CoeffFn {
        let key = vec![0; self.chart.dim()];
        CoeffFn {
            chart: self.chart,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| **k != key)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Total degree (poly) or max `|n_i|` (fourier) across terms; 0 if zero.
    pub fn size_bound(&self) -> i64 {
        self.terms
            .keys()
            .map(|k| match self.chart.kind() {
                ChartKind::Poly => k.iter().map(|&e| e as i64).sum(),
                ChartKind::Fourier => k.iter().map(|&n| n.unsigned_abs() as i64).max().unwrap_or(0),
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, value) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{value}*")?;
            match self.chart.kind() {
                ChartKind::Poly => {
                    if key.iter().all(|&e| e == 0) {
                        write!(f, "1")?;
                    } else {
                        let mono: Vec<String> = key
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
                        write!(f, "{}", mono.join("*"))?;
                    }
                }
                ChartKind::Fourier => {
                    let freqs: Vec<String> = key.iter().map(|n| n.to_string()).collect();
                    write!(f, "E[{}]", freqs.join(","))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn poly2() -> ChartSpec {
        ChartSpec::poly(2).unwrap()
    }

    fn fourier2() -> ChartSpec {
        ChartSpec::fourier(2).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        let x1 = CoeffFn::var(poly2(), 1).unwrap();
        assert!(x1.add(&x1.neg()).unwrap().is_zero());
    }

    #[test]
    fn like_terms_merge() {
        let chart = poly2();
        let x1x2 = CoeffFn::monomial(chart, &[1, 1]).unwrap();
        let two = x1x2.scale(&Scalar::from_int(2));
        let sum = two.add(&x1x2).unwrap();
        assert_eq!(sum, x1x2.scale(&Scalar::from_int(3)));
    }

    #[test]
    fn distinct_modes_do_not_merge() {
        let chart = fourier2();
        let a = CoeffFn::mode(chart, &[1, 0]).unwrap();
        let b = CoeffFn::mode(chart, &[0, 1]).unwrap();
        assert_eq!(a.add(&b).unwrap().num_terms(), 2);
    }

    #[test]
    fn exponent_addition() {
        let chart = poly2();
        let x1 = CoeffFn::var(chart, 1).unwrap();
        assert_eq!(
            x1.mul(&x1).unwrap(),
            CoeffFn::monomial(chart, &[2, 0]).unwrap()
        );
    }

    #[test]
    fn frequency_cancellation() {
        let chart = fourier2();
        let a = CoeffFn::mode(chart, &[1, 0]).unwrap();
        let b = CoeffFn::mode(chart, &[-1, 0]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), CoeffFn::one(chart));
    }

    #[test]
    fn difference_of_squares() {
        // (x1 + 1)(x1 - 1) = x1^2 - 1
        let chart = poly2();
        let x1 = CoeffFn::var(chart, 1).unwrap();
        let one = CoeffFn::one(chart);
        let prod = x1.add(&one).unwrap().mul(&x1.sub(&one).unwrap()).unwrap();
        let expect = CoeffFn::monomial(chart, &[2, 0]).unwrap().sub(&one).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn power_rule() {
        let chart = poly2();
        let sq = CoeffFn::monomial(chart, &[2, 0]).unwrap();
        let d = sq.partial(1).unwrap();
        assert_eq!(d, CoeffFn::var(chart, 1).unwrap().scale(&Scalar::from_int(2)));
        assert!(CoeffFn::constant(chart, Scalar::from_int(5))
            .partial(1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn fourier_partial() {
        // d/dx2 E[1,-2] = -2i E[1,-2]
        let chart = fourier2();
        let e = CoeffFn::mode(chart, &[1, -2]).unwrap();
        let d = e.partial(2).unwrap();
        assert_eq!(d, e.scale(&Scalar::new(rat(0, 1), rat(-2, 1))));
    }

    #[test]
    fn axis_out_of_range() {
        let chart = poly2();
        let x1 = CoeffFn::var(chart, 1).unwrap();
        assert!(matches!(
            x1.partial(3),
            Err(Error::AxisOutOfRange { axis: 3, dim: 2 })
        ));
    }

    #[test]
    fn poly_substitution() {
        let chart = poly2();
        let x1 = CoeffFn::var(chart, 1).unwrap();
        let x2 = CoeffFn::var(chart, 2).unwrap();

        // (x1)^2 with the swap (x2, x1) -> (x2)^2
        let f = CoeffFn::monomial(chart, &[2, 0]).unwrap();
        let swapped = f
            .compose(&Substitution::Poly(&[x2.clone(), x1.clone()]))
            .unwrap();
        assert_eq!(swapped, CoeffFn::monomial(chart, &[0, 2]).unwrap());

        // x1*x2 with (x1, x2 + x1^2) -> x1*x2 + x1^3
        let g = CoeffFn::monomial(chart, &[1, 1]).unwrap();
        let shear = [
            x1.clone(),
            x2.add(&CoeffFn::monomial(chart, &[2, 0]).unwrap()).unwrap(),
        ];
        let composed = g.compose(&Substitution::Poly(&shear)).unwrap();
        let expect = g
            .add(&CoeffFn::monomial(chart, &[3, 0]).unwrap())
            .unwrap();
        assert_eq!(composed, expect);
    }

    #[test]
    fn fourier_matrix_substitution() {
        // E[1,0] under x -> Ax with A = [[1,1],[0,1]] becomes E[1,1].
        let chart = fourier2();
        let f = CoeffFn::mode(chart, &[1, 0]).unwrap();
        let composed = f
            .compose(&Substitution::FourierMatrix(&[vec![1, 1], vec![0, 1]]))
            .unwrap();
        assert_eq!(composed, CoeffFn::mode(chart, &[1, 1]).unwrap());
    }

    #[test]
    fn unsupported_substitution() {
        let chart = fourier2();
        let f = CoeffFn::mode(chart, &[1, 0]).unwrap();
        assert!(matches!(
            f.compose(&Substitution::Poly(&[])),
            Err(Error::UnsupportedSubstitution(_))
        ));
    }

    #[test]
    fn leibniz_rule() {
        let chart = poly2();
        let f = CoeffFn::monomial(chart, &[2, 1]).unwrap();
        let g = CoeffFn::var(chart, 2)
            .unwrap()
            .add(&CoeffFn::one(chart))
            .unwrap();
        for axis in 1..=2 {
            let lhs = f.mul(&g).unwrap().partial(axis).unwrap();
            let rhs = f
                .partial(axis)
                .unwrap()
                .mul(&g)
                .unwrap()
                .add(&f.mul(&g.partial(axis).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
