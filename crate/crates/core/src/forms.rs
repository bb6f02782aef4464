//! Scalar and tangent-valued differential forms on a chart.
//!
//! A [`ScalarForm`] of degree `k` maps strictly increasing multi-indices
//! `I = (i_1 < ... < i_k)` to coefficient functions; absent indices are
//! zero. A [`VectorForm`] `K = sum_j K_j (x) d_j` stores one scalar
//! component per coordinate direction.
//!
//! Two zero forms compare equal regardless of their recorded degree: the
//! zero form is degree-ambiguous, and operations that overflow the top
//! degree return a canonical zero with the degree clamped to `m`.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;

use crate::chart::ChartSpec;
use crate::coeff::CoeffFn;
use crate::error::{Error, Result};
use crate::scalar::{neg_one_pow, Scalar};

/// Strictly increasing multi-index over 1-based axes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// Build from strictly increasing axes; `None` if not strictly increasing.
    pub fn new(axes: &[u8]) -> Option<Self> {
        if axes.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        Some(MultiIndex(axes.to_vec()))
    }

    /// Sort arbitrary axes into canonical order, tracking the permutation
    /// sign; `None` if an axis repeats.
    pub fn from_unsorted(axes: &[u8]) -> Option<(Self, i64)> {
        let mut v = axes.to_vec();
        let mut sign = 1i64;
        // insertion sort, counting swaps
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((MultiIndex(v), sign))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn axes(&self) -> &[u8] {
        &self.0
    }

    pub fn contains(&self, axis: u8) -> bool {
        self.0.binary_search(&axis).is_ok()
    }

    /// Wedge-merge with `other`: merged index and sign, or `None` when an
    /// axis repeats.
    pub fn merge(&self, other: &MultiIndex) -> Option<(MultiIndex, i64)> {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0usize, 0usize);
        let mut sign = 1i64;
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] == other.0[j] {
                return None;
            }
            if self.0[i] < other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                // other.0[j] moves left past the remaining self axes
                if (self.0.len() - i) % 2 == 1 {
                    sign = -sign;
                }
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Some((MultiIndex(out), sign))
    }

    /// Remove `axis`: remaining index and the insertion sign `(-1)^(r-1)`
    /// where `r` is the 1-based position; `None` if absent.
    pub fn remove(&self, axis: u8) -> Option<(MultiIndex, i64)> {
        let pos = self.0.binary_search(&axis).ok()?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some((MultiIndex(v), if pos % 2 == 0 { 1 } else { -1 }))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| format!("dx{a}")).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// A homogeneous differential form with coefficient functions in the
/// chart's algebra.
#[derive(Clone, Debug, Eq)]
pub struct ScalarForm {
    chart: ChartSpec,
    degree: usize,
    terms: BTreeMap<MultiIndex, CoeffFn>,
}

impl PartialEq for ScalarForm {
    fn eq(&self, other: &Self) -> bool {
        self.chart == other.chart
            && self.terms == other.terms
            && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl ScalarForm {
    /// The zero `degree`-form; degrees beyond `m` clamp to `m`.
    pub fn zero(chart: ChartSpec, degree: usize) -> Self {
        ScalarForm {
            chart,
            degree: degree.min(chart.dim()),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: ChartSpec, value: Scalar) -> Self {
        let mut f = Self::zero(chart, 0);
        f.add_term(MultiIndex::empty(), CoeffFn::constant(chart, value))
            .expect("degree 0 term");
        f
    }

    pub fn one(chart: ChartSpec) -> Self {
        Self::constant(chart, Scalar::one())
    }

    /// A 0-form from a coefficient function.
    pub fn from_coeff(coeff: CoeffFn) -> Self {
        let chart = coeff.chart();
        let mut f = Self::zero(chart, 0);
        f.add_term(MultiIndex::empty(), coeff).expect("degree 0 term");
        f
    }

    /// The basis form `dx^I`.
    pub fn basis(chart: ChartSpec, axes: &[u8]) -> Result<Self> {
        let idx = MultiIndex::new(axes).ok_or_else(|| {
            Error::DegreeMismatch("basis axes must be strictly increasing".into())
        })?;
        for &a in axes {
            chart.ensure_axis(a as usize)?;
        }
        let mut f = Self::zero(chart, axes.len());
        f.add_term(idx, CoeffFn::one(chart))?;
        Ok(f)
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &CoeffFn)> {
        self.terms.iter()
    }

    pub fn coeff_at(&self, idx: &MultiIndex) -> CoeffFn {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| CoeffFn::zero(self.chart))
    }

    /// Accumulate a term; the index length must match the degree.
    pub fn add_term(&mut self, idx: MultiIndex, coeff: CoeffFn) -> Result<()> {
        self.chart.ensure_same(&coeff.chart())?;
        if coeff.is_zero() {
            return Ok(());
        }
        if idx.len() != self.degree {
            return Err(Error::DegreeMismatch(format!(
                "index length {} in a degree-{} form",
                idx.len(),
                self.degree
            )));
        }
        for &a in idx.axes() {
            self.chart.ensure_axis(a as usize)?;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff).expect("same chart");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &ScalarForm) -> Result<ScalarForm> {
        self.chart.ensure_same(&other.chart)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "adding degree {} to degree {}",
                other.degree, self.degree
            )));
        }
        let mut out = self.clone();
        for (idx, coeff) in &other.terms {
            out.add_term(idx.clone(), coeff.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ScalarForm) -> Result<ScalarForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ScalarForm {
        ScalarForm {
            chart: self.chart,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> ScalarForm {
        if factor.is_zero() {
            return Self::zero(self.chart, self.degree);
        }
        ScalarForm {
            chart: self.chart,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), c.scale(factor)))
                .collect(),
        }
    }

    pub fn scale_rat(&self, factor: &BigRational) -> ScalarForm {
        self.scale(&Scalar::from_rat(factor.clone()))
    }

    /// Multiply every coefficient by a function.
    pub fn scale_coeff(&self, factor: &CoeffFn) -> Result<ScalarForm> {
        self.chart.ensure_same(&factor.chart())?;
        let mut out = Self::zero(self.chart, self.degree);
        for (idx, coeff) in &self.terms {
            out.add_term(idx.clone(), coeff.mul(factor)?)?;
        }
        Ok(out)
    }

    /// Exterior product; graded-commutative, zero above the top degree.
    pub fn wedge(&self, other: &ScalarForm) -> Result<ScalarForm> {
        self.chart.ensure_same(&other.chart)?;
        let degree = self.degree + other.degree;
        if degree > self.chart.dim() {
            return Ok(Self::zero(self.chart, degree));
        }
        let mut out = Self::zero(self.chart, degree);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                if let Some((idx, sign)) = ia.merge(ib) {
                    let coeff = ca.mul(cb)?;
                    out.add_term(idx, if sign < 0 { coeff.neg() } else { coeff })?;
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative `d(f dx^I) = sum_j (d_j f) dx^j ^ dx^I`.
    pub fn ext_d(&self) -> ScalarForm {
        let m = self.chart.dim();
        let degree = self.degree + 1;
        if degree > m {
            return Self::zero(self.chart, degree);
        }
        let mut out = Self::zero(self.chart, degree);
        for (idx, coeff) in &self.terms {
            for j in 1..=m {
                let dj = coeff.partial(j).expect("axis in range");
                if dj.is_zero() {
                    continue;
                }
                let single = MultiIndex::new(&[j as u8]).expect("single axis");
                if let Some((merged, sign)) = single.merge(idx) {
                    out.add_term(merged, if sign < 0 { dj.neg() } else { dj })
                        .expect("degree consistent");
                }
            }
        }
        out
    }

    /// Insertion of the coordinate field `d_j` (an antiderivation).
    pub fn insert_axis(&self, axis: usize) -> Result<ScalarForm> {
        self.chart.ensure_axis(axis)?;
        let degree = self.degree.saturating_sub(1);
        let mut out = Self::zero(self.chart, degree);
        if self.degree == 0 {
            return Ok(out);
        }
        for (idx, coeff) in &self.terms {
            if let Some((rest, sign)) = idx.remove(axis as u8) {
                out.add_term(rest, if sign < 0 { coeff.neg() } else { coeff.clone() })?;
            }
        }
        Ok(out)
    }

    /// Coefficientwise partial derivative (the Lie derivative along `d_j`).
    pub fn partial(&self, axis: usize) -> Result<ScalarForm> {
        self.chart.ensure_axis(axis)?;
        let mut out = Self::zero(self.chart, self.degree);
        for (idx, coeff) in &self.terms {
            out.add_term(idx.clone(), coeff.partial(axis)?)?;
        }
        Ok(out)
    }

    /// Keep only constant-coefficient terms (zero-frequency on the torus).
    pub fn harmonic_part(&self) -> ScalarForm {
        let mut out = Self::zero(self.chart, self.degree);
        for (idx, coeff) in &self.terms {
            out.add_term(idx.clone(), coeff.harmonic_part())
                .expect("same degree");
        }
        out
    }
}

/// A tangent-bundle-valued form `K = sum_j K_j (x) d_j`.
#[derive(Clone, Debug, Eq)]
pub struct VectorForm {
    chart: ChartSpec,
    degree: usize,
    comps: Vec<ScalarForm>,
}

impl PartialEq for VectorForm {
    fn eq(&self, other: &Self) -> bool {
        self.chart == other.chart
            && self.comps == other.comps
            && (self.degree == other.degree || self.is_zero())
    }
}

impl VectorForm {
    pub fn zero(chart: ChartSpec, degree: usize) -> Self {
        let degree = degree.min(chart.dim());
        VectorForm {
            chart,
            degree,
            comps: vec![ScalarForm::zero(chart, degree); chart.dim()],
        }
    }

    /// Assemble from `m` scalar components of equal degree.
    pub fn from_components(chart: ChartSpec, comps: Vec<ScalarForm>) -> Result<Self> {
        if comps.len() != chart.dim() {
            return Err(Error::ChartMismatch(format!(
                "expected {} components, got {}",
                chart.dim(),
                comps.len()
            )));
        }
        let mut degree = None;
        for c in &comps {
            chart.ensure_same(&c.chart())?;
            if !c.is_zero() {
                match degree {
                    None => degree = Some(c.degree()),
                    Some(d) if d == c.degree() => {}
                    Some(d) => {
                        return Err(Error::DegreeMismatch(format!(
                            "component degrees {} and {}",
                            d,
                            c.degree()
                        )))
                    }
                }
            }
        }
        let degree = degree.unwrap_or_else(|| comps.first().map(|c| c.degree()).unwrap_or(0));
        Ok(VectorForm {
            chart,
            degree,
            comps,
        })
    }

    /// The decomposable form `phi (x) d_axis`.
    pub fn decomposable(phi: &ScalarForm, axis: usize) -> Result<Self> {
        phi.chart().ensure_axis(axis)?;
        let mut out = Self::zero(phi.chart(), phi.degree());
        out.degree = phi.degree();
        out.comps[axis - 1] = phi.clone();
        Ok(out)
    }

    /// The coordinate vector field `d_axis`.
    pub fn basis_field(chart: ChartSpec, axis: usize) -> Result<Self> {
        Self::decomposable(&ScalarForm::one(chart), axis)
    }

    /// The identity endomorphism `I = sum_j dx^j (x) d_j`.
    pub fn identity(chart: ChartSpec) -> Self {
        let comps = (1..=chart.dim())
            .map(|j| ScalarForm::basis(chart, &[j as u8]).expect("axis in range"))
            .collect();
        VectorForm {
            chart,
            degree: 1,
            comps,
        }
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// 1-based component access.
    pub fn component(&self, axis: usize) -> &ScalarForm {
        &self.comps[axis - 1]
    }

    pub fn components(&self) -> &[ScalarForm] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &VectorForm) -> Result<VectorForm> {
        self.chart.ensure_same(&other.chart)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "adding degree {} to degree {}",
                other.degree, self.degree
            )));
        }
        let comps: Result<Vec<ScalarForm>> = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(VectorForm {
            chart: self.chart,
            degree: self.degree,
            comps: comps?,
        })
    }

    pub fn sub(&self, other: &VectorForm) -> Result<VectorForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VectorForm {
        VectorForm {
            chart: self.chart,
            degree: self.degree,
            comps: self.comps.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> VectorForm {
        VectorForm {
            chart: self.chart,
            degree: self.degree,
            comps: self.comps.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    pub fn scale_rat(&self, factor: &BigRational) -> VectorForm {
        self.scale(&Scalar::from_rat(factor.clone()))
    }

    /// Componentwise exterior derivative (not a natural operator; used as a
    /// building block).
    pub fn ext_d_components(&self) -> VectorForm {
        let comps: Vec<ScalarForm> = self.comps.iter().map(|c| c.ext_d()).collect();
        let degree = (self.degree + 1).min(self.chart.dim());
        VectorForm {
            chart: self.chart,
            degree,
            comps,
        }
    }
}

/// Insertion `i(K) psi = sum_j K_j ^ i_{d_j} psi`; kills 0-forms.
///
/// For decomposable `K = phi (x) X` this is `phi ^ i_X psi`.
pub fn nr_insert(k: &VectorForm, psi: &ScalarForm) -> Result<ScalarForm> {
    k.chart().ensure_same(&psi.chart())?;
    let target = (k.degree() + psi.degree()).saturating_sub(1);
    if psi.degree() == 0 {
        return Ok(ScalarForm::zero(k.chart(), target));
    }
    let mut out = ScalarForm::zero(k.chart(), target);
    for j in 1..=k.chart().dim() {
        let kj = k.component(j);
        if kj.is_zero() {
            continue;
        }
        let inserted = psi.insert_axis(j)?;
        let piece = kj.wedge(&inserted)?;
        if !piece.is_zero() {
            out = out.add(&piece)?;
        }
    }
    Ok(out)
}

/// Insertion acting on vector-valued forms, componentwise.
pub fn insert_vv(k: &VectorForm, l: &VectorForm) -> Result<VectorForm> {
    k.chart().ensure_same(&l.chart())?;
    let target = (k.degree() + l.degree()).saturating_sub(1);
    if l.degree() == 0 {
        return Ok(VectorForm::zero(k.chart(), target));
    }
    let comps: Result<Vec<ScalarForm>> = l
        .components()
        .iter()
        .map(|lj| nr_insert(k, lj))
        .collect();
    VectorForm::from_components(k.chart(), comps?)
}

/// Generalized Lie derivative `Theta(K) psi = i(K) d psi - (-1)^(k-1) d i(K) psi`.
///
/// For a vector field (`k = 0`) this is the Cartan formula `i_X d + d i_X`.
pub fn lie_theta(k: &VectorForm, psi: &ScalarForm) -> Result<ScalarForm> {
    k.chart().ensure_same(&psi.chart())?;
    let first = nr_insert(k, &psi.ext_d())?;
    let second = nr_insert(k, psi)?.ext_d();
    let sign = neg_one_pow(k.degree() as i64 - 1);
    first.sub(&second.scale_rat(&sign))
}
