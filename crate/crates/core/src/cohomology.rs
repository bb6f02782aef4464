//! De Rham machinery on both chart models and the decomposition of the
//! delta-cohomology into a de Rham part and a traceless part.
//!
//! On `R^m` the homotopy for the Poincaré lemma is evaluated termwise: a
//! monomial of coefficient degree `d` inside a `k`-form contributes the
//! exact factor `1/(k+d)` to its Euler-field insertion. On `T^m` every
//! nonzero frequency block is inverted by the mode homotopy
//! `eta_n = 1/(i|n|^2) i_N phi_n`; the zero-frequency block is the
//! harmonic (constant-coefficient) representative.

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::calculus::{
    c_bracket, ensure_traceless, s_concomitant, trace_cbar, traceless_part,
};
use crate::chart::{ChartKind, ChartSpec};
use crate::coeff::CoeffFn;
use crate::error::{Error, Result};
use crate::forms::{lie_theta, MultiIndex, ScalarForm, VectorForm};
use crate::scalar::{neg_one_pow, Scalar};

/// True when `d phi = 0`.
pub fn is_closed(phi: &ScalarForm) -> bool {
    phi.ext_d().is_zero()
}

/// A primitive `eta` with `d eta = phi`, for closed `phi` of degree >= 1.
///
/// Fourier forms with a nonzero harmonic part are not exact. The zero
/// 0-form is its own primitive; nonzero constants are rejected.
pub fn primitive(phi: &ScalarForm) -> Result<ScalarForm> {
    if !is_closed(phi) {
        return Err(Error::NotClosed);
    }
    let chart = phi.chart();
    if phi.degree() == 0 {
        if phi.is_zero() {
            return Ok(ScalarForm::zero(chart, 0));
        }
        return Err(Error::NotExact("nonzero 0-forms are never exact".into()));
    }
    match chart.kind() {
        ChartKind::Poly => poincare_primitive(phi),
        ChartKind::Fourier => fourier_primitive(phi),
    }
}

fn poincare_primitive(phi: &ScalarForm) -> Result<ScalarForm> {
    let chart = phi.chart();
    let k = phi.degree() as i64;
    let mut out = ScalarForm::zero(chart, phi.degree() - 1);
    for (idx, coeff) in phi.terms() {
        for (key, value) in coeff.terms() {
            let d: i64 = key.iter().map(|&e| e as i64).sum();
            let factor = BigRational::new(BigInt::from(1), BigInt::from(k + d));
            // i_E (x^key dx^idx) with E the Euler field: each axis of the
            // index is removed and the matching coordinate multiplies in.
            for &axis in idx.axes() {
                let (rest, sign) = idx.remove(axis).expect("axis present");
                let mut new_key = key.clone();
                new_key[axis as usize - 1] += 1;
                let mut term = CoeffFn::zero(chart);
                term.insert_term(
                    new_key,
                    value.scale_rat(&(factor.clone() * BigRational::from_integer(sign.into()))),
                );
                out.add_term(rest, term)?;
            }
        }
    }
    Ok(out)
}

fn fourier_primitive(phi: &ScalarForm) -> Result<ScalarForm> {
    let chart = phi.chart();
    if !phi.harmonic_part().is_zero() {
        return Err(Error::NotExact(
            "closed form with nonzero harmonic part".into(),
        ));
    }
    let m = chart.dim();
    let mut out = ScalarForm::zero(chart, phi.degree() - 1);
    for (idx, coeff) in phi.terms() {
        for (key, value) in coeff.terms() {
            let norm: i64 = key.iter().map(|&n| (n as i64) * (n as i64)).sum();
            debug_assert!(norm > 0, "harmonic part already removed");
            // 1/(i |n|^2) = -i/|n|^2
            let inv = Scalar::new(
                BigRational::from_integer(0.into()),
                -BigRational::new(BigInt::from(1), BigInt::from(norm)),
            );
            // i_N with N = sum n_j d_j
            for j in 1..=m {
                let n_j = key[j - 1];
                if n_j == 0 {
                    continue;
                }
                if let Some((rest, sign)) = idx.remove(j as u8) {
                    let weight = &inv * &Scalar::from_int(sign * n_j as i64);
                    let mut term = CoeffFn::zero(chart);
                    term.insert_term(key.clone(), value * &weight);
                    out.add_term(rest, term)?;
                }
            }
        }
    }
    Ok(out)
}

/// Canonical de Rham representative of a closed form.
///
/// Poly: the constant part in degree 0, zero otherwise. Fourier: the
/// zero-frequency component.
pub fn derham_class(phi: &ScalarForm) -> Result<ScalarForm> {
    if !is_closed(phi) {
        return Err(Error::NotClosed);
    }
    let chart = phi.chart();
    match chart.kind() {
        ChartKind::Poly => {
            if phi.degree() == 0 {
                Ok(ScalarForm::constant(chart, phi.coeff_at(&MultiIndex::empty()).constant_part()))
            } else {
                Ok(ScalarForm::zero(chart, phi.degree()))
            }
        }
        ChartKind::Fourier => Ok(phi.harmonic_part()),
    }
}

/// Whether `K` is a delta-cocycle.
///
/// Below the top degree this is `d cbar(K) = 0`; in the top degree delta
/// vanishes identically, so every form is a cocycle.
pub fn delta_cocycle_check(k: &VectorForm) -> bool {
    if k.degree() == k.chart().dim() {
        return true;
    }
    trace_cbar(k).ext_d().is_zero()
}

/// A delta-cohomology class: canonical de Rham representative of the
/// normalized trace, plus the traceless part.
#[derive(Clone, Debug)]
pub struct DeltaClass {
    chart: ChartSpec,
    degree: usize,
    dr_part: ScalarForm,
    traceless: VectorForm,
}

impl PartialEq for DeltaClass {
    fn eq(&self, other: &Self) -> bool {
        self.chart == other.chart
            && self.dr_part == other.dr_part
            && self.traceless == other.traceless
            && (self.degree == other.degree || self.is_zero())
    }
}

impl DeltaClass {
    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Canonical representative of the de Rham summand (degree `k-1`).
    pub fn dr_part(&self) -> &ScalarForm {
        &self.dr_part
    }

    pub fn traceless_part(&self) -> &VectorForm {
        &self.traceless
    }

    pub fn is_zero(&self) -> bool {
        self.dr_part.is_zero() && self.traceless.is_zero()
    }
}

/// The class of a cocycle: `(class of cbar K, traceless part of K)`.
///
/// Requires `d cbar K = 0` in every degree so the de Rham summand is
/// defined; two cocycles are cohomologous exactly when their classes are
/// equal.
pub fn delta_class(k: &VectorForm) -> Result<DeltaClass> {
    let cbar = trace_cbar(k);
    if !cbar.ext_d().is_zero() {
        return Err(Error::NotCocycle(
            "normalized trace is not closed".into(),
        ));
    }
    Ok(DeltaClass {
        chart: k.chart(),
        degree: k.degree(),
        dr_part: derham_class(&cbar)?,
        traceless: traceless_part(k),
    })
}

/// The bracket induced on classes: the de Rham summands act abelianly and
/// the traceless summands via the corrected bracket.
pub fn class_bracket(a: &DeltaClass, b: &DeltaClass) -> Result<DeltaClass> {
    a.chart.ensure_same(&b.chart)?;
    let traceless = c_bracket(&a.traceless, &b.traceless)?;
    let degree = a.degree + b.degree;
    Ok(DeltaClass {
        chart: a.chart,
        degree: degree.min(a.chart.dim()),
        dr_part: ScalarForm::zero(a.chart, degree.saturating_sub(1).min(a.chart.dim())),
        traceless,
    })
}

/// The extension cocycle
/// `sigma(K', L') = (-1)^l/(m-k-l+1) dS(K', L')`, an exact form.
///
/// Defined for traceless arguments with degree sum at most `m`.
pub fn sigma(k: &VectorForm, l: &VectorForm) -> Result<ScalarForm> {
    k.chart().ensure_same(&l.chart())?;
    ensure_traceless(k, "left argument")?;
    ensure_traceless(l, "right argument")?;
    let m = k.chart().dim();
    let (dk, dl) = (k.degree(), l.degree());
    if dk + dl > m {
        return Err(Error::DegreeOutOfRange(format!(
            "sigma needs degree sum <= {m}, got {dk} + {dl}"
        )));
    }
    let denom = (m as i64) - (dk as i64) - (dl as i64) + 1;
    let factor = neg_one_pow(dl as i64) / BigRational::from_integer(denom.into());
    Ok(s_concomitant(k, l)?.ext_d().scale_rat(&factor))
}

/// The module action of traceless forms on closed scalar forms.
///
/// For closed `z` this equals `-(-1)^(k-1) d i(K) z`, hence is exact.
pub fn theta_action(k: &VectorForm, z: &ScalarForm) -> Result<ScalarForm> {
    k.chart().ensure_same(&z.chart())?;
    ensure_traceless(k, "acting form")?;
    if !is_closed(z) {
        return Err(Error::NotClosed);
    }
    lie_theta(k, z)
}

/// The bracket on the abelian extension `(Z ^ I) (+) C`, computed on the
/// split data and returned as `(closed part, traceless part)`:
///
/// `[zK ^ I + Kp, zL ^ I + Lp] = (Theta(Kp) zL - (-1)^(kl) Theta(Lp) zK
///   + sigma(Kp, Lp)) ^ I + [Kp, Lp]^c`.
pub fn extension_bracket(
    z_k: &ScalarForm,
    k_p: &VectorForm,
    z_l: &ScalarForm,
    l_p: &VectorForm,
) -> Result<(ScalarForm, VectorForm)> {
    let chart = k_p.chart();
    chart.ensure_same(&l_p.chart())?;
    chart.ensure_same(&z_k.chart())?;
    chart.ensure_same(&z_l.chart())?;
    if !is_closed(z_k) || !is_closed(z_l) {
        return Err(Error::NotClosed);
    }
    ensure_traceless(k_p, "left traceless part")?;
    ensure_traceless(l_p, "right traceless part")?;
    let deg_k = combined_degree(z_k, k_p)?;
    let deg_l = combined_degree(z_l, l_p)?;
    if deg_k + deg_l > chart.dim() {
        return Err(Error::DegreeOutOfRange(format!(
            "extension bracket needs degree sum <= {}, got {} + {}",
            chart.dim(),
            deg_k,
            deg_l
        )));
    }
    let sign = neg_one_pow((deg_k * deg_l) as i64);
    let mut z_part = theta_action(k_p, z_l)?;
    z_part = z_part.sub(&theta_action(l_p, z_k)?.scale_rat(&sign))?;
    z_part = z_part.add(&sigma(k_p, l_p)?)?;
    Ok((z_part, c_bracket(k_p, l_p)?))
}

/// Degree of `z ^ I + Kp` given the two split pieces; errors when the
/// pieces disagree.
fn combined_degree(z: &ScalarForm, kp: &VectorForm) -> Result<usize> {
    match (z.is_zero(), kp.is_zero()) {
        (true, true) => Ok(0),
        (true, false) => Ok(kp.degree()),
        (false, true) => Ok(z.degree() + 1),
        (false, false) => {
            if z.degree() + 1 == kp.degree() {
                Ok(kp.degree())
            } else {
                Err(Error::DegreeMismatch(format!(
                    "closed part degree {} does not match traceless degree {}",
                    z.degree(),
                    kp.degree()
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{delta, embed_j, fn_bracket};
    use crate::forms::VectorForm;

    fn poly(m: usize) -> ChartSpec {
        ChartSpec::poly(m).unwrap()
    }

    fn fourier(m: usize) -> ChartSpec {
        ChartSpec::fourier(m).unwrap()
    }

    fn x(chart: ChartSpec, j: usize) -> CoeffFn {
        CoeffFn::var(chart, j).unwrap()
    }

    fn dx(chart: ChartSpec, axes: &[u8]) -> ScalarForm {
        ScalarForm::basis(chart, axes).unwrap()
    }

    #[test]
    fn closedness() {
        let chart = poly(2);
        assert!(is_closed(&dx(chart, &[1])));
        assert!(!is_closed(&dx(chart, &[2]).scale_coeff(&x(chart, 1)).unwrap().neg().neg()));
        let t2 = fourier(2);
        let e = ScalarForm::basis(t2, &[1])
            .unwrap()
            .scale_coeff(&CoeffFn::mode(t2, &[1, 0]).unwrap())
            .unwrap();
        assert!(is_closed(&e));
    }

    #[test]
    fn poincare_example() {
        // x2 dx1 + x1 dx2 has primitive x1 x2
        let chart = poly(2);
        let phi = dx(chart, &[1])
            .scale_coeff(&x(chart, 2))
            .unwrap()
            .add(&dx(chart, &[2]).scale_coeff(&x(chart, 1)).unwrap())
            .unwrap();
        let eta = primitive(&phi).unwrap();
        assert_eq!(
            eta,
            ScalarForm::from_coeff(x(chart, 1).mul(&x(chart, 2)).unwrap())
        );
        assert_eq!(eta.ext_d(), phi);
    }

    #[test]
    fn fourier_mode_inversion() {
        // E[1,0] dx1 has primitive -i E[1,0]
        let chart = fourier(2);
        let phi = ScalarForm::basis(chart, &[1])
            .unwrap()
            .scale_coeff(&CoeffFn::mode(chart, &[1, 0]).unwrap())
            .unwrap();
        let eta = primitive(&phi).unwrap();
        let expect = ScalarForm::from_coeff(
            CoeffFn::mode(chart, &[1, 0]).unwrap().scale(&-Scalar::i()),
        );
        assert_eq!(eta, expect);
        assert_eq!(eta.ext_d(), phi);
    }

    #[test]
    fn harmonic_forms_are_not_exact() {
        let chart = fourier(2);
        assert!(matches!(
            primitive(&dx(chart, &[1])),
            Err(Error::NotExact(_))
        ));
    }

    #[test]
    fn primitive_rejects_non_closed() {
        let chart = poly(2);
        let bad = dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap();
        assert_eq!(primitive(&bad).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn derham_class_examples() {
        // (2 + E[3]) dx1 on T^1 has class 2 dx1
        let t1 = fourier(1);
        let coeff = CoeffFn::constant(t1, Scalar::from_int(2))
            .add(&CoeffFn::mode(t1, &[3]).unwrap())
            .unwrap();
        let phi = ScalarForm::basis(t1, &[1]).unwrap().scale_coeff(&coeff).unwrap();
        assert_eq!(
            derham_class(&phi).unwrap(),
            ScalarForm::basis(t1, &[1]).unwrap().scale(&Scalar::from_int(2))
        );

        // exact forms on R^2 have class zero
        let chart = poly(2);
        let exact = dx(chart, &[1])
            .scale_coeff(&x(chart, 2))
            .unwrap()
            .add(&dx(chart, &[2]).scale_coeff(&x(chart, 1)).unwrap())
            .unwrap();
        assert!(derham_class(&exact).unwrap().is_zero());

        // constants represent themselves
        let five = ScalarForm::constant(chart, Scalar::from_int(5));
        assert_eq!(derham_class(&five).unwrap(), five);
    }

    #[test]
    fn cocycle_check_examples() {
        let chart = poly(2);
        // traceless forms are cocycles
        let k = VectorForm::decomposable(&dx(chart, &[1]), 2).unwrap();
        assert!(delta_cocycle_check(&k));
        // x2 dx1 (x) d1 is not
        let k = VectorForm::decomposable(
            &dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap(),
            1,
        )
        .unwrap();
        assert!(!delta_cocycle_check(&k));
        assert!(!delta(&k).is_zero());
        // dx1 ^ I is (top degree on m = 2)
        let k = embed_j(&dx(chart, &[1]));
        assert!(delta_cocycle_check(&k));
    }

    #[test]
    fn delta_class_examples() {
        // I on the torus: class (1, 0)
        let chart = fourier(2);
        let ident = VectorForm::identity(chart);
        let class = delta_class(&ident).unwrap();
        assert_eq!(*class.dr_part(), ScalarForm::one(chart));
        assert!(class.traceless_part().is_zero());

        // traceless K: class (0, K)
        let chart = poly(2);
        let k = VectorForm::decomposable(&dx(chart, &[1]), 2).unwrap();
        let class = delta_class(&k).unwrap();
        assert!(class.dr_part().is_zero());
        assert_eq!(*class.traceless_part(), k);

        // coboundaries map to the zero class
        let l = VectorForm::decomposable(
            &dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap(),
            1,
        )
        .unwrap();
        let class = delta_class(&delta(&l)).unwrap();
        assert!(class.is_zero());
    }

    #[test]
    fn class_bracket_of_abelian_parts_vanishes() {
        let chart = fourier(2);
        let a = delta_class(&VectorForm::identity(chart)).unwrap();
        let b = delta_class(&VectorForm::identity(chart)).unwrap();
        let product = class_bracket(&a, &b).unwrap();
        assert!(product.is_zero());
    }

    #[test]
    fn sigma_worked_example() {
        // sigma(x2 dx1 (x) d2, dx2 (x) d1) = -1/2 dx2 on m = 3
        let chart = poly(3);
        let k = VectorForm::decomposable(
            &dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap(),
            2,
        )
        .unwrap();
        let l = VectorForm::decomposable(&dx(chart, &[2]), 1).unwrap();
        let got = sigma(&k, &l).unwrap();
        assert_eq!(got, dx(chart, &[2]).scale(&Scalar::from_ratio(-1, 2)));
        assert!(is_closed(&got));

        // vector fields give zero
        let xf = VectorForm::basis_field(chart, 1).unwrap();
        let yf = VectorForm::basis_field(chart, 2).unwrap();
        assert!(sigma(&xf, &yf).unwrap().is_zero());
    }

    #[test]
    fn theta_action_examples() {
        let chart = poly(2);
        // Theta(x1 d1)(dx1) = d(x1) = dx1
        let xf = VectorForm::decomposable(&ScalarForm::from_coeff(x(chart, 1)), 1).unwrap();
        assert_eq!(theta_action(&xf, &dx(chart, &[1])).unwrap(), dx(chart, &[1]));
        // Theta(K)(1) = 0
        let k = VectorForm::decomposable(&dx(chart, &[1]), 2).unwrap();
        assert!(theta_action(&k, &ScalarForm::one(chart)).unwrap().is_zero());
        // results are closed
        assert!(is_closed(&theta_action(&k, &dx(chart, &[2])).unwrap()));
    }

    #[test]
    fn extension_bracket_matches_direct_decomposition() {
        // (0, x2 dx1 (x) d2, 0, dx2 (x) d1) on m = 3
        let chart = poly(3);
        let kp = VectorForm::decomposable(
            &dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap(),
            2,
        )
        .unwrap();
        let lp = VectorForm::decomposable(&dx(chart, &[2]), 1).unwrap();
        let zero0 = ScalarForm::zero(chart, 0);
        let (z, t) = extension_bracket(&zero0, &kp, &zero0, &lp).unwrap();
        assert_eq!(z, dx(chart, &[2]).scale(&Scalar::from_ratio(-1, 2)));
        assert_eq!(t, c_bracket(&kp, &lp).unwrap());

        // cross-check against the full bracket of the assembled forms
        let full = fn_bracket(&kp, &lp).unwrap();
        assert_eq!(embed_j(&trace_cbar(&full)).add(&t).unwrap(), full);
        assert_eq!(trace_cbar(&full), z);
    }

    #[test]
    fn pure_closed_parts_bracket_to_zero() {
        // [dx1 ^ I, 1 ^ I] on m = 3: both pure closed parts, bracket zero.
        let chart = poly(3);
        let z_k = dx(chart, &[1]);
        let z_l = ScalarForm::one(chart);
        let (z_part, t_part) = extension_bracket(
            &z_k,
            &VectorForm::zero(chart, 2),
            &z_l,
            &VectorForm::zero(chart, 1),
        )
        .unwrap();
        assert!(z_part.is_zero());
        assert!(t_part.is_zero());
    }
}
