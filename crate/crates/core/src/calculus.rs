//! The operator core on tangent-valued forms: trace and its normalization,
//! the wedge embedding, the projection onto the trace part, the degree-1
//! differential `delta`, the bilinear concomitant `S`, and the three graded
//! Lie brackets (Frölicher–Nijenhuis, Nijenhuis–Richardson, and the
//! corrected bracket on traceless forms).
//!
//! All scalar factors are exact rationals; every identity these operators
//! satisfy is enforced by the property suites in `suites`.

use num::rational::BigRational;
use num::traits::One;

use crate::error::{Error, Result};
use crate::forms::{insert_vv, ScalarForm, VectorForm};
use crate::scalar::neg_one_pow;

/// Trace `c(K) = sum_j i_{d_j} K_j`; degree `k-1`, zero on vector fields.
pub fn trace_c(k: &VectorForm) -> ScalarForm {
    let chart = k.chart();
    let target = k.degree().saturating_sub(1);
    let mut out = ScalarForm::zero(chart, target);
    if k.degree() == 0 {
        return out;
    }
    for j in 1..=chart.dim() {
        let piece = k.component(j).insert_axis(j).expect("axis in range");
        if !piece.is_zero() {
            out = out.add(&piece).expect("equal degrees");
        }
    }
    out
}

/// Normalized trace `cbar = (-1)^(k-1)/(m-k+1) c`, the left inverse of
/// the wedge embedding.
pub fn trace_cbar(k: &VectorForm) -> ScalarForm {
    let m = k.chart().dim() as i64;
    let deg = k.degree() as i64;
    let factor = neg_one_pow(deg - 1) / BigRational::from_integer((m - deg + 1).into());
    trace_c(k).scale_rat(&factor)
}

/// Wedge embedding `j(phi) = phi ^ I`; raises degree by one and vanishes
/// only on the top degree.
pub fn embed_j(phi: &ScalarForm) -> VectorForm {
    let chart = phi.chart();
    let m = chart.dim();
    let target = (phi.degree() + 1).min(m);
    if phi.degree() >= m {
        return VectorForm::zero(chart, target);
    }
    let comps: Vec<ScalarForm> = (1..=m)
        .map(|j| {
            let dxj = ScalarForm::basis(chart, &[j as u8]).expect("axis in range");
            phi.wedge(&dxj).expect("same chart")
        })
        .collect();
    VectorForm::from_components(chart, comps).expect("components consistent")
}

/// The projection `P = j o cbar` onto the trace part.
pub fn project_p(k: &VectorForm) -> VectorForm {
    embed_j(&trace_cbar(k))
}

/// The traceless part `K' = K - P(K)`; satisfies `c(K') = 0` exactly.
pub fn traceless_part(k: &VectorForm) -> VectorForm {
    k.sub(&project_p(k)).expect("degrees match")
}

/// True when the trace vanishes identically.
pub fn is_traceless(k: &VectorForm) -> bool {
    trace_c(k).is_zero()
}

/// The degree-1 differential `delta(K) = (-1)^(k-1) d c(K) ^ I`.
pub fn delta(k: &VectorForm) -> VectorForm {
    let sign = neg_one_pow(k.degree() as i64 - 1);
    embed_j(&trace_c(k).ext_d().scale_rat(&sign))
}

/// The bilinear concomitant
/// `S(K, L) = sum_{j,l} i_{d_l} K_j ^ i_{d_j} L_l` of degree `k + l - 2`.
pub fn s_concomitant(k: &VectorForm, l: &VectorForm) -> Result<ScalarForm> {
    k.chart().ensure_same(&l.chart())?;
    let chart = k.chart();
    let target = (k.degree() + l.degree()).saturating_sub(2).min(chart.dim());
    let mut out = ScalarForm::zero(chart, target);
    if k.degree() == 0 || l.degree() == 0 {
        return Ok(out);
    }
    for j in 1..=chart.dim() {
        let kj = k.component(j);
        if kj.is_zero() {
            continue;
        }
        for axis in 1..=chart.dim() {
            let ll = l.component(axis);
            if ll.is_zero() {
                continue;
            }
            let piece = kj.insert_axis(axis)?.wedge(&ll.insert_axis(j)?)?;
            if !piece.is_zero() {
                out = out.add(&piece)?;
            }
        }
    }
    Ok(out)
}

/// The Frölicher–Nijenhuis bracket, expanded termwise over coordinate
/// decomposables `K_j (x) d_j`:
///
/// `[K,L]_r = sum_j ( K_j ^ d_j L_r + (-1)^k dK_j ^ i_{d_j} L_r )
///          - sum_l ( d_l K_r ^ L_l - (-1)^k i_{d_l} K_r ^ dL_l )`.
pub fn fn_bracket(k: &VectorForm, l: &VectorForm) -> Result<VectorForm> {
    k.chart().ensure_same(&l.chart())?;
    let chart = k.chart();
    let m = chart.dim();
    let target = k.degree() + l.degree();
    if target > m {
        return Ok(VectorForm::zero(chart, target));
    }
    let sign_k = neg_one_pow(k.degree() as i64);
    let mut comps = vec![ScalarForm::zero(chart, target); m];
    for r in 1..=m {
        let mut acc = ScalarForm::zero(chart, target);
        let lr = l.component(r);
        let kr = k.component(r);
        for j in 1..=m {
            let kj = k.component(j);
            if !kj.is_zero() && !lr.is_zero() {
                let a = kj.wedge(&lr.partial(j)?)?;
                if !a.is_zero() {
                    acc = acc.add(&a)?;
                }
                let b = kj.ext_d().wedge(&lr.insert_axis(j)?)?;
                if !b.is_zero() {
                    acc = acc.add(&b.scale_rat(&sign_k))?;
                }
            }
            let lj = l.component(j);
            if !kr.is_zero() && !lj.is_zero() {
                let c = kr.partial(j)?.wedge(lj)?;
                if !c.is_zero() {
                    acc = acc.sub(&c)?;
                }
                let d = kr.insert_axis(j)?.wedge(&lj.ext_d())?;
                if !d.is_zero() {
                    acc = acc.add(&d.scale_rat(&sign_k))?;
                }
            }
        }
        comps[r - 1] = acc;
    }
    VectorForm::from_components(chart, comps)
}

/// The Nijenhuis–Richardson bracket
/// `[K,L]^ = i(K)L - (-1)^((k-1)(l-1)) i(L)K` of degree `k + l - 1`.
pub fn nr_bracket(k: &VectorForm, l: &VectorForm) -> Result<VectorForm> {
    k.chart().ensure_same(&l.chart())?;
    let first = insert_vv(k, l)?;
    let second = insert_vv(l, k)?;
    let sign = neg_one_pow((k.degree() as i64 - 1) * (l.degree() as i64 - 1));
    first.sub(&second.scale_rat(&sign))
}

/// The corrected bracket on traceless forms:
/// `[K,L]^c = [K,L] - (-1)^l/(m-k-l+1) dS(K,L) ^ I`.
///
/// Inputs must be traceless. Above the top degree the result is the zero
/// form and the scalar factor (whose denominator vanishes at
/// `k + l = m + 1`) is never evaluated.
pub fn c_bracket(k: &VectorForm, l: &VectorForm) -> Result<VectorForm> {
    k.chart().ensure_same(&l.chart())?;
    ensure_traceless(k, "left argument")?;
    ensure_traceless(l, "right argument")?;
    let m = k.chart().dim();
    let (dk, dl) = (k.degree(), l.degree());
    if dk + dl > m {
        return Ok(VectorForm::zero(k.chart(), dk + dl));
    }
    let plain = fn_bracket(k, l)?;
    let denom = (m as i64) - (dk as i64) - (dl as i64) + 1;
    let factor = neg_one_pow(dl as i64) / BigRational::from_integer(denom.into());
    let correction = embed_j(&s_concomitant(k, l)?.ext_d()).scale_rat(&factor);
    plain.sub(&correction)
}

pub(crate) fn ensure_traceless(k: &VectorForm, what: &str) -> Result<()> {
    if is_traceless(k) {
        Ok(())
    } else {
        Err(Error::NotTraceless(what.into()))
    }
}

/// The bracket induced on scalar forms by the wedge embedding into the
/// Frölicher–Nijenhuis algebra:
/// `[phi,psi] = (-1)^(k-1) ( dphi ^ l psi - (-1)^((k-1)(l-1)) dpsi ^ k phi )`.
pub fn induced_fn_omega(phi: &ScalarForm, psi: &ScalarForm) -> Result<ScalarForm> {
    phi.chart().ensure_same(&psi.chart())?;
    let m = phi.chart().dim();
    if phi.is_zero() || psi.is_zero() {
        return Ok(ScalarForm::zero(phi.chart(), phi.degree() + psi.degree()));
    }
    if phi.degree() >= m || psi.degree() >= m {
        return Err(Error::DegreeOutOfRange(format!(
            "induced bracket needs degrees <= {}, got {} and {}",
            m - 1,
            phi.degree(),
            psi.degree()
        )));
    }
    let (dk, dl) = (phi.degree() as i64, psi.degree() as i64);
    let first = phi
        .ext_d()
        .wedge(psi)?
        .scale_rat(&BigRational::from_integer(dl.into()));
    let second = psi
        .ext_d()
        .wedge(phi)?
        .scale_rat(&(neg_one_pow((dk - 1) * (dl - 1)) * BigRational::from_integer(dk.into())));
    first.sub(&second).map(|r| r.scale_rat(&neg_one_pow(dk - 1)))
}

/// The bracket induced on scalar forms by the Nijenhuis–Richardson one:
/// `[phi,psi]^ = (l - k) phi ^ psi`.
pub fn induced_nr_omega(phi: &ScalarForm, psi: &ScalarForm) -> Result<ScalarForm> {
    phi.chart().ensure_same(&psi.chart())?;
    let factor = BigRational::from_integer(
        ((psi.degree() as i64) - (phi.degree() as i64)).into(),
    );
    Ok(phi.wedge(psi)?.scale_rat(&factor))
}

/// `1/(m-k+1)` convenience used by the commuting-diagram tests.
pub fn cbar_denominator(m: usize, degree: usize) -> BigRational {
    BigRational::one() / BigRational::from_integer(((m as i64) - (degree as i64) + 1).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::ChartSpec;
    use crate::coeff::CoeffFn;
    use crate::scalar::Scalar;

    fn poly(m: usize) -> ChartSpec {
        ChartSpec::poly(m).unwrap()
    }

    fn x(chart: ChartSpec, j: usize) -> CoeffFn {
        CoeffFn::var(chart, j).unwrap()
    }

    fn dx(chart: ChartSpec, axes: &[u8]) -> ScalarForm {
        ScalarForm::basis(chart, axes).unwrap()
    }

    #[test]
    fn trace_examples() {
        let chart = poly(2);
        // c(dx1 (x) d2) = 0
        let k = VectorForm::decomposable(&dx(chart, &[1]), 2).unwrap();
        assert!(trace_c(&k).is_zero());
        // c(x2 dx1 (x) d1) = x2
        let k = VectorForm::decomposable(
            &dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap(),
            1,
        )
        .unwrap();
        assert_eq!(trace_c(&k), ScalarForm::from_coeff(x(chart, 2)));
    }

    #[test]
    fn trace_of_wedge_embedding() {
        // c(phi ^ I) = (-1)^k (m-k) phi with phi = dx1, m = 3
        let chart = poly(3);
        let phi = dx(chart, &[1]);
        let embedded = embed_j(&phi);
        assert_eq!(trace_c(&embedded), phi.scale(&Scalar::from_int(-2)));
    }

    #[test]
    fn cbar_examples() {
        let chart3 = poly(3);
        // cbar(dx1 ^ I) = dx1 on m = 3
        let phi = dx(chart3, &[1]);
        assert_eq!(trace_cbar(&embed_j(&phi)), phi);
        // cbar(x2 dx1 (x) d1) = x2/2 on m = 2
        let chart2 = poly(2);
        let k = VectorForm::decomposable(
            &dx(chart2, &[1]).scale_coeff(&x(chart2, 2)).unwrap(),
            1,
        )
        .unwrap();
        assert_eq!(
            trace_cbar(&k),
            ScalarForm::from_coeff(x(chart2, 2).scale(&Scalar::from_ratio(1, 2)))
        );
        // cbar vanishes on vector fields
        let xf = VectorForm::basis_field(chart2, 1).unwrap();
        assert!(trace_cbar(&xf).is_zero());
    }

    #[test]
    fn embed_examples() {
        let chart = poly(2);
        // j(1) = I
        assert_eq!(embed_j(&ScalarForm::one(chart)), VectorForm::identity(chart));
        // j(dx1) on m=2 keeps only the d2 component dx1^dx2
        let embedded = embed_j(&dx(chart, &[1]));
        assert!(embedded.component(1).is_zero());
        assert_eq!(*embedded.component(2), dx(chart, &[1, 2]));
    }

    #[test]
    fn projection_and_traceless() {
        let chart = poly(2);
        let ident = VectorForm::identity(chart);
        assert_eq!(project_p(&ident), ident);
        assert!(traceless_part(&ident).is_zero());

        let k = VectorForm::decomposable(&dx(chart, &[1]), 2).unwrap();
        assert!(project_p(&k).is_zero());
        assert_eq!(traceless_part(&k), k);

        // K = x1 dx1 (x) d1 + dx1 (x) d2 decomposes per the worked example
        let k = VectorForm::from_components(
            chart,
            vec![
                dx(chart, &[1]).scale_coeff(&x(chart, 1)).unwrap(),
                dx(chart, &[1]),
            ],
        )
        .unwrap();
        let half_x1 = x(chart, 1).scale(&Scalar::from_ratio(1, 2));
        let kp = traceless_part(&k);
        let expect = VectorForm::from_components(
            chart,
            vec![
                dx(chart, &[1]).scale_coeff(&half_x1).unwrap(),
                dx(chart, &[1])
                    .sub(&dx(chart, &[2]).scale_coeff(&half_x1).unwrap())
                    .unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(kp, expect);
        assert!(trace_c(&kp).is_zero());
    }

    #[test]
    fn delta_examples() {
        let chart = poly(2);
        // delta vanishes on vector fields
        let xf = VectorForm::basis_field(chart, 1).unwrap();
        assert!(delta(&xf).is_zero());
        // delta(x2 dx1 (x) d1) = -dx1^dx2 (x) d1
        let k = VectorForm::decomposable(
            &dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap(),
            1,
        )
        .unwrap();
        let expect = VectorForm::decomposable(&dx(chart, &[1, 2]).neg(), 1).unwrap();
        assert_eq!(delta(&k), expect);
    }

    #[test]
    fn delta_commutes_with_embedding() {
        // delta(j(phi)) = (m-k+1) j(d phi) for phi of degree k-1
        let chart = poly(3);
        let phi = dx(chart, &[2]).scale_coeff(&x(chart, 1)).unwrap();
        let k = phi.degree() + 1;
        let lhs = delta(&embed_j(&phi));
        let rhs = embed_j(&phi.ext_d())
            .scale(&Scalar::from_int((chart.dim() - k + 1) as i64));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn s_concomitant_examples() {
        let chart = poly(2);
        let k = VectorForm::decomposable(&dx(chart, &[1]), 2).unwrap();
        let l = VectorForm::decomposable(&dx(chart, &[2]), 1).unwrap();
        assert_eq!(s_concomitant(&k, &l).unwrap(), ScalarForm::one(chart));

        let xf = VectorForm::basis_field(chart, 1).unwrap();
        let yf = VectorForm::basis_field(chart, 2).unwrap();
        assert!(s_concomitant(&xf, &yf).unwrap().is_zero());

        let k = VectorForm::decomposable(
            &dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap(),
            2,
        )
        .unwrap();
        assert_eq!(
            s_concomitant(&k, &l).unwrap(),
            ScalarForm::from_coeff(x(chart, 2))
        );
    }

    #[test]
    fn fn_bracket_is_lie_bracket_on_fields() {
        // [d1, x1 d2] = d2
        let chart = poly(2);
        let d1 = VectorForm::basis_field(chart, 1).unwrap();
        let x1d2 = VectorForm::decomposable(&ScalarForm::from_coeff(x(chart, 1)), 2).unwrap();
        let d2 = VectorForm::basis_field(chart, 2).unwrap();
        assert_eq!(fn_bracket(&d1, &x1d2).unwrap(), d2);
    }

    #[test]
    fn fn_bracket_worked_example() {
        // [x2 dx1 (x) d1, dx1 (x) d2] = dx1^dx2 (x) d2 on m = 2
        let chart = poly(2);
        let k = VectorForm::decomposable(
            &dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap(),
            1,
        )
        .unwrap();
        let l = VectorForm::decomposable(&dx(chart, &[1]), 2).unwrap();
        let expect = VectorForm::decomposable(&dx(chart, &[1, 2]), 2).unwrap();
        assert_eq!(fn_bracket(&k, &l).unwrap(), expect);
    }

    #[test]
    fn identity_is_central() {
        let chart = poly(2);
        let ident = VectorForm::identity(chart);
        let k = VectorForm::decomposable(
            &dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap(),
            1,
        )
        .unwrap();
        assert!(fn_bracket(&ident, &k).unwrap().is_zero());
        assert!(fn_bracket(&k, &ident).unwrap().is_zero());
    }

    #[test]
    fn nr_bracket_examples() {
        let chart = poly(2);
        // vector fields bracket to zero
        let xf = VectorForm::basis_field(chart, 1).unwrap();
        let yf = VectorForm::basis_field(chart, 2).unwrap();
        assert!(nr_bracket(&xf, &yf).unwrap().is_zero());

        // [dx1 (x) d2, dx2 (x) d1]^ = dx1 (x) d1 - dx2 (x) d2
        let k = VectorForm::decomposable(&dx(chart, &[1]), 2).unwrap();
        let l = VectorForm::decomposable(&dx(chart, &[2]), 1).unwrap();
        let expect = VectorForm::decomposable(&dx(chart, &[1]), 1)
            .unwrap()
            .sub(&VectorForm::decomposable(&dx(chart, &[2]), 2).unwrap())
            .unwrap();
        assert_eq!(nr_bracket(&k, &l).unwrap(), expect);

        // [K, I]^ = (1 - k) K; at k = 1 the bracket vanishes
        let ident = VectorForm::identity(chart);
        assert!(nr_bracket(&k, &ident).unwrap().is_zero());
    }

    #[test]
    fn nr_bracket_with_identity_scales() {
        let chart = poly(3);
        let k = VectorForm::decomposable(&dx(chart, &[1, 2]), 3).unwrap();
        let ident = VectorForm::identity(chart);
        let got = nr_bracket(&k, &ident).unwrap();
        assert_eq!(got, k.scale(&Scalar::from_int(1 - 2)));
    }

    #[test]
    fn c_bracket_requires_traceless() {
        let chart = poly(2);
        let bad = VectorForm::decomposable(&dx(chart, &[1]), 1).unwrap();
        let good = VectorForm::decomposable(&dx(chart, &[1]), 2).unwrap();
        assert!(matches!(
            c_bracket(&bad, &good),
            Err(Error::NotTraceless(_))
        ));
    }

    #[test]
    fn c_bracket_on_vector_fields_is_fn_bracket() {
        let chart = poly(2);
        let xf = VectorForm::decomposable(&ScalarForm::from_coeff(x(chart, 2)), 1).unwrap();
        let yf = VectorForm::decomposable(&ScalarForm::from_coeff(x(chart, 1)), 2).unwrap();
        assert_eq!(
            c_bracket(&xf, &yf).unwrap(),
            fn_bracket(&xf, &yf).unwrap()
        );
    }

    #[test]
    fn c_bracket_top_degree_is_zero() {
        // m=2: [dx1 (x) d2, x1 dx2 (x) d1]^c = 0
        let chart = poly(2);
        let k = VectorForm::decomposable(&dx(chart, &[1]), 2).unwrap();
        let l = VectorForm::decomposable(
            &dx(chart, &[2]).scale_coeff(&x(chart, 1)).unwrap(),
            1,
        )
        .unwrap();
        assert!(c_bracket(&k, &l).unwrap().is_zero());
    }

    #[test]
    fn c_bracket_worked_example() {
        // m=3: [x2 dx1 (x) d2, dx2 (x) d1]^c
        //    = 1/2 dx1^dx2 (x) d1 + 1/2 dx2^dx3 (x) d3
        let chart = poly(3);
        let k = VectorForm::decomposable(
            &dx(chart, &[1]).scale_coeff(&x(chart, 2)).unwrap(),
            2,
        )
        .unwrap();
        let l = VectorForm::decomposable(&dx(chart, &[2]), 1).unwrap();
        let half = Scalar::from_ratio(1, 2);
        let expect = VectorForm::from_components(
            chart,
            vec![
                dx(chart, &[1, 2]).scale(&half),
                ScalarForm::zero(chart, 2),
                dx(chart, &[2, 3]).scale(&half),
            ],
        )
        .unwrap();
        let got = c_bracket(&k, &l).unwrap();
        assert_eq!(got, expect);
        assert!(trace_c(&got).is_zero());
    }

    #[test]
    fn induced_brackets() {
        let chart = poly(3);
        // [1, psi] = 0
        let psi = dx(chart, &[2]).scale_coeff(&x(chart, 1)).unwrap();
        assert!(induced_fn_omega(&ScalarForm::one(chart), &psi)
            .unwrap()
            .is_zero());
        // [dx1, x1 dx2] = -(dx1^dx2)^dx1 = 0 by alternation
        assert!(induced_fn_omega(&dx(chart, &[1]), &psi).unwrap().is_zero());
        // degree cap
        let top = dx(chart, &[1, 2, 3]);
        assert!(matches!(
            induced_fn_omega(&top, &psi),
            Err(Error::DegreeOutOfRange(_))
        ));

        // NR induced: [1, dx1]^ = dx1, [dx1, x1 dx2]^ = 0,
        // [dx1^dx2, x1]^ = -2 x1 dx1^dx2
        assert_eq!(
            induced_nr_omega(&ScalarForm::one(chart), &dx(chart, &[1])).unwrap(),
            dx(chart, &[1])
        );
        assert!(induced_nr_omega(&dx(chart, &[1]), &psi).unwrap().is_zero());
        let f = ScalarForm::from_coeff(x(chart, 1));
        assert_eq!(
            induced_nr_omega(&dx(chart, &[1, 2]), &f).unwrap(),
            dx(chart, &[1, 2])
                .scale_coeff(&x(chart, 1))
                .unwrap()
                .scale(&Scalar::from_int(-2))
        );
    }
}
