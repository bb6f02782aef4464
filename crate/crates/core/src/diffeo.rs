//! Explicit diffeomorphisms and pullbacks.
//!
//! Poly charts carry polynomial maps with an explicitly supplied polynomial
//! inverse; both compositions and the Jacobian identity are verified
//! exactly at construction. Fourier charts carry unimodular integer
//! matrices acting as `x -> Ax` on the torus, the only substitutions that
//! keep Fourier polynomials exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};

use crate::chart::ChartSpec;
use crate::coeff::{CoeffFn, Substitution};
use crate::error::{Error, Result};
use crate::forms::{MultiIndex, ScalarForm, VectorForm};

#[derive(Clone, Debug, PartialEq)]
enum DiffeoData {
    Poly {
        forward: Vec<CoeffFn>,
        inverse: Vec<CoeffFn>,
        /// Entries of the inverse Jacobian along the map:
        /// `inv_jacobian[l][j] = (d_j g^l) o f`.
        inv_jacobian: Vec<Vec<CoeffFn>>,
    },
    Fourier {
        matrix: Vec<Vec<i64>>,
        inverse: Vec<Vec<i64>>,
    },
}

/// A verified diffeomorphism of the chart model.
#[derive(Clone, Debug, PartialEq)]
pub struct Diffeo {
    chart: ChartSpec,
    data: DiffeoData,
}

impl Diffeo {
    /// Polynomial diffeomorphism from forward and inverse component lists.
    pub fn poly(chart: ChartSpec, forward: Vec<CoeffFn>, inverse: Vec<CoeffFn>) -> Result<Self> {
        if !chart.is_poly() {
            return Err(Error::ChartMismatch(
                "polynomial maps require a poly chart".into(),
            ));
        }
        let m = chart.dim();
        if forward.len() != m || inverse.len() != m {
            return Err(Error::ChartMismatch(format!(
                "expected {m} map components"
            )));
        }
        for c in forward.iter().chain(&inverse) {
            chart.ensure_same(&c.chart())?;
        }
        // g o f = id and f o g = id, checked exactly.
        for j in 1..=m {
            let xj = CoeffFn::var(chart, j)?;
            if inverse[j - 1].compose(&Substitution::Poly(&forward))? != xj
                || forward[j - 1].compose(&Substitution::Poly(&inverse))? != xj
            {
                return Err(Error::NotInverse);
            }
        }
        // J_f(x) * (J_g o f)(x) = Id, checked exactly.
        let jac_fwd = jacobian(chart, &forward)?;
        let mut inv_jacobian = vec![vec![CoeffFn::zero(chart); m]; m];
        for l in 0..m {
            for j in 0..m {
                inv_jacobian[l][j] = inverse[l]
                    .partial(j + 1)?
                    .compose(&Substitution::Poly(&forward))?;
            }
        }
        for r in 0..m {
            for c in 0..m {
                let mut acc = CoeffFn::zero(chart);
                for s in 0..m {
                    acc = acc.add(&inv_jacobian[r][s].mul(&jac_fwd[s][c])?)?;
                }
                let expect = if r == c {
                    CoeffFn::one(chart)
                } else {
                    CoeffFn::zero(chart)
                };
                if acc != expect {
                    return Err(Error::NotInverse);
                }
            }
        }
        Ok(Diffeo {
            chart,
            data: DiffeoData::Poly {
                forward,
                inverse,
                inv_jacobian,
            },
        })
    }

    /// Torus diffeomorphism `x -> Ax` for a unimodular integer matrix.
    pub fn fourier(chart: ChartSpec, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if !chart.is_fourier() {
            return Err(Error::ChartMismatch(
                "matrix maps require a fourier chart".into(),
            ));
        }
        let m = chart.dim();
        if matrix.len() != m || matrix.iter().any(|row| row.len() != m) {
            return Err(Error::ChartMismatch(format!("expected a {m}x{m} matrix")));
        }
        let (det, inv) = invert_rational(&matrix);
        if !(det == BigRational::one() || det == -BigRational::one()) {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let inv = inv.expect("unimodular matrix is invertible");
        let inverse: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        debug_assert!(e.is_integer());
                        int_to_i64(e.to_integer())
                    })
                    .collect()
            })
            .collect();
        Ok(Diffeo {
            chart,
            data: DiffeoData::Fourier { matrix, inverse },
        })
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    /// Identity map.
    pub fn identity(chart: ChartSpec) -> Result<Self> {
        if chart.is_poly() {
            let comps: Result<Vec<CoeffFn>> =
                (1..=chart.dim()).map(|j| CoeffFn::var(chart, j)).collect();
            let comps = comps?;
            Diffeo::poly(chart, comps.clone(), comps)
        } else {
            let m = chart.dim();
            let matrix: Vec<Vec<i64>> = (0..m)
                .map(|r| (0..m).map(|c| i64::from(r == c)).collect())
                .collect();
            Diffeo::fourier(chart, matrix)
        }
    }

    /// Substitute a coefficient function through the map.
    pub fn compose_coeff(&self, f: &CoeffFn) -> Result<CoeffFn> {
        self.chart.ensure_same(&f.chart())?;
        match &self.data {
            DiffeoData::Poly { forward, .. } => f.compose(&Substitution::Poly(forward)),
            DiffeoData::Fourier { matrix, .. } => {
                f.compose(&Substitution::FourierMatrix(matrix))
            }
        }
    }

    /// Pullback of the coordinate differential `dx^axis` as a 1-form.
    fn pull_dx(&self, axis: usize) -> Result<ScalarForm> {
        let m = self.chart.dim();
        let mut out = ScalarForm::zero(self.chart, 1);
        match &self.data {
            DiffeoData::Poly { forward, .. } => {
                for j in 1..=m {
                    let entry = forward[axis - 1].partial(j)?;
                    if entry.is_zero() {
                        continue;
                    }
                    out.add_term(
                        MultiIndex::new(&[j as u8]).expect("single axis"),
                        entry,
                    )?;
                }
            }
            DiffeoData::Fourier { matrix, .. } => {
                for j in 1..=m {
                    let entry = matrix[axis - 1][j - 1];
                    if entry == 0 {
                        continue;
                    }
                    out.add_term(
                        MultiIndex::new(&[j as u8]).expect("single axis"),
                        CoeffFn::constant(self.chart, crate::scalar::Scalar::from_int(entry)),
                    )?;
                }
            }
        }
        Ok(out)
    }

    /// Entry `(d_j g^l) o f` of the inverse Jacobian along the map.
    fn inv_jacobian_entry(&self, l: usize, j: usize) -> CoeffFn {
        match &self.data {
            DiffeoData::Poly { inv_jacobian, .. } => inv_jacobian[l - 1][j - 1].clone(),
            DiffeoData::Fourier { inverse, .. } => CoeffFn::constant(
                self.chart,
                crate::scalar::Scalar::from_int(inverse[l - 1][j - 1]),
            ),
        }
    }

    /// Standard pullback of a scalar form.
    pub fn pullback_scalar(&self, phi: &ScalarForm) -> Result<ScalarForm> {
        self.chart.ensure_same(&phi.chart())?;
        let mut out = ScalarForm::zero(self.chart, phi.degree());
        for (idx, coeff) in phi.terms() {
            let mut piece = ScalarForm::from_coeff(self.compose_coeff(coeff)?);
            for &axis in idx.axes() {
                piece = piece.wedge(&self.pull_dx(axis as usize)?)?;
            }
            if !piece.is_zero() {
                out = out.add(&piece)?;
            }
        }
        Ok(out)
    }

    /// Pullback of a tangent-valued form: the form part is pulled back and
    /// the vector part pushed forward through the inverse Jacobian.
    pub fn pullback_vector(&self, k: &VectorForm) -> Result<VectorForm> {
        self.chart.ensure_same(&k.chart())?;
        let m = self.chart.dim();
        let mut comps = vec![ScalarForm::zero(self.chart, k.degree()); m];
        for j in 1..=m {
            let kj = k.component(j);
            if kj.is_zero() {
                continue;
            }
            let pulled = self.pullback_scalar(kj)?;
            for l in 1..=m {
                let entry = self.inv_jacobian_entry(l, j);
                if entry.is_zero() {
                    continue;
                }
                let piece = pulled.scale_coeff(&entry)?;
                comps[l - 1] = comps[l - 1].add(&piece)?;
            }
        }
        VectorForm::from_components(self.chart, comps)
    }
}

fn jacobian(chart: ChartSpec, comps: &[CoeffFn]) -> Result<Vec<Vec<CoeffFn>>> {
    let m = chart.dim();
    let mut jac = vec![vec![CoeffFn::zero(chart); m]; m];
    for (r, comp) in comps.iter().enumerate() {
        for c in 0..m {
            jac[r][c] = comp.partial(c + 1)?;
        }
    }
    Ok(jac)
}

/// Exact determinant and inverse of an integer matrix via rational
/// Gauss-Jordan elimination.
fn invert_rational(matrix: &[Vec<i64>]) -> (BigRational, Option<Vec<Vec<BigRational>>>) {
    let m = matrix.len();
    let mut a: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|&e| BigRational::from_integer(BigInt::from(e)))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    if r == c {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..m {
        let Some(pivot) = (col..m).find(|&r| !a[r][col].is_zero()) else {
            return (BigRational::zero(), None);
        };
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for c in 0..m {
            a[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..m {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..m {
                let av = &a[col][c] * &factor;
                a[r][c] -= av;
                let iv = &inv[col][c] * &factor;
                inv[r][c] -= iv;
            }
        }
    }
    (det, Some(inv))
}

fn int_to_i64(v: BigInt) -> i64 {
    v.to_i64().expect("inverse entry fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn poly2() -> ChartSpec {
        ChartSpec::poly(2).unwrap()
    }

    fn swap_map(chart: ChartSpec) -> Diffeo {
        let x1 = CoeffFn::var(chart, 1).unwrap();
        let x2 = CoeffFn::var(chart, 2).unwrap();
        Diffeo::poly(chart, vec![x2.clone(), x1.clone()], vec![x2, x1]).unwrap()
    }

    fn shear_map(chart: ChartSpec) -> Diffeo {
        // (x1, x2 + x1^2) with inverse (x1, x2 - x1^2)
        let x1 = CoeffFn::var(chart, 1).unwrap();
        let x2 = CoeffFn::var(chart, 2).unwrap();
        let sq = CoeffFn::monomial(chart, &[2, 0]).unwrap();
        Diffeo::poly(
            chart,
            vec![x1.clone(), x2.add(&sq).unwrap()],
            vec![x1, x2.sub(&sq).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_inverse() {
        let chart = poly2();
        let x1 = CoeffFn::var(chart, 1).unwrap();
        let x2 = CoeffFn::var(chart, 2).unwrap();
        let bad = Diffeo::poly(chart, vec![x2.clone(), x1.clone()], vec![x1, x2]);
        assert_eq!(bad.unwrap_err(), Error::NotInverse);
    }

    #[test]
    fn rejects_non_unimodular() {
        let chart = ChartSpec::fourier(2).unwrap();
        let bad = Diffeo::fourier(chart, vec![vec![2, 0], vec![0, 1]]);
        assert!(matches!(bad, Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn swap_pulls_back_dx1_to_dx2() {
        let chart = poly2();
        let f = swap_map(chart);
        let dx1 = ScalarForm::basis(chart, &[1]).unwrap();
        assert_eq!(
            f.pullback_scalar(&dx1).unwrap(),
            ScalarForm::basis(chart, &[2]).unwrap()
        );
        // constants are fixed
        let one = ScalarForm::one(chart);
        assert_eq!(f.pullback_scalar(&one).unwrap(), one);
    }

    #[test]
    fn shear_chain_rule() {
        // pullback of dx2 along (x1, x2 + x1^2) is dx2 + 2 x1 dx1
        let chart = poly2();
        let f = shear_map(chart);
        let dx2 = ScalarForm::basis(chart, &[2]).unwrap();
        let got = f.pullback_scalar(&dx2).unwrap();
        let expect = dx2
            .add(
                &ScalarForm::basis(chart, &[1])
                    .unwrap()
                    .scale_coeff(
                        &CoeffFn::var(chart, 1)
                            .unwrap()
                            .scale(&Scalar::from_int(2)),
                    )
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn vector_pullback_examples() {
        let chart = poly2();
        let f = swap_map(chart);
        // dx1 (x) d2 pulls back to dx2 (x) d1
        let dx1 = ScalarForm::basis(chart, &[1]).unwrap();
        let dx2 = ScalarForm::basis(chart, &[2]).unwrap();
        let k = VectorForm::decomposable(&dx1, 2).unwrap();
        assert_eq!(
            f.pullback_vector(&k).unwrap(),
            VectorForm::decomposable(&dx2, 1).unwrap()
        );

        // the identity endomorphism is natural
        let g = shear_map(chart);
        let ident = VectorForm::identity(chart);
        assert_eq!(g.pullback_vector(&ident).unwrap(), ident);

        // constant field d2 is preserved by the shear (J^{-1} column)
        let d2 = VectorForm::basis_field(chart, 2).unwrap();
        assert_eq!(g.pullback_vector(&d2).unwrap(), d2);
    }

    #[test]
    fn pullback_commutes_with_d_and_wedge() {
        let chart = poly2();
        let f = shear_map(chart);
        let phi = ScalarForm::basis(chart, &[1])
            .unwrap()
            .scale_coeff(&CoeffFn::monomial(chart, &[1, 1]).unwrap())
            .unwrap();
        let psi = ScalarForm::from_coeff(CoeffFn::var(chart, 2).unwrap());
        assert_eq!(
            f.pullback_scalar(&phi.ext_d()).unwrap(),
            f.pullback_scalar(&phi).unwrap().ext_d()
        );
        assert_eq!(
            f.pullback_scalar(&phi.wedge(&psi).unwrap()).unwrap(),
            f.pullback_scalar(&phi)
                .unwrap()
                .wedge(&f.pullback_scalar(&psi).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn fourier_matrix_pullback() {
        let chart = ChartSpec::fourier(2).unwrap();
        let f = Diffeo::fourier(chart, vec![vec![1, 1], vec![0, 1]]).unwrap();
        let e = ScalarForm::from_coeff(CoeffFn::mode(chart, &[1, 0]).unwrap());
        assert_eq!(
            f.pullback_scalar(&e).unwrap(),
            ScalarForm::from_coeff(CoeffFn::mode(chart, &[1, 1]).unwrap())
        );
        let ident = VectorForm::identity(chart);
        assert_eq!(f.pullback_vector(&ident).unwrap(), ident);
    }
}
