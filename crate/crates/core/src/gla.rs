//! Cochain calculus for graded Lie algebras.
//!
//! A `p`-cochain of degree `q` is a `p`-linear graded-alternating map into
//! a graded module; it reacts to interchanging adjacent arguments `X_i`,
//! `X_{i+1}` with the sign `-(-1)^(x_i x_{i+1})`. The differential is
//!
//! `(dPhi)(X_0,..,X_p) = sum_i (-1)^(a_i + x_i q) Theta(X_i) Phi(.., ^X_i, ..)
//!   + sum_{i<j} (-1)^(a_i + a_j - x_i x_j) Phi([X_i,X_j], X_0, .., ^X_i, .., ^X_j, ..)`
//!
//! with `a_i = i + x_i (x_0 + ... + x_{i-1})`. Cochains are evaluation
//! procedures, not coefficient tables: the algebra of traceless forms is
//! infinite-dimensional, so cocycle equations are checked pointwise on
//! sampled arguments. A small finite fixture type ([`FiniteGla`]) backs
//! the `d o d = 0` checks with exact structure constants.

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::calculus::{c_bracket, is_traceless};
use crate::chart::ChartSpec;
use crate::cohomology::{is_closed, theta_action};
use crate::error::{Error, Result};
use crate::forms::{ScalarForm, VectorForm};
use crate::scalar::Scalar;

/// The Koszul prefix sign exponent `a_i = i + x_i (x_0 + ... + x_{i-1})`.
fn alpha(i: usize, degrees: &[i64]) -> i64 {
    let prefix: i64 = degrees[..i].iter().sum();
    i as i64 + degrees[i] * prefix
}

fn sign_of(exp: i64) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A graded Lie algebra together with a graded module, exposed through the
/// operations the cochain differential needs.
pub trait GradedContext {
    /// Homogeneous algebra element.
    type Elt: Clone;
    /// Homogeneous module value.
    type Val: Clone;

    /// Degree of a homogeneous algebra element.
    fn elt_degree(&self, x: &Self::Elt) -> Result<i64>;
    /// Degree of a module value; `None` when zero (degree-ambiguous).
    fn val_degree(&self, v: &Self::Val) -> Result<Option<i64>>;
    fn is_zero_elt(&self, x: &Self::Elt) -> bool;
    fn is_zero_val(&self, v: &Self::Val) -> bool;
    fn bracket(&self, x: &Self::Elt, y: &Self::Elt) -> Result<Self::Elt>;
    fn act(&self, x: &Self::Elt, v: &Self::Val) -> Result<Self::Val>;
    fn add_val(&self, a: Self::Val, b: &Self::Val) -> Result<Self::Val>;
    fn negate_val(&self, v: Self::Val) -> Self::Val;
}

type Evaluator<C> = dyn Fn(&C, &[<C as GradedContext>::Elt]) -> Result<<C as GradedContext>::Val>;

/// A `p`-linear graded-alternating cochain of degree `q`, given by an
/// evaluation procedure.
///
/// Gradedness and alternation are the caller's contract; enable
/// [`Cochain::with_alternation_check`] to have evaluations spot-check the
/// alternation sign on adjacent transpositions of the supplied arguments.
pub struct Cochain<C: GradedContext> {
    arity: usize,
    degree: i64,
    eval: Rc<Evaluator<C>>,
    check_alternation: bool,
}

impl<C: GradedContext> Clone for Cochain<C> {
    fn clone(&self) -> Self {
        Cochain {
            arity: self.arity,
            degree: self.degree,
            eval: Rc::clone(&self.eval),
            check_alternation: self.check_alternation,
        }
    }
}

impl<C: GradedContext + 'static> Cochain<C> {
    pub fn new<F>(arity: usize, degree: i64, eval: F) -> Self
    where
        F: Fn(&C, &[C::Elt]) -> Result<C::Val> + 'static,
    {
        Cochain {
            arity,
            degree,
            eval: Rc::new(eval),
            check_alternation: false,
        }
    }

    pub fn with_alternation_check(mut self, enabled: bool) -> Self {
        self.check_alternation = enabled;
        self
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Evaluate at homogeneous arguments, enforcing arity, the degree law
    /// `deg Phi(X_1..X_p) = x_1 + ... + x_p + q`, and (optionally) the
    /// alternation convention.
    pub fn eval(&self, ctx: &C, args: &[C::Elt]) -> Result<C::Val> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        let value = (self.eval)(ctx, args)?;
        let expected: i64 = args
            .iter()
            .map(|x| ctx.elt_degree(x))
            .sum::<Result<i64>>()?
            + self.degree;
        if let Some(got) = ctx.val_degree(&value)? {
            if got != expected {
                return Err(Error::DegreeInconsistent(format!(
                    "cochain value has degree {got}, expected {expected}"
                )));
            }
        }
        if self.check_alternation && self.arity >= 2 {
            for i in 0..self.arity - 1 {
                let mut swapped = args.to_vec();
                swapped.swap(i, i + 1);
                let other = (self.eval)(ctx, &swapped)?;
                let xi = ctx.elt_degree(&args[i])?;
                let xj = ctx.elt_degree(&args[i + 1])?;
                let expect = if sign_of(xi * xj) > 0 {
                    ctx.negate_val(value.clone())
                } else {
                    value.clone()
                };
                let defect = ctx.add_val(other, &ctx.negate_val(expect))?;
                if !ctx.is_zero_val(&defect) {
                    return Err(Error::DegreeInconsistent(format!(
                        "cochain is not graded-alternating in slots {i} and {}",
                        i + 1
                    )));
                }
            }
        }
        Ok(value)
    }

    /// The cochain differential as a new cochain of arity `p + 1`.
    pub fn boundary(&self) -> Cochain<C> {
        let phi = self.clone();
        Cochain::new(self.arity + 1, self.degree, move |ctx: &C, args| {
            cochain_partial(ctx, &phi, args)
        })
    }
}

/// Evaluate the cochain differential `(dPhi)(args)` at `p + 1` arguments.
pub fn cochain_partial<C: GradedContext + 'static>(
    ctx: &C,
    phi: &Cochain<C>,
    args: &[C::Elt],
) -> Result<C::Val> {
    let p1 = phi.arity() + 1;
    if args.len() != p1 {
        return Err(Error::ArityMismatch {
            expected: p1,
            got: args.len(),
        });
    }
    let degrees: Vec<i64> = args
        .iter()
        .map(|x| ctx.elt_degree(x))
        .collect::<Result<Vec<_>>>()?;
    let q = phi.degree();
    let mut acc: Option<C::Val> = None;
    let mut push = |acc: &mut Option<C::Val>, sign: i64, v: C::Val| -> Result<()> {
        let signed = if sign < 0 { ctx.negate_val(v) } else { v };
        *acc = Some(match acc.take() {
            None => signed,
            Some(cur) => ctx.add_val(cur, &signed)?,
        });
        Ok(())
    };

    for i in 0..p1 {
        let rest: Vec<C::Elt> = args
            .iter()
            .enumerate()
            .filter(|(idx, _)| *idx != i)
            .map(|(_, x)| x.clone())
            .collect();
        let inner = phi.eval(ctx, &rest)?;
        let acted = ctx.act(&args[i], &inner)?;
        let sign = sign_of(alpha(i, &degrees) + degrees[i] * q);
        push(&mut acc, sign, acted)?;
    }

    for i in 0..p1 {
        for j in (i + 1)..p1 {
            let bracket = ctx.bracket(&args[i], &args[j])?;
            if ctx.is_zero_elt(&bracket) {
                continue;
            }
            let mut rest: Vec<C::Elt> = Vec::with_capacity(phi.arity());
            rest.push(bracket);
            for (idx, x) in args.iter().enumerate() {
                if idx != i && idx != j {
                    rest.push(x.clone());
                }
            }
            let inner = phi.eval(ctx, &rest)?;
            let sign = sign_of(alpha(i, &degrees) + alpha(j, &degrees) - degrees[i] * degrees[j]);
            push(&mut acc, sign, inner)?;
        }
    }
    acc.ok_or(Error::ArityMismatch {
        expected: p1,
        got: 0,
    })
}

/// Evaluate `(d d Phi)(args)` and report whether it vanishes.
pub fn d_squared_check<C: GradedContext + 'static>(
    ctx: &C,
    phi: &Cochain<C>,
    args: &[C::Elt],
) -> Result<bool> {
    let ddphi = phi.boundary().boundary();
    let value = ddphi.eval(ctx, args)?;
    Ok(ctx.is_zero_val(&value))
}

// ---- Concrete context: traceless forms acting on closed scalar forms ----

/// The graded Lie algebra of traceless forms under the corrected bracket,
/// acting on closed scalar forms through the Lie derivative.
///
/// A closed `(q-1)`-form carries module degree `q`, so the extension
/// cocycle is a degree-0 two-cochain.
#[derive(Clone, Copy, Debug)]
pub struct FormContext {
    chart: ChartSpec,
}

impl FormContext {
    pub fn new(chart: ChartSpec) -> Self {
        FormContext { chart }
    }

    pub fn chart(&self) -> ChartSpec {
        self.chart
    }

    /// A module element must be closed and below the top form degree.
    pub fn check_module_element(&self, z: &ScalarForm) -> Result<()> {
        self.chart.ensure_same(&z.chart())?;
        if !is_closed(z) {
            return Err(Error::NotClosed);
        }
        if !z.is_zero() && z.degree() >= self.chart.dim() {
            return Err(Error::DegreeOutOfRange(format!(
                "module elements live below form degree {}",
                self.chart.dim()
            )));
        }
        Ok(())
    }
}

impl GradedContext for FormContext {
    type Elt = VectorForm;
    type Val = ScalarForm;

    fn elt_degree(&self, x: &Self::Elt) -> Result<i64> {
        self.chart.ensure_same(&x.chart())?;
        if !is_traceless(x) {
            return Err(Error::NotTraceless("cochain argument".into()));
        }
        Ok(x.degree() as i64)
    }

    fn val_degree(&self, v: &Self::Val) -> Result<Option<i64>> {
        self.chart.ensure_same(&v.chart())?;
        if v.is_zero() {
            Ok(None)
        } else {
            // module grading shift: a closed (q-1)-form has degree q
            Ok(Some(v.degree() as i64 + 1))
        }
    }

    fn is_zero_elt(&self, x: &Self::Elt) -> bool {
        x.is_zero()
    }

    fn is_zero_val(&self, v: &Self::Val) -> bool {
        v.is_zero()
    }

    fn bracket(&self, x: &Self::Elt, y: &Self::Elt) -> Result<Self::Elt> {
        c_bracket(x, y)
    }

    fn act(&self, x: &Self::Elt, v: &Self::Val) -> Result<Self::Val> {
        theta_action(x, v)
    }

    fn add_val(&self, a: Self::Val, b: &Self::Val) -> Result<Self::Val> {
        a.add(b)
    }

    fn negate_val(&self, v: Self::Val) -> Self::Val {
        v.neg()
    }
}

// ---- Finite fixtures with exact structure constants ----

/// Basis label within a [`FiniteGla`].
pub type BasisIdx = usize;

/// Sparse structure-constant table: `(a, b) -> [(target, coefficient)]`.
pub type ConstTable = BTreeMap<(BasisIdx, BasisIdx), Vec<(BasisIdx, Scalar)>>;

/// A finite graded Lie algebra plus finite graded module, given by exact
/// structure constants. Graded antisymmetry, the graded Jacobi identity
/// and the module homomorphism law are verified at construction.
#[derive(Clone, Debug)]
pub struct FiniteGla {
    /// Degree of each algebra basis element.
    algebra_degrees: Vec<i64>,
    /// `brackets[a][b][c]`: coefficient of `e_c` in `[e_a, e_b]`.
    brackets: Vec<Vec<Vec<Scalar>>>,
    /// Degree of each module basis element.
    module_degrees: Vec<i64>,
    /// `action[a][u][v]`: coefficient of `m_v` in `Theta(e_a) m_u`.
    action: Vec<Vec<Vec<Scalar>>>,
}

/// Element of a [`FiniteGla`]: coefficients over the algebra basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GlaElt(pub Vec<Scalar>);

/// Module value of a [`FiniteGla`]: coefficients over the module basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GlaVal(pub Vec<Scalar>);

impl FiniteGla {
    /// Build and verify a fixture.
    ///
    /// Pairs missing from `bracket_table` whose mirror is present are
    /// filled in by graded antisymmetry.
    pub fn new(
        algebra_degrees: Vec<i64>,
        bracket_table: &ConstTable,
        module_degrees: Vec<i64>,
        action_table: &ConstTable,
    ) -> Result<Self> {
        let n = algebra_degrees.len();
        let w = module_degrees.len();
        let mut brackets = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (&(a, b), entries) in bracket_table {
            if a >= n || b >= n {
                return Err(Error::InvalidStructure("bracket index out of range".into()));
            }
            for (c, coeff) in entries {
                if *c >= n {
                    return Err(Error::InvalidStructure("bracket target out of range".into()));
                }
                brackets[a][b][*c] = &brackets[a][b][*c] + coeff;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if bracket_table.contains_key(&(a, b)) || !bracket_table.contains_key(&(b, a)) {
                    continue;
                }
                let sign = sign_of(algebra_degrees[a] * algebra_degrees[b]);
                for c in 0..n {
                    let v = brackets[b][a][c].clone();
                    brackets[a][b][c] = if sign > 0 { -v } else { v };
                }
            }
        }
        let mut action = vec![vec![vec![Scalar::zero(); w]; w]; n];
        for (&(a, u), entries) in action_table {
            if a >= n || u >= w {
                return Err(Error::InvalidStructure("action index out of range".into()));
            }
            for (v, coeff) in entries {
                if *v >= w {
                    return Err(Error::InvalidStructure("action target out of range".into()));
                }
                action[a][u][*v] = &action[a][u][*v] + coeff;
            }
        }
        let gla = FiniteGla {
            algebra_degrees,
            brackets,
            module_degrees,
            action,
        };
        gla.verify()?;
        Ok(gla)
    }

    fn verify(&self) -> Result<()> {
        let n = self.algebra_degrees.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !self.brackets[a][b][c].is_zero()
                        && self.algebra_degrees[c]
                            != self.algebra_degrees[a] + self.algebra_degrees[b]
                    {
                        return Err(Error::InvalidStructure(format!(
                            "bracket [{a},{b}] hits degree-incompatible basis {c}"
                        )));
                    }
                }
                let sign = sign_of(self.algebra_degrees[a] * self.algebra_degrees[b]);
                for c in 0..n {
                    let lhs = &self.brackets[a][b][c];
                    let mirrored = self.brackets[b][a][c].clone();
                    let expect = if sign > 0 { -mirrored } else { mirrored };
                    if *lhs != expect {
                        return Err(Error::InvalidStructure(format!(
                            "graded antisymmetry fails on ({a},{b})"
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ea = self.basis_elt(a).0;
                    let eb = self.basis_elt(b).0;
                    let ec = self.basis_elt(c).0;
                    let lhs = self.bracket_vec(&ea, &self.bracket_vec(&eb, &ec));
                    let first = self.bracket_vec(&self.bracket_vec(&ea, &eb), &ec);
                    let second = self.bracket_vec(&eb, &self.bracket_vec(&ea, &ec));
                    let sign = sign_of(self.algebra_degrees[a] * self.algebra_degrees[b]);
                    for t in 0..n {
                        let sec = if sign > 0 {
                            second[t].clone()
                        } else {
                            -second[t].clone()
                        };
                        if lhs[t] != &first[t] + &sec {
                            return Err(Error::InvalidStructure(format!(
                                "graded Jacobi fails on ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        let w = self.module_degrees.len();
        for a in 0..n {
            for u in 0..w {
                for v in 0..w {
                    if !self.action[a][u][v].is_zero()
                        && self.module_degrees[v]
                            != self.module_degrees[u] + self.algebra_degrees[a]
                    {
                        return Err(Error::InvalidStructure(format!(
                            "action of {a} on {u} hits degree-incompatible basis {v}"
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ea = self.basis_elt(a).0;
                let eb = self.basis_elt(b).0;
                let bracket_ab = self.bracket_vec(&ea, &eb);
                let sign = sign_of(self.algebra_degrees[a] * self.algebra_degrees[b]);
                for u in 0..w {
                    let mut unit = vec![Scalar::zero(); w];
                    unit[u] = Scalar::one();
                    let lhs = self.act_vec(&bracket_ab, &unit);
                    let ab = self.act_vec(&ea, &self.act_vec(&eb, &unit));
                    let ba = self.act_vec(&eb, &self.act_vec(&ea, &unit));
                    for t in 0..w {
                        let graded = if sign > 0 {
                            &ab[t] - &ba[t]
                        } else {
                            &ab[t] + &ba[t]
                        };
                        if lhs[t] != graded {
                            return Err(Error::InvalidStructure(format!(
                                "module homomorphism law fails on ({a},{b}) at {u}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra_len(&self) -> usize {
        self.algebra_degrees.len()
    }

    pub fn module_len(&self) -> usize {
        self.module_degrees.len()
    }

    pub fn algebra_degrees(&self) -> &[i64] {
        &self.algebra_degrees
    }

    pub fn module_degrees(&self) -> &[i64] {
        &self.module_degrees
    }

    pub fn basis_elt(&self, idx: BasisIdx) -> GlaElt {
        let mut v = vec![Scalar::zero(); self.algebra_degrees.len()];
        v[idx] = Scalar::one();
        GlaElt(v)
    }

    pub fn basis_val(&self, idx: BasisIdx) -> GlaVal {
        let mut v = vec![Scalar::zero(); self.module_degrees.len()];
        v[idx] = Scalar::one();
        GlaVal(v)
    }

    fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.algebra_degrees.len();
        let mut out = vec![Scalar::zero(); n];
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y[b].is_zero() {
                    continue;
                }
                let weight = &x[a] * &y[b];
                for c in 0..n {
                    if !self.brackets[a][b][c].is_zero() {
                        out[c] = &out[c] + &(&weight * &self.brackets[a][b][c]);
                    }
                }
            }
        }
        out
    }

    fn act_vec(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let w = self.module_degrees.len();
        let mut out = vec![Scalar::zero(); w];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for u in 0..w {
                if v[u].is_zero() {
                    continue;
                }
                let weight = xa * &v[u];
                for t in 0..w {
                    if !self.action[a][u][t].is_zero() {
                        out[t] = &out[t] + &(&weight * &self.action[a][u][t]);
                    }
                }
            }
        }
        out
    }

    fn homogeneous_degree(&self, coeffs: &[Scalar], degrees: &[i64]) -> Result<Option<i64>> {
        let mut found: Option<i64> = None;
        for (idx, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(degrees[idx]),
                Some(d) if d == degrees[idx] => {}
                Some(d) => {
                    return Err(Error::DegreeInconsistent(format!(
                        "element mixes degrees {d} and {}",
                        degrees[idx]
                    )))
                }
            }
        }
        Ok(found)
    }
}

impl GradedContext for FiniteGla {
    type Elt = GlaElt;
    type Val = GlaVal;

    fn elt_degree(&self, x: &Self::Elt) -> Result<i64> {
        // zero elements report degree 0; they only scale zero terms
        Ok(self
            .homogeneous_degree(&x.0, &self.algebra_degrees)?
            .unwrap_or(0))
    }

    fn val_degree(&self, v: &Self::Val) -> Result<Option<i64>> {
        self.homogeneous_degree(&v.0, &self.module_degrees)
    }

    fn is_zero_elt(&self, x: &Self::Elt) -> bool {
        x.0.iter().all(Scalar::is_zero)
    }

    fn is_zero_val(&self, v: &Self::Val) -> bool {
        v.0.iter().all(Scalar::is_zero)
    }

    fn bracket(&self, x: &Self::Elt, y: &Self::Elt) -> Result<Self::Elt> {
        Ok(GlaElt(self.bracket_vec(&x.0, &y.0)))
    }

    fn act(&self, x: &Self::Elt, v: &Self::Val) -> Result<Self::Val> {
        Ok(GlaVal(self.act_vec(&x.0, &v.0)))
    }

    fn add_val(&self, a: Self::Val, b: &Self::Val) -> Result<Self::Val> {
        Ok(GlaVal(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    fn negate_val(&self, v: Self::Val) -> Self::Val {
        GlaVal(v.0.into_iter().map(|x| -x).collect())
    }
}

/// Stock fixtures used by the `d o d = 0` suite.
pub mod fixtures {
    use super::*;

    /// Abelian algebra on three degree-0 generators with a trivial action
    /// on a two-element module.
    pub fn abelian() -> FiniteGla {
        FiniteGla::new(
            vec![0, 0, 0],
            &ConstTable::new(),
            vec![0, 1],
            &ConstTable::new(),
        )
        .expect("abelian fixture is consistent")
    }

    /// The nonabelian two-dimensional algebra in degree 0, acting on
    /// itself: `[e_0, e_1] = e_1`.
    pub fn affine_adjoint() -> FiniteGla {
        let mut brackets = ConstTable::new();
        brackets.insert((0, 1), vec![(1, Scalar::one())]);
        let mut action = ConstTable::new();
        action.insert((0, 1), vec![(1, Scalar::one())]);
        FiniteGla::new(vec![0, 0], &brackets, vec![0, 0], &action)
            .expect("affine fixture is consistent")
    }

    /// A three-element algebra with degrees `{0, 1, 1}` acting on itself:
    /// `[h, e] = e`, `[h, f] = -f`, everything else zero.
    pub fn graded_three() -> FiniteGla {
        let mut brackets = ConstTable::new();
        brackets.insert((0, 1), vec![(1, Scalar::one())]);
        brackets.insert((0, 2), vec![(2, Scalar::from_int(-1))]);
        let mut action = ConstTable::new();
        action.insert((0, 1), vec![(1, Scalar::one())]);
        action.insert((0, 2), vec![(2, Scalar::from_int(-1))]);
        FiniteGla::new(vec![0, 1, 1], &brackets, vec![0, 1, 1], &action)
            .expect("graded fixture is consistent")
    }

    pub fn all() -> Vec<(&'static str, FiniteGla)> {
        vec![
            ("abelian", abelian()),
            ("affine-adjoint", affine_adjoint()),
            ("graded-three", graded_three()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffFn;
    use crate::cohomology::sigma;

    #[test]
    fn alpha_signs() {
        // a_0 = 0 always; a_1 = 1 + x_1 x_0
        assert_eq!(alpha(0, &[3, 2]), 0);
        assert_eq!(alpha(1, &[1, 1]), 2);
        assert_eq!(alpha(2, &[1, 2, 3]), 2 + 3 * 3);
    }

    #[test]
    fn p0_specialization() {
        // for v in V^0 and X of degree 0: (dv)(X) = Theta(X) v
        let gla = fixtures::affine_adjoint();
        let v = gla.basis_val(1);
        let v_elt = v.clone();
        let phi: Cochain<FiniteGla> = Cochain::new(0, 0, move |_ctx, _args| Ok(v_elt.clone()));
        let x = gla.basis_elt(0);
        let got = cochain_partial(&gla, &phi, std::slice::from_ref(&x)).unwrap();
        let expect = gla.act(&x, &v).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn p1_is_chevalley_eilenberg() {
        // (dPhi)(X,Y) = Theta(X)Phi(Y) - Theta(Y)Phi(X) - Phi([X,Y])
        let gla = fixtures::affine_adjoint();
        let phi: Cochain<FiniteGla> = Cochain::new(1, 0, |_ctx: &FiniteGla, args: &[GlaElt]| {
            Ok(GlaVal(args[0].0.clone()))
        });
        let x = gla.basis_elt(0);
        let y = gla.basis_elt(1);
        let got = cochain_partial(&gla, &phi, &[x.clone(), y.clone()]).unwrap();
        let tx = gla.act(&x, &GlaVal(y.0.clone())).unwrap();
        let ty = gla.act(&y, &GlaVal(x.0.clone())).unwrap();
        let br = gla.bracket(&x, &y).unwrap();
        let mut expect = gla.add_val(tx, &gla.negate_val(ty)).unwrap();
        expect = gla.add_val(expect, &gla.negate_val(GlaVal(br.0))).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn d_squared_on_fixture_sample() {
        for (name, gla) in fixtures::all() {
            let v = gla.basis_val(0);
            let q = gla.module_degrees()[0];
            let v_c = v.clone();
            let phi: Cochain<FiniteGla> =
                Cochain::new(0, q, move |_, _: &[GlaElt]| Ok(v_c.clone()));
            let args: Vec<GlaElt> = (0..2.min(gla.algebra_len()))
                .map(|i| gla.basis_elt(i))
                .collect();
            assert!(
                d_squared_check(&gla, &phi, &args).unwrap(),
                "dd != 0 on {name}"
            );
        }
    }

    #[test]
    fn arity_mismatch_detected() {
        let gla = fixtures::abelian();
        let v = gla.basis_val(0);
        let phi: Cochain<FiniteGla> = Cochain::new(0, 0, move |_, _: &[GlaElt]| Ok(v.clone()));
        let err = cochain_partial(&gla, &phi, &[]).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { .. }));
    }

    #[test]
    fn rejects_bad_structure_constants() {
        // [e0, e0] = e1 violates antisymmetry in even degree
        let mut brackets = ConstTable::new();
        brackets.insert((0, 0), vec![(1, Scalar::one())]);
        let err = FiniteGla::new(vec![0, 0], &brackets, vec![0], &ConstTable::new());
        assert!(matches!(err, Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn sigma_is_graded_alternating_in_the_stated_convention() {
        // sigma(L,K) = -(-1)^(kl) sigma(K,L): the alternation spot-check
        // accepts sigma as a degree-0 two-cochain.
        let chart = ChartSpec::poly(3).unwrap();
        let ctx = FormContext::new(chart);
        let phi: Cochain<FormContext> =
            Cochain::new(2, 0, |_ctx: &FormContext, args: &[VectorForm]| {
                sigma(&args[0], &args[1])
            })
            .with_alternation_check(true);
        let x2 = CoeffFn::var(chart, 2).unwrap();
        let k = VectorForm::decomposable(
            &ScalarForm::basis(chart, &[1])
                .unwrap()
                .scale_coeff(&x2)
                .unwrap(),
            2,
        )
        .unwrap();
        let l = VectorForm::decomposable(&ScalarForm::basis(chart, &[2]).unwrap(), 1).unwrap();
        let value = phi.eval(&ctx, &[k, l]).unwrap();
        assert!(!value.is_zero());
    }

    #[test]
    fn form_context_degree_law() {
        let chart = ChartSpec::poly(2).unwrap();
        let ctx = FormContext::new(chart);
        // a 1-cochain that forgets the grading trips the degree law
        let phi: Cochain<FormContext> =
            Cochain::new(1, 0, move |_ctx: &FormContext, _args: &[VectorForm]| {
                Ok(ScalarForm::one(ChartSpec::poly(2).unwrap()))
            });
        let k = VectorForm::decomposable(&ScalarForm::basis(chart, &[1]).unwrap(), 2).unwrap();
        let err = phi.eval(&ctx, std::slice::from_ref(&k)).unwrap_err();
        assert!(matches!(err, Error::DegreeInconsistent(_)));
    }
}
