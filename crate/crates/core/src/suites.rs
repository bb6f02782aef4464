//! Named property-check suites.
//!
//! Every identity the operators satisfy is wired into a seeded, exactly
//! evaluated suite; the CLI `check` verb runs them and reports trials,
//! failures and the first counterexample in canonical DSL text. Reports
//! are deterministic for a fixed `GenSpec`.

use std::fmt;

use num::rational::BigRational;

use crate::calculus::{
    c_bracket, cbar_denominator, delta, embed_j, fn_bracket, induced_fn_omega, induced_nr_omega,
    nr_bracket, s_concomitant, trace_c, trace_cbar, traceless_part,
};
use crate::chart::{ChartKind, ChartSpec};
use crate::cohomology::{
    class_bracket, delta_class, derham_class, extension_bracket, primitive, sigma, theta_action,
};
use crate::dsl::{print_scalar_form, print_vector_form};
use crate::error::{Error, Result};
use crate::forms::{lie_theta, nr_insert, MultiIndex, ScalarForm, VectorForm};
use crate::gen::{GenSpec, Sampler};
use crate::gla::{
    cochain_partial, d_squared_check, fixtures, Cochain, FiniteGla, FormContext, GlaElt, GlaVal,
    GradedContext,
};
use crate::scalar::{neg_one_pow, Scalar};

/// All suite names accepted by [`run_suite`].
pub const SUITE_NAMES: &[&str] = &[
    "lemma21",
    "delta-derivation",
    "fn-jacobi",
    "center",
    "lemma23",
    "cbracket",
    "naturality",
    "ideals-31",
    "induced-31",
    "extension-32",
    "module-32c",
    "sigma-cocycle",
    "partial-squared",
    "nr-34",
    "derham",
    "class-bracket",
    "all",
];

/// One checked identity within a suite.
#[derive(Clone, Debug)]
pub struct CheckLine {
    pub label: String,
    pub trials: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

/// Result of running a suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub chart: ChartSpec,
    pub seed: u64,
    pub checks: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn ok(&self) -> bool {
        self.failures() == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: chart={} seed={}",
            self.suite, self.chart, self.seed
        )?;
        for check in &self.checks {
            write!(
                f,
                "  {}: trials={} failures={}",
                check.label, check.trials, check.failures
            )?;
            if let Some(ex) = &check.first_counterexample {
                write!(f, " first-counterexample: {ex}")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "result: {} ({} failures)",
            if self.ok() { "PASS" } else { "FAIL" },
            self.failures()
        )
    }
}

/// `Ok(None)` = pass, `Ok(Some(text))` = counterexample, `Err` = the
/// operators themselves rejected the inputs (also counted as a failure).
type Trial = Result<Option<String>>;

fn run_check(label: &str, trials: usize, mut trial: impl FnMut(usize) -> Trial) -> CheckLine {
    let mut failures = 0usize;
    let mut first = None;
    for t in 0..trials {
        let outcome = match trial(t) {
            Ok(None) => None,
            Ok(Some(ex)) => Some(ex),
            Err(e) => Some(format!("operator error: {e}")),
        };
        if let Some(ex) = outcome {
            failures += 1;
            if first.is_none() {
                first = Some(ex);
            }
        }
    }
    CheckLine {
        label: label.to_string(),
        trials,
        failures,
        first_counterexample: first,
    }
}

fn pass_if(cond: bool, counterexample: impl FnOnce() -> String) -> Trial {
    if cond {
        Ok(None)
    } else {
        Ok(Some(counterexample()))
    }
}

fn show_v(k: &VectorForm) -> String {
    print_vector_form(k)
}

fn show_s(phi: &ScalarForm) -> String {
    print_scalar_form(phi)
}

// ---- independent oracle for the bracket of decomposables ----

/// Lie bracket of vector fields, written out directly:
/// `[X,Y]_r = sum_j X^j d_j Y^r - Y^j d_j X^r`.
fn vector_field_bracket(x: &VectorForm, y: &VectorForm) -> Result<VectorForm> {
    let chart = x.chart();
    let m = chart.dim();
    let mut comps = Vec::with_capacity(m);
    for r in 1..=m {
        let mut acc = ScalarForm::zero(chart, 0);
        for j in 1..=m {
            let xj = x.component(j);
            let yj = y.component(j);
            if !xj.is_zero() {
                acc = acc.add(&xj.wedge(&y.component(r).partial(j)?)?)?;
            }
            if !yj.is_zero() {
                acc = acc.sub(&yj.wedge(&x.component(r).partial(j)?)?)?;
            }
        }
        comps.push(acc);
    }
    VectorForm::from_components(chart, comps)
}

/// `phi (x) X` for a scalar form and a vector field.
fn tensor_with_field(phi: &ScalarForm, field: &VectorForm) -> Result<VectorForm> {
    let chart = phi.chart();
    let mut comps = Vec::with_capacity(chart.dim());
    for r in 1..=chart.dim() {
        let fr = field.component(r);
        if fr.is_zero() {
            comps.push(ScalarForm::zero(chart, phi.degree()));
        } else {
            comps.push(phi.scale_coeff(&fr.coeff_at(&MultiIndex::empty()))?);
        }
    }
    VectorForm::from_components(chart, comps)
}

/// The bracket of decomposables, evaluated from its displayed formula:
/// `[phi (x) X, psi (x) Y] = phi^psi (x) [X,Y] + phi^Theta(X)psi (x) Y
///   - Theta(Y)phi^psi (x) X + (-1)^k (dphi^i_X psi (x) Y + i_Y phi^dpsi (x) X)`.
///
/// Independent of the coordinate implementation: the vector-field bracket
/// is written out above and all other ingredients are separate operators.
fn decomposable_bracket_oracle(
    phi: &ScalarForm,
    x: &VectorForm,
    psi: &ScalarForm,
    y: &VectorForm,
) -> Result<VectorForm> {
    let k = phi.degree();
    let sign = neg_one_pow(k as i64);
    let mut acc = tensor_with_field(&phi.wedge(psi)?, &vector_field_bracket(x, y)?)?;
    acc = acc.add(&tensor_with_field(&phi.wedge(&lie_theta(x, psi)?)?, y)?)?;
    acc = acc.sub(&tensor_with_field(&lie_theta(y, phi)?.wedge(psi)?, x)?)?;
    let d_side = phi
        .ext_d()
        .wedge(&nr_insert(x, psi)?)?
        .scale_rat(&sign);
    acc = acc.add(&tensor_with_field(&d_side, y)?)?;
    let i_side = nr_insert(y, phi)?.wedge(&psi.ext_d())?.scale_rat(&sign);
    acc = acc.add(&tensor_with_field(&i_side, x)?)?;
    Ok(acc)
}

// ---- individual suites ----

fn suite_lemma21(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s1 = spec.sampler();
    let trace_law = run_check("trace-of-embedding", spec.trials, |_| {
        let k = s1.degree(m);
        let phi = s1.scalar_form(k);
        let factor = neg_one_pow(k as i64) * BigRational::from_integer(((m - k) as i64).into());
        let lhs = trace_c(&embed_j(&phi));
        let rhs = phi.scale_rat(&factor);
        pass_if(lhs == rhs, || format!("phi = {}", show_s(&phi)))
    });

    let mut s2 = spec.sampler();
    let left_square = run_check("left-square", spec.trials, |_| {
        if m < 2 {
            return Ok(None);
        }
        let d = s2.degree(m - 2);
        let phi = s2.scalar_form(d);
        let k = d + 1;
        let lhs = delta(&embed_j(&phi));
        let rhs = embed_j(&phi.ext_d())
            .scale_rat(&BigRational::from_integer(((m - k + 1) as i64).into()));
        pass_if(lhs == rhs, || format!("phi = {}", show_s(&phi)))
    });

    let mut s3 = spec.sampler();
    let right_square = run_check("right-square", spec.trials, |_| {
        let k = s3.degree(m - 1);
        let form = s3.vector_form(k);
        let lhs = trace_cbar(&delta(&form));
        let rhs = trace_cbar(&form)
            .ext_d()
            .scale_rat(&BigRational::from_integer(((m - k + 1) as i64).into()));
        pass_if(lhs == rhs, || format!("K = {}", show_v(&form)))
    });

    vec![trace_law, left_square, right_square]
}

fn suite_delta_derivation(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s1 = spec.sampler();
    let squared = run_check("delta-squared", spec.trials, |_| {
        let k = s1.degree(m);
        let form = s1.vector_form(k);
        pass_if(delta(&delta(&form)).is_zero(), || {
            format!("K = {}", show_v(&form))
        })
    });

    let mut s2 = spec.sampler();
    let derivation = run_check("delta-derivation", spec.trials, |_| {
        let k = s2.degree(m);
        let l = s2.degree(m - k.min(m));
        let kf = s2.vector_form(k);
        let lf = s2.vector_form(l);
        let lhs = delta(&fn_bracket(&kf, &lf)?);
        let rhs = fn_bracket(&delta(&kf), &lf)?
            .add(&fn_bracket(&kf, &delta(&lf))?.scale_rat(&neg_one_pow(k as i64)))?;
        pass_if(lhs == rhs, || {
            format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
        })
    });

    vec![squared, derivation]
}

fn suite_fn_jacobi(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s1 = spec.sampler();
    let anticomm = run_check("fn-anticommutativity", spec.trials, |_| {
        let k = s1.degree(m);
        let l = s1.degree(m);
        let kf = s1.vector_form(k);
        let lf = s1.vector_form(l);
        let lhs = fn_bracket(&kf, &lf)?;
        let rhs = fn_bracket(&lf, &kf)?.scale_rat(&-neg_one_pow((k * l) as i64));
        pass_if(lhs == rhs, || {
            format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
        })
    });

    let mut s2 = spec.sampler();
    let jacobi = run_check("fn-jacobi", spec.trials, |_| {
        let k = s2.degree(2.min(m));
        let l = s2.degree(2.min(m));
        let n = s2.degree(2.min(m));
        let kf = s2.vector_form(k);
        let lf = s2.vector_form(l);
        let nf = s2.vector_form(n);
        let lhs = fn_bracket(&kf, &fn_bracket(&lf, &nf)?)?;
        let rhs = fn_bracket(&fn_bracket(&kf, &lf)?, &nf)?.add(
            &fn_bracket(&lf, &fn_bracket(&kf, &nf)?)?.scale_rat(&neg_one_pow((k * l) as i64)),
        )?;
        pass_if(lhs == rhs, || {
            format!(
                "K = {}; L = {}; N = {}",
                show_v(&kf),
                show_v(&lf),
                show_v(&nf)
            )
        })
    });

    let mut s3 = spec.sampler();
    let chart = spec.chart;
    let decomposition = run_check("decomposition-independence", spec.trials, |_| {
        let k = s3.degree(m);
        let l = s3.degree(m - k.min(m));
        let coeff = s3.coeff();
        let idx = {
            let form = s3.scalar_form(k);
            let first = form.terms().next().map(|(i, _)| i.clone());
            first.unwrap_or_else(MultiIndex::empty)
        };
        let axis = s3.int_in(1, m as i64) as usize;
        let basis = ScalarForm::basis(chart, idx.axes())?;
        let weighted = basis.scale_coeff(&coeff)?;
        let kf = VectorForm::decomposable(&weighted, axis)?;
        let lf = s3.vector_form(l);

        let direct = fn_bracket(&kf, &lf)?;
        // route A: the coefficient rides on the form factor
        let field = VectorForm::basis_field(chart, axis)?;
        let mut route_a: Option<VectorForm> = None;
        // route B: the coefficient rides on the vector factor
        let scaled_field = VectorForm::decomposable(&ScalarForm::from_coeff(coeff.clone()), axis)?;
        let mut route_b: Option<VectorForm> = None;
        for j in 1..=m {
            let lj = lf.component(j);
            if lj.is_zero() {
                continue;
            }
            let yj = VectorForm::basis_field(chart, j)?;
            let a = decomposable_bracket_oracle(&weighted, &field, lj, &yj)?;
            route_a = Some(match route_a {
                None => a,
                Some(acc) => acc.add(&a)?,
            });
            let b = decomposable_bracket_oracle(&basis, &scaled_field, lj, &yj)?;
            route_b = Some(match route_b {
                None => b,
                Some(acc) => acc.add(&b)?,
            });
        }
        let route_a = route_a.unwrap_or_else(|| VectorForm::zero(chart, k + l));
        let route_b = route_b.unwrap_or_else(|| VectorForm::zero(chart, k + l));
        pass_if(route_a == direct && route_b == direct, || {
            format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
        })
    });

    vec![anticomm, jacobi, decomposition]
}

fn suite_center(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let ident = VectorForm::identity(spec.chart);
    let mut s = spec.sampler();
    let line = run_check("identity-is-central", spec.trials, |_| {
        let k = s.degree(m);
        let form = s.vector_form(k);
        let left = fn_bracket(&ident, &form)?;
        let right = fn_bracket(&form, &ident)?;
        pass_if(left.is_zero() && right.is_zero(), || {
            format!("K = {}", show_v(&form))
        })
    });
    vec![line]
}

fn suite_lemma23(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s = spec.sampler();
    let line = run_check("trace-of-bracket", spec.trials, |_| {
        let k = s.degree(m);
        let l = s.degree(m - k.min(m));
        let kf = s.vector_form(k);
        let lf = s.vector_form(l);
        let lhs = trace_c(&fn_bracket(&kf, &lf)?);
        let theta_kl = lie_theta(&kf, &trace_c(&lf))?.scale_rat(&neg_one_pow(k as i64));
        let theta_lk = lie_theta(&lf, &trace_c(&kf))?.scale_rat(&neg_one_pow((k * l) as i64));
        let ds = s_concomitant(&kf, &lf)?
            .ext_d()
            .scale_rat(&neg_one_pow(k as i64));
        let rhs = theta_kl.sub(&theta_lk)?.sub(&ds)?;
        pass_if(lhs == rhs, || {
            format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
        })
    });
    vec![line]
}

fn suite_cbracket(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s1 = spec.sampler();
    let closes = run_check("closes-on-traceless", spec.trials, |_| {
        let k = s1.degree(m);
        let l = s1.degree(m);
        let kf = s1.traceless_form(k);
        let lf = s1.traceless_form(l);
        let out = c_bracket(&kf, &lf)?;
        pass_if(trace_c(&out).is_zero(), || {
            format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
        })
    });

    let mut s2 = spec.sampler();
    let anticomm = run_check("anticommutativity", spec.trials, |_| {
        let k = s2.degree(m);
        let l = s2.degree(m);
        let kf = s2.traceless_form(k);
        let lf = s2.traceless_form(l);
        let lhs = c_bracket(&kf, &lf)?;
        let rhs = c_bracket(&lf, &kf)?.scale_rat(&-neg_one_pow((k * l) as i64));
        pass_if(lhs == rhs, || {
            format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
        })
    });

    let mut s3 = spec.sampler();
    let jacobi = run_check("jacobi", spec.trials, |_| {
        let k = s3.degree(2.min(m));
        let l = s3.degree(2.min(m));
        let n = s3.degree(2.min(m));
        let kf = s3.traceless_form(k);
        let lf = s3.traceless_form(l);
        let nf = s3.traceless_form(n);
        let lhs = c_bracket(&kf, &c_bracket(&lf, &nf)?)?;
        let rhs = c_bracket(&c_bracket(&kf, &lf)?, &nf)?.add(
            &c_bracket(&lf, &c_bracket(&kf, &nf)?)?.scale_rat(&neg_one_pow((k * l) as i64)),
        )?;
        pass_if(lhs == rhs, || {
            format!(
                "K = {}; L = {}; N = {}",
                show_v(&kf),
                show_v(&lf),
                show_v(&nf)
            )
        })
    });

    let mut s4 = spec.sampler();
    let consistency = run_check("splits-fn-bracket", spec.trials, |_| {
        let k = s4.degree(m);
        let l = s4.degree(m - k.min(m));
        let kf = s4.traceless_form(k);
        let lf = s4.traceless_form(l);
        let full = fn_bracket(&kf, &lf)?;
        let corrected = c_bracket(&kf, &lf)?;
        let rhs = if k + l > m {
            corrected
        } else {
            let factor = neg_one_pow(l as i64) * cbar_denominator(m, k + l);
            embed_j(&s_concomitant(&kf, &lf)?.ext_d())
                .scale_rat(&factor)
                .add(&corrected)?
        };
        pass_if(full == rhs, || {
            format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
        })
    });

    vec![closes, anticomm, jacobi, consistency]
}

fn suite_naturality(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut lines = Vec::new();
    for (idx, diffeo) in crate::gen::diffeo_fixtures(spec.chart).into_iter().enumerate() {
        let mut s1 = spec.sampler();
        let d1 = diffeo.clone();
        lines.push(run_check(
            &format!("fn-naturality-{idx}"),
            spec.trials,
            move |_| {
                let k = s1.degree(m);
                let l = s1.degree(m - k.min(m));
                let kf = s1.vector_form(k);
                let lf = s1.vector_form(l);
                let lhs = d1.pullback_vector(&fn_bracket(&kf, &lf)?)?;
                let rhs = fn_bracket(&d1.pullback_vector(&kf)?, &d1.pullback_vector(&lf)?)?;
                pass_if(lhs == rhs, || {
                    format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
                })
            },
        ));
        let mut s2 = spec.sampler();
        let d2 = diffeo;
        lines.push(run_check(
            &format!("cbracket-naturality-{idx}"),
            spec.trials,
            move |_| {
                let k = s2.degree(m);
                let l = s2.degree(m - k.min(m));
                let kf = s2.traceless_form(k);
                let lf = s2.traceless_form(l);
                let lhs = d2.pullback_vector(&c_bracket(&kf, &lf)?)?;
                let rhs = c_bracket(&d2.pullback_vector(&kf)?, &d2.pullback_vector(&lf)?)?;
                pass_if(lhs == rhs, || {
                    format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
                })
            },
        ));
    }
    lines
}

fn suite_ideals_31(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s1 = spec.sampler();
    let abelian = run_check("closed-wedge-abelian", spec.trials, |_| {
        let k = s1.degree(m - 1);
        let l = s1.degree(m - 1);
        let z = s1.closed_form(k);
        let w = s1.closed_form(l);
        let out = fn_bracket(&embed_j(&z), &embed_j(&w))?;
        pass_if(out.is_zero(), || {
            format!("z = {}; w = {}", show_s(&z), show_s(&w))
        })
    });

    let mut s2 = spec.sampler();
    let ideal = run_check("closed-wedge-ideal", spec.trials, |_| {
        let k = s2.degree(m - 1);
        let l = s2.degree(m);
        let z = s2.closed_form(k);
        let kf = s2.vector_form(l);
        let out = fn_bracket(&embed_j(&z), &kf)?;
        let in_z_wedge = traceless_part(&out).is_zero() && trace_cbar(&out).ext_d().is_zero();
        pass_if(in_z_wedge, || {
            format!("z = {}; K = {}", show_s(&z), show_v(&kf))
        })
    });

    let mut s3 = spec.sampler();
    let boundaries = run_check("exact-wedge-ideal", spec.trials, |_| {
        let k = s3.degree(m - 1);
        let l = s3.degree(m);
        let b = s3.scalar_form(k.saturating_sub(1).max(0)).ext_d();
        let kf = s3.vector_form(l);
        let out = fn_bracket(&embed_j(&b), &kf)?;
        let ok = traceless_part(&out).is_zero() && trace_cbar(&out).ext_d().is_zero();
        pass_if(ok, || format!("b = {}; K = {}", show_s(&b), show_v(&kf)))
    });

    vec![abelian, ideal, boundaries]
}

fn suite_induced_31(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s1 = spec.sampler();
    let compat = run_check("embedding-compatibility", spec.trials, |_| {
        let k = s1.degree(m - 1);
        let l = s1.degree(m - 1);
        let phi = s1.scalar_form(k);
        let psi = s1.scalar_form(l);
        let lhs = fn_bracket(&embed_j(&phi), &embed_j(&psi))?;
        let rhs = embed_j(&induced_fn_omega(&phi, &psi)?);
        pass_if(lhs == rhs, || {
            format!("phi = {}; psi = {}", show_s(&phi), show_s(&psi))
        })
    });

    let mut s2 = spec.sampler();
    let subalgebra = run_check("embedded-subalgebra", spec.trials, |_| {
        let k = s2.degree(m - 1);
        let l = s2.degree(m - 1);
        let phi = s2.scalar_form(k);
        let psi = s2.scalar_form(l);
        let out = fn_bracket(&embed_j(&phi), &embed_j(&psi))?;
        pass_if(traceless_part(&out).is_zero(), || {
            format!("phi = {}; psi = {}", show_s(&phi), show_s(&psi))
        })
    });

    vec![compat, subalgebra]
}

fn suite_extension_32(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s = spec.sampler();
    let line = run_check("splits-as-formula", spec.trials, |_| {
        let k = 1 + s.degree(m - 1);
        let l = 1 + s.degree(m - k);
        let z_k = s.closed_form(k - 1);
        let k_p = s.traceless_form(k);
        let z_l = s.closed_form(l - 1);
        let l_p = s.traceless_form(l);
        let (z_part, t_part) = extension_bracket(&z_k, &k_p, &z_l, &l_p)?;
        let full_k = embed_j(&z_k).add(&k_p)?;
        let full_l = embed_j(&z_l).add(&l_p)?;
        let full = fn_bracket(&full_k, &full_l)?;
        let ok = trace_cbar(&full) == z_part
            && traceless_part(&full) == t_part
            && embed_j(&z_part).add(&t_part)? == full;
        pass_if(ok, || {
            format!(
                "zK = {}; Kp = {}; zL = {}; Lp = {}",
                show_s(&z_k),
                show_v(&k_p),
                show_s(&z_l),
                show_v(&l_p)
            )
        })
    });
    vec![line]
}

fn suite_module_32c(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s = spec.sampler();
    let line = run_check("theta-module-law", spec.trials, |_| {
        let k = s.degree(m);
        let l = s.degree(m - k.min(m));
        let z_deg = s.degree(m - 1);
        let kf = s.traceless_form(k);
        let lf = s.traceless_form(l);
        let z = s.closed_form(z_deg);
        let lhs = theta_action(&c_bracket(&kf, &lf)?, &z)?;
        let inner_l = theta_action(&lf, &z)?;
        let inner_k = theta_action(&kf, &z)?;
        let rhs = theta_action(&kf, &inner_l)?
            .sub(&theta_action(&lf, &inner_k)?.scale_rat(&neg_one_pow((k * l) as i64)))?;
        pass_if(lhs == rhs, || {
            format!(
                "K = {}; L = {}; z = {}",
                show_v(&kf),
                show_v(&lf),
                show_s(&z)
            )
        })
    });
    vec![line]
}

fn suite_sigma_cocycle(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let ctx = FormContext::new(spec.chart);
    let sigma_cochain: Cochain<FormContext> =
        Cochain::new(2, 0, |_ctx: &FormContext, args: &[VectorForm]| {
            sigma(&args[0], &args[1])
        });
    let mut s = spec.sampler();
    let line = run_check("sigma-cocycle", spec.trials, move |_| {
        // degree sum at most m so every inner sigma stays in range
        let k = s.degree(m);
        let l = s.degree(m - k);
        let n = s.degree(m - k - l);
        let kf = s.traceless_form(k);
        let lf = s.traceless_form(l);
        let nf = s.traceless_form(n);
        let out = cochain_partial(&ctx, &sigma_cochain, &[kf.clone(), lf.clone(), nf.clone()])?;
        pass_if(out.is_zero(), || {
            format!(
                "K = {}; L = {}; N = {}",
                show_v(&kf),
                show_v(&lf),
                show_v(&nf)
            )
        })
    });
    vec![line]
}

fn random_gla_value(s: &mut Sampler, gla: &FiniteGla, degree: i64) -> GlaVal {
    let coeffs: Vec<Scalar> = gla
        .module_degrees()
        .iter()
        .map(|&d| {
            if d == degree && s.int_in(0, 1) == 1 {
                s.scalar()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    GlaVal(coeffs)
}

/// Random graded-alternating cochain of the given arity on a fixture,
/// built from a random table and alternatized for arity 2.
fn random_gla_cochain(
    s: &mut Sampler,
    gla: &FiniteGla,
    arity: usize,
    degree: i64,
) -> Cochain<FiniteGla> {
    let n = gla.algebra_len();
    match arity {
        0 => {
            let v = random_gla_value(s, gla, degree);
            Cochain::new(0, degree, move |_, _: &[GlaElt]| Ok(v.clone()))
        }
        1 => {
            let table: Vec<GlaVal> = (0..n)
                .map(|a| random_gla_value(s, gla, gla.algebra_degrees()[a] + degree))
                .collect();
            let gla_c = gla.clone();
            Cochain::new(1, degree, move |ctx: &FiniteGla, args: &[GlaElt]| {
                let mut out = vec![Scalar::zero(); gla_c.module_len()];
                for (a, weight) in args[0].0.iter().enumerate() {
                    if weight.is_zero() {
                        continue;
                    }
                    for (t, base) in table[a].0.iter().enumerate() {
                        out[t] = &out[t] + &(weight * base);
                    }
                }
                let _ = ctx;
                Ok(GlaVal(out))
            })
        }
        _ => {
            let degrees = gla.algebra_degrees().to_vec();
            let table: Vec<Vec<GlaVal>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| random_gla_value(s, gla, degrees[a] + degrees[b] + degree))
                        .collect()
                })
                .collect();
            let gla_c = gla.clone();
            Cochain::new(2, degree, move |_ctx: &FiniteGla, args: &[GlaElt]| {
                // alternatized bilinear extension of the random table
                let mut out = vec![Scalar::zero(); gla_c.module_len()];
                for (a, wa) in args[0].0.iter().enumerate() {
                    if wa.is_zero() {
                        continue;
                    }
                    for (b, wb) in args[1].0.iter().enumerate() {
                        if wb.is_zero() {
                            continue;
                        }
                        let weight = wa * wb;
                        let swap_sign = neg_one_pow(degrees[a] * degrees[b]);
                        for t in 0..gla_c.module_len() {
                            let direct = &table[a][b].0[t];
                            let mirrored = &table[b][a].0[t];
                            let alt = direct - &mirrored.scale_rat(&swap_sign);
                            out[t] = &out[t] + &(&weight * &alt);
                        }
                    }
                }
                Ok(GlaVal(out))
            })
        }
    }
}

fn random_homogeneous_elt(s: &mut Sampler, gla: &FiniteGla) -> GlaElt {
    let n = gla.algebra_len();
    let pick = s.int_in(0, n as i64 - 1) as usize;
    let degree = gla.algebra_degrees()[pick];
    let coeffs: Vec<Scalar> = (0..n)
        .map(|a| {
            if gla.algebra_degrees()[a] == degree && s.int_in(0, 1) == 1 {
                s.scalar()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    let mut elt = GlaElt(coeffs);
    if gla.is_zero_elt(&elt) {
        elt.0[pick] = Scalar::one();
    }
    elt
}

fn suite_partial_squared(spec: &GenSpec) -> Vec<CheckLine> {
    let mut lines = Vec::new();
    for (name, gla) in fixtures::all() {
        let mut s = spec.sampler();
        let gla_c = gla.clone();
        lines.push(run_check(
            &format!("dd-zero-{name}"),
            spec.trials,
            move |_| {
                let arity = s.int_in(0, 2) as usize;
                let degree = s.int_in(0, 1);
                let phi = random_gla_cochain(&mut s, &gla_c, arity, degree);
                let args: Vec<GlaElt> = (0..arity + 2)
                    .map(|_| random_homogeneous_elt(&mut s, &gla_c))
                    .collect();
                pass_if(d_squared_check(&gla_c, &phi, &args)?, || {
                    format!("fixture with arity-{arity} cochain")
                })
            },
        ));
    }

    // classical specialization: p = 1, all degrees 0
    let affine = fixtures::affine_adjoint();
    let mut s = spec.sampler();
    lines.push(run_check("p1-chevalley-eilenberg", spec.trials, move |_| {
        let phi = random_gla_cochain(&mut s, &affine, 1, 0);
        let x = random_homogeneous_elt(&mut s, &affine);
        let y = random_homogeneous_elt(&mut s, &affine);
        let got = cochain_partial(&affine, &phi, &[x.clone(), y.clone()])?;
        let tx = affine.act(&x, &phi.eval(&affine, std::slice::from_ref(&y))?)?;
        let ty = affine.act(&y, &phi.eval(&affine, std::slice::from_ref(&x))?)?;
        let br = affine.bracket(&x, &y)?;
        let bv = phi.eval(&affine, std::slice::from_ref(&br))?;
        let expect = affine.add_val(
            affine.add_val(tx, &affine.negate_val(ty))?,
            &affine.negate_val(bv),
        )?;
        pass_if(got == expect, || "p=1 specialization mismatch".to_string())
    }));

    // a 1-cochain built from the concomitant, in the form context
    let ctx = FormContext::new(spec.chart);
    let m = spec.chart.dim();
    let mut s2 = spec.sampler();
    lines.push(run_check("dd-zero-concomitant", spec.trials, move |_| {
        let f_deg = 1 + s2.degree(m.saturating_sub(2));
        let fixed = s2.traceless_form(f_deg);
        let sigma_like: Cochain<FormContext> = {
            let fixed = fixed.clone();
            Cochain::new(1, f_deg as i64, move |_ctx: &FormContext, args: &[VectorForm]| {
                Ok(s_concomitant(&args[0], &fixed)?.ext_d())
            })
        };
        let k = s2.degree(1);
        let l = s2.degree(1);
        let n = s2.degree(1);
        let args = [
            s2.traceless_form(k),
            s2.traceless_form(l),
            s2.traceless_form(n),
        ];
        pass_if(d_squared_check(&ctx, &sigma_like, &args)?, || {
            format!("F = {}", show_v(&fixed))
        })
    }));

    lines
}

fn suite_nr_34(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s1 = spec.sampler();
    let closes = run_check("traceless-closed-under-nr", spec.trials, |_| {
        let k = s1.degree(m);
        let l = s1.degree(m);
        let kf = s1.traceless_form(k);
        let lf = s1.traceless_form(l);
        let out = nr_bracket(&kf, &lf)?;
        pass_if(trace_c(&out).is_zero(), || {
            format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
        })
    });

    let mut s2 = spec.sampler();
    let induced = run_check("induced-on-scalars", spec.trials, |_| {
        let k = s2.degree(m - 1);
        let l = s2.degree(m - 1);
        let phi = s2.scalar_form(k);
        let psi = s2.scalar_form(l);
        let lhs = nr_bracket(&embed_j(&phi), &embed_j(&psi))?;
        let rhs = embed_j(&induced_nr_omega(&phi, &psi)?);
        pass_if(lhs == rhs, || {
            format!("phi = {}; psi = {}", show_s(&phi), show_s(&psi))
        })
    });

    let mut s3 = spec.sampler();
    let anticomm = run_check("shifted-anticommutativity", spec.trials, |_| {
        let k = s3.degree(m);
        let l = s3.degree(m);
        let kf = s3.vector_form(k);
        let lf = s3.vector_form(l);
        let lhs = nr_bracket(&kf, &lf)?;
        let rhs = nr_bracket(&lf, &kf)?
            .scale_rat(&-neg_one_pow(((k as i64) - 1) * ((l as i64) - 1)));
        pass_if(lhs == rhs, || {
            format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
        })
    });

    let mut s4 = spec.sampler();
    let jacobi = run_check("shifted-jacobi", spec.trials, |_| {
        let k = s4.degree(2.min(m));
        let l = s4.degree(2.min(m));
        let n = s4.degree(2.min(m));
        let kf = s4.vector_form(k);
        let lf = s4.vector_form(l);
        let nf = s4.vector_form(n);
        let lhs = nr_bracket(&kf, &nr_bracket(&lf, &nf)?)?;
        let rhs = nr_bracket(&nr_bracket(&kf, &lf)?, &nf)?.add(
            &nr_bracket(&lf, &nr_bracket(&kf, &nf)?)?
                .scale_rat(&neg_one_pow(((k as i64) - 1) * ((l as i64) - 1))),
        )?;
        pass_if(lhs == rhs, || {
            format!(
                "K = {}; L = {}; N = {}",
                show_v(&kf),
                show_v(&lf),
                show_v(&nf)
            )
        })
    });

    vec![closes, induced, anticomm, jacobi]
}

/// Exact rank of a list of coefficient vectors over the scalar field.
fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let mut rank = 0usize;
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for c in 0..width {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..width {
                let sub = &rows[rank][c] * &factor;
                rows[r][c] = &rows[r][c] - &sub;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn all_indices(m: usize, k: usize) -> Vec<MultiIndex> {
    fn rec(m: usize, k: usize, start: u8, prefix: &mut Vec<u8>, out: &mut Vec<MultiIndex>) {
        if prefix.len() == k {
            out.push(MultiIndex::new(prefix).expect("increasing"));
            return;
        }
        for a in start..=(m as u8) {
            prefix.push(a);
            rec(m, k, a + 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, 1, &mut Vec::new(), &mut out);
    out
}

fn class_coordinates(class: &ScalarForm, basis: &[MultiIndex]) -> Vec<Scalar> {
    basis
        .iter()
        .map(|idx| class.coeff_at(idx).constant_part())
        .collect()
}

fn suite_derham(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s1 = spec.sampler();
    let primitive_law = run_check("primitive-correctness", spec.trials, |_| {
        let k = 1 + s1.degree(m - 1);
        let phi = match spec.chart.kind() {
            ChartKind::Poly => s1.closed_form(k),
            // strip the harmonic part so a primitive exists
            ChartKind::Fourier => {
                let closed = s1.closed_form(k);
                closed.sub(&closed.harmonic_part()).expect("same degree")
            }
        };
        let eta = primitive(&phi)?;
        pass_if(eta.ext_d() == phi, || format!("phi = {}", show_s(&phi)))
    });

    let mut s2 = spec.sampler();
    let retraction = run_check("class-retraction", spec.trials, |_| {
        let k = s2.degree(m);
        let phi = s2.closed_form(k);
        let class = derham_class(&phi)?;
        // exact forms have class zero
        if k >= 1 {
            let exact = s2.scalar_form(k - 1).ext_d();
            if !derham_class(&exact)?.is_zero() {
                return Ok(Some(format!("exact = {}", show_s(&exact))));
            }
        }
        // the class differs from the form by an exact witness
        let difference = phi.sub(&class)?;
        if difference.is_zero() {
            return Ok(None);
        }
        if k == 0 {
            return pass_if(difference.is_zero(), || format!("phi = {}", show_s(&phi)));
        }
        let eta = primitive(&difference)?;
        pass_if(eta.ext_d() == difference, || format!("phi = {}", show_s(&phi)))
    });

    let mut lines = vec![primitive_law, retraction];

    if spec.chart.kind() == ChartKind::Fourier && m == 2 {
        let mut s3 = spec.sampler();
        let chart = spec.chart;
        lines.push(run_check("torus-dimensions", 1, move |_| {
            let expected = [1usize, 2, 1];
            for k in 0..=2usize {
                let basis = all_indices(2, k);
                let mut rows: Vec<Vec<Scalar>> = Vec::new();
                // the documented spanning classes
                for idx in &basis {
                    let mut f = ScalarForm::zero(chart, k);
                    f.add_term(idx.clone(), crate::coeff::CoeffFn::one(chart))
                        .expect("degree matches");
                    rows.push(class_coordinates(&derham_class(&f)?, &basis));
                }
                // plus a random closed sample
                for _ in 0..12 {
                    let phi = s3.closed_form(k);
                    rows.push(class_coordinates(&derham_class(&phi)?, &basis));
                }
                let got = rank(rows);
                if got != expected[k] {
                    return Ok(Some(format!(
                        "degree {k}: rank {got}, expected {}",
                        expected[k]
                    )));
                }
            }
            Ok(None)
        }));
    }

    lines
}

fn suite_class_bracket(spec: &GenSpec) -> Vec<CheckLine> {
    let m = spec.chart.dim();
    let mut s1 = spec.sampler();
    let compat = run_check("class-of-bracket", spec.trials, |_| {
        let k = s1.degree(m);
        let l = s1.degree(m - k.min(m));
        let kf = s1.cocycle(k);
        let lf = s1.cocycle(l);
        let lhs = delta_class(&fn_bracket(&kf, &lf)?)?;
        let rhs = class_bracket(&delta_class(&kf)?, &delta_class(&lf)?)?;
        pass_if(lhs == rhs, || {
            format!("K = {}; L = {}", show_v(&kf), show_v(&lf))
        })
    });

    let mut s2 = spec.sampler();
    let coboundaries = run_check("coboundaries-vanish", spec.trials, |_| {
        let k = s2.degree(m - 1);
        let lf = s2.vector_form(k);
        let class = delta_class(&delta(&lf))?;
        pass_if(class.is_zero(), || format!("L = {}", show_v(&lf)))
    });

    vec![compat, coboundaries]
}

/// Run one named suite (or `all`) at the scale given by `spec`.
pub fn run_suite(name: &str, spec: &GenSpec) -> Result<SuiteReport> {
    let checks = match name {
        "lemma21" => suite_lemma21(spec),
        "delta-derivation" => suite_delta_derivation(spec),
        "fn-jacobi" => suite_fn_jacobi(spec),
        "center" => suite_center(spec),
        "lemma23" => suite_lemma23(spec),
        "cbracket" => suite_cbracket(spec),
        "naturality" => suite_naturality(spec),
        "ideals-31" => suite_ideals_31(spec),
        "induced-31" => suite_induced_31(spec),
        "extension-32" => suite_extension_32(spec),
        "module-32c" => suite_module_32c(spec),
        "sigma-cocycle" => suite_sigma_cocycle(spec),
        "partial-squared" => suite_partial_squared(spec),
        "nr-34" => suite_nr_34(spec),
        "derham" => suite_derham(spec),
        "class-bracket" => suite_class_bracket(spec),
        "all" => {
            let mut checks = Vec::new();
            for suite in SUITE_NAMES.iter().filter(|s| **s != "all") {
                let mut report = run_suite(suite, spec)?;
                for check in &mut report.checks {
                    check.label = format!("{suite}/{}", check.label);
                }
                checks.extend(report.checks);
            }
            checks
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        chart: spec.chart,
        seed: spec.seed,
        checks,
    })
}
