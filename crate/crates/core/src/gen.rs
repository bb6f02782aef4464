//! Deterministic seeded generation of random forms, coefficient functions
//! and diffeomorphisms for the property suites.
//!
//! The same [`GenSpec`] always yields the same sample stream, so check
//! reports are reproducible byte for byte.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chart::{ChartKind, ChartSpec};
use crate::coeff::CoeffFn;
use crate::calculus::traceless_part;
use crate::diffeo::Diffeo;
use crate::forms::{MultiIndex, ScalarForm, VectorForm};
use crate::scalar::Scalar;

/// Parameters of a deterministic sample stream.
#[derive(Clone, Debug)]
pub struct GenSpec {
    pub seed: u64,
    pub chart: ChartSpec,
    /// Max total degree of polynomial coefficients.
    pub max_degree: u32,
    /// Max `|n_i|` of Fourier frequencies.
    pub max_mode: i32,
    /// Numerators and denominators are drawn from `1..=coeff_bound`.
    pub coeff_bound: i64,
    pub trials: usize,
}

impl GenSpec {
    pub fn new(chart: ChartSpec) -> Self {
        GenSpec {
            seed: 0,
            chart,
            max_degree: 2,
            max_mode: 2,
            coeff_bound: 5,
            trials: 100,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn sampler(&self) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            spec: self.clone(),
        }
    }
}

/// Draws values from the stream described by a [`GenSpec`].
pub struct Sampler {
    rng: ChaCha8Rng,
    spec: GenSpec,
}

impl Sampler {
    pub fn chart(&self) -> ChartSpec {
        self.spec.chart
    }

    /// Small nonzero rational (or Gaussian rational on the torus) from the
    /// coefficient pool.
    pub fn scalar(&mut self) -> Scalar {
        let bound = self.spec.coeff_bound;
        let mut rat = |rng: &mut ChaCha8Rng| {
            let num = rng.random_range(1..=bound) * if rng.random_bool(0.5) { 1 } else { -1 };
            let den = rng.random_range(1..=bound);
            Scalar::from_ratio(num, den)
        };
        let real = rat(&mut self.rng);
        if !self.spec.chart.is_fourier() {
            return real;
        }
        match self.rng.random_range(0..8) {
            0 | 1 => &real * &Scalar::i(),
            2 => {
                let im = rat(&mut self.rng);
                &real + &(&im * &Scalar::i())
            }
            _ => real,
        }
    }

    fn key(&mut self) -> Vec<i32> {
        let m = self.spec.chart.dim();
        match self.spec.chart.kind() {
            ChartKind::Poly => {
                let mut exps = vec![0i32; m];
                let total = self.rng.random_range(0..=self.spec.max_degree);
                for _ in 0..total {
                    let j = self.rng.random_range(0..m);
                    exps[j] += 1;
                }
                exps
            }
            ChartKind::Fourier => (0..m)
                .map(|_| self.rng.random_range(-self.spec.max_mode..=self.spec.max_mode))
                .collect(),
        }
    }

    /// Random coefficient function with one to three terms.
    pub fn coeff(&mut self) -> CoeffFn {
        let mut f = CoeffFn::zero(self.spec.chart);
        let terms = self.rng.random_range(1..=3);
        for _ in 0..terms {
            let key = self.key();
            let value = self.scalar();
            f.insert_term(key, value);
        }
        f
    }

    fn multi_index(&mut self, degree: usize) -> MultiIndex {
        let m = self.spec.chart.dim();
        debug_assert!(degree <= m);
        let mut axes: Vec<u8> = (1..=m as u8).collect();
        // partial Fisher-Yates, then sort the chosen prefix
        for i in 0..degree {
            let j = self.rng.random_range(i..m);
            axes.swap(i, j);
        }
        let mut chosen = axes[..degree].to_vec();
        chosen.sort_unstable();
        MultiIndex::new(&chosen).expect("sorted distinct axes")
    }

    /// Random homogeneous scalar form of the given degree.
    pub fn scalar_form(&mut self, degree: usize) -> ScalarForm {
        let chart = self.spec.chart;
        let mut out = ScalarForm::zero(chart, degree.min(chart.dim()));
        if degree > chart.dim() {
            return out;
        }
        let terms = self.rng.random_range(1..=2);
        for _ in 0..terms {
            let idx = self.multi_index(degree);
            out.add_term(idx, self.coeff()).expect("degree matches");
        }
        out
    }

    /// Random vector form with one or two nonzero components.
    pub fn vector_form(&mut self, degree: usize) -> VectorForm {
        let chart = self.spec.chart;
        let m = chart.dim();
        let mut comps = vec![ScalarForm::zero(chart, degree.min(m)); m];
        if degree > m {
            return VectorForm::from_components(chart, comps).expect("zero components");
        }
        let nonzero = self.rng.random_range(1..=2.min(m));
        for _ in 0..nonzero {
            let j = self.rng.random_range(0..m);
            comps[j] = comps[j]
                .add(&self.scalar_form(degree))
                .expect("same degree");
        }
        VectorForm::from_components(chart, comps).expect("components consistent")
    }

    /// Random traceless form (the traceless part of a random form).
    pub fn traceless_form(&mut self, degree: usize) -> VectorForm {
        traceless_part(&self.vector_form(degree))
    }

    /// Random closed form: an exact form plus a constant-coefficient form.
    pub fn closed_form(&mut self, degree: usize) -> ScalarForm {
        let chart = self.spec.chart;
        let m = chart.dim();
        if degree > m {
            return ScalarForm::zero(chart, m);
        }
        let mut out = if degree == 0 {
            ScalarForm::constant(chart, self.scalar())
        } else {
            let mut exact = self.scalar_form(degree - 1).ext_d();
            if exact.is_zero() {
                exact = ScalarForm::zero(chart, degree);
            }
            let mut constant = ScalarForm::zero(chart, degree);
            constant
                .add_term(self.multi_index(degree), CoeffFn::constant(chart, self.scalar()))
                .expect("degree matches");
            exact.add(&constant).expect("same degree")
        };
        if out.is_zero() {
            out = ScalarForm::zero(chart, degree);
        }
        debug_assert!(out.ext_d().is_zero());
        out
    }

    /// Random delta-cocycle: closed form wedged into the identity plus a
    /// traceless form.
    pub fn cocycle(&mut self, degree: usize) -> VectorForm {
        let chart = self.spec.chart;
        if degree == 0 {
            return self.vector_form(0);
        }
        let closed = self.closed_form(degree - 1);
        let embedded = crate::calculus::embed_j(&closed);
        let traceless = self.traceless_form(degree);
        embedded.add(&traceless).expect("same degree")
    }

    /// A nonzero form degree in `0..=max`.
    pub fn degree(&mut self, max: usize) -> usize {
        self.rng.random_range(0..=max)
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    /// Fixed diffeomorphism fixtures for the chart: three polynomial maps
    /// (one nonlinear) or two unimodular torus matrices.
    pub fn diffeo_fixtures(&self) -> Vec<Diffeo> {
        diffeo_fixtures(self.spec.chart)
    }
}

/// Diffeomorphism fixtures used by the naturality suites.
pub fn diffeo_fixtures(chart: ChartSpec) -> Vec<Diffeo> {
    match chart.kind() {
        ChartKind::Poly => {
            let m = chart.dim();
            let var = |j: usize| CoeffFn::var(chart, j).expect("axis in range");
            let mut out = Vec::new();
            if m == 1 {
                let ident = Diffeo::identity(chart).expect("identity");
                let reflect =
                    Diffeo::poly(chart, vec![var(1).neg()], vec![var(1).neg()]).expect("involution");
                return vec![ident, reflect];
            }
            // cyclic permutation of the axes
            let fwd: Vec<CoeffFn> = (1..=m).map(|j| var(j % m + 1)).collect();
            let inv: Vec<CoeffFn> = (1..=m).map(|j| var((j + m - 2) % m + 1)).collect();
            out.push(Diffeo::poly(chart, fwd, inv).expect("permutation is invertible"));
            // reflection of the first axis
            let mut fwd: Vec<CoeffFn> = (1..=m).map(var).collect();
            fwd[0] = fwd[0].neg();
            out.push(Diffeo::poly(chart, fwd.clone(), fwd).expect("involution"));
            // nonlinear triangular shear x1 -> x1, x2 -> x2 + x1^2
            if m >= 2 {
                let mut e1 = vec![0i32; m];
                e1[0] = 2;
                let sq = CoeffFn::monomial(chart, &e1).expect("poly chart");
                let mut fwd: Vec<CoeffFn> = (1..=m).map(var).collect();
                let mut inv: Vec<CoeffFn> = (1..=m).map(var).collect();
                fwd[1] = fwd[1].add(&sq).expect("same chart");
                inv[1] = inv[1].sub(&sq).expect("same chart");
                out.push(Diffeo::poly(chart, fwd, inv).expect("shear is invertible"));
            }
            out
        }
        ChartKind::Fourier => {
            let m = chart.dim();
            let mut ident: Vec<Vec<i64>> = (0..m)
                .map(|r| (0..m).map(|c| i64::from(r == c)).collect())
                .collect();
            let mut out = Vec::new();
            if m >= 2 {
                // elementary shear
                let mut shear = ident.clone();
                shear[0][1] = 1;
                out.push(Diffeo::fourier(chart, shear).expect("unimodular"));
                // rotation-like swap with a sign
                let mut swap = ident.clone();
                swap[0][0] = 0;
                swap[0][1] = -1;
                swap[1][0] = 1;
                swap[1][1] = 0;
                out.push(Diffeo::fourier(chart, swap).expect("unimodular"));
            } else {
                ident[0][0] = -1;
                out.push(Diffeo::fourier(chart, ident).expect("unimodular"));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::trace_c;
    use crate::cohomology::is_closed;
    use crate::dsl::print_form;

    #[test]
    fn streams_are_deterministic() {
        let chart = ChartSpec::poly(3).unwrap();
        let spec = GenSpec::new(chart).with_seed(42);
        let mut a = spec.sampler();
        let mut b = spec.sampler();
        for _ in 0..10 {
            let fa = a.vector_form(2);
            let fb = b.vector_form(2);
            assert_eq!(fa, fb);
            assert_eq!(
                print_form(&fa.clone().into()),
                print_form(&fb.clone().into())
            );
        }
    }

    #[test]
    fn generated_traceless_and_closed_forms_check_out() {
        for chart in [ChartSpec::poly(3).unwrap(), ChartSpec::fourier(2).unwrap()] {
            let mut s = GenSpec::new(chart).with_seed(7).sampler();
            for k in 0..=chart.dim() {
                let t = s.traceless_form(k);
                assert!(trace_c(&t).is_zero());
                let c = s.closed_form(k);
                assert!(is_closed(&c));
            }
        }
    }

    #[test]
    fn fixtures_exist_for_both_charts() {
        assert_eq!(diffeo_fixtures(ChartSpec::poly(2).unwrap()).len(), 3);
        assert_eq!(diffeo_fixtures(ChartSpec::fourier(2).unwrap()).len(), 2);
    }
}
