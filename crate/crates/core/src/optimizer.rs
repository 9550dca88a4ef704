//! Multistart search for Heisenberg-covariant SIC fiducials.
//!
//! The smooth objective is `f = sum_{g != 1} (|<psi|g psi>|^2 / |psi|^4 - 1/(N+1))^2`
//! over the nontrivial group elements. Each restart minimizes it with L-BFGS
//! from a random point on the sphere; the certificate reported back is the
//! max deviation, which equals [`crate::sic::sic_defect`] of the orbit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bases::{is_prime, mub_prime, mus_check};
use crate::error::{Error, Result};
use crate::heisenberg::HeisenbergAction;
use crate::linalg::{ComplexMatrix, ComplexVector, Tolerance, C64, ZERO};
use crate::report::VerificationReport;
use crate::sic::{heisenberg_orbit, sic_defect};

/// Restarts are run in fixed-size batches; the search stops after the first
/// batch that contains a converged restart.
pub const RESTART_BATCH: usize = 8;

const LBFGS_MEMORY: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    None,
    /// Only for `N = 4`: vectors fixed by the order-3 Zauner unitary.
    ZaunerSubspace,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dim: usize,
    pub restarts: usize,
    pub max_iter: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub symmetry: Symmetry,
}

impl SearchConfig {
    pub fn new(dim: usize) -> Self {
        Self { dim, restarts: 10, max_iter: 2000, seed: 0, tolerance: 1e-10, symmetry: Symmetry::None }
    }

    pub fn validate(&self) -> Result<()> {
        if !(3..=7).contains(&self.dim) {
            return Err(Error::UnsupportedDimension { dim: self.dim, reason: "search supports 3 <= N <= 7".into() });
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return Err(Error::InvalidConfig(format!("tolerance {} must be non-negative", self.tolerance)));
        }
        if self.symmetry == Symmetry::ZaunerSubspace && self.dim != 4 {
            return Err(Error::UnsupportedDimension {
                dim: self.dim,
                reason: "the Zauner subspace is only available for N = 4".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub dim: usize,
    /// Unit norm, first nonzero component real positive.
    pub fiducial: ComplexVector,
    /// Max deviation of the orbit overlaps from `1/(N+1)`.
    pub defect: f64,
    /// Final value of the smooth objective.
    pub objective: f64,
    pub iterations: usize,
    pub restart_index: usize,
    pub converged: bool,
    /// Objective evaluations summed over every restart that was run.
    pub evaluations: usize,
    pub restarts_run: usize,
}

/// The smooth defect over a fixed group action.
#[derive(Debug, Clone)]
pub struct DefectObjective {
    dim: usize,
    ops: Vec<ComplexMatrix>,
    adjoints: Vec<ComplexMatrix>,
    target: f64,
}

impl DefectObjective {
    pub fn new(action: &HeisenbergAction) -> Self {
        let ops: Vec<ComplexMatrix> = action.elements()[1..].to_vec();
        let adjoints = ops.iter().map(ComplexMatrix::adjoint).collect();
        Self { dim: action.dim(), ops, adjoints, target: 1.0 / (action.dim() + 1) as f64 }
    }

    pub fn for_dim(dim: usize) -> Result<Self> {
        Ok(Self::new(&HeisenbergAction::for_dim(dim)?))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, psi: &ComplexVector) -> Result<f64> {
        if psi.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: psi.dim() });
        }
        let s = psi.norm_sqr();
        if s == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(s)
    }

    /// `|<psi|g psi>|^2 / |psi|^4` for every nontrivial `g`.
    pub fn overlaps(&self, psi: &ComplexVector) -> Result<Vec<f64>> {
        let s = self.check(psi)?;
        Ok(self.ops.iter().map(|g| dot(psi, &apply(g, psi)).norm_sqr() / (s * s)).collect())
    }

    pub fn value(&self, psi: &ComplexVector) -> Result<f64> {
        Ok(self.overlaps(psi)?.iter().map(|g| (g - self.target).powi(2)).sum())
    }

    pub fn max_deviation(&self, psi: &ComplexVector) -> Result<f64> {
        Ok(self.overlaps(psi)?.iter().map(|g| (g - self.target).abs()).fold(0.0, f64::max))
    }

    /// Value and the Wirtinger derivative `df/d(conj psi)`. The gradient with
    /// respect to `(Re psi, Im psi)` is twice its real and imaginary parts.
    pub fn value_and_gradient(&self, psi: &ComplexVector) -> Result<(f64, ComplexVector)> {
        let s = self.check(psi)?;
        let mut value = 0.0;
        let mut grad = vec![ZERO; self.dim];
        for (g, gd) in self.ops.iter().zip(&self.adjoints) {
            let gpsi = apply(g, psi);
            let h = dot(psi, &gpsi);
            let overlap = h.norm_sqr() / (s * s);
            let r = overlap - self.target;
            value += r * r;
            let gdpsi = apply(gd, psi);
            let w = 2.0 * r / (s * s);
            let radial = 2.0 * 2.0 * r * h.norm_sqr() / (s * s * s);
            for a in 0..self.dim {
                grad[a] += w * (h.conj() * gpsi[a] + h * gdpsi[a]) - radial * psi[a];
            }
        }
        Ok((value, ComplexVector::new(grad)))
    }
}

fn apply(m: &ComplexMatrix, v: &ComplexVector) -> ComplexVector {
    m.apply(v).expect("dimensions checked")
}

fn dot(u: &ComplexVector, v: &ComplexVector) -> C64 {
    u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// `f(psi)` over the group of [`HeisenbergAction::for_dim`].
pub fn defect_objective(fiducial: &ComplexVector, action: &HeisenbergAction) -> Result<f64> {
    DefectObjective::new(action).value(fiducial)
}

/// Orthonormal columns spanning the search space.
fn search_basis(config: &SearchConfig) -> Vec<ComplexVector> {
    match config.symmetry {
        Symmetry::None => (0..config.dim).map(|k| ComplexVector::basis(config.dim, k)).collect(),
        Symmetry::ZaunerSubspace => {
            let c = 1.0 / 3f64.sqrt();
            vec![ComplexVector::basis(4, 0), ComplexVector::from_real(&[0.0, c, c, c])]
        }
    }
}

/// Real coordinates `(Re c0, Re c1, Im c1, ...)`, with `Im c0 = 0` fixing the
/// phase.
struct Parametrization {
    basis: Vec<ComplexVector>,
    dim: usize,
}

impl Parametrization {
    fn n_params(&self) -> usize {
        2 * self.basis.len() - 1
    }

    fn coefficients(&self, x: &[f64]) -> Vec<C64> {
        let mut c = vec![C64::new(x[0], 0.0)];
        c.extend(x[1..].chunks(2).map(|p| C64::new(p[0], p[1])));
        c
    }

    fn vector(&self, x: &[f64]) -> ComplexVector {
        let c = self.coefficients(x);
        let mut v = vec![ZERO; self.dim];
        for (ck, bk) in c.iter().zip(&self.basis) {
            for (va, ba) in v.iter_mut().zip(bk.iter()) {
                *va += ck * ba;
            }
        }
        ComplexVector::new(v)
    }

    /// Real gradient from the Wirtinger derivative `w = df/d(conj psi)`.
    fn pull_back(&self, w: &ComplexVector) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n_params());
        for (k, bk) in self.basis.iter().enumerate() {
            let wc = dot(bk, w);
            out.push(2.0 * wc.re);
            if k > 0 {
                out.push(2.0 * wc.im);
            }
        }
        out
    }

    fn start(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let c = ComplexVector::random_gaussian(self.basis.len(), rng);
        let c = c.normalized().expect("gaussian is nonzero almost surely");
        let phase = c[0].conj() / c[0].norm();
        let mut x = vec![(c[0] * phase).re];
        for ck in &c.entries()[1..] {
            let z = ck * phase;
            x.push(z.re);
            x.push(z.im);
        }
        x
    }
}

struct RestartOutcome {
    x: Vec<f64>,
    value: f64,
    iterations: usize,
    evaluations: usize,
}

fn dotr(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// L-BFGS with Armijo backtracking. `stop` is consulted after every accepted
/// step.
fn lbfgs<F, S>(mut x: Vec<f64>, max_iter: usize, eval: F, stop: S) -> RestartOutcome
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
    S: Fn(&[f64]) -> bool,
{
    let (mut f, mut g) = eval(&x);
    let mut evaluations = 1;
    let mut history: std::collections::VecDeque<(Vec<f64>, Vec<f64>, f64)> = Default::default();
    let mut iterations = 0;
    while iterations < max_iter {
        if stop(&x) {
            break;
        }
        // Two-loop recursion.
        let mut d: Vec<f64> = g.iter().map(|v| -v).collect();
        let mut alphas = Vec::with_capacity(history.len());
        for (s, y, rho) in history.iter().rev() {
            let a = rho * dotr(s, &d);
            for (di, yi) in d.iter_mut().zip(y) {
                *di -= a * yi;
            }
            alphas.push(a);
        }
        if let Some((s, y, _)) = history.back() {
            let gamma = dotr(s, y) / dotr(y, y);
            d.iter_mut().for_each(|v| *v *= gamma);
        } else {
            let gn = dotr(&g, &g).sqrt();
            let xn = dotr(&x, &x).sqrt();
            if gn > 0.0 {
                let scale = (0.1 * xn / gn).min(1.0);
                d.iter_mut().for_each(|v| *v *= scale);
            }
        }
        for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
            let b = rho * dotr(y, &d);
            for (di, si) in d.iter_mut().zip(s) {
                *di += (a - b) * si;
            }
        }
        let mut slope = dotr(&g, &d);
        if slope.is_nan() || slope >= 0.0 {
            history.clear();
            d = g.iter().map(|v| -v).collect();
            slope = dotr(&g, &d);
            if slope == 0.0 {
                break;
            }
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + step * di).collect();
            let (ft, gt) = eval(&trial);
            evaluations += 1;
            if ft.is_finite() && ft <= f + 1e-4 * step * slope {
                accepted = Some((trial, ft, gt));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fn_, gn)) = accepted else { break };
        iterations += 1;
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dotr(&s, &y);
        if sy > 1e-300 {
            if history.len() == LBFGS_MEMORY {
                history.pop_front();
            }
            history.push_back((s, y, 1.0 / sy));
        }
        let improved = fn_ < f;
        x = xn;
        f = fn_;
        g = gn;
        if !improved {
            break;
        }
    }
    RestartOutcome { x, value: f, iterations, evaluations }
}

/// Deterministic multistart search. Restart `k` draws its start from a
/// ChaCha8 stream keyed by `(seed, k)`, so results do not depend on thread
/// scheduling.
pub fn search(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let objective = DefectObjective::for_dim(config.dim)?;
    let param = Parametrization { basis: search_basis(config), dim: config.dim };
    // Stop a restart well inside the requested tolerance; the final steps of
    // a quasi-Newton run are cheap.
    let inner_target = config.tolerance * 1e-2;

    let run = |k: usize| -> (usize, RestartOutcome, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(k as u64);
        let x0 = param.start(&mut rng);
        let eval = |x: &[f64]| -> (f64, Vec<f64>) {
            match objective.value_and_gradient(&param.vector(x)) {
                Ok((f, w)) => (f, param.pull_back(&w)),
                Err(_) => (f64::INFINITY, vec![0.0; x.len()]),
            }
        };
        let stop = |x: &[f64]| objective.max_deviation(&param.vector(x)).is_ok_and(|d| d <= inner_target);
        let out = lbfgs(x0, config.max_iter, eval, stop);
        let defect = objective.max_deviation(&param.vector(&out.x)).unwrap_or(f64::INFINITY);
        (k, out, defect)
    };

    let mut best: Option<(usize, RestartOutcome, f64)> = None;
    let mut evaluations = 0;
    let mut restarts_run = 0;
    for start in (0..config.restarts).step_by(RESTART_BATCH) {
        let end = (start + RESTART_BATCH).min(config.restarts);
        let batch: Vec<_> = (start..end).into_par_iter().map(run).collect();
        restarts_run = end;
        for item in batch {
            evaluations += item.1.evaluations;
            let better = match &best {
                None => true,
                Some((k, _, d)) => (item.2, item.0) < (*d, *k),
            };
            if better {
                best = Some(item);
            }
        }
        if best.as_ref().is_some_and(|(_, _, d)| *d <= config.tolerance) {
            break;
        }
    }
    let (restart_index, outcome, defect) = best.expect("at least one restart");
    let fiducial = param.vector(&outcome.x).phase_fixed()?;
    Ok(SearchResult {
        dim: config.dim,
        fiducial,
        defect,
        objective: outcome.value,
        iterations: outcome.iterations,
        restart_index,
        converged: defect <= config.tolerance,
        evaluations,
        restarts_run,
    })
}

/// Orbit SIC check and, for prime `N`, the minimum-uncertainty check of the
/// fiducial against the complete MUB set.
pub fn verify_fiducial(fiducial: &ComplexVector, tol: Tolerance) -> Result<VerificationReport> {
    let dim = fiducial.dim();
    let action = HeisenbergAction::for_dim(dim)?;
    let orbit = heisenberg_orbit(fiducial, &action)?;
    let target = 1.0 / (dim + 1) as f64;
    let sic = VerificationReport::new("sic", target, sic_defect(&orbit), tol);
    let mut parts = vec![sic];
    if dim % 2 == 1 && is_prime(dim) {
        let mus = mus_check(&fiducial.normalized()?, &mub_prime(dim)?, tol)?;
        parts.push(mus.to_report());
    }
    Ok(VerificationReport::combine("fiducial", target, tol, parts).with_detail(json!({"dim": dim})))
}
