//! Mahler measure `M(p) = exp ∫_{T^d} log|p|`.
//!
//! Polynomials whose support lies on a line are effectively univariate and
//! are measured exactly from the roots of their irreducible factors. Other
//! supports are integrated numerically with randomly shifted Kronecker
//! lattices, which gives an unbiased estimate with a standard error.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::factor_polynomial;
use crate::lattice::{ExponentVector, SurfaceSignature};
use crate::laurent::LaurentPolynomial;
use crate::registry::Registry;

pub const DEFAULT_SAMPLES: usize = 1 << 16;
pub const DEFAULT_SEED: u64 = 0x5eed;
const REPLICATES: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MahlerEstimate {
    pub value: f64,
    pub std_error: f64,
    /// `log M(p)` and its standard error, where errors combine additively.
    pub log_value: f64,
    pub log_std_error: f64,
    pub method: &'static str,
    pub samples: usize,
}

impl MahlerEstimate {
    fn exact(log_value: f64) -> Self {
        MahlerEstimate {
            value: log_value.exp(),
            std_error: 0.0,
            log_value,
            log_std_error: 0.0,
            method: "roots",
            samples: 0,
        }
    }
}

pub trait MahlerEstimator: Send + Sync {
    fn estimate(&self, p: &LaurentPolynomial, samples: usize, seed: u64) -> Result<MahlerEstimate>;
}

pub struct RootsEstimator;

impl MahlerEstimator for RootsEstimator {
    fn estimate(&self, p: &LaurentPolynomial, _samples: usize, _seed: u64) -> Result<MahlerEstimate> {
        if p.is_zero() {
            return Err(Error::ZeroInput);
        }
        let coeffs = collinear_coefficients(p)
            .ok_or_else(|| Error::InvalidArgument("support is not collinear; use torus-qmc".into()))?;
        Ok(MahlerEstimate::exact(log_mahler_univariate(&coeffs)?))
    }
}

pub struct TorusEstimator;

impl MahlerEstimator for TorusEstimator {
    fn estimate(&self, p: &LaurentPolynomial, samples: usize, seed: u64) -> Result<MahlerEstimate> {
        if p.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(torus_estimate(p, samples, seed))
    }
}

pub fn default_registry() -> Registry<dyn MahlerEstimator> {
    let mut r: Registry<dyn MahlerEstimator> = Registry::new();
    r.register("roots", Box::new(RootsEstimator))
        .register("torus-qmc", Box::new(TorusEstimator));
    r
}

/// Exact for collinear support, torus estimate otherwise.
pub fn mahler_measure(p: &LaurentPolynomial, samples: usize, seed: u64) -> Result<MahlerEstimate> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    match collinear_coefficients(p) {
        Some(c) => Ok(MahlerEstimate::exact(log_mahler_univariate(&c)?)),
        None => Ok(torus_estimate(p, samples, seed)),
    }
}

/// If the support of `p` lies on a line `e₀ + k·v` with `v` primitive,
/// the coefficients indexed by `k − k_min`.
fn collinear_coefficients(p: &LaurentPolynomial) -> Option<Vec<BigInt>> {
    let terms: Vec<(&ExponentVector, &BigInt)> = p.terms().collect();
    let (e0, _) = terms[0];
    let diffs: Vec<ExponentVector> = terms.iter().map(|(e, _)| *e - e0).collect();
    let Some(d) = diffs.iter().find(|d| !d.is_zero()) else {
        return Some(vec![terms[0].1.clone()]);
    };
    let g = d.0.iter().fold(0i64, |acc, x| acc.gcd(x));
    let v: Vec<i64> = d.0.iter().map(|x| x / g).collect();
    let pivot = v.iter().position(|x| *x != 0).expect("nonzero direction");
    let mut ks = Vec::with_capacity(terms.len());
    for diff in &diffs {
        let k = diff.0[pivot] / v[pivot];
        if diff.0.iter().zip(&v).any(|(a, b)| *a != k * b) {
            return None;
        }
        ks.push(k);
    }
    let kmin = *ks.iter().min().expect("nonempty");
    let kmax = *ks.iter().max().expect("nonempty");
    let mut out = vec![BigInt::zero(); (kmax - kmin) as usize + 1];
    for (k, (_, c)) in ks.iter().zip(&terms) {
        out[(k - kmin) as usize] = (*c).clone();
    }
    Some(out)
}

/// `log M(f)` for a one-variable polynomial given by ascending coefficients,
/// computed factor by factor so every root-finding problem is square-free.
fn log_mahler_univariate(coeffs: &[BigInt]) -> Result<f64> {
    let ann = SurfaceSignature::annulus();
    let f = LaurentPolynomial::from_terms(
        ann,
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (ExponentVector(vec![k as i64]), c.clone())),
    );
    let fac = factor_polynomial(&f)?;
    let mut total = 0.0;
    for (class, e) in fac.factors() {
        let rep = class.representative();
        let dense: Vec<f64> = {
            let deg = rep.max_exponents().expect("nonzero").0[0] as usize;
            let mut d = vec![0.0; deg + 1];
            for (ex, c) in rep.terms() {
                d[ex.0[0] as usize] = c.to_f64().expect("finite coefficient");
            }
            d
        };
        total += *e as f64 * log_mahler_squarefree(&dense, rep);
    }
    Ok(total)
}

fn log_mahler_squarefree(dense: &[f64], rep: &LaurentPolynomial) -> f64 {
    let deg = dense.len() - 1;
    let lc = rep.terms().next_back().expect("nonzero").1;
    let log_lc = lc.abs().to_f64().expect("finite").ln();
    if deg == 0 {
        return log_lc;
    }
    aberth(dense)
        .iter()
        .map(|z| z.norm().max(1.0).ln())
        .sum::<f64>()
        + log_lc
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous root iteration of Ehrlich–Aberth.
fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 1 {
        return vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)];
    }
    let lc = coeffs[n];
    let radius = (coeffs[0] / lc).abs().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[k] -= w;
                worst = worst.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

fn kronecker_direction(d: usize) -> Vec<f64> {
    const PRIMES: [u32; 24] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    ];
    (0..d)
        .map(|j| {
            let s = f64::from(PRIMES[j % PRIMES.len()]).sqrt() * (1 + j / PRIMES.len()) as f64;
            s.fract()
        })
        .collect()
}

fn torus_estimate(p: &LaurentPolynomial, samples: usize, seed: u64) -> MahlerEstimate {
    let vars = p.variables();
    let d = vars.len();
    let terms: Vec<(Vec<f64>, f64)> = p
        .terms()
        .map(|(e, c)| {
            (
                vars.iter().map(|&v| e.0[v] as f64).collect(),
                c.to_f64().expect("finite coefficient"),
            )
        })
        .collect();
    let alpha = kronecker_direction(d);
    let per = (samples / REPLICATES).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut means = Vec::with_capacity(REPLICATES);
    let mut theta = vec![0.0; d];
    for _ in 0..REPLICATES {
        let shift: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
        let mut acc = 0.0;
        for k in 0..per {
            for j in 0..d {
                theta[j] = (shift[j] + k as f64 * alpha[j]).fract();
            }
            let mut z = Complex64::new(0.0, 0.0);
            for (e, c) in &terms {
                let angle: f64 = e.iter().zip(&theta).map(|(a, t)| a * t).sum::<f64>() * std::f64::consts::TAU;
                z += Complex64::from_polar(*c, angle);
            }
            acc += z.norm().max(1e-300).ln();
        }
        means.push(acc / per as f64);
    }
    let r = REPLICATES as f64;
    let mean = means.iter().sum::<f64>() / r;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (r - 1.0);
    let se = (var / r).sqrt();
    let value = mean.exp();
    MahlerEstimate {
        value,
        std_error: value * se,
        log_value: mean,
        log_std_error: se,
        method: "torus-qmc",
        samples: per * REPLICATES,
    }
}
