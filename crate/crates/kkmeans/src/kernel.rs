//! Kernel functions and construction of the kernel matrix `K`.
//!
//! `K` is built in two steps: the Gram matrix `B = P̂P̂ᵀ` (GEMM or SYRK),
//! then an elementwise map from `B` to `K`. The Gaussian kernel reads the
//! diagonal of `B` to recover squared distances:
//! `‖x_i − x_j‖² = B_ii + B_jj − 2B_ij`.

use std::fmt;
use std::str::FromStr;

use crate::dense::{diag, gemm_gram, map_indexed, syrk_gram};
use crate::{DenseMatrix, Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelFamily {
    Linear,
    Polynomial,
    Gaussian,
    Sigmoid,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 4] = [
        KernelFamily::Linear,
        KernelFamily::Polynomial,
        KernelFamily::Gaussian,
        KernelFamily::Sigmoid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::Linear => "linear",
            KernelFamily::Polynomial => "polynomial",
            KernelFamily::Gaussian => "gaussian",
            KernelFamily::Sigmoid => "sigmoid",
        }
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KernelFamily::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::InvalidKernel(format!(
                    "unknown kernel `{s}` (expected linear, polynomial, gaussian or sigmoid)"
                ))
            })
    }
}

/// A kernel family together with its parameters.
///
/// * polynomial: `(γ·xᵀy + c)^r`
/// * gaussian: `exp(−γ‖x−y‖²/σ²)`
/// * sigmoid: `tanh(γ·xᵀy + c)`
/// * linear: `xᵀy`
///
/// Parameters a family does not use are ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub family: KernelFamily,
    pub gamma: f64,
    pub coef: f64,
    pub degree: u32,
    pub sigma: f64,
}

impl Default for KernelSpec {
    /// Polynomial kernel with `γ = 1, c = 1, r = 2`.
    fn default() -> Self {
        Self::polynomial(1.0, 1.0, 2)
    }
}

impl KernelSpec {
    pub fn linear() -> Self {
        Self::of_family(KernelFamily::Linear)
    }

    pub fn polynomial(gamma: f64, coef: f64, degree: u32) -> Self {
        Self {
            family: KernelFamily::Polynomial,
            gamma,
            coef,
            degree,
            sigma: 1.0,
        }
    }

    pub fn gaussian(gamma: f64, sigma: f64) -> Self {
        Self {
            family: KernelFamily::Gaussian,
            gamma,
            coef: 0.0,
            degree: 1,
            sigma,
        }
    }

    pub fn sigmoid(gamma: f64, coef: f64) -> Self {
        Self {
            family: KernelFamily::Sigmoid,
            gamma,
            coef,
            degree: 1,
            sigma: 1.0,
        }
    }

    /// The family with default parameters `γ = 1, c = 1, r = 2, σ = 1`.
    pub fn of_family(family: KernelFamily) -> Self {
        Self {
            family,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::InvalidKernel("degree must be at least 1".into()));
        }
        if !(self.gamma.is_finite() && self.coef.is_finite()) {
            return Err(Error::InvalidKernel("gamma and coef must be finite".into()));
        }
        if self.family == KernelFamily::Gaussian && !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidKernel("gaussian sigma must be positive".into()));
        }
        Ok(())
    }

    /// Maps an inner product (and, for the Gaussian, the two squared
    /// norms) to a kernel value.
    #[inline]
    fn from_inner<T: Scalar>(&self, p: &KernelParams<T>, xy: T, xx: T, yy: T) -> T {
        match self.family {
            KernelFamily::Linear => xy,
            KernelFamily::Polynomial => pow_by_squaring(p.gamma * xy + p.coef, self.degree),
            KernelFamily::Gaussian => {
                // Rounding can push the distance slightly below zero.
                let sq = (xx + yy - p.two * xy).max(T::zero());
                gaussian_from_sqdist(p, sq)
            }
            KernelFamily::Sigmoid => (p.gamma * xy + p.coef).tanh(),
        }
    }
}

struct KernelParams<T> {
    gamma: T,
    coef: T,
    inv_sigma2: T,
    two: T,
}

impl<T: Scalar> KernelParams<T> {
    fn new(spec: &KernelSpec) -> Self {
        Self {
            gamma: T::from_f64(spec.gamma),
            coef: T::from_f64(spec.coef),
            inv_sigma2: T::from_f64(1.0 / (spec.sigma * spec.sigma)),
            two: T::from_f64(2.0),
        }
    }
}

#[inline]
fn gaussian_from_sqdist<T: Scalar>(p: &KernelParams<T>, sq: T) -> T {
    let expo = (-(p.gamma * sq) * p.inv_sigma2).max(T::exp_floor());
    expo.exp()
}

/// `x^r` for integer `r ≥ 1` by repeated squaring.
#[inline]
pub fn pow_by_squaring<T: Scalar>(x: T, r: u32) -> T {
    let mut base = x;
    let mut exp = r;
    let mut acc = T::one();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base;
        }
        exp >>= 1;
        if exp > 0 {
            base = base * base;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GramAlgorithm {
    Gemm,
    Syrk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GramVariant {
    #[default]
    Auto,
    Gemm,
    Syrk,
}

/// How to compute `B = P̂P̂ᵀ`.
///
/// `Auto` uses GEMM when `n/d` exceeds `threshold`, SYRK otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramMethod {
    pub variant: GramVariant,
    pub threshold: f64,
}

impl Default for GramMethod {
    fn default() -> Self {
        Self {
            variant: GramVariant::Auto,
            threshold: 100.0,
        }
    }
}

impl GramMethod {
    pub fn auto(threshold: f64) -> Self {
        Self {
            variant: GramVariant::Auto,
            threshold,
        }
    }

    pub fn gemm() -> Self {
        Self {
            variant: GramVariant::Gemm,
            ..Self::default()
        }
    }

    pub fn syrk() -> Self {
        Self {
            variant: GramVariant::Syrk,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "gram threshold must be positive, got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

pub fn select_gram_algorithm(n: usize, d: usize, method: GramMethod) -> GramAlgorithm {
    match method.variant {
        GramVariant::Gemm => GramAlgorithm::Gemm,
        GramVariant::Syrk => GramAlgorithm::Syrk,
        GramVariant::Auto => {
            if n as f64 / d.max(1) as f64 > method.threshold {
                GramAlgorithm::Gemm
            } else {
                GramAlgorithm::Syrk
            }
        }
    }
}

/// `B = points · pointsᵀ`, dispatched per [`select_gram_algorithm`].
pub fn compute_gram<T: Scalar>(points: &DenseMatrix<T>, method: GramMethod) -> Result<DenseMatrix<T>> {
    method.validate()?;
    match select_gram_algorithm(points.rows(), points.cols(), method) {
        GramAlgorithm::Gemm => gemm_gram(points),
        GramAlgorithm::Syrk => syrk_gram(points),
    }
}

/// Maps the Gram matrix `B` to the kernel matrix `K` entry by entry.
pub fn apply_kernel<T: Scalar>(b: &DenseMatrix<T>, spec: &KernelSpec) -> Result<DenseMatrix<T>> {
    spec.validate()?;
    if !b.is_square() {
        return Err(Error::NotSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    if spec.family == KernelFamily::Linear {
        b.check_finite()?;
        return Ok(b.clone());
    }
    let p = KernelParams::<T>::new(spec);
    let norms = diag(b)?;
    let norms = norms.as_slice();
    map_indexed(b, |i, j, v| spec.from_inner(&p, v, norms[i], norms[j]))
}

/// `K = kernel(P̂P̂ᵀ)`.
pub fn kernel_matrix<T: Scalar>(
    points: &DenseMatrix<T>,
    spec: &KernelSpec,
    method: GramMethod,
) -> Result<DenseMatrix<T>> {
    spec.validate()?;
    let b = compute_gram(points, method)?;
    apply_kernel(&b, spec)
}

/// Evaluates the kernel on a single pair of points.
///
/// The Gaussian branch uses `Σ(x−y)²` directly rather than the Gram
/// expansion.
pub fn kernel_eval<T: Scalar>(x: &[T], y: &[T], spec: &KernelSpec) -> Result<T> {
    spec.validate()?;
    if x.len() != y.len() {
        return Err(Error::mismatch(
            "kernel_eval",
            format!("lengths {} and {}", x.len(), y.len()),
        ));
    }
    let p = KernelParams::<T>::new(spec);
    let dot = || x.iter().zip(y).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
    let v = match spec.family {
        KernelFamily::Gaussian => {
            let sq = x
                .iter()
                .zip(y)
                .fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b));
            gaussian_from_sqdist(&p, sq)
        }
        _ => spec.from_inner(&p, dot(), T::zero(), T::zero()),
    };
    if !v.is_finite() {
        return Err(Error::NonFinite { row: 0, col: 0 });
    }
    Ok(v)
}
