//! GFGM copula evaluation.
//!
//! A copula in this family is the joint cdf of
//! `U_m = U_{0,m}^{1-p_m} · U_{1,m}^{I_m}` where `U_0`, `U_1` are independent
//! uniform vectors and `I` is a Bernoulli vector with margins `p`. Conditioning
//! on `I` gives, per coordinate,
//!
//! ```text
//! I_m = 0:  u^{1/(1-p)}
//! I_m = 1:  (u - (1-p) u^{1/(1-p)}) / p
//! ```
//!
//! and the copula is the pmf-weighted sum of the coordinate products.

use std::sync::OnceLock;

use crate::bernoulli::{self, kahan_sum, theta_bounds, BernoulliPmf, MarginVector, PROB_TOL};
use crate::error::{Error, Result};

/// Largest dimension accepted by [`GfgmCopula::cdf_natural`] and other
/// routines that enumerate all subsets of coordinates.
pub const MAX_NATURAL_DIM: usize = 16;

/// Tolerance on the agreement between the shape vector and the pmf margins.
pub const MARGIN_TOL: f64 = 1e-10;

/// `u^e` for `u ∈ [0, 1]`, `e > 0`, evaluated in log space.
#[inline]
pub(crate) fn pow_unit(u: f64, e: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        (e * u.ln()).exp()
    }
}

pub(crate) fn check_point(u: &[f64], d: usize) -> Result<()> {
    if u.len() != d {
        return Err(Error::PointDimension {
            got: u.len(),
            expected: d,
        });
    }
    for (index, &value) in u.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::OutsideUnitCube { index, value });
        }
    }
    Ok(())
}

/// Per-coordinate conditional cdf given `I_m = 0` and `I_m = 1`.
#[inline]
fn conditional_cdfs(p: f64, u: f64) -> (f64, f64) {
    let lifted = pow_unit(u, 1.0 / (1.0 - p));
    (lifted, (u - (1.0 - p) * lifted) / p)
}

/// Per-coordinate conditional densities given `I_m = 0` and `I_m = 1`.
#[inline]
fn conditional_pdfs(p: f64, u: f64) -> (f64, f64) {
    let power = pow_unit(u, p / (1.0 - p));
    (power / (1.0 - p), (1.0 - power) / p)
}

/// A member of the GFGM family: shape vector plus Bernoulli pmf.
#[derive(Debug, Clone)]
pub struct GfgmCopula {
    p: MarginVector,
    pmf: BernoulliPmf,
    nu: OnceLock<Vec<f64>>,
}

impl PartialEq for GfgmCopula {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.pmf == other.pmf
    }
}

impl GfgmCopula {
    pub fn new(p: MarginVector, pmf: BernoulliPmf) -> Result<Self> {
        if p.dim() != pmf.dim() {
            return Err(Error::Dimension {
                d: pmf.dim(),
                expected: "pmf dimension equal to the shape vector length",
            });
        }
        for (index, (&shape, &margin)) in p.iter().zip(pmf.margin_slice()).enumerate() {
            if (shape - margin).abs() > MARGIN_TOL {
                return Err(Error::MarginMismatch {
                    index,
                    pmf: margin,
                    shape,
                });
            }
        }
        Ok(Self {
            p,
            pmf,
            nu: OnceLock::new(),
        })
    }

    /// Copula whose shape vector is the pmf's own margins.
    pub fn from_pmf(pmf: BernoulliPmf) -> Self {
        Self {
            p: pmf.marginals(),
            pmf,
            nu: OnceLock::new(),
        }
    }

    pub fn independence(p: MarginVector) -> Result<Self> {
        let pmf = BernoulliPmf::independence(&p)?;
        Self::new(p, pmf)
    }

    /// Extreme positive dependence member for shape `p`.
    pub fn comonotonic(p: MarginVector) -> Result<Self> {
        let pmf = BernoulliPmf::comonotonic(&p)?;
        Self::new(p, pmf)
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn shape(&self) -> &MarginVector {
        &self.p
    }

    pub fn pmf(&self) -> &BernoulliPmf {
        &self.pmf
    }

    /// Joint cdf by summation over the support of the Bernoulli pmf.
    pub fn cdf(&self, u: &[f64]) -> Result<f64> {
        check_point(u, self.dim())?;
        let factors: Vec<(f64, f64)> = self
            .p
            .iter()
            .zip(u)
            .map(|(&p, &x)| conditional_cdfs(p, x))
            .collect();
        Ok(self.pmf.expectation(|mask| product_by_mask(&factors, mask)))
    }

    /// Joint cdf through the polynomial (natural) representation
    /// `∏u_m · (1 + Σ_S ν_S ∏_{j∈S} (1 - u_j^{p_j/(1-p_j)}))`.
    ///
    /// Enumerates every subset, so it is limited to `d <= 16`.
    pub fn cdf_natural(&self, u: &[f64]) -> Result<f64> {
        let d = self.dim();
        check_point(u, d)?;
        if d > MAX_NATURAL_DIM {
            return Err(Error::Dimension {
                d,
                expected: "d <= 16 for the natural representation",
            });
        }
        let nu = self.nu_table()?;
        let w: Vec<f64> = self
            .p
            .iter()
            .zip(u)
            .map(|(&p, &x)| 1.0 - pow_unit(x, p / (1.0 - p)))
            .collect();
        let mut products = vec![1.0; 1 << d];
        for mask in 1..products.len() {
            let low = mask.trailing_zeros() as usize;
            products[mask] = products[mask & (mask - 1)] * w[low];
        }
        let series = kahan_sum(nu.iter().zip(&products).map(|(n, w)| n * w));
        Ok(u.iter().product::<f64>() * series)
    }

    /// ν coefficients for every subset (cached).
    pub fn nu_table(&self) -> Result<&[f64]> {
        if let Some(nu) = self.nu.get() {
            return Ok(nu);
        }
        let table = self.pmf.nu_coefficients()?;
        Ok(self.nu.get_or_init(|| table))
    }

    /// Copula density. Finite on the closed cube, where boundary values are
    /// the continuous extension.
    pub fn pdf(&self, u: &[f64]) -> Result<f64> {
        check_point(u, self.dim())?;
        let factors: Vec<(f64, f64)> = self
            .p
            .iter()
            .zip(u)
            .map(|(&p, &x)| conditional_pdfs(p, x))
            .collect();
        Ok(self.pmf.expectation(|mask| product_by_mask(&factors, mask)))
    }

    /// Survival function `Pr(U > u)` by inclusion–exclusion over cdf values.
    pub fn survival(&self, u: &[f64]) -> Result<f64> {
        let d = self.dim();
        check_point(u, d)?;
        if d > MAX_NATURAL_DIM {
            return Err(Error::Dimension {
                d,
                expected: "d <= 16 for survival evaluation",
            });
        }
        let mut point = vec![1.0; d];
        let mut total = 0.0;
        for subset in 0..1u64 << d {
            for (j, x) in point.iter_mut().enumerate() {
                *x = if subset >> j & 1 == 1 { u[j] } else { 1.0 };
            }
            let sign = if subset.count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            total += sign * self.cdf(&point)?;
        }
        Ok(total)
    }

    /// Mass the copula assigns to the box `[lower, upper]` (the alternating
    /// corner sum of the d-increasing property).
    pub fn box_mass(&self, lower: &[f64], upper: &[f64]) -> Result<f64> {
        let d = self.dim();
        check_point(lower, d)?;
        check_point(upper, d)?;
        if d > MAX_NATURAL_DIM {
            return Err(Error::Dimension {
                d,
                expected: "d <= 16 for box sums",
            });
        }
        let mut corner = vec![0.0; d];
        let mut total = 0.0;
        for choice in 0..1u64 << d {
            let mut lows = 0;
            for j in 0..d {
                if choice >> j & 1 == 1 {
                    corner[j] = lower[j];
                    lows += 1;
                } else {
                    corner[j] = upper[j];
                }
            }
            let sign = if lows % 2 == 0 { 1.0 } else { -1.0 };
            total += sign * self.cdf(&corner)?;
        }
        Ok(total)
    }
}

#[inline]
fn product_by_mask(factors: &[(f64, f64)], mask: u64) -> f64 {
    factors
        .iter()
        .enumerate()
        .map(|(j, &(off, on))| if mask >> j & 1 == 1 { on } else { off })
        .product()
}

/// Bivariate member in its algebraic parameterization
/// `C(u, v) = uv (1 + θ (1 - u^{p1/(1-p1)}) (1 - v^{p2/(1-p2)}))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BivariateGfgm {
    p1: f64,
    p2: f64,
    theta: f64,
}

impl BivariateGfgm {
    pub fn new(p1: f64, p2: f64, theta: f64) -> Result<Self> {
        MarginVector::new(vec![p1, p2])?;
        let (lower, upper) = theta_bounds(p1, p2);
        if !theta.is_finite() || theta < lower - PROB_TOL || theta > upper + PROB_TOL {
            return Err(Error::ThetaOutOfRange {
                theta,
                lower,
                upper,
            });
        }
        Ok(Self {
            p1,
            p2,
            theta: theta.clamp(lower, upper),
        })
    }

    /// Upper end of the θ range (comonotonic Bernoulli pair).
    pub fn comonotonic(p1: f64, p2: f64) -> Result<Self> {
        MarginVector::new(vec![p1, p2])?;
        Self::new(p1, p2, theta_bounds(p1, p2).1)
    }

    /// Lower end of the θ range (counter-monotonic Bernoulli pair).
    pub fn countermonotonic(p1: f64, p2: f64) -> Result<Self> {
        MarginVector::new(vec![p1, p2])?;
        Self::new(p1, p2, theta_bounds(p1, p2).0)
    }

    pub fn from_pmf(pmf: &BernoulliPmf) -> Result<Self> {
        let theta = pmf.theta_of()?;
        let p = pmf.margin_slice();
        Self::new(p[0], p[1], theta)
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `[lower, upper]` admissible θ for these margins.
    pub fn theta_range(&self) -> (f64, f64) {
        theta_bounds(self.p1, self.p2)
    }

    pub fn to_pmf(&self) -> Result<BernoulliPmf> {
        BernoulliPmf::from_theta_bivariate(self.p1, self.p2, self.theta)
    }

    pub fn to_copula(&self) -> Result<GfgmCopula> {
        let pmf = self.to_pmf()?;
        GfgmCopula::new(MarginVector::new(vec![self.p1, self.p2])?, pmf)
    }

    /// Huang–Kotz parameters `(a, b)` when `p1 = p2`.
    pub fn huang_kotz_parameters(&self) -> Option<(f64, f64)> {
        (self.p1 == self.p2).then(|| (self.theta, self.p1 / (1.0 - self.p1)))
    }

    pub fn cdf(&self, u: f64, v: f64) -> Result<f64> {
        check_point(&[u, v], 2)?;
        let a = 1.0 - pow_unit(u, self.p1 / (1.0 - self.p1));
        let b = 1.0 - pow_unit(v, self.p2 / (1.0 - self.p2));
        Ok(u * v * (1.0 + self.theta * a * b))
    }

    pub fn pdf(&self, u: f64, v: f64) -> Result<f64> {
        check_point(&[u, v], 2)?;
        let b1 = self.p1 / (1.0 - self.p1);
        let b2 = self.p2 / (1.0 - self.p2);
        let a = 1.0 - (1.0 + b1) * pow_unit(u, b1);
        let b = 1.0 - (1.0 + b2) * pow_unit(v, b2);
        Ok(1.0 + self.theta * a * b)
    }
}

/// Extreme positive dependence copula for equal shapes `p`:
/// `(1-p) ∏ u_m^{1/(1-p)} + p ∏ (u_m - (1-p) u_m^{1/(1-p)}) / p`.
pub fn cdf_epd(p: f64, u: &[f64]) -> Result<f64> {
    MarginVector::constant(p, u.len())?;
    check_point(u, u.len())?;
    let (mut off, mut on) = (1.0, 1.0);
    for &x in u {
        let (f0, f1) = conditional_cdfs(p, x);
        off *= f0;
        on *= f1;
    }
    Ok((1.0 - p) * off + p * on)
}

/// Huang–Kotz extension of the FGM copula, `uv (1 + a (1-u^b)(1-v^b))`.
pub fn huang_kotz_cdf(a: f64, b: f64, u: f64, v: f64) -> f64 {
    u * v * (1.0 + a * (1.0 - u.powf(b)) * (1.0 - v.powf(b)))
}

/// Classical d-variate FGM copula `∏u_m (1 + Σ_S θ_S ∏_{j∈S} (1 - u_j))`
/// with `thetas` indexed by subset mask; entries for `|S| < 2` are ignored.
pub fn fgm_cdf(thetas: &[f64], u: &[f64]) -> Result<f64> {
    let d = u.len();
    if thetas.len() != 1 << d {
        return Err(Error::InvalidArgument(format!(
            "expected {} FGM parameters, got {}",
            1u64 << d,
            thetas.len()
        )));
    }
    check_point(u, d)?;
    let mut series = 1.0;
    for (mask, &theta) in thetas.iter().enumerate() {
        if mask.count_ones() < 2 {
            continue;
        }
        let prod: f64 = (0..d)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| 1.0 - u[j])
            .product();
        series += theta * prod;
    }
    Ok(u.iter().product::<f64>() * series)
}

/// FGM parameter from the sign sum `Σ_{i_S} (-1)^{|i_S|} f_S(i_S)` of the
/// sub-vector indexed by `subset_mask`.
pub fn fgm_theta_sign_sum(pmf: &BernoulliPmf, subset_mask: u64) -> f64 {
    pmf.expectation(|mask| {
        if (mask & subset_mask).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    })
}

/// Coxian-2 distribution parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coxian2Params {
    pub p: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl Coxian2Params {
    pub fn new(p: f64, beta1: f64, beta2: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::DegenerateMargin { index: 0, value: p });
        }
        if !(beta1 > 0.0 && beta2 > 0.0) || beta1 == beta2 {
            return Err(Error::InvalidArgument(format!(
                "Coxian-2 rates must be positive and distinct, got ({beta1}, {beta2})"
            )));
        }
        Ok(Self { p, beta1, beta2 })
    }

    /// Rates `β1 = 1/(1-p)`, `β2 = 1`, which make the distribution `Exp(1)`.
    pub fn unit_exponential(p: f64) -> Result<Self> {
        Self::new(p, 1.0 / (1.0 - p), 1.0)
    }

    /// Laplace–Stieltjes transform at `t >= 0`.
    pub fn lst(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "LST argument {t} must be >= 0"
            )));
        }
        let first = self.beta1 / (t + self.beta1);
        let second = self.beta2 / (t + self.beta2);
        Ok((1.0 - self.p) * first + self.p * first * second)
    }
}

/// Cdf of `U_0^{1-p} U_1^I` when `Pr(I = 0), Pr(I = 1)` are `weights`.
///
/// Equals `u` exactly when `Pr(I = 1) = p`.
pub fn marginal_cdf_representation(p: f64, weights: (f64, f64), u: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::DegenerateMargin { index: 0, value: p });
    }
    let (w0, w1) = weights;
    if w0 < 0.0 || w1 < 0.0 || (w0 + w1 - 1.0).abs() > bernoulli::NORM_TOL {
        return Err(Error::InvalidArgument(format!(
            "weights ({w0}, {w1}) are not a Bernoulli pmf"
        )));
    }
    check_point(&[u], 1)?;
    let (f0, f1) = conditional_cdfs(p, u);
    Ok(w0 * f0 + w1 * f1)
}
