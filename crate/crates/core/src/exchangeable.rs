//! Exchangeable GFGM copulas.
//!
//! An exchangeable Bernoulli vector is determined by the law of its sum
//! `N_d = I_1 + … + I_d`: every outcome with `k` ones has mass
//! `Pr(N_d = k) / binom(d, k)`. The count pmf is the working representation
//! here; expansion to atoms is only done for moderate `d`.

use crate::bernoulli::{kahan_sum, BernoulliPmf, MarginVector, MAX_DENSE_DIM, NORM_TOL, PROB_TOL};
use crate::copula::{check_point, pow_unit, GfgmCopula};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_beta, Rule};

/// Position of `pd` relative to the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanSplit {
    /// `pd` is the integer `k`.
    Integer(usize),
    /// `j < pd < j + 1`.
    Between(usize),
}

/// Tolerance used to decide whether `pd` is an integer.
pub const INTEGER_MEAN_TOL: f64 = 1e-9;

pub fn mean_split(p: f64, d: usize) -> MeanSplit {
    let pd = p * d as f64;
    let nearest = pd.round();
    if (pd - nearest).abs() <= INTEGER_MEAN_TOL {
        MeanSplit::Integer(nearest as usize)
    } else {
        MeanSplit::Between(pd.floor() as usize)
    }
}

/// `binom(n, k)` as a float; evaluated through logarithms for `n > 50`.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 50 {
        let mut acc = 1.0;
        for i in 0..k {
            acc = acc * (n - i) as f64 / (i + 1) as f64;
        }
        acc.round()
    } else {
        let ln: f64 = (0..k)
            .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
            .sum();
        ln.exp()
    }
}

/// Distribution of `N_d` for an exchangeable Bernoulli vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ExchangeableCountPmf {
    q: Vec<f64>,
    p: f64,
}

impl ExchangeableCountPmf {
    /// `q[k] = Pr(N_d = k)` for `k = 0..=d`.
    pub fn new(mut q: Vec<f64>) -> Result<Self> {
        if q.len() < 3 {
            return Err(Error::Dimension {
                d: q.len().saturating_sub(1),
                expected: "d >= 2",
            });
        }
        for (k, v) in q.iter_mut().enumerate() {
            if !v.is_finite() || *v < -PROB_TOL {
                return Err(Error::NegativeMass {
                    mask: k as u64,
                    value: *v,
                });
            }
            *v = v.max(0.0);
        }
        let sum = kahan_sum(q.iter().copied());
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization { sum });
        }
        if sum != 1.0 {
            q.iter_mut().for_each(|v| *v /= sum);
        }
        let d = q.len() - 1;
        let p = kahan_sum(q.iter().enumerate().map(|(k, v)| k as f64 * v)) / d as f64;
        if p <= PROB_TOL || p >= 1.0 - PROB_TOL {
            return Err(Error::DegenerateMargin { index: 0, value: p });
        }
        Ok(Self { q, p })
    }

    pub fn dim(&self) -> usize {
        self.q.len() - 1
    }

    pub fn counts(&self) -> &[f64] {
        &self.q
    }

    /// Common margin `E[N_d] / d`.
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn mean(&self) -> f64 {
        self.p * self.dim() as f64
    }

    /// Atom-level pmf, `f(i) = q_{|i|} / binom(d, |i|)`.
    pub fn expand(&self) -> Result<BernoulliPmf> {
        let d = self.dim();
        if d > MAX_DENSE_DIM {
            return Err(Error::Dimension {
                d,
                expected: "d <= 20 for atom expansion",
            });
        }
        let mut atoms = Vec::new();
        for (k, &qk) in self.q.iter().enumerate() {
            if qk <= 0.0 {
                continue;
            }
            let mass = qk / binomial(d, k);
            atoms.extend(masks_with_weight(d, k).map(|m| (m, mass)));
        }
        BernoulliPmf::new(d, atoms)
    }

    pub fn to_copula(&self) -> Result<GfgmCopula> {
        let pmf = self.expand()?;
        GfgmCopula::new(MarginVector::constant(self.p, self.dim())?, pmf)
    }

    /// `E[∏_m g(I_m)] = Σ_k q_k g(1)^k g(0)^{d-k}`.
    pub fn product_expectation(&self, at_zero: f64, at_one: f64) -> f64 {
        let d = self.dim() as i32;
        kahan_sum(
            self.q
                .iter()
                .enumerate()
                .filter(|(_, &qk)| qk > 0.0)
                .map(|(k, &qk)| qk * at_one.powi(k as i32) * at_zero.powi(d - k as i32)),
        )
    }

    /// `ρ^cL` by weight-class summation (no expansion).
    pub fn rho_cl(&self) -> f64 {
        let p = self.p;
        let e = self.product_expectation(2.0 * (1.0 - p) / (2.0 - p), (3.0 - 2.0 * p) / (2.0 - p));
        crate::association::rho_normalizer(self.dim()) * (e - 1.0)
    }

    /// `ρ^cU` by weight-class summation (no expansion).
    pub fn rho_cu(&self) -> f64 {
        let p = self.p;
        let e = self.product_expectation(2.0 / (2.0 - p), 1.0 / (2.0 - p));
        crate::association::rho_normalizer(self.dim()) * (e - 1.0)
    }
}

/// All `d`-bit masks with exactly `k` ones, in increasing order.
pub fn masks_with_weight(d: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << d;
    let start = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = if k <= d { Some(start) } else { None };
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            // Gosper's hack
            let c = current & current.wrapping_neg();
            let r = current + c;
            let candidate = (((r ^ current) >> 2) / c) | r;
            (candidate < limit).then_some(candidate)
        };
        Some(current)
    })
}

/// Count pmfs at the extremal points of the class with mean `pd`.
///
/// Two-point laws on `{j1, j2}` with `j1 < pd < j2` and masses
/// `(j2 - pd)/(j2 - j1)`, `(pd - j1)/(j2 - j1)`, plus the point mass at `pd`
/// when it is an integer.
pub fn extremal_count_pmfs(p: f64, d: usize) -> Result<Vec<ExchangeableCountPmf>> {
    MarginVector::constant(p, d.max(2))?;
    if d < 2 {
        return Err(Error::Dimension {
            d,
            expected: "d >= 2",
        });
    }
    let pd = p * d as f64;
    let (below_max, above_min, integer) = match mean_split(p, d) {
        MeanSplit::Integer(k) => (k - 1, k + 1, Some(k)),
        MeanSplit::Between(j) => (j, j + 1, None),
    };
    let pd = match integer {
        Some(k) => k as f64,
        None => pd,
    };
    let mut out = Vec::new();
    for j1 in 0..=below_max {
        for j2 in above_min..=d {
            let span = (j2 - j1) as f64;
            let mut q = vec![0.0; d + 1];
            q[j1] = (j2 as f64 - pd) / span;
            q[j2] = (pd - j1 as f64) / span;
            debug_assert!((q[j1] + q[j2] - 1.0).abs() < 1e-12);
            out.push(ExchangeableCountPmf::new(q)?);
        }
    }
    if let Some(k) = integer {
        let mut q = vec![0.0; d + 1];
        q[k] = 1.0;
        out.push(ExchangeableCountPmf::new(q)?);
    }
    Ok(out)
}

/// Count pmf of the extreme negative dependence vector: mass on the two
/// weights adjacent to `pd`, or on `pd` itself when it is an integer.
pub fn end_counts(p: f64, d: usize) -> Result<ExchangeableCountPmf> {
    MarginVector::constant(p, d)?;
    let mut q = vec![0.0; d + 1];
    match mean_split(p, d) {
        MeanSplit::Integer(k) => q[k] = 1.0,
        MeanSplit::Between(j) => {
            let pd = p * d as f64;
            q[j] = (j + 1) as f64 - pd;
            q[j + 1] = pd - j as f64;
        }
    }
    ExchangeableCountPmf::new(q)
}

/// Atom-level END pmf (`d <= 20`).
pub fn end_pmf(p: f64, d: usize) -> Result<BernoulliPmf> {
    end_counts(p, d)?.expand()
}

/// Count pmf of the comonotonic vector with equal margins.
pub fn comonotone_counts(p: f64, d: usize) -> Result<ExchangeableCountPmf> {
    MarginVector::constant(p, d)?;
    let mut q = vec![0.0; d + 1];
    q[0] = 1.0 - p;
    q[d] = p;
    ExchangeableCountPmf::new(q)
}

/// Law of the de Finetti mixing variable `Λ` on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum MixtureSpec {
    /// `E[Λ^k]` for `k = 0, 1, …`.
    Moments(Vec<f64>),
    /// Discrete or quadrature representation of `F_Λ`.
    Rule(Rule),
}

impl MixtureSpec {
    /// Moments `E[Λ^k] = ∏_{r<k} (α + r)/(α + β + r)` for `k = 0..=d`.
    pub fn beta_moments(alpha: f64, beta: f64, d: usize) -> Result<Self> {
        check_beta(alpha, beta)?;
        let mut m = Vec::with_capacity(d + 1);
        let mut acc = 1.0;
        for r in 0..=d {
            m.push(acc);
            acc *= (alpha + r as f64) / (alpha + beta + r as f64);
        }
        Ok(MixtureSpec::Moments(m))
    }

    /// Gauss rule for `Beta(alpha, beta)`.
    pub fn beta_quadrature(alpha: f64, beta: f64, nodes: usize) -> Result<Self> {
        Ok(MixtureSpec::Rule(gauss_beta(alpha, beta, nodes)?))
    }

    /// `Λ ≡ lambda`.
    pub fn degenerate(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidArgument(format!(
                "Λ = {lambda} outside [0, 1]"
            )));
        }
        Ok(MixtureSpec::Rule(Rule {
            nodes: vec![lambda],
            weights: vec![1.0],
        }))
    }

    /// `E[Λ^k]`, or `None` if the spec does not carry that moment.
    pub fn moment(&self, k: usize) -> Option<f64> {
        match self {
            MixtureSpec::Moments(m) => m.get(k).copied(),
            MixtureSpec::Rule(rule) => Some(rule.integrate(|x| x.powi(k as i32))),
        }
    }

    fn validate(&self, d: usize) -> Result<f64> {
        match self {
            MixtureSpec::Moments(m) => {
                if m.len() < d + 1 {
                    return Err(Error::TooSmall {
                        what: "mixture moments",
                        got: m.len(),
                        min: d + 1,
                    });
                }
                if (m[0] - 1.0).abs() > PROB_TOL {
                    return Err(Error::InvalidMomentSequence {
                        at: "E[Λ^0]".into(),
                        value: m[0],
                    });
                }
            }
            MixtureSpec::Rule(rule) => {
                if rule.is_empty() || rule.nodes.len() != rule.weights.len() {
                    return Err(Error::InvalidArgument(
                        "empty or ragged mixture rule".into(),
                    ));
                }
                if rule.nodes.iter().any(|x| !(0.0..=1.0).contains(x))
                    || rule.weights.iter().any(|&w| w < 0.0)
                {
                    return Err(Error::InvalidArgument(
                        "mixture rule needs nodes in [0, 1] and nonnegative weights".into(),
                    ));
                }
                let total: f64 = rule.weights.iter().sum();
                if (total - 1.0).abs() > NORM_TOL {
                    return Err(Error::Normalization { sum: total });
                }
            }
        }
        let p = self.moment(1).unwrap_or(f64::NAN);
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::DegenerateMargin { index: 0, value: p });
        }
        Ok(p)
    }
}

fn check_beta(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "beta parameters must be positive, got ({alpha}, {beta})"
        )));
    }
    Ok(())
}

/// `q_k = binom(d, k) ∫ λ^k (1-λ)^{d-k} dF_Λ(λ)`.
///
/// From moments the integral is expanded binomially; negative results
/// beyond `-1e-12` mean the moments are not a Hausdorff sequence.
pub fn mixture_count_pmf(spec: &MixtureSpec, d: usize) -> Result<ExchangeableCountPmf> {
    if d < 2 {
        return Err(Error::Dimension {
            d,
            expected: "d >= 2",
        });
    }
    spec.validate(d)?;
    let mut q = vec![0.0; d + 1];
    for (k, qk) in q.iter_mut().enumerate() {
        let integral = match spec {
            MixtureSpec::Moments(m) => kahan_sum((0..=d - k).map(|r| {
                let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
                sign * binomial(d - k, r) * m[k + r]
            })),
            MixtureSpec::Rule(rule) => {
                rule.integrate(|x| x.powi(k as i32) * (1.0 - x).powi((d - k) as i32))
            }
        };
        *qk = binomial(d, k) * integral;
        if *qk < -PROB_TOL {
            return Err(Error::InvalidMomentSequence {
                at: format!("Pr(N = {k})"),
                value: *qk,
            });
        }
    }
    ExchangeableCountPmf::new(q)
}

/// Copula of the mixture construction, `E[∏_m (u_m^{1/(1-p)} - (Λ/p)(u_m^{1/(1-p)} - u_m))]`.
///
/// The product is a polynomial in `Λ`; its coefficients are accumulated one
/// coordinate at a time and paired with `E[Λ^k]`.
pub fn mixture_copula_cdf(spec: &MixtureSpec, d: usize, u: &[f64]) -> Result<f64> {
    if d < 2 {
        return Err(Error::Dimension {
            d,
            expected: "d >= 2",
        });
    }
    let p = spec.validate(d)?;
    check_point(u, d)?;
    let mut poly = vec![0.0; d + 1];
    poly[0] = 1.0;
    for (m, &x) in u.iter().enumerate() {
        let lifted = pow_unit(x, 1.0 / (1.0 - p));
        let slope = (x - lifted) / p;
        for k in (0..=m + 1).rev() {
            let carried = if k > 0 { poly[k - 1] * slope } else { 0.0 };
            poly[k] = poly[k] * lifted + carried;
        }
    }
    let moments: Vec<f64> = (0..=d).map(|k| spec.moment(k).unwrap_or(0.0)).collect();
    Ok(kahan_sum(poly.iter().zip(&moments).map(|(c, m)| c * m)))
}

/// Exchangeable copula induced by `Λ ~ Beta(alpha, beta)` (`d <= 20`).
pub fn beta_mixture_copula(alpha: f64, beta: f64, d: usize) -> Result<GfgmCopula> {
    let spec = MixtureSpec::beta_moments(alpha, beta, d)?;
    mixture_count_pmf(&spec, d)?.to_copula()
}
