//! Multivariate Bernoulli distributions over `{0,1}^d`.
//!
//! Outcomes are stored as bit-masks: bit `j` (least significant first) holds
//! component `j + 1`. Only outcomes with positive mass are stored, so the
//! cost of every expectation is proportional to the support size rather than
//! to `2^d`.
//!
//! The textual form of an outcome puts component 1 first, so the mask with
//! only bit 1 set prints as `01` when `d = 2`.

use std::ops::Deref;

use crate::error::{Error, Result};

/// Largest dimension supported by mask arithmetic.
pub const MAX_DIM: usize = 63;

/// Largest dimension for which dense `2^d` tables (moments, ν coefficients,
/// product pmfs) are built.
pub const MAX_DENSE_DIM: usize = 20;

/// Absolute tolerance for individual probabilities.
pub const PROB_TOL: f64 = 1e-12;

/// Largest deviation of the total mass from 1 that construction will
/// renormalize away.
pub const NORM_TOL: f64 = 1e-9;

/// Shape vector `p`, every entry strictly inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginVector(Vec<f64>);

impl MarginVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.len() < 2 || p.len() > MAX_DIM {
            return Err(Error::Dimension {
                d: p.len(),
                expected: "2 <= d <= 63",
            });
        }
        for (index, &value) in p.iter().enumerate() {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::DegenerateMargin { index, value });
            }
        }
        Ok(Self(p))
    }

    /// `d` copies of the same shape parameter.
    pub fn constant(p: f64, d: usize) -> Result<Self> {
        Self::new(vec![p; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for MarginVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Probability mass function of a `d`-variate Bernoulli random vector.
///
/// Immutable once built. Atoms are sorted by mask and all carry positive
/// mass summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliPmf {
    d: usize,
    atoms: Vec<(u64, f64)>,
    margins: Vec<f64>,
}

impl BernoulliPmf {
    /// Builds a pmf from `(mask, probability)` pairs.
    ///
    /// Masses in `[-1e-12, 0]` are dropped; the total is renormalized when
    /// it is within `1e-9` of one and rejected otherwise. Every derived
    /// margin must lie strictly inside `(0, 1)`.
    pub fn new<I>(d: usize, atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, f64)>,
    {
        if !(2..=MAX_DIM).contains(&d) {
            return Err(Error::Dimension {
                d,
                expected: "2 <= d <= 63",
            });
        }
        let full = full_mask(d);
        let mut kept = Vec::new();
        for (mask, prob) in atoms {
            if mask & !full != 0 {
                return Err(Error::MaskOutOfRange { mask, d });
            }
            if !prob.is_finite() || prob < -PROB_TOL {
                return Err(Error::NegativeMass { mask, value: prob });
            }
            kept.push((mask, prob));
        }
        kept.sort_by_key(|&(mask, _)| mask);
        if let Some(w) = kept.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateAtom { mask: w[0].0 });
        }
        kept.retain(|&(_, prob)| prob > 0.0);

        let sum = kahan_sum(kept.iter().map(|&(_, prob)| prob));
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization { sum });
        }
        if sum != 1.0 {
            for atom in &mut kept {
                atom.1 /= sum;
            }
        }

        let mut margins = vec![0.0; d];
        for &(mask, prob) in &kept {
            for (j, m) in margins.iter_mut().enumerate() {
                if mask >> j & 1 == 1 {
                    *m += prob;
                }
            }
        }
        for (index, &value) in margins.iter().enumerate() {
            if value <= PROB_TOL || value >= 1.0 - PROB_TOL {
                return Err(Error::DegenerateMargin { index, value });
            }
        }

        Ok(Self {
            d,
            atoms: kept,
            margins,
        })
    }

    /// Product pmf with the given margins (all `2^d` outcomes).
    pub fn independence(p: &MarginVector) -> Result<Self> {
        let d = p.dim();
        if d > MAX_DENSE_DIM {
            return Err(Error::Dimension {
                d,
                expected: "d <= 20 for dense pmfs",
            });
        }
        let atoms = (0..1u64 << d).map(|mask| {
            let prob = p
                .iter()
                .enumerate()
                .map(|(j, &pj)| if mask >> j & 1 == 1 { pj } else { 1.0 - pj })
                .product::<f64>();
            (mask, prob)
        });
        Self::new(d, atoms)
    }

    /// Comonotonic vector `(F⁻¹_{I_1}(V), …, F⁻¹_{I_d}(V))` with `V` uniform.
    ///
    /// Component `j` is one iff `V > 1 - p_j`. Equal thresholds are merged,
    /// visiting components in index order.
    pub fn comonotonic(p: &MarginVector) -> Result<Self> {
        let d = p.dim();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| (1.0 - p[a]).total_cmp(&(1.0 - p[b])));

        let mut atoms = Vec::with_capacity(d + 1);
        let mut lower = 0.0;
        let mut mask = 0u64;
        for j in order {
            let threshold = 1.0 - p[j];
            if threshold > lower {
                atoms.push((mask, threshold - lower));
                lower = threshold;
            }
            mask |= 1 << j;
        }
        atoms.push((mask, 1.0 - lower));
        Self::new(d, atoms)
    }

    /// Bivariate pmf with dependence parameter `theta`.
    ///
    /// `f00 = (1-p1)(1-p2) + p1 p2 θ`, `f01 = (1-p1) p2 - p1 p2 θ`,
    /// `f10 = p1 (1-p2) - p1 p2 θ`, `f11 = p1 p2 (1 + θ)`.
    pub fn from_theta_bivariate(p1: f64, p2: f64, theta: f64) -> Result<Self> {
        MarginVector::new(vec![p1, p2])?;
        let (lower, upper) = theta_bounds(p1, p2);
        if !theta.is_finite() || theta < lower - PROB_TOL || theta > upper + PROB_TOL {
            return Err(Error::ThetaOutOfRange {
                theta,
                lower,
                upper,
            });
        }
        let theta = theta.clamp(lower, upper);
        let shift = p1 * p2 * theta;
        let atoms = [
            (0b00, (1.0 - p1) * (1.0 - p2) + shift),
            (0b10, (1.0 - p1) * p2 - shift),
            (0b01, p1 * (1.0 - p2) - shift),
            (0b11, p1 * p2 + shift),
        ];
        Self::new(
            2,
            atoms.into_iter().map(|(m, f): (u64, f64)| (m, f.max(0.0))),
        )
    }

    /// Counter-monotonic pair: `from_theta_bivariate` at the lower bound of θ.
    pub fn countermonotonic_bivariate(p1: f64, p2: f64) -> Result<Self> {
        MarginVector::new(vec![p1, p2])?;
        Self::from_theta_bivariate(p1, p2, theta_bounds(p1, p2).0)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Atoms with positive mass, sorted by mask.
    pub fn atoms(&self) -> &[(u64, f64)] {
        &self.atoms
    }

    pub fn support_size(&self) -> usize {
        self.atoms.len()
    }

    /// Mass at `mask` (zero when not in the support).
    pub fn probability(&self, mask: u64) -> f64 {
        self.atoms
            .binary_search_by_key(&mask, |&(m, _)| m)
            .map(|i| self.atoms[i].1)
            .unwrap_or(0.0)
    }

    /// `p_j = Pr(I_j = 1)` for every component.
    pub fn marginals(&self) -> MarginVector {
        MarginVector(self.margins.clone())
    }

    pub fn margin_slice(&self) -> &[f64] {
        &self.margins
    }

    /// `E[g(I)]` summed over the support.
    pub fn expectation<F>(&self, mut g: F) -> f64
    where
        F: FnMut(u64) -> f64,
    {
        kahan_sum(self.atoms.iter().map(|&(mask, prob)| prob * g(mask)))
    }

    /// `θ = E[(I1 - p1)(I2 - p2)] / (p1 p2)` for a bivariate pmf.
    pub fn theta_of(&self) -> Result<f64> {
        if self.d != 2 {
            return Err(Error::Dimension {
                d: self.d,
                expected: "d = 2",
            });
        }
        let (p1, p2) = (self.margins[0], self.margins[1]);
        Ok(self.probability(0b11) / (p1 * p2) - 1.0)
    }

    /// `ν_S = E[∏_{j∈S} (I_j - p_j) / p_j]` for a set of zero-based indices.
    pub fn nu_coefficient(&self, subset: &[usize]) -> Result<f64> {
        if subset.is_empty() {
            return Err(Error::InvalidArgument("subset must be nonempty".into()));
        }
        let mut seen = 0u64;
        for &j in subset {
            if j >= self.d || seen >> j & 1 == 1 {
                return Err(Error::InvalidArgument(format!(
                    "invalid subset index {j} for dimension {}",
                    self.d
                )));
            }
            seen |= 1 << j;
        }
        if subset.len() == 1 {
            return Ok(0.0);
        }
        let p = &self.margins;
        Ok(self.expectation(|mask| {
            subset
                .iter()
                .map(|&j| {
                    let bit = (mask >> j & 1) as f64;
                    (bit - p[j]) / p[j]
                })
                .product()
        }))
    }

    /// Every ν coefficient, indexed by subset mask (`ν_∅ = 1`).
    ///
    /// Obtained from the ordinary moments: scale `μ_T` by `∏_{j∈T} 1/p_j`
    /// and apply the subset Möbius transform.
    pub fn nu_coefficients(&self) -> Result<Vec<f64>> {
        let mut values = self.moments()?.values;
        for (mask, v) in values.iter_mut().enumerate() {
            for (j, &pj) in self.margins.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    *v /= pj;
                }
            }
        }
        subset_mobius(&mut values, self.d);
        for j in 0..self.d {
            values[1 << j] = 0.0;
        }
        Ok(values)
    }

    /// Ordinary moments `μ_S = E[∏_{j∈S} I_j]` for every subset `S`.
    pub fn moments(&self) -> Result<MomentMap> {
        if self.d > MAX_DENSE_DIM {
            return Err(Error::Dimension {
                d: self.d,
                expected: "d <= 20 for moment tables",
            });
        }
        let mut values = vec![0.0; 1 << self.d];
        for &(mask, prob) in &self.atoms {
            values[mask as usize] += prob;
        }
        superset_zeta(&mut values, self.d);
        Ok(MomentMap { d: self.d, values })
    }

    /// Inverse of [`BernoulliPmf::moments`] by inclusion–exclusion.
    pub fn from_moments(moments: &MomentMap) -> Result<Self> {
        let d = moments.d;
        if (moments.values[0] - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidMomentSequence {
                at: "empty set".into(),
                value: moments.values[0],
            });
        }
        let mut values = moments.values.clone();
        superset_mobius(&mut values, d);
        for (mask, &v) in values.iter().enumerate() {
            if v < -PROB_TOL {
                return Err(Error::InvalidMomentSequence {
                    at: format_mask(mask as u64, d),
                    value: v,
                });
            }
        }
        let atoms = values
            .into_iter()
            .enumerate()
            .filter(|&(_, v)| v > PROB_TOL)
            .map(|(mask, v)| (mask as u64, v));
        Self::new(d, atoms)
    }
}

/// Ordinary moments of a Bernoulli vector, indexed by subset mask.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMap {
    d: usize,
    values: Vec<f64>,
}

impl MomentMap {
    /// `values[S]` is `E[∏_{j∈S} I_j]`; the table must have `2^d` entries.
    pub fn new(d: usize, values: Vec<f64>) -> Result<Self> {
        if !(2..=MAX_DENSE_DIM).contains(&d) || values.len() != 1 << d {
            return Err(Error::Dimension {
                d,
                expected: "2 <= d <= 20 with 2^d moments",
            });
        }
        Ok(Self { d, values })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, subset_mask: u64) -> f64 {
        self.values[subset_mask as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Admissible θ interval for bivariate margins `(p1, p2)`.
pub fn theta_bounds(p1: f64, p2: f64) -> (f64, f64) {
    let lower = -(1.0f64).min((1.0 - p1) * (1.0 - p2) / (p1 * p2));
    let upper = ((1.0 - p1) / p1).min((1.0 - p2) / p2);
    (lower, upper)
}

pub fn full_mask(d: usize) -> u64 {
    if d >= 64 {
        u64::MAX
    } else {
        (1u64 << d) - 1
    }
}

/// Renders a mask with component 1 first, e.g. `0b10` as `01` for `d = 2`.
pub fn format_mask(mask: u64, d: usize) -> String {
    (0..d)
        .map(|j| if mask >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`format_mask`].
pub fn parse_mask(bits: &str) -> Option<u64> {
    if bits.is_empty() || bits.len() > MAX_DIM {
        return None;
    }
    bits.chars()
        .enumerate()
        .try_fold(0u64, |acc, (j, c)| match c {
            '0' => Some(acc),
            '1' => Some(acc | 1 << j),
            _ => None,
        })
}

/// `v[S] <- Σ_{T ⊇ S} v[T]`.
pub fn superset_zeta(values: &mut [f64], d: usize) {
    for j in 0..d {
        let bit = 1usize << j;
        for mask in 0..values.len() {
            if mask & bit == 0 {
                values[mask] += values[mask | bit];
            }
        }
    }
}

/// Inverse of [`superset_zeta`].
pub fn superset_mobius(values: &mut [f64], d: usize) {
    for j in 0..d {
        let bit = 1usize << j;
        for mask in 0..values.len() {
            if mask & bit == 0 {
                values[mask] -= values[mask | bit];
            }
        }
    }
}

/// `v[S] <- Σ_{T ⊆ S} (-1)^{|S \ T|} v[T]`.
pub fn subset_mobius(values: &mut [f64], d: usize) {
    for j in 0..d {
        let bit = 1usize << j;
        for mask in 0..values.len() {
            if mask & bit != 0 {
                values[mask] -= values[mask ^ bit];
            }
        }
    }
}

pub(crate) fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}
