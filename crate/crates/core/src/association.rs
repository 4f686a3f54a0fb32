//! Multivariate association measures.
//!
//! The measures are the orthant-dependence versions of Spearman's rho
//! (`ρ^cL`, `ρ^cU`, their average `ρ^c`) and the multivariate Kendall's tau.
//! For a GFGM copula every defining integral factorizes per coordinate once
//! the copula is conditioned on the Bernoulli outcome, so all four reduce to
//! sums over the support of the pmf.

use std::fmt;

use rayon::prelude::*;

use crate::bernoulli::{kahan_sum, BernoulliPmf};
use crate::copula::{GfgmCopula, MARGIN_TOL};
use crate::error::{Error, Result};
use crate::exchangeable::{mean_split, MeanSplit};
use crate::quadrature::gauss_legendre;

/// How a set of measures was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociationReport {
    pub d: usize,
    pub rho_cl: f64,
    pub rho_cu: f64,
    pub rho_c: f64,
    pub tau: f64,
    pub method: Method,
}

impl AssociationReport {
    pub(crate) fn new(d: usize, rho_cl: f64, rho_cu: f64, tau: f64, method: Method) -> Self {
        Self {
            d,
            rho_cl,
            rho_cu,
            rho_c: 0.5 * (rho_cl + rho_cu),
            tau,
            method,
        }
    }

    /// `(name, value)` pairs in a fixed order.
    pub fn entries(&self) -> [(&'static str, f64); 4] {
        [
            ("rho_cL", self.rho_cl),
            ("rho_cU", self.rho_cu),
            ("rho_c", self.rho_c),
            ("tau", self.tau),
        ]
    }
}

/// `(d + 1) / (2^d - d - 1)`.
pub fn rho_normalizer(d: usize) -> f64 {
    let d = d as f64;
    (d + 1.0) / (2f64.powf(d) - d - 1.0)
}

/// `1 / (2^{d-1} - 1)`.
pub fn tau_normalizer(d: usize) -> f64 {
    1.0 / (2f64.powi(d as i32 - 1) - 1.0)
}

fn check_dim(c: &GfgmCopula) -> Result<usize> {
    let d = c.dim();
    if d < 2 {
        return Err(Error::Dimension {
            d,
            expected: "d >= 2",
        });
    }
    Ok(d)
}

/// Expectation of `∏_m factor_m(I_m)` where `factors[m] = (value at 0, value at 1)`.
fn product_expectation(pmf: &BernoulliPmf, factors: &[(f64, f64)]) -> f64 {
    pmf.expectation(|mask| {
        factors
            .iter()
            .enumerate()
            .map(|(j, &(off, on))| if mask >> j & 1 == 1 { on } else { off })
            .product()
    })
}

/// Spearman's rho from average lower orthant dependence.
pub fn rho_cl(c: &GfgmCopula) -> Result<f64> {
    let d = check_dim(c)?;
    let factors: Vec<(f64, f64)> = c
        .shape()
        .iter()
        .map(|&p| (2.0 * (1.0 - p) / (2.0 - p), (3.0 - 2.0 * p) / (2.0 - p)))
        .collect();
    Ok(rho_normalizer(d) * (product_expectation(c.pmf(), &factors) - 1.0))
}

/// Spearman's rho from average upper orthant dependence.
pub fn rho_cu(c: &GfgmCopula) -> Result<f64> {
    let d = check_dim(c)?;
    let factors: Vec<(f64, f64)> = c
        .shape()
        .iter()
        .map(|&p| (2.0 / (2.0 - p), 1.0 / (2.0 - p)))
        .collect();
    Ok(rho_normalizer(d) * (product_expectation(c.pmf(), &factors) - 1.0))
}

pub fn rho_c(c: &GfgmCopula) -> Result<f64> {
    Ok(0.5 * (rho_cl(c)? + rho_cu(c)?))
}

/// Multivariate Kendall's tau by the double sum over pairs of atoms.
///
/// Per coordinate the pair `(i, j)` contributes
/// `1/2 - (i + j)/(2p) + (j(1-p) + i)/(p(2-p))`, the integral over `[0, 1]`
/// of the conditional cdf given `i` times the conditional density given `j`.
/// Rows are reduced in atom order, so the result does not depend on the
/// thread count.
pub fn tau(c: &GfgmCopula) -> Result<f64> {
    let d = check_dim(c)?;
    // kernel[m][i][j], pre-multiplied by 2 to absorb 2^d
    let kernel: Vec<[[f64; 2]; 2]> = c
        .shape()
        .iter()
        .map(|&p| {
            let mut k = [[0.0; 2]; 2];
            for (i, row) in k.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    let (i, j) = (i as f64, j as f64);
                    *cell =
                        2.0 * (0.5 - (i + j) / (2.0 * p) + (j * (1.0 - p) + i) / (p * (2.0 - p)));
                }
            }
            k
        })
        .collect();
    let atoms = c.pmf().atoms();
    let rows: Vec<f64> = atoms
        .par_iter()
        .map(|&(a, fa)| {
            fa * kahan_sum(atoms.iter().map(|&(b, fb)| {
                let prod: f64 = kernel
                    .iter()
                    .enumerate()
                    .map(|(m, k)| k[(a >> m & 1) as usize][(b >> m & 1) as usize])
                    .product();
                fb * prod
            }))
        })
        .collect();
    Ok(tau_normalizer(d) * (kahan_sum(rows) - 1.0))
}

/// All four measures in closed form.
pub fn measures(c: &GfgmCopula) -> Result<AssociationReport> {
    Ok(AssociationReport::new(
        c.dim(),
        rho_cl(c)?,
        rho_cu(c)?,
        tau(c)?,
        Method::ClosedForm,
    ))
}

fn check_shape(p: f64, d: usize) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::DegenerateMargin { index: 0, value: p });
    }
    if d < 2 {
        return Err(Error::Dimension {
            d,
            expected: "d >= 2",
        });
    }
    Ok(())
}

/// `x^d` through logarithms so that large `d` neither overflows nor loses
/// the sign convention for `x > 0`.
fn powd(x: f64, d: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        (d * x.ln()).exp()
    }
}

/// Maximal measures over copulas with every shape equal to `p`, attained by
/// the comonotonic Bernoulli vector.
pub fn max_measures_epd(p: f64, d: usize) -> Result<AssociationReport> {
    check_shape(p, d)?;
    let h = rho_normalizer(d);
    let df = d as f64;
    // (2/(2-p))^d [(1-p)^{d+1} + p ((3-2p)/2)^d]
    let lower = kahan_sum([
        (1.0 - p) * powd(2.0 * (1.0 - p) / (2.0 - p), df),
        p * powd((3.0 - 2.0 * p) / (2.0 - p), df),
        -1.0,
    ]);
    // (2/(2-p))^d (1 - p + p/2^d)
    let upper = kahan_sum([
        (1.0 - p) * powd(2.0 / (2.0 - p), df),
        p * powd(1.0 / (2.0 - p), df),
        -1.0,
    ]);
    let tau = p
        * (1.0 - p)
        * tau_normalizer(d)
        * kahan_sum([
            powd((3.0 - p) / (2.0 - p), df),
            -2.0,
            powd((1.0 - p) / (2.0 - p), df),
        ]);
    Ok(AssociationReport::new(
        d,
        h * lower,
        h * upper,
        tau,
        Method::ClosedForm,
    ))
}

/// Minimal `ρ^cL` and `ρ^cU` over exchangeable copulas with shape `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinMeasures {
    pub rho_cl: f64,
    pub rho_cu: f64,
}

/// Closed forms for the extreme negative dependence (END) vector.
///
/// The normalizing constant is `(d + 1)/(2^d - d - 1)`, the same one used by
/// [`rho_cl`] and [`rho_cu`].
pub fn min_measures_end(p: f64, d: usize) -> Result<MinMeasures> {
    check_shape(p, d)?;
    let h = rho_normalizer(d);
    let df = d as f64;
    let pd = p * df;
    let (lower, upper) = match mean_split(p, d) {
        MeanSplit::Integer(_) => (
            powd(
                ((3.0 - 2.0 * p).ln() * p + (2.0 - 2.0 * p).ln() * (1.0 - p)).exp() / (2.0 - p),
                df,
            ) - 1.0,
            powd(2f64.powf(1.0 - p) / (2.0 - p), df) - 1.0,
        ),
        MeanSplit::Between(j) => {
            let jf = j as f64;
            let r = (3.0 - 2.0 * p) / (2.0 - 2.0 * p);
            let lower = powd(2.0 * (1.0 - p) / (2.0 - p), df)
                * powd(r, jf)
                * (jf + 1.0 - pd + r * (pd - jf))
                - 1.0;
            let upper = 2f64.powf(df - jf) / powd(2.0 - p, df) * ((jf - pd) / 2.0 + 1.0) - 1.0;
            (lower, upper)
        }
    };
    Ok(MinMeasures {
        rho_cl: h * lower,
        rho_cu: h * upper,
    })
}

/// Default number of quadrature nodes per axis.
pub const QUADRATURE_NODES: usize = 64;

/// Bivariate measures by tensor Gauss–Legendre evaluation of the defining
/// integrals `∫C dC^⊥`, `∫C^⊥ dC` and `∫C dC`.
pub fn measures_by_quadrature(c: &GfgmCopula) -> Result<AssociationReport> {
    measures_by_quadrature_with(c, QUADRATURE_NODES)
}

pub fn measures_by_quadrature_with(c: &GfgmCopula, nodes: usize) -> Result<AssociationReport> {
    if c.dim() != 2 {
        return Err(Error::Dimension {
            d: c.dim(),
            expected: "d = 2 for the quadrature oracle",
        });
    }
    if nodes < QUADRATURE_NODES {
        return Err(Error::TooSmall {
            what: "quadrature nodes per axis",
            got: nodes,
            min: QUADRATURE_NODES,
        });
    }
    let rule = gauss_legendre(nodes)?;
    let (mut lower, mut upper, mut kendall) = (0.0, 0.0, 0.0);
    for (&u, &wu) in rule.nodes.iter().zip(&rule.weights) {
        for (&v, &wv) in rule.nodes.iter().zip(&rule.weights) {
            let w = wu * wv;
            let cdf = c.cdf(&[u, v])?;
            let pdf = c.pdf(&[u, v])?;
            lower += w * cdf;
            upper += w * u * v * pdf;
            kendall += w * cdf * pdf;
        }
    }
    let h = rho_normalizer(2);
    Ok(AssociationReport::new(
        2,
        h * (4.0 * lower - 1.0),
        h * (4.0 * upper - 1.0),
        tau_normalizer(2) * (4.0 * kendall - 1.0),
        Method::Quadrature,
    ))
}

/// Which of two copulas lies below the other on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// First argument is smaller.
    FirstBelow,
    /// Second argument is smaller.
    SecondBelow,
    /// Both dominances hold.
    Equal,
}

impl Direction {
    fn from_bounds(min_diff: f64, max_diff: f64, slack: f64) -> Option<Self> {
        match (min_diff >= -slack, max_diff <= slack) {
            (true, true) => Some(Direction::Equal),
            (true, false) => Some(Direction::FirstBelow),
            (false, true) => Some(Direction::SecondBelow),
            (false, false) => None,
        }
    }

    fn compatible(self, other: Self) -> Option<Self> {
        match (self, other) {
            (a, b) if a == b => Some(a),
            (Direction::Equal, b) => Some(b),
            (a, Direction::Equal) => Some(a),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderVerdict {
    /// Lower and upper orthant dominance in the same direction.
    Concordance(Direction),
    /// Only the joint cdfs are ordered.
    LowerOnly(Direction),
    /// Only the survival functions are ordered.
    UpperOnly(Direction),
    Incomparable,
}

/// Outcome of a grid comparison between two copulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcordanceCheck {
    /// Ordering of the joint cdfs, if any.
    pub lower: Option<Direction>,
    /// Ordering of the survival functions, if any.
    pub upper: Option<Direction>,
    pub grid_points_per_axis: usize,
}

impl ConcordanceCheck {
    pub fn verdict(&self) -> OrderVerdict {
        match (self.lower, self.upper) {
            (Some(l), Some(u)) => match l.compatible(u) {
                Some(dir) => OrderVerdict::Concordance(dir),
                None => OrderVerdict::LowerOnly(l),
            },
            (Some(l), None) => OrderVerdict::LowerOnly(l),
            (None, Some(u)) => OrderVerdict::UpperOnly(u),
            (None, None) => OrderVerdict::Incomparable,
        }
    }
}

/// Slack allowed on pointwise dominance.
pub const ORDER_SLACK: f64 = 1e-10;

/// Grid size used when none is requested: 21 points per axis up to `d = 4`,
/// 9 for `d ∈ {5, 6}`, unsupported beyond.
pub fn default_grid(d: usize) -> Option<usize> {
    match d {
        0..=4 => Some(21),
        5 | 6 => Some(9),
        _ => None,
    }
}

/// Compares joint cdfs and survival functions of two copulas with the same
/// shape vector on the interior lattice `{k/(g+1)}^d`, `k = 1..g`.
pub fn check_concordance(
    c1: &GfgmCopula,
    c2: &GfgmCopula,
    grid_points_per_axis: usize,
) -> Result<ConcordanceCheck> {
    let d = c1.dim();
    if c2.dim() != d {
        return Err(Error::ShapeMismatch);
    }
    if c1
        .shape()
        .iter()
        .zip(c2.shape().iter())
        .any(|(a, b)| (a - b).abs() > MARGIN_TOL)
    {
        return Err(Error::ShapeMismatch);
    }
    if default_grid(d).is_none() {
        return Err(Error::Dimension {
            d,
            expected: "d <= 6 for grid order checks",
        });
    }
    if grid_points_per_axis == 0 {
        return Err(Error::TooSmall {
            what: "grid points per axis",
            got: 0,
            min: 1,
        });
    }
    let g = grid_points_per_axis;
    let axis: Vec<f64> = (1..=g).map(|k| k as f64 / (g + 1) as f64).collect();
    let total = g.pow(d as u32);
    let diffs: Vec<(f64, f64)> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut rest = flat;
            let point: Vec<f64> = (0..d)
                .map(|_| {
                    let x = axis[rest % g];
                    rest /= g;
                    x
                })
                .collect();
            let lower = c2.cdf(&point)? - c1.cdf(&point)?;
            let upper = c2.survival(&point)? - c1.survival(&point)?;
            Ok((lower, upper))
        })
        .collect::<Result<_>>()?;
    let fold = |pick: fn(&(f64, f64)) -> f64| {
        diffs
            .iter()
            .map(pick)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                (lo.min(x), hi.max(x))
            })
    };
    let (l_min, l_max) = fold(|x| x.0);
    let (u_min, u_max) = fold(|x| x.1);
    Ok(ConcordanceCheck {
        lower: Direction::from_bounds(l_min, l_max, ORDER_SLACK),
        upper: Direction::from_bounds(u_min, u_max, ORDER_SLACK),
        grid_points_per_axis: g,
    })
}
