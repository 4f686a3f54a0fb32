//! Stochastic representation sampler and Monte Carlo estimators.
//!
//! Replicate `l` draws `I ~ f_I`, `U_0, U_1` iid uniform vectors and returns
//! `U_m = U_{0,m}^{1-p_m} U_{1,m}^{I_m}`. The three draws come from disjoint
//! ChaCha20 streams of one seed, positioned by replicate index, so any
//! partition of the replicates reproduces the sequential batch exactly.

use std::io::Write;
use std::ops::Range;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::association::{rho_normalizer, tau_normalizer, AssociationReport, Method};
use crate::bernoulli::BernoulliPmf;
use crate::copula::GfgmCopula;
use crate::error::{Error, Result};

pub const GENERATOR_ID: &str = "chacha20-stream-v1";

const STREAM_ATOM: u64 = 0;
const STREAM_U0: u64 = 1;
const STREAM_U1: u64 = 2;
const CHUNK: usize = 4096;
/// Largest double below one.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// `n × d` row-major sample with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub n: usize,
    pub d: usize,
    pub values: Vec<f64>,
    pub seed: u64,
    pub generator_id: String,
}

impl SampleBatch {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, f64> {
        self.values.chunks_exact(self.d)
    }

    pub fn column(&self, m: usize) -> Vec<f64> {
        self.rows().map(|r| r[m]).collect()
    }

    /// CSV with a `# seed=… generator=…` line and a `u1,…,ud` header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        write_csv_header(&mut out, self.seed, &self.generator_id, self.d)?;
        write_csv_rows(&mut out, &self.values, self.d)
    }
}

pub fn write_csv_header<W: Write>(
    out: &mut W,
    seed: u64,
    generator: &str,
    d: usize,
) -> std::io::Result<()> {
    writeln!(out, "# seed={seed} generator={generator}")?;
    let header: Vec<String> = (1..=d).map(|m| format!("u{m}")).collect();
    writeln!(out, "{}", header.join(","))
}

pub fn write_csv_rows<W: Write>(out: &mut W, values: &[f64], d: usize) -> std::io::Result<()> {
    for row in values.chunks_exact(d) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

fn stream(seed: u64, id: u64, word_pos: u128) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng.set_word_pos(word_pos);
    rng
}

/// Uniform on the open interval: midpoints of a 2^-52 grid.
fn open_uniform(rng: &mut ChaCha20Rng) -> f64 {
    ((rng.next_u64() >> 12) as f64 + 0.5) * f64::EPSILON
}

struct AtomTable {
    masks: Vec<u64>,
    cumulative: Vec<f64>,
}

impl AtomTable {
    fn new(pmf: &BernoulliPmf) -> Self {
        let mut acc = 0.0;
        let mut masks = Vec::with_capacity(pmf.support_size());
        let mut cumulative = Vec::with_capacity(pmf.support_size());
        for &(m, v) in pmf.atoms() {
            acc += v;
            masks.push(m);
            cumulative.push(acc);
        }
        if let Some(last) = cumulative.last_mut() {
            *last = f64::INFINITY;
        }
        Self { masks, cumulative }
    }

    fn draw(&self, r: f64) -> u64 {
        let total = self.cumulative.len();
        let idx = self.cumulative.partition_point(|&c| c <= r);
        self.masks[idx.min(total - 1)]
    }
}

fn atoms_range(table: &AtomTable, seed: u64, range: Range<usize>) -> Vec<u64> {
    // one 64-bit word pair per replicate
    let mut rng = stream(seed, STREAM_ATOM, 2 * range.start as u128);
    range.map(|_| table.draw(open_uniform(&mut rng))).collect()
}

/// Replicates `range` of the batch that `sample(c, _, seed)` would produce.
pub fn sample_rows(c: &GfgmCopula, seed: u64, range: Range<usize>) -> Vec<f64> {
    let d = c.dim();
    let shape = c.shape();
    let table = AtomTable::new(c.pmf());
    let atoms = atoms_range(&table, seed, range.clone());
    let pos = 2 * (d * range.start) as u128;
    let mut u0 = stream(seed, STREAM_U0, pos);
    let mut u1 = stream(seed, STREAM_U1, pos);
    let mut out = Vec::with_capacity(atoms.len() * d);
    for mask in atoms {
        for (m, &p) in shape.iter().enumerate() {
            let a = open_uniform(&mut u0);
            let b = open_uniform(&mut u1);
            let mut log_u = (1.0 - p) * a.ln();
            if mask >> m & 1 == 1 {
                log_u += b.ln();
            }
            out.push(log_u.exp().clamp(f64::MIN_POSITIVE, BELOW_ONE));
        }
    }
    out
}

/// Same as [`sample_rows`], split into chunks generated in parallel.
pub fn sample_range(c: &GfgmCopula, seed: u64, range: Range<usize>) -> Vec<f64> {
    let (start, end) = (range.start, range.end);
    let chunks: Vec<Vec<f64>> = (0..(end - start).div_ceil(CHUNK))
        .into_par_iter()
        .map(|k| {
            sample_rows(
                c,
                seed,
                start + k * CHUNK..(start + (k + 1) * CHUNK).min(end),
            )
        })
        .collect();
    chunks.concat()
}

/// `n` replicates, generated in parallel chunks.
pub fn sample(c: &GfgmCopula, n: usize, seed: u64) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "sample size",
            got: 0,
            min: 1,
        });
    }
    Ok(SampleBatch {
        n,
        d: c.dim(),
        values: sample_range(c, seed, 0..n),
        seed,
        generator_id: GENERATOR_ID.to_string(),
    })
}

/// `n` draws from the Bernoulli pmf; identical to the `I` draws of [`sample`].
pub fn sample_bernoulli(pmf: &BernoulliPmf, n: usize, seed: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "sample size",
            got: 0,
            min: 1,
        });
    }
    Ok(atoms_range(&AtomTable::new(pmf), seed, 0..n))
}

/// Kolmogorov–Smirnov distance between the empirical cdf and U(0,1).
pub fn ks_uniform_statistic(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).max((i + 1) as f64 / n - x))
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

pub const MIN_EMPIRICAL_N: usize = 1000;
pub const SUB_BATCHES: usize = 10;
/// Rows used by the pairwise concordance count when `d > 2`.
pub const TAU_SUBSAMPLE: usize = 3000;

/// Standard errors matching the fields of [`AssociationReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardErrors {
    pub rho_cl: f64,
    pub rho_cu: f64,
    pub rho_c: f64,
    pub tau: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalReport {
    pub report: AssociationReport,
    pub standard_errors: StandardErrors,
}

/// Rank-based estimates of the association measures.
///
/// `ρ^cL` from the mean of `∏(1 - Û_m)`, `ρ^cU` from the mean of `∏ Û_m`,
/// `τ` from the fraction of componentwise comparable pairs. Standard errors
/// come from the spread of the estimates over 10 sub-batches.
pub fn empirical_measures(batch: &SampleBatch) -> Result<EmpiricalReport> {
    if batch.n < MIN_EMPIRICAL_N {
        return Err(Error::TooSmall {
            what: "sample size for empirical measures",
            got: batch.n,
            min: MIN_EMPIRICAL_N,
        });
    }
    let d = batch.d;
    let full = estimate(&batch.values, d);
    let size = batch.n / SUB_BATCHES;
    let parts: Vec<[f64; 4]> = (0..SUB_BATCHES)
        .into_par_iter()
        .map(|k| estimate(&batch.values[k * size * d..(k + 1) * size * d], d))
        .collect();
    let se = |i: usize| {
        let mean = parts.iter().map(|e| e[i]).sum::<f64>() / SUB_BATCHES as f64;
        let var =
            parts.iter().map(|e| (e[i] - mean).powi(2)).sum::<f64>() / (SUB_BATCHES - 1) as f64;
        (var / SUB_BATCHES as f64).sqrt()
    };
    // the full-batch tau only sees TAU_SUBSAMPLE rows when d > 2; averaging the
    // sub-batches uses more of the sample and matches the reported error
    let tau = if d > 2 && batch.n > TAU_SUBSAMPLE {
        parts.iter().map(|e| e[3]).sum::<f64>() / SUB_BATCHES as f64
    } else {
        full[3]
    };
    Ok(EmpiricalReport {
        report: AssociationReport::new(d, full[0], full[1], tau, Method::MonteCarlo),
        standard_errors: StandardErrors {
            rho_cl: se(0),
            rho_cu: se(1),
            rho_c: se(2),
            tau: se(3),
        },
    })
}

/// `[ρ^cL, ρ^cU, ρ^c, τ]` from a row-major block.
fn estimate(values: &[f64], d: usize) -> [f64; 4] {
    let n = values.len() / d;
    let ranks: Vec<Vec<f64>> = (0..d)
        .map(|m| {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| values[a * d + m].total_cmp(&values[b * d + m]));
            let mut r = vec![0.0; n];
            for (rank, &i) in order.iter().enumerate() {
                r[i] = (rank + 1) as f64 / (n + 1) as f64;
            }
            r
        })
        .collect();
    let mut lower = 0.0;
    let mut upper = 0.0;
    for i in 0..n {
        let (mut a, mut b) = (1.0, 1.0);
        for col in &ranks {
            a *= 1.0 - col[i];
            b *= col[i];
        }
        lower += a;
        upper += b;
    }
    let scale = 2f64.powi(d as i32);
    let h = rho_normalizer(d);
    let rho_cl = h * (scale * lower / n as f64 - 1.0);
    let rho_cu = h * (scale * upper / n as f64 - 1.0);
    let comparable = if d == 2 {
        concordant_pairs_2d(values, n)
    } else {
        let m = n.min(TAU_SUBSAMPLE);
        let frac = comparable_pairs(values, d, m) / (m as f64 * (m - 1) as f64 / 2.0);
        frac * n as f64 * (n - 1) as f64 / 2.0
    };
    let integral = comparable / (n as f64 * (n - 1) as f64);
    let tau = tau_normalizer(d) * (scale * integral - 1.0);
    [rho_cl, rho_cu, 0.5 * (rho_cl + rho_cu), tau]
}

/// Unordered pairs that are componentwise ordered, by brute force.
fn comparable_pairs(values: &[f64], d: usize, m: usize) -> f64 {
    (0..m)
        .into_par_iter()
        .map(|i| {
            let a = &values[i * d..(i + 1) * d];
            let mut count = 0u64;
            for j in i + 1..m {
                let b = &values[j * d..(j + 1) * d];
                let below = a.iter().zip(b).all(|(x, y)| x < y);
                let above = a.iter().zip(b).all(|(x, y)| x > y);
                count += u64::from(below || above);
            }
            count
        })
        .sum::<u64>() as f64
}

/// Concordant pairs in two dimensions via an inversion count.
fn concordant_pairs_2d(values: &[f64], n: usize) -> f64 {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[2 * a].total_cmp(&values[2 * b]));
    let mut ys: Vec<f64> = order.iter().map(|&i| values[2 * i + 1]).collect();
    let mut buf = vec![0.0; n];
    let discordant = count_inversions(&mut ys, &mut buf);
    (n as u64 * (n as u64 - 1) / 2 - discordant) as f64
}

fn count_inversions(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = v.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        count_inversions(left, bl) + count_inversions(right, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[i] <= v[j] {
            buf[k] = v[i];
            i += 1;
        } else {
            buf[k] = v[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::{parse_mask, MarginVector};
    use crate::copula::BivariateGfgm;

    fn fgm_one() -> GfgmCopula {
        BivariateGfgm::new(0.5, 0.5, 1.0)
            .unwrap()
            .to_copula()
            .unwrap()
    }

    #[test]
    fn small_batch_is_in_open_cube() {
        let c = GfgmCopula::comonotonic(MarginVector::new(vec![0.05, 0.5, 0.95]).unwrap()).unwrap();
        let b = sample(&c, 5, 1).unwrap();
        assert_eq!((b.n, b.d, b.values.len()), (5, 3, 15));
        assert!(b.values.iter().all(|&v| v > 0.0 && v < 1.0));
        assert!(sample(&c, 0, 1).is_err());
    }

    #[test]
    fn deterministic_and_partition_invariant() {
        let c = fgm_one();
        let a = sample(&c, 10_000, 42).unwrap();
        assert_eq!(a, sample(&c, 10_000, 42).unwrap());
        assert_ne!(a.values, sample(&c, 10_000, 43).unwrap().values);
        let mut pieces = sample_rows(&c, 42, 0..123);
        pieces.extend(sample_rows(&c, 42, 123..5000));
        pieces.extend(sample_rows(&c, 42, 5000..10_000));
        assert_eq!(pieces, a.values);
    }

    #[test]
    fn bernoulli_draws() {
        let single = BernoulliPmf::new(2, vec![(0b11, 1.0)]);
        // one atom forces margins in {0, 1}
        assert!(single.is_err());
        let f = BernoulliPmf::new(2, vec![(0b00, 0.5), (0b11, 0.5)]).unwrap();
        let draws = sample_bernoulli(&f, 100_000, 9).unwrap();
        assert!(draws.iter().all(|&m| m == 0b00 || m == 0b11));
        let freq = draws
            .iter()
            .filter(|&&m| m == parse_mask("11").unwrap())
            .count() as f64
            / 1e5;
        assert!((freq - 0.5).abs() < 0.006, "{freq}");
        assert_eq!(draws, sample_bernoulli(&f, 100_000, 9).unwrap());
    }

    #[test]
    fn atom_table_inversion() {
        let f =
            BernoulliPmf::new(2, vec![(0b00, 0.2), (0b01, 0.3), (0b10, 0.3), (0b11, 0.2)]).unwrap();
        let t = AtomTable::new(&f);
        assert_eq!(t.draw(0.1), 0b00);
        assert_eq!(t.draw(0.2), 0b01);
        assert_eq!(t.draw(0.79), 0b10);
        assert_eq!(t.draw(0.999999), 0b11);
    }

    #[test]
    fn independence_margins_pass_ks() {
        let c = GfgmCopula::independence(MarginVector::new(vec![0.2, 0.6, 0.9]).unwrap()).unwrap();
        let b = sample(&c, 100_000, 3).unwrap();
        for m in 0..3 {
            assert!(ks_uniform_statistic(&b.column(m)) < ks_critical_1pct(b.n));
        }
    }

    #[test]
    fn ks_statistic_of_grid() {
        let v: Vec<f64> = (0..10).map(|i| (i as f64 + 0.5) / 10.0).collect();
        assert!((ks_uniform_statistic(&v) - 0.05).abs() < 1e-15);
    }

    #[test]
    fn inversion_count() {
        let mut v = vec![3.0, 1.0, 2.0, 5.0, 4.0];
        let mut buf = vec![0.0; 5];
        assert_eq!(count_inversions(&mut v, &mut buf), 3);
        assert_eq!(v, vec![1.0, 2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn pair_counts_agree_in_two_dimensions() {
        let b = sample(&fgm_one(), 1500, 5).unwrap();
        assert_eq!(
            concordant_pairs_2d(&b.values, 1500),
            comparable_pairs(&b.values, 2, 1500)
        );
    }

    #[test]
    fn empirical_requires_enough_rows() {
        let b = sample(&fgm_one(), 999, 1).unwrap();
        assert!(empirical_measures(&b).is_err());
    }

    #[test]
    fn empirical_fgm_matches_table_value() {
        let b = sample(&fgm_one(), 200_000, 2024).unwrap();
        let r = empirical_measures(&b).unwrap();
        assert_eq!(r.report.method, Method::MonteCarlo);
        let se = r.standard_errors;
        assert!((r.report.rho_c - 1.0 / 3.0).abs() < 3.0 * se.rho_c, "{r:?}");
        assert!((r.report.tau - 2.0 / 9.0).abs() < 3.0 * se.tau, "{r:?}");
    }
}
