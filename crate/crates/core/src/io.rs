//! Text formats: Bernoulli pmf files and copula specifications.
//!
//! A pmf file starts with `d=<dim>` followed by `bitstring,probability`
//! lines, component 1 first. A copula spec is a list of `key=value` lines
//! (or `;`-separated pairs inline): `d`, `p`, and one of `pmf_file`,
//! `exchangeable`, `theta` (d = 2) or `structure`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::bernoulli::{format_mask, parse_mask, BernoulliPmf, MarginVector};
use crate::copula::{BivariateGfgm, GfgmCopula};
use crate::error::{Error, Result};
use crate::exchangeable::{
    comonotone_counts, end_counts, mixture_count_pmf, ExchangeableCountPmf, MixtureSpec,
};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_pmf(text: &str) -> Result<BernoulliPmf> {
    let mut lines = meaningful_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty pmf file"))?;
    let d: usize = header
        .strip_prefix("d=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| parse_error(line, format!("expected header `d=<dim>`, found `{header}`")))?;
    let mut atoms = Vec::new();
    for (line, entry) in lines {
        let (bits, prob) = entry
            .split_once(',')
            .ok_or_else(|| parse_error(line, "expected `bitstring,probability`"))?;
        let bits = bits.trim();
        if bits.len() != d {
            return Err(parse_error(
                line,
                format!("bitstring `{bits}` does not have length {d}"),
            ));
        }
        let mask = parse_mask(bits)
            .ok_or_else(|| parse_error(line, format!("invalid bitstring `{bits}`")))?;
        let prob: f64 = prob
            .trim()
            .parse()
            .map_err(|_| parse_error(line, format!("invalid probability `{}`", prob.trim())))?;
        atoms.push((mask, prob));
    }
    BernoulliPmf::new(d, atoms)
}

pub fn format_pmf(pmf: &BernoulliPmf) -> String {
    let d = pmf.dim();
    let mut out = format!("d={d}\n");
    for &(mask, v) in pmf.atoms() {
        let _ = writeln!(out, "{},{v}", format_mask(mask, d));
    }
    out
}

pub fn read_pmf_file(path: &Path) -> Result<BernoulliPmf> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_pmf(&text)
}

/// Exchangeable construction strings: `counts:q0,…,qd`, `end:p`,
/// `comonotone:p`, `beta:alpha,beta`.
#[derive(Debug, Clone, PartialEq)]
pub enum ExchangeableSpec {
    Counts(Vec<f64>),
    End(f64),
    Comonotone(f64),
    Beta(f64, f64),
}

impl ExchangeableSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, args) = s.split_once(':').ok_or_else(|| {
            Error::InvalidArgument(format!("exchangeable spec `{s}` lacks `kind:`"))
        })?;
        let values = parse_reals(args)?;
        let arity = |n: usize| {
            if values.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "exchangeable `{kind}` takes {n} value(s), got {}",
                    values.len()
                )))
            }
        };
        match kind.trim() {
            "counts" => Ok(Self::Counts(values)),
            "end" => arity(1).map(|_| Self::End(values[0])),
            "comonotone" => arity(1).map(|_| Self::Comonotone(values[0])),
            "beta" => arity(2).map(|_| Self::Beta(values[0], values[1])),
            other => Err(Error::InvalidArgument(format!(
                "unknown exchangeable kind `{other}` (counts, end, comonotone, beta)"
            ))),
        }
    }

    pub fn counts(&self, d: Option<usize>) -> Result<ExchangeableCountPmf> {
        let need_d =
            || d.ok_or_else(|| Error::InvalidArgument("exchangeable spec needs `d`".into()));
        let q = match self {
            Self::Counts(q) => ExchangeableCountPmf::new(q.clone())?,
            Self::End(p) => end_counts(*p, need_d()?)?,
            Self::Comonotone(p) => comonotone_counts(*p, need_d()?)?,
            Self::Beta(a, b) => {
                let d = need_d()?;
                mixture_count_pmf(&MixtureSpec::beta_moments(*a, *b, d)?, d)?
            }
        };
        if let Some(d) = d {
            if q.dim() != d {
                return Err(Error::InvalidArgument(format!(
                    "counts describe d = {}, spec says d = {d}",
                    q.dim()
                )));
            }
        }
        Ok(q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Independence,
    Comonotone,
    Countermonotone,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Construction {
    PmfFile(PathBuf),
    Exchangeable(ExchangeableSpec),
    Theta(f64),
    Structure(Structure),
}

/// Parsed copula specification.
#[derive(Debug, Clone, PartialEq)]
pub struct CopulaSpec {
    pub d: Option<usize>,
    pub p: Option<Vec<f64>>,
    pub construction: Construction,
}

fn parse_reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("invalid number `{}`", v.trim())))
        })
        .collect()
}

impl CopulaSpec {
    /// Spec file contents; relative `pmf_file` paths resolve against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut d = None;
        let mut p = None;
        let mut constructions = Vec::new();
        for (line, entry) in meaningful_lines(text) {
            for pair in entry.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let (key, value) = pair.split_once('=').ok_or_else(|| {
                    parse_error(line, format!("expected `key=value`, found `{pair}`"))
                })?;
                let value = value.trim();
                let wrap = |e: Error| parse_error(line, e.to_string());
                match key.trim() {
                    "d" => {
                        d = Some(
                            value
                                .parse()
                                .map_err(|_| parse_error(line, format!("invalid d `{value}`")))?,
                        )
                    }
                    "p" => p = Some(parse_reals(value).map_err(wrap)?),
                    "pmf_file" => {
                        let path = PathBuf::from(value);
                        let path = match base {
                            Some(dir) if path.is_relative() => dir.join(path),
                            _ => path,
                        };
                        constructions.push(Construction::PmfFile(path));
                    }
                    "exchangeable" => constructions.push(Construction::Exchangeable(
                        ExchangeableSpec::parse(value).map_err(wrap)?,
                    )),
                    "theta" => constructions.push(Construction::Theta(
                        value
                            .parse()
                            .map_err(|_| parse_error(line, format!("invalid theta `{value}`")))?,
                    )),
                    "structure" => constructions.push(Construction::Structure(match value {
                        "independence" => Structure::Independence,
                        "comonotone" => Structure::Comonotone,
                        "countermonotone" => Structure::Countermonotone,
                        other => {
                            return Err(parse_error(line, format!("unknown structure `{other}`")))
                        }
                    })),
                    other => return Err(parse_error(line, format!("unknown key `{other}`"))),
                }
            }
        }
        if constructions.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "exactly one of pmf_file, exchangeable, theta, structure is required, found {}",
                constructions.len()
            )));
        }
        Ok(Self {
            d,
            p,
            construction: constructions.pop().unwrap(),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.parent())
    }

    /// Shape vector: `p` may be a single value broadcast to `d`.
    fn shape(&self, d: usize) -> Result<Option<MarginVector>> {
        match &self.p {
            None => Ok(None),
            Some(v) if v.len() == 1 => MarginVector::constant(v[0], d).map(Some),
            Some(v) if v.len() == d => MarginVector::new(v.clone()).map(Some),
            Some(v) => Err(Error::InvalidArgument(format!(
                "p has {} entries but d = {d}",
                v.len()
            ))),
        }
    }

    fn require_shape(&self, d: usize) -> Result<MarginVector> {
        self.shape(d)?
            .ok_or_else(|| Error::InvalidArgument("this construction needs `p`".into()))
    }

    fn require_d(&self) -> Result<usize> {
        match (self.d, &self.p) {
            (Some(d), _) => Ok(d),
            (None, Some(p)) if p.len() >= 2 => Ok(p.len()),
            _ => Err(Error::InvalidArgument("spec needs `d`".into())),
        }
    }

    fn check_d(&self, d: usize) -> Result<()> {
        match self.d {
            Some(given) if given != d => Err(Error::InvalidArgument(format!(
                "spec says d = {given}, construction has d = {d}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<GfgmCopula> {
        match &self.construction {
            Construction::PmfFile(path) => {
                let pmf = read_pmf_file(path)?;
                self.check_d(pmf.dim())?;
                match self.shape(pmf.dim())? {
                    Some(p) => GfgmCopula::new(p, pmf),
                    None => Ok(GfgmCopula::from_pmf(pmf)),
                }
            }
            Construction::Exchangeable(spec) => {
                let q = spec.counts(self.d)?;
                let c = q.to_copula()?;
                if let Some(p) = self.shape(q.dim())? {
                    return GfgmCopula::new(p, c.pmf().clone());
                }
                Ok(c)
            }
            Construction::Theta(theta) => {
                let d = self.require_d()?;
                if d != 2 {
                    return Err(Error::Dimension {
                        d,
                        expected: "d = 2 for theta",
                    });
                }
                let p = self.require_shape(2)?;
                BivariateGfgm::new(p[0], p[1], *theta)?.to_copula()
            }
            Construction::Structure(s) => {
                let d = self.require_d()?;
                let p = self.require_shape(d)?;
                match s {
                    Structure::Independence => GfgmCopula::independence(p),
                    Structure::Comonotone => GfgmCopula::comonotonic(p),
                    Structure::Countermonotone => {
                        if d != 2 {
                            return Err(Error::Dimension {
                                d,
                                expected: "d = 2 for countermonotone",
                            });
                        }
                        BivariateGfgm::countermonotonic(p[0], p[1])?.to_copula()
                    }
                }
            }
        }
    }
}
