//! Grids of extremal association values over `p × d`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::association::{max_measures_epd, min_measures_end};
use crate::error::{Error, Result};

pub const MAX_TABLE_DIMS: [usize; 9] = [2, 3, 5, 8, 10, 15, 20, 50, 100];
pub const MIN_TABLE_DIMS: [usize; 7] = [2, 3, 4, 5, 8, 10, 15];
pub const TABLE_PS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
pub const DISPLAY_DECIMALS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    RhoLMax,
    RhoUMax,
    RhoCMax,
    TauMax,
    RhoLMin,
    RhoUMin,
}

impl TableKind {
    pub const ALL: [TableKind; 6] = [
        TableKind::RhoLMax,
        TableKind::RhoUMax,
        TableKind::RhoCMax,
        TableKind::TauMax,
        TableKind::RhoLMin,
        TableKind::RhoUMin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::RhoLMax => "rhoL-max",
            TableKind::RhoUMax => "rhoU-max",
            TableKind::RhoCMax => "rhoC-max",
            TableKind::TauMax => "tau-max",
            TableKind::RhoLMin => "rhoL-min",
            TableKind::RhoUMin => "rhoU-min",
        }
    }

    pub fn dims(self) -> &'static [usize] {
        match self {
            TableKind::RhoLMin | TableKind::RhoUMin => &MIN_TABLE_DIMS,
            _ => &MAX_TABLE_DIMS,
        }
    }

    pub fn value(self, p: f64, d: usize) -> Result<f64> {
        Ok(match self {
            TableKind::RhoLMax => max_measures_epd(p, d)?.rho_cl,
            TableKind::RhoUMax => max_measures_epd(p, d)?.rho_cu,
            TableKind::RhoCMax => max_measures_epd(p, d)?.rho_c,
            TableKind::TauMax => max_measures_epd(p, d)?.tau,
            TableKind::RhoLMin => min_measures_end(p, d)?.rho_cl,
            TableKind::RhoUMin => min_measures_end(p, d)?.rho_cu,
        })
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown table `{s}`")))
    }
}

impl std::fmt::Display for TableKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub kind: TableKind,
    pub ps: Vec<f64>,
    pub dims: Vec<usize>,
    /// `values[i][j]` at `ps[i]`, `dims[j]`.
    pub values: Vec<Vec<f64>>,
}

impl Table {
    pub fn get(&self, p: f64, d: usize) -> Option<f64> {
        let i = self.ps.iter().position(|&x| (x - p).abs() < 1e-12)?;
        let j = self.dims.iter().position(|&x| x == d)?;
        Some(self.values[i][j])
    }

    /// CSV with rows `p` and one column per `d`. `None` uses the 4-decimal
    /// display rounding, `Some(k)` prints `k` decimals unrounded otherwise.
    pub fn to_csv(&self, precision: Option<usize>) -> String {
        let mut out = format!("# table={}\n", self.kind);
        let header: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "p,{}", header.join(","));
        for (p, row) in self.ps.iter().zip(&self.values) {
            let cells: Vec<String> = row
                .iter()
                .map(|&v| match precision {
                    None => format_half_even(v, DISPLAY_DECIMALS),
                    Some(k) => format!("{v:.k$}"),
                })
                .collect();
            let _ = writeln!(out, "{p:.1},{}", cells.join(","));
        }
        out
    }
}

pub fn table(kind: TableKind) -> Result<Table> {
    let dims = kind.dims().to_vec();
    let values = TABLE_PS
        .iter()
        .map(|&p| {
            dims.iter()
                .map(|&d| kind.value(p, d))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        kind,
        ps: TABLE_PS.to_vec(),
        dims,
        values,
    })
}

/// Round half to even at `decimals`; values within floating noise of a tie
/// count as ties.
pub fn round_half_even(x: f64, decimals: usize) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    let s = x * scale;
    let floor = s.floor();
    let frac = s - floor;
    let tie_tol = 1e-9 * s.abs().max(1.0);
    let rounded = if (frac - 0.5).abs() <= tie_tol {
        if floor.rem_euclid(2.0) == 0.0 {
            floor
        } else {
            floor + 1.0
        }
    } else {
        s.round()
    };
    let r = rounded / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn format_half_even(x: f64, decimals: usize) -> String {
    format!("{:.*}", decimals, round_half_even(x, decimals))
}
