//! Coordinate chart models.
//!
//! Every value in the library is attached to a [`ChartSpec`]: either the
//! polynomial algebra on `R^m` or the Fourier polynomial algebra on the
//! torus `T^m`. Operations on values from different charts are rejected.

use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the chart dimension.
pub const MAX_DIM: usize = 8;

/// The two supported coefficient algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChartKind {
    /// Polynomials with rational coefficients on `R^m`.
    Poly,
    /// Fourier polynomials `sum c_n exp(i<n,x>)` with Gaussian-rational
    /// coefficients on `T^m`.
    Fourier,
}

/// A chart: coefficient-algebra kind plus dimension `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChartSpec {
    kind: ChartKind,
    dim: usize,
}

impl ChartSpec {
    /// Create a chart with the default dimension cap.
    pub fn new(kind: ChartKind, dim: usize) -> Result<Self> {
        Self::with_limit(kind, dim, MAX_DIM)
    }

    /// Create a chart with an explicit dimension cap.
    pub fn with_limit(kind: ChartKind, dim: usize, limit: usize) -> Result<Self> {
        if dim == 0 || dim > limit {
            return Err(Error::InvalidChart(format!(
                "dimension must be in 1..={limit}, got {dim}"
            )));
        }
        Ok(ChartSpec { kind, dim })
    }

    pub fn poly(dim: usize) -> Result<Self> {
        Self::new(ChartKind::Poly, dim)
    }

    pub fn fourier(dim: usize) -> Result<Self> {
        Self::new(ChartKind::Fourier, dim)
    }

    /// Parse the CLI chart syntax `poly:<m>` or `fourier:<m>`.
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, dim) = text
            .split_once(':')
            .ok_or_else(|| Error::InvalidChart(format!("expected kind:dim, got '{text}'")))?;
        let dim: usize = dim
            .parse()
            .map_err(|_| Error::InvalidChart(format!("bad dimension '{dim}'")))?;
        match kind {
            "poly" => Self::poly(dim),
            "fourier" => Self::fourier(dim),
            other => Err(Error::InvalidChart(format!("unknown chart kind '{other}'"))),
        }
    }

    pub fn kind(&self) -> ChartKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_poly(&self) -> bool {
        self.kind == ChartKind::Poly
    }

    pub fn is_fourier(&self) -> bool {
        self.kind == ChartKind::Fourier
    }

    /// Reject values from a different chart.
    pub fn ensure_same(&self, other: &ChartSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChartMismatch(format!("{self} vs {other}")))
        }
    }

    /// Check a 1-based axis index.
    pub fn ensure_axis(&self, axis: usize) -> Result<()> {
        if axis >= 1 && axis <= self.dim {
            Ok(())
        } else {
            Err(Error::AxisOutOfRange {
                axis,
                dim: self.dim,
            })
        }
    }
}

impl fmt::Display for ChartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ChartKind::Poly => "poly",
            ChartKind::Fourier => "fourier",
        };
        write!(f, "{}:{}", kind, self.dim)
    }
}
