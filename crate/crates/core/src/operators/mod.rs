//! Variation and selection operators.
//!
//! Every operator is a pure function: random choices (cut points, masks,
//! per-position draws, the roulette spin) are passed in as arguments. The
//! `apply`/`sample` helpers draw those arguments from a caller-supplied RNG.

mod crossover;
mod mutation;
mod selection;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tour::Tour;

pub use crossover::{
    cx_crossover, nwox_crossover, ox_crossover, pmx_crossover, uniform_crossover, upmx_crossover,
};
pub use mutation::rsm_mutation;
pub use selection::{roulette_select, roulette_weights, SelectionWeights};

/// Swap-decision threshold used by `upmx` when none is given. A position is
/// exchanged when its draw is `>= p`, so this exchanges one position in three.
pub const DEFAULT_UPMX_THRESHOLD: f64 = 2.0 / 3.0;

/// The crossover operators compared on Berlin52, plus uniform crossover.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CrossoverKind {
    Uxo,
    Cx,
    Pmx,
    /// Uniform PMX. `threshold` is compared against a uniform draw per
    /// position; the exchange happens when the draw is `>= threshold`.
    Upmx {
        threshold: f64,
    },
    Nwox,
    Ox,
}

impl CrossoverKind {
    /// The five operators of the Berlin52 comparison, in reporting order.
    pub const COMPARED: [CrossoverKind; 5] = [
        CrossoverKind::Ox,
        CrossoverKind::Nwox,
        CrossoverKind::Pmx,
        CrossoverKind::Upmx {
            threshold: DEFAULT_UPMX_THRESHOLD,
        },
        CrossoverKind::Cx,
    ];

    pub fn upmx(threshold: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::param(
                "upmx",
                format!("swap threshold {threshold} not in [0, 1]"),
            ));
        }
        Ok(CrossoverKind::Upmx { threshold })
    }

    pub fn name(&self) -> &'static str {
        match self {
            CrossoverKind::Uxo => "uxo",
            CrossoverKind::Cx => "cx",
            CrossoverKind::Pmx => "pmx",
            CrossoverKind::Upmx { .. } => "upmx",
            CrossoverKind::Nwox => "nwox",
            CrossoverKind::Ox => "ox",
        }
    }

    /// Draws whatever randomness the operator needs and applies it.
    pub fn apply<R: Rng + ?Sized>(
        &self,
        p1: &Tour,
        p2: &Tour,
        rng: &mut R,
    ) -> Result<(Tour, Tour)> {
        if p1.len() != p2.len() {
            return Err(Error::LengthMismatch(p1.len(), p2.len()));
        }
        let n = p1.len();
        match *self {
            CrossoverKind::Uxo => {
                let mask: Vec<bool> = (0..n).map(|_| rng.random::<bool>()).collect();
                uniform_crossover(p1, p2, &mask)
            }
            CrossoverKind::Cx => cx_crossover(p1, p2),
            CrossoverKind::Pmx => pmx_crossover(p1, p2, CutPoints::sample(n, rng)?),
            CrossoverKind::Upmx { threshold } => {
                let draws: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
                upmx_crossover(p1, p2, threshold, &draws)
            }
            CrossoverKind::Nwox => nwox_crossover(p1, p2, CutPoints::sample(n, rng)?),
            CrossoverKind::Ox => ox_crossover(p1, p2, CutPoints::sample(n, rng)?),
        }
    }
}

impl fmt::Display for CrossoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossoverKind::Upmx { threshold } if *threshold != DEFAULT_UPMX_THRESHOLD => {
                write!(f, "upmx:{threshold}")
            }
            other => f.write_str(other.name()),
        }
    }
}

/// Accepts `uxo`, `cx`, `pmx`, `upmx`, `upmx:<threshold>`, `nwox`, `ox`.
impl FromStr for CrossoverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s.as_str(), None),
        };
        let kind = match (name, arg) {
            ("uxo", None) => CrossoverKind::Uxo,
            ("cx", None) => CrossoverKind::Cx,
            ("pmx", None) => CrossoverKind::Pmx,
            ("nwox", None) => CrossoverKind::Nwox,
            ("ox", None) => CrossoverKind::Ox,
            ("upmx", None) => CrossoverKind::Upmx {
                threshold: DEFAULT_UPMX_THRESHOLD,
            },
            ("upmx", Some(arg)) => {
                let threshold: f64 = arg
                    .parse()
                    .map_err(|_| Error::param("upmx", format!("bad threshold `{arg}`")))?;
                CrossoverKind::upmx(threshold)?
            }
            _ => return Err(Error::UnknownOperator(s.clone())),
        };
        Ok(kind)
    }
}

impl From<CrossoverKind> for String {
    fn from(kind: CrossoverKind) -> Self {
        kind.to_string()
    }
}

impl TryFrom<String> for CrossoverKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Only reverse sequence mutation is implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MutationKind {
    #[default]
    Rsm,
}

impl FromStr for MutationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rsm" => Ok(MutationKind::Rsm),
            other => Err(Error::UnknownOperator(other.to_string())),
        }
    }
}

impl fmt::Display for MutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("rsm")
    }
}

/// An inclusive segment `start..=end` of tour positions (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutPoints {
    start: usize,
    end: usize,
}

impl CutPoints {
    pub fn new(start: usize, end: usize, len: usize) -> Result<Self> {
        if start > end || end >= len {
            return Err(Error::InvalidCuts { start, end, len });
        }
        Ok(Self { start, end })
    }

    /// From 1-based positions `1 <= a <= b <= len`.
    pub fn from_one_based(a: usize, b: usize, len: usize) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidCuts {
                start: 0,
                end: b,
                len,
            });
        }
        Self::new(a - 1, b - 1, len)
    }

    /// Uniform over all `len * (len + 1) / 2` segments, single positions included.
    pub fn sample<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Result<Self> {
        if len == 0 {
            return Err(Error::Empty("cannot cut an empty tour"));
        }
        // Two distinct boundaries among the len + 1 gaps bound exactly one segment.
        let lo = rng.random_range(0..=len);
        let mut hi = rng.random_range(0..len);
        if hi >= lo {
            hi += 1;
        }
        let (lo, hi) = if lo < hi { (lo, hi) } else { (hi, lo) };
        Ok(Self {
            start: lo,
            end: hi - 1,
        })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub(crate) fn check(&self, len: usize) -> Result<()> {
        if self.end >= len {
            return Err(Error::InvalidCuts {
                start: self.start,
                end: self.end,
                len,
            });
        }
        Ok(())
    }
}
