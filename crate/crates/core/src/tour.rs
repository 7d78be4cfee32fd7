//! Path representation of a tour and its validity checks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::TspInstance;

/// Why an index list is not a permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TourViolation {
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    /// Indices `>= n`, in order of appearance.
    OutOfRange(Vec<usize>),
    /// Duplicated indices paired with the indices that are therefore missing.
    Duplicates {
        duplicated: Vec<usize>,
        missing: Vec<usize>,
    },
}

impl fmt::Display for TourViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TourViolation::LengthMismatch { expected, found } => {
                write!(f, "length {found}, expected {expected}")
            }
            TourViolation::OutOfRange(idx) => write!(f, "indices out of range: {idx:?}"),
            TourViolation::Duplicates {
                duplicated,
                missing,
            } => {
                write!(f, "duplicated {duplicated:?}, missing {missing:?}")
            }
        }
    }
}

/// Accepts iff `order` has length `n` and visits each of `0..n` exactly once.
pub fn validate_tour(order: &[usize], n: usize) -> std::result::Result<(), TourViolation> {
    if order.len() != n {
        return Err(TourViolation::LengthMismatch {
            expected: n,
            found: order.len(),
        });
    }
    let out_of_range: Vec<usize> = order.iter().copied().filter(|&c| c >= n).collect();
    if !out_of_range.is_empty() {
        return Err(TourViolation::OutOfRange(out_of_range));
    }
    let mut seen = vec![0u32; n];
    for &c in order {
        seen[c] += 1;
    }
    let duplicated: Vec<usize> = (0..n).filter(|&c| seen[c] > 1).collect();
    if duplicated.is_empty() {
        return Ok(());
    }
    let missing = (0..n).filter(|&c| seen[c] == 0).collect();
    Err(TourViolation::Duplicates {
        duplicated,
        missing,
    })
}

/// A closed tour: the order in which cities are visited, returning to the first.
///
/// The length is cached once evaluated against an instance. Any operation
/// producing a new order yields an unevaluated tour.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tour {
    order: Vec<usize>,
    length: Option<f64>,
}

impl Tour {
    /// Builds a tour after checking that `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        validate_tour(&order, order.len()).map_err(Error::InvalidTour)?;
        Ok(Self::from_order_unchecked(order))
    }

    pub(crate) fn from_order_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(validate_tour(&order, order.len()).is_ok());
        Self {
            order,
            length: None,
        }
    }

    /// The identity tour `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Self {
        Self::from_order_unchecked((0..n).collect())
    }

    /// Builds and evaluates a tour against `instance`.
    pub fn evaluated(order: Vec<usize>, instance: &TspInstance) -> Result<Self> {
        let mut tour = Self::new(order)?;
        tour.evaluate(instance)?;
        Ok(tour)
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Cached length, if the tour has been evaluated.
    pub fn length(&self) -> Option<f64> {
        self.length
    }

    /// Computes and caches the closed-tour length.
    pub fn evaluate(&mut self, instance: &TspInstance) -> Result<f64> {
        let length = instance.tour_length(&self.order)?;
        self.length = Some(length);
        Ok(length)
    }
}

impl AsRef<[usize]> for Tour {
    fn as_ref(&self) -> &[usize] {
        &self.order
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for city in &self.order {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{city}")?;
            first = false;
        }
        Ok(())
    }
}
