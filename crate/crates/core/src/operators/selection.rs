use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Selection probabilities, one per population member, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionWeights {
    probabilities: Vec<f64>,
    cumulative: Vec<f64>,
}

impl SelectionWeights {
    /// Equal weight for every member.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("selection needs at least one member"));
        }
        Ok(Self::from_probabilities(vec![1.0 / n as f64; n]))
    }

    fn from_probabilities(probabilities: Vec<f64>) -> Self {
        let cumulative = probabilities
            .iter()
            .scan(0.0, |acc, p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        Self {
            probabilities,
            cumulative,
        }
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }
}

/// Inverted fitness-proportional weights for minimisation:
/// `w_i = (1 - f_i / sum(f)) / (N - 1)`.
///
/// Shorter tours get larger weights. Needs at least two strictly positive
/// fitness values.
pub fn roulette_weights(fitnesses: &[f64]) -> Result<SelectionWeights> {
    let n = fitnesses.len();
    if n < 2 {
        return Err(Error::param(
            "fitnesses",
            format!("roulette needs at least 2 members, got {n}"),
        ));
    }
    if let Some(bad) = fitnesses.iter().find(|f| !(f.is_finite() && **f > 0.0)) {
        return Err(Error::param(
            "fitnesses",
            format!("fitness values must be positive and finite, got {bad}"),
        ));
    }
    let total: f64 = fitnesses.iter().sum();
    // (1 - f/S)/(N-1) written as (S - f)/((N-1)S): one rounding per weight,
    // so small integer inputs give exactly rounded quotients.
    let denom = (n - 1) as f64 * total;
    let probabilities = fitnesses.iter().map(|f| (total - f) / denom).collect();
    Ok(SelectionWeights::from_probabilities(probabilities))
}

/// Spins the wheel: returns the member whose cumulative interval holds `u`.
///
/// `u` is expected in `[0, 1)`; values beyond the accumulated total (rounding)
/// land on the last member.
pub fn roulette_select(weights: &SelectionWeights, u: f64) -> usize {
    let idx = weights.cumulative.partition_point(|&c| c <= u);
    idx.min(weights.len() - 1)
}
