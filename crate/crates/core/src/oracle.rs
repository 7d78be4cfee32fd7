//! Exhaustive search for small instances, used as ground truth in tests and
//! by the `exact` subcommand.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::TspInstance;
use crate::tour::Tour;

/// Largest instance [`brute_force_optimum`] accepts unless told otherwise.
pub const DEFAULT_MAX_CITIES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Enumeration {
    /// City 0 fixed first and each tour counted in one direction only:
    /// `(n-1)!/2` tours for `n >= 3`.
    #[default]
    SymmetryReduced,
    /// All `n!` orders.
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactResult {
    pub optimal_tour: Tour,
    pub optimal_length: f64,
    pub permutations_examined: u64,
}

/// Rearranges `v` into the next lexicographic permutation; false once `v`
/// was the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Minimum-length tour by enumeration. Ties keep the lexicographically first
/// order examined.
pub fn brute_force_optimum(
    instance: &TspInstance,
    max_n: usize,
    mode: Enumeration,
) -> Result<ExactResult> {
    let n = instance.len();
    if n > max_n {
        return Err(Error::TooLarge { n, cap: max_n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = order.clone();
    let mut best_len = f64::INFINITY;
    let mut examined = 0u64;

    let mut consider = |order: &[usize], best: &mut Vec<usize>| {
        examined += 1;
        let len = instance.tour_length_unchecked(order);
        if len < best_len {
            best_len = len;
            best.copy_from_slice(order);
        }
    };

    match mode {
        Enumeration::Full => loop {
            consider(&order, &mut best);
            if !next_permutation(&mut order) {
                break;
            }
        },
        Enumeration::SymmetryReduced => {
            if n <= 1 {
                consider(&order, &mut best);
            } else {
                loop {
                    // reversal of 0 a ... b is 0 b ... a; keep the one with a < b
                    if n < 3 || order[1] < order[n - 1] {
                        consider(&order, &mut best);
                    }
                    if !next_permutation(&mut order[1..]) {
                        break;
                    }
                }
            }
        }
    }

    Ok(ExactResult {
        optimal_tour: Tour::evaluated(best, instance)?,
        optimal_length: best_len,
        permutations_examined: examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Metric, Point};

    fn inst(pts: &[(f64, f64)], metric: Metric) -> TspInstance {
        TspInstance::new(
            "t",
            pts.iter().map(|&(x, y)| Point::new(x, y)).collect(),
            metric,
        )
        .unwrap()
    }

    #[test]
    fn next_permutation_walks_all_orders() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(v, vec![3, 2, 1, 0]);
    }

    #[test]
    fn unit_square_optimum() {
        let sq = inst(
            &[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)],
            Metric::Real,
        );
        for mode in [Enumeration::SymmetryReduced, Enumeration::Full] {
            let r = brute_force_optimum(&sq, DEFAULT_MAX_CITIES, mode).unwrap();
            assert_eq!(r.optimal_length, 4.0);
            assert_eq!(r.optimal_tour.length(), Some(4.0));
        }
        let r = brute_force_optimum(&sq, 10, Enumeration::SymmetryReduced).unwrap();
        assert_eq!(r.permutations_examined, 3);
        assert_eq!(r.optimal_tour.order(), &[0, 2, 1, 3]);
    }

    #[test]
    fn three_cities_all_equal() {
        let tri = inst(&[(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)], Metric::Real);
        let r = brute_force_optimum(&tri, 10, Enumeration::Full).unwrap();
        assert_eq!(r.optimal_length, 12.0);
        assert_eq!(r.permutations_examined, 6);
        let r = brute_force_optimum(&tri, 10, Enumeration::SymmetryReduced).unwrap();
        assert_eq!(r.optimal_length, 12.0);
        assert_eq!(r.permutations_examined, 1);
    }

    #[test]
    fn tiny_instances() {
        let one = inst(&[(1.0, 1.0)], Metric::Real);
        let r = brute_force_optimum(&one, 10, Enumeration::SymmetryReduced).unwrap();
        assert_eq!((r.optimal_length, r.permutations_examined), (0.0, 1));
        let two = inst(&[(0.0, 0.0), (3.0, 4.0)], Metric::Real);
        let r = brute_force_optimum(&two, 10, Enumeration::SymmetryReduced).unwrap();
        assert_eq!((r.optimal_length, r.permutations_examined), (10.0, 1));
    }

    #[test]
    fn enforces_cap() {
        let pts: Vec<(f64, f64)> = (0..11).map(|i| (i as f64, 0.0)).collect();
        assert!(matches!(
            brute_force_optimum(
                &inst(&pts, Metric::Real),
                DEFAULT_MAX_CITIES,
                Enumeration::SymmetryReduced
            ),
            Err(Error::TooLarge { n: 11, cap: 10 })
        ));
    }
}
