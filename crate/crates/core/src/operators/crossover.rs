//! Permutation crossovers. Each returns two children; the second is always
//! the first with the parents' roles swapped.

use super::CutPoints;
use crate::error::{Error, Result};
use crate::tour::Tour;

fn check_parents(p1: &Tour, p2: &Tour) -> Result<usize> {
    if p1.len() != p2.len() {
        return Err(Error::LengthMismatch(p1.len(), p2.len()));
    }
    Ok(p1.len())
}

fn pair(c1: Vec<usize>, c2: Vec<usize>) -> (Tour, Tour) {
    (
        Tour::from_order_unchecked(c1),
        Tour::from_order_unchecked(c2),
    )
}

/// Keeps `keep[i]`-flagged genes of `base` in place and fills the remaining
/// positions, left to right, with the missing genes in the order they appear
/// in `donor`.
fn keep_and_fill(base: &[usize], donor: &[usize], keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let n = base.len();
    let mut present = vec![false; n];
    let mut child = vec![usize::MAX; n];
    for i in (0..n).filter(|&i| keep(i)) {
        child[i] = base[i];
        present[base[i]] = true;
    }
    let mut fill = donor.iter().copied().filter(|&g| !present[g]);
    for slot in child.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = fill.next().expect("donor supplies every missing gene");
    }
    child
}

/// Uniform crossover with order-based repair: child1 keeps `p1`'s gene where
/// `mask` is true; the other positions take the missing genes in `p2` order.
pub fn uniform_crossover(p1: &Tour, p2: &Tour, mask: &[bool]) -> Result<(Tour, Tour)> {
    let n = check_parents(p1, p2)?;
    if mask.len() != n {
        return Err(Error::LengthMismatch(n, mask.len()));
    }
    let (a, b) = (p1.order(), p2.order());
    Ok(pair(
        keep_and_fill(a, b, |i| mask[i]),
        keep_and_fill(b, a, |i| mask[i]),
    ))
}

/// Cycle crossover. The cycle through position 0 is inherited from the
/// first parent in place; every other position comes from the second.
pub fn cx_crossover(p1: &Tour, p2: &Tour) -> Result<(Tour, Tour)> {
    let n = check_parents(p1, p2)?;
    let (a, b) = (p1.order(), p2.order());
    let mut pos_in_a = vec![0; n];
    for (i, &g) in a.iter().enumerate() {
        pos_in_a[g] = i;
    }
    let mut in_cycle = vec![false; n];
    if n > 0 {
        let mut i = 0;
        while !in_cycle[i] {
            in_cycle[i] = true;
            i = pos_in_a[b[i]];
        }
    }
    let c1 = (0..n)
        .map(|i| if in_cycle[i] { a[i] } else { b[i] })
        .collect();
    let c2 = (0..n)
        .map(|i| if in_cycle[i] { b[i] } else { a[i] })
        .collect();
    Ok(pair(c1, c2))
}

/// Position-tracking exchange: brings `gene` to position `i` of `child` by
/// swapping it with whatever sits there.
#[inline]
fn exchange(child: &mut [usize], pos: &mut [usize], i: usize, gene: usize) {
    let j = pos[gene];
    if i == j {
        return;
    }
    let displaced = child[i];
    child.swap(i, j);
    pos[gene] = i;
    pos[displaced] = j;
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &g) in order.iter().enumerate() {
        pos[g] = i;
    }
    pos
}

/// Runs the exchange at every position yielded by `sites`, child1 pulling
/// genes from `p2` and child2 from `p1`.
fn pmx_exchange(
    a: &[usize],
    b: &[usize],
    sites: impl Iterator<Item = usize>,
) -> (Vec<usize>, Vec<usize>) {
    let (mut c1, mut c2) = (a.to_vec(), b.to_vec());
    let (mut pos1, mut pos2) = (positions(a), positions(b));
    for i in sites {
        exchange(&mut c1, &mut pos1, i, b[i]);
        exchange(&mut c2, &mut pos2, i, a[i]);
    }
    (c1, c2)
}

/// Partially-mapped crossover: child1 receives `p2`'s segment in place and
/// keeps `p1`'s other genes, relocating the displaced ones along the mapping.
pub fn pmx_crossover(p1: &Tour, p2: &Tour, cuts: CutPoints) -> Result<(Tour, Tour)> {
    let n = check_parents(p1, p2)?;
    cuts.check(n)?;
    let (c1, c2) = pmx_exchange(p1.order(), p2.order(), cuts.start()..=cuts.end());
    Ok(pair(c1, c2))
}

/// Uniform PMX: the PMX exchange is applied at each position `i` whose draw
/// satisfies `draws[i] >= threshold`.
pub fn upmx_crossover(p1: &Tour, p2: &Tour, threshold: f64, draws: &[f64]) -> Result<(Tour, Tour)> {
    let n = check_parents(p1, p2)?;
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::param(
            "upmx",
            format!("swap threshold {threshold} not in [0, 1]"),
        ));
    }
    if draws.len() != n {
        return Err(Error::LengthMismatch(n, draws.len()));
    }
    let sites = (0..n).filter(|&i| draws[i] >= threshold);
    let (c1, c2) = pmx_exchange(p1.order(), p2.order(), sites);
    Ok(pair(c1, c2))
}

fn nwox_child(base: &[usize], donor: &[usize], cuts: CutPoints) -> Vec<usize> {
    let n = base.len();
    let segment = &donor[cuts.start()..=cuts.end()];
    let mut hole = vec![false; n];
    for &g in segment {
        hole[g] = true;
    }
    let mut child = Vec::with_capacity(n);
    let mut survivors = base.iter().copied().filter(|&g| !hole[g]);
    child.extend(survivors.by_ref().take(cuts.start()));
    child.extend_from_slice(segment);
    child.extend(survivors);
    child
}

/// Non-wrapping ordered crossover: genes of the other parent's segment become
/// holes, survivors slide (without wrapping) to free the segment, and the
/// segment is written into it.
pub fn nwox_crossover(p1: &Tour, p2: &Tour, cuts: CutPoints) -> Result<(Tour, Tour)> {
    let n = check_parents(p1, p2)?;
    cuts.check(n)?;
    let (a, b) = (p1.order(), p2.order());
    Ok(pair(nwox_child(a, b, cuts), nwox_child(b, a, cuts)))
}

/// Ordered crossover: child1 keeps `p1`'s left and right sections in place;
/// the middle section holds the remaining genes in `p2` order.
pub fn ox_crossover(p1: &Tour, p2: &Tour, cuts: CutPoints) -> Result<(Tour, Tour)> {
    let n = check_parents(p1, p2)?;
    cuts.check(n)?;
    let (a, b) = (p1.order(), p2.order());
    let outside = |i: usize| i < cuts.start() || i > cuts.end();
    Ok(pair(
        keep_and_fill(a, b, outside),
        keep_and_fill(b, a, outside),
    ))
}
