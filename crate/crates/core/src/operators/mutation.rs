use super::CutPoints;
use crate::error::Result;
use crate::tour::Tour;

/// Reverse sequence mutation: reverses the genes in the cut segment.
pub fn rsm_mutation(tour: &Tour, cuts: CutPoints) -> Result<Tour> {
    cuts.check(tour.len())?;
    let mut order = tour.order().to_vec();
    order[cuts.start()..=cuts.end()].reverse();
    Ok(Tour::from_order_unchecked(order))
}
