//! Extraction of the classification data for a quasitoric pair with a given
//! admissible Weyl partition: the reduced pair, one circle weight per
//! non-singleton block, and the marked facets coming from blown-up blocks.

use super::{
    check_partition, sort_by_facet_order, stellar_blowup, weyl_partition_admissible,
    SymmetryError,
};
use crate::charpair::CharacteristicPair;
use crate::lattice::IntVector;

/// Combinatorial admissible triple for a partition whose blocks of size
/// `>= 2` are contained in facet classes.
#[derive(Debug, Clone)]
pub struct AdmissibleTriple {
    /// The blocks of size >= 2, in input order, members in facet order.
    pub blocks: Vec<Vec<String>>,
    /// One vector per block: the image of `sum lambda(F)` in the reduced
    /// lattice.
    pub psi_data: Vec<IntVector>,
    /// The reduced pair over the intersection of the non-distinguished
    /// block facets.
    pub reduced_pair: CharacteristicPair,
    /// Per block, the exceptional facet surviving into the reduced pair for
    /// blocks that were faces (blown up first); empty otherwise.
    pub marked: Vec<Option<String>>,
}

/// Processes the blocks of an admissible partition: blocks that are faces
/// are blown up first (their exceptional facet becomes the marked one); then
/// all blocks lose their distinguished facet (lowest in facet order) and the
/// pair is restricted over the union of the rest.
pub fn extract_admissible_triple(
    pair: &CharacteristicPair,
    partition: &[Vec<String>],
) -> Result<AdmissibleTriple, SymmetryError> {
    check_partition(pair, partition)?;
    if !weyl_partition_admissible(pair, partition)? {
        let offender = partition
            .iter()
            .find(|b| b.len() >= 2)
            .map(|b| b.join(", "))
            .unwrap_or_default();
        return Err(SymmetryError::NotAdmissibleError(offender));
    }
    let mut blocks: Vec<Vec<String>> = Vec::new();
    for block in partition {
        if block.len() < 2 {
            continue;
        }
        let mut ordered = block.clone();
        sort_by_facet_order(pair, &mut ordered)?;
        blocks.push(ordered);
    }

    // blow up the blocks that are faces
    let mut running = pair.clone();
    let mut exceptional: Vec<Option<String>> = Vec::with_capacity(blocks.len());
    for block in &blocks {
        if running.complex().is_face(block)? {
            let (blown, label) = stellar_blowup(&running, block)?;
            running = blown;
            exceptional.push(Some(label));
        } else {
            exceptional.push(None);
        }
    }

    // restrict over the union of the blocks without their distinguished
    // facet (lowest label; for blocks of size two either choice gives the
    // same triple class)
    let mut union: Vec<String> = Vec::new();
    for block in &blocks {
        union.extend(block.iter().skip(1).cloned());
    }
    let (reduced, projection) = running.restrict_to_face_with_projection(&union)?;

    let mut psi_data = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let mut sum = IntVector::zeros(running.rank());
        for f in block {
            sum = sum.add(running.lambda_of(f)?);
        }
        psi_data.push(projection.mul_vec(&sum));
    }

    let mut marked = Vec::with_capacity(blocks.len());
    for label in exceptional {
        match label {
            Some(e) => {
                if reduced.complex().position_of(&e).is_none() {
                    return Err(SymmetryError::TheoryViolation(format!(
                        "exceptional facet {} did not survive into the reduced pair",
                        e
                    )));
                }
                marked.push(Some(e));
            }
            None => marked.push(None),
        }
    }

    Ok(AdmissibleTriple {
        blocks,
        psi_data,
        reduced_pair: reduced,
        marked,
    })
}
