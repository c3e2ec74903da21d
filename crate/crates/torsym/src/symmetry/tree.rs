//! The inductive construction of the symmetry group as an explicit tree:
//! blow up the classes that are faces, split off sphere-bundle factors,
//! recurse on the reduced pair carrying the induced partition, and stop at
//! a torus-only leaf.

use super::{
    blowdown, classify_class, decompose_case1, join_reconstruct, stellar_blowup, ClassCase,
    Decomposition, SymmetryError,
};
use crate::charpair::{CharacteristicPair, SignMode};
use std::collections::BTreeSet;

/// One step of the induction, with the pair it was applied to (`before`) so
/// the replay can verify each level independently.
#[derive(Debug, Clone)]
pub enum TreeStep {
    BlowUp {
        class: Vec<String>,
        exceptional: String,
        before: CharacteristicPair,
        after: CharacteristicPair,
    },
    SplitOff {
        decomposition: Decomposition,
        before: CharacteristicPair,
    },
}

impl TreeStep {
    pub fn before(&self) -> &CharacteristicPair {
        match self {
            TreeStep::BlowUp { before, .. } => before,
            TreeStep::SplitOff { before, .. } => before,
        }
    }
}

/// Record of the full induction down to a pair whose induced classes are all
/// singletons.
#[derive(Debug, Clone)]
pub struct ConstructionTree {
    pub steps: Vec<TreeStep>,
    pub leaf: CharacteristicPair,
    /// The partition carried into the leaf (all blocks singletons).
    pub leaf_partition: Vec<Vec<String>>,
}

impl ConstructionTree {
    /// Multiset of class sizes `k >= 2` split off along the way.
    pub fn split_off_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self
            .steps
            .iter()
            .filter_map(|s| match s {
                TreeStep::SplitOff { decomposition, .. } => Some(decomposition.class_size()),
                TreeStep::BlowUp { .. } => None,
            })
            .collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn blowup_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, TreeStep::BlowUp { .. }))
            .count()
    }

    /// Undoes every step from the leaf upward, checking at each level that
    /// the inverse reconstruction is isomorphic to the recorded pair.
    /// Returns the reconstruction of the root input.
    pub fn replay(&self) -> Result<CharacteristicPair, SymmetryError> {
        let mut verified_root: Option<&CharacteristicPair> = None;
        for step in self.steps.iter().rev() {
            let reconstructed = match step {
                TreeStep::BlowUp {
                    exceptional, after, ..
                } => blowdown(after, exceptional)?,
                TreeStep::SplitOff { decomposition, .. } => join_reconstruct(decomposition)?,
            };
            if reconstructed
                .isomorphism_to(step.before(), SignMode::Exact)?
                .is_none()
            {
                return Err(SymmetryError::TheoryViolation(
                    "replayed step is not isomorphic to the recorded pair".into(),
                ));
            }
            verified_root = Some(step.before());
        }
        Ok(verified_root.cloned().unwrap_or_else(|| self.leaf.clone()))
    }
}

/// Runs the induction: repeatedly pick the largest induced class (ties by
/// earliest facet), blow up if it is a face, otherwise split it off and
/// carry the remaining blocks into the reduced pair. At every split-off the
/// carried partition must refine the reduced pair's own classes.
pub fn build_construction_tree(
    pair: &CharacteristicPair,
) -> Result<ConstructionTree, SymmetryError> {
    let mut current = pair.clone();
    let mut partition: Vec<Vec<String>> = current.facet_classes()?.blocks();
    let mut steps: Vec<TreeStep> = Vec::new();

    while let Some(target) = pick_block(&current, &partition) {
        match classify_class(&current, &target)? {
            ClassCase::Case2 { face } => {
                let before = current.clone();
                let (after, exceptional) = stellar_blowup(&current, &face)?;
                partition.push(vec![exceptional.clone()]);
                steps.push(TreeStep::BlowUp {
                    class: face,
                    exceptional,
                    before,
                    after: after.clone(),
                });
                current = after;
            }
            ClassCase::Case1 { .. } => {
                let before = current.clone();
                let d = decompose_case1(&current, &target)?;
                let reduced = d.reduced.clone();
                let survivors: BTreeSet<&String> = reduced.facets().iter().collect();
                partition = partition
                    .iter()
                    .filter(|b| **b != target)
                    .map(|b| {
                        b.iter()
                            .filter(|f| survivors.contains(f))
                            .cloned()
                            .collect::<Vec<_>>()
                    })
                    .filter(|b: &Vec<String>| !b.is_empty())
                    .collect();
                assert_partition_refines_classes(&reduced, &partition)?;
                steps.push(TreeStep::SplitOff {
                    decomposition: d,
                    before,
                });
                current = reduced;
            }
        }
    }

    Ok(ConstructionTree {
        leaf: current,
        leaf_partition: partition,
        steps,
    })
}

/// Largest block of size >= 2; ties broken by the earliest member in the
/// current facet order.
fn pick_block(pair: &CharacteristicPair, partition: &[Vec<String>]) -> Option<Vec<String>> {
    let mut best: Option<(usize, usize, Vec<String>)> = None;
    for block in partition {
        if block.len() < 2 {
            continue;
        }
        let first_position = block
            .iter()
            .filter_map(|f| pair.complex().position_of(f))
            .min()
            .unwrap_or(usize::MAX);
        let better = match &best {
            None => true,
            Some((len, pos, _)) => block.len() > *len || (block.len() == *len && first_position < *pos),
        };
        if better {
            best = Some((block.len(), first_position, block.clone()));
        }
    }
    best.map(|(_, _, block)| block)
}

/// The carried partition must refine the reduced pair's own computed classes
/// (after normalizing the reduced pair, whose restriction signs are
/// arbitrary).
fn assert_partition_refines_classes(
    reduced: &CharacteristicPair,
    partition: &[Vec<String>],
) -> Result<(), SymmetryError> {
    if reduced.rank() == 0 {
        return Ok(());
    }
    let (normalized, _) = reduced.normalize_omniorientation()?;
    let classes = normalized.facet_classes()?;
    for block in partition {
        let inside_one = classes
            .classes
            .iter()
            .any(|c| block.iter().all(|f| c.facets.contains(f)));
        if !inside_one {
            return Err(SymmetryError::TheoryViolation(format!(
                "carried block {{{}}} does not refine the reduced pair's classes",
                block.join(", ")
            )));
        }
    }
    Ok(())
}
