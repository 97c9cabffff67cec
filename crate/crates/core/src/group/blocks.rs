use serde::{Deserialize, Serialize};

use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A partition of `0..n` into nonempty blocks. Blocks are sorted internally
/// and ordered by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        let mut normalized = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::PartitionInvalid("empty block".into()));
            }
            b.sort_unstable();
            for &x in &b {
                if x >= n {
                    return Err(Error::PartitionInvalid(format!("point {x} out of range")));
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::PartitionInvalid(format!("point {x} in two blocks")));
                }
                block_of[x] = 0;
            }
            normalized.push(b);
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::PartitionInvalid(format!("point {x} not covered")));
        }
        normalized.sort_unstable_by_key(|b| b[0]);
        Ok(Self::from_sorted_blocks(n, normalized))
    }

    pub(crate) fn from_sorted_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        let mut block_of = vec![0; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        Partition { blocks, block_of }
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_sorted_blocks(n, (0..n).map(|x| vec![x]).collect())
    }

    /// Builds a partition from a vertex → label map; labels need not be contiguous.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut order: Vec<usize> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            match order.iter().position(|&o| o == l) {
                Some(i) => blocks[i].push(x),
                None => {
                    order.push(l);
                    blocks.push(vec![x]);
                }
            }
        }
        Self::from_sorted_blocks(labels.len(), blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_map(&self) -> &[usize] {
        &self.block_of
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    /// Image of `g` on block indices, if `g` maps blocks to blocks.
    pub fn induced(&self, g: &Permutation) -> Option<Permutation> {
        let mut images = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let target = self.block_of[g.apply(b[0])];
            if b.iter().any(|&x| self.block_of[g.apply(x)] != target)
                || self.blocks[target].len() != b.len()
            {
                return None;
            }
            images.push(target);
        }
        Permutation::from_images(images).ok()
    }
}

/// The action of a group on the blocks of an invariant partition.
#[derive(Debug, Clone)]
pub struct BlockAction {
    /// Permutation group on block indices.
    pub image: PermGroup,
    /// Elements fixing every block, as a group on the original points.
    pub kernel: PermGroup,
}

impl PermGroup {
    /// Image and kernel of the action on an invariant partition.
    pub fn induced_block_action(&self, partition: &Partition) -> Result<BlockAction> {
        if partition.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: partition.degree(),
            });
        }
        let n = self.degree();
        let b = partition.len();
        let mut image_gens = Vec::new();
        let mut extended = Vec::new();
        for g in self.generators() {
            let bar = partition.induced(g).ok_or(Error::PartitionNotInvariant)?;
            // Act on points and blocks at once so the kernel is a pointwise
            // stabilizer of the block points.
            let images: Vec<usize> = g
                .images()
                .iter()
                .copied()
                .chain(bar.images().iter().map(|&t| n + t))
                .collect();
            extended.push(Permutation::from_images_unchecked(images));
            image_gens.push(bar);
        }
        let image = PermGroup::from_parts(b, image_gens);
        let ext = PermGroup::from_parts(n + b, extended);
        let block_points: Vec<usize> = (n..n + b).collect();
        let stab = ext.tuple_stabilizer(&block_points)?;
        let kernel_gens = stab
            .generators()
            .iter()
            .map(|g| Permutation::from_images_unchecked(g.images()[..n].to_vec()))
            .collect();
        Ok(BlockAction {
            image,
            kernel: PermGroup::from_parts(n, kernel_gens),
        })
    }
}
