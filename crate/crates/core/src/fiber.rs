//! Fibers of the Elder map: counting and enumerating the (chiral) merge
//! trees and functions with a given barcode, and the containment poset that
//! indexes strata of barcode space.
//!
//! Trees are grown from the essential bar downward in order of decreasing
//! death. Bar `I_j` can only hang off a bar that strictly contains it, at
//! height `d_j`, and in the chiral case on either side of that bar's chain.

use rayon::prelude::*;

use crate::barcode::Barcode;
use crate::elder::{cmt_to_sequence, Side};
use crate::error::FiberError;
use crate::sequence::CriticalSequence;
use crate::tree::{ChiralMergeTree, MergeTree, Tree, TreeBuilder, VertexId};

fn require_generic(b: &Barcode) -> Result<(), FiberError> {
    if b.is_generic() {
        Ok(())
    } else {
        Err(FiberError::NotGeneric)
    }
}

fn require_distinct_births(b: &Barcode) -> Result<(), FiberError> {
    match b.first_duplicate_birth() {
        Some(birth) => Err(FiberError::DuplicateBirth { birth: birth.value() }),
        None => Ok(()),
    }
}

/// `C(I_j)`: 1-based indices `k` with `I_j ⊂ I_k`, ascending.
pub fn containing_set(b: &Barcode, j: usize) -> Result<Vec<usize>, FiberError> {
    require_generic(b)?;
    if j < 2 || j > b.len() {
        return Err(FiberError::IndexOutOfRange { index: j, len: b.len() });
    }
    let bar = b.bar(j).unwrap();
    Ok(b.intervals().filter(|(_, other)| bar.is_strictly_inside(other)).map(|(k, _)| k).collect())
}

/// `μ(I_j) = |C(I_j)|`.
pub fn mu(b: &Barcode, j: usize) -> Result<usize, FiberError> {
    containing_set(b, j).map(|c| c.len())
}

/// Number of merge trees with barcode `b`: the product of `μ(I_j)` over
/// `j = 2..=N`.
pub fn count_merge_trees(b: &Barcode) -> Result<u128, FiberError> {
    require_generic(b)?;
    (2..=b.len()).try_fold(1u128, |acc, j| {
        acc.checked_mul(mu(b, j)? as u128).ok_or(FiberError::Overflow)
    })
}

/// Number of chiral merge trees with barcode `b`, `2^(N-1)` times the
/// merge-tree count. For barcodes with distinct births this is also the
/// number of graph-equivalence classes of functions with barcode `b`.
pub fn count_cmts(b: &Barcode) -> Result<u128, FiberError> {
    let unordered = count_merge_trees(b)?;
    let exponent = u32::try_from(b.len() - 1).map_err(|_| FiberError::Overflow)?;
    2u128
        .checked_pow(exponent)
        .and_then(|p| p.checked_mul(unordered))
        .ok_or(FiberError::Overflow)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Attachment {
    /// 1-based index of the bar whose chain receives the new bar.
    pub parent: usize,
    /// Side of the new subtree; `None` for unordered plans.
    pub side: Option<Side>,
}

/// One choice of attachment for each of the bars `I_2, ..., I_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachmentPlan {
    /// `attachments[j - 2]` places bar `I_j`.
    pub attachments: Vec<Attachment>,
}

impl AttachmentPlan {
    pub fn attachment(&self, j: usize) -> Attachment {
        self.attachments[j - 2]
    }

    /// Builds the tree. For unordered plans the new subtree goes on the
    /// right, which is immaterial once chirality is forgotten.
    pub fn materialize<K>(&self, b: &Barcode) -> Tree<K> {
        let n = b.len();
        let mut hung: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for j in 2..=n {
            hung[self.attachment(j).parent].push(j);
        }
        let mut builder = TreeBuilder::new();
        let mut top: Vec<Option<VertexId>> = vec![None; n + 1];
        // Children always have larger indices than their parent bar.
        for k in (1..=n).rev() {
            let bar = b.bar(k).unwrap();
            let mut cursor = builder.leaf(bar.birth);
            // Ascending death is descending index.
            for &j in hung[k].iter().rev() {
                let death = b.bar(j).unwrap().death.unwrap();
                let sub = top[j].unwrap();
                cursor = match self.attachment(j).side {
                    Some(Side::L) => builder.join(death, sub, cursor),
                    Some(Side::R) | None => builder.join(death, cursor, sub),
                };
            }
            top[k] = Some(cursor);
        }
        builder.finish(top[1].unwrap()).expect("attachment plan materializes to a valid tree")
    }
}

/// Per-bar choice lists in enumeration order: parent index ascending, then
/// L before R.
fn choices(b: &Barcode, chiral: bool) -> Result<Vec<Vec<Attachment>>, FiberError> {
    (2..=b.len())
        .map(|j| {
            let parents = containing_set(b, j)?;
            Ok(parents
                .into_iter()
                .flat_map(|parent| {
                    let sides: &[Option<Side>] =
                        if chiral { &[Some(Side::L), Some(Side::R)] } else { &[None] };
                    sides.iter().map(move |&side| Attachment { parent, side })
                })
                .collect())
        })
        .collect()
}

fn decode_plan(index: usize, choices: &[Vec<Attachment>]) -> AttachmentPlan {
    // Mixed radix, I_2 most significant.
    let mut rest = index;
    let mut attachments: Vec<Attachment> = choices
        .iter()
        .rev()
        .map(|options| {
            let pick = options[rest % options.len()];
            rest /= options.len();
            pick
        })
        .collect();
    attachments.reverse();
    AttachmentPlan { attachments }
}

/// All attachment plans in depth-first order: `I_2` outermost, then parent
/// index, then L before R.
pub fn attachment_plans(b: &Barcode, chiral: bool) -> Result<Vec<AttachmentPlan>, FiberError> {
    let choices = choices(b, chiral)?;
    let total = plan_count(&choices)?;
    Ok((0..total).map(|i| decode_plan(i, &choices)).collect())
}

fn plan_count(choices: &[Vec<Attachment>]) -> Result<usize, FiberError> {
    choices
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()).ok_or(FiberError::Overflow))
}

fn enumerate_trees<K: Send>(b: &Barcode, chiral: bool, jobs: usize) -> Result<Vec<Tree<K>>, FiberError> {
    require_generic(b)?;
    require_distinct_births(b)?;
    let choices = choices(b, chiral)?;
    let total = plan_count(&choices)?;
    let build = |i: usize| decode_plan(i, &choices).materialize::<K>(b);
    if jobs <= 1 {
        return Ok((0..total).map(build).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    Ok(pool.install(|| (0..total).into_par_iter().map(build).collect()))
}

/// Every merge tree with barcode `b`, sorted by canonical form.
pub fn enumerate_merge_trees(b: &Barcode) -> Result<Vec<MergeTree>, FiberError> {
    enumerate_merge_trees_with_jobs(b, 1)
}

pub fn enumerate_merge_trees_with_jobs(b: &Barcode, jobs: usize) -> Result<Vec<MergeTree>, FiberError> {
    let mut trees: Vec<(_, MergeTree)> = enumerate_trees(b, false, jobs)?
        .into_iter()
        .map(|t: MergeTree| (t.canonical_form(), t))
        .collect();
    trees.sort_by(|a, c| a.0.cmp(&c.0));
    Ok(trees.into_iter().map(|(_, t)| t).collect())
}

/// Every chiral merge tree with barcode `b`, sorted by canonical form.
pub fn enumerate_cmts(b: &Barcode) -> Result<Vec<ChiralMergeTree>, FiberError> {
    enumerate_cmts_with_jobs(b, 1)
}

pub fn enumerate_cmts_with_jobs(b: &Barcode, jobs: usize) -> Result<Vec<ChiralMergeTree>, FiberError> {
    let mut trees: Vec<(_, ChiralMergeTree)> = enumerate_trees(b, true, jobs)?
        .into_iter()
        .map(|t: ChiralMergeTree| (t.canonical_form(), t))
        .collect();
    trees.sort_by(|a, c| a.0.cmp(&c.0));
    Ok(trees.into_iter().map(|(_, t)| t).collect())
}

/// Canonical representatives of every graph-equivalence class of functions
/// with barcode `b`, in lexicographic order.
pub fn enumerate_functions(b: &Barcode) -> Result<Vec<CriticalSequence>, FiberError> {
    enumerate_functions_with_jobs(b, 1)
}

pub fn enumerate_functions_with_jobs(b: &Barcode, jobs: usize) -> Result<Vec<CriticalSequence>, FiberError> {
    require_generic(b)?;
    require_distinct_births(b)?;
    if b.len() < 2 {
        return Err(FiberError::DegenerateBarcode);
    }
    let mut functions: Vec<CriticalSequence> = enumerate_cmts_with_jobs(b, jobs)?
        .iter()
        .map(|t| cmt_to_sequence(t).expect("trees with two or more leaves have three or more vertices"))
        .collect();
    functions.sort();
    Ok(functions)
}

/// Strict containment among the bars of a barcode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentPoset {
    // below[j][k]: I_{j+1} ⊂ I_{k+1}
    below: Vec<Vec<bool>>,
}

impl ContainmentPoset {
    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// `I_j ⊂ I_k`, 1-based.
    pub fn is_below(&self, j: usize, k: usize) -> bool {
        self.below[j - 1][k - 1]
    }

    /// All pairs `(j, k)` with `I_j ⊂ I_k`, 1-based, lexicographic.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (1..=n)
            .flat_map(|j| (1..=n).map(move |k| (j, k)))
            .filter(|&(j, k)| self.is_below(j, k))
            .collect()
    }

    /// Size of the principal up-set of `j`, including `j`.
    pub fn up_set_size(&self, j: usize) -> usize {
        1 + self.below[j - 1].iter().filter(|&&x| x).count()
    }

    pub fn down_set_size(&self, k: usize) -> usize {
        1 + self.below.iter().filter(|row| row[k - 1]).count()
    }

    /// Whether some bijection of elements carries one relation onto the other.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        let n = self.len();
        if n != other.len() || self.relations().len() != other.relations().len() {
            return false;
        }
        let signature = |p: &Self, j: usize| (p.up_set_size(j), p.down_set_size(j));
        let mut image = vec![0usize; n + 1];
        let mut used = vec![false; n + 1];
        self.extend_iso(other, 1, &mut image, &mut used, &signature)
    }

    fn extend_iso(
        &self,
        other: &Self,
        j: usize,
        image: &mut [usize],
        used: &mut [bool],
        signature: &dyn Fn(&Self, usize) -> (usize, usize),
    ) -> bool {
        let n = self.len();
        if j > n {
            return true;
        }
        for k in 1..=n {
            if used[k] || signature(self, j) != signature(other, k) {
                continue;
            }
            let consistent = (1..j).all(|i| {
                self.is_below(i, j) == other.is_below(image[i], k)
                    && self.is_below(j, i) == other.is_below(k, image[i])
            });
            if !consistent {
                continue;
            }
            image[j] = k;
            used[k] = true;
            if self.extend_iso(other, j + 1, image, used, signature) {
                return true;
            }
            used[k] = false;
        }
        false
    }
}

pub fn containment_poset(b: &Barcode) -> Result<ContainmentPoset, FiberError> {
    require_generic(b)?;
    let bars = b.bars();
    let below = bars
        .iter()
        .map(|inner| bars.iter().map(|outer| inner.is_strictly_inside(outer)).collect())
        .collect();
    Ok(ContainmentPoset { below })
}

/// Whether two barcodes lie in the same stratum, i.e. have isomorphic
/// containment posets.
pub fn same_stratum(a: &Barcode, b: &Barcode) -> Result<bool, FiberError> {
    Ok(containment_poset(a)?.is_isomorphic(&containment_poset(b)?))
}
