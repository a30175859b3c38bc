//! Merge trees of functions, the Elder map on trees, and the in-order
//! traversal that turns a chiral merge tree back into a function.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::barcode::{Bar, Barcode, BarcodeFlags};
use crate::error::TreeError;
use crate::sequence::CriticalSequence;
use crate::tree::{ChiralMergeTree, MergeTree, Tree, TreeBuilder, VertexId};

/// The chiral merge tree of `f`. Leaves are the minima in left-to-right
/// order; each maximum, taken in ascending height, joins the subtree on its
/// left (L) with the subtree on its right (R).
pub fn merge_tree_of_sequence(f: &CriticalSequence) -> ChiralMergeTree {
    struct Segment {
        first: usize,
        root: VertexId,
    }
    let values = f.values();
    let mut builder = TreeBuilder::new();
    let mut segments: Vec<Segment> = values
        .iter()
        .enumerate()
        .step_by(2)
        .map(|(position, &h)| Segment { first: position, root: builder.leaf(h) })
        .collect();

    let mut maxima: Vec<usize> = (1..values.len()).step_by(2).collect();
    maxima.sort_by_key(|&p| values[p]);
    for position in maxima {
        let left = segments.partition_point(|s| s.first < position) - 1;
        let right = segments.remove(left + 1);
        let joined = builder.join(values[position], segments[left].root, right.root);
        segments[left].root = joined;
    }
    debug_assert_eq!(segments.len(), 1);
    builder
        .finish(segments[0].root)
        .expect("merge tree of a valid critical sequence is valid")
}

/// Which leaf owns which bar, and which child survives each merge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElderDecomposition {
    /// Leaf to 1-based bar index; the leaf's height is the bar's birth.
    pub leaf_bar: BTreeMap<VertexId, usize>,
    /// Internal vertex to the bar that dies there.
    pub dying_bar: BTreeMap<VertexId, usize>,
    /// Internal vertex to the child whose chain continues upward.
    pub elder_child: BTreeMap<VertexId, VertexId>,
}

/// The Elder map on merge trees.
///
/// Works bottom-up on subtree minima: at each internal vertex the child
/// whose lowest leaf is higher loses, and its lowest leaf's bar ends at the
/// vertex height. The lowest leaf overall keeps the infinite bar.
pub fn elder_rule(t: &MergeTree) -> (Barcode, ElderDecomposition) {
    let mut lowest_leaf: Vec<Option<VertexId>> = vec![None; t.vertex_count()];
    let mut raw: Vec<(Bar, VertexId, Option<VertexId>)> = Vec::with_capacity(t.leaf_count());
    let mut elder_child = BTreeMap::new();

    for v in t.bottom_up() {
        match t.children(v) {
            None => lowest_leaf[v.index()] = Some(v),
            Some([a, b]) => {
                let (la, lb) = (lowest_leaf[a.index()].unwrap(), lowest_leaf[b.index()].unwrap());
                let (elder, elder_leaf, younger_leaf) =
                    if t.height(la) < t.height(lb) { (a, la, lb) } else { (b, lb, la) };
                raw.push((Bar::finite(t.height(younger_leaf), t.height(v)), younger_leaf, Some(v)));
                elder_child.insert(v, elder);
                lowest_leaf[v.index()] = Some(elder_leaf);
            }
        }
    }
    let global = lowest_leaf[t.root().index()].unwrap();
    raw.push((Bar::essential(t.height(global)), global, None));

    let bars: Vec<Bar> = raw.iter().map(|r| r.0).collect();
    let barcode = Barcode::validate(&bars, BarcodeFlags::MORSE)
        .expect("a merge tree with distinct heights has a Morse barcode");
    let mut decomposition = ElderDecomposition { elder_child, ..Default::default() };
    for (bar, leaf, vertex) in raw {
        let j = barcode.intervals().find(|(_, b)| **b == bar).map(|(j, _)| j).unwrap();
        decomposition.leaf_bar.insert(leaf, j);
        if let Some(v) = vertex {
            decomposition.dying_bar.insert(v, j);
        }
    }
    (barcode, decomposition)
}

/// The Elder map on chiral merge trees: forget chirality, then apply
/// [`elder_rule`].
pub fn chiral_elder_map(t: &ChiralMergeTree) -> Barcode {
    elder_rule(&t.forget_chirality()).0
}

pub fn forget_chirality(t: &ChiralMergeTree) -> MergeTree {
    t.forget_chirality()
}

/// Left subtree, vertex, right subtree.
pub fn in_order(t: &ChiralMergeTree) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(t.vertex_count());
    let mut stack = Vec::new();
    let mut cursor = Some(t.root());
    while cursor.is_some() || !stack.is_empty() {
        while let Some(v) = cursor {
            stack.push(v);
            cursor = t.left(v);
        }
        let v = stack.pop().unwrap();
        out.push(v);
        cursor = t.right(v);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

/// Address of a vertex as the word of L/R steps from the root. Words are
/// ordered lexicographically with `L < (end of word) < R`, which is the
/// in-order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord(pub Vec<Side>);

impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> Ordering {
        // Rank of a slot: L = 0, end of word = 1, R = 2.
        let slot = |w: &[Side], i: usize| match w.get(i) {
            Some(Side::L) => 0,
            None => 1,
            Some(Side::R) => 2,
        };
        let n = self.0.len().max(other.0.len());
        (0..=n)
            .map(|i| slot(&self.0, i).cmp(&slot(&other.0, i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every vertex paired with its root-to-vertex word.
pub fn addresses(t: &ChiralMergeTree) -> Vec<(VertexId, PathWord)> {
    let mut out = Vec::with_capacity(t.vertex_count());
    let mut stack = vec![(t.root(), Vec::new())];
    while let Some((v, word)) = stack.pop() {
        if let Some([l, r]) = t.children(v) {
            let mut lw = word.clone();
            lw.push(Side::L);
            let mut rw = word.clone();
            rw.push(Side::R);
            stack.push((l, lw));
            stack.push((r, rw));
        }
        out.push((v, PathWord(word)));
    }
    out
}

/// Heights of the in-order traversal, i.e. the function whose evenly spaced
/// PL graph has `t` as its chiral merge tree.
pub fn cmt_to_sequence(t: &ChiralMergeTree) -> Result<CriticalSequence, TreeError> {
    if t.vertex_count() < 3 {
        return Err(TreeError::TooSmall { vertices: t.vertex_count() });
    }
    let heights = in_order(t).into_iter().map(|v| t.height(v)).collect();
    Ok(CriticalSequence::from_heights(heights)
        .expect("in-order heights of a chiral merge tree alternate"))
}

/// Graphviz rendering with the root on top. Chiral children are pinned
/// left-to-right with invisible same-rank edges.
pub fn chiral_to_dot(t: &ChiralMergeTree) -> String {
    to_dot(t, true)
}

/// Graphviz rendering; children are listed lowest first.
pub fn merge_tree_to_dot(t: &MergeTree) -> String {
    to_dot(t, false)
}

fn to_dot<K>(t: &Tree<K>, chiral: bool) -> String {
    let mut out = String::from("digraph merge_tree {\n  node [shape=circle];\n");
    let mut nodes = String::new();
    let mut edges = String::new();
    let mut stack = vec![t.root()];
    while let Some(v) = stack.pop() {
        let _ = writeln!(nodes, "  v{} [label=\"{}\"];", v.index(), t.height(v));
        if let Some([mut a, mut b]) = t.children(v) {
            if !chiral && t.height(a) > t.height(b) {
                std::mem::swap(&mut a, &mut b);
            }
            let _ = writeln!(edges, "  v{} -> v{};", v.index(), a.index());
            let _ = writeln!(edges, "  v{} -> v{};", v.index(), b.index());
            if chiral {
                let _ = writeln!(
                    edges,
                    "  {{ rank=same; v{} -> v{} [style=invis]; }}",
                    a.index(),
                    b.index()
                );
            }
            stack.push(b);
            stack.push(a);
        }
    }
    out.push_str(&nodes);
    out.push_str(&edges);
    out.push_str("}\n");
    out
}
