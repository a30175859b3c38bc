//! Merge trees and chiral merge trees.
//!
//! Both are full binary trees stored in an arena. Heights strictly increase
//! toward the root and are pairwise distinct. The infinite edge above the
//! root is implicit. A [`ChiralMergeTree`] reads each vertex's children as an
//! ordered `[left, right]` pair; a [`MergeTree`] treats them as a set.

use std::collections::BTreeSet;
use std::fmt;
use std::marker::PhantomData;

use serde::{Deserialize, Serialize};

use crate::error::TreeError;
use crate::height::Height;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub height: Height,
    pub children: Option<[VertexId; 2]>,
}

impl Vertex {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }
}

/// Marker for trees whose children are ordered left/right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chiral {}

/// Marker for trees whose children are unordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unordered {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree<K> {
    vertices: Vec<Vertex>,
    root: VertexId,
    kind: PhantomData<K>,
}

pub type ChiralMergeTree = Tree<Chiral>;
pub type MergeTree = Tree<Unordered>;

/// Arena builder; `finish` checks every tree invariant.
#[derive(Clone, Debug, Default)]
pub struct TreeBuilder {
    vertices: Vec<Vertex>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaf(&mut self, height: Height) -> VertexId {
        self.push(Vertex { height, children: None })
    }

    /// Adds an internal vertex. For chiral trees `left` and `right` keep
    /// their order.
    pub fn join(&mut self, height: Height, left: VertexId, right: VertexId) -> VertexId {
        self.push(Vertex { height, children: Some([left, right]) })
    }

    fn push(&mut self, vertex: Vertex) -> VertexId {
        self.vertices.push(vertex);
        VertexId(self.vertices.len() - 1)
    }

    pub fn finish<K>(self, root: VertexId) -> Result<Tree<K>, TreeError> {
        let vertices = self.vertices;
        if vertices.is_empty() {
            return Err(TreeError::EmptyTree);
        }
        if root.0 >= vertices.len() {
            return Err(TreeError::NotATree { vertex: root.0 });
        }
        let mut visited = vec![false; vertices.len()];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut visited[v.0], true) {
                return Err(TreeError::NotATree { vertex: v.0 });
            }
            let vertex = vertices[v.0];
            if let Some(children) = vertex.children {
                for c in children {
                    let child = vertices.get(c.0).ok_or(TreeError::NotATree { vertex: c.0 })?;
                    if child.height >= vertex.height {
                        return Err(TreeError::HeightNotBelowParent {
                            child: child.height.value(),
                            parent: vertex.height.value(),
                        });
                    }
                    stack.push(c);
                }
            }
        }
        if let Some(vertex) = visited.iter().position(|&v| !v) {
            return Err(TreeError::NotATree { vertex });
        }
        let mut heights = BTreeSet::new();
        for v in &vertices {
            if !heights.insert(v.height) {
                return Err(TreeError::DuplicateHeight { height: v.height.value() });
            }
        }
        Ok(Tree { vertices, root, kind: PhantomData })
    }
}

impl<K> Tree<K> {
    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.0]
    }

    pub fn height(&self, id: VertexId) -> Height {
        self.vertices[id.0].height
    }

    pub fn children(&self, id: VertexId) -> Option<[VertexId; 2]> {
        self.vertices[id.0].children
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_leaf()).count()
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    /// Vertex ids sorted by ascending height; every child precedes its parent.
    pub fn bottom_up(&self) -> Vec<VertexId> {
        let mut ids: Vec<VertexId> = self.ids().collect();
        ids.sort_by_key(|&v| self.height(v));
        ids
    }

    /// Copy of this tree with vertex ids permuted: vertex `v` moves to slot
    /// `perm[v]`. The tree itself is unchanged.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.vertices.len());
        let mut vertices = self.vertices.clone();
        for (old, vertex) in self.vertices.iter().enumerate() {
            vertices[perm[old]] = Vertex {
                height: vertex.height,
                children: vertex.children.map(|cs| cs.map(|c| VertexId(perm[c.0]))),
            };
        }
        Tree { vertices, root: VertexId(perm[self.root.0]), kind: PhantomData }
    }

    fn encode(&self, out: &mut Vec<Token>, ordered: bool) {
        enum Step {
            Enter(VertexId),
            Close,
        }
        let mut stack = vec![Step::Enter(self.root)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Close => out.push(Token::Close),
                Step::Enter(v) => {
                    out.push(Token::Open);
                    out.push(Token::Height(self.height(v)));
                    stack.push(Step::Close);
                    if let Some([mut a, mut b]) = self.children(v) {
                        if !ordered && self.height(a) > self.height(b) {
                            std::mem::swap(&mut a, &mut b);
                        }
                        stack.push(Step::Enter(b));
                        stack.push(Step::Enter(a));
                    }
                }
            }
        }
    }
}

impl ChiralMergeTree {
    pub fn left(&self, id: VertexId) -> Option<VertexId> {
        self.children(id).map(|[l, _]| l)
    }

    pub fn right(&self, id: VertexId) -> Option<VertexId> {
        self.children(id).map(|[_, r]| r)
    }

    /// Encodes the ordered tree verbatim.
    pub fn canonical_form(&self) -> CanonicalEncoding {
        let mut tokens = Vec::with_capacity(3 * self.vertex_count());
        self.encode(&mut tokens, true);
        CanonicalEncoding(tokens)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Drops the left/right labels.
    pub fn forget_chirality(&self) -> MergeTree {
        Tree { vertices: self.vertices.clone(), root: self.root, kind: PhantomData }
    }

    pub fn to_json(&self) -> ChiralNodeJson {
        fn go(t: &ChiralMergeTree, v: VertexId) -> ChiralNodeJson {
            let (left, right) = match t.children(v) {
                Some([l, r]) => (Some(Box::new(go(t, l))), Some(Box::new(go(t, r)))),
                None => (None, None),
            };
            ChiralNodeJson { height: t.height(v), left, right }
        }
        go(self, self.root)
    }
}

impl MergeTree {
    /// Encodes the tree with the children of every vertex sorted by height.
    pub fn canonical_form(&self) -> CanonicalEncoding {
        let mut tokens = Vec::with_capacity(3 * self.vertex_count());
        self.encode(&mut tokens, false);
        CanonicalEncoding(tokens)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Children listed lowest first, matching the canonical form.
    pub fn to_json(&self) -> MergeNodeJson {
        fn go(t: &MergeTree, v: VertexId) -> MergeNodeJson {
            let children = t.children(v).map(|[a, b]| {
                let (lo, hi) = if t.height(a) < t.height(b) { (a, b) } else { (b, a) };
                vec![go(t, lo), go(t, hi)]
            });
            MergeNodeJson { height: t.height(v), children }
        }
        go(self, self.root)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Token {
    Open,
    Close,
    Height(Height),
}

/// Parenthesised encoding of a tree with heights, e.g. `(7 (1) (2))`.
/// Equal encodings iff isomorphic trees of the same kind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalEncoding(Vec<Token>);

impl fmt::Display for CanonicalEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut prev_open = true;
        for token in &self.0 {
            match token {
                Token::Open => {
                    if !prev_open {
                        f.write_str(" ")?;
                    }
                    f.write_str("(")?;
                    prev_open = true;
                }
                Token::Close => {
                    f.write_str(")")?;
                    prev_open = false;
                }
                Token::Height(h) => {
                    write!(f, "{h}")?;
                    prev_open = false;
                }
            }
        }
        Ok(())
    }
}

/// Either kind of tree, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTree {
    Unordered(MergeTree),
    Chiral(ChiralMergeTree),
}

impl AnyTree {
    /// Reads `{"height", "left", "right"}` (chiral) or `{"height", "children"}`
    /// (unordered). A bare leaf is read as chiral.
    pub fn from_json_value(value: serde_json::Value) -> Result<Self, AnyTreeParseError> {
        let is_unordered = value.get("children").is_some();
        if is_unordered {
            let node: MergeNodeJson = serde_json::from_value(value)?;
            Ok(AnyTree::Unordered(node.build()?))
        } else {
            let node: ChiralNodeJson = serde_json::from_value(value)?;
            Ok(AnyTree::Chiral(node.build()?))
        }
    }

    pub fn canonical_form(&self) -> CanonicalEncoding {
        match self {
            AnyTree::Unordered(t) => t.canonical_form(),
            AnyTree::Chiral(t) => t.canonical_form(),
        }
    }

    pub fn to_unordered(&self) -> MergeTree {
        match self {
            AnyTree::Unordered(t) => t.clone(),
            AnyTree::Chiral(t) => t.forget_chirality(),
        }
    }
}

/// Isomorphism test across the two kinds; both trees must be the same kind.
pub fn is_isomorphic(a: &AnyTree, b: &AnyTree) -> Result<bool, TreeError> {
    match (a, b) {
        (AnyTree::Unordered(x), AnyTree::Unordered(y)) => Ok(x.is_isomorphic(y)),
        (AnyTree::Chiral(x), AnyTree::Chiral(y)) => Ok(x.is_isomorphic(y)),
        _ => Err(TreeError::KindMismatch),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AnyTreeParseError {
    #[error("BadJson: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// `{"height":7,"left":{"height":1},"right":{"height":2}}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiralNodeJson {
    pub height: Height,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Box<ChiralNodeJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Box<ChiralNodeJson>>,
}

impl ChiralNodeJson {
    pub fn build(&self) -> Result<ChiralMergeTree, TreeError> {
        fn go(node: &ChiralNodeJson, b: &mut TreeBuilder) -> Result<VertexId, TreeError> {
            match (&node.left, &node.right) {
                (None, None) => Ok(b.leaf(node.height)),
                (Some(l), Some(r)) => {
                    let l = go(l, b)?;
                    let r = go(r, b)?;
                    Ok(b.join(node.height, l, r))
                }
                _ => Err(TreeError::BadChildren { found: 1 }),
            }
        }
        let mut builder = TreeBuilder::new();
        let root = go(self, &mut builder)?;
        builder.finish(root)
    }
}

/// `{"height":7,"children":[{"height":1},{"height":2}]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MergeNodeJson {
    pub height: Height,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub children: Option<Vec<MergeNodeJson>>,
}

impl MergeNodeJson {
    pub fn build(&self) -> Result<MergeTree, TreeError> {
        fn go(node: &MergeNodeJson, b: &mut TreeBuilder) -> Result<VertexId, TreeError> {
            match node.children.as_deref() {
                None | Some([]) => Ok(b.leaf(node.height)),
                Some([x, y]) => {
                    let x = go(x, b)?;
                    let y = go(y, b)?;
                    Ok(b.join(node.height, x, y))
                }
                Some(other) => Err(TreeError::BadChildren { found: other.len() }),
            }
        }
        let mut builder = TreeBuilder::new();
        let root = go(self, &mut builder)?;
        builder.finish(root)
    }
}
