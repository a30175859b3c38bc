//! Degree-0 persistent homology of functions on the unit interval, and the
//! inverse problem: which functions, merge trees and chiral merge trees share
//! a given barcode.
//!
//! A Morse-like function on `[0, 1]` is represented up to reparametrisation by
//! its [`CriticalSequence`]. [`barcode_of_sequence`] computes its barcode by
//! an Elder-rule sweep. [`merge_tree_of_sequence`] builds its chiral merge
//! tree, [`elder_rule`] maps merge trees to barcodes, and [`fiber`] counts
//! and lists everything over a barcode. The [`oracle`] module checks those
//! counts by exhaustive search.
//!
//! ```
//! use elder_core::{fiber, Barcode, BarcodeFlags};
//!
//! let b = Barcode::from_pairs(
//!     &[(1.0, None), (2.0, Some(7.0)), (3.0, Some(6.0)), (4.0, Some(5.0))],
//!     BarcodeFlags::MORSE,
//! )
//! .unwrap();
//! assert_eq!(fiber::count_cmts(&b), Ok(48));
//! assert_eq!(fiber::count_merge_trees(&b), Ok(6));
//! ```

pub mod barcode;
pub mod elder;
pub mod error;
pub mod fiber;
pub mod height;
pub mod oracle;
pub mod persistence;
pub mod sequence;
pub mod tree;

pub use barcode::{Bar, Barcode, BarcodeFlags, BarcodeJson};
pub use elder::{
    chiral_elder_map, cmt_to_sequence, elder_rule, forget_chirality, in_order, merge_tree_of_sequence,
    ElderDecomposition, PathWord, Side,
};
pub use error::{BarcodeError, FiberError, OracleError, PersistenceError, SequenceError, TreeError, ValueError};
pub use height::Height;
pub use persistence::{barcode_of_sequence, graph_equivalent, rank, Persistence};
pub use sequence::{reduce_breakpoints, CriticalSequence, FunctionJson};
pub use tree::{
    is_isomorphic, AnyTree, CanonicalEncoding, ChiralMergeTree, ChiralNodeJson, MergeNodeJson, MergeTree,
    TreeBuilder, VertexId,
};
