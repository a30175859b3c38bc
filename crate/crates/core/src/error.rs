//! Error types. Every message starts with the variant name so front ends can
//! report it verbatim.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValueError {
    #[error("NonFinite: {value} is not a finite height")]
    NonFinite { value: f64 },
}

/// Failures of `CriticalSequence` validation and breakpoint reduction.
/// Indices are 0-based positions in the offending input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SequenceError {
    #[error("NonFinite: value at index {index} is not finite")]
    NonFinite { index: usize },
    #[error("TooShort: {len} critical values given, at least 3 required")]
    TooShort { len: usize },
    #[error("EvenLength: {len} critical values given, an odd count is required")]
    EvenLength { len: usize },
    #[error("DuplicateValue: value at index {index} repeats an earlier value")]
    DuplicateValue { index: usize },
    #[error("NotAlternating: index {index} is not a strict local {expected}")]
    NotAlternating { index: usize, expected: &'static str },
    #[error("Plateau: breakpoints {index} and {} have equal values", index + 1)]
    Plateau { index: usize },
    #[error("BoundaryNotMin: the endpoint at breakpoint {index} is a local maximum")]
    BoundaryNotMin { index: usize },
    #[error("BadBreakpoints: {reason}")]
    BadBreakpoints { reason: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BarcodeError {
    #[error("NonFinite: bar {index} has a non-finite endpoint")]
    NonFinite { index: usize },
    #[error("EmptyBar: bar {index} has birth >= death")]
    EmptyBar { index: usize },
    #[error("NoInfiniteBar: the barcode has no essential bar [b, inf)")]
    NoInfiniteBar,
    #[error("MultipleInfiniteBars: {count} bars have infinite death")]
    MultipleInfiniteBars { count: usize },
    #[error("BarNotContainedInEssential: bar born at {birth} is not strictly inside the essential bar")]
    BarNotContainedInEssential { birth: f64 },
    #[error("DuplicateDeath: two bars die at {death}")]
    DuplicateDeath { death: f64 },
    #[error("BirthEqualsDeath: {value} is both a birth and a death")]
    BirthEqualsDeath { value: f64 },
    #[error("DuplicateBirth: two bars are born at {birth}")]
    DuplicateBirth { birth: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeError {
    #[error("EmptyTree: a tree needs at least one vertex")]
    EmptyTree,
    #[error("HeightNotBelowParent: child at {child} is not strictly below its parent at {parent}")]
    HeightNotBelowParent { child: f64, parent: f64 },
    #[error("DuplicateHeight: height {height} occurs on two vertices")]
    DuplicateHeight { height: f64 },
    #[error("NotATree: vertex {vertex} is reached more than once or never from the root")]
    NotATree { vertex: usize },
    #[error("BadChildren: a vertex must have exactly 0 or 2 children, found {found}")]
    BadChildren { found: usize },
    #[error("TooSmall: the tree has {vertices} vertex; at least 3 are required")]
    TooSmall { vertices: usize },
    #[error("KindMismatch: cannot compare a chiral tree with an unordered tree")]
    KindMismatch,
    #[error("NonFinite: {0}")]
    Value(#[from] ValueError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PersistenceError {
    #[error("BadPair: r = {r} exceeds t = {t}")]
    BadPair { r: f64, t: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FiberError {
    #[error("NotGeneric: the barcode was not validated with the generic flag")]
    NotGeneric,
    #[error("IndexOutOfRange: bar index {index} is outside 2..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("DuplicateBirth: two bars are born at {birth}")]
    DuplicateBirth { birth: f64 },
    #[error("DegenerateBarcode: a single-bar barcode is not realised by any function")]
    DegenerateBarcode,
    #[error("Overflow: the count does not fit in 128 bits")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("CardinalityMismatch: {minima} minima and {maxima} maxima; need minima = maxima + 1 >= 2")]
    CardinalityMismatch { minima: usize, maxima: usize },
    #[error("DuplicateValue: {value} occurs more than once among the critical values")]
    DuplicateValue { value: f64 },
    #[error(transparent)]
    Barcode(#[from] BarcodeError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
}
