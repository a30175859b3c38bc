//! Brute-force fibers: try every arrangement of the critical values and keep
//! the ones whose sweep barcode matches. Uses only sequence validation and
//! [`barcode_of_sequence`], never the fiber module, so it can check it.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;

use crate::barcode::Barcode;
use crate::error::{FiberError, OracleError};
use crate::fiber;
use crate::height::Height;
use crate::persistence::barcode_of_sequence;
use crate::sequence::CriticalSequence;

/// Every critical sequence with exactly these minima and maxima, sorted.
pub fn all_functions(minima: &[Height], maxima: &[Height]) -> Result<Vec<CriticalSequence>, OracleError> {
    if minima.len() != maxima.len() + 1 || minima.len() < 2 {
        return Err(OracleError::CardinalityMismatch { minima: minima.len(), maxima: maxima.len() });
    }
    let mut seen = BTreeSet::new();
    if let Some(dup) = minima.iter().chain(maxima).find(|&&v| !seen.insert(v)) {
        return Err(OracleError::DuplicateValue { value: dup.value() });
    }

    let max_orders: Vec<Vec<Height>> = maxima.iter().copied().permutations(maxima.len()).collect();
    let mut out = Vec::new();
    for mins in minima.iter().copied().permutations(minima.len()) {
        for maxs in &max_orders {
            let interleaved: Vec<Height> =
                mins.iter().copied().interleave(maxs.iter().copied()).collect();
            if let Ok(f) = CriticalSequence::from_heights(interleaved) {
                out.push(f);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn fiber_domain(b: &Barcode) -> Result<Vec<CriticalSequence>, OracleError> {
    if !b.is_generic() {
        return Err(FiberError::NotGeneric.into());
    }
    if let Some(birth) = b.first_duplicate_birth() {
        return Err(FiberError::DuplicateBirth { birth: birth.value() }.into());
    }
    if b.len() < 2 {
        return Err(FiberError::DegenerateBarcode.into());
    }
    let minima: Vec<Height> = b.births().collect();
    let maxima: Vec<Height> = b.finite_deaths().collect();
    all_functions(&minima, &maxima)
}

/// Every function with barcode `b`, found by exhaustive search.
pub fn brute_fiber(b: &Barcode) -> Result<Vec<CriticalSequence>, OracleError> {
    Ok(fiber_domain(b)?
        .into_iter()
        .filter(|f| barcode_of_sequence(f).barcode == *b)
        .collect())
}

/// Groups all functions on the given critical values by their barcode.
pub fn partition_by_barcode(functions: &[CriticalSequence]) -> BTreeMap<Barcode, Vec<CriticalSequence>> {
    let mut fibers: BTreeMap<Barcode, Vec<CriticalSequence>> = BTreeMap::new();
    for f in functions {
        fibers.entry(barcode_of_sequence(f).barcode).or_default().push(f.clone());
    }
    fibers
}

/// Counts from every route for one barcode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub formula_cmt_count: u128,
    pub enumerated_cmt_count: u128,
    pub brute_count: u128,
    pub formula_mt_count: u128,
    pub enumerated_mt_count: u128,
    pub dedup_mt_from_cmts: u128,
    pub all_equal: bool,
    /// Functions on the barcode's critical values.
    pub partition_total: u128,
    /// Barcodes arising from those functions.
    pub partition_fibers: u128,
    /// Sum of fiber sizes over the arising barcodes.
    pub partition_sum: u128,
    pub partition_check: bool,
    /// Every arising fiber has the size the closed formula predicts.
    pub partition_formula_check: bool,
}

pub fn verify(b: &Barcode) -> Result<VerifyReport, OracleError> {
    let domain = fiber_domain(b)?;
    let brute: Vec<&CriticalSequence> =
        domain.iter().filter(|f| barcode_of_sequence(f).barcode == *b).collect();

    let formula_cmt_count = fiber::count_cmts(b)?;
    let formula_mt_count = fiber::count_merge_trees(b)?;
    let cmts = fiber::enumerate_cmts(b)?;
    let mts = fiber::enumerate_merge_trees(b)?;
    let dedup: BTreeSet<_> = cmts.iter().map(|t| t.forget_chirality().canonical_form()).collect();

    let enumerated_cmt_count = cmts.len() as u128;
    let brute_count = brute.len() as u128;
    let enumerated_mt_count = mts.len() as u128;
    let dedup_mt_from_cmts = dedup.len() as u128;
    let all_equal = formula_cmt_count == enumerated_cmt_count
        && enumerated_cmt_count == brute_count
        && formula_mt_count == enumerated_mt_count
        && enumerated_mt_count == dedup_mt_from_cmts;

    let fibers = partition_by_barcode(&domain);
    let partition_sum: u128 = fibers.values().map(|f| f.len() as u128).sum();
    let partition_formula_check = fibers
        .iter()
        .all(|(barcode, fs)| fiber::count_cmts(barcode) == Ok(fs.len() as u128));

    Ok(VerifyReport {
        formula_cmt_count,
        enumerated_cmt_count,
        brute_count,
        formula_mt_count,
        enumerated_mt_count,
        dedup_mt_from_cmts,
        all_equal,
        partition_total: domain.len() as u128,
        partition_fibers: fibers.len() as u128,
        partition_sum,
        partition_check: partition_sum == domain.len() as u128,
        partition_formula_check,
    })
}
