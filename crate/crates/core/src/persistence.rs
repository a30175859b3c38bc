//! Degree-0 persistence of a function on the interval by a sublevel sweep.
//!
//! Live components of the sublevel set are kept in left-to-right order. A
//! maximum always joins exactly the two components on either side of it, and
//! the one born later dies there.

use std::collections::BTreeMap;

use crate::barcode::{Bar, Barcode, BarcodeFlags};
use crate::error::PersistenceError;
use crate::height::Height;
use crate::sequence::CriticalSequence;

#[derive(Clone, Copy, Debug)]
struct Component {
    birth: Height,
    birth_position: usize,
    first: usize,
    last: usize,
}

/// One merge performed by the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MergeEvent {
    pub level: Height,
    pub survivor_birth: Height,
    pub dying_birth: Height,
}

#[derive(Clone, Debug)]
pub struct Persistence {
    pub barcode: Barcode,
    /// Minimum position (0-based index into the sequence) to its 1-based bar index.
    pub leaf_to_bar: BTreeMap<usize, usize>,
    /// Merges in the order they happened.
    pub events: Vec<MergeEvent>,
}

/// Computes the barcode of `f` together with the bar owned by each minimum.
pub fn barcode_of_sequence(f: &CriticalSequence) -> Persistence {
    let values = f.values();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| values[i]);

    let mut live: Vec<Component> = Vec::with_capacity(f.minima_count());
    let mut emitted: Vec<(Bar, usize)> = Vec::with_capacity(f.minima_count());
    let mut events = Vec::with_capacity(f.minima_count() - 1);

    for position in order {
        let level = values[position];
        if CriticalSequence::is_minimum_position(position) {
            let slot = live.partition_point(|c| c.first < position);
            live.insert(
                slot,
                Component { birth: level, birth_position: position, first: position, last: position },
            );
            continue;
        }
        // Both neighbours are lower minima, so they are already live.
        let left_slot = live.partition_point(|c| c.first < position) - 1;
        let (left, right) = (live[left_slot], live[left_slot + 1]);
        debug_assert_eq!(left.last + 1, position);
        debug_assert_eq!(right.first, position + 1);
        let (elder, younger) = if left.birth < right.birth { (left, right) } else { (right, left) };
        emitted.push((Bar::finite(younger.birth, level), younger.birth_position));
        events.push(MergeEvent { level, survivor_birth: elder.birth, dying_birth: younger.birth });
        live[left_slot] = Component { first: left.first, last: right.last, ..elder };
        live.remove(left_slot + 1);
    }
    debug_assert_eq!(live.len(), 1);
    let survivor = live[0];
    emitted.push((Bar::essential(survivor.birth), survivor.birth_position));

    let bars: Vec<Bar> = emitted.iter().map(|(bar, _)| *bar).collect();
    let barcode = Barcode::validate(&bars, BarcodeFlags::MORSE)
        .expect("sweep output of a valid critical sequence is a Morse barcode");
    let leaf_to_bar = emitted
        .iter()
        .map(|(bar, position)| {
            let index = barcode
                .intervals()
                .find(|(_, b)| *b == bar)
                .map(|(j, _)| j)
                .expect("emitted bar is in the barcode");
            (*position, index)
        })
        .collect();
    Persistence { barcode, leaf_to_bar, events }
}

/// Rank of the map from the sublevel set at `r` into the sublevel set at `t`:
/// the number of components at level `t` that contain some point at level `r`.
///
/// Computed directly from the sequence, independently of the barcode.
pub fn rank(f: &CriticalSequence, r: Height, t: Height) -> Result<usize, PersistenceError> {
    if r > t {
        return Err(PersistenceError::BadPair { r: r.value(), t: t.value() });
    }
    // Components at level t are the maximal runs of breakpoints at or below t.
    let mut count = 0;
    let mut in_run = false;
    let mut run_hits_r = false;
    for &y in f.values() {
        if y <= t {
            in_run = true;
            run_hits_r |= y <= r;
        } else {
            if in_run && run_hits_r {
                count += 1;
            }
            in_run = false;
            run_hits_r = false;
        }
    }
    if in_run && run_hits_r {
        count += 1;
    }
    Ok(count)
}

/// Whether two functions are graph-equivalent. The critical sequence is the
/// canonical representative of the class, so this is plain equality.
pub fn graph_equivalent(f: &CriticalSequence, g: &CriticalSequence) -> bool {
    f == g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::reduce_breakpoints;

    fn seq(values: &[f64]) -> CriticalSequence {
        CriticalSequence::new(values).unwrap()
    }

    fn bars(p: &Persistence) -> Vec<(f64, Option<f64>)> {
        p.barcode.bars().iter().map(|b| (b.birth.value(), b.death.map(Height::value))).collect()
    }

    fn h(v: f64) -> Height {
        Height::new(v).unwrap()
    }

    #[test]
    fn two_minima() {
        let p = barcode_of_sequence(&seq(&[1.0, 7.0, 2.0]));
        assert_eq!(bars(&p), vec![(1.0, None), (2.0, Some(7.0))]);
        assert_eq!(p.leaf_to_bar, BTreeMap::from([(0, 1), (2, 2)]));

        let q = barcode_of_sequence(&seq(&[2.0, 7.0, 1.0]));
        assert_eq!(q.barcode, p.barcode);
        assert_eq!(q.leaf_to_bar, BTreeMap::from([(0, 2), (2, 1)]));
    }

    #[test]
    fn four_minima() {
        let staircase = barcode_of_sequence(&seq(&[1.0, 7.0, 2.0, 6.0, 3.0, 5.0, 4.0]));
        assert_eq!(
            bars(&staircase),
            vec![(1.0, None), (2.0, Some(7.0)), (3.0, Some(6.0)), (4.0, Some(5.0))]
        );
        // 3 dies at 5, 2 at 6, 4 at 7
        let mixed = barcode_of_sequence(&seq(&[1.0, 5.0, 3.0, 6.0, 2.0, 7.0, 4.0]));
        assert_eq!(
            bars(&mixed),
            vec![(1.0, None), (4.0, Some(7.0)), (2.0, Some(6.0)), (3.0, Some(5.0))]
        );
        assert_eq!(mixed.leaf_to_bar, BTreeMap::from([(0, 1), (2, 4), (4, 3), (6, 2)]));
    }

    #[test]
    fn elder_survives_every_merge() {
        let p = barcode_of_sequence(&seq(&[3.0, 9.0, 1.0, 5.0, 4.0, 8.0, 2.0]));
        assert_eq!(p.events.len(), 3);
        assert!(p.events.iter().all(|e| e.dying_birth > e.survivor_birth));
    }

    #[test]
    fn rank_examples() {
        let f = seq(&[1.0, 7.0, 2.0]);
        assert_eq!(rank(&f, h(3.0), h(8.0)), Ok(1));
        assert_eq!(rank(&f, h(3.0), h(5.0)), Ok(2));
        assert_eq!(rank(&f, h(0.0), h(0.0)), Ok(0));
        assert_eq!(rank(&f, h(1.5), h(5.0)), Ok(1));
        assert_eq!(rank(&f, h(1.0), h(7.0)), Ok(1));
        assert_eq!(rank(&f, h(5.0), h(3.0)), Err(PersistenceError::BadPair { r: 5.0, t: 3.0 }));
    }

    #[test]
    fn graph_equivalence() {
        let f = seq(&[1.0, 7.0, 2.0]);
        assert!(graph_equivalent(&f, &f));
        assert!(!graph_equivalent(&f, &seq(&[2.0, 7.0, 1.0])));
        let a = reduce_breakpoints(&[(0.0, 1.0), (0.5, 7.0), (1.0, 2.0)]).unwrap();
        let b = reduce_breakpoints(&[(0.0, 1.0), (0.1, 3.0), (0.9, 7.0), (0.95, 4.0), (1.0, 2.0)]).unwrap();
        assert!(graph_equivalent(&a, &b));
    }
}
