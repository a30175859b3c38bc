//! Barcodes: multisets of half-open bars `[birth, death)`, with `death = None`
//! standing for an infinite bar.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::BarcodeError;
use crate::height::Height;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bar {
    pub birth: Height,
    pub death: Option<Height>,
}

impl Bar {
    pub fn finite(birth: Height, death: Height) -> Self {
        Bar { birth, death: Some(death) }
    }

    pub fn essential(birth: Height) -> Self {
        Bar { birth, death: None }
    }

    pub fn is_infinite(&self) -> bool {
        self.death.is_none()
    }

    /// Whether `[r, t]` lies inside this half-open bar.
    pub fn covers(&self, r: Height, t: Height) -> bool {
        self.birth <= r && self.death.is_none_or(|d| t < d)
    }

    /// `self ⊆ other` as subsets of the real line.
    pub fn is_subset_of(&self, other: &Bar) -> bool {
        let deaths_ok = match (self.death, other.death) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        };
        other.birth <= self.birth && deaths_ok
    }

    /// Strict containment `self ⊂ other`.
    pub fn is_strictly_inside(&self, other: &Bar) -> bool {
        self.is_subset_of(other) && self != other
    }
}

// Essential bars first, then by death descending, ties by birth ascending.
fn canonical_order(a: &Bar, b: &Bar) -> Ordering {
    match (a.death, b.death) {
        (None, None) => a.birth.cmp(&b.birth),
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => y.cmp(&x).then(a.birth.cmp(&b.birth)),
    }
}

/// Which theorem hypotheses a barcode was checked against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BarcodeFlags {
    /// Exactly one infinite bar strictly containing every finite bar,
    /// pairwise distinct deaths, and no value that is both a birth and a death.
    pub generic: bool,
    /// Pairwise distinct births.
    pub distinct_births: bool,
}

impl BarcodeFlags {
    pub const GENERIC: Self = BarcodeFlags { generic: true, distinct_births: false };
    pub const MORSE: Self = BarcodeFlags { generic: true, distinct_births: true };
}

/// A validated barcode sorted canonically. Bar `I_1` (index 1) is the
/// essential bar when the barcode is generic; finite bars follow with
/// strictly decreasing deaths.
#[derive(Clone, Debug)]
pub struct Barcode {
    bars: Vec<Bar>,
    flags: BarcodeFlags,
}

impl PartialEq for Barcode {
    fn eq(&self, other: &Self) -> bool {
        self.bars == other.bars
    }
}

impl Eq for Barcode {}

impl std::hash::Hash for Barcode {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bars.hash(state);
    }
}

impl PartialOrd for Barcode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Barcode {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |b: &Bar| (b.birth, b.death.is_none(), b.death);
        self.bars.iter().map(key).cmp(other.bars.iter().map(key))
    }
}

impl Barcode {
    pub fn validate(bars: &[Bar], flags: BarcodeFlags) -> Result<Self, BarcodeError> {
        for (index, bar) in bars.iter().enumerate() {
            if let Some(death) = bar.death {
                if bar.birth >= death {
                    return Err(BarcodeError::EmptyBar { index });
                }
            }
        }
        let mut sorted = bars.to_vec();
        sorted.sort_by(canonical_order);

        if flags.generic {
            let infinite = sorted.iter().filter(|b| b.is_infinite()).count();
            match infinite {
                0 => return Err(BarcodeError::NoInfiniteBar),
                1 => {}
                count => return Err(BarcodeError::MultipleInfiniteBars { count }),
            }
            let essential = sorted[0];
            if let Some(bar) = sorted[1..].iter().find(|b| b.birth <= essential.birth) {
                return Err(BarcodeError::BarNotContainedInEssential { birth: bar.birth.value() });
            }
            if let Some(w) = sorted[1..].windows(2).find(|w| w[0].death == w[1].death) {
                return Err(BarcodeError::DuplicateDeath { death: w[0].death.unwrap().value() });
            }
            let deaths: BTreeSet<Height> = sorted.iter().filter_map(|b| b.death).collect();
            if let Some(bar) = sorted.iter().find(|b| deaths.contains(&b.birth)) {
                return Err(BarcodeError::BirthEqualsDeath { value: bar.birth.value() });
            }
        }
        if flags.distinct_births {
            if let Some(birth) = first_duplicate_birth(&sorted) {
                return Err(BarcodeError::DuplicateBirth { birth: birth.value() });
            }
        }
        Ok(Barcode { bars: sorted, flags })
    }

    /// Convenience constructor from `(birth, death)` pairs, `None` meaning infinity.
    pub fn from_pairs(pairs: &[(f64, Option<f64>)], flags: BarcodeFlags) -> Result<Self, BarcodeError> {
        let bars = pairs
            .iter()
            .enumerate()
            .map(|(index, &(b, d))| {
                let non_finite = |_| BarcodeError::NonFinite { index };
                Ok(Bar {
                    birth: Height::new(b).map_err(non_finite)?,
                    death: d.map(Height::new).transpose().map_err(non_finite)?,
                })
            })
            .collect::<Result<Vec<_>, BarcodeError>>()?;
        Self::validate(&bars, flags)
    }

    pub fn flags(&self) -> BarcodeFlags {
        self.flags
    }

    pub fn is_generic(&self) -> bool {
        self.flags.generic
    }

    /// Number of bars `N`.
    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    /// Bar `I_j`, 1-based.
    pub fn bar(&self, j: usize) -> Option<&Bar> {
        j.checked_sub(1).and_then(|i| self.bars.get(i))
    }

    /// `(j, I_j)` pairs with 1-based indices.
    pub fn intervals(&self) -> impl Iterator<Item = (usize, &Bar)> + '_ {
        self.bars.iter().enumerate().map(|(i, b)| (i + 1, b))
    }

    pub fn births(&self) -> impl Iterator<Item = Height> + '_ {
        self.bars.iter().map(|b| b.birth)
    }

    pub fn finite_deaths(&self) -> impl Iterator<Item = Height> + '_ {
        self.bars.iter().filter_map(|b| b.death)
    }

    pub fn has_distinct_births(&self) -> bool {
        first_duplicate_birth(&self.bars).is_none()
    }

    pub fn first_duplicate_birth(&self) -> Option<Height> {
        first_duplicate_birth(&self.bars)
    }

    /// Number of bars `[r, t]` lies in.
    pub fn covering_count(&self, r: Height, t: Height) -> usize {
        self.bars.iter().filter(|b| b.covers(r, t)).count()
    }

    pub fn to_json(&self) -> BarcodeJson {
        BarcodeJson { bars: self.bars.clone() }
    }
}

fn first_duplicate_birth(bars: &[Bar]) -> Option<Height> {
    let mut seen = BTreeSet::new();
    bars.iter().map(|b| b.birth).find(|&b| !seen.insert(b))
}

/// `{"bars":[{"birth":1,"death":null},{"birth":2,"death":7}]}`, null = infinity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarcodeJson {
    pub bars: Vec<Bar>,
}

impl BarcodeJson {
    pub fn validate(&self, flags: BarcodeFlags) -> Result<Barcode, BarcodeError> {
        Barcode::validate(&self.bars, flags)
    }
}
