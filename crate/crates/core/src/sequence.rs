//! Critical-value sequences: the canonical representative of a Morse-like
//! function on `[0, 1]` up to orientation-preserving reparametrisation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::SequenceError;
use crate::height::Height;

/// Alternating sequence `min, max, min, ..., max, min` of pairwise distinct
/// heights, of odd length at least 3.
///
/// Even positions (0-based) are local minima, odd positions local maxima.
/// The first and last entries are minima, which encodes boundary minima at
/// `x = 0` and `x = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CriticalSequence(Vec<Height>);

impl CriticalSequence {
    /// Validates raw values as a critical sequence.
    pub fn new(values: &[f64]) -> Result<Self, SequenceError> {
        let heights = values
            .iter()
            .enumerate()
            .map(|(index, &v)| Height::new(v).map_err(|_| SequenceError::NonFinite { index }))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_heights(heights)
    }

    pub fn from_heights(values: Vec<Height>) -> Result<Self, SequenceError> {
        let len = values.len();
        if len.is_multiple_of(2) {
            return Err(SequenceError::EvenLength { len });
        }
        if len < 3 {
            return Err(SequenceError::TooShort { len });
        }
        let mut seen = BTreeSet::new();
        for (index, &value) in values.iter().enumerate() {
            if !seen.insert(value) {
                return Err(SequenceError::DuplicateValue { index });
            }
            if index == 0 {
                continue;
            }
            let prev = values[index - 1];
            let is_max_slot = index % 2 == 1;
            if is_max_slot && value <= prev {
                return Err(SequenceError::NotAlternating { index, expected: "maximum" });
            }
            if !is_max_slot && value >= prev {
                return Err(SequenceError::NotAlternating { index, expected: "minimum" });
            }
        }
        Ok(CriticalSequence(values))
    }

    pub fn values(&self) -> &[Height] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of local minima, `k` for a sequence of length `2k - 1`.
    pub fn minima_count(&self) -> usize {
        self.0.len().div_ceil(2)
    }

    pub fn minima(&self) -> impl Iterator<Item = Height> + '_ {
        self.0.iter().copied().step_by(2)
    }

    pub fn maxima(&self) -> impl Iterator<Item = Height> + '_ {
        self.0.iter().copied().skip(1).step_by(2)
    }

    pub fn is_minimum_position(position: usize) -> bool {
        position.is_multiple_of(2)
    }

    /// The mirrored function `x -> f(1 - x)`. Same barcode, different class.
    pub fn reversed(&self) -> Self {
        CriticalSequence(self.0.iter().rev().copied().collect())
    }

    /// Evenly spaced PL graph: breakpoint `i` at `x = i / (n - 1)`.
    pub fn breakpoints(&self) -> Vec<(f64, Height)> {
        let last = (self.0.len() - 1) as f64;
        self.0
            .iter()
            .enumerate()
            .map(|(i, &y)| (i as f64 / last, y))
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|h| h.value()).collect()
    }
}

/// Projects a PL graph given by its breakpoints onto its graph-equivalence
/// class by dropping interior breakpoints that are not strict extrema.
///
/// Breakpoints must have strictly increasing `x` running from exactly 0 to
/// exactly 1. Plateaus and boundary maxima are rejected, not repaired.
pub fn reduce_breakpoints(points: &[(f64, f64)]) -> Result<CriticalSequence, SequenceError> {
    if points.len() < 2 {
        return Err(SequenceError::BadBreakpoints {
            reason: format!("{} breakpoints given, at least 2 required", points.len()),
        });
    }
    for (index, &(x, y)) in points.iter().enumerate() {
        if !x.is_finite() || !y.is_finite() {
            return Err(SequenceError::NonFinite { index });
        }
    }
    if points[0].0 != 0.0 || points[points.len() - 1].0 != 1.0 {
        return Err(SequenceError::BadBreakpoints {
            reason: "breakpoints must start at x = 0 and end at x = 1".into(),
        });
    }
    if let Some(index) = points.windows(2).position(|w| w[0].0 >= w[1].0) {
        return Err(SequenceError::BadBreakpoints {
            reason: format!("x is not strictly increasing at breakpoint {}", index + 1),
        });
    }
    if let Some(index) = points.windows(2).position(|w| w[0].1 == w[1].1) {
        return Err(SequenceError::Plateau { index });
    }

    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let last = ys.len() - 1;
    if ys[0] > ys[1] {
        return Err(SequenceError::BoundaryNotMin { index: 0 });
    }
    if ys[last] > ys[last - 1] {
        return Err(SequenceError::BoundaryNotMin { index: last });
    }

    let mut kept = Vec::with_capacity(ys.len());
    kept.push(ys[0]);
    for i in 1..last {
        let (prev, cur, next) = (ys[i - 1], ys[i], ys[i + 1]);
        if (cur > prev && cur > next) || (cur < prev && cur < next) {
            kept.push(cur);
        }
    }
    kept.push(ys[last]);
    CriticalSequence::new(&kept)
}

/// JSON form of a function: `{"critical_values": [...]}` and/or
/// `{"breakpoints": [[x, y], ...]}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FunctionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breakpoints: Option<Vec<(f64, f64)>>,
}

impl FunctionJson {
    /// Resolves to a critical sequence. When both fields are present the
    /// breakpoints must reduce to the given critical values.
    pub fn resolve(&self) -> Result<CriticalSequence, SequenceError> {
        match (&self.critical_values, &self.breakpoints) {
            (Some(values), None) => CriticalSequence::new(values),
            (None, Some(points)) => reduce_breakpoints(points),
            (Some(values), Some(points)) => {
                let seq = CriticalSequence::new(values)?;
                if reduce_breakpoints(points)? != seq {
                    return Err(SequenceError::BadBreakpoints {
                        reason: "breakpoints do not reduce to the given critical values".into(),
                    });
                }
                Ok(seq)
            }
            (None, None) => Err(SequenceError::BadBreakpoints {
                reason: "expected \"critical_values\" or \"breakpoints\"".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(values: &[f64]) -> CriticalSequence {
        CriticalSequence::new(values).unwrap()
    }

    #[test]
    fn minimal_valid_sequence() {
        let s = seq(&[1.0, 7.0, 2.0]);
        assert_eq!(s.minima().collect::<Vec<_>>(), vec![Height::from(1), Height::from(2)]);
        assert_eq!(s.maxima().collect::<Vec<_>>(), vec![Height::from(7)]);
        assert_eq!(s.minima_count(), 2);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(CriticalSequence::new(&[1.0, 7.0]), Err(SequenceError::EvenLength { len: 2 }));
        assert_eq!(CriticalSequence::new(&[]), Err(SequenceError::EvenLength { len: 0 }));
        assert_eq!(CriticalSequence::new(&[1.0]), Err(SequenceError::TooShort { len: 1 }));
        assert_eq!(
            CriticalSequence::new(&[1.0, 7.0, 7.0]),
            Err(SequenceError::DuplicateValue { index: 2 })
        );
        assert_eq!(
            CriticalSequence::new(&[3.0, 1.0, 4.0]),
            Err(SequenceError::NotAlternating { index: 1, expected: "maximum" })
        );
        assert_eq!(
            CriticalSequence::new(&[1.0, 7.0, 8.0]),
            Err(SequenceError::NotAlternating { index: 2, expected: "minimum" })
        );
        // 1 repeats non-adjacently
        assert_eq!(
            CriticalSequence::new(&[1.0, 7.0, 2.0, 5.0, 1.0]),
            Err(SequenceError::DuplicateValue { index: 4 })
        );
        assert_eq!(
            CriticalSequence::new(&[1.0, f64::NAN, 2.0]),
            Err(SequenceError::NonFinite { index: 1 })
        );
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_breakpoints(&[(0.0, 1.0), (0.5, 7.0), (1.0, 2.0)]).unwrap(), seq(&[1.0, 7.0, 2.0]));
        assert_eq!(
            reduce_breakpoints(&[(0.0, 1.0), (0.25, 4.0), (0.5, 7.0), (1.0, 2.0)]).unwrap(),
            seq(&[1.0, 7.0, 2.0])
        );
        let mirrored = reduce_breakpoints(&[(0.0, 2.0), (0.5, 7.0), (1.0, 1.0)]).unwrap();
        assert_eq!(mirrored, seq(&[2.0, 7.0, 1.0]));
        assert_ne!(mirrored, seq(&[1.0, 7.0, 2.0]));
        assert_eq!(
            reduce_breakpoints(&[(0.0, 5.0), (1.0, 0.0)]),
            Err(SequenceError::BoundaryNotMin { index: 0 })
        );
    }

    #[test]
    fn reduce_errors() {
        assert_eq!(
            reduce_breakpoints(&[(0.0, 1.0), (0.3, 7.0), (0.6, 7.0), (1.0, 2.0)]),
            Err(SequenceError::Plateau { index: 1 })
        );
        assert_eq!(
            reduce_breakpoints(&[(0.0, 1.0), (0.5, 7.0), (1.0, 9.0)]),
            Err(SequenceError::BoundaryNotMin { index: 2 })
        );
        assert!(matches!(
            reduce_breakpoints(&[(0.0, 1.0), (0.5, 7.0), (0.5, 2.0), (1.0, 1.5)]),
            Err(SequenceError::BadBreakpoints { .. })
        ));
        assert!(matches!(
            reduce_breakpoints(&[(0.1, 1.0), (0.5, 7.0), (1.0, 2.0)]),
            Err(SequenceError::BadBreakpoints { .. })
        ));
        assert!(matches!(reduce_breakpoints(&[(0.0, 1.0)]), Err(SequenceError::BadBreakpoints { .. })));
        // a monotone interior point cannot rescue a duplicated extremum
        assert_eq!(
            reduce_breakpoints(&[(0.0, 1.0), (0.2, 7.0), (0.4, 2.0), (0.6, 7.0), (1.0, 3.0)]),
            Err(SequenceError::DuplicateValue { index: 3 })
        );
    }

    #[test]
    fn function_json_resolution() {
        let both = FunctionJson {
            critical_values: Some(vec![1.0, 7.0, 2.0]),
            breakpoints: Some(vec![(0.0, 1.0), (0.5, 7.0), (1.0, 2.0)]),
        };
        assert_eq!(both.resolve().unwrap(), seq(&[1.0, 7.0, 2.0]));
        let clash = FunctionJson {
            critical_values: Some(vec![2.0, 7.0, 1.0]),
            ..both
        };
        assert!(clash.resolve().is_err());
        assert!(FunctionJson::default().resolve().is_err());
    }
}
