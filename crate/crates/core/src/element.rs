use std::fmt;

use serde::{Deserialize, Serialize};

/// A point of a finite ground set, stored as a tuple of integer coordinates.
///
/// Scalars are length-1 tuples. The derived order is lexicographic over
/// coordinates; it is the canonical order used wherever a deterministic
/// choice between elements is needed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElement")]
pub struct GroundElement(Vec<i64>);

#[derive(Deserialize)]
struct RawElement(Vec<i64>);

impl TryFrom<RawElement> for GroundElement {
    type Error = &'static str;

    fn try_from(RawElement(coords): RawElement) -> Result<Self, Self::Error> {
        if coords.is_empty() {
            return Err("ground elements need at least one coordinate");
        }
        Ok(GroundElement(coords))
    }
}

impl GroundElement {
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "ground elements need at least one coordinate");
        GroundElement(coords)
    }

    pub fn scalar(value: i64) -> Self {
        GroundElement(vec![value])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Restriction to the given zero-based coordinate positions.
    pub(crate) fn select(&self, positions: &[usize]) -> Vec<i64> {
        positions.iter().map(|&p| self.0[p]).collect()
    }
}

impl From<Vec<i64>> for GroundElement {
    fn from(coords: Vec<i64>) -> Self {
        GroundElement::new(coords)
    }
}

impl From<i64> for GroundElement {
    fn from(value: i64) -> Self {
        GroundElement::scalar(value)
    }
}

impl fmt::Debug for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
