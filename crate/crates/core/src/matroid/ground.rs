use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::mask::{SubsetMask, MAX_ELEMENTS};

/// Ordered, distinct element labels. A label's position is its bit in a [`SubsetMask`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels, index })
    }

    /// Ground set labelled `"1"`, `"2"`, ..., `"n"`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Position of `label`. The expansion alias `e#0` resolves to `e` unless an
    /// element is literally named `e#0`.
    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied().or_else(|| {
            label
                .strip_suffix("#0")
                .and_then(|base| self.index.get(base).copied())
        })
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetMask> {
        labels
            .iter()
            .map(|l| {
                self.position(l.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
            })
            .collect()
    }

    /// Parses a comma-separated label list such as `"1,2,3"`; blank input is the empty set.
    pub fn parse_set(&self, text: &str) -> Result<SubsetMask> {
        let parts: Vec<&str> = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        self.mask_of(&parts)
    }

    pub fn labels_of(&self, set: SubsetMask) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn same_elements(&self, other: &GroundSet) -> bool {
        self.len() == other.len() && other.labels.iter().all(|l| self.index.contains_key(l))
    }

    /// Maps a mask over `other`'s positions onto this ground set's positions.
    pub(crate) fn translate(&self, other: &GroundSet, set: SubsetMask) -> Result<SubsetMask> {
        set.iter()
            .map(|i| {
                self.position(other.label(i))
                    .ok_or_else(|| Error::UnknownLabel(other.label(i).to_string()))
            })
            .collect()
    }

    pub(crate) fn sub_ground(&self, keep: SubsetMask) -> GroundSet {
        GroundSet::new(keep.iter().map(|i| self.labels[i].clone()))
            .expect("subset of a valid ground set")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_aliases() {
        let g = GroundSet::new(["1", "1#1", "2"]).unwrap();
        assert_eq!(g.position("1#1"), Some(1));
        assert_eq!(g.position("1#0"), Some(0));
        assert_eq!(g.position("3"), None);
        assert_eq!(g.parse_set("1#0, 2").unwrap(), SubsetMask(0b101));
        assert!(matches!(
            GroundSet::new(["a", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
        let literal = GroundSet::new(["x", "x#0"]).unwrap();
        assert_eq!(literal.position("x#0"), Some(1));
    }
}
