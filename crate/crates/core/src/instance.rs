//! Input string collections and the containment filtering every solver requires.

use crate::subset::MAX_VERTICES;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("empty instance")]
    EmptyInstance,
    #[error("empty string at position {0}")]
    EmptyString(usize),
    #[error("instance has {0} strings after filtering; at most {MAX_VERTICES} supported")]
    TooManyStrings(usize),
    #[error("string {index} contains byte {byte:#04x}; only [A-Za-z0-9] is supported")]
    BadCharacter { index: usize, byte: u8 },
}

/// A collection of non-empty input strings. Solvers assume the collection is
/// preprocessed (no duplicates, no string contained in another); build one
/// through [`preprocess`] unless the input is known clean.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    strings: Vec<String>,
}

impl Instance {
    pub fn new(strings: Vec<String>) -> Result<Instance, InstanceError> {
        if strings.is_empty() {
            return Err(InstanceError::EmptyInstance);
        }
        if let Some(i) = strings.iter().position(|s| s.is_empty()) {
            return Err(InstanceError::EmptyString(i));
        }
        if strings.len() > MAX_VERTICES {
            return Err(InstanceError::TooManyStrings(strings.len()));
        }
        Ok(Instance { strings })
    }

    pub fn n(&self) -> usize {
        self.strings.len()
    }

    pub fn string(&self, i: usize) -> &str {
        &self.strings[i]
    }

    pub fn strings(&self) -> &[String] {
        &self.strings
    }

    /// Common string length when all strings share one, else `None`.
    pub fn uniform_len(&self) -> Option<usize> {
        let k = self.strings[0].len();
        self.strings.iter().all(|s| s.len() == k).then_some(k)
    }

    pub fn total_len(&self) -> usize {
        self.strings.iter().map(|s| s.len()).sum()
    }
}

/// Result of containment filtering: the surviving instance plus, per survivor,
/// which original indices it covers (an original is covered by the first
/// survivor that contains it; every survivor covers itself).
#[derive(Debug, Clone)]
pub struct Preprocessed {
    pub instance: Instance,
    /// Original index of each survivor, in survivor order.
    pub survivor_originals: Vec<usize>,
    /// Original indices covered by each survivor (always includes the survivor's own).
    pub coverage: Vec<Vec<usize>>,
}

impl Preprocessed {
    /// Original indices that were dropped, ascending.
    pub fn filtered(&self) -> Vec<usize> {
        let mut dropped: Vec<usize> = self
            .coverage
            .iter()
            .zip(&self.survivor_originals)
            .flat_map(|(cov, own)| cov.iter().copied().filter(move |i| i != own))
            .collect();
        dropped.sort_unstable();
        dropped
    }
}

/// Drop exact duplicates and strings contained in another string.
///
/// A superstring of the survivors contains every dropped string too, so the
/// path/superstring correspondence stays one-to-one. Keeps first occurrences;
/// idempotent.
pub fn preprocess(raw: &[String]) -> Result<Preprocessed, InstanceError> {
    if raw.is_empty() {
        return Err(InstanceError::EmptyInstance);
    }
    if let Some(i) = raw.iter().position(|s| s.is_empty()) {
        return Err(InstanceError::EmptyString(i));
    }

    let dominated = |i: usize| {
        raw.iter().enumerate().any(|(j, t)| {
            j != i
                && t.contains(&raw[i][..])
                && (t.len() > raw[i].len() || (t == &raw[i] && j < i))
        })
    };
    let survivor_originals: Vec<usize> = (0..raw.len()).filter(|&i| !dominated(i)).collect();

    let coverage = survivor_originals
        .iter()
        .map(|&own| {
            (0..raw.len())
                .filter(|&i| {
                    i == own
                        || (dominated(i)
                            && raw[own].contains(&raw[i][..])
                            && survivor_originals
                                .iter()
                                .take_while(|&&s| s != own)
                                .all(|&s| !raw[s].contains(&raw[i][..])))
                })
                .collect()
        })
        .collect();

    let instance = Instance::new(survivor_originals.iter().map(|&i| raw[i].clone()).collect())?;
    Ok(Preprocessed { instance, survivor_originals, coverage })
}

/// Reject bytes outside `[A-Za-z0-9]`.
pub fn validate_charset(strings: &[String]) -> Result<(), InstanceError> {
    for (index, s) in strings.iter().enumerate() {
        if let Some(&byte) = s.as_bytes().iter().find(|b| !b.is_ascii_alphanumeric()) {
            return Err(InstanceError::BadCharacter { index, byte });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn filters_substrings_and_duplicates() {
        let p = preprocess(&strs(&["AB", "AB", "ABC"])).unwrap();
        assert_eq!(p.instance.strings(), &["ABC"]);
        assert_eq!(p.survivor_originals, vec![2]);
        assert_eq!(p.coverage, vec![vec![0, 1, 2]]);
        assert_eq!(p.filtered(), vec![0, 1]);
    }

    #[test]
    fn identity_when_no_containment() {
        let p = preprocess(&strs(&["ABCD", "CDEF"])).unwrap();
        assert_eq!(p.instance.strings(), &["ABCD", "CDEF"]);
        assert_eq!(p.survivor_originals, vec![0, 1]);
        assert_eq!(p.coverage, vec![vec![0], vec![1]]);
        assert!(p.filtered().is_empty());
    }

    #[test]
    fn duplicate_keeps_first() {
        let p = preprocess(&strs(&["A", "B", "A"])).unwrap();
        assert_eq!(p.instance.strings(), &["A", "B"]);
        assert_eq!(p.survivor_originals, vec![0, 1]);
        assert_eq!(p.coverage, vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn idempotent() {
        let raw = strs(&["ABAB", "BAB", "AB", "CDCD", "CDCD"]);
        let once = preprocess(&raw).unwrap();
        let twice = preprocess(once.instance.strings()).unwrap();
        assert_eq!(once.instance, twice.instance);
        assert_eq!(twice.filtered(), Vec::<usize>::new());
    }

    #[test]
    fn errors() {
        assert_eq!(preprocess(&[]).unwrap_err(), InstanceError::EmptyInstance);
        assert_eq!(
            preprocess(&strs(&["A", ""])).unwrap_err(),
            InstanceError::EmptyString(1)
        );
        assert!(validate_charset(&strs(&["AB-C"])).is_err());
        assert!(validate_charset(&strs(&["aZ09"])).is_ok());
    }
}
