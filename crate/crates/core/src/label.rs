//! Bare product-state labels such as `|1,0,0,1>`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Occupation of every element in a product basis state, in element order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BareLabel(Vec<usize>);

impl BareLabel {
    pub fn new(levels: Vec<usize>) -> Self {
        Self(levels)
    }

    /// Ground state of an `n`-element system.
    pub fn ground(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Label with the given `(element, level)` entries set and all other elements in `|0>`.
    pub fn excited(n: usize, entries: &[(usize, usize)]) -> Self {
        let mut levels = vec![0; n];
        for &(e, l) in entries {
            levels[e] = l;
        }
        Self(levels)
    }

    pub fn levels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn with(&self, element: usize, level: usize) -> Self {
        let mut levels = self.0.clone();
        levels[element] = level;
        Self(levels)
    }

    /// Row-major (first element slowest) index into the product basis.
    pub fn index(&self, dims: &[usize]) -> Result<usize> {
        if dims.len() != self.0.len() || self.0.iter().zip(dims).any(|(l, d)| l >= d) {
            return Err(Error::LabelOutOfBasis {
                label: self.clone(),
                dims: dims.to_vec(),
            });
        }
        Ok(self.0.iter().zip(dims).fold(0, |acc, (l, d)| acc * d + l))
    }

    pub fn from_index(mut index: usize, dims: &[usize]) -> Self {
        let mut levels = vec![0; dims.len()];
        for (slot, d) in levels.iter_mut().zip(dims).rev() {
            *slot = index % d;
            index /= d;
        }
        Self(levels)
    }

    /// Compact form: `1001` when every level is a single digit, otherwise `1,0,10,1`.
    pub fn compact(&self) -> String {
        if self.0.iter().all(|&l| l < 10) {
            self.0.iter().map(|l| l.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for BareLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self.compact())
    }
}

impl FromStr for BareLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches('|')
            .trim_end_matches(['>', '⟩']);
        let bad = || Error::InvalidParams(format!("cannot parse bare label {s:?}"));
        if body.is_empty() {
            return Err(bad());
        }
        let levels = if body.contains(',') {
            body.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Self(levels))
    }
}

impl From<&[usize]> for BareLabel {
    fn from(levels: &[usize]) -> Self {
        Self(levels.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for BareLabel {
    fn from(levels: [usize; N]) -> Self {
        Self(levels.to_vec())
    }
}

impl Serialize for BareLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.compact())
    }
}

impl<'de> Deserialize<'de> for BareLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("1001".parse::<BareLabel>().unwrap(), BareLabel::from([1, 0, 0, 1]));
        assert_eq!("|1,0,12>".parse::<BareLabel>().unwrap(), BareLabel::from([1, 0, 12]));
        assert!("1x0".parse::<BareLabel>().is_err());
        assert!("".parse::<BareLabel>().is_err());
    }

    #[test]
    fn index_is_mixed_radix() {
        let dims = [3, 4, 2];
        for i in 0..24 {
            let l = BareLabel::from_index(i, &dims);
            assert_eq!(l.index(&dims).unwrap(), i);
        }
        assert_eq!(BareLabel::from([1, 0, 1]).index(&dims).unwrap(), 9);
        assert!(BareLabel::from([0, 4, 0]).index(&dims).is_err());
    }
}
