//! Permutations on `{0, .., n-1}` stored as image arrays.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// A permutation of `{0, .., degree-1}`; `images[x]` is the image of `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection on its index range.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            let y = y as usize;
            if y >= n || seen[y] {
                return Err(Error::InvalidInput(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (k, &pt) in cyc.iter().enumerate() {
                let pt = pt as usize;
                if pt >= degree {
                    return Err(Error::InvalidInput(format!(
                        "cycle point {pt} out of range for degree {degree}"
                    )));
                }
                if touched[pt] {
                    return Err(Error::InvalidInput(format!(
                        "point {pt} appears in more than one cycle"
                    )));
                }
                touched[pt] = true;
                images[pt] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// The composition `a ∘ b`, applying `b` first: `(a ∘ b)(x) = a(b(x))`.
    pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch(a.degree(), b.degree()));
        }
        Ok(Permutation {
            images: b.images.iter().map(|&y| a.images[y as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { images: inv }
    }

    /// Order as the lcm of cycle lengths.
    pub fn element_order(&self) -> BigUint {
        let mut order = BigUint::one();
        for cyc in self.cycles() {
            order = order.lcm(&BigUint::from(cyc.len()));
        }
        order
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted by
    /// starting point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start as u32 {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, e.g. `(0 1 2)(3 4)`; the identity renders as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            let inner: Vec<String> = cyc.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", inner.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[deg {}]{}", self.degree(), self)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses cycle notation `(0 1 2)(3 4)` or an image array `[1, 2, 0]`.
    /// For cycle notation the degree is the largest point mentioned plus one.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let inner = s.trim_start_matches('[').trim_end_matches(']');
            let images: Vec<u32> = inner
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad image `{t}` in `{s}`")))
                })
                .collect::<Result<_>>()?;
            return Permutation::from_images(images);
        }
        if s == "()" || s.is_empty() {
            return Ok(Permutation::identity(0));
        }
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut max_pt = 0u32;
        for chunk in s.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let chunk = chunk.trim_start_matches('(');
            let cyc: Vec<u32> = chunk
                .split_whitespace()
                .flat_map(|t| t.split(','))
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad point `{t}` in `{s}`")))
                })
                .collect::<Result<_>>()?;
            if let Some(m) = cyc.iter().max() {
                max_pt = max_pt.max(*m);
            }
            cycles.push(cyc);
        }
        Permutation::from_cycles(max_pt as usize + 1, &cycles)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<u32>::deserialize(deserializer)?;
        Permutation::from_images(images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_convention() {
        // transposition composed with itself is the identity
        let t = p("(0 1)");
        assert!(Permutation::compose(&t, &t).unwrap().is_identity());
        // the second argument applies first: (0 1) ∘ (1 2) maps 0->1->2->0
        let a = p("(0 1)");
        let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let ab = Permutation::compose(&a, &b).unwrap();
        assert_eq!(ab.images(), &[1, 2, 0]);
    }

    #[test]
    fn inverse_of_three_cycle() {
        let c = p("(0 1 2)");
        assert_eq!(c.inverse(), p("(0 2 1)"));
        assert!(Permutation::compose(&c, &c.inverse())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(Permutation::compose(&a, &b).is_err());
    }

    #[test]
    fn parse_and_render() {
        let x = p("(0 1 2)(3 4)");
        assert_eq!(x.to_string(), "(0 1 2)(3 4)");
        assert_eq!(x.degree(), 5);
        assert_eq!(p("[1,2,0]").images(), &[1, 2, 0]);
        assert!("(0 1)(1 2)".parse::<Permutation>().is_err()); // repeated point
        assert!("[1,1,0]".parse::<Permutation>().is_err());
    }

    #[test]
    fn element_orders() {
        assert_eq!(p("(0 1 2)(3 4)").element_order(), BigUint::from(6u32));
        assert_eq!(Permutation::identity(4).element_order(), BigUint::one());
    }

    #[test]
    fn serde_roundtrip() {
        let x = p("(0 1 2)(3 4)");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[1,2,0,4,3]");
        let y: Permutation = serde_json::from_str(&json).unwrap();
        assert_eq!(x, y);
    }
}
