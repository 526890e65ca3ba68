use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::quiver::Vertex;

/// A bijection on vertex labels, identity outside its support.
///
/// Only moved points are stored, so two permutations compare equal exactly
/// when they act identically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: BTreeMap<Vertex, Vertex>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a permutation from `(from, to)` pairs; fixed points may be listed.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut map = BTreeMap::new();
        let mut images = BTreeSet::new();
        for (from, to) in pairs {
            if map.insert(from, to).is_some() {
                return Err(Error::InvalidPermutation(format!("{from} mapped twice")));
            }
            if !images.insert(to) {
                return Err(Error::InvalidPermutation(format!("{to} hit twice")));
            }
        }
        let domain: BTreeSet<Vertex> = map.keys().copied().collect();
        if domain != images {
            return Err(Error::InvalidPermutation(
                "domain and image differ".to_string(),
            ));
        }
        map.retain(|k, v| k != v);
        Ok(Self { map })
    }

    /// Builds a permutation from disjoint cycles; `(a, b, c)` sends a→b→c→a.
    pub fn from_cycles<C, I>(cycles: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[Vertex]>,
    {
        let mut pairs = Vec::new();
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (i, &v) in cycle.iter().enumerate() {
                pairs.push((v, cycle[(i + 1) % cycle.len()]));
            }
        }
        Self::from_pairs(pairs)
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.map.get(&v).copied().unwrap_or(v)
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Moved points, ascending.
    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.map.keys().copied()
    }

    pub fn inverse(&self) -> Self {
        Self {
            map: self.map.iter().map(|(&k, &v)| (v, k)).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        let domain: BTreeSet<Vertex> = self.support().chain(other.support()).collect();
        let map = domain
            .into_iter()
            .map(|v| (v, self.apply(other.apply(v))))
            .filter(|(k, v)| k != v)
            .collect();
        Self { map }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity();
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut x = self.apply(start);
            while x != start {
                seen.insert(x);
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Smallest k ≥ 1 with σᵏ = id.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        for cycle in self.cycles() {
            let parts: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses `id` or cycle notation such as `(1,3)(4,6)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(Self::identity());
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let end = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let cycle = body[..end]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<Vertex>()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
            rest = body[end + 1..].trim_start();
        }
        Self::from_cycles(cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p: Permutation = "(4,9,7)(2,5)".parse().unwrap();
        assert_eq!(p.apply(4), 9);
        assert_eq!(p.apply(7), 4);
        assert_eq!(p.to_string(), "(2,5)(4,9,7)");
        assert_eq!(p.order(), 6);
        assert_eq!("id".parse::<Permutation>().unwrap(), Permutation::identity());
    }

    #[test]
    fn inverse_and_compose() {
        let p = Permutation::from_cycles([[13, 15, 14]]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.pow(3), Permutation::identity());
        assert_eq!(p.pow(2), p.inverse());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_pairs([(1, 2), (2, 2)]).is_err());
        assert!(Permutation::from_pairs([(1, 2)]).is_err());
        assert!(Permutation::from_cycles([vec![1, 2], vec![2, 3]]).is_err());
    }
}
