//! Integer partitions, Young-diagram operations and cycle types.
//!
//! A [`Partition`] is kept in canonical form: strictly positive parts in
//! weakly decreasing order. The empty partition is a valid value of size 0.
//!
//! The text form of a partition is its comma-separated parts (`3,2,2`), with
//! `-` for the empty partition. Cycle types are written as space-separated
//! `i^n` factors in increasing `i` (`1^2 2^1`), again with `-` for the empty
//! type of `S_0`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts that must already be weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// `λ_1`, 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.part(0)
    }

    /// The partition with its first row erased.
    pub fn socle(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// `|λ| - λ_1`
    pub fn weight(&self) -> usize {
        self.size() - self.first()
    }

    /// Smallest degree `m` for which [`Partition::pad`] succeeds: `|λ| + λ_1`.
    pub fn min_pad_degree(&self) -> usize {
        self.size() + self.first()
    }

    /// Prepends a first row so that the result is a partition of `m`.
    pub fn pad(&self, m: usize) -> Result<Partition> {
        let needed = self.min_pad_degree();
        if m < needed {
            return Err(Error::PaddingTooSmall {
                partition: self.to_string(),
                m,
                needed,
            });
        }
        if m == 0 {
            return Ok(Self::empty());
        }
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(m - self.size());
        parts.extend_from_slice(&self.parts);
        Ok(Partition { parts })
    }

    /// `(λ_1, λ_1, λ_2, …, λ_ℓ)`; the empty partition maps to itself.
    pub fn double_first_part(&self) -> Partition {
        match self.parts.first() {
            None => Self::empty(),
            Some(&first) => {
                let mut parts = Vec::with_capacity(self.len() + 1);
                parts.push(first);
                parts.extend_from_slice(&self.parts);
                Partition { parts }
            }
        }
    }

    /// True when the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.parts[i] >= other.parts[i])
    }

    /// The number of parts equal to `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition_at(s, 0)
    }
}

/// Parses the text form of a partition; `offset` shifts reported byte positions.
pub(crate) fn parse_partition_at(s: &str, offset: usize) -> Result<Partition> {
    let trimmed = s.trim();
    let lead = s.len() - s.trim_start().len();
    if trimmed == "-" || trimmed == "()" {
        return Ok(Partition::empty());
    }
    if trimmed.is_empty() {
        return Err(Error::parse(offset, "empty partition text (use `-`)"));
    }
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(trimmed);
    let inner_start = offset + lead + if inner.len() != trimmed.len() { 1 } else { 0 };
    let mut parts = Vec::new();
    let mut pos = inner_start;
    for piece in inner.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let token = piece.trim();
        let value: usize = token.parse().map_err(|_| {
            Error::parse(
                pos + lead,
                format!("expected a positive integer, found `{token}`"),
            )
        })?;
        if value == 0 {
            return Err(Error::parse(pos + lead, "partition parts must be positive"));
        }
        parts.push(value);
        pos += piece.len() + 1;
    }
    if !parts.windows(2).all(|w| w[0] >= w[1]) {
        return Err(Error::parse(
            inner_start,
            format!("parts {parts:?} are not weakly decreasing"),
        ));
    }
    Ok(Partition { parts })
}

/// All partitions of `m` in reverse-lexicographic order, `(m)` first and `(1^m)` last.
pub fn partitions_of(m: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(m, m, &mut current, &mut out);
    out
}

fn fill_partitions(
    rest: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if rest == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=max_part.min(rest)).rev() {
        current.push(p);
        fill_partitions(rest - p, p, current, out);
        current.pop();
    }
}

/// Partitions of every size `0..=max_size`, grouped by size.
pub fn partitions_up_to(max_size: usize) -> Vec<Partition> {
    (0..=max_size).flat_map(partitions_of).collect()
}

/// The conjugacy-class label of a permutation of `[1, m]`: `i ↦ n_i`, the
/// number of `i`-cycles. Zero counts are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    m: usize,
    counts: BTreeMap<usize, usize>,
}

impl CycleType {
    pub fn new(m: usize, counts: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (len, n) in counts {
            if len == 0 {
                return Err(Error::InvalidCycleType("cycle length 0".into()));
            }
            if n > 0 {
                *map.entry(len).or_insert(0) += n;
            }
        }
        let total: usize = map.iter().map(|(i, n)| i * n).sum();
        if total != m {
            return Err(Error::InvalidCycleType(format!(
                "cycle lengths sum to {total}, expected {m}"
            )));
        }
        Ok(CycleType { m, counts: map })
    }

    /// The type whose cycle lengths are the parts of `lengths`.
    pub fn from_partition(lengths: &Partition) -> Self {
        let mut counts = BTreeMap::new();
        for &p in lengths.parts() {
            *counts.entry(p).or_insert(0) += 1;
        }
        CycleType {
            m: lengths.size(),
            counts,
        }
    }

    /// The type of the identity of `S_m`.
    pub fn identity(m: usize) -> Self {
        let mut counts = BTreeMap::new();
        if m > 0 {
            counts.insert(1, m);
        }
        CycleType { m, counts }
    }

    /// Cycle type of a permutation given in one-line notation on `0..n`.
    pub fn of_permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut counts = BTreeMap::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
                len += 1;
            }
            *counts.entry(len).or_insert(0) += 1;
        }
        CycleType { m: n, counts }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// `n_i`, the number of `i`-cycles.
    pub fn count(&self, i: usize) -> usize {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    /// Nonzero `(i, n_i)` pairs in increasing `i`.
    pub fn counts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&i, &n)| (i, n))
    }

    /// Cycle lengths as a partition of `m`.
    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.counts.values().sum());
        for (&len, &n) in self.counts.iter().rev() {
            parts.extend(std::iter::repeat_n(len, n));
        }
        Partition { parts }
    }

    /// The type obtained by adding `extra` fixed points.
    pub fn extend_fixed(&self, extra: usize) -> CycleType {
        let mut counts = self.counts.clone();
        if extra > 0 {
            *counts.entry(1).or_insert(0) += extra;
        }
        CycleType {
            m: self.m + extra,
            counts,
        }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return f.write_str("-");
        }
        for (k, (i, n)) in self.counts.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}^{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "-" {
            return Ok(CycleType::identity(0));
        }
        let mut counts = BTreeMap::new();
        let mut pos = 0;
        for token in s.split(' ') {
            let start = pos;
            pos += token.len() + 1;
            if token.is_empty() {
                continue;
            }
            let (len_text, n_text) = token.split_once('^').unwrap_or((token, "1"));
            let len: usize = len_text
                .parse()
                .ok()
                .filter(|&l| l > 0)
                .ok_or_else(|| Error::parse(start, format!("bad cycle length in `{token}`")))?;
            let n: usize = n_text
                .parse()
                .map_err(|_| Error::parse(start, format!("bad cycle count in `{token}`")))?;
            if n > 0 {
                *counts.entry(len).or_insert(0) += n;
            }
        }
        if counts.is_empty() {
            return Err(Error::parse(0, "empty cycle type (use `-` for S_0)"));
        }
        let m = counts.iter().map(|(i, n)| i * n).sum();
        Ok(CycleType { m, counts })
    }
}

/// All cycle types of `S_m`, in the order of [`partitions_of`].
pub fn cycle_types(m: usize) -> Vec<CycleType> {
    partitions_of(m)
        .iter()
        .map(CycleType::from_partition)
        .collect()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Number of permutations of type `t`: `m! / ∏ i^{n_i} n_i!`.
pub fn class_size(t: &CycleType) -> BigUint {
    let centralizer = t.counts().fold(BigUint::one(), |acc, (i, n)| {
        acc * BigUint::from(i).pow(n as u32) * factorial(n)
    });
    factorial(t.degree()) / centralizer
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn socle_and_weight() {
        assert_eq!(p(&[3, 2, 2]).socle(), p(&[2, 2]));
        assert_eq!(p(&[5]).socle(), Partition::empty());
        assert_eq!(Partition::empty().socle(), Partition::empty());
        assert_eq!(p(&[3, 2, 2]).weight(), 4);
        assert_eq!(p(&[7]).weight(), 0);
        assert_eq!(p(&[2, 2]).weight(), 2);
        assert_eq!(Partition::empty().weight(), 0);
    }

    #[test]
    fn padding() {
        assert_eq!(p(&[1]).pad(5).unwrap(), p(&[4, 1]));
        assert!(matches!(
            p(&[2, 2]).pad(4),
            Err(Error::PaddingTooSmall { needed: 6, .. })
        ));
        assert_eq!(p(&[2, 2]).pad(6).unwrap(), p(&[2, 2, 2]));
        assert_eq!(Partition::empty().pad(0).unwrap(), Partition::empty());
        assert_eq!(Partition::empty().pad(3).unwrap(), p(&[3]));
    }

    #[test]
    fn doubled_first_part() {
        assert_eq!(p(&[2, 1]).double_first_part(), p(&[2, 2, 1]));
        assert_eq!(Partition::empty().double_first_part(), Partition::empty());
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 0, 3, 2]), p(&[3, 2, 1]));
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(
            partitions_of(4),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(partitions_of(10).len(), 42);
    }

    #[test]
    fn class_sizes() {
        let t: CycleType = "1^3".parse().unwrap();
        assert_eq!(class_size(&t), BigUint::from(1u32));
        let t: CycleType = "3^1".parse().unwrap();
        assert_eq!(class_size(&t), BigUint::from(2u32));
        let t: CycleType = "2^2".parse().unwrap();
        assert_eq!(class_size(&t), BigUint::from(3u32));
    }

    #[test]
    fn text_forms() {
        assert_eq!("3,2,2".parse::<Partition>().unwrap(), p(&[3, 2, 2]));
        assert_eq!("-".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[3, 2, 2]).to_string(), "3,2,2");
        assert_eq!(Partition::empty().to_string(), "-");
        match "3,x".parse::<Partition>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!("2,3".parse::<Partition>().is_err());

        let t: CycleType = "1^2 2^1".parse().unwrap();
        assert_eq!(t.degree(), 4);
        assert_eq!(t.count(1), 2);
        assert_eq!(t.count(2), 1);
        assert_eq!(t.to_string(), "1^2 2^1");
        assert_eq!(t.to_partition(), p(&[2, 1, 1]));
        assert_eq!(CycleType::identity(0).to_string(), "-");
        assert_eq!("-".parse::<CycleType>().unwrap(), CycleType::identity(0));
    }

    #[test]
    fn permutation_types() {
        assert_eq!(
            CycleType::of_permutation(&[1, 0, 2, 4, 3]).to_string(),
            "1^1 2^2"
        );
        assert_eq!(CycleType::of_permutation(&[]), CycleType::identity(0));
    }

    #[test]
    fn cycle_type_validation() {
        assert!(CycleType::new(4, [(2, 1), (1, 1)]).is_err());
        assert!(CycleType::new(4, [(2, 1), (1, 2), (3, 0)]).is_ok());
    }
}
