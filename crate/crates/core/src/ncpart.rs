//! Set partitions of `[n]`, the non-crossing lattice, its k-divisible and k-equal
//! subposets, the Kreweras complement and the closed-form counts.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use num_integer::binomial;

use crate::error::{Error, Result};

/// Default largest `n` for which `NC(n)` may be enumerated; restricted enumerations
/// may visit at most as many partitions as `NC(n)` has.
pub const DEFAULT_MAX_ENUMERATION: usize = 16;

static MAX_ENUMERATION: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ENUMERATION);

/// Largest ground-set size accepted by enumeration routines.
pub fn max_enumeration() -> usize {
    MAX_ENUMERATION.load(Ordering::Relaxed)
}

/// Overrides the enumeration cap process-wide.
pub fn set_max_enumeration(n: usize) {
    MAX_ENUMERATION.store(n, Ordering::Relaxed);
}

pub(crate) fn check_enumeration_size(n: usize) -> Result<()> {
    let limit = max_enumeration();
    if n > limit {
        return Err(Error::ResourceLimit { requested: n, limit });
    }
    Ok(())
}

/// Restricted enumerations may exceed the cap on `n` as long as they visit no more
/// elements than `NC(cap)` has.
fn check_enumeration_budget(n: usize, rule: BlockRule) -> Result<()> {
    let limit = max_enumeration();
    let count = match rule {
        BlockRule::Any => return check_enumeration_size(n),
        BlockRule::Divisible(k) => fuss_catalan(k, n / k),
        BlockRule::Equal(k) => count_kequal(k, n / k),
    };
    if count > catalan(limit) {
        return Err(Error::ResourceLimit { requested: n, limit });
    }
    Ok(())
}

/// A partition of `{1, ..., n}` in canonical form: blocks ordered by minimum, elements ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates and canonicalizes a block list over `{1, ..., n}`.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x == 0 || x > n {
                    return Err(Error::InvalidPartition(format!("element {x} outside 1..={n}")));
                }
                if seen[x] {
                    return Err(Error::InvalidPartition(format!("element {x} repeated")));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::InvalidPartition(format!("element {x} missing")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { n, blocks })
    }

    /// Builds a partition from block labels of elements `1..=n` (any labelling).
    pub fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut index = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            let b = *index.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(i + 1);
        }
        Partition { n, blocks }
    }

    pub(crate) fn from_canonical_labels(labels: &[u8]) -> Self {
        let count = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); count];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l as usize].push(i + 1);
        }
        Partition { n: labels.len(), blocks }
    }

    /// The finest partition `0_n`.
    pub fn zero(n: usize) -> Self {
        Partition { n, blocks: (1..=n).map(|i| vec![i]).collect() }
    }

    /// The coarsest partition `1_n`.
    pub fn one(n: usize) -> Self {
        let blocks = if n == 0 { Vec::new() } else { vec![(1..=n).collect()] };
        Partition { n, blocks }
    }

    /// Interval partition with consecutive blocks of the given sizes.
    pub fn interval(sizes: &[usize]) -> Result<Self> {
        let mut blocks = Vec::with_capacity(sizes.len());
        let mut start = 1;
        for &s in sizes {
            if s == 0 {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            blocks.push((start..start + s).collect());
            start += s;
        }
        Ok(Partition { n: start - 1, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Canonical block index of every element, 0-based positions.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x - 1] = b;
            }
        }
        labels
    }

    pub fn is_noncrossing(&self) -> bool {
        first_crossing(&self.labels(), &self.block_ends()).is_none()
    }

    fn block_ends(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| *b.last().unwrap()).collect()
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Partition) -> bool {
        if self.n != other.n {
            return false;
        }
        let labels = other.labels();
        self.blocks.iter().all(|b| b.iter().all(|&x| labels[x - 1] == labels[b[0] - 1]))
    }
}

/// Returns two crossing block labels, scanning left to right.
fn first_crossing(labels: &[usize], ends: &[usize]) -> Option<(usize, usize)> {
    let mut stack: Vec<usize> = Vec::new();
    let mut opened = vec![false; ends.len()];
    for (i, &b) in labels.iter().enumerate() {
        let x = i + 1;
        if opened[b] {
            let top = *stack.last().unwrap();
            if top != b {
                return Some((top, b));
            }
            if ends[b] == x {
                stack.pop();
            }
        } else {
            opened[b] = true;
            if ends[b] != x {
                stack.push(b);
            }
        }
    }
    None
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            write!(f, "{{")?;
            for (i, x) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `{1,2,5}{3,4}`; also accepts an outer pair of braces.
    fn from_str(s: &str) -> Result<Self> {
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.starts_with("{{") && t.ends_with("}}") {
            t = t[1..t.len() - 1].to_string();
        }
        let mut blocks = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let rest2 = rest.trim_start_matches(',');
            let body = rest2
                .strip_prefix('{')
                .ok_or_else(|| Error::Parse(format!("expected '{{' in {s:?}")))?;
            let close = body.find('}').ok_or_else(|| Error::Parse(format!("unclosed block in {s:?}")))?;
            let block = body[..close]
                .split(',')
                .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad element {x:?}"))))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
            rest = &body[close + 1..];
        }
        let n = blocks.iter().map(Vec::len).sum();
        Partition::new(n, blocks)
    }
}

/// A partition known to be non-crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcPartition(Partition);

impl NcPartition {
    pub fn new(p: Partition) -> Result<Self> {
        if p.is_noncrossing() {
            Ok(NcPartition(p))
        } else {
            Err(Error::Crossing)
        }
    }

    pub fn zero(n: usize) -> Self {
        NcPartition(Partition::zero(n))
    }

    pub fn one(n: usize) -> Self {
        NcPartition(Partition::one(n))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }

    pub fn leq(&self, other: &NcPartition) -> bool {
        self.0.leq(&other.0)
    }

    /// Kreweras complement.
    pub fn kreweras(&self) -> NcPartition {
        kreweras(self)
    }

    /// Least upper bound in the non-crossing lattice.
    pub fn join(&self, other: &NcPartition) -> Result<NcPartition> {
        join(self, other)
    }
}

impl std::ops::Deref for NcPartition {
    type Target = Partition;

    fn deref(&self) -> &Partition {
        &self.0
    }
}

impl TryFrom<Partition> for NcPartition {
    type Error = Error;

    fn try_from(p: Partition) -> Result<Self> {
        NcPartition::new(p)
    }
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for NcPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NcPartition::new(s.parse()?)
    }
}

/// Which block sizes an enumeration admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockRule {
    /// Every block size.
    Any,
    /// Block sizes divisible by `k`.
    Divisible(usize),
    /// Every block of size exactly `k`.
    Equal(usize),
}

impl BlockRule {
    fn step(self) -> usize {
        match self {
            BlockRule::Any => 1,
            BlockRule::Divisible(k) | BlockRule::Equal(k) => k,
        }
    }

    fn admits(self, size: usize) -> bool {
        match self {
            BlockRule::Any => true,
            BlockRule::Divisible(k) => size.is_multiple_of(k),
            BlockRule::Equal(k) => size == k,
        }
    }

    fn can_grow(self, size: usize) -> bool {
        match self {
            BlockRule::Equal(k) => size < k,
            _ => true,
        }
    }
}

/// Depth-first walker over non-crossing partitions of `[0, n)`.
///
/// The block of the smallest unassigned element is chosen next, its element list running in
/// lexicographic order, so visited label vectors are canonical (labels increase with block minimum).
struct Walker<'a, F: FnMut(&[u8])> {
    labels: Vec<u8>,
    next_label: u8,
    rule: BlockRule,
    visit: &'a mut F,
    block: Vec<usize>,
}

impl<F: FnMut(&[u8])> Walker<'_, F> {
    fn fillable(&self, len: usize) -> bool {
        len.is_multiple_of(self.rule.step())
    }

    fn fill(&mut self, pending: &mut Vec<(usize, usize)>) {
        let Some((lo, hi)) = pending.pop() else {
            (self.visit)(&self.labels);
            return;
        };
        let label = self.next_label;
        self.next_label += 1;
        self.labels[lo] = label;
        let start = self.block.len();
        self.block.push(lo);
        self.extend(start, hi, label, pending);
        self.block.truncate(start);
        self.next_label -= 1;
        pending.push((lo, hi));
    }

    /// `block[start..]` holds the open block; either close it or add a further element.
    fn extend(&mut self, start: usize, hi: usize, label: u8, pending: &mut Vec<(usize, usize)>) {
        let size = self.block.len() - start;
        let last = *self.block.last().unwrap();
        if self.rule.admits(size) && self.fillable(hi - last - 1) {
            let mark = pending.len();
            if last + 1 < hi {
                pending.push((last + 1, hi));
            }
            for w in (start..self.block.len() - 1).rev() {
                let (a, b) = (self.block[w], self.block[w + 1]);
                if a + 1 < b {
                    pending.push((a + 1, b));
                }
            }
            self.fill(pending);
            pending.truncate(mark);
        }
        if !self.rule.can_grow(size) {
            return;
        }
        let mut e = last + 1;
        while e < hi {
            self.labels[e] = label;
            self.block.push(e);
            self.extend(start, hi, label, pending);
            self.block.pop();
            e += self.rule.step();
        }
    }
}

/// Calls `visit` with the canonical label vector of every non-crossing partition of `[n]`
/// whose blocks satisfy `rule`. Labels are indexed by element minus one.
pub fn for_each_nc<F: FnMut(&[u8])>(n: usize, rule: BlockRule, mut visit: F) -> Result<()> {
    if let BlockRule::Divisible(0) | BlockRule::Equal(0) = rule {
        return Err(Error::InvalidArgument("block size parameter must be positive".into()));
    }
    if !n.is_multiple_of(rule.step()) {
        return Ok(());
    }
    check_enumeration_budget(n, rule)?;
    if n > u8::MAX as usize {
        return Err(Error::ResourceLimit { requested: n, limit: u8::MAX as usize });
    }
    let mut walker = Walker { labels: vec![0; n], next_label: 0, rule, visit: &mut visit, block: Vec::new() };
    let mut pending = Vec::new();
    if n > 0 {
        pending.push((0, n));
    }
    walker.fill(&mut pending);
    Ok(())
}

fn collect(n: usize, rule: BlockRule) -> Result<Vec<NcPartition>> {
    let mut out = Vec::new();
    for_each_nc(n, rule, |labels| out.push(NcPartition(Partition::from_canonical_labels(labels))))?;
    Ok(out)
}

/// All of `NC(n)` in deterministic depth-first lexicographic order.
pub fn enumerate_nc(n: usize) -> Result<Vec<NcPartition>> {
    collect(n, BlockRule::Any)
}

/// `NC^k(n)`: non-crossing partitions of `[kn]` with every block size divisible by `k`.
pub fn enumerate_kdivisible(k: usize, n: usize) -> Result<Vec<NcPartition>> {
    collect(k * n, BlockRule::Divisible(k))
}

/// `NC_k(n)`: non-crossing partitions of `[kn]` with every block of size exactly `k`.
pub fn enumerate_kequal(k: usize, n: usize) -> Result<Vec<NcPartition>> {
    collect(k * n, BlockRule::Equal(k))
}

/// Number of partitions visited under `rule`, computed by enumeration.
pub fn enumerated_count(n: usize, rule: BlockRule) -> Result<u64> {
    let mut count = 0u64;
    for_each_nc(n, rule, |_| count += 1)?;
    Ok(count)
}

/// Cycle structure of the Kreweras permutation `pi^{-1} gamma` for canonical labels.
///
/// Returns labels (0-based) of the complement, canonical by block minimum.
pub(crate) fn kreweras_labels(labels: &[u8]) -> Vec<u8> {
    let n = labels.len();
    let mut next = vec![0usize; n];
    let mut first = [usize::MAX; 256];
    let mut last = [usize::MAX; 256];
    for (i, &l) in labels.iter().enumerate() {
        let l = l as usize;
        if last[l] == usize::MAX {
            first[l] = i;
        } else {
            next[last[l]] = i;
        }
        last[l] = i;
    }
    for l in 0..256 {
        if last[l] != usize::MAX {
            next[last[l]] = first[l];
        }
    }
    let mut prev = vec![0usize; n];
    for i in 0..n {
        prev[next[i]] = i;
    }
    let mut out = vec![u8::MAX; n];
    let mut label = 0u8;
    for start in 0..n {
        if out[start] != u8::MAX {
            continue;
        }
        let mut i = start;
        while out[i] == u8::MAX {
            out[i] = label;
            i = prev[(i + 1) % n];
        }
        label += 1;
    }
    out
}

/// Kreweras complement: the largest `sigma` with `pi` and `sigma` interleaved on
/// `1 < 1' < 2 < 2' < ... < n < n'` still non-crossing.
///
/// Computed as the permutation `pi^{-1} gamma`, `gamma = (1 2 ... n)`, with blocks read as increasing cycles.
pub fn kreweras(pi: &NcPartition) -> NcPartition {
    let labels: Vec<u8> = pi.labels().iter().map(|&l| l as u8).collect();
    NcPartition(Partition::from_canonical_labels(&kreweras_labels(&labels)))
}

/// Least upper bound in `NC(n)`: the partition-lattice join, then merging crossing blocks.
pub fn join(p: &NcPartition, q: &NcPartition) -> Result<NcPartition> {
    if p.n() != q.n() {
        return Err(Error::InvalidArgument(format!("ground sets differ: {} and {}", p.n(), q.n())));
    }
    let n = p.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let up = parent[y];
            parent[y] = r;
            y = up;
        }
        r
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for part in [p.partition(), q.partition()] {
        for block in part.blocks() {
            for w in block.windows(2) {
                union(&mut parent, w[0] - 1, w[1] - 1);
            }
        }
    }
    loop {
        let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        let current = Partition::from_labels(&roots);
        let labels = current.labels();
        match first_crossing(&labels, &current.block_ends()) {
            None => return Ok(NcPartition(current)),
            Some((a, b)) => {
                let (x, y) = (current.blocks()[a][0] - 1, current.blocks()[b][0] - 1);
                union(&mut parent, x, y);
            }
        }
    }
}

/// Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    fuss_catalan(1, n)
}

/// `|NC^k(n)| = binom((k+1)n, n) / (kn + 1)`.
pub fn fuss_catalan(k: usize, n: usize) -> BigUint {
    binomial(BigUint::from((k + 1) * n), BigUint::from(n)) / BigUint::from(k * n + 1)
}

/// Alias of [`fuss_catalan`] named after the poset it counts.
pub fn fuss_catalan_kdivisible(k: usize, n: usize) -> BigUint {
    fuss_catalan(k, n)
}

/// `|NC_k(n)| = binom(kn, n) / ((k-1)n + 1)`.
pub fn count_kequal(k: usize, n: usize) -> BigUint {
    if k == 0 {
        return BigUint::from((n == 0) as u32);
    }
    binomial(BigUint::from(k * n), BigUint::from(n)) / BigUint::from((k - 1) * n + 1)
}

/// Number of multichains `x_1 <= ... <= x_k` of length `k` in `NC(n)`.
pub fn count_multichains(k: usize, n: usize) -> BigUint {
    fuss_catalan(k, n)
}

/// Brute-force count of `k`-element multichains in a finite poset given by its order relation.
pub fn count_poset_multichains<P: Fn(usize, usize) -> bool>(size: usize, leq: P, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::from(1u32);
    }
    let mut ending: Vec<BigUint> = vec![BigUint::from(1u32); size];
    for _ in 1..k {
        ending = (0..size)
            .map(|y| (0..size).filter(|&x| leq(x, y)).map(|x| ending[x].clone()).sum())
            .collect();
    }
    ending.into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nc(s: &str) -> NcPartition {
        s.parse().unwrap()
    }

    fn brute_kreweras(pi: &NcPartition) -> NcPartition {
        let n = pi.n();
        let mut best: Option<NcPartition> = None;
        for sigma in enumerate_nc(n).unwrap() {
            let mut labels = vec![0usize; 2 * n];
            for (b, block) in pi.blocks().iter().enumerate() {
                for &x in block {
                    labels[2 * (x - 1)] = b;
                }
            }
            let offset = pi.block_count();
            for (b, block) in sigma.blocks().iter().enumerate() {
                for &x in block {
                    labels[2 * (x - 1) + 1] = offset + b;
                }
            }
            if !Partition::from_labels(&labels).is_noncrossing() {
                continue;
            }
            if best.as_ref().is_none_or(|b| b.leq(&sigma)) {
                best = Some(sigma);
            }
        }
        best.unwrap()
    }

    fn brute_join(p: &NcPartition, q: &NcPartition) -> NcPartition {
        let uppers: Vec<NcPartition> =
            enumerate_nc(p.n()).unwrap().into_iter().filter(|s| p.leq(s) && q.leq(s)).collect();
        uppers.iter().find(|s| uppers.iter().all(|t| s.leq(t))).unwrap().clone()
    }

    #[test]
    fn figure_partition_is_noncrossing() {
        let p: Partition = "{1,2,5,9}{3,4}{6}{7,8}{10,11,12}".parse().unwrap();
        assert!(p.is_noncrossing());
        let q: Partition = "{1,4,7}{2,9}{3,11,12}{5,6,8,10}".parse().unwrap();
        assert!(!q.is_noncrossing());
        assert!("{{1,3},{2,4}}".parse::<NcPartition>().is_err());
    }

    #[test]
    fn text_format_round_trips() {
        let p: Partition = "{3,4}{1,2,5}".parse().unwrap();
        assert_eq!(p.to_string(), "{1,2,5}{3,4}");
        assert!("{1,2}{2}".parse::<Partition>().is_err());
        assert!("{1,3}".parse::<Partition>().is_err());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_nc(6).unwrap().len(), 132);
        let two: Vec<String> = enumerate_kdivisible(2, 2).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(two, vec!["{1,2}{3,4}", "{1,2,3,4}", "{1,4}{2,3}"]);
        assert_eq!(enumerate_kdivisible(3, 2).unwrap().len(), 4);
        assert_eq!(enumerate_kequal(2, 2).unwrap().len(), 2);
        assert_eq!(enumerate_kequal(3, 2).unwrap().len(), 3);
        assert_eq!(enumerate_nc(0).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_is_lexicographic_on_first_blocks_and_canonical() {
        let all = enumerate_nc(5).unwrap();
        for p in &all {
            assert!(p.is_noncrossing());
            let canon = Partition::new(p.n(), p.blocks().to_vec()).unwrap();
            assert_eq!(&canon, p.partition());
        }
        let firsts: Vec<&Vec<usize>> = all.iter().map(|p| &p.blocks()[0]).collect();
        assert!(firsts.windows(2).all(|w| w[0] <= w[1]));
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn resource_limit() {
        assert!(matches!(enumerate_nc(max_enumeration() + 1), Err(Error::ResourceLimit { .. })));
        assert!(matches!(enumerate_kdivisible(2, 14), Err(Error::ResourceLimit { .. })));
        assert_eq!(enumerated_count(24, BlockRule::Divisible(4)).unwrap(), 23751);
    }

    #[test]
    fn kreweras_examples() {
        assert_eq!(nc("{1,2}{3,4}").kreweras().to_string(), "{1}{2,4}{3}");
        assert_eq!(NcPartition::zero(4).kreweras(), NcPartition::one(4));
        assert_eq!(NcPartition::one(4).kreweras(), NcPartition::zero(4));
    }

    #[test]
    fn join_example() {
        let j = join(&nc("{1,3}{2}{4}"), &nc("{1}{2,4}{3}")).unwrap();
        assert_eq!(j, NcPartition::one(4));
    }

    #[test]
    fn catalan_counts() {
        for n in 0..=12 {
            assert_eq!(BigUint::from(enumerated_count(n, BlockRule::Any).unwrap()), catalan(n));
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(count_kequal(2, 3), BigUint::from(5u32));
        assert_eq!(count_multichains(2, 2), BigUint::from(3u32));
        assert_eq!(fuss_catalan_kdivisible(2, 3), BigUint::from(12u32));
        for k in 1..=5 {
            for n in 0..=5 {
                assert_eq!(count_kequal(k + 1, n), fuss_catalan(k, n));
            }
        }
    }

    #[test]
    fn enumeration_matches_closed_forms() {
        for k in 1..=7 {
            for n in 0..=14 / k {
                let div = enumerated_count(k * n, BlockRule::Divisible(k)).unwrap();
                assert_eq!(BigUint::from(div), fuss_catalan(k, n), "divisible k={k} n={n}");
                let eq = enumerated_count(k * n, BlockRule::Equal(k)).unwrap();
                assert_eq!(BigUint::from(eq), count_kequal(k, n), "equal k={k} n={n}");
            }
        }
    }

    #[test]
    fn multichains_by_brute_force() {
        for n in 1..=4 {
            let all = enumerate_nc(n).unwrap();
            for k in 1..=4 {
                let c = count_poset_multichains(all.len(), |a, b| all[a].leq(&all[b]), k);
                assert_eq!(c, count_multichains(k, n));
            }
        }
    }

    #[test]
    fn kreweras_brute_force_and_laws() {
        for n in 1..=7 {
            let all = enumerate_nc(n).unwrap();
            for pi in &all {
                let k = pi.kreweras();
                assert_eq!(k, brute_kreweras(pi), "{pi}");
                assert_eq!(pi.block_count() + k.block_count(), n + 1);
            }
            for a in &all {
                for b in &all {
                    if a.leq(b) {
                        assert!(b.kreweras().leq(&a.kreweras()));
                    }
                }
            }
        }
    }

    #[test]
    fn join_brute_force() {
        for n in 1..=5 {
            let all = enumerate_nc(n).unwrap();
            for a in &all {
                for b in &all {
                    assert_eq!(join(a, b).unwrap(), brute_join(a, b));
                }
            }
        }
    }

    fn arb_nc(max_n: usize) -> impl Strategy<Value = NcPartition> {
        (1..=max_n).prop_flat_map(|n| {
            let all = enumerate_nc(n).unwrap();
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn kreweras_squared_is_rotation(pi in arb_nc(9)) {
            let n = pi.n();
            let kk = pi.kreweras().kreweras();
            let rotated: Vec<Vec<usize>> =
                pi.blocks().iter().map(|b| b.iter().map(|&x| if x == 1 { n } else { x - 1 }).collect()).collect();
            prop_assert_eq!(kk.into_partition(), Partition::new(n, rotated).unwrap());
        }

        #[test]
        fn kreweras_block_count(pi in arb_nc(9)) {
            prop_assert_eq!(pi.block_count() + pi.kreweras().block_count(), pi.n() + 1);
        }

        #[test]
        fn kreweras_interleaving_is_noncrossing(pi in arb_nc(9)) {
            let n = pi.n();
            let k = pi.kreweras();
            let mut labels = vec![0usize; 2 * n];
            for (i, l) in pi.labels().into_iter().enumerate() {
                labels[2 * i] = l;
            }
            for (i, l) in k.labels().into_iter().enumerate() {
                labels[2 * i + 1] = n + l;
            }
            prop_assert!(Partition::from_labels(&labels).is_noncrossing());
        }

        #[test]
        fn join_is_upper_bound(a in arb_nc(7), seed in 0usize..1000) {
            let all = enumerate_nc(a.n()).unwrap();
            let b = &all[seed % all.len()];
            let j = join(&a, b).unwrap();
            prop_assert!(a.leq(&j) && b.leq(&j));
            prop_assert!(j.is_noncrossing());
        }
    }
}
