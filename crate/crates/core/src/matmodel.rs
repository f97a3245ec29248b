//! Random permutation matrices whose cycles all have length k, as a matrix model for free
//! order-k Haar unitaries. Traces are exact fixed-point densities; no matrix is built.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::transforms::{free_word_moment, parse_word, FreeVariable};
use crate::Rational;

/// A permutation of `{0, .., Nk - 1}` made of `N` cycles of length `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCyclePermutation {
    n_cycles: usize,
    k: usize,
    mapping: Vec<u32>,
}

impl KCyclePermutation {
    /// Validates that `mapping` is a permutation with every cycle of length `k`.
    pub fn new(mapping: Vec<u32>, k: usize) -> Result<Self> {
        let size = mapping.len();
        if k == 0 || !size.is_multiple_of(k) {
            return Err(Error::InvalidArgument(format!("size {size} is not a positive multiple of k = {k}")));
        }
        let mut seen = vec![false; size];
        for start in 0..size {
            if seen[start] {
                continue;
            }
            let mut x = start;
            let mut len = 0;
            loop {
                if x >= size || seen[x] {
                    return Err(Error::InvalidArgument("mapping is not a permutation".into()));
                }
                seen[x] = true;
                len += 1;
                x = mapping[x] as usize;
                if x == start {
                    break;
                }
            }
            if len != k {
                return Err(Error::InvalidArgument(format!("cycle of length {len}, expected {k}")));
            }
        }
        Ok(KCyclePermutation { n_cycles: size / k, k, mapping })
    }

    /// Uniform over all such permutations: shuffle `0..Nk`, then read consecutive runs of
    /// `k` entries as cycles. Each target permutation has `N! k^N` preimages.
    pub fn sample<R: rand::Rng + ?Sized>(n_cycles: usize, k: usize, rng: &mut R) -> Result<Self> {
        if n_cycles == 0 || k == 0 {
            return Err(Error::InvalidArgument("N and k must be positive".into()));
        }
        let size = n_cycles.checked_mul(k).filter(|&s| s <= u32::MAX as usize).ok_or(Error::ResourceLimit {
            requested: n_cycles.saturating_mul(k),
            limit: u32::MAX as usize,
        })?;
        let mut order: Vec<u32> = (0..size as u32).collect();
        order.shuffle(rng);
        let mut mapping = vec![0u32; size];
        for chunk in order.chunks(k) {
            for (i, &a) in chunk.iter().enumerate() {
                mapping[a as usize] = chunk[(i + 1) % k];
            }
        }
        Ok(KCyclePermutation { n_cycles, k, mapping })
    }

    pub fn n_cycles(&self) -> usize {
        self.n_cycles
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[u32] {
        &self.mapping
    }

    /// `sigma^e(x)`, with `e` read modulo `k`.
    pub fn apply_power(&self, mut x: u32, e: i64) -> u32 {
        for _ in 0..e.rem_euclid(self.k as i64) {
            x = self.mapping[x as usize];
        }
        x
    }
}

/// Deterministic sample from a seed.
pub fn sample_kcycle(n_cycles: usize, k: usize, seed: u64) -> Result<KCyclePermutation> {
    KCyclePermutation::sample(n_cycles, k, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A word `u_{i_1}^{e_1} ... u_{i_m}^{e_m}` in independent permutations, indices 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSpec {
    letters: Vec<(usize, i64)>,
}

impl WordSpec {
    /// Merges adjacent letters on the same index and drops zero exponents.
    pub fn new(letters: &[(usize, i64)]) -> Result<Self> {
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(letters.len());
        for &(i, e) in letters {
            if i == 0 {
                return Err(Error::InvalidArgument("matrix indices are 1-based".into()));
            }
            match out.last_mut() {
                Some(last) if last.0 == i => {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ if e != 0 => out.push((i, e)),
                _ => {}
            }
        }
        Ok(WordSpec { letters: out })
    }

    /// Parses `"1:1,2:1,1:-1,2:-1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let letters = parse_word(s)?
            .into_iter()
            .map(|(label, e)| {
                label.parse::<usize>().map(|i| (i, e)).map_err(|_| Error::Parse(format!("bad matrix index `{label}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&letters)
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    /// The free prediction for order-`k` Haar unitaries `u_1, .., u_r`.
    pub fn prediction(&self, r: usize, k: usize) -> Result<Rational> {
        self.check_range(r)?;
        let vars: Vec<_> = (1..=r).map(|i| FreeVariable::k_haar(i.to_string(), k)).collect();
        let word: Vec<_> = self.letters.iter().map(|&(i, e)| (i.to_string(), e)).collect();
        free_word_moment(&vars, &word)
    }

    fn check_range(&self, count: usize) -> Result<()> {
        match self.letters.iter().find(|&&(i, _)| i > count) {
            Some(&(index, _)) => Err(Error::IndexOutOfRange { index, count }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.letters.iter().map(|(i, e)| format!("{i}:{e}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Number of fixed points of the composed permutation; the rightmost letter acts first.
pub fn fixed_points(perms: &[KCyclePermutation], w: &WordSpec) -> Result<u64> {
    w.check_range(perms.len())?;
    let first = perms.first().ok_or(Error::IndexOutOfRange { index: 1, count: 0 })?;
    if let Some(p) = perms.iter().find(|p| p.k != first.k) {
        return Err(Error::MismatchedK(first.k, p.k));
    }
    if perms.iter().any(|p| p.n_cycles != first.n_cycles) {
        return Err(Error::InvalidArgument("permutations act on different sizes".into()));
    }
    let size = first.size() as u32;
    let count = (0..size)
        .filter(|&x| w.letters.iter().rev().fold(x, |y, &(i, e)| perms[i - 1].apply_power(y, e)) == x)
        .count();
    Ok(count as u64)
}

/// `tr(P_w) / (Nk)`, the fixed-point density of the word.
pub fn normalized_trace(perms: &[KCyclePermutation], w: &WordSpec) -> Result<Rational> {
    let fix = fixed_points(perms, w)?;
    let size = perms[0].size() as i64;
    Ok(Rational::new(BigInt::from(fix), BigInt::from(size)))
}

/// Outcome for one word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordReport {
    pub word: WordSpec,
    /// Mean normalized trace over the trials.
    pub mean: Rational,
    pub prediction: Rational,
    /// `|mean - prediction|`.
    pub deviation: Rational,
    /// Mean over trials of `|trace - prediction|`.
    pub mean_abs_deviation: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub r: usize,
    pub n_cycles: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub words: Vec<WordReport>,
}

/// Samples `r` independent permutations per trial and compares word traces with the free prediction.
///
/// Trial `t` draws from ChaCha8 stream `t` of `seed`, so results do not depend on scheduling.
pub fn freeness_experiment(
    r: usize,
    n_cycles: usize,
    k: usize,
    words: &[WordSpec],
    trials: usize,
    seed: u64,
) -> Result<FreenessReport> {
    if trials == 0 || r == 0 {
        return Err(Error::InvalidArgument("trials and r must be positive".into()));
    }
    let predictions = words.iter().map(|w| w.prediction(r, k)).collect::<Result<Vec<_>>>()?;
    let size = Rational::from_integer(BigInt::from(n_cycles * k));
    let per_trial: Vec<Vec<u64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let perms =
                (0..r).map(|_| KCyclePermutation::sample(n_cycles, k, &mut rng)).collect::<Result<Vec<_>>>()?;
            words.iter().map(|w| fixed_points(&perms, w)).collect()
        })
        .collect::<Result<_>>()?;
    let count = Rational::from_integer(BigInt::from(trials));
    let words = words
        .iter()
        .zip(predictions)
        .enumerate()
        .map(|(j, (w, prediction))| {
            let traces: Vec<Rational> =
                per_trial.iter().map(|row| Rational::from_integer(BigInt::from(row[j])) / &size).collect();
            let mean = traces.iter().fold(Rational::zero(), |a, b| a + b) / &count;
            let mad = traces.iter().fold(Rational::zero(), |a, b| a + (b - &prediction).abs()) / &count;
            WordReport { word: w.clone(), deviation: (&mean - &prediction).abs(), mean, prediction, mean_abs_deviation: mad }
        })
        .collect();
    Ok(FreenessReport { r, n_cycles, k, trials, seed, words })
}
