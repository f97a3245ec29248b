//! Multiplicative families on the non-crossing lattice and their convolution.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::ncpart::{self, BlockRule, Partition};
use crate::scalar::{from_count, powi, Scalar};

/// Values `a_1, ..., a_N` of a multiplicative family on the blocks `1_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequence<T> {
    values: Vec<T>,
}

impl<T: Scalar> Sequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Sequence { values })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        assert!(order > 0, "sequence order must be positive");
        Sequence { values: (1..=order).map(f).collect() }
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| T::from_int(v)).collect())
    }

    /// The unit family `delta = (1, 0, 0, ...)`.
    pub fn delta(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 1 { T::one() } else { T::zero() })
    }

    /// The family `zeta = (1, 1, 1, ...)`.
    pub fn zeta(order: usize) -> Self {
        Self::from_fn(order, |_| T::one())
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// Entry `a_n`, 1-based. Panics when `n` is out of range.
    pub fn get(&self, n: usize) -> &T {
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn require_order(&self, need: usize) -> Result<()> {
        if self.order() < need {
            return Err(Error::OrderTooSmall { need, have: self.order() });
        }
        Ok(())
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        self.require_order(order)?;
        Self::new(self.values[..order].to_vec())
    }

    pub fn scale(&self, c: &T) -> Self {
        Sequence { values: self.values.iter().map(|v| v.clone() * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Sequence { values: (0..n).map(|i| self.values[i].clone() + &other.values[i]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Sequence { values: (0..n).map(|i| self.values[i].clone() - &other.values[i]).collect() }
    }

    /// Entrywise comparison through [`Scalar::close_to`] on the common prefix.
    pub fn close_to(&self, other: &Self) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a.close_to(b))
    }

    /// Product `a_pi` of block values over a list of block sizes.
    pub fn product_over(&self, sizes: &[u8]) -> T {
        sizes.iter().fold(T::one(), |acc, &s| acc * self.get(s as usize))
    }
}

impl<T: Scalar> fmt::Display for Sequence<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Multiplicative extension `a_pi = prod over blocks V of a_{|V|}`.
pub fn extend<T: Scalar>(a: &Sequence<T>, p: &Partition) -> Result<T> {
    let sizes = p.block_sizes();
    let need = sizes.iter().copied().max().unwrap_or(0);
    a.require_order(need)?;
    Ok(sizes.iter().fold(T::one(), |acc, &s| acc * a.get(s)))
}

/// Multiplicities of `(type(pi), type(Kr(pi)))` over `pi` in `NC(n)`; types are sorted block-size lists.
#[derive(Debug)]
pub struct TypeTable {
    pub n: usize,
    pub pairs: Vec<(Vec<u8>, Vec<u8>, u64)>,
    pub singles: Vec<(Vec<u8>, u64)>,
}

fn block_type(labels: &[u8]) -> Vec<u8> {
    let mut sizes: Vec<u8> = Vec::new();
    for &l in labels {
        let l = l as usize;
        if sizes.len() <= l {
            sizes.resize(l + 1, 0);
        }
        sizes[l] += 1;
    }
    sizes.sort_unstable();
    sizes
}

fn build_table(n: usize) -> Result<TypeTable> {
    let mut pairs: HashMap<(Vec<u8>, Vec<u8>), u64> = HashMap::new();
    ncpart::for_each_nc(n, BlockRule::Any, |labels| {
        let key = (block_type(labels), block_type(&ncpart::kreweras_labels(labels)));
        *pairs.entry(key).or_insert(0) += 1;
    })?;
    let mut singles: HashMap<Vec<u8>, u64> = HashMap::new();
    for ((t, _), c) in &pairs {
        *singles.entry(t.clone()).or_insert(0) += c;
    }
    let mut pairs: Vec<_> = pairs.into_iter().map(|((a, b), c)| (a, b, c)).collect();
    pairs.sort_unstable();
    let mut singles: Vec<_> = singles.into_iter().collect();
    singles.sort_unstable();
    Ok(TypeTable { n, pairs, singles })
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<TypeTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<TypeTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized type table for `NC(n)`; safe to call from several threads.
pub fn type_table(n: usize) -> Result<Arc<TypeTable>> {
    ncpart::check_enumeration_size(n)?;
    if let Some(t) = cache().read().unwrap().get(&n) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(build_table(n)?);
    let mut guard = cache().write().unwrap();
    Ok(Arc::clone(guard.entry(n).or_insert(table)))
}

/// `(f * g)_n = sum over pi in NC(n) of f_pi g_{Kr(pi)}` for `n = 1..=order`.
pub fn conv<T: Scalar>(f: &Sequence<T>, g: &Sequence<T>, order: usize) -> Result<Sequence<T>> {
    f.require_order(order)?;
    g.require_order(order)?;
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let table = type_table(n)?;
        let mut acc = T::zero();
        for (a, b, c) in &table.pairs {
            acc = acc + from_count::<T>(*c) * f.product_over(a) * g.product_over(b);
        }
        out.push(acc);
    }
    Sequence::new(out)
}

/// `sum over pi in NC(n) of f_pi`, which equals `(f * zeta)_n`.
pub fn partition_sum<T: Scalar>(f: &Sequence<T>, order: usize) -> Result<Sequence<T>> {
    f.require_order(order)?;
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let table = type_table(n)?;
        let mut acc = T::zero();
        for (a, c) in &table.singles {
            acc = acc + from_count::<T>(*c) * f.product_over(a);
        }
        out.push(acc);
    }
    Sequence::new(out)
}

/// Solves `f * g = h` for `g`, entry by entry; needs `f_1 != 0`.
pub fn conv_solve_right<T: Scalar>(f: &Sequence<T>, h: &Sequence<T>, order: usize) -> Result<Sequence<T>> {
    f.require_order(order)?;
    h.require_order(order)?;
    if f.get(1).is_zero() {
        return Err(Error::NotInvertible);
    }
    let mut g: Vec<T> = Vec::with_capacity(order);
    for n in 1..=order {
        let table = type_table(n)?;
        g.push(T::zero());
        let partial = Sequence { values: g.clone() };
        let mut acc = h.get(n).clone();
        for (a, b, c) in &table.pairs {
            if b.len() == 1 && b[0] as usize == n {
                continue;
            }
            acc = acc - from_count::<T>(*c) * f.product_over(a) * partial.product_over(b);
        }
        g[n - 1] = acc / powi(f.get(1), n);
    }
    Sequence::new(g)
}

/// The Möbius family, inverse of `zeta`: `(-1)^{n-1} C_{n-1}`.
pub fn moebius_family<T: Scalar>(order: usize) -> Result<Sequence<T>> {
    conv_solve_right(&Sequence::zeta(order), &Sequence::delta(order), order)
}

/// `a^{(k)}`: `a^{(k)}_{kn} = a_n`, zero off multiples of `k`; order `k * order(a)`.
pub fn dilate<T: Scalar>(a: &Sequence<T>, k: usize) -> Result<Sequence<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("dilation factor must be positive".into()));
    }
    Ok(Sequence::from_fn(k * a.order(), |i| if i % k == 0 { a.get(i / k).clone() } else { T::zero() }))
}

/// Inverse of [`dilate`]; fails when an entry off the multiples of `k` is nonzero.
pub fn undilate<T: Scalar>(a: &Sequence<T>, k: usize) -> Result<Sequence<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("dilation factor must be positive".into()));
    }
    if let Some(i) = (1..=a.order()).find(|&i| i % k != 0 && !a.get(i).is_close_to_zero()) {
        return Err(Error::NotDilated { k, index: i });
    }
    Sequence::new((1..=a.order() / k).map(|n| a.get(k * n).clone()).collect())
}

/// `g * h^{*k}` by `k` successive convolutions.
pub fn power_conv<T: Scalar>(g: &Sequence<T>, h: &Sequence<T>, k: usize, order: usize) -> Result<Sequence<T>> {
    let mut acc = g.truncate(order)?;
    for _ in 0..k {
        acc = conv(&acc, h, order)?;
    }
    Ok(acc)
}

/// `g * h^{*k}` through the dilated identity: undilate `g^{(k)} * h` at order `k * order`.
pub fn power_conv_dilated<T: Scalar>(g: &Sequence<T>, h: &Sequence<T>, k: usize, order: usize) -> Result<Sequence<T>> {
    if k == 0 {
        return g.truncate(order);
    }
    let gk = dilate(&g.truncate(order)?, k)?;
    undilate(&conv(&gk, h, k * order)?, k)
}

/// `g * zeta^{*k}` by iterated convolution.
pub fn zeta_power_conv<T: Scalar>(g: &Sequence<T>, k: usize, order: usize) -> Result<Sequence<T>> {
    let mut acc = g.truncate(order)?;
    for _ in 0..k {
        acc = partition_sum(&acc, order)?;
    }
    Ok(acc)
}

/// `g * zeta^{*k}` as the undilation of `sum over NC(kn)` of the dilated family.
pub fn zeta_power_conv_dilated<T: Scalar>(g: &Sequence<T>, k: usize, order: usize) -> Result<Sequence<T>> {
    if k == 0 {
        return g.truncate(order);
    }
    let gk = dilate(&g.truncate(order)?, k)?;
    undilate(&partition_sum(&gk, k * order)?, k)
}
