//! Truncated formal power series, Puiseux series in `z^{1/k}`, and the
//! functional equations linking moment, cumulant and dilated series.

use std::fmt;

use crate::error::{Error, Result};
use crate::incidence::Sequence;
use crate::scalar::Scalar;

/// `c_0 + c_1 z + ... + c_N z^N`, exact through order `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> PowerSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![T::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(T::one(), 0, order)
    }

    /// `c z^e` truncated at `order`.
    pub fn monomial(c: T, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    /// `constant + sum a_n z^n`.
    pub fn from_sequence(constant: T, a: &Sequence<T>) -> Self {
        let mut coeffs = vec![constant];
        coeffs.extend(a.values().iter().cloned());
        PowerSeries { coeffs }
    }

    /// Coefficients `c_1..c_N` as a sequence.
    pub fn tail_sequence(&self) -> Result<Sequence<T>> {
        Sequence::new(self.coeffs[1..].to_vec())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs[..=order.min(self.order())].to_vec();
        coeffs.resize(order + 1, T::zero());
        PowerSeries { coeffs }
    }

    fn truncated_to(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries { coeffs: (0..=n).map(|i| self.coeffs[i].clone() + &other.coeffs[i]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries { coeffs: (0..=n).map(|i| self.coeffs[i].clone() - &other.coeffs[i]).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect() }
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b;
            }
        }
        PowerSeries { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `z^s` times the series, keeping the order.
    pub fn shift_up(&self, s: usize) -> Self {
        let mut coeffs = vec![T::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries { coeffs }.truncated_to(self.order())
    }

    /// Drops the first `s` coefficients (division by `z^s`); the order falls by `s`.
    pub fn shift_down(&self, s: usize) -> Result<Self> {
        if s > self.order() {
            return Err(Error::OrderTooSmall { need: s, have: self.order() });
        }
        Self::new(self.coeffs[s..].to_vec())
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let mut r: Vec<T> = Vec::with_capacity(n + 1);
        r.push(T::one() / c0.clone());
        for m in 1..=n {
            let mut acc = T::zero();
            for j in 1..=m {
                acc = acc + self.coeffs[j].clone() * &r[m - j];
            }
            r.push(-acc / c0.clone());
        }
        Ok(PowerSeries { coeffs: r })
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = PowerSeries::monomial(self.coeffs[n].clone(), 0, n);
        for i in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Compositional inverse; needs `c_0 = 0`, `c_1 != 0`.
    pub fn comp_inverse(&self) -> Result<Self> {
        if self.order() < 1 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let c1 = self.coeffs[1].clone();
        let mut q = Self::zero(n);
        q.coeffs[1] = T::one() / c1.clone();
        for m in 2..=n {
            let partial = self.truncate(m).compose(&q.truncate(m))?;
            q.coeffs[m] = -partial.coeffs[m].clone() / c1.clone();
        }
        Ok(q)
    }

    /// `U^alpha` for `U(0) = 1`, via `alpha U' R = U R'`.
    pub fn pow_scalar(&self, alpha: &T) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument("fractional power needs constant term 1".into()));
        }
        let n = self.order();
        let mut r: Vec<T> = Vec::with_capacity(n + 1);
        r.push(T::one());
        for m in 1..=n {
            let mut acc = T::zero();
            for j in 0..m {
                let w = alpha.clone() * T::from_int((m - j) as i64) - T::from_int(j as i64);
                acc = acc + w * &self.coeffs[m - j] * &r[j];
            }
            r.push(acc / T::from_int(m as i64));
        }
        Ok(PowerSeries { coeffs: r })
    }

    /// Compares on the common order.
    pub fn close_to(&self, other: &Self) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.close_to(b))
    }
}

impl<T: Scalar> fmt::Display for PowerSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// `sum_j c_j w^{valuation + j}` with `w = z^{1/ramification}`, exact through `w^{precision}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxSeries<T> {
    ramification: usize,
    valuation: i64,
    coeffs: Vec<T>,
}

impl<T: Scalar> PuiseuxSeries<T> {
    pub fn new(ramification: usize, valuation: i64, coeffs: Vec<T>) -> Result<Self> {
        if ramification == 0 {
            return Err(Error::InvalidArgument("ramification must be positive".into()));
        }
        if coeffs.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(PuiseuxSeries { ramification, valuation, coeffs })
    }

    pub fn from_power_series(p: &PowerSeries<T>) -> Self {
        PuiseuxSeries { ramification: 1, valuation: 0, coeffs: p.coeffs.clone() }
    }

    pub fn ramification(&self) -> usize {
        self.ramification
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Largest `w`-exponent whose coefficient is known.
    pub fn precision(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `w^e`; `None` beyond the precision.
    pub fn coeff_at(&self, e: i64) -> Option<T> {
        if e > self.precision() {
            None
        } else if e < self.valuation {
            Some(T::zero())
        } else {
            Some(self.coeffs[(e - self.valuation) as usize].clone())
        }
    }

    /// Same series written in `z^{1/m}`; `m` must be a multiple of the ramification.
    pub fn with_ramification(&self, m: usize) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.ramification) {
            return Err(Error::InvalidArgument(format!("{m} is not a multiple of {}", self.ramification)));
        }
        let f = m / self.ramification;
        let mut coeffs = Vec::with_capacity((self.coeffs.len() - 1) * f + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.extend(std::iter::repeat_n(T::zero(), f - 1));
            }
            coeffs.push(c.clone());
        }
        Ok(PuiseuxSeries { ramification: m, valuation: self.valuation * f as i64, coeffs })
    }

    fn unify(&self, other: &Self) -> (Self, Self) {
        let m = num_integer::lcm(self.ramification, other.ramification);
        (self.with_ramification(m).unwrap(), other.with_ramification(m).unwrap())
    }

    pub fn scale(&self, c: &T) -> Self {
        PuiseuxSeries { coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect(), ..self.clone() }
    }

    /// Product, exact through the smaller of the two propagated precisions.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.unify(other);
        let valuation = a.valuation + b.valuation;
        let precision = (a.precision() + b.valuation).min(b.precision() + a.valuation);
        let len = (precision - valuation + 1) as usize;
        let mut coeffs = vec![T::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j].clone() + x.clone() * y;
            }
        }
        PuiseuxSeries { ramification: a.ramification, valuation, coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = PuiseuxSeries { ramification: self.ramification, valuation: 0, coeffs: vec![T::one(); 1] };
        if e == 0 {
            return acc;
        }
        acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficient-wise agreement over the common known range. Returns the number of
    /// compared exponents, or `None` on a mismatch.
    pub fn agreement(&self, other: &Self) -> Option<usize> {
        let (a, b) = self.unify(other);
        let lo = a.valuation.min(b.valuation);
        let hi = a.precision().min(b.precision());
        let mut count = 0;
        for e in lo..=hi {
            let (x, y) = (a.coeff_at(e).unwrap(), b.coeff_at(e).unwrap());
            if !x.close_to(&y) {
                return None;
            }
            count += 1;
        }
        Some(count)
    }

    /// The coefficients as an ordinary series in `w`, when no negative exponent is present.
    pub fn as_series_in_w(&self) -> Option<PowerSeries<T>> {
        if self.valuation < 0 {
            return None;
        }
        let mut coeffs = vec![T::zero(); self.valuation as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Some(PowerSeries { coeffs })
    }

    /// Ordinary power series when the ramification is 1 and no negative exponent is present.
    pub fn to_power_series(&self) -> Option<PowerSeries<T>> {
        if self.ramification != 1 {
            return None;
        }
        self.as_series_in_w()
    }
}

impl<T: Scalar> fmt::Display for PuiseuxSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.ramification as i64;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.valuation + i as i64;
            let g = num_integer::gcd(e, k);
            match (e / g, k / g) {
                (0, _) => write!(f, "{c}")?,
                (p, 1) => write!(f, "({c})z^{p}")?,
                (p, q) => write!(f, "({c})z^({p}/{q})")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^({}/{k}))", self.precision() + 1)
    }
}

/// `P / c_k` together with `c_k`, where `z^k` is the lowest nonzero term of `P`.
pub fn normalize_leading<T: Scalar>(p: &PowerSeries<T>, k: usize) -> Result<(PowerSeries<T>, T)> {
    if k > p.order() || (0..k).any(|i| !p.coeff(i).is_zero()) || p.coeff(k).is_zero() {
        return Err(Error::BadLeadingCoefficient);
    }
    let ck = p.coeff(k).clone();
    Ok((p.scale(&(T::one() / ck.clone())), ck))
}

/// Principal branch of the inverse of `P = c_k z^k + ...` as a series `chi(w) = sum beta_i w^i`,
/// `w = z^{1/k}`, with `P(chi(w)) = w^k` and `beta_1 = c_k^{-1/k} > 0`.
pub fn frac_inverse<T: Scalar>(p: &PowerSeries<T>, k: usize) -> Result<PuiseuxSeries<T>> {
    if k == 0 || k > p.order() || (0..k).any(|i| !p.coeff(i).is_zero()) {
        return Err(Error::BadLeadingCoefficient);
    }
    let ck = p.coeff(k).clone();
    if k == 1 {
        let q = p.comp_inverse()?;
        return PuiseuxSeries::new(1, 1, q.coeffs[1..].to_vec());
    }
    if ck <= T::zero() {
        return Err(Error::BadLeadingCoefficient);
    }
    let root = ck.nth_root(k as u32).ok_or(Error::IrrationalRoot { k })?;
    // P = c_k z^k U(z), U(0) = 1; chi inverts V(z) = c_k^{1/k} z U(z)^{1/k}.
    let u = p.shift_down(k)?.scale(&(T::one() / ck));
    let alpha = T::one() / T::from_int(k as i64);
    let v = u.pow_scalar(&alpha)?.scale(&root);
    let v = PowerSeries::from_sequence(T::zero(), &Sequence::new(v.coeffs.clone())?);
    let chi = v.comp_inverse()?;
    PuiseuxSeries::new(k, 1, chi.coeffs[1..].to_vec())
}

/// Solves `A = B(z A^k)` for `A` with `A(0) = 1`; `B(0)` must be 1.
pub fn solve_a_given_b<T: Scalar>(b: &PowerSeries<T>, k: usize, order: usize) -> Result<PowerSeries<T>> {
    if !b.coeff(0).is_one() {
        return Err(Error::InvalidArgument("constant term must be 1".into()));
    }
    if b.order() < order {
        return Err(Error::OrderTooSmall { need: order, have: b.order() });
    }
    let b = b.truncate(order);
    let mut a = PowerSeries::one(order);
    for m in 1..=order {
        let inner = a.truncate(m).pow(k).shift_up(1);
        let next = b.truncate(m).compose(&inner)?;
        a.coeffs[m] = next.coeffs[m].clone();
    }
    Ok(a)
}

/// The unique `B` with `A(z) = B(z A(z))`, namely `A` composed with the inverse of `z A`.
pub fn solve_outer<T: Scalar>(a: &PowerSeries<T>) -> Result<PowerSeries<T>> {
    if !a.coeff(0).is_one() {
        return Err(Error::InvalidArgument("constant term must be 1".into()));
    }
    let za = a.shift_up(1);
    a.compose(&za.comp_inverse()?)
}

/// `x = y(z x^e)` on the common order.
pub fn satisfies_fe<T: Scalar>(x: &PowerSeries<T>, y: &PowerSeries<T>, e: usize) -> Result<bool> {
    let n = x.order().min(y.order());
    let x = x.truncate(n);
    let rhs = y.truncate(n).compose(&x.pow(e).shift_up(1))?;
    Ok(x.close_to(&rhs))
}

/// The three relations between a moment series `M`, a cumulant series `B` and a
/// dilated-cumulant series `A`, any two of which imply the third.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `M = B(z M)`.
    MomentCumulant,
    /// `M = A(z M^k)`.
    MomentDilated,
    /// `B = A(z B^{k-1})`.
    CumulantDilated,
}

/// Series triple `(M, B, A)`; entries not needed by a relation may be absent.
#[derive(Clone, Debug, Default)]
pub struct SeriesTriple<T> {
    pub m: Option<PowerSeries<T>>,
    pub b: Option<PowerSeries<T>>,
    pub a: Option<PowerSeries<T>>,
}

/// Checks one relation of the triple.
pub fn check_relation<T: Scalar>(t: &SeriesTriple<T>, rel: Relation, k: usize) -> Result<bool> {
    let need = |s: &Option<PowerSeries<T>>, name: &str| {
        s.clone().ok_or_else(|| Error::InvalidArgument(format!("series {name} missing")))
    };
    match rel {
        Relation::MomentCumulant => satisfies_fe(&need(&t.m, "M")?, &need(&t.b, "B")?, 1),
        Relation::MomentDilated => satisfies_fe(&need(&t.m, "M")?, &need(&t.a, "A")?, k),
        Relation::CumulantDilated => {
            if k == 0 {
                return Err(Error::InvalidArgument("k must be positive".into()));
            }
            satisfies_fe(&need(&t.b, "B")?, &need(&t.a, "A")?, k - 1)
        }
    }
}

/// `check_relation` for the pair `(A, B)`; only `Relation::CumulantDilated` involves just these two.
pub fn check_pair<T: Scalar>(a: &PowerSeries<T>, b: &PowerSeries<T>, k: usize) -> Result<bool> {
    let t = SeriesTriple { m: None, b: Some(b.clone()), a: Some(a.clone()) };
    check_relation(&t, Relation::CumulantDilated, k)
}

/// The chain `B_1, ..., B_k` with `B_i(z) = B_{i+1}(z B_i(z))`, starting from `B_1`.
pub fn cumulant_chain<T: Scalar>(b1: &PowerSeries<T>, k: usize) -> Result<Vec<PowerSeries<T>>> {
    let mut chain = vec![b1.clone()];
    for _ in 1..k {
        let next = solve_outer(chain.last().unwrap())?;
        chain.push(next);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpart::{catalan, count_kequal, fuss_catalan};
    use crate::scalar::rat;
    use crate::Rational;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type PS = PowerSeries<Rational>;

    fn ps(v: &[i64]) -> PS {
        PS::from_ints(v).unwrap()
    }

    fn arb_unit_series(order: usize) -> impl Strategy<Value = PS> {
        proptest::collection::vec((-4i64..=4, 1i64..=3), order)
            .prop_map(|v| {
                let mut c = vec![Rational::from_int(1)];
                c.extend(v.into_iter().map(|(p, q)| rat(p, q)));
                PS::new(c).unwrap()
            })
    }

    #[test]
    fn inverse_of_z_plus_z2() {
        let q = ps(&[0, 1, 1, 0, 0]).comp_inverse().unwrap();
        assert_eq!(q, ps(&[0, 1, -1, 2, -5]));
        assert!(matches!(ps(&[1, 1]).comp_inverse(), Err(Error::NotInvertible)));
        assert!(matches!(ps(&[0, 0, 1]).comp_inverse(), Err(Error::NotInvertible)));
    }

    #[test]
    fn reciprocal_and_compose_errors() {
        assert_eq!(ps(&[1, -1, 0, 0]).reciprocal().unwrap(), ps(&[1, 1, 1, 1]));
        assert!(matches!(ps(&[0, 1]).reciprocal(), Err(Error::ZeroConstantTerm)));
        assert!(matches!(ps(&[1, 1]).compose(&ps(&[1, 1])), Err(Error::NonzeroConstantTerm)));
    }

    #[test]
    fn fractional_power() {
        let r = ps(&[1, 1, 0, 0, 0]).pow_scalar(&rat(1, 2)).unwrap();
        assert_eq!(r.mul(&r), ps(&[1, 1, 0, 0, 0]));
        assert_eq!(r.coeff(2), &rat(-1, 8));
    }

    #[test]
    fn frac_inverse_example() {
        let chi = frac_inverse(&ps(&[0, 0, 1, 1, 0, 0, 0]), 2).unwrap();
        assert_eq!(chi.ramification(), 2);
        assert_eq!(chi.coeffs()[0], rat(1, 1));
        assert_eq!(chi.coeffs()[1], rat(-1, 2));
        assert!(matches!(frac_inverse(&ps(&[0, 0, 2, 1]), 2), Err(Error::IrrationalRoot { k: 2 })));
        assert!(matches!(frac_inverse(&ps(&[0, 0, -1, 1]), 2), Err(Error::BadLeadingCoefficient)));
        assert!(matches!(frac_inverse(&ps(&[0, 1, 1]), 2), Err(Error::BadLeadingCoefficient)));
    }

    #[test]
    fn frac_inverse_principal_branch_and_root() {
        let p = PS::new(vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(8, 27), rat(1, 2), rat(-3, 1), rat(1, 1), rat(2, 5)]).unwrap();
        let chi = frac_inverse(&p, 3).unwrap();
        assert_eq!(chi.coeffs()[0], rat(3, 2));
        let w = chi.as_series_in_w().unwrap();
        let back = p.compose(&w).unwrap();
        let expect = PS::monomial(rat(1, 1), 3, back.order());
        assert_eq!(back.truncate(p.order() - 3 + 1), expect.truncate(p.order() - 3 + 1));
        let (normed, ck) = normalize_leading(&p, 3).unwrap();
        assert_eq!(ck, rat(8, 27));
        assert_eq!(normed.coeff(3), &rat(1, 1));
    }

    #[test]
    fn functional_equation_examples() {
        let cat = PS::new((0..=8).map(|n| Rational::from_integer(BigInt::from(catalan(n)))).collect()).unwrap();
        let geometric = PS::from_ints(&[1; 9]).unwrap();
        let one_plus_z = PS::monomial(rat(1, 1), 0, 8).add(&PS::monomial(rat(1, 1), 1, 8));
        assert_eq!(solve_a_given_b(&one_plus_z, 1, 8).unwrap(), geometric);
        assert_eq!(solve_a_given_b(&geometric, 1, 8).unwrap(), cat);
        assert_eq!(solve_a_given_b(&one_plus_z, 2, 8).unwrap(), cat);
        assert_eq!(solve_a_given_b(&one_plus_z, 3, 4).unwrap(), ps(&[1, 1, 3, 12, 55]));
        for k in 1..=4 {
            let a = solve_a_given_b(&one_plus_z, k, 6).unwrap();
            let b = solve_a_given_b(&geometric, k, 6).unwrap();
            for n in 0..=6 {
                assert_eq!(a.coeff(n), &Rational::from_integer(BigInt::from(count_kequal(k, n))));
                assert_eq!(b.coeff(n), &Rational::from_integer(BigInt::from(fuss_catalan(k, n))));
            }
        }
        assert!(!check_pair(&ps(&[1, 1]), &ps(&[1, 2]), 2).unwrap());
        for k in 1..=3 {
            assert!(check_pair(&ps(&[1, 0, 0]), &ps(&[1, 0, 0]), k).unwrap());
        }
    }

    #[test]
    fn puiseux_ramification_and_agreement() {
        let a = PuiseuxSeries::new(2, -1, vec![rat(1, 1), rat(2, 1), rat(3, 1)]).unwrap();
        let b = a.with_ramification(4).unwrap();
        assert_eq!(b.valuation(), -2);
        assert_eq!(b.coeffs(), &[rat(1, 1), rat(0, 1), rat(2, 1), rat(0, 1), rat(3, 1)]);
        assert_eq!(a.agreement(&b), Some(5));
        let c = a.mul(&a);
        assert_eq!(c.valuation(), -2);
        assert_eq!(c.coeffs(), &[rat(1, 1), rat(4, 1), rat(10, 1)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn inverse_round_trip(tail in proptest::collection::vec((-4i64..=4, 1i64..=3), 11), lead in 1i64..=3) {
            let mut c = vec![Rational::from_int(0), Rational::from_int(lead)];
            c.extend(tail.into_iter().map(|(p, q)| rat(p, q)));
            let p = PS::new(c).unwrap();
            let q = p.comp_inverse().unwrap();
            let id = PS::monomial(rat(1, 1), 1, 12);
            prop_assert_eq!(p.compose(&q).unwrap(), id.clone());
            prop_assert_eq!(q.compose(&p).unwrap(), id);
        }

        #[test]
        fn outer_duality(a in arb_unit_series(8)) {
            let b = solve_outer(&a).unwrap();
            prop_assert!(satisfies_fe(&a, &b, 1).unwrap());
            let inv = b.reciprocal().unwrap().shift_up(1);
            prop_assert_eq!(a.compose(&inv).unwrap(), b.clone());
            prop_assert_eq!(solve_a_given_b(&b, 1, 8).unwrap(), a);
        }

        #[test]
        fn two_relations_imply_third(a in arb_unit_series(8), k in 1usize..=4) {
            let m = solve_a_given_b(&a, k, 8).unwrap();
            let b = solve_outer(&m).unwrap();
            let t = SeriesTriple { m: Some(m), b: Some(b.clone()), a: Some(a.clone()) };
            prop_assert!(check_relation(&t, Relation::MomentCumulant, k).unwrap());
            prop_assert!(check_relation(&t, Relation::MomentDilated, k).unwrap());
            prop_assert!(check_relation(&t, Relation::CumulantDilated, k).unwrap());
            let chain = cumulant_chain(&b, k).unwrap();
            for (i, bi) in chain.iter().enumerate() {
                prop_assert!(satisfies_fe(bi, &a, k - (i + 1)).unwrap());
            }
            prop_assert_eq!(chain.last().unwrap(), &a);
        }
    }
}
