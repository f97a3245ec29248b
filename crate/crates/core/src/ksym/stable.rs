//! Symbolic algebra of monomial S-transforms `c e^{i pi q} theta z^gamma` of stable laws.
//!
//! `theta_alpha` magnitudes stay symbolic. Their only rewrite rule is
//! `theta_{1/(1+t)} theta_{1/(1+s)} = theta_{1/(1+t+s)}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::rat;
use crate::Rational;

/// Trial-division bound; a larger cofactor is kept as a single base.
const TRIAL_LIMIT: u64 = 1 << 20;

/// A positive real of the form `r * prod p^{e_p}` with `r` rational and every `e_p` in `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdScale {
    rational: Rational,
    surds: BTreeMap<BigUint, Rational>,
}

fn factor(mut n: BigUint) -> Vec<(BigUint, u64)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT && &BigUint::from(p) * p <= n {
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    out
}

impl SurdScale {
    pub fn rational(r: Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositiveParameter);
        }
        Ok(SurdScale { rational: r, surds: BTreeMap::new() })
    }

    pub fn one() -> Self {
        SurdScale { rational: Rational::one(), surds: BTreeMap::new() }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    /// Prime bases with their fractional exponents.
    pub fn surds(&self) -> &BTreeMap<BigUint, Rational> {
        &self.surds
    }

    pub fn is_rational(&self) -> bool {
        self.surds.is_empty()
    }

    fn absorb(&mut self, base: BigUint, e: Rational) {
        let total = self.surds.remove(&base).unwrap_or_else(Rational::zero) + e;
        let whole = total.floor();
        let frac = total - &whole;
        let b = Rational::from_integer(BigInt::from(base.clone()));
        let w = whole.to_integer();
        let pow = num_traits::pow(b, w.magnitude().try_into().expect("exponent fits in usize"));
        self.rational = if w.is_negative() { &self.rational / pow } else { &self.rational * pow };
        if !frac.is_zero() {
            self.surds.insert(base, frac);
        }
    }

    /// `self * r^e` for positive rational `r`.
    pub fn mul_power(&self, r: &Rational, e: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositiveParameter);
        }
        let mut out = self.clone();
        for (p, a) in factor(r.numer().magnitude().clone()) {
            out.absorb(p, e * Rational::from_integer(BigInt::from(a)));
        }
        for (p, a) in factor(r.denom().magnitude().clone()) {
            out.absorb(p, -e * Rational::from_integer(BigInt::from(a)));
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.rational *= &other.rational;
        for (p, e) in &other.surds {
            out.absorb(p.clone(), e.clone());
        }
        out
    }
}

impl fmt::Display for SurdScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        for (p, e) in &self.surds {
            write!(f, "*{p}^({e})")?;
        }
        Ok(())
    }
}

/// `scale * theta_{a_1} ... theta_{a_m} * e^{i pi phase} * z^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableMonomial {
    pub scale: SurdScale,
    /// `e^{i pi phase}`, kept in `[0, 2)`.
    pub phase: Rational,
    pub exponent: Rational,
    /// Indices of the `theta` atoms, sorted.
    pub theta: Vec<Rational>,
}

fn reduce_phase(q: Rational) -> Rational {
    let two = rat(2, 1);
    &q - (&q / &two).floor() * &two
}

impl StableMonomial {
    pub fn new(scale: SurdScale, phase: Rational, exponent: Rational, mut theta: Vec<Rational>) -> Self {
        theta.sort();
        StableMonomial { scale, phase: reduce_phase(phase), exponent, theta }
    }

    /// The constant `1`, the S-transform of `delta_1`.
    pub fn unit() -> Self {
        Self::new(SurdScale::one(), Rational::zero(), Rational::zero(), Vec::new())
    }

    /// Applies the rewrite rule until at most one atom is left; `theta_1` is dropped.
    pub fn reduced_theta(&self) -> Vec<Rational> {
        if self.theta.is_empty() {
            return Vec::new();
        }
        let r: Rational = self.theta.iter().map(|a| a.recip() - Rational::one()).sum();
        if r.is_zero() {
            Vec::new()
        } else {
            vec![(Rational::one() + r).recip()]
        }
    }

    /// Equality of scale, phase and exponent, with magnitudes compared under the rewrite rule.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.scale == other.scale
            && self.phase == other.phase
            && self.exponent == other.exponent
            && self.reduced_theta() == other.reduced_theta()
    }
}

impl fmt::Display for StableMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scale)?;
        for a in &self.theta {
            write!(f, "*theta[{a}]")?;
        }
        write!(f, "*exp(i*pi*{})*z^({})", self.phase, self.exponent)
    }
}

/// S-transform of `mu boxtimes nu` from those of `mu` and `nu`.
pub fn stable_monomial_mul(a: &StableMonomial, b: &StableMonomial) -> StableMonomial {
    let theta = a.theta.iter().chain(&b.theta).cloned().collect();
    StableMonomial::new(a.scale.mul(&b.scale), &a.phase + &b.phase, &a.exponent + &b.exponent, theta)
}

/// S-transform of `mu^{boxplus t}`: `(1/t) S(z/t)`, so `c` becomes `c t^{-(1 + gamma)}`.
pub fn stable_add_power(a: &StableMonomial, t: &Rational) -> Result<StableMonomial> {
    let e = -(Rational::one() + &a.exponent);
    Ok(StableMonomial { scale: a.scale.mul_power(t, &e)?, ..a.clone() })
}

/// S-transform of the dilation `D_t(mu)`: `(1/t) S`.
pub fn stable_dilate(a: &StableMonomial, t: &Rational) -> Result<StableMonomial> {
    Ok(StableMonomial { scale: a.scale.mul_power(t, &-Rational::one())?, ..a.clone() })
}

/// Positive stable law `nu_alpha`, `0 < alpha <= 1`: `theta_alpha e^{i pi (1-alpha)/alpha} z^{(1-alpha)/alpha}`.
pub fn positive_stable(alpha: &Rational) -> Result<StableMonomial> {
    if !alpha.is_positive() || *alpha > Rational::one() {
        return Err(Error::InvalidArgument("stable index must lie in (0, 1]".into()));
    }
    let g = (Rational::one() - alpha) / alpha;
    Ok(StableMonomial::new(SurdScale::one(), g.clone(), g, vec![alpha.clone()]))
}

/// The order-`k` Haar law: `z^{(1-k)/k}`.
pub fn w_k(k: usize) -> Result<StableMonomial> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let k = rat(k as i64, 1);
    Ok(StableMonomial::new(SurdScale::one(), Rational::zero(), (Rational::one() - &k) / k, Vec::new()))
}

/// The k-symmetric stable law of index `beta` as `w_k boxtimes nu_alpha`,
/// `beta = k alpha / (alpha + k - k alpha)`. Needs `0 < beta <= k`.
pub fn sigma_k(k: usize, beta: &Rational) -> Result<StableMonomial> {
    if k == 0 || !beta.is_positive() {
        return Err(Error::InvalidArgument("k and beta must be positive".into()));
    }
    let kr = rat(k as i64, 1);
    let r = beta.recip() - kr.recip();
    if r.is_negative() {
        return Err(Error::InvalidArgument("beta must not exceed k".into()));
    }
    let alpha = (Rational::one() + r).recip();
    Ok(stable_monomial_mul(&w_k(k)?, &positive_stable(&alpha)?))
}

/// Which parts of `sigma^k_{1/(1+t)} boxtimes nu_{1/(1+s)} = sigma^k_{1/(1+t+s)}` agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReproducingReport {
    pub lhs: StableMonomial,
    pub rhs: StableMonomial,
    pub phase: bool,
    pub exponent: bool,
    pub magnitude: bool,
}

impl ReproducingReport {
    pub fn holds(&self) -> bool {
        self.phase && self.exponent && self.magnitude && self.lhs.scale == self.rhs.scale
    }
}

/// Evaluates both sides of the reproducing identity for `t, s > 0`.
pub fn stable_reproducing_report(k: usize, t: &Rational, s: &Rational) -> Result<ReproducingReport> {
    if !t.is_positive() || !s.is_positive() {
        return Err(Error::NonPositiveParameter);
    }
    let beta = |x: &Rational| (Rational::one() + x).recip();
    let lhs = stable_monomial_mul(&sigma_k(k, &beta(t))?, &positive_stable(&beta(s))?);
    let rhs = sigma_k(k, &beta(&(t + s)))?;
    Ok(ReproducingReport {
        phase: lhs.phase == rhs.phase,
        exponent: lhs.exponent == rhs.exponent,
        magnitude: lhs.reduced_theta() == rhs.reduced_theta(),
        lhs,
        rhs,
    })
}

pub fn stable_reproducing_check(k: usize, t: &Rational, s: &Rational) -> Result<bool> {
    Ok(stable_reproducing_report(k, t, s)?.holds())
}

/// `(mu boxtimes nu)^{boxplus t} = D_{1/t}(mu^{boxplus t} boxtimes nu^{boxplus t})` on monomials.
pub fn mult_additive_check(a: &StableMonomial, b: &StableMonomial, t: &Rational) -> Result<bool> {
    let lhs = stable_add_power(&stable_monomial_mul(a, b), t)?;
    let inner = stable_monomial_mul(&stable_add_power(a, t)?, &stable_add_power(b, t)?);
    let rhs = stable_dilate(&inner, &t.recip())?;
    Ok(lhs.equivalent(&rhs))
}
