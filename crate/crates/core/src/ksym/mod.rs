//! k-symmetric distributions, represented by the law of `x^k`, and their limit theorems.

mod stable;

pub use stable::{
    mult_additive_check, positive_stable, sigma_k, stable_add_power, stable_dilate, stable_monomial_mul,
    stable_reproducing_check, stable_reproducing_report, w_k, ReproducingReport, StableMonomial, SurdScale,
};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::incidence::{self, Sequence};
use crate::ncpart::{self, count_kequal, BlockRule};
use crate::scalar::{integer_root, powi, Scalar};
use crate::transforms::{
    self, cumulants_to_moments_series, hankel_check, moments_to_cumulants_series, product_moments, Cumulants,
    FreeVariable, Moments, WordEvaluator,
};

/// A k-symmetric law `mu`, stored through the moments of `x^k`: `m_{kn}(mu) = base_n`,
/// all other moments zero.
#[derive(Clone, Debug, PartialEq)]
pub struct KSymmetricDistribution<T> {
    pub k: usize,
    pub base: Sequence<T>,
    /// `Some(true)` when known to be a probability measure, `Some(false)` when known not to be.
    pub valid: Option<bool>,
}

fn closed_form<T: Scalar>(v: num_bigint::BigUint) -> T {
    T::from_biguint(&v)
}

impl<T: Scalar> KSymmetricDistribution<T> {
    pub fn new(k: usize, base: Sequence<T>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        Ok(KSymmetricDistribution { k, base, valid: None })
    }

    /// The order-`k` Haar law: uniform on the `k`-th roots of unity, `x^k = 1`.
    pub fn k_haar(k: usize, order: usize) -> Result<Self> {
        Ok(KSymmetricDistribution { valid: Some(true), ..Self::new(k, Sequence::zeta(order))? })
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    /// `m_n(mu)`: `base_{n/k}` when `k | n`, else zero.
    pub fn moment(&self, n: usize) -> Result<T> {
        if n == 0 {
            return Ok(T::one());
        }
        if n > self.k * self.order() {
            return Err(Error::OrderTooSmall { need: n, have: self.k * self.order() });
        }
        Ok(if n.is_multiple_of(self.k) { self.base.get(n / self.k).clone() } else { T::zero() })
    }

    /// All moments `m_1 .. m_{k * order}`.
    pub fn moments(&self) -> Moments<T> {
        incidence::dilate(&self.base, self.k).expect("k is positive")
    }

    /// `alpha_n = kappa_{kn}(mu)`, the only free cumulants that can be nonzero.
    pub fn determining_sequence(&self) -> Result<Sequence<T>> {
        let full = self.moments();
        incidence::undilate(&moments_to_cumulants_series(&full, full.order())?, self.k)
    }

    /// Builds the law with determining sequence `alpha`.
    pub fn from_determining(k: usize, alpha: &Sequence<T>, order: usize) -> Result<Self> {
        Self::new(k, transforms::kdiv_power_moments(alpha, k, order)?)
    }

    /// Replaces the validity flag by the outcome of the Stieltjes Hankel test on `base`.
    pub fn probe_validity(mut self) -> Self {
        if self.valid.is_none() && !hankel_check(&self.base, true) {
            self.valid = Some(false);
        }
        self
    }
}

/// Free cumulants of `pi^{boxtimes j}` for the free Poisson law `pi`: `binom(jn, n) / ((j-1)n + 1)`.
pub fn bessel_cumulants<T: Scalar>(j: usize, order: usize) -> Sequence<T> {
    if j == 0 {
        return Sequence::delta(order);
    }
    Sequence::from_fn(order, |n| closed_form(count_kequal(j, n)))
}

/// Moments of `pi^{boxtimes k}`: `binom((k+1)n, n) / (kn + 1)`.
pub fn bessel_moments<T: Scalar>(k: usize, order: usize) -> Sequence<T> {
    Sequence::from_fn(order, |n| closed_form(ncpart::fuss_catalan(k, n)))
}

/// `mu^{boxtimes k}` cumulants by `k - 1` convolutions.
fn boxtimes_power_cumulants<T: Scalar>(kappa: &Cumulants<T>, k: usize, order: usize) -> Result<Cumulants<T>> {
    let mut acc = kappa.truncate(order)?;
    for _ in 1..k {
        acc = incidence::conv(&acc, kappa, order)?;
    }
    Ok(acc)
}

fn require_positive<T: Scalar>(m: &Moments<T>) -> Result<()> {
    if hankel_check(m, true) {
        Ok(())
    } else {
        Err(Error::InvalidPositiveMeasure)
    }
}

/// `d boxtimes nu` for `nu` on `[0, inf)`: its `k`-th power law is `nu^{boxtimes k} boxtimes d^k`.
pub fn boxtimes_positive<T: Scalar>(
    d: &KSymmetricDistribution<T>,
    nu: &Moments<T>,
    order: usize,
) -> Result<KSymmetricDistribution<T>> {
    require_positive(nu)?;
    let kappa_nu = moments_to_cumulants_series(nu, order)?;
    let power = boxtimes_power_cumulants(&kappa_nu, d.k, order)?;
    let base = product_moments(&power, &d.base.truncate(order)?, order)?;
    Ok(KSymmetricDistribution { k: d.k, base, valid: d.valid })
}

/// The same product computed from mixed moments `phi((y x)^{kn})` of free `x ~ d`, `y ~ nu`.
///
/// Needs `nu` up to order `k * order`.
pub fn boxtimes_positive_by_words<T: Scalar>(
    d: &KSymmetricDistribution<T>,
    nu: &Moments<T>,
    order: usize,
) -> Result<Moments<T>> {
    let k = d.k;
    nu.require_order(k * order)?;
    require_positive(nu)?;
    let x = incidence::dilate(&d.base.truncate(order)?, k)?;
    let vars = [FreeVariable::new("x", x), FreeVariable::new("y", nu.clone())];
    let mut ev = WordEvaluator::new(&vars);
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let word: Vec<(String, i64)> = (0..k * n).flat_map(|_| [("y".to_string(), 1), ("x".to_string(), 1)]).collect();
        out.push(ev.moment(&word)?);
    }
    Sequence::new(out)
}

/// `mu^{boxplus t}`; the result is flagged valid only for `t >= 1` and a valid input.
pub fn boxplus_power<T: Scalar>(d: &KSymmetricDistribution<T>, t: &T, order: usize) -> Result<KSymmetricDistribution<T>> {
    if *t <= T::zero() {
        return Err(Error::NonPositiveParameter);
    }
    let alpha = d.determining_sequence()?.truncate(order)?.scale(t);
    let base = transforms::kdiv_power_moments(&alpha, d.k, order)?;
    let valid = if *t >= T::one() { d.valid } else { None };
    Ok(KSymmetricDistribution { k: d.k, base, valid })
}

/// The k-semicircular law: `kappa_k = 1`, all other cumulants zero. Its `k`-th power has
/// moments `binom(kn, n) / ((k-1)n + 1)`.
pub fn semicircle_sk<T: Scalar>(k: usize, order: usize) -> Result<KSymmetricDistribution<T>> {
    let base = transforms::kdiv_power_moments(&Sequence::delta(order), k, order)?;
    Ok(KSymmetricDistribution { valid: Some(true), ..KSymmetricDistribution::new(k, base)? })
}

/// Free cumulants `kappa_i`, `i <= order`, of `D_{N^{-1/k}}(mu^{boxplus N})`: `N^{1 - i/k} kappa_i(mu)`.
///
/// Needs `kappa_k(mu) = 1` and `N` a perfect `k`-th power so that the result stays rational.
pub fn clt_scaled_cumulants<T: Scalar>(d: &KSymmetricDistribution<T>, n_samples: u64, order: usize) -> Result<Cumulants<T>> {
    let k = d.k;
    let full = d.moments();
    full.require_order(order.max(k))?;
    let kappa = moments_to_cumulants_series(&full, order.max(k))?;
    if !kappa.get(k).close_to(&T::one()) {
        return Err(Error::NotNormalized { k });
    }
    let r = integer_root(n_samples, k as u32).ok_or(Error::NotPerfectPower { n: n_samples, k })?;
    let n = T::from_bigint(&BigInt::from(n_samples));
    let r = T::from_bigint(&BigInt::from(r));
    Ok(Sequence::from_fn(order, |i| kappa.get(i).clone() * &n / powi(&r, i)))
}

/// Free compound Poisson law with rate `lambda` and k-symmetric jump law: `kappa_n = lambda m_n(jump)`.
pub fn compound_poisson<T: Scalar>(
    k: usize,
    lambda: &T,
    jump: &KSymmetricDistribution<T>,
    order: usize,
) -> Result<KSymmetricDistribution<T>> {
    if jump.k != k {
        return Err(Error::MismatchedK(k, jump.k));
    }
    if *lambda <= T::zero() {
        return Err(Error::NonPositiveParameter);
    }
    let alpha = jump.base.truncate(order)?.scale(lambda);
    let base = transforms::kdiv_power_moments(&alpha, k, order)?;
    Ok(KSymmetricDistribution { k, base, valid: jump.valid })
}

/// `|N kappa_i(nu_N) - lambda m_i(jump)|` for `i <= k * order`, where
/// `nu_N = (1 - lambda/N) delta_0 + (lambda/N) jump` and `N = n_samples`.
pub fn poisson_limit_gap<T: Scalar>(
    k: usize,
    lambda: &T,
    jump: &KSymmetricDistribution<T>,
    n_samples: u64,
    order: usize,
) -> Result<Sequence<T>> {
    if jump.k != k {
        return Err(Error::MismatchedK(k, jump.k));
    }
    let n = T::from_bigint(&BigInt::from(n_samples));
    if *lambda <= T::zero() || n_samples == 0 {
        return Err(Error::NonPositiveParameter);
    }
    if *lambda > n {
        return Err(Error::InvalidArgument("lambda / N must not exceed 1".into()));
    }
    let full = incidence::dilate(&jump.base.truncate(order)?, k)?;
    let nu = full.scale(&(lambda.clone() / n.clone()));
    let kappa = moments_to_cumulants_series(&nu, full.order())?;
    Ok(Sequence::from_fn(full.order(), |i| (kappa.get(i).clone() * &n - lambda.clone() * full.get(i)).abs()))
}

/// Moments of `x^k` for `x` k-divisible with determining sequence `alpha`, the cumulant
/// sequence of a positive `nu`. Two routes: the partition-sum cumulants of `x^k`, and the law
/// `pi^{boxtimes (k-1)} boxtimes nu` with closed-form free Bessel cumulants.
pub fn xk_of_kdivisible<T: Scalar>(alpha: &Sequence<T>, k: usize, order: usize) -> Result<Moments<T>> {
    let nu = cumulants_to_moments_series(alpha, order)?;
    require_positive(&nu)?;
    let via_cumulants = transforms::cumulants_to_moments(&transforms::kdiv_power_cumulants(alpha, k, order)?, order)?;
    let via_bessel = product_moments(&bessel_cumulants(k - 1, order), &nu, order)?;
    if let Some(i) = (1..=order).find(|&i| !via_cumulants.get(i).close_to(via_bessel.get(i))) {
        return Err(Error::RouteMismatch(i));
    }
    Ok(via_cumulants)
}

/// `m_n(mu^{boxtimes k}) = sum over pi in NC^k(n) of kappa_{Kr(pi)}(mu)`, Kreweras taken in `NC(kn)`.
pub fn boxtimes_power_moments<T: Scalar>(mu: &Moments<T>, k: usize, order: usize) -> Result<Moments<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    require_positive(mu)?;
    let kappa = moments_to_cumulants_series(mu, order)?;
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = T::zero();
        let mut failure = None;
        ncpart::for_each_nc(k * n, BlockRule::Divisible(k), |labels| {
            let kr = ncpart::kreweras_labels(labels);
            let mut sizes = vec![0usize; kr.len()];
            for &l in &kr {
                sizes[l as usize] += 1;
            }
            let mut term = T::one();
            for &s in sizes.iter().filter(|&&s| s > 0) {
                if s > kappa.order() {
                    failure = Some(Error::OrderTooSmall { need: s, have: kappa.order() });
                    return;
                }
                term = term * kappa.get(s);
            }
            acc = acc.clone() + term;
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        out.push(acc);
    }
    Sequence::new(out)
}

/// `m_n(mu^{boxtimes k})` by iterated multiplicative convolution of cumulants.
pub fn boxtimes_power_moments_iterated<T: Scalar>(mu: &Moments<T>, k: usize, order: usize) -> Result<Moments<T>> {
    let kappa = moments_to_cumulants_series(mu, order)?;
    transforms::cumulants_to_moments(&boxtimes_power_cumulants(&kappa, k, order)?, order)
}

/// For `x` free compound Poisson with rate `lambda` and k-symmetric jump law `nu`, checks that
/// `x^k` is free compound Poisson with rate `lambda` and jump law
/// `D_lambda((pi^{boxtimes (k-1)})^{boxplus 1/lambda} boxtimes nu^k)`.
///
/// At `lambda = 1` the jump law is `pi^{boxtimes (k-1)} boxtimes nu^k`.
pub fn infdiv_power_identity_check<T: Scalar>(
    lambda: &T,
    jump: &KSymmetricDistribution<T>,
    k: usize,
    order: usize,
) -> Result<bool> {
    let x = compound_poisson(k, lambda, jump, order)?;
    let lhs = moments_to_cumulants_series(&x.base, order)?;
    let bessel = bessel_cumulants(k - 1, order).scale(&(T::one() / lambda.clone()));
    let jump_law = product_moments(&bessel, &jump.base.truncate(order)?, order)?;
    let rhs = Sequence::from_fn(order, |n| jump_law.get(n).clone() * powi(lambda, n) * lambda);
    Ok(lhs.close_to(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpart::fuss_catalan;
    use crate::scalar::rat;
    use crate::Rational;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    type Seq = Sequence<Rational>;

    fn big(n: num_bigint::BigUint) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    /// Moments of a finitely supported measure on `[0, inf)`.
    fn atomic(atoms: &[(Rational, Rational)], order: usize) -> Seq {
        let total: Rational = atoms.iter().map(|(_, w)| w.clone()).sum();
        Seq::from_fn(order, |n| atoms.iter().map(|(x, w)| powi(x, n) * w).sum::<Rational>() / total.clone())
    }

    fn arb_positive(order: usize) -> impl Strategy<Value = Seq> {
        proptest::collection::vec((0i64..=4, 1i64..=3, 1i64..=4), 1..=3).prop_map(move |v| {
            let atoms: Vec<_> = v.into_iter().map(|(p, q, w)| (rat(p, q), rat(w, 1))).collect();
            atomic(&atoms, order)
        })
    }

    #[test]
    fn single_moments() {
        let s3 = semicircle_sk::<Rational>(3, 3).unwrap();
        assert!(s3.moment(1).unwrap().is_zero());
        assert_eq!(s3.moment(6).unwrap(), big(count_kequal(3, 2)));
        assert_eq!(KSymmetricDistribution::<Rational>::k_haar(2, 2).unwrap().moment(4).unwrap(), rat(1, 1));
        assert!(s3.moment(10).is_err());
    }

    #[test]
    fn semicircle_powers() {
        for k in 1..=4 {
            let d = semicircle_sk::<Rational>(k, 6).unwrap();
            assert_eq!(d.base, Seq::from_fn(6, |n| big(count_kequal(k, n))));
            assert_eq!(d.determining_sequence().unwrap(), Seq::delta(6));
        }
    }

    #[test]
    fn haar_times_poisson_is_bessel() {
        let poisson = bessel_moments::<Rational>(1, 6);
        for k in 1..=3 {
            let d = boxtimes_positive(&KSymmetricDistribution::k_haar(k, 6).unwrap(), &poisson, 6).unwrap();
            assert_eq!(d.base, bessel_moments(k, 6));
        }
    }

    #[test]
    fn boxtimes_positive_routes_agree() {
        let nu = atomic(&[(rat(1, 2), rat(1, 1)), (rat(2, 1), rat(2, 1))], 8);
        let d = semicircle_sk::<Rational>(2, 4).unwrap();
        let a = boxtimes_positive(&d, &nu, 4).unwrap();
        assert_eq!(a.base, boxtimes_positive_by_words(&d, &nu, 4).unwrap());
        let bad = Seq::from_ints(&[-1, 1, 0, 0]).unwrap();
        assert!(matches!(boxtimes_positive(&d, &bad, 4), Err(Error::InvalidPositiveMeasure)));
    }

    #[test]
    fn boxplus_power_flags() {
        let d = semicircle_sk::<Rational>(2, 5).unwrap();
        let two = boxplus_power(&d, &rat(2, 1), 5).unwrap();
        assert_eq!(two.valid, Some(true));
        assert_eq!(two.determining_sequence().unwrap(), Seq::delta(5).scale(&rat(2, 1)));
        let half = boxplus_power(&d, &rat(1, 2), 5).unwrap();
        assert_eq!(half.valid, None);
        assert!(boxplus_power(&d, &rat(-1, 1), 5).is_err());
        let haar = KSymmetricDistribution::<Rational>::k_haar(2, 5).unwrap();
        assert_eq!(boxplus_power(&haar, &rat(1, 2), 5).unwrap().probe_validity().valid, Some(false));
    }

    #[test]
    fn clt_examples() {
        let d = semicircle_sk::<Rational>(2, 4).unwrap();
        assert_eq!(clt_scaled_cumulants(&d, 4, 8).unwrap(), Seq::from_ints(&[0, 1, 0, 0, 0, 0, 0, 0]).unwrap());
        assert!(matches!(clt_scaled_cumulants(&d, 5, 8), Err(Error::NotPerfectPower { n: 5, k: 2 })));
        let haar = KSymmetricDistribution::<Rational>::k_haar(3, 4).unwrap();
        let c = clt_scaled_cumulants(&haar, 8, 9).unwrap();
        let kappa = moments_to_cumulants_series(&haar.moments(), 9).unwrap();
        assert_eq!(c.get(3), &rat(1, 1));
        assert_eq!(c.get(6), &(kappa.get(6).clone() / rat(8, 1)));
        let scaled = KSymmetricDistribution::new(2, Seq::from_ints(&[2, 8]).unwrap()).unwrap();
        assert!(matches!(clt_scaled_cumulants(&scaled, 4, 4), Err(Error::NotNormalized { k: 2 })));
    }

    #[test]
    fn compound_poisson_of_haar_is_bessel() {
        for k in 1..=4 {
            let haar = KSymmetricDistribution::k_haar(k, 5).unwrap();
            let d = compound_poisson(k, &rat(1, 1), &haar, 5).unwrap();
            assert_eq!(d.base, Seq::from_fn(5, |n| big(fuss_catalan(k, n))));
        }
        let haar = KSymmetricDistribution::<Rational>::k_haar(2, 3).unwrap();
        assert!(matches!(compound_poisson(3, &rat(1, 1), &haar, 3), Err(Error::MismatchedK(3, 2))));
    }

    #[test]
    fn poisson_gap_closed_form() {
        for k in 1..=3 {
            let jump = KSymmetricDistribution::new(k, Seq::from_ints(&[3, 5]).unwrap()).unwrap();
            let lambda = rat(2, 1);
            for n in [64u64, 128] {
                let g = poisson_limit_gap(k, &lambda, &jump, n, 2).unwrap();
                assert!(g.get(k).is_zero());
                assert_eq!(g.get(2 * k), &(rat(k as i64, 1) * &lambda * &lambda * rat(9, 1) / rat(n as i64, 1)));
            }
            let degenerate = poisson_limit_gap(k, &rat(4, 1), &jump, 4, 2).unwrap();
            let kappa = moments_to_cumulants_series(&jump.moments(), 2 * k).unwrap();
            let expect = (kappa.get(2 * k).clone() - rat(5, 1)).abs() * rat(4, 1);
            assert_eq!(degenerate.get(2 * k), &expect);
        }
    }

    #[test]
    fn xk_routes_and_positivity() {
        let alpha = Seq::delta(5);
        assert_eq!(xk_of_kdivisible(&alpha, 2, 5).unwrap(), Seq::from_fn(5, |n| big(ncpart::catalan(n))));
        let bad = Seq::from_ints(&[0, -1, 0, 0]).unwrap();
        assert!(matches!(xk_of_kdivisible(&bad, 2, 4), Err(Error::InvalidPositiveMeasure)));
    }

    #[test]
    fn free_bessel_two_routes() {
        let poisson = bessel_moments::<Rational>(1, 6);
        for k in 1..=4 {
            let a = boxtimes_power_moments(&poisson, k, 6).unwrap();
            assert_eq!(a, bessel_moments(k, 6));
            assert_eq!(a, boxtimes_power_moments_iterated(&poisson, k, 6).unwrap());
            let kappa = moments_to_cumulants_series(&a, 6).unwrap();
            assert_eq!(kappa, bessel_cumulants(k, 6));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn kmom_routes(mu in arb_positive(5), k in 1usize..=3) {
            prop_assert_eq!(boxtimes_power_moments(&mu, k, 5).unwrap(), boxtimes_power_moments_iterated(&mu, k, 5).unwrap());
        }

        #[test]
        fn xk_routes(nu in arb_positive(5), k in 1usize..=4) {
            let alpha = moments_to_cumulants_series(&nu, 5).unwrap();
            prop_assert!(xk_of_kdivisible(&alpha, k, 5).is_ok());
        }

        #[test]
        fn infinite_divisibility(base in arb_positive(5), k in 1usize..=3, l in 1i64..=3) {
            let jump = KSymmetricDistribution::new(k, base).unwrap();
            prop_assert!(infdiv_power_identity_check(&rat(l, 2), &jump, k, 5).unwrap());
        }
    }
}
