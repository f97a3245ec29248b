//! Moment and cumulant transforms, free convolutions, products of free variables and
//! cumulants of powers of k-divisible elements.

mod hankel;
mod stransform;
mod words;

pub use hankel::{hankel_check, hankel_determinants};
pub use stransform::{s_multiplicativity_check, s_power_relation_check, s_transform, Comparison};
pub use words::{freeness_moment_check, free_word_moment, parse_word, FreeVariable, WordEvaluator};

use crate::error::{Error, Result};
use crate::incidence::{self, Sequence};
use crate::ncpart::{self, NcPartition, Partition};
use crate::scalar::Scalar;
use crate::series::{self, PowerSeries};

/// Moments `m_1, ..., m_N`.
pub type Moments<T> = Sequence<T>;
/// Free cumulants `kappa_1, ..., kappa_N`.
pub type Cumulants<T> = Sequence<T>;

/// `m_n = sum over NC(n) of kappa_pi`.
pub fn cumulants_to_moments<T: Scalar>(kappa: &Cumulants<T>, order: usize) -> Result<Moments<T>> {
    incidence::partition_sum(kappa, order)
}

/// Moments from cumulants through `M(z) = B(z M(z))`.
pub fn cumulants_to_moments_series<T: Scalar>(kappa: &Cumulants<T>, order: usize) -> Result<Moments<T>> {
    kappa.require_order(order)?;
    let b = PowerSeries::from_sequence(T::one(), &kappa.truncate(order)?);
    series::solve_a_given_b(&b, 1, order)?.tail_sequence()
}

/// `kappa = m * mu` with the Möbius family `mu`.
pub fn moments_to_cumulants<T: Scalar>(m: &Moments<T>, order: usize) -> Result<Cumulants<T>> {
    incidence::conv(m, &incidence::moebius_family(order)?, order)
}

/// Cumulants from moments through `B(z) = M(z / B(z))`.
pub fn moments_to_cumulants_series<T: Scalar>(m: &Moments<T>, order: usize) -> Result<Cumulants<T>> {
    m.require_order(order)?;
    let mm = PowerSeries::from_sequence(T::one(), &m.truncate(order)?);
    series::solve_outer(&mm)?.tail_sequence()
}

/// Cumulants of `a + b` for free `a`, `b`.
pub fn free_add_convolve<T: Scalar>(ka: &Cumulants<T>, kb: &Cumulants<T>) -> Cumulants<T> {
    ka.add(kb)
}

/// Cumulants of `mu^{boxplus t}`.
pub fn free_add_power<T: Scalar>(kappa: &Cumulants<T>, t: &T) -> Result<Cumulants<T>> {
    if *t <= T::zero() {
        return Err(Error::NonPositiveParameter);
    }
    Ok(kappa.scale(t))
}

/// Cumulants of `ab` for free `a`, `b`: `kappa_a * kappa_b`.
pub fn free_mult_convolve<T: Scalar>(ka: &Cumulants<T>, kb: &Cumulants<T>, order: usize) -> Result<Cumulants<T>> {
    incidence::conv(ka, kb, order)
}

/// Moments `phi((ab)^n) = sum over NC(n) of kappa_pi(a) m_{Kr(pi)}(b)`.
pub fn product_moments<T: Scalar>(ka: &Cumulants<T>, mb: &Moments<T>, order: usize) -> Result<Moments<T>> {
    incidence::conv(ka, mb, order)
}

/// Cumulant `kappa_m(x_1...x_{g_1}, ..., )` of grouped products of a single variable, as the sum of
/// `kappa_pi` over `pi` in `NC(n)` with `pi join sigma = 1_n`, `sigma` the interval partition of `grouping`.
pub fn products_as_arguments<T: Scalar>(kappa: &Cumulants<T>, grouping: &[usize]) -> Result<T> {
    if grouping.is_empty() || grouping.contains(&0) {
        return Err(Error::InvalidGrouping("grouping must be a nonempty list of positive sizes".into()));
    }
    let sigma = NcPartition::new(Partition::interval(grouping)?)?;
    let n = sigma.n();
    kappa.require_order(n)?;
    let one = NcPartition::one(n);
    let mut acc = T::zero();
    for pi in ncpart::enumerate_nc(n)? {
        if pi.join(&sigma)? == one {
            acc = acc + incidence::extend(kappa, pi.partition())?;
        }
    }
    Ok(acc)
}

/// The three partition-sum expressions for the cumulants of `x^k`, `alpha_n = kappa_{kn}(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerCumulantRoutes<T> {
    /// Sum over `NC((k-1)n)` of the `(k-1)`-dilated family.
    pub dilated: Cumulants<T>,
    /// Sum over `NC(n)` of `beta_pi`, `beta = alpha * zeta^{*(k-2)}`.
    pub nested: Cumulants<T>,
    /// `alpha * zeta^{*(k-1)}` by iterated convolution.
    pub iterated: Cumulants<T>,
}

/// Evaluates the three routes for `kappa_n(x^k)`, `n <= order`.
pub fn kdiv_power_cumulant_routes<T: Scalar>(alpha: &Sequence<T>, k: usize, order: usize) -> Result<PowerCumulantRoutes<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let alpha = alpha.truncate(order)?;
    if k == 1 {
        return Ok(PowerCumulantRoutes { dilated: alpha.clone(), nested: alpha.clone(), iterated: alpha });
    }
    let dilated = incidence::zeta_power_conv_dilated(&alpha, k - 1, order)?;
    let beta = incidence::zeta_power_conv_dilated(&alpha, k - 2, order)?;
    let nested = incidence::partition_sum(&beta, order)?;
    let iterated = incidence::zeta_power_conv(&alpha, k - 1, order)?;
    Ok(PowerCumulantRoutes { dilated, nested, iterated })
}

/// Free cumulants of `x^k` for `x` k-divisible with determining sequence `alpha`.
///
/// Fails with [`Error::RouteMismatch`] when the three routes disagree.
pub fn kdiv_power_cumulants<T: Scalar>(alpha: &Sequence<T>, k: usize, order: usize) -> Result<Cumulants<T>> {
    let r = kdiv_power_cumulant_routes(alpha, k, order)?;
    for n in 1..=order {
        let a = r.dilated.get(n);
        if !a.close_to(r.nested.get(n)) || !a.close_to(r.iterated.get(n)) {
            return Err(Error::RouteMismatch(n));
        }
    }
    Ok(r.dilated)
}

/// Moments of `x^k` from the determining sequence, by summing the dilated cumulants over `NC(kn)`.
pub fn kdiv_power_moments<T: Scalar>(alpha: &Sequence<T>, k: usize, order: usize) -> Result<Moments<T>> {
    let full = incidence::dilate(&alpha.truncate(order)?, k)?;
    incidence::undilate(&cumulants_to_moments_series(&full, k * order)?, k)
}
