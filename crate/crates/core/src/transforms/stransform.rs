//! S-transform of a moment sequence, ramified when the first moments vanish.

use crate::error::{Error, Result};
use crate::incidence::{self, Sequence};
use crate::scalar::Scalar;
use crate::series::{self, PowerSeries, PuiseuxSeries};
use crate::transforms::{moments_to_cumulants_series, product_moments};

/// Outcome of a coefficient comparison between two Puiseux series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub holds: bool,
    /// Number of `w`-exponents compared.
    pub compared: usize,
}

fn compare<T: Scalar>(a: &PuiseuxSeries<T>, b: &PuiseuxSeries<T>) -> Comparison {
    match a.agreement(b) {
        Some(compared) => Comparison { holds: true, compared },
        None => Comparison { holds: false, compared: 0 },
    }
}

/// `S(z) = chi(z) (1 + z) / z` with `chi` the inverse of `psi(z) = sum m_n z^n`.
///
/// When `m_1 = ... = m_{k-1} = 0 < m_k` the inverse is the principal-branch Puiseux series in
/// `z^{1/k}` and so is `S`.
pub fn s_transform<T: Scalar>(m: &Sequence<T>, order: usize) -> Result<PuiseuxSeries<T>> {
    m.require_order(order)?;
    let k = (1..=order).find(|&n| !m.get(n).is_zero()).ok_or(Error::AllZeroMoments)?;
    if k >= 2 && *m.get(k) < T::zero() {
        return Err(Error::BadSign);
    }
    let psi = PowerSeries::from_sequence(T::zero(), &m.truncate(order)?);
    let chi = series::frac_inverse(&psi, k)?;
    let len = chi.coeffs().len() + k + 1;
    let mut factor = vec![T::zero(); len];
    factor[0] = T::one();
    factor[k] = T::one();
    let one_plus_z = PuiseuxSeries::new(k, 0, factor)?;
    let s = chi.mul(&one_plus_z);
    PuiseuxSeries::new(k, s.valuation() - k as i64, s.coeffs().to_vec())
}

/// `S_{xy} = S_x S_y` for free `x`, `y`; `x` may have vanishing first moments, `phi(y) != 0`.
pub fn s_multiplicativity_check<T: Scalar>(mx: &Sequence<T>, my: &Sequence<T>, order: usize) -> Result<Comparison> {
    let kx = moments_to_cumulants_series(mx, order)?;
    let mxy = product_moments(&kx, my, order)?;
    let sxy = s_transform(&mxy, order)?;
    let prod = s_transform(mx, order)?.mul(&s_transform(my, order)?);
    Ok(compare(&sxy, &prod))
}

/// `S_{x^k}(z) = S_x(z)^k (z / (1 + z))^{k-1}` for `x` k-divisible with moments `m`.
pub fn s_power_relation_check<T: Scalar>(m: &Sequence<T>, k: usize, order: usize) -> Result<Comparison> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    m.require_order(order)?;
    let m = m.truncate(order)?;
    let mk = incidence::undilate(&m, k).map_err(|e| match e {
        Error::NotDilated { k, index } => Error::NotKDivisible { k, index },
        other => other,
    })?;
    let lhs = s_transform(&mk, mk.order())?;
    let sx = s_transform(&m, order)?;
    let len = sx.coeffs().len() + 2;
    let ratio = PuiseuxSeries::new(1, 1, (0..len).map(|i| if i % 2 == 0 { T::one() } else { -T::one() }).collect())?;
    let rhs = sx.pow(k).mul(&ratio.pow(k - 1));
    Ok(compare(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpart::catalan;
    use crate::scalar::rat;
    use crate::transforms::cumulants_to_moments_series;
    use crate::Rational;
    use num_bigint::BigInt;

    type Seq = Sequence<Rational>;

    fn ints(v: &[i64]) -> Seq {
        Seq::from_ints(v).unwrap()
    }

    #[test]
    fn free_poisson_s_transform() {
        let cat = Seq::from_fn(9, |n| Rational::from_integer(BigInt::from(catalan(n))));
        let s = s_transform(&cat, 9).unwrap().to_power_series().unwrap();
        let expect = PowerSeries::from_ints(&[1, -1, 1, -1, 1, -1, 1, -1, 1]).unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn point_mass() {
        let c = rat(3, 2);
        let m = Seq::from_fn(6, |n| num_traits::pow(c.clone(), n));
        let s = s_transform(&m, 6).unwrap().to_power_series().unwrap();
        assert_eq!(s, PowerSeries::monomial(rat(2, 3), 0, 5));
    }

    #[test]
    fn errors() {
        assert!(matches!(s_transform(&ints(&[0, 0, 0]), 3), Err(Error::AllZeroMoments)));
        assert!(matches!(s_transform(&ints(&[0, -1, 0, 2]), 4), Err(Error::BadSign)));
        assert!(matches!(s_transform(&ints(&[0, 2, 0, 1]), 4), Err(Error::IrrationalRoot { k: 2 })));
        assert!(matches!(s_power_relation_check(&ints(&[0, 1, 1, 2]), 2, 4), Err(Error::NotKDivisible { .. })));
    }

    #[test]
    fn semicircle_is_ramified() {
        let semi = ints(&[0, 1, 0, 2, 0, 5, 0, 14, 0, 42]);
        let s = s_transform(&semi, 10).unwrap();
        assert_eq!(s.ramification(), 2);
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.coeffs()[0], rat(1, 1));
    }

    #[test]
    fn multiplicativity_and_power_lemma() {
        let semi = ints(&[0, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132, 0, 429, 0, 1430]);
        let poisson = cumulants_to_moments_series(&Seq::zeta(16), 16).unwrap();
        let c = s_multiplicativity_check(&semi, &poisson, 12).unwrap();
        assert!(c.holds && c.compared >= 6, "{c:?}");
        let p = s_power_relation_check(&semi, 2, 16).unwrap();
        assert!(p.holds && p.compared >= 6, "{p:?}");
    }
}
