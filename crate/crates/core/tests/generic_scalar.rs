//! The same pipelines over exact and floating scalars.

use freeprob::incidence::Sequence;
use freeprob::ksym::{self, KSymmetricDistribution};
use freeprob::scalar::rat;
use freeprob::transforms;
use freeprob::{Rational, RationalSequence, Scalar};

fn catalan<T: Scalar>(order: usize) -> Sequence<T> {
    Sequence::from_fn(order, |n| T::from_biguint(&freeprob::ncpart::catalan(n)))
}

#[test]
fn cumulants_agree_across_scalars() {
    let exact = transforms::moments_to_cumulants(&catalan::<Rational>(8), 8).unwrap();
    let float = transforms::moments_to_cumulants(&catalan::<f64>(8), 8).unwrap();
    let single = transforms::moments_to_cumulants_series(&catalan::<f32>(8), 8).unwrap();
    assert_eq!(exact, Sequence::zeta(8));
    assert!(float.close_to(&Sequence::zeta(8)));
    assert!(single.close_to(&Sequence::zeta(8)));
}

#[test]
fn bessel_moments_in_f64() {
    let poisson = catalan::<f64>(5);
    let m = ksym::boxtimes_power_moments(&poisson, 3, 5).unwrap();
    let exact: RationalSequence = ksym::bessel_moments(3, 5);
    for n in 1..=5 {
        assert!((m.get(n) - exact.get(n).to_f64()).abs() < 1e-9);
    }
}

#[test]
fn floating_s_transform_uses_real_roots() {
    let d = ksym::semicircle_sk::<f64>(2, 6).unwrap();
    let s = transforms::s_transform(&d.moments(), 12).unwrap();
    let exact = transforms::s_transform(&ksym::semicircle_sk::<Rational>(2, 6).unwrap().moments(), 12).unwrap();
    assert_eq!(s.ramification(), exact.ramification());
    for (a, b) in s.coeffs().iter().zip(exact.coeffs()) {
        assert!((a - b.to_f64()).abs() < 1e-9);
    }
}

#[test]
fn ksym_pipeline_with_rationals() {
    let jump = KSymmetricDistribution::new(2, Sequence::new(vec![rat(1, 2), rat(1, 1)]).unwrap()).unwrap();
    let x = ksym::compound_poisson(2, &rat(2, 1), &jump, 2).unwrap();
    assert_eq!(x.determining_sequence().unwrap(), Sequence::new(vec![rat(1, 1), rat(2, 1)]).unwrap());
    assert!(ksym::infdiv_power_identity_check(&rat(2, 1), &jump, 2, 2).unwrap());
}
