//! Serializable forms of the public types. Scalars travel as `"p/q"` strings.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::Sequence;
use crate::ksym::{KSymmetricDistribution, StableMonomial, SurdScale};
use crate::matmodel::FreenessReport;
use crate::scalar::{decimal_string, Scalar};
use crate::series::{PowerSeries, PuiseuxSeries};
use crate::Rational;

fn parse<T: Scalar>(s: &str) -> Result<T> {
    T::parse_repr(s).ok_or_else(|| Error::Parse(format!("not a rational: `{s}`")))
}

fn reprs<T: Scalar>(v: &[T]) -> Vec<String> {
    v.iter().map(Scalar::to_repr).collect()
}

fn parse_all<T: Scalar>(v: &[String]) -> Result<Vec<T>> {
    v.iter().map(|s| parse(s)).collect()
}

/// A sequence `a_1 .. a_N`, or series coefficients `c_0 .. c_N`, as a bare array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScalarArray(pub Vec<String>);

impl ScalarArray {
    pub fn from_sequence<T: Scalar>(s: &Sequence<T>) -> Self {
        ScalarArray(reprs(s.values()))
    }

    pub fn to_sequence<T: Scalar>(&self) -> Result<Sequence<T>> {
        Sequence::new(parse_all(&self.0)?)
    }

    pub fn from_series<T: Scalar>(s: &PowerSeries<T>) -> Self {
        ScalarArray(reprs(s.coeffs()))
    }

    pub fn to_series<T: Scalar>(&self) -> Result<PowerSeries<T>> {
        PowerSeries::new(parse_all(&self.0)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuiseuxJson {
    pub ramification: usize,
    #[serde(default)]
    pub valuation: i64,
    pub coeffs: Vec<String>,
}

impl PuiseuxJson {
    pub fn new<T: Scalar>(p: &PuiseuxSeries<T>) -> Self {
        PuiseuxJson { ramification: p.ramification(), valuation: p.valuation(), coeffs: reprs(p.coeffs()) }
    }

    pub fn decode<T: Scalar>(&self) -> Result<PuiseuxSeries<T>> {
        PuiseuxSeries::new(self.ramification, self.valuation, parse_all(&self.coeffs)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSymmetricJson {
    pub k: usize,
    pub base: Vec<String>,
    pub valid: Option<bool>,
}

impl KSymmetricJson {
    pub fn new<T: Scalar>(d: &KSymmetricDistribution<T>) -> Self {
        KSymmetricJson { k: d.k, base: reprs(d.base.values()), valid: d.valid }
    }

    pub fn decode<T: Scalar>(&self) -> Result<KSymmetricDistribution<T>> {
        let mut d = KSymmetricDistribution::new(self.k, Sequence::new(parse_all(&self.base)?)?)?;
        d.valid = self.valid;
        Ok(d)
    }
}

/// `"scale"` is the rational part; irrational prime-power factors go to `"surds"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableMonomialJson {
    pub scale: String,
    pub phase_pi: String,
    pub exponent: String,
    pub theta: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub surds: Vec<(String, String)>,
}

impl StableMonomialJson {
    pub fn new(m: &StableMonomial) -> Self {
        StableMonomialJson {
            scale: m.scale.rational_part().to_repr(),
            phase_pi: m.phase.to_repr(),
            exponent: m.exponent.to_repr(),
            theta: reprs(&m.theta),
            surds: m.scale.surds().iter().map(|(p, e)| (p.to_string(), e.to_repr())).collect(),
        }
    }

    pub fn decode(&self) -> Result<StableMonomial> {
        let mut scale = SurdScale::rational(parse(&self.scale)?)?;
        for (p, e) in &self.surds {
            let p: BigUint = p.parse().map_err(|_| Error::Parse(format!("bad surd base `{p}`")))?;
            scale = scale.mul_power(&Rational::from_integer(p.into()), &parse(e)?)?;
        }
        Ok(StableMonomial::new(scale, parse(&self.phase_pi)?, parse(&self.exponent)?, parse_all(&self.theta)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordReportJson {
    pub word: String,
    pub mean: String,
    pub mean_exact: String,
    pub prediction: String,
    pub deviation: String,
    pub mean_abs_deviation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReportJson {
    pub r: usize,
    #[serde(rename = "N")]
    pub n_cycles: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub words: Vec<WordReportJson>,
}

impl FreenessReportJson {
    /// Means carry a 6-digit decimal next to the exact value.
    pub fn new(r: &FreenessReport) -> Self {
        let words = r
            .words
            .iter()
            .map(|w| WordReportJson {
                word: w.word.to_string(),
                mean: decimal_string(&w.mean, 6),
                mean_exact: w.mean.to_repr(),
                prediction: w.prediction.to_repr(),
                deviation: w.deviation.to_repr(),
                mean_abs_deviation: w.mean_abs_deviation.to_repr(),
            })
            .collect();
        FreenessReportJson { r: r.r, n_cycles: r.n_cycles, k: r.k, trials: r.trials, seed: r.seed, words }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ksym::{semicircle_sk, sigma_k, stable_add_power};
    use crate::matmodel::{freeness_experiment, WordSpec};
    use crate::scalar::rat;
    use num_traits::Zero;

    fn round_trip<S: Serialize + for<'de> Deserialize<'de>>(x: &S) -> S {
        serde_json::from_str(&serde_json::to_string(x).unwrap()).unwrap()
    }

    #[test]
    fn sequence_format() {
        let s = Sequence::<Rational>::new(vec![rat(1, 2), rat(-3, 1), rat(0, 1)]).unwrap();
        let j = serde_json::to_string(&ScalarArray::from_sequence(&s)).unwrap();
        assert_eq!(j, r#"["1/2","-3/1","0/1"]"#);
        let back: ScalarArray = serde_json::from_str(r#"["1/2","-3","0"]"#).unwrap();
        assert_eq!(back.to_sequence::<Rational>().unwrap(), s);
        let bad: ScalarArray = serde_json::from_str(r#"["x"]"#).unwrap();
        assert!(bad.to_sequence::<Rational>().is_err());
    }

    #[test]
    fn ksym_round_trip_keeps_vanishing_moments() {
        let d = semicircle_sk::<Rational>(3, 4).unwrap();
        let back = round_trip(&KSymmetricJson::new(&d)).decode::<Rational>().unwrap();
        assert_eq!(back, d);
        for j in 1..=12 {
            if j % 3 != 0 {
                assert!(back.moment(j).unwrap().is_zero());
            }
        }
        let v: serde_json::Value = serde_json::to_value(KSymmetricJson::new(&d)).unwrap();
        assert_eq!(v["valid"], serde_json::Value::Bool(true));
    }

    #[test]
    fn stable_round_trip() {
        let m = stable_add_power(&sigma_k(2, &rat(2, 5)).unwrap(), &rat(2, 1)).unwrap();
        assert!(!m.scale.is_rational());
        let j = StableMonomialJson::new(&m);
        assert_eq!(round_trip(&j).decode().unwrap(), m);
        let plain = StableMonomialJson::new(&StableMonomial::unit());
        assert!(!serde_json::to_string(&plain).unwrap().contains("surds"));
    }

    #[test]
    fn puiseux_round_trip() {
        let p = PuiseuxSeries::<Rational>::new(2, -1, vec![rat(1, 1), rat(-1, 2)]).unwrap();
        assert_eq!(round_trip(&PuiseuxJson::new(&p)).decode::<Rational>().unwrap(), p);
    }

    #[test]
    fn report_shape() {
        let w = WordSpec::parse("1:1,2:1").unwrap();
        let r = freeness_experiment(2, 10, 2, &[w], 3, 1).unwrap();
        let j = FreenessReportJson::new(&r);
        assert_eq!(j.words[0].mean.split('.').nth(1).unwrap().len(), 6);
        assert_eq!(round_trip(&j), j);
    }
}
