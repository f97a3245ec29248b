//! Mixed moments of free variables computed from the definition of freeness alone.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::incidence::Sequence;
use crate::scalar::Scalar;

/// A variable given by its moments, free from every other variable in a word.
///
/// With a period `p` the variable satisfies `x^p = 1`, so exponents are read modulo `p`
/// and negative exponents are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeVariable<T> {
    pub label: String,
    pub moments: Sequence<T>,
    pub period: Option<usize>,
}

impl<T: Scalar> FreeVariable<T> {
    pub fn new(label: impl Into<String>, moments: Sequence<T>) -> Self {
        FreeVariable { label: label.into(), moments, period: None }
    }

    pub fn periodic(label: impl Into<String>, moments: Sequence<T>, period: usize) -> Self {
        FreeVariable { label: label.into(), moments, period: Some(period) }
    }

    /// A Haar unitary of order `k`: `phi(u^j) = 1` iff `k | j`.
    pub fn k_haar(label: impl Into<String>, k: usize) -> Self {
        let moments = Sequence::from_fn(k, |j| if j % k == 0 { T::one() } else { T::zero() });
        Self::periodic(label, moments, k)
    }

    /// Exponent in canonical range; zero means the identity.
    fn reduce(&self, e: i64) -> Result<i64> {
        match self.period {
            Some(p) => Ok(e.rem_euclid(p as i64)),
            None if e < 0 => Err(Error::NegativeExponent(self.label.clone())),
            None => Ok(e),
        }
    }

    /// `phi(x^e)` for a reduced exponent.
    fn moment(&self, e: i64) -> Result<T> {
        if e == 0 {
            return Ok(T::one());
        }
        let idx = e as usize;
        if idx > self.moments.order() {
            return Err(Error::MissingMoment { label: self.label.clone(), exponent: e });
        }
        Ok(self.moments.get(idx).clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Letter {
    var: u16,
    exp: i64,
}

/// Parses `"x:1,y:2,x:-1"` into `(label, exponent)` pairs; a bare label means exponent 1.
pub fn parse_word(s: &str) -> Result<Vec<(String, i64)>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            let part = part.trim();
            match part.split_once(':') {
                Some((l, e)) => {
                    let e = e.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?;
                    Ok((l.trim().to_string(), e))
                }
                None if !part.is_empty() => Ok((part.to_string(), 1)),
                None => Err(Error::Parse("empty letter".into())),
            }
        })
        .collect()
}

/// Memoized evaluator of `phi` on words in a fixed family of free variables.
///
/// Each letter is split as its centered part plus its mean. A product of centered letters from
/// alternating variables has zero expectation; adjacent letters of one variable are merged.
/// The evaluation state is a centered prefix followed by a raw suffix.
pub struct WordEvaluator<'a, T> {
    vars: &'a [FreeVariable<T>],
    memo: HashMap<(Vec<Letter>, Vec<Letter>), T>,
}

impl<'a, T: Scalar> WordEvaluator<'a, T> {
    pub fn new(vars: &'a [FreeVariable<T>]) -> Self {
        WordEvaluator { vars, memo: HashMap::new() }
    }

    fn index(&self, label: &str) -> Result<u16> {
        self.vars
            .iter()
            .position(|v| v.label == label)
            .map(|i| i as u16)
            .ok_or_else(|| Error::UnknownVariable(label.to_string()))
    }

    /// Merges adjacent letters of one variable and drops identities.
    fn reduce(&self, letters: impl IntoIterator<Item = Letter>) -> Result<Vec<Letter>> {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            let var = &self.vars[l.var as usize];
            let mut cur = Letter { var: l.var, exp: var.reduce(l.exp)? };
            while let Some(top) = out.last() {
                if top.var != cur.var {
                    break;
                }
                cur.exp = var.reduce(top.exp + cur.exp)?;
                out.pop();
            }
            if cur.exp != 0 {
                out.push(cur);
            }
        }
        Ok(out)
    }

    fn mean(&self, l: Letter) -> Result<T> {
        self.vars[l.var as usize].moment(l.exp)
    }

    /// `phi` of a word given as `(label, exponent)` pairs.
    pub fn moment(&mut self, word: &[(String, i64)]) -> Result<T> {
        let letters = word
            .iter()
            .map(|(l, e)| Ok(Letter { var: self.index(l)?, exp: *e }))
            .collect::<Result<Vec<_>>>()?;
        let reduced = self.reduce(letters)?;
        self.eval(Vec::new(), reduced)
    }

    /// `phi(c_1 ... c_j r_1 ... r_m)` with `c_i` centered, alternating, and `r` reduced.
    fn eval(&mut self, centered: Vec<Letter>, raw: Vec<Letter>) -> Result<T> {
        if raw.is_empty() {
            return Ok(if centered.is_empty() { T::one() } else { T::zero() });
        }
        let key = (centered, raw);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let (centered, raw) = &key;
        let r = raw[0];
        let value = match centered.last() {
            Some(&c) if c.var == r.var => {
                // (x^e - phi(x^e)) x^f = x^{e+f} - phi(x^e) x^f
                let head = centered[..centered.len() - 1].to_vec();
                let merged = self.reduce(std::iter::once(Letter { var: r.var, exp: c.exp + r.exp }).chain(raw[1..].iter().copied()))?;
                let a = self.eval(head.clone(), merged)?;
                let b = self.eval(head, raw.clone())?;
                a - self.mean(c)? * b
            }
            _ => {
                let m = self.mean(r)?;
                let mut grown = centered.clone();
                grown.push(r);
                let a = self.eval(grown, raw[1..].to_vec())?;
                let b = if m.is_zero() { T::zero() } else { m * self.eval(centered.clone(), raw[1..].to_vec())? };
                a + b
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    /// `phi(prod_i (w_i - phi(w_i)))` for a product of words.
    pub fn centered_product(&mut self, factors: &[Vec<(String, i64)>]) -> Result<T> {
        let means = factors.iter().map(|f| self.moment(f)).collect::<Result<Vec<_>>>()?;
        let n = factors.len();
        let mut total = T::zero();
        for mask in 0u32..(1u32 << n) {
            let mut coeff = T::one();
            let mut word = Vec::new();
            for (i, f) in factors.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    coeff = coeff * -means[i].clone();
                } else {
                    word.extend(f.iter().cloned());
                }
            }
            if coeff.is_zero() {
                continue;
            }
            total = total + coeff * self.moment(&word)?;
        }
        Ok(total)
    }
}

/// `phi(word)` for free variables, from the definition of freeness.
pub fn free_word_moment<T: Scalar>(vars: &[FreeVariable<T>], word: &[(String, i64)]) -> Result<T> {
    WordEvaluator::new(vars).moment(word)
}

/// Checks that `h` (a word) and the variable `a` are free up to total degree `max_degree`:
/// every alternating product of centered powers of `h` and `a` has zero expectation.
pub fn freeness_moment_check<T: Scalar>(
    vars: &[FreeVariable<T>],
    a_label: &str,
    h_word: &[(String, i64)],
    max_degree: usize,
) -> Result<bool> {
    let mut ev = WordEvaluator::new(vars);
    ev.index(a_label)?;
    let power = |base: &[(String, i64)], e: usize| -> Vec<(String, i64)> {
        base.iter().cloned().cycle().take(base.len() * e).collect()
    };
    let a_word = vec![(a_label.to_string(), 1)];
    let mut stack: Vec<(Vec<usize>, bool, usize)> = vec![(Vec::new(), true, 0), (Vec::new(), false, 0)];
    while let Some((exps, starts_with_h, degree)) = stack.pop() {
        if exps.len() >= 2 {
            let factors: Vec<Vec<(String, i64)>> = exps
                .iter()
                .enumerate()
                .map(|(i, &e)| if (i % 2 == 0) == starts_with_h { power(h_word, e) } else { power(&a_word, e) })
                .collect();
            if !ev.centered_product(&factors)?.is_close_to_zero() {
                return Ok(false);
            }
        }
        for e in 1..=max_degree.saturating_sub(degree) {
            let mut next = exps.clone();
            next.push(e);
            stack.push((next, starts_with_h, degree + e));
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::transforms::{cumulants_to_moments, product_moments};
    use crate::Rational;

    type Seq = Sequence<Rational>;

    fn ints(v: &[i64]) -> Seq {
        Seq::from_ints(v).unwrap()
    }

    fn w(s: &str) -> Vec<(String, i64)> {
        parse_word(s).unwrap()
    }

    #[test]
    fn parse_words() {
        assert_eq!(w("x:1, y:-2,z"), vec![("x".into(), 1), ("y".into(), -2), ("z".into(), 1)]);
        assert!(parse_word("x:a").is_err());
        assert!(w("").is_empty());
    }

    #[test]
    fn classical_four_letter_formula() {
        let x = FreeVariable::new("x", ints(&[2, 5, 3, 7]));
        let y = FreeVariable::new("y", ints(&[-1, 4, 1, 2]));
        let vars = [x, y];
        let got = free_word_moment(&vars, &w("x,y,x,y")).unwrap();
        let (a1, a2, b1, b2) = (rat(2, 1), rat(5, 1), rat(-1, 1), rat(4, 1));
        let expect = a2.clone() * &b1 * &b1 + a1.clone() * &a1 * &b2 - a1.clone() * &a1 * &b1 * &b1;
        assert_eq!(got, expect);
        assert_eq!(free_word_moment(&vars, &w("x,x,y")).unwrap(), rat(-5, 1));
        assert_eq!(free_word_moment(&vars, &[]).unwrap(), rat(1, 1));
    }

    #[test]
    fn product_moments_match_cumulant_route() {
        let ka = ints(&[1, 2, -1, 0, 3, 1]);
        let mb = ints(&[2, 1, 3, -2, 1, 5]);
        let ma = cumulants_to_moments(&ka, 6).unwrap();
        let vars = [FreeVariable::new("a", ma), FreeVariable::new("b", mb.clone())];
        let expect = product_moments(&ka, &mb, 6).unwrap();
        for n in 1..=6 {
            let word: Vec<(String, i64)> = (0..n).flat_map(|_| [("a".to_string(), 1), ("b".to_string(), 1)]).collect();
            assert_eq!(&free_word_moment(&vars, &word).unwrap(), expect.get(n));
        }
    }

    #[test]
    fn periodic_variables() {
        let vars = [FreeVariable::<Rational>::k_haar("u", 3), FreeVariable::k_haar("v", 3)];
        assert_eq!(free_word_moment(&vars, &w("u:1,u:2")).unwrap(), rat(1, 1));
        assert_eq!(free_word_moment(&vars, &w("u:1,v:1,u:-1,v:-1")).unwrap(), rat(0, 1));
        assert_eq!(free_word_moment(&vars, &w("u:1,v:1,v:-1,u:-1")).unwrap(), rat(1, 1));
        assert_eq!(free_word_moment(&vars, &w("u:3")).unwrap(), rat(1, 1));
    }

    #[test]
    fn word_errors() {
        let vars = [FreeVariable::new("x", ints(&[1, 2]))];
        assert!(matches!(free_word_moment(&vars, &w("x:3")), Err(Error::MissingMoment { .. })));
        assert!(matches!(free_word_moment(&vars, &w("x:-1")), Err(Error::NegativeExponent(_))));
        assert!(matches!(free_word_moment(&vars, &w("q")), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn freeness_of_conjugated_words() {
        let s = FreeVariable::new("s", ints(&[0, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132]));
        let a = FreeVariable::new("a", ints(&[1, 3, 2, 7, 1, 4]));
        let a1 = FreeVariable::new("b", ints(&[2, 1, 5, 3, 1, 2]));
        let vars = [s.clone(), a.clone(), a1.clone()];
        assert!(freeness_moment_check(&vars, "a", &w("s,b,s"), 4).unwrap());
        assert!(freeness_moment_check(&vars, "a", &w("s,a,s"), 4).unwrap());
        let odd = FreeVariable::new("s", ints(&[1, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132]));
        let vars = [odd, a.clone(), a1.clone()];
        assert!(!freeness_moment_check(&vars, "a", &w("s,a,s"), 4).unwrap());
        let scalar = FreeVariable::new("a", ints(&[1, 1, 1, 1, 1, 1]));
        let vars = [s, scalar, a1];
        assert!(freeness_moment_check(&vars, "a", &w("s,b,s"), 4).unwrap());
    }

    #[test]
    fn three_divisible_conjugation() {
        let t = FreeVariable::new("t", ints(&[0, 0, 1, 0, 0, 3, 0, 0, 12, 0, 0, 55]));
        let a = FreeVariable::new("a", ints(&[1, 2, 1, 3]));
        let b = FreeVariable::new("b", ints(&[2, 1, 1, 1, 1, 1]));
        let c = FreeVariable::new("c", ints(&[-1, 2, 1, 1, 1, 1]));
        let vars = [t, a, b, c];
        assert!(freeness_moment_check(&vars, "a", &w("t,b,t,c,t"), 3).unwrap());
        assert!(freeness_moment_check(&vars, "a", &w("t,a,t,b,t"), 3).unwrap());
    }
}
