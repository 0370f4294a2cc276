use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer Laurent polynomial in `t`, stored densely from its lowest exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    /// `coeffs[k]` is the coefficient of `t^(low+k)`; first and last entries are nonzero.
    coeffs: Vec<i128>,
}

fn ovf(what: &'static str) -> Error {
    Error::Overflow(what)
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(c: i128, e: i64) -> Self {
        LaurentPoly::from_coeffs(e, vec![c])
    }

    /// `Σ coeffs[k] t^(low+k)`.
    pub fn from_coeffs(low: i64, coeffs: Vec<i128>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i128)>) -> Result<Self> {
        let mut acc = LaurentPoly::zero();
        for (e, c) in terms {
            acc = acc.add(&LaurentPoly::monomial(c, e))?;
        }
        Ok(acc)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Difference between the highest and lowest exponents; 0 for the zero polynomial.
    pub fn span(&self) -> i64 {
        self.coeffs.len().saturating_sub(1) as i64
    }

    pub fn coeff(&self, e: i64) -> i128 {
        let k = e - self.low;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.low + k as i64, c))
    }

    pub fn neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_neg().ok_or_else(|| ovf("negation")))
            .collect::<Result<_>>()?;
        Ok(LaurentPoly { low: self.low, coeffs })
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    fn combine(&self, other: &Self, sign: i128) -> Result<Self> {
        if self.is_zero() {
            return if sign > 0 { Ok(other.clone()) } else { other.neg() };
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let low = self.low.min(other.low);
        let high = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let coeffs = (low..=high)
            .map(|e| {
                other
                    .coeff(e)
                    .checked_mul(sign)
                    .and_then(|c| self.coeff(e).checked_add(c))
                    .ok_or_else(|| ovf("addition"))
            })
            .collect::<Result<_>>()?;
        Ok(LaurentPoly::from_coeffs(low, coeffs))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = a.checked_mul(b).ok_or_else(|| ovf("multiplication"))?;
                coeffs[i + j] = coeffs[i + j].checked_add(prod).ok_or_else(|| ovf("multiplication"))?;
            }
        }
        Ok(LaurentPoly::from_coeffs(self.low + other.low, coeffs))
    }

    pub fn scale(&self, c: i128) -> Result<Self> {
        self.mul(&LaurentPoly::monomial(c, 0))
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `self / d`, provided `d` divides `self` in `ℤ[t, t^{-1}]`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::internal("division by the zero polynomial"));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let inexact = || Error::internal(format!("({self}) is not divisible by ({d})"));
        let (n, m) = (self.coeffs.len(), d.coeffs.len());
        if n < m {
            return Err(inexact());
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![0i128; n - m + 1];
        let lead = *d.coeffs.last().unwrap();
        for k in (0..=n - m).rev() {
            let top = rem[k + m - 1];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return Err(inexact());
            }
            let c = top / lead;
            q[k] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let prod = c.checked_mul(dc).ok_or_else(|| ovf("division"))?;
                rem[k + j] = rem[k + j].checked_sub(prod).ok_or_else(|| ovf("division"))?;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(inexact());
        }
        Ok(LaurentPoly::from_coeffs(self.low - d.low, q))
    }

    /// Multiply by `±t^k` so that the lowest exponent is 0 and the top coefficient is positive.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let sign = self.coeffs.last().unwrap().signum();
        LaurentPoly {
            low: 0,
            coeffs: self.coeffs.iter().map(|c| c * sign).collect(),
        }
    }

    /// `p(t^{-1})`.
    pub fn reciprocal(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            low: -self.max_exp().unwrap(),
            coeffs,
        }
    }

    /// `p(t^k)` for `k ≥ 1`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k >= 1, "substitute_power needs k >= 1");
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e * k, c))).expect("no new coefficients")
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> Result<i128> {
        self.coeffs
            .iter()
            .try_fold(0i128, |a, &c| a.checked_add(c))
            .ok_or_else(|| ovf("evaluation"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (e, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => {}
                _ => write!(f, "{mag}*")?,
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a Laurent polynomial: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1i128, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ if terms.is_empty() => (1, rest),
                _ => return Err(bad()),
            };
            // a term ends at the next '+' or '-' that is not an exponent sign
            let bytes = body.as_bytes();
            let end = (0..bytes.len())
                .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && i > 0 && bytes[i - 1] != b'^')
                .unwrap_or(bytes.len());
            let term = &body[..end];
            rest = &body[end..];
            let (coef, power) = match term.find('t') {
                None => (term, None),
                Some(i) => {
                    let coef = term[..i].trim_end_matches('*');
                    let pw = &term[i + 1..];
                    let e = if pw.is_empty() {
                        1
                    } else {
                        pw.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
                    };
                    (coef, Some(e))
                }
            };
            let c: i128 = if coef.is_empty() && power.is_some() {
                1
            } else {
                coef.parse().map_err(|_| bad())?
            };
            terms.push((power.unwrap_or(0), sign * c));
        }
        LaurentPoly::from_terms(terms)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<i64, i128> = self.terms().collect();
        let m: BTreeMap<String, i128> = m.into_iter().map(|(e, c)| (e.to_string(), c)).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m: BTreeMap<String, i128> = BTreeMap::deserialize(d)?;
        let terms = m
            .into_iter()
            .map(|(e, c)| e.parse::<i64>().map(|e| (e, c)))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        LaurentPoly::from_terms(terms).map_err(serde::de::Error::custom)
    }
}
