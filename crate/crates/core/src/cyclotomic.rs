//! Formal products `∏ (λ^m − 1)^{χ_m}` with an optional level `h`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclotomicError {
    #[error("the product is not a polynomial: division by (λ^{0}−1) leaves a remainder")]
    NotPolynomial(u64),
    #[error("factor (λ^{m}−1) does not divide level {h}")]
    LevelMismatch { m: u64, h: u64 },
    #[error("expected exponent 1 on (λ−1), found {0}")]
    BadShape(i64),
    #[error("invalid product: {0}")]
    Invalid(String),
}

impl CyclotomicError {
    pub fn name(&self) -> &'static str {
        match self {
            CyclotomicError::NotPolynomial(_) => "NotPolynomial",
            CyclotomicError::LevelMismatch { .. } => "LevelMismatch",
            CyclotomicError::BadShape(_) => "BadShape",
            CyclotomicError::Invalid(_) => "Invalid",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ProductJson", try_from = "ProductJson")]
pub struct CyclotomicProduct {
    factors: BTreeMap<u64, i64>,
    level: Option<u64>,
}

impl CyclotomicProduct {
    /// The empty product, equal to the constant 1.
    pub fn one() -> Self {
        Self::default()
    }

    /// `(λ^m − 1)^exp`.
    pub fn factor(m: u64, exp: i64) -> Self {
        Self::from_factors([(m, exp)])
    }

    pub fn from_factors<I: IntoIterator<Item = (u64, i64)>>(factors: I) -> Self {
        let mut map = BTreeMap::new();
        for (m, e) in factors {
            assert!(m > 0, "factor index must be positive");
            *map.entry(m).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        CyclotomicProduct { factors: map, level: None }
    }

    pub fn with_level(mut self, h: u64) -> Result<Self, CyclotomicError> {
        if let Some(m) = self.factors.keys().find(|m| h % **m != 0) {
            return Err(CyclotomicError::LevelMismatch { m: *m, h });
        }
        self.level = Some(h);
        Ok(self)
    }

    pub fn without_level(mut self) -> Self {
        self.level = None;
        self
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn exponent(&self, m: u64) -> i64 {
        self.factors.get(&m).copied().unwrap_or(0)
    }

    pub fn level(&self) -> Option<u64> {
        self.level
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Pointwise sum of exponents. Levels combine by lcm and are dropped
    /// when the result no longer divides them.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut product = Self::from_factors(
            self.factors.iter().chain(other.factors.iter()).map(|(m, e)| (*m, *e)),
        );
        let level = match (self.level, other.level) {
            (Some(a), Some(b)) => Some(a.lcm(&b)),
            (a, b) => a.or(b),
        };
        product.level = level.filter(|h| product.factors.keys().all(|m| h % m == 0));
        product
    }

    /// `c^k` for an integer `k`.
    pub fn pow(&self, k: i64) -> Self {
        let mut p = Self::from_factors(self.factors.iter().map(|(m, e)| (*m, e * k)));
        p.level = self.level;
        p
    }

    /// `Σ m·χ_m`.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(m, e)| *m as i64 * e).sum()
    }

    /// Coefficients of the quotient, lowest degree first.
    pub fn expand(&self) -> Result<Vec<BigInt>, CyclotomicError> {
        let mut poly = vec![BigInt::one()];
        for (m, e) in self.factors.iter().filter(|(_, e)| **e > 0) {
            for _ in 0..*e {
                poly = multiply_binomial(&poly, *m as usize);
            }
        }
        for (m, e) in self.factors.iter().filter(|(_, e)| **e < 0) {
            for _ in 0..-*e {
                poly = divide_binomial(&poly, *m as usize).ok_or(CyclotomicError::NotPolynomial(*m))?;
            }
        }
        Ok(poly)
    }

    /// Saito's dual at level `h`: `k ↦ −χ_{h/k}`.
    pub fn saito_dual(&self, h: u64) -> Result<Self, CyclotomicError> {
        if let Some(m) = self.factors.keys().find(|m| h % **m != 0) {
            return Err(CyclotomicError::LevelMismatch { m: *m, h });
        }
        let dual = Self::from_factors(self.factors.iter().map(|(m, e)| (h / m, -e)));
        dual.with_level(h)
    }

    /// From the curve factor `(λ−1)·∏_{m>1}(λ^m−1)^{χ_m}` to
    /// `(λ²−1)²(λ−1)⁻¹ ∏_{m>1}(λ^{2m}−1)^{χ_m}(λ^m−1)^{−χ_m}`.
    pub fn suspend(&self) -> Result<Self, CyclotomicError> {
        let e1 = self.exponent(1);
        if e1 != 1 {
            return Err(CyclotomicError::BadShape(e1));
        }
        let tail = self.factors.iter().filter(|(m, _)| **m > 1);
        let mut factors = vec![(2, 2), (1, -1)];
        for (m, e) in tail {
            factors.push((2 * m, *e));
            factors.push((*m, -e));
        }
        let mut p = Self::from_factors(factors);
        p.level = self.level.map(|h| 2 * h);
        Ok(p)
    }

    /// `φ(−λ)` up to sign: `λ^m − 1` is kept for even `m` and becomes
    /// `(λ^{2m} − 1)(λ^m − 1)⁻¹` for odd `m`.
    pub fn negate_variable(&self) -> Self {
        let mut factors = Vec::new();
        for (m, e) in &self.factors {
            if m % 2 == 0 {
                factors.push((*m, *e));
            } else {
                factors.push((2 * m, *e));
                factors.push((*m, -e));
            }
        }
        let mut p = Self::from_factors(factors);
        p.level = self.level.map(|h| if h % 2 == 0 { h } else { 2 * h });
        p
    }

    /// `(λ² − 1)·φ(−λ)`. Agrees with [`suspend`](Self::suspend) when every
    /// `m > 1` in the tail is odd.
    pub fn suspend_by_substitution(&self) -> Self {
        Self::factor(2, 1).multiply(&self.negate_variable())
    }
}

fn multiply_binomial(poly: &[BigInt], m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); poly.len() + m];
    for (i, c) in poly.iter().enumerate() {
        out[i + m] += c;
        out[i] -= c;
    }
    out
}

/// Exact division by `λ^m − 1`; `None` on a nonzero remainder.
fn divide_binomial(poly: &[BigInt], m: usize) -> Option<Vec<BigInt>> {
    if poly.len() <= m {
        return None;
    }
    let mut rem = poly.to_vec();
    let mut quot = vec![BigInt::zero(); poly.len() - m];
    for i in (m..rem.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        rem[i - m] += &c;
        quot[i - m] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

impl fmt::Display for CyclotomicProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(m, e)| {
                let base = if *m == 1 { "(λ−1)".to_string() } else { format!("(λ^{m}−1)") };
                if *e == 1 { base } else { format!("{base}^{e}") }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Formats integer coefficients (lowest degree first) as a polynomial in λ.
pub fn format_expanded(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (d, c) in coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let mag = c.abs();
        let coeff = if mag.is_one() && d > 0 { String::new() } else { mag.to_string() };
        let var = match d {
            0 => String::new(),
            1 => "λ".to_string(),
            _ => format!("λ^{d}"),
        };
        out.push_str(&coeff);
        out.push_str(&var);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    m: u64,
    exp: i64,
}

#[derive(Serialize, Deserialize)]
struct ProductJson {
    h: Option<u64>,
    factors: Vec<FactorJson>,
}

impl From<CyclotomicProduct> for ProductJson {
    fn from(c: CyclotomicProduct) -> Self {
        ProductJson {
            h: c.level,
            factors: c.factors.iter().map(|(m, e)| FactorJson { m: *m, exp: *e }).collect(),
        }
    }
}

impl TryFrom<ProductJson> for CyclotomicProduct {
    type Error = CyclotomicError;
    fn try_from(j: ProductJson) -> Result<Self, Self::Error> {
        if j.factors.iter().any(|f| f.m == 0) {
            return Err(CyclotomicError::Invalid("factor index 0".into()));
        }
        let p = CyclotomicProduct::from_factors(j.factors.into_iter().map(|f| (f.m, f.exp)));
        match j.h {
            Some(0) => Err(CyclotomicError::Invalid("level 0".into())),
            Some(h) => p.with_level(h),
            None => Ok(p),
        }
    }
}
