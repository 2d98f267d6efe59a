//! Laurent polynomials in `x, y, z`, their supports and Newton diagrams.
//!
//! Text form (whitespace ignored):
//!
//! ```text
//! poly    := [('+'|'-')] term (('+'|'-') term)*
//! term    := [integer ['*']] monomial | integer
//! monomial:= factor+
//! factor  := var ['^' signed] ; var := 'x' | 'y' | 'z'
//! signed  := ['-'] digit+ | '(' ['-'] digit+ ')'
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geometry::{
    combination, convex_hull, nullspace, primitive_integer, rank, rank3, IVec3, Rational,
    RationalPolytope, Vec3Q,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("all terms cancel")]
    EmptyPolynomial,
    #[error("support is not contained in a hyperplane missing the origin")]
    NotHomogeneous,
    #[error("support does not span a plane; the weight system is not determined")]
    Underdetermined,
    #[error("the support plane has a non-positive normal entry {0:?}")]
    NoPositiveWeights(Vec<i64>),
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
}

impl LaurentError {
    pub fn name(&self) -> &'static str {
        match self {
            LaurentError::SyntaxError { .. } => "SyntaxError",
            LaurentError::EmptyPolynomial => "EmptyPolynomial",
            LaurentError::NotHomogeneous => "NotHomogeneous",
            LaurentError::Underdetermined => "Underdetermined",
            LaurentError::NoPositiveWeights(_) => "NoPositiveWeights",
            LaurentError::InvalidWeights(_) => "InvalidWeights",
        }
    }
}

/// Finitely supported map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<IVec3, Rational>,
}

impl LaurentPolynomial {
    /// Collects terms, summing like exponents and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (IVec3, Rational)>,
    {
        let mut map: BTreeMap<IVec3, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(LaurentError::EmptyPolynomial);
        }
        Ok(LaurentPolynomial { terms: map })
    }

    pub fn parse(text: &str) -> Result<Self, LaurentError> {
        Parser::new(text).polynomial()
    }

    pub fn terms(&self) -> &BTreeMap<IVec3, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, exponent: IVec3) -> Option<&Rational> {
        self.terms.get(&exponent)
    }

    pub fn support(&self) -> Vec<IVec3> {
        self.terms.keys().copied().collect()
    }

    /// The polynomial with the term of the given exponent removed.
    pub fn without(&self, exponent: IVec3) -> Result<Self, LaurentError> {
        let mut terms = self.terms.clone();
        terms.remove(&exponent);
        if terms.is_empty() {
            return Err(LaurentError::EmptyPolynomial);
        }
        Ok(LaurentPolynomial { terms })
    }

    fn off_origin_support(&self) -> Vec<Vec3Q> {
        self.terms
            .keys()
            .filter(|e| **e != [0, 0, 0])
            .map(|e| Vec3Q::from_ints(*e))
            .collect()
    }

    /// Convex hull of `supp(p) \ {0}`.
    ///
    /// Only weighted-homogeneous input is accepted: the support must lie in
    /// an affine subspace that misses the origin.
    pub fn newton_diagram(&self) -> Result<RationalPolytope, LaurentError> {
        let pts = self.off_origin_support();
        if pts.is_empty() {
            return Err(LaurentError::NotHomogeneous);
        }
        let affine_dim = rank3(&pts.iter().map(|p| p - &pts[0]).collect::<Vec<_>>());
        if rank3(&pts) != affine_dim + 1 {
            return Err(LaurentError::NotHomogeneous);
        }
        Ok(convex_hull(&pts))
    }

    /// The reduced positive weight system whose hyperplane contains the
    /// support.
    pub fn weight_system(&self) -> Result<WeightSystem, LaurentError> {
        let pts = self.off_origin_support();
        if pts.is_empty() {
            return Err(LaurentError::Underdetermined);
        }
        let diffs: Vec<Vec<Rational>> = pts.iter().map(|p| (p - &pts[0]).0.to_vec()).collect();
        if rank(&diffs) != 2 {
            return Err(if rank(&diffs) > 2 { LaurentError::NotHomogeneous } else { LaurentError::Underdetermined });
        }
        let normal = nullspace(&diffs, 3).pop().expect("one-dimensional normal space");
        let mut n = primitive_integer(&normal).expect("nonzero normal");
        let value: BigInt = n
            .iter()
            .zip(pts[0].coords())
            .map(|(a, x)| (Rational::from_integer(a.clone()) * x).to_integer())
            .sum();
        if value.is_zero() {
            return Err(LaurentError::NotHomogeneous);
        }
        if value.is_negative() {
            n = n.into_iter().map(|x| -x).collect();
        }
        let weights: Vec<i64> = n.iter().map(|x| i64::try_from(x).expect("weight fits in i64")).collect();
        if weights.iter().any(|w| *w <= 0) {
            return Err(LaurentError::NoPositiveWeights(weights));
        }
        let degree = i64::try_from(value.abs()).expect("degree fits in i64");
        WeightSystem::new(weights.iter().map(|w| *w as u64).collect(), degree as u64)
    }

    /// Whether every support point is a non-negative combination of the
    /// generators.
    pub fn in_cone(&self, generators: &[IVec3]) -> bool {
        self.terms.keys().all(|e| in_cone(*e, generators))
    }

    pub fn is_homogeneous_for(&self, weights: &[u64], degree: u64) -> bool {
        self.terms.keys().all(|e| {
            e.iter().zip(weights).map(|(a, w)| a * *w as i64).sum::<i64>() == degree as i64
        })
    }
}

/// Conic Carathéodory: `point ∈ pos(G)` iff it lies in the cone over some
/// linearly independent subset of `G`.
pub fn in_cone(point: IVec3, generators: &[IVec3]) -> bool {
    let target = Vec3Q::from_ints(point);
    if target.is_zero() {
        return true;
    }
    let k = generators.len();
    (1u32..(1 << k)).any(|mask| {
        let subset: Vec<Vec3Q> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| Vec3Q::from_ints(generators[i]))
            .collect();
        if subset.len() > 3 || rank3(&subset) != subset.len() {
            return false;
        }
        combination(&subset, &target).is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    })
}

impl FromStr for LaurentPolynomial {
    type Err = LaurentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LaurentPolynomial::parse(s)
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Canonical form: terms by descending exponent vector, coefficient and
    /// exponent 1 omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let monomial = format_monomial(*e);
            let negative = c.is_negative();
            if negative {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let magnitude = c.abs();
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{magnitude}{monomial}")?;
            }
        }
        Ok(())
    }
}

fn format_monomial(e: IVec3) -> String {
    let mut s = String::new();
    for (var, exp) in ['x', 'y', 'z'].iter().zip(e) {
        match exp {
            0 => {}
            1 => s.push(*var),
            _ => s.push_str(&format!("{var}^{exp}")),
        }
    }
    s
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |(i, _)| *i)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, LaurentError> {
        Err(LaurentError::SyntaxError { position: self.offset(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn polynomial(&mut self) -> Result<LaurentPolynomial, LaurentError> {
        if self.chars.is_empty() {
            return self.error("empty input");
        }
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let (e, c) = self.term()?;
            terms.push((e, c * Rational::from_integer(BigInt::from(sign))));
            match self.peek() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(c) => return self.error(format!("unexpected '{c}'")),
            }
            self.pos += 1;
        }
        LaurentPolynomial::from_terms(terms)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let text: String = self.chars[start..self.pos].iter().map(|(_, c)| *c).collect();
        Some(text.parse().expect("ascii digits"))
    }

    fn term(&mut self) -> Result<(IVec3, Rational), LaurentError> {
        let coefficient = self.digits();
        if coefficient.is_some() {
            self.eat('*');
        }
        let mut exponent = [0i64; 3];
        let mut factors = 0;
        while let Some(var) = self.peek().and_then(|c| "xyz".find(c)) {
            self.pos += 1;
            let power = if self.eat('^') { self.signed()? } else { 1 };
            exponent[var] += power;
            factors += 1;
        }
        if factors == 0 && coefficient.is_none() {
            return match self.peek() {
                Some(c) => self.error(format!("expected a term, found '{c}'")),
                None => self.error("expected a term, found end of input"),
            };
        }
        if factors == 0 && self.chars.get(self.pos.wrapping_sub(1)).is_some_and(|(_, c)| *c == '*') {
            return self.error("expected a monomial after '*'");
        }
        let c = Rational::from_integer(coefficient.unwrap_or_else(BigInt::one));
        Ok((exponent, c))
    }

    fn signed(&mut self) -> Result<i64, LaurentError> {
        let paren = self.eat('(');
        let negative = self.eat('-');
        let Some(value) = self.digits() else {
            return self.error("expected an exponent");
        };
        if paren && !self.eat(')') {
            return self.error("expected ')'");
        }
        let value = i64::try_from(value).or_else(|_| self.error("exponent out of range"))?;
        Ok(if negative { -value } else { value })
    }
}

/// Reduced weight system `(w_1, …, w_n; N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct WeightSystem {
    weights: Vec<u64>,
    degree: u64,
}

impl WeightSystem {
    pub fn new(weights: Vec<u64>, degree: u64) -> Result<Self, LaurentError> {
        if weights.is_empty() || weights.contains(&0) || degree == 0 {
            return Err(LaurentError::InvalidWeights("weights and degree must be positive".into()));
        }
        let g = weights.iter().fold(0u64, |acc, w| acc.gcd(w));
        if g != 1 {
            return Err(LaurentError::InvalidWeights(format!("weights {weights:?} are not reduced")));
        }
        Ok(WeightSystem { weights, degree })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// The system restricted to its first three weights.
    pub fn leading3(&self) -> [u64; 3] {
        [self.weights[0], self.weights[1], self.weights[2]]
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "({};{})", ws.join(","), self.degree)
    }
}
