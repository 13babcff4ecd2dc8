//! Sparse polynomials over the rationals.
//!
//! [`BiPoly`] lives in `Q[x, y]`, where `x` stands for `n` and `y` for `n!`
//! under evaluation. [`UniPoly`] is the `y`-free view used by the power-sum
//! and difference machinery.

mod format;
mod parse;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactnum::{binomial, int_factorial, BigInt, Rational};

pub use format::format_canonical;
pub use parse::{parse_poly, ParseError, ParseErrorKind};

/// Exponent pair `(a, b)` of the monomial `x^a y^b`.
pub type Exponents = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Exponents, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &BiPoly, b: &BiPoly, op: PolyOp) -> BiPoly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// The monomial `c · x^a · y^b`.
    pub fn monomial(a: u32, b: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term((a, b), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// True when no term involves `n!`.
    pub fn is_univariate(&self) -> bool {
        self.terms.keys().all(|e| e.1 == 0)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn to_uni(&self) -> Option<UniPoly> {
        self.is_univariate().then(|| UniPoly {
            terms: self.terms.iter().map(|(e, c)| (e.0, c.clone())).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self · x^dx · y^dy`.
    pub fn shift_monomials(&self, dx: u32, dy: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + dx, b + dy), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at arbitrary rational `x` and `y`.
    pub fn eval_at(&self, x: &Rational, y: &Rational) -> Rational {
        let xs = powers(x, self.deg_x().unwrap_or(0));
        let ys = powers(y, self.deg_y().unwrap_or(0));
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * &xs[a as usize] * &ys[b as usize])
            .sum()
    }

    /// `q(n, n!)`, computing `n!` once.
    pub fn eval_fact(&self, n: u64) -> Rational {
        self.eval_with_factorial(n, &int_factorial(n))
    }

    /// `q(n, fact)` where the caller supplies `fact = n!`.
    pub fn eval_with_factorial(&self, n: u64, fact: &BigInt) -> Rational {
        let xs = int_powers(&BigInt::from(n), self.deg_x().unwrap_or(0));
        let ys = int_powers(fact, self.deg_y().unwrap_or(0));
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * Rational::from_integer(&xs[a as usize] * &ys[b as usize]))
            .sum()
    }

    /// `q(x − 1, y)`.
    pub fn shift_x(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            for (k, binom) in shifted_power(a) {
                out.add_term((k, b), c * Rational::from_integer(binom));
            }
        }
        out
    }

    /// `x^B · q(x − 1, y / x)` with `B = deg_y(q)` (0 for the zero polynomial).
    ///
    /// Under `x = n, y = n!` this is `n^B · q(n − 1, (n − 1)!)`.
    pub fn fact_shift(&self) -> Self {
        self.fact_shift_with(self.deg_y().unwrap_or(0))
    }

    /// Same as [`BiPoly::fact_shift`] but clearing denominators with an
    /// explicit `x^bound`, which must be at least `deg_y(q)`.
    pub fn fact_shift_with(&self, bound: u32) -> Self {
        assert!(
            self.deg_y().is_none_or(|d| d <= bound),
            "factorial shift bound below deg_y"
        );
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let lift = bound - b;
            for (k, binom) in shifted_power(a) {
                out.add_term((k + lift, b), c * Rational::from_integer(binom));
            }
        }
        out
    }
}

/// Expansion of `(x − 1)^a` as `(exponent, signed binomial)` pairs.
fn shifted_power(a: u32) -> impl Iterator<Item = (u32, BigInt)> {
    (0..=a).map(move |k| {
        let c = binomial(a as u64, k as u64);
        let c = if (a - k) % 2 == 1 { -c } else { c };
        (k, c)
    })
}

fn powers(base: &Rational, max: u32) -> Vec<Rational> {
    let mut v = Vec::with_capacity(max as usize + 1);
    v.push(Rational::one());
    for i in 0..max as usize {
        let next = &v[i] * base;
        v.push(next);
    }
    v
}

fn int_powers(base: &BigInt, max: u32) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(max as usize + 1);
    v.push(BigInt::one());
    for i in 0..max as usize {
        let next = &v[i] * base;
        v.push(next);
    }
    v
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

/// Univariate polynomial in `x` (printed as `n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    terms: BTreeMap<u32, Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn monomial(k: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    /// Coefficients in ascending order of exponent.
    pub fn from_coeffs<I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = Rational>,
    {
        let mut p = Self::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            p.add_term(k as u32, c);
        }
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())))
    }

    fn add_term(&mut self, k: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn to_bi(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| ((*k, 0), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for k in (0..=deg).rev() {
            acc *= x;
            if let Some(c) = self.terms.get(&k) {
                acc += c;
            }
        }
        acc
    }

    pub fn eval_int(&self, n: &BigInt) -> Rational {
        self.eval(&Rational::from_integer(n.clone()))
    }

    /// `p(x − 1)`.
    pub fn shift_x(&self) -> Self {
        self.to_bi().shift_x().to_uni().expect("shift keeps y-degree 0")
    }

    /// `p(scale · x + offset)`.
    pub fn compose_linear(&self, scale: &Rational, offset: &Rational) -> Self {
        let inner = UniPoly::from_coeffs([offset.clone(), scale.clone()]);
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut acc = Self::zero();
        for k in (0..=deg).rev() {
            acc = &acc * &inner;
            acc.add_term(0, self.coeff(k));
        }
        acc
    }
}

/// `p(n)` at an integer.
pub fn eval_uni(p: &UniPoly, n: &BigInt) -> Rational {
    p.eval_int(n)
}

/// `q(n, n!)` for `n ≥ 1`.
pub fn eval_fact(q: &BiPoly, n: u64) -> Rational {
    q.eval_fact(n)
}

pub fn shift_x(q: &BiPoly) -> BiPoly {
    q.shift_x()
}

pub fn fact_shift(q: &BiPoly) -> BiPoly {
    q.fact_shift()
}

impl From<UniPoly> for BiPoly {
    fn from(p: UniPoly) -> Self {
        p.to_bi()
    }
}

impl From<&UniPoly> for BiPoly {
    fn from(p: &UniPoly) -> Self {
        p.to_bi()
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                $tr::$m(&self, &rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                $tr::$m(&self, rhs)
            }
        }
    )*};
}

forward_owned!(BiPoly, Add::add, Sub::sub, Mul::mul);
forward_owned!(UniPoly, Add::add, Sub::sub, Mul::mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl std::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_canonical(self))
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_canonical(&self.to_bi()))
    }
}
