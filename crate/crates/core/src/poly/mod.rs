//! Sparse multivariate polynomials with exact coefficients.
//!
//! [`Polynomial`] is generic over its coefficient ring. Invariant values use
//! arbitrary-precision integers (see [`crate::Poly`]); machine integers work
//! for small inputs and for evaluation-based cross-checks.

mod monomial;
mod var;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::Signed;
use rustc_hash::FxHashMap;
use thiserror::Error;

pub use monomial::Monomial;
pub use var::{is_valid_species_name, Species, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),
}

/// Coefficient ring of a [`Polynomial`].
pub trait Coefficient: Clone + fmt::Debug + fmt::Display + Eq + Hash + Signed + AddAssign {}

impl<T> Coefficient for T where T: Clone + fmt::Debug + fmt::Display + Eq + Hash + Signed + AddAssign {}

/// A polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        Self::monomial(Monomial::var(v), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Sums the given terms, merging like monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        Self::from_accumulator(acc)
    }

    fn from_accumulator(acc: FxHashMap<Monomial, C>) -> Self {
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    /// Maximum total degree over all terms.
    pub fn degree(&self) -> Result<u32, PolyError> {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution. Variables missing from `map` stay as they are.
    pub fn substitute(&self, map: &HashMap<VarId, Polynomial<C>>) -> Self {
        let mut powers: HashMap<(VarId, u32), Polynomial<C>> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut fixed = Vec::new();
            let mut term = Self::constant(c.clone());
            for (v, e) in m.powers() {
                match map.get(v) {
                    Some(image) => {
                        let p = powers.entry((v.clone(), e)).or_insert_with(|| image.pow(e));
                        term = &term * &*p;
                    }
                    None => fixed.push((v.clone(), e)),
                }
            }
            if !fixed.is_empty() {
                term = &term * &Self::monomial(Monomial::from_powers(fixed), C::one());
            }
            out = out + term;
        }
        out
    }

    /// Evaluates the polynomial with `value` giving each variable's value.
    pub fn eval(&self, value: impl Fn(&VarId) -> C) -> C {
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.powers() {
                let x = value(v);
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            total += t;
        }
        total
    }

    /// Canonical text form: terms by descending total degree, ties by
    /// descending exponent vector in variable order. Unit coefficients and
    /// unit exponents are omitted.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &C)> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.print_cmp(b.0));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{abs}*{m}"));
            }
        }
        out
    }
}

fn accumulate<C: Coefficient>(acc: &mut FxHashMap<Monomial, C>, m: Monomial, c: C) {
    use std::collections::hash_map::Entry;
    match acc.entry(m) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

impl<C: Coefficient> Default for Polynomial<C> {
    fn default() -> Self {
        Polynomial::zero()
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_canonical_string())
    }
}

impl<C: Coefficient> From<VarId> for Polynomial<C> {
    fn from(v: VarId) -> Self {
        Polynomial::var(v)
    }
}

impl<C: Coefficient> Add<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.clone() + rhs
    }
}

impl<C: Coefficient> Add<&Polynomial<C>> for Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(mut self, rhs: &Polynomial<C>) -> Polynomial<C> {
        for (m, c) in &rhs.terms {
            match self.terms.get_mut(m) {
                Some(existing) => {
                    let sum = existing.clone() + c.clone();
                    if sum.is_zero() {
                        self.terms.remove(m);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    self.terms.insert(m.clone(), c.clone());
                }
            }
        }
        self
    }
}

impl<C: Coefficient> Add for Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: Polynomial<C>) -> Polynomial<C> {
        if self.terms.len() < rhs.terms.len() {
            rhs + &self
        } else {
            self + &rhs
        }
    }
}

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Coefficient> Sub for Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: Polynomial<C>) -> Polynomial<C> {
        self + (-rhs)
    }
}

impl<C: Coefficient> Mul<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: FxHashMap<Monomial, C> = FxHashMap::default();
        acc.reserve((self.terms.len() * rhs.terms.len()).min(1 << 16));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut acc, ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Polynomial::from_accumulator(acc)
    }
}

impl<C: Coefficient> Mul for Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: Polynomial<C>) -> Polynomial<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> Sum for Polynomial<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |a, b| a + b)
    }
}

impl<C: Coefficient> Product for Polynomial<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    type P = Polynomial<BigInt>;

    fn x() -> P {
        P::var(VarId::X)
    }
    fn y() -> P {
        P::var(VarId::Y)
    }
    fn z() -> P {
        P::var(VarId::Z)
    }
    fn q() -> P {
        P::var(VarId::Q)
    }
    fn r() -> P {
        P::var(VarId::R)
    }
    fn s() -> P {
        P::var(VarId::S)
    }
    fn c(n: i64) -> P {
        P::constant(BigInt::from(n))
    }

    #[test]
    fn variables_render() {
        assert_eq!(x().to_string(), "x");
        assert_eq!(y().to_string(), "y");
        assert_eq!(P::var(VarId::species_leaf("hum")).to_string(), "x:hum");
    }

    #[test]
    fn add_merges_and_cancels() {
        assert_eq!((y() + x() + y()).to_string(), "x + 2*y");
        assert_eq!(x() + P::zero(), x());
        assert!((x() + (-x())).is_zero());
        assert_eq!((x() - x()).to_string(), "0");
    }

    #[test]
    fn mul_expands() {
        assert_eq!(((y() + x()) * (z() + x())).to_string(), "x^2 + x*y + x*z + y*z");
        assert_eq!(&x() * &P::one(), x());
        assert!((x() * P::zero()).is_zero());
    }

    #[test]
    fn mul_matches_naive_termwise_product() {
        let a = y() + q();
        let b = q() * r();
        // naive product: every pair of terms as its own polynomial, then summed
        let naive: P = a
            .terms()
            .flat_map(|(ma, ca)| {
                b.terms()
                    .map(move |(mb, cb)| P::monomial(ma.mul(mb), ca.clone() * cb.clone()))
            })
            .sum();
        let expected = q() * q() * r() + q() * r() * y();
        assert_eq!(&a * &b, naive);
        assert_eq!(&a * &b, expected);
        assert_eq!((&a * &b).to_string(), "q^2*r + q*r*y");
    }

    #[test]
    fn degree() {
        let p = y() + s() + q() * r() * (y() + q());
        assert_eq!(p.degree(), Ok(3));
        assert_eq!(x().degree(), Ok(1));
        assert_eq!((y() + x() * x()).degree(), Ok(2));
        assert_eq!(P::zero().degree(), Err(PolyError::ZeroPolynomial));
        assert_eq!(c(5).degree(), Ok(0));
    }

    #[test]
    fn substitute_collapses_variables() {
        let p = y() + s() + (z() + x()) * (y() + z() + x());
        let map: HashMap<VarId, P> = [(VarId::S, y()), (VarId::Z, y())].into_iter().collect();
        let got = p.substitute(&map);
        let expected = c(2) * y() + c(2) * y() * y() + c(3) * x() * y() + x() * x();
        assert_eq!(got, expected);

        // evaluation cross-check at a handful of integer points
        for (xv, yv, zv, sv) in [(1, 2, 3, 4), (-2, 5, 0, 7), (3, -1, 2, 2), (0, 0, 9, 1), (4, 4, -4, -3)] {
            let at = |v: &VarId| {
                BigInt::from(match v {
                    VarId::X => xv,
                    VarId::Y => yv,
                    VarId::Z => zv,
                    VarId::S => sv,
                    _ => 0,
                })
            };
            let substituted_at = |v: &VarId| {
                BigInt::from(match v {
                    VarId::X => xv,
                    VarId::Y | VarId::Z | VarId::S => yv,
                    _ => 0,
                })
            };
            assert_eq!(got.eval(at), p.eval(substituted_at));
        }

        let hum = P::var(VarId::species_leaf("hum"));
        let to_x: HashMap<VarId, P> = [(VarId::species_leaf("hum"), x())].into_iter().collect();
        assert_eq!(hum.substitute(&to_x), x());
        assert_eq!(p.substitute(&HashMap::new()), p);
    }

    #[test]
    fn canonical_strings() {
        assert_eq!((y() + x() * x()).to_string(), "x^2 + y");
        assert_eq!((x() * x() + y()).to_string(), "x^2 + y");
        let p = q() * q() * r() + q() * r() * y() + s() + y();
        assert_eq!(p.to_string(), "q^2*r + q*r*y + s + y");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!((c(1) - x() - c(2) * y()).to_string(), "-x - 2*y + 1");
        assert_eq!((x() - c(3)).to_string(), "x - 3");
        assert_eq!(c(-4).to_string(), "-4");
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let p = y() + s() + q() * r() * (y() + q());
        let mut rep = P::one();
        for _ in 0..6 {
            rep = &rep * &p;
        }
        assert_eq!(p.pow(6), rep);
        assert_eq!(p.pow(0), P::one());
    }

    #[test]
    fn machine_integer_coefficients() {
        let a: Polynomial<i64> = Polynomial::var(VarId::X) + Polynomial::var(VarId::Y);
        assert_eq!((&a * &a).to_string(), "x^2 + 2*x*y + y^2");
    }
}
