//! Multivariate polynomials over the rationals, the raw material for [`Scalar`](super::Scalar).
//!
//! Monomials are sorted exponent lists over [`Var`](super::Var); terms live in a
//! `BTreeMap` keyed by degree-lexicographic order, so every polynomial has one
//! canonical in-memory form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::Var;

/// A power product of indeterminates, e.g. `q^2 * r12`.
///
/// Exponents are strictly positive; the empty list is the unit monomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub(crate) SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(SmallVec::from_slice(&[(v, exp)]))
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Exact monomial quotient, `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == v {
                let eo = other.0[j].1;
                j += 1;
                match e.cmp(&eo) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - eo)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        for &(v, e) in &self.0 {
            let eo = other.exponent(v);
            if eo > 0 {
                out.push((v, e.min(eo)));
            }
        }
        Monomial(out)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }
}

impl Ord for Monomial {
    /// Degree-lexicographic order; the maximal term of a polynomial under this
    /// order is its leading term.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Same degree: lexicographic, earlier variables weigh more.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    format!("{v}")
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    pub(crate) terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        MPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v, 1), BigRational::one());
        MPoly { terms }
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    /// Leading (maximal) term under the degree-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coef(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = Vec::new();
        for m in self.terms.keys() {
            for v in m.vars() {
                if !vs.contains(&v) {
                    vs.push(v);
                }
            }
        }
        vs.sort();
        vs
    }

    fn insert_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, cc)| (m.clone(), cc * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact polynomial division; `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &MPoly) -> Option<MPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        let (lm, lc) = {
            let (m, c) = other.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading_term().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            quot.insert_term(qm.clone(), qc.clone());
            rem = rem.sub(&other.mul_monomial(&qm, &qc));
        }
        Some(quot)
    }

    /// The monomial dividing every term (the trivial part of the content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let mut g = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        for m in it {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Evaluate with some variables substituted by polynomials (others stay).
    pub fn substitute(&self, bindings: &BTreeMap<Var, MPoly>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            let mut residual = Monomial::one();
            for &(v, e) in &m.0 {
                match bindings.get(&v) {
                    Some(p) => term = term.mul(&p.pow(e)),
                    None => residual = residual.mul(&Monomial::var(v, e)),
                }
            }
            out = out.add(&term.mul_monomial(&residual, &BigRational::one()));
        }
        out
    }

    /// Treat `self` as univariate in `v`: coefficients indexed by the exponent of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            let rest = m.div(&Monomial::var(v, e as u32)).unwrap();
            out[e].insert_term(rest, c.clone());
        }
        out
    }

    /// Rebuild from univariate coefficients in `v`.
    pub fn from_coeffs_in(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            out = out.add(&c.mul_monomial(&Monomial::var(v, e as u32), &BigRational::one()));
        }
        out
    }

    /// Scale so the leading coefficient becomes one.
    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let lc = self.leading_coef();
        self.scale(&lc.recip())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}

/// Canonical text form: terms in descending order, `-` folded into the term.
pub fn render(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (idx, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push(if neg { '-' } else { '+' });
        }
        let coef_is_one = abs.is_one();
        if m.is_one() {
            s.push_str(&format_rational(&abs));
        } else {
            if !coef_is_one {
                s.push_str(&format_rational(&abs));
                s.push('*');
            }
            s.push_str(&format!("{m:?}"));
        }
    }
    s
}

pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MPoly {
        MPoly::var(Var::Q)
    }

    fn r12() -> MPoly {
        MPoly::var(Var::R(1, 2))
    }

    #[test]
    fn arithmetic_basics() {
        let p = q().mul(&q()).sub(&MPoly::one()); // q^2 - 1
        let d = q().sub(&MPoly::one()); // q - 1
        let quot = p.exact_div(&d).unwrap();
        assert_eq!(quot, q().add(&MPoly::one()));
        assert!(p.exact_div(&q().add(&MPoly::from_int(2))).is_none());
    }

    #[test]
    fn ordering_is_deglex() {
        // q^2 > q*r12 (same degree, q-exponent decides), q*r12 > r12^2
        let a = Monomial::var(Var::Q, 2);
        let b = Monomial::var(Var::Q, 1).mul(&Monomial::var(Var::R(1, 2), 1));
        let c = Monomial::var(Var::R(1, 2), 2);
        assert!(a > b && b > c);
        // degree dominates
        assert!(Monomial::var(Var::R(2, 3), 3) > a);
    }

    #[test]
    fn substitution() {
        // (q*r12 + 1) with r12 -> q^2 gives q^3 + 1
        let p = q().mul(&r12()).add(&MPoly::one());
        let mut b = BTreeMap::new();
        b.insert(Var::R(1, 2), q().mul(&q()));
        assert_eq!(p.substitute(&b), q().pow(3).add(&MPoly::one()));
    }

    #[test]
    fn rendering_is_canonical() {
        let p = q().mul(&q()).sub(&MPoly::one());
        assert_eq!(render(&p), "q^2-1");
        let s = MPoly::from_int(3).mul(&q()).scale(&BigRational::new(1.into(), 4.into()));
        assert_eq!(render(&s), "3/4*q");
    }
}
