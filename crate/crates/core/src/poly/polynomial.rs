use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, VarIndex};
use super::ring::{PolyRing, Ring};
use super::PolyError;

pub type Coeff = BigRational;

/// Sparse polynomial with exact rational coefficients. Terms are kept sorted
/// descending in the ring's order, with no zero coefficients and no repeated
/// monomials; the zero polynomial has no terms.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        Polynomial::from_terms(ring, [(Monomial::one(), c)])
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::constant(ring, Coeff::one())
    }

    pub fn var(ring: &Ring, v: VarIndex) -> Self {
        assert!(
            (v as usize) < ring.num_vars(),
            "variable index out of range"
        );
        Polynomial {
            ring: Arc::clone(ring),
            terms: vec![(Monomial::var(v), Coeff::one())],
        }
    }

    /// Normalizing constructor: sorts, merges equal monomials, drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(ring: &Ring, terms: I) -> Self {
        let mut raw: Vec<(Monomial, Coeff)> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        raw.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: Arc::clone(ring),
            terms: out,
        }
    }

    /// Wraps terms that are already sorted and normalized.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, Coeff)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.iter().map(|(m, _)| m.degree());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn contains_var(&self, pred: impl Fn(VarIndex) -> bool) -> bool {
        self.terms.iter().any(|(m, _)| m.contains_var(&pred))
    }

    /// Indices of all variables that occur, ascending.
    pub fn variables(&self) -> Vec<VarIndex> {
        let mut vs: Vec<VarIndex> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.iter().map(|(v, _)| v))
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, |c| c.clone()))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, |c| -c))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut acc = Polynomial::zero(&self.ring);
        // accumulate the shorter operand term by term so each step is a merge
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (m, c) in &short.terms {
            let shifted = long.mul_term(c, m);
            acc = acc.merge(&shifted, |c| c.clone());
        }
        Ok(acc)
    }

    /// `self + sign(other)` by a linear merge of two sorted term lists.
    fn merge(&self, other: &Polynomial, sign: impl Fn(&Coeff) -> Coeff) -> Polynomial {
        let order = self.ring.order();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + sign(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: out,
        }
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(c, &Monomial::one())
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Re-sorts into a ring with the same variables and another order.
    pub fn with_ring(&self, ring: &Ring) -> Result<Polynomial, PolyError> {
        if !self.ring.same_vars(ring) {
            return Err(PolyError::RingMismatch);
        }
        if Arc::ptr_eq(&self.ring, ring) || self.ring.order() == ring.order() {
            return Ok(Polynomial {
                ring: Arc::clone(ring),
                terms: self.terms.clone(),
            });
        }
        Ok(Polynomial::from_terms(ring, self.terms.iter().cloned()))
    }

    /// Moves into `target` through a variable index map. `None` when some
    /// occurring variable has no image.
    pub fn map_into(
        &self,
        target: &Ring,
        map: impl Fn(VarIndex) -> Option<VarIndex>,
    ) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.remap(&map)?, c.clone()));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    /// Substitutes a polynomial for every variable (`images[v]` lives in the
    /// target ring).
    pub fn substitute(&self, target: &Ring, images: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, e) in m.iter() {
                t = &t * &images[v as usize].pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !self.ring.same_vars(&other.ring) {
            return false;
        }
        if self.ring.order() == other.ring.order() {
            return self.terms == other.terms;
        }
        match other.with_ring(&self.ring) {
            Ok(o) => self.terms == o.terms,
            Err(_) => false,
        }
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_monomial(ring: &PolyRing, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (n, (v, e)) in m.iter().enumerate() {
        if n > 0 {
            write!(f, "*")?;
        }
        write!(f, "{}", ring.variable(v))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical printing: descending terms, `p/q` coefficients, `*` products.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                fmt_monomial(&self.ring, m, f)?;
            } else {
                write!(f, "{abs}*")?;
                fmt_monomial(&self.ring, m, f)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs)
            .expect("polynomials from different rings")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs)
            .expect("polynomials from different rings")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("polynomials from different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, Variable};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn ring(n: usize) -> Ring {
        let vars = (0..n)
            .map(|i| Variable::fresh(format!("v{i}"), None))
            .collect();
        PolyRing::new(vars, MonomialOrder::DegRevLex).unwrap()
    }

    fn q(n: i64) -> Coeff {
        Coeff::from_integer(BigInt::from(n))
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(1);
        let x = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p.to_string(), "v0^2 - 1");
        assert!((&p * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn arrow_variable_product_times_one() {
        let vars = vec![
            Variable::contraction("c", 1, 1),
            Variable::contraction("c", 2, 1),
            Variable::contraction("f", 1, 1),
            Variable::contraction("f", 1, 2),
        ];
        let r = PolyRing::new(vars, MonomialOrder::DegRevLex).unwrap();
        let v = |i| Polynomial::var(&r, i);
        let f = &(&v(0) * &v(2)) + &(&v(1) * &v(3));
        assert_eq!(&f * &Polynomial::one(&r), f);
        assert_eq!(f.to_string(), "x[c;1,1]*x[f;1,1] + x[c;2,1]*x[f;1,2]");
    }

    #[test]
    fn printing_coefficients() {
        let r = ring(2);
        let p = Polynomial::from_terms(
            &r,
            [
                (
                    Monomial::from_pairs([(0, 2)]),
                    Coeff::new(BigInt::from(-1), BigInt::from(2)),
                ),
                (Monomial::var(1), q(3)),
                (Monomial::one(), q(-7)),
            ],
        );
        assert_eq!(p.to_string(), "-1/2*v0^2 + 3*v1 - 7");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::var(&ring(2), 0);
        let b = Polynomial::var(&ring(3), 0);
        assert_eq!(a.checked_mul(&b), Err(PolyError::RingMismatch));
    }

    fn poly_strategy(r: Ring) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (
                proptest::collection::vec((0u32..3, 0u32..3), 0..3),
                -4i64..5,
            ),
            0..5,
        )
        .prop_map(move |terms| {
            Polynomial::from_terms(
                &r,
                terms
                    .into_iter()
                    .map(|(m, c)| (Monomial::from_pairs(m), q(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(
            (a, b, c) in {
                let r = ring(3);
                (poly_strategy(r.clone()), poly_strategy(r.clone()), poly_strategy(r))
            }
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }
    }
}
