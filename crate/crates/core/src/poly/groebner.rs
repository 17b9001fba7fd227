//! Buchberger's algorithm with the Gebauer–Möller criteria and the sugar
//! selection strategy.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::{Coeff, Polynomial};
use super::PolyError;

/// Caps on Buchberger's work. Exceeding either is reported as an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: u64,
    pub max_reductions: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 1_000_000,
            max_reductions: 10_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_pairs: u64::MAX,
            max_reductions: u64::MAX,
        }
    }

    pub fn with_reductions(max_reductions: u64) -> Self {
        Budget {
            max_reductions,
            ..Budget::default()
        }
    }
}

/// Work counters reported alongside a basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub pairs: u64,
    pub reductions: u64,
    pub zero_reductions: u64,
}

struct Counter<'a> {
    budget: &'a Budget,
    stats: Stats,
}

impl Counter<'_> {
    fn reduction(&mut self) -> Result<(), PolyError> {
        self.stats.reductions += 1;
        if self.stats.reductions > self.budget.max_reductions {
            return Err(PolyError::BudgetExceeded {
                what: "reduction steps",
                limit: self.budget.max_reductions,
            });
        }
        Ok(())
    }

    fn pair(&mut self) -> Result<(), PolyError> {
        self.stats.pairs += 1;
        if self.stats.pairs > self.budget.max_pairs {
            return Err(PolyError::BudgetExceeded {
                what: "S-pairs",
                limit: self.budget.max_pairs,
            });
        }
        Ok(())
    }
}

/// `a - factor * shift * g`, merged in descending order.
fn sub_shifted(
    a: &[(Monomial, Coeff)],
    g: &[(Monomial, Coeff)],
    factor: &Coeff,
    shift: &Monomial,
    order: &MonomialOrder,
) -> Vec<(Monomial, Coeff)> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut i = 0;
    for (gm, gc) in g {
        let m = gm.mul(shift);
        let c = -(gc * factor);
        while i < a.len() && order.cmp(&a[i].0, &m) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].0 == m {
            let s = &a[i].1 + c;
            if !s.is_zero() {
                out.push((m, s));
            }
            i += 1;
        } else {
            out.push((m, c));
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

/// Full reduction of `f` by `divisors`; every remainder term is irreducible.
fn reduce_full(
    f: Polynomial,
    divisors: &[&Polynomial],
    mut counter: Option<&mut Counter<'_>>,
) -> Result<Polynomial, PolyError> {
    let ring = f.ring().clone();
    let order = ring.order();
    let mut p = f.into_terms();
    let mut start = 0;
    let mut rem: Vec<(Monomial, Coeff)> = Vec::new();
    while start < p.len() {
        let divisor = divisors.iter().find(|g| {
            g.leading_monomial()
                .is_some_and(|lm| lm.divides(&p[start].0))
        });
        match divisor {
            Some(g) => {
                if let Some(c) = counter.as_deref_mut() {
                    c.reduction()?;
                }
                let (glm, glc) = (&g.terms()[0].0, &g.terms()[0].1);
                let (lm, lc) = &p[start];
                let shift = lm.div(glm).expect("divisibility checked");
                let factor = lc / glc;
                p = sub_shifted(&p[start..], g.terms(), &factor, &shift, order);
                start = 0;
            }
            None => {
                let t = std::mem::replace(&mut p[start], (Monomial::one(), Coeff::zero()));
                rem.push(t);
                start += 1;
            }
        }
    }
    Ok(Polynomial::from_sorted(&ring, rem))
}

/// Remainder of `f` on division by `basis` (all in one ring). For a Gröbner
/// basis this is the unique normal form.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let divisors: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    reduce_full(f.clone(), &divisors, None).expect("unbounded reduction")
}

struct Entry {
    poly: Polynomial,
    lm: Monomial,
    sugar: u32,
    active: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Buchberger<'a> {
    order: MonomialOrder,
    entries: Vec<Entry>,
    pairs: Vec<Pair>,
    counter: Counter<'a>,
}

impl Buchberger<'_> {
    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let d = lcm.degree();
        let (a, b) = (&self.entries[i], &self.entries[j]);
        (a.sugar + d - a.lm.degree()).max(b.sugar + d - b.lm.degree())
    }

    /// Gebauer–Möller update for a new monic basis element.
    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let hn = self.entries.len();
        let lm_h = h.leading_monomial().expect("nonzero").clone();
        let active: Vec<usize> = (0..hn).filter(|&k| self.entries[k].active).collect();
        let lcms: Vec<Monomial> = active
            .iter()
            .map(|&k| lm_h.lcm(&self.entries[k].lm))
            .collect();

        let mut kept: Vec<usize> = Vec::new();
        for pos in 0..active.len() {
            let coprime = lm_h.is_coprime(&self.entries[active[pos]].lm);
            let dominated = (pos + 1..active.len())
                .chain(kept.iter().copied())
                .any(|q| lcms[q].divides(&lcms[pos]));
            if coprime || !dominated {
                kept.push(pos);
            }
        }

        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lm_h.lcm(&self.entries[p.i].lm) != p.lcm
                && lm_h.lcm(&self.entries[p.j].lm) != p.lcm)
        });

        for &k in &self.active_to_kill(&lm_h) {
            self.entries[k].active = false;
        }
        self.entries.push(Entry {
            poly: h,
            lm: lm_h.clone(),
            sugar,
            active: true,
        });

        for pos in kept {
            let g = active[pos];
            if lm_h.is_coprime(&self.entries[g].lm) {
                continue;
            }
            let lcm = lcms[pos].clone();
            let sugar = self.pair_sugar(g, hn, &lcm);
            self.pairs.push(Pair {
                i: g,
                j: hn,
                lcm,
                sugar,
            });
        }
    }

    fn active_to_kill(&self, lm_h: &Monomial) -> Vec<usize> {
        (0..self.entries.len())
            .filter(|&k| self.entries[k].active && lm_h.divides(&self.entries[k].lm))
            .collect()
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = &self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar
                .cmp(&q.sugar)
                .then_with(|| order.cmp(&p.lcm, &q.lcm))
                .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, pair: &Pair) -> Polynomial {
        let (a, b) = (&self.entries[pair.i], &self.entries[pair.j]);
        let one = Coeff::one();
        let sa = a.poly.mul_term(&one, &pair.lcm.div(&a.lm).expect("lcm"));
        let sb = b.poly.mul_term(&one, &pair.lcm.div(&b.lm).expect("lcm"));
        &sa - &sb
    }
}

/// The reduced Gröbner basis of the ideal generated by `gens`, in the order of
/// their common ring, sorted ascending by leading monomial.
pub fn groebner_basis(
    gens: &[Polynomial],
    budget: &Budget,
) -> Result<(Vec<Polynomial>, Stats), PolyError> {
    let Some(first) = gens.first() else {
        return Ok((Vec::new(), Stats::default()));
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| !g.ring().same_ring(&ring)) {
        return Err(PolyError::RingMismatch);
    }
    let order = ring.order().clone();

    let mut inputs: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    inputs.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut bb = Buchberger {
        order: order.clone(),
        entries: Vec::new(),
        pairs: Vec::new(),
        counter: Counter {
            budget,
            stats: Stats::default(),
        },
    };

    for f in inputs {
        let sugar = f.total_degree().unwrap_or(0);
        let divisors: Vec<&Polynomial> = bb
            .entries
            .iter()
            .filter(|e| e.active)
            .map(|e| &e.poly)
            .collect();
        let h = reduce_full(f.clone(), &divisors, Some(&mut bb.counter))?;
        if !h.is_zero() {
            bb.insert(h.monic(), sugar);
        }
    }

    while let Some(pair) = bb.next_pair() {
        bb.counter.pair()?;
        let s = bb.s_polynomial(&pair);
        let divisors: Vec<&Polynomial> = bb
            .entries
            .iter()
            .filter(|e| e.active)
            .map(|e| &e.poly)
            .collect();
        let h = reduce_full(s, &divisors, Some(&mut bb.counter))?;
        if h.is_zero() {
            bb.counter.stats.zero_reductions += 1;
        } else {
            bb.insert(h.monic(), pair.sugar);
        }
    }

    let mut minimal: Vec<Polynomial> = bb
        .entries
        .iter()
        .filter(|e| e.active)
        .map(|e| e.poly.clone())
        .collect();
    minimal.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(o, _)| o != k)
            .map(|(_, g)| g)
            .collect();
        let g = reduce_full(minimal[k].clone(), &others, Some(&mut bb.counter))?;
        reduced.push(g.monic());
    }
    Ok((reduced, bb.counter.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PolyRing, Ring, Variable};
    use num_bigint::BigInt;

    fn ring(names: &[&str], order: MonomialOrder) -> Ring {
        PolyRing::new(
            names.iter().map(|n| Variable::fresh(*n, None)).collect(),
            order,
        )
        .unwrap()
    }

    fn q(n: i64) -> Coeff {
        Coeff::from_integer(BigInt::from(n))
    }

    fn poly(r: &Ring, terms: &[(&[(u32, u32)], i64)]) -> Polynomial {
        Polynomial::from_terms(
            r,
            terms
                .iter()
                .map(|(m, c)| (Monomial::from_pairs(m.iter().copied()), q(*c))),
        )
    }

    fn basis_strings(b: &[Polynomial]) -> Vec<String> {
        b.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn linear_pair() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let gens = [
            poly(&r, &[(&[(0, 1)], 1), (&[(1, 1)], -1)]),
            poly(&r, &[(&[(1, 1)], 1)]),
        ];
        let (gb, _) = groebner_basis(&gens, &Budget::default()).unwrap();
        assert_eq!(basis_strings(&gb), vec!["y", "x"]);
    }

    #[test]
    fn hand_computed_lex_basis() {
        // <xy - 1, y^2 - 1> under lex x > y is <x - y, y^2 - 1>
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let gens = [
            poly(&r, &[(&[(0, 1), (1, 1)], 1), (&[], -1)]),
            poly(&r, &[(&[(1, 2)], 1), (&[], -1)]),
        ];
        let (gb, _) = groebner_basis(&gens, &Budget::default()).unwrap();
        assert_eq!(basis_strings(&gb), vec!["y^2 - 1", "x - y"]);
    }

    #[test]
    fn principal_ideal_is_made_monic() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let f = poly(&r, &[(&[(0, 2)], 3), (&[(1, 1)], 6)]);
        let (gb, _) = groebner_basis(&[f], &Budget::default()).unwrap();
        assert_eq!(basis_strings(&gb), vec!["x^2 + 2*y"]);
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let x = poly(&r, &[(&[(0, 1)], 1)]);
        let sq = poly(&r, &[(&[(0, 2)], 1)]);
        let xy = poly(&r, &[(&[(0, 1)], 1), (&[(1, 1)], 1)]);
        assert!(normal_form(&sq, std::slice::from_ref(&x)).is_zero());
        assert_eq!(normal_form(&xy, &[x]).to_string(), "y");
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
        // cyclic-3
        let gens = [
            poly(&r, &[(&[(0, 1)], 1), (&[(1, 1)], 1), (&[(2, 1)], 1)]),
            poly(
                &r,
                &[
                    (&[(0, 1), (1, 1)], 1),
                    (&[(1, 1), (2, 1)], 1),
                    (&[(0, 1), (2, 1)], 1),
                ],
            ),
            poly(&r, &[(&[(0, 1), (1, 1), (2, 1)], 1), (&[], -1)]),
        ];
        assert!(groebner_basis(&gens, &Budget::default()).is_ok());
        let err = groebner_basis(&gens, &Budget::with_reductions(2)).unwrap_err();
        assert!(matches!(err, PolyError::BudgetExceeded { .. }));
    }
}
