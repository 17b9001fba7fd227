use std::cmp::Ordering;

use super::monomial::{Monomial, VarIndex};

/// Term order on monomials. Lower variable indices are the larger variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// Degrevlex on the `front` variables first, ties broken by `back`
    /// restricted to the remaining variables. Any monomial containing a front
    /// variable is larger than every monomial without one.
    Block {
        front: Vec<VarIndex>,
        back: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Elimination order for `drop`, with degrevlex on the rest.
    pub fn elimination(drop: impl IntoIterator<Item = VarIndex>) -> Self {
        let mut front: Vec<VarIndex> = drop.into_iter().collect();
        front.sort_unstable();
        front.dedup();
        MonomialOrder::Block {
            front,
            back: Box::new(MonomialOrder::DegRevLex),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_on(a, b, &|_| true)
    }

    fn cmp_on(&self, a: &Monomial, b: &Monomial, keep: &dyn Fn(VarIndex) -> bool) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_on(a, b, keep),
            MonomialOrder::DegRevLex => grevlex_on(a, b, keep),
            MonomialOrder::Block { front, back } => {
                let in_front = |v: VarIndex| keep(v) && front.binary_search(&v).is_ok();
                grevlex_on(a, b, &in_front).then_with(|| {
                    back.cmp_on(a, b, &|v: VarIndex| {
                        keep(v) && front.binary_search(&v).is_err()
                    })
                })
            }
        }
    }
}

fn lex_on(a: &Monomial, b: &Monomial, keep: &dyn Fn(VarIndex) -> bool) -> Ordering {
    let mut ia = a.iter().filter(|&(v, _)| keep(v));
    let mut ib = b.iter().filter(|&(v, _)| keep(v));
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((va, ea)), Some((vb, eb))) => {
                if va != vb {
                    return vb.cmp(&va);
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
        }
    }
}

fn grevlex_on(a: &Monomial, b: &Monomial, keep: &dyn Fn(VarIndex) -> bool) -> Ordering {
    let deg = |m: &Monomial| {
        m.iter()
            .filter(|&(v, _)| keep(v))
            .map(|(_, e)| e)
            .sum::<u32>()
    };
    let by_degree = deg(a).cmp(&deg(b));
    if by_degree != Ordering::Equal {
        return by_degree;
    }
    // Equal degree: the monomial with the larger exponent on the last
    // differing variable is the smaller one.
    let mut ia = a.iter().rev().filter(|&(v, _)| keep(v));
    let mut ib = b.iter().rev().filter(|&(v, _)| keep(v));
    loop {
        match (ia.next(), ib.next()) {
            (Some((va, ea)), Some((vb, eb))) => {
                if va != vb {
                    return vb.cmp(&va);
                }
                if ea != eb {
                    return eb.cmp(&ea);
                }
            }
            _ => return Ordering::Equal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(p: &[(VarIndex, u32)]) -> Monomial {
        Monomial::from_pairs(p.iter().copied())
    }

    fn monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec((0u32..5, 0u32..4), 0..5).prop_map(Monomial::from_pairs)
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::DegRevLex,
            MonomialOrder::elimination([1, 3]),
            MonomialOrder::Block {
                front: vec![0],
                back: Box::new(MonomialOrder::Lex),
            },
        ]
    }

    #[test]
    fn known_comparisons() {
        let x = m(&[(0, 1)]);
        let y2 = m(&[(1, 2)]);
        assert_eq!(MonomialOrder::Lex.cmp(&x, &y2), Ordering::Greater);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&x, &y2), Ordering::Less);
        // x*z vs y^2 in degrevlex: z is the last variable, x*z is smaller
        let xz = m(&[(0, 1), (2, 1)]);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&xz, &y2), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&xz, &y2), Ordering::Greater);
        // eliminating variable 2: anything containing it beats anything without
        let elim = MonomialOrder::elimination([2]);
        assert_eq!(elim.cmp(&m(&[(2, 1)]), &m(&[(0, 5)])), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn total_multiplicative_well_founded(a in monomial(), b in monomial(), c in monomial()) {
            for ord in orders() {
                let ab = ord.cmp(&a, &b);
                prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(ord.cmp(&Monomial::one(), &a), Ordering::Greater);
                if ab != Ordering::Greater && ord.cmp(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(ord.cmp(&a, &c), Ordering::Greater);
                }
            }
        }
    }
}
