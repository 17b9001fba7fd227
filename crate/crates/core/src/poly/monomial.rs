use std::fmt;

use smallvec::SmallVec;

/// Dense index of a variable in its ring's variable table.
pub type VarIndex = u32;

/// A power product stored sparsely as `(variable, exponent)` pairs sorted by
/// variable index. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: SmallVec<[(VarIndex, u32); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarIndex) -> Self {
        let mut exps = SmallVec::new();
        exps.push((v, 1));
        Monomial { exps }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged
    /// and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (VarIndex, u32)>>(pairs: I) -> Self {
        let mut exps: SmallVec<[(VarIndex, u32); 4]> =
            pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_unstable_by_key(|&(v, _)| v);
        let mut out: SmallVec<[(VarIndex, u32); 4]> = SmallVec::with_capacity(exps.len());
        for (v, e) in exps {
            match out.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => out.push((v, e)),
            }
        }
        Monomial { exps: out }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarIndex) -> u32 {
        match self.exps.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (VarIndex, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn contains_var(&self, pred: impl Fn(VarIndex) -> bool) -> bool {
        self.exps.iter().any(|&(v, _)| pred(v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, ea) = a[i];
            let (vb, eb) = b[j];
            if va < vb {
                out.push((va, ea));
                i += 1;
            } else if vb < va {
                out.push((vb, eb));
                j += 1;
            } else {
                out.push((va, ea + eb));
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let b = &other.exps;
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < b.len() && b[j].0 < v {
                j += 1;
            }
            if j == b.len() || b[j].0 != v || b[j].1 < e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self / divisor`, or `None` when the division is not exact.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        let b = &divisor.exps;
        let mut out = SmallVec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                let d = b[j].1;
                if d > e {
                    return None;
                }
                if e > d {
                    out.push((v, e - d));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial { exps: out })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, ea) = a[i];
            let (vb, eb) = b[j];
            if va < vb {
                out.push((va, ea));
                i += 1;
            } else if vb < va {
                out.push((vb, eb));
                j += 1;
            } else {
                out.push((va, ea.max(eb)));
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Re-indexes variables; `None` from `map` means the variable has no image.
    pub fn remap(&self, map: impl Fn(VarIndex) -> Option<VarIndex>) -> Option<Monomial> {
        let mut pairs = Vec::with_capacity(self.exps.len());
        for &(v, e) in &self.exps {
            pairs.push((map(v)?, e));
        }
        Some(Monomial::from_pairs(pairs))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.exps.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            write!(f, "v{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(VarIndex, u32)]) -> Monomial {
        Monomial::from_pairs(p.iter().copied())
    }

    #[test]
    fn merges_and_drops_zeros() {
        let a = m(&[(3, 1), (1, 2), (3, 2), (5, 0)]);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![(1, 2), (3, 3)]);
        assert_eq!(a.degree(), 5);
        assert_eq!(a.exponent(5), 0);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[(0, 2), (2, 1)]);
        let b = m(&[(0, 1)]);
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.div(&b), Some(m(&[(0, 1), (2, 1)])));
        assert_eq!(b.div(&a), None);
        assert_eq!(m(&[(1, 1)]).div(&m(&[(0, 1)])), None);
        assert_eq!(a.lcm(&m(&[(1, 3)])), m(&[(0, 2), (1, 3), (2, 1)]));
        assert!(a.is_coprime(&m(&[(1, 1), (3, 4)])));
        assert!(!a.is_coprime(&m(&[(2, 1)])));
        assert_eq!(a.mul(&b).div(&b), Some(a.clone()));
    }
}
