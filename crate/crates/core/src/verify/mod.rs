//! Exact evaluation oracle: random rational representations, random elements
//! of `G_K`, the conjugation action, and invariance spot checks.

mod matrix;
mod suites;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{Coeff, PolyError, Polynomial, Variable};
use crate::quiver::{Path, Presentation, Quiver};
use crate::Result;

pub use matrix::Matrix;
pub use suites::{run_suites, Check, Report, SuiteConfig};

const ENTRY_RANGE: std::ops::RangeInclusive<i64> = -5..=5;

/// A point of `Rep(Q, v)`: one `v_{h(a)} × v_{t(a)}` matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepPoint {
    pub matrices: Vec<Matrix>,
}

/// An element of `G_K`: an invertible matrix and its inverse per vertex of
/// `K`, nothing elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub factors: Vec<Option<(Matrix, Matrix)>>,
}

fn random_int(rng: &mut impl Rng) -> Coeff {
    Coeff::from_integer(rng.gen_range(ENTRY_RANGE).into())
}

pub fn random_rep_with(p: &Presentation, rng: &mut impl Rng) -> RepPoint {
    let matrices = p
        .quiver
        .arrows()
        .iter()
        .map(|a| {
            Matrix::from_fn(p.dim(a.head) as usize, p.dim(a.tail) as usize, |_, _| {
                random_int(rng)
            })
        })
        .collect();
    RepPoint { matrices }
}

pub fn random_rep(p: &Presentation, seed: u64) -> RepPoint {
    random_rep_with(p, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_group_with(p: &Presentation, rng: &mut impl Rng) -> GroupElement {
    let factors = p
        .quiver
        .vertex_ids()
        .map(|v| {
            p.is_frozen(v).then(|| {
                let n = p.dim(v) as usize;
                loop {
                    let g = Matrix::from_fn(n, n, |_, _| random_int(rng));
                    if let Some(inv) = g.inverse() {
                        break (g, inv);
                    }
                }
            })
        })
        .collect();
    GroupElement { factors }
}

pub fn random_group(p: &Presentation, seed: u64) -> GroupElement {
    random_group_with(p, &mut ChaCha8Rng::seed_from_u64(seed))
}

impl GroupElement {
    pub fn identity(p: &Presentation) -> Self {
        let factors = p
            .quiver
            .vertex_ids()
            .map(|v| {
                p.is_frozen(v).then(|| {
                    (
                        Matrix::identity(p.dim(v) as usize),
                        Matrix::identity(p.dim(v) as usize),
                    )
                })
            })
            .collect();
        GroupElement { factors }
    }

    /// `self · other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let factors = self
            .factors
            .iter()
            .zip(&other.factors)
            .map(|(a, b)| match (a, b) {
                (Some((g, gi)), Some((h, hi))) => Some((g.mul(h), hi.mul(gi))),
                _ => None,
            })
            .collect();
        GroupElement { factors }
    }
}

/// `B_a ↦ g_{h(a)} B_a g_{t(a)}^{-1}`.
pub fn act(q: &Quiver, g: &GroupElement, b: &RepPoint) -> RepPoint {
    let matrices = q
        .arrows()
        .iter()
        .zip(&b.matrices)
        .map(|(a, m)| {
            let mut out = m.clone();
            if let Some((gh, _)) = &g.factors[a.head.0] {
                out = gh.mul(&out);
            }
            if let Some((_, gt_inv)) = &g.factors[a.tail.0] {
                out = out.mul(gt_inv);
            }
            out
        })
        .collect();
    RepPoint { matrices }
}

/// `B_{a_ℓ} ⋯ B_{a_1}` by direct multiplication; the identity at the tail of
/// a trivial path.
pub fn path_product(p: &Presentation, path: &Path, b: &RepPoint) -> Matrix {
    let mut m = Matrix::identity(p.dim(path.tail()) as usize);
    for &a in path.arrows() {
        m = b.matrices[a.0].mul(&m);
    }
    m
}

/// Substitutes matrix entries for contraction variables, matched by arrow
/// name.
pub fn eval(f: &Polynomial, q: &Quiver, b: &RepPoint) -> Result<Coeff> {
    let values = f.ring().vars().iter().map(|var| -> Result<Coeff> {
        match var {
            Variable::Contraction { arrow, row, col } => {
                let a = q
                    .arrow_id(arrow)
                    .map_err(|_| PolyError::UnknownVariable(var.to_string()))?;
                let m = &b.matrices[a.0];
                let (r, c) = (*row as usize, *col as usize);
                if r == 0 || c == 0 || r > m.rows() || c > m.cols() {
                    return Err(PolyError::UnknownVariable(var.to_string()).into());
                }
                Ok(m.get(r - 1, c - 1).clone())
            }
            Variable::Fresh { .. } => Err(PolyError::UnknownVariable(var.to_string()).into()),
        }
    });
    let used = f.variables();
    let mut table: Vec<Option<Coeff>> = vec![None; f.ring().num_vars()];
    for (idx, v) in values.enumerate() {
        if used.contains(&(idx as u32)) {
            table[idx] = Some(v?);
        }
    }
    let mut acc = Coeff::from_integer(0.into());
    for (m, c) in f.terms() {
        let mut t = c.clone();
        for (v, e) in m.iter() {
            let x = table[v as usize]
                .as_ref()
                .expect("occurring variables are resolved");
            for _ in 0..e {
                t *= x;
            }
        }
        acc += t;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub trials: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

/// `f(g·B) = f(B)` on `trials` seeded random pairs `(g, B)`.
pub fn check_invariance(
    f: &Polynomial,
    p: &Presentation,
    trials: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let b = random_rep_with(p, &mut rng);
        let g = random_group_with(p, &mut rng);
        let before = eval(f, &p.quiver, &b)?;
        let after = eval(f, &p.quiver, &act(&p.quiver, &g, &b))?;
        if before != after {
            return Ok(InvarianceReport {
                trials: t + 1,
                pass: false,
                witness: Some(format!("trial {t}: f(B) = {before}, f(g·B) = {after}")),
            });
        }
    }
    Ok(InvarianceReport {
        trials,
        pass: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::RepSpace;
    use crate::quiver::{parse_presentation, ParseOptions};

    const A1: &str = include_str!("../../data/a1.quiver");

    fn a1() -> Presentation {
        parse_presentation(A1, &ParseOptions::default()).unwrap()
    }

    #[test]
    fn random_points_are_seeded() {
        let p = a1();
        let b = random_rep(&p, 7);
        assert_eq!(b, random_rep(&p, 7));
        assert_ne!(b, random_rep(&p, 8));
        assert_eq!(b.matrices.len(), 4);
        assert!(b.matrices.iter().all(|m| m.rows() == 2 && m.cols() == 2));
        let small =
            parse_presentation(&A1.replace("0 = 2", "0 = 0"), &ParseOptions::default()).unwrap();
        let z = random_rep(&small, 7);
        assert_eq!((z.matrices[0].rows(), z.matrices[0].cols()), (2, 0));
    }

    #[test]
    fn group_elements() {
        let p = a1();
        let g = random_group(&p, 3);
        assert_eq!(g, random_group(&p, 3));
        assert!(g.factors[0].is_none());
        let (m, inv) = g.factors[1].as_ref().unwrap();
        assert_eq!(m.mul(inv), Matrix::identity(2));
        let one =
            parse_presentation(&A1.replace("1 = 2", "1 = 1"), &ParseOptions::default()).unwrap();
        let (m, _) = random_group(&one, 3).factors[1].clone().unwrap();
        assert!(!num_traits::Zero::is_zero(m.get(0, 0)));
    }

    #[test]
    fn action_laws() {
        let p = a1().with_frozen_names(["0", "1"]).unwrap();
        let q = &p.quiver;
        let b = random_rep(&p, 1);
        assert_eq!(act(q, &GroupElement::identity(&p), &b), b);
        let (g, h) = (random_group(&p, 2), random_group(&p, 3));
        assert_eq!(act(q, &g, &act(q, &h, &b)), act(q, &g.compose(&h), &b));

        let text = "[vertices] 0 1\n[arrows]\na: 0 -> 0\nb: 0 -> 1\n[dims]\n0 = 2\n1 = 2\n[K] 1\n[relations]\n";
        let p = parse_presentation(text, &ParseOptions::default()).unwrap();
        let b = random_rep(&p, 4);
        let moved = act(&p.quiver, &random_group(&p, 5), &b);
        assert_eq!(moved.matrices[0], b.matrices[0]);
        assert_ne!(moved.matrices[1], b.matrices[1]);
    }

    #[test]
    fn evaluation_matches_matrix_products() {
        let p = a1();
        let s = RepSpace::of(&p);
        let b = random_rep(&p, 11);
        let q = &p.quiver;
        let fdec = q.parse_word("fdec").unwrap();
        let m = path_product(&p, &fdec, &b);
        for i in 1..=2 {
            for j in 1..=2 {
                let f = s.path_contraction(&fdec, i, j).unwrap();
                assert_eq!(
                    eval(&f, q, &b).unwrap(),
                    *m.get(i as usize - 1, j as usize - 1)
                );
            }
        }
        assert_eq!(
            eval(&s.path_trace(&fdec).unwrap(), q, &b).unwrap(),
            m.trace()
        );
        let two = s
            .path_trace(&Path::trivial(q.vertex("0").unwrap()))
            .unwrap();
        assert_eq!(eval(&two, q, &b).unwrap(), Coeff::from_integer(2.into()));
    }

    #[test]
    fn invariance_checks() {
        let p = a1();
        let s = RepSpace::of(&p);
        let q = &p.quiver;
        let tr = s.path_trace(&q.parse_word("ec").unwrap()).unwrap();
        assert!(check_invariance(&tr, &p, 20, 0).unwrap().pass);
        let c11 = Polynomial::var(s.ring(), s.var(q.arrow_id("c").unwrap(), 1, 1));
        let report = check_invariance(&c11, &p, 20, 0).unwrap();
        assert!(!report.pass);
        assert!(report.witness.is_some());
        let one = Polynomial::one(s.ring());
        assert!(check_invariance(&one, &p, 5, 0).unwrap().pass);
    }
}
