//! Trace and contraction polynomials on representation spaces, Lusztig's
//! generators of the invariant ring, and the representation-scheme ideal.

use serde::Serialize;

use crate::poly::{
    Budget, Coeff, Ideal, Monomial, MonomialOrder, PolyRing, Polynomial, Ring, VarIndex, Variable,
};
use crate::quiver::{
    enumerate_cycles_in, enumerate_paths, framed_quiver, AlgebraElement, ArrowId, FramedArrow,
    FramedQuiver, Path, Presentation, Quiver, VertexId,
};
use crate::{Error, Result};

/// Coordinates on `Rep(Q, v)`: one variable `x[a;i,j]` per matrix entry,
/// grouped by arrow and row-major inside an arrow. The ring may carry extra
/// variables after the arrow block.
#[derive(Clone, Debug)]
pub struct RepSpace {
    quiver: Quiver,
    dims: Vec<u32>,
    ring: Ring,
    /// `(rows, cols) = (v_{h(a)}, v_{t(a)})` per arrow.
    shapes: Vec<(u32, u32)>,
    offsets: Vec<VarIndex>,
    num_arrow_vars: usize,
}

impl RepSpace {
    pub fn new(q: &Quiver, dims: &[u32]) -> Self {
        let mut vars = Vec::new();
        let mut shapes = Vec::with_capacity(q.num_arrows());
        let mut offsets = Vec::with_capacity(q.num_arrows());
        for a in q.arrows() {
            let (rows, cols) = (dims[a.head.0], dims[a.tail.0]);
            shapes.push((rows, cols));
            offsets.push(vars.len() as VarIndex);
            for i in 1..=rows {
                for j in 1..=cols {
                    vars.push(Variable::contraction(a.name.clone(), i, j));
                }
            }
        }
        let num_arrow_vars = vars.len();
        let ring = PolyRing::new(vars, MonomialOrder::DegRevLex).expect("arrow names are distinct");
        RepSpace {
            quiver: q.clone(),
            dims: dims.to_vec(),
            ring,
            shapes,
            offsets,
            num_arrow_vars,
        }
    }

    pub fn of(p: &Presentation) -> Self {
        RepSpace::new(&p.quiver, p.dims.as_slice())
    }

    /// The same coordinates inside a larger ring with `extra` appended.
    pub fn extended(&self, extra: Vec<Variable>, order: MonomialOrder) -> Result<Self> {
        let mut vars = self.ring.vars()[..self.num_arrow_vars].to_vec();
        vars.extend(extra);
        Ok(RepSpace {
            ring: PolyRing::new(vars, order)?,
            ..self.clone()
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self, v: VertexId) -> u32 {
        self.dims[v.0]
    }

    pub fn shape(&self, a: ArrowId) -> (u32, u32) {
        self.shapes[a.0]
    }

    pub fn num_arrow_vars(&self) -> usize {
        self.num_arrow_vars
    }

    pub fn arrow_var_indices(&self) -> Vec<VarIndex> {
        (0..self.num_arrow_vars as VarIndex).collect()
    }

    /// Index of `x[a;i,j]`, 1-based indices.
    pub fn var(&self, a: ArrowId, i: u32, j: u32) -> VarIndex {
        let (rows, cols) = self.shapes[a.0];
        assert!(
            (1..=rows).contains(&i) && (1..=cols).contains(&j),
            "entry out of range"
        );
        self.offsets[a.0] + (i - 1) * cols + (j - 1)
    }

    /// Column `j` of the matrix product along `p`, as polynomials.
    fn column(&self, p: &Path, j: u32) -> Vec<Polynomial> {
        let one = Coeff::from_integer(1.into());
        let mut col: Vec<Polynomial> = (1..=self.dim(p.tail()))
            .map(|r| {
                if r == j {
                    Polynomial::one(&self.ring)
                } else {
                    Polynomial::zero(&self.ring)
                }
            })
            .collect();
        for &a in p.arrows() {
            let (rows, cols) = self.shape(a);
            col = (1..=rows)
                .map(|r| {
                    let mut acc = Polynomial::zero(&self.ring);
                    for s in 1..=cols {
                        let entry = &col[s as usize - 1];
                        if !entry.is_zero() {
                            acc = &acc + &entry.mul_term(&one, &Monomial::var(self.var(a, r, s)));
                        }
                    }
                    acc
                })
                .collect();
        }
        col
    }

    fn check_indices(&self, head: VertexId, tail: VertexId, i: u32, j: u32) -> Result<()> {
        let (rows, cols) = (self.dim(head), self.dim(tail));
        if !(1..=rows).contains(&i) || !(1..=cols).contains(&j) {
            return Err(Error::IndexOutOfRange { i, j, rows, cols });
        }
        Ok(())
    }

    /// `x_{p,ij}`: the `(i,j)` entry of `B_{a_ℓ} ⋯ B_{a_1}`; the Kronecker
    /// delta for a trivial path.
    pub fn path_contraction(&self, p: &Path, i: u32, j: u32) -> Result<Polynomial> {
        self.check_indices(p.head(), p.tail(), i, j)?;
        Ok(self.column(p, j).swap_remove(i as usize - 1))
    }

    /// `x_{g,ij}`, extended linearly over the terms of `g`.
    pub fn contraction_poly(&self, g: &AlgebraElement, i: u32, j: u32) -> Result<Polynomial> {
        self.check_indices(g.head(), g.tail(), i, j)?;
        let mut acc = Polynomial::zero(&self.ring);
        for (p, c) in g.terms() {
            acc = &acc + &self.path_contraction(p, i, j)?.scale(c);
        }
        Ok(acc)
    }

    /// `tr_g = Σ_i x_{g,ii}`; the constant `v_k` for the trivial path at `k`.
    pub fn trace_poly(&self, g: &AlgebraElement) -> Result<Polynomial> {
        if g.head() != g.tail() {
            return Err(Error::NotACycle(g.display(&self.quiver)));
        }
        let mut acc = Polynomial::zero(&self.ring);
        for i in 1..=self.dim(g.tail()) {
            acc = &acc + &self.contraction_poly(g, i, i)?;
        }
        Ok(acc)
    }

    pub fn path_trace(&self, p: &Path) -> Result<Polynomial> {
        self.trace_poly(&AlgebraElement::from_path(p.clone()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Trace,
    Contraction,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub kind: GeneratorKind,
    pub source: Path,
    pub word: String,
    pub indices: Option<(u32, u32)>,
    pub polynomial: Polynomial,
}

#[derive(Serialize)]
struct GeneratorRecord<'a> {
    label: &'a str,
    kind: GeneratorKind,
    word: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<u32>,
    polynomial: String,
}

/// Generators of `k[Rep(Q,v)]^{G_K}`: traces first, then contractions.
#[derive(Clone, Debug, Default)]
pub struct GeneratorSet {
    pub entries: Vec<Generator>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.entries.iter().map(|e| e.polynomial.clone()).collect()
    }

    /// Entries whose source word is listed, in the order of `words`.
    pub fn select(&self, words: &[String]) -> Result<GeneratorSet> {
        let mut entries = Vec::new();
        for w in words {
            let before = entries.len();
            entries.extend(self.entries.iter().filter(|e| &e.word == w).cloned());
            if entries.len() == before {
                return Err(Error::Invalid(format!(
                    "no generator with source word `{w}` at this bound"
                )));
            }
        }
        Ok(GeneratorSet { entries })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let records: Vec<GeneratorRecord> = self
            .entries
            .iter()
            .map(|e| GeneratorRecord {
                label: &e.label,
                kind: e.kind,
                word: &e.word,
                i: e.indices.map(|(i, _)| i),
                j: e.indices.map(|(_, j)| j),
                polynomial: e.polynomial.to_string(),
            })
            .collect();
        serde_json::to_value(records).expect("plain records serialize")
    }

    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|e| format!("{} = {}\n", e.label, e.polynomial))
            .collect()
    }
}

/// A presentation together with its coordinate ring and the ideal
/// `I = ⟨x_{g_k,ij}⟩` cutting out `Rep(A, v)`.
#[derive(Clone, Debug)]
pub struct RepScheme {
    presentation: Presentation,
    space: RepSpace,
    relation_entries: Vec<(usize, u32, u32, Polynomial)>,
    ideal: Ideal,
}

impl RepScheme {
    pub fn new(p: &Presentation) -> Result<Self> {
        let space = RepSpace::of(p);
        let mut relation_entries = Vec::new();
        for (k, rel) in p.relations.iter().enumerate() {
            for i in 1..=p.dim(rel.element.head()) {
                for j in 1..=p.dim(rel.element.tail()) {
                    let f = space.contraction_poly(&rel.element, i, j)?;
                    if !f.is_zero() {
                        relation_entries.push((k, i, j, f));
                    }
                }
            }
        }
        let ideal = Ideal::new(
            space.ring(),
            relation_entries.iter().map(|e| e.3.clone()).collect(),
        )?;
        Ok(RepScheme {
            presentation: p.clone(),
            space,
            relation_entries,
            ideal,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn space(&self) -> &RepSpace {
        &self.space
    }

    pub fn ring(&self) -> &Ring {
        self.space.ring()
    }

    pub fn rep_ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Nonzero generators `(k, i, j, x_{g_k,ij})` of the representation ideal.
    pub fn relation_entries(&self) -> &[(usize, u32, u32, Polynomial)] {
        &self.relation_entries
    }

    /// Traces of cycles inside `K` and contractions of paths between
    /// vertices outside `K`, up to length `max_len`.
    pub fn lusztig_generators(&self, max_len: usize) -> Result<GeneratorSet> {
        if max_len == 0 {
            return Err(Error::Invalid("max_len must be at least 1".into()));
        }
        let p = &self.presentation;
        let q = &p.quiver;
        let mut entries = Vec::new();
        for cycle in enumerate_cycles_in(q, &p.frozen, max_len) {
            let polynomial = self.space.path_trace(&cycle)?;
            if polynomial.is_zero() {
                continue;
            }
            let word = q.word(&cycle);
            entries.push(Generator {
                label: format!("tr[{word}]"),
                kind: GeneratorKind::Trace,
                source: cycle,
                word,
                indices: None,
                polynomial,
            });
        }
        let outside = p.unfrozen();
        for path in enumerate_paths(q, &outside, &outside, max_len, false) {
            let word = q.word(&path);
            let columns: Vec<Vec<Polynomial>> = (1..=p.dim(path.tail()))
                .map(|j| self.space.column(&path, j))
                .collect();
            for i in 1..=p.dim(path.head()) {
                for (j, col) in (1..).zip(&columns) {
                    let polynomial = col[i as usize - 1].clone();
                    if polynomial.is_zero() {
                        continue;
                    }
                    entries.push(Generator {
                        label: format!("x[{word};{i},{j}]"),
                        kind: GeneratorKind::Contraction,
                        source: path.clone(),
                        word: word.clone(),
                        indices: Some((i, j)),
                        polynomial,
                    });
                }
            }
        }
        Ok(GeneratorSet { entries })
    }

    /// `τ(f)` as the normal form modulo the degrevlex basis of `I`; zero
    /// exactly when `f` vanishes on `Rep(A, v)`.
    pub fn restrict_tau(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        let gb = self.ideal.groebner(&MonomialOrder::DegRevLex, budget)?;
        Ok(gb.normal_form(f)?)
    }

    /// The framed cycle `β_c^i · mid · α_b^j` at `∞` and the contraction
    /// `x_{c·mid·b, ij}` it corresponds to.
    pub fn framed_correspondence(
        &self,
        b: ArrowId,
        mid: &Path,
        c: ArrowId,
        i: u32,
        j: u32,
    ) -> Result<FramedCorrespondence> {
        let p = &self.presentation;
        let q = &p.quiver;
        let (ab, ac) = (q.arrow(b), q.arrow(c));
        if p.is_frozen(ab.tail) || !p.is_frozen(ab.head) {
            return Err(Error::Invalid(format!(
                "arrow `{}` must run from outside K into K",
                ab.name
            )));
        }
        if !p.is_frozen(ac.tail) || p.is_frozen(ac.head) {
            return Err(Error::Invalid(format!(
                "arrow `{}` must run from K to outside K",
                ac.name
            )));
        }
        let bm = Path::compose(mid, &Path::arrow(q, b))?;
        let path = Path::compose(&Path::arrow(q, c), &bm)?;
        let contraction = self.space.path_contraction(&path, i, j)?;

        let framed = framed_quiver(p)?;
        let missing = |what: FramedArrow| {
            Error::Invalid(format!("{what:?} is not an arrow of the framed quiver"))
        };
        let alpha = FramedArrow::Alpha {
            source: b,
            index: j,
        };
        let beta = FramedArrow::Beta {
            source: c,
            index: i,
        };
        let mut arrows = vec![framed.find(alpha).ok_or_else(|| missing(alpha))?];
        for &a in mid.arrows() {
            let kept = FramedArrow::Kept(a);
            arrows.push(framed.find(kept).ok_or_else(|| missing(kept))?);
        }
        arrows.push(framed.find(beta).ok_or_else(|| missing(beta))?);
        let cycle = Path::from_arrows(framed.quiver(), arrows)?;
        let framed_space = RepSpace::of(&framed.presentation);
        let framed_trace = framed_space.path_trace(&cycle)?;
        let pullback = self.phi_pullback(&framed, &framed_space, &framed_trace);
        Ok(FramedCorrespondence {
            framed,
            cycle,
            path,
            contraction,
            framed_trace,
            pullback,
        })
    }

    /// `φ*`: columns of `B_b` feed `α_b^j`, rows of `B_c` feed `β_c^i`.
    fn phi_pullback(
        &self,
        framed: &FramedQuiver,
        framed_space: &RepSpace,
        f: &Polynomial,
    ) -> Polynomial {
        let mut map = Vec::with_capacity(framed_space.num_arrow_vars());
        for (fa, prov) in framed.provenance.iter().enumerate() {
            let (rows, cols) = framed_space.shape(ArrowId(fa));
            for r in 1..=rows {
                for s in 1..=cols {
                    map.push(match *prov {
                        FramedArrow::Kept(a) => self.space.var(a, r, s),
                        FramedArrow::Alpha { source, index } => self.space.var(source, r, index),
                        FramedArrow::Beta { source, index } => self.space.var(source, index, s),
                    });
                }
            }
        }
        f.map_into(self.ring(), |v| Some(map[v as usize]))
            .expect("every framed variable has an image")
    }
}

#[derive(Clone, Debug)]
pub struct FramedCorrespondence {
    pub framed: FramedQuiver,
    /// `γ′(i,j)` in the framed quiver.
    pub cycle: Path,
    /// `c · mid · b` in the original quiver.
    pub path: Path,
    pub contraction: Polynomial,
    /// `tr_{γ′(i,j)}` on the framed representation space.
    pub framed_trace: Polynomial,
    /// `φ*(tr_{γ′(i,j)})` on the original representation space.
    pub pullback: Polynomial,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::quiver::{enumerate_paths, rotations};
    use crate::quiver::{parse_presentation, ParseOptions};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    const A1: &str = include_str!("../data/a1.quiver");

    fn a1() -> Presentation {
        parse_presentation(A1, &ParseOptions::default()).unwrap()
    }

    fn jordan(dim: u32) -> Presentation {
        let text =
            format!("[vertices] 0\n[arrows]\na: 0 -> 0\n[dims]\n0 = {dim}\n[K] 0\n[relations]\n");
        parse_presentation(&text, &ParseOptions::default()).unwrap()
    }

    fn poly(ring: &Ring, text: &str) -> Polynomial {
        parse_polynomial(ring, text).unwrap()
    }

    fn path(p: &Presentation, w: &str) -> Path {
        p.quiver.parse_word(w).unwrap()
    }

    #[test]
    fn single_arrow_and_length_two_products() {
        let p = a1();
        let s = RepSpace::of(&p);
        let r = s.ring();
        assert_eq!(
            s.path_contraction(&path(&p, "c"), 2, 1).unwrap(),
            poly(r, "x[c;2,1]")
        );
        assert_eq!(
            s.path_contraction(&path(&p, "fc"), 1, 1).unwrap(),
            poly(r, "x[c;1,1]*x[f;1,1] + x[c;2,1]*x[f;1,2]")
        );
        let g1 = &p.relations[0].element;
        assert_eq!(
            s.contraction_poly(g1, 1, 1).unwrap(),
            poly(
                r,
                "x[c;1,1]*x[f;1,1] + x[c;2,1]*x[f;1,2] - x[d;1,1]*x[e;1,1] - x[d;2,1]*x[e;1,2]"
            )
        );
        assert!(matches!(
            s.contraction_poly(g1, 3, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn traces() {
        let p = a1();
        let s = RepSpace::of(&p);
        let e1 = Path::trivial(p.quiver.vertex("1").unwrap());
        assert_eq!(s.path_trace(&e1).unwrap().to_string(), "2");
        assert_eq!(s.path_contraction(&e1, 1, 2).unwrap().to_string(), "0");
        assert_eq!(
            s.path_trace(&path(&p, "ce")).unwrap(),
            s.path_trace(&path(&p, "ec")).unwrap()
        );
        assert!(matches!(
            s.trace_poly(&AlgebraElement::from_path(path(&p, "c"))),
            Err(Error::NotACycle(_))
        ));
        let j = jordan(2);
        let s = RepSpace::of(&j);
        assert_eq!(
            s.path_trace(&path(&j, "a")).unwrap(),
            poly(s.ring(), "x[a;1,1] + x[a;2,2]")
        );
    }

    #[test]
    fn lusztig_generators_of_the_example() {
        let p = a1();
        let scheme = RepScheme::new(&p).unwrap();
        let gens = scheme.lusztig_generators(2).unwrap();
        assert_eq!(gens.len(), 16);
        assert!(gens
            .entries
            .iter()
            .all(|g| g.kind == GeneratorKind::Contraction));
        let words: BTreeSet<&str> = gens.entries.iter().map(|g| g.word.as_str()).collect();
        assert_eq!(words, BTreeSet::from(["ec", "ed", "fc", "fd"]));

        let chosen = gens
            .select(&["ec".into(), "fc".into(), "fd".into()])
            .unwrap();
        assert_eq!(chosen.len(), 12);
        assert_eq!(chosen.entries[1].label, "x[ec;1,2]");
        assert_eq!(
            chosen.entries[1].polynomial,
            poly(scheme.ring(), "x[c;1,2]*x[e;1,1] + x[c;2,2]*x[e;1,2]")
        );
        assert_eq!(chosen.entries[6].label, "x[fc;2,1]");
        assert_eq!(
            chosen.entries[6].polynomial,
            poly(scheme.ring(), "x[c;1,1]*x[f;2,1] + x[c;2,1]*x[f;2,2]")
        );
        assert!(gens.select(&["cc".into()]).is_err());
        assert!(scheme.lusztig_generators(0).is_err());
    }

    #[test]
    fn empty_k_gives_all_arrow_variables() {
        let p = a1().with_frozen_names([]).unwrap();
        let scheme = RepScheme::new(&p).unwrap();
        let gens = scheme.lusztig_generators(1).unwrap();
        let expected: Vec<Polynomial> =
            (0..16).map(|v| Polynomial::var(scheme.ring(), v)).collect();
        let mut got = gens.polynomials();
        got.sort_by_key(|f| f.variables());
        assert_eq!(got, expected);
    }

    #[test]
    fn jordan_traces() {
        let j = jordan(2);
        let scheme = RepScheme::new(&j).unwrap();
        let gens = scheme.lusztig_generators(2).unwrap();
        let labels: Vec<&str> = gens.entries.iter().map(|g| g.label.as_str()).collect();
        assert_eq!(labels, ["tr[a]", "tr[aa]"]);
        assert_eq!(
            gens.entries[1].polynomial,
            poly(
                scheme.ring(),
                "x[a;1,1]^2 + 2*x[a;1,2]*x[a;2,1] + x[a;2,2]^2"
            )
        );
    }

    #[test]
    fn representation_ideal() {
        let p = a1();
        let scheme = RepScheme::new(&p).unwrap();
        let displayed = [
            "x[c;1,1]*x[f;1,1] + x[c;2,1]*x[f;1,2] - x[d;1,1]*x[e;1,1] - x[d;2,1]*x[e;1,2]",
            "x[c;1,2]*x[f;1,1] + x[c;2,2]*x[f;1,2] - x[d;1,2]*x[e;1,1] - x[d;2,2]*x[e;1,2]",
            "x[c;1,1]*x[f;2,1] + x[c;2,1]*x[f;2,2] - x[d;1,1]*x[e;2,1] - x[d;2,1]*x[e;2,2]",
            "x[c;1,2]*x[f;2,1] + x[c;2,2]*x[f;2,2] - x[d;1,2]*x[e;2,1] - x[d;2,2]*x[e;2,2]",
            "x[d;1,1]*x[e;1,1] + x[d;1,2]*x[e;2,1] - x[c;1,1]*x[f;1,1] - x[c;1,2]*x[f;2,1]",
            "x[d;1,1]*x[e;1,2] + x[d;1,2]*x[e;2,2] - x[c;1,1]*x[f;1,2] - x[c;1,2]*x[f;2,2]",
            "x[d;2,1]*x[e;1,1] + x[d;2,2]*x[e;2,1] - x[c;2,1]*x[f;1,1] - x[c;2,2]*x[f;2,1]",
            "x[d;2,1]*x[e;1,2] + x[d;2,2]*x[e;2,2] - x[c;2,1]*x[f;1,2] - x[c;2,2]*x[f;2,2]",
        ];
        let got = scheme.rep_ideal().generators();
        assert_eq!(got.len(), 8);
        for (g, want) in got.iter().zip(displayed) {
            assert_eq!(*g, poly(scheme.ring(), want));
        }

        let free = Presentation {
            relations: vec![],
            ..p.clone()
        };
        assert!(RepScheme::new(&free)
            .unwrap()
            .rep_ideal()
            .generators()
            .is_empty());

        let text = A1.replace("0 = 2", "0 = 0");
        let zero_at_0 = parse_presentation(&text, &ParseOptions::default()).unwrap();
        let scheme0 = RepScheme::new(&zero_at_0).unwrap();
        assert!(scheme0.relation_entries().iter().all(|e| e.0 == 1));
    }

    #[test]
    fn restriction_to_the_scheme() {
        let p = a1();
        let scheme = RepScheme::new(&p).unwrap();
        let s = scheme.space();
        let b = Budget::default();
        let g1 = s.contraction_poly(&p.relations[0].element, 1, 1).unwrap();
        assert!(scheme.restrict_tau(&g1, &b).unwrap().is_zero());
        let c11 = poly(scheme.ring(), "x[c;1,1]");
        assert_eq!(scheme.restrict_tau(&c11, &b).unwrap(), c11);
        let diff =
            &s.path_trace(&path(&p, "fc")).unwrap() - &s.path_trace(&path(&p, "ed")).unwrap();
        assert!(scheme.restrict_tau(&diff, &b).unwrap().is_zero());
    }

    #[test]
    fn framed_correspondence_examples() {
        let p = a1();
        let scheme = RepScheme::new(&p).unwrap();
        let q = &p.quiver;
        let (c, e) = (q.arrow_id("c").unwrap(), q.arrow_id("e").unwrap());
        let mid = Path::trivial(q.vertex("1").unwrap());
        for (i, j) in [(1, 1), (2, 2), (1, 2)] {
            let fc = scheme.framed_correspondence(c, &mid, e, i, j).unwrap();
            assert_eq!(
                fc.framed.quiver().word(&fc.cycle),
                format!("beta_e^{i}*alpha_c^{j}")
            );
            assert_eq!(q.word(&fc.path), "ec");
            assert_eq!(
                fc.contraction,
                scheme
                    .space()
                    .path_contraction(&path(&p, "ec"), i, j)
                    .unwrap()
            );
            assert_eq!(fc.pullback, fc.contraction);
        }
        let wrong_mid = Path::trivial(q.vertex("0").unwrap());
        assert!(scheme
            .framed_correspondence(c, &wrong_mid, e, 1, 1)
            .is_err());
        assert!(scheme.framed_correspondence(e, &mid, c, 1, 1).is_err());
    }

    fn a1_paths(max_len: usize) -> Vec<Path> {
        let p = a1();
        let all: BTreeSet<VertexId> = p.quiver.vertex_ids().collect();
        enumerate_paths(&p.quiver, &all, &all, max_len, true)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_law_and_degree(a in 0usize..200, b in 0usize..200, i in 1u32..3, j in 1u32..3) {
            let p = a1();
            let s = RepSpace::of(&p);
            let paths = a1_paths(3);
            let inner = &paths[a % paths.len()];
            let outers: Vec<&Path> = paths.iter().filter(|o| o.tail() == inner.head()).collect();
            let outer = outers[b % outers.len()];
            let qp = Path::compose(outer, inner).unwrap();
            let mut rhs = Polynomial::zero(s.ring());
            for k in 1..=s.dim(inner.head()) {
                rhs = &rhs + &(&s.path_contraction(outer, i, k).unwrap() * &s.path_contraction(inner, k, j).unwrap());
            }
            let lhs = s.path_contraction(&qp, i, j).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert!(lhs.is_homogeneous());
            prop_assert!(lhs.is_zero() || lhs.total_degree() == Some(qp.len() as u32));
        }

        #[test]
        fn rotation_invariance(a in 0usize..400) {
            let p = a1();
            let s = RepSpace::of(&p);
            let cycles: Vec<Path> = a1_paths(4).into_iter().filter(|c| c.is_cycle() && !c.is_trivial()).collect();
            let cycle = &cycles[a % cycles.len()];
            let t = s.path_trace(cycle).unwrap();
            for r in rotations(&p.quiver, cycle) {
                prop_assert_eq!(&s.path_trace(&r).unwrap(), &t);
            }
        }

        #[test]
        fn linearity(x in -3i64..4, y in -3i64..4, i in 1u32..3, j in 1u32..3) {
            let p = a1();
            let s = RepSpace::of(&p);
            let (alpha, beta) = (Coeff::from_integer(x.into()), Coeff::from_integer(y.into()));
            let fc = AlgebraElement::from_path(path(&p, "fc"));
            let ed = AlgebraElement::from_path(path(&p, "ed"));
            let combo = fc.scale(&alpha).add(&ed.scale(&beta)).unwrap();
            let lhs = s.contraction_poly(&combo, i, j).unwrap();
            let rhs = &s.contraction_poly(&fc, i, j).unwrap().scale(&alpha) + &s.contraction_poly(&ed, i, j).unwrap().scale(&beta);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
