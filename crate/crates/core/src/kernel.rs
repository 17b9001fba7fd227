//! Generators of the kernel of the restriction map to `Rep(A, v)` and finite
//! presentations of the invariant ring by elimination.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::invariant::{Generator, GeneratorKind, GeneratorSet, RepScheme, RepSpace};
use crate::poly::{Budget, Ideal, MonomialOrder, Polynomial, Ring, VarIndex, Variable};
use crate::quiver::{augment_quiver, enumerate_paths, ArrowId, Path, VertexId};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelKind {
    TraceSandwich,
    ContractionSandwich,
}

/// `tr(u·g_k·w)` or `x_{u·g_k·w, ij}`.
#[derive(Clone, Debug)]
pub struct KernelGenerator {
    pub label: String,
    pub kind: KernelKind,
    pub relation: usize,
    pub u: Path,
    pub w: Path,
    /// The sandwich as a path through the relation arrow of the augmented
    /// quiver, e.g. `e*g2*c`.
    pub word: String,
    pub indices: Option<(u32, u32)>,
    pub polynomial: Polynomial,
}

#[derive(Serialize)]
struct KernelRecord<'a> {
    label: &'a str,
    kind: KernelKind,
    relation: &'a str,
    word: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<u32>,
    polynomial: String,
}

/// Sandwiches `u·g_k·w` with `|u| ≤ max_u` and `|w| ≤ max_w`. Trace kind when
/// the sandwich is a cycle based in `K`, contraction kind when both endpoints
/// lie outside `K`; traces are kept once per rotation class.
pub fn kernel_generators(
    scheme: &RepScheme,
    max_u: usize,
    max_w: usize,
) -> Result<Vec<KernelGenerator>> {
    let p = scheme.presentation();
    let q = &p.quiver;
    let space = scheme.space();
    let aug = augment_quiver(p)?;
    let all: BTreeSet<VertexId> = q.vertex_ids().collect();
    let mut seen_traces: HashSet<(usize, Vec<ArrowId>)> = HashSet::new();
    let mut out = Vec::new();
    for (k, rel) in p.relations.iter().enumerate() {
        let g = &rel.element;
        let us = enumerate_paths(q, &BTreeSet::from([g.head()]), &all, max_u, true);
        let ws = enumerate_paths(q, &all, &BTreeSet::from([g.tail()]), max_w, true);
        for u in &us {
            for w in &ws {
                let sandwich = g.sandwich(u, w)?;
                let (head, tail) = (sandwich.head(), sandwich.tail());
                let mut through = w.arrows().to_vec();
                through.push(aug.relation_arrows[k]);
                through.extend_from_slice(u.arrows());
                let word = aug.quiver.word(&Path::from_arrows(&aug.quiver, through)?);
                if head == tail && p.is_frozen(head) {
                    let class: Vec<ArrowId> =
                        u.arrows().iter().chain(w.arrows()).copied().collect();
                    if !seen_traces.insert((k, class)) {
                        continue;
                    }
                    let polynomial = space.trace_poly(&sandwich)?;
                    if !polynomial.is_zero() {
                        out.push(KernelGenerator {
                            label: format!("tr[{word}]"),
                            kind: KernelKind::TraceSandwich,
                            relation: k,
                            u: u.clone(),
                            w: w.clone(),
                            word,
                            indices: None,
                            polynomial,
                        });
                    }
                } else if !p.is_frozen(head) && !p.is_frozen(tail) {
                    for i in 1..=p.dim(head) {
                        for j in 1..=p.dim(tail) {
                            let polynomial = space.contraction_poly(&sandwich, i, j)?;
                            if !polynomial.is_zero() {
                                out.push(KernelGenerator {
                                    label: format!("x[{word};{i},{j}]"),
                                    kind: KernelKind::ContractionSandwich,
                                    relation: k,
                                    u: u.clone(),
                                    w: w.clone(),
                                    word: word.clone(),
                                    indices: Some((i, j)),
                                    polynomial,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn kernel_to_json(scheme: &RepScheme, gens: &[KernelGenerator]) -> serde_json::Value {
    let rels = &scheme.presentation().relations;
    let records: Vec<KernelRecord> = gens
        .iter()
        .map(|g| KernelRecord {
            label: &g.label,
            kind: g.kind,
            relation: &rels[g.relation].name,
            word: &g.word,
            i: g.indices.map(|(i, _)| i),
            j: g.indices.map(|(_, j)| j),
            polynomial: g.polynomial.to_string(),
        })
        .collect();
    serde_json::to_value(records).expect("plain records serialize")
}

const LETTERS: [&str; 13] = [
    "x", "y", "z", "w", "u", "v", "s", "t", "p", "q", "r", "m", "n",
];

fn letter(n: usize) -> String {
    LETTERS
        .get(n)
        .map_or_else(|| format!("g{n}"), |s| s.to_string())
}

#[derive(Clone, Debug)]
pub struct DictionaryEntry {
    /// Index of the fresh variable in the elimination ring.
    pub fresh: VarIndex,
    pub fresh_label: String,
    pub generator: Generator,
}

#[derive(Serialize)]
struct DictionaryRecord<'a> {
    fresh: &'a str,
    generator: &'a str,
    word: &'a str,
    polynomial: String,
}

/// `k[Rep(A,v)]^{G_K}` as a quotient of a polynomial ring on fresh variables,
/// one per chosen generator.
#[derive(Clone, Debug)]
pub struct InvariantPresentation {
    combined: RepSpace,
    dictionary: Vec<DictionaryEntry>,
    defining: Vec<Polynomial>,
    full: Ideal,
    elimination: Ideal,
}

/// Presentation from all Lusztig generators up to `max_len`, or only those
/// whose source word is in `selection`.
pub fn present_invariant_ring(
    scheme: &RepScheme,
    max_len: usize,
    selection: Option<&[String]>,
    budget: &Budget,
) -> Result<InvariantPresentation> {
    let all = scheme.lusztig_generators(max_len)?;
    let gens = match selection {
        Some(words) => all.select(words)?,
        None => all,
    };
    present_with(scheme, &gens, budget)
}

/// Eliminates the arrow variables from `⟨fresh − generator⟩ + I`.
pub fn present_with(
    scheme: &RepScheme,
    gens: &GeneratorSet,
    budget: &Budget,
) -> Result<InvariantPresentation> {
    let mut groups: Vec<&str> = Vec::new();
    let mut fresh_vars = Vec::with_capacity(gens.len());
    for g in &gens.entries {
        let group = match groups.iter().position(|w| *w == g.word) {
            Some(n) if g.kind == GeneratorKind::Contraction => n,
            _ => {
                groups.push(&g.word);
                groups.len() - 1
            }
        };
        fresh_vars.push(Variable::fresh(letter(group), g.indices));
    }
    let base = scheme.space();
    let combined = base.extended(fresh_vars, MonomialOrder::DegRevLex)?;
    let ring = combined.ring().clone();
    let offset = base.num_arrow_vars() as VarIndex;
    let lift = |f: &Polynomial| {
        f.map_into(&ring, Some)
            .expect("arrow variables are a prefix")
    };

    let mut defining = Vec::with_capacity(gens.len());
    let mut dictionary = Vec::with_capacity(gens.len());
    for (n, g) in gens.entries.iter().enumerate() {
        let v = offset + n as VarIndex;
        defining.push(&Polynomial::var(&ring, v) - &lift(&g.polynomial));
        dictionary.push(DictionaryEntry {
            fresh: n as VarIndex,
            fresh_label: ring.variable(v).to_string(),
            generator: g.clone(),
        });
    }
    let mut all = defining.clone();
    all.extend(scheme.rep_ideal().generators().iter().map(lift));
    let full = Ideal::new(&ring, all)?;
    let elimination = full.eliminate(&base.arrow_var_indices(), budget)?;
    Ok(InvariantPresentation {
        combined,
        dictionary,
        defining,
        full,
        elimination,
    })
}

impl InvariantPresentation {
    pub fn dictionary(&self) -> &[DictionaryEntry] {
        &self.dictionary
    }

    /// `fresh − generator` in the ring of arrow and fresh variables.
    pub fn defining_relations(&self) -> &[Polynomial] {
        &self.defining
    }

    pub fn combined_ring(&self) -> &Ring {
        self.combined.ring()
    }

    /// The ideal of relations among the fresh variables.
    pub fn elimination_ideal(&self) -> &Ideal {
        &self.elimination
    }

    pub fn fresh_ring(&self) -> &Ring {
        self.elimination.ring()
    }

    /// Replaces every fresh variable by its generator polynomial.
    pub fn substitute_dictionary(&self, f: &Polynomial, arrow_ring: &Ring) -> Polynomial {
        let images: Vec<Polynomial> = self
            .dictionary
            .iter()
            .map(|d| d.generator.polynomial.clone())
            .collect();
        f.substitute(arrow_ring, &images)
    }

    /// Expresses an arrow-variable polynomial in the fresh variables, modulo
    /// the representation ideal.
    pub fn rewrite_in_generators(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        let arrows = self.combined.arrow_var_indices();
        let ring = self.combined.ring();
        let lifted = f
            .map_into(ring, |v| ((v as usize) < arrows.len()).then_some(v))
            .ok_or_else(|| {
                Error::Invalid("input must be a polynomial in arrow variables".into())
            })?;
        let gb = self
            .full
            .groebner(&MonomialOrder::elimination(arrows.iter().copied()), budget)?;
        let nf = gb.normal_form(&lifted)?;
        let n = arrows.len() as VarIndex;
        if nf.contains_var(|v| v < n) {
            return Err(Error::NotExpressible);
        }
        Ok(nf
            .map_into(self.fresh_ring(), |v| Some(v - n))
            .expect("fresh variables only"))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dictionary: Vec<DictionaryRecord> = self
            .dictionary
            .iter()
            .map(|d| DictionaryRecord {
                fresh: &d.fresh_label,
                generator: &d.generator.label,
                word: &d.generator.word,
                polynomial: d.generator.polynomial.to_string(),
            })
            .collect();
        let elimination: Vec<String> = self
            .elimination
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        serde_json::json!({ "dictionary": dictionary, "elimination": elimination })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("dictionary:\n");
        for d in &self.dictionary {
            s.push_str(&format!(
                "  {} = {} = {}\n",
                d.fresh_label, d.generator.label, d.generator.polynomial
            ));
        }
        s.push_str("elimination ideal:\n");
        for g in self.elimination.generators() {
            s.push_str(&format!("  {g}\n"));
        }
        s
    }
}
