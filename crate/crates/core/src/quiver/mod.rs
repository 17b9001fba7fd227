//! Quivers, paths, path-algebra elements and relation presentations.

mod enumerate;
mod framed;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::poly::Coeff;

pub use enumerate::{canonical_rotation, enumerate_cycles_in, enumerate_paths, rotations};
pub use framed::{
    augment_quiver, framed_quiver, AugmentedQuiver, FramedArrow, FramedQuiver, FRAMING_VERTEX,
};
pub use parse::{parse_presentation, ParseOptions};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("mixed bigrading in relation{0}")]
    MixedBigrading(String),
    #[error("trivial path in relation `{0}` (not allowed without the explicit option)")]
    TrivialInRelation(String),
    #[error("{0}")]
    Invalid(String),
    #[error("line {line}: {error}")]
    AtLine {
        line: usize,
        error: Box<QuiverError>,
    },
}

impl QuiverError {
    /// The underlying error without line information.
    pub fn root(&self) -> &QuiverError {
        match self {
            QuiverError::AtLine { error, .. } => error.root(),
            other => other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, tail, head)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (k, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), VertexId(k)).is_some() {
                return Err(QuiverError::Duplicate(v.clone()));
            }
        }
        let mut out = Quiver {
            vertices,
            arrows: Vec::new(),
            vertex_index,
            arrow_index: HashMap::new(),
        };
        for (name, tail, head) in arrows {
            let tail = out.vertex(&tail)?;
            let head = out.vertex(&head)?;
            out.push_arrow(name, tail, head)?;
        }
        Ok(out)
    }

    pub(crate) fn push_arrow(
        &mut self,
        name: String,
        tail: VertexId,
        head: VertexId,
    ) -> Result<ArrowId, QuiverError> {
        if self.arrow_index.contains_key(&name) {
            return Err(QuiverError::Duplicate(name));
        }
        let id = ArrowId(self.arrows.len());
        self.arrow_index.insert(name.clone(), id);
        self.arrows.push(Arrow { name, tail, head });
        Ok(id)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, QuiverError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId, QuiverError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    /// Connectedness of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.tail.0, a.head.0), (a.head.0, a.tail.0)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Human-readable word of a path: arrows written left to right in
    /// composition order (`fc` means `c` then `f`). Multi-character names are
    /// joined with `*`; trivial paths print as `e_<vertex>`.
    pub fn word(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e_{}", self.vertex_name(p.tail()));
        }
        let names: Vec<&str> = p
            .arrows()
            .iter()
            .rev()
            .map(|a| self.arrow(*a).name.as_str())
            .collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join("*")
        }
    }

    /// Inverse of [`Quiver::word`]. A word without `*` is first tried as a
    /// single arrow name and then split into one-character arrow names.
    pub fn parse_word(&self, word: &str) -> Result<Path, QuiverError> {
        let word = word.trim();
        if let Some(v) = word.strip_prefix("e_") {
            if self.arrow_id(word).is_err() {
                return Ok(Path::trivial(self.vertex(v)?));
            }
        }
        let names: Vec<String> = if word.contains('*') {
            word.split('*').map(|s| s.trim().to_string()).collect()
        } else if self.arrow_id(word).is_ok() {
            vec![word.to_string()]
        } else {
            word.chars().map(|c| c.to_string()).collect()
        };
        let mut arrows = Vec::with_capacity(names.len());
        for n in names.iter().rev() {
            arrows.push(self.arrow_id(n)?);
        }
        Path::from_arrows(self, arrows)
    }
}

/// A path in a quiver. Arrows are stored in traversal order (`arrows[0]` is
/// traversed first), so the word `a_l ⋯ a_1` is stored as `[a_1, …, a_l]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    tail: VertexId,
    head: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path {
            tail: v,
            head: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Self {
        let arr = q.arrow(a);
        Path {
            tail: arr.tail,
            head: arr.head,
            arrows: vec![a],
        }
    }

    /// Path from arrows in traversal order; checks composability.
    pub fn from_arrows(q: &Quiver, arrows: Vec<ArrowId>) -> Result<Self, QuiverError> {
        let Some(first) = arrows.first() else {
            return Err(QuiverError::Invalid(
                "empty arrow list; use Path::trivial".into(),
            ));
        };
        let tail = q.arrow(*first).tail;
        for w in arrows.windows(2) {
            if q.arrow(w[0]).head != q.arrow(w[1]).tail {
                return Err(QuiverError::NotComposable(format!(
                    "{} then {}",
                    q.arrow(w[0]).name,
                    q.arrow(w[1]).name
                )));
            }
        }
        let head = q.arrow(*arrows.last().unwrap()).head;
        Ok(Path { tail, head, arrows })
    }

    pub fn tail(&self) -> VertexId {
        self.tail
    }

    pub fn head(&self) -> VertexId {
        self.head
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    pub fn is_cycle(&self) -> bool {
        self.head == self.tail
    }

    pub fn traverses(&self, a: ArrowId) -> bool {
        self.arrows.contains(&a)
    }

    /// The product `outer · inner` (first `inner`, then `outer`).
    pub fn compose(outer: &Path, inner: &Path) -> Result<Path, QuiverError> {
        if outer.tail != inner.head {
            return Err(QuiverError::NotComposable(format!(
                "tail {:?} of outer path differs from head {:?} of inner path",
                outer.tail, inner.head
            )));
        }
        let mut arrows = inner.arrows.clone();
        arrows.extend_from_slice(&outer.arrows);
        Ok(Path {
            tail: inner.tail,
            head: outer.head,
            arrows,
        })
    }
}

/// Canonical order: by length, then lexicographically on traversal-order
/// arrow indices, trivial paths by vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.tail.cmp(&other.tail))
            .then_with(|| self.head.cmp(&other.head))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A rational linear combination of paths sharing one head and one tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    head: VertexId,
    tail: VertexId,
    terms: Vec<(Path, Coeff)>,
}

impl AlgebraElement {
    pub fn zero(head: VertexId, tail: VertexId) -> Self {
        AlgebraElement {
            head,
            tail,
            terms: Vec::new(),
        }
    }

    pub fn from_path(p: Path) -> Self {
        AlgebraElement {
            head: p.head,
            tail: p.tail,
            terms: vec![(p, Coeff::from_integer(1.into()))],
        }
    }

    /// Normalizing constructor; every path must run `tail → head`.
    pub fn new(
        head: VertexId,
        tail: VertexId,
        terms: impl IntoIterator<Item = (Path, Coeff)>,
    ) -> Result<Self, QuiverError> {
        let mut raw: Vec<(Path, Coeff)> = Vec::new();
        for (p, c) in terms {
            if p.head != head || p.tail != tail {
                return Err(QuiverError::MixedBigrading(String::new()));
            }
            raw.push((p, c));
        }
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Path, Coeff)> = Vec::with_capacity(raw.len());
        for (p, c) in raw {
            match out.last_mut() {
                Some((lp, lc)) if *lp == p => *lc += c,
                _ => out.push((p, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(AlgebraElement {
            head,
            tail,
            terms: out,
        })
    }

    pub fn head(&self) -> VertexId {
        self.head
    }

    pub fn tail(&self) -> VertexId {
        self.tail
    }

    pub fn terms(&self) -> &[(Path, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<Self, QuiverError> {
        if self.head != other.head || self.tail != other.tail {
            return Err(QuiverError::MixedBigrading(String::new()));
        }
        AlgebraElement::new(
            self.head,
            self.tail,
            self.terms.iter().chain(other.terms.iter()).cloned(),
        )
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        AlgebraElement::new(
            self.head,
            self.tail,
            self.terms.iter().map(|(p, k)| (p.clone(), k * c)),
        )
        .expect("same endpoints")
    }

    /// `u · self · w` (first `w`, then `self`, then `u`).
    pub fn sandwich(&self, u: &Path, w: &Path) -> Result<Self, QuiverError> {
        if u.tail != self.head || w.head != self.tail {
            return Err(QuiverError::NotComposable("sandwich endpoints".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| Ok((Path::compose(u, &Path::compose(p, w)?)?, c.clone())))
            .collect::<Result<Vec<_>, QuiverError>>()?;
        AlgebraElement::new(u.head, w.tail, terms)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (p, c)) in self.terms.iter().enumerate() {
            let neg = c < &Coeff::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if abs != Coeff::from_integer(1.into()) {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&q.word(p));
        }
        s
    }
}

/// A relation `g_k` of the presentation, with its name from the input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub element: AlgebraElement,
}

/// Dimension per vertex, indexed by `VertexId`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionVector(Vec<u32>);

impl DimensionVector {
    pub fn new(q: &Quiver, dims: Vec<u32>) -> Result<Self, QuiverError> {
        if dims.len() != q.num_vertices() {
            return Err(QuiverError::Invalid(format!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                q.num_vertices()
            )));
        }
        Ok(DimensionVector(dims))
    }

    pub fn get(&self, v: VertexId) -> u32 {
        self.0[v.0]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// A quiver algebra `kQ/⟨g_1, …, g_m⟩` with a dimension vector and the set
/// `K` of vertices whose general linear groups act.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub dims: DimensionVector,
    pub frozen: BTreeSet<VertexId>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(
        quiver: Quiver,
        dims: DimensionVector,
        frozen: BTreeSet<VertexId>,
        relations: Vec<Relation>,
    ) -> Result<Self, QuiverError> {
        if let Some(v) = frozen.iter().find(|v| v.0 >= quiver.num_vertices()) {
            return Err(QuiverError::UnknownVertex(format!("#{}", v.0)));
        }
        Ok(Presentation {
            quiver,
            dims,
            frozen,
            relations,
        })
    }

    pub fn dim(&self, v: VertexId) -> u32 {
        self.dims.get(v)
    }

    pub fn is_frozen(&self, v: VertexId) -> bool {
        self.frozen.contains(&v)
    }

    /// Same data with `K` replaced.
    pub fn with_frozen(&self, frozen: BTreeSet<VertexId>) -> Result<Self, QuiverError> {
        Presentation::new(
            self.quiver.clone(),
            self.dims.clone(),
            frozen,
            self.relations.clone(),
        )
    }

    /// Same data with `K` given by vertex names.
    pub fn with_frozen_names<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, QuiverError> {
        let frozen = names
            .into_iter()
            .map(|n| self.quiver.vertex(n))
            .collect::<Result<BTreeSet<_>, _>>()?;
        self.with_frozen(frozen)
    }

    pub fn unfrozen(&self) -> BTreeSet<VertexId> {
        self.quiver
            .vertex_ids()
            .filter(|v| !self.is_frozen(*v))
            .collect()
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.quiver.is_connected() {
            out.push("quiver is not connected".to_string());
        }
        out
    }
}
