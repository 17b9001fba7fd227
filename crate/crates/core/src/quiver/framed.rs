use std::collections::BTreeSet;

use super::{ArrowId, DimensionVector, Presentation, Quiver, QuiverError, VertexId};

pub const FRAMING_VERTEX: &str = "∞";

/// Where an arrow of the framed quiver comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FramedArrow {
    /// An arrow with both endpoints in `K`, kept as is.
    Kept(ArrowId),
    /// `α_b^j: ∞ → h(b)`, the `j`-th column of `b` (tail outside `K`, head in `K`).
    Alpha { source: ArrowId, index: u32 },
    /// `β_c^i: t(c) → ∞`, the `i`-th row of `c` (tail in `K`, head outside `K`).
    Beta { source: ArrowId, index: u32 },
}

/// The framed quiver on `K ∪ {∞}` with `v_∞ = 1`, as a presentation without
/// relations on which the full general linear group acts.
#[derive(Clone, Debug)]
pub struct FramedQuiver {
    pub presentation: Presentation,
    pub infinity: VertexId,
    /// Original vertex → framed vertex, for vertices of `K`.
    pub vertex_map: Vec<Option<VertexId>>,
    /// Indexed by framed arrow id.
    pub provenance: Vec<FramedArrow>,
}

impl FramedQuiver {
    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn find(&self, wanted: FramedArrow) -> Option<ArrowId> {
        self.provenance
            .iter()
            .position(|p| *p == wanted)
            .map(ArrowId)
    }
}

pub fn framed_quiver(p: &Presentation) -> Result<FramedQuiver, QuiverError> {
    let q = &p.quiver;
    let frozen: Vec<VertexId> = q.vertex_ids().filter(|v| p.is_frozen(*v)).collect();
    let mut names: Vec<String> = frozen
        .iter()
        .map(|v| q.vertex_name(*v).to_string())
        .collect();
    names.push(FRAMING_VERTEX.to_string());
    let mut framed = Quiver::new(names, std::iter::empty())?;
    let infinity = VertexId(frozen.len());
    let mut vertex_map = vec![None; q.num_vertices()];
    for (k, v) in frozen.iter().enumerate() {
        vertex_map[v.0] = Some(VertexId(k));
    }
    let mut provenance = Vec::new();

    for a in q.arrow_ids() {
        let arr = q.arrow(a);
        if let (Some(t), Some(h)) = (vertex_map[arr.tail.0], vertex_map[arr.head.0]) {
            framed.push_arrow(arr.name.clone(), t, h)?;
            provenance.push(FramedArrow::Kept(a));
        }
    }
    for b in q.arrow_ids() {
        let arr = q.arrow(b);
        if let (None, Some(h)) = (vertex_map[arr.tail.0], vertex_map[arr.head.0]) {
            for j in 1..=p.dim(arr.tail) {
                framed.push_arrow(format!("alpha_{}^{j}", arr.name), infinity, h)?;
                provenance.push(FramedArrow::Alpha {
                    source: b,
                    index: j,
                });
            }
        }
    }
    for c in q.arrow_ids() {
        let arr = q.arrow(c);
        if let (Some(t), None) = (vertex_map[arr.tail.0], vertex_map[arr.head.0]) {
            for i in 1..=p.dim(arr.head) {
                framed.push_arrow(format!("beta_{}^{i}", arr.name), t, infinity)?;
                provenance.push(FramedArrow::Beta {
                    source: c,
                    index: i,
                });
            }
        }
    }

    let mut dims: Vec<u32> = frozen.iter().map(|v| p.dim(*v)).collect();
    dims.push(1);
    let dims = DimensionVector::new(&framed, dims)?;
    let all: BTreeSet<VertexId> = framed.vertex_ids().collect();
    let presentation = Presentation::new(framed, dims, all, Vec::new())?;
    Ok(FramedQuiver {
        presentation,
        infinity,
        vertex_map,
        provenance,
    })
}

/// `Q̄`: the quiver with one extra arrow `t_k → h_k` per relation.
#[derive(Clone, Debug)]
pub struct AugmentedQuiver {
    pub quiver: Quiver,
    /// Arrow standing for relation `k`.
    pub relation_arrows: Vec<ArrowId>,
}

pub fn augment_quiver(p: &Presentation) -> Result<AugmentedQuiver, QuiverError> {
    let mut quiver = p.quiver.clone();
    let mut relation_arrows = Vec::with_capacity(p.relations.len());
    for rel in &p.relations {
        let mut name = rel.name.clone();
        while quiver.arrow_id(&name).is_ok() {
            name.push('\'');
        }
        let id = quiver.push_arrow(name, rel.element.tail(), rel.element.head())?;
        relation_arrows.push(id);
    }
    Ok(AugmentedQuiver {
        quiver,
        relation_arrows,
    })
}
