use std::collections::BTreeSet;

use super::{ArrowId, Path, Quiver, VertexId};

/// All paths with tail in `tails` and head in `heads` of length
/// `1..=max_len` (plus trivial paths at `tails ∩ heads` when asked), ordered
/// by length and then lexicographically in traversal order.
pub fn enumerate_paths(
    q: &Quiver,
    tails: &BTreeSet<VertexId>,
    heads: &BTreeSet<VertexId>,
    max_len: usize,
    include_trivial: bool,
) -> Vec<Path> {
    let mut out = Vec::new();
    if include_trivial {
        out.extend(tails.intersection(heads).map(|v| Path::trivial(*v)));
    }
    for len in 1..=max_len {
        let mut stack = Vec::with_capacity(len);
        for a in q.arrow_ids() {
            if tails.contains(&q.arrow(a).tail) {
                stack.push(a);
                extend_words(q, &mut stack, len, &|_| true, &mut |word| {
                    let head = q.arrow(*word.last().unwrap()).head;
                    if heads.contains(&head) {
                        out.push(
                            Path::from_arrows(q, word.to_vec())
                                .expect("composable by construction"),
                        );
                    }
                });
                stack.pop();
            }
        }
    }
    out
}

fn extend_words(
    q: &Quiver,
    stack: &mut Vec<ArrowId>,
    len: usize,
    allowed: &dyn Fn(ArrowId) -> bool,
    emit: &mut dyn FnMut(&[ArrowId]),
) {
    if stack.len() == len {
        emit(stack);
        return;
    }
    let at = q.arrow(*stack.last().unwrap()).head;
    for a in q.arrow_ids() {
        if allowed(a) && q.arrow(a).tail == at {
            stack.push(a);
            extend_words(q, stack, len, allowed, emit);
            stack.pop();
        }
    }
}

/// Every rotation of a nontrivial cycle, starting with the cycle itself.
pub fn rotations(q: &Quiver, cycle: &Path) -> Vec<Path> {
    assert!(
        cycle.is_cycle() && !cycle.is_trivial(),
        "rotations need a nontrivial cycle"
    );
    let arrows = cycle.arrows();
    (0..arrows.len())
        .map(|s| {
            let mut rot = arrows[s..].to_vec();
            rot.extend_from_slice(&arrows[..s]);
            Path::from_arrows(q, rot).expect("rotation of a cycle is a cycle")
        })
        .collect()
}

/// The lexicographically least rotation (in traversal order) of a cycle.
pub fn canonical_rotation(q: &Quiver, cycle: &Path) -> Path {
    if cycle.is_trivial() {
        return cycle.clone();
    }
    rotations(q, cycle)
        .into_iter()
        .min_by(|a, b| a.arrows().cmp(b.arrows()))
        .unwrap()
}

/// Nontrivial cycles of length at most `max_len` that only traverse arrows
/// with both endpoints in `within`, one representative per rotation class.
pub fn enumerate_cycles_in(q: &Quiver, within: &BTreeSet<VertexId>, max_len: usize) -> Vec<Path> {
    let allowed = |a: ArrowId| {
        let arr = q.arrow(a);
        within.contains(&arr.tail) && within.contains(&arr.head)
    };
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut stack = Vec::with_capacity(len);
        for a in q.arrow_ids().filter(|a| allowed(*a)) {
            stack.push(a);
            extend_words(q, &mut stack, len, &allowed, &mut |word| {
                if q.arrow(*word.last().unwrap()).head != q.arrow(word[0]).tail {
                    return;
                }
                let least = (1..word.len()).all(|s| {
                    let rot = word[s..].iter().chain(word[..s].iter());
                    word.iter().cmp(rot) != std::cmp::Ordering::Greater
                });
                if least {
                    out.push(
                        Path::from_arrows(q, word.to_vec()).expect("composable by construction"),
                    );
                }
            });
            stack.pop();
        }
    }
    out
}
