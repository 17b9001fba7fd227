use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_invariance, eval, path_product, random_rep_with, Matrix, RepPoint};
use crate::invariant::RepScheme;
use crate::kernel::{kernel_generators, KernelGenerator};
use crate::poly::{Budget, Ideal, Polynomial};
use crate::quiver::{
    enumerate_paths, rotations, AlgebraElement, FramedArrow, Path, Quiver, VertexId,
};
use crate::Result;

const INVARIANCE_TRIALS: usize = 20;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub max_len: usize,
    pub max_u: usize,
    pub max_w: usize,
    /// Flip a coefficient of one kernel generator before checking.
    pub mutate: bool,
    pub budget: Budget,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            max_len: 2,
            max_u: 2,
            max_w: 2,
            mutate: false,
            budget: Budget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub trials: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.to_string(),
            trials: 0,
            pass: true,
            witness: None,
        }
    }

    fn fail(&mut self, witness: String) {
        if self.pass {
            self.pass = false;
            self.witness = Some(witness);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("seed {}\n", self.seed);
        for c in &self.checks {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            s.push_str(&format!("{verdict} {} ({} trials)\n", c.name, c.trials));
            if let Some(w) = &c.witness {
                s.push_str(&format!("    witness: {w}\n"));
            }
        }
        s
    }
}

struct Ctx<'a> {
    scheme: &'a RepScheme,
    cfg: &'a SuiteConfig,
    all: BTreeSet<VertexId>,
    pool: Vec<Path>,
}

impl Ctx<'_> {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(stream);
        rng
    }

    fn quiver(&self) -> &Quiver {
        &self.scheme.presentation().quiver
    }

    fn indices(&self, head: VertexId, tail: VertexId) -> Vec<(u32, u32)> {
        let p = self.scheme.presentation();
        let mut out = Vec::new();
        for i in 1..=p.dim(head) {
            for j in 1..=p.dim(tail) {
                out.push((i, j));
            }
        }
        out
    }
}

/// Runs every property suite and the kernel checks at the configured seed.
pub fn run_suites(scheme: &RepScheme, cfg: &SuiteConfig) -> Result<Report> {
    let q = &scheme.presentation().quiver;
    let all: BTreeSet<VertexId> = q.vertex_ids().collect();
    let pool = enumerate_paths(q, &all, &all, 3, false);
    let ctx = Ctx {
        scheme,
        cfg,
        all,
        pool,
    };
    let mut kernel = kernel_generators(scheme, cfg.max_u, cfg.max_w)?;
    if cfg.mutate {
        mutate(&mut kernel);
    }
    let checks = vec![
        product_law(&ctx)?,
        matrix_oracle(&ctx)?,
        trace_rotation(&ctx)?,
        lusztig_invariance(&ctx)?,
        kernel_invariance(&ctx, &kernel)?,
        kernel_containment(&ctx, &kernel)?,
        traversal(&ctx)?,
        lift_independence(&ctx)?,
        framed_correspondence(&ctx)?,
        path_counts(&ctx),
    ];
    Ok(Report {
        seed: cfg.seed,
        checks,
    })
}

fn mutate(kernel: &mut [KernelGenerator]) {
    if let Some(g) = kernel.iter_mut().find(|g| g.polynomial.len() >= 2) {
        let ring = g.polynomial.ring().clone();
        let terms = g
            .polynomial
            .terms()
            .iter()
            .enumerate()
            .map(|(n, (m, c))| (m.clone(), if n == 0 { -c.clone() } else { c.clone() }));
        g.polynomial = Polynomial::from_terms(&ring, terms);
    }
}

fn product_law(ctx: &Ctx) -> Result<Check> {
    let mut check = Check::new("product-law");
    let mut rng = ctx.rng(1);
    let space = ctx.scheme.space();
    for _ in 0..50 {
        let Some(inner) = ctx.pool.choose(&mut rng) else {
            break;
        };
        let outers: Vec<&Path> = ctx
            .pool
            .iter()
            .filter(|o| o.tail() == inner.head())
            .collect();
        let Some(outer) = outers.choose(&mut rng) else {
            continue;
        };
        check.trials += 1;
        let composite = Path::compose(outer, inner)?;
        for (i, j) in ctx.indices(composite.head(), composite.tail()) {
            let mut rhs = Polynomial::zero(space.ring());
            for k in 1..=space.dim(inner.head()) {
                rhs = &rhs
                    + &(&space.path_contraction(outer, i, k)?
                        * &space.path_contraction(inner, k, j)?);
            }
            if space.path_contraction(&composite, i, j)? != rhs {
                let q = ctx.quiver();
                check.fail(format!(
                    "{} after {} at ({i},{j})",
                    q.word(outer),
                    q.word(inner)
                ));
            }
        }
    }
    Ok(check)
}

fn matrix_oracle(ctx: &Ctx) -> Result<Check> {
    let mut check = Check::new("matrix-oracle");
    let mut rng = ctx.rng(2);
    let p = ctx.scheme.presentation();
    let space = ctx.scheme.space();
    for _ in 0..50 {
        let Some(path) = ctx.pool.choose(&mut rng) else {
            break;
        };
        check.trials += 1;
        let b = random_rep_with(p, &mut rng);
        let product = path_product(p, path, &b);
        for (i, j) in ctx.indices(path.head(), path.tail()) {
            let value = eval(&space.path_contraction(path, i, j)?, &p.quiver, &b)?;
            if &value != product.get(i as usize - 1, j as usize - 1) {
                check.fail(format!("{} at ({i},{j})", p.quiver.word(path)));
            }
        }
        if path.is_cycle() && eval(&space.path_trace(path)?, &p.quiver, &b)? != product.trace() {
            check.fail(format!("trace of {}", p.quiver.word(path)));
        }
    }
    Ok(check)
}

fn trace_rotation(ctx: &Ctx) -> Result<Check> {
    let mut check = Check::new("trace-rotation");
    let mut rng = ctx.rng(3);
    let q = ctx.quiver();
    let space = ctx.scheme.space();
    let cycles: Vec<Path> = enumerate_paths(q, &ctx.all, &ctx.all, 4, false)
        .into_iter()
        .filter(Path::is_cycle)
        .collect();
    for _ in 0..50 {
        let Some(cycle) = cycles.choose(&mut rng) else {
            break;
        };
        check.trials += 1;
        let trace = space.path_trace(cycle)?;
        for r in rotations(q, cycle) {
            if space.path_trace(&r)? != trace {
                check.fail(format!("{} vs {}", q.word(cycle), q.word(&r)));
            }
        }
    }
    Ok(check)
}

fn invariance_of<'a>(
    ctx: &Ctx,
    name: &str,
    stream: u64,
    polys: impl Iterator<Item = (&'a str, &'a Polynomial)>,
) -> Result<Check> {
    let mut check = Check::new(name);
    let mut rng = ctx.rng(stream);
    for (label, f) in polys {
        let report = check_invariance(f, ctx.scheme.presentation(), INVARIANCE_TRIALS, rng.gen())?;
        check.trials += report.trials;
        if let Some(w) = report.witness {
            check.fail(format!("{label}: {w}"));
        }
    }
    Ok(check)
}

fn lusztig_invariance(ctx: &Ctx) -> Result<Check> {
    let gens = ctx.scheme.lusztig_generators(ctx.cfg.max_len)?;
    invariance_of(
        ctx,
        "invariance-lusztig",
        4,
        gens.entries
            .iter()
            .map(|g| (g.label.as_str(), &g.polynomial)),
    )
}

fn kernel_invariance(ctx: &Ctx, kernel: &[KernelGenerator]) -> Result<Check> {
    invariance_of(
        ctx,
        "invariance-kernel",
        5,
        kernel.iter().map(|g| (g.label.as_str(), &g.polynomial)),
    )
}

fn kernel_containment(ctx: &Ctx, kernel: &[KernelGenerator]) -> Result<Check> {
    let mut check = Check::new("kernel-containment");
    for g in kernel {
        check.trials += 1;
        let nf = ctx.scheme.restrict_tau(&g.polynomial, &ctx.cfg.budget)?;
        if !nf.is_zero() {
            check.fail(format!("{}: normal form {nf}", g.label));
        }
    }
    Ok(check)
}

fn traversal(ctx: &Ctx) -> Result<Check> {
    let mut check = Check::new("traversal-lemma");
    let mut rng = ctx.rng(6);
    let p = ctx.scheme.presentation();
    let q = &p.quiver;
    let space = ctx.scheme.space();
    let usable: Vec<&Path> = ctx
        .pool
        .iter()
        .filter(|path| {
            path.arrows()
                .iter()
                .all(|a| space.shape(*a).0 > 0 && space.shape(*a).1 > 0)
        })
        .collect();
    let arrows: Vec<_> = q.arrow_ids().collect();
    for _ in 0..30 {
        let (Some(path), Some(&a)) = (usable.choose(&mut rng), arrows.choose(&mut rng)) else {
            break;
        };
        check.trials += 1;
        let (rows, cols) = space.shape(a);
        let mut vars = Vec::new();
        for i in 1..=rows {
            for j in 1..=cols {
                vars.push(Polynomial::var(space.ring(), space.var(a, i, j)));
            }
        }
        let ideal = Ideal::new(space.ring(), vars)?;
        let mut inside = true;
        for (i, j) in ctx.indices(path.head(), path.tail()) {
            let f = space.path_contraction(path, i, j)?;
            inside &= ideal.member(&f, space.ring().order(), &ctx.cfg.budget)?;
        }
        if inside != path.traverses(a) {
            check.fail(format!(
                "{} and arrow {}: traverses = {}, membership = {inside}",
                q.word(path),
                q.arrow(a).name,
                path.traverses(a)
            ));
        }
    }
    Ok(check)
}

fn lift_independence(ctx: &Ctx) -> Result<Check> {
    let mut check = Check::new("lift-independence");
    let mut rng = ctx.rng(7);
    let p = ctx.scheme.presentation();
    let q = &p.quiver;
    let space = ctx.scheme.space();
    if p.relations.is_empty() {
        return Ok(check);
    }
    for _ in 0..30 {
        let rel = p.relations.choose(&mut rng).expect("nonempty");
        let g = &rel.element;
        let us = enumerate_paths(q, &BTreeSet::from([g.head()]), &ctx.all, 2, true);
        let ws = enumerate_paths(q, &ctx.all, &BTreeSet::from([g.tail()]), 2, true);
        let (u, w) = (
            us.choose(&mut rng).expect("trivial path"),
            ws.choose(&mut rng).expect("trivial path"),
        );
        let sandwich = g.sandwich(u, w)?;
        let (head, tail) = (sandwich.head(), sandwich.tail());
        let others = enumerate_paths(q, &BTreeSet::from([tail]), &BTreeSet::from([head]), 3, true);
        let other = match others.choose(&mut rng) {
            Some(path) if rng.gen_bool(0.75) => AlgebraElement::from_path(path.clone()),
            _ => AlgebraElement::zero(head, tail),
        };
        let lifted = other.add(&sandwich)?;
        check.trials += 1;
        for (i, j) in ctx.indices(head, tail) {
            let a = ctx
                .scheme
                .restrict_tau(&space.contraction_poly(&lifted, i, j)?, &ctx.cfg.budget)?;
            let b = ctx
                .scheme
                .restrict_tau(&space.contraction_poly(&other, i, j)?, &ctx.cfg.budget)?;
            if a != b {
                check.fail(format!(
                    "{} versus {} at ({i},{j})",
                    lifted.display(q),
                    other.display(q)
                ));
            }
        }
    }
    Ok(check)
}

/// The framed point built from `B`: columns of `B_b` for `α_b^j`, rows of
/// `B_c` for `β_c^i`.
fn phi_image(provenance: &[FramedArrow], b: &RepPoint) -> RepPoint {
    let matrices = provenance
        .iter()
        .map(|prov| match *prov {
            FramedArrow::Kept(a) => b.matrices[a.0].clone(),
            FramedArrow::Alpha { source, index } => b.matrices[source.0].column(index as usize - 1),
            FramedArrow::Beta { source, index } => b.matrices[source.0].row(index as usize - 1),
        })
        .collect::<Vec<Matrix>>();
    RepPoint { matrices }
}

fn framed_correspondence(ctx: &Ctx) -> Result<Check> {
    let mut check = Check::new("framed-correspondence");
    let mut rng = ctx.rng(8);
    let p = ctx.scheme.presentation();
    let q = &p.quiver;
    let into_k: Vec<_> = q
        .arrow_ids()
        .filter(|a| !p.is_frozen(q.arrow(*a).tail) && p.is_frozen(q.arrow(*a).head))
        .collect();
    let out_of_k: Vec<_> = q
        .arrow_ids()
        .filter(|a| p.is_frozen(q.arrow(*a).tail) && !p.is_frozen(q.arrow(*a).head))
        .collect();
    for &b in &into_k {
        for &c in &out_of_k {
            let mid_at = q.arrow(b).head;
            if q.arrow(c).tail != mid_at {
                continue;
            }
            let mid = Path::trivial(mid_at);
            for i in 1..=p.dim(q.arrow(c).head) {
                for j in 1..=p.dim(q.arrow(b).tail) {
                    check.trials += 1;
                    let fc = ctx.scheme.framed_correspondence(b, &mid, c, i, j)?;
                    let point = random_rep_with(p, &mut rng);
                    let framed_point = phi_image(&fc.framed.provenance, &point);
                    let lhs = eval(&fc.framed_trace, fc.framed.quiver(), &framed_point)?;
                    let rhs = eval(&fc.contraction, q, &point)?;
                    if lhs != rhs || fc.pullback != fc.contraction {
                        check.fail(format!(
                            "{} at ({i},{j}): framed trace {lhs}, contraction {rhs}",
                            q.word(&fc.path)
                        ));
                    }
                }
            }
        }
    }
    Ok(check)
}

fn adjacency_power(q: &Quiver, n: usize) -> Vec<Vec<u64>> {
    let k = q.num_vertices();
    let mut adj = vec![vec![0u64; k]; k];
    for a in q.arrows() {
        adj[a.head.0][a.tail.0] += 1;
    }
    let mut pow: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    for _ in 0..n {
        pow = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (0..k).map(|m| adj[i][m] * pow[m][j]).sum())
                    .collect()
            })
            .collect();
    }
    pow
}

fn path_counts(ctx: &Ctx) -> Check {
    let mut check = Check::new("path-count");
    let mut rng = ctx.rng(9);
    for _ in 0..5 {
        check.trials += 1;
        let nv = rng.gen_range(1..=3usize);
        let na = rng.gen_range(0..=5usize);
        let vertices: Vec<String> = (0..nv).map(|v| v.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (0..na)
            .map(|k| {
                (
                    format!("a{k}"),
                    rng.gen_range(0..nv).to_string(),
                    rng.gen_range(0..nv).to_string(),
                )
            })
            .collect();
        let q = Quiver::new(vertices, arrows).expect("generated names are distinct");
        let all: BTreeSet<VertexId> = q.vertex_ids().collect();
        let paths = enumerate_paths(&q, &all, &all, 5, false);
        for n in 1..=5 {
            let pow = adjacency_power(&q, n);
            for t in q.vertex_ids() {
                for h in q.vertex_ids() {
                    let count = paths
                        .iter()
                        .filter(|p| p.len() == n && p.tail() == t && p.head() == h)
                        .count() as u64;
                    if count != pow[h.0][t.0] {
                        check.fail(format!(
                            "{nv} vertices, {na} arrows, length {n}: {count} paths, expected {}",
                            pow[h.0][t.0]
                        ));
                    }
                }
            }
        }
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{parse_presentation, ParseOptions};

    const A1: &str = include_str!("../../data/a1.quiver");

    #[test]
    fn suites_pass_and_mutation_is_caught() {
        let p = parse_presentation(A1, &ParseOptions::default()).unwrap();
        let scheme = RepScheme::new(&p).unwrap();
        let cfg = SuiteConfig {
            max_u: 1,
            max_w: 1,
            ..SuiteConfig::default()
        };
        let report = run_suites(&scheme, &cfg).unwrap();
        assert!(report.pass(), "{}", report.to_text());
        assert_eq!(report.check("framed-correspondence").unwrap().trials, 16);
        assert_eq!(report.check("product-law").unwrap().trials, 50);

        let mutated = run_suites(
            &scheme,
            &SuiteConfig {
                mutate: true,
                ..cfg
            },
        )
        .unwrap();
        assert!(!mutated.pass());
        assert!(mutated
            .check("kernel-containment")
            .unwrap()
            .witness
            .is_some());
    }
}
