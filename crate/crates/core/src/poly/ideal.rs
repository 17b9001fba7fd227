use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::groebner::{self, Budget, Stats};
use super::monomial::VarIndex;
use super::order::MonomialOrder;
use super::polynomial::Polynomial;
use super::ring::Ring;
use super::PolyError;

/// A reduced Gröbner basis together with the ring (and order) it lives in.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    polys: Vec<Polynomial>,
    stats: Stats,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    /// Normal form of `f`, re-sorted into the basis order first.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        let f = f.with_ring(&self.ring)?;
        Ok(groebner::normal_form(&f, &self.polys))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// An ideal given by generators, with reduced Gröbner bases cached per order.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self, PolyError> {
        let mut moved = Vec::with_capacity(gens.len());
        for g in gens {
            moved.push(g.with_ring(ring)?);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: moved,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Sum of ideals in the same ring.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, PolyError> {
        let mut gens = self.gens.clone();
        for g in &other.gens {
            gens.push(g.with_ring(&self.ring)?);
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn groebner(
        &self,
        order: &MonomialOrder,
        budget: &Budget,
    ) -> Result<Arc<GroebnerBasis>, PolyError> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(order) {
            return Ok(Arc::clone(gb));
        }
        let ring = self.ring.with_order(order.clone());
        let gens: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|g| g.with_ring(&ring))
            .collect::<Result<_, _>>()?;
        let (polys, stats) = groebner::groebner_basis(&gens, budget)?;
        let gb = Arc::new(GroebnerBasis { ring, polys, stats });
        self.cache
            .lock()
            .expect("cache lock")
            .insert(order.clone(), Arc::clone(&gb));
        Ok(gb)
    }

    pub fn member(
        &self,
        f: &Polynomial,
        order: &MonomialOrder,
        budget: &Budget,
    ) -> Result<bool, PolyError> {
        if f.is_zero() {
            return Ok(true);
        }
        self.groebner(order, budget)?.contains(f)
    }

    /// Elimination ideal: the basis elements free of `drop` under the block
    /// order with `drop` in front, moved into the subring of retained
    /// variables.
    pub fn eliminate(&self, drop: &[VarIndex], budget: &Budget) -> Result<Ideal, PolyError> {
        let n = self.ring.num_vars() as VarIndex;
        if let Some(&bad) = drop.iter().find(|&&v| v >= n) {
            return Err(PolyError::UnknownVariable(format!("index {bad}")));
        }
        let order = MonomialOrder::elimination(drop.iter().copied());
        let gb = self.groebner(&order, budget)?;
        let dropped = |v: VarIndex| drop.contains(&v);
        let (sub, map) = self.ring.subring(|v| !dropped(v));
        let gens = gb
            .polys()
            .iter()
            .filter(|g| !g.contains_var(dropped))
            .map(|g| {
                g.map_into(&sub, |v| map[v as usize])
                    .expect("retained variables only")
            })
            .collect();
        Ideal::new(&sub, gens)
    }

    /// Equality as ideals: mutual containment of generators.
    pub fn equals(
        &self,
        other: &Ideal,
        order: &MonomialOrder,
        budget: &Budget,
    ) -> Result<bool, PolyError> {
        if !self.ring.same_vars(&other.ring) {
            return Err(PolyError::RingMismatch);
        }
        let mine = self.groebner(order, budget)?;
        let theirs = other.groebner(order, budget)?;
        for g in &other.gens {
            if !mine.contains(g)? {
                return Ok(false);
            }
        }
        for g in &self.gens {
            if !theirs.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
