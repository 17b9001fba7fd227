use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::VarIndex;
use super::order::MonomialOrder;
use super::PolyError;

/// A ring variable: either the `(row, col)` entry of an arrow's matrix, or a
/// fresh symbol introduced for a generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Contraction {
        arrow: String,
        row: u32,
        col: u32,
    },
    Fresh {
        label: String,
        index: Option<(u32, u32)>,
    },
}

impl Variable {
    pub fn contraction(arrow: impl Into<String>, row: u32, col: u32) -> Self {
        Variable::Contraction {
            arrow: arrow.into(),
            row,
            col,
        }
    }

    pub fn fresh(label: impl Into<String>, index: Option<(u32, u32)>) -> Self {
        Variable::Fresh {
            label: label.into(),
            index,
        }
    }

    pub fn is_contraction(&self) -> bool {
        matches!(self, Variable::Contraction { .. })
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Contraction { arrow, row, col } => write!(f, "x[{arrow};{row},{col}]"),
            Variable::Fresh {
                label,
                index: Some((i, j)),
            } => write!(f, "{label}[{i},{j}]"),
            Variable::Fresh { label, index: None } => write!(f, "{label}"),
        }
    }
}

/// The ordered variable list of a polynomial ring.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    vars: Vec<Variable>,
    by_name: HashMap<String, VarIndex>,
}

impl VarTable {
    pub fn new(vars: Vec<Variable>) -> Result<Self, PolyError> {
        let mut by_name = HashMap::with_capacity(vars.len());
        for (idx, v) in vars.iter().enumerate() {
            if by_name.insert(v.to_string(), idx as VarIndex).is_some() {
                return Err(PolyError::DuplicateVariable(v.to_string()));
            }
        }
        Ok(VarTable { vars, by_name })
    }
}

/// A polynomial ring over the rationals: variables plus the term order that
/// sorts every polynomial living in it.
#[derive(Debug)]
pub struct PolyRing {
    table: Arc<VarTable>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(vars: Vec<Variable>, order: MonomialOrder) -> Result<Ring, PolyError> {
        Ok(Arc::new(PolyRing {
            table: Arc::new(VarTable::new(vars)?),
            order,
        }))
    }

    /// Same variables, different term order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(PolyRing {
            table: Arc::clone(&self.table),
            order,
        })
    }

    /// The ring on the variables selected by `keep`, in their original
    /// relative order, with degrevlex. Returns the old→new index map.
    pub fn subring(&self, keep: impl Fn(VarIndex) -> bool) -> (Ring, Vec<Option<VarIndex>>) {
        let mut map = vec![None; self.num_vars()];
        let mut vars = Vec::new();
        for (idx, v) in self.table.vars.iter().enumerate() {
            if keep(idx as VarIndex) {
                map[idx] = Some(vars.len() as VarIndex);
                vars.push(v.clone());
            }
        }
        let ring =
            PolyRing::new(vars, MonomialOrder::DegRevLex).expect("subset of distinct variables");
        (ring, map)
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn num_vars(&self) -> usize {
        self.table.vars.len()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.table.vars
    }

    pub fn variable(&self, idx: VarIndex) -> &Variable {
        &self.table.vars[idx as usize]
    }

    pub fn index_of(&self, var: &Variable) -> Option<VarIndex> {
        self.table.by_name.get(&var.to_string()).copied()
    }

    pub fn index_of_name(&self, name: &str) -> Option<VarIndex> {
        self.table.by_name.get(name).copied()
    }

    /// Same variable table (pointer or structural equality).
    pub fn same_vars(&self, other: &PolyRing) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || self.table == other.table
    }

    pub fn same_ring(&self, other: &PolyRing) -> bool {
        self.same_vars(other) && self.order == other.order
    }
}
