//! Symbol registry shared by polynomials, rational expressions and coframed
//! spaces.
//!
//! A [`Workspace`] interns scalar symbols and fixes their total order (the
//! creation order), which in turn fixes the monomial order used everywhere
//! else. Symbol tables are append-only; handles are cheap to clone and safe
//! to share across threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::FieldError;

/// Index of a symbol in its workspace. Symbol ids are ordered by creation:
/// a smaller id ranks *earlier* (and therefore "larger" in the lexicographic
/// tie-break of the monomial order).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SymbolId(pub u32);

/// What a scalar symbol stands for. The distinction matters to the exterior
/// layer (differentials are wired up differently per kind) and to reporting.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SymbolKind {
    /// A coordinate function on a chart; its differential is a coframe element.
    Coordinate,
    /// An abstract scalar whose differential is declared by a space.
    BaseFunction,
    /// A directional derivative of another symbol. `word` records the index
    /// word, innermost first: `f_{31}` is `(f_3)_1` and has word `[3, 1]`.
    DerivedFunction { parent: SymbolId, word: Vec<u8> },
    /// A parameter or bookkeeping scalar with no differential semantics.
    Auxiliary,
}

#[derive(Clone, Debug)]
pub struct SymbolInfo {
    pub name: String,
    pub kind: SymbolKind,
}

/// An algebraic relation `c^2 + s^2 = 1` between two symbols, used for the
/// cosine/sine pair of a fibre angle. Normalisation rewrites `c^2 -> 1 - s^2`.
#[derive(Clone, Copy, Debug)]
pub struct CirclePair {
    pub cos: SymbolId,
    pub sin: SymbolId,
}

#[derive(Default)]
struct WsInner {
    symbols: Vec<SymbolInfo>,
    by_name: HashMap<String, SymbolId>,
    circle_pairs: Vec<CirclePair>,
}

/// Shared, append-only symbol table.
#[derive(Clone)]
pub struct Workspace {
    inner: Arc<RwLock<WsInner>>,
}

impl Default for Workspace {
    fn default() -> Self {
        Self::new()
    }
}

impl Workspace {
    pub fn new() -> Self {
        Workspace {
            inner: Arc::new(RwLock::new(WsInner::default())),
        }
    }

    /// Two handles are "the same workspace" iff they share storage.
    pub fn same_as(&self, other: &Workspace) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// Intern a new symbol. Names must be unique within the workspace.
    pub fn declare(&self, name: &str, kind: SymbolKind) -> Result<SymbolId, FieldError> {
        let mut inner = self.inner.write().unwrap();
        if inner.by_name.contains_key(name) {
            return Err(FieldError::DuplicateSymbol {
                name: name.to_string(),
            });
        }
        let id = SymbolId(inner.symbols.len() as u32);
        inner.symbols.push(SymbolInfo {
            name: name.to_string(),
            kind,
        });
        inner.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    /// Declare that `cos^2 + sin^2 = 1` holds between two existing symbols.
    pub fn declare_circle_pair(&self, cos: SymbolId, sin: SymbolId) {
        let mut inner = self.inner.write().unwrap();
        inner.circle_pairs.push(CirclePair { cos, sin });
    }

    pub fn circle_pairs(&self) -> Vec<CirclePair> {
        self.inner.read().unwrap().circle_pairs.clone()
    }

    pub fn has_circle_pairs(&self) -> bool {
        !self.inner.read().unwrap().circle_pairs.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.inner.read().unwrap().by_name.get(name).copied()
    }

    pub fn name(&self, id: SymbolId) -> String {
        self.inner.read().unwrap().symbols[id.0 as usize].name.clone()
    }

    pub fn kind(&self, id: SymbolId) -> SymbolKind {
        self.inner.read().unwrap().symbols[id.0 as usize].kind.clone()
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All symbol ids in creation order.
    pub fn ids(&self) -> Vec<SymbolId> {
        (0..self.len() as u32).map(SymbolId).collect()
    }
}

impl fmt::Debug for Workspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self.inner.read().unwrap();
        write!(f, "Workspace({} symbols)", inner.symbols.len())
    }
}
