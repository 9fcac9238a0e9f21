//! Shared value types: parameters, the block/slot vertex layout, edges,
//! symbolic matchings, two-factors and certificates.
//!
//! Vertices are flat ids `0..n`. When the order is `n = 4kt` they are read
//! as pairs `(block, slot)` with `block` in `Z_2t` and `slot` in `Z_2k`,
//! `id = block * 2k + slot`. The block view is only a view; everything that
//! leaves the crate uses flat ids.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classical;
use crate::error::{Error, Result};

/// Flat vertex id.
pub type Vertex = usize;

/// Number of cycle factors in a 2-factorization of `K_n` (or `K_n - I`).
pub fn factor_count(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

/// The parameter triple `(k, t, r)` together with the derived `n` and `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    pub k: usize,
    pub t: usize,
    pub r: usize,
}

impl Params {
    pub fn new(k: usize, t: usize, r: usize) -> Result<Self> {
        if k == 0 || t == 0 {
            return Err(Error::InvalidParams(format!(
                "k and t must be positive (k = {k}, t = {t})"
            )));
        }
        let params = Self { k, t, r };
        if r > params.factor_total() {
            return Err(Error::InvalidParams(format!(
                "r = {r} exceeds (n-2)/2 = {} for n = {}",
                params.factor_total(),
                params.n()
            )));
        }
        Ok(params)
    }

    pub fn n(&self) -> usize {
        4 * self.k * self.t
    }

    pub fn cycle_len(&self) -> usize {
        4 * self.k
    }

    /// `(n - 2) / 2`, the number of 2-factors in `K_n - I`.
    pub fn factor_total(&self) -> usize {
        (self.n() - 2) / 2
    }

    pub fn s(&self) -> usize {
        self.factor_total() - self.r
    }

    pub fn layout(&self) -> Layout {
        Layout { k: self.k, t: self.t }
    }
}

/// Block structure of `Z_2t x Z_2k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Layout {
    pub k: usize,
    pub t: usize,
}

impl Layout {
    pub fn new(k: usize, t: usize) -> Result<Self> {
        if k == 0 || t == 0 {
            return Err(Error::InvalidParams(format!(
                "k and t must be positive (k = {k}, t = {t})"
            )));
        }
        Ok(Self { k, t })
    }

    /// Slots per block, `2k`.
    pub fn block_size(&self) -> usize {
        2 * self.k
    }

    /// Number of blocks, `2t`.
    pub fn blocks(&self) -> usize {
        2 * self.t
    }

    pub fn n(&self) -> usize {
        self.block_size() * self.blocks()
    }

    pub fn encode(&self, block: usize, slot: usize) -> Result<Vertex> {
        if block >= self.blocks() {
            return Err(Error::OutOfRange {
                what: "block",
                value: block,
                bound: self.blocks(),
            });
        }
        if slot >= self.block_size() {
            return Err(Error::OutOfRange {
                what: "slot",
                value: slot,
                bound: self.block_size(),
            });
        }
        Ok(block * self.block_size() + slot)
    }

    /// Encode with the slot reduced modulo `2k`. Block must be valid.
    pub(crate) fn at(&self, block: usize, slot: usize) -> Vertex {
        debug_assert!(block < self.blocks());
        block * self.block_size() + slot % self.block_size()
    }

    pub fn decode(&self, v: Vertex) -> Result<(usize, usize)> {
        if v >= self.n() {
            return Err(Error::OutOfRange {
                what: "vertex",
                value: v,
                bound: self.n(),
            });
        }
        Ok((v / self.block_size(), v % self.block_size()))
    }
}

/// Undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidArgument(format!("loop edge at vertex {a}")));
        }
        Ok(Self::ordered(a, b))
    }

    pub(crate) fn ordered(a: Vertex, b: Vertex) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Self { u: a, v: b }
        } else {
            Self { u: b, v: a }
        }
    }

    pub fn u(&self) -> Vertex {
        self.u
    }

    pub fn v(&self) -> Vertex {
        self.v
    }

    pub fn pair(&self) -> [Vertex; 2] {
        [self.u, self.v]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// The matching `(i, j)_d = { (i_l, j_{l+d}) : l in Z_2k }` between blocks
/// `V_i` and `V_j`. Orientation matters: `(i, j)_d` and `(j, i)_{-d}` are the
/// same edge set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matching {
    pub i: usize,
    pub j: usize,
    pub d: usize,
}

impl Matching {
    pub fn new(i: usize, j: usize, d: usize) -> Self {
        Self { i, j, d }
    }

    /// The same edge set seen from the other block.
    pub fn reversed(&self, layout: &Layout) -> Self {
        let m = layout.block_size();
        Self {
            i: self.j,
            j: self.i,
            d: (m - self.d % m) % m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Hamilton,
    C4k,
}

impl FactorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FactorKind::Hamilton => "hamilton",
            FactorKind::C4k => "c4k",
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rotate/reflect a cycle so it starts at its minimum vertex and proceeds
/// toward the smaller of that vertex's two neighbours.
pub fn canonical_cycle(cycle: &[Vertex]) -> Vec<Vertex> {
    let len = cycle.len();
    if len == 0 {
        return Vec::new();
    }
    let start = (0..len).min_by_key(|&p| cycle[p]).unwrap_or(0);
    let next = cycle[(start + 1) % len];
    let prev = cycle[(start + len - 1) % len];
    if next <= prev {
        (0..len).map(|p| cycle[(start + p) % len]).collect()
    } else {
        (0..len).map(|p| cycle[(start + len - p) % len]).collect()
    }
}

/// Edges of a closed vertex sequence.
pub fn cycle_edges(cycle: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    let len = cycle.len();
    (0..len).map(move |p| (cycle[p], cycle[(p + 1) % len]))
}

/// A spanning set of vertex-disjoint cycles, tagged with the kind it
/// claims to be.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoFactor {
    pub kind: FactorKind,
    pub cycles: Vec<Vec<Vertex>>,
}

impl TwoFactor {
    /// Builds a factor with every cycle in canonical form, cycles ordered by
    /// their first vertex.
    pub fn new(kind: FactorKind, cycles: Vec<Vec<Vertex>>) -> Self {
        let mut cycles: Vec<Vec<Vertex>> = cycles.iter().map(|c| canonical_cycle(c)).collect();
        cycles.sort();
        Self { kind, cycles }
    }

    pub fn with_kind(mut self, kind: FactorKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.cycles
            .iter()
            .flat_map(|c| cycle_edges(c).map(|(a, b)| Edge::ordered(a, b)))
            .collect()
    }

    /// Degree-2 spanning check plus cycle lengths for the tagged kind.
    /// `cycle_len` is `4k`; hamilton factors need a single `n`-cycle.
    pub fn is_valid(&self, n: usize, cycle_len: usize) -> bool {
        let mut degree = vec![0usize; n];
        let mut seen = BTreeSet::new();
        for cycle in &self.cycles {
            if cycle.len() < 3 {
                return false;
            }
            for (a, b) in cycle_edges(cycle) {
                if a >= n || b >= n || a == b || !seen.insert(Edge::ordered(a, b)) {
                    return false;
                }
                degree[a] += 1;
                degree[b] += 1;
            }
        }
        if degree.iter().any(|&d| d != 2) {
            return false;
        }
        match self.kind {
            FactorKind::Hamilton => self.cycles.len() == 1 && self.cycles[0].len() == n,
            FactorKind::C4k => self.cycles.iter().all(|c| c.len() == cycle_len),
        }
    }
}

/// A claimed 2-factorization. This is a plain data record: deserialized
/// certificates may violate every invariant, and the verifier is what
/// decides whether they hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub k: Option<usize>,
    pub t: Option<usize>,
    pub r: usize,
    pub s: usize,
    pub factors: Vec<TwoFactor>,
    pub one_factor: Option<Vec<[Vertex; 2]>>,
}

impl Certificate {
    pub fn count(&self, kind: FactorKind) -> usize {
        self.factors.iter().filter(|f| f.kind == kind).count()
    }

    /// Puts hamilton factors first, keeping construction order inside each
    /// kind, and sorts the one-factor.
    pub(crate) fn normalize(mut self) -> Self {
        self.factors.sort_by_key(|f| f.kind);
        if let Some(pairs) = self.one_factor.as_mut() {
            for p in pairs.iter_mut() {
                p.sort();
            }
            pairs.sort();
        }
        self
    }
}

/// A 1-factorization of the super-graph `K_2t` on blocks, with the pairing
/// of consecutive factors into Hamilton cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperPlan {
    pub t: usize,
    /// `factors[x - 1]` is the super 1-factor with index `x`, each block
    /// pair oriented along the traversal that produced it.
    pub factors: Vec<Vec<(usize, usize)>>,
    /// `traversals[i - 1]` is the block sequence of the super Hamilton cycle
    /// made of factors `2i - 1` and `2i`, for `i` in `1..t`.
    pub traversals: Vec<Vec<usize>>,
}

impl SuperPlan {
    /// `t = 1` is the single edge `V_0 V_1`. Otherwise the super-graph is
    /// split with [`classical::walecki_even`], so the first traversal is
    /// `0, 1, ..., 2t-1` and the last factor is `{V_0 V_t} u {V_i V_2t-i}`.
    pub fn new(t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParams("t must be positive".into()));
        }
        if t == 1 {
            return Ok(Self {
                t,
                factors: vec![vec![(0, 1)]],
                traversals: Vec::new(),
            });
        }
        let walecki = classical::walecki_even(t)?;
        let mut factors = Vec::with_capacity(2 * t - 1);
        for cycle in &walecki.cycles {
            let len = cycle.len();
            let step = |p: usize| (cycle[p], cycle[(p + 1) % len]);
            factors.push((0..len).step_by(2).map(step).collect());
            factors.push((1..len).step_by(2).map(step).collect());
        }
        factors.push(walecki.matching.iter().map(|e| (e.u(), e.v())).collect());
        Ok(Self {
            t,
            factors,
            traversals: walecki.cycles,
        })
    }

    /// Super 1-factor `x`, `1 <= x <= 2t - 1`.
    pub fn factor(&self, x: usize) -> Result<&[(usize, usize)]> {
        if x == 0 || x > self.factors.len() {
            return Err(Error::OutOfRange {
                what: "super factor index",
                value: x,
                bound: self.factors.len() + 1,
            });
        }
        Ok(&self.factors[x - 1])
    }

    /// Traversal of the super Hamilton cycle `F_2i-1 u F_2i`, `1 <= i < t`.
    pub fn traversal(&self, i: usize) -> Result<&[usize]> {
        if i == 0 || i > self.traversals.len() {
            return Err(Error::OutOfRange {
                what: "super cycle index",
                value: i,
                bound: self.traversals.len() + 1,
            });
        }
        Ok(&self.traversals[i - 1])
    }
}
