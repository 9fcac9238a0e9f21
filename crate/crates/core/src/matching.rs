//! Block matchings `(i, j)_d` and the two ways of combining them into
//! cycles: chaining one matching per super-edge around a block permutation,
//! and pairing two offsets on a single super-edge.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::model::{Edge, Layout, Matching, Vertex};

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Expands `(i, j)_d` into its `2k` edges, in slot order of block `i`.
pub fn expand_matching(m: Matching, layout: &Layout) -> Result<Vec<Edge>> {
    for block in [m.i, m.j] {
        if block >= layout.blocks() {
            return Err(Error::OutOfRange {
                what: "block",
                value: block,
                bound: layout.blocks(),
            });
        }
    }
    if m.i == m.j {
        return Err(Error::SameBlock(m.i));
    }
    Ok((0..layout.block_size())
        .map(|l| Edge::ordered(layout.at(m.i, l), layout.at(m.j, l + m.d)))
        .collect())
}

/// Splits an edge set in which every touched vertex has degree 2 into its
/// cycles. Each cycle starts at its smallest vertex; cycles come out in
/// order of that vertex.
pub fn trace_cycles(edges: &[Edge]) -> Result<Vec<Vec<Vertex>>> {
    let mut seen = HashSet::with_capacity(edges.len());
    let mut adjacency: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &e in edges {
        if !seen.insert(e) {
            return Err(Error::RepeatedEdge(e));
        }
        adjacency.entry(e.u()).or_default().push(e.v());
        adjacency.entry(e.v()).or_default().push(e.u());
    }
    if let Some((v, nbrs)) = adjacency.iter().find(|(_, nbrs)| nbrs.len() != 2) {
        return Err(Error::Internal(format!(
            "vertex {v} has degree {} in a supposed 2-factor",
            nbrs.len()
        )));
    }

    let mut visited: HashSet<Vertex> = HashSet::with_capacity(adjacency.len());
    let mut cycles = Vec::new();
    for &start in adjacency.keys() {
        if visited.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        visited.insert(start);
        let mut prev = start;
        let mut cur = adjacency[&start][0];
        while cur != start {
            cycle.push(cur);
            visited.insert(cur);
            let nbrs = &adjacency[&cur];
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            prev = cur;
            cur = next;
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// A super-cycle `order` with one matching offset per super-edge:
/// `(order[0], order[1])_{offsets[0]} u ... u (order[2t-1], order[0])_{offsets[2t-1]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub order: Vec<usize>,
    pub offsets: Vec<usize>,
}

impl Chain {
    pub fn new(order: Vec<usize>, offsets: Vec<usize>) -> Self {
        Self { order, offsets }
    }

    /// Sum of offsets reduced modulo `2k`.
    pub fn offset_sum(&self, layout: &Layout) -> usize {
        let m = layout.block_size();
        self.offsets.iter().fold(0, |acc, d| (acc + d) % m)
    }

    /// Number of cycles the chain falls into, `gcd(sum, 2k)`.
    pub fn expected_cycles(&self, layout: &Layout) -> usize {
        gcd(self.offset_sum(layout), layout.block_size())
    }

    pub fn matchings(&self) -> impl Iterator<Item = Matching> + '_ {
        let len = self.order.len();
        (0..len).map(move |x| Matching::new(self.order[x], self.order[(x + 1) % len], self.offsets[x]))
    }

    pub fn edges(&self, layout: &Layout) -> Result<Vec<Edge>> {
        self.validate(layout)?;
        let mut edges = Vec::with_capacity(layout.n());
        for m in self.matchings() {
            edges.extend(expand_matching(m, layout)?);
        }
        Ok(edges)
    }

    fn validate(&self, layout: &Layout) -> Result<()> {
        let blocks = layout.blocks();
        let mut hit = vec![false; blocks];
        if self.order.len() != blocks {
            return Err(Error::NotPermutation(blocks));
        }
        for &b in &self.order {
            if b >= blocks || std::mem::replace(&mut hit[b], true) {
                return Err(Error::NotPermutation(blocks));
            }
        }
        if self.offsets.len() != blocks {
            return Err(Error::InvalidArgument(format!(
                "expected {blocks} offsets, got {}",
                self.offsets.len()
            )));
        }
        Ok(())
    }
}

/// Traverses the union of a chain's matchings into cycles. With
/// `g = gcd(sum of offsets, 2k)` the result is `g` cycles of length
/// `2t * 2k / g`; `g = 1` gives a Hamilton cycle of `K_n`.
pub fn chain_two_factor(chain: &Chain, layout: &Layout) -> Result<Vec<Vec<Vertex>>> {
    trace_cycles(&chain.edges(layout)?)
}

/// The single `4k`-cycle `(i, j)_{d1} u (i, j)_{d2}` on `V_i u V_j`, in the
/// traversal order `i_0, j_{d1}, i_{d1-d2}, j_{2d1-d2}, ...`.
pub fn bipartite_c4k(i: usize, j: usize, d1: usize, d2: usize, layout: &Layout) -> Result<Vec<Vertex>> {
    let m = layout.block_size();
    for block in [i, j] {
        if block >= layout.blocks() {
            return Err(Error::OutOfRange {
                what: "block",
                value: block,
                bound: layout.blocks(),
            });
        }
    }
    if i == j {
        return Err(Error::SameBlock(i));
    }
    let (d1, d2) = (d1 % m, d2 % m);
    let difference = (d1 + m - d2) % m;
    if gcd(difference, m) != 1 {
        return Err(Error::NotCoprime { difference, modulus: m });
    }
    let mut cycle = Vec::with_capacity(2 * m);
    let mut slot = 0;
    for _ in 0..m {
        cycle.push(layout.at(i, slot));
        cycle.push(layout.at(j, slot + d1));
        slot = (slot + difference) % m;
    }
    Ok(cycle)
}
