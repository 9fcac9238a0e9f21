//! Decompositions of the blown-up super factors.
//!
//! Notation: `F_x` is the blow-up of super 1-factor `x` (all `(2k)^2` edges
//! between each paired block couple), `X` is the union of the complete
//! graphs inside the blocks. Along a super Hamilton cycle `W_0 .. W_2t-1`,
//! `H_l` is the chain with offsets `l, -l, l, -l, ...`; the `2k` families
//! `H_0 .. H_2k-1` partition `F_2i-1 u F_2i`.

use crate::classical::{self, endpoint_aligned_order, leftover_aligned_order};
use crate::error::{Error, Result};
use crate::matching::{bipartite_c4k, chain_two_factor, expand_matching, gcd, trace_cycles, Chain};
use crate::model::{cycle_edges, Edge, FactorKind, Layout, Matching, SuperPlan, TwoFactor};

/// `H_l` along a super Hamilton cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HFamily {
    pub super_cycle: Vec<usize>,
    pub l: usize,
}

impl HFamily {
    pub fn new(super_cycle: &[usize], l: usize) -> Self {
        Self {
            super_cycle: super_cycle.to_vec(),
            l,
        }
    }

    pub fn offsets(&self, layout: &Layout) -> Vec<usize> {
        let m = layout.block_size();
        let l = self.l % m;
        (0..self.super_cycle.len())
            .map(|p| if p % 2 == 0 { l } else { (m - l) % m })
            .collect()
    }

    pub fn chain(&self, layout: &Layout) -> Chain {
        Chain::new(self.super_cycle.clone(), self.offsets(layout))
    }
}

/// Builds a Hamilton factor from a chain, refusing chains whose offset sum
/// is not a unit modulo `2k`.
pub(crate) fn hamilton_from_chain(chain: &Chain, layout: &Layout) -> Result<TwoFactor> {
    let m = layout.block_size();
    let sum = chain.offset_sum(layout);
    if gcd(sum, m) != 1 {
        return Err(Error::NotCoprime {
            difference: sum,
            modulus: m,
        });
    }
    let cycles = chain_two_factor(chain, layout)?;
    if cycles.len() != 1 || cycles[0].len() != layout.n() {
        return Err(Error::Internal(format!(
            "chain with offset sum {sum} did not close into a Hamilton cycle"
        )));
    }
    Ok(TwoFactor::new(FactorKind::Hamilton, cycles))
}

/// One `4k`-cycle per listed super-edge, pairing offsets `d` and `d + 1`
/// (or any coprime pair) on each.
fn c4k_factor(parts: &[(usize, usize, usize, usize)], layout: &Layout) -> Result<TwoFactor> {
    let cycles = parts
        .iter()
        .map(|&(i, j, d1, d2)| bipartite_c4k(i, j, d1, d2, layout))
        .collect::<Result<Vec<_>>>()?;
    Ok(TwoFactor::new(FactorKind::C4k, cycles))
}

/// Splits `H_2l u H_2l+1` along `super_cycle` into two Hamilton cycles or
/// two `C_4k`-factors.
fn split_h_pair(super_cycle: &[usize], l: usize, hamilton: bool, layout: &Layout) -> Result<[TwoFactor; 2]> {
    let m = layout.block_size();
    let len = super_cycle.len();
    let (lo, hi) = (2 * l, 2 * l + 1);
    let neg = |d: usize| (m - d % m) % m;
    if hamilton {
        // Swap the closing matchings of H_2l and H_2l+1; offset sums become
        // -1 and +1.
        let mut first = HFamily::new(super_cycle, lo).offsets(layout);
        let mut second = HFamily::new(super_cycle, hi).offsets(layout);
        first[len - 1] = neg(hi);
        second[len - 1] = neg(lo);
        Ok([
            hamilton_from_chain(&Chain::new(super_cycle.to_vec(), first), layout)?,
            hamilton_from_chain(&Chain::new(super_cycle.to_vec(), second), layout)?,
        ])
    } else {
        let edge = |p: usize| (super_cycle[p], super_cycle[(p + 1) % len]);
        let even: Vec<_> = (0..len)
            .step_by(2)
            .map(|p| {
                let (a, b) = edge(p);
                (a, b, lo, hi)
            })
            .collect();
        let odd: Vec<_> = (1..len)
            .step_by(2)
            .map(|p| {
                let (a, b) = edge(p);
                (a, b, neg(lo), neg(hi))
            })
            .collect();
        Ok([c4k_factor(&even, layout)?, c4k_factor(&odd, layout)?])
    }
}

/// Decomposes `F_2i-1 u F_2i` into `r_i` Hamilton cycles and `2k - r_i`
/// `C_4k`-factors (`r_i` even). Hamilton factors come first.
pub fn decompose_pair(plan: &SuperPlan, i: usize, r_i: usize, layout: &Layout) -> Result<Vec<TwoFactor>> {
    let super_cycle = plan.traversal(i)?;
    let k = layout.k;
    if !r_i.is_multiple_of(2) || r_i > 2 * k {
        return Err(Error::InvalidArgument(format!(
            "hamilton count per pair must be even and at most {}, got {r_i}",
            2 * k
        )));
    }
    let mut factors = Vec::with_capacity(2 * k);
    for l in 0..k {
        factors.extend(split_h_pair(super_cycle, l, l < r_i / 2, layout)?);
    }
    Ok(factors)
}

/// Output of [`decompose_blocks`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub factors: Vec<TwoFactor>,
    pub one_factor: Vec<Edge>,
}

/// Decomposes `F_x u X`, which is `t` disjoint copies of `K_4k`, into
/// `2k - 1` `C_4k`-factors and a 1-factor. With `designated_leftover` the
/// 1-factor is `(i, j)_0` on every super-edge `V_i V_j` of factor `x`.
pub fn decompose_blocks(
    plan: &SuperPlan,
    x: usize,
    designated_leftover: bool,
    layout: &Layout,
) -> Result<BlockDecomposition> {
    let pairs = plan.factor(x)?;
    let base = classical::walecki_even(2 * layout.k)?;
    let mut cycles_by_index = vec![Vec::with_capacity(pairs.len()); base.cycles.len()];
    let mut one_factor = Vec::with_capacity(layout.n() / 2);
    for &(i, j) in pairs {
        let order = if designated_leftover {
            leftover_aligned_order(layout, i, j)?
        } else {
            endpoint_aligned_order(layout, i, j)?
        };
        let local = classical::relabel(&base, &order)?;
        for (h, cycle) in local.cycles.into_iter().enumerate() {
            cycles_by_index[h].push(cycle);
        }
        one_factor.extend(local.matching);
    }
    one_factor.sort();
    Ok(BlockDecomposition {
        factors: cycles_by_index
            .into_iter()
            .map(|cycles| TwoFactor::new(FactorKind::C4k, cycles))
            .collect(),
        one_factor,
    })
}

/// The matching `(1,2)_0 u (3,4)_0 u ... u (2t-1,0)_0` that
/// [`decompose_f1_with_matching`] expects.
pub fn second_factor_leftover(plan: &SuperPlan, layout: &Layout) -> Result<Vec<Edge>> {
    let mut edges = Vec::with_capacity(layout.n() / 2);
    for &(i, j) in plan.factor(2)? {
        edges.extend(expand_matching(Matching::new(i, j, 0), layout)?);
    }
    edges.sort();
    Ok(edges)
}

/// Output of [`decompose_f1_with_matching`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F1Decomposition {
    pub c4k: Vec<TwoFactor>,
    pub hamilton: TwoFactor,
    pub one_factor: Vec<Edge>,
}

/// Decomposes `F_1 u I'` into `k - 1` `C_4k`-factors
/// `C_i = u_j (2j,2j+1)_{2i-1} u (2j,2j+1)_{2i}`, the Hamilton cycle
/// `(0,1)_{2k-1} u (1,2)_0 u (2,3)_0 u ... u (2t-1,0)_0` and the 1-factor
/// `(0,1)_0 u (2,3)_{2k-1} u ... u (2t-2,2t-1)_{2k-1}`.
pub fn decompose_f1_with_matching(plan: &SuperPlan, i_prime: &[Edge], layout: &Layout) -> Result<F1Decomposition> {
    if plan.t < 2 {
        return Err(Error::InvalidArgument("decompose_f1_with_matching needs t >= 2".into()));
    }
    let mut given = i_prime.to_vec();
    given.sort();
    if given != second_factor_leftover(plan, layout)? {
        return Err(Error::InvalidArgument(
            "1-factor is not (1,2)_0 u (3,4)_0 u ... u (2t-1,0)_0".into(),
        ));
    }
    let m = layout.block_size();
    let f1 = plan.factor(1)?;

    let c4k = (1..layout.k)
        .map(|i| {
            let parts: Vec<_> = f1.iter().map(|&(a, b)| (a, b, 2 * i - 1, 2 * i)).collect();
            c4k_factor(&parts, layout)
        })
        .collect::<Result<Vec<_>>>()?;

    let super_cycle = plan.traversal(1)?;
    let mut offsets = vec![0; super_cycle.len()];
    offsets[0] = m - 1;
    let hamilton = hamilton_from_chain(&Chain::new(super_cycle.to_vec(), offsets), layout)?;

    let mut one_factor = Vec::with_capacity(layout.n() / 2);
    for (idx, &(a, b)) in f1.iter().enumerate() {
        let d = if idx == 0 { 0 } else { m - 1 };
        one_factor.extend(expand_matching(Matching::new(a, b, d), layout)?);
    }
    one_factor.sort();
    Ok(F1Decomposition {
        c4k,
        hamilton,
        one_factor,
    })
}

/// Decomposes `F_x` alone into `k` `C_4k`-factors; factor `d` pairs offsets
/// `2d` and `2d + 1` on every super-edge of factor `x`.
pub fn blowup_to_c4k(plan: &SuperPlan, x: usize, layout: &Layout) -> Result<Vec<TwoFactor>> {
    let pairs = plan.factor(x)?;
    (0..layout.k)
        .map(|d| {
            let parts: Vec<_> = pairs.iter().map(|&(a, b)| (a, b, 2 * d, 2 * d + 1)).collect();
            c4k_factor(&parts, layout)
        })
        .collect()
}

/// Output of [`decompose_triple`], kept in its construction stages so the
/// individual pieces can be inspected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleDecomposition {
    /// `HC_0 .. HC_2k-1`: slot-aligned Hamilton paths of `F_2t-1 u X` glued
    /// with `(0,1)_0 u (2,3)_0 u ...`.
    pub glued: Vec<TwoFactor>,
    /// Either the Hamilton cycle `HC_2k` (odd `r_1`) or the `C_4k`-factor
    /// `C` (even `r_1`) spent from `H_1` and the rest of `H_0`.
    pub bridge: TwoFactor,
    /// Factors from `H_2l u H_2l+1`, `l = 1 .. k-1`.
    pub pairs: Vec<TwoFactor>,
    pub one_factor: Vec<Edge>,
}

impl TripleDecomposition {
    pub fn factors(&self) -> impl Iterator<Item = &TwoFactor> {
        self.glued
            .iter()
            .chain(std::iter::once(&self.bridge))
            .chain(&self.pairs)
    }
}

/// Decomposes `F_1 u F_2 u F_2t-1 u X` into `r_1` Hamilton cycles,
/// `4k - 1 - r_1` `C_4k`-factors and a 1-factor, `2k <= r_1 <= 4k - 1`.
pub fn decompose_triple(plan: &SuperPlan, r_1: usize, layout: &Layout) -> Result<TripleDecomposition> {
    let k = layout.k;
    let t = plan.t;
    if t < 2 {
        return Err(Error::InvalidArgument("decompose_triple needs t >= 2".into()));
    }
    if !(2 * k..4 * k).contains(&r_1) {
        return Err(Error::InvalidArgument(format!(
            "r_1 must lie in {}..={}, got {r_1}",
            2 * k,
            4 * k - 1
        )));
    }
    let m = layout.block_size();
    let n = layout.n();

    // Hamilton paths inside each K_4k of F_2t-1 u X, path l running from
    // slot l of one block to slot l of its partner.
    let paths = classical::ham_path_decomp(m)?;
    let mut by_slot: Vec<Vec<Edge>> = vec![Vec::with_capacity(n); m];
    for &(a, b) in plan.factor(2 * t - 1)? {
        let local = classical::relabel(&paths, &endpoint_aligned_order(layout, a, b)?)?;
        for (l, path) in local.paths.iter().enumerate() {
            by_slot[l].extend(path.windows(2).map(|w| Edge::ordered(w[0], w[1])));
        }
    }
    let glue = plan.factor(1)?;
    let mut glued = Vec::with_capacity(m);
    for (l, mut edges) in by_slot.into_iter().enumerate() {
        edges.extend(
            glue.iter()
                .map(|&(a, b)| Edge::ordered(layout.at(a, l), layout.at(b, l))),
        );
        let cycles = trace_cycles(&edges)?;
        if cycles.len() != 1 || cycles[0].len() != n {
            return Err(Error::Internal(format!(
                "glued paths for slot {l} form {} cycles, not one Hamilton cycle",
                cycles.len()
            )));
        }
        glued.push(TwoFactor::new(FactorKind::Hamilton, cycles));
    }

    let super_cycle = plan.traversal(1)?;
    let len = super_cycle.len();
    let edge = |p: usize| (super_cycle[p], super_cycle[(p + 1) % len]);
    let mut one_factor = Vec::with_capacity(n / 2);
    let bridge = if r_1 % 2 == 1 {
        // HC_2k = H_1 u (2t-1,0)_0 - (2t-1,0)_{2k-1}
        let mut offsets = HFamily::new(super_cycle, 1).offsets(layout);
        offsets[len - 1] = 0;
        let hc = hamilton_from_chain(&Chain::new(super_cycle.to_vec(), offsets), layout)?;
        for p in (1..len).step_by(2) {
            let (a, b) = edge(p);
            let d = if p == len - 1 { m - 1 } else { 0 };
            one_factor.extend(expand_matching(Matching::new(a, b, d), layout)?);
        }
        hc
    } else {
        let parts: Vec<_> = (1..len)
            .step_by(2)
            .map(|p| {
                let (a, b) = edge(p);
                (a, b, 0, m - 1)
            })
            .collect();
        for p in (0..len).step_by(2) {
            let (a, b) = edge(p);
            one_factor.extend(expand_matching(Matching::new(a, b, 1), layout)?);
        }
        c4k_factor(&parts, layout)?
    };
    one_factor.sort();

    let hamilton_pairs = (r_1 - 2 * k - r_1 % 2) / 2;
    let mut pairs = Vec::with_capacity(2 * (k - 1));
    for l in 1..k {
        pairs.extend(split_h_pair(super_cycle, l, l <= hamilton_pairs, layout)?);
    }

    Ok(TripleDecomposition {
        glued,
        bridge,
        pairs,
        one_factor,
    })
}

/// Fills slots up to `cap` in order: `total = 7, slots = 3, cap = 4` gives
/// `[4, 3, 0]`.
pub fn greedy_split(total: usize, slots: usize, cap: usize) -> Result<Vec<usize>> {
    if total > slots * cap {
        return Err(Error::InvalidArgument(format!(
            "cannot place {total} into {slots} slots of capacity {cap}"
        )));
    }
    let mut left = total;
    Ok((0..slots)
        .map(|_| {
            let take = left.min(cap);
            left -= take;
            take
        })
        .collect())
}

/// Edges of the blow-up of super factor `x` (every offset on every pair).
pub fn blowup_edges(plan: &SuperPlan, x: usize, layout: &Layout) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    for &(a, b) in plan.factor(x)? {
        for d in 0..layout.block_size() {
            edges.extend(expand_matching(Matching::new(a, b, d), layout)?);
        }
    }
    Ok(edges)
}

/// Edges inside the blocks, `X`.
pub fn block_edges(layout: &Layout) -> Vec<Edge> {
    let m = layout.block_size();
    let mut edges = Vec::new();
    for block in 0..layout.blocks() {
        for a in 0..m {
            for b in a + 1..m {
                edges.push(Edge::ordered(layout.at(block, a), layout.at(block, b)));
            }
        }
    }
    edges
}

/// All edges of a list of factors.
pub fn factor_edges<'a>(factors: impl IntoIterator<Item = &'a TwoFactor>) -> Vec<Edge> {
    factors
        .into_iter()
        .flat_map(|f| f.cycles.iter())
        .flat_map(|c| cycle_edges(c).map(|(a, b)| Edge::ordered(a, b)))
        .collect()
}
