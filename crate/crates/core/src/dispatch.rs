//! Route selection for `(k, t, r)` and the Hamilton-only branch.

use crate::classical;
use crate::constructions::{
    blowup_to_c4k, decompose_blocks, decompose_f1_with_matching, decompose_pair, decompose_triple, greedy_split,
};
use crate::error::{Error, Result};
use crate::model::{Certificate, Edge, FactorKind, Params, SuperPlan, TwoFactor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    Yes,
    /// `n = 8k` with odd `3 <= r <= 2k - 1`: exists, but only through a
    /// construction this crate does not carry.
    Unsupported,
    Invalid,
}

pub fn supported(k: usize, t: usize, r: usize) -> Support {
    let Ok(params) = Params::new(k, t, r) else {
        return Support::Invalid;
    };
    if params.t == 2 && params.k >= 2 && r % 2 == 1 && (3..2 * k).contains(&r) {
        Support::Unsupported
    } else {
        Support::Yes
    }
}

/// The Hamilton count given to the `F_1 u F_2 u F_2t-1 u X` triple when
/// `r >= 2k`: `2k` or `2k + 1` while the remaining pairs can absorb the
/// rest, otherwise `4k - 2` or `4k - 1` (or `r` itself when `t = 2`).
pub fn triple_share(k: usize, t: usize, r: usize) -> usize {
    let parity = r % 2;
    if r <= 2 * k * (t - 1) {
        2 * k + parity
    } else {
        r.min(4 * k - 2 + parity)
    }
}

struct Assembly {
    factors: Vec<TwoFactor>,
    one_factor: Vec<Edge>,
}

impl Assembly {
    fn new() -> Self {
        Self {
            factors: Vec::new(),
            one_factor: Vec::new(),
        }
    }

    fn pairs(&mut self, plan: &SuperPlan, first: usize, total: usize, params: &Params) -> Result<()> {
        let layout = params.layout();
        let slots = plan.t - first;
        let split = greedy_split(total, slots, 2 * params.k)?;
        for (offset, r_i) in split.into_iter().enumerate() {
            self.factors.extend(decompose_pair(plan, first + offset, r_i, &layout)?);
        }
        Ok(())
    }
}

/// Builds a certificate with exactly `r` Hamilton cycles and
/// `(n-2)/2 - r` `C_4k`-factors of `K_n - I`, `n = 4kt`.
pub fn construct_hw(k: usize, t: usize, r: usize) -> Result<Certificate> {
    match supported(k, t, r) {
        Support::Yes => {}
        Support::Unsupported => return Err(Error::Unsupported { k, t, r }),
        Support::Invalid => {
            return Err(Params::new(k, t, r)
                .err()
                .unwrap_or_else(|| Error::InvalidParams(format!("k = {k}, t = {t}, r = {r}"))))
        }
    }
    let params = Params::new(k, t, r)?;
    let layout = params.layout();
    let plan = SuperPlan::new(t)?;
    let mut out = Assembly::new();

    if t == 1 {
        let blocks = decompose_blocks(&plan, 1, false, &layout)?;
        out.factors = blocks
            .factors
            .into_iter()
            .enumerate()
            .map(|(idx, f)| f.with_kind(if idx < r { FactorKind::Hamilton } else { FactorKind::C4k }))
            .collect();
        out.one_factor = blocks.one_factor;
    } else if r >= 2 * k {
        let share = triple_share(k, t, r);
        let triple = decompose_triple(&plan, share, &layout)?;
        out.factors.extend(triple.factors().cloned());
        out.one_factor = triple.one_factor;
        out.pairs(&plan, 2, r - share, &params)?;
    } else if r.is_multiple_of(2) {
        let blocks = decompose_blocks(&plan, 2 * t - 1, false, &layout)?;
        out.factors.extend(blocks.factors);
        out.one_factor = blocks.one_factor;
        out.pairs(&plan, 1, r, &params)?;
    } else {
        let blocks = decompose_blocks(&plan, 2, true, &layout)?;
        out.factors.extend(blocks.factors);
        let f1 = decompose_f1_with_matching(&plan, &blocks.one_factor, &layout)?;
        out.factors.extend(f1.c4k);
        out.factors.push(f1.hamilton);
        out.one_factor = f1.one_factor;
        out.pairs(&plan, 2, r - 1, &params)?;
        out.factors.extend(blowup_to_c4k(&plan, 2 * t - 1, &layout)?);
    }

    let cert = Certificate {
        n: params.n(),
        k: Some(k),
        t: Some(t),
        r,
        s: params.s(),
        factors: out.factors,
        one_factor: Some(out.one_factor.iter().map(Edge::pair).collect()),
    }
    .normalize();
    if cert.count(FactorKind::Hamilton) != r || cert.factors.len() != params.factor_total() {
        return Err(Error::Internal(format!(
            "route for k = {k}, t = {t}, r = {r} produced {} hamilton factors out of {}",
            cert.count(FactorKind::Hamilton),
            cert.factors.len()
        )));
    }
    Ok(cert)
}

/// Hamilton decomposition of `K_n` (odd `n`) or `K_n - I` (even `n`).
pub fn construct_hamilton_only(n: usize) -> Result<Certificate> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("n must be at least 3, got {n}")));
    }
    let (decomposition, one_factor) = if n % 2 == 1 {
        (classical::walecki_odd((n - 1) / 2)?, None)
    } else {
        let d = classical::walecki_even(n / 2)?;
        let pairs = d.matching.iter().map(Edge::pair).collect();
        (d, Some(pairs))
    };
    let factors: Vec<_> = decomposition
        .cycles
        .into_iter()
        .map(|c| TwoFactor::new(FactorKind::Hamilton, vec![c]))
        .collect();
    Ok(Certificate {
        n,
        k: None,
        t: None,
        r: factors.len(),
        s: 0,
        factors,
        one_factor,
    }
    .normalize())
}
