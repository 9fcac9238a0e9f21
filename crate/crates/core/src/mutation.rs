//! Deliberate certificate corruptions, for checking that the verifier
//! rejects what it should.

use crate::model::{Certificate, FactorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    DropEdge,
    DuplicateEdge,
    SwapKind,
    SpliceCycles,
    RemoveCycle,
    CorruptHeader,
}

impl Mutation {
    pub const ALL: [Mutation; 6] = [
        Mutation::DropEdge,
        Mutation::DuplicateEdge,
        Mutation::SwapKind,
        Mutation::SpliceCycles,
        Mutation::RemoveCycle,
        Mutation::CorruptHeader,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mutation::DropEdge => "drop edge",
            Mutation::DuplicateEdge => "duplicate edge",
            Mutation::SwapKind => "swap kind tag",
            Mutation::SpliceCycles => "splice cycles",
            Mutation::RemoveCycle => "remove cycle",
            Mutation::CorruptHeader => "corrupt header",
        }
    }
}

/// Applies `mutation` at a position chosen by `seed`. Returns `None` when the
/// certificate has nothing the mutation could act on.
pub fn mutate(cert: &Certificate, mutation: Mutation, seed: u64) -> Option<Certificate> {
    let mut out = cert.clone();
    let pick = |len: usize| (seed % len as u64) as usize;
    if out.factors.is_empty() || out.factors.iter().any(|f| f.cycles.iter().any(Vec::is_empty)) {
        return None;
    }
    let f = pick(out.factors.len());
    match mutation {
        Mutation::DropEdge => match out.one_factor.as_mut() {
            Some(pairs) if !pairs.is_empty() => {
                pairs.remove(pick(pairs.len()));
            }
            _ => {
                // Dropping a vertex from a cycle removes its two edges.
                let cycle = &mut out.factors[f].cycles[0];
                cycle.remove(pick(cycle.len()));
            }
        },
        Mutation::DuplicateEdge => {
            let cycle = &out.factors[f].cycles[0];
            let p = pick(cycle.len());
            let edge = [cycle[p], cycle[(p + 1) % cycle.len()]];
            out.one_factor.get_or_insert_with(Vec::new).push(edge);
        }
        Mutation::SwapKind => {
            let factor = &mut out.factors[f];
            factor.kind = match factor.kind {
                FactorKind::Hamilton => FactorKind::C4k,
                FactorKind::C4k => FactorKind::Hamilton,
            };
        }
        Mutation::SpliceCycles => {
            if let Some(idx) = (0..out.factors.len())
                .map(|d| (f + d) % out.factors.len())
                .find(|&i| out.factors[i].cycles.len() >= 2)
            {
                let cycles = &mut out.factors[idx].cycles;
                let second = cycles.remove(1);
                cycles[0].extend(second);
            } else {
                // Swap one vertex between two spanning factors: each ends
                // up with a repeated vertex.
                if out.factors.len() < 2 {
                    // Lone factor: cut its cycle in two instead.
                    let cycle = &mut out.factors[0].cycles[0];
                    let tail = cycle.split_off(cycle.len() / 2);
                    out.factors[0].cycles.push(tail);
                    return Some(out);
                }
                let g = (f + 1) % out.factors.len();
                let a = out.factors[f].cycles[0].clone();
                let b = out.factors[g].cycles[0].clone();
                let (p, q) = (0..a.len())
                    .flat_map(|p| (0..b.len()).map(move |q| (p, q)))
                    .find(|&(p, q)| a[p] != b[q])?;
                out.factors[f].cycles[0][p] = b[q];
                out.factors[g].cycles[0][q] = a[p];
            }
        }
        Mutation::RemoveCycle => {
            let cycles = &mut out.factors[f].cycles;
            cycles.remove(pick(cycles.len()));
        }
        Mutation::CorruptHeader => {
            out.r += 1;
            out.s = out.s.saturating_sub(1);
        }
    }
    Some(out)
}
