//! Exhaustive search for small 2-factorizations, independent of every
//! construction in this crate. Used to cross-check existence at tiny `n`.
//!
//! For even `n` the removed 1-factor is fixed to `{0,1}, {2,3}, ...`; all
//! choices are equivalent under relabeling. Factor order is pruned by
//! requiring each new factor to contain the smallest edge not yet used.

use crate::error::{Error, Result};
use crate::model::{canonical_cycle, Certificate, FactorKind, TwoFactor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest order accepted.
    pub max_n: usize,
    /// Node expansions before giving up.
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_n: 8,
            max_nodes: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub n: usize,
    pub cycle_len: usize,
    pub hamilton: Vec<Vec<usize>>,
    pub cycle_factors: Vec<Vec<Vec<usize>>>,
    pub one_factor: Option<Vec<[usize; 2]>>,
}

impl Witness {
    /// Certificate form, available when the cycle length is a multiple of 4
    /// dividing `n`, or when there are no cycle factors at all.
    pub fn into_certificate(self) -> Option<Certificate> {
        let (k, t) = if self.cycle_len.is_multiple_of(4) && self.n.is_multiple_of(self.cycle_len) {
            (Some(self.cycle_len / 4), Some(self.n / self.cycle_len))
        } else if self.cycle_factors.is_empty() {
            (None, None)
        } else {
            return None;
        };
        let r = self.hamilton.len();
        let s = self.cycle_factors.len();
        let mut factors: Vec<_> = self
            .hamilton
            .into_iter()
            .map(|c| TwoFactor::new(FactorKind::Hamilton, vec![c]))
            .collect();
        factors.extend(
            self.cycle_factors
                .into_iter()
                .map(|cycles| TwoFactor::new(FactorKind::C4k, cycles)),
        );
        Some(Certificate {
            n: self.n,
            k,
            t,
            r,
            s,
            factors,
            one_factor: self.one_factor,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Exists(Witness),
    DoesNotExist,
    Undecided { nodes: u64 },
}

struct OutOfBudget;

struct Search {
    n: usize,
    full: u64,
    nodes: u64,
    max_nodes: u64,
}

impl Search {
    fn tick(&mut self) -> std::result::Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    /// All 2-factors of `adj` containing edge `u -> v` whose cycles all have
    /// length `len`.
    fn factors_through(
        &mut self,
        adj: &[u64],
        u: usize,
        v: usize,
        len: usize,
    ) -> std::result::Result<Vec<Vec<Vec<usize>>>, OutOfBudget> {
        let mut walk = Walk {
            adj,
            len,
            covered: (1 << u) | (1 << v),
            cycles: Vec::new(),
            out: Vec::new(),
        };
        let mut path = vec![u, v];
        walk.extend(self, &mut path)?;
        Ok(walk.out)
    }

    fn solve(
        &mut self,
        adj: &mut Vec<u64>,
        hamilton_left: usize,
        cycle_left: usize,
        cycle_len: usize,
        chosen: &mut Vec<(FactorKind, Vec<Vec<usize>>)>,
    ) -> std::result::Result<bool, OutOfBudget> {
        let Some(u) = (0..self.n).find(|&x| adj[x] != 0) else {
            return Ok(hamilton_left == 0 && cycle_left == 0);
        };
        let v = adj[u].trailing_zeros() as usize;
        let mut options = Vec::with_capacity(2);
        if hamilton_left > 0 {
            options.push((FactorKind::Hamilton, self.n));
        }
        if cycle_left > 0 {
            options.push((FactorKind::C4k, cycle_len));
        }
        for (kind, len) in options {
            for factor in self.factors_through(adj, u, v, len)? {
                toggle(adj, &factor);
                chosen.push((kind, factor));
                let (h, c) = match kind {
                    FactorKind::Hamilton => (hamilton_left - 1, cycle_left),
                    FactorKind::C4k => (hamilton_left, cycle_left - 1),
                };
                if self.solve(adj, h, c, cycle_len, chosen)? {
                    return Ok(true);
                }
                let (_, factor) = chosen.pop().expect("pushed above");
                toggle(adj, &factor);
            }
        }
        Ok(false)
    }
}

struct Walk<'a> {
    adj: &'a [u64],
    len: usize,
    covered: u64,
    cycles: Vec<Vec<usize>>,
    out: Vec<Vec<Vec<usize>>>,
}

impl Walk<'_> {
    fn extend(&mut self, search: &mut Search, path: &mut Vec<usize>) -> std::result::Result<(), OutOfBudget> {
        search.tick()?;
        let last = *path.last().expect("non-empty path");
        if path.len() == self.len {
            let first = path[0];
            // Later cycles are found in both directions; keep one.
            let oriented = self.cycles.is_empty() || path[1] < last;
            if self.adj[last] & (1 << first) != 0 && oriented {
                self.cycles.push(path.clone());
                self.next_cycle(search)?;
                self.cycles.pop();
            }
            return Ok(());
        }
        let mut options = self.adj[last] & !self.covered;
        while options != 0 {
            let w = options.trailing_zeros() as usize;
            options &= options - 1;
            self.covered |= 1 << w;
            path.push(w);
            self.extend(search, path)?;
            path.pop();
            self.covered &= !(1 << w);
        }
        Ok(())
    }

    fn next_cycle(&mut self, search: &mut Search) -> std::result::Result<(), OutOfBudget> {
        if self.covered == search.full {
            self.out.push(self.cycles.clone());
            return Ok(());
        }
        let start = (!self.covered).trailing_zeros() as usize;
        self.covered |= 1 << start;
        let mut path = vec![start];
        let result = self.extend(search, &mut path);
        self.covered &= !(1 << start);
        result
    }
}

fn toggle(adj: &mut [u64], factor: &[Vec<usize>]) {
    for cycle in factor {
        let len = cycle.len();
        for p in 0..len {
            let (a, b) = (cycle[p], cycle[(p + 1) % len]);
            adj[a] ^= 1 << b;
            adj[b] ^= 1 << a;
        }
    }
}

/// Decides by exhaustive search whether `K_n` (minus a 1-factor when `n` is
/// even) splits into `r` Hamilton cycles and `s` factors whose cycles all
/// have length `cycle_len`.
pub fn exhaustive_hw(n: usize, r: usize, s: usize, cycle_len: usize, limits: SearchLimits) -> Result<SearchOutcome> {
    if n > limits.max_n || n > 64 {
        return Err(Error::InvalidArgument(format!(
            "exhaustive search is limited to n <= {}, got {n}",
            limits.max_n.min(64)
        )));
    }
    if n < 3 || r + s != (n - 1) / 2 {
        return Ok(SearchOutcome::DoesNotExist);
    }
    if s > 0 && (cycle_len < 3 || !n.is_multiple_of(cycle_len)) {
        return Ok(SearchOutcome::DoesNotExist);
    }

    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut adj: Vec<u64> = (0..n).map(|v| full & !(1 << v)).collect();
    let one_factor = n
        .is_multiple_of(2)
        .then(|| (0..n / 2).map(|i| [2 * i, 2 * i + 1]).collect::<Vec<_>>());
    for &[a, b] in one_factor.iter().flatten() {
        adj[a] &= !(1 << b);
        adj[b] &= !(1 << a);
    }

    let mut search = Search {
        n,
        full,
        nodes: 0,
        max_nodes: limits.max_nodes,
    };
    let mut chosen = Vec::new();
    match search.solve(&mut adj, r, s, cycle_len, &mut chosen) {
        Err(OutOfBudget) => Ok(SearchOutcome::Undecided { nodes: search.nodes }),
        Ok(false) => Ok(SearchOutcome::DoesNotExist),
        Ok(true) => {
            let mut hamilton = Vec::new();
            let mut cycle_factors = Vec::new();
            for (kind, cycles) in chosen {
                match kind {
                    FactorKind::Hamilton => hamilton.push(canonical_cycle(&cycles[0])),
                    FactorKind::C4k => cycle_factors.push(cycles),
                }
            }
            Ok(SearchOutcome::Exists(Witness {
                n,
                cycle_len,
                hamilton,
                cycle_factors,
                one_factor,
            }))
        }
    }
}
