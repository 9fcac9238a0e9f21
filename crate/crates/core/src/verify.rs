//! Certificate checking. Nothing here calls into the construction modules;
//! edges are re-derived from the raw vertex sequences and every check runs
//! to completion.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::model::{Certificate, FactorKind};

/// Failure lists are capped at this many messages per check.
const MAX_MESSAGES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Header,
    Spanning,
    Hamilton,
    CycleLength,
    OneFactor,
    EdgePartition,
    Counts,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Header,
        Check::Spanning,
        Check::Hamilton,
        Check::CycleLength,
        Check::OneFactor,
        Check::EdgePartition,
        Check::Counts,
    ];

    pub fn number(&self) -> usize {
        *self as usize + 1
    }

    pub fn name(&self) -> &'static str {
        match self {
            Check::Header => "header consistency",
            Check::Spanning => "factors spanning, all degrees 2",
            Check::Hamilton => "hamilton factors are single n-cycles",
            Check::CycleLength => "c4k components have length 4k",
            Check::OneFactor => "one-factor is a perfect matching",
            Check::EdgePartition => "edges partition E(K_n)",
            Check::Counts => "factor counts match header",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub check: Check,
    pub failures: Vec<String>,
    /// Failures beyond the message cap.
    pub suppressed: usize,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn failed_checks(&self) -> Vec<Check> {
        self.results.iter().filter(|r| !r.passed()).map(|r| r.check).collect()
    }

    pub fn result(&self, check: Check) -> &CheckResult {
        &self.results[check as usize]
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let status = if r.passed() { "pass" } else { "FAIL" };
            writeln!(f, "[{status}] check {}: {}", r.check.number(), r.check.name())?;
            for msg in &r.failures {
                writeln!(f, "       - {msg}")?;
            }
            if r.suppressed > 0 {
                writeln!(f, "       - ... and {} more", r.suppressed)?;
            }
        }
        Ok(())
    }
}

struct Collector {
    check: Check,
    failures: Vec<String>,
    suppressed: usize,
}

impl Collector {
    fn new(check: Check) -> Self {
        Self {
            check,
            failures: Vec::new(),
            suppressed: 0,
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        if self.failures.len() < MAX_MESSAGES {
            self.failures.push(msg.into());
        } else {
            self.suppressed += 1;
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            check: self.check,
            failures: self.failures,
            suppressed: self.suppressed,
        }
    }
}

/// A vertex whose degree is not 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeViolation {
    pub vertex: usize,
    pub degree: usize,
}

impl fmt::Display for DegreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertex {} has degree {}", self.vertex, self.degree)
    }
}

/// Sorted lengths of the cycles of a 2-regular edge list. Parallel edges
/// count separately (two copies of one edge form a 2-cycle).
pub fn component_cycle_lengths(edges: &[(usize, usize)]) -> Result<Vec<usize>, DegreeViolation> {
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    if let Some((&vertex, nbrs)) = adjacency.iter().find(|(_, nbrs)| nbrs.len() != 2) {
        return Err(DegreeViolation {
            vertex,
            degree: nbrs.len(),
        });
    }
    let mut seen = HashSet::new();
    let mut lengths = Vec::new();
    for &root in adjacency.keys() {
        if !seen.insert(root) {
            continue;
        }
        let mut size = 1;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adjacency[&v] {
                if seen.insert(w) {
                    size += 1;
                    stack.push(w);
                }
            }
        }
        lengths.push(size);
    }
    lengths.sort_unstable();
    Ok(lengths)
}

fn closed_walk_edges(cycle: &[usize]) -> Vec<(usize, usize)> {
    let len = cycle.len();
    if len < 2 {
        return Vec::new();
    }
    (0..len).map(|p| (cycle[p], cycle[(p + 1) % len])).collect()
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn verify_certificate(cert: &Certificate) -> Report {
    let n = cert.n;
    let mut results = Vec::with_capacity(7);

    // 1. header
    let mut header = Collector::new(Check::Header);
    if n < 3 {
        header.fail(format!("n = {n} is below 3"));
    }
    let expected_total = n.saturating_sub(1) / 2;
    if cert.r.checked_add(cert.s) != Some(expected_total) {
        header.fail(format!(
            "r + s = {} + {} but n = {n} needs {expected_total} factors",
            cert.r, cert.s
        ));
    }
    match (cert.k, cert.t) {
        (Some(k), Some(t)) => {
            if k == 0 || t == 0 {
                header.fail(format!("k = {k} and t = {t} must be positive"));
            } else if k.checked_mul(t).and_then(|kt| kt.checked_mul(4)) != Some(n) {
                header.fail(format!("n = {n} is not 4kt = 4*{k}*{t}"));
            }
        }
        (None, None) => {
            if cert.s != 0 {
                header.fail("s > 0 requires k and t in the header");
            }
        }
        _ => header.fail("k and t must be given together"),
    }
    results.push(header.finish());

    // 2. spanning, degree 2
    let mut spanning = Collector::new(Check::Spanning);
    let factor_edges: Vec<Vec<(usize, usize)>> = cert
        .factors
        .iter()
        .map(|f| f.cycles.iter().flat_map(|c| closed_walk_edges(c)).collect())
        .collect();
    for (idx, factor) in cert.factors.iter().enumerate() {
        let mut covered = HashSet::new();
        for cycle in &factor.cycles {
            if cycle.len() < 3 {
                spanning.fail(format!("factor {idx}: cycle of length {} is too short", cycle.len()));
            }
            for &v in cycle {
                if v >= n {
                    spanning.fail(format!("factor {idx}: vertex {v} out of range"));
                } else if !covered.insert(v) {
                    spanning.fail(format!("factor {idx}: vertex {v} visited twice"));
                }
            }
        }
        if covered.len() != n {
            spanning.fail(format!("factor {idx}: covers {} of {n} vertices", covered.len()));
        }
        let mut degree: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in &factor_edges[idx] {
            *degree.entry(a).or_default() += 1;
            *degree.entry(b).or_default() += 1;
        }
        let mut bad: Vec<_> = degree.into_iter().filter(|&(_, d)| d != 2).collect();
        bad.sort_unstable();
        if let Some(&(v, d)) = bad.first() {
            spanning.fail(format!("factor {idx}: vertex {v} has degree {d}"));
        }
    }
    results.push(spanning.finish());

    // 3. hamilton factors
    let mut hamilton = Collector::new(Check::Hamilton);
    for (idx, factor) in cert.factors.iter().enumerate() {
        if factor.kind != FactorKind::Hamilton {
            continue;
        }
        match component_cycle_lengths(&factor_edges[idx]) {
            Ok(lengths) if lengths == [n] => {}
            Ok(lengths) => hamilton.fail(format!("factor {idx}: component lengths {lengths:?}, expected [{n}]")),
            Err(e) => hamilton.fail(format!("factor {idx}: {e}")),
        }
    }
    results.push(hamilton.finish());

    // 4. c4k factors
    let mut lengths_check = Collector::new(Check::CycleLength);
    let has_c4k = cert.factors.iter().any(|f| f.kind == FactorKind::C4k);
    match cert.k {
        None if has_c4k => lengths_check.fail("c4k factors present but k is not given"),
        None => {}
        Some(k) => {
            let want = k.saturating_mul(4);
            for (idx, factor) in cert.factors.iter().enumerate() {
                if factor.kind != FactorKind::C4k {
                    continue;
                }
                match component_cycle_lengths(&factor_edges[idx]) {
                    Ok(lengths) if lengths.iter().all(|&l| l == want) => {}
                    Ok(lengths) => lengths_check.fail(format!(
                        "factor {idx}: component lengths {lengths:?}, expected all {want}"
                    )),
                    Err(e) => lengths_check.fail(format!("factor {idx}: {e}")),
                }
            }
        }
    }
    results.push(lengths_check.finish());

    // 5. one-factor
    let mut matching = Collector::new(Check::OneFactor);
    let pairs: &[[usize; 2]] = cert.one_factor.as_deref().unwrap_or(&[]);
    if n % 2 == 1 {
        if !pairs.is_empty() {
            matching.fail(format!("odd n = {n} admits no one-factor, got {} pairs", pairs.len()));
        }
    } else {
        if cert.one_factor.is_none() {
            matching.fail(format!("even n = {n} needs a one-factor"));
        }
        let mut covered = HashSet::new();
        for &[a, b] in pairs {
            if a >= n || b >= n || a == b {
                matching.fail(format!("pair ({a}, {b}) is not an edge of K_{n}"));
                continue;
            }
            for v in [a, b] {
                if !covered.insert(v) {
                    matching.fail(format!("vertex {v} matched twice"));
                }
            }
        }
        if cert.one_factor.is_some() && covered.len() != n {
            matching.fail(format!("one-factor covers {} of {n} vertices", covered.len()));
        }
    }
    results.push(matching.finish());

    // 6. edge partition
    let mut partition = Collector::new(Check::EdgePartition);
    let mut multiplicity: HashMap<(usize, usize), usize> = HashMap::new();
    let all_edges = factor_edges
        .iter()
        .flatten()
        .copied()
        .chain(pairs.iter().map(|&[a, b]| (a, b)));
    for (a, b) in all_edges {
        if a >= n || b >= n || a == b {
            partition.fail(format!("({a}, {b}) is not an edge of K_{n}"));
            continue;
        }
        *multiplicity.entry(key(a, b)).or_default() += 1;
    }
    let mut repeated: Vec<_> = multiplicity.iter().filter(|(_, &c)| c > 1).collect();
    repeated.sort_unstable();
    for ((a, b), c) in repeated {
        partition.fail(format!("edge ({a}, {b}) used {c} times"));
    }
    let total = (n as u128) * (n.saturating_sub(1) as u128) / 2;
    let distinct = multiplicity.len() as u128;
    if distinct < total {
        let missing = total - distinct;
        let mut example = None;
        if n <= 4096 {
            'outer: for a in 0..n {
                for b in a + 1..n {
                    if !multiplicity.contains_key(&(a, b)) {
                        example = Some((a, b));
                        break 'outer;
                    }
                }
            }
        }
        match example {
            Some((a, b)) => partition.fail(format!("{missing} edges of K_{n} missing, e.g. ({a}, {b})")),
            None => partition.fail(format!("{missing} edges of K_{n} missing")),
        }
    }
    results.push(partition.finish());

    // 7. counts
    let mut counts = Collector::new(Check::Counts);
    let hc = cert.factors.iter().filter(|f| f.kind == FactorKind::Hamilton).count();
    let c4k = cert.factors.len() - hc;
    if hc != cert.r {
        counts.fail(format!("{hc} hamilton factors, header says r = {}", cert.r));
    }
    if c4k != cert.s {
        counts.fail(format!("{c4k} c4k factors, header says s = {}", cert.s));
    }
    results.push(counts.finish());

    Report { results }
}
