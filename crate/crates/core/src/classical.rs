//! Classical decompositions of complete graphs: Walecki Hamilton
//! decompositions of `K_2m - I` and `K_2m+1`, zigzag Hamilton-path
//! decompositions of `K_2m`, and vertex relabeling.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matching::trace_cycles;
use crate::model::{Edge, Layout, Vertex};

/// Cycles, paths and an optional leftover matching on a labelled vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub cycles: Vec<Vec<Vertex>>,
    pub paths: Vec<Vec<Vertex>>,
    pub matching: Vec<Edge>,
}

impl Decomposition {
    /// Every edge of every part, cycle closing edges included.
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges = Vec::new();
        for c in &self.cycles {
            edges.extend(crate::model::cycle_edges(c).map(|(a, b)| Edge::ordered(a, b)));
        }
        for p in &self.paths {
            edges.extend(p.windows(2).map(|w| Edge::ordered(w[0], w[1])));
        }
        edges.extend(self.matching.iter().copied());
        edges
    }
}

/// The zigzag `j, j+1, j-1, j+2, j-2, ..., j+m` on `Z_2m`.
fn zigzag(m: usize, j: usize) -> Vec<Vertex> {
    let modulus = 2 * m;
    let mut path = Vec::with_capacity(modulus);
    path.push(j % modulus);
    for a in 1..m {
        path.push((j + a) % modulus);
        path.push((j + modulus - a) % modulus);
    }
    path.push((j + m) % modulus);
    path
}

/// Decomposes `K_2m - I` into `m - 1` Hamilton cycles, where
/// `I = {v_0 v_m} u {v_i v_2m-i : 1 <= i < m}` and the first cycle is
/// `(v_0, v_1, ..., v_2m-1)`.
///
/// Built from the rotational scheme on `{inf} u Z_2m-1` (zigzag starter
/// through `inf`, rotated `m - 1` times). For odd `m` the leftover matching
/// of that scheme has the wrong shape, so one cycle trades half its edges
/// with it first. The result is then relabeled along a chosen cycle.
pub fn walecki_even(m: usize) -> Result<Decomposition> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("walecki_even needs m >= 2, got {m}")));
    }
    let modulus = 2 * m - 1;
    let inf = modulus;

    let mut starter = Vec::with_capacity(2 * m);
    starter.push(inf);
    starter.push(0);
    for a in 1..m {
        starter.push(a);
        starter.push(modulus - a);
    }
    let mut cycles: Vec<Vec<Vertex>> = (0..m - 1)
        .map(|x| {
            starter
                .iter()
                .map(|&v| if v == inf { inf } else { (v + x) % modulus })
                .collect()
        })
        .collect();

    // Leftover: the chords with sum m - 1 + m - 1 = -1 (mod 2m-1), plus inf
    // to the fixed point of that class.
    let mut leftover: Vec<Edge> = (0..m - 1).map(|a| Edge::ordered(a, modulus - 1 - a)).collect();
    leftover.push(Edge::ordered(inf, m - 1));

    // Index of the cycle that will be relabeled onto 0, 1, ..., 2m-1.
    let anchor_index = if m % 2 == 1 {
        let first = cycles.remove(0);
        let len = first.len();
        let mut kept = Vec::with_capacity(len / 2 + leftover.len());
        let mut given = Vec::with_capacity(len / 2);
        for p in 0..len {
            let e = Edge::ordered(first[p], first[(p + 1) % len]);
            if p % 2 == 0 {
                given.push(e);
            } else {
                kept.push(e);
            }
        }
        kept.extend(leftover);
        let swapped = trace_cycles(&kept)?;
        if swapped.len() != 1 {
            return Err(Error::Internal(format!(
                "matching swap in walecki_even({m}) split into {} cycles",
                swapped.len()
            )));
        }
        cycles.extend(swapped);
        leftover = given;
        (m - 1) / 2 - 1
    } else {
        (m - 2) / 2
    };

    let anchor = cycles.remove(anchor_index);
    let mut position = vec![0; 2 * m];
    for (p, &v) in anchor.iter().enumerate() {
        position[v] = p;
    }
    cycles.insert(0, anchor);
    let raw = Decomposition {
        cycles,
        paths: Vec::new(),
        matching: leftover,
    };
    let mut out = relabel(&raw, &position)?;
    out.matching.sort();
    Ok(out)
}

/// Decomposes `K_2m+1` into `m` Hamilton cycles: zigzag paths on `Z_2m`
/// closed through the extra vertex `2m`.
pub fn walecki_odd(m: usize) -> Result<Decomposition> {
    if m < 1 {
        return Err(Error::InvalidArgument("walecki_odd needs m >= 1".into()));
    }
    let cycles = (0..m)
        .map(|j| {
            let mut c = zigzag(m, j);
            c.push(2 * m);
            c
        })
        .collect();
    Ok(Decomposition {
        cycles,
        paths: Vec::new(),
        matching: Vec::new(),
    })
}

/// Decomposes `K_2m` into `m` Hamilton paths; path `j` runs from `j` to `j + m`.
pub fn ham_path_decomp(m: usize) -> Result<Decomposition> {
    if m < 1 {
        return Err(Error::InvalidArgument("ham_path_decomp needs m >= 1".into()));
    }
    Ok(Decomposition {
        cycles: Vec::new(),
        paths: (0..m).map(|j| zigzag(m, j)).collect(),
        matching: Vec::new(),
    })
}

/// Applies `map` (old label `v` becomes `map[v]`) to every part. `map` must
/// cover the decomposition's labels and be injective.
pub fn relabel(decomposition: &Decomposition, map: &[Vertex]) -> Result<Decomposition> {
    let distinct: BTreeSet<_> = map.iter().collect();
    if distinct.len() != map.len() {
        return Err(Error::NotBijection(map.len()));
    }
    let image = |v: Vertex| map.get(v).copied().ok_or(Error::NotBijection(map.len()));
    let image_seq = |seq: &Vec<Vertex>| seq.iter().map(|&v| image(v)).collect::<Result<Vec<_>>>();
    Ok(Decomposition {
        cycles: decomposition.cycles.iter().map(image_seq).collect::<Result<_>>()?,
        paths: decomposition.paths.iter().map(image_seq).collect::<Result<_>>()?,
        matching: decomposition
            .matching
            .iter()
            .map(|e| Ok(Edge::ordered(image(e.u())?, image(e.v())?)))
            .collect::<Result<_>>()?,
    })
}

/// Vertex order on `V_i u V_j` under which the leftover matching of
/// [`walecki_even`]`(2k)` becomes `(i, j)_0`:
/// `v_l = i_l`, `v_2k = j_0`, `v_2k+s = j_2k-s`.
pub fn leftover_aligned_order(layout: &Layout, i: usize, j: usize) -> Result<Vec<Vertex>> {
    let m = layout.block_size();
    let mut order = Vec::with_capacity(2 * m);
    for l in 0..m {
        order.push(layout.encode(i, l)?);
    }
    for s in 0..m {
        order.push(layout.encode(j, (m - s) % m)?);
    }
    Ok(order)
}

/// Vertex order on `V_i u V_j` under which path `l` of
/// [`ham_path_decomp`]`(2k)` runs from `i_l` to `j_l`:
/// `v_l = i_l`, `v_2k+l = j_l`.
pub fn endpoint_aligned_order(layout: &Layout, i: usize, j: usize) -> Result<Vec<Vertex>> {
    let m = layout.block_size();
    let mut order = Vec::with_capacity(2 * m);
    for block in [i, j] {
        for l in 0..m {
            order.push(layout.encode(block, l)?);
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::expand_matching;
    use crate::model::Matching;

    fn complete_edges(order: usize) -> BTreeSet<Edge> {
        (0..order)
            .flat_map(|a| (a + 1..order).map(move |b| Edge::ordered(a, b)))
            .collect()
    }

    fn assert_partition(d: &Decomposition, order: usize) {
        let edges = d.edges();
        let set: BTreeSet<_> = edges.iter().copied().collect();
        assert_eq!(set.len(), edges.len(), "repeated edge");
        assert_eq!(set, complete_edges(order));
    }

    fn reflective(m: usize) -> Vec<Edge> {
        let mut i: Vec<_> = (1..m).map(|a| Edge::ordered(a, 2 * m - a)).collect();
        i.push(Edge::ordered(0, m));
        i.sort();
        i
    }

    #[test]
    fn walecki_even_small_cases() {
        let d = walecki_even(2).unwrap();
        assert_eq!(d.cycles, vec![vec![0, 1, 2, 3]]);
        assert_eq!(d.matching, vec![Edge::ordered(0, 2), Edge::ordered(1, 3)]);

        let d = walecki_even(3).unwrap();
        assert_eq!(d.cycles.len(), 2);
        assert_eq!(
            d.matching,
            vec![Edge::ordered(0, 3), Edge::ordered(1, 5), Edge::ordered(2, 4)]
        );
        assert_partition(&d, 6);

        let d = walecki_even(4).unwrap();
        assert_eq!(d.cycles.len(), 3);
        assert!(d.cycles.iter().all(|c| c.len() == 8));
        assert_eq!(d.matching.len(), 4);
        assert_partition(&d, 8);
    }

    #[test]
    fn walecki_even_postconditions_hold_broadly() {
        for m in 2..=64 {
            let d = walecki_even(m).unwrap();
            assert_eq!(d.cycles.len(), m - 1, "m = {m}");
            assert_eq!(d.cycles[0], (0..2 * m).collect::<Vec<_>>(), "m = {m}");
            assert_eq!(d.matching, reflective(m), "m = {m}");
            for c in &d.cycles {
                assert_eq!(c.len(), 2 * m);
                assert_eq!(c.iter().copied().collect::<BTreeSet<_>>().len(), 2 * m);
            }
            assert_partition(&d, 2 * m);
        }
        assert!(walecki_even(1).is_err());
    }

    #[test]
    fn walecki_odd_partitions() {
        assert_eq!(walecki_odd(1).unwrap().cycles, vec![vec![0, 1, 2]]);
        for m in 1..=20 {
            let d = walecki_odd(m).unwrap();
            assert_eq!(d.cycles.len(), m);
            assert!(d.cycles.iter().all(|c| c.len() == 2 * m + 1));
            assert_partition(&d, 2 * m + 1);
        }
    }

    #[test]
    fn ham_paths_partition_with_antipodal_endpoints() {
        assert_eq!(ham_path_decomp(1).unwrap().paths, vec![vec![0, 1]]);
        let d = ham_path_decomp(2).unwrap();
        assert_eq!(d.paths, vec![vec![0, 1, 3, 2], vec![1, 2, 0, 3]]);
        for m in 1..=20 {
            let d = ham_path_decomp(m).unwrap();
            assert_partition(&d, 2 * m);
            for (j, p) in d.paths.iter().enumerate() {
                assert_eq!(p.len(), 2 * m);
                assert_eq!((p[0], p[2 * m - 1]), (j, j + m));
            }
        }
    }

    #[test]
    fn relabel_examples() {
        let d = walecki_even(2).unwrap();
        assert_eq!(relabel(&d, &[0, 1, 2, 3]).unwrap(), d);
        let swapped = relabel(&d, &[1, 0, 2, 3]).unwrap();
        assert_eq!(swapped.cycles, vec![vec![1, 0, 2, 3]]);
        let m: BTreeSet<_> = swapped.matching.iter().copied().collect();
        assert_eq!(m, [Edge::ordered(1, 2), Edge::ordered(0, 3)].into());
        assert_eq!(relabel(&d, &[0, 0, 2, 3]), Err(Error::NotBijection(4)));
        assert_eq!(relabel(&d, &[0, 1, 2]), Err(Error::NotBijection(3)));
    }

    #[test]
    fn leftover_ordering_yields_offset_zero_matching() {
        for k in 1..=5 {
            let layout = Layout::new(k, 2).unwrap();
            let d = walecki_even(2 * k).unwrap();
            for (i, j) in [(0, 1), (3, 1), (2, 0)] {
                let order = leftover_aligned_order(&layout, i, j).unwrap();
                let mapped = relabel(&d, &order).unwrap();
                let got: BTreeSet<_> = mapped.matching.into_iter().collect();
                let want: BTreeSet<_> = expand_matching(Matching::new(i, j, 0), &layout)
                    .unwrap()
                    .into_iter()
                    .collect();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn endpoint_ordering_aligns_slots() {
        let layout = Layout::new(2, 3).unwrap();
        let d = ham_path_decomp(4).unwrap();
        let mapped = relabel(&d, &endpoint_aligned_order(&layout, 1, 5).unwrap()).unwrap();
        for (l, p) in mapped.paths.iter().enumerate() {
            assert_eq!(layout.decode(p[0]).unwrap(), (1, l));
            assert_eq!(layout.decode(*p.last().unwrap()).unwrap(), (5, l));
        }
    }
}
