//! Type-preserving isomorphism of small geometries, by iterative
//! color refinement plus backtracking. Exactness over speed; every
//! geometry here is desk scale.

use std::collections::{BTreeMap, HashMap};

use super::Geometry;

/// Stable colors: start from types, refine by the multiset of neighbor
/// colors until the partition stops changing.
fn refine_colors(g: &Geometry) -> Vec<usize> {
    let n = g.num_objects();
    let mut colors: Vec<usize> = (0..n).map(|x| g.type_of(x)).collect();
    loop {
        let mut signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut nb: Vec<usize> = g.neighbors(x).iter().map(|&y| colors[y]).collect();
                nb.sort_unstable();
                (colors[x], nb)
            })
            .collect();
        let mut palette: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        for sig in &signatures {
            let next = palette.len();
            palette.entry(sig.clone()).or_insert(next);
        }
        let new_colors: Vec<usize> = signatures.drain(..).map(|sig| palette[&sig]).collect();
        if new_colors == colors {
            return colors;
        }
        colors = new_colors;
    }
}

fn color_histogram(colors: &[usize]) -> HashMap<usize, usize> {
    let mut h = HashMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

struct Search<'a> {
    g: &'a Geometry,
    h: &'a Geometry,
    gc: Vec<usize>,
    hc: Vec<usize>,
    order: Vec<usize>,
    mapping: Vec<usize>,
    used: Vec<bool>,
    count: usize,
    witness: Option<Vec<usize>>,
    stop_at_first: bool,
}

impl Search<'_> {
    fn backtrack(&mut self, depth: usize) {
        if self.stop_at_first && self.witness.is_some() {
            return;
        }
        if depth == self.order.len() {
            self.count += 1;
            if self.witness.is_none() {
                self.witness = Some(self.mapping.clone());
            }
            return;
        }
        let x = self.order[depth];
        for y in 0..self.h.num_objects() {
            if self.used[y] || self.hc[y] != self.gc[x] {
                continue;
            }
            // adjacency with everything already mapped must agree
            let ok = self.order[..depth].iter().all(|&x2| {
                self.g.incident(x, x2) == self.h.incident(y, self.mapping[x2])
            });
            if !ok {
                continue;
            }
            self.mapping[x] = y;
            self.used[y] = true;
            self.backtrack(depth + 1);
            self.used[y] = false;
            if self.stop_at_first && self.witness.is_some() {
                return;
            }
        }
    }
}

fn run_search(g: &Geometry, h: &Geometry, stop_at_first: bool) -> (usize, Option<Vec<usize>>) {
    if g.num_objects() != h.num_objects()
        || g.rank() != h.rank()
        || g.incidence_pairs().len() != h.incidence_pairs().len()
    {
        return (0, None);
    }
    let gc = refine_colors(g);
    let hc = refine_colors(h);
    if color_histogram(&gc) != color_histogram(&hc) {
        return (0, None);
    }
    // map most-constrained (rarest color, highest degree) vertices first
    let hist = color_histogram(&gc);
    let mut order: Vec<usize> = (0..g.num_objects()).collect();
    order.sort_by_key(|&x| (hist[&gc[x]], std::cmp::Reverse(g.neighbors(x).len()), x));
    let n = g.num_objects();
    let mut search = Search {
        g,
        h,
        gc,
        hc,
        order,
        mapping: vec![usize::MAX; n],
        used: vec![false; n],
        count: 0,
        witness: None,
        stop_at_first,
    };
    search.backtrack(0);
    (search.count, search.witness)
}

/// Type-preserving isomorphism test. Types are matched by position in the
/// type list, not by name.
pub fn isomorphic(g: &Geometry, h: &Geometry) -> bool {
    run_search(g, h, true).1.is_some()
}

/// An explicit object bijection realizing an isomorphism, if one exists.
pub fn find_isomorphism(g: &Geometry, h: &Geometry) -> Option<Vec<usize>> {
    run_search(g, h, true).1
}

/// Number of type-preserving automorphisms, by exhaustive backtracking.
pub fn automorphism_count(g: &Geometry) -> usize {
    if g.num_objects() == 0 {
        return 1;
    }
    run_search(g, g, false).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{ordinary_ngon, pg_f1};

    #[test]
    fn triangle_automorphisms() {
        let t = ordinary_ngon(3).unwrap();
        // type-preserving symmetries of the triangle geometry: dihedral of order 6
        assert_eq!(automorphism_count(&t), 6);
    }

    #[test]
    fn ngon_automorphisms_are_dihedral() {
        for m in 3..=8usize {
            assert_eq!(automorphism_count(&ordinary_ngon(m).unwrap()), 2 * m);
        }
    }

    #[test]
    fn relabeled_geometries_are_isomorphic() {
        let a = ordinary_ngon(5).unwrap();
        let b = ordinary_ngon(5).unwrap();
        assert!(isomorphic(&a, &b));
        let c = ordinary_ngon(6).unwrap();
        assert!(!isomorphic(&a, &c));
        let iso = find_isomorphism(&a, &b).unwrap();
        assert_eq!(iso.len(), a.num_objects());
    }

    #[test]
    fn pg_f1_symmetric_group() {
        for n in 0..=4i64 {
            let g = pg_f1(n, None).unwrap();
            let expected: usize = (1..=(n + 1) as usize).product();
            assert_eq!(automorphism_count(&g), expected, "PG({n}, F1)");
        }
    }
}
