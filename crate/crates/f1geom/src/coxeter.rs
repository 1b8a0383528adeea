//! Coxeter matrices and diagrams, the spherical classification, group
//! realization through coset enumeration, and Coxeter complexes.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;
use crate::incidence::Geometry;
use crate::toddcox::{enumerate_group, Presentation, DEFAULT_MAX_COSETS};

/// Sentinel for an infinite bond.
pub const INF: u32 = u32::MAX;

/// A Coxeter matrix: symmetric, 1 on the diagonal, entries >= 2 (or
/// infinite) off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::domain("Coxeter matrix must be square"));
            }
        }
        for i in 0..n {
            if entries[i][i] != 1 {
                return Err(Error::domain("Coxeter matrix needs 1s on the diagonal"));
            }
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::domain("Coxeter matrix must be symmetric"));
                }
                if entries[i][j] < 2 {
                    return Err(Error::domain("off-diagonal entries must be >= 2"));
                }
            }
        }
        Ok(CoxeterMatrix { entries })
    }

    /// Matrix with all off-diagonal entries 2, then the given bonds set.
    pub fn from_bonds(rank: usize, bonds: &[(usize, usize, u32)]) -> Result<Self> {
        let mut entries = vec![vec![2u32; rank]; rank];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, m) in bonds {
            if i >= rank || j >= rank || i == j {
                return Err(Error::domain(format!("bad bond ({i},{j})")));
            }
            entries[i][j] = m;
            entries[j][i] = m;
        }
        CoxeterMatrix::new(entries)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }
}

/// A Coxeter diagram: vertices with bonds labeled m >= 3 (absent bond
/// means m = 2). Round-trips faithfully with [`CoxeterMatrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    rank: usize,
    /// (i, j, m) with i < j and m >= 3 or [`INF`]
    edges: Vec<(usize, usize, u32)>,
}

impl CoxeterDiagram {
    pub fn new(rank: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut norm = Vec::new();
        for &(i, j, m) in edges {
            if i >= rank || j >= rank || i == j {
                return Err(Error::domain(format!("bad edge ({i},{j})")));
            }
            if m < 3 {
                return Err(Error::domain("diagram edge labels must be >= 3"));
            }
            norm.push((i.min(j), i.max(j), m));
        }
        norm.sort_unstable();
        norm.dedup();
        for w in norm.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::domain("conflicting labels on one edge"));
            }
        }
        Ok(CoxeterDiagram { rank, edges: norm })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    pub fn from_matrix(m: &CoxeterMatrix) -> Self {
        let mut edges = Vec::new();
        for i in 0..m.rank() {
            for j in i + 1..m.rank() {
                if m.entry(i, j) >= 3 {
                    edges.push((i, j, m.entry(i, j)));
                }
            }
        }
        CoxeterDiagram {
            rank: m.rank(),
            edges,
        }
    }

    pub fn to_matrix(&self) -> CoxeterMatrix {
        CoxeterMatrix::from_bonds(self.rank, &self.edges).expect("diagram edges are valid bonds")
    }

    /// DOT export; infinite bonds carry the label "inf".
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph coxeter {\n");
        for v in 0..self.rank {
            out.push_str(&format!("  s{v};\n"));
        }
        for &(i, j, m) in &self.edges {
            let label = if m == INF {
                "inf".to_string()
            } else {
                m.to_string()
            };
            out.push_str(&format!("  s{i} -- s{j} [label={label}];\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Parses the subset of DOT emitted by [`CoxeterDiagram::to_dot`]:
    /// `graph name { v; ... a -- b [label=m]; ... }`. Vertex names are
    /// arbitrary identifiers; an edge without a label attribute means a
    /// plain bond (m = 3).
    pub fn from_dot(src: &str) -> Result<Self> {
        let body_start = src
            .find('{')
            .ok_or_else(|| Error::parse("DOT graph body not found"))?;
        let body_end = src
            .rfind('}')
            .ok_or_else(|| Error::parse("DOT graph body not closed"))?;
        let header = &src[..body_start];
        if !header.trim_start().starts_with("graph") {
            return Err(Error::parse("expected an undirected DOT graph"));
        }
        let mut names: Vec<String> = Vec::new();
        let index_of = |name: &str, names: &mut Vec<String>| -> usize {
            if let Some(i) = names.iter().position(|n| n == name) {
                i
            } else {
                names.push(name.to_string());
                names.len() - 1
            }
        };
        let mut edges = Vec::new();
        for raw in src[body_start + 1..body_end].split(';') {
            let stmt = raw.trim();
            if stmt.is_empty() {
                continue;
            }
            if let Some(pos) = stmt.find("--") {
                let a = stmt[..pos].trim();
                let rest = stmt[pos + 2..].trim();
                let (b, attrs) = match rest.find('[') {
                    Some(p) => {
                        let close = rest
                            .rfind(']')
                            .ok_or_else(|| Error::parse("unclosed attribute list"))?;
                        (rest[..p].trim(), Some(rest[p + 1..close].trim()))
                    }
                    None => (rest, None),
                };
                if a.is_empty() || b.is_empty() {
                    return Err(Error::parse(format!("malformed edge statement: {stmt}")));
                }
                let mut m = 3u32;
                if let Some(attrs) = attrs {
                    for attr in attrs.split(',') {
                        let mut kv = attr.splitn(2, '=');
                        let key = kv.next().unwrap_or("").trim();
                        let val = kv.next().unwrap_or("").trim().trim_matches('"');
                        if key == "label" {
                            m = if val == "inf" || val == "infinity" {
                                INF
                            } else {
                                val.parse::<u32>().map_err(|_| {
                                    Error::parse(format!("bad edge label {val}"))
                                })?
                            };
                        }
                    }
                }
                let ia = index_of(a, &mut names);
                let ib = index_of(b, &mut names);
                edges.push((ia, ib, m));
            } else {
                let name = stmt.split_whitespace().next().unwrap_or("");
                if !name.is_empty() {
                    index_of(name, &mut names);
                }
            }
        }
        CoxeterDiagram::new(names.len(), &edges)
    }
}

/// The spherical classification verdict for a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphericalClass {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(usize),
    NotIrreducible,
    NotSpherical,
}

impl fmt::Display for SphericalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphericalClass::A(n) => write!(f, "A_{n}"),
            SphericalClass::B(n) => write!(f, "B_{n}"),
            SphericalClass::D(n) => write!(f, "D_{n}"),
            SphericalClass::E6 => write!(f, "E_6"),
            SphericalClass::E7 => write!(f, "E_7"),
            SphericalClass::E8 => write!(f, "E_8"),
            SphericalClass::F4 => write!(f, "F_4"),
            SphericalClass::H3 => write!(f, "H_3"),
            SphericalClass::H4 => write!(f, "H_4"),
            SphericalClass::I2(m) => write!(f, "I_2({m})"),
            SphericalClass::NotIrreducible => write!(f, "NotIrreducible"),
            SphericalClass::NotSpherical => write!(f, "NotSpherical"),
        }
    }
}

/// The Coxeter matrix of a named catalog type.
pub fn catalog_matrix(class: SphericalClass) -> Result<CoxeterMatrix> {
    let path = |labels: &[u32]| -> Vec<(usize, usize, u32)> {
        labels
            .iter()
            .enumerate()
            .map(|(i, &m)| (i, i + 1, m))
            .collect()
    };
    match class {
        SphericalClass::A(n) => {
            if n < 1 {
                return Err(Error::domain("A_n needs n >= 1"));
            }
            CoxeterMatrix::from_bonds(n, &path(&vec![3; n - 1]))
        }
        SphericalClass::B(n) => {
            if n < 2 {
                return Err(Error::domain("B_n needs n >= 2"));
            }
            let mut labels = vec![3; n - 1];
            labels[n - 2] = 4;
            CoxeterMatrix::from_bonds(n, &path(&labels))
        }
        SphericalClass::D(n) => {
            if n < 4 {
                return Err(Error::domain("D_n needs n >= 4"));
            }
            // a path 0..n-2 with an extra vertex n-1 bonded to n-3
            let mut bonds = path(&vec![3; n - 2]);
            bonds.push((n - 3, n - 1, 3));
            CoxeterMatrix::from_bonds(n, &bonds)
        }
        SphericalClass::E6 | SphericalClass::E7 | SphericalClass::E8 => {
            let n = match class {
                SphericalClass::E6 => 6,
                SphericalClass::E7 => 7,
                _ => 8,
            };
            // a path 0..n-2 with the branch vertex n-1 bonded to node 2
            let mut bonds = path(&vec![3; n - 2]);
            bonds.push((2, n - 1, 3));
            CoxeterMatrix::from_bonds(n, &bonds)
        }
        SphericalClass::F4 => CoxeterMatrix::from_bonds(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]),
        SphericalClass::H3 => CoxeterMatrix::from_bonds(3, &[(0, 1, 5), (1, 2, 3)]),
        SphericalClass::H4 => {
            CoxeterMatrix::from_bonds(4, &[(0, 1, 5), (1, 2, 3), (2, 3, 3)])
        }
        SphericalClass::I2(m) => {
            if m < 3 || m == usize::try_from(INF).unwrap_or(usize::MAX) {
                return Err(Error::domain("I_2(m) needs finite m >= 3"));
            }
            CoxeterMatrix::from_bonds(2, &[(0, 1, m as u32)])
        }
        _ => Err(Error::domain("not a catalog type")),
    }
}

/// The closed-form group order of a catalog type, when desk sized.
pub fn catalog_order(class: SphericalClass) -> Option<u64> {
    let fact = |n: u64| (1..=n).product::<u64>();
    match class {
        SphericalClass::A(n) => Some(fact(n as u64 + 1)),
        SphericalClass::B(n) => Some((1u64 << n) * fact(n as u64)),
        SphericalClass::D(n) => Some((1u64 << (n - 1)) * fact(n as u64)),
        SphericalClass::E6 => Some(51_840),
        SphericalClass::E7 => Some(2_903_040),
        SphericalClass::E8 => Some(696_729_600),
        SphericalClass::F4 => Some(1_152),
        SphericalClass::H3 => Some(120),
        SphericalClass::H4 => Some(14_400),
        SphericalClass::I2(m) => Some(2 * m as u64),
        _ => None,
    }
}

/// Parses a terse type name: "A3", "B4", "D4", "E6", "F4", "H3", "I2(7)".
pub fn parse_type(s: &str) -> Result<SphericalClass> {
    let s = s.trim();
    let bad = || Error::parse(format!("unrecognized Coxeter type {s:?}"));
    if let Some(rest) = s.strip_prefix("I2(").or_else(|| s.strip_prefix("I_2(")) {
        let m: usize = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        return Ok(SphericalClass::I2(m));
    }
    let (family, num) = s.split_at(1);
    let num = num.trim_start_matches('_');
    let n: usize = num.parse().map_err(|_| bad())?;
    match (family, n) {
        ("A" | "a", n) if n >= 1 => Ok(SphericalClass::A(n)),
        ("B" | "b" | "C" | "c", n) if n >= 2 => Ok(SphericalClass::B(n)),
        ("D" | "d", n) if n >= 4 => Ok(SphericalClass::D(n)),
        ("E" | "e", 6) => Ok(SphericalClass::E6),
        ("E" | "e", 7) => Ok(SphericalClass::E7),
        ("E" | "e", 8) => Ok(SphericalClass::E8),
        ("F" | "f", 4) => Ok(SphericalClass::F4),
        ("H" | "h", 3) => Ok(SphericalClass::H3),
        ("H" | "h", 4) => Ok(SphericalClass::H4),
        _ => Err(bad()),
    }
}

/// Labeled-graph isomorphism of two Coxeter matrices, by backtracking
/// with row-signature pruning. Tiny inputs, exactness over speed.
fn matrices_isomorphic(a: &CoxeterMatrix, b: &CoxeterMatrix) -> bool {
    let n = a.rank();
    if b.rank() != n {
        return false;
    }
    let signature = |m: &CoxeterMatrix, i: usize| -> Vec<u32> {
        let mut row: Vec<u32> = (0..n).filter(|&j| j != i).map(|j| m.entry(i, j)).collect();
        row.sort_unstable();
        row
    };
    let sig_a: Vec<Vec<u32>> = (0..n).map(|i| signature(a, i)).collect();
    let sig_b: Vec<Vec<u32>> = (0..n).map(|i| signature(b, i)).collect();
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }
    fn backtrack(
        a: &CoxeterMatrix,
        b: &CoxeterMatrix,
        sig_a: &[Vec<u32>],
        sig_b: &[Vec<u32>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let depth = map.len();
        if depth == a.rank() {
            return true;
        }
        for cand in 0..a.rank() {
            if used[cand] || sig_a[depth] != sig_b[cand] {
                continue;
            }
            if (0..depth).any(|k| a.entry(depth, k) != b.entry(cand, map[k])) {
                continue;
            }
            map.push(cand);
            used[cand] = true;
            if backtrack(a, b, sig_a, sig_b, map, used) {
                return true;
            }
            used[cand] = false;
            map.pop();
        }
        false
    }
    backtrack(a, b, &sig_a, &sig_b, &mut Vec::new(), &mut vec![false; n])
}

fn diagram_connected(d: &CoxeterDiagram) -> bool {
    if d.rank() == 0 {
        return false;
    }
    let mut seen = vec![false; d.rank()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(i, j, _) in d.edges() {
            for (x, y) in [(i, j), (j, i)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Classifies a diagram against the catalog of irreducible spherical
/// types, by labeled-graph isomorphism with each same-rank candidate.
pub fn classify_spherical(d: &CoxeterDiagram) -> Result<SphericalClass> {
    let n = d.rank();
    if n == 0 {
        return Err(Error::domain("empty diagram"));
    }
    if !diagram_connected(d) {
        return Ok(SphericalClass::NotIrreducible);
    }
    if d.edges().iter().any(|&(_, _, m)| m == INF) {
        return Ok(SphericalClass::NotSpherical);
    }
    let m = d.to_matrix();
    let mut candidates = vec![SphericalClass::A(n)];
    if n >= 2 {
        candidates.push(SphericalClass::B(n));
    }
    if n >= 4 {
        candidates.push(SphericalClass::D(n));
    }
    match n {
        2 => {
            if let Some(&(_, _, label)) = d.edges().first() {
                if label >= 5 {
                    candidates.push(SphericalClass::I2(label as usize));
                }
            }
        }
        3 => candidates.push(SphericalClass::H3),
        4 => candidates.extend([SphericalClass::F4, SphericalClass::H4]),
        6 => candidates.push(SphericalClass::E6),
        7 => candidates.push(SphericalClass::E7),
        8 => candidates.push(SphericalClass::E8),
        _ => {}
    }
    for class in candidates {
        if matrices_isomorphic(&m, &catalog_matrix(class)?) {
            return Ok(class);
        }
    }
    Ok(SphericalClass::NotSpherical)
}

/// The standard presentation: relators s_i^2 and (s_i s_j)^{m_ij} for
/// i < j with m_ij finite; infinite bonds contribute nothing.
pub fn presentation_of(m: &CoxeterMatrix) -> Presentation {
    let n = m.rank();
    let mut relators = Vec::new();
    for i in 0..n {
        relators.push(vec![i as i32 + 1, i as i32 + 1]);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mij = m.entry(i, j);
            if mij == INF {
                continue;
            }
            let mut rel = Vec::new();
            for _ in 0..mij {
                rel.push(i as i32 + 1);
                rel.push(j as i32 + 1);
            }
            relators.push(rel);
        }
    }
    Presentation::new(n, relators).expect("standard Coxeter relators are well formed")
}

/// Enumerates the Coxeter group of a matrix; `Ok(None)` means the coset
/// table overflowed the bound (infinite or just large).
pub fn coxeter_group(m: &CoxeterMatrix, bound: Option<usize>) -> Result<Option<EnumeratedGroup>> {
    let g = enumerate_group(&presentation_of(m), bound.unwrap_or(DEFAULT_MAX_COSETS))?;
    if let Some(g) = &g {
        // generators are involutions with pairwise products of exact order m_ij
        for (i, &gi) in g.generators().iter().enumerate() {
            if g.element_order(gi as usize) != 2 {
                return Err(Error::verification(format!("generator {i} is not an involution")));
            }
            for (j, &gj) in g.generators().iter().enumerate().skip(i + 1) {
                let mij = m.entry(i, j);
                if mij == INF {
                    continue;
                }
                let prod = g.mul(gi as usize, gj as usize);
                if g.element_order(prod) != mij as usize {
                    return Err(Error::verification(format!(
                        "product of generators {i},{j} has wrong order"
                    )));
                }
            }
        }
    }
    Ok(g)
}

/// The Coxeter complex: type-i objects are the cosets of the maximal
/// standard parabolic omitting generator i, incidence is nonempty
/// intersection. Thin by construction; the Weyl image of any building of
/// this type.
pub fn coxeter_complex(w: &EnumeratedGroup, m: &CoxeterMatrix) -> Result<Geometry> {
    let n = m.rank();
    if w.generators().len() != n {
        return Err(Error::domain("group generator count does not match matrix rank"));
    }
    if n == 0 {
        return Err(Error::domain("rank 0 has no complex"));
    }
    let mut obj_types = Vec::new();
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for omit in 0..n {
        let seed: Vec<usize> = w
            .generators()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != omit)
            .map(|(_, &g)| g as usize)
            .collect();
        let parabolic = w.subgroup_closure(&seed);
        for coset in w.left_cosets(&parabolic) {
            obj_types.push(omit);
            cosets.push(coset);
        }
    }
    let mut inc = Vec::new();
    for i in 0..cosets.len() {
        for j in i + 1..cosets.len() {
            if obj_types[i] == obj_types[j] {
                continue;
            }
            // both sorted: nonempty intersection by merge walk
            let (mut a, mut b) = (0usize, 0usize);
            let meets = loop {
                if a == cosets[i].len() || b == cosets[j].len() {
                    break false;
                }
                match cosets[i][a].cmp(&cosets[j][b]) {
                    std::cmp::Ordering::Equal => break true,
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                }
            };
            if meets {
                inc.push((i, j));
            }
        }
    }
    let type_names = (0..n).map(|i| i.to_string()).collect();
    Geometry::new(type_names, obj_types, &inc)
}

/// Word equality in an enumerated group, through the multiplication
/// table. Words use letters `±(i+1)` for generator i.
pub fn word_eq(g: &EnumeratedGroup, w1: &[i32], w2: &[i32]) -> Result<bool> {
    g.word_eq(w1, w2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{isomorphic, ordinary_ngon, pg_f1};

    fn group_of(class: SphericalClass) -> EnumeratedGroup {
        coxeter_group(&catalog_matrix(class).unwrap(), None)
            .unwrap()
            .expect("catalog enumeration completes")
    }

    #[test]
    fn matrix_validation() {
        assert!(CoxeterMatrix::new(vec![vec![1, 3], vec![3, 1]]).is_ok());
        assert!(CoxeterMatrix::new(vec![vec![1, 3], vec![4, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![2, 3], vec![3, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn diagram_matrix_round_trip() {
        for class in [
            SphericalClass::A(4),
            SphericalClass::B(3),
            SphericalClass::D(5),
            SphericalClass::F4,
            SphericalClass::H4,
            SphericalClass::I2(7),
        ] {
            let m = catalog_matrix(class).unwrap();
            let d = CoxeterDiagram::from_matrix(&m);
            assert_eq!(d.to_matrix(), m);
        }
    }

    #[test]
    fn dot_round_trip() {
        let m = catalog_matrix(SphericalClass::F4).unwrap();
        let d = CoxeterDiagram::from_matrix(&m);
        let d2 = CoxeterDiagram::from_dot(&d.to_dot()).unwrap();
        assert_eq!(d2.to_matrix(), m);
        // infinite bond survives
        let inf = CoxeterDiagram::new(2, &[(0, 1, INF)]).unwrap();
        let back = CoxeterDiagram::from_dot(&inf.to_dot()).unwrap();
        assert_eq!(back.edges(), inf.edges());
        // unlabeled edge defaults to a plain bond
        let plain = CoxeterDiagram::from_dot("graph g { a -- b; }").unwrap();
        assert_eq!(plain.edges(), &[(0, 1, 3)]);
        assert!(CoxeterDiagram::from_dot("digraph g { a -> b; }").is_err());
    }

    #[test]
    fn classify_catalog() {
        let classify = |c: SphericalClass| {
            classify_spherical(&CoxeterDiagram::from_matrix(&catalog_matrix(c).unwrap())).unwrap()
        };
        assert_eq!(classify(SphericalClass::A(3)), SphericalClass::A(3));
        assert_eq!(classify(SphericalClass::A(1)), SphericalClass::A(1));
        assert_eq!(classify(SphericalClass::B(2)), SphericalClass::B(2));
        assert_eq!(classify(SphericalClass::B(5)), SphericalClass::B(5));
        assert_eq!(classify(SphericalClass::D(4)), SphericalClass::D(4));
        assert_eq!(classify(SphericalClass::D(6)), SphericalClass::D(6));
        assert_eq!(classify(SphericalClass::E6), SphericalClass::E6);
        assert_eq!(classify(SphericalClass::E7), SphericalClass::E7);
        assert_eq!(classify(SphericalClass::E8), SphericalClass::E8);
        assert_eq!(classify(SphericalClass::F4), SphericalClass::F4);
        assert_eq!(classify(SphericalClass::H3), SphericalClass::H3);
        assert_eq!(classify(SphericalClass::H4), SphericalClass::H4);
        assert_eq!(classify(SphericalClass::I2(5)), SphericalClass::I2(5));
        assert_eq!(classify(SphericalClass::I2(9)), SphericalClass::I2(9));
    }

    #[test]
    fn classify_rejects() {
        // unlabeled 3-cycle (affine A~_2 shape) is not spherical
        let cycle =
            CoxeterDiagram::new(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)]).unwrap();
        assert_eq!(classify_spherical(&cycle).unwrap(), SphericalClass::NotSpherical);
        // disconnected
        let two = CoxeterDiagram::new(2, &[]).unwrap();
        assert_eq!(classify_spherical(&two).unwrap(), SphericalClass::NotIrreducible);
        // infinite bond
        let inf = CoxeterDiagram::new(2, &[(0, 1, INF)]).unwrap();
        assert_eq!(classify_spherical(&inf).unwrap(), SphericalClass::NotSpherical);
        // B_4 path with the 4 in the middle is affine-like, not catalog
        let mid4 = CoxeterDiagram::new(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 4)]).unwrap();
        assert_eq!(classify_spherical(&mid4).unwrap(), SphericalClass::NotSpherical);
    }

    #[test]
    fn classify_is_relabeling_invariant() {
        // all 24 relabelings of the D_4 star classify identically
        let base = catalog_matrix(SphericalClass::D(4)).unwrap();
        let mut perm = [0usize, 1, 2, 3];
        loop {
            let mut entries = vec![vec![0u32; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    entries[perm[i]][perm[j]] = base.entry(i, j);
                }
            }
            let m = CoxeterMatrix::new(entries).unwrap();
            assert_eq!(
                classify_spherical(&CoxeterDiagram::from_matrix(&m)).unwrap(),
                SphericalClass::D(4)
            );
            // next permutation
            let n = perm.len();
            let mut i = n - 1;
            while i > 0 && perm[i - 1] >= perm[i] {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            let mut j = n - 1;
            while perm[j] <= perm[i - 1] {
                j -= 1;
            }
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
    }

    #[test]
    fn presentations() {
        let a2 = presentation_of(&catalog_matrix(SphericalClass::A(2)).unwrap());
        assert_eq!(a2.relators.len(), 3);
        assert_eq!(a2.relators[2], vec![1, 2, 1, 2, 1, 2]);
        let s = presentation_of(&CoxeterMatrix::new(vec![vec![1]]).unwrap());
        assert_eq!(s.relators, vec![vec![1, 1]]);
        let free = presentation_of(&CoxeterMatrix::from_bonds(2, &[(0, 1, INF)]).unwrap());
        assert_eq!(free.relators, vec![vec![1, 1], vec![2, 2]]);
    }

    #[test]
    fn catalog_orders() {
        for (class, order) in [
            (SphericalClass::A(1), 2),
            (SphericalClass::A(2), 6),
            (SphericalClass::A(3), 24),
            (SphericalClass::A(4), 120),
            (SphericalClass::A(5), 720),
            (SphericalClass::B(2), 8),
            (SphericalClass::B(3), 48),
            (SphericalClass::B(4), 384),
            (SphericalClass::D(4), 192),
            (SphericalClass::F4, 1152),
            (SphericalClass::H3, 120),
            (SphericalClass::I2(5), 10),
            (SphericalClass::I2(12), 24),
        ] {
            assert_eq!(group_of(class).order(), order, "{class}");
            assert_eq!(catalog_order(class), Some(order as u64), "{class}");
        }
    }

    #[test]
    fn infinite_bond_overflows() {
        let m = CoxeterMatrix::from_bonds(2, &[(0, 1, INF)]).unwrap();
        assert!(coxeter_group(&m, Some(500)).unwrap().is_none());
    }

    #[test]
    fn complexes_match_thin_catalog() {
        let a2 = group_of(SphericalClass::A(2));
        let c = coxeter_complex(&a2, &catalog_matrix(SphericalClass::A(2)).unwrap()).unwrap();
        assert!(isomorphic(&c, &ordinary_ngon(3).unwrap()));

        let b2 = group_of(SphericalClass::B(2));
        let c = coxeter_complex(&b2, &catalog_matrix(SphericalClass::B(2)).unwrap()).unwrap();
        assert!(isomorphic(&c, &ordinary_ngon(4).unwrap()));

        let a3 = group_of(SphericalClass::A(3));
        let c = coxeter_complex(&a3, &catalog_matrix(SphericalClass::A(3)).unwrap()).unwrap();
        assert_eq!(c.num_objects(), 14);
        assert!(isomorphic(&c, &pg_f1(3, None).unwrap()));
    }

    #[test]
    fn complexes_are_thin_with_w_chambers() {
        for class in [
            SphericalClass::A(2),
            SphericalClass::A(3),
            SphericalClass::B(2),
            SphericalClass::B(3),
            SphericalClass::I2(5),
            SphericalClass::I2(6),
            SphericalClass::I2(7),
            SphericalClass::I2(8),
        ] {
            let m = catalog_matrix(class).unwrap();
            let w = group_of(class);
            let c = coxeter_complex(&w, &m).unwrap();
            assert!(c.is_thin(), "{class} complex thin");
            assert_eq!(c.chambers().len(), w.order(), "{class} chamber count");
            assert!(c.residually_connected(), "{class} residually connected");
        }
    }

    #[test]
    fn word_equality_in_a2() {
        let w = group_of(SphericalClass::A(2));
        assert!(word_eq(&w, &[1, 2, 1], &[2, 1, 2]).unwrap());
        assert!(!word_eq(&w, &[1], &[2]).unwrap());
        assert!(word_eq(&w, &[1, 1], &[]).unwrap());
        assert!(word_eq(&w, &[-1], &[1]).unwrap());
    }

    #[test]
    fn type_parser() {
        assert_eq!(parse_type("A3").unwrap(), SphericalClass::A(3));
        assert_eq!(parse_type("C4").unwrap(), SphericalClass::B(4));
        assert_eq!(parse_type("I2(7)").unwrap(), SphericalClass::I2(7));
        assert_eq!(parse_type("H_3").unwrap(), SphericalClass::H3);
        assert!(parse_type("E5").is_err());
        assert!(parse_type("Z9").is_err());
    }
}
