//! Typed incidence geometries: objects with a type map and a symmetric
//! incidence relation in which objects of equal type are never incident.
//! Flags are pairwise-incident subsets; residues restrict to the objects
//! incident with a whole flag.

mod catalog;
mod iso;
mod polygon;

pub use catalog::{
    apartment_of, diagram_check, induced, pg_f1, pg_fq, quadric_f1, weyl_image, Diagram,
    DiagramLabel, DiagramReport, PgFq, QuadricF1, WeylInput,
};
pub use iso::{automorphism_count, find_isomorphism, isomorphic};
pub use polygon::{
    dualize, gp_recognize, ordinary_ngon, rank2_f1_classify, GpOutcome, GpReport, Rank2Class,
};

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A typed incidence structure. Objects are `0..len`; each carries a type
/// index into `type_names`; incidence is stored symmetrically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    type_names: Vec<String>,
    obj_types: Vec<usize>,
    adj: Vec<BTreeSet<usize>>,
    /// supplied incidence pairs, normalized and sorted (kept for
    /// validation reporting)
    raw_pairs: Vec<(usize, usize)>,
}

/// A flag: a set of pairwise-incident objects (types automatically
/// pairwise distinct in a valid geometry).
pub type Flag = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub connected: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Geometry {
    /// Build a geometry, rejecting structural violations outright.
    pub fn new(
        type_names: Vec<String>,
        obj_types: Vec<usize>,
        incidences: &[(usize, usize)],
    ) -> Result<Self> {
        let g = Geometry::new_unchecked(type_names, obj_types, incidences)?;
        let report = g.validate();
        if !report.is_valid() {
            return Err(Error::domain(report.violations.join("; ")));
        }
        Ok(g)
    }

    /// Build without validating the incidence axioms (indices must still
    /// be in range). Use [`Geometry::validate`] to get the report.
    pub fn new_unchecked(
        type_names: Vec<String>,
        obj_types: Vec<usize>,
        incidences: &[(usize, usize)],
    ) -> Result<Self> {
        let n = obj_types.len();
        for &t in &obj_types {
            if t >= type_names.len() {
                return Err(Error::domain(format!("object type index {t} out of range")));
            }
        }
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in incidences {
            if a >= n || b >= n {
                return Err(Error::domain(format!("incidence ({a},{b}) out of range")));
            }
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        // normalize the pair list so equal geometries compare equal
        let mut raw_pairs: Vec<(usize, usize)> = incidences
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        raw_pairs.sort_unstable();
        raw_pairs.dedup();
        Ok(Geometry {
            type_names,
            obj_types,
            adj,
            raw_pairs,
        })
    }

    pub fn num_objects(&self) -> usize {
        self.obj_types.len()
    }

    /// Number of types, i.e. the rank of the geometry.
    pub fn rank(&self) -> usize {
        self.type_names.len()
    }

    pub fn type_names(&self) -> &[String] {
        &self.type_names
    }

    pub fn type_of(&self, obj: usize) -> usize {
        self.obj_types[obj]
    }

    pub fn objects_of_type(&self, t: usize) -> Vec<usize> {
        (0..self.num_objects())
            .filter(|&x| self.obj_types[x] == t)
            .collect()
    }

    pub fn incident(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn neighbors(&self, a: usize) -> &BTreeSet<usize> {
        &self.adj[a]
    }

    pub fn incidence_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.num_objects() {
            for &b in &self.adj[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Checks type surjectivity, irreflexivity, the same-type exclusion,
    /// and reports connectivity of the incidence graph. Violations are
    /// listed, not thrown.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for t in 0..self.rank() {
            if self.objects_of_type(t).is_empty() {
                violations.push(format!(
                    "type map not surjective: no object of type '{}'",
                    self.type_names[t]
                ));
            }
        }
        for &(a, b) in &self.raw_pairs {
            if a == b {
                violations.push(format!("object {a} declared incident with itself"));
            } else if self.obj_types[a] == self.obj_types[b] {
                violations.push(format!(
                    "objects {a} and {b} of equal type '{}' are incident",
                    self.type_names[self.obj_types[a]]
                ));
            }
        }
        ValidationReport {
            violations,
            connected: self.is_connected(),
        }
    }

    /// Connectivity of the incidence graph. The empty geometry has no
    /// connected component and counts as not connected.
    pub fn is_connected(&self) -> bool {
        let n = self.num_objects();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    pub fn is_flag(&self, f: &[usize]) -> bool {
        for (i, &a) in f.iter().enumerate() {
            if a >= self.num_objects() {
                return false;
            }
            for &b in &f[i + 1..] {
                if !self.incident(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// All flags of the given rank (cliques of that size), each sorted.
    pub fn flags_of_rank(&self, rank: usize) -> Vec<Flag> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_flag(&mut current, 0, rank, &mut out);
        out
    }

    fn extend_flag(&self, current: &mut Flag, start: usize, target: usize, out: &mut Vec<Flag>) {
        if current.len() == target {
            out.push(current.clone());
            return;
        }
        for x in start..self.num_objects() {
            if current.iter().all(|&a| self.incident(a, x)) {
                current.push(x);
                self.extend_flag(current, x + 1, target, out);
                current.pop();
            }
        }
    }

    /// All flags of every rank `0..=rank()`.
    pub fn all_flags(&self) -> Vec<Flag> {
        (0..=self.rank())
            .flat_map(|r| self.flags_of_rank(r))
            .collect()
    }

    /// Maximal flags (one object of every type). In a thin or thick
    /// geometry these are the chambers.
    pub fn chambers(&self) -> Vec<Flag> {
        self.flags_of_rank(self.rank())
            .into_iter()
            .filter(|f| {
                let types: BTreeSet<usize> = f.iter().map(|&x| self.obj_types[x]).collect();
                types.len() == self.rank()
            })
            .collect()
    }

    /// The residue of a flag: objects incident with all of the flag,
    /// with the flag's types removed from the type set.
    pub fn residue(&self, flag: &[usize]) -> Result<Geometry> {
        if !self.is_flag(flag) {
            return Err(Error::domain("residue requires a flag"));
        }
        let flag_types: BTreeSet<usize> = flag.iter().map(|&x| self.obj_types[x]).collect();
        let members: Vec<usize> = (0..self.num_objects())
            .filter(|&x| !flag.contains(&x) && flag.iter().all(|&a| self.incident(a, x)))
            .collect();
        let kept_types: Vec<usize> = (0..self.rank()).filter(|t| !flag_types.contains(t)).collect();
        let type_map: std::collections::HashMap<usize, usize> = kept_types
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let type_names = kept_types
            .iter()
            .map(|&t| self.type_names[t].clone())
            .collect();
        let obj_map: std::collections::HashMap<usize, usize> = members
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let obj_types = members.iter().map(|&x| type_map[&self.obj_types[x]]).collect();
        let mut incidences = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if self.incident(a, b) {
                    incidences.push((obj_map[&a], obj_map[&b]));
                }
            }
        }
        Geometry::new_unchecked(type_names, obj_types, &incidences)
    }

    /// Every residue of rank at least two connected, every residue of
    /// rank one nonempty; checked exhaustively over all flags.
    pub fn residually_connected(&self) -> bool {
        for flag in self.all_flags() {
            let res = match self.residue(&flag) {
                Ok(r) => r,
                Err(_) => return false,
            };
            if res.rank() >= 2 && !res.is_connected() {
                return false;
            }
            if res.rank() == 1 && res.num_objects() == 0 {
                return false;
            }
        }
        true
    }

    /// Thin: every corank-1 flag spanning all but one type extends to
    /// exactly two chambers.
    pub fn is_thin(&self) -> bool {
        self.chamber_extension_counts()
            .is_some_and(|counts| counts.iter().all(|&c| c == 2))
    }

    /// Thick: every such flag extends to at least three chambers.
    pub fn is_thick(&self) -> bool {
        self.chamber_extension_counts()
            .is_some_and(|counts| counts.iter().all(|&c| c >= 3))
    }

    /// For each flag with all types but one, the number of objects of the
    /// missing type completing it to a chamber. `None` when the geometry
    /// has no such flags at all.
    fn chamber_extension_counts(&self) -> Option<Vec<usize>> {
        if self.rank() == 0 {
            return None;
        }
        let corank1: Vec<Flag> = self
            .flags_of_rank(self.rank() - 1)
            .into_iter()
            .filter(|f| {
                let types: BTreeSet<usize> = f.iter().map(|&x| self.obj_types[x]).collect();
                types.len() == self.rank() - 1
            })
            .collect();
        if corank1.is_empty() {
            return None;
        }
        let mut counts = Vec::with_capacity(corank1.len());
        for f in corank1 {
            let types: BTreeSet<usize> = f.iter().map(|&x| self.obj_types[x]).collect();
            let missing = (0..self.rank()).find(|t| !types.contains(t)).unwrap();
            let c = (0..self.num_objects())
                .filter(|&x| {
                    self.obj_types[x] == missing && f.iter().all(|&a| self.incident(a, x))
                })
                .count();
            counts.push(c);
        }
        Some(counts)
    }

    /// Geometry JSON: `{types, objects: [{id, type}], incidences}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "types": self.type_names,
            "objects": (0..self.num_objects())
                .map(|i| serde_json::json!({"id": i, "type": self.type_names[self.obj_types[i]]}))
                .collect::<Vec<_>>(),
            "incidences": self.incidence_pairs()
                .iter()
                .map(|&(a, b)| serde_json::json!([a, b]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Geometry> {
        let type_names: Vec<String> = v["types"]
            .as_array()
            .ok_or_else(|| Error::parse("geometry: missing types"))?
            .iter()
            .map(|t| {
                t.as_str()
                    .map(String::from)
                    .ok_or_else(|| Error::parse("type names must be strings"))
            })
            .collect::<Result<_>>()?;
        let objects = v["objects"]
            .as_array()
            .ok_or_else(|| Error::parse("geometry: missing objects"))?;
        let mut obj_types = vec![usize::MAX; objects.len()];
        for o in objects {
            let id = o["id"]
                .as_u64()
                .ok_or_else(|| Error::parse("object: missing id"))? as usize;
            let tname = o["type"]
                .as_str()
                .ok_or_else(|| Error::parse("object: missing type"))?;
            let t = type_names
                .iter()
                .position(|n| n == tname)
                .ok_or_else(|| Error::parse(format!("unknown type '{tname}'")))?;
            if id >= obj_types.len() {
                return Err(Error::parse(format!(
                    "object ids must be 0..{}, got {id}",
                    obj_types.len()
                )));
            }
            obj_types[id] = t;
        }
        if obj_types.contains(&usize::MAX) {
            return Err(Error::parse("object ids must cover 0..len exactly"));
        }
        let incidences: Vec<(usize, usize)> = v["incidences"]
            .as_array()
            .ok_or_else(|| Error::parse("geometry: missing incidences"))?
            .iter()
            .map(|pair| {
                let arr = pair
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::parse("incidence must be a pair"))?;
                let a = arr[0].as_u64().ok_or_else(|| Error::parse("bad incidence id"))?;
                let b = arr[1].as_u64().ok_or_else(|| Error::parse("bad incidence id"))?;
                Ok((a as usize, b as usize))
            })
            .collect::<Result<_>>()?;
        Geometry::new_unchecked(type_names, obj_types, &incidences)
    }

    /// DOT export, vertices colored by type.
    pub fn to_dot(&self) -> String {
        const PALETTE: &[&str] = &[
            "lightblue", "lightsalmon", "palegreen", "plum", "khaki", "lightgray",
        ];
        let mut out = String::from("graph geometry {\n");
        for i in 0..self.num_objects() {
            let t = self.obj_types[i];
            out.push_str(&format!(
                "  {} [label=\"{}:{}\", style=filled, fillcolor={}];\n",
                i,
                self.type_names[t],
                i,
                PALETTE[t % PALETTE.len()]
            ));
        }
        for (a, b) in self.incidence_pairs() {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> Geometry {
        // 3 points, 3 lines, each line incident with two points
        Geometry::new(
            vec!["point".into(), "line".into()],
            vec![0, 0, 0, 1, 1, 1],
            &[(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        let empty = Geometry::new_unchecked(vec![], vec![], &[]).unwrap();
        let report = empty.validate();
        assert!(report.is_valid());
        assert!(!report.connected);

        let t = triangle();
        let report = t.validate();
        assert!(report.is_valid());
        assert!(report.connected);

        let bad = Geometry::new_unchecked(
            vec!["point".into()],
            vec![0, 0],
            &[(0, 1)],
        )
        .unwrap();
        let report = bad.validate();
        assert!(!report.is_valid());
        assert!(report.violations[0].contains("equal type"));
        assert!(Geometry::new(vec!["point".into()], vec![0, 0], &[(0, 1)]).is_err());
    }

    #[test]
    fn flags_and_residues() {
        let t = triangle();
        assert_eq!(t.flags_of_rank(1).len(), 6);
        assert_eq!(t.chambers().len(), 6);
        assert!(t.is_thin());
        assert!(!t.is_thick());
        // empty flag residue is the geometry itself
        let r = t.residue(&[]).unwrap();
        assert_eq!(r.num_objects(), 6);
        assert_eq!(r.rank(), 2);
        // residue of a point: the two lines through it
        let r = t.residue(&[0]).unwrap();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.num_objects(), 2);
        assert!(t.residue(&[0, 4]).is_err()); // not a flag
    }

    #[test]
    fn residual_connectivity() {
        let t = triangle();
        assert!(t.residually_connected());
        // disjoint union of two triangles: rank-2 residue at the empty
        // flag is disconnected
        let mut obj_types = vec![0, 0, 0, 1, 1, 1];
        obj_types.extend([0, 0, 0, 1, 1, 1]);
        let mut inc = vec![(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)];
        inc.extend([(6, 9), (7, 9), (7, 10), (8, 10), (8, 11), (6, 11)]);
        let two = Geometry::new(vec!["point".into(), "line".into()], obj_types, &inc).unwrap();
        assert!(!two.residually_connected());
    }

    #[test]
    fn json_round_trip() {
        let t = triangle();
        let v = t.to_json();
        let back = Geometry::from_json(&v).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn dot_output_mentions_all_objects() {
        let t = triangle();
        let dot = t.to_dot();
        assert!(dot.contains("0 --") || dot.contains("-- 0") || dot.contains(" 0 "));
        assert_eq!(dot.matches("--").count(), 6);
    }
}
