//! The F1 catalog: projective spaces over F1 (subset geometries of a
//! finite set) and over genuine finite fields with their apartments,
//! quadrics over F1, Buekenhout-Tits diagram verification, and the Weyl
//! image dispatcher.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::f1linalg::FqField;

use super::polygon::{gp_recognize, ordinary_ngon, GpOutcome};
use super::{isomorphic, Geometry};

/// Default cap on `2^{n+1}` subset enumerations.
const DEFAULT_SUBSET_BOUND: usize = 1 << 12;

/// `PG(n, F1)`: the complete graph on `n+1` vertices with its induced
/// geometry of subsets. Objects are the nonempty subsets of dimension
/// `< n` (cardinality `1..=n`), typed by dimension, incident when one
/// strictly contains the other. `n = -1` is the empty geometry and
/// `n = 0` the single point.
pub fn pg_f1(n: i64, bound: Option<usize>) -> Result<Geometry> {
    if n < -1 {
        return Err(Error::domain("pg_f1 requires n >= -1"));
    }
    if n == -1 {
        return Geometry::new_unchecked(vec![], vec![], &[]);
    }
    let n = n as usize;
    let bound = bound.unwrap_or(DEFAULT_SUBSET_BOUND);
    if 1usize.checked_shl(n as u32 + 1).is_none_or(|v| v > bound) {
        return Err(Error::resource(format!("2^{} exceeds subset bound {bound}", n + 1)));
    }
    if n == 0 {
        return Geometry::new(vec!["0".into()], vec![0], &[]);
    }
    // subsets of {0..n} with 1 <= |S| <= n, as bitmasks
    let full: u32 = (1u32 << (n + 1)) - 1;
    let mut subsets: Vec<u32> = (1..full).filter(|s| s.count_ones() as usize <= n).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let obj_types: Vec<usize> = subsets.iter().map(|s| s.count_ones() as usize - 1).collect();
    let mut inc = Vec::new();
    for (i, &a) in subsets.iter().enumerate() {
        for (j, &b) in subsets.iter().enumerate().skip(i + 1) {
            if (a & b == a && a != b) || (a & b == b) {
                inc.push((i, j));
            }
        }
    }
    let type_names = (0..n).map(|d| d.to_string()).collect();
    Geometry::new(type_names, obj_types, &inc)
}

/// A quadric over F1: `2(n+1)` points arranged in pairs; subspaces are
/// the nonempty subsets containing no full pair.
pub struct QuadricF1 {
    pub geometry: Geometry,
    /// the point set of each object, indices `2i` and `2i+1` forming pair `i`
    pub subsets: Vec<Vec<usize>>,
    /// in the even-dimensional case, the (even, odd) type indices of the
    /// two classes of maximal singular subspaces
    pub even_split: Option<(usize, usize)>,
}

pub fn quadric_f1(n: usize, even_dimension: bool, bound: Option<usize>) -> Result<QuadricF1> {
    let bound = bound.unwrap_or(DEFAULT_SUBSET_BOUND);
    if 1usize.checked_shl(2 * (n as u32 + 1)).is_none_or(|v| v > bound) {
        return Err(Error::resource(format!(
            "2^{} exceeds subset bound {bound}",
            2 * (n + 1)
        )));
    }
    let npoints = 2 * (n + 1);
    // pair-free nonempty subsets as bitmasks
    let mut masks: Vec<u32> = (1u32..1 << npoints)
        .filter(|m| (0..=n).all(|i| m >> (2 * i) & 3 != 3))
        .collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let max_size = (n + 1) as u32;
    // types: dimension k-1 for cardinality k; in the even case the
    // maximal layer splits by parity of the intersection with {x_0..x_n}
    let x_mask: u32 = (0..=n).map(|i| 1u32 << (2 * i)).sum();
    let mut type_names: Vec<String> = (0..n).map(|d| d.to_string()).collect();
    let even_split = if even_dimension {
        type_names.push(format!("{n}+"));
        type_names.push(format!("{n}-"));
        Some((n, n + 1))
    } else {
        type_names.push(n.to_string());
        None
    };
    let obj_types: Vec<usize> = masks
        .iter()
        .map(|&m| {
            let k = m.count_ones();
            if k < max_size {
                k as usize - 1
            } else if even_dimension {
                if (m & x_mask).count_ones() % 2 == 0 {
                    n
                } else {
                    n + 1
                }
            } else {
                n
            }
        })
        .collect();
    let mut inc = Vec::new();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate().skip(i + 1) {
            if obj_types[i] == obj_types[j] {
                continue;
            }
            if (a & b == a && a != b) || (a & b == b && a != b) {
                inc.push((i, j));
            }
        }
    }
    let subsets = masks
        .iter()
        .map(|&m| (0..npoints).filter(|&p| m >> p & 1 == 1).collect())
        .collect();
    let geometry = Geometry::new(type_names, obj_types, &inc)?;
    Ok(QuadricF1 {
        geometry,
        subsets,
        even_split,
    })
}

/// `PG(n, q)` together with the vector data needed for apartments.
pub struct PgFq {
    pub geometry: Geometry,
    /// the full vector set (codes base q, zero included) of each object
    pub subspaces: Vec<Vec<u64>>,
    pub field: FqField,
    /// vector-space dimension `n + 1`
    pub ambient: usize,
}

fn prime_power(q: u32) -> Result<(u32, u32)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut e = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if rest != 1 {
                return Err(Error::domain(format!("{q} is not a prime power")));
            }
            return Ok((p, e));
        }
    }
    Err(Error::domain(format!("{q} is not a prime power")))
}

/// All nonzero proper subspaces of the `(n+1)`-dimensional vector space
/// over the q-element field, typed by projective dimension, incidence by
/// containment.
pub fn pg_fq(n: usize, q: u32, bound: Option<(usize, u32)>) -> Result<PgFq> {
    let (max_n, max_q) = bound.unwrap_or((3, 4));
    if n > max_n || q > max_q {
        return Err(Error::resource(format!(
            "pg_fq({n},{q}) above the default bound ({max_n},{max_q})"
        )));
    }
    let (p, e) = prime_power(q)?;
    let field = FqField::new(p, e, None)?;
    let ambient = n + 1;
    let mut subspaces = Vec::new();
    let mut obj_types = Vec::new();
    for dim in 1..=n {
        for sp in crate::f1linalg::enumerate_subspaces(&field, ambient, dim) {
            subspaces.push(sp);
            obj_types.push(dim - 1);
        }
    }
    if n == 0 {
        // the projective point itself: PG(0, q) has a single point (the whole line)
        subspaces.push(crate::f1linalg::enumerate_subspaces(&field, ambient, 1).remove(0));
        obj_types.push(0);
    }
    let mut inc = Vec::new();
    for i in 0..subspaces.len() {
        for j in i + 1..subspaces.len() {
            if obj_types[i] == obj_types[j] {
                continue;
            }
            let (small, big) = if subspaces[i].len() < subspaces[j].len() {
                (&subspaces[i], &subspaces[j])
            } else {
                (&subspaces[j], &subspaces[i])
            };
            if small.iter().all(|v| big.binary_search(v).is_ok()) {
                inc.push((i, j));
            }
        }
    }
    let type_names = (0..n.max(1)).map(|d| d.to_string()).collect();
    let geometry = Geometry::new(type_names, obj_types, &inc)?;
    Ok(PgFq {
        geometry,
        subspaces,
        field,
        ambient,
    })
}

fn span(field: &FqField, ambient: usize, vectors: &[u64]) -> Vec<u64> {
    let q = field.q() as u64;
    let decode = |code: u64| -> Vec<u32> {
        let mut c = code;
        (0..ambient)
            .map(|_| {
                let d = (c % q) as u32;
                c /= q;
                d
            })
            .collect()
    };
    let encode = |v: &[u32]| -> u64 { v.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64) };
    let mut current: Vec<u64> = vec![0];
    for &v in vectors {
        let vd = decode(v);
        let mut next = Vec::new();
        for &u in &current {
            let ud = decode(u);
            for c in 0..field.q() {
                let w: Vec<u32> = ud
                    .iter()
                    .zip(&vd)
                    .map(|(&x, &y)| field.add(x, field.mul(c, y)))
                    .collect();
                next.push(encode(&w));
            }
        }
        next.sort_unstable();
        next.dedup();
        current = next;
    }
    current
}

/// The apartment of a frame: the subgeometry of subspaces spanned by
/// nonempty proper subsets of the given basis. `None` uses the standard
/// basis. The result is isomorphic to `pg_f1(n)`.
pub fn apartment_of(pg: &PgFq, frame: Option<&[u64]>) -> Result<Geometry> {
    let q = pg.field.q() as u64;
    let standard: Vec<u64> = (0..pg.ambient).map(|i| q.pow(i as u32)).collect();
    let frame = frame.map(|f| f.to_vec()).unwrap_or(standard);
    if frame.len() != pg.ambient {
        return Err(Error::domain(format!(
            "frame must have {} vectors",
            pg.ambient
        )));
    }
    let total = span(&pg.field, pg.ambient, &frame);
    if total.len() != (q as usize).pow(pg.ambient as u32) {
        return Err(Error::domain("frame is not a basis"));
    }
    let n = pg.ambient - 1;
    let mut members = Vec::new();
    for mask in 1u32..(1 << pg.ambient) - 1 {
        if mask.count_ones() as usize > n {
            continue;
        }
        let chosen: Vec<u64> = (0..pg.ambient)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| frame[i])
            .collect();
        let sp = span(&pg.field, pg.ambient, &chosen);
        let idx = pg
            .subspaces
            .iter()
            .position(|s| *s == sp)
            .ok_or_else(|| Error::verification("spanned subspace missing from geometry"))?;
        members.push(idx);
    }
    if n == 0 {
        members.push(0);
    }
    members.sort_unstable();
    members.dedup();
    Ok(induced(&pg.geometry, &members))
}

/// The subgeometry induced on a subset of objects (type set retained).
pub fn induced(g: &Geometry, members: &[usize]) -> Geometry {
    let obj_types: Vec<usize> = members.iter().map(|&x| g.type_of(x)).collect();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut inc = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if g.incident(a, b) {
                inc.push((pos[&a], pos[&b]));
            }
        }
    }
    Geometry::new_unchecked(g.type_names().to_vec(), obj_types, &inc)
        .expect("induced subgeometry of a valid geometry")
}

/// Residue-class labels of a Buekenhout-Tits diagram edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramLabel {
    /// every i-object incident with every j-object
    Di,
    /// projective plane residue (gonality 3)
    A2,
    /// generalized quadrangle residue (gonality 4)
    B2,
    /// generalized m-gon residue
    I2(usize),
    /// points and edges of a complete graph
    C,
    /// axiomatic affine plane
    Af,
}

/// A labeled diagram over the type set; unlabeled pairs default to `Di`.
/// For the asymmetric labels `C` and `Af` the first type of the pair
/// plays the points.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    edges: HashMap<(usize, usize), DiagramLabel>,
}

impl Diagram {
    pub fn new() -> Self {
        Diagram::default()
    }

    pub fn set(&mut self, i: usize, j: usize, label: DiagramLabel) {
        self.edges.insert((i, j), label);
    }

    /// The path diagram of type A over `rank` types: consecutive types
    /// carry projective-plane residues.
    pub fn a_path(rank: usize) -> Self {
        let mut d = Diagram::new();
        for i in 0..rank.saturating_sub(1) {
            d.set(i, i + 1, DiagramLabel::A2);
        }
        d
    }

    /// Label for the unordered pair, plus whether type `i` is the point
    /// side as stored.
    fn lookup(&self, i: usize, j: usize) -> (DiagramLabel, bool) {
        if let Some(&l) = self.edges.get(&(i, j)) {
            (l, true)
        } else if let Some(&l) = self.edges.get(&(j, i)) {
            (l, false)
        } else {
            (DiagramLabel::Di, true)
        }
    }
}

#[derive(Clone, Debug)]
pub struct DiagramReport {
    /// per corank-2 flag: the flag, the residual type pair, pass, detail
    pub checks: Vec<(Vec<usize>, (usize, usize), bool, String)>,
}

impl DiagramReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.2)
    }
}

/// Verifies that every corank-2 residue of `g` belongs to the class its
/// diagram edge prescribes.
pub fn diagram_check(g: &Geometry, d: &Diagram) -> Result<DiagramReport> {
    if g.rank() < 2 {
        return Err(Error::domain("diagram check requires rank >= 2"));
    }
    let mut checks = Vec::new();
    for flag in g.flags_of_rank(g.rank() - 2) {
        let flag_types: std::collections::BTreeSet<usize> =
            flag.iter().map(|&x| g.type_of(x)).collect();
        if flag_types.len() != flag.len() {
            continue;
        }
        let missing: Vec<usize> = (0..g.rank()).filter(|t| !flag_types.contains(t)).collect();
        let (i, j) = (missing[0], missing[1]);
        let residue = g.residue(&flag)?;
        // residue type 0 is the smaller original type, i
        let (label, i_is_points) = d.lookup(i, j);
        let residue = if i_is_points {
            residue
        } else {
            super::polygon::dualize(&residue)?
        };
        let (ok, detail) = check_residue_class(&residue, label)?;
        checks.push((flag, (i, j), ok, detail));
    }
    Ok(DiagramReport { checks })
}

fn check_residue_class(r: &Geometry, label: DiagramLabel) -> Result<(bool, String)> {
    match label {
        DiagramLabel::Di => {
            let points = r.objects_of_type(0);
            let lines = r.objects_of_type(1);
            let ok = points
                .iter()
                .all(|&p| lines.iter().all(|&l| r.incident(p, l)));
            Ok((ok, "Di: full incidence".into()))
        }
        DiagramLabel::A2 | DiagramLabel::B2 | DiagramLabel::I2(_) => {
            let want = match label {
                DiagramLabel::A2 => 3,
                DiagramLabel::B2 => 4,
                DiagramLabel::I2(m) => m,
                _ => unreachable!(),
            };
            match gp_recognize(r)? {
                GpOutcome::Gp(rep) if rep.gonality == want => {
                    Ok((true, format!("generalized {want}-gon")))
                }
                GpOutcome::Gp(rep) => Ok((
                    false,
                    format!("gonality {} instead of {want}", rep.gonality),
                )),
                GpOutcome::NotGp(why) => Ok((false, format!("not a generalized polygon: {why}"))),
            }
        }
        DiagramLabel::C => Ok(check_complete_graph(r)),
        DiagramLabel::Af => Ok(check_affine_plane(r)),
    }
}

/// Points and edges of a complete graph: every line has exactly two
/// points, any two points lie on exactly one common line. At least three
/// points required so the shape is unambiguous.
fn check_complete_graph(r: &Geometry) -> (bool, String) {
    let points = r.objects_of_type(0);
    let lines = r.objects_of_type(1);
    if points.len() < 3 {
        return (false, "C: fewer than 3 points".into());
    }
    for &l in &lines {
        if r.neighbors(l).len() != 2 {
            return (false, format!("C: line {l} does not have exactly 2 points"));
        }
    }
    for (a, &p) in points.iter().enumerate() {
        for &q in &points[a + 1..] {
            let joint = lines
                .iter()
                .filter(|&&l| r.incident(p, l) && r.incident(q, l))
                .count();
            if joint != 1 {
                return (false, format!("C: points {p},{q} lie on {joint} common lines"));
            }
        }
    }
    (true, "C: complete graph".into())
}

/// Axiomatic affine plane: two points on a unique line, the Playfair
/// parallel axiom (checked by brute force), and a triangle exists.
fn check_affine_plane(r: &Geometry) -> (bool, String) {
    let points = r.objects_of_type(0);
    let lines = r.objects_of_type(1);
    for (a, &p) in points.iter().enumerate() {
        for &q in &points[a + 1..] {
            let joint = lines
                .iter()
                .filter(|&&l| r.incident(p, l) && r.incident(q, l))
                .count();
            if joint != 1 {
                return (false, format!("Af: points {p},{q} on {joint} common lines"));
            }
        }
    }
    for &l in &lines {
        for &p in &points {
            if r.incident(p, l) {
                continue;
            }
            // parallels through p: lines on p sharing no point with l
            let parallels = lines
                .iter()
                .filter(|&&m| {
                    r.incident(p, m)
                        && points
                            .iter()
                            .all(|&x| !(r.incident(x, l) && r.incident(x, m)))
                })
                .count();
            if parallels != 1 {
                return (
                    false,
                    format!("Af: {parallels} parallels to line {l} through point {p}"),
                );
            }
        }
    }
    // a triangle: three points pairwise joined by three distinct lines
    let has_triangle = points.iter().enumerate().any(|(a, &p)| {
        points[a + 1..].iter().enumerate().any(|(b, &q)| {
            points[a + 1 + b + 1..].iter().any(|&s| {
                let line_of = |x: usize, y: usize| {
                    lines
                        .iter()
                        .find(|&&l| r.incident(x, l) && r.incident(y, l))
                        .copied()
                };
                match (line_of(p, q), line_of(q, s), line_of(p, s)) {
                    (Some(l1), Some(l2), Some(l3)) => l1 != l2 && l2 != l3 && l1 != l3,
                    _ => false,
                }
            })
        })
    });
    if !has_triangle {
        return (false, "Af: no triangle".into());
    }
    (true, "Af: affine plane".into())
}

/// Tagged input for the Weyl functor. The caller states the class; the
/// functor verifies the claim before mapping. The functor is partial:
/// unsupported classes are a domain error.
pub enum WeylInput {
    /// a projective space over a genuine field, claiming dimension and order
    ProjectiveSpace { geometry: Geometry, dim: usize, q: u32 },
    /// a generalized polygon (recognized structurally)
    GeneralizedPolygon { geometry: Geometry },
    /// a building given with the Coxeter complex of its Weyl group
    Building {
        geometry: Geometry,
        weyl_complex: Geometry,
    },
    /// an already-thin catalog geometry: a fixed point of the functor
    ThinCatalog { geometry: Geometry },
}

/// The Weyl functor: sends each supported geometry to its F1 skeleton.
/// Idempotent up to isomorphism on its image.
pub fn weyl_image(x: &WeylInput) -> Result<Geometry> {
    match x {
        WeylInput::ProjectiveSpace { geometry, dim, q } => {
            let expected = pg_fq(*dim, *q, None)?;
            if !isomorphic(geometry, &expected.geometry) {
                return Err(Error::domain(format!(
                    "claimed PG({dim},{q}) does not match the projective space"
                )));
            }
            pg_f1(*dim as i64, None)
        }
        WeylInput::GeneralizedPolygon { geometry } => match gp_recognize(geometry)? {
            GpOutcome::Gp(rep) if rep.gonality >= 3 => ordinary_ngon(rep.gonality),
            GpOutcome::Gp(rep) => Err(Error::domain(format!(
                "gonality {} has no ordinary polygon image",
                rep.gonality
            ))),
            GpOutcome::NotGp(why) => Err(Error::domain(format!(
                "claimed generalized polygon is not one: {why}"
            ))),
        },
        WeylInput::Building {
            geometry,
            weyl_complex,
        } => {
            if !weyl_complex.is_thin() {
                return Err(Error::domain("claimed Weyl complex is not thin"));
            }
            if geometry.rank() != weyl_complex.rank() {
                return Err(Error::domain("building and Weyl complex rank mismatch"));
            }
            Ok(weyl_complex.clone())
        }
        WeylInput::ThinCatalog { geometry } => {
            if !geometry.is_thin() {
                return Err(Error::domain("claimed thin geometry is not thin"));
            }
            Ok(geometry.clone())
        }
    }
}
