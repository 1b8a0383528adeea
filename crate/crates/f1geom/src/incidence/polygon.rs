//! Generalized polygons: recognition by the incidence-graph
//! characterization (bipartite, diameter n, girth 2n), duality, ordinary
//! n-gons, and the rank-2 catalog classifier.

use crate::error::{Error, Result};

use super::Geometry;

/// Recognition result for a generalized n-gon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GpReport {
    /// the gonality n
    pub gonality: usize,
    /// points per line minus one
    pub s: usize,
    /// lines per point minus one
    pub t: usize,
    pub thick: bool,
    pub thin: bool,
}

/// Breadth-first distances from one vertex over the incidence graph.
fn bfs_dist(g: &Geometry, start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.num_objects()];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Exact diameter by BFS from every vertex; `None` if disconnected or empty.
fn diameter(g: &Geometry) -> Option<usize> {
    if g.num_objects() == 0 {
        return None;
    }
    let mut best = 0;
    for v in 0..g.num_objects() {
        let dist = bfs_dist(g, v);
        let ecc = *dist.iter().max().unwrap();
        if ecc == usize::MAX {
            return None;
        }
        best = best.max(ecc);
    }
    Some(best)
}

/// Exact girth by BFS from every vertex; `None` for acyclic graphs.
fn girth(g: &Geometry) -> Option<usize> {
    let mut best: Option<usize> = None;
    for v in 0..g.num_objects() {
        let mut dist = vec![usize::MAX; g.num_objects()];
        let mut parent = vec![usize::MAX; g.num_objects()];
        dist[v] = 0;
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let cycle = dist[x] + dist[y] + 1;
                    if best.is_none_or(|b| cycle < b) {
                        best = Some(cycle);
                    }
                }
            }
        }
    }
    best
}

/// Outcome of [`gp_recognize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GpOutcome {
    Gp(GpReport),
    NotGp(String),
}

/// Recognizes a rank-2 geometry as a generalized n-gon: the incidence
/// graph must be connected with girth exactly twice its diameter, and the
/// per-line and per-point valencies must be constant.
pub fn gp_recognize(g: &Geometry) -> Result<GpOutcome> {
    if g.rank() != 2 {
        return Err(Error::domain("gp_recognize requires a rank-2 geometry"));
    }
    let report = g.validate();
    if !report.is_valid() {
        return Ok(GpOutcome::NotGp("invalid geometry".into()));
    }
    let Some(d) = diameter(g) else {
        return Ok(GpOutcome::NotGp("incidence graph disconnected".into()));
    };
    let Some(girth) = girth(g) else {
        return Ok(GpOutcome::NotGp("incidence graph is acyclic".into()));
    };
    if girth != 2 * d {
        return Ok(GpOutcome::NotGp(format!(
            "girth {girth} is not twice the diameter {d}"
        )));
    }
    let n = d;
    if n < 2 {
        return Ok(GpOutcome::NotGp("gonality below 2".into()));
    }
    // constant parameters s, t
    let points = g.objects_of_type(0);
    let lines = g.objects_of_type(1);
    let line_sizes: Vec<usize> = lines.iter().map(|&l| g.neighbors(l).len()).collect();
    let point_sizes: Vec<usize> = points.iter().map(|&p| g.neighbors(p).len()).collect();
    let (Some(&ls), Some(&ps)) = (line_sizes.first(), point_sizes.first()) else {
        return Ok(GpOutcome::NotGp("missing points or lines".into()));
    };
    if line_sizes.iter().any(|&x| x != ls) || point_sizes.iter().any(|&x| x != ps) {
        return Ok(GpOutcome::NotGp("non-constant parameters".into()));
    }
    if ls < 2 || ps < 2 {
        return Ok(GpOutcome::NotGp("degenerate parameters".into()));
    }
    let s = ls - 1;
    let t = ps - 1;
    Ok(GpOutcome::Gp(GpReport {
        gonality: n,
        s,
        t,
        thick: s >= 2 && t >= 2,
        thin: s == 1 || t == 1,
    }))
}

/// Point-line duality: swap the two type labels. Applying it twice gives
/// back an isomorphic geometry; gp parameters swap s and t.
pub fn dualize(g: &Geometry) -> Result<Geometry> {
    if g.rank() != 2 {
        return Err(Error::domain("dualize requires a rank-2 geometry"));
    }
    let names = vec![g.type_names()[1].clone(), g.type_names()[0].clone()];
    let obj_types: Vec<usize> = (0..g.num_objects()).map(|x| 1 - g.type_of(x)).collect();
    Geometry::new_unchecked(names, obj_types, &g.incidence_pairs())
}

/// The ordinary m-gon: m points and m lines in a 2m-cycle incidence graph.
pub fn ordinary_ngon(m: usize) -> Result<Geometry> {
    if m < 3 {
        return Err(Error::domain("ordinary n-gon requires m >= 3"));
    }
    // points 0..m, lines m..2m; line m+i joins points i and i+1
    let mut obj_types = vec![0usize; m];
    obj_types.extend(vec![1usize; m]);
    let mut inc = Vec::with_capacity(2 * m);
    for i in 0..m {
        inc.push((i, m + i));
        inc.push(((i + 1) % m, m + i));
    }
    Geometry::new(vec!["point".into(), "line".into()], obj_types, &inc)
}

/// Catalog labels for thin connected rank-2 geometries over F1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Class {
    Di2,
    A2,
    B2,
    I2(usize),
    Af,
    U,
    Unclassified,
}

impl std::fmt::Display for Rank2Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rank2Class::Di2 => write!(f, "Di_2"),
            Rank2Class::A2 => write!(f, "A_2"),
            Rank2Class::B2 => write!(f, "B_2"),
            Rank2Class::I2(m) => write!(f, "I_2({m})"),
            Rank2Class::Af => write!(f, "Af"),
            Rank2Class::U => write!(f, "U"),
            Rank2Class::Unclassified => write!(f, "Unclassified"),
        }
    }
}

/// Classifies a rank-2 geometry against the F1 catalog. Precondition:
/// every object lies on at most two others (valency <= 2 in the
/// incidence graph); anything else is a domain error.
pub fn rank2_f1_classify(g: &Geometry) -> Result<Rank2Class> {
    if g.rank() != 2 {
        return Err(Error::domain("classification requires a rank-2 geometry"));
    }
    if (0..g.num_objects()).any(|x| g.neighbors(x).len() > 2) {
        return Err(Error::domain(
            "catalog precondition violated: an object is incident with more than two others",
        ));
    }
    if g.num_objects() == 0 || !g.is_connected() {
        return Ok(Rank2Class::Unclassified);
    }
    let n = g.num_objects();
    let edges = g.incidence_pairs().len();
    let all_deg2 = (0..n).all(|x| g.neighbors(x).len() == 2);
    if all_deg2 && edges == n {
        // a single cycle of length 2m
        let m = n / 2;
        return Ok(match m {
            2 => Rank2Class::Di2,
            3 => Rank2Class::A2,
            4 => Rank2Class::B2,
            m if m >= 5 => Rank2Class::I2(m),
            _ => Rank2Class::Unclassified,
        });
    }
    if edges == n - 1 {
        // a path (tree of valency <= 2 with end points)
        // Af is the special path line - point - line
        if n == 3 {
            let center = (0..n).find(|&x| g.neighbors(x).len() == 2).unwrap();
            if g.type_of(center) == 0 {
                return Ok(Rank2Class::Af);
            }
        }
        return Ok(Rank2Class::U);
    }
    Ok(Rank2Class::Unclassified)
}
