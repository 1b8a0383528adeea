//! Finite Tits systems: the BN axioms checked by enumeration, Bruhat
//! decomposition, parabolic subgroups, the coset building, kernel and
//! saturation, and concrete GL_n(F_p) instances.

use std::collections::{BTreeSet, HashMap};

use crate::coxeter::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::group::{EnumeratedGroup, GroupAction};
use crate::incidence::{isomorphic, Geometry};

/// Default cap on concrete group closures.
pub const DEFAULT_CLOSURE_BOUND: usize = 500_000;

/// Square matrix over F_p in row-major order.
pub type Mat = Vec<u8>;

pub fn mat_identity(n: usize) -> Mat {
    let mut m = vec![0u8; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

pub fn mat_mul(n: usize, p: u8, a: &[u8], b: &[u8]) -> Mat {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] =
                    ((out[i * n + j] as u16 + aik as u16 * b[k * n + j] as u16) % p as u16) as u8;
            }
        }
    }
    out
}

/// Inverse by Gauss-Jordan elimination mod p; `None` when singular.
pub fn mat_inv(n: usize, p: u8, a: &[u8]) -> Option<Mat> {
    let inv_scalar = |x: u8| -> u8 {
        // p is a small prime; brute-force inverse
        (1..p).find(|&y| (x as u16 * y as u16) % p as u16 == 1).unwrap_or(0)
    };
    let mut left: Vec<u8> = a.to_vec();
    let mut right = mat_identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| left[r * n + col] != 0)?;
        for j in 0..n {
            left.swap(col * n + j, pivot * n + j);
            right.swap(col * n + j, pivot * n + j);
        }
        let scale = inv_scalar(left[col * n + col]);
        for j in 0..n {
            left[col * n + j] = ((left[col * n + j] as u16 * scale as u16) % p as u16) as u8;
            right[col * n + j] = ((right[col * n + j] as u16 * scale as u16) % p as u16) as u8;
        }
        for r in 0..n {
            if r == col || left[r * n + col] == 0 {
                continue;
            }
            let factor = left[r * n + col];
            for j in 0..n {
                let sub = |dst: &mut Vec<u8>, src_val: u8| {
                    let cur = dst[r * n + j] as i16;
                    let delta = (factor as i16 * src_val as i16) % p as i16;
                    dst[r * n + j] = ((cur - delta).rem_euclid(p as i16)) as u8;
                };
                let lv = left[col * n + j];
                let rv = right[col * n + j];
                sub(&mut left, lv);
                sub(&mut right, rv);
            }
        }
    }
    Some(right)
}

/// A fully enumerated matrix group over F_p. Elements are canonical
/// row-major tuples; identifiers are positions in a deterministic list
/// (identity first, the rest in lexicographic order).
#[derive(Clone, Debug)]
pub struct ConcreteGroup {
    n: usize,
    p: u8,
    elements: Vec<Mat>,
    index: HashMap<Mat, usize>,
    inv: Vec<usize>,
}

impl ConcreteGroup {
    fn from_element_list(n: usize, p: u8, mut elements: Vec<Mat>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let id = mat_identity(n);
        let pos = elements
            .iter()
            .position(|m| *m == id)
            .ok_or_else(|| Error::domain("identity matrix missing"))?;
        elements.remove(pos);
        elements.insert(0, id);
        let index: HashMap<Mat, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut inv = Vec::with_capacity(elements.len());
        for m in &elements {
            let mi = mat_inv(n, p, m).ok_or_else(|| Error::domain("singular element"))?;
            let idx = *index
                .get(&mi)
                .ok_or_else(|| Error::domain("element set not closed under inversion"))?;
            inv.push(idx);
        }
        Ok(ConcreteGroup {
            n,
            p,
            elements,
            index,
            inv,
        })
    }

    /// Closure of invertible generator matrices.
    pub fn closure(n: usize, p: u8, generators: &[Mat], bound: Option<usize>) -> Result<Self> {
        let bound = bound.unwrap_or(DEFAULT_CLOSURE_BOUND);
        for g in generators {
            if g.len() != n * n {
                return Err(Error::domain("generator has the wrong shape"));
            }
            if mat_inv(n, p, g).is_none() {
                return Err(Error::domain("generator is not invertible"));
            }
        }
        let mut seen: BTreeSet<Mat> = BTreeSet::new();
        seen.insert(mat_identity(n));
        let mut frontier: Vec<Mat> = vec![mat_identity(n)];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = mat_mul(n, p, &x, g);
                if !seen.contains(&y) {
                    if seen.len() >= bound {
                        return Err(Error::resource(format!(
                            "closure exceeded bound {bound}"
                        )));
                    }
                    seen.insert(y.clone());
                    frontier.push(y);
                }
            }
        }
        ConcreteGroup::from_element_list(n, p, seen.into_iter().collect())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn element(&self, a: usize) -> &Mat {
        &self.elements[a]
    }

    pub fn id_of(&self, m: &Mat) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = mat_mul(self.n, self.p, &self.elements[a], &self.elements[b]);
        self.index[&m]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Is the given sorted id set a subgroup?
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.binary_search(&0).is_err() {
            return false;
        }
        set.iter().all(|&a| {
            set.binary_search(&self.inv(a)).is_ok()
                && set.iter().all(|&b| set.binary_search(&self.mul(a, b)).is_ok())
        })
    }

    /// Closure of a set of element ids inside this group.
    pub fn span(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order()];
        in_set[0] = true;
        let mut members = vec![0usize];
        let mut frontier: Vec<usize> = Vec::new();
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                members.push(s);
                frontier.push(s);
            }
        }
        while let Some(x) = frontier.pop() {
            for &g in seed {
                for y in [self.mul(x, g), self.mul(g, x)] {
                    if !in_set[y] {
                        in_set[y] = true;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }
}

/// A verified Tits system: the ambient group with Borel and monomial
/// subgroups, their intersection H, the Weyl group W = N/H, and the
/// distinguished generators S.
pub struct TitsSystem {
    pub g: ConcreteGroup,
    pub b: Vec<usize>,
    pub n: Vec<usize>,
    pub h: Vec<usize>,
    /// W = N/H with identity coset 0 and generators S
    pub w: EnumeratedGroup,
    /// generator positions: s_i is W element `s[i]`
    pub s: Vec<usize>,
    /// one G representative per W element (minimal member of the coset)
    pub w_reps: Vec<usize>,
}

/// Outcome of the axiom check: a witness or the first failure.
pub enum BnVerdict {
    Valid(TitsSystem),
    Invalid { axiom: String, detail: String },
}

fn sorted_product_set(g: &ConcreteGroup, xs: &[usize], ys: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    let mut seen = vec![false; g.order()];
    for &x in xs {
        for &y in ys {
            let z = g.mul(x, y);
            if !seen[z] {
                seen[z] = true;
                out.push(z);
            }
        }
    }
    out.sort_unstable();
    out
}

fn double_coset(g: &ConcreteGroup, b: &[usize], rep: usize) -> Vec<usize> {
    sorted_product_set(g, &sorted_product_set(g, b, &[rep]), b)
}

fn is_closed(g: &ConcreteGroup, set: &[usize]) -> bool {
    set.iter()
        .all(|&a| set.iter().all(|&b| set.binary_search(&g.mul(a, b)).is_ok()))
}

/// Checks (BN1)-(BN4) by direct set arithmetic. S is computed from the
/// uniqueness criterion: the nontrivial w for which B ∪ BwB is closed
/// under multiplication.
pub fn verify_bn(g: &ConcreteGroup, b: &[usize], n: &[usize]) -> Result<BnVerdict> {
    let mut b = b.to_vec();
    let mut n = n.to_vec();
    b.sort_unstable();
    b.dedup();
    n.sort_unstable();
    n.dedup();
    if !g.is_subgroup(&b) {
        return Err(Error::domain("B is not a subgroup"));
    }
    if !g.is_subgroup(&n) {
        return Err(Error::domain("N is not a subgroup"));
    }
    // H = B ∩ N, normal in N
    let h: Vec<usize> = b
        .iter()
        .copied()
        .filter(|x| n.binary_search(x).is_ok())
        .collect();
    for &x in &n {
        for &hh in &h {
            let conj = g.mul(g.mul(x, hh), g.inv(x));
            if h.binary_search(&conj).is_err() {
                return Ok(BnVerdict::Invalid {
                    axiom: "BN2".into(),
                    detail: format!("H is not normal in N: witness x={x}, h={hh}"),
                });
            }
        }
    }
    // W = N/H as an enumerated group over H-cosets
    let mut coset_of: HashMap<usize, usize> = HashMap::new();
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for &x in &n {
        if coset_of.contains_key(&x) {
            continue;
        }
        let mut coset: Vec<usize> = h.iter().map(|&hh| g.mul(x, hh)).collect();
        coset.sort_unstable();
        for &y in &coset {
            coset_of.insert(y, cosets.len());
        }
        cosets.push(coset);
    }
    // identity coset first, then by minimal representative
    let mut order_idx: Vec<usize> = (0..cosets.len()).collect();
    order_idx.sort_by_key(|&c| (cosets[c][0] != 0, cosets[c][0]));
    let rank_of: HashMap<usize, usize> =
        order_idx.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let cosets: Vec<Vec<usize>> = order_idx.iter().map(|&c| cosets[c].clone()).collect();
    let coset_of: HashMap<usize, usize> =
        coset_of.into_iter().map(|(x, c)| (x, rank_of[&c])).collect();
    let w_order = cosets.len();
    let w_reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let mut table = vec![0u32; w_order * w_order];
    for a in 0..w_order {
        for bb in 0..w_order {
            table[a * w_order + bb] = coset_of[&g.mul(w_reps[a], w_reps[bb])] as u32;
        }
    }
    // S from the closure criterion
    let mut s: Vec<usize> = Vec::new();
    for ww in 1..w_order {
        let mut union = b.clone();
        union.extend(double_coset(g, &b, w_reps[ww]));
        union.sort_unstable();
        union.dedup();
        if is_closed(g, &union) {
            s.push(ww);
        }
    }
    if s.is_empty() {
        return Ok(BnVerdict::Invalid {
            axiom: "BN2".into(),
            detail: "no nontrivial w makes B ∪ BwB a group; S is empty".into(),
        });
    }
    let w = EnumeratedGroup::from_table(w_order, table, s.iter().map(|&x| x as u32).collect())?;
    for &si in &s {
        if w.element_order(si) != 2 {
            return Ok(BnVerdict::Invalid {
                axiom: "BN2".into(),
                detail: format!("criterion element w={si} is not an involution"),
            });
        }
    }
    if w.subgroup_closure(&s).len() != w_order {
        return Ok(BnVerdict::Invalid {
            axiom: "BN2".into(),
            detail: "S does not generate W".into(),
        });
    }
    // (BN1) ⟨B, N⟩ = G
    let mut seed = b.clone();
    seed.extend_from_slice(&n);
    if g.span(&seed).len() != g.order() {
        return Ok(BnVerdict::Invalid {
            axiom: "BN1".into(),
            detail: "B and N do not generate G".into(),
        });
    }
    // (BN3) BsBwB ⊆ BwB ∪ BswB
    for &si in &s {
        let bsb = double_coset(g, &b, w_reps[si]);
        for ww in 0..w_order {
            let bwb = double_coset(g, &b, w_reps[ww]);
            let sw = w.mul(si, ww);
            let bswb = double_coset(g, &b, w_reps[sw]);
            let product = sorted_product_set(g, &bsb, &bwb);
            for &x in &product {
                if bwb.binary_search(&x).is_err() && bswb.binary_search(&x).is_err() {
                    return Ok(BnVerdict::Invalid {
                        axiom: "BN3".into(),
                        detail: format!("BsBwB escapes BwB ∪ BswB at s={si}, w={ww}, x={x}"),
                    });
                }
            }
        }
    }
    // (BN4) sBs ≠ B
    for &si in &s {
        let rep = w_reps[si];
        let mut sbs: Vec<usize> = b.iter().map(|&x| g.mul(g.mul(rep, x), rep)).collect();
        sbs.sort_unstable();
        if sbs == b {
            return Ok(BnVerdict::Invalid {
                axiom: "BN4".into(),
                detail: format!("sBs = B at s={si}"),
            });
        }
    }
    Ok(BnVerdict::Valid(TitsSystem {
        g: g.clone(),
        b,
        n,
        h,
        w,
        s,
        w_reps,
    }))
}

/// The Bruhat cells BwB, indexed by W elements.
pub struct BruhatDecomposition {
    /// cell element sets in W order
    pub cells: Vec<Vec<usize>>,
}

/// Computes all cells and verifies they partition G; also verifies
/// P_I = ∐_{w ∈ W_I} BwB for every subset I of S.
pub fn bruhat(ts: &TitsSystem) -> Result<BruhatDecomposition> {
    let cells: Vec<Vec<usize>> = ts
        .w_reps
        .iter()
        .map(|&rep| double_coset(&ts.g, &ts.b, rep))
        .collect();
    let mut seen = vec![false; ts.g.order()];
    for cell in &cells {
        for &x in cell {
            if seen[x] {
                return Err(Error::verification("Bruhat cells are not disjoint"));
            }
            seen[x] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::verification("Bruhat cells do not cover G"));
    }
    if cells[0] != ts.b {
        return Err(Error::verification("identity cell differs from B"));
    }
    // parabolic decomposition for every I ⊆ S
    for mask in 0..(1u32 << ts.s.len()) {
        let i_set: Vec<usize> = ts
            .s
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask >> k & 1 == 1)
            .map(|(_, &si)| si)
            .collect();
        let wi = ts.w.subgroup_closure(&i_set);
        let mut union: Vec<usize> = wi.iter().flat_map(|&ww| cells[ww].clone()).collect();
        union.sort_unstable();
        let p = parabolic(ts, &i_set)?;
        if union != p {
            return Err(Error::verification(format!(
                "P_I ≠ ∐ BwB for I mask {mask:#b}"
            )));
        }
    }
    Ok(BruhatDecomposition { cells })
}

/// The standard parabolic P_I = B·W_I·B, verified to be a subgroup.
pub fn parabolic(ts: &TitsSystem, i_set: &[usize]) -> Result<Vec<usize>> {
    for &si in i_set {
        if !ts.s.contains(&si) {
            return Err(Error::domain(format!("{si} is not in S")));
        }
    }
    let wi = ts.w.subgroup_closure(i_set);
    let mut out: Vec<usize> = Vec::new();
    for &ww in &wi {
        out.extend(double_coset(&ts.g, &ts.b, ts.w_reps[ww]));
    }
    out.sort_unstable();
    out.dedup();
    if !ts.g.is_subgroup(&out) {
        return Err(Error::verification("B·W_I·B is not closed"));
    }
    Ok(out)
}

/// The coset building together with the left coset behind each object.
pub struct CosetBuilding {
    pub geometry: Geometry,
    /// per object: the sorted element set of the coset g·P_{S∖{s}}
    pub cosets: Vec<Vec<usize>>,
}

/// The building of the Tits system: type-s objects are left cosets of
/// the maximal standard parabolic omitting s, incidence is nonempty
/// intersection.
pub fn coset_geometry(ts: &TitsSystem) -> Result<CosetBuilding> {
    let rank = ts.s.len();
    let mut obj_types = Vec::new();
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for (k, _) in ts.s.iter().enumerate() {
        let i_set: Vec<usize> = ts
            .s
            .iter()
            .enumerate()
            .filter(|&(k2, _)| k2 != k)
            .map(|(_, &si)| si)
            .collect();
        let p = parabolic(ts, &i_set)?;
        let mut seen = vec![false; ts.g.order()];
        for gid in 0..ts.g.order() {
            if seen[gid] {
                continue;
            }
            let mut coset: Vec<usize> = p.iter().map(|&x| ts.g.mul(gid, x)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            obj_types.push(k);
            cosets.push(coset);
        }
    }
    let mut inc = Vec::new();
    for i in 0..cosets.len() {
        for j in i + 1..cosets.len() {
            if obj_types[i] == obj_types[j] {
                continue;
            }
            let (mut a, mut bb) = (0usize, 0usize);
            let meets = loop {
                if a == cosets[i].len() || bb == cosets[j].len() {
                    break false;
                }
                match cosets[i][a].cmp(&cosets[j][bb]) {
                    std::cmp::Ordering::Equal => break true,
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => bb += 1,
                }
            };
            if meets {
                inc.push((i, j));
            }
        }
    }
    let type_names = (0..rank).map(|i| i.to_string()).collect();
    let geometry = Geometry::new(type_names, obj_types, &inc)?;
    Ok(CosetBuilding { geometry, cosets })
}

/// Kernel and saturation data of Theorem 2-style checks: K is the
/// intersection of all G-conjugates of B, E of all W-conjugates.
pub struct KernelReport {
    pub k: Vec<usize>,
    pub e: Vec<usize>,
    pub effective: bool,
    pub saturated: bool,
}

pub fn kernel_saturation(ts: &TitsSystem) -> KernelReport {
    let conj_b = |gid: usize| -> Vec<usize> {
        let mut out: Vec<usize> = ts
            .b
            .iter()
            .map(|&x| ts.g.mul(ts.g.mul(gid, x), ts.g.inv(gid)))
            .collect();
        out.sort_unstable();
        out
    };
    let intersect = |mut acc: Vec<usize>, other: &[usize]| -> Vec<usize> {
        acc.retain(|x| other.binary_search(x).is_ok());
        acc
    };
    let mut k = ts.b.clone();
    for gid in 0..ts.g.order() {
        k = intersect(k, &conj_b(gid));
        if k.len() == 1 {
            break;
        }
    }
    let mut e = ts.b.clone();
    for &rep in &ts.w_reps {
        e = intersect(e, &conj_b(rep));
    }
    let effective = k == vec![0];
    let ne = sorted_product_set(&ts.g, &ts.n, &e);
    let saturated = ne == ts.n;
    KernelReport {
        k,
        e,
        effective,
        saturated,
    }
}

/// G acts transitively on chambers of the building, and B is exactly the
/// stabilizer of the standard chamber (the parabolics themselves).
pub fn chamber_transitivity(ts: &TitsSystem, building: &CosetBuilding) -> Result<bool> {
    let object_of: HashMap<&Vec<usize>, usize> = building
        .cosets
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let act = |gid: usize, obj: usize| -> Result<usize> {
        let mut image: Vec<usize> = building.cosets[obj]
            .iter()
            .map(|&x| ts.g.mul(gid, x))
            .collect();
        image.sort_unstable();
        object_of
            .get(&image)
            .copied()
            .ok_or_else(|| Error::verification("coset image is not an object"))
    };
    // standard chamber: the objects whose coset contains the identity
    let standard: BTreeSet<usize> = (0..building.cosets.len())
        .filter(|&i| building.cosets[i].binary_search(&0).is_ok())
        .collect();
    if standard.len() != ts.s.len() {
        return Err(Error::verification("standard chamber has the wrong rank"));
    }
    let mut orbit: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut stabilizer: Vec<usize> = Vec::new();
    for gid in 0..ts.g.order() {
        let image: BTreeSet<usize> = standard
            .iter()
            .map(|&o| act(gid, o))
            .collect::<Result<_>>()?;
        if image == standard {
            stabilizer.push(gid);
        }
        orbit.insert(image);
    }
    if stabilizer != ts.b {
        return Err(Error::verification(
            "B is not the stabilizer of the standard chamber",
        ));
    }
    let total_chambers = building.geometry.chambers().len();
    Ok(orbit.len() == total_chambers)
}

/// The Coxeter matrix of W read off from generator product orders.
pub fn weyl_matrix(ts: &TitsSystem) -> Result<CoxeterMatrix> {
    let k = ts.s.len();
    let mut entries = vec![vec![2u32; k]; k];
    for i in 0..k {
        entries[i][i] = 1;
        for j in 0..k {
            if i != j {
                let prod = ts.w.mul(ts.s[i], ts.s[j]);
                entries[i][j] = ts.w.element_order(prod) as u32;
            }
        }
    }
    CoxeterMatrix::new(entries)
}

/// The Coxeter complex of W, realized inside W itself with generators S.
fn weyl_complex(ts: &TitsSystem) -> Result<(Geometry, Vec<Vec<usize>>, Vec<usize>)> {
    // mirror of coxeter::coxeter_complex, but keeping the coset data so
    // the embedding can pick representatives
    let k = ts.s.len();
    let mut obj_types = Vec::new();
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for omit in 0..k {
        let seed: Vec<usize> = (0..k).filter(|&i| i != omit).map(|i| ts.s[i]).collect();
        let sub = ts.w.subgroup_closure(&seed);
        for coset in ts.w.left_cosets(&sub) {
            obj_types.push(omit);
            cosets.push(coset);
        }
    }
    let mut inc = Vec::new();
    for i in 0..cosets.len() {
        for j in i + 1..cosets.len() {
            if obj_types[i] != obj_types[j]
                && cosets[i].iter().any(|x| cosets[j].binary_search(x).is_ok())
            {
                inc.push((i, j));
            }
        }
    }
    let type_names = (0..k).map(|i| i.to_string()).collect();
    let g = Geometry::new(type_names, obj_types.clone(), &inc)?;
    Ok((g, cosets, obj_types))
}

/// Maps each coset w·W_{S∖{s}} of the Coxeter complex to n_w·P_{S∖{s}}
/// in the building and verifies the map is an incidence-preserving
/// injection whose image is a thin subgeometry isomorphic to the
/// complex. Returns the object map.
pub fn apartment_embedding(ts: &TitsSystem, building: &CosetBuilding) -> Result<Vec<usize>> {
    let (complex, w_cosets, w_types) = weyl_complex(ts)?;
    let object_of: HashMap<&Vec<usize>, usize> = building
        .cosets
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let mut map = Vec::with_capacity(complex.num_objects());
    for (obj, coset) in w_cosets.iter().enumerate() {
        let w_rep = coset[0];
        let g_rep = ts.w_reps[w_rep];
        // image coset g_rep · P_{S∖{s_type}}
        let i_set: Vec<usize> = (0..ts.s.len())
            .filter(|&i| i != w_types[obj])
            .map(|i| ts.s[i])
            .collect();
        let p = parabolic(ts, &i_set)?;
        let mut image: Vec<usize> = p.iter().map(|&x| ts.g.mul(g_rep, x)).collect();
        image.sort_unstable();
        let target = object_of
            .get(&image)
            .copied()
            .ok_or_else(|| Error::verification(format!("image of complex object {obj} missing")))?;
        if building.geometry.type_of(target) != w_types[obj] {
            return Err(Error::verification(format!("object {obj} maps across types")));
        }
        map.push(target);
    }
    // injection
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != map.len() {
        return Err(Error::verification("apartment map is not injective"));
    }
    // incidence preserved both ways on the image
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            let in_complex = complex.incident(i, j);
            let in_building = building.geometry.incident(map[i], map[j]);
            if in_complex != in_building {
                return Err(Error::verification(format!(
                    "incidence mismatch at complex pair ({i},{j})"
                )));
            }
        }
    }
    let image_geometry = crate::incidence::induced(&building.geometry, &sorted);
    if !image_geometry.is_thin() {
        return Err(Error::verification("apartment image is not thin"));
    }
    if !isomorphic(&image_geometry, &complex) {
        return Err(Error::verification(
            "apartment image is not isomorphic to the Coxeter complex",
        ));
    }
    Ok(map)
}

/// Sharp transitivity: transitive and |G| = |X|.
pub fn sharply_transitive_check(action: &GroupAction) -> bool {
    action.is_transitive() && action.group.order() == action.degree()
}

/// GL_n(F_p) with its Borel subgroup (upper triangular) and monomial
/// subgroup, by direct enumeration.
pub fn builtin_gl(
    n: usize,
    p: u8,
    bound: Option<usize>,
) -> Result<(ConcreteGroup, Vec<usize>, Vec<usize>)> {
    if n < 2 {
        return Err(Error::domain("builtin_gl needs n >= 2"));
    }
    if !(2..=13).contains(&p) || (2..p).any(|d| p % d == 0) {
        return Err(Error::domain(format!("{p} is not a supported prime")));
    }
    let bound = bound.unwrap_or(DEFAULT_CLOSURE_BOUND);
    let cells = n * n;
    let total = (p as u64).checked_pow(cells as u32).ok_or_else(|| {
        Error::resource("matrix space too large to enumerate".to_string())
    })?;
    if total > bound as u64 {
        return Err(Error::resource(format!(
            "{p}^{cells} matrices exceed bound {bound}"
        )));
    }
    let mut elements = Vec::new();
    for code in 0..total {
        let mut m = vec![0u8; cells];
        let mut c = code;
        for slot in m.iter_mut() {
            *slot = (c % p as u64) as u8;
            c /= p as u64;
        }
        if mat_inv(n, p, &m).is_some() {
            elements.push(m);
        }
    }
    let g = ConcreteGroup::from_element_list(n, p, elements)?;
    let mut b = Vec::new();
    let mut nn = Vec::new();
    for id in 0..g.order() {
        let m = g.element(id);
        let upper = (0..n).all(|i| (0..i).all(|j| m[i * n + j] == 0));
        if upper {
            b.push(id);
        }
        let monomial = (0..n).all(|i| (0..n).filter(|&j| m[i * n + j] != 0).count() == 1)
            && (0..n).all(|j| (0..n).filter(|&i| m[i * n + j] != 0).count() == 1);
        if monomial {
            nn.push(id);
        }
    }
    Ok((g, b, nn))
}

/// The CLI-facing JSON report of a verified system.
pub fn report(ts: &TitsSystem, dec: &BruhatDecomposition, kernel: &KernelReport) -> serde_json::Value {
    serde_json::json!({
        "order_G": ts.g.order(),
        "order_B": ts.b.len(),
        "order_N": ts.n.len(),
        "order_H": ts.h.len(),
        "W_order": ts.w.order(),
        "S_size": ts.s.len(),
        "axioms": {"BN1": true, "BN2": true, "BN3": true, "BN4": true},
        "cells": dec
            .cells
            .iter()
            .enumerate()
            .map(|(w, c)| serde_json::json!({"w": w, "size": c.len()}))
            .collect::<Vec<_>>(),
        "order_G_mod_K": ts.g.order() / kernel.k.len(),
        "effective": kernel.effective,
        "saturated": kernel.saturated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::coxeter_complex;
    use crate::group::perm_compose;
    use crate::incidence::{gp_recognize, pg_fq, GpOutcome};

    fn system(n: usize, p: u8) -> TitsSystem {
        let (g, b, nn) = builtin_gl(n, p, None).unwrap();
        match verify_bn(&g, &b, &nn).unwrap() {
            BnVerdict::Valid(ts) => ts,
            BnVerdict::Invalid { axiom, detail } => {
                panic!("GL_{n}(F_{p}) failed {axiom}: {detail}")
            }
        }
    }

    #[test]
    fn matrix_arithmetic() {
        let a = vec![1, 1, 0, 1];
        let inv = mat_inv(2, 2, &a).unwrap();
        assert_eq!(mat_mul(2, 2, &a, &inv), mat_identity(2));
        assert!(mat_inv(2, 2, &[1, 1, 1, 1]).is_none());
        let b = vec![2, 1, 1, 1];
        let bi = mat_inv(2, 3, &b).unwrap();
        assert_eq!(mat_mul(2, 3, &b, &bi), mat_identity(2));
    }

    #[test]
    fn closure_orders() {
        // one transposition
        let g = ConcreteGroup::closure(2, 2, &[vec![0, 1, 1, 0]], None).unwrap();
        assert_eq!(g.order(), 2);
        // GL_2(F_2) from a transvection and the swap
        let g = ConcreteGroup::closure(2, 2, &[vec![1, 1, 0, 1], vec![0, 1, 1, 0]], None).unwrap();
        assert_eq!(g.order(), 6);
        // GL_3(F_2)
        let gens = vec![
            vec![1, 1, 0, 0, 1, 0, 0, 0, 1],
            vec![0, 0, 1, 1, 0, 0, 0, 1, 0],
        ];
        let g = ConcreteGroup::closure(3, 2, &gens, None).unwrap();
        assert_eq!(g.order(), 168);
        assert!(ConcreteGroup::closure(2, 2, &[vec![1, 1, 1, 1]], None).is_err());
        assert!(ConcreteGroup::closure(3, 3, &gens_of_gl3f3(), Some(100)).is_err());
    }

    fn gens_of_gl3f3() -> Vec<Mat> {
        vec![
            vec![1, 1, 0, 0, 1, 0, 0, 0, 1],
            vec![0, 0, 1, 1, 0, 0, 0, 1, 0],
            vec![2, 0, 0, 0, 1, 0, 0, 0, 1],
        ]
    }

    #[test]
    fn builtin_orders() {
        let (g, b, n) = builtin_gl(2, 2, None).unwrap();
        assert_eq!((g.order(), b.len(), n.len()), (6, 2, 2));
        let (g, b, n) = builtin_gl(3, 2, None).unwrap();
        assert_eq!((g.order(), b.len(), n.len()), (168, 8, 6));
        let (g, b, n) = builtin_gl(2, 3, None).unwrap();
        assert_eq!((g.order(), b.len(), n.len()), (48, 12, 8));
    }

    #[test]
    fn verify_gl_instances() {
        let ts = system(2, 2);
        assert_eq!((ts.w.order(), ts.s.len(), ts.h.len()), (2, 1, 1));
        let ts = system(3, 2);
        assert_eq!((ts.w.order(), ts.s.len(), ts.h.len()), (6, 2, 1));
        assert!(!ts.w.is_abelian());
        let ts = system(2, 3);
        assert_eq!((ts.w.order(), ts.s.len(), ts.h.len()), (2, 1, 4));
    }

    #[test]
    fn b_equals_n_fails_bn4() {
        let (g, _, _) = builtin_gl(2, 2, None).unwrap();
        let all: Vec<usize> = (0..g.order()).collect();
        match verify_bn(&g, &all, &all).unwrap() {
            BnVerdict::Invalid { .. } => {}
            BnVerdict::Valid(_) => panic!("B = N = G must fail"),
        }
    }

    #[test]
    fn bruhat_cells() {
        let ts = system(3, 2);
        let dec = bruhat(&ts).unwrap();
        let mut sizes: Vec<usize> = dec.cells.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![8, 16, 16, 32, 32, 64]);
        assert_eq!(sizes.iter().sum::<usize>(), 168);
        // |BwB| = |B|·2^{ℓ(w)} with lengths 0,1,1,2,2,3
        let mut expected: Vec<usize> = [0usize, 1, 1, 2, 2, 3]
            .iter()
            .map(|&l| 8 << l)
            .collect();
        expected.sort_unstable();
        assert_eq!(sizes, expected);

        let ts = system(2, 3);
        let dec = bruhat(&ts).unwrap();
        let mut sizes: Vec<usize> = dec.cells.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![12, 36]);
    }

    #[test]
    fn parabolic_lattice() {
        let ts = system(3, 2);
        assert_eq!(parabolic(&ts, &[]).unwrap(), ts.b);
        assert_eq!(parabolic(&ts, &ts.s.clone()).unwrap().len(), 168);
        let p1 = parabolic(&ts, &[ts.s[0]]).unwrap();
        assert_eq!(p1.len(), 24);
        // intersections multiply down to parabolics of the intersection
        let p2 = parabolic(&ts, &[ts.s[1]]).unwrap();
        let meet: Vec<usize> = p1
            .iter()
            .copied()
            .filter(|x| p2.binary_search(x).is_ok())
            .collect();
        assert_eq!(meet, ts.b);
    }

    #[test]
    fn building_is_fano_plane() {
        let ts = system(3, 2);
        let building = coset_geometry(&ts).unwrap();
        assert_eq!(building.geometry.objects_of_type(0).len(), 7);
        assert_eq!(building.geometry.objects_of_type(1).len(), 7);
        match gp_recognize(&building.geometry).unwrap() {
            GpOutcome::Gp(rep) => {
                assert_eq!((rep.gonality, rep.s, rep.t), (3, 2, 2));
                assert!(rep.thick);
            }
            GpOutcome::NotGp(why) => panic!("not a generalized polygon: {why}"),
        }
        let fano = pg_fq(2, 2, None).unwrap().geometry;
        assert!(isomorphic(&building.geometry, &fano));
    }

    #[test]
    fn rank_one_buildings_are_point_rows() {
        let ts = system(2, 2);
        let building = coset_geometry(&ts).unwrap();
        assert_eq!(building.geometry.num_objects(), 3);
        let ts = system(2, 3);
        let building = coset_geometry(&ts).unwrap();
        assert_eq!(building.geometry.num_objects(), 4);
    }

    #[test]
    fn kernels() {
        let ts = system(3, 2);
        let kr = kernel_saturation(&ts);
        assert_eq!(kr.k, vec![0]);
        assert!(kr.effective);
        assert!(kr.saturated);
        // K ⊆ E always
        assert!(kr.k.iter().all(|x| kr.e.binary_search(x).is_ok()));

        let ts = system(2, 3);
        let kr = kernel_saturation(&ts);
        assert_eq!(kr.k.len(), 2);
        assert!(!kr.effective);
        // the kernel is the scalar subgroup
        for &x in &kr.k {
            let m = ts.g.element(x);
            assert!(m[1] == 0 && m[2] == 0 && m[0] == m[3]);
        }
        assert!(kr.k.iter().all(|x| kr.e.binary_search(x).is_ok()));
    }

    #[test]
    fn chamber_transitive_with_borel_stabilizer() {
        for (n, p) in [(2usize, 2u8), (3, 2), (2, 3)] {
            let ts = system(n, p);
            let building = coset_geometry(&ts).unwrap();
            assert!(chamber_transitivity(&ts, &building).unwrap(), "GL_{n}(F_{p})");
        }
    }

    #[test]
    fn apartments_embed() {
        let ts = system(3, 2);
        let building = coset_geometry(&ts).unwrap();
        let map = apartment_embedding(&ts, &building).unwrap();
        // triangle inside the Fano plane
        assert_eq!(map.len(), 6);

        let ts = system(2, 3);
        let building = coset_geometry(&ts).unwrap();
        let map = apartment_embedding(&ts, &building).unwrap();
        assert_eq!(map.len(), 2);
    }

    #[test]
    fn weyl_matrix_matches_coxeter_complex() {
        let ts = system(3, 2);
        let m = weyl_matrix(&ts).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.entry(0, 1), 3);
        let w_complex = coxeter_complex(&ts.w, &m).unwrap();
        assert_eq!(w_complex.num_objects(), 6);
        assert!(w_complex.is_thin());
    }

    #[test]
    fn sharp_transitivity() {
        // Z/7 acting regularly on 7 points (Singer style)
        let mut table = vec![0u32; 49];
        for a in 0..7usize {
            for b in 0..7usize {
                table[a * 7 + b] = ((a + b) % 7) as u32;
            }
        }
        let z7 = EnumeratedGroup::from_table(7, table, vec![1]).unwrap();
        let perms: Vec<Vec<usize>> = (0..7)
            .map(|k| (0..7).map(|x| (x + k) % 7).collect())
            .collect();
        let action = GroupAction::new(z7, perms).unwrap();
        assert!(sharply_transitive_check(&action));

        // S_3 on 3 points is transitive but not sharply
        let s3_gens = [vec![1usize, 0, 2], vec![0usize, 2, 1]];
        let (elems, s3) = crate::group::closure_group(
            vec![0usize, 1, 2],
            &s3_gens,
            |a, b| perm_compose(a, b),
            1000,
        )
        .unwrap();
        let action = GroupAction::new(s3, elems).unwrap();
        assert!(action.is_transitive());
        assert!(!sharply_transitive_check(&action));

        // trivial group on one point
        let triv = EnumeratedGroup::from_table(1, vec![0], vec![]).unwrap();
        let action = GroupAction::new(triv, vec![vec![0]]).unwrap();
        assert!(sharply_transitive_check(&action));
    }

    #[test]
    fn json_report_shape() {
        let ts = system(2, 2);
        let dec = bruhat(&ts).unwrap();
        let kr = kernel_saturation(&ts);
        let rep = report(&ts, &dec, &kr);
        assert_eq!(rep["order_G"], 6);
        assert_eq!(rep["W_order"], 2);
        assert_eq!(rep["axioms"]["BN3"], true);
        assert_eq!(rep["cells"].as_array().unwrap().len(), 2);
    }
}
