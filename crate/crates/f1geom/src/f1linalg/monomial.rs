//! Monomial matrices: the general linear groups `GL_d(F1^n) ≅ S_d ≀ (μ_n)^d`.

use crate::error::{Error, Result};
use crate::group::{closure_group, perm_sign, EnumeratedGroup, GroupAction};

use super::F1nScalar;

/// Default cap on `d! * n^d` for [`gl_enumerate`].
pub const DEFAULT_GL_BOUND: usize = 100_000;

/// A `d × d` matrix over `F1^n` with exactly one nonzero entry per row
/// and per column: basis vector `b_i` maps to `b_{σ(i)}^{β_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    modulus: u32,
    /// σ as an image list: column `i` has its nonzero entry in row `perm[i]`.
    perm: Vec<usize>,
    /// β_i, the μ-exponent attached to column `i`.
    exps: Vec<u32>,
}

impl MonomialMatrix {
    pub fn new(modulus: u32, perm: Vec<usize>, exps: Vec<u32>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        if perm.len() != exps.len() {
            return Err(Error::domain("perm and exps must have equal length"));
        }
        if !crate::group::is_permutation(&perm) {
            return Err(Error::domain("perm is not a permutation"));
        }
        let exps = exps.into_iter().map(|e| e % modulus).collect();
        Ok(MonomialMatrix {
            modulus,
            perm,
            exps,
        })
    }

    pub fn identity(size: usize, modulus: u32) -> Self {
        MonomialMatrix {
            modulus,
            perm: (0..size).collect(),
            exps: vec![0; size],
        }
    }

    /// Permutation matrix over `F1^n` (all exponents zero).
    pub fn from_perm(perm: Vec<usize>, modulus: u32) -> Result<Self> {
        let n = perm.len();
        MonomialMatrix::new(modulus, perm, vec![0; n])
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Entry in `(row, col)`: `μ^{β_col}` if `row = σ(col)`, else zero.
    pub fn entry(&self, row: usize, col: usize) -> F1nScalar {
        if self.perm[col] == row {
            F1nScalar::unit(self.modulus, self.exps[col])
        } else {
            F1nScalar::zero(self.modulus)
        }
    }

    /// Composition `self ∘ rhs`: apply `rhs` first. Matches entrywise
    /// matrix multiplication (no additions ever collide).
    pub fn compose(&self, rhs: &MonomialMatrix) -> Result<MonomialMatrix> {
        if self.size() != rhs.size() || self.modulus != rhs.modulus {
            return Err(Error::domain("monomial matrix size/modulus mismatch"));
        }
        let n = self.modulus;
        let size = self.size();
        let mut perm = vec![0usize; size];
        let mut exps = vec![0u32; size];
        for i in 0..size {
            let mid = rhs.perm[i];
            perm[i] = self.perm[mid];
            exps[i] = (rhs.exps[i] + self.exps[mid]) % n;
        }
        Ok(MonomialMatrix {
            modulus: n,
            perm,
            exps,
        })
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let size = self.size();
        let mut perm = vec![0usize; size];
        let mut exps = vec![0u32; size];
        for i in 0..size {
            perm[self.perm[i]] = i;
            exps[self.perm[i]] = (self.modulus - self.exps[i]) % self.modulus;
        }
        MonomialMatrix {
            modulus: self.modulus,
            perm,
            exps,
        }
    }

    /// `det(A) = ∏ β_i ∈ μ_n`.
    pub fn det(&self) -> F1nScalar {
        let sum: u32 = self
            .exps
            .iter()
            .fold(0u32, |acc, &e| (acc + e) % self.modulus);
        F1nScalar::unit(self.modulus, sum)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x) && self.exps.iter().all(|&e| e == 0)
    }

    /// The permutation induced on the `d * n` nonzero elements of the
    /// underlying space, element `(j, u)` at index `j * n + u`.
    pub fn induced_permutation(&self) -> Vec<usize> {
        let n = self.modulus as usize;
        let d = self.size();
        let mut out = vec![0usize; d * n];
        for j in 0..d {
            for u in 0..n {
                let img_orbit = self.perm[j];
                let img_exp = (u + self.exps[j] as usize) % n;
                out[j * n + u] = img_orbit * n + img_exp;
            }
        }
        out
    }

    /// Forget the exponents: the underlying permutation matrix over F1.
    pub fn forget_exponents(&self) -> MonomialMatrix {
        MonomialMatrix {
            modulus: 1,
            perm: self.perm.clone(),
            exps: vec![0; self.size()],
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "size": self.size(),
            "modulus": self.modulus,
            "perm": self.perm,
            "exps": self.exps,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let modulus = v["modulus"]
            .as_u64()
            .ok_or_else(|| Error::parse("monomial matrix: missing modulus"))?
            as u32;
        let perm = v["perm"]
            .as_array()
            .ok_or_else(|| Error::parse("monomial matrix: missing perm"))?
            .iter()
            .map(|x| x.as_u64().map(|v| v as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::parse("monomial matrix: bad perm"))?;
        let exps = v["exps"]
            .as_array()
            .ok_or_else(|| Error::parse("monomial matrix: missing exps"))?
            .iter()
            .map(|x| x.as_u64().map(|v| v as u32))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::parse("monomial matrix: bad exps"))?;
        MonomialMatrix::new(modulus, perm, exps)
    }
}

/// For `n = 2`: the determinant equals the parity sign of the permutation
/// induced on the `2d` nonzero elements. Returns whether they agree
/// (they always must).
pub fn mm_sign_check(a: &MonomialMatrix) -> Result<bool> {
    if a.modulus() != 2 {
        return Err(Error::domain("sign check requires modulus 2"));
    }
    let sign = perm_sign(&a.induced_permutation());
    let det_sign = match a.det().exponent() {
        Some(0) => 1,
        Some(1) => -1,
        _ => unreachable!("det of a monomial matrix is a unit"),
    };
    Ok(sign == det_sign)
}

/// Every element of `GL_d(F1^n)`, in a deterministic order, as a fully
/// tabulated group. Order is `d! * n^d`.
pub fn gl_enumerate(d: usize, n: u32, bound: Option<usize>) -> Result<(Vec<MonomialMatrix>, EnumeratedGroup)> {
    let bound = bound.unwrap_or(DEFAULT_GL_BOUND);
    let expected = (1..=d).product::<usize>() * (n as usize).pow(d as u32);
    if expected > bound {
        return Err(Error::resource(format!(
            "GL_{d}(F1^{n}) has {expected} elements, above the bound {bound}"
        )));
    }
    // generators: adjacent transpositions and the scalar twist on slot 0
    let mut gens = Vec::new();
    for i in 0..d.saturating_sub(1) {
        let mut p: Vec<usize> = (0..d).collect();
        p.swap(i, i + 1);
        gens.push(MonomialMatrix::from_perm(p, n)?);
    }
    if n > 1 && d > 0 {
        let mut exps = vec![0u32; d];
        exps[0] = 1;
        gens.push(MonomialMatrix::new(n, (0..d).collect(), exps)?);
    }
    let (elems, group) = closure_group(
        MonomialMatrix::identity(d, n),
        &gens,
        |a, b| a.compose(b).expect("same size and modulus"),
        bound + 1,
    )?;
    if elems.len() != expected {
        return Err(Error::verification(format!(
            "GL_{d}(F1^{n}) closure found {} elements, expected {expected}",
            elems.len()
        )));
    }
    Ok((elems, group))
}

/// A permutation representation, viewed as an F1-linear representation:
/// each group element becomes its permutation matrix in `GL_d(F1^1)`.
/// The homomorphism property is checked on all pairs of generators.
pub fn perm_rep_to_f1(action: &GroupAction) -> Result<Vec<MonomialMatrix>> {
    let mats: Vec<MonomialMatrix> = action
        .perms
        .iter()
        .map(|p| MonomialMatrix::from_perm(p.clone(), 1))
        .collect::<Result<_>>()?;
    for &a in action.group.generators() {
        for &b in action.group.generators() {
            let (a, b) = (a as usize, b as usize);
            let ab = action.group.mul(a, b);
            if mats[a].compose(&mats[b])? != mats[ab] {
                return Err(Error::domain(
                    "input is not an action: matrix composition disagrees",
                ));
            }
        }
    }
    Ok(mats)
}
