//! Absolute linear algebra over `F1^n = {0} ∪ μ_n`.
//!
//! Vector spaces are pointed free `μ_n`-sets: a distinguished zero plus
//! `d` free orbits of size `n`. There is no addition anywhere; the
//! general linear group is the group of monomial matrices.

mod fq;
mod monomial;

pub use fq::{FqElem, FqField, count_subspaces, enumerate_subspaces, mult_as_monomial, power_residue};
pub use monomial::{gl_enumerate, mm_sign_check, perm_rep_to_f1, MonomialMatrix, DEFAULT_GL_BOUND};

use crate::error::{Error, Result};

/// A scalar of `F1^n`: zero, or `μ^u` for the fixed abstract generator μ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct F1nScalar {
    modulus: u32,
    /// `None` is the absorbing zero; `Some(u)` is `μ^u` with `u < modulus`.
    value: Option<u32>,
}

impl F1nScalar {
    pub fn zero(modulus: u32) -> Self {
        assert!(modulus > 0);
        F1nScalar {
            modulus,
            value: None,
        }
    }

    pub fn unit(modulus: u32, exponent: u32) -> Self {
        assert!(modulus > 0);
        F1nScalar {
            modulus,
            value: Some(exponent % modulus),
        }
    }

    pub fn one(modulus: u32) -> Self {
        F1nScalar::unit(modulus, 0)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_none()
    }

    /// Exponent of μ, or `None` for zero.
    pub fn exponent(&self) -> Option<u32> {
        self.value
    }
}

/// Product in `F1^n`: zero absorbs, exponents add mod n.
pub fn scalar_mul(a: F1nScalar, b: F1nScalar) -> Result<F1nScalar> {
    if a.modulus != b.modulus {
        return Err(Error::domain(format!(
            "scalar modulus mismatch: {} vs {}",
            a.modulus, b.modulus
        )));
    }
    Ok(match (a.value, b.value) {
        (Some(u), Some(v)) => F1nScalar::unit(a.modulus, (u + v) % a.modulus),
        _ => F1nScalar::zero(a.modulus),
    })
}

/// A nonzero element of an `F1^n`-space: orbit index and μ-exponent.
pub type SpaceElem = (usize, u32);

/// A finite-dimensional `F1^n` vector space: the point 0 together with
/// `dim` free μ_n-orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct F1nSpace {
    modulus: u32,
    dim: usize,
}

impl F1nSpace {
    pub fn new(dim: usize, modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain(
                "infinite scalar groups (μ replaced by Z) are not supported",
            ));
        }
        Ok(F1nSpace { dim, modulus })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// All nonzero elements, `dim * modulus` of them, in canonical order.
    pub fn nonzero_elements(&self) -> Vec<SpaceElem> {
        let mut out = Vec::with_capacity(self.dim * self.modulus as usize);
        for j in 0..self.dim {
            for u in 0..self.modulus {
                out.push((j, u));
            }
        }
        out
    }

    /// Action of `μ^k` on a nonzero element.
    pub fn mu_act(&self, x: SpaceElem, k: u32) -> SpaceElem {
        (x.0, (x.1 + k) % self.modulus)
    }

    /// The free-action invariant: no nonzero element is fixed by a
    /// nontrivial μ_n element, and there are exactly `dim` orbits.
    pub fn verify_free_action(&self) -> bool {
        let elems = self.nonzero_elements();
        for &x in &elems {
            for k in 1..self.modulus {
                if self.mu_act(x, k) == x {
                    return false;
                }
            }
        }
        let orbit_count = elems.len() / self.modulus as usize;
        orbit_count == self.dim && elems.len() % self.modulus as usize == 0
    }
}

/// Disjoint union with the two zero points identified; dimensions add.
pub fn direct_sum(v: &F1nSpace, w: &F1nSpace) -> Result<F1nSpace> {
    if v.modulus != w.modulus {
        return Err(Error::domain("direct_sum: modulus mismatch"));
    }
    F1nSpace::new(v.dim + w.dim, v.modulus)
}

/// Tensor product: the Cartesian product of nonzero sets modulo the
/// anti-diagonal μ_n-action `(x, y) ~ (x^ν, y^{ν^{-1}})`, computed by an
/// explicit orbit merge, with the residual action checked free.
pub fn tensor(v: &F1nSpace, w: &F1nSpace) -> Result<F1nSpace> {
    if v.modulus != w.modulus {
        return Err(Error::domain("tensor: modulus mismatch"));
    }
    let n = v.modulus;
    let xs = v.nonzero_elements();
    let ys = w.nonzero_elements();
    let npairs = xs.len() * ys.len();
    let pair_id = |x: SpaceElem, y: SpaceElem| -> usize {
        (x.0 * n as usize + x.1 as usize) * ys.len() + (y.0 * n as usize + y.1 as usize)
    };
    // union-find merge of the anti-diagonal orbits
    let mut parent: Vec<usize> = (0..npairs).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for &x in &xs {
        for &y in &ys {
            let a = pair_id(x, y);
            for nu in 1..n {
                let b = pair_id(v.mu_act(x, nu), w.mu_act(y, n - nu));
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut classes = std::collections::HashMap::new();
    for i in 0..npairs {
        let r = find(&mut parent, i);
        *classes.entry(r).or_insert(0usize) += 1;
    }
    // every anti-diagonal orbit must have exactly n pairs
    if classes.values().any(|&c| c != n as usize) {
        return Err(Error::verification(
            "tensor: anti-diagonal action was not free on pairs",
        ));
    }
    let class_count = classes.len();
    // residual μ_n action: ν moves the class of (x, y) to that of (x^ν, y)
    let mut fixed_free = true;
    for &x in &xs {
        for &y in &ys {
            let c0 = find(&mut parent, pair_id(x, y));
            for nu in 1..n {
                if find(&mut parent, pair_id(v.mu_act(x, nu), y)) == c0 {
                    fixed_free = false;
                }
            }
        }
    }
    if !fixed_free {
        return Err(Error::verification(
            "tensor: residual μ_n action is not free",
        ));
    }
    if class_count % n as usize != 0 {
        return Err(Error::verification("tensor: class count not divisible by n"));
    }
    F1nSpace::new(class_count / n as usize, n)
}

/// Re-orbit the same nonzero set under the unique order-`m` subgroup of
/// μ_n (generated by `μ^{n/m}`); dimension becomes `d * (n/m)`.
pub fn restrict_scalars(v: &F1nSpace, m: u32) -> Result<F1nSpace> {
    if m == 0 || v.modulus % m != 0 {
        return Err(Error::domain(format!(
            "restrict_scalars: {} does not divide {}",
            m, v.modulus
        )));
    }
    let n = v.modulus;
    let step = n / m; // μ^step generates the order-m subgroup
    let elems = v.nonzero_elements();
    let mut seen = std::collections::HashSet::new();
    let mut orbit_count = 0usize;
    for &x in &elems {
        if seen.contains(&x) {
            continue;
        }
        orbit_count += 1;
        for k in 0..m {
            seen.insert(v.mu_act(x, k * step));
        }
    }
    if orbit_count != v.dim * step as usize {
        return Err(Error::verification("restrict_scalars: orbit count mismatch"));
    }
    F1nSpace::new(orbit_count, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_multiplication() {
        let n = 3;
        let zero = F1nScalar::zero(n);
        let m1 = F1nScalar::unit(n, 1);
        let m2 = F1nScalar::unit(n, 2);
        assert_eq!(scalar_mul(zero, m2).unwrap(), zero);
        assert_eq!(scalar_mul(m1, m2).unwrap(), F1nScalar::one(n));
        let one = F1nScalar::one(1);
        assert_eq!(scalar_mul(one, one).unwrap(), one);
        assert!(scalar_mul(m1, F1nScalar::one(2)).is_err());
    }

    #[test]
    fn direct_sum_dimensions() {
        let v = F1nSpace::new(2, 2).unwrap();
        let w = F1nSpace::new(3, 2).unwrap();
        let s = direct_sum(&v, &w).unwrap();
        assert_eq!(s.dim(), 5);
        assert_eq!(s.nonzero_elements().len(), 10);
        let zero = F1nSpace::new(0, 2).unwrap();
        assert_eq!(direct_sum(&v, &zero).unwrap(), v);
        assert!(direct_sum(&v, &F1nSpace::new(1, 3).unwrap()).is_err());
    }

    #[test]
    fn tensor_dimensions() {
        let v = F1nSpace::new(2, 2).unwrap();
        let w = F1nSpace::new(3, 2).unwrap();
        let t = tensor(&v, &w).unwrap();
        assert_eq!(t.dim(), 6);
        assert_eq!(t.nonzero_elements().len(), 12);
        let a = F1nSpace::new(1, 5).unwrap();
        assert_eq!(tensor(&a, &a).unwrap().dim(), 1);
        // n=3, dims (2,2): 12 pairs-classes in 4 orbits
        let v3 = F1nSpace::new(2, 3).unwrap();
        let t3 = tensor(&v3, &v3).unwrap();
        assert_eq!(t3.dim(), 4);
        assert_eq!(t3.nonzero_elements().len(), 12);
    }

    #[test]
    fn dimension_theorems_by_counting() {
        for n in 1..=4u32 {
            for d in 0..=6usize {
                for e in 0..=6usize {
                    let v = F1nSpace::new(d, n).unwrap();
                    let w = F1nSpace::new(e, n).unwrap();
                    let s = direct_sum(&v, &w).unwrap();
                    assert_eq!(s.nonzero_elements().len(), (d + e) * n as usize);
                    assert_eq!(s.nonzero_elements().len() / n as usize, d + e);
                    if d <= 4 && e <= 4 {
                        let t = tensor(&v, &w).unwrap();
                        assert_eq!(t.nonzero_elements().len(), d * e * n as usize);
                        assert_eq!(t.dim(), d * e);
                        assert!(t.verify_free_action());
                    }
                }
            }
        }
    }

    #[test]
    fn scalar_restriction() {
        let v = F1nSpace::new(2, 4).unwrap();
        let r = restrict_scalars(&v, 2).unwrap();
        assert_eq!(r.dim(), 4);
        assert_eq!(r.modulus(), 2);
        assert_eq!(restrict_scalars(&v, 4).unwrap(), v);
        let f1 = restrict_scalars(&v, 1).unwrap();
        assert_eq!(f1.dim(), 8);
        assert!(restrict_scalars(&v, 3).is_err());
    }

    #[test]
    fn restriction_composes() {
        // m' | m | n  =>  restricting twice equals restricting once
        let n = 12u32;
        for d in 0..4usize {
            let v = F1nSpace::new(d, n).unwrap();
            for m in [1u32, 2, 3, 4, 6, 12] {
                let once = restrict_scalars(&v, m).unwrap();
                for mp in [1u32, 2, 3, 4, 6, 12] {
                    if m % mp != 0 {
                        continue;
                    }
                    assert_eq!(
                        restrict_scalars(&once, mp).unwrap(),
                        restrict_scalars(&v, mp).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn free_action_everywhere() {
        for n in 1..=4u32 {
            for d in 0..=5usize {
                assert!(F1nSpace::new(d, n).unwrap().verify_free_action());
            }
        }
    }

    #[test]
    fn infinite_modulus_rejected() {
        assert!(F1nSpace::new(2, 0).is_err());
    }
}
