//! Genuine finite fields `F_{p^e}`, the power residue symbol, and the
//! monomial-matrix reading of multiplication maps.
//!
//! Elements are degree-<e coefficient vectors over `Z/pZ`, indexed by the
//! integer code `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. The irreducible
//! modulus is found by lexicographic search unless supplied, and the
//! stored primitive root is verified to generate the unit group.

use crate::error::{Error, Result};

use super::{F1nScalar, MonomialMatrix};

/// An element id inside its field: `0` is zero, `1` is one.
pub type FqElem = u32;

#[derive(Clone, Debug)]
pub struct FqField {
    p: u32,
    e: u32,
    q: u32,
    /// coefficients of the monic irreducible modulus, degree e (length e+1)
    irreducible: Vec<u32>,
    add_table: Vec<FqElem>,
    mul_table: Vec<FqElem>,
    primitive_root: FqElem,
    /// discrete log base the primitive root, indexed by nonzero element
    dlog: Vec<u32>,
}

impl FqField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        FqField::new(p, 1, None)
    }

    /// `F_{p^e}`. If `irreducible` is `None`, the first monic irreducible
    /// of degree `e` in lexicographic coefficient order is used.
    pub fn new(p: u32, e: u32, irreducible: Option<Vec<u32>>) -> Result<Self> {
        if e == 0 || p < 2 || !is_prime(p) {
            return Err(Error::domain(format!("bad field parameters p={p}, e={e}")));
        }
        let q = p.checked_pow(e).ok_or_else(|| Error::domain("q overflow"))?;
        if q > 4096 {
            return Err(Error::resource(format!("field of size {q} above table bound")));
        }
        let irreducible = match irreducible {
            Some(f) => {
                if f.len() != e as usize + 1 || f[e as usize] % p != 1 {
                    return Err(Error::domain("modulus must be monic of degree e"));
                }
                let f: Vec<u32> = f.into_iter().map(|c| c % p).collect();
                if !poly_irreducible(&f, p) {
                    return Err(Error::domain("supplied modulus is reducible"));
                }
                f
            }
            None => find_irreducible(p, e)?,
        };
        // tables over element codes
        let qi = q as usize;
        let mut add_table = vec![0u32; qi * qi];
        let mut mul_table = vec![0u32; qi * qi];
        for a in 0..q {
            let ca = decode(a, p, e);
            for b in 0..=a {
                let cb = decode(b, p, e);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
                let s = encode(&sum, p);
                add_table[a as usize * qi + b as usize] = s;
                add_table[b as usize * qi + a as usize] = s;
                let prod = poly_mulmod(&ca, &cb, &irreducible, p);
                let m = encode(&prod, p);
                mul_table[a as usize * qi + b as usize] = m;
                mul_table[b as usize * qi + a as usize] = m;
            }
        }
        let mut field = FqField {
            p,
            e,
            q,
            irreducible,
            add_table,
            mul_table,
            primitive_root: 0,
            dlog: vec![0; qi],
        };
        // smallest element generating the unit group
        let root = (2..q)
            .chain(std::iter::once(1))
            .find(|&g| field.multiplicative_order(g) == q - 1)
            .ok_or_else(|| Error::verification("no primitive root found"))?;
        field.primitive_root = root;
        let mut x = 1u32;
        for k in 0..q - 1 {
            field.dlog[x as usize] = k;
            x = field.mul(x, root);
        }
        debug_assert_eq!(x, 1);
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    pub fn primitive_root(&self) -> FqElem {
        self.primitive_root
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add_table[a as usize * self.q as usize + b as usize]
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        self.mul_table[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn pow(&self, a: FqElem, mut k: u64) -> FqElem {
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn multiplicative_order(&self, a: FqElem) -> u32 {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Discrete log base the stored primitive root; `a` must be nonzero.
    pub fn dlog(&self, a: FqElem) -> Result<u32> {
        if a == 0 {
            return Err(Error::domain("discrete log of zero"));
        }
        Ok(self.dlog[a as usize])
    }

    /// Coefficient vector of an element, constant term first.
    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        decode(a, self.p, self.e)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "e": self.e,
            "irreducible": self.irreducible,
            "primitive_root": self.coeffs(self.primitive_root),
        })
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn decode(code: u32, p: u32, e: u32) -> Vec<u32> {
    let mut c = code;
    (0..e)
        .map(|_| {
            let digit = c % p;
            c /= p;
            digit
        })
        .collect()
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Product of two coefficient vectors modulo the monic modulus `f`.
fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let e = f.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce: x^e = -(f_0 + f_1 x + ... + f_{e-1} x^{e-1})
    for i in (e..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..e {
            let sub = c * f[j] % p;
            prod[i - e + j] = (prod[i - e + j] + p - sub % p) % p;
        }
    }
    prod.truncate(e.max(1));
    prod
}

/// Trial-division irreducibility for small degree.
fn poly_irreducible(f: &[u32], p: u32) -> bool {
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    // try all monic divisors of degree 1..=e/2
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = decode(code, p, d as u32);
            g.push(1); // monic of degree d
            if poly_divides(&g, f, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(g: &[u32], f: &[u32], p: u32) -> bool {
    // remainder of f by monic g
    let mut rem: Vec<u32> = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dg;
        if lead != 0 {
            for j in 0..=dg {
                let sub = lead * g[j] % p;
                rem[shift + j] = (rem[shift + j] + p - sub) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

fn find_irreducible(p: u32, e: u32) -> Result<Vec<u32>> {
    if e == 1 {
        return Ok(vec![0, 1]);
    }
    let count = p.pow(e);
    for code in 0..count {
        let mut f = decode(code, p, e);
        f.push(1);
        if poly_irreducible(&f, p) {
            return Ok(f);
        }
    }
    Err(Error::verification("no irreducible polynomial found"))
}

/// The power residue symbol `(a / F_q)_n = a^{(q-1)/n}`, expressed as
/// `μ^u` where `μ = g^{(q-1)/n}` for the stored primitive root `g`.
pub fn power_residue(field: &FqField, a: FqElem, n: u32) -> Result<F1nScalar> {
    let q = field.q();
    if a == 0 {
        return Err(Error::domain("power residue of zero"));
    }
    if n == 0 || (q - 1) % n != 0 {
        return Err(Error::domain(format!("n={n} does not divide q-1={}", q - 1)));
    }
    let d = (q - 1) / n;
    let b = field.pow(a, d as u64);
    let mu = field.pow(field.primitive_root(), d as u64);
    let mut x = 1u32;
    for u in 0..n {
        if x == b {
            return Ok(F1nScalar::unit(n, u));
        }
        x = field.mul(x, mu);
    }
    Err(Error::verification("power residue landed outside μ_n"))
}

/// Multiplication by `a` as a linear automorphism of the `F1^n`-space
/// `F_q`: the unit group splits into `(q-1)/n` orbits under the embedded
/// `μ_n`, with canonical representatives `g^0, ..., g^{(q-1)/n - 1}`.
pub fn mult_as_monomial(field: &FqField, a: FqElem, n: u32) -> Result<MonomialMatrix> {
    let q = field.q();
    if a == 0 {
        return Err(Error::domain("zero is not a unit"));
    }
    if n == 0 || (q - 1) % n != 0 {
        return Err(Error::domain(format!("n={n} does not divide q-1={}", q - 1)));
    }
    let d = (q - 1) / n; // orbit count = matrix size
    let mut perm = vec![0usize; d as usize];
    let mut exps = vec![0u32; d as usize];
    let g = field.primitive_root();
    for t in 0..d {
        // column t is the basis element g^t
        let rep = field.pow(g, t as u64);
        let image = field.mul(a, rep);
        let s = field.dlog(image)?;
        perm[t as usize] = (s % d) as usize;
        exps[t as usize] = s / d; // image = g^{s mod d} * μ^{s / d}, μ = g^d
    }
    MonomialMatrix::new(n, perm, exps)
}

/// All subspaces of the given dimension of `F_q^{ambient}`, each as a
/// sorted list of vector codes (vectors coded base q, including zero).
pub fn enumerate_subspaces(field: &FqField, ambient: usize, dim: usize) -> Vec<Vec<u64>> {
    let q = field.q() as u64;
    let nvec = q.pow(ambient as u32);
    let decode_vec = |code: u64| -> Vec<FqElem> {
        let mut c = code;
        (0..ambient)
            .map(|_| {
                let digit = (c % q) as FqElem;
                c /= q;
                digit
            })
            .collect()
    };
    let encode_vec =
        |v: &[FqElem]| -> u64 { v.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64) };
    // grow spans one vector at a time
    let mut layer: Vec<Vec<u64>> = vec![vec![0]];
    for _ in 0..dim {
        let mut next = std::collections::BTreeSet::new();
        for space in &layer {
            let members: std::collections::HashSet<u64> = space.iter().copied().collect();
            for v in 1..nvec {
                if members.contains(&v) {
                    continue;
                }
                let vd = decode_vec(v);
                let mut bigger: Vec<u64> = Vec::with_capacity(space.len() * q as usize);
                for &u in space {
                    let ud = decode_vec(u);
                    for c in 0..field.q() {
                        let w: Vec<FqElem> = ud
                            .iter()
                            .zip(&vd)
                            .map(|(&x, &y)| field.add(x, field.mul(c, y)))
                            .collect();
                        bigger.push(encode_vec(&w));
                    }
                }
                bigger.sort_unstable();
                bigger.dedup();
                next.insert(bigger);
            }
        }
        layer = next.into_iter().collect();
    }
    layer
}

/// Brute-force count of `dim`-dimensional subspaces of `F_q^{ambient}`.
pub fn count_subspaces(field: &FqField, ambient: usize, dim: usize) -> usize {
    enumerate_subspaces(field, ambient, dim).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f7 = FqField::prime(7).unwrap();
        assert_eq!(f7.q(), 7);
        assert_eq!(f7.mul(3, 5), 1);
        assert_eq!(f7.add(4, 5), 2);
        assert_eq!(f7.multiplicative_order(f7.primitive_root()), 6);
    }

    #[test]
    fn extension_fields() {
        let f4 = FqField::new(2, 2, None).unwrap();
        assert_eq!(f4.q(), 4);
        // x^2 + x + 1 is the first irreducible over F_2
        assert_eq!(f4.irreducible(), &[1, 1, 1]);
        assert_eq!(f4.multiplicative_order(f4.primitive_root()), 3);
        let f9 = FqField::new(3, 2, None).unwrap();
        assert_eq!(f9.q(), 9);
        assert_eq!(f9.multiplicative_order(f9.primitive_root()), 8);
        // every unit has order dividing q-1
        for a in 1..9 {
            assert_eq!(f9.pow(a, 8), 1);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FqField::prime(6).is_err());
        assert!(FqField::new(2, 0, None).is_err());
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(FqField::new(2, 2, Some(vec![1, 0, 1])).is_err());
    }

    #[test]
    fn power_residue_examples() {
        let f7 = FqField::prime(7).unwrap();
        assert_eq!(power_residue(&f7, 1, 2).unwrap(), F1nScalar::one(2));
        // 3^3 = 27 = -1 mod 7
        assert_eq!(power_residue(&f7, 3, 2).unwrap(), F1nScalar::unit(2, 1));
        let f13 = FqField::prime(13).unwrap();
        // 5^4 = 625 = 1 mod 13
        assert_eq!(power_residue(&f13, 5, 3).unwrap(), F1nScalar::one(3));
        assert!(power_residue(&f7, 0, 2).is_err());
        assert!(power_residue(&f7, 3, 4).is_err());
        // oracle: direct modular exponentiation against the μ-power
        for a in 1..7u32 {
            let direct = f7.pow(a, 3);
            let sym = power_residue(&f7, a, 2).unwrap();
            let expected = if direct == 1 { 0 } else { 1 };
            assert_eq!(sym.exponent(), Some(expected));
        }
    }

    #[test]
    fn mult_as_monomial_examples() {
        let f7 = FqField::prime(7).unwrap();
        let id = mult_as_monomial(&f7, 1, 2).unwrap();
        assert!(id.is_identity());
        let m3 = mult_as_monomial(&f7, 3, 2).unwrap();
        assert_eq!(m3.size(), 3);
        assert_eq!(m3.det(), power_residue(&f7, 3, 2).unwrap());
        // q=5, n=4: matrix of size 1
        let f5 = FqField::prime(5).unwrap();
        let m2 = mult_as_monomial(&f5, 2, 4).unwrap();
        assert_eq!(m2.size(), 1);
        assert_eq!(m2.det(), power_residue(&f5, 2, 4).unwrap());
    }

    #[test]
    fn gauss_theorem_sweep() {
        for q in [5u32, 7, 9, 13] {
            let field = if q == 9 {
                FqField::new(3, 2, None).unwrap()
            } else {
                FqField::prime(q).unwrap()
            };
            for n in 2..q {
                if (q - 1) % n != 0 {
                    continue;
                }
                for a in 1..q {
                    let m = mult_as_monomial(&field, a, n).unwrap();
                    assert_eq!(
                        m.det(),
                        power_residue(&field, a, n).unwrap(),
                        "Gauss theorem fails at q={q}, n={n}, a={a}"
                    );
                }
            }
        }
    }

    #[test]
    fn mult_map_is_multiplicative() {
        let f13 = FqField::prime(13).unwrap();
        for a in 1..13 {
            for b in 1..13 {
                let ma = mult_as_monomial(&f13, a, 3).unwrap();
                let mb = mult_as_monomial(&f13, b, 3).unwrap();
                let mab = mult_as_monomial(&f13, f13.mul(a, b), 3).unwrap();
                assert_eq!(ma.compose(&mb).unwrap(), mab);
            }
        }
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        use crate::qnum::gaussian_binomial;
        use num_bigint::BigInt;
        let f2 = FqField::prime(2).unwrap();
        assert_eq!(count_subspaces(&f2, 4, 2), 35);
        for (ambient, dim) in [(2usize, 1usize), (3, 1), (3, 2), (4, 1), (4, 3)] {
            let expected = gaussian_binomial(ambient, dim).unwrap().eval_i64(2);
            assert_eq!(
                BigInt::from(count_subspaces(&f2, ambient, dim)),
                expected,
                "[{ambient} {dim}]_2"
            );
        }
        let f3 = FqField::prime(3).unwrap();
        let expected = gaussian_binomial(3, 1).unwrap().eval_i64(3);
        assert_eq!(BigInt::from(count_subspaces(&f3, 3, 1)), expected);
    }
}
