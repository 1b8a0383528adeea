//! Exact q-analogue arithmetic.
//!
//! Everything here is an integer polynomial in the formal variable `q`:
//! q-integers `[n]_q = 1 + q + ... + q^{n-1}`, q-factorials, Gaussian
//! binomials, and the order polynomial N(q) of the projective linear
//! group. Evaluating at `q = 1` degenerates each of these to the
//! classical count.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default cap on `n` for [`quantum_binomial_expand`], which walks all
/// `2^n` words in the free monoid on `{x, y}`.
pub const DEFAULT_EXPAND_BOUND: usize = 16;

/// An integer-coefficient polynomial in `q`, stored densely in ascending
/// degree. Canonical form: no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        QPoly::from_coeffs(vec![BigInt::from(c)])
    }

    /// The monomial `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        QPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact Horner evaluation at an integer point.
    pub fn eval(&self, q0: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + c;
        }
        acc
    }

    pub fn eval_i64(&self, q0: i64) -> BigInt {
        self.eval(&BigInt::from(q0))
    }

    /// Exact polynomial division. Returns an error unless `self` is an
    /// exact multiple of `divisor`; no rounding ever happens.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        if divisor.is_zero() {
            return Err(Error::domain("division by the zero polynomial"));
        }
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        let dn = self.coeffs.len();
        let dd = divisor.coeffs.len();
        if dn < dd {
            return Err(Error::domain("polynomial division is not exact"));
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dd - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, r) = num_integer::div_rem(top, lead.clone());
            if !r.is_zero() {
                return Err(Error::domain("polynomial division is not exact"));
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &qc * dc;
                rem[i + j] -= t;
            }
            quot[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::domain("polynomial division is not exact"));
        }
        Ok(QPoly::from_coeffs(quot))
    }

    pub fn pow(&self, e: usize) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Serialize as a JSON array of decimal strings, ascending degree.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<QPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::parse("QPoly JSON must be an array of decimal strings"))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for item in arr {
            let s = item
                .as_str()
                .ok_or_else(|| Error::parse("QPoly coefficient must be a decimal string"))?;
            let c: BigInt = s
                .parse()
                .map_err(|_| Error::parse(format!("bad integer literal: {s}")))?;
            coeffs.push(c);
        }
        Ok(QPoly::from_coeffs(coeffs))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{c}*")?;
                    }
                    if i == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

/// The q-integer `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_integer(n: usize) -> QPoly {
    QPoly::from_coeffs(vec![BigInt::one(); n])
}

/// The q-factorial `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: usize) -> QPoly {
    let mut acc = QPoly::one();
    for i in 1..=n {
        acc = &acc * &q_integer(i);
    }
    acc
}

/// The Gaussian binomial `[n k]_q`, computed by the q-Pascal recurrence
/// `[n k] = [n-1 k-1] + q^k [n-1 k]` with exact integer coefficients.
pub fn gaussian_binomial(n: usize, k: usize) -> Result<QPoly> {
    if k > n {
        return Err(Error::domain(format!("gaussian_binomial: k={k} > n={n}")));
    }
    // row-by-row q-Pascal triangle
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        next.push(QPoly::one());
        for j in 1..m {
            let shifted = &QPoly::monomial(j) * &row[j];
            next.push(&row[j - 1] + &shifted);
        }
        next.push(QPoly::one());
        row = next;
    }
    Ok(row[k].clone())
}

/// The same Gaussian binomial as the exact quotient
/// `[n]_q! / ([k]_q! [n-k]_q!)`. Cross-check route, not the main path.
pub fn gaussian_binomial_by_factorials(n: usize, k: usize) -> Result<QPoly> {
    if k > n {
        return Err(Error::domain(format!("gaussian_binomial: k={k} > n={n}")));
    }
    let num = q_factorial(n);
    let den = &q_factorial(k) * &q_factorial(n - k);
    num.div_exact(&den)
}

/// Expands `(x + y)^n` as `2^n` words in the free monoid on `{x, y}`,
/// normalizes each word with the rewrite `yx -> q xy`, and accumulates the
/// coefficient of `x^k y^{n-k}`. Must equal `gaussian_binomial(n, k)`.
pub fn quantum_binomial_expand(n: usize, k: usize, bound: Option<usize>) -> Result<QPoly> {
    if k > n {
        return Err(Error::domain(format!(
            "quantum_binomial_expand: k={k} > n={n}"
        )));
    }
    let bound = bound.unwrap_or(DEFAULT_EXPAND_BOUND);
    if n > bound {
        return Err(Error::resource(format!(
            "quantum_binomial_expand: n={n} exceeds word-enumeration bound {bound}"
        )));
    }
    let mut coeffs = vec![BigInt::zero(); k * (n - k) + 1];
    for word in 0u64..(1u64 << n) {
        // bit set = letter x, clear = letter y; position 0 is the leftmost letter
        let xs = word.count_ones() as usize;
        if xs != k {
            continue;
        }
        // each y appearing before an x contributes one application of yx -> q xy
        let mut inversions = 0usize;
        let mut ys_seen = 0usize;
        for pos in 0..n {
            if word >> pos & 1 == 1 {
                inversions += ys_seen;
            } else {
                ys_seen += 1;
            }
        }
        coeffs[inversions] += 1;
    }
    Ok(QPoly::from_coeffs(coeffs))
}

/// N(q), the quotient of `(q^{n+1} - 1)(q^{n+1} - q) ... (q^{n+1} - q^n)`
/// by `(q - 1)^{n+1}`. Its value at `q = 1` is `(n+1)!`.
pub fn pgl_order_poly(n: usize) -> QPoly {
    let qn1 = QPoly::monomial(n + 1);
    let mut product = QPoly::one();
    for i in 0..=n {
        product = &product * &(&qn1 - &QPoly::monomial(i));
    }
    let qm1 = QPoly::from_i64_coeffs(&[-1, 1]);
    product
        .div_exact(&qm1.pow(n + 1))
        .expect("(q-1)^{n+1} always divides the GL order product")
}

/// Checks the projective-completion identity
/// `[n+1]_q = q^n + [n]_q` (affine cell plus hyperplane at infinity).
pub fn projective_completion_identity(n: usize) -> bool {
    q_integer(n + 1) == &QPoly::monomial(n) + &q_integer(n)
}

// div_rem on BigInt without pulling the whole num crate in.
mod num_integer {
    use num_bigint::BigInt;
    pub fn div_rem(a: BigInt, b: BigInt) -> (BigInt, BigInt) {
        let q = &a / &b;
        let r = &a - &q * &b;
        (q, r)
    }
}
