//! Finite groups materialized as complete multiplication structures.
//!
//! An [`EnumeratedGroup`] stores a full multiplication table over canonical
//! element identifiers `0..order` with `0` the identity. It is produced by
//! coset enumeration, by closure of concrete generators, or directly from
//! a known element list.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
///
/// Element `0` is the identity. `gens` indexes the distinguished
/// generating set used to build the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<u32>,
}

impl EnumeratedGroup {
    /// Build from a raw table. Verifies identity and inverses exhaustively
    /// and associativity on a deterministic sample (exhaustively for small
    /// orders).
    pub fn from_table(order: usize, table: Vec<u32>, gens: Vec<u32>) -> Result<Self> {
        if table.len() != order * order {
            return Err(Error::domain("multiplication table has wrong size"));
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            if table[a * order] != a as u32 || table[a] != a as u32 {
                return Err(Error::domain("element 0 is not an identity"));
            }
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inv[a] = b as u32;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::domain(format!("element {a} has no inverse")));
            }
        }
        let g = EnumeratedGroup {
            order,
            table,
            inv,
            gens,
        };
        g.check_associativity()?;
        Ok(g)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::domain(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // deterministic sample: stride through triples
            let step = (n / 17).max(1);
            for a in (0..n).step_by(step) {
                for b in (0..n).step_by(step) {
                    for c in (0..n).step_by(step) {
                        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::domain(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    /// Order of a single element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Evaluates a word over the distinguished generators. Negative
    /// entries denote inverse generators: letter `i+1` is `gens[i]`,
    /// letter `-(i+1)` its inverse.
    pub fn eval_word(&self, word: &[i32]) -> Result<usize> {
        let mut acc = 0usize;
        for &letter in word {
            if letter == 0 {
                return Err(Error::domain("word letter 0 is not a generator index"));
            }
            let idx = (letter.unsigned_abs() as usize) - 1;
            let g = *self
                .gens
                .get(idx)
                .ok_or_else(|| Error::domain(format!("generator index {idx} out of range")))?
                as usize;
            let g = if letter < 0 { self.inv(g) } else { g };
            acc = self.mul(acc, g);
        }
        Ok(acc)
    }

    /// Two words evaluate to the same element?
    pub fn word_eq(&self, w1: &[i32], w2: &[i32]) -> Result<bool> {
        Ok(self.eval_word(w1)? == self.eval_word(w2)?)
    }

    /// Closure of a set of elements inside this group.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
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
        let gens: Vec<usize> = seed.to_vec();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
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

    /// Is the whole group abelian?
    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Left cosets of a subgroup (given as a sorted element list), each
    /// coset sorted, the list ordered by minimal element.
    pub fn left_cosets(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut cosets = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = subgroup.iter().map(|&h| self.mul(g, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}

/// Generic closure of concrete generators under an associative product.
/// Returns the element list in discovery order (identity first) and the
/// finished [`EnumeratedGroup`] over those indices.
pub fn closure_group<T, F>(
    identity: T,
    generators: &[T],
    mul: F,
    bound: usize,
) -> Result<(Vec<T>, EnumeratedGroup)>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let elems = closure_elements(identity, generators, &mul, bound)?;
    let index: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = elems.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let prod = mul(&elems[a], &elems[b]);
            let &idx = index
                .get(&prod)
                .ok_or_else(|| Error::domain("generator set is not closed (non-group product)"))?;
            table[a * n + b] = idx as u32;
        }
    }
    let gens = generators
        .iter()
        .map(|g| index[g] as u32)
        .collect::<Vec<_>>();
    let group = EnumeratedGroup::from_table(n, table, gens)?;
    Ok((elems, group))
}

/// Element closure only, without building the multiplication table.
/// Suitable for groups too large to tabulate.
pub fn closure_elements<T, F>(
    identity: T,
    generators: &[T],
    mul: &F,
    bound: usize,
) -> Result<Vec<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut elems = vec![identity.clone()];
    index.insert(identity, 0);
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        for g in generators {
            let prod = mul(&elems[i], g);
            if !index.contains_key(&prod) {
                if elems.len() >= bound {
                    return Err(Error::resource(format!(
                        "closure exceeded element bound {bound}"
                    )));
                }
                index.insert(prod.clone(), elems.len());
                frontier.push(elems.len());
                elems.push(prod);
            }
        }
    }
    Ok(elems)
}

/// A group acting on a finite set: each element carries the permutation it
/// induces, with `perms[g.mul(a, b)] = perms[a] ∘ perms[b]`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub group: EnumeratedGroup,
    pub perms: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Builds and validates an action from per-element permutations.
    pub fn new(group: EnumeratedGroup, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(Error::domain("one permutation required per group element"));
        }
        let degree = perms.first().map_or(0, |p| p.len());
        for p in &perms {
            if p.len() != degree || !is_permutation(p) {
                return Err(Error::domain("action images must be permutations"));
            }
        }
        if perms.first().is_some_and(|p| p.iter().enumerate().any(|(i, &x)| i != x)) {
            return Err(Error::domain("identity must act trivially"));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.mul(a, b);
                for x in 0..degree {
                    if perms[ab][x] != perms[a][perms[b][x]] {
                        return Err(Error::domain(format!(
                            "not an action: composition fails at ({a},{b})"
                        )));
                    }
                }
            }
        }
        Ok(GroupAction { group, perms })
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, |p| p.len())
    }

    pub fn is_transitive(&self) -> bool {
        let degree = self.degree();
        if degree == 0 {
            return false;
        }
        let mut reach = vec![false; degree];
        reach[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for p in &self.perms {
                let y = p[x];
                if !reach[y] {
                    reach[y] = true;
                    frontier.push(y);
                }
            }
        }
        reach.iter().all(|&r| r)
    }
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Composition `a ∘ b` of permutations in image notation: `(a∘b)(x) = a(b(x))`.
pub fn perm_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn perm_inverse(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// Parity sign of a permutation: `+1` or `-1`.
pub fn perm_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Cycle notation, fixed points omitted; identity prints as `()`.
pub fn perm_cycles(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> EnumeratedGroup {
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u32;
            }
        }
        EnumeratedGroup::from_table(n, table, vec![1 % n as u32]).unwrap()
    }

    #[test]
    fn cyclic_group_basics() {
        let g = cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.element_order(2), 3);
        assert!(g.is_abelian());
        assert_eq!(g.subgroup_closure(&[2]), vec![0, 2, 4]);
        assert_eq!(g.left_cosets(&[0, 3]).len(), 3);
    }

    #[test]
    fn closure_of_transposition() {
        let id = vec![0usize, 1, 2];
        let swap = vec![1usize, 0, 2];
        let (elems, g) = closure_group(id, &[swap], |a, b| perm_compose(a, b), 100).unwrap();
        assert_eq!(elems.len(), 2);
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn closure_s3() {
        let id = vec![0usize, 1, 2];
        let s1 = vec![1usize, 0, 2];
        let s2 = vec![0usize, 2, 1];
        let (_, g) = closure_group(id, &[s1, s2], |a, b| perm_compose(a, b), 100).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn word_evaluation() {
        let id = vec![0usize, 1, 2];
        let s1 = vec![1usize, 0, 2];
        let s2 = vec![0usize, 2, 1];
        let (_, g) = closure_group(id, &[s1, s2], |a, b| perm_compose(a, b), 100).unwrap();
        // braid image: s1 s2 s1 = s2 s1 s2 in S_3
        assert!(g.word_eq(&[1, 2, 1], &[2, 1, 2]).unwrap());
        assert!(!g.word_eq(&[1], &[2]).unwrap());
        assert_eq!(g.eval_word(&[1, -1]).unwrap(), 0);
    }

    #[test]
    fn sign_and_cycles() {
        assert_eq!(perm_sign(&[0, 1, 2]), 1);
        assert_eq!(perm_sign(&[1, 0, 2]), -1);
        assert_eq!(perm_sign(&[1, 2, 0]), 1);
        assert_eq!(perm_cycles(&[1, 0, 2]), "(1 2)");
        assert_eq!(perm_cycles(&[0, 1]), "()");
    }

    #[test]
    fn action_validation() {
        let g = cyclic(4);
        // regular action of Z4 on 4 points
        let perms: Vec<Vec<usize>> = (0..4)
            .map(|a| (0..4).map(|x| (x + a) % 4).collect())
            .collect();
        let act = GroupAction::new(g.clone(), perms).unwrap();
        assert!(act.is_transitive());
        // broken images rejected
        let mut bad: Vec<Vec<usize>> = (0..4)
            .map(|a| (0..4).map(|x| (x + a) % 4).collect())
            .collect();
        bad[3] = vec![0, 1, 2, 3];
        assert!(GroupAction::new(g, bad).is_err());
    }
}
