//! Braids through the Artin presentation: words with free reduction,
//! the projection to the symmetric group, the monomial representation
//! over F1^n, Artin groups of graphs, and Shephard quotients.

use crate::error::{Error, Result};
use crate::f1linalg::MonomialMatrix;
use crate::group::{perm_compose, EnumeratedGroup};
use crate::toddcox::{enumerate_group, Presentation, DEFAULT_MAX_COSETS};

/// A braid word in B_n: letters are signed generator indices, with
/// `+i`/`-i` standing for `σ_i`/`σ_i^{-1}` (1 <= i <= n-1). Words are
/// kept freely reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: &[i32]) -> Result<Self> {
        if strands == 0 {
            return Err(Error::domain("need at least one strand"));
        }
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::domain(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        let mut reduced: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            if reduced.last() == Some(&-l) {
                reduced.pop();
            } else {
                reduced.push(l);
            }
        }
        Ok(BraidWord {
            strands,
            letters: reduced,
        })
    }

    /// Parses "s1 s2^-1 s1" or plain "1 -2 1".
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (body, sign) = match tok.strip_suffix("^-1") {
                Some(body) => (body, -1i32),
                None => (tok, 1i32),
            };
            let body = body.strip_prefix('s').unwrap_or(body);
            let val: i32 = body
                .parse()
                .map_err(|_| Error::parse(format!("bad braid letter {tok:?}")))?;
            letters.push(val * sign);
        }
        BraidWord::new(strands, &letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::domain("strand counts differ"));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord::new(self.strands, &letters)
    }
}

/// The projection to S_n: each `σ_i^{±1}` becomes the transposition of
/// strands i and i+1 (0-indexed: positions i-1 and i).
pub fn gamma(w: &BraidWord) -> Vec<usize> {
    let n = w.strands;
    let mut acc: Vec<usize> = (0..n).collect();
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize;
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(i - 1, i);
        acc = perm_compose(&acc, &t);
    }
    acc
}

/// Pure braids are the kernel of gamma.
pub fn is_pure(w: &BraidWord) -> bool {
    gamma(w).iter().enumerate().all(|(i, &x)| i == x)
}

/// The monomial image of one generator: the identity apart from the
/// 2x2 block at strands (i, i+1) with entries μ and μ^{-1}, over F1^n
/// with n the strand count.
pub fn rho(i: usize, n: usize) -> Result<MonomialMatrix> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::domain(format!(
            "generator index {i} out of range for {n} strands"
        )));
    }
    let modulus = n as u32;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut exps = vec![0u32; n];
    // column i-1 holds μ^{-1} in row i; column i holds μ in row i-1
    perm.swap(i - 1, i);
    exps[i - 1] = modulus - 1;
    exps[i] = 1;
    MonomialMatrix::new(modulus, perm, exps)
}

/// The image of a whole word, extending rho multiplicatively with exact
/// matrix inverses on negative letters.
pub fn rho_word(w: &BraidWord) -> Result<MonomialMatrix> {
    let n = w.strands;
    let mut acc = MonomialMatrix::identity(n, n as u32);
    for &l in &w.letters {
        let m = rho(l.unsigned_abs() as usize, n)?;
        let m = if l < 0 { m.inverse() } else { m };
        acc = acc.compose(&m)?;
    }
    Ok(acc)
}

/// Closure of the generator images inside GL_n(F1^n), certified to be
/// S_n: order n!, involutive generators, braid relations.
pub fn rho_image(n: usize, bound: Option<usize>) -> Result<EnumeratedGroup> {
    if n < 2 {
        return Err(Error::domain("rho_image needs n >= 2"));
    }
    let gens: Vec<MonomialMatrix> = (1..n).map(|i| rho(i, n)).collect::<Result<_>>()?;
    let bound = bound.unwrap_or(crate::f1linalg::DEFAULT_GL_BOUND);
    let (_, g) = crate::group::closure_group(
        MonomialMatrix::identity(n, n as u32),
        &gens,
        |a, b| a.compose(b).expect("sizes agree"),
        bound,
    )?;
    let expected: usize = (1..=n).product();
    if g.order() != expected {
        return Err(Error::verification(format!(
            "rho image has order {} instead of {expected}",
            g.order()
        )));
    }
    for (i, &gi) in g.generators().iter().enumerate() {
        if g.element_order(gi as usize) != 2 {
            return Err(Error::verification(format!("rho(σ_{}) is not an involution", i + 1)));
        }
    }
    for i in 0..n - 1 {
        for j in i + 1..n - 1 {
            let (a, b) = (i as i32 + 1, j as i32 + 1);
            let ok = if j == i + 1 {
                g.word_eq(&[a, b, a], &[b, a, b])?
            } else {
                g.word_eq(&[a, b], &[b, a])?
            };
            if !ok {
                return Err(Error::verification(format!(
                    "Artin relation fails in the rho image at ({i},{j})"
                )));
            }
        }
    }
    Ok(g)
}

/// A finite simple graph on vertices 0..n.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut norm = Vec::new();
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::domain(format!("bad edge ({a},{b})")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(Graph { n, edges: norm })
    }

    /// The path graph on n vertices (the A_n shape).
    pub fn path(n: usize) -> Graph {
        Graph {
            n,
            edges: (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        }
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// An Artin presentation read off a graph: braid relators on edges,
/// commutators off them.
pub struct ArtinGraphPresentation {
    pub graph: Graph,
    pub presentation: Presentation,
}

pub fn artin_group(graph: &Graph) -> ArtinGraphPresentation {
    let n = graph.n;
    let mut relators = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (x, y) = (a as i32 + 1, b as i32 + 1);
            if graph.has_edge(a, b) {
                // xyx(yxy)^{-1}
                relators.push(vec![x, y, x, -y, -x, -y]);
            } else {
                relators.push(vec![x, y, -x, -y]);
            }
        }
    }
    let presentation = Presentation::new(n, relators).expect("Artin relators are well formed");
    ArtinGraphPresentation {
        graph: graph.clone(),
        presentation,
    }
}

/// The Shephard quotient A(Γ, d): the Artin group with every generator
/// forced to order dividing d. `Ok(None)` means overflow.
pub fn shephard_group(
    graph: &Graph,
    d: usize,
    bound: Option<usize>,
) -> Result<Option<EnumeratedGroup>> {
    if d == 0 {
        return Err(Error::domain("exponent d must be positive"));
    }
    let artin = artin_group(graph);
    let mut relators = artin.presentation.relators.clone();
    for v in 0..graph.n {
        relators.push(vec![v as i32 + 1; d]);
    }
    let p = Presentation::new(graph.n, relators)?;
    enumerate_group(&p, bound.unwrap_or(DEFAULT_MAX_COSETS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{catalog_matrix, coxeter_group, SphericalClass};
    use crate::group::{perm_cycles, perm_sign};

    #[test]
    fn word_construction_and_parsing() {
        let w = BraidWord::parse(3, "s1 s2^-1 s1").unwrap();
        assert_eq!(w.letters(), &[1, -2, 1]);
        let w2 = BraidWord::parse(3, "1 -2 1").unwrap();
        assert_eq!(w, w2);
        // free reduction
        let r = BraidWord::new(3, &[1, 2, -2, -1, 1]).unwrap();
        assert_eq!(r.letters(), &[1]);
        assert!(BraidWord::new(3, &[3]).is_err());
        assert!(BraidWord::parse(2, "x7").is_err());
    }

    #[test]
    fn gamma_examples() {
        let empty = BraidWord::new(2, &[]).unwrap();
        assert_eq!(gamma(&empty), vec![0, 1]);
        let s1 = BraidWord::new(2, &[1]).unwrap();
        assert_eq!(gamma(&s1), vec![1, 0]);
        assert_eq!(perm_cycles(&gamma(&s1)), "(1 2)");
        let s1sq = BraidWord::new(2, &[1, 1]).unwrap();
        assert_eq!(gamma(&s1sq), vec![0, 1]);
        assert!(is_pure(&s1sq));
        assert!(!s1sq.letters().is_empty());
        assert!(is_pure(&empty));
        assert!(!is_pure(&s1));
    }

    #[test]
    fn gamma_is_a_homomorphism() {
        // fixed-seed linear congruential stream of random word pairs
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..1000 {
            let n = 2 + next() % 5;
            let len1 = next() % 21;
            let len2 = next() % 21;
            let rand_word = |next: &mut dyn FnMut() -> usize, len: usize| -> BraidWord {
                let letters: Vec<i32> = (0..len)
                    .map(|_| {
                        let i = 1 + (next() % (n - 1)) as i32;
                        if next() % 2 == 0 {
                            i
                        } else {
                            -i
                        }
                    })
                    .collect();
                BraidWord::new(n, &letters).unwrap()
            };
            let w1 = rand_word(&mut next, len1);
            let w2 = rand_word(&mut next, len2);
            let combined = w1.concat(&w2).unwrap();
            assert_eq!(gamma(&combined), perm_compose(&gamma(&w1), &gamma(&w2)));
        }
    }

    #[test]
    fn gamma_is_surjective() {
        // the transposition images generate all of S_n for n <= 6
        for n in 2..=6usize {
            let gens: Vec<Vec<usize>> = (1..n)
                .map(|i| {
                    let mut t: Vec<usize> = (0..n).collect();
                    t.swap(i - 1, i);
                    t
                })
                .collect();
            let (_, g) = crate::group::closure_group(
                (0..n).collect::<Vec<usize>>(),
                &gens,
                |a, b| perm_compose(a, b),
                100_000,
            )
            .unwrap();
            assert_eq!(g.order(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn rho_generator_shape() {
        let m = rho(1, 2).unwrap();
        assert_eq!(m.perm(), &[1, 0]);
        // [[0, μ],[μ^{-1}, 0]]: entry(0,1) = μ, entry(1,0) = μ^{-1}
        assert_eq!(m.entry(0, 1).exponent(), Some(1));
        assert_eq!(m.entry(1, 0).exponent(), Some(1)); // μ^{-1} = μ over F1^2
        let m = rho(2, 4).unwrap();
        assert_eq!(m.entry(1, 2).exponent(), Some(1));
        assert_eq!(m.entry(2, 1).exponent(), Some(3));
        assert!(m.entry(0, 1).is_zero());
        assert!(rho(0, 3).is_err());
        assert!(rho(3, 3).is_err());
    }

    #[test]
    fn rho_involutions_and_artin_relations() {
        for n in 2..=5usize {
            for i in 1..n {
                let m = rho(i, n).unwrap();
                assert!(m.compose(&m).unwrap().is_identity(), "rho(σ_{i})² at n={n}");
                assert_eq!(m.inverse(), m, "involution equals its inverse");
            }
            for i in 1..n {
                for j in i + 1..n {
                    let a = rho(i, n).unwrap();
                    let b = rho(j, n).unwrap();
                    if j == i + 1 {
                        let aba = a.compose(&b).unwrap().compose(&a).unwrap();
                        let bab = b.compose(&a).unwrap().compose(&b).unwrap();
                        assert_eq!(aba, bab, "braid relation ({i},{j}) at n={n}");
                    } else {
                        let ab = a.compose(&b).unwrap();
                        let ba = b.compose(&a).unwrap();
                        assert_eq!(ab, ba, "commutation ({i},{j}) at n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn rho_projects_to_gamma() {
        // forgetting exponents recovers the strand permutation
        for n in 2..=6usize {
            for i in 1..n {
                let w = BraidWord::new(n, &[i as i32]).unwrap();
                assert_eq!(rho_word(&w).unwrap().perm(), gamma(&w).as_slice());
            }
            let w = BraidWord::new(n, &[1, -(n as i32 - 1), 1, 1]).unwrap();
            assert_eq!(rho_word(&w).unwrap().perm(), gamma(&w).as_slice());
        }
    }

    #[test]
    fn rho_invariant_under_free_reduction() {
        let raw = [1i32, 2, -2, 1, -1, 2];
        let reduced = BraidWord::new(3, &raw).unwrap();
        // fold the unreduced letters by hand
        let mut acc = MonomialMatrix::identity(3, 3);
        for &l in &raw {
            let m = rho(l.unsigned_abs() as usize, 3).unwrap();
            let m = if l < 0 { m.inverse() } else { m };
            acc = acc.compose(&m).unwrap();
        }
        assert_eq!(acc, rho_word(&reduced).unwrap());
        // gamma agrees too
        let mut p: Vec<usize> = vec![0, 1, 2];
        for &l in &raw {
            let mut t: Vec<usize> = (0..3).collect();
            t.swap(l.unsigned_abs() as usize - 1, l.unsigned_abs() as usize);
            p = perm_compose(&p, &t);
        }
        assert_eq!(p, gamma(&reduced));
    }

    #[test]
    fn rho_image_orders() {
        assert_eq!(rho_image(2, None).unwrap().order(), 2);
        let g3 = rho_image(3, None).unwrap();
        assert_eq!(g3.order(), 6);
        assert!(!g3.is_abelian());
        assert_eq!(rho_image(4, None).unwrap().order(), 24);
    }

    #[test]
    fn rho_is_not_faithful() {
        // σ_1² is a nontrivial pure braid with trivial monomial image
        let w = BraidWord::new(3, &[1, 1]).unwrap();
        assert!(!w.letters().is_empty());
        assert!(is_pure(&w));
        assert!(rho_word(&w).unwrap().is_identity());
    }

    #[test]
    fn artin_presentations() {
        let single = artin_group(&Graph::new(1, &[]).unwrap());
        assert!(single.presentation.relators.is_empty());
        let edge = artin_group(&Graph::new(2, &[(0, 1)]).unwrap());
        assert_eq!(edge.presentation.relators, vec![vec![1, 2, 1, -2, -1, -2]]);
        let coedge = artin_group(&Graph::new(2, &[]).unwrap());
        assert_eq!(coedge.presentation.relators, vec![vec![1, 2, -1, -2]]);
        // the path on n-1 vertices gives the braid presentation of B_n
        let b4 = artin_group(&Graph::path(3));
        assert_eq!(b4.presentation.ngens, 3);
        assert_eq!(b4.presentation.relators.len(), 3);
    }

    #[test]
    fn artin_groups_overflow() {
        // the free group on one generator cannot enumerate
        let free = artin_group(&Graph::new(1, &[]).unwrap());
        assert!(enumerate_group(&free.presentation, 300).unwrap().is_none());
    }

    #[test]
    fn shephard_quotients() {
        let single = Graph::new(1, &[]).unwrap();
        for d in 1..=6 {
            let g = shephard_group(&single, d, None).unwrap().unwrap();
            assert_eq!(g.order(), d, "cyclic of order {d}");
        }
        let edge = Graph::new(2, &[(0, 1)]).unwrap();
        let s3 = shephard_group(&edge, 2, None).unwrap().unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let two_points = Graph::new(2, &[]).unwrap();
        let z3z3 = shephard_group(&two_points, 3, None).unwrap().unwrap();
        assert_eq!(z3z3.order(), 9);
        assert!(z3z3.is_abelian());
    }

    #[test]
    fn shephard_at_two_is_the_coxeter_group() {
        // the path on n-1 vertices: A(Γ,2) ≅ S_n, matching W(A_{n-1})
        for n in 2..=5usize {
            let g = shephard_group(&Graph::path(n - 1), 2, None).unwrap().unwrap();
            assert_eq!(g.order(), (1..=n).product::<usize>(), "A(path,2) at n={n}");
            // same order as the enumerated Coxeter group, and the braid
            // relations hold among its involutive generators
            let w = coxeter_group(&catalog_matrix(SphericalClass::A(n - 1)).unwrap(), None)
                .unwrap()
                .unwrap();
            assert_eq!(g.order(), w.order());
            for i in 0..n - 1 {
                assert_eq!(g.element_order(g.generators()[i] as usize), 2);
            }
            for i in 1..n - 1 {
                let (a, b) = (i as i32, i as i32 + 1);
                assert!(g.word_eq(&[a, b, a], &[b, a, b]).unwrap());
            }
        }
    }

    #[test]
    fn gamma_sign_tracks_word_parity() {
        let w = BraidWord::new(4, &[1, 2, 3]).unwrap();
        assert_eq!(perm_sign(&gamma(&w)), -1);
        let w = BraidWord::new(4, &[1, 2, 1, 2]).unwrap();
        assert_eq!(perm_sign(&gamma(&w)), 1);
    }
}
