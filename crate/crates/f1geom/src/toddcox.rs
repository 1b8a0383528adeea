//! Coset enumeration (Todd-Coxeter, HLT strategy).
//!
//! Enumerates cosets of a subgroup in a finitely presented group with a
//! deterministic definition order and a configurable coset-table cap.
//! Overflow is a first-class result: it means "did not fit", never that
//! the input was malformed.

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;

/// Default cap on the number of cosets ever defined.
pub const DEFAULT_MAX_COSETS: usize = 200_000;

/// A finite presentation: `ngens` generators, relators as words of signed
/// generator indices (`+i` is generator `i-1`, `-i` its inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ngens: usize,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub fn new(ngens: usize, relators: Vec<Vec<i32>>) -> Result<Self> {
        let p = Presentation { ngens, relators };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for rel in &self.relators {
            if rel.is_empty() {
                return Err(Error::domain("empty relator"));
            }
            for &letter in rel {
                if letter == 0 || letter.unsigned_abs() as usize > self.ngens {
                    return Err(Error::domain(format!(
                        "relator letter {letter} out of range for {} generators",
                        self.ngens
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.ngens,
            "relators": self.relators,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let ngens = v["generators"]
            .as_u64()
            .ok_or_else(|| Error::parse("presentation: missing generator count"))? as usize;
        let relators = v["relators"]
            .as_array()
            .ok_or_else(|| Error::parse("presentation: missing relators"))?
            .iter()
            .map(|rel| {
                rel.as_array()
                    .ok_or_else(|| Error::parse("relator must be an array"))?
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .map(|v| v as i32)
                            .ok_or_else(|| Error::parse("relator letters must be integers"))
                    })
                    .collect::<Result<Vec<i32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(ngens, relators)
    }
}

/// A completed coset table: the action of every generator (and inverse)
/// on the live cosets, coset 0 the subgroup itself.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub ngens: usize,
    pub ncosets: usize,
    /// `action[g]` is the permutation induced by generator `g`.
    pub action: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn apply(&self, coset: usize, letter: i32) -> usize {
        let g = (letter.unsigned_abs() as usize) - 1;
        if letter > 0 {
            self.action[g][coset]
        } else {
            // inverse action: position lookup
            self.action[g].iter().position(|&x| x == coset).unwrap()
        }
    }

    /// With the trivial subgroup, cosets are group elements; build the full
    /// multiplication structure. Coset 0 becomes the identity.
    pub fn into_group(self) -> Result<EnumeratedGroup> {
        let n = self.ncosets;
        let inv_action: Vec<Vec<usize>> = self
            .action
            .iter()
            .map(|p| crate::group::perm_inverse(p))
            .collect();
        // BFS tree from the identity: each coset reached as parent * letter
        let mut parent = vec![usize::MAX; n];
        let mut via: Vec<(usize, bool)> = vec![(0, false); n]; // (gen, inverse?)
        parent[0] = 0;
        let mut order_of_visit = Vec::with_capacity(n);
        order_of_visit.push(0);
        let mut head = 0;
        while head < order_of_visit.len() {
            let c = order_of_visit[head];
            head += 1;
            for g in 0..self.ngens {
                for (inv, act) in [(false, &self.action), (true, &inv_action)] {
                    let d = act[g][c];
                    if parent[d] == usize::MAX {
                        parent[d] = c;
                        via[d] = (g, inv);
                        order_of_visit.push(d);
                    }
                }
            }
        }
        if order_of_visit.len() != n {
            return Err(Error::domain("coset table is not transitive"));
        }
        let mut table = vec![0u32; n * n];
        // fill column-by-column in BFS order so mul(a, b) can reuse mul(a, parent(b))
        for &b in &order_of_visit {
            if b == 0 {
                for a in 0..n {
                    table[a * n] = a as u32;
                }
                continue;
            }
            let (g, inv) = via[b];
            let pb = parent[b];
            for a in 0..n {
                let ap = table[a * n + pb] as usize;
                let val = if inv {
                    inv_action[g][ap]
                } else {
                    self.action[g][ap]
                };
                table[a * n + b] = val as u32;
            }
        }
        let gens: Vec<u32> = (0..self.ngens)
            .map(|g| self.action[g][0] as u32)
            .collect();
        EnumeratedGroup::from_table(n, table, gens)
    }
}

/// Outcome of a coset enumeration: either the finished table or a clean,
/// non-error overflow.
#[derive(Clone, Debug)]
pub enum CosetEnumeration {
    Complete(CosetTable),
    Overflow { cosets_defined: usize },
}

const UNDEF: u32 = u32::MAX;

struct Enumerator {
    ncols: usize,
    table: Vec<Vec<u32>>, // row per coset, ncols entries
    rep: Vec<u32>,        // union-find parent, rep[i] <= i for roots
    dead_queue: Vec<u32>,
    max_cosets: usize,
    total_defined: usize,
}

impl Enumerator {
    fn new(ngens: usize, max_cosets: usize) -> Self {
        Enumerator {
            ncols: 2 * ngens,
            table: vec![vec![UNDEF; 2 * ngens]],
            rep: vec![0],
            dead_queue: Vec::new(),
            max_cosets,
            total_defined: 1,
        }
    }

    fn find(&mut self, k: u32) -> u32 {
        let mut l = k;
        while self.rep[l as usize] != l {
            l = self.rep[l as usize];
        }
        let mut m = k;
        while self.rep[m as usize] != m {
            let next = self.rep[m as usize];
            self.rep[m as usize] = l;
            m = next;
        }
        l
    }

    fn define(&mut self, coset: u32, col: usize) -> Result<u32> {
        if self.table.len() >= self.max_cosets {
            return Err(Error::resource("coset table cap reached"));
        }
        let new = self.table.len() as u32;
        self.table.push(vec![UNDEF; self.ncols]);
        self.rep.push(new);
        self.total_defined += 1;
        self.table[coset as usize][col] = new;
        self.table[new as usize][inv_col(col)] = coset;
        Ok(new)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.rep[hi as usize] = lo;
        self.dead_queue.push(hi);
    }

    fn process_coincidences(&mut self) {
        while let Some(dead) = self.dead_queue.pop() {
            for col in 0..self.ncols {
                let target = self.table[dead as usize][col];
                if target == UNDEF {
                    continue;
                }
                self.table[dead as usize][col] = UNDEF;
                let target = self.find(target);
                let live = self.find(dead);
                // re-install the pair (live, col, target) into live rows
                let existing = self.table[live as usize][col];
                if existing != UNDEF {
                    self.merge(existing, target);
                } else {
                    self.table[live as usize][col] = target;
                }
                let live = self.find(live);
                let target = self.find(target);
                let back = self.table[target as usize][inv_col(col)];
                if back != UNDEF {
                    self.merge(back, live);
                } else {
                    self.table[target as usize][inv_col(col)] = live;
                }
            }
        }
    }

    /// HLT scan of `word` starting and ending at `start`, filling gaps by
    /// defining new cosets.
    fn scan_and_fill(&mut self, start: u32, word: &[usize]) -> Result<()> {
        let mut start = self.find(start);
        loop {
            // forward
            let mut f = start;
            let mut i = 0;
            while i < word.len() {
                let next = self.table[f as usize][word[i]];
                if next == UNDEF {
                    break;
                }
                f = self.find(next);
                i += 1;
            }
            if i == word.len() {
                if f != start {
                    self.merge(f, start);
                    self.process_coincidences();
                }
                return Ok(());
            }
            // backward
            let mut b = start;
            let mut j = word.len();
            while j > i {
                let next = self.table[b as usize][inv_col(word[j - 1])];
                if next == UNDEF {
                    break;
                }
                b = self.find(next);
                j -= 1;
            }
            if j == i {
                // gap of length zero: forward and backward ends must coincide
                self.merge(f, b);
                self.process_coincidences();
                start = self.find(start);
                continue;
            }
            if j == i + 1 {
                // deduction
                let col = word[i];
                self.table[f as usize][col] = b;
                let back = self.table[b as usize][inv_col(col)];
                if back != UNDEF && self.find(back) != self.find(f) {
                    self.table[b as usize][inv_col(col)] = f;
                    self.merge(back, f);
                    self.process_coincidences();
                } else {
                    self.table[b as usize][inv_col(col)] = f;
                }
                return Ok(());
            }
            // genuine gap: define the next coset and rescan
            self.define(f, word[i])?;
            start = self.find(start);
        }
    }

    fn is_live(&mut self, c: u32) -> bool {
        self.find(c) == c
    }
}

fn inv_col(col: usize) -> usize {
    col ^ 1
}

fn word_to_cols(word: &[i32]) -> Vec<usize> {
    word.iter()
        .map(|&letter| {
            let g = (letter.unsigned_abs() as usize) - 1;
            if letter > 0 {
                2 * g
            } else {
                2 * g + 1
            }
        })
        .collect()
}

/// Enumerate cosets of the subgroup generated by `subgroup_gens` in the
/// group presented by `p`.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup_gens: &[Vec<i32>],
    max_cosets: usize,
) -> Result<CosetEnumeration> {
    p.validate()?;
    for w in subgroup_gens {
        for &letter in w {
            if letter == 0 || letter.unsigned_abs() as usize > p.ngens {
                return Err(Error::domain("malformed subgroup generator word"));
            }
        }
    }
    let mut e = Enumerator::new(p.ngens, max_cosets);
    let relator_cols: Vec<Vec<usize>> = p.relators.iter().map(|r| word_to_cols(r)).collect();
    let subgroup_cols: Vec<Vec<usize>> = subgroup_gens.iter().map(|w| word_to_cols(w)).collect();

    let overflow = |e: &Enumerator| CosetEnumeration::Overflow {
        cosets_defined: e.total_defined,
    };

    for w in &subgroup_cols {
        if e.scan_and_fill(0, w).is_err() {
            return Ok(overflow(&e));
        }
    }
    let mut alpha = 0u32;
    while (alpha as usize) < e.table.len() {
        if !e.is_live(alpha) {
            alpha += 1;
            continue;
        }
        for rel in &relator_cols {
            if e.scan_and_fill(alpha, rel).is_err() {
                return Ok(overflow(&e));
            }
            if !e.is_live(alpha) {
                break;
            }
        }
        if e.is_live(alpha) {
            // complete the row so undefined directions are explored even
            // when no relator mentions them
            for col in 0..e.ncols {
                let a = e.find(alpha);
                if e.table[a as usize][col] == UNDEF && e.define(a, col).is_err() {
                    return Ok(overflow(&e));
                }
            }
        }
        alpha += 1;
    }

    // compact live cosets, renumbering by BFS from coset 0 for determinism
    let n_raw = e.table.len() as u32;
    let live: Vec<u32> = (0..n_raw).filter(|&c| e.find(c) == c).collect();
    let mut relabel = vec![UNDEF; n_raw as usize];
    let root = e.find(0);
    relabel[root as usize] = 0;
    let mut bfs = vec![root];
    let mut head = 0;
    while head < bfs.len() {
        let c = bfs[head];
        head += 1;
        for col in 0..e.ncols {
            let d = e.table[c as usize][col];
            if d != UNDEF {
                let d = e.find(d);
                if relabel[d as usize] == UNDEF {
                    relabel[d as usize] = bfs.len() as u32;
                    bfs.push(d);
                }
            }
        }
    }
    if bfs.len() != live.len() {
        return Err(Error::domain("coset table disconnected after enumeration"));
    }
    let ncosets = live.len();
    let mut action = vec![vec![0usize; ncosets]; p.ngens];
    for &c in &bfs {
        let from = relabel[c as usize] as usize;
        for g in 0..p.ngens {
            let d = e.table[c as usize][2 * g];
            if d == UNDEF {
                return Err(Error::domain("incomplete coset table"));
            }
            let to = relabel[e.find(d) as usize] as usize;
            action[g][from] = to;
        }
    }
    Ok(CosetEnumeration::Complete(CosetTable {
        ngens: p.ngens,
        ncosets,
        action,
    }))
}

/// Enumerate the whole group (trivial subgroup) and materialize it.
pub fn enumerate_group(p: &Presentation, max_cosets: usize) -> Result<Option<EnumeratedGroup>> {
    match todd_coxeter(p, &[], max_cosets)? {
        CosetEnumeration::Complete(t) => Ok(Some(t.into_group()?)),
        CosetEnumeration::Overflow { .. } => Ok(None),
    }
}
