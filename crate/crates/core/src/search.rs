//! Brute-force search for the largest colourful collection over a small palette.
//!
//! A colourful collection is a clique in the graph whose vertices are the
//! pairwise-intersecting families and whose edges join families with a
//! disjoint cross pair. The search enumerates those families and runs a
//! depth-first clique search in canonical order with a node budget.

use crate::collection::{
    check_p2, construct, is_colourful, palette_mask, Collection, Family, Subset,
};
use crate::{Error, Result};

/// Largest palette [`enumerate_p1_families`] accepts.
pub const MAX_SEARCH_PALETTE: u32 = 5;

/// Default number of search nodes to expand.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// All families of non-empty subsets of `[c]` satisfying (P1), in canonical
/// family order.
pub fn enumerate_p1_families(c: u32) -> Result<Vec<Family>> {
    if c == 0 || c > MAX_SEARCH_PALETTE {
        return Err(Error::SearchTooLarge(c));
    }
    let subsets: Vec<u64> = (1..=palette_mask(c)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_intersecting(&subsets, 0, &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn extend_intersecting(subsets: &[u64], from: usize, chosen: &mut Vec<u64>, out: &mut Vec<Family>) {
    if !chosen.is_empty() {
        out.push(
            Family::new(chosen.iter().map(|&m| Subset::from_mask(m).expect("non-empty")))
                .expect("non-empty"),
        );
    }
    for (i, &m) in subsets.iter().enumerate().skip(from) {
        if chosen.iter().all(|&other| other & m != 0) {
            chosen.push(m);
            extend_intersecting(subsets, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub c: u32,
    pub best_size: usize,
    pub witness: Option<Collection>,
    /// The search finished: `best_size` is the exact maximum.
    pub exhaustive: bool,
    pub nodes: u64,
}

struct Clique<'a> {
    adjacency: &'a [Vec<u64>],
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    best_size: usize,
    exhausted: bool,
}

impl Clique<'_> {
    fn expand(&mut self, chosen: &mut Vec<usize>, candidates: Vec<u64>) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if chosen.len() > self.best_size {
            self.best_size = chosen.len();
            self.best = chosen.clone();
        }
        let mut remaining: usize = candidates.iter().map(|w| w.count_ones() as usize).sum();
        for (w, &word) in candidates.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                if chosen.len() + remaining <= self.best_size {
                    return;
                }
                let v = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                remaining -= 1;
                // Only later candidates, adjacent to v.
                let next: Vec<u64> = candidates
                    .iter()
                    .zip(&self.adjacency[v])
                    .enumerate()
                    .map(|(i, (&c, &a))| {
                        let keep = match i.cmp(&w) {
                            std::cmp::Ordering::Less => 0,
                            std::cmp::Ordering::Equal => bits,
                            std::cmp::Ordering::Greater => u64::MAX,
                        };
                        c & a & keep
                    })
                    .collect();
                chosen.push(v);
                self.expand(chosen, next);
                chosen.pop();
                if self.exhausted {
                    return;
                }
            }
        }
    }
}

/// The largest colourful collection over `[c]` found within `budget` search
/// nodes. For even `c >= 4` the construction seeds the lower bound.
pub fn max_colourful(c: u32, budget: u64) -> Result<SearchResult> {
    let families = enumerate_p1_families(c)?;
    let n = families.len();
    let words = n.div_ceil(64);
    let mut adjacency = vec![vec![0u64; words]; n];
    for i in 0..n {
        for j in i + 1..n {
            if check_p2(&families[i], &families[j]) {
                adjacency[i][j / 64] |= 1 << (j % 64);
                adjacency[j][i / 64] |= 1 << (i % 64);
            }
        }
    }

    let seed = (c >= 4 && c % 2 == 0)
        .then(|| construct(c).ok()?.materialize().ok())
        .flatten();
    let seed_size = seed
        .as_ref()
        .map_or(0, |s| s.families().map_or(0, |f| f.len()));

    let mut all = vec![u64::MAX; words];
    if n % 64 != 0 {
        all[words - 1] = (1u64 << (n % 64)) - 1;
    }
    let mut search = Clique {
        adjacency: &adjacency,
        budget,
        nodes: 0,
        best: Vec::new(),
        best_size: seed_size,
        exhausted: false,
    };
    search.expand(&mut Vec::new(), all);

    let (best_size, witness) = if search.best.len() > seed_size || seed.is_none() {
        let chosen: Vec<Family> = search.best.iter().map(|&i| families[i].clone()).collect();
        let size = chosen.len();
        let witness = (size > 0)
            .then(|| Collection::explicit(c, chosen))
            .transpose()?;
        (size, witness)
    } else {
        (seed_size, seed)
    };
    if let Some(w) = &witness {
        let verdict = is_colourful(w)?;
        if !verdict.is_colourful() {
            return Err(Error::NotColourful(verdict.to_string()));
        }
    }
    Ok(SearchResult {
        c,
        best_size,
        witness,
        exhaustive: !search.exhausted,
        nodes: search.nodes.min(budget),
    })
}

/// Whether a one-round algorithm `k ▷ c` exists on paths and cycles.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Existence {
    Exists,
    DoesNotExist,
    /// The search ran out of budget below `k`.
    Undecided,
}

pub fn exists_algorithm(k: u64, c: u32, budget: u64) -> Result<Existence> {
    if k <= u64::from(c) {
        // The identity on the first k colours.
        return Ok(Existence::Exists);
    }
    let result = max_colourful(c, budget)?;
    Ok(if result.best_size as u64 >= k {
        Existence::Exists
    } else if result.exhaustive {
        Existence::DoesNotExist
    } else {
        Existence::Undecided
    })
}
