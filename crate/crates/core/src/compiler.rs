//! Compiling colourful collections into one-round algorithms, and back.
//!
//! A node of input colour `y` is labelled with the family `𝓛(y)`. Each
//! directed edge `(x, y)` gets the member `L(x, y)` of `𝓛(y)` that is
//! disjoint from the opposite label `L(y, x)`, and the node's new colour is
//! the smallest element of `L(x, y) ∩ L(z, y)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::collection::{
    is_colourful, p2_witness, palette_mask, Collection, Construction, Family, Member, Subset,
};
use crate::{Colour, Error, Result};

/// Largest `k` that [`tabulate`] will materialize (`k^3` entries).
pub const TABULATE_BOUND: u32 = 128;

/// A synchronous one-round recolouring rule `A(x, y, z)`.
pub trait OneRound {
    /// Input palette `k`: colours `1..=k` are accepted.
    fn input_palette(&self) -> BigUint;
    /// Output palette `c`.
    fn output_palette(&self) -> u32;
    /// New colour of a node coloured `y` whose neighbours are coloured `x` and `z`.
    fn recolour(&self, x: &Colour, y: &Colour, z: &Colour) -> Result<u32>;
    /// Short human-readable name, used in traces.
    fn name(&self) -> String;
}

/// The disjoint label pair `(L(y, x), L(x, y))` for an edge between colours
/// `x` and `y`: the first component belongs to `𝓛(x)`, the second to `𝓛(y)`.
///
/// Both endpoints compute the same pair: scan the family of the smaller
/// colour in code order, and for each member the family of the larger colour
/// in code order, taking the first disjoint pair.
pub fn edge_label_pair(a: &Collection, x: &Colour, y: &Colour) -> Result<(Subset, Subset)> {
    if x == y {
        return Err(Error::EqualNeighbours(x.clone()));
    }
    match a.construction() {
        Some(cons) => {
            let (mx, my) = (cons.member(x)?, cons.member(y)?);
            constructed_pair(cons, x, &mx, y, &my)
        }
        None => edge_label_pair_generic(a, x, y),
    }
}

/// [`edge_label_pair`] by scanning materialized families, whatever the collection.
pub fn edge_label_pair_generic(a: &Collection, x: &Colour, y: &Colour) -> Result<(Subset, Subset)> {
    if x == y {
        return Err(Error::EqualNeighbours(x.clone()));
    }
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    let (p, q) = p2_witness(&a.family_from_index(lo)?, &a.family_from_index(hi)?).ok_or_else(
        || Error::NoDisjointPair {
            x: x.clone(),
            y: y.clone(),
        },
    )?;
    Ok(if x == lo { (p, q) } else { (q, p) })
}

fn constructed_pair(
    cons: &Construction,
    x: &Colour,
    mx: &Member,
    y: &Colour,
    my: &Member,
) -> Result<(Subset, Subset)> {
    let swapped = x > y;
    let (lo, hi) = if swapped { (my, mx) } else { (mx, my) };
    let (p, q) = first_disjoint(cons, lo, hi).ok_or_else(|| Error::NoDisjointPair {
        x: x.clone(),
        y: y.clone(),
    })?;
    Ok(if swapped { (q, p) } else { (p, q) })
}

/// The generic scan specialised to the construction. Between two chosen-half
/// families the only disjoint pairs are complementary halves where the two
/// choices differ, so the answer is the smallest such half of `lo`.
fn first_disjoint(cons: &Construction, lo: &Member, hi: &Member) -> Option<(Subset, Subset)> {
    match (lo, hi) {
        (Member::Singleton(i), Member::Singleton(j)) => {
            (i != j).then(|| (Subset::singleton(*i), Subset::singleton(*j)))
        }
        (Member::Singleton(i), Member::Choice(choice)) => {
            let q = members_avoiding(cons, choice, *i)?;
            Some((Subset::singleton(*i), q))
        }
        (Member::Choice(choice), Member::Singleton(j)) => {
            let p = members_avoiding(cons, choice, *j)?;
            Some((p, Subset::singleton(*j)))
        }
        (Member::Choice(a), Member::Choice(b)) => {
            let mut best: Option<Subset> = None;
            for (w, (wa, wb)) in a.iter().zip(b).enumerate() {
                let mut diff = wa ^ wb;
                while diff != 0 {
                    let j = w * 64 + diff.trailing_zeros() as usize;
                    diff &= diff - 1;
                    let half = cons.chosen_half(a, j);
                    if best.map_or(true, |b| half < b) {
                        best = Some(half);
                    }
                }
            }
            let p = best?;
            Some((p, p.complement_in(cons.c())?))
        }
    }
}

/// Smallest member of a chosen-half family that avoids `colour`.
fn members_avoiding(cons: &Construction, choice: &[u64], colour: u32) -> Option<Subset> {
    let halves = (0..cons.pairs().len()).map(|j| cons.chosen_half(choice, j));
    halves
        .chain(cons.near_full().iter().copied())
        .filter(|s| !s.contains(colour))
        .min()
}

/// Smallest colour of `L(x, y) ∩ L(z, y)`.
pub fn new_colour(a: &Collection, x: &Colour, y: &Colour, z: &Colour) -> Result<u32> {
    let (_, from_x) = edge_label_pair(a, x, y)?;
    let (_, from_z) = edge_label_pair(a, z, y)?;
    meet(from_x, from_z, y)
}

fn meet(left: Subset, right: Subset, y: &Colour) -> Result<u32> {
    let common = left.mask() & right.mask();
    if common == 0 {
        return Err(Error::EmptyIntersection { y: y.clone() });
    }
    Ok(common.trailing_zeros() + 1)
}

/// The one-round algorithm `|a| ▷ c` defined by a colourful collection.
#[derive(Clone, Debug)]
pub struct ImplicitAlgorithm {
    collection: Collection,
    name: String,
}

impl ImplicitAlgorithm {
    /// Explicit collections are checked for colourfulness; constructed ones
    /// are colourful by construction.
    pub fn new(collection: Collection) -> Result<Self> {
        if !collection.is_constructed() {
            let verdict = is_colourful(&collection)?;
            if !verdict.is_colourful() {
                return Err(Error::NotColourful(verdict.to_string()));
            }
        }
        let name = if collection.is_constructed() {
            format!("construct({})", collection.c())
        } else {
            format!("collection({} ▷ {})", collection.size(), collection.c())
        };
        Ok(ImplicitAlgorithm { collection, name })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn collection(&self) -> &Collection {
        &self.collection
    }

    pub fn new_colour(&self, x: &Colour, y: &Colour, z: &Colour) -> Result<u32> {
        let Some(cons) = self.collection.construction() else {
            return new_colour(&self.collection, x, y, z);
        };
        if x == y {
            return Err(Error::EqualNeighbours(x.clone()));
        }
        if z == y {
            return Err(Error::EqualNeighbours(z.clone()));
        }
        let my = cons.member(y)?;
        let (_, from_x) = constructed_pair(cons, x, &cons.member(x)?, y, &my)?;
        let from_z = if z == x {
            from_x
        } else {
            constructed_pair(cons, z, &cons.member(z)?, y, &my)?.1
        };
        meet(from_x, from_z, y)
    }
}

impl OneRound for ImplicitAlgorithm {
    fn input_palette(&self) -> BigUint {
        self.collection.size()
    }

    fn output_palette(&self) -> u32 {
        self.collection.c()
    }

    fn recolour(&self, x: &Colour, y: &Colour, z: &Colour) -> Result<u32> {
        self.new_colour(x, y, z)
    }

    fn name(&self) -> String {
        self.name.clone()
    }
}

/// A fully tabulated algorithm `A: [k]^3 → [c]` over triples with
/// `x != y` and `y != z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgorithmTable {
    k: u32,
    c: u32,
    // Dense k^3 array; 0 marks triples outside the domain.
    entries: Vec<u32>,
}

impl AlgorithmTable {
    pub fn from_fn(k: u32, c: u32, mut f: impl FnMut(u32, u32, u32) -> u32) -> Result<Self> {
        Self::try_from_fn(k, c, |x, y, z| Ok(f(x, y, z)))
    }

    pub fn try_from_fn(
        k: u32,
        c: u32,
        mut f: impl FnMut(u32, u32, u32) -> Result<u32>,
    ) -> Result<Self> {
        if k == 0 || k > TABULATE_BOUND {
            return Err(Error::TableTooLarge {
                k: k.into(),
                bound: TABULATE_BOUND,
            });
        }
        let mut table = AlgorithmTable {
            k,
            c,
            entries: vec![0; (k as usize).pow(3)],
        };
        for (x, y, z) in triples(k) {
            let v = f(x, y, z)?;
            if v == 0 || v > c {
                return Err(Error::ColourOutOfPalette { colour: v, c });
            }
            let i = table.index(x, y, z);
            table.entries[i] = v;
        }
        Ok(table)
    }

    /// Builds a table from `((x, y, z), colour)` records, which must cover
    /// every valid triple exactly once.
    pub fn from_entries(
        k: u32,
        c: u32,
        records: impl IntoIterator<Item = ((u32, u32, u32), u32)>,
    ) -> Result<Self> {
        if k == 0 || k > TABULATE_BOUND {
            return Err(Error::TableTooLarge {
                k: k.into(),
                bound: TABULATE_BOUND,
            });
        }
        let mut table = AlgorithmTable {
            k,
            c,
            entries: vec![0; (k as usize).pow(3)],
        };
        for ((x, y, z), v) in records {
            let in_domain = [x, y, z].iter().all(|&t| (1..=k).contains(&t)) && x != y && y != z;
            if !in_domain {
                return Err(Error::Malformed(format!(
                    "triple ({x},{y},{z}) is not valid for k={k}"
                )));
            }
            if v == 0 || v > c {
                return Err(Error::ColourOutOfPalette { colour: v, c });
            }
            let i = table.index(x, y, z);
            if table.entries[i] != 0 {
                return Err(Error::Malformed(format!("triple ({x},{y},{z}) given twice")));
            }
            table.entries[i] = v;
        }
        if let Some((x, y, z)) = triples(k).find(|&(x, y, z)| table.get(x, y, z).is_none()) {
            return Err(Error::Malformed(format!("triple ({x},{y},{z}) is missing")));
        }
        Ok(table)
    }

    /// `A(x, y, z) = y` with `c = k`.
    pub fn identity(k: u32) -> Result<Self> {
        Self::from_fn(k, k, |_, y, _| y)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    fn index(&self, x: u32, y: u32, z: u32) -> usize {
        let k = self.k as usize;
        ((x - 1) as usize * k + (y - 1) as usize) * k + (z - 1) as usize
    }

    pub fn get(&self, x: u32, y: u32, z: u32) -> Option<u32> {
        let k = self.k;
        if !(1..=k).contains(&x) || !(1..=k).contains(&y) || !(1..=k).contains(&z) {
            return None;
        }
        let v = self.entries[self.index(x, y, z)];
        (v != 0).then_some(v)
    }

    /// Overwrites one entry; the triple must be in the domain.
    pub fn set(&mut self, x: u32, y: u32, z: u32, colour: u32) -> Result<()> {
        if self.get(x, y, z).is_none() {
            return Err(Error::Malformed(format!("triple ({x},{y},{z}) is not valid")));
        }
        if colour == 0 || colour > self.c {
            return Err(Error::ColourOutOfPalette { colour, c: self.c });
        }
        let i = self.index(x, y, z);
        self.entries[i] = colour;
        Ok(())
    }

    /// Number of valid triples.
    pub fn len(&self) -> usize {
        let k = self.k as usize;
        k * (k - 1) * (k - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All `((x, y, z), colour)` records in `(x, y, z)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32, u32), u32)> + '_ {
        triples(self.k).map(move |(x, y, z)| ((x, y, z), self.entries[self.index(x, y, z)]))
    }
}

impl OneRound for AlgorithmTable {
    fn input_palette(&self) -> BigUint {
        self.k.into()
    }

    fn output_palette(&self) -> u32 {
        self.c
    }

    fn recolour(&self, x: &Colour, y: &Colour, z: &Colour) -> Result<u32> {
        let small = |v: &Colour| v.to_u32().unwrap_or(0);
        self.get(small(x), small(y), small(z)).ok_or_else(|| {
            Error::InvalidColouring(format!("triple ({x},{y},{z}) is outside the table domain"))
        })
    }

    fn name(&self) -> String {
        format!("table({} ▷ {})", self.k, self.c)
    }
}

fn triples(k: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (1..=k).flat_map(move |x| {
        (1..=k)
            .filter(move |&y| y != x)
            .flat_map(move |y| (1..=k).filter(move |&z| z != y).map(move |z| (x, y, z)))
    })
}

/// Tabulates `alg` on the input palette `[k]`.
pub fn tabulate(alg: &ImplicitAlgorithm, k: u32) -> Result<AlgorithmTable> {
    if BigUint::from(k) > alg.input_palette() {
        return Err(Error::PaletteMismatch {
            graph: k.into(),
            algorithm: alg.input_palette(),
        });
    }
    AlgorithmTable::try_from_fn(k, alg.output_palette(), |x, y, z| {
        alg.new_colour(&x.into(), &y.into(), &z.into())
    })
}

/// A witness that a table breaks symmetry or properness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// `A(x, y, z) != A(z, y, x)`.
    Asymmetric {
        triple: (u32, u32, u32),
        forward: u32,
        backward: u32,
    },
    /// `A(x1, x2, x3) == A(x2, x3, x4)` on the path `x1 x2 x3 x4`.
    Improper { path: [u32; 4], colour: u32 },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Asymmetric {
                triple: (x, y, z),
                forward,
                backward,
            } => write!(
                f,
                "asymmetric: A({x},{y},{z}) = {forward} but A({z},{y},{x}) = {backward}"
            ),
            Counterexample::Improper {
                path: [a, b, c, d],
                colour,
            } => write!(
                f,
                "improper: path ({a},{b},{c},{d}) gives A({a},{b},{c}) = A({b},{c},{d}) = {colour}"
            ),
        }
    }
}

/// `A(x, y, z) = A(z, y, x)` for every valid triple.
pub fn check_symmetry(t: &AlgorithmTable) -> std::result::Result<(), Counterexample> {
    for ((x, y, z), forward) in t.entries() {
        let backward = t.entries[t.index(z, y, x)];
        if forward != backward {
            return Err(Counterexample::Asymmetric {
                triple: (x, y, z),
                forward,
                backward,
            });
        }
    }
    Ok(())
}

/// `A(x1, x2, x3) != A(x2, x3, x4)` whenever consecutive colours differ.
pub fn check_properness(t: &AlgorithmTable) -> std::result::Result<(), Counterexample> {
    let k = t.k;
    let mut left_witness = vec![0u32; t.c as usize + 1];
    for x2 in 1..=k {
        for x3 in (1..=k).filter(|&x3| x3 != x2) {
            left_witness.iter_mut().for_each(|w| *w = 0);
            for x1 in (1..=k).filter(|&x1| x1 != x2) {
                left_witness[t.entries[t.index(x1, x2, x3)] as usize] = x1;
            }
            for x4 in (1..=k).filter(|&x4| x4 != x3) {
                let colour = t.entries[t.index(x2, x3, x4)];
                let x1 = left_witness[colour as usize];
                if x1 != 0 {
                    return Err(Counterexample::Improper {
                        path: [x1, x2, x3, x4],
                        colour,
                    });
                }
            }
        }
    }
    Ok(())
}

/// The colourful collection `{𝓕_y}` of a symmetric proper table, where
/// `𝓕_y = {F_{x,y} : x != y}` and `F_{x,y} = {A(x, y, z) : z != y}`.
/// Family `y` of the result is `𝓕_y`.
pub fn extract(t: &AlgorithmTable) -> Result<Collection> {
    if t.k < 2 {
        return Err(Error::TableCheck("k must be at least 2".into()));
    }
    if t.c > crate::collection::MAX_PALETTE {
        return Err(Error::PaletteTooLarge(t.c));
    }
    check_symmetry(t).map_err(|e| Error::TableCheck(e.to_string()))?;
    check_properness(t).map_err(|e| Error::TableCheck(e.to_string()))?;
    let k = t.k;
    let families = (1..=k)
        .map(|y| {
            let subsets = (1..=k).filter(|&x| x != y).map(|x| {
                let mask = (1..=k)
                    .filter(|&z| z != y)
                    .fold(0u64, |m, z| m | 1 << (t.entries[t.index(x, y, z)] - 1));
                debug_assert_eq!(mask & !palette_mask(t.c), 0);
                Subset::from_mask(mask)
            });
            Family::new(subsets.collect::<Result<Vec<_>>>()?)
        })
        .collect::<Result<Vec<_>>>()?;
    Collection::explicit(t.c, families)
}

/// The classic `4 ▷ 3` rule: colours `1..=3` stay, colour 4 takes
/// `min({1, 2, 3} \ {x, z})`.
pub fn example_4to3() -> AlgorithmTable {
    AlgorithmTable::from_fn(4, 3, |x, y, z| {
        if y <= 3 {
            y
        } else {
            (1..=3).find(|&v| v != x && v != z).expect("three colours, two excluded")
        }
    })
    .expect("valid table")
}
