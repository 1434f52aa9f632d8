//! Subsets, families and collections over a target palette `[c]`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Largest palette a [`Subset`] mask can hold.
pub const MAX_PALETTE: u32 = 64;

/// Collections larger than this are never materialized by default.
pub const DEFAULT_MATERIALIZE_BOUND: u64 = 1 << 20;

/// Largest palette accepted by [`pair_split`] (and so by [`construct`]).
pub const MAX_CONSTRUCT_PALETTE: u32 = 24;

pub(crate) fn palette_mask(c: u32) -> u64 {
    if c >= 64 {
        u64::MAX
    } else {
        (1u64 << c) - 1
    }
}

/// A non-empty subset of `[c]`; bit `i - 1` stands for colour `i`.
///
/// Subsets are ordered by their mask read as an integer (the *code*).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub fn from_mask(mask: u64) -> Result<Self> {
        if mask == 0 {
            return Err(Error::EmptySubset);
        }
        Ok(Subset(mask))
    }

    pub fn from_colours(c: u32, colours: &[u32]) -> Result<Self> {
        if c > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(c));
        }
        let mut mask = 0u64;
        for &colour in colours {
            if colour == 0 || colour > c {
                return Err(Error::ColourOutOfPalette { colour, c });
            }
            mask |= 1 << (colour - 1);
        }
        Subset::from_mask(mask)
    }

    pub fn singleton(colour: u32) -> Self {
        debug_assert!((1..=MAX_PALETTE).contains(&colour));
        Subset(1 << (colour - 1))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    /// The ordering key; identical to the mask.
    pub fn code(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, colour: u32) -> bool {
        colour >= 1 && colour <= MAX_PALETTE && self.0 & (1 << (colour - 1)) != 0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        !self.intersects(other)
    }

    /// Smallest colour in the subset.
    pub fn min_colour(self) -> u32 {
        self.0.trailing_zeros() + 1
    }

    /// Whether every element lies in `[c]`.
    pub fn fits(self, c: u32) -> bool {
        self.0 & !palette_mask(c) == 0
    }

    /// `[c] \ self`, or `None` when that is empty.
    pub fn complement_in(self, c: u32) -> Option<Subset> {
        let rest = palette_mask(c) & !self.0;
        (rest != 0).then_some(Subset(rest))
    }

    pub fn colours(self) -> Vec<u32> {
        (0..64)
            .filter(|bit| self.0 & (1 << bit) != 0)
            .map(|bit| bit + 1)
            .collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Compact notation: `13` for `{1,3}`, or `1,10` once a colour has two digits.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let colours = self.colours();
        let sep = if colours.iter().all(|&c| c < 10) { "" } else { "," };
        let parts: Vec<String> = colours.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

/// A non-empty set of subsets, kept sorted by code.
///
/// Families are ordered first by the number of subsets, then
/// lexicographically by code.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family(Vec<Subset>);

impl Family {
    pub fn new(subsets: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let mut subsets: Vec<Subset> = subsets.into_iter().collect();
        subsets.sort_unstable();
        subsets.dedup();
        if subsets.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(Family(subsets))
    }

    pub fn singleton(colour: u32) -> Self {
        Family(vec![Subset::singleton(colour)])
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, subset: Subset) -> bool {
        self.0.binary_search(&subset).is_ok()
    }

    pub fn fits(&self, c: u32) -> bool {
        self.0.iter().all(|s| s.fits(c))
    }

    /// First pair of disjoint members, if any (so `None` means (P1) holds).
    pub fn disjoint_pair(&self) -> Option<(Subset, Subset)> {
        for (i, &x) in self.0.iter().enumerate() {
            for &y in &self.0[i..] {
                if x.is_disjoint(y) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

impl Ord for Family {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Family {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Space-separated compact notation, e.g. `12 13 23`.
impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// (P1): every two members of `f`, including a member with itself, intersect.
pub fn check_p1(f: &Family) -> bool {
    f.disjoint_pair().is_none()
}

/// (P2): some member of `f` is disjoint from some member of `g`.
pub fn check_p2(f: &Family, g: &Family) -> bool {
    p2_witness(f, g).is_some()
}

pub fn p2_witness(f: &Family, g: &Family) -> Option<(Subset, Subset)> {
    f.subsets().iter().find_map(|&x| {
        g.subsets()
            .iter()
            .find(|&&y| x.is_disjoint(y))
            .map(|&y| (x, y))
    })
}

/// A `c/2`-subset and its complement, keyed by the half containing colour 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ComplementPair {
    pub representative: Subset,
    pub complement: Subset,
}

/// All complement pairs of `c/2`-subsets of `[c]`, sorted by representative code.
pub fn pair_split(c: u32) -> Result<Vec<ComplementPair>> {
    if c == 0 || c % 2 == 1 {
        return Err(Error::InvalidPairPalette(c));
    }
    if c > MAX_CONSTRUCT_PALETTE {
        return Err(Error::PaletteTooLarge(c));
    }
    let full = palette_mask(c);
    let half = c / 2;
    let mut pairs = Vec::new();
    // Gosper's hack visits masks of a fixed popcount in increasing order.
    let mut mask: u64 = (1 << half) - 1;
    while mask <= full {
        if mask & 1 == 1 {
            pairs.push(ComplementPair {
                representative: Subset(mask),
                complement: Subset(full & !mask),
            });
        }
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
    Ok(pairs)
}

/// Which family of a constructed collection an index denotes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Member {
    /// `{{i}}`, for indices `1..=c`.
    Singleton(u32),
    /// One half per complement pair; bit `j` set selects the complement of pair `j`.
    Choice(Vec<u64>),
}

/// The rule behind [`construct`]: singletons first, then one family per
/// bit-string choosing a half of every complement pair, each augmented with
/// all `(c-1)`-subsets.
#[derive(Clone, Debug)]
pub(crate) struct Construction {
    c: u32,
    pairs: Vec<ComplementPair>,
    near_full: Vec<Subset>,
    size: BigUint,
}

impl Construction {
    fn new(c: u32) -> Result<Self> {
        if c < 4 || c % 2 == 1 {
            return Err(Error::InvalidConstructPalette(c));
        }
        let pairs = pair_split(c)?;
        let full = palette_mask(c);
        let mut near_full: Vec<Subset> = (0..c).map(|bit| Subset(full & !(1 << bit))).collect();
        near_full.sort_unstable();
        let size = (BigUint::one() << pairs.len()) + c;
        Ok(Construction {
            c,
            pairs,
            near_full,
            size,
        })
    }

    pub(crate) fn c(&self) -> u32 {
        self.c
    }

    pub(crate) fn pairs(&self) -> &[ComplementPair] {
        &self.pairs
    }

    pub(crate) fn near_full(&self) -> &[Subset] {
        &self.near_full
    }

    fn words(&self) -> usize {
        self.pairs.len().div_ceil(64)
    }

    pub(crate) fn member(&self, index: &BigUint) -> Result<Member> {
        if index.is_zero() || index > &self.size {
            return Err(Error::IndexOutOfRange {
                index: index.clone(),
                size: self.size.clone(),
            });
        }
        if let Some(i) = index.to_u32().filter(|&i| i <= self.c) {
            return Ok(Member::Singleton(i));
        }
        let offset = index - BigUint::from(self.c) - 1u32;
        let mut words = offset.to_u64_digits();
        words.resize(self.words(), 0);
        Ok(Member::Choice(words))
    }

    /// The half of pair `j` selected by `choice`.
    pub(crate) fn chosen_half(&self, choice: &[u64], j: usize) -> Subset {
        let pair = &self.pairs[j];
        if choice[j / 64] >> (j % 64) & 1 == 1 {
            pair.complement
        } else {
            pair.representative
        }
    }

    pub(crate) fn family_of(&self, member: &Member) -> Family {
        match member {
            Member::Singleton(i) => Family::singleton(*i),
            Member::Choice(choice) => {
                let mut subsets: Vec<Subset> = (0..self.pairs.len())
                    .map(|j| self.chosen_half(choice, j))
                    .collect();
                subsets.extend_from_slice(&self.near_full);
                subsets.sort_unstable();
                Family(subsets)
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Explicit(Vec<Family>),
    Constructed(Construction),
}

/// An ordered sequence of distinct families over `[c]`; index `i` (1-based)
/// is the family assigned to input colour `i`.
///
/// Explicit collections hold their families. Constructed ones evaluate the
/// family for an index on demand, so sizes like `2^462 + 12` are fine.
#[derive(Clone, Debug)]
pub struct Collection {
    c: u32,
    repr: Repr,
}

impl Collection {
    pub fn explicit(c: u32, families: Vec<Family>) -> Result<Self> {
        if c == 0 || c > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(c));
        }
        for family in &families {
            if let Some(s) = family.subsets().iter().find(|s| !s.fits(c)) {
                let colour = 64 - s.mask().leading_zeros();
                return Err(Error::ColourOutOfPalette { colour, c });
            }
        }
        let mut order: Vec<usize> = (0..families.len()).collect();
        order.sort_by(|&a, &b| families[a].cmp(&families[b]).then(a.cmp(&b)));
        for w in order.windows(2) {
            if families[w[0]] == families[w[1]] {
                return Err(Error::DuplicateFamily {
                    first: w[0] + 1,
                    second: w[1] + 1,
                });
            }
        }
        Ok(Collection {
            c,
            repr: Repr::Explicit(families),
        })
    }

    /// Target palette size.
    pub fn c(&self) -> u32 {
        self.c
    }

    /// Number of families, i.e. the input palette size `k`.
    pub fn size(&self) -> BigUint {
        match &self.repr {
            Repr::Explicit(f) => BigUint::from(f.len()),
            Repr::Constructed(cons) => cons.size.clone(),
        }
    }

    pub fn is_constructed(&self) -> bool {
        matches!(self.repr, Repr::Constructed(_))
    }

    /// Too large to materialize under the default bound.
    pub fn is_lazy(&self) -> bool {
        self.size() > BigUint::from(DEFAULT_MATERIALIZE_BOUND)
    }

    pub(crate) fn construction(&self) -> Option<&Construction> {
        match &self.repr {
            Repr::Constructed(cons) => Some(cons),
            Repr::Explicit(_) => None,
        }
    }

    /// The family assigned to input colour `index` (1-based).
    pub fn family_from_index(&self, index: &BigUint) -> Result<Family> {
        match &self.repr {
            Repr::Explicit(families) => index
                .to_usize()
                .filter(|&i| (1..=families.len()).contains(&i))
                .map(|i| families[i - 1].clone())
                .ok_or_else(|| Error::IndexOutOfRange {
                    index: index.clone(),
                    size: self.size(),
                }),
            Repr::Constructed(cons) => Ok(cons.family_of(&cons.member(index)?)),
        }
    }

    /// All families, in index order, if the size is at most `bound`.
    pub fn families_bounded(&self, bound: u64) -> Result<Vec<Family>> {
        match &self.repr {
            Repr::Explicit(families) => Ok(families.clone()),
            Repr::Constructed(cons) => {
                let size = cons.size.to_u64().filter(|&s| s <= bound).ok_or_else(|| {
                    Error::TooLargeToMaterialize {
                        size: cons.size.clone(),
                        bound,
                    }
                })?;
                (1..=size)
                    .map(|i| Ok(cons.family_of(&cons.member(&BigUint::from(i))?)))
                    .collect()
            }
        }
    }

    pub fn families(&self) -> Result<Vec<Family>> {
        self.families_bounded(DEFAULT_MATERIALIZE_BOUND)
    }

    /// An explicit copy with the same families in the same order.
    pub fn materialize(&self) -> Result<Collection> {
        Ok(Collection {
            c: self.c,
            repr: Repr::Explicit(self.families()?),
        })
    }

    /// Equality as multisets of families (ignoring index order).
    pub fn same_families(&self, other: &Collection) -> Result<bool> {
        if self.c != other.c {
            return Ok(false);
        }
        if self.is_constructed() && other.is_constructed() {
            return Ok(true);
        }
        let mut a = self.families()?;
        let mut b = other.families()?;
        a.sort();
        b.sort();
        Ok(a == b)
    }

    /// One family per line in compact notation.
    pub fn display_compact(&self) -> Result<String> {
        let lines: Vec<String> = self.families()?.iter().map(Family::to_string).collect();
        Ok(lines.join("\n"))
    }
}

/// Collections are equal when they have the same palette and the same
/// families in the same index order.
impl PartialEq for Collection {
    fn eq(&self, other: &Self) -> bool {
        if self.c != other.c {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Constructed(_), Repr::Constructed(_)) => true,
            _ => match (self.families(), other.families()) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            },
        }
    }
}

/// The doubly-exponential colourful collection for even `c >= 4`, of size
/// `2^(s/2) + c` with `s = C(c, c/2)`.
///
/// Indices `1..=c` are the singletons `{{i}}`, so colours already in `[c]`
/// keep their colour. Index `c + 1 + o` picks, for each complement pair `j`
/// in [`pair_split`] order, the representative when bit `j` of `o` is clear
/// and the complement when it is set, then adds every `(c-1)`-subset.
pub fn construct(c: u32) -> Result<Collection> {
    Ok(Collection {
        c,
        repr: Repr::Constructed(Construction::new(c)?),
    })
}

/// `{1, 2, 3, 12 13 23}`: the smallest interesting colourful collection (`4 ▷ 3`).
pub fn base_collection_c3() -> Collection {
    let s = |colours: &[u32]| Subset::from_colours(3, colours).expect("valid subset");
    let families = vec![
        Family::singleton(1),
        Family::singleton(2),
        Family::singleton(3),
        Family::new([s(&[1, 2]), s(&[1, 3]), s(&[2, 3])]).expect("non-empty"),
    ];
    Collection::explicit(3, families).expect("distinct families")
}

/// Outcome of a colourfulness check; indices are 1-based collection indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Colourfulness {
    Colourful,
    /// (P1) fails inside one family.
    NotIntersecting {
        family: BigUint,
        x: Subset,
        y: Subset,
    },
    /// (P2) fails between two families.
    NotSeparated { first: BigUint, second: BigUint },
}

impl Colourfulness {
    pub fn is_colourful(&self) -> bool {
        matches!(self, Colourfulness::Colourful)
    }
}

impl fmt::Display for Colourfulness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colourfulness::Colourful => f.write_str("colourful"),
            Colourfulness::NotIntersecting { family, x, y } => write!(
                f,
                "(P1) violated: family {family} contains disjoint subsets {x:?} and {y:?}"
            ),
            Colourfulness::NotSeparated { first, second } => write!(
                f,
                "(P2) violated: families {first} and {second} have no disjoint cross pair"
            ),
        }
    }
}

/// Full (P1)/(P2) check with the default materialization bound.
pub fn is_colourful(a: &Collection) -> Result<Colourfulness> {
    is_colourful_bounded(a, DEFAULT_MATERIALIZE_BOUND)
}

pub fn is_colourful_bounded(a: &Collection, bound: u64) -> Result<Colourfulness> {
    let families = a.families_bounded(bound)?;
    for (i, f) in families.iter().enumerate() {
        if let Some((x, y)) = f.disjoint_pair() {
            return Ok(Colourfulness::NotIntersecting {
                family: BigUint::from(i + 1),
                x,
                y,
            });
        }
    }
    for (i, f) in families.iter().enumerate() {
        for (j, g) in families.iter().enumerate().skip(i + 1) {
            if !check_p2(f, g) {
                return Ok(Colourfulness::NotSeparated {
                    first: BigUint::from(i + 1),
                    second: BigUint::from(j + 1),
                });
            }
        }
    }
    Ok(Colourfulness::Colourful)
}

/// Checks (P1) on `samples` random families and (P2) on `samples` random
/// pairs of distinct indices. Works for collections of any size.
pub fn verify_sampled(a: &Collection, samples: usize, seed: u64) -> Result<Colourfulness> {
    let size = a.size();
    if size.is_zero() {
        return Ok(Colourfulness::Colourful);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upper = &size + 1u32;
    let one = BigUint::one();
    for _ in 0..samples {
        let i = rng.gen_biguint_range(&one, &upper);
        if let Some((x, y)) = a.family_from_index(&i)?.disjoint_pair() {
            return Ok(Colourfulness::NotIntersecting { family: i, x, y });
        }
    }
    if size == one {
        return Ok(Colourfulness::Colourful);
    }
    for _ in 0..samples {
        let i = rng.gen_biguint_range(&one, &upper);
        let mut j = rng.gen_biguint_range(&one, &size);
        if j >= i {
            j += 1u32;
        }
        if !check_p2(&a.family_from_index(&i)?, &a.family_from_index(&j)?) {
            return Ok(Colourfulness::NotSeparated {
                first: i.clone().min(j.clone()),
                second: i.max(j),
            });
        }
    }
    Ok(Colourfulness::Colourful)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(colours: &[u32]) -> Subset {
        Subset::from_colours(12, colours).unwrap()
    }

    fn fam(subsets: &[&[u32]]) -> Family {
        Family::new(subsets.iter().map(|c| s(c))).unwrap()
    }

    fn big(i: u64) -> BigUint {
        BigUint::from(i)
    }

    #[test]
    fn subset_rejects_empty_and_out_of_palette() {
        assert!(matches!(Subset::from_mask(0), Err(Error::EmptySubset)));
        assert!(matches!(
            Subset::from_colours(3, &[]),
            Err(Error::EmptySubset)
        ));
        assert!(matches!(
            Subset::from_colours(3, &[4]),
            Err(Error::ColourOutOfPalette { colour: 4, c: 3 })
        ));
        assert!(Subset::from_colours(3, &[0]).is_err());
    }

    #[test]
    fn subset_display_and_code() {
        let x = s(&[1, 3]);
        assert_eq!(x.code(), 0b101);
        assert_eq!(x.to_string(), "13");
        assert_eq!(s(&[1, 10]).to_string(), "1,10");
        assert_eq!(x.complement_in(4), Some(s(&[2, 4])));
        assert_eq!(s(&[1, 2, 3]).complement_in(3), None);
        assert_eq!(s(&[3, 4]).min_colour(), 3);
    }

    #[test]
    fn family_is_canonical() {
        let f = fam(&[&[2, 3], &[1, 2], &[1, 3], &[1, 2]]);
        assert_eq!(f.subsets(), &[s(&[1, 2]), s(&[1, 3]), s(&[2, 3])]);
        assert_eq!(f.to_string(), "12 13 23");
        assert!(matches!(Family::new([]), Err(Error::EmptyFamily)));
    }

    #[test]
    fn family_order_is_size_then_lexicographic() {
        let a = fam(&[&[1]]);
        let b = fam(&[&[2]]);
        let ab = fam(&[&[1, 2]]);
        let a_ab = fam(&[&[1], &[1, 2]]);
        let mut v = vec![a_ab.clone(), ab.clone(), b.clone(), a.clone()];
        v.sort();
        assert_eq!(v, vec![a, b, ab, a_ab]);
    }

    #[test]
    fn p1_examples() {
        assert!(check_p1(&fam(&[&[1, 2], &[1, 3], &[2, 3]])));
        assert!(check_p1(&fam(&[&[1]])));
        assert!(!check_p1(&fam(&[&[1, 2], &[3, 4]])));
    }

    #[test]
    fn p2_examples() {
        assert!(check_p2(&fam(&[&[1]]), &fam(&[&[2]])));
        assert!(!check_p2(&fam(&[&[1]]), &fam(&[&[1]])));
        let tri = fam(&[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(p2_witness(&tri, &fam(&[&[1]])), Some((s(&[2, 3]), s(&[1]))));
    }

    #[test]
    fn base_collection_is_colourful() {
        let a = base_collection_c3();
        assert_eq!(a.size(), big(4));
        assert_eq!(a.c(), 3);
        assert_eq!(is_colourful(&a).unwrap(), Colourfulness::Colourful);
        assert_eq!(a.family_from_index(&big(4)).unwrap().to_string(), "12 13 23");
        assert_eq!(a.display_compact().unwrap(), "1\n2\n3\n12 13 23");
    }

    #[test]
    fn duplicate_family_is_rejected_or_reported() {
        let f = vec![fam(&[&[1]]), fam(&[&[2]]), fam(&[&[1]])];
        assert!(matches!(
            Collection::explicit(3, f),
            Err(Error::DuplicateFamily { first: 1, second: 3 })
        ));
    }

    #[test]
    fn collection_checks_palette() {
        assert!(matches!(
            Collection::explicit(2, vec![fam(&[&[3]])]),
            Err(Error::ColourOutOfPalette { colour: 3, c: 2 })
        ));
    }

    #[test]
    fn colourfulness_reports_first_violation() {
        let a = Collection::explicit(3, vec![fam(&[&[1]]), fam(&[&[1], &[2]])]).unwrap();
        assert!(matches!(
            is_colourful(&a).unwrap(),
            Colourfulness::NotIntersecting { family, .. } if family == big(2)
        ));
        let b = Collection::explicit(3, vec![fam(&[&[1]]), fam(&[&[1, 2]])]).unwrap();
        assert_eq!(
            is_colourful(&b).unwrap(),
            Colourfulness::NotSeparated {
                first: big(1),
                second: big(2)
            }
        );
    }

    #[test]
    fn pair_split_small_palettes() {
        let p4 = pair_split(4).unwrap();
        let got: Vec<(String, String)> = p4
            .iter()
            .map(|p| (p.representative.to_string(), p.complement.to_string()))
            .collect();
        let want = [("12", "34"), ("13", "24"), ("14", "23")];
        assert_eq!(got.len(), 3);
        for (g, w) in got.iter().zip(want) {
            assert_eq!((g.0.as_str(), g.1.as_str()), w);
        }
        let p2 = pair_split(2).unwrap();
        assert_eq!(p2, vec![ComplementPair { representative: s(&[1]), complement: s(&[2]) }]);
        assert_eq!(pair_split(6).unwrap().len(), 10);
        assert!(pair_split(3).is_err());
        assert!(pair_split(0).is_err());
    }

    #[test]
    fn pair_split_covers_all_halves_once() {
        for c in [2u32, 4, 6, 8, 10] {
            let mut seen: Vec<u64> = pair_split(c)
                .unwrap()
                .iter()
                .flat_map(|p| {
                    assert!(p.representative.contains(1));
                    assert_eq!(p.representative.mask() & p.complement.mask(), 0);
                    assert_eq!(p.representative.mask() | p.complement.mask(), palette_mask(c));
                    [p.representative.mask(), p.complement.mask()]
                })
                .collect();
            seen.sort_unstable();
            let all: Vec<u64> = (1..=palette_mask(c))
                .filter(|m| m.count_ones() == c / 2)
                .collect();
            assert_eq!(seen, all, "c={c}");
        }
    }

    #[test]
    fn construct_rejects_bad_palettes() {
        for c in [0, 1, 2, 3, 5, 7] {
            assert!(
                matches!(construct(c), Err(Error::InvalidConstructPalette(x)) if x == c),
                "c={c}"
            );
        }
    }

    #[test]
    fn construct_sizes() {
        assert_eq!(construct(4).unwrap().size(), big(12));
        assert_eq!(construct(6).unwrap().size(), big(1024 + 6));
        assert_eq!(
            construct(12).unwrap().size(),
            (BigUint::one() << 462u32) + 12u32
        );
        assert!(construct(12).unwrap().is_lazy());
        assert!(!construct(6).unwrap().is_lazy());
    }

    #[test]
    fn construct_index_rule() {
        let a = construct(4).unwrap();
        assert_eq!(a.family_from_index(&big(3)).unwrap(), Family::singleton(3));
        let near_full: &[&[u32]] = &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]];
        let with_near_full = |halves: &[&[u32]]| {
            let mut all: Vec<&[u32]> = halves.to_vec();
            all.extend_from_slice(near_full);
            fam(&all)
        };
        assert_eq!(
            a.family_from_index(&big(5)).unwrap(),
            with_near_full(&[&[1, 2], &[1, 3], &[1, 4]])
        );
        assert_eq!(
            a.family_from_index(&big(6)).unwrap(),
            with_near_full(&[&[3, 4], &[1, 3], &[1, 4]])
        );
        assert_eq!(
            a.family_from_index(&big(12)).unwrap(),
            with_near_full(&[&[3, 4], &[2, 4], &[2, 3]])
        );
        assert!(a.family_from_index(&big(0)).is_err());
        assert!(a.family_from_index(&big(13)).is_err());
    }

    #[test]
    fn construct_is_colourful_when_materialized() {
        for c in [4, 6] {
            let a = construct(c).unwrap();
            assert!(is_colourful(&a).unwrap().is_colourful(), "c={c}");
        }
    }

    #[test]
    fn lazy_collection_refuses_full_check() {
        let a = construct(8).unwrap();
        assert!(matches!(
            is_colourful(&a),
            Err(Error::TooLargeToMaterialize { .. })
        ));
        assert!(verify_sampled(&a, 200, 1).unwrap().is_colourful());
        assert!(verify_sampled(&construct(12).unwrap(), 50, 2)
            .unwrap()
            .is_colourful());
    }

    #[test]
    fn sampled_verification_catches_broken_collection() {
        let a = Collection::explicit(2, vec![fam(&[&[1]]), fam(&[&[1, 2]])]).unwrap();
        assert!(!verify_sampled(&a, 50, 0).unwrap().is_colourful());
    }

    #[test]
    fn collection_equality() {
        let a = construct(4).unwrap();
        let m = a.materialize().unwrap();
        assert_eq!(a, m);
        assert!(a.same_families(&m).unwrap());
        let mut fs = m.families().unwrap();
        fs.reverse();
        let r = Collection::explicit(4, fs).unwrap();
        assert_ne!(r, m);
        assert!(r.same_families(&m).unwrap());
    }
}
