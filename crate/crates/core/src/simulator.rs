//! Synchronous rounds on coloured paths and cycles.

use std::collections::HashSet;
use std::fmt;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::collection::{base_collection_c3, construct};
use crate::compiler::{ImplicitAlgorithm, OneRound};
use crate::{Colour, Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Topology {
    Path,
    Cycle,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Path => "path",
            Topology::Cycle => "cycle",
        })
    }
}

impl std::str::FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Topology::Path),
            "cycle" => Ok(Topology::Cycle),
            other => Err(Error::Malformed(format!(
                "unknown topology {other:?} (expected path or cycle)"
            ))),
        }
    }
}

/// A path or cycle with one colour per node and palette bound `k`.
///
/// `oriented` means each node's successor is the next index; only the
/// Cole–Vishkin baseline looks at it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColouredGraph {
    pub topology: Topology,
    pub colours: Vec<Colour>,
    pub k: BigUint,
    pub oriented: bool,
}

/// A problem found by [`ColouredGraph::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// Nodes `left` and `right` are adjacent and share a colour.
    Adjacent { left: usize, right: usize },
    /// The colour at `position` is 0 or larger than `k`.
    OutOfRange { position: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Adjacent { left, right } => {
                write!(f, "nodes {left} and {right} share a colour")
            }
            Violation::OutOfRange { position } => {
                write!(f, "colour at node {position} is outside the palette")
            }
        }
    }
}

impl ColouredGraph {
    /// Checks the shape (`n >= 1`, cycles need `n >= 3`) but not the colouring.
    pub fn new(topology: Topology, colours: Vec<Colour>, k: BigUint) -> Result<Self> {
        let min = match topology {
            Topology::Path => 1,
            Topology::Cycle => 3,
        };
        if colours.len() < min {
            return Err(Error::Malformed(format!(
                "a {topology} needs at least {min} nodes, got {}",
                colours.len()
            )));
        }
        Ok(ColouredGraph {
            topology,
            colours,
            k,
            oriented: false,
        })
    }

    pub fn path(colours: &[u64], k: u64) -> Result<Self> {
        Self::new(
            Topology::Path,
            colours.iter().map(|&c| c.into()).collect(),
            k.into(),
        )
    }

    pub fn cycle(colours: &[u64], k: u64) -> Result<Self> {
        Self::new(
            Topology::Cycle,
            colours.iter().map(|&c| c.into()).collect(),
            k.into(),
        )
    }

    pub fn oriented(mut self, oriented: bool) -> Self {
        self.oriented = oriented;
        self
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    fn edges(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.colours.len();
        let wrap = (self.topology == Topology::Cycle).then_some((n - 1, 0));
        (1..n).map(|i| (i - 1, i)).chain(wrap)
    }

    /// Every out-of-range colour and every monochromatic edge.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations: Vec<Violation> = self
            .colours
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero() || **c > self.k)
            .map(|(position, _)| Violation::OutOfRange { position })
            .collect();
        violations.extend(
            self.edges()
                .filter(|&(a, b)| self.colours[a] == self.colours[b])
                .map(|(left, right)| Violation::Adjacent { left, right }),
        );
        violations
    }

    pub fn is_proper(&self) -> bool {
        self.validate().is_empty()
    }

    fn ensure_proper(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidColouring(v.to_string())),
        }
    }

    /// The colours of the two neighbours of node `i`, substituting a virtual
    /// neighbour at path endpoints.
    fn neighbours(&self, i: usize) -> (Colour, Colour) {
        let n = self.colours.len();
        let own = &self.colours[i];
        let left = match (i, self.topology) {
            (0, Topology::Cycle) => self.colours[n - 1].clone(),
            (0, Topology::Path) => virtual_neighbour(own),
            _ => self.colours[i - 1].clone(),
        };
        let right = match (i + 1 == n, self.topology) {
            (true, Topology::Cycle) => self.colours[0].clone(),
            (true, Topology::Path) => virtual_neighbour(own),
            _ => self.colours[i + 1].clone(),
        };
        (left, right)
    }

    /// SHA-256 of the colours in decimal, newline-separated.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for c in &self.colours {
            hasher.update(c.to_str_radix(10).as_bytes());
            hasher.update(b"\n");
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// The smallest colour different from `own`: what a path endpoint pretends
/// its missing neighbour has.
pub fn virtual_neighbour(own: &Colour) -> Colour {
    if own.is_one() {
        BigUint::from(2u32)
    } else {
        BigUint::one()
    }
}

/// One synchronous round of `alg` at every node.
pub fn step(g: &ColouredGraph, alg: &dyn OneRound) -> Result<ColouredGraph> {
    g.ensure_proper()?;
    let input = alg.input_palette();
    if g.k > input {
        return Err(Error::PaletteMismatch {
            graph: g.k.clone(),
            algorithm: input,
        });
    }
    let colours = (0..g.len())
        .map(|i| {
            let (left, right) = g.neighbours(i);
            alg.recolour(&left, &g.colours[i], &right).map(Colour::from)
        })
        .collect::<Result<Vec<_>>>()?;
    let out = ColouredGraph {
        topology: g.topology,
        colours,
        k: alg.output_palette().into(),
        oriented: g.oriented,
    };
    if let Some(v) = out.validate().first() {
        return Err(Error::RoundFailed(format!("{}: {v}", alg.name())));
    }
    Ok(out)
}

/// One round of a chain run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RoundRecord {
    pub stage: String,
    pub k_in: BigUint,
    pub k_out: BigUint,
    pub digest: String,
    pub snapshot: Option<Vec<Colour>>,
}

#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct ChainTrace {
    pub rounds: Vec<RoundRecord>,
}

impl ChainTrace {
    pub fn palettes(&self) -> Vec<BigUint> {
        self.rounds.iter().map(|r| r.k_out.clone()).collect()
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.rounds.iter().all(|r| r.k_out < r.k_in)
    }

    /// `k ▷ k1 ▷ k2 ▷ …`, with large palettes abbreviated.
    pub fn chain_notation(&self) -> String {
        let Some(first) = self.rounds.first() else {
            return String::new();
        };
        let mut out = format_palette(&first.k_in);
        for r in &self.rounds {
            out.push_str(" ▷ ");
            out.push_str(&format_palette(&r.k_out));
        }
        out
    }
}

/// Decimal, except powers of ten and two beyond 12 digits are written `10^d` / `2^d`.
pub fn format_palette(k: &BigUint) -> String {
    let digits = k.to_str_radix(10);
    if digits.len() <= 12 {
        return digits;
    }
    if digits[1..].bytes().all(|b| b == b'0') && digits.starts_with('1') {
        return format!("10^{}", digits.len() - 1);
    }
    if k.count_ones() == 1 {
        return format!("2^{}", k.bits() - 1);
    }
    let below = k - (BigUint::one() << (k.bits() - 1));
    if below.bits() < 32 {
        return format!("2^{} + {below}", k.bits() - 1);
    }
    digits
}

/// Runs `chain` one stage per round, validating after every round.
pub fn run_chain(
    g: &ColouredGraph,
    chain: &[&dyn OneRound],
    snapshots: bool,
) -> Result<(ColouredGraph, ChainTrace)> {
    g.ensure_proper()?;
    let mut current = g.clone();
    let mut trace = ChainTrace::default();
    for stage in chain {
        let next = step(&current, *stage)?;
        trace.rounds.push(RoundRecord {
            stage: stage.name(),
            k_in: current.k.clone(),
            k_out: next.k.clone(),
            digest: next.digest(),
            snapshot: snapshots.then(|| next.colours.clone()),
        });
        current = next;
    }
    Ok((current, trace))
}

/// `[construct(12), construct(4), base_collection_c3]`: `2^462 + 12 ▷ 12 ▷ 4 ▷ 3`.
pub fn default_chain() -> Vec<ImplicitAlgorithm> {
    vec![
        ImplicitAlgorithm::new(construct(12).expect("even palette")).expect("constructed"),
        ImplicitAlgorithm::new(construct(4).expect("even palette")).expect("constructed"),
        ImplicitAlgorithm::new(base_collection_c3())
            .expect("colourful")
            .with_name("base(4 ▷ 3)"),
    ]
}

/// Recolours every node of colour `k` with the smallest colour in `{1, 2, 3}`
/// unused by its neighbours, giving palette `k - 1`.
pub fn naive_step(g: &ColouredGraph) -> Result<ColouredGraph> {
    g.ensure_proper()?;
    if g.k <= BigUint::from(3u32) {
        return Err(Error::Infeasible(format!(
            "cannot reduce a {}-colouring locally",
            g.k
        )));
    }
    let n = g.len();
    let colours = (0..n)
        .map(|i| {
            if g.colours[i] != g.k {
                return g.colours[i].clone();
            }
            let mut taken = [false; 4];
            let real = [
                (i > 0 || g.topology == Topology::Cycle).then(|| (i + n - 1) % n),
                (i + 1 < n || g.topology == Topology::Cycle).then(|| (i + 1) % n),
            ];
            for j in real.into_iter().flatten() {
                if let Some(v) = g.colours[j].to_usize().filter(|&v| v <= 3) {
                    taken[v] = true;
                }
            }
            let free = (1..=3).find(|&v| !taken[v]).expect("two neighbours");
            Colour::from(free)
        })
        .collect();
    let out = ColouredGraph {
        topology: g.topology,
        colours,
        k: &g.k - 1u32,
        oriented: g.oriented,
    };
    if let Some(v) = out.validate().first() {
        return Err(Error::RoundFailed(format!("naive: {v}")));
    }
    Ok(out)
}

/// New Cole–Vishkin colour (0-based) of a node whose 0-based colour is `own`
/// and whose predecessor has 0-based colour `pred`: `2i + bit_i(own)` where
/// `i` is the lowest bit at which they differ.
pub fn cole_vishkin_colour(pred: &BigUint, own: &BigUint) -> Result<u64> {
    let i = (pred ^ own)
        .trailing_zeros()
        .ok_or_else(|| Error::EqualNeighbours(own + 1u32))?;
    Ok(2 * i + u64::from(own.bit(i)))
}

/// One Cole–Vishkin round on an oriented graph whose colours (1-based) fit
/// in `bits` bits after subtracting one. The output palette is `2 * bits`.
pub fn cole_vishkin_step(g: &ColouredGraph, bits: u32) -> Result<ColouredGraph> {
    if !g.oriented {
        return Err(Error::Malformed(
            "Cole–Vishkin needs an oriented graph".into(),
        ));
    }
    g.ensure_proper()?;
    let limit = BigUint::one() << bits;
    if let Some(bad) = g.colours.iter().find(|c| *c > &limit) {
        return Err(Error::InvalidColouring(format!(
            "colour {bad} does not fit in {bits} bits"
        )));
    }
    let n = g.len();
    let zero_based: Vec<BigUint> = g.colours.iter().map(|c| c - 1u32).collect();
    let colours = (0..n)
        .map(|i| {
            let own = &zero_based[i];
            let pred = match (i, g.topology) {
                (0, Topology::Path) => own ^ BigUint::one(),
                (0, Topology::Cycle) => zero_based[n - 1].clone(),
                _ => zero_based[i - 1].clone(),
            };
            cole_vishkin_colour(&pred, own).map(|v| Colour::from(v + 1))
        })
        .collect::<Result<Vec<_>>>()?;
    let out = ColouredGraph {
        topology: g.topology,
        colours,
        k: BigUint::from(2 * bits),
        oriented: true,
    };
    if let Some(v) = out.validate().first() {
        return Err(Error::RoundFailed(format!("Cole–Vishkin: {v}")));
    }
    Ok(out)
}

/// Uniform colour from `[k]` avoiding `excluded` (at most a few values).
fn uniform_avoiding(rng: &mut ChaCha8Rng, k: &BigUint, excluded: &[&BigUint]) -> BigUint {
    let mut excluded: Vec<&BigUint> = excluded
        .iter()
        .copied()
        .filter(|e| !e.is_zero() && *e <= k)
        .collect();
    excluded.sort();
    excluded.dedup();
    let available = k - BigUint::from(excluded.len());
    let mut v = rng.gen_biguint_range(&BigUint::one(), &(available + 1u32));
    for e in excluded {
        if &v >= e {
            v += 1u32;
        }
    }
    v
}

/// A random proper colouring: each node is uniform over the colours that
/// differ from its already-coloured neighbours. Deterministic in `seed`.
pub fn random_proper(topology: Topology, n: usize, k: &BigUint, seed: u64) -> Result<ColouredGraph> {
    match topology {
        Topology::Path if n == 0 => return Err(Error::Infeasible("a path needs n >= 1".into())),
        Topology::Cycle if n < 3 => return Err(Error::Infeasible("a cycle needs n >= 3".into())),
        _ => {}
    }
    let two = BigUint::from(2u32);
    if k.is_zero() || (n > 1 && k < &two) {
        return Err(Error::Infeasible(format!("cannot properly colour with k={k}")));
    }
    if topology == Topology::Cycle && n % 2 == 1 && k < &BigUint::from(3u32) {
        return Err(Error::Infeasible(format!(
            "an odd cycle ({n} nodes) is not 2-colourable"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colours: Vec<Colour> = Vec::with_capacity(n);
    for i in 0..n {
        let prev = colours.last();
        let first = (topology == Topology::Cycle && i + 1 == n && n > 1).then(|| &colours[0]);
        let excluded: Vec<&BigUint> = prev.into_iter().chain(first).collect();
        let v = uniform_avoiding(&mut rng, k, &excluded);
        colours.push(v);
    }
    ColouredGraph::new(topology, colours, k.clone())
}

/// `n` pairwise distinct colours from `[k]`, uniformly at random.
pub fn random_distinct(topology: Topology, n: usize, k: &BigUint, seed: u64) -> Result<ColouredGraph> {
    if k < &BigUint::from(n) {
        return Err(Error::Infeasible(format!(
            "cannot pick {n} distinct colours from [{k}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upper = k + 1u32;
    let mut seen = HashSet::with_capacity(n);
    let mut colours = Vec::with_capacity(n);
    while colours.len() < n {
        let v = rng.gen_biguint_range(&BigUint::one(), &upper);
        if seen.insert(v.clone()) {
            colours.push(v);
        }
    }
    ColouredGraph::new(topology, colours, k.clone())
}
