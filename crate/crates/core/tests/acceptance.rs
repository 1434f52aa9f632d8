//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use colred::collection::{is_colourful, pair_split};
use colred::compiler::{check_properness, check_symmetry, edge_label_pair_generic};
use colred::search::{exists_algorithm, max_colourful, Existence, DEFAULT_BUDGET};
use colred::simulator::{
    cole_vishkin_step, default_chain, naive_step, random_distinct, random_proper, run_chain, step,
};
use colred::{
    base_collection_c3, construct, edge_label_pair, example_4to3, extract, tabulate, Collection,
    ColouredGraph, Family, ImplicitAlgorithm, OneRound, Subset, Topology,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )
}

fn e(err: colred::Error) -> String {
    err.to_string()
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn small_colours(g: &ColouredGraph) -> Vec<u64> {
    g.colours.iter().map(|c| c.to_u64().unwrap()).collect()
}

fn family(c: u32, compact: &str) -> Family {
    Family::new(compact.split_whitespace().map(|s| {
        let colours: Vec<u32> = s.chars().map(|ch| ch.to_digit(10).unwrap()).collect();
        Subset::from_colours(c, &colours).unwrap()
    }))
    .unwrap()
}

fn ac1_small_example() -> Outcome {
    let g = ColouredGraph::path(&[1, 2, 1, 4, 3, 4, 3], 4).map_err(e)?;
    let table = example_4to3();
    let start = Instant::now();
    let out = step(&g, &table).map_err(e)?;
    let elapsed = start.elapsed();
    let got = small_colours(&out);
    ensure(got == [1, 2, 1, 2, 3, 1, 3], format!("got {got:?}"))?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("(1,2,1,4,3,4,3) -> {got:?} in {elapsed:?}"))
}

fn ac2_construction_c4() -> Outcome {
    let start = Instant::now();
    let a = construct(4).map_err(e)?;
    let families = a.families().map_err(e)?;
    ensure(families.len() == 12, format!("{} families", families.len()))?;
    let near_full = "123 124 134 234";
    let listed = [
        "12 13 14", "12 13 23", "12 24 14", "12 24 23", "34 13 14", "34 13 23", "34 24 14",
        "34 24 23",
    ];
    let mut expected: Vec<Family> = listed
        .iter()
        .map(|halves| family(4, &format!("{halves} {near_full}")))
        .chain((1..=4).map(Family::singleton))
        .collect();
    let expected_collection = Collection::explicit(4, expected.clone()).map_err(e)?;
    ensure(
        a.same_families(&expected_collection).map_err(e)?,
        "families differ from A1 ∪ A2",
    )?;
    expected.sort();
    let mut got = families.clone();
    got.sort();
    ensure(got == expected, "sorted families differ")?;
    let verdict = is_colourful(&a).map_err(e)?;
    ensure(verdict.is_colourful(), verdict.to_string())?;
    let pairs = families.len() * (families.len() - 1) / 2;
    ensure(pairs == 66, format!("{pairs} pairs"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_millis(10))?;
    Ok(format!("12 families, colourful over {pairs} pairs in {elapsed:?}"))
}

fn ac3_size_formula() -> Outcome {
    // C(12, 6) by the multiplicative formula.
    let s = (1..=6u64).fold(1u64, |acc, i| acc * (6 + i) / i);
    ensure(s == 924, format!("C(12,6) = {s}"))?;
    let pairs = pair_split(12).map_err(e)?;
    ensure(pairs.len() * 2 == 924, format!("{} pairs", pairs.len()))?;
    let expected = (BigUint::one() << 462u32) + 12u32;
    let size = construct(12).map_err(e)?.size();
    ensure(size == expected, format!("size {size}"))?;
    Ok("s = 924, |construct(12)| = 2^462 + 12".into())
}

fn ac4_headline_chain() -> Outcome {
    let start = Instant::now();
    let k = BigUint::from(10u32).pow(100);
    let chain = default_chain();
    let stages: Vec<&dyn OneRound> = chain.iter().map(|a| a as &dyn OneRound).collect();
    let mut notes = Vec::new();
    for (topology, seed) in [(Topology::Path, 1), (Topology::Cycle, 2)] {
        let g = random_distinct(topology, 100_000, &k, seed).map_err(e)?;
        ensure(g.is_proper(), "input not proper")?;
        // Manual rounds, validating each intermediate colouring.
        let mut current = g.clone();
        for (stage, want) in stages.iter().zip([12u64, 4, 3]) {
            current = step(&current, *stage).map_err(e)?;
            ensure(current.k == big(want), format!("palette {}", current.k))?;
            ensure(current.is_proper(), format!("round to {want} not proper"))?;
            ensure(
                current.colours.iter().all(|c| c <= &big(want)),
                "colour outside palette",
            )?;
        }
        let (out, trace) = run_chain(&g, &stages, false).map_err(e)?;
        ensure(out == current, "run_chain disagrees with manual rounds")?;
        ensure(trace.rounds.len() == 3, "not 3 rounds")?;
        ensure(trace.palettes() == [big(12), big(4), big(3)], "palettes")?;
        ensure(trace.is_strictly_decreasing(), "palettes not decreasing")?;
        notes.push(format!("{topology}: {}", trace.chain_notation()));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("n = 10^5, {} in {elapsed:?}", notes.join("; ")))
}

/// Calls `f` on every proper colouring of a path of length `n` over `[k]`.
fn for_each_proper_path(n: usize, k: u64, f: &mut dyn FnMut(&[u64]) -> Result<(), String>) -> Result<(), String> {
    fn rec(
        prefix: &mut Vec<u64>,
        n: usize,
        k: u64,
        f: &mut dyn FnMut(&[u64]) -> Result<(), String>,
    ) -> Result<(), String> {
        if prefix.len() == n {
            return f(prefix);
        }
        for c in 1..=k {
            if prefix.last() != Some(&c) {
                prefix.push(c);
                rec(prefix, n, k, f)?;
                prefix.pop();
            }
        }
        Ok(())
    }
    rec(&mut Vec::with_capacity(n), n, k, f)
}

fn ac5_compile_soundness() -> Outcome {
    let start = Instant::now();
    let alg = ImplicitAlgorithm::new(construct(4).map_err(e)?).map_err(e)?;
    let table = tabulate(&alg, 12).map_err(e)?;
    ensure(table.len() == 12 * 11 * 11, "triple count")?;
    check_symmetry(&table).map_err(|c| c.to_string())?;
    check_properness(&table).map_err(|c| c.to_string())?;
    let mut instances = 0u64;
    for n in 1..=6 {
        for_each_proper_path(n, 12, &mut |colours| {
            let g = ColouredGraph::path(colours, 12).map_err(e)?;
            let out = step(&g, &alg).map_err(e)?;
            ensure(out.is_proper(), format!("{colours:?} -> improper"))?;
            instances += 1;
            Ok(())
        })?;
    }
    ensure(instances == 2_125_872, format!("{instances} instances"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!(
        "1452 triples symmetric and proper; {instances} paths validated in {elapsed:?}"
    ))
}

fn ac6_extraction() -> Outcome {
    let a = extract(&example_4to3()).map_err(e)?;
    ensure(
        a.same_families(&base_collection_c3()).map_err(e)?,
        "extract(example_4to3) differs from the base collection",
    )?;
    let mut checked = 0;
    let sources = [
        (construct(4).map_err(e)?, 12u32),
        (base_collection_c3(), 4),
        (construct(6).map_err(e)?, 12),
    ];
    for (collection, max_k) in sources {
        let alg = ImplicitAlgorithm::new(collection).map_err(e)?;
        for k in 2..=max_k {
            let t = tabulate(&alg, k).map_err(e)?;
            let back = extract(&t).map_err(e)?;
            ensure(back.size() == big(k.into()), format!("size at k={k}"))?;
            let verdict = is_colourful(&back).map_err(e)?;
            ensure(verdict.is_colourful(), verdict.to_string())?;
            checked += 1;
        }
    }
    Ok(format!("base collection recovered; {checked} compiled tables extract to colourful collections of size k"))
}

fn ac7_search() -> Outcome {
    let start = Instant::now();
    let r3 = max_colourful(3, DEFAULT_BUDGET).map_err(e)?;
    ensure(r3.exhaustive && r3.best_size == 4, format!("c=3: {} exhaustive={}", r3.best_size, r3.exhaustive))?;
    let witness = r3.witness.as_ref().ok_or("no witness")?;
    ensure(is_colourful(witness).map_err(e)?.is_colourful(), "witness not colourful")?;
    let r2 = max_colourful(2, DEFAULT_BUDGET).map_err(e)?;
    ensure(r2.exhaustive && r2.best_size == 2, format!("c=2: {}", r2.best_size))?;
    ensure(
        exists_algorithm(5, 3, DEFAULT_BUDGET).map_err(e)? == Existence::DoesNotExist,
        "5 ▷ 3 should not exist",
    )?;
    ensure(
        exists_algorithm(4, 3, DEFAULT_BUDGET).map_err(e)? == Existence::Exists,
        "4 ▷ 3 should exist",
    )?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("max(3) = 4, max(2) = 2, no 5 ▷ 3, in {elapsed:?}"))
}

fn ac8_baselines() -> Outcome {
    let six = big(6);
    for seed in 0..100 {
        let mut g = random_proper(Topology::Path, 10_000, &six, seed).map_err(e)?;
        for round in 0..3 {
            g = naive_step(&g).map_err(e)?;
            ensure(g.is_proper(), format!("naive seed {seed} round {round}"))?;
        }
        ensure(g.k == big(3), "naive did not reach 3")?;
        ensure(g.colours.iter().all(|c| c <= &big(3)), "naive colour > 3")?;
    }
    let k = big(1 << 16);
    for seed in 0..100 {
        let g = random_proper(Topology::Path, 10_000, &k, seed)
            .map_err(e)?
            .oriented(true);
        let out = cole_vishkin_step(&g, 16).map_err(e)?;
        ensure(out.is_proper(), format!("Cole–Vishkin seed {seed} improper"))?;
        // 1-based colours <= 32, i.e. 0-based values < 32.
        ensure(
            out.colours.iter().all(|c| c >= &big(1) && c <= &big(32)),
            format!("Cole–Vishkin seed {seed} out of range"),
        )?;
    }
    Ok("naive 6 ▷ 5 ▷ 4 ▷ 3 and Cole–Vishkin 2^16 ▷ 32 on 100 seeds each".into())
}

fn ac9_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let random_other = |rng: &mut ChaCha8Rng, size: &BigUint, avoid: &BigUint| loop {
        let bits = size.bits();
        let mut bytes = vec![0u8; bits.div_ceil(8) as usize];
        rng.fill(&mut bytes[..]);
        let v = BigUint::from_bytes_le(&bytes) % size + 1u32;
        if &v != avoid {
            return v;
        }
    };
    for c in [4u32, 6, 8, 12] {
        let alg = ImplicitAlgorithm::new(construct(c).map_err(e)?).map_err(e)?;
        let size = alg.input_palette();
        for _ in 0..10_000 {
            let y = big(rng.gen_range(1..=u64::from(c)));
            let x = random_other(&mut rng, &size, &y);
            let z = random_other(&mut rng, &size, &y);
            let v = alg.new_colour(&x, &y, &z).map_err(e)?;
            ensure(big(v.into()) == y, format!("c={c}: colour {y} moved to {v}"))?;
        }
    }
    let alg = ImplicitAlgorithm::new(construct(12).map_err(e)?).map_err(e)?;
    let size = alg.input_palette();
    for _ in 0..10_000 {
        let y = random_other(&mut rng, &size, &BigUint::default());
        let x = random_other(&mut rng, &size, &y);
        let z = random_other(&mut rng, &size, &y);
        let forward = alg.new_colour(&x, &y, &z).map_err(e)?;
        let backward = alg.new_colour(&z, &y, &x).map_err(e)?;
        ensure(forward == backward, format!("asymmetric at ({x},{y},{z})"))?;
    }
    let a = construct(4).map_err(e)?;
    let mut pairs = 0;
    for x in 1..=12u64 {
        for y in (1..=12u64).filter(|&y| y != x) {
            let fast = edge_label_pair(&a, &big(x), &big(y)).map_err(e)?;
            let slow = edge_label_pair_generic(&a, &big(x), &big(y)).map_err(e)?;
            ensure(fast == slow, format!("fast path differs at ({x},{y})"))?;
            pairs += 1;
        }
    }
    Ok(format!(
        "fixed colours on 4x10^4 triples, symmetry on 10^4 triples at c=12, fast path = scan on {pairs} edges"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("AC1 small example reproduced", ac1_small_example),
        ("AC2 construction at c=4", ac2_construction_c4),
        ("AC3 size formula 2^462 + 12", ac3_size_formula),
        ("AC4 headline chain 10^100 ▷ 12 ▷ 4 ▷ 3", ac4_headline_chain),
        ("AC5 compile soundness, exhaustive", ac5_compile_soundness),
        ("AC6 extraction equivalence", ac6_extraction),
        ("AC7 search oracle", ac7_search),
        ("AC8 baselines", ac8_baselines),
        ("AC9 property suite", ac9_properties),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
