//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every function returns a JSON string; failures come back as
//! `{"error": "..."}` so the page never has to catch exceptions.

use num_bigint::BigUint;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use colred::simulator::{default_chain, format_palette, random_distinct, run_chain, step};
use colred::{construct, example_4to3, ColouredGraph, OneRound, Topology};

fn error(msg: impl ToString) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn colours(g: &ColouredGraph) -> Vec<String> {
    g.colours.iter().map(|c| c.to_string()).collect()
}

/// Applies the `4 ▷ 3` rule to a comma-separated path coloured from `{1,2,3,4}`.
#[wasm_bindgen]
pub fn reduce_example(input: &str) -> String {
    let parsed: Result<Vec<u64>, _> = input
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect();
    let Ok(values) = parsed else {
        return error("colours must be integers separated by commas");
    };
    let g = match ColouredGraph::path(&values, 4) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    if let Some(v) = g.validate().first() {
        return error(format!("input is not a proper 4-colouring: {v}"));
    }
    match step(&g, &example_4to3()) {
        Ok(out) => json!({ "input": colours(&g), "output": colours(&out) }).to_string(),
        Err(e) => error(e),
    }
}

/// Runs `10^100 ▷ 12 ▷ 4 ▷ 3` on `n` random distinct colours and returns
/// every intermediate colouring.
#[wasm_bindgen]
pub fn headline_chain(n: u32, seed: u64, cycle: bool) -> String {
    if !(3..=2000).contains(&n) {
        return error("n must be between 3 and 2000");
    }
    let topology = if cycle { Topology::Cycle } else { Topology::Path };
    let k = BigUint::from(10u32).pow(100);
    let g = match random_distinct(topology, n as usize, &k, seed) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    let chain = default_chain();
    let stages: Vec<&dyn OneRound> = chain.iter().map(|a| a as &dyn OneRound).collect();
    match run_chain(&g, &stages, true) {
        Ok((out, trace)) => {
            let rounds: Vec<Value> = trace
                .rounds
                .iter()
                .map(|r| {
                    let snapshot: Vec<String> = r
                        .snapshot
                        .iter()
                        .flatten()
                        .map(|c| c.to_string())
                        .collect();
                    json!({
                        "stage": r.stage,
                        "k_in": format_palette(&r.k_in),
                        "k_out": format_palette(&r.k_out),
                        "colours": snapshot,
                    })
                })
                .collect();
            json!({
                "topology": topology.to_string(),
                "input": colours(&g),
                "rounds": rounds,
                "chain": trace.chain_notation(),
                "proper": out.is_proper(),
            })
            .to_string()
        }
        Err(e) => error(e),
    }
}

/// The family that `construct(c)` assigns to input colour `index` (decimal).
#[wasm_bindgen]
pub fn family_at(c: u32, index: &str) -> String {
    let a = match construct(c) {
        Ok(a) => a,
        Err(e) => return error(e),
    };
    let Some(i) = BigUint::parse_bytes(index.trim().as_bytes(), 10) else {
        return error("index must be a decimal integer");
    };
    match a.family_from_index(&i) {
        Ok(f) => json!({
            "c": c,
            "size": format_palette(&a.size()),
            "index": i.to_string(),
            "subsets": f.subsets().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })
        .to_string(),
        Err(e) => error(e),
    }
}
