//! Small-world, scale-free and the bundled 49-node network, plus a JSON
//! round trip of a generated graph.

use rumor_contain::graph::{barabasi_albert, realistic_network, watts_strogatz, DirectedGraph};

fn summary(name: &str, g: &DirectedGraph) {
    let max_deg = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    println!(
        "{name:<12} n={:<3} edges={:<4} max degree={:<3} connected={}",
        g.n(),
        g.undirected_edge_count(),
        max_deg,
        g.is_connected()
    );
}

pub fn run_example() {
    let ws = watts_strogatz(50, 4, 0.1, 1).expect("valid parameters");
    let ba = barabasi_albert(50, 2, 1).expect("valid parameters");
    let re = realistic_network();
    summary("small-world", &ws);
    summary("scale-free", &ba);
    summary("bundled", &re);

    let json = serde_json::to_string(&ba).unwrap();
    let back: DirectedGraph = serde_json::from_str(&json).unwrap();
    assert_eq!(back, ba);
    println!("scale-free JSON: {} bytes, round trip ok", json.len());
    assert_eq!(watts_strogatz(50, 4, 0.1, 1).unwrap(), ws, "same seed, same graph");
}

#[allow(dead_code)]
fn main() {
    run_example();
}
