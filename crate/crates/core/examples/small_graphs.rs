//! The nine connected graphs on two to four nodes, with their edge lists.

use rumor_contain::graph::named_small_graph;

pub fn run_example() {
    for i in 1..=9 {
        let g = named_small_graph(i).expect("index in range");
        let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        println!(
            "{:<16} nodes {}  edges {}  degrees {:?}",
            g.label().unwrap_or("?"),
            g.n(),
            g.undirected_edge_count(),
            degrees
        );
    }
    print!("{}", named_small_graph(7).unwrap().to_edge_list());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
