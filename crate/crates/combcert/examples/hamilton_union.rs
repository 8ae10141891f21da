//! A 6-regular graph on 2000 vertices built from three Hamilton cycles.

use combcert::packing::{hamilton_union_high_girth, is_hamilton_cycle};

fn main() -> combcert::Result<()> {
    let n = 2000;
    let out = hamilton_union_high_girth(n, 3, 1)?;
    for layer in 0..out.combined.layer_count() {
        let edges = out.combined.layer_edges(layer);
        println!("layer {layer}: {} edges, hamiltonian {}", edges.len(), is_hamilton_cycle(n, &edges));
    }
    println!("round bounds {:?}, girth {} (guaranteed {})", out.round_bounds, out.girth, out.guaranteed);
    Ok(())
}
