//! Packs two 1000-cycles edge-disjointly and reports the combined girth.

use combcert::packing::pack_high_girth;
use combcert::Graph;

fn main() -> combcert::Result<()> {
    let c = Graph::cycle(1000);
    let out = pack_high_girth(&c, &c, 7)?;
    println!("k bound {}, guaranteed girth {}, achieved {}", out.k, out.guaranteed, out.girth);
    println!("{} swaps", out.trace.len().saturating_sub(1));
    for p in &out.trace {
        println!("  deficit {} with {} shortest cycles", p.deficit, p.shortest_cycles);
    }
    Ok(())
}
