//! Derandomized connected dominating set on a random graph.

use combcert::cds;
use combcert::rng::seeded;
use combcert::Graph;

fn main() -> combcert::Result<()> {
    let mut rng = seeded(10);
    let g = loop {
        let g = Graph::random_gnp(200, 0.06, &mut rng);
        if g.is_connected() && g.min_degree() >= 3 {
            break g;
        }
    };
    let out = cds::derandomized_cds(&g)?;
    println!("n = {}, min degree k = {}", g.n(), out.k);
    println!("dominating set {} in {} components", out.dominating.len(), out.components);
    println!("connected dominating set {} <= {:.1}", out.set.len(), out.bound);
    println!("potential {:.3} -> {:.3}", out.psi[0], out.psi[out.psi.len() - 1]);
    let greedy = cds::greedy_dominating_set(&g);
    println!("greedy dominating set {}", greedy.len());
    Ok(())
}
