//! Nearly fair perfect matching and triangle factor for random colourings.

use combcert::fair::{self, EdgePartition, Pattern, SearchMode, TargetVector};
use combcert::rng::seeded;

fn main() -> combcert::Result<()> {
    let n = 20;
    let nb = fair::matching_neighborhood(n)?;
    let p = EdgePartition::random(nb.host(), 3, &mut seeded(3));
    let out = fair::local_search(&p, nb.start(), &nb, SearchMode::Exhaustive)?;
    let target = TargetVector::new(nb.pattern_edges(), p.host().edge_count(), &p.class_sizes());
    println!("matching of K_{{{n},{n}}}: x = {:?}", out.rep.0);
    println!("  target {:?}", target.0.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("  |x-y|_inf = {:.3}, |x-y|_2 = {:.3} < {:.3}", out.dist_inf(&target), out.dist_l2(), out.bound);

    let nb = fair::tfactor_neighborhood(12, Pattern::k3())?;
    let p = EdgePartition::random(nb.host(), 2, &mut seeded(4));
    let out = fair::local_search(&p, nb.start(), &nb, SearchMode::Exhaustive)?;
    println!("triangle factor of K_12: x = {:?}, |x-y|_2 = {:.3}, certified {}", out.rep.0, out.dist_l2(), out.certified);
    Ok(())
}
