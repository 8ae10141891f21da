//! Smallest sets of root-of-unity vectors meeting every vector orthogonally.

use combcert::prob::{kpn_bruteforce, kpn_counting_bound, kpn_degree_bound};

fn main() -> combcert::Result<()> {
    for (n, p) in [(2, 2), (4, 2), (3, 3)] {
        let (k, cover) = kpn_bruteforce(n, p)?;
        println!(
            "K({n},{p}) = {k}, lower bounds {} and {}",
            kpn_degree_bound(n, p),
            kpn_counting_bound(n, p)?
        );
        for v in cover {
            println!("  {:?}", v.0);
        }
    }
    Ok(())
}
