//! Exact girth and domination numbers by enumeration, next to the fast paths.

use combcert::cds::gen_cycle_of_cliques;
use combcert::oracle::{exact_gamma, exact_gamma_c, exact_girth, OracleBudget};
use combcert::Graph;

fn main() -> combcert::Result<()> {
    let budget = OracleBudget::from_env()?;
    let graphs = [
        ("petersen", Graph::petersen()),
        ("C_6", Graph::cycle(6)),
        ("cycle of cliques k=3 m=4", gen_cycle_of_cliques(3, 4)?),
    ];
    for (name, g) in graphs {
        let girth = if g.n() <= budget.girth { exact_girth(&g, &budget)?.to_string() } else { "-".into() };
        let (gamma, _) = exact_gamma(&g, &budget)?;
        let (gamma_c, set) = exact_gamma_c(&g, &budget)?;
        println!("{name}: girth {girth} (bfs {}), gamma {gamma}, gamma_c {gamma_c} via {set:?}", g.girth());
    }
    Ok(())
}
