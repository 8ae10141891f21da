//! A coalition of five children with three friends each is always split,
//! while the two-friend construction holds together.

use combcert::coalition::{self, CoalitionInstance, VerifyMode};
use combcert::rng::seeded;

fn main() -> combcert::Result<()> {
    let inst = coalition::random_coalition(9, 3, 5, &mut seeded(8))?;
    let out = coalition::break_coalition(&inst, 8)?;
    println!("lists {:?}", &inst.choices[..5]);
    println!("split by {:?}", out.partition.parts);

    let lists = coalition::coalition_construct(2, 4, 7)?;
    let good = CoalitionInstance::with_coalition(7, 2, lists)?;
    let rep = coalition::verify_coalition_success(&good, VerifyMode::Adversarial)?;
    println!("k=2 construction succeeds: {}", rep.success);

    let claim = coalition::monte_carlo_claim(&inst, 20_000, 1)?;
    println!("good colourings {:.4} (lower bound {:.4})", claim.frequency, claim.lower_bound);
    Ok(())
}
