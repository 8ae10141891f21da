//! Rounds a fractional center to a binary one whose Hamming ball keeps half
//! of the points, and checks the Poisson-binomial median.

use combcert::io::parse_ball;
use combcert::prob::{hamming_center, median_check, PoissonBinomial};

fn main() -> combcert::Result<()> {
    let inst = parse_ball("5 2\n1/2 1/3 0 1 3/4\n00011\n10011\n01010\n01011\n11011\n")?;
    let out = hamming_center(&inst)?;
    println!("y = {:?} covers {} of {}", out.y, out.count, inst.points.len());
    println!("expectations {:?}", out.expectations);

    let pb = PoissonBinomial::from_ratios(&[1, 3, 5, 7, 2], 8)?;
    println!("mean {}, median at floor or ceil: {}", pb.mean(), median_check(&pb));
    Ok(())
}
