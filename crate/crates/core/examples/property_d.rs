//! Property-(D) certificates for small 1-bridge braid knots.

use braidforge::braid::{closure_components, one_bridge_braid};
use braidforge::ordercert::property_d_derivation;

fn main() -> braidforge::Result<()> {
    for w in 2..=4 {
        for t in 1..=4 {
            for b in 0..=w - 2 {
                if closure_components(&one_bridge_braid(w, t, b)?) != 1 {
                    continue;
                }
                match property_d_derivation(w, t, b) {
                    Ok(d) => println!(
                        "B({w},{t},{b}): {:?} branch, l = {}, l' = {:?}, mu^{} >= 1, {} nodes",
                        d.branch,
                        d.l,
                        d.l_prime,
                        d.exponent,
                        d.certificate.len()
                    ),
                    Err(e) => println!("B({w},{t},{b}): {e}"),
                }
            }
        }
    }
    Ok(())
}
