//! Alexander polynomials of 1-bridge braid closures from the reduced Burau representation.

use braidforge::braid::{closure_components, one_bridge_braid, positive_closure_genus};
use braidforge::invariants::alexander_from_braid;

fn main() -> braidforge::Result<()> {
    for (w, t, b) in [(2, 3, 0), (3, 2, 0), (3, 4, 0), (5, 3, 2), (4, 7, 0)] {
        let bw = one_bridge_braid(w, t, b)?;
        if closure_components(&bw) != 1 {
            println!("B({w},{t},{b}) closes to a link");
            continue;
        }
        let d = alexander_from_braid(&bw)?;
        let g = positive_closure_genus(&bw)?;
        println!("B({w},{t},{b}): genus {}, span {}, Delta = {d}", g.genus, d.span());
    }
    Ok(())
}
