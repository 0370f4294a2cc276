//! Builds the 1-bridge presentation of B(5,3,2), its abelianization and its Fox-calculus Alexander polynomial.

use braidforge::braid::one_bridge_braid;
use braidforge::invariants::alexander_from_braid;
use braidforge::knotgroup::{abelianization, fox_alexander, one_bridge_presentation};

fn main() -> braidforge::Result<()> {
    let (w, t, b) = (5, 3, 2);
    let pres = one_bridge_presentation(w, t, b)?;
    println!("generators: {:?}", pres.generators().iter().map(|g| g.name()).collect::<Vec<_>>());
    for r in pres.relators() {
        println!("relator: {r}");
    }
    for (name, word) in pres.peripherals() {
        println!("{name} = {word}");
    }
    let lambda = pres.peripheral("lambda")?.clone();
    let ab = abelianization(&pres, &[lambda])?;
    println!("H_1 factors {:?}, longitude image {:?}", ab.invariant_factors, ab.probe_images[0]);
    let fox = fox_alexander(&pres)?;
    let burau = alexander_from_braid(&one_bridge_braid(w, t, b)?)?;
    println!("Fox: {fox}\nBurau: {burau}\nequal: {}", fox == burau);
    Ok(())
}
