//! Satellite certificates over the trefoil, once and twice iterated.

use braidforge::knotgroup::{one_bridge_presentation, satellite_presentation};
use braidforge::ordercert::{property_d_certificate, satellite_certificate, satellite_genus};

fn main() -> braidforge::Result<()> {
    let mut pres = one_bridge_presentation(2, 3, 0)?;
    let mut cert = property_d_certificate(2, 3, 0)?;
    let mut genus = 1;
    for (w, t, b) in [(3, 5, 0), (2, 27, 0)] {
        cert = satellite_certificate(&cert, &pres, genus, w, t, b)?;
        pres = satellite_presentation(&pres, w, t, b)?;
        genus = satellite_genus(genus, w, t, b)?;
        println!(
            "pattern B({w},{t},{b}): genus {genus}, {} generators, certificate with {} nodes",
            pres.generators().len(),
            cert.len()
        );
    }
    let comp = one_bridge_presentation(2, 3, 0)?;
    let base = property_d_certificate(2, 3, 0)?;
    match satellite_certificate(&base, &comp, 1, 3, 2, 1) {
        Ok(_) => println!("slope 2/3 unexpectedly accepted"),
        Err(e) => println!("pattern B(3,2,1): {e}"),
    }
    Ok(())
}
