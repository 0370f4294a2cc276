//! Runs the v2503 checks and prints the certificate for the longitude.

use braidforge::cli::to_sorted_json;
use braidforge::ordercert::v2503_bundle;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = v2503_bundle()?;
    for c in &b.checks {
        println!("{:5} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    println!("{}", to_sorted_json(&b.certificate)?);
    Ok(())
}
