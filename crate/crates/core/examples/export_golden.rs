//! Regenerates the golden data under `data/golden` (or the directory given as the first argument).

use std::fs;
use std::path::{Path, PathBuf};

use braidforge::braid::{closure_components, one_bridge_braid};
use braidforge::cli::{run, to_sorted_json};
use braidforge::knotgroup::{one_bridge_presentation, satellite_presentation};
use braidforge::markov::ttk_to_one_bridge;
use braidforge::ordercert::{property_d_certificate, satellite_certificate, satellite_genus};

type Res<T> = Result<T, Box<dyn std::error::Error>>;

fn put<T: serde::Serialize>(path: &Path, v: &T) -> Res<()> {
    fs::create_dir_all(path.parent().expect("file in a directory"))?;
    fs::write(path, to_sorted_json(v)? + "\n")?;
    Ok(())
}

fn main() -> Res<()> {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data/golden"));

    for w in 2..=5 {
        for t in 1..=5 {
            for b in 0..=w - 2 {
                if closure_components(&one_bridge_braid(w, t, b)?) != 1 {
                    continue;
                }
                // unknots have no certificate
                let cert = match property_d_certificate(w, t, b) {
                    Err(braidforge::Error::Domain(_)) => continue,
                    r => r?,
                };
                let dir = root.join("property_d");
                put(&dir.join(format!("B{w}_{t}_{b}.cert.json")), &cert)?;
                put(&dir.join(format!("B{w}_{t}_{b}.pres.json")), &one_bridge_presentation(w, t, b)?)?;
            }
        }
    }

    let comp = one_bridge_presentation(2, 3, 0)?;
    let base = property_d_certificate(2, 3, 0)?;
    let dir = root.join("satellite");
    for (w, t, b) in [(3, 4, 0), (3, 5, 0), (4, 7, 0)] {
        let cert = satellite_certificate(&base, &comp, 1, w, t, b)?;
        put(&dir.join(format!("trefoil_B{w}_{t}_{b}.cert.json")), &cert)?;
        put(&dir.join(format!("trefoil_B{w}_{t}_{b}.pres.json")), &satellite_presentation(&comp, w, t, b)?)?;
    }
    let first = satellite_certificate(&base, &comp, 1, 3, 5, 0)?;
    let sat = satellite_presentation(&comp, 3, 5, 0)?;
    let second = satellite_certificate(&first, &sat, satellite_genus(1, 3, 5, 0)?, 2, 27, 0)?;
    put(&dir.join("trefoil_B3_5_0_B2_27_0.cert.json"), &second)?;
    put(&dir.join("trefoil_B3_5_0_B2_27_0.pres.json"), &satellite_presentation(&sat, 2, 27, 0)?)?;

    for (p, q, l, n) in [(2, 3, 2, 2), (2, 5, 2, 2), (3, 4, 2, 2), (3, 5, 2, 2), (5, 4, 4, 4)] {
        let r = ttk_to_one_bridge(p, q, l, n)?;
        put(&root.join(format!("traces/ttk_{p}_{q}_{l}_{n}.json")), &r.trace)?;
    }

    let v = root.join("v2503");
    let out = run(["braidforge", "v2503", "--out-dir", v.to_str().expect("utf-8 path")]);
    if out.code() != 0 {
        return Err(format!("v2503 failed: {}", out.stderr).into());
    }
    println!("golden data written to {}", root.display());
    Ok(())
}
