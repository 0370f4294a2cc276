//! Converts a few twisted torus knots to 1-bridge braids and replays the traces.

use braidforge::invariants::same_closure_evidence;
use braidforge::markov::{ttk_to_one_bridge, verify_trace};

fn main() -> braidforge::Result<()> {
    for (p, q, l, n) in [(2, 3, 2, 2), (2, 5, 2, 2), (3, 4, 2, 2), (3, 5, 2, 2), (5, 4, 4, 4)] {
        let r = ttk_to_one_bridge(p, q, l, n)?;
        verify_trace(&r.trace)?;
        let ev = same_closure_evidence(&r.trace.start, &r.trace.end)?;
        println!(
            "T({p},{q}) twisted by pi_{}^{n} -> B({},{},{}) via condition {:?}, {} moves, {:?}",
            l - 1,
            r.omega,
            r.t,
            r.b,
            r.condition,
            r.trace.steps.len(),
            ev.verdict
        );
    }
    Ok(())
}
