//! A multi-controlled Toffoli decomposed through work qubits maps the set
//! "controls and target free, work wires zero" to itself: every borrowed
//! wire must come back clean on all 2^(m+1) inputs at once. Verifying the
//! triple checks the whole decomposition in one language comparison.
//!
//! Run with `cargo run --example multicontrolled_toffoli`.

use taqv::driver::generate::generate_mctoffoli;
use taqv::{verify, ApplyMode, CheckKind};

fn main() {
    for m in [3, 4, 5] {
        let job = generate_mctoffoli(m);
        println!(
            "m={m}: {} qubits ({} controls + target + {} work), {} gates",
            job.circuit.n(),
            m,
            m - 1,
            job.circuit.len()
        );
        let report =
            verify(&job.pre, &job.circuit, &job.post, CheckKind::Equivalence, ApplyMode::Hybrid)
                .unwrap();
        // pre == post: the circuit must permute the free-wire set onto
        // itself. A decomposition that leaks into a work wire would push
        // the output language outside the set and fail here.
        println!(
            "  verdict: {}  (peak {} states, wall {:?})",
            if report.holds { "equal" } else { "violation" },
            report.stats.peak_states(),
            report.stats.wall
        );
    }
}
