//! The Morse equation: per-level repeller–attractor equations, the
//! telescoped sum, connection terms, and witnessed connecting orbits.
//!
//! Run with `cargo run --example morse_equation`.

use conley_morse::fixtures::fix_r;
use conley_morse::report::Connection;
use conley_morse::{morse_decomposition, morse_equation, rep_attr_equation, CellSet};

fn main() -> conley_morse::Result<()> {
    let f = fix_r();
    let all = CellSet::full(5);

    // a single repeller-attractor pair: p(A*) + p(A) = p(S) + (1+t) Q
    let sinks = CellSet::from_ids(5, [0, 4]);
    let trap = CellSet::from_ids(5, [0, 1, 3, 4]);
    let eq = rep_attr_equation(&f, &all, &sinks, &trap)?;
    println!("repeller-attractor pair (source, sinks):");
    println!("  p(t, A*) = {}", eq.p_repeller);
    println!("  p(t, A)  = {}", eq.p_attractor);
    println!("  p(t, S)  = {}", eq.p_total);
    println!("  Q(t)     = {}", eq.q);

    // the full equation over the Morse decomposition
    let d = morse_decomposition(&f, &all)?;
    let report = morse_equation(&f, &all, &d)?;
    println!("\nMorse equation:");
    for (i, p) in report.p_m.iter().enumerate() {
        println!("  p(t, M{}) = {}", i + 1, p);
    }
    println!("  p(t, S) = {}", report.p_s);
    println!("  Q(t) = {}  with per-level terms {:?}",
        report.q,
        report.q_i.iter().map(|q| q.to_string()).collect::<Vec<_>>());

    println!("\nconnections forced by nonzero Q_i:");
    for c in &report.connections {
        match c {
            Connection::Witnessed { from, to, path } => {
                println!("  M{from} -> M{to} witnessed by the orbit {path:?}")
            }
            Connection::IndexForced { from, .. } => {
                println!("  M{from} -> (earlier set), index-forced")
            }
        }
    }
    Ok(())
}
