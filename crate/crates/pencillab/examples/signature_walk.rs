//! Walks the signatures of a pencil around the circle and extracts the
//! run-length invariant with its height and frequency.
//!
//! The pencil here is I / diag(1..6) in P^5: the first form is definite,
//! so the walk descends the full staircase from (6,0) to (0,6) and back,
//! giving the extreme invariant (6) with height 6. A second, indefinite
//! example lands in a milder class.

use pencillab::exact::{rat_to_string, SymMat};
use pencillab::krasnov::{compute_walk, height_frequency_of_walk, krasnov_of};
use pencillab::pencil::{generate_test_pencil, QuadricPencil};

fn show(label: &str, pencil: &QuadricPencil) {
    println!("== {label}");
    println!("   degeneracy form: {}", pencil.delta());
    let walk = compute_walk(pencil).expect("smooth pencil");
    let arcs: Vec<String> = walk
        .arcs
        .iter()
        .map(|a| format!("({},{})", a.positives, a.negatives))
        .collect();
    println!("   arcs:  {}", arcs.join(" "));
    if !walk.steps.is_empty() {
        println!("   steps: {}", walk.steps_string());
    }
    for c in &walk.crossings {
        let chart = match c.chart {
            pencillab::krasnov::Chart::SOverT => "s/t",
            pencillab::krasnov::Chart::TOverS => "t/s",
        };
        println!(
            "   crossing in chart {chart}: ({}, {}) on the {} half",
            rat_to_string(&c.interval.0),
            rat_to_string(&c.interval.1),
            if c.lower_half { "lower" } else { "upper" }
        );
    }
    let inv = krasnov_of(&walk).expect("valid walk");
    let hf = height_frequency_of_walk(&walk);
    println!("   invariant {inv}, height {}, frequency {}", hf.h, hf.f);
}

fn main() {
    let staircase = QuadricPencil::new(
        SymMat::identity(6),
        SymMat::diagonal_i64(&[1, 2, 3, 4, 5, 6]),
    )
    .expect("valid pencil");
    show("definite staircase in P^5", &staircase);

    let gen = generate_test_pencil(6, 1, 42).expect("generator");
    show("generated pencil in P^6 with a rational line", &gen.pencil);
}
