//! Prints the isotopy classification for fourfolds in P^6 and the
//! predicate lists the classification collapses to: which classes carry
//! real planes at each level, where the reduced fibrations stay connected,
//! and which Fano schemes are rational or unirational over the reals.

use pencillab::report::classification_text;
use pencillab::verdict::{class_matches, parse_predicates, table_for_n};

fn list(n: usize, label: &str, expr: &str) {
    let table = table_for_n(n).expect("table");
    let preds = parse_predicates(expr).expect("predicates");
    let hits: Vec<String> = table
        .classes
        .iter()
        .filter(|c| class_matches(c, &preds))
        .map(|c| c.invariant.clone())
        .collect();
    println!("{label} [{expr}]: {}", hits.join(" "));
}

fn main() {
    let table = table_for_n(6).expect("table");
    print!("{}", classification_text(&table));
    println!();
    list(6, "planes with real points           ", "f2-real-point");
    list(
        6,
        "real lines + connected reduction  ",
        "f1-real-point,q1-connected",
    );
    list(6, "lines with real points            ", "f1-real-point");
    list(
        6,
        "real points + connected reduction ",
        "x-real-point,q0-connected",
    );
    list(6, "base locus with real points       ", "x-real-point");
    list(6, "line scheme rational              ", "f1-rational");
    list(6, "line scheme unirational           ", "f1-unirational");
    list(6, "base locus rational               ", "x-rational");
    list(6, "base locus unirational            ", "x-unirational");
    println!();
    list(5, "P^5: height 4, one minimal arc    ", "h=4,f=1");
    list(7, "P^7: height 4, one minimal arc    ", "h=4,f=1");
}
