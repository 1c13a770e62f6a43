//! Prints the eleven syndrome columns `x^i mod g(x)` of the cyclic ternary
//! Golay code and checks them against the table compiled into the library.
//!
//!     cargo run -p latile-core --example golay_columns

use latile::ball::generate_ball;
use latile::construct::{cyclic_syndromes, golay11_tiling, GOLAY11_COLUMNS, GOLAY_GENERATOR};

fn main() {
    let columns = cyclic_syndromes(&GOLAY_GENERATOR, 11);
    for (i, c) in columns.iter().enumerate() {
        let stored = &GOLAY11_COLUMNS[i];
        let mark = if c.as_slice() == stored.as_slice() {
            ""
        } else {
            "  (differs from table)"
        };
        println!("x^{i:<2} -> {c:?}{mark}");
    }
    let ball = generate_ball(11, 2, 1, 1).expect("valid ball");
    let report = golay11_tiling()
        .verify_tiling(&ball)
        .expect("matching dimension");
    println!("bijective onto Z_3^5: {}", report.bijective);
}
