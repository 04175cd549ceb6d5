//! Numeric certificates for the probabilistic steps.

use nsd_decomp::bounds;

fn main() {
    print!("{}", bounds::format_table(&bounds::default_certificates()));
    println!();
    print!("{}", bounds::format_table(&bounds::even_range(14, 24)));
    print!("{}", bounds::format_table(&bounds::odd_range(19, 25)));
}
