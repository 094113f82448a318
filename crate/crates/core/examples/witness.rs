//! The element w for the groups of order p^5 and exponent p² and the almost
//! extra-special groups of order p^6.

use whitehead::cl1::{witness_w, Cl1Options};
use whitehead::GroupSpec;

fn main() -> whitehead::Result<()> {
    let p: u32 = std::env::args().nth(1).map_or(3, |s| s.parse().expect("prime"));
    for spec in [
        GroupSpec::ExtraSpecial { p, r: 2, exponent_p2: true },
        GroupSpec::AlmostExtraSpecial { p, r: 2 },
    ] {
        let g = spec.build()?;
        let w = witness_w(&g, &Cl1Options::default())?;
        println!("{spec}");
        println!("  g = {:?} (order {}), a = {:?}, b = {:?}", w.g, g.order_of(w.g), w.a, w.b);
        println!("  hyperplane components vanish: {}", w.hyperplanes_vanish);
        println!(
            "  w_Y = {} in C{} (order {}), log g^p = {}",
            w.w_y, w.y_modulus, w.w_y_order, w.expected_w_y
        );
    }
    Ok(())
}
