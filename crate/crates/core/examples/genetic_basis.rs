//! Prints a genetic basis: one line per entry with |S|, |N_P(S)|, the order
//! of N_P(S)/S and the entry kind.

use whitehead::genetic::{self, Field};
use whitehead::GroupSpec;

fn main() -> whitehead::Result<()> {
    let s = std::env::args().nth(1).unwrap_or_else(|| "AES(3,1)".into());
    let spec: GroupSpec = s.parse()?;
    let g = spec.build()?;
    let basis = genetic::genetic_basis(&g)?;
    println!("{spec}: {} entries, {:?} path", basis.len(), basis.path);
    for (i, e) in basis.entries.iter().enumerate() {
        println!(
            "  {i:>3}  |S| = {:>3}  |N_P(S)| = {:>3}  |N/S| = {:>2}  {:?}",
            e.subgroup.order(),
            e.normalizer.order(),
            e.modulus(),
            e.kind
        );
    }
    println!("dim QP            = {}", genetic::algebra_dimension(&g, &basis));
    println!("Q-irreducibles    = {}", genetic::count_irreducibles(&g, &basis, Field::Rational));
    println!("R-irreducibles    = {}", genetic::count_irreducibles(&g, &basis, Field::Real));
    println!("free rank of Wh   = {} (closed form {})", genetic::wh_free_rank(&g, &basis), spec.family().expected_free_rank());
    Ok(())
}
