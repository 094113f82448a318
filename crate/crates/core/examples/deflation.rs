//! Deflation of Cl₁ along the Frattini subgroup, the center and the derived
//! subgroup, with the kernel of each.

use whitehead::cl1::{cl1_compute, deflation_of, Cl1Options};
use whitehead::GroupSpec;

fn main() -> whitehead::Result<()> {
    let s = std::env::args().nth(1).unwrap_or_else(|| "ES(3,2,1)".into());
    let spec: GroupSpec = s.parse()?;
    let g = spec.build()?;
    let p = g.prime() as u64;
    let opts = Cl1Options::default();
    let source = cl1_compute(&g, &opts)?;
    println!("Cl1({spec}) = {}", source.invariants);
    for (name, n) in [("Φ(P)", g.frattini()), ("Z(P)", g.center()), ("P'", g.derived_subgroup())] {
        let d = deflation_of(&g, source.clone(), n, &opts)?;
        println!(
            "  N = {name:<5} |N| = {:<3} Cl1(P/N) = {:<10} K = {:<6} surjective {} consistent {}",
            n.order(),
            d.target.invariants.to_string(),
            d.kernel.to_string(),
            d.surjective,
            d.consistent(p)
        );
    }
    if let Some(k) = spec.family().expected_kernel_order() {
        println!("closed-form |K| for N = Φ(P): {k}");
    }
    Ok(())
}
