//! Cl₁(ℤP) for a group given on the command line, e.g. `ES(3,2,1)`.

use std::time::Instant;

use whitehead::cl1::{cl1_compute, Cl1Options};
use whitehead::GroupSpec;

fn main() -> whitehead::Result<()> {
    let specs: Vec<String> = std::env::args().skip(1).collect();
    let specs = if specs.is_empty() { vec!["EA(3,3)".into(), "M(3)".into(), "AES(3,1)".into()] } else { specs };
    for s in specs {
        let spec: GroupSpec = s.parse()?;
        let start = Instant::now();
        let g = spec.build()?;
        let comp = cl1_compute(&g, &Cl1Options::default())?;
        println!(
            "{spec}: |Γ| components {}, {} relations, Cl1 = {} ({:.1?})",
            comp.gamma.len(),
            comp.relations.len(),
            comp.invariants,
            start.elapsed()
        );
        if let Some(expected) = spec.family().expected_cl1() {
            println!("  closed form has {} cyclic factors", expected.len());
        }
    }
    Ok(())
}
