//! Minimal generating sets of Cl₁ drawn from the unit vectors of Γ.

use whitehead::cl1::{minimal_generators, Cl1Options};
use whitehead::GroupSpec;

fn main() -> whitehead::Result<()> {
    for s in ["EA(3,3)", "ES(3,1,1)", "ES(3,2,1)", "ES(3,2,2)", "AES(3,2)"] {
        let spec: GroupSpec = s.parse()?;
        let g = spec.build()?;
        let m = minimal_generators(&g, &Cl1Options::default())?;
        let mut kinds = std::collections::BTreeMap::new();
        for c in &m.generators {
            *kinds.entry(format!("{:?}", c.kind)).or_insert(0) += 1;
        }
        println!(
            "{spec}: {} generators {:?}, Cl1 = {}, generates {}, minimal {}",
            m.generators.len(),
            kinds,
            m.invariants,
            m.generates,
            m.is_minimal()
        );
    }
    Ok(())
}
