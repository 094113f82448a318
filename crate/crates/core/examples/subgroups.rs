//! Subgroup lattice statistics: counts by order, normal subgroups and
//! conjugacy classes of cyclic subgroups.

use std::collections::BTreeMap;

use whitehead::subgroups::{all_subgroups, cyclic_subgroup_classes, is_normal};
use whitehead::GroupSpec;

fn main() -> whitehead::Result<()> {
    let s = std::env::args().nth(1).unwrap_or_else(|| "M(3)".into());
    let spec: GroupSpec = s.parse()?;
    let g = spec.build()?;
    let subs = all_subgroups(&g, 243)?;
    let mut by_order: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for h in &subs {
        let e = by_order.entry(h.order()).or_default();
        e.0 += 1;
        if is_normal(&g, h) {
            e.1 += 1;
        }
    }
    println!("{spec}: {} subgroups", subs.len());
    for (order, (all, normal)) in by_order {
        println!("  order {order:>3}: {all:>4} subgroups, {normal:>3} normal");
    }
    let classes = cyclic_subgroup_classes(&g);
    println!("cyclic subgroup classes: {}", classes.len());
    for c in classes {
        println!(
            "  order {:>3}, class size {:>2}, |C_P(H)| = {}",
            c.representative.order(),
            c.size,
            c.centralizer.order()
        );
    }
    Ok(())
}
