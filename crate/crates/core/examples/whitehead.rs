//! Free rank and torsion of Wh(P) next to the closed forms.

use whitehead::cl1::{whitehead_summary, Cl1Options};
use whitehead::GroupSpec;

fn main() -> whitehead::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let specs = if args.is_empty() {
        ["EA(3,3)", "EA(5,2)", "ES(5,1,1)", "AES(3,1)", "ES(3,2,1)", "C(5,2)"].map(String::from).to_vec()
    } else {
        args
    };
    for s in specs {
        let spec: GroupSpec = s.parse()?;
        let g = spec.build()?;
        let w = whitehead_summary(&g, &Cl1Options::default())?;
        println!(
            "{:<10} free rank {:>2} (closed form {:>2})  torsion {:<10} SK1 = Cl1: {}",
            spec.to_string(),
            w.free_rank,
            spec.family().expected_free_rank(),
            w.torsion.to_string(),
            w.sk1_equals_cl1
        );
    }
    Ok(())
}
