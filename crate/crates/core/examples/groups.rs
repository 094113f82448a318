//! Builds one group of each family and prints its characteristic subgroups.

use whitehead::GroupSpec;

fn main() -> whitehead::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let specs = if args.is_empty() {
        ["C(3,3)", "EA(5,2)", "M(3)", "N(3)", "ES(3,2,1)", "ES(3,2,2)", "AES(3,1)"].map(String::from).to_vec()
    } else {
        args
    };
    println!("{:<10} {:>6} {:>4} {:>4} {:>4} {:>4} {}", "group", "order", "exp", "|Z|", "|P'|", "|Φ|", "valid");
    for s in specs {
        let spec: GroupSpec = s.parse()?;
        let g = spec.build()?;
        println!(
            "{:<10} {:>6} {:>4} {:>4} {:>4} {:>4} {}",
            spec.to_string(),
            g.order(),
            g.exponent(),
            g.center().order(),
            g.derived_subgroup().order(),
            g.frattini().order(),
            g.validate().passed()
        );
    }
    Ok(())
}
