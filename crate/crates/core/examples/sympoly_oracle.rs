//! Degree-p polynomial oracle: relation span against the image of r, and
//! span ranks of the products x^{p-1}y.

use whitehead::constructors::extra_special;
use whitehead::formulas::sym_dim;
use whitehead::sympoly::{self, BilinearForm};

fn main() -> whitehead::Result<()> {
    for (p, k) in [(3, 2), (3, 3), (3, 4), (5, 2)] {
        let r = sympoly::compare_with_relations(p, k)?;
        println!(
            "(C{p})^{k}: relation rank {}, rank r {}, C(p+k-1,p) = {}, same space {}",
            r.relation_rank, r.r_rank, r.expected_rank, r.same_space
        );
    }
    for (p, k) in [(3, 2), (3, 3), (3, 4), (5, 2)] {
        println!("all pairs p = {p}, k = {k}: {} of {}", sympoly::span_rank_all_pairs(p, k)?, sym_dim(p, k as u64));
    }
    for (p, k, rank) in [(3, 4, 0), (3, 4, 2), (3, 4, 4), (3, 2, 2), (5, 2, 2)] {
        let b = BilinearForm::standard(p, k, rank)?;
        println!(
            "isotropic pairs p = {p}, k = {k}, rank b = {rank}: {} of {}",
            sympoly::span_rank_isotropic_pairs(&b)?,
            sym_dim(p, k as u64)
        );
    }
    let es = extra_special(3, 2, false)?;
    let b = sympoly::commutator_form(&es)?;
    println!("commutator form of ES(3,2,1): dim {}, rank {}, nondegenerate {}", b.dim(), b.rank(), b.is_nondegenerate());
    Ok(())
}
