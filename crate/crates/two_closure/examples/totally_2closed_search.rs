//! Searches small groups for a faithful representation that is not
//! 2-closed, comparing the outcome with the structural classification.
//!
//! Run with `cargo run --example totally_2closed_search`.

use std::time::Instant;

use two_closure::constructions::disjoint_direct_product;
use two_closure::t2c::{default_max_degree, t2c_search, T2COutcome};
use two_closure::PermGroup;

fn q8() -> PermGroup {
    // Right multiplications by i and j on [1, −1, i, −i, j, −j, k, −k].
    let i = two_closure::Perm::from_images(vec![2, 3, 1, 0, 7, 6, 4, 5]).unwrap();
    let j = two_closure::Perm::from_images(vec![4, 5, 6, 7, 1, 0, 3, 2]).unwrap();
    PermGroup::new(8, vec![i, j]).unwrap()
}

fn main() -> two_closure::Result<()> {
    let candidates: Vec<(&str, PermGroup)> = vec![
        ("C6", PermGroup::cyclic(6)),
        ("Sym(3)", PermGroup::symmetric(3)),
        ("D4", PermGroup::dihedral(4)?),
        ("Q8", q8()),
        ("Alt(4)", PermGroup::alternating(4)),
        ("C3 x Q8", disjoint_direct_product(&PermGroup::cyclic(3), &q8())?),
    ];
    for (name, g) in candidates {
        let bound = default_max_degree(&g)?;
        let started = Instant::now();
        let verdict = t2c_search(&g, bound)?;
        let elapsed = started.elapsed();
        print!("{name:10} |G|={:3}  {:,>8}  ", g.order()?, verdict.prediction.prediction);
        match verdict.outcome {
            T2COutcome::NotTotally2Closed { witness, closure_order } => {
                println!(
                    "fails at {witness} (closure order {closure_order})  [{:.2?}]",
                    elapsed
                );
            }
            T2COutcome::NoFailureUpToDegree { bound } => {
                println!("no failure up to degree {bound}  [{:.2?}]", elapsed);
            }
        }
    }
    Ok(())
}
