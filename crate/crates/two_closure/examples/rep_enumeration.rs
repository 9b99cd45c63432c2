//! Enumerates every faithful permutation representation of a small group up
//! to a degree bound, as multisets of coset actions, and realizes one of
//! them as an explicit permutation group.
//!
//! Run with `cargo run --example rep_enumeration`.

use two_closure::closure::is_2closed;
use two_closure::spec_lang::GroupSpec;
use two_closure::t2c::{faithful_rep_specs, rep_action};
use two_closure::{PermGroup, Result};

fn main() -> Result<()> {
    let groups: Vec<(&str, PermGroup)> = vec![
        ("Sym(3)", PermGroup::symmetric(3)),
        ("C6", PermGroup::cyclic(6)),
        ("D4", PermGroup::dihedral(4)?),
        ("Q8", GroupSpec::parse("quaternion:8")?.materialize()?),
    ];
    for (name, g) in &groups {
        let bound = 8;
        let specs = faithful_rep_specs(g, bound)?;
        println!("{name}: {} faithful actions on at most {bound} points", specs.len());
        for spec in &specs {
            let action = rep_action(g, spec)?;
            println!(
                "  {spec}  ->  order {:2} on {} points, {}2-closed",
                action.order()?,
                action.degree(),
                if is_2closed(&action)? { "" } else { "not " },
            );
        }
    }

    // The blocks of a spec name the point stabilizers: Sym(3) on 5 points
    // is the 2-coset action (stabilizer Alt(3)) next to the natural one.
    let s3 = PermGroup::symmetric(3);
    let five = faithful_rep_specs(&s3, 5)?;
    for (index, multiplicity, stabilizer_order) in five.last().unwrap().profile()? {
        println!("degree-5 block: index {index} x{multiplicity}, stabilizer order {stabilizer_order}");
    }
    Ok(())
}
