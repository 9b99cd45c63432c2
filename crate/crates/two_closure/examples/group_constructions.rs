//! Assembles larger permutation groups from smaller ones: direct products
//! in their two natural actions, wreath products, coset actions, and the
//! iterated-wreath Sylow subgroups of symmetric groups.
//!
//! Run with `cargo run --example group_constructions`.

use two_closure::constructions::{
    coset_action, disjoint_direct_product, imprimitive_wreath, product_action_direct_product,
    sylow_tower_of_symmetric,
};
use two_closure::subgroups::core;
use two_closure::{PermGroup, Result};

fn describe(name: &str, g: &PermGroup) -> Result<()> {
    println!(
        "{name:24} degree {:2}, order {:4}, {}transitive",
        g.degree(),
        g.order()?,
        if g.is_transitive() { "" } else { "in" },
    );
    Ok(())
}

fn main() -> Result<()> {
    let s3 = PermGroup::symmetric(3);
    let c2 = PermGroup::cyclic(2);
    let c3 = PermGroup::cyclic(3);

    describe("Sym(3) x C2 on 3+2", &disjoint_direct_product(&s3, &c2)?)?;
    describe("Sym(3) x Sym(3) on 3*3", &product_action_direct_product(&s3, &s3)?)?;
    describe("C2 wr C3 on 2*3", &imprimitive_wreath(&c2, &c3)?)?;
    describe("C3 wr C2 on 3*2", &imprimitive_wreath(&c3, &c2)?)?;

    // Sym(4) on the cosets of a point stabilizer recovers the natural
    // 4-point action; the stabilizer has trivial core, so it is faithful.
    let s4 = PermGroup::symmetric(4);
    let stab = s4.point_stabilizer(3)?;
    describe("Sym(4) on Sym(3)-cosets", &coset_action(&s4, &stab)?.action)?;
    assert_eq!(core(&s4, &stab)?.order()?, 1);

    // Sylow towers: the Sylow p-subgroup of Sym(p^k) is the k-fold wreath
    // power of C_p — order p^((p^k - 1)/(p - 1)).
    describe("Sylow-2 of Sym(4)", &sylow_tower_of_symmetric(2, 2)?)?;
    describe("Sylow-2 of Sym(8)", &sylow_tower_of_symmetric(2, 3)?)?;
    describe("Sylow-3 of Sym(9)", &sylow_tower_of_symmetric(3, 2)?)?;
    Ok(())
}
