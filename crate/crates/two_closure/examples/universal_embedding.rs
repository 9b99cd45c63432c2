//! Embeds a group G into N ≀ (G/N) through a faithful action Δ of a normal
//! subgroup N, giving a faithful action of G on Δ × (G/N) whose restriction
//! to N splits into [G:N] copies of Δ.
//!
//! Run with `cargo run --example universal_embedding`.

use two_closure::constructions::universal_embedding_action;
use two_closure::{Perm, PermGroup, Result};

fn main() -> Result<()> {
    // D4 on the square, with N its rotation subgroup C4 and Δ the natural
    // 4-point action of C4 (the identity map on the chosen generator).
    let d4 = PermGroup::dihedral(4)?;
    let rot = Perm::parse("(0 1 2 3)", 4)?;
    let n = PermGroup::new(4, vec![rot.clone()])?;
    let emb = universal_embedding_action(&d4, &n, &[rot], 4)?;
    println!(
        "D4 via C4: acts on {} x {} = {} points, image order {}",
        emb.delta_degree,
        emb.index(),
        emb.action.degree(),
        emb.action.order()?,
    );
    assert_eq!(emb.action.order()?, d4.order()?);
    emb.verify_n_restriction()?;
    let flip = Perm::parse("(1 3)", 4)?;
    println!("  the reflection (1 3) embeds as {}", emb.embed(&flip)?);

    // Sym(4) via its normal Klein four-group, with Δ the regular 4-point
    // action; the quotient has order 6, so the embedding lands on
    // 4 x 6 = 24 points.
    let s4 = PermGroup::symmetric(4);
    let v4 = PermGroup::new(4, vec![Perm::parse("(0 1)(2 3)", 4)?, Perm::parse("(0 2)(1 3)", 4)?])?;
    let emb = universal_embedding_action(
        &s4,
        &v4,
        &[Perm::parse("(0 1)(2 3)", 4)?, Perm::parse("(0 2)(1 3)", 4)?],
        4,
    )?;
    println!(
        "Sym(4) via V4: acts on {} x {} = {} points, image order {}",
        emb.delta_degree,
        emb.index(),
        emb.action.degree(),
        emb.action.order()?,
    );
    assert_eq!(emb.action.order()?, 24);
    emb.verify_n_restriction()?;
    Ok(())
}
