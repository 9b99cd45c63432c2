//! Computes 2-closures by both engines and tests membership in the closure
//! without constructing it, via Wielandt's pair-interpolation criterion.
//!
//! Run with `cargo run --example closure_of_an_action`.

use two_closure::closure::{two_closure, two_closure_bruteforce, wielandt_membership};
use two_closure::spec_lang::GroupSpec;
use two_closure::{Perm, PermGroup, Result};

fn main() -> Result<()> {
    let actions: Vec<(&str, PermGroup)> = vec![
        ("C4 on 4", PermGroup::cyclic(4)),
        ("Alt(4) on 4", PermGroup::alternating(4)),
        ("D4 on 4", PermGroup::dihedral(4)?),
        // Sym(3) acting on its 3 natural points and on the 2 cosets of Alt(3).
        (
            "Sym(3) on 3+2",
            GroupSpec::parse("perm:5:[(0 1)(3 4),(0 1 2)]")?.materialize()?,
        ),
    ];
    for (name, g) in &actions {
        let fast = two_closure(g)?;
        let slow = two_closure_bruteforce(g)?;
        assert!(fast.closure.equals(&slow.closure)?);
        println!(
            "{name:14} order {:3} -> closure order {:3}  ({}2-closed; {} nodes backtracked)",
            fast.input.order()?,
            fast.closure.order()?,
            if fast.equals_input { "" } else { "not " },
            fast.stats.nodes,
        );
    }

    // Alt(4) has rank 2, the same as Sym(4), so any permutation of the four
    // points preserves its orbital coloring — a transposition included.
    let a4 = PermGroup::alternating(4);
    let swap = Perm::parse("(0 1)", 4)?;
    println!(
        "\n(0 1) in Alt(4)?  {}.  In its 2-closure?  {}.",
        a4.contains(&swap)?,
        wielandt_membership(&swap, &a4)?,
    );
    // C4 is 2-closed, so the same transposition must fail the criterion.
    assert!(!wielandt_membership(&swap, &PermGroup::cyclic(4))?);
    Ok(())
}
