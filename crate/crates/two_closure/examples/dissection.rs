//! For an action with two invariant blocks Γ ⊔ Δ, three conditions are
//! equivalent: the closure contains G^Γ × G^Δ; G factorizes as G_γ·G_δ for
//! every point pair; and every G_δ is transitive on each Γ-orbit. This
//! evaluates all three independently on a spread of examples.
//!
//! Run with `cargo run --example dissection`.

use two_closure::closure::dissection_check;
use two_closure::spec_lang::GroupSpec;
use two_closure::Result;

fn main() -> Result<()> {
    let checks = [
        // Sym(3) on 3 points next to its 2-point quotient: every stabilizer
        // pair multiplies back up to the group, so the blocks dissect.
        "perm:5:[(0 1)(3 4),(0 1 2)]",
        // C6 on 2+3: coprime block actions, dissects.
        "perm:5:[(0 1)(2 3 4)]",
        // C4 on 4+2: the stabilizer of a 4-block point is trivial, so the
        // factorization fails — the diagonal-ish action is glued.
        "perm:6:[(0 1 2 3)(4 5)]",
        // Two independent copies: Sym(3) x C2 acting on separate blocks.
        "sym:3 x cyclic:2 @disjoint",
    ];
    for text in checks {
        let g = GroupSpec::parse(text)?.materialize()?;
        let orbits = g.orbits();
        assert_eq!(orbits.len(), 2, "examples here have exactly two blocks");
        let check = dissection_check(&g, &orbits[0], &orbits[1])?;
        assert!(check.agree);
        println!(
            "{text:34} blocks {}+{}: containment {}, factorization {}, transitivity {} -> {}",
            orbits[0].len(),
            orbits[1].len(),
            check.closure_containment,
            check.factorization,
            check.transitivity,
            if check.holds() { "dissects" } else { "glued" },
        );
    }
    Ok(())
}
