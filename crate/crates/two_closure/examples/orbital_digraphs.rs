//! Colors the ordered pairs of points by their orbit — the orbital
//! partition — and exports one coloring as a DOT digraph.
//!
//! Run with `cargo run --example orbital_digraphs`.

use two_closure::orbitals::{export_dot, orbital_partition, rank};
use two_closure::{PermGroup, Result};

fn main() -> Result<()> {
    for (name, g) in [
        ("Sym(4)", PermGroup::symmetric(4)),
        ("C5", PermGroup::cyclic(5)),
        ("D5", PermGroup::dihedral(5)?),
        ("D4", PermGroup::dihedral(4)?),
    ] {
        let part = orbital_partition(&g)?;
        assert_eq!(part.rank(), rank(&g)?);
        println!("{name}: rank {}", part.rank());
        for (color, &(a, b)) in part.representatives().iter().enumerate() {
            let arcs = part.orbital_digraph(color as u16)?;
            println!(
                "  color {color}: representative ({a},{b}), {} arcs, paired with color {}",
                arcs.len(),
                part.color(b, a),
            );
        }
    }

    // D4's rank is 4: the diagonal, the two edge orbits of the square, and
    // the diagonals. The DOT export draws every non-diagonal arc.
    println!("\n{}", export_dot(&orbital_partition(&PermGroup::dihedral(4)?)?));
    Ok(())
}
