//! Regenerates the checked-in JSONL catalogs under `catalog/`.
//!
//! The classification catalog (every group of order ≤ 24) and the derived
//! action catalogs are all produced by library code; this writes them to
//! disk so the verification suites can run from files, and so a test can
//! flag drift between the files and the builders.
//!
//! Usage: `cargo run --example build_catalogs [DIR]`

use two_closure::catalog::{
    default_catalog_dir, faithful_actions, groups_up_to_24, save_catalog, soluble_up_to_24,
    transitive_small, two_orbit_actions, ACTIONS_LE8, GROUPS_LE24, INTRANSITIVE_LE10,
    SOLUBLE_LE24, TRANSITIVE_SMALL,
};
use two_closure::Result;

fn main() -> Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(default_catalog_dir);
    std::fs::create_dir_all(&dir)?;

    let catalogs = [
        (GROUPS_LE24, groups_up_to_24()?),
        (SOLUBLE_LE24, soluble_up_to_24()?),
        (TRANSITIVE_SMALL, transitive_small()?),
        (INTRANSITIVE_LE10, two_orbit_actions(10)?),
        (ACTIONS_LE8, faithful_actions(8)?),
    ];
    for (file, entries) in catalogs {
        let path = dir.join(file);
        save_catalog(&path, &entries)?;
        println!("{:>4} entries -> {}", entries.len(), path.display());
    }
    Ok(())
}
