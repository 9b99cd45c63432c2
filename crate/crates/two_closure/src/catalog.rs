//! The checked-in catalogs: every group of order at most 24, and derived
//! action lists (small transitive actions for the product/wreath identities,
//! two-orbit intransitive actions, and a broad pool of faithful actions of
//! degree at most 8).
//!
//! Entries serialize one per line as JSON `{name, spec, order}`. The spec is
//! canonical group-spec text; the order is re-checked whenever a catalog is
//! loaded. The classification catalog ships with explicit generator lists so
//! that nothing depends on an external group database; run
//! `cargo run --example build_catalogs` to regenerate the files.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::spec_lang::GroupSpec;
use crate::structure::{derived_subgroup, is_abelian};
use crate::subgroups::{center, enumerate_subgroups, GroupTable};
use crate::t2c::{faithful_rep_specs, rep_action};

pub const GROUPS_LE24: &str = "groups_le24.jsonl";
pub const SOLUBLE_LE24: &str = "soluble_le24.jsonl";
pub const TRANSITIVE_SMALL: &str = "transitive_small.jsonl";
pub const INTRANSITIVE_LE10: &str = "intransitive_le10.jsonl";
pub const ACTIONS_LE8: &str = "actions_le8.jsonl";

/// Number of isomorphism classes of groups of each order 1..=24; the
/// classification catalog is certified against these classical counts.
pub const CLASS_COUNTS: [usize; 24] =
    [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

impl CatalogEntry {
    pub fn group(&self) -> Result<PermGroup> {
        self.spec.materialize()
    }
}

/// The action a group already carries, as an explicit-generator spec.
pub fn explicit_spec(g: &PermGroup) -> GroupSpec {
    GroupSpec::Explicit { degree: g.degree(), gens: g.generators().to_vec() }
}

/// Where the checked-in catalogs live: `$TWO_CLOSURE_CATALOG_DIR` if set,
/// otherwise the `catalog/` directory next to this crate's manifest.
pub fn default_catalog_dir() -> PathBuf {
    std::env::var_os("TWO_CLOSURE_CATALOG_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog"))
}

pub fn save_catalog(path: &Path, entries: &[CatalogEntry]) -> Result<()> {
    let mut text = String::new();
    for entry in entries {
        text.push_str(&serde_json::to_string(entry)?);
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

/// Loads a catalog, re-deriving every recorded group order from its
/// generators and refusing entries that disagree.
pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::CatalogIo(format!("{}: {e}", path.display())))?;
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let entry: CatalogEntry = serde_json::from_str(line)
            .map_err(|e| Error::CatalogIo(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        if let Some(expected) = entry.order {
            let got = entry.group()?.order()?;
            if got != expected as u128 {
                return Err(Error::CatalogIo(format!(
                    "{}:{}: {} has order {got}, catalog records {expected}",
                    path.display(),
                    lineno + 1,
                    entry.name
                )));
            }
        }
        entries.push(entry);
    }
    if entries.is_empty() {
        return Err(Error::CatalogIo(format!("{}: empty catalog", path.display())));
    }
    Ok(entries)
}

/// One representative of every isomorphism class of groups of order ≤ 24,
/// each in a convenient faithful action, sorted by order. Correctness is
/// certified by tests: the per-order counts match [`CLASS_COUNTS`] and the
/// invariant fingerprints are pairwise distinct within each order.
pub fn groups_up_to_24() -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for (name, spec) in named_constructions()? {
        let g = spec.materialize()?;
        entries.push(CatalogEntry {
            name: name.to_string(),
            spec: explicit_spec(&g),
            order: Some(g.order()? as u64),
        });
    }
    entries.sort_by_key(|e| e.order);
    Ok(entries)
}

fn named_constructions() -> Result<Vec<(&'static str, GroupSpec)>> {
    // Families and direct products cover most classes; the rest get
    // hand-built generators:
    //  - SD16, M4(2): ⟨x ↦ x+1, x ↦ εx⟩ on Z/8 with ε = 3 resp. 5, the two
    //    nonabelian extensions of C8 by the order-2 units ±3, ±5.
    //  - C4oD4: central product on the cosets of a non-central reflection.
    //  - C2^2:C4 on the cosets of a non-normal C2, C4:C4 on the union of the
    //    coset spaces of its two cyclic factors.
    //  - (C3xC3):C2: generalized dihedral, inversion on C3 × C3.
    //  - F20, F21: affine maps x ↦ ax+b over Z/5 and Z/7.
    //  - SL(2,3) on the 8 nonzero vectors of F3², via a transvection and an
    //    order-4 rotation.
    //  - C3:C8 with C8 inverting C3 through its C2 quotient.
    //  - C3:D4 with the rotation of D4 inverting C3 and the reflection
    //    centralizing it.
    let texts: [(&'static str, &'static str); 70] = [
        ("C1", "cyclic:1"),
        ("C2", "cyclic:2"),
        ("C3", "cyclic:3"),
        ("C4", "cyclic:4"),
        ("C2^2", "elab:2:2"),
        ("C5", "cyclic:5"),
        ("C6", "cyclic:6"),
        ("S3", "sym:3"),
        ("C7", "cyclic:7"),
        ("C8", "cyclic:8"),
        ("C4xC2", "cyclic:4 x cyclic:2 @disjoint"),
        ("C2^3", "elab:2:3"),
        ("D4", "dihedral:4"),
        ("Q8", "quaternion:8"),
        ("C9", "cyclic:9"),
        ("C3^2", "elab:3:2"),
        ("C10", "cyclic:10"),
        ("D5", "dihedral:5"),
        ("C11", "cyclic:11"),
        ("C12", "cyclic:12"),
        ("C6xC2", "cyclic:6 x cyclic:2 @disjoint"),
        ("D6", "dihedral:6"),
        ("A4", "alt:4"),
        ("C13", "cyclic:13"),
        ("C14", "cyclic:14"),
        ("D7", "dihedral:7"),
        ("C15", "cyclic:15"),
        ("C16", "cyclic:16"),
        ("C4^2", "cyclic:4 x cyclic:4 @disjoint"),
        ("C8xC2", "cyclic:8 x cyclic:2 @disjoint"),
        ("C4xC2^2", "cyclic:4 x elab:2:2 @disjoint"),
        ("C2^4", "elab:2:4"),
        ("D8", "dihedral:8"),
        ("Q16", "quaternion:16"),
        ("SD16", "perm:8:[(0 1 2 3 4 5 6 7),(1 3)(2 6)(5 7)]"),
        ("M4(2)", "perm:8:[(0 1 2 3 4 5 6 7),(1 5)(3 7)]"),
        ("D4xC2", "dihedral:4 x cyclic:2 @disjoint"),
        ("Q8xC2", "quaternion:8 x cyclic:2 @disjoint"),
        ("C4oD4", "perm:8:[(0 1 2 3)(4 5 6 7),(0 4 2 6)(1 5 3 7),(1 3)(5 7)]"),
        ("C2^2:C4", "perm:8:[(0 1 2 3)(4 5 6 7),(1 5)(3 7)]"),
        ("C4:C4", "perm:8:[(0 1 2 3),(1 3)(4 5 6 7)]"),
        ("C17", "cyclic:17"),
        ("C18", "cyclic:18"),
        ("C6xC3", "cyclic:6 x cyclic:3 @disjoint"),
        ("D9", "dihedral:9"),
        ("C3xS3", "cyclic:3 x sym:3 @disjoint"),
        ("(C3xC3):C2", "perm:6:[(0 1 2),(3 4 5),(1 2)(4 5)]"),
        ("C19", "cyclic:19"),
        ("C20", "cyclic:20"),
        ("C10xC2", "cyclic:10 x cyclic:2 @disjoint"),
        ("D10", "dihedral:10"),
        ("F20", "perm:5:[(0 1 2 3 4),(1 2 4 3)]"),
        ("C21", "cyclic:21"),
        ("F21", "perm:7:[(0 1 2 3 4 5 6),(1 2 4)(3 6 5)]"),
        ("C22", "cyclic:22"),
        ("D11", "dihedral:11"),
        ("C23", "cyclic:23"),
        ("C24", "cyclic:24"),
        ("C12xC2", "cyclic:12 x cyclic:2 @disjoint"),
        ("C6xC2^2", "cyclic:6 x elab:2:2 @disjoint"),
        ("S4", "sym:4"),
        ("SL(2,3)", "perm:8:[(2 3 4)(5 7 6),(0 2 1 5)(3 4 7 6)]"),
        ("C2xA4", "cyclic:2 x alt:4 @disjoint"),
        ("C3:C8", "perm:11:[(0 1 2),(1 2)(3 4 5 6 7 8 9 10)]"),
        ("D12", "dihedral:12"),
        ("C3xD4", "cyclic:3 x dihedral:4 @disjoint"),
        ("C3xQ8", "cyclic:3 x quaternion:8 @disjoint"),
        ("C4xS3", "cyclic:4 x sym:3 @disjoint"),
        ("C3:D4", "perm:7:[(0 1 2),(1 2)(3 4 5 6),(4 6)]"),
        ("C2^2xS3", "elab:2:2 x sym:3 @disjoint"),
    ];
    let mut named = Vec::new();
    for (name, text) in texts {
        named.push((name, GroupSpec::parse(text)?));
    }
    // Dicyclic groups of order 4m, regular; m a power of 2 would be the
    // quaternion family.
    named.push(("Dic3", explicit_spec(&PermGroup::dicyclic(3)?)));
    named.push(("Dic5", explicit_spec(&PermGroup::dicyclic(5)?)));
    named.push(("Dic6", explicit_spec(&PermGroup::dicyclic(6)?)));
    named.push((
        "C2xDic3",
        GroupSpec::Disjoint(
            Box::new(GroupSpec::Cyclic(2)),
            Box::new(explicit_spec(&PermGroup::dicyclic(3)?)),
        ),
    ));
    Ok(named)
}

/// The classification catalog filtered to soluble groups — which keeps all
/// of it, as every group of order below 60 is soluble; the filter documents
/// what the file promises rather than changing its content.
pub fn soluble_up_to_24() -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for entry in groups_up_to_24()? {
        if crate::structure::is_soluble(&entry.group()?)? {
            entries.push(entry);
        }
    }
    Ok(entries)
}

/// Transitive actions of degree 2..=6, the pool the product- and
/// wreath-identity suites draw ordered pairs from.
pub fn transitive_small() -> Result<Vec<CatalogEntry>> {
    let texts = [
        ("C2", "cyclic:2"),
        ("C3", "cyclic:3"),
        ("C4", "cyclic:4"),
        ("C5", "cyclic:5"),
        ("C6", "cyclic:6"),
        ("C2^2", "elab:2:2"),
        ("S3", "sym:3"),
        ("D4", "dihedral:4"),
        ("D5", "dihedral:5"),
        ("D6", "dihedral:6"),
        ("S4", "sym:4"),
        ("A4", "alt:4"),
        ("F20", "perm:5:[(0 1 2 3 4),(1 2 4 3)]"),
    ];
    let mut entries = Vec::new();
    for (name, text) in texts {
        let spec = GroupSpec::parse(text)?;
        let g = spec.materialize()?;
        entries.push(CatalogEntry {
            name: name.to_string(),
            spec,
            order: Some(g.order()? as u64),
        });
    }
    Ok(entries)
}

/// Faithful two-orbit actions of catalog groups up to `max_degree` points.
pub fn two_orbit_actions(max_degree: usize) -> Result<Vec<CatalogEntry>> {
    rep_action_entries(max_degree, Some(2), 4)
}

/// Faithful actions of catalog groups up to `max_degree` points, any orbit
/// count, a dozen per group.
pub fn faithful_actions(max_degree: usize) -> Result<Vec<CatalogEntry>> {
    rep_action_entries(max_degree, None, 12)
}

fn rep_action_entries(
    max_degree: usize,
    orbit_count: Option<usize>,
    per_group: usize,
) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    let mut used_names: HashMap<String, usize> = HashMap::new();
    for parent in groups_up_to_24()? {
        let g = parent.group()?;
        let order = g.order()? as u64;
        let mut taken = 0;
        for spec in faithful_rep_specs(&g, max_degree)? {
            if taken == per_group {
                break;
            }
            let orbits: usize = spec.parts.iter().map(|p| p.multiplicity).sum();
            if orbit_count.is_some_and(|k| orbits != k) {
                continue;
            }
            let action = rep_action(&g, &spec)?;
            let profile = spec
                .parts
                .iter()
                .flat_map(|p| std::iter::repeat_n(p.index, p.multiplicity))
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("+");
            let base = format!("{}/{}", parent.name, profile);
            let n = used_names.entry(base.clone()).or_insert(0);
            let name = if *n == 0 { base.clone() } else { format!("{base}#{n}") };
            *n += 1;
            entries.push(CatalogEntry {
                name,
                spec: explicit_spec(&action),
                order: Some(order),
            });
            taken += 1;
        }
    }
    Ok(entries)
}

/// Invariants that separate the isomorphism classes in the catalog: if two
/// groups fingerprint differently they are certainly non-isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    pub order: u64,
    pub abelian: bool,
    /// (element order, how many elements) pairs, sorted.
    pub element_orders: Vec<(u64, usize)>,
    pub center_orders: Vec<(u64, usize)>,
    pub derived_order: u64,
    pub class_sizes: Vec<(usize, usize)>,
    pub subgroup_orders: Vec<(u64, usize)>,
    pub normal_subgroup_orders: Vec<(u64, usize)>,
}

pub fn fingerprint(g: &PermGroup) -> Result<GroupFingerprint> {
    let table = GroupTable::build(g)?;
    let n = table.len();
    let element_orders = multiset((0..n).map(|i| table.order_of(i) as u64));

    let z = center(g)?;
    let zt = GroupTable::build(&z)?;
    let center_orders = multiset((0..zt.len()).map(|i| zt.order_of(i) as u64));

    let mut seen = vec![false; n];
    let mut class_sizes = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut orbit = vec![i];
        seen[i] = true;
        let mut k = 0;
        while k < orbit.len() {
            for b in 0..n {
                let c = table.conj(orbit[k], b);
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c);
                }
            }
            k += 1;
        }
        class_sizes.push(orbit.len());
    }

    let lattice = enumerate_subgroups(g)?;
    let subgroup_orders = multiset(lattice.subgroups.iter().map(|s| s.count() as u64));
    let normal_subgroup_orders = multiset(
        lattice
            .classes
            .iter()
            .filter(|class| class.len() == 1)
            .map(|class| lattice.subgroups[class[0]].count() as u64),
    );

    Ok(GroupFingerprint {
        order: n as u64,
        abelian: is_abelian(g),
        element_orders,
        center_orders,
        derived_order: derived_subgroup(g)?.order()? as u64,
        class_sizes: multiset(class_sizes.into_iter()),
        subgroup_orders,
        normal_subgroup_orders,
    })
}

fn multiset<T: Ord>(items: impl Iterator<Item = T>) -> Vec<(T, usize)> {
    let mut sorted: Vec<T> = items.collect();
    sorted.sort();
    let mut out: Vec<(T, usize)> = Vec::new();
    for item in sorted {
        match out.last_mut() {
            Some((v, count)) if *v == item => *count += 1,
            _ => out.push((item, 1)),
        }
    }
    out
}
