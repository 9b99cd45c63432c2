//! Complete subgroup enumeration for small groups, with conjugacy classes,
//! cores, and centralizers.
//!
//! Everything here works on a dense multiplication table over the element
//! list in chain order, with subgroups held as bitsets. Enumeration closes
//! the set of cyclic subgroups under pairwise join, which reaches every
//! subgroup because each one is a join of the cyclic subgroups it contains.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::{PermGroup, ELEMENT_ENUM_CAP};
use crate::perm::Perm;

/// Cap for subgroup enumeration.
pub const SUBGROUP_ENUM_CAP: u128 = 512;

/// Dense multiplication and inversion tables over a small group's elements
/// (chain order; index 0 is the identity).
pub struct GroupTable {
    degree: usize,
    elems: Vec<Perm>,
    index: HashMap<Perm, u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl GroupTable {
    pub fn build(g: &PermGroup) -> Result<Self> {
        Self::build_capped(g, SUBGROUP_ENUM_CAP)
    }

    pub fn build_capped(g: &PermGroup, cap: u128) -> Result<Self> {
        if g.order()? > cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        let elems = g.elements_capped(cap)?;
        let n = elems.len();
        debug_assert!(elems[0].is_identity());
        let index: HashMap<Perm, u16> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u16))
            .collect();
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&(&elems[a] * &elems[b])];
            }
        }
        let mut inv = vec![0u16; n];
        for a in 0..n {
            inv[a] = index[&elems[a].inverse()];
        }
        Ok(GroupTable { degree: g.degree(), elems, index, mul, inv })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a group always contains the identity
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elem(&self, i: usize) -> &Perm {
        &self.elems[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u16> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elems.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `b⁻¹ · a · b`.
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn order_of(&self, a: usize) -> usize {
        let mut n = 1;
        let mut acc = a;
        while acc != 0 {
            acc = self.mul(acc, a);
            n += 1;
        }
        n
    }

    /// The subgroup generated by `seed`, as a bitset.
    pub fn generated(&self, seed: &[usize]) -> ElemSet {
        let mut set = ElemSet::new(self.len());
        set.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &s in seed {
                let prod = self.mul(e, s);
                if set.insert(prod) {
                    queue.push(prod);
                }
            }
        }
        set
    }

    /// Realizes a bitset subgroup as a `PermGroup`.
    pub fn to_group(&self, set: &ElemSet) -> PermGroup {
        let gens: Vec<Perm> = set.iter().map(|i| self.elems[i].clone()).collect();
        PermGroup::new(self.degree, gens).expect("elements share the degree")
    }
}

/// A subset of a `GroupTable`'s elements as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElemSet {
    nbits: usize,
    blocks: Vec<u64>,
}

impl ElemSet {
    pub fn new(nbits: usize) -> Self {
        ElemSet { nbits, blocks: vec![0; nbits.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (blk, bit) = (i / 64, 1u64 << (i % 64));
        let fresh = self.blocks[blk] & bit == 0;
        self.blocks[blk] |= bit;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.blocks[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nbits).filter(move |&i| self.contains(i))
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn is_subset_of(&self, other: &ElemSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }
}

/// The complete subgroup list of a small group, grouped into conjugacy
/// classes with canonical (minimal) representatives.
pub struct SubgroupLattice {
    pub table: GroupTable,
    /// All subgroups, sorted by (order, bitset).
    pub subgroups: Vec<ElemSet>,
    /// Conjugacy classes as sorted index lists into `subgroups`, ordered by
    /// their representative (the class minimum).
    pub classes: Vec<Vec<usize>>,
    /// Map from subgroup index to class index.
    pub class_of: Vec<usize>,
}

impl SubgroupLattice {
    pub fn class_representative(&self, class: usize) -> &ElemSet {
        &self.subgroups[self.classes[class][0]]
    }
}

/// Enumerates every subgroup of `g` (order capped at
/// [`SUBGROUP_ENUM_CAP`]), grouped into conjugacy classes.
pub fn enumerate_subgroups(g: &PermGroup) -> Result<SubgroupLattice> {
    let table = GroupTable::build(g)?;
    let n = table.len();

    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut subs: Vec<ElemSet> = Vec::new();
    for e in 0..n {
        let cyc = table.generated(&[e]);
        if seen.insert(cyc.clone()) {
            subs.push(cyc);
        }
    }
    // Pairwise join closure; newly found subgroups join the worklist.
    let mut i = 0;
    while i < subs.len() {
        for j in 0..i {
            let seed: Vec<usize> = subs[i].iter().chain(subs[j].iter()).collect();
            let join = table.generated(&seed);
            if !seen.contains(&join) {
                seen.insert(join.clone());
                subs.push(join);
            }
        }
        i += 1;
    }

    subs.sort_by_key(|s| (s.count(), s.clone()));
    let pos: HashMap<ElemSet, usize> =
        subs.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

    // Conjugation orbits, closing under the generators of G.
    let gen_indices: Vec<usize> = g
        .generators()
        .iter()
        .map(|p| table.index_of(p).expect("generator is an element") as usize)
        .collect();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..subs.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cls = classes.len();
        let mut members = vec![start];
        class_of[start] = cls;
        let mut head = 0;
        while head < members.len() {
            let cur = members[head];
            head += 1;
            for &x in &gen_indices {
                let mut img = ElemSet::new(n);
                for e in subs[cur].iter() {
                    img.insert(table.conj(e, x));
                }
                let idx = pos[&img];
                if class_of[idx] == usize::MAX {
                    class_of[idx] = cls;
                    members.push(idx);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }

    Ok(SubgroupLattice { table, subgroups: subs, classes, class_of })
}

/// The core of `H` in `G`: the largest subgroup of `H` normal in `G`,
/// computed as the stable intersection of generator conjugates.
pub fn core(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    for gen in h.generators() {
        if !g.contains(gen)? {
            return Err(Error::NotASubgroup(format!("{gen} is not in the big group")));
        }
    }
    let mut elems: HashSet<Perm> = h.elements()?.into_iter().collect();
    loop {
        let mut changed = false;
        for gen in g.generators() {
            let conj: HashSet<Perm> = elems
                .iter()
                .map(|e| e.conjugate_by(gen).expect("same degree"))
                .collect();
            let next: HashSet<Perm> = elems.intersection(&conj).cloned().collect();
            if next.len() != elems.len() {
                elems = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let core = PermGroup::new(g.degree(), elems.into_iter().collect())?;
    // The defining property, checked on generators.
    for c in core.generators() {
        for gen in g.generators() {
            assert!(
                core.contains(&c.conjugate_by(gen)?)?,
                "core must be normal in the big group"
            );
        }
    }
    Ok(core)
}

/// Elements of `G` commuting with every generator of `H`.
pub fn centralizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let elems = g.elements_capped(ELEMENT_ENUM_CAP)?;
    let commuting: Vec<Perm> = elems
        .into_iter()
        .filter(|e| h.generators().iter().all(|s| (e * s) == (s * e)))
        .collect();
    PermGroup::new(g.degree(), commuting)
}

pub fn center(g: &PermGroup) -> Result<PermGroup> {
    centralizer(g, g)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Q8's regular representation from the literal quaternion
    /// multiplication table over [1, −1, i, −i, j, −j, k, −k]; an oracle
    /// independent of the dicyclic constructions elsewhere in the crate.
    pub(crate) fn q8_regular() -> PermGroup {
        let right_i = Perm::from_images(vec![2, 3, 1, 0, 7, 6, 4, 5]).unwrap();
        let right_j = Perm::from_images(vec![4, 5, 6, 7, 1, 0, 3, 2]).unwrap();
        PermGroup::new(8, vec![right_i, right_j]).unwrap()
    }

    #[test]
    fn q8_oracle_is_the_quaternion_group() {
        let q8 = q8_regular();
        assert_eq!(q8.order().unwrap(), 8);
        let involutions: Vec<Perm> = q8
            .elements()
            .unwrap()
            .into_iter()
            .filter(|e| !e.is_identity() && e.order() == 2)
            .collect();
        assert_eq!(involutions.len(), 1, "Q8 has a unique involution");
    }

    #[test]
    fn sym3_has_six_subgroups_in_four_classes() {
        let lat = enumerate_subgroups(&PermGroup::symmetric(3)).unwrap();
        assert_eq!(lat.subgroups.len(), 6);
        assert_eq!(lat.classes.len(), 4);
        let mut orders: Vec<usize> = lat.subgroups.iter().map(|s| s.count()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn c4_has_three_subgroups_in_three_classes() {
        let c4 = PermGroup::from_cycles(4, &["(0 1 2 3)"]).unwrap();
        let lat = enumerate_subgroups(&c4).unwrap();
        assert_eq!(lat.subgroups.len(), 3);
        assert_eq!(lat.classes.len(), 3);
        let mut orders: Vec<usize> = lat.subgroups.iter().map(|s| s.count()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4]);
    }

    // Oracle per the design note: brute-force closure over all subsets
    // generated by element pairs must reproduce the enumerated lattice.
    #[test]
    fn q8_lattice_matches_pair_generation_oracle() {
        let q8 = q8_regular();
        let lat = enumerate_subgroups(&q8).unwrap();
        assert_eq!(lat.subgroups.len(), 6);

        let table = GroupTable::build(&q8).unwrap();
        let mut oracle: HashSet<ElemSet> = HashSet::new();
        for a in 0..table.len() {
            for b in 0..table.len() {
                oracle.insert(table.generated(&[a, b]));
            }
        }
        let listed: HashSet<ElemSet> = lat.subgroups.iter().cloned().collect();
        assert_eq!(oracle, listed);

        let mut orders: Vec<usize> = lat.subgroups.iter().map(|s| s.count()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 8], "1, ⟨−1⟩, three C4, Q8");
    }

    #[test]
    fn lattice_respects_lagrange_and_conjugacy() {
        for g in [
            PermGroup::symmetric(4),
            PermGroup::alternating(4),
            PermGroup::dihedral(6).unwrap(),
        ] {
            let order = g.order().unwrap();
            let lat = enumerate_subgroups(&g).unwrap();
            for sub in &lat.subgroups {
                assert_eq!(order % sub.count() as u128, 0);
            }
            // Class members are genuinely conjugate: same order, and some
            // element of G maps the representative onto each member.
            for cls in &lat.classes {
                let rep = &lat.subgroups[cls[0]];
                for &m in cls {
                    assert_eq!(lat.subgroups[m].count(), rep.count());
                    let found = (0..lat.table.len()).any(|x| {
                        let mut img = ElemSet::new(lat.table.len());
                        for e in rep.iter() {
                            img.insert(lat.table.conj(e, x));
                        }
                        img == lat.subgroups[m]
                    });
                    assert!(found);
                }
            }
        }
    }

    #[test]
    fn enumeration_respects_the_cap() {
        let s7 = PermGroup::symmetric(7);
        assert!(matches!(
            enumerate_subgroups(&s7),
            Err(Error::OrderCapExceeded { cap: SUBGROUP_ENUM_CAP })
        ));
    }

    #[test]
    fn core_examples() {
        let s3 = PermGroup::symmetric(3);
        let transposition = PermGroup::from_cycles(3, &["(0 1)"]).unwrap();
        assert_eq!(core(&s3, &transposition).unwrap().order().unwrap(), 1);

        let a3 = PermGroup::alternating(3);
        let c = core(&s3, &a3).unwrap();
        assert!(c.equals(&a3).unwrap());

        let d4 = PermGroup::dihedral(4).unwrap();
        let refl = PermGroup::from_cycles(4, &["(0 2)"]).unwrap();
        assert!(d4.contains(&Perm::parse("(0 2)", 4).unwrap()).unwrap());
        assert_eq!(core(&d4, &refl).unwrap().order().unwrap(), 1);
    }

    #[test]
    fn core_rejects_non_subgroups() {
        let a4 = PermGroup::alternating(4);
        let odd = PermGroup::from_cycles(4, &["(0 1)"]).unwrap();
        assert!(matches!(core(&a4, &odd), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn centralizer_examples() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(center(&s3).unwrap().order().unwrap(), 1);

        assert_eq!(center(&q8_regular()).unwrap().order().unwrap(), 2);

        let d4 = PermGroup::dihedral(4).unwrap();
        let rotations = PermGroup::from_cycles(4, &["(0 1 2 3)"]).unwrap();
        let cent = centralizer(&d4, &rotations).unwrap();
        assert!(cent.equals(&rotations).unwrap());
    }

    #[test]
    fn centralizer_elements_commute() {
        let g = PermGroup::dihedral(6).unwrap();
        let h = PermGroup::from_cycles(6, &["(0 3)(1 4)(2 5)"]).unwrap();
        let cent = centralizer(&g, &h).unwrap();
        for c in cent.generators() {
            for s in h.generators() {
                assert_eq!(&(c * s), &(s * c));
            }
        }
        // Maximality: no element outside commutes with every generator.
        for e in g.elements().unwrap() {
            let commutes = h.generators().iter().all(|s| (&e * s) == (s * &e));
            assert_eq!(commutes, cent.contains(&e).unwrap());
        }
    }
}
