//! Orbits of G on ordered pairs: the coloring of Ω × Ω whose classes are
//! the orbital digraphs. The 2-closure is exactly the automorphism group
//! of this colored complete digraph, so the color table built here is the
//! pruning structure for every closure engine.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEGREE_CAP};

const UNCOLORED: u16 = u16::MAX;

#[derive(Debug, Clone)]
pub struct OrbitalPartition {
    degree: usize,
    /// Dense row-major table: `colors[a·n + b]` is the color of (a, b).
    colors: Vec<u16>,
    rank: usize,
    /// First pair of each color in row-major order.
    representatives: Vec<(usize, usize)>,
}

impl OrbitalPartition {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn color(&self, a: usize, b: usize) -> u16 {
        self.colors[a * self.degree + b]
    }

    pub fn representatives(&self) -> &[(usize, usize)] {
        &self.representatives
    }

    /// All pairs of one color, in row-major order.
    pub fn orbital_digraph(&self, color: u16) -> Result<Vec<(usize, usize)>> {
        if color as usize >= self.rank {
            return Err(Error::UnknownColor { color: color as usize, rank: self.rank });
        }
        let mut arcs = Vec::new();
        for a in 0..self.degree {
            for b in 0..self.degree {
                if self.color(a, b) == color {
                    arcs.push((a, b));
                }
            }
        }
        Ok(arcs)
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.rank];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }
}

/// Colors Ω × Ω by G-orbit. Ids are assigned by first occurrence in
/// row-major order, so the numbering (and everything downstream, like DOT
/// exports) is reproducible.
pub fn orbital_partition(g: &PermGroup) -> Result<OrbitalPartition> {
    let n = g.degree();
    if n > DEGREE_CAP {
        return Err(Error::DegreeCapExceeded { degree: n, cap: DEGREE_CAP });
    }
    let mut colors = vec![UNCOLORED; n * n];
    let mut representatives = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    for start in 0..n * n {
        if colors[start] != UNCOLORED {
            continue;
        }
        let id = representatives.len() as u16;
        representatives.push((start / n, start % n));
        colors[start] = id;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        while head < queue.len() {
            let pair = queue[head];
            head += 1;
            let (a, b) = (pair / n, pair % n);
            for gen in g.generators() {
                let image = gen.apply(a) * n + gen.apply(b);
                if colors[image] == UNCOLORED {
                    colors[image] = id;
                    queue.push(image);
                }
            }
        }
    }
    Ok(OrbitalPartition { degree: n, colors, rank: representatives.len(), representatives })
}

/// Number of orbitals. For transitive groups this equals the number of
/// point-stabilizer orbits, and that identity is asserted here.
pub fn rank(g: &PermGroup) -> Result<usize> {
    let part = orbital_partition(g)?;
    if g.is_transitive() {
        let suborbits = g.point_stabilizer(0)?.orbits().len();
        assert_eq!(
            part.rank, suborbits,
            "rank must equal the point-stabilizer orbit count"
        );
    }
    Ok(part.rank)
}

/// Graphviz text for the full colored digraph: one node line per point
/// carrying its diagonal color, one arc line per off-diagonal pair in
/// row-major order. Byte-stable for a fixed group.
pub fn export_dot(part: &OrbitalPartition) -> String {
    let mut out = String::from("digraph {\n");
    for v in 0..part.degree() {
        writeln!(out, "  {v} [color={}];", part.color(v, v)).unwrap();
    }
    for a in 0..part.degree() {
        for b in 0..part.degree() {
            if a != b {
                writeln!(out, "  {a} -> {b} [color={}];", part.color(a, b)).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroups::tests::q8_regular;
    use std::collections::BTreeSet;

    /// Independent pair-orbit count: sweep every group element over every
    /// pair and merge classes. Only for naive-enumerable groups.
    fn naive_rank(g: &PermGroup) -> usize {
        let n = g.degree();
        let elems = g.naive_elements(10_000).unwrap();
        let mut class = vec![usize::MAX; n * n];
        let mut next = 0;
        for start in 0..n * n {
            if class[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            class[start] = next;
            while let Some(pair) = stack.pop() {
                let (a, b) = (pair / n, pair % n);
                for e in &elems {
                    let image = e.apply(a) * n + e.apply(b);
                    if class[image] == usize::MAX {
                        class[image] = next;
                        stack.push(image);
                    }
                }
            }
            next += 1;
        }
        next
    }

    #[test]
    fn trivial_regular_and_two_transitive_ranks() {
        assert_eq!(rank(&PermGroup::trivial(4)).unwrap(), 16);
        assert_eq!(rank(&PermGroup::cyclic(5)).unwrap(), 5);
        assert_eq!(rank(&q8_regular()).unwrap(), 8);
        assert_eq!(rank(&PermGroup::symmetric(3)).unwrap(), 2);
        assert_eq!(rank(&PermGroup::symmetric(5)).unwrap(), 2);
        assert_eq!(rank(&PermGroup::alternating(4)).unwrap(), 2);
    }

    #[test]
    fn rank_of_mixed_orbit_group() {
        // Two orbits {0,1,2} and {3,4} with coupled sign: six pair
        // classes, confirmed by the element-sweep oracle.
        let g = PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap();
        assert_eq!(naive_rank(&g), 6);
        assert_eq!(orbital_partition(&g).unwrap().rank(), 6);
    }

    #[test]
    fn rank_matches_naive_oracle() {
        for g in [
            PermGroup::dihedral(5).unwrap(),
            PermGroup::dihedral(6).unwrap(),
            PermGroup::from_cycles(5, &["(0 1)", "(2 3 4)"]).unwrap(),
            crate::constructions::imprimitive_wreath(
                &PermGroup::cyclic(2),
                &PermGroup::cyclic(3),
            )
            .unwrap(),
        ] {
            assert_eq!(orbital_partition(&g).unwrap().rank(), naive_rank(&g));
        }
    }

    #[test]
    fn c4_cycle_orbital() {
        let part = orbital_partition(&PermGroup::cyclic(4)).unwrap();
        let c = part.color(0, 1);
        assert_eq!(
            part.orbital_digraph(c).unwrap(),
            vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            "the orbital of (0,1) under C4 is the directed 4-cycle"
        );
        // Diagonal of a transitive group: loops at every point.
        let diag = part.color(0, 0);
        assert_eq!(
            part.orbital_digraph(diag).unwrap(),
            (0..4).map(|i| (i, i)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn color_ids_first_occurrence_row_major() {
        let part = orbital_partition(&PermGroup::cyclic(4)).unwrap();
        // Row 0 reads (0,0),(0,1),(0,2),(0,3): fresh colors 0,1,2,3.
        assert_eq!(part.rank(), 4);
        for b in 0..4 {
            assert_eq!(part.color(0, b), b as u16);
        }
        assert_eq!(part.representatives(), &[(0, 0), (0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn dot_export_of_c3_golden() {
        let part = orbital_partition(&PermGroup::cyclic(3)).unwrap();
        let dot = export_dot(&part);
        assert_eq!(
            dot,
            "digraph {\n\
             \x20 0 [color=0];\n\
             \x20 1 [color=0];\n\
             \x20 2 [color=0];\n\
             \x20 0 -> 1 [color=1];\n\
             \x20 0 -> 2 [color=2];\n\
             \x20 1 -> 0 [color=2];\n\
             \x20 1 -> 2 [color=1];\n\
             \x20 2 -> 0 [color=1];\n\
             \x20 2 -> 1 [color=2];\n\
             }\n"
        );
        assert_eq!(part.rank(), 3, "3 nodes, 6 arcs in 2 classes, 1 loop class");
    }

    #[test]
    fn generator_invariance_exhaustive() {
        for g in [
            PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap(),
            PermGroup::dihedral(6).unwrap(),
            crate::constructions::sylow_tower_of_symmetric(2, 3).unwrap(),
            crate::constructions::disjoint_direct_product(
                &PermGroup::symmetric(3),
                &PermGroup::cyclic(4),
            )
            .unwrap(),
        ] {
            let n = g.degree();
            assert!(n <= 32);
            let part = orbital_partition(&g).unwrap();
            for gen in g.generators() {
                for a in 0..n {
                    for b in 0..n {
                        assert_eq!(part.color(gen.apply(a), gen.apply(b)), part.color(a, b));
                    }
                }
            }
            assert_eq!(part.class_sizes().iter().sum::<usize>(), n * n);
        }
    }

    #[test]
    fn transpose_of_a_class_is_a_class() {
        for g in [
            PermGroup::cyclic(6),
            PermGroup::dihedral(4).unwrap(),
            PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap(),
            q8_regular(),
        ] {
            let part = orbital_partition(&g).unwrap();
            for c in 0..part.rank() as u16 {
                let arcs = part.orbital_digraph(c).unwrap();
                let transposed: BTreeSet<(usize, usize)> =
                    arcs.iter().map(|&(a, b)| (b, a)).collect();
                let (a0, b0) = arcs[0];
                let paired = part.color(b0, a0);
                let paired_arcs: BTreeSet<(usize, usize)> =
                    part.orbital_digraph(paired).unwrap().into_iter().collect();
                assert_eq!(transposed, paired_arcs);
            }
        }
    }

    // Each color class is exactly the pair orbit of its representative
    // under the full element set, not just generator-reachable.
    #[test]
    fn classes_match_element_sweep_orbits() {
        for g in [
            PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap(),
            PermGroup::dihedral(5).unwrap(),
        ] {
            let part = orbital_partition(&g).unwrap();
            let elems = g.naive_elements(10_000).unwrap();
            for (c, &(a, b)) in part.representatives().iter().enumerate() {
                let orbit: BTreeSet<(usize, usize)> =
                    elems.iter().map(|e| (e.apply(a), e.apply(b))).collect();
                let class: BTreeSet<(usize, usize)> = part
                    .orbital_digraph(c as u16)
                    .unwrap()
                    .into_iter()
                    .collect();
                assert_eq!(orbit, class);
            }
        }
    }

    #[test]
    fn cap_and_unknown_color_errors() {
        let big = PermGroup::trivial(65);
        assert!(matches!(
            orbital_partition(&big),
            Err(Error::DegreeCapExceeded { degree: 65, cap: 64 })
        ));
        let part = orbital_partition(&PermGroup::cyclic(3)).unwrap();
        assert!(matches!(
            part.orbital_digraph(3),
            Err(Error::UnknownColor { color: 3, rank: 3 })
        ));
    }
}
