//! Permutation groups carried by generator sets with lazily built
//! stabilizer chains (base, strong generators, fundamental orbits).
//!
//! The chain is built by the classical deterministic Schreier–Sims
//! procedure: place the input generators, then verify level by level from
//! the bottom that every Schreier generator sifts to the identity,
//! reinserting any non-identity residue as a new strong generator. Orders,
//! membership tests, element enumeration, and point stabilizers all come
//! from the finished chain.

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Cap for operations that enumerate all group elements.
pub const ELEMENT_ENUM_CAP: u128 = 5040;

/// Cap on the degree of constructed actions (coset actions, towers, …).
pub const DEGREE_CAP: usize = 64;

#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<StabilizerChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup { degree: self.degree, gens: self.gens.clone(), chain }
    }
}

impl PermGroup {
    /// Builds a group from generators, which must all have the stated
    /// degree. Identity generators and duplicates are dropped.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::BadParameter("degree must be positive".into()));
        }
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
            if !g.is_identity() && seen.insert(g.clone()) {
                kept.push(g);
            }
        }
        Ok(PermGroup { degree, gens: kept, chain: OnceLock::new() })
    }

    /// Convenience constructor from cycle notation.
    pub fn from_cycles(degree: usize, cycles: &[&str]) -> Result<Self> {
        let gens = cycles
            .iter()
            .map(|text| Perm::parse(text, degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, gens: Vec::new(), chain: OnceLock::new() }
    }

    /// Sym(n) in its natural action.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::parse("(0 1)", n).unwrap());
        }
        if n >= 3 {
            let full: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            gens.push(Perm::parse(&format!("({})", full.join(" ")), n).unwrap());
        }
        PermGroup { degree: n.max(1), gens, chain: OnceLock::new() }
    }

    /// Alt(n) in its natural action.
    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Perm::parse("(0 1 2)", n).unwrap());
        }
        if n >= 4 {
            let pts: Vec<String> = if n % 2 == 1 {
                (0..n).map(|i| i.to_string()).collect()
            } else {
                (1..n).map(|i| i.to_string()).collect()
            };
            gens.push(Perm::parse(&format!("({})", pts.join(" ")), n).unwrap());
        }
        PermGroup { degree: n.max(1), gens, chain: OnceLock::new() }
    }

    /// C_n as the n-cycle on n points (the regular representation).
    pub fn cyclic(n: usize) -> Self {
        if n <= 1 {
            return PermGroup::trivial(1);
        }
        let pts: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let g = Perm::parse(&format!("({})", pts.join(" ")), n).unwrap();
        PermGroup { degree: n, gens: vec![g], chain: OnceLock::new() }
    }

    /// Dihedral group of order 2n on n points (n ≥ 3): rotation plus the
    /// reflection fixing point 0.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadParameter(format!(
                "dihedral group needs at least 3 points, got {n}"
            )));
        }
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        PermGroup::new(n, vec![Perm::from_images(rot)?, Perm::from_images(refl)?])
    }

    /// Dicyclic group of order 4m, regular on 4m points. Presentation
    /// ⟨a, b | a^(2m) = 1, b² = a^m, b⁻¹ab = a⁻¹⟩; the element a^i b^j is
    /// the point i + j·2m. For m a power of 2 this is the generalized
    /// quaternion group of order 4m.
    pub fn dicyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadParameter("dicyclic parameter must be positive".into()));
        }
        let half = 2 * m;
        let mut a: Vec<usize> = (0..4 * m).collect();
        let mut b: Vec<usize> = (0..4 * m).collect();
        for i in 0..half {
            // Right multiplication: a^i · a = a^(i+1), a^i b · a = a^(i-1) b.
            a[i] = (i + 1) % half;
            a[half + i] = half + (i + half - 1) % half;
            // a^i · b = a^i b, a^i b · b = a^(i+m).
            b[i] = half + i;
            b[half + i] = (i + m) % half;
        }
        PermGroup::new(4 * m, vec![Perm::from_images(a)?, Perm::from_images(b)?])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn is_trivial_group(&self) -> bool {
        self.gens.is_empty()
    }

    /// The stabilizer chain, built on first use and cached.
    pub fn chain(&self) -> Result<&StabilizerChain> {
        if let Some(c) = self.chain.get() {
            return Ok(c);
        }
        let built = StabilizerChain::build(self.degree, &self.gens, None)?;
        Ok(self.chain.get_or_init(|| built))
    }

    pub fn order(&self) -> Result<u128> {
        Ok(self.chain()?.order())
    }

    /// Chain-based membership test by sifting.
    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: p.degree() });
        }
        Ok(self.chain()?.sift(p).0.is_identity())
    }

    /// The orbit `α^G`, sorted.
    pub fn orbit(&self, alpha: usize) -> Result<Vec<usize>> {
        if alpha >= self.degree {
            return Err(Error::PointOutOfRange { point: alpha, degree: self.degree });
        }
        let mut in_orbit = vec![false; self.degree];
        in_orbit[alpha] = true;
        let mut queue = vec![alpha];
        let mut head = 0;
        while head < queue.len() {
            let pt = queue[head];
            head += 1;
            for g in &self.gens {
                let im = g.apply(pt);
                if !in_orbit[im] {
                    in_orbit[im] = true;
                    queue.push(im);
                }
            }
        }
        queue.sort_unstable();
        Ok(queue)
    }

    /// All orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let orbit = self.orbit(start).expect("start < degree");
            for &pt in &orbit {
                seen[pt] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree >= 1 && self.orbit(0).expect("0 < degree").len() == self.degree
    }

    /// The point stabilizer `G_α`, from a chain based at `α`.
    pub fn point_stabilizer(&self, alpha: usize) -> Result<PermGroup> {
        if alpha >= self.degree {
            return Err(Error::PointOutOfRange { point: alpha, degree: self.degree });
        }
        let chain = StabilizerChain::build(self.degree, &self.gens, Some(alpha))?;
        PermGroup::new(self.degree, chain.stabilizer_generators(1))
    }

    /// All elements in chain order, guarded by `cap`.
    pub fn elements_capped(&self, cap: u128) -> Result<Vec<Perm>> {
        let chain = self.chain()?;
        if chain.order() > cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        Ok(chain.elements_in_chain_order())
    }

    /// All elements in chain order, guarded by the element-enumeration cap.
    pub fn elements(&self) -> Result<Vec<Perm>> {
        self.elements_capped(ELEMENT_ENUM_CAP)
    }

    /// Uniformly random element: a random transversal representative at
    /// every level, multiplied deepest-first.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Perm> {
        let chain = self.chain()?;
        let mut acc = Perm::identity(self.degree);
        for lev in (0..chain.num_levels()).rev() {
            let orbit = chain.level_orbit(lev);
            let pick = orbit[rng.gen_range(0..orbit.len())];
            let rep = chain.transversal(lev, pick).expect("orbit point has a rep");
            acc = &acc * rep;
        }
        Ok(acc)
    }

    /// The conjugate group `x⁻¹ G x` on the same points.
    pub fn conjugated_by(&self, x: &Perm) -> Result<PermGroup> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.conjugate_by(x))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.degree, gens)
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Group equality as sets: equal orders plus one-way containment.
    pub fn equals(&self, other: &PermGroup) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        Ok(self.order()? == other.order()? && self.is_subgroup_of(other)?)
    }

    /// Naive closure of the generators under composition; the independent
    /// oracle for chain-based results. Errors once `cap` is passed.
    pub fn naive_elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let mut seen = HashSet::new();
        let mut queue = vec![Perm::identity(self.degree)];
        seen.insert(queue[0].clone());
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head].clone();
            head += 1;
            for g in &self.gens {
                let prod = &e * g;
                if seen.insert(prod.clone()) {
                    if seen.len() > cap {
                        return Err(Error::OrderCapExceeded { cap: cap as u128 });
                    }
                    queue.push(prod);
                }
            }
        }
        Ok(queue)
    }

    /// Restriction to a union of orbits: relabels `points` (which must be
    /// G-invariant) by their sorted order and restricts every generator.
    pub fn restrict_to(&self, points: &[usize]) -> Result<PermGroup> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![usize::MAX; self.degree];
        for (i, &pt) in sorted.iter().enumerate() {
            if pt >= self.degree {
                return Err(Error::PointOutOfRange { point: pt, degree: self.degree });
            }
            index[pt] = i;
        }
        let mut gens = Vec::new();
        for g in &self.gens {
            let mut images = vec![0; sorted.len()];
            for (i, &pt) in sorted.iter().enumerate() {
                let im = g.apply(pt);
                if index[im] == usize::MAX {
                    return Err(Error::NotInvariant);
                }
                images[i] = index[im];
            }
            gens.push(Perm::from_images(images)?);
        }
        PermGroup::new(sorted.len().max(1), gens)
    }
}

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    /// Orbit of `point` in discovery order; `orbit[0] == point`.
    orbit: Vec<usize>,
    /// `transversal[β]` maps `point` to `β`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[point] = Some(Perm::identity(degree));
        Level { point, orbit: vec![point], transversal }
    }
}

/// Base points, strong generators, and fundamental orbits of a group.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
    /// Strong generators with their depth: the index of the first base
    /// point each one moves. A generator participates in every level at or
    /// above its depth.
    sgens: Vec<(Perm, usize)>,
    order: u128,
}

impl StabilizerChain {
    /// Runs Schreier–Sims over `gens`. `first_base`, when given, seeds the
    /// base so that level 1 onward generates the stabilizer of that point.
    pub fn build(degree: usize, gens: &[Perm], first_base: Option<usize>) -> Result<Self> {
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
            sgens: Vec::new(),
            order: 1,
        };
        if let Some(b) = first_base {
            chain.levels.push(Level::new(b, degree));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
            chain.insert(g.clone(), 0);
        }
        // Verify bottom-up: all Schreier generators of every level must
        // sift to the identity through the levels below it.
        let mut lev = chain.levels.len() as i64 - 1;
        while lev >= 0 {
            match chain.verify_level(lev as usize) {
                None => lev -= 1,
                Some(depth) => lev = depth as i64,
            }
        }
        let mut order: u128 = 1;
        for level in &chain.levels {
            order = order
                .checked_mul(level.orbit.len() as u128)
                .ok_or(Error::OrderCapExceeded { cap: u128::MAX })?;
        }
        chain.order = order;
        Ok(chain)
    }

    /// Runs Schreier–Sims with the base forced to `0, 1, …, degree−1`, so
    /// level `i` carries the orbit of `i` under the pointwise stabilizer of
    /// `0..i`. Search loops that sweep prefix stabilizers get every level
    /// from one build instead of one chain per prefix.
    pub fn build_with_full_base(degree: usize, gens: &[Perm]) -> Result<Self> {
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
            sgens: Vec::new(),
            order: 1,
        };
        for p in 0..degree {
            chain.levels.push(Level::new(p, degree));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { left: degree, right: g.degree() });
            }
            chain.insert(g.clone(), 0);
        }
        let mut lev = chain.levels.len() as i64 - 1;
        while lev >= 0 {
            match chain.verify_level(lev as usize) {
                None => lev -= 1,
                Some(depth) => lev = depth as i64,
            }
        }
        let mut order: u128 = 1;
        for level in &chain.levels {
            order = order
                .checked_mul(level.orbit.len() as u128)
                .ok_or(Error::OrderCapExceeded { cap: u128::MAX })?;
        }
        chain.order = order;
        Ok(chain)
    }

    /// Adds a (non-member) strong generator known to fix the base points
    /// before `from`; returns its depth. Identity and members are ignored.
    fn insert(&mut self, g: Perm, from: usize) -> Option<usize> {
        let (residue, stop) = self.sift_from(&g, from);
        if residue.is_identity() {
            return None;
        }
        let depth = if stop == self.levels.len() {
            // Fixes every current base point: open a new level at its
            // smallest moved point.
            let pt = residue.smallest_moved_point().expect("non-identity");
            self.levels.push(Level::new(pt, self.degree));
            self.levels.len() - 1
        } else {
            stop
        };
        self.sgens.push((residue, depth));
        for lev in 0..=depth {
            self.recompute_orbit(lev);
        }
        Some(depth)
    }

    fn recompute_orbit(&mut self, lev: usize) {
        let point = self.levels[lev].point;
        let mut level = Level::new(point, self.degree);
        let gens: Vec<&Perm> = self
            .sgens
            .iter()
            .filter(|(_, d)| *d >= lev)
            .map(|(g, _)| g)
            .collect();
        let mut head = 0;
        while head < level.orbit.len() {
            let pt = level.orbit[head];
            head += 1;
            for g in &gens {
                let im = g.apply(pt);
                if level.transversal[im].is_none() {
                    let rep = level.transversal[pt].as_ref().expect("in orbit") * g;
                    level.transversal[im] = Some(rep);
                    level.orbit.push(im);
                }
            }
        }
        self.levels[lev] = level;
    }

    /// Checks every Schreier generator of `lev`. On the first failure the
    /// residue is inserted (at some depth > lev) and that depth returned so
    /// the caller re-verifies from there; `None` means the level is clean.
    fn verify_level(&mut self, lev: usize) -> Option<usize> {
        let orbit = self.levels[lev].orbit.clone();
        let gens: Vec<Perm> = self
            .sgens
            .iter()
            .filter(|(_, d)| *d >= lev)
            .map(|(g, _)| g.clone())
            .collect();
        for beta in orbit {
            let u = self.levels[lev].transversal[beta].clone().expect("in orbit");
            for s in &gens {
                let target = s.apply(beta);
                let v = self.levels[lev].transversal[target]
                    .clone()
                    .expect("orbit is closed under generators");
                let schreier = &(&u * s) * &v.inverse();
                if let Some(depth) = self.insert(schreier, lev + 1) {
                    return Some(depth);
                }
            }
        }
        None
    }

    /// Sifts `g` through levels `from..`, returning the residue and the
    /// level at which sifting stopped.
    fn sift_from(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let im = h.apply(level.point);
            match &level.transversal[im] {
                Some(u) => h = &h * &u.inverse(),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    /// Sifts `g` through the whole chain; the residue is the identity
    /// exactly when `g` is a member.
    pub fn sift(&self, g: &Perm) -> (Perm, usize) {
        self.sift_from(g, 0)
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn level_point(&self, lev: usize) -> usize {
        self.levels[lev].point
    }

    /// Fundamental orbit at a level, in discovery order.
    pub fn level_orbit(&self, lev: usize) -> &[usize] {
        &self.levels[lev].orbit
    }

    /// Representative mapping the level's base point to `point`.
    pub fn transversal(&self, lev: usize, point: usize) -> Option<&Perm> {
        self.levels[lev].transversal[point].as_ref()
    }

    /// Strong generators fixing the first `lev` base points pointwise.
    pub fn stabilizer_generators(&self, lev: usize) -> Vec<Perm> {
        self.sgens
            .iter()
            .filter(|(_, d)| *d >= lev)
            .map(|(g, _)| g.clone())
            .collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.sgens.iter().map(|(g, _)| g.clone()).collect()
    }

    /// Every element exactly once, in *chain order*: recursively, the
    /// elements of the level-(l+1) group each multiplied by the level-l
    /// transversal representatives in orbit-discovery order, representative
    /// outermost. The position of an element in this list is its chain
    /// rank; the identity is always first.
    pub fn elements_in_chain_order(&self) -> Vec<Perm> {
        self.elements_from_level(0)
    }

    fn elements_from_level(&self, lev: usize) -> Vec<Perm> {
        if lev == self.levels.len() {
            return vec![Perm::identity(self.degree)];
        }
        let rest = self.elements_from_level(lev + 1);
        let mut out = Vec::with_capacity(rest.len() * self.levels[lev].orbit.len());
        for &beta in &self.levels[lev].orbit {
            let u = self.levels[lev].transversal[beta].as_ref().expect("in orbit");
            for h in &rest {
                out.push(h * u);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chain_order_of_a_four_cycle() {
        let g = PermGroup::from_cycles(4, &["(0 1 2 3)"]).unwrap();
        assert_eq!(g.order().unwrap(), 4);
    }

    #[test]
    fn chain_order_of_sym3() {
        let g = PermGroup::from_cycles(3, &["(0 1)", "(0 1 2)"]).unwrap();
        assert_eq!(g.order().unwrap(), 6);
    }

    // Naive-enumeration oracle first, frozen value second: closing
    // {(0 1 2 3 4), (1 2 4 3)} under composition yields 20 elements.
    #[test]
    fn chain_order_of_frobenius20_matches_naive_oracle() {
        let g = PermGroup::from_cycles(5, &["(0 1 2 3 4)", "(1 2 4 3)"]).unwrap();
        let naive = g.naive_elements(10_000).unwrap();
        assert_eq!(naive.len(), 20);
        assert_eq!(g.order().unwrap(), naive.len() as u128);
    }

    #[test]
    fn chain_order_divides_degree_factorial() {
        for g in [
            PermGroup::from_cycles(5, &["(0 1 2 3 4)", "(1 2 4 3)"]).unwrap(),
            PermGroup::symmetric(5),
            PermGroup::alternating(6),
            PermGroup::dihedral(6).unwrap(),
        ] {
            let fact: u128 = (1..=g.degree() as u128).product();
            assert_eq!(fact % g.order().unwrap(), 0);
        }
    }

    #[test]
    fn sifting_generator_products_gives_identity_residue() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [
            PermGroup::from_cycles(5, &["(0 1 2 3 4)", "(1 2 4 3)"]).unwrap(),
            PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap(),
            PermGroup::symmetric(6),
            PermGroup::alternating(5),
        ] {
            let chain = g.chain().unwrap();
            for _ in 0..50 {
                let mut prod = Perm::identity(g.degree());
                for _ in 0..rng.gen_range(1..=3) {
                    let pick = &g.generators()[rng.gen_range(0..g.generators().len())];
                    prod = &prod * pick;
                }
                let (residue, _) = chain.sift(&prod);
                assert!(residue.is_identity(), "residue {residue} for {prod}");
            }
        }
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(PermGroup::symmetric(4).order().unwrap(), 24);
        assert_eq!(PermGroup::symmetric(6).order().unwrap(), 720);
        assert_eq!(PermGroup::alternating(4).order().unwrap(), 12);
        assert_eq!(PermGroup::alternating(5).order().unwrap(), 60);
        assert_eq!(PermGroup::alternating(3).order().unwrap(), 3);
        assert_eq!(PermGroup::dihedral(4).unwrap().order().unwrap(), 8);
    }

    #[test]
    fn dicyclic_groups_are_regular_with_a_unique_involution() {
        // Every dicyclic group of order 4m contains exactly one involution,
        // namely a^m = b²; m a power of 2 gives the generalized quaternion
        // groups. Checked from the element list, not the construction.
        for m in [1usize, 2, 3, 4, 6] {
            let g = PermGroup::dicyclic(m).unwrap();
            assert_eq!(g.degree(), 4 * m);
            assert_eq!(g.order().unwrap(), 4 * m as u128);
            assert!(g.is_transitive());
            assert_eq!(g.point_stabilizer(0).unwrap().order().unwrap(), 1);
            let elems = g.elements().unwrap();
            let involutions: Vec<&Perm> =
                elems.iter().filter(|e| e.order() == 2).collect();
            assert_eq!(involutions.len(), 1, "m = {m}");
            let a = &g.generators()[0];
            let b = &g.generators()[1];
            let mut am = Perm::identity(4 * m);
            for _ in 0..m {
                am = &am * a;
            }
            assert_eq!(&(b * b), involutions[0]);
            assert_eq!(&am, involutions[0]);
        }
        // m = 2 is the quaternion group: i² = j² = (ij)² = central involution.
        let q8 = PermGroup::dicyclic(2).unwrap();
        let (i, j) = (&q8.generators()[0], &q8.generators()[1]);
        let ij = i * j;
        assert_eq!(i * i, j * j);
        assert_eq!(&ij * &ij, j * j);
        assert!(PermGroup::dicyclic(0).is_err());
    }

    #[test]
    fn orbit_examples() {
        let c3 = PermGroup::from_cycles(3, &["(0 1 2)"]).unwrap();
        assert_eq!(c3.orbit(0).unwrap(), vec![0, 1, 2]);

        let trivial = PermGroup::trivial(5);
        assert_eq!(trivial.orbit(2).unwrap(), vec![2]);

        // Oracle: the 6 elements of ⟨(0 1)(2 3 4)⟩ send 2 to exactly {2,3,4}.
        let g = PermGroup::from_cycles(5, &["(0 1)(2 3 4)"]).unwrap();
        let elems = g.naive_elements(100).unwrap();
        let mut images: Vec<usize> = elems.iter().map(|e| e.apply(2)).collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(elems.len(), 6);
        assert_eq!(images, vec![2, 3, 4]);
        assert_eq!(g.orbit(2).unwrap(), images);
    }

    #[test]
    fn orbit_rejects_out_of_range() {
        let g = PermGroup::from_cycles(3, &["(0 1 2)"]).unwrap();
        assert!(matches!(
            g.orbit(3),
            Err(Error::PointOutOfRange { point: 3, degree: 3 })
        ));
    }

    #[test]
    fn point_stabilizer_examples() {
        let s3 = PermGroup::symmetric(3);
        let stab = s3.point_stabilizer(0).unwrap();
        assert_eq!(stab.order().unwrap(), 2);
        assert!(stab.contains(&Perm::parse("(1 2)", 3).unwrap()).unwrap());

        let c4 = PermGroup::from_cycles(4, &["(0 1 2 3)"]).unwrap();
        assert_eq!(c4.point_stabilizer(0).unwrap().order().unwrap(), 1);

        // Oracle: exactly the 3 elements of ⟨(0 1 2),(0 1)(3 4)⟩ fixing
        // point 3 are the powers of (0 1 2).
        let g = PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap();
        let fixing: Vec<Perm> = g
            .naive_elements(100)
            .unwrap()
            .into_iter()
            .filter(|e| e.apply(3) == 3)
            .collect();
        assert_eq!(fixing.len(), 3);
        let stab = g.point_stabilizer(3).unwrap();
        assert_eq!(stab.order().unwrap(), 3);
        assert!(stab.contains(&Perm::parse("(0 1 2)", 5).unwrap()).unwrap());
        for e in fixing {
            assert!(stab.contains(&e).unwrap());
        }
    }

    #[test]
    fn orbit_stabilizer_identity_holds() {
        for g in [
            PermGroup::symmetric(5),
            PermGroup::alternating(5),
            PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap(),
            PermGroup::dihedral(6).unwrap(),
        ] {
            for alpha in 0..g.degree() {
                let orbit = g.orbit(alpha).unwrap().len() as u128;
                let stab = g.point_stabilizer(alpha).unwrap().order().unwrap();
                assert_eq!(g.order().unwrap(), orbit * stab);
            }
        }
    }

    #[test]
    fn membership_agrees_with_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [
            PermGroup::from_cycles(5, &["(0 1 2 3 4)", "(1 2 4 3)"]).unwrap(),
            PermGroup::dihedral(4).unwrap(),
            PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap(),
            PermGroup::alternating(5),
        ] {
            let elems: HashSet<Perm> = g.naive_elements(10_000).unwrap().into_iter().collect();
            for _ in 0..100 {
                let p = Perm::random(g.degree(), &mut rng);
                assert_eq!(g.contains(&p).unwrap(), elems.contains(&p));
            }
        }
    }

    #[test]
    fn elements_in_chain_order_are_the_group() {
        let g = PermGroup::from_cycles(5, &["(0 1 2 3 4)", "(1 2 4 3)"]).unwrap();
        let elems = g.elements().unwrap();
        assert_eq!(elems.len(), 20);
        assert!(elems[0].is_identity(), "identity has chain rank 0");
        let distinct: HashSet<&Perm> = elems.iter().collect();
        assert_eq!(distinct.len(), 20);
        let naive: HashSet<Perm> = g.naive_elements(100).unwrap().into_iter().collect();
        assert_eq!(naive, elems.into_iter().collect());
    }

    #[test]
    fn elements_respect_the_cap() {
        let g = PermGroup::symmetric(8);
        assert!(matches!(
            g.elements(),
            Err(Error::OrderCapExceeded { cap: ELEMENT_ENUM_CAP })
        ));
        assert_eq!(PermGroup::symmetric(7).elements().unwrap().len(), 5040);
    }

    #[test]
    fn random_elements_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = PermGroup::from_cycles(5, &["(0 1 2 3 4)", "(1 2 4 3)"]).unwrap();
        for _ in 0..30 {
            let e = g.random_element(&mut rng).unwrap();
            assert!(g.contains(&e).unwrap());
        }
    }

    #[test]
    fn conjugated_group_has_same_order() {
        let g = PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap();
        let x = Perm::parse("(0 3)(1 4 2)", 5).unwrap();
        let conj = g.conjugated_by(&x).unwrap();
        assert_eq!(conj.order().unwrap(), g.order().unwrap());
        for gen in g.generators() {
            assert!(conj.contains(&gen.conjugate_by(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn restriction_to_an_orbit() {
        let g = PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap();
        let top = g.restrict_to(&[0, 1, 2]).unwrap();
        assert_eq!(top.degree(), 3);
        assert_eq!(top.order().unwrap(), 6);
        let bottom = g.restrict_to(&[3, 4]).unwrap();
        assert_eq!(bottom.order().unwrap(), 2);
        assert!(matches!(g.restrict_to(&[0, 3]), Err(Error::NotInvariant)));
    }

    // Oracle: level i of a full-base chain must carry the orbit of i under
    // the pointwise stabilizer of 0..i, computed here by repeated
    // point_stabilizer calls.
    #[test]
    fn full_base_chain_levels_are_prefix_stabilizer_orbits() {
        for g in [
            PermGroup::symmetric(5),
            PermGroup::from_cycles(5, &["(0 1 2)", "(0 1)(3 4)"]).unwrap(),
            PermGroup::dihedral(6).unwrap(),
            PermGroup::from_cycles(5, &["(0 1 2 3 4)", "(1 2 4 3)"]).unwrap(),
            PermGroup::trivial(4),
        ] {
            let chain =
                StabilizerChain::build_with_full_base(g.degree(), g.generators()).unwrap();
            assert_eq!(chain.num_levels(), g.degree());
            assert_eq!(chain.order(), g.order().unwrap());
            let mut stab = g.clone();
            for i in 0..g.degree() {
                assert_eq!(chain.level_point(i), i);
                let mut level: Vec<usize> = chain.level_orbit(i).to_vec();
                level.sort_unstable();
                assert_eq!(level, stab.orbit(i).unwrap(), "level {i}");
                stab = stab.point_stabilizer(i).unwrap();
            }
        }
    }

    #[test]
    fn equality_and_subgroup_checks() {
        let s3a = PermGroup::symmetric(3);
        let s3b = PermGroup::from_cycles(3, &["(0 2)", "(1 2)"]).unwrap();
        assert!(s3a.equals(&s3b).unwrap());
        let a3 = PermGroup::alternating(3);
        assert!(a3.is_subgroup_of(&s3a).unwrap());
        assert!(!s3a.is_subgroup_of(&a3).unwrap());
        assert!(!a3.equals(&s3a).unwrap());
    }
}
