//! The 2-closure G^(2),Ω: the largest subgroup of Sym(Ω) with the same
//! orbits on Ω × Ω as G. Two engines compute it — a literal scan of
//! Sym(Ω) that serves as the trusted oracle, and a color-preserving
//! backtrack that scales to the working degree range — plus the Wielandt
//! pairwise-interpolation membership test and the three-way dissection
//! condition check for invariant splittings of Ω.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::group::{PermGroup, StabilizerChain};
use crate::orbitals::{orbital_partition, OrbitalPartition};
use crate::perm::{all_perms, Perm};

pub const BRUTEFORCE_DEGREE_CAP: usize = 9;
pub const EXHAUSTIVE_DEGREE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMethod {
    Bruteforce,
    Backtrack,
}

impl ClosureMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClosureMethod::Bruteforce => "bruteforce",
            ClosureMethod::Backtrack => "backtrack",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosureStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub input: PermGroup,
    pub closure: PermGroup,
    pub equals_input: bool,
    pub method: ClosureMethod,
    pub stats: ClosureStats,
}

impl ClosureResult {
    fn finish(
        input: PermGroup,
        closure: PermGroup,
        method: ClosureMethod,
        nodes: u64,
        start: Instant,
    ) -> Result<ClosureResult> {
        for gen in input.generators() {
            assert!(closure.contains(gen)?, "the input must embed in its closure");
        }
        let in_order = input.order()?;
        let out_order = closure.order()?;
        assert_eq!(out_order % in_order, 0, "closure order is a multiple of the input order");
        Ok(ClosureResult {
            equals_input: in_order == out_order,
            input,
            closure,
            method,
            stats: ClosureStats { nodes, elapsed: start.elapsed() },
        })
    }
}

#[derive(Debug, Clone)]
pub struct ClosureOptions {
    pub degree_cap: usize,
    pub node_budget: u64,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { degree_cap: 24, node_budget: 20_000_000 }
    }
}

/// Does θ map every pair to a pair of the same color?
pub(crate) fn preserves_colors(theta: &Perm, part: &OrbitalPartition) -> bool {
    let n = part.degree();
    for a in 0..n {
        for b in 0..n {
            if part.color(theta.apply(a), theta.apply(b)) != part.color(a, b) {
                return false;
            }
        }
    }
    true
}

/// The definition executed literally: scan all of Sym(Ω) and keep the
/// color-preserving elements. The trusted oracle for every other engine.
pub fn two_closure_bruteforce(g: &PermGroup) -> Result<ClosureResult> {
    let start = Instant::now();
    let n = g.degree();
    if n > BRUTEFORCE_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded { degree: n, cap: BRUTEFORCE_DEGREE_CAP });
    }
    let part = orbital_partition(g)?;
    let mut kept = Vec::new();
    let mut nodes = 0u64;
    for theta in all_perms(n) {
        nodes += 1;
        if preserves_colors(&theta, &part) {
            kept.push(theta);
        }
    }
    let closure = PermGroup::new(n, kept.clone())?;
    assert_eq!(closure.order()?, kept.len() as u128, "kept elements already form a group");
    ClosureResult::finish(g.clone(), closure, ClosureMethod::Bruteforce, nodes, start)
}

/// Candidate check for the backtrack: with `images[0..k]` assigned, may
/// point k map to w? Tests the colors of every pair involving k against
/// the assigned slots, both orientations and the diagonal.
#[inline]
fn compatible(part: &OrbitalPartition, images: &[usize], w: usize) -> bool {
    let k = images.len();
    if part.color(k, k) != part.color(w, w) {
        return false;
    }
    for (j, &cj) in images.iter().enumerate() {
        if part.color(j, k) != part.color(cj, w) || part.color(k, j) != part.color(w, cj) {
            return false;
        }
    }
    true
}

/// Depth-first completion to the first full color-preserving permutation,
/// points in ascending order, candidate images in ascending order.
fn extend_first(
    part: &OrbitalPartition,
    images: &mut Vec<usize>,
    used: &mut [bool],
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Perm>> {
    let n = part.degree();
    if images.len() == n {
        return Ok(Some(Perm::from_images(images.clone())?));
    }
    for w in 0..n {
        if used[w] {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::SearchBudgetExceeded { budget });
        }
        if compatible(part, images, w) {
            images.push(w);
            used[w] = true;
            let found = extend_first(part, images, used, nodes, budget)?;
            images.pop();
            used[w] = false;
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

/// Depth-first collection of every color-preserving permutation.
fn collect_all(
    part: &OrbitalPartition,
    images: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Perm>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    let n = part.degree();
    if images.len() == n {
        out.push(Perm::from_images(images.clone())?);
        return Ok(());
    }
    for w in 0..n {
        if used[w] {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::SearchBudgetExceeded { budget });
        }
        if compatible(part, images, w) {
            images.push(w);
            used[w] = true;
            collect_all(part, images, used, out, nodes, budget)?;
            images.pop();
            used[w] = false;
        }
    }
    Ok(())
}

/// Bruteforce semantics past degree 9: a complete backtrack that reaches
/// every color-preserving permutation as a leaf (branches it prunes are
/// excluded by the definition itself, so the collected set is exactly the
/// scan's). The leaf count is asserted against the resulting group order.
pub fn two_closure_exhaustive(g: &PermGroup) -> Result<ClosureResult> {
    let start = Instant::now();
    let n = g.degree();
    if n > EXHAUSTIVE_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded { degree: n, cap: EXHAUSTIVE_DEGREE_CAP });
    }
    let part = orbital_partition(g)?;
    let budget = ClosureOptions::default().node_budget;
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut kept = Vec::new();
    let mut nodes = 0u64;
    collect_all(&part, &mut images, &mut used, &mut kept, &mut nodes, budget)?;
    let closure = PermGroup::new(n, kept.clone())?;
    assert_eq!(
        closure.order()?,
        kept.len() as u128,
        "every element of the closure must appear as a leaf"
    );
    ClosureResult::finish(g.clone(), closure, ClosureMethod::Bruteforce, nodes, start)
}

/// The production engine: builds the closure level by level along the
/// point-stabilizer chain for the base 0, 1, 2, …. At level i, each point
/// v outside the current orbit of i gets one complete first-solution
/// search for a color-preserving permutation fixing 0..i-1 and sending
/// i → v; a failed search definitively excludes v. The finished orbit
/// sizes multiply out to the closure order, which is asserted.
pub fn two_closure_with(g: &PermGroup, opts: &ClosureOptions) -> Result<ClosureResult> {
    let start = Instant::now();
    let n = g.degree();
    if n > opts.degree_cap {
        return Err(Error::DegreeCapExceeded { degree: n, cap: opts.degree_cap });
    }
    let part = orbital_partition(g)?;
    let mut gens: Vec<Perm> = g.generators().to_vec();
    // One full-base chain serves every level: its level-i orbit is the
    // orbit of i under the stabilizer of 0..i-1. Rebuilt only when a new
    // generator joins.
    let mut chain = StabilizerChain::build_with_full_base(n, &gens)?;
    let mut nodes = 0u64;
    for i in 0..n {
        loop {
            let orbit: HashSet<usize> = chain.level_orbit(i).iter().copied().collect();
            let mut grown = false;
            for v in 0..n {
                if orbit.contains(&v) {
                    continue;
                }
                nodes += 1;
                if nodes > opts.node_budget {
                    return Err(Error::SearchBudgetExceeded { budget: opts.node_budget });
                }
                let mut images: Vec<usize> = (0..i).collect();
                if !compatible(&part, &images, v) {
                    continue;
                }
                let mut used = vec![false; n];
                used[..i].fill(true);
                images.push(v);
                used[v] = true;
                if let Some(theta) =
                    extend_first(&part, &mut images, &mut used, &mut nodes, opts.node_budget)?
                {
                    gens.push(theta);
                    chain = StabilizerChain::build_with_full_base(n, &gens)?;
                    grown = true;
                    break;
                }
            }
            if !grown {
                break;
            }
        }
    }
    let known = PermGroup::new(n, gens)?;
    assert_eq!(
        known.order()?,
        chain.order(),
        "closure order must equal the product of its base-orbit sizes"
    );
    ClosureResult::finish(g.clone(), known, ClosureMethod::Backtrack, nodes, start)
}

pub fn two_closure(g: &PermGroup) -> Result<ClosureResult> {
    two_closure_with(g, &ClosureOptions::default())
}

pub fn is_2closed(g: &PermGroup) -> Result<bool> {
    Ok(two_closure(g)?.equals_input)
}

/// Wielandt's pairwise test: θ belongs to the 2-closure iff for every
/// pair (α, β) some group element matches θ on both points. Agreement
/// with the color-preservation characterization is asserted on the way.
pub fn wielandt_membership(theta: &Perm, g: &PermGroup) -> Result<bool> {
    if theta.degree() != g.degree() {
        return Err(Error::DegreeMismatch { left: theta.degree(), right: g.degree() });
    }
    let n = g.degree();
    let elems = g.elements()?;
    let mut verdict = true;
    'scan: for alpha in 0..n {
        let matching: Vec<&Perm> =
            elems.iter().filter(|e| e.apply(alpha) == theta.apply(alpha)).collect();
        for beta in 0..n {
            if !matching.iter().any(|e| e.apply(beta) == theta.apply(beta)) {
                verdict = false;
                break 'scan;
            }
        }
    }
    let part = orbital_partition(g)?;
    assert_eq!(
        verdict,
        preserves_colors(theta, &part),
        "pair interpolation and color preservation are the same membership"
    );
    Ok(verdict)
}

/// The three dissection conditions for an invariant splitting Ω = Γ ⊔ Δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DissectionCheck {
    /// (1) G^Γ × G^Δ lies in the 2-closure.
    pub closure_containment: bool,
    /// (2) G = G_γ · G_δ for every γ ∈ Γ, δ ∈ Δ.
    pub factorization: bool,
    /// (3) G_δ is transitive on γ^G for every γ ∈ Γ, δ ∈ Δ.
    pub transitivity: bool,
    /// The three conditions agreed (they must; asserted).
    pub agree: bool,
}

impl DissectionCheck {
    pub fn holds(&self) -> bool {
        self.closure_containment
    }
}

/// Evaluates all three dissection conditions independently and asserts
/// their equivalence. Γ and Δ must partition the points and both be
/// G-invariant.
pub fn dissection_check(g: &PermGroup, gamma: &[usize], delta: &[usize]) -> Result<DissectionCheck> {
    let n = g.degree();
    let mut seen = vec![false; n];
    for &p in gamma.iter().chain(delta) {
        if p >= n {
            return Err(Error::PointOutOfRange { point: p, degree: n });
        }
        if seen[p] {
            return Err(Error::NotInvariant);
        }
        seen[p] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::NotInvariant);
    }
    let in_gamma = {
        let mut mask = vec![false; n];
        for &p in gamma {
            mask[p] = true;
        }
        mask
    };
    for gen in g.generators() {
        for p in 0..n {
            if in_gamma[p] != in_gamma[gen.apply(p)] {
                return Err(Error::NotInvariant);
            }
        }
    }

    let part = orbital_partition(g)?;
    // (1) Generators of G^Γ × G^Δ: each group generator cut down to one
    // side, identity on the other; containment in the closure is exactly
    // color preservation.
    let mut containment = true;
    'cond1: for gen in g.generators() {
        for keep_gamma in [true, false] {
            let images: Vec<usize> = (0..n)
                .map(|p| if in_gamma[p] == keep_gamma { gen.apply(p) } else { p })
                .collect();
            let side = Perm::from_images(images)?;
            if !preserves_colors(&side, &part) {
                containment = false;
                break 'cond1;
            }
        }
    }

    // (2) |G_γ|·|G_δ| = |G|·|G_γ ∩ G_δ| for all pairs.
    let order = g.order()?;
    let mut factorization = true;
    'cond2: for &ga in gamma {
        let stab_ga = g.point_stabilizer(ga)?;
        for &de in delta {
            let stab_de = g.point_stabilizer(de)?;
            let both = stab_ga.point_stabilizer(de)?;
            if stab_ga.order()? * stab_de.order()? != order * both.order()? {
                factorization = false;
                break 'cond2;
            }
        }
    }

    // (3) G_δ transitive on γ^G.
    let mut transitivity = true;
    'cond3: for &ga in gamma {
        let full_orbit = g.orbit(ga)?;
        for &de in delta {
            if g.point_stabilizer(de)?.orbit(ga)? != full_orbit {
                transitivity = false;
                break 'cond3;
            }
        }
    }

    let agree = containment == factorization && factorization == transitivity;
    assert!(agree, "the dissection conditions are provably equivalent");
    Ok(DissectionCheck { closure_containment: containment, factorization, transitivity, agree })
}
