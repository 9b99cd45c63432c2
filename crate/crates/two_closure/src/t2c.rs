//! Faithful permutation representations of a small group, enumerated as
//! multisets of point-stabilizer classes, and the search for a
//! representation whose 2-closure is strictly larger — the failure that
//! disqualifies a group from being totally 2-closed.
//!
//! Every faithful G-action splits into transitive constituents, and a
//! transitive constituent is determined up to equivalence by the conjugacy
//! class of a point stabilizer. A multiset of proper-subgroup classes
//! therefore describes a faithful action exactly when the cores of the
//! chosen subgroups intersect trivially. The enumerator walks these
//! multisets in ascending total degree; the searcher runs the closure
//! engine over each action and stops at the first one that fails to be
//! 2-closed, so a group with an early witness never pays for the
//! combinatorics of the higher degrees.

use std::fmt;

use crate::closure::{
    preserves_colors, two_closure_bruteforce, two_closure_with, ClosureOptions, ClosureResult,
    BRUTEFORCE_DEGREE_CAP,
};
use crate::constructions::{coset_action, CosetAction};
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEGREE_CAP};
use crate::orbitals::orbital_partition;
use crate::perm::Perm;
use crate::structure::{is_cyclic, structure_report, ClassificationTag};
use crate::subgroups::{center, enumerate_subgroups, ElemSet, GroupTable};

/// One constituent of a representation: `multiplicity` copies of the coset
/// action on the cosets of `subgroup`.
#[derive(Debug, Clone)]
pub struct RepPart {
    pub subgroup: PermGroup,
    /// `[G : subgroup]`, the degree of a single copy.
    pub index: usize,
    pub multiplicity: usize,
}

/// A faithful-representation candidate: a multiset of proper-subgroup
/// conjugacy classes whose cores intersect trivially.
#[derive(Debug, Clone)]
pub struct RepSpec {
    /// Parts with their multiplicities, smallest block degree first.
    pub parts: Vec<RepPart>,
    /// Total degree: Σ multiplicity · index over the parts.
    pub degree: usize,
}

impl RepSpec {
    /// `(block degree, multiplicity, subgroup order)` per part.
    pub fn profile(&self) -> Result<Vec<(usize, usize, u128)>> {
        self.parts
            .iter()
            .map(|p| Ok((p.index, p.multiplicity, p.subgroup.order()?)))
            .collect()
    }
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {} = ", self.degree)?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if p.multiplicity > 1 {
                write!(f, "{}·{}", p.multiplicity, p.index)?;
            } else {
                write!(f, "{}", p.index)?;
            }
        }
        Ok(())
    }
}

/// A proper-subgroup conjugacy class with the data the enumerator needs.
struct ClassInfo {
    subgroup: PermGroup,
    index: usize,
    /// Core of the class in table coordinates; conjugate members share it.
    core: ElemSet,
}

/// Everything needed to walk rep specs of one group.
struct SpecContext {
    classes: Vec<ClassInfo>,
    /// Smallest block degree among `classes[pos..]`; one extra sentinel.
    suffix_min: Vec<usize>,
    /// Bitset of all of G, the starting core intersection.
    everything: ElemSet,
}

impl SpecContext {
    fn build(g: &PermGroup) -> Result<SpecContext> {
        let lat = enumerate_subgroups(g)?;
        let n = lat.table.len();
        let gen_idx: Vec<usize> = g
            .generators()
            .iter()
            .map(|p| lat.table.index_of(p).expect("generator is an element") as usize)
            .collect();
        let mut classes = Vec::new();
        for c in 0..lat.classes.len() {
            let rep = lat.class_representative(c);
            if rep.count() == n {
                continue; // the full group stabilizes nothing
            }
            classes.push(ClassInfo {
                subgroup: lat.table.to_group(rep),
                index: n / rep.count(),
                core: bitset_core(&lat.table, rep, &gen_idx),
            });
        }
        classes.sort_by_key(|ci| ci.index);
        let mut suffix_min = vec![usize::MAX; classes.len() + 1];
        for pos in (0..classes.len()).rev() {
            suffix_min[pos] = classes[pos].index.min(suffix_min[pos + 1]);
        }
        let mut everything = ElemSet::new(n);
        for e in 0..n {
            everything.insert(e);
        }
        Ok(SpecContext { classes, suffix_min, everything })
    }

    /// Walks every multiset of classes with total degree exactly `d`,
    /// multiplicities at most `max_mult`, and trivial core intersection,
    /// lexicographically by count vector. The callback returns `true` to
    /// stop; the return value reports whether a callback did so.
    fn walk_degree<F>(&self, d: usize, max_mult: usize, f: &mut F) -> Result<bool>
    where
        F: FnMut(&[usize]) -> Result<bool>,
    {
        let mut counts = vec![0usize; self.classes.len()];
        self.walk_rec(0, d, max_mult, &mut counts, &self.everything, f)
    }

    fn walk_rec<F>(
        &self,
        pos: usize,
        remaining: usize,
        max_mult: usize,
        counts: &mut Vec<usize>,
        inter: &ElemSet,
        f: &mut F,
    ) -> Result<bool>
    where
        F: FnMut(&[usize]) -> Result<bool>,
    {
        if remaining == 0 {
            if inter.count() == 1 {
                return f(counts);
            }
            return Ok(false);
        }
        if remaining < self.suffix_min[pos] {
            return Ok(false); // also covers pos == classes.len()
        }
        // Skipping this class keeps the running intersection untouched.
        if self.walk_rec(pos + 1, remaining, max_mult, counts, inter, f)? {
            return Ok(true);
        }
        let index = self.classes[pos].index;
        if remaining >= index {
            let mut cut = inter.clone();
            cut.intersect_with(&self.classes[pos].core);
            for k in 1..=(remaining / index).min(max_mult) {
                counts[pos] = k;
                if self.walk_rec(pos + 1, remaining - k * index, max_mult, counts, &cut, f)? {
                    counts[pos] = 0;
                    return Ok(true);
                }
            }
            counts[pos] = 0;
        }
        Ok(false)
    }

    fn spec_from_counts(&self, counts: &[usize], degree: usize) -> RepSpec {
        let parts = self
            .classes
            .iter()
            .zip(counts)
            .filter(|(_, &k)| k > 0)
            .map(|(ci, &k)| RepPart {
                subgroup: ci.subgroup.clone(),
                index: ci.index,
                multiplicity: k,
            })
            .collect();
        RepSpec { parts, degree }
    }
}

/// Largest subgroup of `sub` invariant under conjugation by the
/// generators, i.e. the intersection of all G-conjugates of `sub`.
fn bitset_core(table: &GroupTable, sub: &ElemSet, gen_idx: &[usize]) -> ElemSet {
    let mut cur = sub.clone();
    loop {
        let mut changed = false;
        for &x in gen_idx {
            let mut img = ElemSet::new(table.len());
            for e in cur.iter() {
                img.insert(table.conj(e, x));
            }
            let before = cur.count();
            cur.intersect_with(&img);
            changed |= cur.count() != before;
        }
        if !changed {
            return cur;
        }
    }
}

/// All faithful representation candidates of total degree at most
/// `max_degree`, ascending by degree, ties in count-vector order. Complete:
/// every multiset of proper-subgroup classes with trivial core intersection
/// in range appears exactly once.
pub fn faithful_rep_specs(g: &PermGroup, max_degree: usize) -> Result<Vec<RepSpec>> {
    let ctx = SpecContext::build(g)?;
    let mut out = Vec::new();
    for d in 2..=max_degree.max(1) {
        ctx.walk_degree(d, usize::MAX, &mut |counts| {
            out.push(ctx.spec_from_counts(counts, d));
            Ok(false)
        })?;
    }
    Ok(out)
}

/// Realizes a spec as a permutation group: the disjoint union of the coset
/// actions of its parts, each G-generator acting simultaneously on every
/// block. Errors with [`Error::UnfaithfulSpec`] when the result does not
/// have full order — a defensive re-check of the core condition.
pub fn rep_action(g: &PermGroup, spec: &RepSpec) -> Result<PermGroup> {
    let gens = rep_images(g, spec)?;
    let action = PermGroup::new(spec.degree.max(1), gens)?;
    if action.order()? != g.order()? {
        return Err(Error::UnfaithfulSpec);
    }
    Ok(action)
}

/// Images of `g.generators()`, in order, on the disjoint union of coset
/// spaces described by `spec` — the raw generator-to-generator form of
/// [`rep_action`], for callers that need the correspondence.
pub fn rep_images(g: &PermGroup, spec: &RepSpec) -> Result<Vec<Perm>> {
    let ngens = g.generators().len();
    let mut images: Vec<Vec<usize>> = vec![Vec::with_capacity(spec.degree); ngens];
    let mut offset = 0;
    for part in &spec.parts {
        let ca = coset_action(g, &part.subgroup)?;
        for _ in 0..part.multiplicity {
            for (gi, img) in images.iter_mut().enumerate() {
                img.extend((0..part.index).map(|p| offset + ca.gen_images[gi].apply(p)));
            }
            offset += part.index;
        }
    }
    if offset != spec.degree {
        return Err(Error::BadParameter(format!(
            "spec states degree {} but its blocks sum to {offset}",
            spec.degree
        )));
    }
    images.into_iter().map(Perm::from_images).collect()
}

/// Same assembly as [`rep_action`], from a count vector and per-class
/// cached coset actions; the search loop's fast path.
fn assemble_action(
    g: &PermGroup,
    ctx: &SpecContext,
    cached: &[CosetAction],
    counts: &[usize],
    degree: usize,
) -> Result<PermGroup> {
    let ngens = g.generators().len();
    let mut images: Vec<Vec<usize>> = vec![Vec::with_capacity(degree); ngens];
    let mut offset = 0;
    for (ci, &k) in counts.iter().enumerate() {
        for _ in 0..k {
            for (gi, img) in images.iter_mut().enumerate() {
                img.extend(
                    (0..ctx.classes[ci].index)
                        .map(|p| offset + cached[ci].gen_images[gi].apply(p)),
                );
            }
            offset += ctx.classes[ci].index;
        }
    }
    debug_assert_eq!(offset, degree);
    finish_action(g, degree, images)
}

fn finish_action(g: &PermGroup, degree: usize, images: Vec<Vec<usize>>) -> Result<PermGroup> {
    let gens = images
        .into_iter()
        .map(Perm::from_images)
        .collect::<Result<Vec<_>>>()?;
    let action = PermGroup::new(degree.max(1), gens)?;
    if action.order()? != g.order()? {
        return Err(Error::UnfaithfulSpec);
    }
    Ok(action)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T2CPrediction {
    T2C,
    NotT2C,
    OutOfTheoremScope,
}

impl T2CPrediction {
    pub fn as_str(&self) -> &'static str {
        match self {
            T2CPrediction::T2C => "T2C",
            T2CPrediction::NotT2C => "NotT2C",
            T2CPrediction::OutOfTheoremScope => "OutOfTheoremScope",
        }
    }
}

impl fmt::Display for T2CPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A classification verdict together with the rule that produced it.
#[derive(Debug, Clone)]
pub struct TheoremVerdict {
    pub prediction: T2CPrediction,
    pub rule: String,
}

/// Classifies total 2-closedness from structure alone. Soluble groups are
/// always decided: they are totally 2-closed exactly when cyclic or an
/// odd-cyclic times generalized quaternion product. A non-cyclic center
/// rules the property out for any group. Insoluble groups with trivial
/// Fitting subgroup are classified only by name (see
/// [`theorem_d_lookup`]); the rest are out of scope here.
pub fn theorem_classifier(g: &PermGroup) -> Result<TheoremVerdict> {
    let report = structure_report(g)?;
    let center_is_cyclic = is_cyclic(&center(g)?)?;
    let (prediction, rule) = if report.is_soluble {
        match report.classification_tag {
            ClassificationTag::Cyclic
            | ClassificationTag::OddCyclicTimesGeneralizedQuaternion => {
                (T2CPrediction::T2C, "Theorem A".to_string())
            }
            ClassificationTag::Other => {
                let rule = if center_is_cyclic {
                    "Theorem A".to_string()
                } else {
                    "Theorem A; Theorem 1 (non-cyclic center)".to_string()
                };
                (T2CPrediction::NotT2C, rule)
            }
        }
    } else if !center_is_cyclic {
        (T2CPrediction::NotT2C, "Theorem 1 (non-cyclic center)".to_string())
    } else if report.fitting_order == 1 {
        (
            T2CPrediction::OutOfTheoremScope,
            "Theorem D (trivial Fitting subgroup; decided by name lookup only)".to_string(),
        )
    } else {
        (
            T2CPrediction::OutOfTheoremScope,
            "no applicable criterion (insoluble, nontrivial Fitting subgroup)".to_string(),
        )
    };
    Ok(TheoremVerdict { prediction, rule })
}

const FAMILY_WITH_TH: [&str; 5] = ["J1", "J3", "J4", "Th", "Ly"];
const FAMILY_WITH_M: [&str; 5] = ["J1", "J3", "J4", "Ly", "M"];
const THEOREM_D_FACTORS: [&str; 6] = ["J1", "J3", "J4", "Th", "Ly", "M"];

fn factors_admissible(factors: &[&str]) -> bool {
    !factors.is_empty()
        && (factors.iter().all(|f| FAMILY_WITH_TH.contains(f))
            || factors.iter().all(|f| FAMILY_WITH_M.contains(f)))
}

/// Canonical names of every trivial-Fitting totally 2-closed group: the
/// nonempty products of pairwise distinct simple factors drawn entirely
/// from one of the two admissible five-factor families.
pub fn theorem_d_names() -> Vec<String> {
    let mut names = Vec::new();
    for mask in 1u32..1 << THEOREM_D_FACTORS.len() {
        let factors: Vec<&str> = THEOREM_D_FACTORS
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| *s)
            .collect();
        if factors_admissible(&factors) {
            names.push(factors.join(" x "));
        }
    }
    names
}

/// Decides the trivial-Fitting classification from a product name such as
/// `"J1 x Ly"`. Factors may be separated by `x`, `×`, or whitespace;
/// repeated factors and factors outside the two families both fail.
pub fn theorem_d_lookup(name: &str) -> bool {
    let factors: Vec<&str> = name
        .split(|c: char| c == 'x' || c == '×' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    let mut dedup = factors.clone();
    dedup.sort_unstable();
    dedup.dedup();
    dedup.len() == factors.len()
        && factors.iter().all(|f| THEOREM_D_FACTORS.contains(f))
        && factors_admissible(&factors)
}

#[derive(Debug)]
pub enum T2COutcome {
    /// A faithful representation whose closure is strictly larger; the
    /// group is definitely not totally 2-closed.
    NotTotally2Closed { witness: RepSpec, closure_order: u128 },
    /// Every candidate up to the bound was 2-closed. Never a proof of
    /// total 2-closedness — only the absence of a failure in range.
    NoFailureUpToDegree { bound: usize },
}

#[derive(Debug)]
pub struct T2CVerdict {
    pub outcome: T2COutcome,
    pub prediction: TheoremVerdict,
}

/// Default search bound: twice the group order, but at least 16.
pub fn default_max_degree(g: &PermGroup) -> Result<usize> {
    Ok(((2 * g.order()?) as usize).max(16))
}

/// Walks the faithful representations of `g` in ascending degree and
/// returns at the first one that is not 2-closed, re-verifying the witness
/// before reporting it. A witness against a structurally predicted T2C
/// verdict is escalated to [`Error::ContradictionWithTheorem`].
///
/// Only multiplicity-free candidates are scanned, which loses nothing:
/// repeated parts here are literal copies of one coset action, so the
/// orbital matching corresponding points of two copies forces every
/// closure element to act diagonally on them, and a candidate with a
/// repeated part is 2-closed exactly when its multiplicity-free projection
/// (of strictly smaller degree, hence scanned earlier) is. The equivalence
/// is also checked empirically in this module's tests.
pub fn t2c_search(g: &PermGroup, max_degree: usize) -> Result<T2CVerdict> {
    let prediction = theorem_classifier(g)?;
    let bound = max_degree.min(DEGREE_CAP);
    let ctx = SpecContext::build(g)?;
    let cached: Vec<CosetAction> = ctx
        .classes
        .iter()
        .map(|ci| coset_action(g, &ci.subgroup))
        .collect::<Result<_>>()?;
    let opts = ClosureOptions { degree_cap: bound.max(2), ..ClosureOptions::default() };
    let mut found: Option<(RepSpec, u128)> = None;
    for d in 2..=bound.max(1) {
        ctx.walk_degree(d, 1, &mut |counts| {
            let action = assemble_action(g, &ctx, &cached, counts, d)?;
            let res = two_closure_with(&action, &opts)?;
            if res.equals_input {
                return Ok(false);
            }
            verify_witness(&action, &res)?;
            found = Some((ctx.spec_from_counts(counts, d), res.closure.order()?));
            Ok(true)
        })?;
        if found.is_some() {
            break;
        }
    }
    match found {
        Some((witness, closure_order)) => {
            if prediction.prediction == T2CPrediction::T2C {
                return Err(Error::ContradictionWithTheorem(format!(
                    "{} predicts totally 2-closed, but the representation with {} \
                     has closure order {} > {}",
                    prediction.rule,
                    witness,
                    closure_order,
                    g.order()?
                )));
            }
            Ok(T2CVerdict {
                outcome: T2COutcome::NotTotally2Closed { witness, closure_order },
                prediction,
            })
        }
        None => Ok(T2CVerdict {
            outcome: T2COutcome::NoFailureUpToDegree { bound },
            prediction,
        }),
    }
}

/// Independent confirmation that a claimed witness genuinely fails: every
/// reported closure generator must preserve the orbital colors (so the
/// reported group sits inside the true closure) and must outnumber the
/// input. Small degrees are additionally checked against the literal scan.
fn verify_witness(action: &PermGroup, res: &ClosureResult) -> Result<()> {
    let part = orbital_partition(action)?;
    for gen in res.closure.generators() {
        if !preserves_colors(gen, &part) {
            return Err(Error::VerificationFailed(
                "claimed closure generator breaks an orbital color".into(),
            ));
        }
    }
    if res.closure.order()? <= action.order()? {
        return Err(Error::VerificationFailed(
            "claimed witness carries no extra symmetry".into(),
        ));
    }
    if action.degree() <= BRUTEFORCE_DEGREE_CAP
        && two_closure_bruteforce(action)?.closure.order()? != res.closure.order()?
    {
        return Err(Error::VerificationFailed(
            "backtrack and literal-scan closures disagree on the witness".into(),
        ));
    }
    Ok(())
}
