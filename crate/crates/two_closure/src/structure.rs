//! Group-structure predicates: solubility, nilpotency, Sylow subgroups,
//! `O_p`, the Fitting subgroup, and the classification tag that decides
//! which groups are cyclic or an odd cyclic times a generalized quaternion
//! group — the two shapes the soluble classification singles out.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{PermGroup, ELEMENT_ENUM_CAP};
use crate::perm::{lcm, Perm};
use crate::subgroups::{centralizer, core};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division: (prime, exponent) pairs.
pub fn factorize(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// The subgroup generated by both groups' generators.
pub fn join(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { left: a.degree(), right: b.degree() });
    }
    let gens: Vec<Perm> = a.generators().iter().chain(b.generators()).cloned().collect();
    PermGroup::new(a.degree(), gens)
}

/// The smallest subgroup containing `seeds` and closed under conjugation
/// by `ambient`'s generators: the normal closure of ⟨seeds⟩ in the ambient
/// group, assuming the seeds lie in it.
pub fn normal_closure(ambient: &PermGroup, seeds: &[Perm]) -> Result<PermGroup> {
    let degree = ambient.degree();
    let mut gens: Vec<Perm> = Vec::new();
    let mut queue: Vec<Perm> = Vec::new();
    for s in seeds {
        if !s.is_identity() && !gens.contains(s) {
            gens.push(s.clone());
            queue.push(s.clone());
        }
    }
    let mut grp = PermGroup::new(degree, gens.clone())?;
    let mut head = 0;
    while head < queue.len() {
        let w = queue[head].clone();
        head += 1;
        for x in ambient.generators() {
            let c = w.conjugate_by(x)?;
            if !grp.contains(&c)? {
                gens.push(c.clone());
                queue.push(c);
                grp = PermGroup::new(degree, gens.clone())?;
            }
        }
    }
    Ok(grp)
}

pub fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if (a * b) != (b * a) {
                return false;
            }
        }
    }
    true
}

/// `[H, H]`: the normal closure in `h` of the generator commutators.
pub fn derived_subgroup(h: &PermGroup) -> Result<PermGroup> {
    if is_abelian(h) {
        return Ok(PermGroup::trivial(h.degree()));
    }
    let gens = h.generators();
    let mut comms = Vec::new();
    for a in gens {
        for b in gens {
            comms.push(&(&a.inverse() * &b.inverse()) * &(a * b));
        }
    }
    normal_closure(h, &comms)
}

/// Derived series until it stabilizes; ends with the trivial group exactly
/// when `g` is soluble.
pub fn derived_series(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let next = derived_subgroup(last)?;
        if next.order()? == last.order()? {
            break;
        }
        let done = next.is_trivial_group();
        series.push(next);
        if done {
            break;
        }
    }
    Ok(series)
}

pub fn is_soluble(g: &PermGroup) -> Result<bool> {
    Ok(derived_series(g)?.last().unwrap().is_trivial_group())
}

/// Lower central series until it stabilizes; hits the trivial group exactly
/// when `g` is nilpotent.
pub fn lower_central_series(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let mut comms = Vec::new();
        for a in last.generators() {
            for b in g.generators() {
                comms.push(&(&a.inverse() * &b.inverse()) * &(a * b));
            }
        }
        let next = normal_closure(g, &comms)?;
        if next.order()? == last.order()? {
            break;
        }
        let done = next.is_trivial_group();
        series.push(next);
        if done {
            break;
        }
    }
    Ok(series)
}

/// Nilpotency via the lower central series reaching the trivial group.
/// Needs no element enumeration, so it works beyond the scan caps.
pub fn is_nilpotent(g: &PermGroup) -> Result<bool> {
    Ok(lower_central_series(g)?.last().unwrap().is_trivial_group())
}

/// A Sylow p-subgroup, grown by the normalizer climb: while `P` is smaller
/// than the full p-part, some coset of `P` in its normalizer has order
/// divisible by p and donates a new generator.
pub fn sylow_subgroup(g: &PermGroup, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = g.order()?;
    let mut p_part: u128 = 1;
    {
        let mut n = order;
        while n % p as u128 == 0 {
            n /= p as u128;
            p_part *= p as u128;
        }
    }
    let mut syl = PermGroup::trivial(g.degree());
    if p_part == 1 {
        return Ok(syl);
    }
    let elems = g.elements()?;
    while syl.order()? < p_part {
        // Normalizer of the current P by element scan.
        let normalizing: Vec<&Perm> = elems
            .iter()
            .filter(|x| {
                syl.generators()
                    .iter()
                    .all(|s| syl.contains(&s.conjugate_by(x).expect("same degree")).unwrap())
            })
            .collect();
        let mut grew = false;
        for y in normalizing {
            if syl.contains(y)? {
                continue;
            }
            // Order of the coset yP: least t ≥ 1 with y^t ∈ P.
            let mut acc = y.clone();
            let mut t = 1u64;
            while !syl.contains(&acc)? {
                acc = &acc * y;
                t += 1;
            }
            if t.is_multiple_of(p) {
                let mut gen = y.clone();
                for _ in 1..(t / p) {
                    gen = &gen * y;
                }
                syl = join(&syl, &PermGroup::new(g.degree(), vec![gen])?)?;
                grew = true;
                break;
            }
        }
        assert!(grew, "normalizer of a non-Sylow p-subgroup must grow it");
    }
    Ok(syl)
}

/// `O_p(G)`: the core of a Sylow p-subgroup, i.e. the intersection of all
/// of them — the largest normal p-subgroup.
pub fn o_p(g: &PermGroup, p: u64) -> Result<PermGroup> {
    core(g, &sylow_subgroup(g, p)?)
}

/// The Fitting subgroup: the join of the `O_p(G)` over primes dividing the
/// order. Verified nilpotent and normal before returning.
pub fn fitting_subgroup(g: &PermGroup) -> Result<PermGroup> {
    let mut fit = PermGroup::trivial(g.degree());
    for (p, _) in factorize(g.order()?) {
        fit = join(&fit, &o_p(g, p)?)?;
    }
    assert!(is_nilpotent(&fit)?, "Fitting subgroup must be nilpotent");
    for c in fit.generators() {
        for x in g.generators() {
            assert!(fit.contains(&c.conjugate_by(x)?)?, "Fitting subgroup must be normal");
        }
    }
    Ok(fit)
}

/// Cyclicity without element enumeration: abelian, and the lcm of the
/// generator orders (the exponent of an abelian group) equals the order.
pub fn is_cyclic(g: &PermGroup) -> Result<bool> {
    if !is_abelian(g) {
        return Ok(false);
    }
    let exponent = g
        .generators()
        .iter()
        .map(|p| p.order())
        .fold(1u128, lcm);
    Ok(exponent == g.order()?)
}

/// Non-cyclic 2-group of order ≥ 8 with a unique involution.
pub fn is_generalized_quaternion(g: &PermGroup) -> Result<bool> {
    let order = g.order()?;
    if order < 8 || !order.is_power_of_two() || is_cyclic(g)? {
        return Ok(false);
    }
    let involutions = g
        .elements()?
        .iter()
        .filter(|e| e.order() == 2)
        .count();
    Ok(involutions == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassificationTag {
    Cyclic,
    OddCyclicTimesGeneralizedQuaternion,
    Other,
}

impl ClassificationTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassificationTag::Cyclic => "cyclic",
            ClassificationTag::OddCyclicTimesGeneralizedQuaternion => {
                "odd-cyclic-times-generalized-quaternion"
            }
            ClassificationTag::Other => "other",
        }
    }
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub order: u128,
    pub is_abelian: bool,
    pub is_cyclic: bool,
    /// `Some(p)` when the order is a positive power of the prime p.
    pub p_group: Option<u64>,
    pub is_nilpotent: bool,
    pub is_soluble: bool,
    pub is_generalized_quaternion: bool,
    pub center_order: u128,
    pub fitting_order: u128,
    pub classification_tag: ClassificationTag,
}

/// Decides the tag: is `g` the direct product of a cyclic odd-order group
/// and a generalized quaternion group, both normal? The odd Hall part is
/// taken to be the set of odd-order elements when that set is closed.
fn classification_tag(g: &PermGroup, cyclic: bool) -> Result<ClassificationTag> {
    if cyclic {
        return Ok(ClassificationTag::Cyclic);
    }
    let elems = g.elements()?;
    let odd: Vec<Perm> = elems.iter().filter(|e| e.order() % 2 == 1).cloned().collect();
    let two: Vec<Perm> = elems
        .iter()
        .filter(|e| e.order().is_power_of_two())
        .cloned()
        .collect();
    let odd_part = PermGroup::new(g.degree(), odd.clone())?;
    let two_part = PermGroup::new(g.degree(), two.clone())?;
    // Both element sets must be closed (then they are the Hall 2′-part and
    // the Sylow 2-subgroup), the odd part cyclic, the 2-part generalized
    // quaternion, jointly exhausting the group, and each normal.
    let closed = odd_part.order()? == odd.len() as u128
        && two_part.order()? == two.len() as u128;
    if !closed {
        return Ok(ClassificationTag::Other);
    }
    if !is_cyclic(&odd_part)? || !is_generalized_quaternion(&two_part)? {
        return Ok(ClassificationTag::Other);
    }
    if odd_part.order()? * two_part.order()? != g.order()? {
        return Ok(ClassificationTag::Other);
    }
    for part in [&odd_part, &two_part] {
        for s in part.generators() {
            for x in g.generators() {
                if !part.contains(&s.conjugate_by(x)?)? {
                    return Ok(ClassificationTag::Other);
                }
            }
        }
    }
    Ok(ClassificationTag::OddCyclicTimesGeneralizedQuaternion)
}

/// Computes the full report. Requires `|G| ≤ 5040` for the element scans;
/// nilpotency is additionally cross-checked against "every Sylow subgroup
/// is normal".
pub fn structure_report(g: &PermGroup) -> Result<StructureReport> {
    let order = g.order()?;
    if order > ELEMENT_ENUM_CAP {
        return Err(Error::OrderCapExceeded { cap: ELEMENT_ENUM_CAP });
    }
    let abelian = is_abelian(g);
    let cyclic = is_cyclic(g)?;
    let factors = factorize(order);
    let p_group = match factors.as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    };
    let nilpotent = is_nilpotent(g)?;
    let all_sylow_normal = factors.iter().all(|&(p, _)| {
        let syl = sylow_subgroup(g, p).expect("p is prime and order within caps");
        syl.generators().iter().all(|s| {
            g.generators()
                .iter()
                .all(|x| syl.contains(&s.conjugate_by(x).unwrap()).unwrap())
        })
    });
    assert_eq!(
        nilpotent, all_sylow_normal,
        "lower central series and Sylow-normality must agree on nilpotency"
    );
    let soluble = is_soluble(g)?;
    let report = StructureReport {
        order,
        is_abelian: abelian,
        is_cyclic: cyclic,
        p_group,
        is_nilpotent: nilpotent,
        is_soluble: soluble,
        is_generalized_quaternion: is_generalized_quaternion(g)?,
        center_order: centralizer(g, g)?.order()?,
        fitting_order: fitting_subgroup(g)?.order()?,
        classification_tag: classification_tag(g, cyclic)?,
    };
    assert!(!report.is_cyclic || report.is_abelian);
    assert!(!report.is_abelian || report.is_nilpotent);
    assert!(!report.is_nilpotent || report.is_soluble);
    assert_eq!(report.is_cyclic, report.classification_tag == ClassificationTag::Cyclic);
    Ok(report)
}

/// Largest normal nilpotent subgroup found by scanning the full subgroup
/// lattice: the desk-scale cross-check oracle for [`fitting_subgroup`].
pub fn fitting_by_lattice_scan(g: &PermGroup) -> Result<PermGroup> {
    let lat = crate::subgroups::enumerate_subgroups(g)?;
    let mut best: Option<PermGroup> = None;
    for (i, sub) in lat.subgroups.iter().enumerate() {
        // Normal subgroups are singleton conjugacy classes.
        if lat.classes[lat.class_of[i]].len() != 1 {
            continue;
        }
        let cand = lat.table.to_group(sub);
        if is_nilpotent(&cand)? {
            let better = match &best {
                None => true,
                Some(b) => cand.order()? > b.order()?,
            };
            if better {
                best = Some(cand);
            }
        }
    }
    Ok(best.unwrap_or_else(|| PermGroup::trivial(g.degree())))
}
