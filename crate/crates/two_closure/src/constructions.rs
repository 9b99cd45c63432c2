//! Builders for the group actions the closure theorems quantify over:
//! direct products in both natural actions, imprimitive wreath products,
//! coset actions, the universal embedding of a group into N ≀ G/N, and the
//! iterated-wreath Sylow p-subgroup of Sym(p^k).
//!
//! Product-like actions always encode the pair (α, β) as `α·deg2 + β` so
//! that independently built actions compare bit-for-bit.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEGREE_CAP};
use crate::perm::{gcd, Perm};
use crate::structure::{is_prime, join};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ActionKind {
    Natural,
    Coset { index: usize },
    DisjointUnion { parts: Vec<usize> },
    Product { parts: Vec<usize> },
    WreathImprimitive { base: usize, top: usize },
    UniversalEmbedding { delta: usize, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionLabel {
    pub kind: ActionKind,
    pub degree: usize,
}

impl ActionLabel {
    /// Builds the label, rejecting degrees that disagree with the
    /// arithmetic the kind implies.
    pub fn new(kind: ActionKind, degree: usize) -> Result<Self> {
        let expected = match &kind {
            ActionKind::Natural => degree,
            ActionKind::Coset { index } => *index,
            ActionKind::DisjointUnion { parts } => parts.iter().sum(),
            ActionKind::Product { parts } => parts.iter().product(),
            ActionKind::WreathImprimitive { base, top } => base * top,
            ActionKind::UniversalEmbedding { delta, index } => delta * index,
        };
        if degree == 0 || degree != expected {
            return Err(Error::BadParameter(format!(
                "label degree {degree} does not match its kind (expected {expected})"
            )));
        }
        Ok(ActionLabel { kind, degree })
    }
}

/// G1 ⊕ G2 acting on the disjoint union of their point sets; the first
/// factor keeps its points, the second is shifted up by `deg1`.
pub fn disjoint_direct_product(g1: &PermGroup, g2: &PermGroup) -> Result<PermGroup> {
    let (d1, d2) = (g1.degree(), g2.degree());
    let mut gens = Vec::new();
    for a in g1.generators() {
        let mut images: Vec<usize> = (0..d1 + d2).collect();
        images[..d1].copy_from_slice(a.images());
        gens.push(Perm::from_images(images)?);
    }
    for b in g2.generators() {
        let mut images: Vec<usize> = (0..d1 + d2).collect();
        for (i, &im) in b.images().iter().enumerate() {
            images[d1 + i] = d1 + im;
        }
        gens.push(Perm::from_images(images)?);
    }
    PermGroup::new(d1 + d2, gens)
}

/// G1 × G2 acting coordinatewise on Ω1 × Ω2. Both factors must be
/// transitive; (α, β)^(g1,g2) = (α^g1, β^g2).
pub fn product_action_direct_product(g1: &PermGroup, g2: &PermGroup) -> Result<PermGroup> {
    if !g1.is_transitive() || !g2.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let (d1, d2) = (g1.degree(), g2.degree());
    let mut gens = Vec::new();
    for a in g1.generators() {
        let images = (0..d1 * d2)
            .map(|x| a.apply(x / d2) * d2 + x % d2)
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    for b in g2.generators() {
        let images = (0..d1 * d2)
            .map(|x| (x / d2) * d2 + b.apply(x % d2))
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    PermGroup::new(d1 * d2, gens)
}

/// G1 ≀ G2 in its imprimitive action on Ω1 × Ω2: one base copy of G1 per
/// block Ω1 × {β}, and the top group permuting the blocks.
pub fn imprimitive_wreath(g1: &PermGroup, g2: &PermGroup) -> Result<PermGroup> {
    let (d1, d2) = (g1.degree(), g2.degree());
    let mut gens = Vec::new();
    for beta in 0..d2 {
        for a in g1.generators() {
            let images = (0..d1 * d2)
                .map(|x| {
                    if x % d2 == beta {
                        a.apply(x / d2) * d2 + beta
                    } else {
                        x
                    }
                })
                .collect();
            gens.push(Perm::from_images(images)?);
        }
    }
    for b in g2.generators() {
        let images = (0..d1 * d2)
            .map(|x| (x / d2) * d2 + b.apply(x % d2))
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    PermGroup::new(d1 * d2, gens)
}

/// The Sylow p-subgroup of Sym(p^k) as the k-fold iterated wreath product
/// of the cyclic group of order p; its order is p^((p^k−1)/(p−1)).
pub fn sylow_tower_of_symmetric(p: u64, k: u32) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::BadParameter("tower height must be positive".into()));
    }
    let degree = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    if degree > DEGREE_CAP as u128 {
        return Err(Error::DegreeCapExceeded {
            degree: degree.min(usize::MAX as u128) as usize,
            cap: DEGREE_CAP,
        });
    }
    let cp = PermGroup::cyclic(p as usize);
    let mut tower = cp.clone();
    for _ in 1..k {
        tower = imprimitive_wreath(&tower, &cp)?;
    }
    Ok(tower)
}

/// The elementary abelian group C_p^k acting regularly on p^k points;
/// points are base-p digit strings, generator i adds one to digit i.
pub fn elementary_abelian_regular(p: u64, k: u32) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::BadParameter("rank must be positive".into()));
    }
    let degree = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    if degree > DEGREE_CAP as u128 {
        return Err(Error::DegreeCapExceeded {
            degree: degree.min(usize::MAX as u128) as usize,
            cap: DEGREE_CAP,
        });
    }
    let degree = degree as usize;
    let p = p as usize;
    let mut gens = Vec::new();
    for i in 0..k {
        let stride = p.pow(i);
        let images = (0..degree)
            .map(|x| {
                let digit = (x / stride) % p;
                x - digit * stride + ((digit + 1) % p) * stride
            })
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    PermGroup::new(degree, gens)
}

/// The action of G on the right cosets of H, with the homomorphism data
/// needed to push arbitrary elements of G through it.
pub struct CosetAction {
    pub action: PermGroup,
    /// Image of each generator of G, in generator order.
    pub gen_images: Vec<Perm>,
    /// Coset representatives; point 0 is the coset H·1.
    pub transversal: Vec<Perm>,
    group: PermGroup,
    subgroup: PermGroup,
}

impl CosetAction {
    /// Image of an arbitrary element of G under the coset action.
    pub fn act(&self, g: &Perm) -> Result<Perm> {
        if !self.group.contains(g)? {
            return Err(Error::BadParameter(
                "element does not belong to the acting group".into(),
            ));
        }
        let n = self.transversal.len();
        let mut images = Vec::with_capacity(n);
        for t in &self.transversal {
            let moved = t * g;
            let j = self
                .coset_index(&moved)?
                .expect("t·g lies in some coset of H");
            images.push(j);
        }
        Perm::from_images(images)
    }

    fn coset_index(&self, x: &Perm) -> Result<Option<usize>> {
        for (j, t) in self.transversal.iter().enumerate() {
            if self.subgroup.contains(&(x * &t.inverse()))? {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }
}

/// Builds the right-coset action of G on H\G. Cosets are discovered
/// breadth-first from H·1 by the generators, which fixes the point order.
pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<CosetAction> {
    if h.degree() != g.degree() {
        return Err(Error::NotASubgroup(
            "subgroup must act on the same points as the group".into(),
        ));
    }
    for s in h.generators() {
        if !g.contains(s)? {
            return Err(Error::NotASubgroup(format!("generator {s} lies outside the group")));
        }
    }
    let index = g.order()? / h.order()?;
    if index > DEGREE_CAP as u128 {
        return Err(Error::DegreeCapExceeded { degree: index as usize, cap: DEGREE_CAP });
    }
    let mut transversal = vec![Perm::identity(g.degree())];
    let mut head = 0;
    while head < transversal.len() {
        let r = transversal[head].clone();
        head += 1;
        for x in g.generators() {
            let cand = &r * x;
            let mut known = false;
            for t in &transversal {
                if h.contains(&(&cand * &t.inverse()))? {
                    known = true;
                    break;
                }
            }
            if !known {
                transversal.push(cand);
            }
        }
    }
    assert_eq!(transversal.len() as u128, index, "coset count must equal the index");
    let out = CosetAction {
        action: PermGroup::trivial(transversal.len().max(1)),
        gen_images: Vec::new(),
        transversal,
        group: g.clone(),
        subgroup: h.clone(),
    };
    let gen_images: Vec<Perm> = g
        .generators()
        .iter()
        .map(|x| out.act(x))
        .collect::<Result<_>>()?;
    let action = PermGroup::new(out.transversal.len(), gen_images.clone())?;
    Ok(CosetAction { action, gen_images, ..out })
}

/// Extends the generator assignment `dom.generators()[i] ↦ images[i]` to a
/// homomorphism on all of `dom`, failing if the relations of `dom` are not
/// respected. Returns the full element-to-image map.
pub fn extend_homomorphism(
    dom: &PermGroup,
    images: &[Perm],
    target_degree: usize,
) -> Result<HashMap<Perm, Perm>> {
    if images.len() != dom.generators().len() {
        return Err(Error::BadParameter(
            "need exactly one image per domain generator".into(),
        ));
    }
    if images.iter().any(|p| p.degree() != target_degree) {
        return Err(Error::BadParameter("generator images have the wrong degree".into()));
    }
    let mut map: HashMap<Perm, Perm> = HashMap::new();
    map.insert(Perm::identity(dom.degree()), Perm::identity(target_degree));
    let mut queue = vec![Perm::identity(dom.degree())];
    let mut head = 0;
    while head < queue.len() {
        let w = queue[head].clone();
        head += 1;
        let im_w = map[&w].clone();
        for (s, im_s) in dom.generators().iter().zip(images) {
            let w2 = &w * s;
            let im2 = &im_w * im_s;
            match map.get(&w2) {
                Some(existing) => {
                    if *existing != im2 {
                        return Err(Error::NotAHomomorphism);
                    }
                }
                None => {
                    map.insert(w2.clone(), im2);
                    queue.push(w2);
                }
            }
        }
    }
    Ok(map)
}

/// The action of G on Δ × (G/N) built from a faithful action of the normal
/// subgroup N, together with the data needed to embed arbitrary elements.
pub struct UniversalEmbedding {
    pub action: PermGroup,
    /// Image of each generator of G, in generator order.
    pub gen_images: Vec<Perm>,
    /// Coset representatives t_u of N in G, each the element of smallest
    /// chain rank in its coset; index 0 is N itself.
    pub transversal: Vec<Perm>,
    pub delta_degree: usize,
    group: PermGroup,
    normal: PermGroup,
    delta_group: PermGroup,
    coset_of: HashMap<Perm, usize>,
    hom: HashMap<Perm, Perm>,
}

impl UniversalEmbedding {
    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    /// Image of x ∈ G on Δ × (G/N): (δ, k) ↦ (δ^{f_x(k)}, kψ(x)) with
    /// f_x(k) = t_k · x · t_{kψ(x)}⁻¹ ∈ N.
    pub fn embed(&self, x: &Perm) -> Result<Perm> {
        if !self.group.contains(x)? {
            return Err(Error::BadParameter(
                "element does not belong to the embedded group".into(),
            ));
        }
        let k_count = self.transversal.len();
        let mut images = vec![0usize; self.delta_degree * k_count];
        for k in 0..k_count {
            let moved = &self.transversal[k] * x;
            let k_im = self.coset_of[&moved];
            let f = &moved * &self.transversal[k_im].inverse();
            let delta_perm = self
                .hom
                .get(&f)
                .expect("f_x(k) lands in the normal subgroup");
            for delta in 0..self.delta_degree {
                images[delta * k_count + k] = delta_perm.apply(delta) * k_count + k_im;
            }
        }
        Perm::from_images(images)
    }

    /// Checks that the restriction to N splits into [G:N] orbits — the
    /// blocks Δ × {k} — and that on each block it is the Δ-action carried
    /// over by the conjugating map n ↦ t_k·n·t_k⁻¹.
    pub fn verify_n_restriction(&self) -> Result<()> {
        let k_count = self.transversal.len();
        let n_images: Vec<Perm> = self
            .normal
            .generators()
            .iter()
            .map(|s| self.embed(s))
            .collect::<Result<_>>()?;
        let n_image = PermGroup::new(self.delta_degree * k_count, n_images)?;
        let orbits = n_image.orbits();
        if self.delta_group.is_transitive()
            && (orbits.len() != k_count || orbits.iter().any(|o| o.len() != self.delta_degree)) {
                return Err(Error::VerificationFailed(format!(
                    "expected {k_count} N-orbits of size {}, found sizes {:?}",
                    self.delta_degree,
                    orbits.iter().map(Vec::len).collect::<Vec<_>>()
                )));
            }
        for k in 0..k_count {
            let block: Vec<usize> = (0..self.delta_degree).map(|d| d * k_count + k).collect();
            let restricted = n_image.restrict_to(&block)?;
            if !restricted.equals(&self.delta_group)? {
                return Err(Error::VerificationFailed(format!(
                    "N-restriction on block {k} is not the Δ-action"
                )));
            }
        }
        Ok(())
    }
}

/// Builds the universal embedding action of G on Δ × (G/N) from a normal
/// subgroup N and a faithful image of it: `delta_images[i]` is the image
/// of `n.generators()[i]` on the points 0..delta_degree.
pub fn universal_embedding_action(
    g: &PermGroup,
    n: &PermGroup,
    delta_images: &[Perm],
    delta_degree: usize,
) -> Result<UniversalEmbedding> {
    if n.degree() != g.degree() {
        return Err(Error::NotNormal);
    }
    for s in n.generators() {
        if !g.contains(s)? {
            return Err(Error::NotNormal);
        }
        for x in g.generators() {
            if !n.contains(&s.conjugate_by(x)?)? {
                return Err(Error::NotNormal);
            }
        }
    }
    let hom = extend_homomorphism(n, delta_images, delta_degree)?;
    let image_count = hom.values().collect::<std::collections::HashSet<_>>().len();
    if image_count as u128 != n.order()? {
        return Err(Error::UnfaithfulDeltaAction(format!(
            "kernel has order {}",
            n.order()? / image_count as u128
        )));
    }
    // Cosets of N in chain-rank order: sweeping the elements of G in chain
    // order, the first element seen of each coset is its representative.
    let elems = g.elements()?;
    let n_elems = n.elements()?;
    let mut transversal: Vec<Perm> = Vec::new();
    let mut coset_of: HashMap<Perm, usize> = HashMap::new();
    for e in &elems {
        if coset_of.contains_key(e) {
            continue;
        }
        let id = transversal.len();
        for m in &n_elems {
            coset_of.insert(m * e, id);
        }
        transversal.push(e.clone());
    }
    let delta_group = PermGroup::new(
        delta_degree,
        delta_images.to_vec(),
    )?;
    let out = UniversalEmbedding {
        action: PermGroup::trivial(delta_degree * transversal.len()),
        gen_images: Vec::new(),
        transversal,
        delta_degree,
        group: g.clone(),
        normal: n.clone(),
        delta_group,
        coset_of,
        hom,
    };
    let gen_images: Vec<Perm> = g
        .generators()
        .iter()
        .map(|x| out.embed(x))
        .collect::<Result<_>>()?;
    let action = PermGroup::new(out.delta_degree * out.transversal.len(), gen_images.clone())?;
    assert_eq!(
        action.order()?,
        g.order()?,
        "the universal embedding action must be faithful"
    );
    Ok(UniversalEmbedding { action, gen_images, ..out })
}

/// Witness that a transitive action of a coprime direct product G = H·K is
/// the product action on α^H × α^K: the relabeling map plus the product
/// group it intertwines with.
pub struct CoprimeEquivalence {
    /// Sorted H-orbit and K-orbit of the base point.
    pub omega1: Vec<usize>,
    pub omega2: Vec<usize>,
    /// `bijection[ω] = i·|Ω2| + j` where α^{hk} = ω, α^h = omega1[i],
    /// α^k = omega2[j].
    pub bijection: Vec<usize>,
    /// H|Ω1 × K|Ω2 in the product action, generator order H then K.
    pub product: PermGroup,
}

/// Lemma-style equivalence: G = HK transitive with coprime commuting
/// factors acts as H × K on the grid α^H × α^K. The returned bijection is
/// checked to intertwine every generator of both factors.
pub fn coprime_product_equivalence_witness(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    alpha: usize,
) -> Result<CoprimeEquivalence> {
    if h.degree() != g.degree() || k.degree() != g.degree() {
        return Err(Error::NotAFactorization("factors act on different points".into()));
    }
    for s in h.generators().iter().chain(k.generators()) {
        if !g.contains(s)? {
            return Err(Error::NotAFactorization(
                "factor generators lie outside the group".into(),
            ));
        }
    }
    if gcd(h.order()?, k.order()?) != 1 {
        return Err(Error::NotCoprime);
    }
    for a in h.generators() {
        for b in k.generators() {
            if (a * b) != (b * a) {
                return Err(Error::NotAFactorization("factors do not commute".into()));
            }
        }
    }
    if h.order()? * k.order()? != g.order()? || !join(h, k)?.equals(g)? {
        return Err(Error::NotAFactorization(
            "the factors do not multiply out to the group".into(),
        ));
    }
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let omega1 = h.orbit(alpha)?;
    let omega2 = k.orbit(alpha)?;
    let pos1: HashMap<usize, usize> = omega1.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let pos2: HashMap<usize, usize> = omega2.iter().enumerate().map(|(j, &p)| (p, j)).collect();
    let mut bijection = vec![usize::MAX; g.degree()];
    for eh in h.elements()? {
        let i = pos1[&eh.apply(alpha)];
        for ek in k.elements()? {
            let j = pos2[&ek.apply(alpha)];
            let omega = ek.apply(eh.apply(alpha));
            let code = i * omega2.len() + j;
            if bijection[omega] == usize::MAX {
                bijection[omega] = code;
            } else {
                assert_eq!(
                    bijection[omega], code,
                    "coprimality must make the grid coordinates well defined"
                );
            }
        }
    }
    assert!(
        bijection.iter().all(|&c| c != usize::MAX),
        "transitivity must cover every point"
    );
    let product =
        product_action_direct_product(&h.restrict_to(&omega1)?, &k.restrict_to(&omega2)?)?;
    // The product generators are the restricted factor generators in
    // order; check the bijection intertwines each of them.
    let factor_gens: Vec<&Perm> = h.generators().iter().chain(k.generators()).collect();
    assert_eq!(factor_gens.len(), product.generators().len());
    for (orig, prod) in factor_gens.iter().zip(product.generators()) {
        for omega in 0..g.degree() {
            assert_eq!(
                bijection[orig.apply(omega)],
                prod.apply(bijection[omega]),
                "bijection must intertwine the actions"
            );
        }
    }
    Ok(CoprimeEquivalence { omega1, omega2, bijection, product })
}
