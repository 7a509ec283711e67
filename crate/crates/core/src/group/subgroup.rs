//! Finite subgroups, cyclic subgroups, and the coset machinery used for
//! clopen pieces and sections: exact membership and canonical left-coset
//! representatives (minimal word length, canonical-order tie-break).

use super::{ElementData, GroupElement, MarkedGroup};
use crate::error::{Result, TlaError};

/// An explicit finite subgroup of a marked group; the desk-scale stand-in
/// for a compact open subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSubgroup {
    group: MarkedGroup,
    /// Sorted by canonical element order, no duplicates.
    elements: Vec<GroupElement>,
}

impl FiniteSubgroup {
    /// Validates closure under products and inverses, presence of the
    /// identity, and absence of duplicates.
    pub fn new(group: &MarkedGroup, elements: Vec<GroupElement>) -> Result<Self> {
        let mut elems = elements;
        for e in &elems {
            if e.group() != group {
                return Err(TlaError::MixedGroups);
            }
        }
        elems.sort();
        let before = elems.len();
        elems.dedup();
        if elems.len() != before {
            return Err(TlaError::KNotSubgroup {
                reason: "duplicate elements".into(),
            });
        }
        if !elems.iter().any(|e| e.is_identity()) {
            return Err(TlaError::KNotSubgroup {
                reason: "identity missing".into(),
            });
        }
        let contains = |x: &GroupElement| elems.binary_search(x).is_ok();
        for a in &elems {
            if !contains(&a.inv()) {
                return Err(TlaError::KNotSubgroup {
                    reason: format!("inverse of {a} missing"),
                });
            }
            for b in &elems {
                let p = a.mul(b)?;
                if !contains(&p) {
                    return Err(TlaError::KNotSubgroup {
                        reason: format!("product {a}*{b} = {p} missing"),
                    });
                }
            }
        }
        Ok(FiniteSubgroup {
            group: group.clone(),
            elements: elems,
        })
    }

    /// The whole (finite) group as a subgroup of itself.
    pub fn whole_group(group: &MarkedGroup) -> Result<Self> {
        let elems = group
            .enumerate_finite()
            .ok_or_else(|| TlaError::KNotSubgroup {
                reason: "group is infinite".into(),
            })?;
        Self::new(group, elems)
    }

    pub fn group(&self) -> &MarkedGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// The left coset xK, sorted canonically.
    pub fn left_coset(&self, x: &GroupElement) -> Vec<GroupElement> {
        let mut coset: Vec<GroupElement> = self
            .elements
            .iter()
            .map(|k| x.mul(k).expect("same group"))
            .collect();
        coset.sort();
        coset
    }

    /// Canonical representative of xK: minimal word length, ties broken by
    /// canonical element order.
    pub fn canonical_left_rep(&self, x: &GroupElement) -> GroupElement {
        self.left_coset(x)
            .into_iter()
            .min_by_key(|g| (self.group.exact_length(g), g.data().clone()))
            .expect("coset is nonempty")
    }

    pub fn same_left_coset(&self, x: &GroupElement, y: &GroupElement) -> bool {
        self.contains(&y.inv().mul(x).expect("same group"))
    }

    /// Representatives r_i with `ambient = disjoint union of self * r_i`,
    /// in canonical order (the identity coset always comes first).
    pub fn right_coset_reps_in(&self, ambient: &FiniteSubgroup) -> Vec<GroupElement> {
        let mut reps = Vec::new();
        let mut covered: Vec<GroupElement> = Vec::new();
        let mut pool: Vec<GroupElement> = ambient.elements.to_vec();
        pool.sort_by_key(|g| (self.group.exact_length(g), g.data().clone()));
        for x in pool {
            if covered.binary_search(&x).is_ok() {
                continue;
            }
            for h in &self.elements {
                let y = h.mul(&x).expect("same group");
                if let Err(i) = covered.binary_search(&y) {
                    covered.insert(i, y);
                }
            }
            reps.push(x);
        }
        reps
    }
}

/// The pair (K n s^-1 K s, s K s^-1 n K). Both intersections are
/// subgroups of K of equal order (they are conjugate by s) — the
/// finite-group shadow of unimodularity.
pub fn conjugate_intersection(
    k: &FiniteSubgroup,
    s: &GroupElement,
) -> Result<(FiniteSubgroup, FiniteSubgroup)> {
    if s.group() != k.group() {
        return Err(TlaError::MixedGroups);
    }
    let s_inv = s.inv();
    let mut h1 = Vec::new();
    let mut h2 = Vec::new();
    for x in k.elements() {
        // x in s^-1 K s  <=>  s x s^-1 in K
        if k.contains(&s.mul(x)?.mul(&s_inv)?) {
            h1.push(x.clone());
        }
        // x in s K s^-1  <=>  s^-1 x s in K
        if k.contains(&s_inv.mul(x)?.mul(s)?) {
            h2.push(x.clone());
        }
    }
    Ok((
        FiniteSubgroup::new(k.group(), h1)?,
        FiniteSubgroup::new(k.group(), h2)?,
    ))
}

/// A cyclic subgroup <g>, possibly infinite. Membership and canonical coset
/// representatives are exact for every bundled group kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSubgroup {
    group: MarkedGroup,
    generator: GroupElement,
}

impl CyclicSubgroup {
    pub fn new(generator: GroupElement) -> Self {
        CyclicSubgroup {
            group: generator.group().clone(),
            generator,
        }
    }

    pub fn group(&self) -> &MarkedGroup {
        &self.group
    }

    pub fn generator(&self) -> &GroupElement {
        &self.generator
    }

    /// Finds m with g^m = x, if one exists.
    pub fn exponent_of(&self, x: &GroupElement) -> Option<i64> {
        let g = &self.generator;
        match g.order() {
            Some(n) => {
                let mut p = self.group.identity();
                for j in 0..n {
                    if &p == x {
                        return Some(j as i64);
                    }
                    p = p.mul(g).expect("same group");
                }
                None
            }
            None => {
                let m = candidate_exponent(g, x)?;
                (g.pow(m) == *x).then_some(m)
            }
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.exponent_of(x).is_some()
    }

    /// Canonical representative of the left coset x<g>: scans x*g^n,
    /// stopping once the power alone outweighs the best candidate.
    pub fn canonical_left_rep(&self, x: &GroupElement) -> GroupElement {
        let g = &self.generator;
        if let Some(n) = g.order() {
            // Finite cyclic subgroup: enumerate the whole coset.
            let mut best = x.clone();
            let mut bkey = (self.group.exact_length(x), x.data().clone());
            let mut p = x.clone();
            for _ in 1..n {
                p = p.mul(g).expect("same group");
                let key = (self.group.exact_length(&p), p.data().clone());
                if key < bkey {
                    bkey = key;
                    best = p.clone();
                }
            }
            return best;
        }
        let len_x = self.group.exact_length(x);
        let mut best = x.clone();
        let mut bkey = (len_x, x.data().clone());
        let mut pos = x.clone();
        let mut neg = x.clone();
        let g_inv = g.inv();
        let mut n: u64 = 0;
        loop {
            n += 1;
            pos = pos.mul(g).expect("same group");
            neg = neg.mul(&g_inv).expect("same group");
            for cand in [&pos, &neg] {
                let key = (self.group.exact_length(cand), cand.data().clone());
                if key < bkey {
                    bkey = key;
                    best = cand.clone();
                }
            }
            // |x g^n| >= |g^n| - |x|, and |g^n| grows without bound for an
            // infinite-order generator in every supported kind.
            let pow_len = self
                .group
                .exact_length(&g.pow(n as i64))
                .min(self.group.exact_length(&g.pow(-(n as i64))));
            if pow_len > bkey.0 + len_x {
                return best;
            }
        }
    }
}

/// Exponent candidate for infinite-order g, read off the normal form.
/// The caller re-verifies with an exact power computation.
fn candidate_exponent(g: &GroupElement, x: &GroupElement) -> Option<i64> {
    fn go(g: &ElementData, x: &ElementData) -> Option<i64> {
        match (g, x) {
            (ElementData::Vector(gv), ElementData::Vector(xv)) => {
                let i = gv.iter().position(|&c| c != 0)?;
                if xv[i] % gv[i] != 0 {
                    return None;
                }
                Some(xv[i] / gv[i])
            }
            (ElementData::Word(gw), ElementData::Word(xw)) => {
                // Cyclic reduction g = u c u^-1 with c cyclically reduced.
                let mut lo = 0usize;
                let mut hi = gw.len();
                while hi - lo >= 2 && gw[lo] == -gw[hi - 1] {
                    lo += 1;
                    hi -= 1;
                }
                let u = &gw[..lo];
                let c = &gw[lo..hi];
                if c.is_empty() {
                    return if xw.is_empty() { Some(0) } else { None };
                }
                // v = u^-1 x u, freely reduced.
                let mut v: Vec<i8> = Vec::new();
                let push = |v: &mut Vec<i8>, l: i8| {
                    if v.last().is_some_and(|&t| t == -l) {
                        v.pop();
                    } else {
                        v.push(l);
                    }
                };
                for &l in u.iter().rev() {
                    push(&mut v, -l);
                }
                for &l in xw {
                    push(&mut v, l);
                }
                for &l in u {
                    push(&mut v, l);
                }
                if !v.len().is_multiple_of(c.len()) {
                    return None;
                }
                Some((v.len() / c.len()) as i64 * if v.first() == c.first() { 1 } else { -1 })
            }
            (
                ElementData::Lamp { shift: gk, .. },
                ElementData::Lamp { shift: xk, .. },
            ) => {
                if *gk == 0 || xk % gk != 0 {
                    return None;
                }
                Some(xk / gk)
            }
            (ElementData::Pair(gl, _), ElementData::Pair(xl, _)) => go(gl, xl),
            _ => None,
        }
    }
    go(g.data(), x.data())
}

/// A subgroup with decidable membership and a deterministic coset
/// representative function — the single global section rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subgroup {
    Finite(FiniteSubgroup),
    Cyclic(CyclicSubgroup),
}

impl Subgroup {
    pub fn group(&self) -> &MarkedGroup {
        match self {
            Subgroup::Finite(k) => k.group(),
            Subgroup::Cyclic(c) => c.group(),
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        match self {
            Subgroup::Finite(k) => k.contains(x),
            Subgroup::Cyclic(c) => c.contains(x),
        }
    }

    /// Canonical representative r(xH) of the left coset xH.
    pub fn canonical_rep(&self, x: &GroupElement) -> GroupElement {
        match self {
            Subgroup::Finite(k) => k.canonical_left_rep(x),
            Subgroup::Cyclic(c) => c.canonical_left_rep(x),
        }
    }
}
