//! Piecewise right-translations and their algebra.
//!
//! A piecewise translation is a finite ordered list of (piece, translator)
//! pairs: on each piece P the map is x -> x*g_P. Pieces are exact
//! predicates decided through normal forms; explicit finite sets play the
//! Borel role and coset fibers of a subgroup the clopen one. A translation
//! may be partial (declared domain a proper piece); totalization happens
//! through lifting and section extension.

mod extend;
mod lift;
mod refine;

pub use extend::{
    extend_action, extend_by_section, extend_fundamental_domain, translation_on_cyclic_subgroup,
};
pub use lift::{lift_graph_map, VertexMap};
pub use refine::refine_subgroup_translation;

use crate::error::{Result, TlaError};
use crate::group::{GroupElement, MarkedGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceSpec {
    /// The whole group.
    All,
    /// An explicit finite set (sorted, deduplicated).
    Explicit(Vec<GroupElement>),
    /// Union of left cosets rK for r in `reps`; membership tests the
    /// canonical representative of xK against the list.
    CosetFiber {
        subgroup: Subgroup,
        reps: Vec<GroupElement>,
    },
    Intersection(Vec<PieceSpec>),
    Complement(Box<PieceSpec>),
    /// Right-translate of a piece: P*g = { p*g }.
    Translate {
        piece: Box<PieceSpec>,
        by: GroupElement,
    },
    /// Section saturation r(G/H)P: all x with r(xH)^-1 x in P. These are
    /// the pieces produced by extending a translation from a subgroup.
    SectionSaturated {
        subgroup: Subgroup,
        piece: Box<PieceSpec>,
    },
}

impl PieceSpec {
    pub fn explicit(mut elements: Vec<GroupElement>) -> Self {
        elements.sort();
        elements.dedup();
        PieceSpec::Explicit(elements)
    }

    pub fn coset_fiber(subgroup: Subgroup, reps: Vec<GroupElement>) -> Self {
        let mut canon: Vec<GroupElement> =
            reps.iter().map(|r| subgroup.canonical_rep(r)).collect();
        canon.sort();
        canon.dedup();
        PieceSpec::CosetFiber {
            subgroup,
            reps: canon,
        }
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        match self {
            PieceSpec::All => Ok(true),
            PieceSpec::Explicit(v) => Ok(v.binary_search(x).is_ok()),
            PieceSpec::CosetFiber { subgroup, reps } => {
                let r = subgroup.canonical_rep(x);
                Ok(reps.binary_search(&r).is_ok())
            }
            PieceSpec::Intersection(parts) => {
                for p in parts {
                    if !p.contains(x)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            PieceSpec::Complement(p) => Ok(!p.contains(x)?),
            PieceSpec::Translate { piece, by } => piece.contains(&x.mul(&by.inv())?),
            PieceSpec::SectionSaturated { subgroup, piece } => {
                let r = subgroup.canonical_rep(x);
                let q = r.inv().mul(x)?;
                if !subgroup.contains(&q) {
                    return Err(TlaError::SectionInconsistent {
                        witness: x.to_string(),
                    });
                }
                piece.contains(&q)
            }
        }
    }

    /// Full element list when the piece has provably finite extent.
    pub fn finite_support(&self) -> Option<Vec<GroupElement>> {
        match self {
            PieceSpec::All => None,
            PieceSpec::Explicit(v) => Some(v.clone()),
            PieceSpec::CosetFiber { subgroup, reps } => match subgroup {
                Subgroup::Finite(k) => {
                    let mut out = Vec::new();
                    for r in reps {
                        out.extend(k.left_coset(r));
                    }
                    out.sort();
                    out.dedup();
                    Some(out)
                }
                Subgroup::Cyclic(c) => {
                    if reps.is_empty() {
                        return Some(Vec::new());
                    }
                    let n = c.generator().order()?;
                    let mut out = Vec::new();
                    for r in reps {
                        let mut p = r.clone();
                        for _ in 0..n {
                            out.push(p.clone());
                            p = p.mul(c.generator()).expect("same group");
                        }
                    }
                    out.sort();
                    out.dedup();
                    Some(out)
                }
            },
            PieceSpec::Intersection(parts) => {
                let base = parts.iter().find_map(|p| p.finite_support())?;
                let mut out = Vec::new();
                'next: for x in base {
                    for p in parts {
                        if !p.contains(&x).ok()? {
                            continue 'next;
                        }
                    }
                    out.push(x);
                }
                Some(out)
            }
            PieceSpec::Complement(_) => None,
            PieceSpec::Translate { piece, by } => {
                let mut out: Vec<GroupElement> = piece
                    .finite_support()?
                    .iter()
                    .map(|p| p.mul(by).expect("same group"))
                    .collect();
                out.sort();
                Some(out)
            }
            PieceSpec::SectionSaturated { .. } => None,
        }
    }

    /// Emptiness that can be certified without window scans; pieces not
    /// certifiably empty are kept by the pruning pass.
    pub fn is_certainly_empty(&self) -> bool {
        if let Some(v) = self.finite_support() {
            return v.is_empty();
        }
        match self {
            PieceSpec::CosetFiber { reps, .. } => reps.is_empty(),
            PieceSpec::Intersection(parts) => parts.iter().any(|p| p.is_certainly_empty()),
            PieceSpec::Translate { piece, .. } => piece.is_certainly_empty(),
            PieceSpec::SectionSaturated { piece, .. } => piece.is_certainly_empty(),
            _ => false,
        }
    }

    /// Union with fast paths for explicit sets and same-subgroup fibers;
    /// the general case falls back to De Morgan.
    pub fn union_of(parts: Vec<PieceSpec>) -> PieceSpec {
        let mut parts: Vec<PieceSpec> = parts
            .into_iter()
            .filter(|p| !p.is_certainly_empty())
            .collect();
        if parts.is_empty() {
            return PieceSpec::Explicit(Vec::new());
        }
        if parts.len() == 1 {
            return parts.pop().unwrap();
        }
        if parts.iter().any(|p| matches!(p, PieceSpec::All)) {
            return PieceSpec::All;
        }
        if parts.iter().all(|p| matches!(p, PieceSpec::Explicit(_))) {
            let mut all = Vec::new();
            for p in parts {
                if let PieceSpec::Explicit(v) = p {
                    all.extend(v);
                }
            }
            return PieceSpec::explicit(all);
        }
        if let PieceSpec::CosetFiber { subgroup, .. } = &parts[0] {
            let sg = subgroup.clone();
            if parts
                .iter()
                .all(|p| matches!(p, PieceSpec::CosetFiber { subgroup, .. } if *subgroup == sg))
            {
                let mut all_reps = Vec::new();
                for p in parts {
                    if let PieceSpec::CosetFiber { reps, .. } = p {
                        all_reps.extend(reps);
                    }
                }
                all_reps.sort();
                all_reps.dedup();
                return PieceSpec::CosetFiber {
                    subgroup: sg,
                    reps: all_reps,
                };
            }
        }
        PieceSpec::Complement(Box::new(PieceSpec::Intersection(
            parts
                .into_iter()
                .map(|p| PieceSpec::Complement(Box::new(p)))
                .collect(),
        )))
    }
}

/// A bijection-by-pieces: x -> x * g_P on the unique piece P containing x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseTranslation {
    group: MarkedGroup,
    domain: PieceSpec,
    pieces: Vec<(PieceSpec, GroupElement)>,
}

impl PiecewiseTranslation {
    pub fn new(
        group: &MarkedGroup,
        domain: PieceSpec,
        pieces: Vec<(PieceSpec, GroupElement)>,
    ) -> Result<Self> {
        for (_, t) in &pieces {
            if t.group() != group {
                return Err(TlaError::MixedGroups);
            }
        }
        Ok(PiecewiseTranslation {
            group: group.clone(),
            domain,
            pieces,
        })
    }

    pub fn identity(group: &MarkedGroup) -> Self {
        Self::right_translation(&group.identity())
    }

    /// The total map x -> x*g.
    pub fn right_translation(g: &GroupElement) -> Self {
        PiecewiseTranslation {
            group: g.group().clone(),
            domain: PieceSpec::All,
            pieces: vec![(PieceSpec::All, g.clone())],
        }
    }

    pub fn group(&self) -> &MarkedGroup {
        &self.group
    }

    pub fn domain(&self) -> &PieceSpec {
        &self.domain
    }

    pub fn pieces(&self) -> &[(PieceSpec, GroupElement)] {
        &self.pieces
    }

    pub fn is_total(&self) -> bool {
        matches!(self.domain, PieceSpec::All)
    }

    /// Applies the translation, scanning every piece so that violated
    /// disjointness surfaces as `AmbiguousPieces` instead of silently
    /// picking the first match.
    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if !self.domain.contains(x)? {
            return Err(TlaError::OutsideDomain);
        }
        let mut hit: Option<&GroupElement> = None;
        for (piece, t) in &self.pieces {
            if piece.contains(x)? {
                if hit.is_some() {
                    return Err(TlaError::AmbiguousPieces {
                        witness: x.to_string(),
                    });
                }
                hit = Some(t);
            }
        }
        match hit {
            Some(t) => x.mul(t),
            None => Err(TlaError::OutsideDomain),
        }
    }

    /// Translators of pieces that are not certifiably empty, sorted.
    pub fn translator_set(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = self
            .pieces
            .iter()
            .filter(|(p, _)| !p.is_certainly_empty())
            .map(|(_, t)| t.clone())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Composition self . other (apply `other` first). Piece P_other with
    /// translator t meets piece P_self of the outer map on
    /// P_other n (P_self * t^-1), where the composite translates by
    /// t * t_self.
    pub fn compose(outer: &PiecewiseTranslation, inner: &PiecewiseTranslation) -> Result<Self> {
        if outer.group != inner.group {
            return Err(TlaError::MixedGroups);
        }
        let mut pieces = Vec::new();
        for (pi, ti) in &inner.pieces {
            for (po, to) in &outer.pieces {
                let piece = PieceSpec::Intersection(vec![
                    pi.clone(),
                    PieceSpec::Translate {
                        piece: Box::new(po.clone()),
                        by: ti.inv(),
                    },
                ]);
                pieces.push((piece, ti.mul(to)?));
            }
        }
        let pieces = normalize_pieces(pieces);
        let domain = if outer.is_total() {
            inner.domain.clone()
        } else {
            PieceSpec::union_of(pieces.iter().map(|(p, _)| p.clone()).collect())
        };
        Ok(PiecewiseTranslation {
            group: outer.group.clone(),
            domain,
            pieces,
        })
    }

    /// Composition with the domain precondition checked over probe points:
    /// the inner image must land inside the outer domain wherever the
    /// inner map is defined.
    pub fn compose_checked<'a>(
        outer: &PiecewiseTranslation,
        inner: &PiecewiseTranslation,
        points: impl Iterator<Item = &'a GroupElement>,
    ) -> Result<Self> {
        for x in points {
            if !inner.domain.contains(x)? {
                continue;
            }
            let y = inner.apply(x)?;
            if !outer.domain.contains(&y)? {
                return Err(TlaError::DomainMismatch);
            }
        }
        Self::compose(outer, inner)
    }

    /// Inverse map: piece P with translator t becomes P*t with t^-1.
    pub fn invert(&self) -> Self {
        let pieces: Vec<(PieceSpec, GroupElement)> = self
            .pieces
            .iter()
            .map(|(p, t)| {
                (
                    PieceSpec::Translate {
                        piece: Box::new(p.clone()),
                        by: t.clone(),
                    },
                    t.inv(),
                )
            })
            .collect();
        let pieces = normalize_pieces(pieces);
        let domain = if self.is_total() {
            PieceSpec::All
        } else {
            PieceSpec::union_of(pieces.iter().map(|(p, _)| p.clone()).collect())
        };
        PiecewiseTranslation {
            group: self.group.clone(),
            domain,
            pieces,
        }
    }

    /// Window-exhaustive pruning: drops pieces with no member among the
    /// probe points. When a single translator survives, the map collapses
    /// to one piece spanning the whole domain.
    pub fn pruned_on<'a>(
        &self,
        points: impl Iterator<Item = &'a GroupElement> + Clone,
    ) -> Result<Self> {
        let mut kept: Vec<(PieceSpec, GroupElement)> = Vec::new();
        for (p, t) in &self.pieces {
            let mut nonempty = false;
            for x in points.clone() {
                if p.contains(x)? {
                    nonempty = true;
                    break;
                }
            }
            if nonempty {
                kept.push((p.clone(), t.clone()));
            }
        }
        let mut translators: Vec<&GroupElement> = kept.iter().map(|(_, t)| t).collect();
        translators.sort();
        translators.dedup();
        if translators.len() == 1 {
            let t = translators[0].clone();
            kept = vec![(self.domain.clone(), t)];
        }
        Ok(PiecewiseTranslation {
            group: self.group.clone(),
            domain: self.domain.clone(),
            pieces: kept,
        })
    }

    /// Checks the partition property (every in-domain point in exactly one
    /// piece) and injectivity over the given points.
    pub fn validate_on<'a>(
        &self,
        points: impl Iterator<Item = &'a GroupElement>,
    ) -> Result<()> {
        let mut images: Vec<GroupElement> = Vec::new();
        for x in points {
            if !self.domain.contains(x)? {
                continue;
            }
            let y = self.apply(x)?; // surfaces gaps and overlaps
            match images.binary_search(&y) {
                Ok(_) => {
                    return Err(TlaError::NotBijection {
                        witness: y.to_string(),
                    })
                }
                Err(i) => images.insert(i, y),
            }
        }
        Ok(())
    }
}

/// Prunes certifiably empty pieces and merges pieces sharing a translator.
fn normalize_pieces(pieces: Vec<(PieceSpec, GroupElement)>) -> Vec<(PieceSpec, GroupElement)> {
    let kept: Vec<(PieceSpec, GroupElement)> = pieces
        .into_iter()
        .filter(|(p, _)| !p.is_certainly_empty())
        .collect();
    let mut translators: Vec<GroupElement> = kept.iter().map(|(_, t)| t.clone()).collect();
    translators.sort();
    translators.dedup();
    translators
        .into_iter()
        .map(|t| {
            let parts: Vec<PieceSpec> = kept
                .iter()
                .filter(|(_, u)| *u == t)
                .map(|(p, _)| p.clone())
                .collect();
            (PieceSpec::union_of(parts), t)
        })
        .collect()
}

/// Which group acts: Z or a free group of rank d >= 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActingGroup {
    Z,
    Free(usize),
}

impl ActingGroup {
    pub fn rank(&self) -> usize {
        match self {
            ActingGroup::Z => 1,
            ActingGroup::Free(d) => *d,
        }
    }

    pub fn tag(&self) -> String {
        match self {
            ActingGroup::Z => "Z".to_string(),
            ActingGroup::Free(d) => format!("F{d}"),
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        if s == "Z" {
            return Some(ActingGroup::Z);
        }
        let d: usize = s.strip_prefix('F')?.parse().ok()?;
        (d >= 1).then_some(ActingGroup::Free(d))
    }
}

/// Generator maps of a candidate translation-like action, plus an optional
/// claimed fundamental domain for the verifier to test.
#[derive(Debug, Clone)]
pub struct TLAction {
    pub acting: ActingGroup,
    pub generators: Vec<PiecewiseTranslation>,
    pub fundamental_domain: Option<PieceSpec>,
}

impl TLAction {
    pub fn new(
        acting: ActingGroup,
        generators: Vec<PiecewiseTranslation>,
        fundamental_domain: Option<PieceSpec>,
    ) -> Result<Self> {
        if generators.len() != acting.rank() {
            return Err(TlaError::BadAction {
                reason: format!(
                    "{} needs {} generator map(s), got {}",
                    acting.tag(),
                    acting.rank(),
                    generators.len()
                ),
            });
        }
        Ok(TLAction {
            acting,
            generators,
            fundamental_domain,
        })
    }

    pub fn group(&self) -> &MarkedGroup {
        self.generators[0].group()
    }

    /// Applies the letter `l` (1-based, negative for inverses).
    pub fn apply_letter(&self, l: i32, x: &GroupElement) -> Result<GroupElement> {
        let i = (l.unsigned_abs() as usize) - 1;
        if l > 0 {
            self.generators[i].apply(x)
        } else {
            self.generators[i].invert().apply(x)
        }
    }
}
