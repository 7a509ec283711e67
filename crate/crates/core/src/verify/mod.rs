//! Certification and refutation of translation-like action claims on
//! windows. Refuted certificates always carry a concrete, replayable
//! witness; windows cannot prove statements about the infinite object, so
//! inconclusive is a first-class verdict and the verifier never
//! extrapolates.

use crate::construct::{ForestAction, PathAction};
use crate::error::{Result, TlaError};
use crate::group::GroupElement;
use crate::piecewise::{ActingGroup, PieceSpec, PiecewiseTranslation, TLAction, VertexMap};
use crate::window::ends::{count_ends, EndsVerdict};
use crate::window::{GraphWindow, WindowKind};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    /// CLI contract: 0 certified, 1 refuted, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Certified => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// phi^length fixes `start`.
    Cycle { start: String, length: u32 },
    /// A reduced word fixing a point of the core.
    FixedWord { word: String, start: String },
    /// One orbit hits the claimed fundamental domain twice.
    DoubleHit {
        orbit_start: String,
        first: String,
        second: String,
    },
    /// A fully-contained orbit missing the claimed fundamental domain.
    Uncovered { vertex: String },
    /// Two points with the same image: not injective.
    DoubleCovered {
        image: String,
        first: String,
        second: String,
    },
    /// Quotient square fails: pi(phi(x)) != alpha(pi(x)).
    QuotientMismatch {
        point: String,
        got: String,
        expected: String,
    },
    /// A cocompact Z claim against an ends estimate of "many".
    EndsContradiction { verdict: String, components: usize },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct FdReport {
    pub orbits_checked: usize,
    pub fully_contained: usize,
    pub exited: usize,
    /// (hit count, number of orbit segments with that count).
    pub hits: Vec<(u32, usize)>,
}

/// Verifier output with stable field order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub claim: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub core_radius: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wobble: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub freeness_depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_report: Option<FdReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocompact_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure_cap: Option<usize>,
}

impl Certificate {
    fn new(claim: &str, verdict: Verdict, core_radius: u32) -> Self {
        Certificate {
            schema: "tla/1".to_string(),
            claim: claim.to_string(),
            verdict,
            witness: None,
            reason: None,
            core_radius,
            wobble: None,
            freeness_depth: None,
            fd_report: None,
            cocompact_bound: None,
            closure_cap: None,
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{}: {:?}", self.claim, self.verdict);
        if let Some(r) = &self.reason {
            s.push_str(&format!(" ({r})"));
        }
        if let Some(c) = self.cocompact_bound {
            s.push_str(&format!(" [C={c}]"));
        }
        s
    }
}

/// A candidate action under verification.
#[derive(Debug, Clone, Copy)]
pub enum Candidate<'a> {
    Tl(&'a TLAction),
    Path(&'a PathAction),
    Forest(&'a ForestAction),
}

impl Candidate<'_> {
    fn is_z_claim(&self) -> bool {
        match self {
            Candidate::Tl(a) => a.acting == ActingGroup::Z,
            Candidate::Path(_) => true,
            Candidate::Forest(_) => false,
        }
    }
}

/// Maximum displacement of phi over the window core, in the word metric:
/// the wobble constant at desk scale.
pub fn wobble_constant(
    phi: &PiecewiseTranslation,
    w: &GraphWindow,
    word_radius: u32,
) -> Result<u32> {
    let group = w.group().clone();
    let mut best = 0u32;
    for x in core_points(w) {
        let y = phi.apply(&x)?;
        let t = x.inv().mul(&y)?;
        best = best.max(group.word_length(&t, word_radius)?);
    }
    Ok(best)
}

/// Group points the window core stands for: the core vertices themselves
/// on Cayley windows, every member of each core coset on coset windows.
fn core_points(w: &GraphWindow) -> Vec<GroupElement> {
    let mut out = Vec::new();
    for v in w.core_indices() {
        match w.kind() {
            WindowKind::Cayley => out.push(w.vertex(v).clone()),
            WindowKind::CayleyAbels { subgroup } => {
                out.extend(subgroup.left_coset(w.vertex(v)));
            }
        }
    }
    out
}

enum Step {
    Inside(GroupElement),
    Exit,
}

fn step_tl(phi: &PiecewiseTranslation, w: &GraphWindow, x: &GroupElement) -> Result<Step> {
    match phi.apply(x) {
        Ok(y) => {
            if w.contains(&y) {
                Ok(Step::Inside(y))
            } else {
                Ok(Step::Exit)
            }
        }
        Err(TlaError::OutsideDomain) => Ok(Step::Exit),
        Err(e) => Err(e),
    }
}

/// Freeness check at depth `depth`.
///
/// Z claims: phi^k(x) != x for core starts and 1 <= k <= depth, while the
/// orbit stays inside the window. On an exhaustive window a total candidate
/// is a bijection of a finite set, so some orbit closes into a cycle and
/// the claim is refuted — the counting shadow of the measure obstruction.
/// Free claims: no reduced word of length <= depth fixes a core point.
pub fn check_free(c: &Candidate, w: &GraphWindow, depth: u32) -> Result<Certificate> {
    let mut cert = Certificate::new("free", Verdict::Certified, w.core_radius());
    cert.freeness_depth = Some(depth);
    match c {
        Candidate::Tl(a) => match a.acting {
            ActingGroup::Z => check_free_z(&a.generators[0], w, depth, cert),
            ActingGroup::Free(_) => check_free_words_tl(a, w, depth, cert),
        },
        Candidate::Path(p) => check_free_path(p, w, depth, cert),
        Candidate::Forest(f) => check_free_forest(f, w, depth, cert),
    }
}

fn check_free_z(
    phi: &PiecewiseTranslation,
    w: &GraphWindow,
    depth: u32,
    mut cert: Certificate,
) -> Result<Certificate> {
    // Injectivity sweep over all in-window, in-domain points: a candidate
    // bijection that double-covers a point refutes immediately.
    let points = window_points(w);
    {
        let mut images: Vec<(GroupElement, GroupElement)> = Vec::new();
        for x in &points {
            match phi.apply(x) {
                Ok(y) => {
                    if let Some((_, prev)) = images.iter().find(|(img, _)| *img == y) {
                        cert.verdict = Verdict::Refuted;
                        cert.witness = Some(Witness::DoubleCovered {
                            image: y.to_string(),
                            first: prev.to_string(),
                            second: x.to_string(),
                        });
                        return Ok(cert);
                    }
                    images.push((y, x.clone()));
                }
                Err(TlaError::OutsideDomain) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let mut checked = 0usize;
    for start in core_points(w) {
        let mut x = start.clone();
        for k in 1..=depth {
            match step_tl(phi, w, &x)? {
                Step::Inside(y) => {
                    if y == start {
                        cert.verdict = Verdict::Refuted;
                        cert.witness = Some(Witness::Cycle {
                            start: start.to_string(),
                            length: k,
                        });
                        return Ok(cert);
                    }
                    x = y;
                    checked += 1;
                }
                Step::Exit => break,
            }
        }
    }
    if checked == 0 {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = Some("no orbit advanced inside the window".to_string());
    }
    Ok(cert)
}

fn reduced_words(rank: usize, depth: u32) -> Vec<Vec<i8>> {
    let letters: Vec<i8> = (1..=rank as i8).flat_map(|i| [i, -i]).collect();
    let mut out: Vec<Vec<i8>> = Vec::new();
    let mut layer: Vec<Vec<i8>> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for word in &layer {
            for &l in &letters {
                if word.last().is_some_and(|&t| t == -l) {
                    continue;
                }
                let mut w2 = word.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn word_string(word: &[i8]) -> String {
    crate::group::word_name(word)
}

fn check_free_words_tl(
    a: &TLAction,
    w: &GraphWindow,
    depth: u32,
    mut cert: Certificate,
) -> Result<Certificate> {
    let rank = a.acting.rank();
    let inverses: Vec<PiecewiseTranslation> =
        a.generators.iter().map(|g| g.invert()).collect();
    let words = reduced_words(rank, depth);
    let mut checked = 0usize;
    for start in core_points(w) {
        for word in &words {
            let mut x = start.clone();
            let mut alive = true;
            for &l in word {
                let map = if l > 0 {
                    &a.generators[(l - 1) as usize]
                } else {
                    &inverses[(-l - 1) as usize]
                };
                match step_tl(map, w, &x)? {
                    Step::Inside(y) => x = y,
                    Step::Exit => {
                        alive = false;
                        break;
                    }
                }
            }
            if alive {
                checked += 1;
                if x == start {
                    cert.verdict = Verdict::Refuted;
                    cert.witness = Some(Witness::FixedWord {
                        word: word_string(word),
                        start: start.to_string(),
                    });
                    return Ok(cert);
                }
            }
        }
    }
    if checked == 0 {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = Some("every word left the window".to_string());
    }
    Ok(cert)
}

fn check_free_path(
    p: &PathAction,
    w: &GraphWindow,
    depth: u32,
    mut cert: Certificate,
) -> Result<Certificate> {
    let succ = p.successor_map(w.len());
    let mut checked = 0usize;
    for start in 0..w.len() {
        if !w.is_core(start) {
            continue;
        }
        let mut v = start;
        for k in 1..=depth {
            match succ.get(v) {
                Some(next) => {
                    if next == start {
                        cert.verdict = Verdict::Refuted;
                        cert.witness = Some(Witness::Cycle {
                            start: w.vertex(start).to_string(),
                            length: k,
                        });
                        return Ok(cert);
                    }
                    v = next;
                    checked += 1;
                }
                None => break,
            }
        }
    }
    if checked == 0 {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = Some("no successor steps inside the window".to_string());
    }
    Ok(cert)
}

fn check_free_forest(
    f: &ForestAction,
    w: &GraphWindow,
    depth: u32,
    mut cert: Certificate,
) -> Result<Certificate> {
    let adj = f.adjacency(w.len());
    let words = reduced_words(f.rank, depth);
    let mut checked = 0usize;
    for &start in &f.covered {
        for word in &words {
            let mut v = start;
            let mut alive = true;
            for &l in word {
                match ForestAction::step(&adj, v, l) {
                    Some(u) => v = u,
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
            if alive {
                checked += 1;
                if v == start {
                    cert.verdict = Verdict::Refuted;
                    cert.witness = Some(Witness::FixedWord {
                        word: word_string(word),
                        start: w.vertex(start).to_string(),
                    });
                    return Ok(cert);
                }
            }
        }
    }
    if checked == 0 {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = Some("every word left the labeled forest".to_string());
    }
    Ok(cert)
}

fn window_points(w: &GraphWindow) -> Vec<GroupElement> {
    let mut out = Vec::new();
    for v in 0..w.len() {
        match w.kind() {
            WindowKind::Cayley => out.push(w.vertex(v).clone()),
            WindowKind::CayleyAbels { subgroup } => out.extend(subgroup.left_coset(w.vertex(v))),
        }
    }
    out
}

/// Orbit segment of `start` inside the window under a Z candidate: the
/// points visited forward and backward, plus whether either direction left
/// the window (or the domain).
fn z_orbit_segment(
    phi: &PiecewiseTranslation,
    w: &GraphWindow,
    start: &GroupElement,
    limit: usize,
) -> Result<(Vec<GroupElement>, bool)> {
    let inv = phi.invert();
    let mut segment = vec![start.clone()];
    let mut exited = false;
    for map in [phi, &inv] {
        let mut x = start.clone();
        for _ in 0..limit {
            match step_tl(map, w, &x)? {
                Step::Inside(y) => {
                    if segment.contains(&y) {
                        break; // cycle; freeness pre-check reports these
                    }
                    segment.push(y.clone());
                    x = y;
                }
                Step::Exit => {
                    exited = true;
                    break;
                }
            }
        }
    }
    Ok((segment, exited))
}

/// Fundamental-domain check: a certified claim means no orbit segment hits
/// D twice, and every fully-contained segment hits D exactly once. Segments
/// that leave the window are excluded from the exactness count — edge
/// effects must not fabricate refutations — but an in-window double hit
/// refutes regardless.
pub fn check_fundamental_domain(
    c: &Candidate,
    d: &PieceSpec,
    w: &GraphWindow,
    free_depth: u32,
) -> Result<Certificate> {
    let pre = check_free(c, w, free_depth)?;
    if pre.verdict != Verdict::Certified {
        let mut cert = pre;
        cert.claim = "fundamental-domain".to_string();
        if cert.reason.is_none() {
            cert.reason = Some("freeness precondition failed".to_string());
        }
        return Ok(cert);
    }
    let mut cert = Certificate::new("fundamental-domain", Verdict::Certified, w.core_radius());
    cert.freeness_depth = Some(free_depth);
    let mut report = FdReport::default();
    let mut hist: std::collections::BTreeMap<u32, usize> = Default::default();
    let mut record =
        |segment: Vec<GroupElement>, exited: bool| -> Result<Option<Witness>> {
            report.orbits_checked += 1;
            if exited {
                report.exited += 1;
            } else {
                report.fully_contained += 1;
            }
            let mut hits: Vec<&GroupElement> = Vec::new();
            for x in &segment {
                if d.contains(x)? {
                    hits.push(x);
                }
            }
            *hist.entry(hits.len() as u32).or_default() += 1;
            if hits.len() >= 2 {
                return Ok(Some(Witness::DoubleHit {
                    orbit_start: segment[0].to_string(),
                    first: hits[0].to_string(),
                    second: hits[1].to_string(),
                }));
            }
            if !exited && hits.is_empty() {
                return Ok(Some(Witness::Uncovered {
                    vertex: segment[0].to_string(),
                }));
            }
            Ok(None)
        };
    match c {
        Candidate::Tl(a) if a.acting == ActingGroup::Z => {
            let phi = &a.generators[0];
            let limit = w.len() + free_depth as usize + 1;
            let mut seen: Vec<GroupElement> = Vec::new();
            for start in window_points(w) {
                if seen.binary_search(&start).is_ok() {
                    continue;
                }
                let (segment, exited) = z_orbit_segment(phi, w, &start, limit)?;
                for x in &segment {
                    if let Err(i) = seen.binary_search(x) {
                        seen.insert(i, x.clone());
                    }
                }
                if let Some(wit) = record(segment, exited)? {
                    cert.verdict = Verdict::Refuted;
                    cert.witness = Some(wit);
                    break;
                }
            }
        }
        Candidate::Tl(a) => {
            // Free rank d: orbit as letter-BFS inside the window.
            let inverses: Vec<PiecewiseTranslation> =
                a.generators.iter().map(|g| g.invert()).collect();
            let mut seen: Vec<GroupElement> = Vec::new();
            for start in window_points(w) {
                if seen.binary_search(&start).is_ok() {
                    continue;
                }
                let mut segment = vec![start.clone()];
                let mut exited = false;
                let mut queue = std::collections::VecDeque::from([start.clone()]);
                while let Some(x) = queue.pop_front() {
                    for map in a.generators.iter().chain(inverses.iter()) {
                        match step_tl(map, w, &x)? {
                            Step::Inside(y) => {
                                if !segment.contains(&y) {
                                    segment.push(y.clone());
                                    queue.push_back(y);
                                }
                            }
                            Step::Exit => exited = true,
                        }
                    }
                }
                for x in &segment {
                    if let Err(i) = seen.binary_search(x) {
                        seen.insert(i, x.clone());
                    }
                }
                if let Some(wit) = record(segment, exited)? {
                    cert.verdict = Verdict::Refuted;
                    cert.witness = Some(wit);
                    break;
                }
            }
        }
        Candidate::Path(p) => {
            // One orbit: the path itself, in vertex elements.
            let segment: Vec<GroupElement> =
                p.order.iter().map(|&v| w.vertex(v).clone()).collect();
            let exited = !p.closes_cycle;
            if let Some(wit) = record(segment, exited)? {
                cert.verdict = Verdict::Refuted;
                cert.witness = Some(wit);
            }
        }
        Candidate::Forest(f) => {
            let adj = f.adjacency(w.len());
            let letters: Vec<i8> = (1..=f.rank as i8).flat_map(|i| [i, -i]).collect();
            let mut seen = vec![false; w.len()];
            for &start in &f.covered {
                if seen[start] {
                    continue;
                }
                let mut verts = vec![start];
                let mut exited = false;
                let mut queue = std::collections::VecDeque::from([start]);
                seen[start] = true;
                while let Some(v) = queue.pop_front() {
                    for &l in &letters {
                        match ForestAction::step(&adj, v, l) {
                            Some(u) => {
                                if !seen[u] {
                                    seen[u] = true;
                                    verts.push(u);
                                    queue.push_back(u);
                                }
                            }
                            None => exited = true,
                        }
                    }
                }
                let segment: Vec<GroupElement> =
                    verts.iter().map(|&v| w.vertex(v).clone()).collect();
                if let Some(wit) = record(segment, exited)? {
                    cert.verdict = Verdict::Refuted;
                    cert.witness = Some(wit);
                    break;
                }
            }
        }
    }
    report.hits = hist.into_iter().collect();
    cert.fd_report = Some(report);
    Ok(cert)
}

/// Cocompactness: least C with every core vertex within distance C of the
/// orbit of D. Cocompact Z claims are cross-checked against the ends
/// estimate: a verdict of "many" refutes, echoing that a bi-infinite
/// almost-surjective path allows at most two ends.
#[allow(clippy::too_many_arguments)]
pub fn check_cocompact(
    c: &Candidate,
    d: Option<&PieceSpec>,
    w: &GraphWindow,
    free_depth: u32,
    ends_inner: u32,
    ends_outer: u32,
    window_cap: usize,
) -> Result<Certificate> {
    let mut cert = Certificate::new("cocompact", Verdict::Certified, w.core_radius());
    if c.is_z_claim() {
        let e = count_ends(w.group(), ends_inner, ends_outer, window_cap)?;
        if e.verdict == EndsVerdict::Many {
            cert.verdict = Verdict::Refuted;
            cert.witness = Some(Witness::EndsContradiction {
                verdict: e.verdict.to_string(),
                components: e.components,
            });
            cert.reason = Some(format!(
                "a cocompact Z action allows at most two ends; estimate at ({ends_inner},{ends_outer}) found {}",
                e.components
            ));
            return Ok(cert);
        }
    }
    // Default fundamental domain for path actions: the path start.
    let default_d = match c {
        Candidate::Path(p) => Some(PieceSpec::explicit(vec![w.vertex(p.order[0]).clone()])),
        _ => None,
    };
    let d = match (d, &default_d) {
        (Some(d), _) => d,
        (None, Some(d)) => d,
        (None, None) => {
            cert.verdict = Verdict::Inconclusive;
            cert.reason = Some("no fundamental domain supplied".to_string());
            return Ok(cert);
        }
    };
    let pre = check_fundamental_domain(c, d, w, free_depth)?;
    if pre.verdict != Verdict::Certified {
        let mut out = pre;
        out.claim = "cocompact".to_string();
        return Ok(out);
    }
    cert.fd_report = pre.fd_report;
    cert.freeness_depth = Some(free_depth);

    // Orbit of D inside the window.
    let mut in_orbit = vec![false; w.len()];
    match c {
        Candidate::Path(p) => {
            let mut any = false;
            for &v in &p.order {
                if d.contains(w.vertex(v))? {
                    any = true;
                }
            }
            if any {
                for &v in &p.order {
                    in_orbit[v] = true;
                }
            }
        }
        Candidate::Tl(a) => {
            let inverses: Vec<PiecewiseTranslation> =
                a.generators.iter().map(|g| g.invert()).collect();
            let mut queue = std::collections::VecDeque::new();
            for v in 0..w.len() {
                if d.contains(w.vertex(v))? {
                    in_orbit[v] = true;
                    queue.push_back(w.vertex(v).clone());
                }
            }
            while let Some(x) = queue.pop_front() {
                for map in a.generators.iter().chain(inverses.iter()) {
                    if let Step::Inside(y) = step_tl(map, w, &x)? {
                        let vi = w.locate(&y).expect("inside window");
                        if !in_orbit[vi] {
                            in_orbit[vi] = true;
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        Candidate::Forest(f) => {
            let adj = f.adjacency(w.len());
            let letters: Vec<i8> = (1..=f.rank as i8).flat_map(|i| [i, -i]).collect();
            let mut queue = std::collections::VecDeque::new();
            for &v in &f.covered {
                if d.contains(w.vertex(v))? {
                    in_orbit[v] = true;
                    queue.push_back(v);
                }
            }
            while let Some(v) = queue.pop_front() {
                for &l in &letters {
                    if let Some(u) = ForestAction::step(&adj, v, l) {
                        if !in_orbit[u] {
                            in_orbit[u] = true;
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
    }
    let sources: Vec<usize> = (0..w.len()).filter(|&v| in_orbit[v]).collect();
    if sources.is_empty() {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = Some("the fundamental domain misses the window".to_string());
        return Ok(cert);
    }
    let dist = w.distances_from(&sources);
    let mut bound = 0u32;
    for v in w.core_indices() {
        if dist[v] == u32::MAX {
            cert.verdict = Verdict::Inconclusive;
            cert.reason = Some("orbit does not reach part of the core".to_string());
            return Ok(cert);
        }
        bound = bound.max(dist[v]);
    }
    cert.cocompact_bound = Some(bound);
    Ok(cert)
}

/// Quotient compatibility of a lift: pi(phi(x)) = alpha(pi(x)) for every
/// member of every core coset where alpha is defined.
pub fn check_quotient_commutes(
    phi: &PiecewiseTranslation,
    alpha: &VertexMap,
    w: &GraphWindow,
) -> Result<Certificate> {
    let mut cert = Certificate::new("quotient-commutes", Verdict::Certified, w.core_radius());
    let k = match w.kind() {
        WindowKind::CayleyAbels { subgroup } => subgroup.clone(),
        WindowKind::Cayley => {
            cert.verdict = Verdict::Inconclusive;
            cert.reason = Some("not a coset window".to_string());
            return Ok(cert);
        }
    };
    let mut checked = 0usize;
    for v in 0..w.len() {
        if !w.is_core(v) {
            continue;
        }
        let Some(img) = alpha.get(v) else { continue };
        for x in k.left_coset(w.vertex(v)) {
            match phi.apply(&x) {
                Ok(y) => {
                    let got = w.locate(&y);
                    if got != Some(img) {
                        cert.verdict = Verdict::Refuted;
                        cert.witness = Some(Witness::QuotientMismatch {
                            point: x.to_string(),
                            got: y.to_string(),
                            expected: w.vertex(img).to_string(),
                        });
                        return Ok(cert);
                    }
                    checked += 1;
                }
                Err(TlaError::OutsideDomain) => {
                    cert.verdict = Verdict::Inconclusive;
                    cert.reason =
                        Some(format!("lift undefined at {x} over a core coset"));
                    return Ok(cert);
                }
                Err(e) => return Err(e),
            }
        }
    }
    if checked == 0 {
        cert.verdict = Verdict::Inconclusive;
        cert.reason = Some("graph map undefined on the whole core".to_string());
    } else {
        cert.reason = Some(format!("{checked} points over core cosets commute"));
    }
    Ok(cert)
}

/// The locally-elliptic obstruction: close the translator set F into the
/// subgroup it generates. If the closure is finite, that subgroup is
/// invariant and the restricted orbit of the identity must cycle — an
/// explicit refutation of any Z claim. If the closure blows past the cap
/// the test is inconclusive, consistent with a genuine Z action.
pub fn locally_elliptic_obstruction(
    phi: &PiecewiseTranslation,
    closure_cap: usize,
) -> Result<Certificate> {
    let mut cert = Certificate::new("locally-elliptic", Verdict::Inconclusive, 0);
    cert.closure_cap = Some(closure_cap);
    let group = phi.group().clone();
    let f = phi.translator_set();
    let mut gens: Vec<GroupElement> = f.iter().map(|g| g.inv()).collect();
    gens.extend(f.iter().cloned());
    gens.sort();
    gens.dedup();
    let mut closure: Vec<GroupElement> = vec![group.identity()];
    let mut frontier = vec![group.identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &gens {
                let y = x.mul(s)?;
                if let Err(i) = closure.binary_search(&y) {
                    closure.insert(i, y.clone());
                    next.push(y);
                    if closure.len() > closure_cap {
                        cert.reason = Some(format!(
                            "translator closure exceeded {closure_cap} elements (unbounded-closure)"
                        ));
                        return Ok(cert);
                    }
                }
            }
        }
        frontier = next;
    }
    // Finite invariant subgroup: walk the identity orbit until it cycles.
    let mut seen: Vec<(GroupElement, u32)> = Vec::new();
    let mut x = group.identity();
    for k in 1..=closure.len() as u32 + 1 {
        seen.push((x.clone(), k - 1));
        x = phi.apply(&x)?;
        if x.is_identity() {
            cert.verdict = Verdict::Refuted;
            cert.witness = Some(Witness::Cycle {
                start: group.identity().to_string(),
                length: k,
            });
            cert.reason = Some(format!(
                "translators generate a finite subgroup of order {}",
                closure.len()
            ));
            return Ok(cert);
        }
        if let Some((dup, _)) = seen.iter().find(|(y, _)| *y == x) {
            cert.verdict = Verdict::Refuted;
            cert.witness = Some(Witness::DoubleCovered {
                image: phi.apply(dup)?.to_string(),
                first: dup.to_string(),
                second: seen.last().unwrap().0.to_string(),
            });
            cert.reason = Some("orbit re-enters without closing: not injective".to_string());
            return Ok(cert);
        }
    }
    cert.reason = Some("identity orbit did not close within the finite closure".to_string());
    Ok(cert)
}
