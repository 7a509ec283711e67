//! Exact arithmetic in explicit finitely generated marked groups.
//!
//! A [`MarkedGroup`] carries a symmetric labeled generating set and exposes
//! multiplication, inversion and the word metric. Elements are stored in
//! canonical normal form only, so equality of values is equality of data.

mod element;
pub mod presets;
pub mod subgroup;

pub use element::ElementData;
pub use subgroup::{FiniteSubgroup, Subgroup};

/// Renders a letter sequence in free-group notation (`e`, `abA`, ...).
pub fn word_name(word: &[i8]) -> String {
    element::word_to_string(word)
}

use crate::error::{Result, TlaError};
use element::{word_to_string, LampDisplay, VectorDisplay};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// JSON descriptor of a marked group, as accepted and emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupDescriptor {
    FreeAbelian {
        rank: usize,
    },
    Free {
        rank: usize,
    },
    Lamplighter,
    Finite {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<usize>>,
    },
    Product {
        left: Box<GroupDescriptor>,
        right: Box<GroupDescriptor>,
    },
}

/// Validated multiplication-table data for a finite group.
#[derive(Debug)]
pub(crate) struct FiniteData {
    pub table: Vec<Vec<u16>>,
    pub names: Vec<String>,
    pub inverse: Vec<u16>,
    pub identity: u16,
    pub gen_indices: Vec<u16>,
    /// Word length from the identity with respect to `gen_indices`.
    pub dist: Vec<u32>,
}

impl FiniteData {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize][b as usize]
    }
}

#[derive(Debug)]
pub(crate) enum KindRepr {
    FreeAbelian { rank: usize },
    Free { rank: usize },
    Lamplighter,
    Finite(FiniteData),
    Product { left: Box<KindRepr>, right: Box<KindRepr> },
}

#[derive(Debug)]
pub struct GroupRepr {
    kind: KindRepr,
    descriptor: GroupDescriptor,
    gens: Vec<(String, ElementData)>,
}

/// A group given by generators with exact multiplication and canonical
/// normal forms. Cheap to clone; all state is immutable after construction.
#[derive(Clone)]
pub struct MarkedGroup(Arc<GroupRepr>);

impl PartialEq for MarkedGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}

impl Eq for MarkedGroup {}

impl fmt::Debug for MarkedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MarkedGroup({:?})", self.0.descriptor)
    }
}

/// A group element in canonical normal form, tagged with its ambient group.
#[derive(Clone)]
pub struct GroupElement {
    group: MarkedGroup,
    data: ElementData,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data && self.group == other.group
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.data.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.data.cmp(&other.data)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

fn letter_name(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

fn letter_inverse_name(i: usize) -> String {
    ((b'A' + i as u8) as char).to_string()
}

fn build_finite(
    table: &[Vec<usize>],
    names: Option<&[String]>,
    generators: Option<&[usize]>,
) -> Result<FiniteData> {
    let n = table.len();
    if n == 0 || n > u16::MAX as usize {
        return Err(TlaError::InvalidTable {
            reason: format!("order {n} out of range"),
        });
    }
    let mut t = Vec::with_capacity(n);
    for row in table {
        if row.len() != n {
            return Err(TlaError::InvalidTable {
                reason: "table is not square".into(),
            });
        }
        let mut r = Vec::with_capacity(n);
        for &v in row {
            if v >= n {
                return Err(TlaError::InvalidTable {
                    reason: format!("entry {v} out of range"),
                });
            }
            r.push(v as u16);
        }
        t.push(r);
    }
    let mut identity = None;
    for i in 0..n {
        if (0..n).all(|j| t[i][j] == j as u16 && t[j][i] == j as u16) {
            identity = Some(i as u16);
            break;
        }
    }
    let identity = identity.ok_or_else(|| TlaError::InvalidTable {
        reason: "no identity element".into(),
    })?;
    let mut inverse = vec![u16::MAX; n];
    for i in 0..n {
        for j in 0..n {
            if t[i][j] == identity && t[j][i] == identity {
                inverse[i] = j as u16;
            }
        }
        if inverse[i] == u16::MAX {
            return Err(TlaError::InvalidTable {
                reason: format!("element {i} has no inverse"),
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let ab_c = t[t[a][b] as usize][c];
                let a_bc = t[a][t[b][c] as usize];
                if ab_c != a_bc {
                    return Err(TlaError::InvalidTable {
                        reason: format!("associativity fails at ({a},{b},{c})"),
                    });
                }
            }
        }
    }
    let names: Vec<String> = match names {
        Some(ns) => {
            if ns.len() != n {
                return Err(TlaError::InvalidTable {
                    reason: "name list length differs from table order".into(),
                });
            }
            ns.to_vec()
        }
        None => (0..n).map(|i| format!("g{i}")).collect(),
    };
    {
        let mut seen = std::collections::BTreeSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(|c| "(){},; \t".contains(c)) {
                return Err(TlaError::InvalidTable {
                    reason: format!("invalid element name {name:?}"),
                });
            }
            if !seen.insert(name) {
                return Err(TlaError::InvalidTable {
                    reason: format!("duplicate element name {name:?}"),
                });
            }
        }
    }
    let mut gen_indices: Vec<u16> = match generators {
        Some(gs) => {
            let mut out = Vec::new();
            for &g in gs {
                if g >= n {
                    return Err(TlaError::InvalidTable {
                        reason: format!("generator index {g} out of range"),
                    });
                }
                out.push(g as u16);
            }
            out
        }
        None => (0..n as u16).filter(|&i| i != identity).collect(),
    };
    // Symmetric closure, identity dropped, duplicates removed.
    let mut closed = Vec::new();
    for &g in &gen_indices {
        if g == identity {
            continue;
        }
        if !closed.contains(&g) {
            closed.push(g);
        }
        let gi = inverse[g as usize];
        if gi != identity && !closed.contains(&gi) {
            closed.push(gi);
        }
    }
    gen_indices = closed;
    if gen_indices.is_empty() && n > 1 {
        return Err(TlaError::InvalidTable {
            reason: "no generators".into(),
        });
    }
    // BFS word lengths; also proves that the generators generate.
    let mut dist = vec![u32::MAX; n];
    dist[identity as usize] = 0;
    let mut queue = std::collections::VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for &s in &gen_indices {
            let y = t[x as usize][s as usize];
            if dist[y as usize] == u32::MAX {
                dist[y as usize] = dist[x as usize] + 1;
                queue.push_back(y);
            }
        }
    }
    if dist.contains(&u32::MAX) {
        return Err(TlaError::InvalidTable {
            reason: "generators do not generate the group".into(),
        });
    }
    Ok(FiniteData {
        table: t,
        names,
        inverse,
        identity,
        gen_indices,
        dist,
    })
}

fn build_kind(desc: &GroupDescriptor, allow_product: bool) -> Result<KindRepr> {
    match desc {
        GroupDescriptor::FreeAbelian { rank } => {
            if *rank == 0 || *rank > 26 {
                return Err(TlaError::InvalidDescriptor {
                    reason: format!("free-abelian rank {rank} out of range 1..=26"),
                });
            }
            Ok(KindRepr::FreeAbelian { rank: *rank })
        }
        GroupDescriptor::Free { rank } => {
            if *rank == 0 || *rank > 26 {
                return Err(TlaError::InvalidDescriptor {
                    reason: format!("free rank {rank} out of range 1..=26"),
                });
            }
            Ok(KindRepr::Free { rank: *rank })
        }
        GroupDescriptor::Lamplighter => Ok(KindRepr::Lamplighter),
        GroupDescriptor::Finite {
            table,
            names,
            generators,
        } => Ok(KindRepr::Finite(build_finite(
            table,
            names.as_deref(),
            generators.as_deref(),
        )?)),
        GroupDescriptor::Product { left, right } => {
            if !allow_product {
                return Err(TlaError::InvalidDescriptor {
                    reason: "nested products are not supported".into(),
                });
            }
            let l = build_kind(left, false)?;
            let r = build_kind(right, false)?;
            if !matches!(r, KindRepr::Finite(_)) {
                return Err(TlaError::InvalidDescriptor {
                    reason: "right factor of a product must be a finite group".into(),
                });
            }
            Ok(KindRepr::Product {
                left: Box::new(l),
                right: Box::new(r),
            })
        }
    }
}

fn identity_data(kind: &KindRepr) -> ElementData {
    match kind {
        KindRepr::FreeAbelian { rank } => ElementData::Vector(vec![0; *rank]),
        KindRepr::Free { .. } => ElementData::Word(vec![]),
        KindRepr::Lamplighter => ElementData::Lamp {
            lamps: vec![],
            shift: 0,
        },
        KindRepr::Finite(f) => ElementData::Table(f.identity),
        KindRepr::Product { left, right } => ElementData::Pair(
            Box::new(identity_data(left)),
            Box::new(identity_data(right)),
        ),
    }
}

/// Symmetric difference of two sorted lamp-position lists.
fn lamp_xor(a: &[i64], b: impl Iterator<Item = i64>) -> Vec<i64> {
    let mut out: Vec<i64> = a.to_vec();
    for p in b {
        match out.binary_search(&p) {
            Ok(i) => {
                out.remove(i);
            }
            Err(i) => {
                out.insert(i, p);
            }
        }
    }
    out
}

fn mul_data(kind: &KindRepr, a: &ElementData, b: &ElementData) -> ElementData {
    match (kind, a, b) {
        (KindRepr::FreeAbelian { .. }, ElementData::Vector(x), ElementData::Vector(y)) => {
            ElementData::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
        }
        (KindRepr::Free { .. }, ElementData::Word(x), ElementData::Word(y)) => {
            let mut out = x.clone();
            for &l in y {
                if out.last().is_some_and(|&t| t == -l) {
                    out.pop();
                } else {
                    out.push(l);
                }
            }
            ElementData::Word(out)
        }
        (
            KindRepr::Lamplighter,
            ElementData::Lamp { lamps: f, shift: k },
            ElementData::Lamp {
                lamps: f2,
                shift: k2,
            },
        ) => ElementData::Lamp {
            lamps: lamp_xor(f, f2.iter().map(|p| p + k)),
            shift: k + k2,
        },
        (KindRepr::Finite(fd), ElementData::Table(x), ElementData::Table(y)) => {
            ElementData::Table(fd.mul(*x, *y))
        }
        (KindRepr::Product { left, right }, ElementData::Pair(xl, xr), ElementData::Pair(yl, yr)) => {
            ElementData::Pair(
                Box::new(mul_data(left, xl, yl)),
                Box::new(mul_data(right, xr, yr)),
            )
        }
        _ => unreachable!("element data does not match group kind"),
    }
}

fn inv_data(kind: &KindRepr, a: &ElementData) -> ElementData {
    match (kind, a) {
        (KindRepr::FreeAbelian { .. }, ElementData::Vector(x)) => {
            ElementData::Vector(x.iter().map(|p| -p).collect())
        }
        (KindRepr::Free { .. }, ElementData::Word(x)) => {
            ElementData::Word(x.iter().rev().map(|l| -l).collect())
        }
        (KindRepr::Lamplighter, ElementData::Lamp { lamps, shift }) => {
            let mut moved: Vec<i64> = lamps.iter().map(|p| p - shift).collect();
            moved.sort_unstable();
            ElementData::Lamp {
                lamps: moved,
                shift: -shift,
            }
        }
        (KindRepr::Finite(fd), ElementData::Table(x)) => {
            ElementData::Table(fd.inverse[*x as usize])
        }
        (KindRepr::Product { left, right }, ElementData::Pair(xl, xr)) => {
            ElementData::Pair(Box::new(inv_data(left, xl)), Box::new(inv_data(right, xr)))
        }
        _ => unreachable!("element data does not match group kind"),
    }
}

fn exact_len(kind: &KindRepr, a: &ElementData) -> u64 {
    match (kind, a) {
        (KindRepr::FreeAbelian { .. }, ElementData::Vector(x)) => {
            x.iter().map(|p| p.unsigned_abs()).sum()
        }
        (KindRepr::Free { .. }, ElementData::Word(x)) => x.len() as u64,
        (KindRepr::Lamplighter, ElementData::Lamp { lamps, shift }) => {
            let lo = lamps.iter().copied().chain([0, *shift]).min().unwrap();
            let hi = lamps.iter().copied().chain([0, *shift]).max().unwrap();
            let left_first = (0 - lo) + (hi - lo) + (hi - shift);
            let right_first = hi + (hi - lo) + (shift - lo);
            lamps.len() as u64 + left_first.min(right_first) as u64
        }
        (KindRepr::Finite(fd), ElementData::Table(x)) => fd.dist[*x as usize] as u64,
        (KindRepr::Product { left, right }, ElementData::Pair(xl, xr)) => {
            exact_len(left, xl) + exact_len(right, xr)
        }
        _ => unreachable!("element data does not match group kind"),
    }
}

/// Order of the element: `None` means infinite.
fn order_data(kind: &KindRepr, a: &ElementData) -> Option<u64> {
    match (kind, a) {
        (KindRepr::FreeAbelian { .. }, ElementData::Vector(x)) => {
            if x.iter().all(|&p| p == 0) {
                Some(1)
            } else {
                None
            }
        }
        (KindRepr::Free { .. }, ElementData::Word(x)) => {
            if x.is_empty() {
                Some(1)
            } else {
                None
            }
        }
        (KindRepr::Lamplighter, ElementData::Lamp { lamps, shift }) => {
            if *shift != 0 {
                None
            } else if lamps.is_empty() {
                Some(1)
            } else {
                Some(2)
            }
        }
        (KindRepr::Finite(fd), ElementData::Table(x)) => {
            let mut p = *x;
            let mut k = 1u64;
            while p != fd.identity {
                p = fd.mul(p, *x);
                k += 1;
            }
            Some(k)
        }
        (KindRepr::Product { left, right }, ElementData::Pair(xl, xr)) => {
            let ol = order_data(left, xl)?;
            let or = order_data(right, xr)?;
            Some(ol / gcd(ol, or) * or)
        }
        _ => unreachable!("element data does not match group kind"),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn data_to_string(kind: &KindRepr, a: &ElementData) -> String {
    match (kind, a) {
        (KindRepr::FreeAbelian { .. }, ElementData::Vector(x)) => VectorDisplay(x).to_string(),
        (KindRepr::Free { .. }, ElementData::Word(x)) => word_to_string(x),
        (KindRepr::Lamplighter, ElementData::Lamp { lamps, shift }) => LampDisplay {
            lamps,
            shift: *shift,
        }
        .to_string(),
        (KindRepr::Finite(fd), ElementData::Table(x)) => fd.names[*x as usize].clone(),
        (KindRepr::Product { left, right }, ElementData::Pair(xl, xr)) => {
            format!(
                "({},{})",
                data_to_string(left, xl),
                data_to_string(right, xr)
            )
        }
        _ => unreachable!("element data does not match group kind"),
    }
}

/// Splits `s` at top-level commas, respecting `()` and `{}` nesting.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn bad(input: &str, reason: impl Into<String>) -> TlaError {
    TlaError::BadElement {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_data(kind: &KindRepr, s: &str) -> Result<ElementData> {
    let s = s.trim();
    if s == "e" {
        return Ok(identity_data(kind));
    }
    match kind {
        KindRepr::FreeAbelian { rank } => {
            let inner = s
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad(s, "expected (c1,...,cn)"))?;
            let parts = split_top_level(inner);
            if parts.len() != *rank {
                return Err(bad(s, format!("expected {rank} coordinates")));
            }
            let mut v = Vec::with_capacity(*rank);
            for p in parts {
                v.push(
                    p.trim()
                        .parse::<i64>()
                        .map_err(|_| bad(s, "bad integer coordinate"))?,
                );
            }
            Ok(ElementData::Vector(v))
        }
        KindRepr::Free { rank } => {
            let mut word: Vec<i8> = Vec::new();
            for c in s.chars() {
                let letter = if c.is_ascii_lowercase() {
                    (c as u8 - b'a') as i8 + 1
                } else if c.is_ascii_uppercase() {
                    -((c as u8 - b'A') as i8 + 1)
                } else {
                    return Err(bad(s, "expected letters a..z / A..Z"));
                };
                if letter.unsigned_abs() as usize > *rank {
                    return Err(bad(s, format!("letter {c} exceeds rank {rank}")));
                }
                if word.last().is_some_and(|&t| t == -letter) {
                    word.pop();
                } else {
                    word.push(letter);
                }
            }
            Ok(ElementData::Word(word))
        }
        KindRepr::Lamplighter => {
            let inner = s
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad(s, "expected ({p1,...},k)"))?;
            let parts = split_top_level(inner);
            if parts.len() != 2 {
                return Err(bad(s, "expected ({p1,...},k)"));
            }
            let set = parts[0]
                .trim()
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| bad(s, "expected lamp set {p1,...}"))?;
            let mut lamps = Vec::new();
            if !set.trim().is_empty() {
                for p in set.split(',') {
                    lamps.push(
                        p.trim()
                            .parse::<i64>()
                            .map_err(|_| bad(s, "bad lamp position"))?,
                    );
                }
            }
            lamps.sort_unstable();
            lamps.dedup();
            let shift = parts[1]
                .trim()
                .parse::<i64>()
                .map_err(|_| bad(s, "bad shift"))?;
            Ok(ElementData::Lamp { lamps, shift })
        }
        KindRepr::Finite(fd) => fd
            .names
            .iter()
            .position(|n| n == s)
            .map(|i| ElementData::Table(i as u16))
            .ok_or_else(|| bad(s, "unknown element name")),
        KindRepr::Product { left, right } => {
            let inner = s
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad(s, "expected (left,right)"))?;
            let parts = split_top_level(inner);
            if parts.len() != 2 {
                return Err(bad(s, "expected (left,right)"));
            }
            Ok(ElementData::Pair(
                Box::new(parse_data(left, parts[0])?),
                Box::new(parse_data(right, parts[1])?),
            ))
        }
    }
}

fn validate_data(kind: &KindRepr, a: &ElementData) -> Result<()> {
    let ok = match (kind, a) {
        (KindRepr::FreeAbelian { rank }, ElementData::Vector(x)) => x.len() == *rank,
        (KindRepr::Free { rank }, ElementData::Word(x)) => {
            x.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) <= *rank)
                && x.windows(2).all(|w| w[0] != -w[1])
        }
        (KindRepr::Lamplighter, ElementData::Lamp { lamps, .. }) => {
            lamps.windows(2).all(|w| w[0] < w[1])
        }
        (KindRepr::Finite(fd), ElementData::Table(x)) => (*x as usize) < fd.order(),
        (KindRepr::Product { left, right }, ElementData::Pair(xl, xr)) => {
            return validate_data(left, xl).and_then(|_| validate_data(right, xr));
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(TlaError::BadAction {
            reason: "element data does not match group kind".into(),
        })
    }
}

fn build_generators(kind: &KindRepr) -> Vec<(String, ElementData)> {
    match kind {
        KindRepr::FreeAbelian { rank } => {
            let mut gens = Vec::new();
            for i in 0..*rank {
                let mut v = vec![0i64; *rank];
                v[i] = 1;
                gens.push((letter_name(i), ElementData::Vector(v.clone())));
                v[i] = -1;
                gens.push((letter_inverse_name(i), ElementData::Vector(v)));
            }
            gens
        }
        KindRepr::Free { rank } => {
            let mut gens = Vec::new();
            for i in 0..*rank {
                gens.push((letter_name(i), ElementData::Word(vec![i as i8 + 1])));
                gens.push((
                    letter_inverse_name(i),
                    ElementData::Word(vec![-(i as i8 + 1)]),
                ));
            }
            gens
        }
        KindRepr::Lamplighter => vec![
            (
                "t".into(),
                ElementData::Lamp {
                    lamps: vec![],
                    shift: 1,
                },
            ),
            (
                "T".into(),
                ElementData::Lamp {
                    lamps: vec![],
                    shift: -1,
                },
            ),
            (
                "a".into(),
                ElementData::Lamp {
                    lamps: vec![0],
                    shift: 0,
                },
            ),
        ],
        KindRepr::Finite(fd) => fd
            .gen_indices
            .iter()
            .map(|&i| (fd.names[i as usize].clone(), ElementData::Table(i)))
            .collect(),
        KindRepr::Product { left, right } => {
            let mut gens = Vec::new();
            let er = identity_data(right);
            let el = identity_data(left);
            for (name, g) in build_generators(left) {
                gens.push((
                    name,
                    ElementData::Pair(Box::new(g), Box::new(er.clone())),
                ));
            }
            for (name, g) in build_generators(right) {
                gens.push((
                    name,
                    ElementData::Pair(Box::new(el.clone()), Box::new(g)),
                ));
            }
            gens
        }
    }
}

impl MarkedGroup {
    pub fn new(descriptor: GroupDescriptor) -> Result<Self> {
        let kind = build_kind(&descriptor, true)?;
        let gens = build_generators(&kind);
        {
            let mut seen = std::collections::BTreeSet::new();
            for (name, _) in &gens {
                if !seen.insert(name.clone()) {
                    return Err(TlaError::InvalidDescriptor {
                        reason: format!("generator name {name:?} appears twice"),
                    });
                }
            }
        }
        Ok(MarkedGroup(Arc::new(GroupRepr {
            kind,
            descriptor,
            gens,
        })))
    }

    pub fn free_abelian(rank: usize) -> Self {
        Self::new(GroupDescriptor::FreeAbelian { rank }).expect("valid rank")
    }

    pub fn free(rank: usize) -> Self {
        Self::new(GroupDescriptor::Free { rank }).expect("valid rank")
    }

    pub fn lamplighter() -> Self {
        Self::new(GroupDescriptor::Lamplighter).expect("fixed descriptor")
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.0.descriptor
    }

    pub(crate) fn kind(&self) -> &KindRepr {
        &self.0.kind
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            data: identity_data(&self.0.kind),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.0.gens.len()
    }

    pub fn generator_name(&self, i: usize) -> &str {
        &self.0.gens[i].0
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement {
            group: self.clone(),
            data: self.0.gens[i].1.clone(),
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = (usize, &str, GroupElement)> + '_ {
        self.0
            .gens
            .iter()
            .enumerate()
            .map(|(i, (name, data))| {
                (
                    i,
                    name.as_str(),
                    GroupElement {
                        group: self.clone(),
                        data: data.clone(),
                    },
                )
            })
    }

    pub fn generator_by_name(&self, name: &str) -> Option<GroupElement> {
        self.0
            .gens
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, data)| GroupElement {
                group: self.clone(),
                data: data.clone(),
            })
    }

    pub fn element(&self, data: ElementData) -> Result<GroupElement> {
        validate_data(&self.0.kind, &data)?;
        Ok(GroupElement {
            group: self.clone(),
            data,
        })
    }

    pub(crate) fn element_unchecked(&self, data: ElementData) -> GroupElement {
        GroupElement {
            group: self.clone(),
            data,
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let data = parse_data(&self.0.kind, s)?;
        Ok(GroupElement {
            group: self.clone(),
            data,
        })
    }

    /// Parses one element, resolving generator names and `e` first.
    pub fn parse_element_friendly(&self, s: &str) -> Result<GroupElement> {
        let s = s.trim();
        if s == "e" {
            return Ok(self.identity());
        }
        if let Some(g) = self.generator_by_name(s) {
            return Ok(g);
        }
        self.parse_element(s)
    }

    /// Parses a comma-separated element list (commas inside parentheses or
    /// braces do not split), resolving generator names.
    pub fn parse_element_list(&self, s: &str) -> Result<Vec<GroupElement>> {
        split_top_level(s)
            .into_iter()
            .filter(|part| !part.trim().is_empty())
            .map(|part| self.parse_element_friendly(part))
            .collect()
    }

    /// Order of the group; `None` for infinite kinds.
    pub fn finite_order(&self) -> Option<u64> {
        fn go(kind: &KindRepr) -> Option<u64> {
            match kind {
                KindRepr::FreeAbelian { .. } | KindRepr::Free { .. } | KindRepr::Lamplighter => {
                    None
                }
                KindRepr::Finite(fd) => Some(fd.order() as u64),
                KindRepr::Product { left, right } => Some(go(left)? * go(right)?),
            }
        }
        go(&self.0.kind)
    }

    /// Enumerates all elements of a finite group in canonical order.
    pub fn enumerate_finite(&self) -> Option<Vec<GroupElement>> {
        self.finite_order()?;
        fn datas(kind: &KindRepr) -> Vec<ElementData> {
            match kind {
                KindRepr::Finite(fd) => {
                    (0..fd.order() as u16).map(ElementData::Table).collect()
                }
                KindRepr::Product { left, right } => {
                    let ls = datas(left);
                    let rs = datas(right);
                    let mut out = Vec::with_capacity(ls.len() * rs.len());
                    for l in &ls {
                        for r in &rs {
                            out.push(ElementData::Pair(
                                Box::new(l.clone()),
                                Box::new(r.clone()),
                            ));
                        }
                    }
                    out
                }
                _ => unreachable!("finite_order returned Some"),
            }
        }
        let mut out: Vec<GroupElement> = datas(&self.0.kind)
            .into_iter()
            .map(|d| self.element_unchecked(d))
            .collect();
        out.sort();
        Some(out)
    }

    /// Shortest S-word length of `g`, by bidirectional BFS over normal
    /// forms. Fails loudly with `DepthExceeded` past `radius` instead of
    /// approximating.
    pub fn word_length(&self, g: &GroupElement, radius: u32) -> Result<u32> {
        if g.group != *self {
            return Err(TlaError::MixedGroups);
        }
        self.word_length_within(g, radius)
            .ok_or(TlaError::DepthExceeded { radius })
    }

    /// Bidirectional BFS word length, `None` if it exceeds `cap`.
    pub fn word_length_within(&self, g: &GroupElement, cap: u32) -> Option<u32> {
        let identity = identity_data(&self.0.kind);
        if g.data == identity {
            return Some(0);
        }
        let gens: Vec<&ElementData> = self.0.gens.iter().map(|(_, d)| d).collect();
        let mut from_e: HashMap<ElementData, u32> = HashMap::from([(identity, 0)]);
        let mut from_g: HashMap<ElementData, u32> = HashMap::from([(g.data.clone(), 0)]);
        let mut frontier_e = vec![from_e.keys().next().unwrap().clone()];
        let mut frontier_g = vec![g.data.clone()];
        let (mut re, mut rg) = (0u32, 0u32);
        let mut best: Option<u32> = None;
        loop {
            if let Some(b) = best {
                if b <= re + rg {
                    return Some(b);
                }
            }
            if re + rg >= cap {
                return best.filter(|&b| b <= cap);
            }
            if frontier_e.is_empty() && frontier_g.is_empty() {
                return best;
            }
            let expand_e = !frontier_e.is_empty()
                && (frontier_g.is_empty() || frontier_e.len() <= frontier_g.len());
            let (map, other, frontier, r) = if expand_e {
                (&mut from_e, &from_g, &mut frontier_e, &mut re)
            } else {
                (&mut from_g, &from_e, &mut frontier_g, &mut rg)
            };
            let mut next = Vec::new();
            for x in frontier.drain(..) {
                for s in &gens {
                    let y = mul_data(&self.0.kind, &x, s);
                    if !map.contains_key(&y) {
                        map.insert(y.clone(), *r + 1);
                        if let Some(&d2) = other.get(&y) {
                            let cand = *r + 1 + d2;
                            if best.is_none_or(|b| cand < b) {
                                best = Some(cand);
                            }
                        }
                        next.push(y);
                    }
                }
            }
            *frontier = next;
            *r += 1;
        }
    }

    /// Exact word length via per-kind closed forms (internal; used by
    /// canonical coset representatives where the BFS cap would bite).
    pub fn exact_length(&self, g: &GroupElement) -> u64 {
        exact_len(&self.0.kind, &g.data)
    }
}

impl GroupElement {
    pub fn group(&self) -> &MarkedGroup {
        &self.group
    }

    pub fn data(&self) -> &ElementData {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        self.data == identity_data(self.group.kind())
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(TlaError::MixedGroups);
        }
        Ok(GroupElement {
            group: self.group.clone(),
            data: mul_data(self.group.kind(), &self.data, &other.data),
        })
    }

    pub fn inv(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            data: inv_data(self.group.kind(), &self.data),
        }
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, n: i64) -> GroupElement {
        if n < 0 {
            return self.inv().pow(-n);
        }
        let mut acc = self.group.identity();
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same group");
            }
            base = base.mul(&base).expect("same group");
            k >>= 1;
        }
        acc
    }

    /// Order of the element; `None` means infinite.
    pub fn order(&self) -> Option<u64> {
        order_data(self.group.kind(), &self.data)
    }

    pub fn canonical_string(&self) -> String {
        data_to_string(self.group.kind(), &self.data)
    }
}
