use std::cmp::Ordering;
use std::fmt;

/// Canonical normal form of a group element. Equality of elements is
/// equality of normal forms; no other spelling is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElementData {
    /// Free abelian: integer coordinate vector.
    Vector(Vec<i64>),
    /// Free group: freely reduced word. Letter `i > 0` is generator `i`,
    /// letter `-i` its inverse (1-based).
    Word(Vec<i8>),
    /// Lamplighter Z/2 wr Z: sorted positions of lit lamps plus cursor shift.
    Lamp { lamps: Vec<i64>, shift: i64 },
    /// Finite group: index into the multiplication table.
    Table(u16),
    /// Direct product: pair of component normal forms.
    Pair(Box<ElementData>, Box<ElementData>),
}

/// Order used for canonical tie-breaks (coset representatives, piece
/// ordering, witness choice). Positive entries come before negative ones of
/// the same magnitude, so the representative of the odd coset of 2Z is 1,
/// not -1.
fn int_key(a: i64) -> (u64, bool) {
    (a.unsigned_abs(), a < 0)
}

fn letter_key(l: i8) -> (u8, bool) {
    (l.unsigned_abs(), l < 0)
}

impl Ord for ElementData {
    fn cmp(&self, other: &Self) -> Ordering {
        use ElementData::*;
        match (self, other) {
            (Vector(a), Vector(b)) => {
                let ka = a.iter().map(|&x| int_key(x));
                let kb = b.iter().map(|&x| int_key(x));
                ka.cmp(kb)
            }
            (Word(a), Word(b)) => a
                .len()
                .cmp(&b.len())
                .then_with(|| {
                    let ka = a.iter().map(|&l| letter_key(l));
                    let kb = b.iter().map(|&l| letter_key(l));
                    ka.cmp(kb)
                }),
            (
                Lamp { lamps: la, shift: sa },
                Lamp { lamps: lb, shift: sb },
            ) => la
                .len()
                .cmp(&lb.len())
                .then_with(|| int_key(*sa).cmp(&int_key(*sb)))
                .then_with(|| {
                    let ka = la.iter().map(|&p| int_key(p));
                    let kb = lb.iter().map(|&p| int_key(p));
                    ka.cmp(kb)
                }),
            (Table(a), Table(b)) => a.cmp(b),
            (Pair(al, ar), Pair(bl, br)) => al.cmp(bl).then_with(|| ar.cmp(br)),
            // Mixed variants never compare in practice (same-group values
            // share a variant); fall back to a fixed variant order.
            _ => self.variant_rank().cmp(&other.variant_rank()),
        }
    }
}

impl PartialOrd for ElementData {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ElementData {
    fn variant_rank(&self) -> u8 {
        match self {
            ElementData::Vector(_) => 0,
            ElementData::Word(_) => 1,
            ElementData::Lamp { .. } => 2,
            ElementData::Table(_) => 3,
            ElementData::Pair(..) => 4,
        }
    }
}

/// Renders the canonical string for a free-group word: `e` for the empty
/// word, otherwise letters `a..z` with inverses `A..Z`.
pub fn word_to_string(w: &[i8]) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    w.iter()
        .map(|&l| {
            let idx = l.unsigned_abs() - 1;
            if l > 0 {
                (b'a' + idx) as char
            } else {
                (b'A' + idx) as char
            }
        })
        .collect()
}

pub struct VectorDisplay<'a>(pub &'a [i64]);

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub struct LampDisplay<'a> {
    pub lamps: &'a [i64],
    pub shift: i64,
}

impl fmt::Display for LampDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{")?;
        for (i, p) in self.lamps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}},{})", self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_before_negative() {
        assert!(ElementData::Vector(vec![1]) < ElementData::Vector(vec![-1]));
        assert!(ElementData::Vector(vec![0]) < ElementData::Vector(vec![1]));
        assert!(ElementData::Word(vec![1]) < ElementData::Word(vec![-1]));
        assert!(ElementData::Word(vec![-1]) < ElementData::Word(vec![2]));
        assert!(ElementData::Word(vec![]) < ElementData::Word(vec![1]));
    }

    #[test]
    fn word_rendering() {
        assert_eq!(word_to_string(&[]), "e");
        assert_eq!(word_to_string(&[1, 2, -1]), "abA");
    }
}
