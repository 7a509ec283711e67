//! Bundled finite models and standard marked groups used by tests and the
//! CLI preset table.

use super::{GroupDescriptor, MarkedGroup};

/// Cyclic group of order `n` with generators {1, n-1}; element names are
/// the digits 0..n-1.
pub fn cyclic(n: usize) -> MarkedGroup {
    assert!(n >= 2);
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    let names = (0..n).map(|i| i.to_string()).collect();
    MarkedGroup::new(GroupDescriptor::Finite {
        table,
        names: Some(names),
        generators: Some(vec![1, n - 1]),
    })
    .expect("cyclic table is a group")
}

/// Dihedral group of order 8 (symmetries of the square), generators
/// {r, r3, s} with the relation s r s = r^-1. Index of r^i s^j is i + 4j.
pub fn dihedral4() -> MarkedGroup {
    let idx = |i: usize, j: usize| (i % 4) + 4 * (j % 2);
    let mut table = vec![vec![0usize; 8]; 8];
    for i in 0..4 {
        for j in 0..2 {
            for k in 0..4 {
                for l in 0..2 {
                    // (r^i s^j)(r^k s^l) = r^(i + (-1)^j k) s^(j+l)
                    let shifted = if j == 0 { i + k } else { i + 4 - (k % 4) };
                    table[idx(i, j)][idx(k, l)] = idx(shifted % 4, j + l);
                }
            }
        }
    }
    let names = vec!["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
        .into_iter()
        .map(String::from)
        .collect();
    MarkedGroup::new(GroupDescriptor::Finite {
        table,
        names: Some(names),
        generators: Some(vec![1, 3, 4]),
    })
    .expect("dihedral table is a group")
}

fn permutations4() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            if b == a {
                continue;
            }
            for c in 0..4u8 {
                if c == a || c == b {
                    continue;
                }
                let d = (0..4u8).find(|&x| x != a && x != b && x != c).unwrap();
                out.push([a, b, c, d]);
            }
        }
    }
    out.sort();
    out
}

/// Full symmetric group on 4 letters. Elements are named by one-line
/// notation ("0123" is the identity); generators are the transposition
/// (01), the 4-cycle, and its inverse. Product p*q applies p first.
pub fn symmetric4() -> MarkedGroup {
    let perms = permutations4();
    let index: std::collections::HashMap<[u8; 4], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, i))
        .collect();
    let n = perms.len();
    let mut table = vec![vec![0usize; n]; n];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let mut comp = [0u8; 4];
            for x in 0..4 {
                comp[x] = q[p[x] as usize];
            }
            table[i][j] = index[&comp];
        }
    }
    let names: Vec<String> = perms
        .iter()
        .map(|p| p.iter().map(|d| d.to_string()).collect())
        .collect();
    let gen_names = ["1023", "1230", "3012"];
    let generators = gen_names
        .iter()
        .map(|g| names.iter().position(|n| n == g).unwrap())
        .collect();
    MarkedGroup::new(GroupDescriptor::Finite {
        table,
        names: Some(names),
        generators: Some(generators),
    })
    .expect("symmetric table is a group")
}

/// Z x Z/2, the smallest model with a nontrivial central finite subgroup.
pub fn z_cross_c2() -> MarkedGroup {
    MarkedGroup::new(GroupDescriptor::Product {
        left: Box::new(GroupDescriptor::FreeAbelian { rank: 1 }),
        right: Box::new(cyclic(2).descriptor().clone()),
    })
    .expect("product of valid kinds")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_orders() {
        let c12 = cyclic(12);
        assert_eq!(c12.finite_order(), Some(12));
        let one = c12.parse_element("1").unwrap();
        assert_eq!(one.order(), Some(12));
        assert_eq!(one.pow(12), c12.identity());
        assert_eq!(c12.word_length(&one.pow(6), 12).unwrap(), 6);
    }

    #[test]
    fn dihedral_relations() {
        let d4 = dihedral4();
        assert_eq!(d4.finite_order(), Some(8));
        let r = d4.parse_element("r").unwrap();
        let s = d4.parse_element("s").unwrap();
        assert_eq!(r.order(), Some(4));
        assert_eq!(s.order(), Some(2));
        // s r s = r^-1
        let conj = s.mul(&r).unwrap().mul(&s).unwrap();
        assert_eq!(conj, r.inv());
    }

    #[test]
    fn symmetric4_structure() {
        let s4 = symmetric4();
        assert_eq!(s4.finite_order(), Some(24));
        let t = s4.parse_element("1023").unwrap();
        let c = s4.parse_element("1230").unwrap();
        assert_eq!(t.order(), Some(2));
        assert_eq!(c.order(), Some(4));
        assert_eq!(c.mul(&s4.parse_element("3012").unwrap()).unwrap(), s4.identity());
        // (01) then (0123): 0 -> 1 -> 2.
        let prod = t.mul(&c).unwrap();
        assert_eq!(prod.canonical_string(), "2130");
    }

    #[test]
    fn z_cross_c2_center() {
        let g = z_cross_c2();
        let flip = g.parse_element("((0),1)").unwrap();
        let step = g.parse_element("((1),0)").unwrap();
        assert_eq!(
            flip.mul(&step).unwrap(),
            step.mul(&flip).unwrap()
        );
        assert_eq!(flip.order(), Some(2));
    }
}
