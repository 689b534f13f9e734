//! Backtracking isomorphism search between finite algebras.

use crate::corpus::generating_sequence;
use crate::mla::{FiniteMla, MlaMorphism};
use crate::table::GroupMap;

/// Finds an isomorphism respecting both operations, if one exists.
///
/// Partial maps are extended over a fixed generating sequence (greedy by
/// descending element order); deterministic given input order.
pub fn iso_search(m1: &FiniteMla, m2: &FiniteMla) -> Option<MlaMorphism> {
    let mut found = None;
    search_isos(m1, m2, &mut |map| {
        found = Some(MlaMorphism { image: GroupMap::new(map.to_vec()) });
        true
    });
    found
}

/// Group-level isomorphism search (star ignored).
pub fn group_iso_search(
    t1: &crate::table::GroupTable,
    t2: &crate::table::GroupTable,
) -> Option<GroupMap> {
    let m1 = FiniteMla::trivial_structure(t1.clone());
    let m2 = FiniteMla::trivial_structure(t2.clone());
    iso_search(&m1, &m2).map(|m| m.image)
}

/// Enumerates isomorphisms m1 -> m2 in deterministic order, stopping when
/// the visitor returns true. Returns whether the visitor stopped the search.
pub fn search_isos(
    m1: &FiniteMla,
    m2: &FiniteMla,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    if m1.n() != m2.n() {
        return false;
    }
    let n = m1.n();
    if n == 1 {
        return visit(&[0]);
    }
    // cheap invariants
    let mut orders1: Vec<usize> = (0..n).map(|x| m1.group().order_of(x)).collect();
    let mut orders2: Vec<usize> = (0..n).map(|x| m2.group().order_of(x)).collect();
    let gens = generating_sequence(m1.group());
    let o1s = {
        let mut v = orders1.clone();
        v.sort_unstable();
        v
    };
    let o2s = {
        let mut v = orders2.clone();
        v.sort_unstable();
        v
    };
    if o1s != o2s {
        return false;
    }
    orders1.shrink_to_fit();
    orders2.shrink_to_fit();

    let mut image = vec![u32::MAX; n];
    image[0] = 0;
    let mut used = vec![false; n];
    used[0] = true;
    extend(m1, m2, &gens, 0, &mut image, &mut used, &orders1, &orders2, visit)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    m1: &FiniteMla,
    m2: &FiniteMla,
    gens: &[usize],
    k: usize,
    image: &mut Vec<u32>,
    used: &mut Vec<bool>,
    orders1: &[usize],
    orders2: &[usize],
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    if k == gens.len() {
        return visit(image);
    }
    let g = gens[k];
    let snapshot = image.clone();
    let used_snapshot = used.clone();
    for c in 0..m2.n() {
        if used[c] || orders2[c] != orders1[g] {
            continue;
        }
        image[g] = c as u32;
        used[c] = true;
        if close_partial(m1, m2, image, used) && extend(
            m1, m2, gens, k + 1, image, used, orders1, orders2, visit,
        ) {
            return true;
        }
        image.clone_from(&snapshot);
        used.clone_from(&used_snapshot);
    }
    false
}

/// Closes the partial map under products and checks star/mul consistency
/// on the defined part. Mutates image/used; returns false on contradiction.
fn close_partial(m1: &FiniteMla, m2: &FiniteMla, image: &mut [u32], used: &mut [bool]) -> bool {
    let n = m1.n();
    loop {
        let mut grew = false;
        for a in 0..n {
            if image[a] == u32::MAX {
                continue;
            }
            for b in 0..n {
                if image[b] == u32::MAX {
                    continue;
                }
                let ab = m1.group().mul(a, b);
                let tgt = m2.group().mul(image[a] as usize, image[b] as usize) as u32;
                if image[ab] == u32::MAX {
                    if used[tgt as usize] {
                        return false; // not injective
                    }
                    image[ab] = tgt;
                    used[tgt as usize] = true;
                    grew = true;
                } else if image[ab] != tgt {
                    return false;
                }
                let st = m1.star(a, b);
                if image[st] != u32::MAX {
                    if image[st] as usize != m2.star(image[a] as usize, image[b] as usize) {
                        return false;
                    }
                } else {
                    let starred = m2.star(image[a] as usize, image[b] as usize) as u32;
                    if used[starred as usize] {
                        return false;
                    }
                    image[st] = starred;
                    used[starred as usize] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::mla::FiniteMla;

    #[test]
    fn identity_iso_found() {
        let m = corpus::v4_example();
        let iso = iso_search(&m, &m).unwrap();
        assert!(iso.is_valid(&m, &m));
    }

    #[test]
    fn v4_vs_z4_no_iso() {
        let a = FiniteMla::trivial_structure(corpus::klein_four());
        let b = FiniteMla::trivial_structure(corpus::cyclic(4));
        assert!(iso_search(&a, &b).is_none());
    }

    #[test]
    fn relabeled_v4_structures_isomorphic() {
        let stars = corpus::enumerate_stars(&corpus::klein_four(), 16).unwrap();
        let with_a = stars.iter().find(|m| m.star(1, 2) == 1).unwrap();
        let with_b = stars.iter().find(|m| m.star(1, 2) == 2).unwrap();
        let iso = iso_search(with_a, with_b).unwrap();
        assert!(iso.is_valid(with_a, with_b));
        // but the trivial structure is not isomorphic to a nontrivial one
        let trivial = stars.iter().find(|m| m.star_is_trivial()).unwrap();
        assert!(iso_search(with_a, trivial).is_none());
    }

    #[test]
    fn group_iso_d4_not_q8() {
        assert!(group_iso_search(&corpus::dihedral(4), &corpus::quaternion()).is_none());
        assert!(group_iso_search(&corpus::dihedral(4), &corpus::dihedral(4)).is_some());
    }
}
