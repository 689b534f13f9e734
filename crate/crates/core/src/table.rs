//! Dense Cayley tables over element indices, with identity fixed at index 0.

use crate::error::{Error, GroupDefect, Result};
use crate::subset::SubSet;

/// A finite group as a dense multiplication table.
///
/// Element `0` is the identity. `mul` is row-major: row `i`, column `j`
/// holds the index of `i*j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    /// Builds a table from a raw multiplication table, deriving inverses.
    ///
    /// Only structural checks happen here (shape, index range, existence of
    /// an inverse row entry); group axioms are checked by [`validate`].
    ///
    /// [`validate`]: GroupTable::validate
    pub fn from_mul(n: usize, mul: Vec<u32>) -> Result<GroupTable> {
        if n == 0 {
            return Err(Error::Malformed("empty table".into()));
        }
        if mul.len() != n * n {
            return Err(Error::Malformed(format!(
                "mul table has {} entries, expected {}",
                mul.len(),
                n * n
            )));
        }
        if let Some(&e) = mul.iter().find(|&&e| e as usize >= n) {
            return Err(Error::Malformed(format!("entry {e} out of range (n={n})")));
        }
        let mut inv = vec![u32::MAX; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == 0 && mul[j * n + i] == 0 {
                    inv[i] = j as u32;
                    break;
                }
            }
        }
        if let Some(i) = inv.iter().position(|&v| v == u32::MAX) {
            return Err(Error::Group(GroupDefect::Inverse { elem: i }));
        }
        Ok(GroupTable { n, mul, inv })
    }

    pub fn trivial() -> GroupTable {
        GroupTable { n: 1, mul: vec![0], inv: vec![0] }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.n + j] as usize
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    /// Conjugation `^i j = i j i^-1`.
    #[inline]
    pub fn conj(&self, i: usize, j: usize) -> usize {
        self.mul(self.mul(i, j), self.inv(i))
    }

    /// Commutator `[i,j] = i j i^-1 j^-1`.
    #[inline]
    pub fn comm(&self, i: usize, j: usize) -> usize {
        self.mul(self.conj(i, j), self.inv(j))
    }

    pub fn raw_mul(&self) -> &[u32] {
        &self.mul
    }

    /// Order of the cyclic subgroup generated by `i`.
    pub fn order_of(&self, i: usize) -> usize {
        let mut k = 1;
        let mut p = i;
        while p != 0 {
            p = self.mul(p, i);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Full check of identity, associativity and inverses.
    ///
    /// Reports the first violated instance in scan order.
    pub fn validate(&self) -> std::result::Result<(), GroupDefect> {
        for i in 0..self.n {
            if self.mul(0, i) != i || self.mul(i, 0) != i {
                return Err(GroupDefect::Identity { elem: i });
            }
        }
        for i in 0..self.n {
            let j = self.inv(i);
            if self.mul(i, j) != 0 || self.mul(j, i) != 0 {
                return Err(GroupDefect::Inverse { elem: i });
            }
        }
        for x in 0..self.n {
            for y in 0..self.n {
                let xy = self.mul(x, y);
                for z in 0..self.n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(GroupDefect::Associativity { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest subgroup containing `gens`, as a sorted member list.
    pub fn subgroup_generated(&self, gens: &[usize]) -> SubSet {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue: Vec<usize> = vec![0];
        let mut gens_clean: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        gens_clean.sort_unstable();
        gens_clean.dedup();
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &g in &gens_clean {
                let f = self.mul(e, g);
                if !seen[f] {
                    seen[f] = true;
                    queue.push(f);
                }
            }
        }
        SubSet::from_seen(&seen)
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[usize]) -> SubSet {
        let mut gen_set: Vec<usize> = gens.to_vec();
        loop {
            let h = self.subgroup_generated(&gen_set);
            let mut grew = false;
            for g in 0..self.n {
                for &x in h.members() {
                    let c = self.conj(g, x);
                    if !h.contains(c) {
                        gen_set.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return h;
            }
        }
    }

    pub fn is_subgroup(&self, s: &SubSet) -> bool {
        s.contains(0)
            && s.members().iter().all(|&a| {
                s.contains(self.inv(a)) && s.members().iter().all(|&b| s.contains(self.mul(a, b)))
            })
    }

    pub fn is_normal(&self, s: &SubSet) -> bool {
        self.is_subgroup(s)
            && (0..self.n).all(|g| s.members().iter().all(|&x| s.contains(self.conj(g, x))))
    }

    /// Restricts the table to a subgroup, re-indexing members in sorted order.
    ///
    /// Returns the sub-table and the member list (new index -> old index).
    pub fn subgroup_table(&self, s: &SubSet) -> Result<(GroupTable, Vec<usize>)> {
        if !self.is_subgroup(s) {
            return Err(Error::Precondition("member set is not a subgroup".into()));
        }
        let members: Vec<usize> = s.members().to_vec();
        let back: std::collections::HashMap<usize, usize> =
            members.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let m = members.len();
        let mut mul = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                mul[a * m + b] = back[&self.mul(members[a], members[b])] as u32;
            }
        }
        Ok((GroupTable::from_mul(m, mul)?, members))
    }

    /// Quotient by a normal subgroup. Cosets are numbered by ascending
    /// minimal representative, so the identity coset is index 0.
    ///
    /// Returns the quotient table, the projection (length-n element map),
    /// and the representative of each coset.
    pub fn quotient(&self, nsub: &SubSet) -> Result<(GroupTable, Vec<u32>, Vec<usize>)> {
        if !self.is_normal(nsub) {
            return Err(Error::Precondition("subgroup is not normal".into()));
        }
        let mut coset_of = vec![u32::MAX; self.n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.n {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            for &h in nsub.members() {
                coset_of[self.mul(x, h)] = c;
            }
            reps.push(x);
        }
        let q = reps.len();
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = coset_of[self.mul(reps[a], reps[b])];
            }
        }
        Ok((GroupTable::from_mul(q, mul)?, coset_of, reps))
    }
}

/// Element-wise map between two tables, stored as images by source index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMap {
    image: Vec<u32>,
}

impl GroupMap {
    pub fn new(image: Vec<u32>) -> GroupMap {
        GroupMap { image }
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.image
    }

    /// Elements mapping to the identity.
    pub fn kernel(&self) -> SubSet {
        SubSet::from_sorted(
            self.image
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == 0)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    /// Sorted, deduplicated image set.
    pub fn image_set(&self) -> SubSet {
        let mut v: Vec<usize> = self.image.iter().map(|&x| x as usize).collect();
        v.sort_unstable();
        v.dedup();
        SubSet::from_sorted(v)
    }

    pub fn is_homomorphism(&self, src: &GroupTable, dst: &GroupTable) -> bool {
        self.image.len() == src.n()
            && (0..src.n()).all(|i| {
                (0..src.n())
                    .all(|j| self.apply(src.mul(i, j)) == dst.mul(self.apply(i), self.apply(j)))
            })
    }

    pub fn is_surjective_onto(&self, dst: &GroupTable) -> bool {
        self.image_set().len() == dst.n()
    }

    pub fn compose(&self, then: &GroupMap) -> GroupMap {
        GroupMap::new(self.image.iter().map(|&v| then.image[v as usize]).collect())
    }
}

/// Unique homomorphism extending `images` on the given generating elements,
/// if one exists.
///
/// `gens[k]` must generate `src`; `images[k]` are target elements. The map
/// is grown over the Cayley graph and then verified on the full table.
pub fn hom_from_generators(
    src: &GroupTable,
    dst: &GroupTable,
    gens: &[usize],
    images: &[usize],
) -> Option<GroupMap> {
    assert_eq!(gens.len(), images.len());
    let mut image = vec![u32::MAX; src.n()];
    image[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let e = queue[head];
        head += 1;
        for (k, &g) in gens.iter().enumerate() {
            let f = src.mul(e, g);
            let fi = dst.mul(image[e] as usize, images[k]) as u32;
            if image[f] == u32::MAX {
                image[f] = fi;
                queue.push(f);
            } else if image[f] != fi {
                return None;
            }
        }
    }
    if image.iter().any(|&v| v == u32::MAX) {
        return None; // gens do not generate
    }
    let map = GroupMap::new(image);
    for (k, &g) in gens.iter().enumerate() {
        if map.apply(g) != images[k] {
            return None;
        }
    }
    if !map.is_homomorphism(src, dst) {
        return None;
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn trivial_group_is_valid() {
        let t = GroupTable::trivial();
        assert!(t.validate().is_ok());
        assert_eq!(t.n(), 1);
    }

    #[test]
    fn klein_four_is_valid() {
        let t = corpus::klein_four();
        assert!(t.validate().is_ok());
        assert!(t.is_abelian());
        assert_eq!(t.order_of(1), 2);
    }

    #[test]
    fn missing_inverse_is_rejected() {
        // 2x2 table with mul(1,1)=1: no inverse for 1.
        let err = GroupTable::from_mul(2, vec![0, 1, 1, 1]).unwrap_err();
        match err {
            Error::Group(GroupDefect::Inverse { elem }) => assert_eq!(elem, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn malformed_entry_is_structural_error() {
        let err = GroupTable::from_mul(2, vec![0, 1, 1, 7]).unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
    }

    #[test]
    fn s3_commutators_land_in_a3() {
        let t = corpus::symmetric_3();
        assert!(t.validate().is_ok());
        let derived: Vec<usize> = {
            let mut gens = vec![];
            for i in 0..t.n() {
                for j in 0..t.n() {
                    gens.push(t.comm(i, j));
                }
            }
            t.subgroup_generated(&gens).members().to_vec()
        };
        assert_eq!(derived.len(), 3);
    }

    #[test]
    fn normal_closure_of_reflection_is_whole_s3() {
        let t = corpus::symmetric_3();
        let s = (0..t.n()).find(|&x| t.order_of(x) == 2).unwrap();
        assert_eq!(t.normal_closure(&[s]).len(), 6);
    }

    #[test]
    fn quotient_v4_by_order2() {
        let t = corpus::klein_four();
        let h = t.subgroup_generated(&[1]);
        let (q, proj, _) = t.quotient(&h).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(proj[0], 0);
        let pm = GroupMap::new(proj);
        assert!(pm.is_homomorphism(&t, &q));
        assert_eq!(pm.kernel().members(), h.members());
    }

    #[test]
    fn hom_from_generators_v4_onto_z2() {
        let t = corpus::klein_four();
        let z2 = corpus::cyclic(2);
        let m = hom_from_generators(&t, &z2, &[1, 2], &[1, 0]).unwrap();
        assert!(m.is_surjective_onto(&z2));
        assert_eq!(m.kernel().len(), 2);
        // order obstruction: V4 has no element of order 3
        assert!(hom_from_generators(&t, &corpus::cyclic(3), &[1, 2], &[1, 0]).is_none());
    }
}
