//! Finite multiplicative Lie algebras and their structure operations.

use crate::error::{Error, MlaDefect, Result};
use crate::subset::SubSet;
use crate::table::{GroupMap, GroupTable};

/// A finite group together with a star table over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMla {
    group: GroupTable,
    star: Vec<u32>,
}

/// A map between two algebras that respects both operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlaMorphism {
    pub image: GroupMap,
}

impl MlaMorphism {
    pub fn is_valid(&self, src: &FiniteMla, dst: &FiniteMla) -> bool {
        self.image.is_homomorphism(src.group(), dst.group())
            && (0..src.n()).all(|x| {
                (0..src.n()).all(|y| {
                    self.image.apply(src.star(x, y))
                        == dst.star(self.image.apply(x), self.image.apply(y))
                })
            })
    }
}

impl FiniteMla {
    /// Structural construction; axioms are checked by [`validate`].
    ///
    /// [`validate`]: FiniteMla::validate
    pub fn new(group: GroupTable, star: Vec<u32>) -> Result<FiniteMla> {
        let n = group.n();
        if star.len() != n * n {
            return Err(Error::Malformed(format!(
                "star table has {} entries, expected {}",
                star.len(),
                n * n
            )));
        }
        if let Some(&e) = star.iter().find(|&&e| e as usize >= n) {
            return Err(Error::Malformed(format!("star entry {e} out of range")));
        }
        Ok(FiniteMla { group, star })
    }

    /// The trivial structure `x*y = 1` on a group.
    pub fn trivial_structure(group: GroupTable) -> FiniteMla {
        let n = group.n();
        FiniteMla { group, star: vec![0; n * n] }
    }

    /// The canonical structure `x*y = [x,y]`.
    pub fn commutator_structure(group: &GroupTable) -> Result<FiniteMla> {
        let n = group.n();
        let mut star = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                star[i * n + j] = group.comm(i, j) as u32;
            }
        }
        FiniteMla::new(group.clone(), star)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.group.n()
    }

    #[inline]
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    #[inline]
    pub fn star(&self, i: usize, j: usize) -> usize {
        self.star[i * self.group.n() + j] as usize
    }

    pub fn raw_star(&self) -> &[u32] {
        &self.star
    }

    pub fn star_is_trivial(&self) -> bool {
        self.star.iter().all(|&v| v == 0)
    }

    /// Checks the five defining axioms over all triples; reports the axiom
    /// number and a witness on the first failure. The group table must
    /// already be valid.
    pub fn validate(&self) -> std::result::Result<(), MlaDefect> {
        let n = self.n();
        let t = &self.group;
        // (1) x*x = 1
        for x in 0..n {
            if self.star(x, x) != 0 {
                return Err(MlaDefect { axiom: 1, witness: (x, x, x) });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // (2) x*(yz) = (x*y) ^y(x*z)
                    let lhs = self.star(x, t.mul(y, z));
                    let rhs = t.mul(self.star(x, y), t.conj(y, self.star(x, z)));
                    if lhs != rhs {
                        return Err(MlaDefect { axiom: 2, witness: (x, y, z) });
                    }
                    // (3) (xy)*z = ^x(y*z) (x*z)
                    let lhs = self.star(t.mul(x, y), z);
                    let rhs = t.mul(t.conj(x, self.star(y, z)), self.star(x, z));
                    if lhs != rhs {
                        return Err(MlaDefect { axiom: 3, witness: (x, y, z) });
                    }
                    // (4) ((x*y) * ^yz)((y*z) * ^zx)((z*x) * ^xy) = 1
                    let a = self.star(self.star(x, y), t.conj(y, z));
                    let b = self.star(self.star(y, z), t.conj(z, x));
                    let c = self.star(self.star(z, x), t.conj(x, y));
                    if t.mul(t.mul(a, b), c) != 0 {
                        return Err(MlaDefect { axiom: 4, witness: (x, y, z) });
                    }
                    // (5) ^z(x*y) = (^zx * ^zy)
                    let lhs = t.conj(z, self.star(x, y));
                    let rhs = self.star(t.conj(z, x), t.conj(z, y));
                    if lhs != rhs {
                        return Err(MlaDefect { axiom: 5, witness: (x, y, z) });
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest subgroup containing all star values and all commutators;
    /// always an ideal.
    pub fn derived_subalgebra(&self) -> SubSet {
        let n = self.n();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                gens.push(self.star(i, j));
                gens.push(self.group.comm(i, j));
            }
        }
        self.group.subgroup_generated(&gens)
    }

    /// `{z : z central in the group and z*g = 1 for all g}`; an ideal.
    pub fn ml_center(&self) -> SubSet {
        let n = self.n();
        SubSet::from_sorted(
            (0..n)
                .filter(|&z| {
                    (0..n).all(|g| {
                        self.group.mul(z, g) == self.group.mul(g, z)
                            && self.star(z, g) == 0
                            && self.star(g, z) == 0
                    })
                })
                .collect(),
        )
    }

    /// `{(x*y)[x,y] : x,y}` as a plain element set (not a subgroup).
    pub fn k_set(&self) -> SubSet {
        let n = self.n();
        let mut v = Vec::new();
        for x in 0..n {
            for y in 0..n {
                v.push(self.group.mul(self.star(x, y), self.group.comm(x, y)));
            }
        }
        SubSet::from_unsorted(v)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subalgebra().len() == self.n()
    }

    /// Is `s` a subalgebra: closed under mul, inv and star.
    pub fn is_subalgebra(&self, s: &SubSet) -> bool {
        self.group.is_subgroup(s)
            && s.members()
                .iter()
                .all(|&a| s.members().iter().all(|&b| s.contains(self.star(a, b))))
    }

    /// Is `s` an ideal: a normal subgroup absorbing star on both sides.
    pub fn is_ideal(&self, s: &SubSet) -> bool {
        self.group.is_normal(s)
            && (0..self.n()).all(|g| {
                s.members()
                    .iter()
                    .all(|&x| s.contains(self.star(g, x)) && s.contains(self.star(x, g)))
            })
    }

    /// All subgroups of the underlying group, sorted by size then members.
    pub fn enumerate_subgroups(&self, cap: usize) -> Result<Vec<SubSet>> {
        if self.n() > cap {
            return Err(Error::ResourceLimit(format!(
                "subgroup enumeration: order {} exceeds cap {cap}",
                self.n()
            )));
        }
        let t = &self.group;
        let mut found: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        let mut frontier: Vec<SubSet> = vec![t.subgroup_generated(&[])];
        found.insert(frontier[0].members().to_vec());
        while let Some(s) = frontier.pop() {
            for g in 1..self.n() {
                if s.contains(g) {
                    continue;
                }
                let mut gens = s.members().to_vec();
                gens.push(g);
                let bigger = t.subgroup_generated(&gens);
                if found.insert(bigger.members().to_vec()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<SubSet> = found.into_iter().map(SubSet::from_sorted).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.members().cmp(b.members())));
        Ok(out)
    }

    /// All ideals, sorted by size then lexicographic membership.
    pub fn enumerate_ideals(&self, cap: usize) -> Result<Vec<SubSet>> {
        Ok(self
            .enumerate_subgroups(cap)?
            .into_iter()
            .filter(|s| self.is_ideal(s))
            .collect())
    }

    /// All abelian subgroups whose restricted star is identically trivial.
    pub fn enumerate_abelian_subalgebras(&self, cap: usize) -> Result<Vec<SubSet>> {
        Ok(self
            .enumerate_subgroups(cap)?
            .into_iter()
            .filter(|s| {
                s.members().iter().all(|&a| {
                    s.members().iter().all(|&b| {
                        self.group.mul(a, b) == self.group.mul(b, a) && self.star(a, b) == 0
                    })
                })
            })
            .collect())
    }

    /// Coset algebra modulo an ideal, with the projection morphism.
    pub fn quotient(&self, h: &SubSet) -> Result<(FiniteMla, MlaMorphism)> {
        if !self.is_ideal(h) {
            return Err(Error::Precondition("quotient requires an ideal".into()));
        }
        let (qt, coset_of, reps) = self.group.quotient(h)?;
        let q = qt.n();
        let mut star = vec![0u32; q * q];
        for a in 0..q {
            for b in 0..q {
                star[a * q + b] = coset_of[self.star(reps[a], reps[b])];
            }
        }
        let qm = FiniteMla::new(qt, star)?;
        let morph = MlaMorphism { image: GroupMap::new(coset_of) };
        debug_assert!(morph.is_valid(self, &qm));
        Ok((qm, morph))
    }

    /// Quotient by the derived subalgebra: an abelian group with trivial star.
    pub fn abelianizer(&self) -> FiniteMla {
        let d = self.derived_subalgebra();
        self.quotient(&d).expect("derived subalgebra is an ideal").0
    }

    /// The sub-MLA on a subalgebra's members, re-indexed; returns the
    /// algebra and the member list (new index -> old index).
    pub fn sub_mla(&self, s: &SubSet) -> Result<(FiniteMla, Vec<usize>)> {
        if !self.is_subalgebra(s) {
            return Err(Error::Precondition("member set is not a subalgebra".into()));
        }
        let (gt, members) = self.group.subgroup_table(s)?;
        let back: std::collections::HashMap<usize, usize> =
            members.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let m = members.len();
        let mut star = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                star[a * m + b] = back[&self.star(members[a], members[b])] as u32;
            }
        }
        Ok((FiniteMla::new(gt, star)?, members))
    }
}
