//! Standard small groups and exhaustive enumeration of star structures.

use crate::error::{Error, Result};
use crate::mla::FiniteMla;
use crate::table::GroupTable;

/// Cyclic group of order `n`; element `i` is the i-th power of the generator.
pub fn cyclic(n: usize) -> GroupTable {
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = ((i + j) % n) as u32;
        }
    }
    GroupTable::from_mul(n, mul).unwrap()
}

/// Direct product; index is `a * b.n() + b_index`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
    let (na, nb) = (a.n(), b.n());
    let n = na * nb;
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            mul[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
        }
    }
    GroupTable::from_mul(n, mul).unwrap()
}

/// Dihedral group of order `2n`: elements `0..n` are rotations `r^i`,
/// `n..2n` are reflections `r^i s`.
pub fn dihedral(n: usize) -> GroupTable {
    let m = 2 * n;
    let mut mul = vec![0u32; m * m];
    let enc = |rot: bool, i: usize| if rot { i } else { n + i };
    for x in 0..m {
        for y in 0..m {
            let (xr, xi) = (x < n, x % n);
            let (yr, yi) = (y < n, y % n);
            // (r^a s^e)(r^b s^f) = r^(a + b or a - b) s^(e+f)
            let v = match (xr, yr) {
                (true, true) => enc(true, (xi + yi) % n),
                (true, false) => enc(false, (xi + yi) % n),
                (false, true) => enc(false, (xi + n - yi) % n),
                (false, false) => enc(true, (xi + n - yi) % n),
            };
            mul[x * m + y] = v as u32;
        }
    }
    GroupTable::from_mul(m, mul).unwrap()
}

/// Quaternion group of order 8: 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion() -> GroupTable {
    // sign bit in s, axis in a: 0=1, 1=i, 2=j, 3=k; index = a*2 + s.
    let qm = |a1: usize, s1: usize, a2: usize, s2: usize| -> (usize, usize) {
        let mut s = s1 ^ s2;
        let a = match (a1, a2) {
            (0, a) | (a, 0) => a,
            (a, b) if a == b => {
                s ^= 1;
                0
            }
            (1, 2) => 3,
            (2, 3) => 1,
            (3, 1) => 2,
            (2, 1) => {
                s ^= 1;
                3
            }
            (3, 2) => {
                s ^= 1;
                1
            }
            (1, 3) => {
                s ^= 1;
                2
            }
            _ => unreachable!(),
        };
        (a, s)
    };
    let n = 8;
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let (a, s) = qm(x / 2, x % 2, y / 2, y % 2);
            mul[x * n + y] = (a * 2 + s) as u32;
        }
    }
    GroupTable::from_mul(n, mul).unwrap()
}

pub fn klein_four() -> GroupTable {
    direct_product(&cyclic(2), &cyclic(2))
}

pub fn symmetric_3() -> GroupTable {
    dihedral(3)
}

pub fn elementary_abelian_8() -> GroupTable {
    direct_product(&cyclic(2), &klein_four())
}

/// All groups of order at most `max` (up to isomorphism), `max <= 8`.
pub fn groups_up_to(max: usize) -> Vec<(String, GroupTable)> {
    assert!(max <= 8, "group library covers orders up to 8");
    let mut out: Vec<(String, GroupTable)> = Vec::new();
    let mut push = |name: &str, t: GroupTable| out.push((name.to_string(), t));
    if max >= 1 {
        push("Z1", GroupTable::trivial());
    }
    if max >= 2 {
        push("Z2", cyclic(2));
    }
    if max >= 3 {
        push("Z3", cyclic(3));
    }
    if max >= 4 {
        push("Z4", cyclic(4));
        push("V4", klein_four());
    }
    if max >= 5 {
        push("Z5", cyclic(5));
    }
    if max >= 6 {
        push("Z6", cyclic(6));
        push("S3", symmetric_3());
    }
    if max >= 7 {
        push("Z7", cyclic(7));
    }
    if max >= 8 {
        push("Z8", cyclic(8));
        push("Z4xZ2", direct_product(&cyclic(4), &cyclic(2)));
        push("Z2^3", elementary_abelian_8());
        push("D4", dihedral(4));
        push("Q8", quaternion());
    }
    out
}

/// The Klein four group with the star structure `a*b = a` (indices: a=1, b=2).
pub fn v4_example() -> FiniteMla {
    let t = klein_four();
    let stars = enumerate_stars(&t, 16).unwrap();
    stars
        .into_iter()
        .find(|m| m.star(1, 2) == 1)
        .expect("V4 star structure a*b=a exists")
}

/// Elementary abelian group of order 8 with the cross-product star
/// (e1*e2 = e3 cyclically, extended bilinearly); a perfect algebra.
pub fn cross_product_mla() -> FiniteMla {
    let t = elementary_abelian_8();
    // index bits: e1 = 4, e2 = 2, e3 = 1 (product coordinates)
    let n = 8;
    let cross = |x: usize, y: usize| -> usize {
        let (x1, x2, x3) = (x >> 2 & 1, x >> 1 & 1, x & 1);
        let (y1, y2, y3) = (y >> 2 & 1, y >> 1 & 1, y & 1);
        let z1 = (x2 & y3) ^ (x3 & y2);
        let z2 = (x3 & y1) ^ (x1 & y3);
        let z3 = (x1 & y2) ^ (x2 & y1);
        z1 << 2 | z2 << 1 | z3
    };
    let mut star = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            star[x * n + y] = cross(x, y) as u32;
        }
    }
    let m = FiniteMla::new(t, star).unwrap();
    debug_assert!(m.validate().is_ok());
    m
}

/// A fixed generating sequence: greedily take the element of largest order
/// outside the span so far (smallest index on ties).
pub fn generating_sequence(t: &GroupTable) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = t.subgroup_generated(&[]);
    while span.len() < t.n() {
        let next = (0..t.n())
            .filter(|&x| !span.contains(x))
            .max_by(|&a, &b| {
                t.order_of(a)
                    .cmp(&t.order_of(b))
                    .then(b.cmp(&a)) // prefer the smaller index
            })
            .unwrap();
        gens.push(next);
        span = t.subgroup_generated(&gens);
    }
    gens
}

/// All multiplicative Lie algebra structures on `t`, in deterministic order.
///
/// Star values are chosen on pairs of a fixed generating sequence, extended
/// to the full table along definition words, and the result is kept when all
/// five axioms hold. Completeness: a valid table satisfies the axioms used
/// by the extension, so it is reproduced from its generator-pair values.
pub fn enumerate_stars(t: &GroupTable, cap: usize) -> Result<Vec<FiniteMla>> {
    if t.n() > cap {
        return Err(Error::ResourceLimit(format!(
            "enumerate_stars: group order {} exceeds cap {}",
            t.n(),
            cap
        )));
    }
    let gens = generating_sequence(t);
    let words = GenWords::new(t, &gens);
    let k = gens.len();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; pairs.len()];
    loop {
        if let Some(star) = extend_star_from_pairs(t, &words, &gens, &pairs, &choice) {
            let m = FiniteMla::new(t.clone(), star)?;
            if m.validate().is_ok() {
                out.push(m);
            }
        }
        // next choice vector in lexicographic order
        let mut pos = pairs.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < t.n() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Like [`enumerate_stars`] but with pairwise-isomorphic structures removed
/// (first representative kept), bucketing by cheap invariants first.
pub fn enumerate_stars_dedup(t: &GroupTable, cap: usize) -> Result<Vec<FiniteMla>> {
    let all = enumerate_stars(t, cap)?;
    let mut kept: Vec<(Vec<usize>, FiniteMla)> = Vec::new();
    for m in all {
        let fp = star_fingerprint(&m);
        let dup = kept
            .iter()
            .any(|(f, k)| *f == fp && crate::iso::iso_search(k, &m).is_some());
        if !dup {
            kept.push((fp, m));
        }
    }
    Ok(kept.into_iter().map(|(_, m)| m).collect())
}

fn star_fingerprint(m: &FiniteMla) -> Vec<usize> {
    let derived = m.derived_subalgebra();
    let center = m.ml_center();
    let mut value_hist = vec![0usize; m.n()];
    for x in 0..m.n() {
        for y in 0..m.n() {
            value_hist[m.star(x, y)] += 1;
        }
    }
    value_hist.sort_unstable();
    let mut fp = vec![derived.len(), center.len()];
    fp.extend(value_hist);
    fp
}

/// Definition words over a generating sequence: each element is reached as
/// `parent * gens[g]` in breadth-first order.
pub(crate) struct GenWords {
    gens: Vec<usize>,
    /// (parent element, generator position); identity has none.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<u32>,
}

impl GenWords {
    pub(crate) fn new(t: &GroupTable, gens: &[usize]) -> GenWords {
        let mut parent = vec![None; t.n()];
        let mut depth = vec![u32::MAX; t.n()];
        depth[0] = 0;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for (gi, &g) in gens.iter().enumerate() {
                let f = t.mul(e, g);
                if depth[f] == u32::MAX {
                    depth[f] = depth[e] + 1;
                    parent[f] = Some((e, gi));
                    queue.push(f);
                }
            }
        }
        assert!(
            depth.iter().all(|&d| d != u32::MAX),
            "generators do not generate"
        );
        GenWords { gens: gens.to_vec(), parent, depth }
    }

    #[inline]
    pub(crate) fn depth(&self, e: usize) -> usize {
        self.depth[e] as usize
    }

    #[inline]
    pub(crate) fn parent(&self, e: usize) -> (usize, usize) {
        self.parent[e].expect("identity has no parent")
    }

    #[inline]
    pub(crate) fn gen_elem(&self, gi: usize) -> usize {
        self.gens[gi]
    }
}

/// Extends star values given on generator pairs to the full table using
/// axioms (2) and (3) along definition words. Returns `None` when the
/// recursion is inconsistent at the base (never at these sizes) — full
/// validation is the caller's job.
fn extend_star_from_pairs(
    t: &GroupTable,
    words: &GenWords,
    gens: &[usize],
    pairs: &[(usize, usize)],
    choice: &[usize],
) -> Option<Vec<u32>> {
    let n = t.n();
    // star on generator elements
    let mut base = std::collections::HashMap::new();
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let v = choice[p];
        base.insert((gens[i], gens[j]), v);
        // antisymmetry (x*y)(y*x) = 1 holds in every valid structure
        base.insert((gens[j], gens[i]), t.inv(v));
    }
    for &g in gens {
        base.insert((g, g), 0);
    }
    let mut memo = vec![u32::MAX; n * n];
    let mut star = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            star[x * n + y] = star_extend(t, words, &base, &mut memo, x, y)? as u32;
        }
    }
    Some(star)
}

pub(crate) fn star_extend(
    t: &GroupTable,
    words: &GenWords,
    base: &std::collections::HashMap<(usize, usize), usize>,
    memo: &mut Vec<u32>,
    x: usize,
    y: usize,
) -> Option<usize> {
    let n = t.n();
    if x == 0 || y == 0 {
        return Some(0);
    }
    if memo[x * n + y] != u32::MAX {
        return Some(memo[x * n + y] as usize);
    }
    let v = if words.depth(y) > 1 {
        // x * (p g) = (x*p) ^p(x*g)       [axiom (2)]
        let (p, gi) = words.parent(y);
        let g = words.gen_elem(gi);
        let s1 = star_extend(t, words, base, memo, x, p)?;
        let s2 = star_extend(t, words, base, memo, x, g)?;
        t.mul(s1, t.conj(p, s2))
    } else if words.depth(x) > 1 {
        // (p g) * y = ^p(g*y) (p*y)       [axiom (3)]
        let (p, gi) = words.parent(x);
        let g = words.gen_elem(gi);
        let s1 = star_extend(t, words, base, memo, g, y)?;
        let s2 = star_extend(t, words, base, memo, p, y)?;
        t.mul(t.conj(p, s1), s2)
    } else {
        *base.get(&(x, y))?
    };
    memo[x * n + y] = v as u32;
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_library_is_valid() {
        for (name, t) in groups_up_to(8) {
            assert!(t.validate().is_ok(), "{name} invalid");
        }
        assert!(quaternion().order_of(2) == 4);
        assert!(!quaternion().is_abelian());
        assert!(!dihedral(4).is_abelian());
    }

    #[test]
    fn z2_has_exactly_one_structure() {
        let stars = enumerate_stars(&cyclic(2), 16).unwrap();
        assert_eq!(stars.len(), 1);
        assert!(stars[0].star_is_trivial());
    }

    #[test]
    fn z3_has_exactly_one_structure() {
        let stars = enumerate_stars(&cyclic(3), 16).unwrap();
        assert_eq!(stars.len(), 1);
        assert!(stars[0].star_is_trivial());
    }

    #[test]
    fn v4_structures_include_example() {
        let stars = enumerate_stars(&klein_four(), 16).unwrap();
        assert!(stars.iter().any(|m| m.star_is_trivial()));
        assert!(stars.iter().any(|m| m.star(1, 2) == 1));
        for m in &stars {
            assert!(m.validate().is_ok());
        }
    }

    #[test]
    fn commutator_structure_appears_in_enumeration() {
        for (name, t) in groups_up_to(8) {
            let comm = FiniteMla::commutator_structure(&t).unwrap();
            let stars = enumerate_stars(&t, 16).unwrap();
            assert!(
                stars.iter().any(|m| m.raw_star() == comm.raw_star()),
                "commutator structure missing for {name}"
            );
        }
    }

    #[test]
    fn cross_product_mla_is_perfect() {
        let m = cross_product_mla();
        assert!(m.validate().is_ok());
        assert!(m.is_perfect());
    }
}
