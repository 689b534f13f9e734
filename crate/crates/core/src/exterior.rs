//! Lie exterior square and curly Lie exterior square: presentation
//! building, realization by coset enumeration, and star extension.

use crate::error::{Error, Result};
use crate::fp::{todd_coxeter, Presentation, RealizedGroup, Word};
use crate::mla::FiniteMla;
use crate::table::GroupMap;

/// Which square is being built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Symbols die only on identity/diagonal pairs.
    Wedge,
    /// A wedge symbol dies when its pair star-commutes, a bracket symbol
    /// when its pair commutes.
    Curly,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Wedge => "wedge",
            Variant::Curly => "curly",
        }
    }
}

/// How relation (5) is turned into group relators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel5Mode {
    /// Only the printed group equality `[x^y, u^v] = [[x,y]0, u^v]`.
    PairAb,
    /// All three pairwise equalities among the wedge-wedge, bracket-wedge
    /// and bracket-bracket commutators.
    ThreePairwise,
}

/// Pair symbols to generator indices: wedge symbols first, then brackets;
/// total generator count is `2 n^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExteriorSymbols {
    n: usize,
}

impl ExteriorSymbols {
    pub fn new(n: usize) -> ExteriorSymbols {
        ExteriorSymbols { n }
    }

    #[inline]
    pub fn wedge(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    #[inline]
    pub fn bracket(&self, i: usize, j: usize) -> usize {
        self.n * self.n + i * self.n + j
    }

    pub fn gen_count(&self) -> usize {
        2 * self.n * self.n
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Reverse lookup: generator index -> (is_wedge, i, j).
    pub fn describe(&self, gen: usize) -> (bool, usize, usize) {
        let nn = self.n * self.n;
        if gen < nn {
            (true, gen / self.n, gen % self.n)
        } else {
            (false, (gen - nn) / self.n, (gen - nn) % self.n)
        }
    }
}

/// Emits the defining relators of the chosen square over all tuples,
/// freely reduced, duplicates removed. Star clauses of relation (5) and all
/// of relation (9) are not group relators; they are realized afterwards by
/// [`RealizedExterior::extend_star`].
pub fn presentation_with_mode(
    m: &FiniteMla,
    variant: Variant,
    rel5: Rel5Mode,
) -> (Presentation, ExteriorSymbols) {
    let n = m.n();
    let t = m.group();
    let sy = ExteriorSymbols::new(n);
    let w = |i: usize, j: usize| (sy.wedge(i, j) + 1) as i32;
    let b = |i: usize, j: usize| (sy.bracket(i, j) + 1) as i32;

    let mut rels: Vec<Word> = Vec::new();
    let mut seen: std::collections::HashSet<Word> = std::collections::HashSet::new();
    let mut push = |rels: &mut Vec<Word>, word: Vec<i32>| {
        let r = crate::fp::free_reduce(&word);
        if !r.is_empty() && seen.insert(crate::fp::canonical_cyclic(&r)) {
            rels.push(r);
        }
    };
    let comm_word = |a: i32, c: i32| vec![a, c, -a, -c];
    let inv4 = |v: &[i32]| crate::fp::invert_word(v);

    // (1)
    match variant {
        Variant::Wedge => {
            for x in 0..n {
                for word in [w(0, x), w(x, 0), w(x, x), b(0, x), b(x, 0), b(x, x)] {
                    push(&mut rels, vec![word]);
                }
            }
        }
        Variant::Curly => {
            for x in 0..n {
                for y in 0..n {
                    if m.star(x, y) == 0 {
                        push(&mut rels, vec![w(x, y)]);
                    }
                    if t.comm(x, y) == 0 {
                        push(&mut rels, vec![b(x, y)]);
                    }
                }
            }
        }
    }
    // (2)
    for x in 0..n {
        for y in 0..n {
            push(&mut rels, vec![w(x, y), w(y, x)]);
            push(&mut rels, vec![b(x, y), b(y, x)]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // (3)  x^(yz) = (x^y)(^yx ^ ^yz)
                let (cy_x, cy_z) = (t.conj(y, x), t.conj(y, z));
                push(&mut rels, vec![-w(x, t.mul(y, z)), w(x, y), w(cy_x, cy_z)]);
                push(&mut rels, vec![-b(x, t.mul(y, z)), b(x, y), b(cy_x, cy_z)]);
                // (4)  (xy)^z = (^xy ^ ^xz)(x^z)
                let (cx_y, cx_z) = (t.conj(x, y), t.conj(x, z));
                push(&mut rels, vec![-w(t.mul(x, y), z), w(cx_y, cx_z), w(x, z)]);
                push(&mut rels, vec![-b(t.mul(x, y), z), b(cx_y, cx_z), b(x, z)]);
                // (6)  (x^y)(^zy ^ ^zx) = (^{xy}x^-1 ^ ^xz)(x^z)
                let (cz_y, cz_x) = (t.conj(z, y), t.conj(z, x));
                let c = t.conj(t.mul(x, y), t.inv(x));
                let mut word = vec![w(x, y), w(cz_y, cz_x), -w(x, z), -w(c, cx_z)];
                push(&mut rels, std::mem::take(&mut word));
                // (7)  bracket form of (6)
                push(&mut rels, vec![b(x, y), b(cz_y, cz_x), -b(x, z), -b(c, cx_z)]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for u in 0..n {
                for v in 0..n {
                    // (5) group equalities among commutators
                    let a_w = comm_word(w(x, y), w(u, v));
                    let b_w = comm_word(b(x, y), w(u, v));
                    let mut r = a_w.clone();
                    r.extend(inv4(&b_w));
                    push(&mut rels, r);
                    if rel5 == Rel5Mode::ThreePairwise {
                        let e_w = comm_word(b(x, y), b(u, v));
                        let mut r = b_w.clone();
                        r.extend(inv4(&e_w));
                        push(&mut rels, r);
                        let mut r = a_w.clone();
                        r.extend(inv4(&e_w));
                        push(&mut rels, r);
                    }
                    // (8) [[x,y]0,[u,v]0] = [[x,y],[u,v]]0
                    let mut r = comm_word(b(x, y), b(u, v));
                    r.push(-b(t.comm(x, y), t.comm(u, v)));
                    push(&mut rels, r);
                }
            }
        }
    }
    let p = Presentation::new(sy.gen_count(), rels).expect("letters in range");
    (p, sy)
}

pub fn wedge_presentation(m: &FiniteMla) -> (Presentation, ExteriorSymbols) {
    presentation_with_mode(m, Variant::Wedge, Rel5Mode::ThreePairwise)
}

pub fn curly_presentation(m: &FiniteMla) -> (Presentation, ExteriorSymbols) {
    presentation_with_mode(m, Variant::Curly, Rel5Mode::ThreePairwise)
}

/// A realized square: the presented group as a Cayley table, the symbol
/// map, and the canonical homomorphism onto the derived subalgebra.
#[derive(Debug, Clone)]
pub struct RealizedExterior {
    pub parent: FiniteMla,
    pub variant: Variant,
    pub symbols: ExteriorSymbols,
    pub realized: RealizedGroup,
    pub chi: GroupMap,
}

/// Star extension outcome: the full star table when every check passed,
/// otherwise the first inconsistency.
#[derive(Debug, Clone)]
pub struct StarReport {
    pub star: Option<Vec<u32>>,
    pub failure: Option<String>,
}

impl StarReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn realize_exterior(m: &FiniteMla, variant: Variant, max_cosets: usize) -> Result<RealizedExterior> {
    realize_with_mode(m, variant, Rel5Mode::ThreePairwise, max_cosets)
}

pub fn realize_with_mode(
    m: &FiniteMla,
    variant: Variant,
    rel5: Rel5Mode,
    max_cosets: usize,
) -> Result<RealizedExterior> {
    let (p, symbols) = presentation_with_mode(m, variant, rel5);
    let realized = todd_coxeter(&p, max_cosets)?;
    // chi: wedge (i,j) -> i*j, bracket (i,j) -> [i,j]
    let n = m.n();
    let mut images = vec![0usize; symbols.gen_count()];
    for i in 0..n {
        for j in 0..n {
            images[symbols.wedge(i, j)] = m.star(i, j);
            images[symbols.bracket(i, j)] = m.group().comm(i, j);
        }
    }
    let chi = realized.hom_to(m.group(), &images).ok_or_else(|| {
        let witness = realized
            .violated_relator(m.group(), &images)
            .map(|r| format!("{r:?}"))
            .unwrap_or_default();
        Error::Internal(format!(
            "chi undefined on the {} realization: relator {witness} maps to a non-identity",
            variant.as_str()
        ))
    })?;
    // image of chi must be exactly the derived subalgebra
    let derived = m.derived_subalgebra();
    let image = chi.image_set();
    if image.members() != derived.members() {
        return Err(Error::Internal(format!(
            "chi image {image} differs from the derived subalgebra {derived}"
        )));
    }
    Ok(RealizedExterior {
        parent: m.clone(),
        variant,
        symbols,
        realized,
        chi,
    })
}

impl RealizedExterior {
    pub fn order(&self) -> usize {
        self.realized.table.n()
    }

    pub fn kernel(&self) -> crate::subset::SubSet {
        self.chi.kernel()
    }

    /// Element of the realization carrying a wedge symbol.
    pub fn wedge_elem(&self, i: usize, j: usize) -> usize {
        self.realized.gen_images[self.symbols.wedge(i, j)]
    }

    /// Element of the realization carrying a bracket symbol.
    pub fn bracket_elem(&self, i: usize, j: usize) -> usize {
        self.realized.gen_images[self.symbols.bracket(i, j)]
    }

    /// Defines the square's own star on generator pairs (relation (9) for
    /// wedge-wedge, the relation (5) commutators for pairs involving a
    /// bracket), extends it to all elements along definition words via the
    /// twisted-biadditivity axioms, and validates the full table against
    /// all five axioms plus the relation (5)/(9) instances.
    pub fn extend_star(&self, cap: usize) -> Result<StarReport> {
        let t = &self.realized.table;
        let nw = t.n();
        if nw > cap {
            return Err(Error::ResourceLimit(format!(
                "realization order {nw} exceeds star cap {cap}"
            )));
        }
        let n = self.parent.n();
        let fail = |msg: String| StarReport { star: None, failure: Some(msg) };

        // star on generator-image pairs, with conflict detection
        let mut base: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let mut assign = |base: &mut std::collections::HashMap<(usize, usize), usize>,
                          a: usize,
                          b: usize,
                          v: usize|
         -> Option<String> {
            match base.insert((a, b), v) {
                Some(old) if old != v => Some(format!(
                    "conflicting star values {old} and {v} for element pair ({a},{b})"
                )),
                _ => None,
            }
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let gw1 = self.wedge_elem(i, j);
                        let gw2 = self.wedge_elem(k, l);
                        let gb1 = self.bracket_elem(i, j);
                        let gb2 = self.bracket_elem(k, l);
                        // (9): (i^j) * (k^l) = (i*j) ^ (k*l)
                        let v9 = self.wedge_elem(
                            self.parent.star(i, j),
                            self.parent.star(k, l),
                        );
                        // (5): [i,j]0 * (k^l) = [[i,j]0, k^l] (= bracket * bracket)
                        let v5 = t.comm(gb1, gw2);
                        for (a, b2, v) in [
                            (gw1, gw2, v9),
                            (gb1, gw2, v5),
                            (gb1, gb2, v5),
                            (gw2, gb1, t.inv(v5)),
                        ] {
                            if let Some(msg) = assign(&mut base, a, b2, v) {
                                return Ok(fail(msg));
                            }
                        }
                    }
                }
            }
        }
        // identity pairs
        for e in 0..nw {
            base.insert((0, e), 0);
            base.insert((e, 0), 0);
        }
        // extension along definition words
        let gens: Vec<usize> = {
            let mut v: Vec<usize> = self.realized.gen_images.clone();
            v.retain(|&e| e != 0);
            v.sort_unstable();
            v.dedup();
            v
        };
        let words = crate::corpus::GenWords::new(t, &gens);
        let mut memo = vec![u32::MAX; nw * nw];
        let mut star = vec![0u32; nw * nw];
        for x in 0..nw {
            for y in 0..nw {
                match crate::corpus::star_extend(t, &words, &base, &mut memo, x, y) {
                    Some(v) => star[x * nw + y] = v as u32,
                    None => {
                        return Ok(fail(format!(
                            "no base star value reachable for pair ({x},{y})"
                        )))
                    }
                }
            }
        }
        // full validation: the five axioms
        let cand = FiniteMla::new(t.clone(), star.clone())?;
        if let Err(d) = cand.validate() {
            return Ok(fail(format!("extended star violates {d}")));
        }
        // relation (5) and (9) instances on symbols
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let gw1 = self.wedge_elem(i, j);
                        let gw2 = self.wedge_elem(k, l);
                        let gb1 = self.bracket_elem(i, j);
                        let gb2 = self.bracket_elem(k, l);
                        let r9 = self
                            .wedge_elem(self.parent.star(i, j), self.parent.star(k, l));
                        if cand.star(gw1, gw2) != r9 {
                            return Ok(fail(format!(
                                "relation (9) fails at ({i},{j},{k},{l})"
                            )));
                        }
                        let c1 = t.comm(gw1, gw2);
                        let c2 = t.comm(gb1, gw2);
                        if c1 != c2
                            || cand.star(gb1, gw2) != c2
                            || cand.star(gb1, gb2) != c2
                        {
                            return Ok(fail(format!(
                                "relation (5) chain fails at ({i},{j},{k},{l})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(StarReport { star: Some(star), failure: None })
    }

    /// The realization as a finite algebra, when the star extends.
    pub fn as_mla(&self, cap: usize) -> Result<FiniteMla> {
        let rep = self.extend_star(cap)?;
        match rep.star {
            Some(star) => FiniteMla::new(self.realized.table.clone(), star),
            None => Err(Error::Internal(format!(
                "star extension failed: {}",
                rep.failure.unwrap_or_default()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const BUDGET: usize = 1 << 20;

    #[test]
    fn trivial_group_squares_are_trivial() {
        let m = FiniteMla::trivial_structure(crate::table::GroupTable::trivial());
        let (p, sy) = wedge_presentation(&m);
        assert_eq!(sy.gen_count(), 2);
        assert!(p.gen_count() == 2);
        let r = realize_exterior(&m, Variant::Wedge, BUDGET).unwrap();
        assert_eq!(r.order(), 1);
    }

    #[test]
    fn z2_trivial_star_wedge_is_trivial() {
        // relation (1) kills every symbol with a repeated or identity argument
        let m = FiniteMla::trivial_structure(corpus::cyclic(2));
        let r = realize_exterior(&m, Variant::Wedge, BUDGET).unwrap();
        assert_eq!(r.order(), 1);
        assert_eq!(r.kernel().len(), 1);
    }

    #[test]
    fn v4_example_realizations() {
        let m = corpus::v4_example();
        let (p, sy) = wedge_presentation(&m);
        assert_eq!(sy.gen_count(), 32);
        assert_eq!(p.gen_count(), 32);
        let r = realize_exterior(&m, Variant::Wedge, BUDGET).unwrap();
        // Lagrange bookkeeping: |W| = |ker chi| * |derived|
        assert_eq!(r.order(), r.kernel().len() * 2);
        let rc = realize_exterior(&m, Variant::Curly, BUDGET).unwrap();
        assert_eq!(rc.order(), rc.kernel().len() * 2);
    }

    #[test]
    fn exactness_bookkeeping_over_small_corpus() {
        for (_, t) in corpus::groups_up_to(6) {
            for m in corpus::enumerate_stars(&t, 16).unwrap() {
                for variant in [Variant::Wedge, Variant::Curly] {
                    let r = realize_exterior(&m, variant, BUDGET).unwrap();
                    let d = m.derived_subalgebra();
                    assert_eq!(r.order(), r.kernel().len() * d.len());
                }
            }
        }
    }

    #[test]
    fn wedge_maps_onto_curly() {
        // every wedge relator holds in the curly realization
        for (_, t) in corpus::groups_up_to(6) {
            for m in corpus::enumerate_stars(&t, 16).unwrap() {
                let rw = realize_exterior(&m, Variant::Wedge, BUDGET).unwrap();
                let rc = realize_exterior(&m, Variant::Curly, BUDGET).unwrap();
                let map = rw
                    .realized
                    .hom_to(&rc.realized.table, &rc.realized.gen_images);
                assert!(map.is_some(), "no natural surjection wedge -> curly");
                assert!(map.unwrap().is_surjective_onto(&rc.realized.table));
            }
        }
    }

    #[test]
    fn star_extension_on_v4_realizations() {
        let m = corpus::v4_example();
        for variant in [Variant::Wedge, Variant::Curly] {
            let r = realize_exterior(&m, variant, BUDGET).unwrap();
            let rep = r.extend_star(4096).unwrap();
            assert!(rep.ok(), "star extension failed: {:?}", rep.failure);
            let sq = r.as_mla(4096).unwrap();
            assert!(sq.validate().is_ok());
        }
    }

    #[test]
    fn ker_chi_central_over_small_corpus() {
        for (_, t) in corpus::groups_up_to(6) {
            for m in corpus::enumerate_stars(&t, 16).unwrap() {
                for variant in [Variant::Wedge, Variant::Curly] {
                    let r = realize_exterior(&m, variant, BUDGET).unwrap();
                    let ker = r.kernel();
                    let tbl = &r.realized.table;
                    for &k in ker.members() {
                        for g in 0..tbl.n() {
                            assert_eq!(tbl.mul(k, g), tbl.mul(g, k));
                        }
                    }
                }
            }
        }
    }
}
