//! Finitely presented groups: HLT coset enumeration with coincidence
//! handling and lookahead compaction, realizing presented groups as
//! concrete Cayley tables.

use crate::error::{Error, Result};
use crate::subset::SubSet;
use crate::table::{GroupMap, GroupTable};

/// A word over abstract generators: letter `k+1` is generator `k`,
/// `-(k+1)` its inverse.
pub type Word = Vec<i32>;

/// Free reduction: cancel adjacent `g g^-1` pairs.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        debug_assert!(l != 0);
        if out.last().is_some_and(|&p| p == -l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// Generators and relator words; relators are freely reduced on ingestion
/// and empty words dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    gen_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(gen_count: usize, relators: Vec<Word>) -> Result<Presentation> {
        let mut out = Vec::with_capacity(relators.len());
        for w in relators {
            if let Some(&l) = w.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > gen_count)
            {
                return Err(Error::Malformed(format!(
                    "relator letter {l} out of range for {gen_count} generators"
                )));
            }
            let r = free_reduce(&w);
            if !r.is_empty() {
                out.push(r);
            }
        }
        Ok(Presentation { gen_count, relators: out })
    }

    pub fn gen_count(&self) -> usize {
        self.gen_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// A finite group realized from a presentation: its Cayley table, where
/// each abstract generator landed, and the presentation it came from.
#[derive(Debug, Clone)]
pub struct RealizedGroup {
    pub table: GroupTable,
    pub gen_images: Vec<usize>,
    pub presentation: Presentation,
}

impl RealizedGroup {
    /// Product of generator images along a word.
    pub fn evaluate_word(&self, w: &[i32]) -> usize {
        evaluate_in(&self.table, &self.gen_images, w)
    }

    /// The induced homomorphism to `target` sending generator `k` to
    /// `images[k]`, when every relator maps to the identity; `None` when a
    /// relator obstructs.
    pub fn hom_to(&self, target: &GroupTable, images: &[usize]) -> Option<GroupMap> {
        assert_eq!(images.len(), self.presentation.gen_count());
        for r in self.presentation.relators() {
            if evaluate_in(target, images, r) != 0 {
                return None;
            }
        }
        let map = crate::table::hom_from_generators(
            &self.table,
            target,
            &self.gen_images,
            images,
        )
        .expect("relators hold in target but no homomorphism exists; realization is inconsistent");
        Some(map)
    }

    /// First relator whose image under `images` is not the identity.
    pub fn violated_relator(&self, target: &GroupTable, images: &[usize]) -> Option<&Word> {
        self.presentation
            .relators()
            .iter()
            .find(|r| evaluate_in(target, images, r) != 0)
    }

    /// Full invariant check: relators hold and generators generate.
    pub fn verify(&self) -> Result<()> {
        for r in self.presentation.relators() {
            if self.evaluate_word(r) != 0 {
                return Err(Error::Internal(format!("relator {r:?} does not hold")));
            }
        }
        let span = self.table.subgroup_generated(&self.gen_images);
        if span.len() != self.table.n() {
            return Err(Error::Internal("generator images do not generate".into()));
        }
        Ok(())
    }
}

pub fn evaluate_in(t: &GroupTable, images: &[usize], w: &[i32]) -> usize {
    let mut e = 0usize;
    for &l in w {
        let g = images[(l.unsigned_abs() as usize) - 1];
        let g = if l > 0 { g } else { t.inv(g) };
        e = t.mul(e, g);
    }
    e
}

const UNDEF: u32 = u32::MAX;

/// Coset table state for one enumeration.
struct Enumerator {
    cols: usize, // 2 * live generator count
    rows: Vec<u32>,
    alive: Vec<bool>,
    parent: Vec<u32>, // union-find over cosets
    queue: Vec<u32>,  // pending dead cosets
    live: usize,
    defined_total: usize,
}

impl Enumerator {
    fn new(cols: usize) -> Enumerator {
        Enumerator {
            cols,
            rows: vec![UNDEF; cols],
            alive: vec![true],
            parent: vec![0],
            queue: Vec::new(),
            live: 1,
            defined_total: 1,
        }
    }

    #[inline]
    fn entry(&self, c: u32, col: usize) -> u32 {
        self.rows[c as usize * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.rows[c as usize * self.cols + col] = v;
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let p = self.parent[c as usize];
            self.parent[c as usize] = self.parent[p as usize];
            c = self.parent[c as usize];
        }
        c
    }

    fn coset_count(&self) -> usize {
        self.alive.len()
    }

    fn define(&mut self, c: u32, col: usize) -> u32 {
        let q = self.alive.len() as u32;
        self.rows.extend(std::iter::repeat(UNDEF).take(self.cols));
        self.alive.push(true);
        self.parent.push(q);
        self.live += 1;
        self.defined_total += 1;
        self.set(c, col, q);
        self.set(q, col ^ 1, c);
        q
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.alive[kill as usize] = false;
        self.live -= 1;
        self.queue.push(kill);
    }

    fn process_coincidences(&mut self) {
        while let Some(dead) = self.queue.pop() {
            for col in 0..self.cols {
                let delta = self.entry(dead, col);
                if delta == UNDEF {
                    continue;
                }
                self.set(dead, col, UNDEF);
                if self.entry(delta, col ^ 1) == dead {
                    self.set(delta, col ^ 1, UNDEF);
                }
                let mu = self.find(dead);
                let nu = self.find(delta);
                let mu_x = self.entry(mu, col);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.entry(nu, col ^ 1);
                    if nu_xi != UNDEF {
                        self.merge(mu, nu_xi);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Scans `relator` (as column indices) at coset `c`, applying deductions
    /// and coincidences; defines new cosets to close the scan when
    /// `define_new` is set. Returns false when a definition is still needed
    /// but `define_new` is false.
    fn scan(&mut self, c: u32, relator: &[usize], define_new: bool) -> bool {
        loop {
            if !self.alive[c as usize] {
                return true; // merged away; the representative gets its own turn
            }
            let mut f = c;
            let mut i = 0;
            while i < relator.len() {
                let nxt = self.entry(f, relator[i]);
                if nxt == UNDEF {
                    break;
                }
                f = nxt;
                i += 1;
            }
            if i == relator.len() {
                if f != c {
                    self.merge(f, c);
                    self.process_coincidences();
                }
                return true;
            }
            // backward scan from the end
            let mut b = c;
            let mut j = relator.len();
            while j > i {
                let nxt = self.entry(b, relator[j - 1] ^ 1);
                if nxt == UNDEF {
                    break;
                }
                b = nxt;
                j -= 1;
            }
            if j == i {
                // both scans meet across one undefined entry? j == i means
                // full overlap: forward reached i, backward reached i.
                self.merge(f, b);
                self.process_coincidences();
                return true;
            }
            if j == i + 1 {
                // deduction: f . relator[i] = b
                self.set(f, relator[i], b);
                self.set(b, relator[i] ^ 1, f);
                // rescan from the top to honor possible further gaps
                continue;
            }
            if !define_new {
                return false;
            }
            self.define(f, relator[i]);
            if !self.alive[c as usize] {
                return true; // c got merged away during coincidences
            }
        }
    }
}

/// Deterministic HLT coset enumeration over the trivial subgroup, returning
/// the regular representation as a Cayley table with identity at index 0.
///
/// Generators that other relators force equal (length-2 relators) are
/// eliminated up front; single-letter relators kill their generator. Cosets
/// are defined in first-encounter order scanning relators in input order,
/// generators ascending; the final table is renumbered breadth-first.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<RealizedGroup> {
    // -- Tietze preprocessing: alias generators via signed union-find.
    // alias[g] = (root, sign); killed generators alias to None.
    let g = p.gen_count();
    let mut alias: Vec<(usize, bool)> = (0..g).map(|k| (k, true)).collect();
    let mut killed = vec![false; g];

    // letter -> (root generator, sign), or None when the letter's chain
    // reaches a killed generator
    let resolve = |alias: &[(usize, bool)], killed: &[bool], l: i32| -> Option<(usize, bool)> {
        let mut k = l.unsigned_abs() as usize - 1;
        let mut sign = l > 0;
        loop {
            if killed[k] {
                return None;
            }
            let (r, s) = alias[k];
            if r == k {
                return Some((k, sign));
            }
            if !s {
                sign = !sign;
            }
            k = r;
        }
    };

    let mut work: Vec<Word> = p.relators().to_vec();
    loop {
        // rewrite all relators through current aliases, free-reduce
        let mut next: Vec<Word> = Vec::with_capacity(work.len());
        let mut seen = std::collections::HashSet::new();
        let mut changed = false;
        for w in &work {
            let mut r: Word = Vec::with_capacity(w.len());
            for &l in w {
                if let Some((root, sign)) = resolve(&alias, &killed, l) {
                    r.push(if sign { root as i32 + 1 } else { -(root as i32 + 1) });
                } else {
                    changed = true; // letter vanished
                }
            }
            let r = free_reduce(&r);
            if r.len() != w.len() {
                changed = true;
            }
            if r.is_empty() {
                continue;
            }
            if seen.insert(canonical_cyclic(&r)) {
                next.push(r);
            } else {
                changed = true;
            }
        }
        work = next;
        // harvest kills and aliases
        let mut acted = false;
        for w in &work {
            match w.len() {
                1 => {
                    let k = w[0].unsigned_abs() as usize - 1;
                    if !killed[k] {
                        killed[k] = true;
                        acted = true;
                    }
                }
                2 => {
                    // a b = 1  =>  b = a^-1 (alias); a a = 1 stays a relator
                    let (ra, sa) = match resolve(&alias, &killed, w[0]) {
                        Some(v) => v,
                        None => continue,
                    };
                    let (rb, sb) = match resolve(&alias, &killed, w[1]) {
                        Some(v) => v,
                        None => continue,
                    };
                    if ra == rb {
                        continue; // involution relator (or trivial), keep as is
                    }
                    // ra^e1 rb^e2 = 1  =>  rb = ra^(-e1 e2); sign flips iff e1 == e2
                    let (keep, kill) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    alias[kill] = (keep, sa != sb);
                    acted = true;
                    changed = true;
                }
                _ => {}
            }
        }
        if !acted && !changed {
            break;
        }
    }
    // live generators, compact columns
    let mut live_gens: Vec<usize> = Vec::new();
    let mut col_of: Vec<Option<usize>> = vec![None; g];
    for k in 0..g {
        match resolve(&alias, &killed, (k + 1) as i32) {
            Some((root, _)) if root == k => {
                col_of[k] = Some(live_gens.len());
                live_gens.push(k);
            }
            _ => {}
        }
    }
    if live_gens.is_empty() {
        let realized = RealizedGroup {
            table: GroupTable::trivial(),
            gen_images: vec![0; g],
            presentation: p.clone(),
        };
        realized.verify()?;
        return Ok(realized);
    }
    let cols = live_gens.len() * 2;

    // relators as column sequences (col = 2*idx for gen, 2*idx+1 for inverse)
    let mut col_relators: Vec<Vec<usize>> = Vec::with_capacity(work.len());
    {
        let mut seen = std::collections::HashSet::new();
        for w in &work {
            let mut r: Vec<usize> = Vec::with_capacity(w.len());
            let mut ok = true;
            for &l in w {
                match resolve(&alias, &killed, l) {
                    Some((root, sign)) => {
                        let idx = col_of[root].expect("root is live");
                        r.push(idx * 2 + usize::from(!sign));
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            if !r.is_empty() && seen.insert(r.clone()) {
                col_relators.push(r);
            }
        }
        // short relators first: cheap closures before long scans
        col_relators.sort_by_key(|r| r.len());
    }

    // -- HLT main loop
    let mut e = Enumerator::new(cols);
    let mut lookahead_trigger = 65536usize;
    let mut c: u32 = 0;
    loop {
        if (c as usize) >= e.coset_count() {
            // closure sweep: coincidences can reopen rows whose turn passed
            match first_incomplete(&e) {
                Some(ic) => c = ic,
                None => break,
            }
        }
        if !e.alive[c as usize] {
            c += 1;
            continue;
        }
        for ri in 0..col_relators.len() {
            let r = std::mem::take(&mut col_relators[ri]);
            e.scan(c, &r, true);
            col_relators[ri] = r;
            if !e.alive[c as usize] {
                break;
            }
        }
        if e.alive[c as usize] {
            for col in 0..cols {
                if e.entry(c, col) == UNDEF {
                    e.define(c, col);
                }
            }
        }
        if e.coset_count() > lookahead_trigger {
            lookahead(&mut e, &col_relators);
            lookahead_trigger = (e.coset_count() * 2).max(65536);
        }
        if e.live > max_cosets {
            lookahead(&mut e, &col_relators);
            if e.live > max_cosets {
                return Err(Error::ResourceLimit(format!(
                    "coset enumeration exceeded {max_cosets} live cosets"
                )));
            }
        }
        c += 1;
    }

    // -- standardize: BFS renumber from coset 0 over columns in order
    let total = e.coset_count();
    let mut order: Vec<u32> = Vec::with_capacity(e.live);
    let mut number: Vec<u32> = vec![UNDEF; total];
    let root = e.find(0);
    number[root as usize] = 0;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for col in 0..cols {
            let raw = e.entry(q, col);
            debug_assert_ne!(raw, UNDEF, "table not closed");
            let t = e.find(raw);
            if number[t as usize] == UNDEF {
                number[t as usize] = order.len() as u32;
                order.push(t);
            }
        }
    }
    let n = order.len();
    debug_assert_eq!(n, e.live);

    // column action as permutations of 0..n
    let mut act = vec![0u32; cols * n];
    for (newi, &old) in order.iter().enumerate() {
        for col in 0..cols {
            let t = e.find(e.entry(old, col));
            act[col * n + newi] = number[t as usize];
        }
    }

    // definition word (as column sequence) per element via BFS tree
    let mut def: Vec<(u32, usize)> = vec![(0, usize::MAX); n]; // (parent, col)
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut bfs = vec![0u32];
    let mut head = 0;
    while head < bfs.len() {
        let q = bfs[head] as usize;
        head += 1;
        for col in 0..cols {
            let t = act[col * n + q] as usize;
            if !seen[t] {
                seen[t] = true;
                def[t] = (q as u32, col);
                bfs.push(t as u32);
            }
        }
    }

    // Cayley table: mul(i,j) = trace i under j's definition word
    let mut words: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 1..n {
        let (p, col) = def[i];
        let mut w = words[p as usize].clone();
        w.push(col);
        words[i] = w;
    }
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut x = i as u32;
            for &col in &words[j] {
                x = act[col * n + x as usize];
            }
            mul[i * n + j] = x;
        }
    }
    let table = GroupTable::from_mul(n, mul)?;
    debug_assert!(table.validate().is_ok());

    // generator images, tracing aliases
    let mut gen_images = vec![0usize; g];
    for k in 0..g {
        match resolve(&alias, &killed, (k + 1) as i32) {
            None => gen_images[k] = 0,
            Some((root, sign)) => {
                let col = col_of[root].expect("live root") * 2 + usize::from(!sign);
                gen_images[k] = act[col * n] as usize; // image of coset 0
            }
        }
    }

    let realized = RealizedGroup {
        table,
        gen_images,
        presentation: p.clone(),
    };
    realized.verify()?;
    Ok(realized)
}

fn first_incomplete(e: &Enumerator) -> Option<u32> {
    (0..e.coset_count() as u32).find(|&c| {
        e.alive[c as usize] && (0..e.cols).any(|col| e.entry(c, col) == UNDEF)
    })
}

/// Deduction-only pass over all live cosets; drives pending deductions and
/// coincidences to closure without defining new cosets.
fn lookahead(e: &mut Enumerator, col_relators: &[Vec<usize>]) {
    let mut c: u32 = 0;
    while (c as usize) < e.coset_count() {
        if e.alive[c as usize] {
            for r in col_relators {
                e.scan(c, r, false);
                if !e.alive[c as usize] {
                    break;
                }
            }
        }
        c += 1;
    }
}

/// Canonical form of a relator under cyclic rotation and inversion; used
/// for duplicate removal.
pub fn canonical_cyclic(w: &[i32]) -> Word {
    // cyclically reduce first
    let mut v = w.to_vec();
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v.pop();
        v.remove(0);
    }
    if v.is_empty() {
        return v;
    }
    let mut best: Option<Word> = None;
    for cand in [v.clone(), invert_word(&v)] {
        for s in 0..cand.len() {
            let rot: Word = cand[s..].iter().chain(cand[..s].iter()).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// Kernel of a group map as a member set.
pub fn kernel_of(map: &GroupMap) -> SubSet {
    map.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn present(gens: usize, rels: &[&[i32]]) -> Presentation {
        Presentation::new(gens, rels.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn klein_four_presentation() {
        // <a,b | a^2, b^2, (ab)^2>
        let p = present(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2]]);
        let r = todd_coxeter(&p, 1000).unwrap();
        assert_eq!(r.table.n(), 4);
        assert!(r.table.is_abelian());
    }

    #[test]
    fn s3_presentation() {
        // <a,b | a^3, b^2, (ab)^2>
        let p = present(2, &[&[1, 1, 1], &[2, 2], &[1, 2, 1, 2]]);
        let r = todd_coxeter(&p, 1000).unwrap();
        assert_eq!(r.table.n(), 6);
        assert!(!r.table.is_abelian());
    }

    #[test]
    fn single_generator_killed() {
        // <a | a> -> trivial
        let p = present(1, &[&[1]]);
        let r = todd_coxeter(&p, 10).unwrap();
        assert_eq!(r.table.n(), 1);
        assert_eq!(r.gen_images, vec![0]);
    }

    #[test]
    fn quaternion_presentation() {
        // <a,b | a^4, a^2 b^-2, b^-1 a b a>
        let p = present(2, &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[-2, 1, 2, 1]]);
        let r = todd_coxeter(&p, 1000).unwrap();
        assert_eq!(r.table.n(), 8);
        assert!(!r.table.is_abelian());
        // exactly one element of order 2
        let order2 = (0..8).filter(|&x| r.table.order_of(x) == 2).count();
        assert_eq!(order2, 1);
    }

    #[test]
    fn a4_presentation() {
        // <a,b | a^3, b^3, (ab)^2>
        let p = present(2, &[&[1, 1, 1], &[2, 2, 2], &[1, 2, 1, 2]]);
        let r = todd_coxeter(&p, 10000).unwrap();
        assert_eq!(r.table.n(), 12);
    }

    #[test]
    fn relator_order_invariance() {
        let rels: Vec<&[i32]> = vec![&[1, 1, 1], &[2, 2], &[1, 2, 1, 2]];
        let base = todd_coxeter(&present(2, &rels), 1000).unwrap();
        // all 6 permutations give the same order
        let perms = [
            [0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0],
        ];
        for perm in perms {
            let permuted: Vec<&[i32]> = perm.iter().map(|&i| rels[i]).collect();
            let r = todd_coxeter(&present(2, &permuted), 1000).unwrap();
            assert_eq!(r.table.n(), base.table.n());
        }
    }

    #[test]
    fn evaluate_word_basics() {
        let p = present(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2]]);
        let r = todd_coxeter(&p, 100).unwrap();
        assert_eq!(r.evaluate_word(&[]), 0);
        assert_eq!(r.evaluate_word(&[1, -1]), 0);
        assert_eq!(r.evaluate_word(&[1, 2, 1, 2]), 0);
        assert_ne!(r.evaluate_word(&[1, 2]), 0);
    }

    #[test]
    fn hom_to_quotients() {
        let p = present(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2]]);
        let r = todd_coxeter(&p, 100).unwrap();
        let z2 = crate::corpus::cyclic(2);
        let m = r.hom_to(&z2, &[1, 0]).unwrap();
        assert!(m.is_surjective_onto(&z2));
        assert_eq!(m.kernel().len(), 2);
        // constant map always defined
        assert!(r.hom_to(&z2, &[0, 0]).is_some());
        // order obstruction
        let z3 = crate::corpus::cyclic(3);
        assert!(r.hom_to(&z3, &[1, 0]).is_none());
    }

    #[test]
    fn infinite_group_hits_limit() {
        // <a,b | > free of rank 2: must exceed any budget
        let p = present(2, &[]);
        assert!(matches!(
            todd_coxeter(&p, 500),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn coincidence_heavy_presentation() {
        // <a,b | a b a^-1 b^-2, b a b^-1 a^-2> is trivial (classic example)
        let p = present(2, &[&[1, 2, -1, -2, -2], &[2, 1, -2, -1, -1]]);
        let r = todd_coxeter(&p, 10000).unwrap();
        assert_eq!(r.table.n(), 1);
    }

    #[test]
    fn alias_elimination_consistency() {
        // c forced equal to (ab)^-1; group is still S3
        // <a,b,c | a^3, b^2, abc, c b a... keep it simple: abc=1>
        let p = present(3, &[&[1, 1, 1], &[2, 2], &[1, 2, 3], &[3, 3]]);
        let r = todd_coxeter(&p, 1000).unwrap();
        // a^3=b^2=(ab)^2=1 since c=(ab)^-1 and c^2=1
        assert_eq!(r.table.n(), 6);
        let c_img = r.gen_images[2];
        let ab = r.table.mul(r.gen_images[0], r.gen_images[1]);
        assert_eq!(c_img, r.table.inv(ab));
    }
}
