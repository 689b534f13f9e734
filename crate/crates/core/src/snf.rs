//! Smith normal form over the integers and abelian invariant factors.

use crate::error::{Error, Result};
use crate::subset::SubSet;
use crate::table::GroupTable;

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<i128>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> i128 {
        self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.a[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self.at(i, k);
                if v == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.a[i * other.cols + j] += v * other.at(k, j);
                }
            }
        }
        out
    }
}

/// Smith normal form `U * M * V = S`. The diagonal is non-negative with
/// each entry dividing the next and zeros trailing. Transforms are tracked
/// on demand: `V` gives kernel bases (columns of V beyond the rank),
/// `U` supports integer solving.
pub struct Smith {
    pub diag: Vec<i128>,
    pub rank: usize,
    pub u: Option<IntMat>,
    pub v: Option<IntMat>,
}

pub fn smith(m: &IntMat, with_transforms: bool) -> Smith {
    let mut s = m.clone();
    let (rows, cols) = (s.rows, s.cols);
    let mut u = if with_transforms { Some(IntMat::identity(rows)) } else { None };
    let mut v = if with_transforms { Some(IntMat::identity(cols)) } else { None };

    let mut t = 0;
    while t < rows.min(cols) {
        // pick pivot of least absolute value in the remaining block
        let mut piv: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = s.at(i, j);
                if x != 0 && piv.is_none_or(|(pi, pj)| x.abs() < s.at(pi, pj).abs()) {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        swap_rows(&mut s, &mut u, t, pi);
        swap_cols(&mut s, &mut v, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if s.at(i, t) != 0 {
                    let q = s.at(i, t).div_euclid(s.at(t, t));
                    addmul_rows(&mut s, &mut u, i, t, -q);
                    if s.at(i, t) != 0 {
                        swap_rows(&mut s, &mut u, t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if s.at(t, j) != 0 {
                    let q = s.at(t, j).div_euclid(s.at(t, t));
                    addmul_cols(&mut s, &mut v, j, t, -q);
                    if s.at(t, j) != 0 {
                        swap_cols(&mut s, &mut v, t, j);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        // divisibility: fold any non-divisible entry into the pivot row
        let p = s.at(t, t);
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if s.at(i, j) % p != 0 {
                    addmul_rows(&mut s, &mut u, t, i, 1);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if s.at(t, t) < 0 {
            negate_row(&mut s, &mut u, t);
        }
        t += 1;
    }
    let rank = t;
    let mut diag: Vec<i128> = (0..rows.min(cols)).map(|i| s.at(i, i).abs()).collect();
    diag.truncate(rows.min(cols));
    Smith { diag, rank, u, v }
}

fn swap_rows(s: &mut IntMat, u: &mut Option<IntMat>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for k in 0..s.cols {
        s.a.swap(i * s.cols + k, j * s.cols + k);
    }
    if let Some(u) = u {
        for k in 0..u.cols {
            u.a.swap(i * u.cols + k, j * u.cols + k);
        }
    }
}

fn addmul_rows(s: &mut IntMat, u: &mut Option<IntMat>, dst: usize, src: usize, c: i128) {
    for k in 0..s.cols {
        let x = s.at(src, k);
        s.a[dst * s.cols + k] += c * x;
    }
    if let Some(u) = u {
        for k in 0..u.cols {
            let x = u.at(src, k);
            u.a[dst * u.cols + k] += c * x;
        }
    }
}

fn negate_row(s: &mut IntMat, u: &mut Option<IntMat>, i: usize) {
    for k in 0..s.cols {
        s.a[i * s.cols + k] = -s.a[i * s.cols + k];
    }
    if let Some(u) = u {
        for k in 0..u.cols {
            u.a[i * u.cols + k] = -u.a[i * u.cols + k];
        }
    }
}

fn swap_cols(s: &mut IntMat, v: &mut Option<IntMat>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..s.rows {
        s.a.swap(r * s.cols + i, r * s.cols + j);
    }
    if let Some(v) = v {
        for r in 0..v.rows {
            v.a.swap(r * v.cols + i, r * v.cols + j);
        }
    }
}

fn addmul_cols(s: &mut IntMat, v: &mut Option<IntMat>, dst: usize, src: usize, c: i128) {
    for r in 0..s.rows {
        let x = s.at(r, src);
        s.a[r * s.cols + dst] += c * x;
    }
    if let Some(v) = v {
        for r in 0..v.rows {
            let x = v.at(r, src);
            v.a[r * v.cols + dst] += c * x;
        }
    }
}

/// Solves `M x = t` over the integers; `None` when no integer solution.
pub fn solve(m: &IntMat, sm: &Smith, t: &[i128]) -> Option<Vec<i128>> {
    assert_eq!(t.len(), m.rows);
    let u = sm.u.as_ref().expect("transforms required");
    let v = sm.v.as_ref().expect("transforms required");
    // y = U t; x = V (y_i / d_i)
    let mut y = vec![0i128; m.rows];
    for i in 0..m.rows {
        let mut acc = 0i128;
        for j in 0..m.rows {
            acc += u.at(i, j) * t[j];
        }
        y[i] = acc;
    }
    let mut z = vec![0i128; m.cols];
    for (i, &yi) in y.iter().enumerate() {
        if i < sm.rank {
            let d = sm.diag[i];
            if yi % d != 0 {
                return None;
            }
            z[i] = yi / d;
        } else if yi != 0 {
            return None;
        }
    }
    let mut x = vec![0i128; m.cols];
    for r in 0..m.cols {
        let mut acc = 0i128;
        for c in 0..m.cols {
            acc += v.at(r, c) * z[c];
        }
        x[r] = acc;
    }
    Some(x)
}

/// Integer kernel basis of `m` (columns spanning {x : m x = 0}).
pub fn kernel_basis(m: &IntMat) -> IntMat {
    let sm = smith(m, true);
    let v = sm.v.expect("transforms requested");
    // m * V has zero columns beyond rank
    let k = m.cols - sm.rank;
    let mut out = IntMat::zeros(m.cols, k);
    for r in 0..m.cols {
        for j in 0..k {
            out.set(r, j, v.at(r, sm.rank + j));
        }
    }
    out
}

/// Invariant factors d1 | d2 | ... (entries > 1) of the abelian group
/// presented by `relations` on `gens` unknowns, plus the free rank.
pub fn quotient_invariants(relations: &IntMat) -> (usize, Vec<u64>) {
    let sm = smith(relations, false);
    let inv: Vec<u64> = sm
        .diag
        .iter()
        .take(sm.rank)
        .filter(|&&d| d > 1)
        .map(|&d| d as u64)
        .collect();
    let rank = relations.cols - sm.rank;
    (rank, inv)
}

/// Invariant factor decomposition of an abelian subgroup of `t`.
///
/// A small generating set is chosen greedily; the relation lattice is read
/// off the Cayley graph (for each member s and generator i, the word of s
/// plus e_i minus the word of s*g_i is a relation), then reduced to
/// elementary divisors.
pub fn abelian_invariants(t: &GroupTable, sub: &SubSet) -> Result<Vec<u64>> {
    for &a in sub.members() {
        for &b in sub.members() {
            if t.mul(a, b) != t.mul(b, a) {
                return Err(Error::Precondition(
                    "abelian_invariants requires an abelian subgroup".into(),
                ));
            }
        }
    }
    if !t.is_subgroup(sub) {
        return Err(Error::Precondition("member set is not a subgroup".into()));
    }
    if sub.len() == 1 {
        return Ok(Vec::new());
    }
    // greedy generating set
    let mut gens: Vec<usize> = Vec::new();
    let mut span = t.subgroup_generated(&[]);
    for &x in sub.members() {
        if !span.contains(x) {
            gens.push(x);
            span = t.subgroup_generated(&gens);
            if span.len() == sub.len() {
                break;
            }
        }
    }
    let k = gens.len();
    // exponent word per member via BFS
    let mut word: std::collections::HashMap<usize, Vec<i128>> = std::collections::HashMap::new();
    word.insert(0, vec![0; k]);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let s = queue[head];
        head += 1;
        for (i, &g) in gens.iter().enumerate() {
            let sg = t.mul(s, g);
            if !word.contains_key(&sg) {
                let mut w = word[&s].clone();
                w[i] += 1;
                word.insert(sg, w);
                queue.push(sg);
            }
        }
    }
    let mut rel_rows: Vec<Vec<i128>> = Vec::new();
    for &s in sub.members() {
        for (i, &g) in gens.iter().enumerate() {
            let sg = t.mul(s, g);
            let mut row = word[&s].clone();
            row[i] += 1;
            for (c, x) in word[&sg].iter().enumerate() {
                row[c] -= x;
            }
            if row.iter().any(|&x| x != 0) {
                rel_rows.push(row);
            }
        }
    }
    rel_rows.sort();
    rel_rows.dedup();
    let mut m = IntMat::zeros(rel_rows.len(), k);
    for (i, row) in rel_rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    let (rank, inv) = quotient_invariants(&m);
    if rank != 0 || inv.iter().product::<u64>() != sub.len() as u64 {
        return Err(Error::Internal(format!(
            "invariant factors {inv:?} (free rank {rank}) do not match order {}",
            sub.len()
        )));
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn invariants_of_standard_groups() {
        let t = corpus::klein_four();
        assert_eq!(abelian_invariants(&t, &SubSet::full(4)).unwrap(), vec![2, 2]);
        let t = corpus::cyclic(6);
        assert_eq!(abelian_invariants(&t, &SubSet::full(6)).unwrap(), vec![6]);
        let t = corpus::cyclic(1);
        assert_eq!(abelian_invariants(&t, &SubSet::full(1)).unwrap(), Vec::<u64>::new());
        let t = corpus::direct_product(&corpus::cyclic(4), &corpus::cyclic(2));
        assert_eq!(abelian_invariants(&t, &SubSet::full(8)).unwrap(), vec![2, 4]);
        let t = corpus::elementary_abelian_8();
        assert_eq!(abelian_invariants(&t, &SubSet::full(8)).unwrap(), vec![2, 2, 2]);
    }

    #[test]
    fn invariants_of_subgroups() {
        let t = corpus::cyclic(8);
        let h = t.subgroup_generated(&[2]);
        assert_eq!(abelian_invariants(&t, &h).unwrap(), vec![4]);
    }

    #[test]
    fn nonabelian_rejected() {
        let t = corpus::symmetric_3();
        assert!(abelian_invariants(&t, &SubSet::full(6)).is_err());
    }

    #[test]
    fn smith_small_matrix() {
        // [[2,4],[6,8]] -> diag 2, 4 (det 16, d1*d2 = |det|)
        let mut m = IntMat::zeros(2, 2);
        m.set(0, 0, 2);
        m.set(0, 1, 4);
        m.set(1, 0, 6);
        m.set(1, 1, 8);
        let s = smith(&m, false);
        assert_eq!(s.rank, 2);
        assert_eq!(&s.diag[..2], &[2, 4]);
    }

    #[test]
    fn kernel_basis_is_kernel() {
        // x + y + z = 0 over Z: kernel rank 2
        let mut m = IntMat::zeros(1, 3);
        m.set(0, 0, 1);
        m.set(0, 1, 1);
        m.set(0, 2, 1);
        let k = kernel_basis(&m);
        assert_eq!(k.cols, 2);
        let prod = m.mul(&k);
        assert!(prod.a.iter().all(|&x| x == 0));
    }
}
