//! Test-only oracle: the second Lie cohomology H2_ML(G, C*) and the
//! restriction-kernel intersection B0(G), computed by integer linear
//! algebra, fully independent of the presentation/realization path.
//!
//! Over the divisible coefficient group, cocycle conditions and coboundaries
//! form an integer chain complex Z^g -> Z^(2n^2) <- Z^rows; the cohomology
//! is Hom of the middle homology into the circle, i.e. the torsion of
//! ker(D^T)/im(A^T). Restriction maps dualize to coordinate inclusions, so
//! B0 is the torsion of the middle homology modulo the images of all
//! abelian-subalgebra kernels.

use mla_core::mla::FiniteMla;
use mla_core::snf::{kernel_basis, smith, solve, IntMat};
use mla_core::subset::SubSet;

/// Rows: one per cocycle condition instance; columns: f(x,y) then h(x,y).
fn condition_rows(m: &FiniteMla) -> Vec<Vec<i128>> {
    let n = m.n();
    let t = m.group();
    let ncols = 2 * n * n;
    let fi = |x: usize, y: usize| x * n + y;
    let hi = |x: usize, y: usize| n * n + x * n + y;
    let mut rows: Vec<Vec<i128>> = Vec::new();
    let mut push = |terms: &[(usize, i128)]| {
        let mut r = vec![0i128; ncols];
        for &(c, v) in terms {
            r[c] += v;
        }
        if r.iter().any(|&x| x != 0) {
            rows.push(r);
        }
    };
    let s = |x: usize, y: usize| m.star(x, y);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // f is a group 2-cocycle
                push(&[
                    (fi(x, y), 1),
                    (fi(t.mul(x, y), z), 1),
                    (fi(y, z), -1),
                    (fi(x, t.mul(y, z)), -1),
                ]);
                // (2) h(x,yz) = h(x,y) h(x,z) f(y^-1,y)^-1 f(y, x*z)
                //     f(y(x*z), y^-1) f(x*y, ^y(x*z))
                push(&[
                    (hi(x, y), 1),
                    (hi(x, z), 1),
                    (hi(x, t.mul(y, z)), -1),
                    (fi(t.inv(y), y), -1),
                    (fi(y, s(x, z)), 1),
                    (fi(t.mul(y, s(x, z)), t.inv(y)), 1),
                    (fi(s(x, y), t.conj(y, s(x, z))), 1),
                ]);
                // (3) h(xy,z) = h(y,z) h(x,z) f(x^-1,x)^-1 f(x, y*z)
                //     f(x(y*z), x^-1) f(^x(y*z), x*z)
                push(&[
                    (hi(y, z), 1),
                    (hi(x, z), 1),
                    (hi(t.mul(x, y), z), -1),
                    (fi(t.inv(x), x), -1),
                    (fi(x, s(y, z)), 1),
                    (fi(t.mul(x, s(y, z)), t.inv(x)), 1),
                    (fi(t.conj(x, s(y, z)), s(x, z)), 1),
                ]);
                // (4) h(y*x, ^xz) h(x*z, ^zy) h(z*y, ^yx) f(A,B) f(AB,C) = 1
                let a = s(s(y, x), t.conj(x, z));
                let bb = s(s(x, z), t.conj(z, y));
                let c = s(s(z, y), t.conj(y, x));
                push(&[
                    (hi(s(y, x), t.conj(x, z)), 1),
                    (hi(s(x, z), t.conj(z, y)), 1),
                    (hi(s(z, y), t.conj(y, x)), 1),
                    (fi(a, bb), 1),
                    (fi(t.mul(a, bb), c), 1),
                ]);
                // (5) h(^zx,^zy) = h(x,y) f(z, x*y) f(z^-1,z)^-1 f(z(x*y), z^-1)
                push(&[
                    (hi(x, y), 1),
                    (hi(t.conj(z, x), t.conj(z, y)), -1),
                    (fi(z, s(x, y)), 1),
                    (fi(t.inv(z), z), -1),
                    (fi(t.mul(z, s(x, y)), t.inv(z)), 1),
                ]);
            }
        }
    }
    // (1) h(x,1) = h(1,x) = h(x,x) = 1
    for x in 0..n {
        push(&[(hi(x, 0), 1)]);
        push(&[(hi(0, x), 1)]);
        push(&[(hi(x, x), 1)]);
    }
    rows.sort();
    rows.dedup();
    rows
}

/// Coboundary matrix: column j-1 is the cocycle pair of the indicator map
/// g = e_j (identity-preserving maps have n-1 free values).
fn coboundary_matrix(m: &FiniteMla) -> IntMat {
    let n = m.n();
    let t = m.group();
    let ncols = 2 * n * n;
    let mut d = IntMat::zeros(ncols, n.saturating_sub(1).max(1));
    if n == 1 {
        return d;
    }
    for x in 0..n {
        for y in 0..n {
            for j in 1..n {
                let mut c = 0i128;
                if y == j {
                    c += 1;
                }
                if t.mul(x, y) == j {
                    c -= 1;
                }
                if x == j {
                    c += 1;
                }
                let fi = x * n + y;
                d.a[fi * d.cols + (j - 1)] += c;
                let hi = n * n + x * n + y;
                if m.star(x, y) == j {
                    d.a[hi * d.cols + (j - 1)] -= 1;
                }
            }
        }
    }
    d
}

struct MiddleHomology {
    /// ambient dimension 2n^2
    ambient: usize,
    /// kernel of D^T as columns
    kernel: IntMat,
    kernel_smith: mla_core::snf::Smith,
    /// rows of the condition matrix (generators of im(A^T))
    cond_rows: Vec<Vec<i128>>,
}

fn middle_homology(m: &FiniteMla) -> MiddleHomology {
    let n = m.n();
    let ambient = 2 * n * n;
    let d = coboundary_matrix(m);
    // D^T: (n-1) x ambient
    let mut dt = IntMat::zeros(d.cols, ambient);
    for r in 0..d.rows {
        for c in 0..d.cols {
            dt.a[c * ambient + r] = d.at(r, c);
        }
    }
    let kernel = kernel_basis(&dt);
    let kernel_smith = smith(&kernel, true);
    MiddleHomology {
        ambient,
        kernel,
        kernel_smith,
        cond_rows: condition_rows(m),
    }
}

/// Express ambient vectors in the kernel basis and return the invariant
/// factors (>1) of the quotient of the kernel lattice by their span.
/// Panics if a vector lies outside the kernel lattice or the quotient is
/// infinite — both indicate a broken transcription.
fn quotient_by(h: &MiddleHomology, vectors: &[Vec<i128>]) -> Vec<u64> {
    let k = h.kernel.cols;
    let mut x = IntMat::zeros(vectors.len(), k);
    for (i, vec) in vectors.iter().enumerate() {
        assert_eq!(vec.len(), h.ambient);
        let sol = solve(&h.kernel, &h.kernel_smith, vec)
            .expect("vector not in the kernel lattice: coboundary compatibility broken");
        for (j, &v) in sol.iter().enumerate() {
            x.a[i * k + j] = v;
        }
    }
    let sm = smith(&x, false);
    assert_eq!(sm.rank, k, "quotient has free rank; infinite cohomology");
    sm.diag
        .iter()
        .take(sm.rank)
        .filter(|&&d| d > 1)
        .map(|&d| d as u64)
        .collect()
}

/// Invariant factors of H2_ML(G, C*).
pub fn h2ml_invariants(m: &FiniteMla) -> Vec<u64> {
    let h = middle_homology(m);
    quotient_by(&h, &h.cond_rows.clone())
}

/// Invariant factors of B0(G): classes restricting to a coboundary on
/// every abelian subalgebra.
pub fn b0_invariants(m: &FiniteMla) -> Vec<u64> {
    let h = middle_homology(m);
    let n = m.n();
    let mut vectors = h.cond_rows.clone();
    for sub in m.enumerate_abelian_subalgebras(64).unwrap() {
        let members = sub.members();
        let mm = members.len();
        if mm == 1 {
            continue;
        }
        let (sub_mla, _) = m.sub_mla(&sub).unwrap();
        assert!(sub_mla.star_is_trivial());
        let dsub = coboundary_matrix(&sub_mla);
        let mut dt = IntMat::zeros(dsub.cols, 2 * mm * mm);
        for r in 0..dsub.rows {
            for c in 0..dsub.cols {
                dt.a[c * (2 * mm * mm) + r] = dsub.at(r, c);
            }
        }
        let ksub = kernel_basis(&dt);
        // include each kernel column into ambient coordinates
        for col in 0..ksub.cols {
            let mut v = vec![0i128; h.ambient];
            for r in 0..ksub.rows {
                let val = ksub.at(r, col);
                if val == 0 {
                    continue;
                }
                let (is_f, x, y) = if r < mm * mm {
                    (true, r / mm, r % mm)
                } else {
                    (false, (r - mm * mm) / mm, (r - mm * mm) % mm)
                };
                let (gx, gy) = (members[x], members[y]);
                let amb = if is_f { gx * n + gy } else { n * n + gx * n + gy };
                v[amb] += val;
            }
            vectors.push(v);
        }
    }
    quotient_by(&h, &vectors)
}

/// Order from invariant factors.
pub fn order_of(invariants: &[u64]) -> u64 {
    invariants.iter().product()
}

#[allow(dead_code)]
pub fn fmt_inv(invariants: &[u64]) -> String {
    if invariants.is_empty() {
        "1".to_string()
    } else {
        invariants
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[allow(dead_code)]
pub fn kernel_subset_invariants(
    t: &mla_core::table::GroupTable,
    sub: &SubSet,
) -> Option<Vec<u64>> {
    mla_core::snf::abelian_invariants(t, sub).ok()
}
