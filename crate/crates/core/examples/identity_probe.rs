//! Scratch experiment: which commutator/star identities hold across the
//! corpus of all star structures on groups of order <= 8.

use mla_core::corpus;
use mla_core::mla::FiniteMla;

fn main() {
    let mut total = 0usize;
    let mut fail_ab = 0usize;
    let mut fail_be = 0usize;
    let mut fail_r6 = 0usize;
    let mut fail_r7 = 0usize;
    let mut fail_k_central_derived = 0usize;
    let mut fail_curly_cd = 0usize;
    for (name, t) in corpus::groups_up_to(8) {
        let stars = corpus::enumerate_stars(&t, 16).unwrap();
        println!("{name}: {} structures", stars.len());
        for m in &stars {
            total += 1;
            let n = m.n();
            let g = m.group();
            let mut ab = true; // [x*y, u*v] == [[x,y], u*v]
            let mut be = true; // [[x,y], u*v] == [[x,y], [u,v]]
            for x in 0..n {
                for y in 0..n {
                    for u in 0..n {
                        for v in 0..n {
                            let s_xy = m.star(x, y);
                            let c_xy = g.comm(x, y);
                            let s_uv = m.star(u, v);
                            let c_uv = g.comm(u, v);
                            if g.comm(s_xy, s_uv) != g.comm(c_xy, s_uv) {
                                ab = false;
                            }
                            if g.comm(c_xy, s_uv) != g.comm(c_xy, c_uv) {
                                be = false;
                            }
                        }
                    }
                }
            }
            if !ab {
                fail_ab += 1;
                report(&name, m, "A=B");
            }
            if !be {
                fail_be += 1;
                report(&name, m, "B=E");
            }
            // relation (6) image: (x*y)(^zy * ^zx) == (^{xy}x^-1 * ^xz)(x*z)
            let mut r6 = true;
            let mut r7 = true;
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let lhs = g.mul(m.star(x, y), m.star(g.conj(z, y), g.conj(z, x)));
                        let w = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(g.mul(x, y))));
                        // ^{xy} x^{-1}
                        let c = g.conj(g.mul(x, y), g.inv(x));
                        let _ = w;
                        let rhs = g.mul(m.star(c, g.conj(x, z)), m.star(x, z));
                        if lhs != rhs {
                            r6 = false;
                        }
                        let lhs = g.mul(g.comm(x, y), g.comm(g.conj(z, y), g.conj(z, x)));
                        let rhs = g.mul(g.comm(c, g.conj(x, z)), g.comm(x, z));
                        if lhs != rhs {
                            r7 = false;
                        }
                    }
                }
            }
            if !r6 {
                fail_r6 += 1;
                report(&name, m, "rel6");
            }
            if !r7 {
                fail_r7 += 1;
                report(&name, m, "rel7");
            }
            // K(G) elements central in the derived subalgebra?
            let d = m.derived_subalgebra();
            let mut kc = true;
            for x in 0..n {
                for y in 0..n {
                    let k = g.mul(m.star(x, y), g.comm(x, y));
                    if !d.members().iter().all(|&e| g.mul(k, e) == g.mul(e, k)) {
                        kc = false;
                    }
                }
            }
            if !kc {
                fail_k_central_derived += 1;
                report(&name, m, "K central in derived");
            }
            // curly relation (5) C=D image: u*v = 1 implies w * [u,v] = 1?
            let mut cd = true;
            for u in 0..n {
                for v in 0..n {
                    if m.star(u, v) == 0 {
                        let c_uv = g.comm(u, v);
                        for w in 0..n {
                            if m.star(w, c_uv) != 0 {
                                cd = false;
                            }
                        }
                    }
                }
            }
            if !cd {
                fail_curly_cd += 1;
                report(&name, m, "curly C=D (star(u,v)=1 => w*[u,v]=1)");
            }
        }
    }
    println!("---");
    println!("total structures: {total}");
    println!("A=B failures: {fail_ab}");
    println!("B=E failures: {fail_be}");
    println!("rel6 failures: {fail_r6}");
    println!("rel7 failures: {fail_r7}");
    println!("K-central-in-derived failures: {fail_k_central_derived}");
    println!("curly C=D failures: {fail_curly_cd}");
}

fn report(name: &str, m: &FiniteMla, what: &str) {
    let d = m.derived_subalgebra();
    println!("  {name} fails {what} (derived size {}, star row1: {:?})",
        d.len(),
        (0..m.n()).map(|j| m.star(1, j)).collect::<Vec<_>>());
}
