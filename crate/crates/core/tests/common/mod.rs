#![allow(dead_code)]

use floq_core::floquet::SymbolicMatrix;
use floq_core::poly::MultiPoly;
use floq_core::scalar::Scalar;

/// Determinant as the plain signed sum over all permutations.
pub fn leibniz<C: Scalar>(m: &SymbolicMatrix<C>) -> MultiPoly<C> {
    let n = m.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut det = MultiPoly::zero(m.vars());
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = MultiPoly::one(m.vars());
        for (i, &j) in p.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        det = if inversions % 2 == 0 { &det + &term } else { &det - &term };
    });
    det
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// `det(M - lam I)` through the Leibniz sum.
pub fn leibniz_char_poly<C: Scalar>(m: &SymbolicMatrix<C>, lam: usize) -> MultiPoly<C> {
    leibniz(&m.shift_diagonal(lam))
}
