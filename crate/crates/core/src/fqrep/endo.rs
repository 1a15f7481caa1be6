//! Homomorphism spaces, endomorphism algebras and absolute indecomposability.

use super::matrix::{nullspace, row_reduce, FpMatrix};
use super::{Caps, FqError, FqRep};

/// Basis of `Hom(ρ, ρ′)`: tuples `(f_i)` with `f_{t(a)} ρ(a) = ρ′(a) f_{s(a)}`.
pub fn hom_space(rho: &FqRep, rho2: &FqRep) -> Result<Vec<Vec<FpMatrix>>, FqError> {
    if rho.p != rho2.p {
        return Err(FqError::PrimeMismatch(rho.p, rho2.p));
    }
    if rho.quiver != rho2.quiver {
        return Err(FqError::QuiverMismatch);
    }
    let p = rho.p;
    let q = &rho.quiver;
    let n = q.vertex_count();
    let src: Vec<usize> = rho.dim.iter().map(|&x| x as usize).collect();
    let dst: Vec<usize> = rho2.dim.iter().map(|&x| x as usize).collect();
    // f_i is a dst[i] × src[i] block of unknowns starting at offset[i]
    let mut offset = vec![0; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + dst[i] * src[i];
    }
    let unknowns = offset[n];
    let var = |i: usize, r: usize, c: usize| offset[i] + r * src[i] + c;
    let mut rows = Vec::new();
    for (a, (m, m2)) in q.arrows().iter().zip(rho.mats.iter().zip(&rho2.mats)) {
        let (s, t) = (a.source, a.target);
        for r in 0..dst[t] {
            for c in 0..src[s] {
                let mut row = vec![0u32; unknowns];
                for k in 0..src[t] {
                    let v = &mut row[var(t, r, k)];
                    *v = (*v + m.get(k, c)) % p;
                }
                for k in 0..dst[s] {
                    let v = &mut row[var(s, k, c)];
                    *v = (*v + (p - m2.get(r, k)) % p) % p;
                }
                rows.push(row);
            }
        }
    }
    let basis = nullspace(rows, unknowns, p);
    Ok(basis
        .into_iter()
        .map(|v| {
            (0..n)
                .map(|i| {
                    FpMatrix::from_data(dst[i], src[i], p, v[offset[i]..offset[i + 1]].to_vec())
                })
                .collect()
        })
        .collect())
}

/// `End(ρ)` as a subalgebra of `∏_i Mat_{d_i}(F_p)`; elements are the
/// concatenated row-major blocks.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    p: u32,
    blocks: Vec<usize>,
    basis: Vec<Vec<u32>>,
}

pub fn end_algebra(rho: &FqRep) -> EndAlgebra {
    let basis = hom_space(rho, rho)
        .expect("a representation is compatible with itself")
        .into_iter()
        .map(|tuple| {
            tuple
                .iter()
                .flat_map(|m| m.data().iter().copied())
                .collect()
        })
        .collect();
    EndAlgebra {
        p: rho.p,
        blocks: rho.dim.iter().map(|&d| d as usize).collect(),
        basis,
    }
}

impl EndAlgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// `p^{dim E}`, or `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.basis.len() as u32)
    }

    fn len(&self) -> usize {
        self.blocks.iter().map(|d| d * d).sum()
    }

    pub fn one(&self) -> Vec<u32> {
        let mut out = vec![0; self.len()];
        let mut off = 0;
        for &d in &self.blocks {
            for i in 0..d {
                out[off + i * d + i] = 1;
            }
            off += d * d;
        }
        out
    }

    fn block_matrices<'a>(&'a self, x: &'a [u32]) -> impl Iterator<Item = FpMatrix> + 'a {
        let mut off = 0;
        self.blocks.iter().map(move |&d| {
            let m = FpMatrix::from_data(d, d, self.p, x[off..off + d * d].to_vec());
            off += d * d;
            m
        })
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.block_matrices(x)
            .zip(self.block_matrices(y))
            .flat_map(|(a, b)| a.mul(&b).data().to_vec())
            .collect()
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter()
            .zip(y)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect()
    }

    fn scale(&self, x: &[u32], c: u32) -> Vec<u32> {
        x.iter()
            .map(|&a| ((a as u64 * c as u64) % self.p as u64) as u32)
            .collect()
    }

    pub fn is_invertible(&self, x: &[u32]) -> bool {
        self.block_matrices(x).all(|m| m.is_invertible())
    }

    pub fn is_nilpotent(&self, x: &[u32]) -> bool {
        self.block_matrices(x).all(|m| m.is_nilpotent())
    }

    /// The element with coordinates given by the base-`p` digits of `index`.
    pub fn element(&self, mut index: u128) -> Vec<u32> {
        let mut out = vec![0u32; self.len()];
        for b in &self.basis {
            let c = (index % self.p as u128) as u32;
            index /= self.p as u128;
            if c != 0 {
                for (o, &v) in out.iter_mut().zip(b) {
                    *o = ((*o as u64 + c as u64 * v as u64) % self.p as u64) as u32;
                }
            }
        }
        out
    }

    fn checked_size(&self, caps: &Caps) -> Result<u128, FqError> {
        let too_big = || FqError::CapExceeded {
            what: "endomorphism scan",
            required: format!("{}^{} elements", self.p, self.basis.len()),
            cap: caps.max_end_size.to_string(),
        };
        let size = self.size().ok_or_else(too_big)?;
        if size > caps.max_end_size {
            return Err(too_big());
        }
        Ok(size)
    }

    fn span_basis(&self, vectors: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
        let mut rows = vectors;
        let rank = row_reduce(&mut rows, self.len(), self.p).len();
        rows.truncate(rank);
        rows
    }
}

/// `ρ` stays indecomposable over the algebraic closure iff `End(ρ)` is local
/// with residue field `F_p`. Each basis element `b` must be `λ + n` with `n`
/// nilpotent, and the (non-unital) algebra generated by those `n` must be
/// nilpotent; it is then the radical.
pub fn is_absolutely_indecomposable(rho: &FqRep) -> bool {
    if rho.dim.is_zero() {
        return false;
    }
    let e = end_algebra(rho);
    let one = e.one();
    let mut generators = Vec::with_capacity(e.basis.len());
    for b in &e.basis {
        let n = (0..e.p)
            .map(|lambda| e.sub(b, &e.scale(&one, lambda)))
            .find(|n| e.is_nilpotent(n));
        match n {
            Some(n) => generators.push(n),
            None => return false,
        }
    }
    let span = e.span_basis(generators);
    let max_index = e.len() + 1;
    let mut power = span.clone();
    for _ in 0..max_index {
        if power.is_empty() {
            return true;
        }
        let products = power
            .iter()
            .flat_map(|x| span.iter().map(|y| e.mul(x, y)))
            .collect();
        power = e.span_basis(products);
    }
    power.is_empty()
}

/// `dim J(End ρ)` with `J = {x : 1 − yx invertible for all y}`, by scanning
/// every pair of elements.
pub fn radical_dimension_by_scan(rho: &FqRep, caps: &Caps) -> Result<usize, FqError> {
    let e = end_algebra(rho);
    let size = e.checked_size(caps)?;
    let one = e.one();
    let elements: Vec<Vec<u32>> = (0..size).map(|i| e.element(i)).collect();
    let in_radical = |x: &Vec<u32>| {
        elements
            .iter()
            .all(|y| e.is_invertible(&e.sub(&one, &e.mul(y, x))))
    };
    let radical_size = elements.iter().filter(|x| in_radical(x)).count() as u128;
    let mut dim = 0;
    let mut s = 1u128;
    while s < radical_size {
        s *= e.p as u128;
        dim += 1;
    }
    debug_assert_eq!(s, radical_size, "the radical is a subspace");
    Ok(dim)
}

/// `dim End(ρ) − dim J = 1`, with the radical found by exhaustive scan.
pub fn is_absolutely_indecomposable_by_scan(rho: &FqRep, caps: &Caps) -> Result<bool, FqError> {
    if rho.dim.is_zero() {
        return Ok(false);
    }
    let dim_e = end_algebra(rho).dimension();
    Ok(dim_e - radical_dimension_by_scan(rho, caps)? == 1)
}

/// Number of `x ∈ End(ρ)` with `x² = x` (including `0` and `1`).
pub fn idempotent_count_by_scan(rho: &FqRep, caps: &Caps) -> Result<u64, FqError> {
    let e = end_algebra(rho);
    let size = e.checked_size(caps)?;
    Ok((0..size)
        .map(|i| e.element(i))
        .filter(|x| e.mul(x, x) == *x)
        .count() as u64)
}

/// `|Aut(ρ)|`, the units of `End(ρ)`, i.e. the stabiliser of `ρ` in `∏ GL_{d_i}`.
pub fn automorphism_count(rho: &FqRep, caps: &Caps) -> Result<u64, FqError> {
    let e = end_algebra(rho);
    let size = e.checked_size(caps)?;
    Ok((0..size)
        .filter(|&i| e.is_invertible(&e.element(i)))
        .count() as u64)
}
