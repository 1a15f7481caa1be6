//! Orbits of `∏_i GL_{d_i}(F_p)` on a representation space.
//!
//! The group acts linearly on the vector of matrix entries, so each
//! generator is a `N × N` matrix. Images of all indices are computed in
//! parallel blocks and merged, in block order, into a union-find whose roots
//! are always the smallest index of their class.

use rayon::prelude::*;

use super::endo::is_absolutely_indecomposable;
use super::matrix::{primitive_root, FpMatrix};
use super::{group_order, Caps, FqError, OrbitReport, RepSpace};
use crate::quiver::{DimVector, Quiver};

const BLOCK: u64 = 1 << 14;
const BLOCKS_PER_ROUND: u64 = 64;

/// An orbit, represented by its smallest index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: u64,
    pub size: u64,
}

/// Generators of `GL_n(F_p)`: `diag(ζ, 1, …)`, `1 + E_12`, the `n`-cycle and
/// the transposition `(1 2)`.
fn gl_generators(n: usize, p: u32) -> Vec<FpMatrix> {
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    let zeta = primitive_root(p);
    if zeta != 1 {
        let mut d = FpMatrix::identity(n, p);
        d.set(0, 0, zeta);
        gens.push(d);
    }
    if n >= 2 {
        let mut e = FpMatrix::identity(n, p);
        e.set(0, 1, 1);
        gens.push(e);
        let mut cycle = FpMatrix::zeros(n, n, p);
        for i in 0..n {
            cycle.set((i + 1) % n, i, 1);
        }
        gens.push(cycle);
        if n > 2 {
            let mut swap = FpMatrix::identity(n, p);
            swap.set(0, 0, 0);
            swap.set(1, 1, 0);
            swap.set(0, 1, 1);
            swap.set(1, 0, 1);
            gens.push(swap);
        }
    }
    gens
}

/// The matrix (row-major, `N × N`) of `ρ(a) ↦ g_{t(a)} ρ(a) g_{s(a)}^{-1}`
/// for `g` equal to `gen` at `vertex` and the identity elsewhere.
fn action_matrix(space: &RepSpace, vertex: usize, gen: &FpMatrix) -> Vec<u32> {
    let inv = gen.inverse().expect("generators are invertible");
    let n = space.entries;
    let mut out = vec![0u32; n * n];
    let mut unit = vec![0u32; n];
    for col in 0..n {
        unit.iter_mut().for_each(|x| *x = 0);
        unit[col] = 1;
        let rep = space.rep_from_digits(&unit);
        let image: Vec<u32> = space
            .quiver
            .arrows()
            .iter()
            .zip(&rep.mats)
            .flat_map(|(a, m)| {
                let mut m = m.clone();
                if a.target == vertex {
                    m = gen.mul(&m);
                }
                if a.source == vertex {
                    m = m.mul(&inv);
                }
                m.data().to_vec()
            })
            .collect();
        for (row, &v) in image.iter().enumerate() {
            out[row * n + col] = v;
        }
    }
    out
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra < rb {
        parent[rb as usize] = ra;
    } else if rb < ra {
        parent[ra as usize] = rb;
    }
}

/// All orbits, sorted by representative.
pub fn orbit_decomposition(space: &RepSpace, caps: &Caps) -> Result<Vec<Orbit>, FqError> {
    let order = group_order(&space.dim, space.p)?;
    if let Some(cap) = caps.max_group_order {
        if order > cap {
            return Err(FqError::CapExceeded {
                what: "group action",
                required: format!("group of order {order}"),
                cap: cap.to_string(),
            });
        }
    }
    let size = space.size;
    if size > u32::MAX as u64 {
        return Err(FqError::CapExceeded {
            what: "orbit decomposition",
            required: format!("{size} representations"),
            cap: u32::MAX.to_string(),
        });
    }
    let n = space.entries;
    let p = space.p as u64;
    let gens: Vec<Vec<u32>> = space
        .dim
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| {
            gl_generators(d as usize, space.p)
                .into_iter()
                .map(move |g| (v, g))
        })
        .map(|(v, g)| action_matrix(space, v, &g))
        .collect();

    let mut parent: Vec<u32> = (0..size as u32).collect();
    let blocks = size.div_ceil(BLOCK);
    let mut next_block = 0;
    while next_block < blocks {
        let last = (next_block + BLOCKS_PER_ROUND).min(blocks);
        let images: Vec<Vec<u32>> = (next_block..last)
            .into_par_iter()
            .map(|b| {
                let lo = b * BLOCK;
                let hi = (lo + BLOCK).min(size);
                let mut digits = vec![0u32; n];
                let mut out = Vec::with_capacity(((hi - lo) as usize) * gens.len());
                for x in lo..hi {
                    space.digits_into(x, &mut digits);
                    for g in &gens {
                        let image = (0..n).fold(0u64, |acc, row| {
                            let r = &g[row * n..(row + 1) * n];
                            let v = r
                                .iter()
                                .zip(&digits)
                                .map(|(&a, &b)| a as u64 * b as u64)
                                .sum::<u64>()
                                % p;
                            acc * p + v
                        });
                        out.push(image as u32);
                    }
                }
                out
            })
            .collect();
        for (k, block) in images.iter().enumerate().filter(|_| !gens.is_empty()) {
            let lo = (next_block + k as u64) * BLOCK;
            for (i, chunk) in block.chunks(gens.len()).enumerate() {
                let x = (lo + i as u64) as u32;
                for &y in chunk {
                    union(&mut parent, x, y);
                }
            }
        }
        next_block = last;
    }

    let mut roots = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    let mut root_slot = vec![u32::MAX; size as usize];
    for x in 0..size as u32 {
        let r = find(&mut parent, x);
        if r == x {
            root_slot[x as usize] = roots.len() as u32;
            roots.push(x as u64);
            counts.push(0);
        }
        counts[root_slot[r as usize] as usize] += 1;
    }
    Ok(roots
        .into_iter()
        .zip(counts)
        .map(|(representative, size)| Orbit {
            representative,
            size,
        })
        .collect())
}

/// Number of isomorphism classes of absolutely indecomposable
/// `d`-dimensional representations over `F_p`, with the orbit totals.
pub fn count_abs_indec_classes(
    q: &Quiver,
    d: &DimVector,
    p: u32,
    caps: &Caps,
) -> Result<OrbitReport, FqError> {
    let space = RepSpace::new(q, d, p, caps)?;
    let orbits = orbit_decomposition(&space, caps)?;
    let abs_indec = orbits
        .par_iter()
        .filter(|o| is_absolutely_indecomposable(&space.decode(o.representative)))
        .count() as u64;
    Ok(OrbitReport {
        total_reps: space.size,
        abs_indec_orbit_count: abs_indec,
        orbit_count_all: orbits.len() as u64,
        group_order: group_order(d, p)?,
    })
}
