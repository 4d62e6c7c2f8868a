//! The intersection lattice of the elliptic surface E(n).
//!
//! Fixed basis order: F, W, R, T, then `a` hyperbolic pairs (u_j, v_j), then
//! `b` blocks of −E8. This order is part of every wire format, so it is
//! pinned here once and nowhere else.
//!
//! The (F,W) block is the standard hyperbolic form H when n is even and
//! H' = [[0,1],[1,1]] when n is odd (F is always the isotropic generator);
//! (R,T) always spans H. The constants a = 2n−3 and b = n are forced by the
//! rank 12n−2 and signature −8n of E(n).

use num_traits::{One, Zero};

use crate::arith::{int, Int};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Index of F in the fixed basis.
pub const IDX_F: usize = 0;
/// Index of W in the fixed basis.
pub const IDX_W: usize = 1;
/// Index of the rim torus R.
pub const IDX_R: usize = 2;
/// Index of the torus T dual to R.
pub const IDX_T: usize = 3;
/// First coordinate of the auxiliary hyperbolic pairs.
pub const IDX_PAIRS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub n: i64,
    pub m: i64,
    /// W·W: 0 for even n, 1 for odd n.
    pub parity_eps: i64,
    pub rank: usize,
    /// Number of auxiliary hyperbolic pairs, 2n−3.
    pub a: i64,
    /// Number of −E8 blocks, n.
    pub b: i64,
    /// Coefficient of PD(F) in the first Chern class, −(n−2).
    pub c1_coeff: i64,
    pub gram: Matrix<Int>,
    /// Inverse Gram matrix (integral by unimodularity), assembled blockwise.
    pub gram_inv: Matrix<Int>,
}

/// Inverse of a small unimodular integer matrix, by exact Gauss-Jordan
/// elimination. Panics if the matrix is not invertible over the integers.
fn invert_unimodular(m: &Matrix<Int>) -> Matrix<Int> {
    use crate::arith::Rat;
    let n = m.rows();
    let mut a: Matrix<Rat> = m.map(|v| Rat::from_integer(v.clone()));
    let mut inv: Matrix<Rat> = Matrix::identity(n, Rat::one());
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a.get(r, col).is_zero())
            .expect("singular matrix");
        if pivot != col {
            for j in 0..n {
                let x = a.get(pivot, j).clone();
                a.set(pivot, j, a.get(col, j).clone());
                a.set(col, j, x);
                let y = inv.get(pivot, j).clone();
                inv.set(pivot, j, inv.get(col, j).clone());
                inv.set(col, j, y);
            }
        }
        let p = a.get(col, col).clone();
        for j in 0..n {
            a.set(col, j, a.get(col, j) / &p);
            inv.set(col, j, inv.get(col, j) / &p);
        }
        for r in 0..n {
            if r == col || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for j in 0..n {
                let av = a.get(r, j) - &(&factor * a.get(col, j));
                a.set(r, j, av);
                let iv = inv.get(r, j) - &(&factor * inv.get(col, j));
                inv.set(r, j, iv);
            }
        }
    }
    inv.map(|v| {
        assert!(v.denom().is_one(), "matrix inverse is not integral");
        v.numer().clone()
    })
}

/// E8 Gram matrix in the pinned convention: diagonal 2, entry −1 between
/// consecutive chain members e1..e7 and on the edge e5–e8.
fn e8_gram() -> Matrix<Int> {
    let mut g: Matrix<Int> = Matrix::zeros(8, 8);
    for i in 0..8 {
        g.set(i, i, int(2));
    }
    for i in 0..6 {
        g.set(i, i + 1, int(-1));
        g.set(i + 1, i, int(-1));
    }
    g.set(4, 7, int(-1));
    g.set(7, 4, int(-1));
    g
}

pub fn build_surface_model(n: i64) -> Result<SurfaceModel> {
    if n < 3 {
        return Err(Error::SurfaceIndexTooSmall(n));
    }
    let parity_eps = n % 2;
    let m = if parity_eps == 0 { n / 2 } else { (n + 1) / 2 };
    let a = 2 * n - 3;
    let b = n;
    let rank = (12 * n - 2) as usize;

    let mut gram: Matrix<Int> = Matrix::zeros(rank, rank);
    // (F, W): H for even n, H' for odd n. F stays isotropic either way.
    gram.set(IDX_F, IDX_W, Int::one());
    gram.set(IDX_W, IDX_F, Int::one());
    gram.set(IDX_W, IDX_W, int(parity_eps));
    // (R, T): H.
    gram.set(IDX_R, IDX_T, Int::one());
    gram.set(IDX_T, IDX_R, Int::one());
    // a hyperbolic pairs.
    for j in 0..a as usize {
        let u = IDX_PAIRS + 2 * j;
        gram.set(u, u + 1, Int::one());
        gram.set(u + 1, u, Int::one());
    }
    // b blocks of −E8.
    let e8 = e8_gram();
    let e8_start = IDX_PAIRS + 2 * a as usize;
    for block in 0..b as usize {
        let base = e8_start + 8 * block;
        for i in 0..8 {
            for j in 0..8 {
                let v = e8.get(i, j);
                if !v.is_zero() {
                    gram.set(base + i, base + j, -v.clone());
                }
            }
        }
    }

    // Blockwise inverse: H is its own inverse, H' inverts to [[-1,1],[1,0]],
    // and the −E8 blocks invert to −(E8⁻¹), computed once.
    let mut gram_inv: Matrix<Int> = Matrix::zeros(rank, rank);
    gram_inv.set(IDX_F, IDX_W, Int::one());
    gram_inv.set(IDX_W, IDX_F, Int::one());
    if parity_eps == 1 {
        gram_inv.set(IDX_F, IDX_F, -Int::one());
    }
    gram_inv.set(IDX_R, IDX_T, Int::one());
    gram_inv.set(IDX_T, IDX_R, Int::one());
    for j in 0..a as usize {
        let u = IDX_PAIRS + 2 * j;
        gram_inv.set(u, u + 1, Int::one());
        gram_inv.set(u + 1, u, Int::one());
    }
    let e8_inv = invert_unimodular(&e8);
    for block in 0..b as usize {
        let base = e8_start + 8 * block;
        for i in 0..8 {
            for j in 0..8 {
                let v = e8_inv.get(i, j);
                if !v.is_zero() {
                    gram_inv.set(base + i, base + j, -v.clone());
                }
            }
        }
    }

    Ok(SurfaceModel {
        n,
        m,
        parity_eps,
        rank,
        a,
        b,
        c1_coeff: -(n - 2),
        gram,
        gram_inv,
    })
}

impl SurfaceModel {
    pub fn is_spin(&self) -> bool {
        self.n % 2 == 0
    }

    /// First coordinate of the −E8 part.
    pub fn e8_start(&self) -> usize {
        IDX_PAIRS + 2 * self.a as usize
    }

    /// Coordinate range of H(n)^⊥ = H_RT ⊕ aH ⊕ b(−E8).
    pub fn perp_range(&self) -> std::ops::Range<usize> {
        IDX_R..self.rank
    }

    /// Coordinate range of the aH ⊕ b(−E8) part (where Z0 lives).
    pub fn z_range(&self) -> std::ops::Range<usize> {
        IDX_PAIRS..self.rank
    }

    /// Standard basis vector as integer coordinates.
    pub fn basis_vector(&self, i: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.rank];
        v[i] = Int::one();
        v
    }

    /// Textual model summary: `{n, rank, a, b}` plus the Gram matrix
    /// row-major, for independent verification.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "n: {}\nrank: {}\na: {}\nb: {}\ngram:\n",
            self.n, self.rank, self.a, self.b
        ));
        for i in 0..self.rank {
            let row: Vec<String> = self.gram.row(i).iter().map(Int::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_n() {
        assert_eq!(build_surface_model(2), Err(Error::SurfaceIndexTooSmall(2)));
        assert_eq!(build_surface_model(-1), Err(Error::SurfaceIndexTooSmall(-1)));
    }

    #[test]
    fn derived_constants_n3() {
        let m = build_surface_model(3).unwrap();
        assert_eq!(m.rank, 34);
        assert_eq!(m.a, 3);
        assert_eq!(m.b, 3);
        assert_eq!(m.parity_eps, 1);
        assert_eq!(m.c1_coeff, -1);
        assert_eq!(m.m, 2);
    }

    #[test]
    fn derived_constants_n4() {
        let m = build_surface_model(4).unwrap();
        assert_eq!(m.rank, 46);
        assert_eq!(m.a, 5);
        assert_eq!(m.b, 4);
        assert_eq!(m.parity_eps, 0);
        assert_eq!(m.c1_coeff, -2);
        assert_eq!(m.m, 2);
        // W has self-intersection zero for even n.
        assert_eq!(m.gram.get(IDX_W, IDX_W), &Int::zero());
    }

    #[test]
    fn gram_is_symmetric_with_expected_blocks() {
        for n in 3..=6 {
            let m = build_surface_model(n).unwrap();
            for i in 0..m.rank {
                for j in 0..m.rank {
                    assert_eq!(m.gram.get(i, j), m.gram.get(j, i));
                }
            }
            assert_eq!(m.gram.get(IDX_F, IDX_F), &Int::zero());
            assert_eq!(m.gram.get(IDX_F, IDX_W), &Int::one());
            assert_eq!(m.gram.get(IDX_W, IDX_W), &int(n % 2));
            assert_eq!(m.gram.get(IDX_R, IDX_T), &Int::one());
            assert_eq!(m.gram.get(IDX_R, IDX_R), &Int::zero());
            assert_eq!(m.gram.get(IDX_T, IDX_T), &Int::zero());
            // Every −E8 diagonal entry is −2.
            for i in m.e8_start()..m.rank {
                assert_eq!(m.gram.get(i, i), &int(-2));
            }
        }
    }

    #[test]
    fn gram_inverse_is_exact() {
        for n in [3, 4] {
            let m = build_surface_model(n).unwrap();
            let prod = m.gram.mul(&m.gram_inv);
            assert_eq!(prod, Matrix::identity(m.rank, Int::one()));
        }
    }
}
