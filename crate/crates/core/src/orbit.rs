//! Constructive transitivity: mapping a primitive vector of H(n)^⊥ onto
//! R + (x²/2)·T by a word of Eichler transvections.
//!
//! The moves only ever use the isotropic generators R, T, u₁, v₁ together
//! with vectors orthogonal to them, so the resulting isometry is the
//! identity on the (F, W) summand (condition (∗)) and, being a product of
//! transvections, has spinor norm one — it is realizable by a
//! self-diffeomorphism.
//!
//! Outline: first make the R- and T-coefficients coprime (at most one
//! transvection through a gcd-realizing vector), then run an
//! additions-only 2×2 reduction between the (R,T) plane and the first
//! auxiliary hyperbolic pair — every row/column addition on the coefficient
//! matrix [[γ, −s], [t, δ]] is a single transvection — landing on
//! coefficients (1, q, 0, 0), and finally clear the remaining block with
//! one transvection through T. The T-coefficient then equals x²/2
//! automatically because transvections preserve squares.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::arith::{content, extended_gcd_vec, Int};
use crate::error::{Error, Result};
use crate::isometry::{Generator, Isometry};
use crate::model::{SurfaceModel, IDX_F, IDX_PAIRS, IDX_R, IDX_T, IDX_W};
use crate::vector::LatticeVector;

/// Working state: the vector being moved plus the accumulated word.
struct Mover<'a> {
    model: &'a SurfaceModel,
    cur: LatticeVector,
    word: Vec<Generator>,
}

impl Mover<'_> {
    fn push(&mut self, u: LatticeVector, x: LatticeVector) -> Result<()> {
        let yu = self.model.pairing_int(&self.cur, &u)?;
        let yx = self.model.pairing_int(&self.cur, &x)?;
        let half = self.model.square_int(&x)? / Int::from(2);
        for idx in 0..self.model.rank {
            let add = &yu * &x.coords[idx] - &yx * &u.coords[idx] - &(&half * &yu) * &u.coords[idx];
            self.cur.coords[idx] += add;
        }
        self.word.push(Generator::Eichler { u, x });
        Ok(())
    }

    fn coeff(&self, idx: usize) -> Int {
        self.cur.coords[idx].clone()
    }

    /// A lattice vector w supported outside {F, W, R, T} with cur·w = g,
    /// where g is the gcd of the pairings with that part of the basis.
    fn outer_gcd_vector(&self) -> (Int, LatticeVector) {
        let pairings = self.model.gram_mul_int(&self.cur.coords);
        let (g, coeffs) = extended_gcd_vec(&pairings[IDX_PAIRS..]);
        let mut w = vec![Int::zero(); self.model.rank];
        w[IDX_PAIRS..].clone_from_slice(&coeffs);
        (g, LatticeVector { coords: w })
    }
}

/// 2×2 coefficient view used by the plane reduction:
/// X = [[γ, −s], [t, δ]] where γ, δ are the R-, T-coefficients and s, t the
/// u₁-, v₁-coefficients. det X = γδ + st is invariant under all four moves.
#[derive(Debug, Clone, PartialEq)]
struct PlaneView {
    x00: Int,
    x01: Int,
    x10: Int,
    x11: Int,
}

impl Mover<'_> {
    fn plane_view(&self) -> PlaneView {
        PlaneView {
            x00: self.coeff(IDX_R),
            x01: -self.coeff(IDX_PAIRS),
            x10: self.coeff(IDX_PAIRS + 1),
            x11: self.coeff(IDX_T),
        }
    }

    // The four additions-only matrix moves, each one Eichler transvection.
    // u₁ = basis(IDX_PAIRS), v₁ = basis(IDX_PAIRS + 1).

    /// row1 += c·row2  ⟷  E(u₁, c·R)
    fn row1_add(&mut self, c: &Int) -> Result<()> {
        let u = LatticeVector::basis(self.model, IDX_PAIRS);
        let x = LatticeVector::basis(self.model, IDX_R).scaled(c);
        self.push(u, x)
    }

    /// row2 += c·row1  ⟷  E(T, c·v₁)
    fn row2_add(&mut self, c: &Int) -> Result<()> {
        let u = LatticeVector::basis(self.model, IDX_T);
        let x = LatticeVector::basis(self.model, IDX_PAIRS + 1).scaled(c);
        self.push(u, x)
    }

    /// col1 += c·col2  ⟷  E(R, c·v₁)
    fn col1_add(&mut self, c: &Int) -> Result<()> {
        let u = LatticeVector::basis(self.model, IDX_R);
        let x = LatticeVector::basis(self.model, IDX_PAIRS + 1).scaled(c);
        self.push(u, x)
    }

    /// col2 += c·col1  ⟷  E(u₁, c·T)
    fn col2_add(&mut self, c: &Int) -> Result<()> {
        let u = LatticeVector::basis(self.model, IDX_PAIRS);
        let x = LatticeVector::basis(self.model, IDX_T).scaled(c);
        self.push(u, x)
    }
}

/// Scan cap for the coprimation phase; a window of length rad(δ) + 1 always
/// contains a good residue, so hitting this cap signals a bug.
const SCAN_CAP: u32 = 1 << 20;

pub fn map_to_rt(model: &SurfaceModel, x: &LatticeVector) -> Result<Isometry> {
    if x.coords.len() != model.rank {
        return Err(Error::DimensionMismatch {
            expected: model.rank,
            got: x.coords.len(),
        });
    }
    if !x.coords[IDX_F].is_zero() || !x.coords[IDX_W].is_zero() {
        return Err(Error::OutsideOrthogonalBlock);
    }
    let div = model.divisibility(x)?;
    if !div.is_one() {
        return Err(Error::NotPrimitive(div.to_string()));
    }

    let square = model.square_int(x)?;
    let delta_target = &square / &Int::from(2);

    let mut mv = Mover {
        model,
        cur: x.clone(),
        word: Vec::new(),
    };

    coprime_rt_coefficients(&mut mv)?;
    reduce_plane_pair(&mut mv)?;
    clear_outer_block(&mut mv)?;

    // cur must now be exactly R + (x²/2)·T.
    let mut expect = vec![Int::zero(); model.rank];
    expect[IDX_R] = Int::one();
    expect[IDX_T] = delta_target;
    assert_eq!(
        mv.cur.coords, expect,
        "orbit normal form violated; this is a bug"
    );

    let iso = Isometry::from_word(model, mv.word)?;
    debug_assert_eq!(iso.apply_int(x), mv.cur);
    Ok(iso)
}

/// Phase 1: make gcd(R-coefficient, T-coefficient) = 1.
fn coprime_rt_coefficients(mv: &mut Mover) -> Result<()> {
    let gamma = mv.coeff(IDX_R);
    let delta = mv.coeff(IDX_T);
    let g = gamma.gcd(&delta);
    if g.is_one() {
        return Ok(());
    }

    let (h, w0) = mv.outer_gcd_vector();
    let t = LatticeVector::basis(mv.model, IDX_T);
    let r = LatticeVector::basis(mv.model, IDX_R);

    if gamma.is_zero() && delta.is_zero() {
        // Primitivity forces the outer pairings to have gcd 1; one
        // transvection through w0 makes the T-coefficient −1.
        debug_assert!(h.is_one());
        mv.push(t, w0)?;
        return Ok(());
    }

    // gcd(g, h) = 1 by primitivity. E(R, p·w0) maps the R-coefficient to
    // γ − p·h − ½w0²p²·δ while fixing δ; for every prime ℓ | δ either
    // ℓ | h (then the new γ ≡ old γ ≢ 0 mod ℓ) or exactly one residue of p
    // mod ℓ is bad, so a good p exists within any window of length rad(δ).
    // The symmetric move handles δ = 0.
    let w0_half_sq = mv.model.square_int(&w0)? / Int::from(2);
    if !delta.is_zero() {
        let mut p = Int::zero();
        for _ in 0..SCAN_CAP {
            let cand = &gamma - &(&p * &h) - &(&(&w0_half_sq * &p) * &p) * &delta;
            if cand.gcd(&delta).is_one() {
                mv.push(r, w0.scaled(&p))?;
                return Ok(());
            }
            p += Int::one();
        }
    } else {
        let mut p = Int::zero();
        for _ in 0..SCAN_CAP {
            let cand = &delta - &(&p * &h) - &(&(&w0_half_sq * &p) * &p) * &gamma;
            if cand.gcd(&gamma).is_one() {
                mv.push(t, w0.scaled(&p))?;
                return Ok(());
            }
            p += Int::one();
        }
    }
    Err(Error::EscalationBound(SCAN_CAP))
}

/// Phase 2: additions-only reduction of the coefficient matrix
/// [[γ, −s], [t, δ]] to [[1, 0], [0, det]]. Possible because the content is
/// 1 after phase 1, and each move is a single transvection.
fn reduce_plane_pair(mv: &mut Mover) -> Result<()> {
    loop {
        let v = mv.plane_view();
        if v.x00.is_one() && v.x01.is_zero() && v.x10.is_zero() {
            return Ok(());
        }

        // Ensure the corner entry is non-zero.
        if v.x00.is_zero() {
            if !v.x10.is_zero() {
                mv.row1_add(&Int::one())?;
            } else if !v.x01.is_zero() {
                mv.col1_add(&Int::one())?;
            } else {
                // Only x11 remains; bring it into reach in two moves.
                mv.row1_add(&Int::one())?;
                mv.col1_add(&Int::one())?;
            }
            continue;
        }

        // Clear column 1 (x10) by the Euclidean algorithm on rows.
        let mut v = mv.plane_view();
        while !v.x10.is_zero() {
            let q = v.x10.div_floor(&v.x00);
            mv.row2_add(&-q)?;
            v = mv.plane_view();
            if !v.x10.is_zero() {
                let q = v.x00.div_floor(&v.x10);
                mv.row1_add(&-q)?;
                v = mv.plane_view();
                if v.x00.is_zero() {
                    break;
                }
            }
        }
        if v.x00.is_zero() || !v.x10.is_zero() {
            continue;
        }
        // Clear row 1 (x01) by the Euclidean algorithm on columns. A col1
        // move can re-dirty x10; the outer loop retries in that case.
        while !v.x01.is_zero() {
            let q = v.x01.div_floor(&v.x00);
            mv.col2_add(&-q)?;
            v = mv.plane_view();
            if !v.x01.is_zero() {
                let q = v.x00.div_floor(&v.x01);
                mv.col1_add(&-q)?;
                v = mv.plane_view();
                if v.x00.is_zero() || !v.x10.is_zero() {
                    break;
                }
            }
        }
        if v.x00.is_zero() || !v.x10.is_zero() || !v.x01.is_zero() {
            continue;
        }

        // Diagonal now; the corner must become exactly 1.
        if v.x00.is_one() {
            continue; // re-enter to hit the exit test
        }
        if v.x00 == -Int::one() {
            // Row rotation (r1, r2) → (r2, −r1), then the outer loop cleans
            // up the off-diagonal remainders.
            mv.row1_add(&Int::one())?;
            mv.row2_add(&-Int::one())?;
            mv.row1_add(&Int::one())?;
            continue;
        }
        // |x00| > 1: the diagonal entries are coprime (content is 1);
        // mix row 2 in and rerun the Euclid passes.
        mv.row1_add(&Int::one())?;
    }
}

/// Phase 3: with R-coefficient 1 (so cur·T = 1), one transvection through T
/// clears everything outside the (R, T) plane.
fn clear_outer_block(mv: &mut Mover) -> Result<()> {
    let mut w = vec![Int::zero(); mv.model.rank];
    let mut nonzero = false;
    for idx in IDX_PAIRS..mv.model.rank {
        if !mv.cur.coords[idx].is_zero() {
            w[idx] = -mv.cur.coords[idx].clone();
            nonzero = true;
        }
    }
    debug_assert!(mv.coeff(IDX_R).is_one());
    if nonzero {
        let t = LatticeVector::basis(mv.model, IDX_T);
        mv.push(t, LatticeVector { coords: w })?;
    }
    Ok(())
}

/// Splits a non-zero integer vector into content and primitive part.
pub fn primitive_part(x: &LatticeVector) -> Option<(Int, LatticeVector)> {
    let c = content(&x.coords);
    if c.is_zero() {
        return None;
    }
    Some((
        c.clone(),
        LatticeVector {
            coords: x.coords.iter().map(|v| v / &c).collect(),
        },
    ))
}
