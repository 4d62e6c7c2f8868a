//! Gram-preserving integer isometries as replayable generator words.
//!
//! An [`Isometry`] stores both the integer matrix and the word of generators
//! whose product equals it, so a verifier can rebuild the matrix from the
//! word and audit every step. Generators are reflections in lattice vectors,
//! Eichler transvections E(u,x): y ↦ y + (y·u)x − (y·x)u − ½x²(y·u)u for
//! isotropic u ⊥ x, the fibre-preserving maps f_i, and explicit matrices.
//!
//! Words compose in application order: the first entry acts first, so the
//! matrix is the product of the generator matrices right-to-left.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::model::{SurfaceModel, IDX_F, IDX_R, IDX_T, IDX_W};
use crate::vector::{LatticeVector, RationalClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// Reflection in a lattice vector of non-zero square (must act
    /// integrally on the lattice).
    Reflection(LatticeVector),
    /// Eichler transvection E(u, x) with u isotropic and u ⊥ x.
    Eichler { u: LatticeVector, x: LatticeVector },
    /// The map F↦F, W↦W+iT, R↦R−iF, T↦T, identity elsewhere.
    FMap(i64),
    /// An explicit Gram-preserving matrix.
    Explicit(Matrix<Int>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    pub word: Vec<Generator>,
    pub matrix: Matrix<Int>,
}

impl Generator {
    /// Left-multiplies `m` by this generator's matrix, in place. All
    /// generators except `Explicit` are rank-≤2 updates, so this costs
    /// O(rank²) instead of a full product.
    pub fn left_mul(&self, model: &SurfaceModel, m: &mut Matrix<Int>) -> Result<()> {
        let rank = model.rank;
        match self {
            Generator::Reflection(v) => {
                let q = model.square_int(v)?;
                if q.is_zero() {
                    return Err(Error::IsotropicReflection);
                }
                let gv = model.gram_mul_int(&v.coords);
                // t = (Gv)ᵀ·m as a row vector
                let mut t = vec![Int::zero(); rank];
                for (k, gvk) in gv.iter().enumerate() {
                    if gvk.is_zero() {
                        continue;
                    }
                    for (tj, mkj) in t.iter_mut().zip(m.row(k)) {
                        *tj += gvk * mkj;
                    }
                }
                for (r, vr) in v.coords.iter().enumerate() {
                    if vr.is_zero() {
                        continue;
                    }
                    let row = m.row_mut(r);
                    for (entry, tj) in row.iter_mut().zip(&t) {
                        let num = Int::from(2) * vr * tj;
                        let (quot, rem) = num.div_rem(&q);
                        if !rem.is_zero() {
                            return Err(Error::NonIntegralReflection);
                        }
                        *entry -= quot;
                    }
                }
                Ok(())
            }
            Generator::Eichler { u, x } => {
                let qu = model.square_int(u)?;
                if !qu.is_zero() {
                    return Err(Error::TransvectionPrecondition("u must be isotropic"));
                }
                if !model.pairing_int(u, x)?.is_zero() {
                    return Err(Error::TransvectionPrecondition("u and x must pair to zero"));
                }
                let qx = model.square_int(x)?;
                let (half, rem) = qx.div_rem(&Int::from(2));
                if !rem.is_zero() {
                    return Err(Error::TransvectionPrecondition("x must have even square"));
                }
                let gu = model.gram_mul_int(&u.coords);
                let gx = model.gram_mul_int(&x.coords);
                let mut p = vec![Int::zero(); rank];
                let mut qrow = vec![Int::zero(); rank];
                for k in 0..rank {
                    let (guk, gxk) = (&gu[k], &gx[k]);
                    if guk.is_zero() && gxk.is_zero() {
                        continue;
                    }
                    let row = m.row(k);
                    for j in 0..rank {
                        if !guk.is_zero() {
                            p[j] += guk * &row[j];
                        }
                        if !gxk.is_zero() {
                            qrow[j] += gxk * &row[j];
                        }
                    }
                }
                for r in 0..rank {
                    let xr = &x.coords[r];
                    let ur = &u.coords[r];
                    if xr.is_zero() && ur.is_zero() {
                        continue;
                    }
                    let row = m.row_mut(r);
                    for j in 0..rank {
                        if !xr.is_zero() {
                            row[j] += xr * &p[j];
                        }
                        if !ur.is_zero() {
                            row[j] -= ur * &qrow[j];
                            row[j] -= &(&half * ur) * &p[j];
                        }
                    }
                }
                Ok(())
            }
            Generator::FMap(i) => {
                let i = Int::from(*i);
                if i.is_zero() {
                    return Ok(());
                }
                let w_row: Vec<Int> = m.row(IDX_W).to_vec();
                let r_row: Vec<Int> = m.row(IDX_R).to_vec();
                for (entry, wj) in m.row_mut(IDX_T).iter_mut().zip(&w_row) {
                    *entry += &i * wj;
                }
                for (entry, rj) in m.row_mut(IDX_F).iter_mut().zip(&r_row) {
                    *entry -= &i * rj;
                }
                Ok(())
            }
            Generator::Explicit(g) => {
                if g.rows() != rank || g.cols() != rank {
                    return Err(Error::DimensionMismatch {
                        expected: rank,
                        got: g.rows(),
                    });
                }
                if !preserves_gram(model, g) {
                    return Err(Error::NotGramPreserving);
                }
                *m = g.mul(m);
                Ok(())
            }
        }
    }

    pub fn inverse(&self, model: &SurfaceModel) -> Result<Generator> {
        Ok(match self {
            Generator::Reflection(v) => Generator::Reflection(v.clone()),
            Generator::Eichler { u, x } => Generator::Eichler {
                u: u.clone(),
                x: x.neg(),
            },
            Generator::FMap(i) => Generator::FMap(-i),
            Generator::Explicit(g) => Generator::Explicit(invert_isometry_matrix(model, g)?),
        })
    }
}

/// matrixᵀ · gram · matrix = gram, exactly.
pub fn preserves_gram(model: &SurfaceModel, m: &Matrix<Int>) -> bool {
    if m.rows() != model.rank || m.cols() != model.rank {
        return false;
    }
    m.transpose().mul(&model.gram).mul(m) == model.gram
}

/// g⁻¹ = G⁻¹ gᵀ G for Gram-preserving g.
pub fn invert_isometry_matrix(model: &SurfaceModel, m: &Matrix<Int>) -> Result<Matrix<Int>> {
    if !preserves_gram(model, m) {
        return Err(Error::NotGramPreserving);
    }
    Ok(model.gram_inv.mul(&m.transpose()).mul(&model.gram))
}

/// Rebuilds the matrix of a generator word from scratch.
pub fn replay(model: &SurfaceModel, word: &[Generator]) -> Result<Matrix<Int>> {
    let mut m = Matrix::identity(model.rank, Int::one());
    for gen in word {
        gen.left_mul(model, &mut m)?;
    }
    Ok(m)
}

impl Isometry {
    pub fn identity(model: &SurfaceModel) -> Self {
        Isometry {
            word: Vec::new(),
            matrix: Matrix::identity(model.rank, Int::one()),
        }
    }

    pub fn from_word(model: &SurfaceModel, word: Vec<Generator>) -> Result<Self> {
        let matrix = replay(model, &word)?;
        Ok(Isometry { word, matrix })
    }

    /// Reflection x ↦ x − 2(x·v)/(v·v) · v. Errors if v is isotropic or the
    /// reflection does not act integrally on the lattice.
    pub fn reflection(model: &SurfaceModel, v: &LatticeVector) -> Result<Self> {
        Self::from_word(model, vec![Generator::Reflection(v.clone())])
    }

    pub fn eichler(model: &SurfaceModel, u: &LatticeVector, x: &LatticeVector) -> Result<Self> {
        Self::from_word(
            model,
            vec![Generator::Eichler {
                u: u.clone(),
                x: x.clone(),
            }],
        )
    }

    pub fn make_f(model: &SurfaceModel, i: i64) -> Self {
        Self::from_word(model, vec![Generator::FMap(i)]).expect("f_i is always defined")
    }

    pub fn explicit(model: &SurfaceModel, matrix: Matrix<Int>) -> Result<Self> {
        if !preserves_gram(model, &matrix) {
            return Err(Error::NotGramPreserving);
        }
        Ok(Isometry {
            word: vec![Generator::Explicit(matrix.clone())],
            matrix,
        })
    }

    /// self ∘ other: `other` acts first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let mut word = other.word.clone();
        word.extend(self.word.iter().cloned());
        Isometry {
            word,
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn invert(&self, model: &SurfaceModel) -> Result<Isometry> {
        let mut word = Vec::with_capacity(self.word.len());
        for gen in self.word.iter().rev() {
            word.push(gen.inverse(model)?);
        }
        Ok(Isometry {
            word,
            matrix: invert_isometry_matrix(model, &self.matrix)?,
        })
    }

    pub fn apply(&self, x: &RationalClass) -> RationalClass {
        let m = &self.matrix;
        let mut out = vec![Rat::zero(); m.rows()];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = Rat::zero();
            for (e, c) in m.row(i).iter().zip(&x.coords) {
                if !e.is_zero() {
                    acc += c * &Rat::from_integer(e.clone());
                }
            }
            *o = acc;
        }
        RationalClass { coords: out }
    }

    pub fn apply_int(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector {
            coords: self.matrix.mul_vec(&x.coords),
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.matrix.rows();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let e = self.matrix.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// g(F) = F.
    pub fn fixes_f(&self) -> bool {
        let n = self.matrix.rows();
        (0..n).all(|i| {
            let e = self.matrix.get(i, IDX_F);
            if i == IDX_F {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    }

    /// Condition (∗): identity on the (F, W) summand, hence preserves the
    /// splitting H(n) ⊕ H(n)^⊥. Columns for F and W are unit vectors and
    /// the F and W rows vanish off the diagonal.
    pub fn satisfies_star(&self) -> bool {
        let n = self.matrix.rows();
        for idx in [IDX_F, IDX_W] {
            for i in 0..n {
                let col = self.matrix.get(i, idx);
                let row = self.matrix.get(idx, i);
                let want = if i == idx { Int::one() } else { Int::zero() };
                if *col != want || *row != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn preserves_gram(&self, model: &SurfaceModel) -> bool {
        preserves_gram(model, &self.matrix)
    }

    /// Word replay reproduces the stored matrix exactly.
    pub fn replay_matches(&self, model: &SurfaceModel) -> bool {
        matches!(replay(model, &self.word), Ok(m) if m == self.matrix)
    }
}

/// Reflection matrix over ℚ in an arbitrary non-isotropic rational vector.
/// Used by the spinor-norm decomposition; this is not a lattice isometry in
/// general.
pub fn rational_reflection(model: &SurfaceModel, v: &RationalClass) -> Result<Matrix<Rat>> {
    let q = model.square(v)?;
    if q.is_zero() {
        return Err(Error::IsotropicReflection);
    }
    let gv = model.gram_mul_rat(&v.coords);
    let mut m: Matrix<Rat> = Matrix::identity(model.rank, Rat::one());
    let two = Rat::from_integer(Int::from(2));
    for r in 0..model.rank {
        if v.coords[r].is_zero() {
            continue;
        }
        let factor = &(&two * &v.coords[r]) / &q;
        for j in 0..model.rank {
            if gv[j].is_zero() {
                continue;
            }
            let val = m.get(r, j) - &(&factor * &gv[j]);
            m.set(r, j, val);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::model::{build_surface_model, IDX_PAIRS};

    fn v(model: &SurfaceModel, entries: &[(usize, i64)]) -> LatticeVector {
        let mut coords = vec![Int::zero(); model.rank];
        for &(i, c) in entries {
            coords[i] = int(c);
        }
        LatticeVector { coords }
    }

    #[test]
    fn reflection_examples() {
        // reflection(W) with n odd sends W to −W.
        let m = build_surface_model(3).unwrap();
        let w = LatticeVector::basis(&m, IDX_W);
        let refl = Isometry::reflection(&m, &w).unwrap();
        assert_eq!(refl.apply_int(&w), w.neg());
        assert!(refl.preserves_gram(&m));

        // reflection(F+W) with n even sends F to −W.
        let m4 = build_surface_model(4).unwrap();
        let fw = v(&m4, &[(IDX_F, 1), (IDX_W, 1)]);
        let refl = Isometry::reflection(&m4, &fw).unwrap();
        let f = LatticeVector::basis(&m4, IDX_F);
        let w4 = LatticeVector::basis(&m4, IDX_W);
        assert_eq!(refl.apply_int(&f), w4.neg());
        assert!(refl.preserves_gram(&m4));

        // Involution.
        let twice = refl.compose(&refl);
        assert!(twice.is_identity());

        // Isotropic vectors are rejected.
        assert_eq!(
            Isometry::reflection(&m4, &f),
            Err(Error::IsotropicReflection)
        );
    }

    #[test]
    fn eichler_examples() {
        let m = build_surface_model(3).unwrap();
        let r = LatticeVector::basis(&m, IDX_R);
        let t = LatticeVector::basis(&m, IDX_T);
        let u1 = LatticeVector::basis(&m, IDX_PAIRS);

        // E(u, 0) is the identity.
        let e = Isometry::eichler(&m, &r, &LatticeVector::zero(&m)).unwrap();
        assert!(e.is_identity());

        // E(R, u1) fixes R.
        let e = Isometry::eichler(&m, &r, &u1).unwrap();
        assert_eq!(e.apply_int(&r), r);
        assert!(e.preserves_gram(&m));

        // E(T, u1) sends R to R + u1.
        let e = Isometry::eichler(&m, &t, &u1).unwrap();
        assert_eq!(e.apply_int(&r), r.add(&u1));

        // Preconditions.
        let w = LatticeVector::basis(&m, IDX_W);
        assert!(Isometry::eichler(&m, &w, &u1).is_err()); // W² = 1 ≠ 0
        assert!(Isometry::eichler(&m, &r, &t).is_err()); // R·T = 1 ≠ 0
    }

    #[test]
    fn eichler_composition_law() {
        let m = build_surface_model(3).unwrap();
        let t = LatticeVector::basis(&m, IDX_T);
        // x, y ⊥ T, x ⊥ y, both of even square.
        let x = v(&m, &[(IDX_PAIRS, 1), (IDX_PAIRS + 1, 3)]);
        let y = v(&m, &[(IDX_PAIRS + 2, 2), (IDX_PAIRS + 3, 1)]);
        let ex = Isometry::eichler(&m, &t, &x).unwrap();
        let ey = Isometry::eichler(&m, &t, &y).unwrap();
        let exy = Isometry::eichler(&m, &t, &x.add(&y)).unwrap();
        assert_eq!(ex.compose(&ey).matrix, exy.matrix);
    }

    #[test]
    fn f_map_examples() {
        let m = build_surface_model(4).unwrap();
        assert!(Isometry::make_f(&m, 0).is_identity());

        let f1 = Isometry::make_f(&m, 1);
        let w = LatticeVector::basis(&m, IDX_W);
        let t = LatticeVector::basis(&m, IDX_T);
        assert_eq!(f1.apply_int(&w), w.add(&t));
        assert!(f1.preserves_gram(&m));

        // apply(make_f(2), R) = R − 2F
        let f2 = Isometry::make_f(&m, 2);
        let r = LatticeVector::basis(&m, IDX_R);
        let f = LatticeVector::basis(&m, IDX_F);
        assert_eq!(f2.apply_int(&r), r.sub(&f.scaled(&int(2))));

        // The coefficient action: αF+βW+γR+δT ↦ (α−iγ)F+βW+γR+(δ+iβ)T.
        for i in -3..=3 {
            let fi = Isometry::make_f(&m, i);
            let x = v(&m, &[(IDX_F, 7), (IDX_W, -2), (IDX_R, 5), (IDX_T, 1)]);
            let y = fi.apply_int(&x);
            let expect = v(
                &m,
                &[
                    (IDX_F, 7 - i * 5),
                    (IDX_W, -2),
                    (IDX_R, 5),
                    (IDX_T, 1 + i * -2),
                ],
            );
            assert_eq!(y, expect);
            assert!(fi.preserves_gram(&m));
            // f_i ∘ f_j = f_{i+j}
            let fj = Isometry::make_f(&m, 2 - i);
            assert_eq!(fi.compose(&fj).matrix, Isometry::make_f(&m, 2).matrix);
        }
    }

    #[test]
    fn compose_invert_apply() {
        let m = build_surface_model(3).unwrap();
        let t = LatticeVector::basis(&m, IDX_T);
        let u1 = LatticeVector::basis(&m, IDX_PAIRS);
        let g = Isometry::eichler(&m, &t, &u1)
            .unwrap()
            .compose(&Isometry::make_f(&m, 3));
        let ginv = g.invert(&m).unwrap();
        assert!(g.compose(&ginv).is_identity());
        assert!(ginv.compose(&g).is_identity());
        assert!(ginv.replay_matches(&m));

        let x = v(&m, &[(IDX_F, 2), (IDX_R, -1), (IDX_PAIRS + 1, 4)]);
        assert_eq!(ginv.apply_int(&g.apply_int(&x)), x);
        let id = Isometry::identity(&m);
        assert_eq!(id.apply_int(&x), x);
    }

    #[test]
    fn explicit_requires_gram_preservation() {
        let m = build_surface_model(3).unwrap();
        let mut bad = Matrix::identity(m.rank, Int::one());
        bad.set(0, 1, int(1));
        assert_eq!(Isometry::explicit(&m, bad), Err(Error::NotGramPreserving));
        let f3 = Isometry::make_f(&m, 3);
        let ex = Isometry::explicit(&m, f3.matrix.clone()).unwrap();
        assert_eq!(ex.matrix, f3.matrix);
        assert!(ex.invert(&m).unwrap().compose(&ex).is_identity());
    }

    #[test]
    fn rational_reflection_formula() {
        let m = build_surface_model(3).unwrap();
        let w = LatticeVector::basis(&m, IDX_W).to_rational();
        let refl = rational_reflection(&m, &w).unwrap();
        // Sends W to −W and fixes T.
        let wcol = refl.column(IDX_W);
        assert_eq!(wcol[IDX_W], -Rat::one());
        let tcol = refl.column(IDX_T);
        assert!(tcol[IDX_T].is_one());
    }
}
