//! Integer and rational coordinate vectors in the fixed basis, and the
//! pairing-level operations on them: intersection pairing, divisibility,
//! the (F,W)-decomposition and basis completion inside H(n)^⊥.

use num_traits::{One, Zero};

use crate::arith::{content, extended_gcd_vec, format_rat, parse_rat, Int, Rat};
use crate::error::{Error, Result};
use crate::model::{SurfaceModel, IDX_F, IDX_W};

/// Integral homology class in the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<Int>,
}

/// Rational cohomology class in the fixed basis (identified with homology
/// via Poincaré duality throughout).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalClass {
    pub coords: Vec<Rat>,
}

impl LatticeVector {
    pub fn new(model: &SurfaceModel, coords: Vec<Int>) -> Result<Self> {
        if coords.len() != model.rank {
            return Err(Error::DimensionMismatch {
                expected: model.rank,
                got: coords.len(),
            });
        }
        Ok(LatticeVector { coords })
    }

    pub fn zero(model: &SurfaceModel) -> Self {
        LatticeVector {
            coords: vec![Int::zero(); model.rank],
        }
    }

    pub fn basis(model: &SurfaceModel, i: usize) -> Self {
        LatticeVector {
            coords: model.basis_vector(i),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> RationalClass {
        RationalClass {
            coords: self.coords.iter().cloned().map(Rat::from_integer).collect(),
        }
    }

    pub fn scaled(&self, k: &Int) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl RationalClass {
    pub fn new(model: &SurfaceModel, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() != model.rank {
            return Err(Error::DimensionMismatch {
                expected: model.rank,
                got: coords.len(),
            });
        }
        Ok(RationalClass { coords })
    }

    pub fn zero(model: &SurfaceModel) -> Self {
        RationalClass {
            coords: vec![Rat::zero(); model.rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        RationalClass {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RationalClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scaled(&self, k: &Rat) -> Self {
        RationalClass {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn sup_norm(&self) -> Rat {
        crate::arith::sup_norm(&self.coords)
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        if !self.is_integral() {
            return None;
        }
        Some(LatticeVector {
            coords: self.coords.iter().map(|c| c.numer().clone()).collect(),
        })
    }
}

/// (F,W)-decomposition ω = αF + βW + ω′ with ω′ ⊥ F, W.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub alpha: Rat,
    pub beta: Rat,
    pub perp: RationalClass,
}

impl SurfaceModel {
    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: len,
            });
        }
        Ok(())
    }

    /// Gram times integer coordinates: the vector of pairings with the basis.
    pub fn gram_mul_int(&self, x: &[Int]) -> Vec<Int> {
        self.gram.mul_vec(&x.to_vec())
    }

    pub fn gram_mul_rat(&self, x: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.rank];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = Rat::zero();
            for (g, c) in self.gram.row(i).iter().zip(x) {
                if !g.is_zero() {
                    acc += c * &Rat::from_integer(g.clone());
                }
            }
            *o = acc;
        }
        out
    }

    pub fn pairing(&self, x: &RationalClass, y: &RationalClass) -> Result<Rat> {
        self.check_len(x.coords.len())?;
        self.check_len(y.coords.len())?;
        let gy = self.gram_mul_rat(&y.coords);
        let mut acc = Rat::zero();
        for (a, b) in x.coords.iter().zip(&gy) {
            acc += a * b;
        }
        Ok(acc)
    }

    pub fn pairing_int(&self, x: &LatticeVector, y: &LatticeVector) -> Result<Int> {
        self.check_len(x.coords.len())?;
        self.check_len(y.coords.len())?;
        let gy = self.gram_mul_int(&y.coords);
        let mut acc = Int::zero();
        for (a, b) in x.coords.iter().zip(&gy) {
            acc += a * b;
        }
        Ok(acc)
    }

    pub fn square(&self, x: &RationalClass) -> Result<Rat> {
        self.pairing(x, x)
    }

    pub fn square_int(&self, x: &LatticeVector) -> Result<Int> {
        self.pairing_int(x, x)
    }

    /// gcd of the pairings of x with all basis vectors; 0 for the zero vector.
    pub fn divisibility(&self, x: &LatticeVector) -> Result<Int> {
        self.check_len(x.coords.len())?;
        Ok(content(&self.gram_mul_int(&x.coords)))
    }

    pub fn is_primitive(&self, x: &LatticeVector) -> Result<bool> {
        Ok(self.divisibility(x)?.is_one())
    }

    /// ω = αF + βW + ω′ with β = ω·F, α = ω·W − ε(n)β and ω′ ⊥ {F, W}.
    pub fn decompose(&self, omega: &RationalClass) -> Result<Decomposition> {
        self.check_len(omega.coords.len())?;
        let f = LatticeVector::basis(self, IDX_F).to_rational();
        let w = LatticeVector::basis(self, IDX_W).to_rational();
        let beta = self.pairing(omega, &f)?;
        let eps = Rat::from_integer(Int::from(self.parity_eps));
        let alpha = self.pairing(omega, &w)? - &eps * &beta;
        let mut perp = omega.clone();
        perp.coords[IDX_F] -= &alpha;
        perp.coords[IDX_W] -= &beta;
        debug_assert!(perp.coords[IDX_F].is_zero() && perp.coords[IDX_W].is_zero());
        Ok(Decomposition { alpha, beta, perp })
    }

    /// True when the class has zero F and W coordinates (lies in H(n)^⊥).
    pub fn in_perp_block(&self, coords_f: bool, x: &[Int]) -> bool {
        let _ = coords_f;
        x[IDX_F].is_zero() && x[IDX_W].is_zero()
    }

    /// Completes a primitive vector x in H(n)^⊥ with a vector e2 in H(n)^⊥
    /// such that x·e2 = 1, via extended gcd against the pairing vector.
    pub fn basis_complete(&self, x: &LatticeVector) -> Result<LatticeVector> {
        self.check_len(x.coords.len())?;
        if !x.coords[IDX_F].is_zero() || !x.coords[IDX_W].is_zero() {
            return Err(Error::OutsideOrthogonalBlock);
        }
        let div = self.divisibility(x)?;
        if !div.is_one() {
            return Err(Error::NotPrimitive(div.to_string()));
        }
        let pairings = self.gram_mul_int(&x.coords);
        let (g, coeffs) = extended_gcd_vec(&pairings[IDX_W + 1..]);
        debug_assert!(g.is_one());
        let mut e2 = vec![Int::zero(); self.rank];
        e2[IDX_W + 1..].clone_from_slice(&coeffs);
        let e2 = LatticeVector { coords: e2 };
        debug_assert!(self.pairing_int(x, &e2).unwrap().is_one());
        Ok(e2)
    }
}

/// Parses a coordinate file: one coordinate per line (comma-delimited entries
/// also accepted), canonical rationals, `#` starts a comment.
pub fn parse_class(model: &SurfaceModel, text: &str) -> Result<RationalClass> {
    let mut coords = Vec::with_capacity(model.rank);
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.split_once('#') {
            Some((head, _)) => head,
            None => raw,
        };
        for piece in line.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let r = parse_rat(piece).ok_or_else(|| Error::Parse {
                line: lineno + 1,
                message: format!("malformed rational {piece:?}"),
            })?;
            coords.push(r);
        }
    }
    RationalClass::new(model, coords)
}

pub fn parse_lattice_vector(model: &SurfaceModel, text: &str) -> Result<LatticeVector> {
    let class = parse_class(model, text)?;
    class.to_lattice().ok_or(Error::Parse {
        line: 0,
        message: "expected integer coordinates".into(),
    })
}

pub fn format_class(class: &RationalClass) -> String {
    let mut out = String::new();
    for c in &class.coords {
        out.push_str(&format_rat(c));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, rat_int};
    use crate::model::{build_surface_model, IDX_R, IDX_T};

    fn v(model: &SurfaceModel, entries: &[(usize, i64)]) -> LatticeVector {
        let mut coords = vec![Int::zero(); model.rank];
        for &(i, c) in entries {
            coords[i] = int(c);
        }
        LatticeVector { coords }
    }

    #[test]
    fn pairing_examples() {
        let m = build_surface_model(4).unwrap();
        let f = LatticeVector::basis(&m, IDX_F);
        let w = LatticeVector::basis(&m, IDX_W);
        let r = LatticeVector::basis(&m, IDX_R);
        let t = LatticeVector::basis(&m, IDX_T);
        assert_eq!(m.pairing_int(&f, &w).unwrap(), int(1));
        assert_eq!(m.pairing_int(&f, &f).unwrap(), int(0));
        assert_eq!(m.pairing_int(&r, &t).unwrap(), int(1));
        // W² = ε(n)
        assert_eq!(m.square_int(&w).unwrap(), int(0));
        let m3 = build_surface_model(3).unwrap();
        let w3 = LatticeVector::basis(&m3, IDX_W);
        assert_eq!(m3.square_int(&w3).unwrap(), int(1));
        // (R + 5T)² = 10
        let x = v(&m, &[(IDX_R, 1), (IDX_T, 5)]);
        assert_eq!(m.square_int(&x).unwrap(), int(10));
    }

    #[test]
    fn pairing_dimension_mismatch() {
        let m = build_surface_model(3).unwrap();
        let short = RationalClass {
            coords: vec![Rat::zero(); 5],
        };
        let ok = RationalClass::zero(&m);
        assert!(matches!(
            m.pairing(&short, &ok),
            Err(Error::DimensionMismatch { expected: 34, got: 5 })
        ));
    }

    #[test]
    fn divisibility_examples() {
        let m = build_surface_model(3).unwrap();
        let r = LatticeVector::basis(&m, IDX_R);
        assert_eq!(m.divisibility(&r).unwrap(), int(1));
        assert_eq!(m.divisibility(&r.scaled(&int(2))).unwrap(), int(2));
        let x = v(&m, &[(IDX_R, 3), (IDX_T, 6)]);
        assert_eq!(m.divisibility(&x).unwrap(), int(3));
        assert_eq!(m.divisibility(&LatticeVector::zero(&m)).unwrap(), int(0));
        assert!(!m.is_primitive(&LatticeVector::zero(&m)).unwrap());
        let rt = v(&m, &[(IDX_R, 1), (IDX_T, 1)]);
        assert!(m.is_primitive(&rt).unwrap());
        assert!(!m.is_primitive(&rt.scaled(&int(2))).unwrap());
    }

    #[test]
    fn divisibility_equals_coordinate_gcd() {
        // On a unimodular lattice the pairing gcd equals the coordinate gcd.
        let m = build_surface_model(3).unwrap();
        let x = v(&m, &[(IDX_F, 4), (IDX_W, 6), (10, -2), (20, 8)]);
        assert_eq!(m.divisibility(&x).unwrap(), content(&x.coords));
    }

    #[test]
    fn decompose_examples() {
        let even = build_surface_model(4).unwrap();
        let odd = build_surface_model(3).unwrap();

        // ω = F + W, n even → (1, 1, 0)
        let fw = v(&even, &[(IDX_F, 1), (IDX_W, 1)]).to_rational();
        let d = even.decompose(&fw).unwrap();
        assert_eq!(d.alpha, rat_int(1));
        assert_eq!(d.beta, rat_int(1));
        assert!(d.perp.is_zero());

        // ω = F + W, n odd: ω·W = F·W + W² = 2, so α = 2 − ε·β = 1.
        let fw = v(&odd, &[(IDX_F, 1), (IDX_W, 1)]).to_rational();
        let d = odd.decompose(&fw).unwrap();
        assert_eq!(d.alpha, rat_int(1));
        assert_eq!(d.beta, rat_int(1));
        assert!(d.perp.is_zero());

        // ω = 2F + 3W + R − T, n even → (2, 3, R − T)
        let x = v(&even, &[(IDX_F, 2), (IDX_W, 3), (IDX_R, 1), (IDX_T, -1)]).to_rational();
        let d = even.decompose(&x).unwrap();
        assert_eq!(d.alpha, rat_int(2));
        assert_eq!(d.beta, rat_int(3));
        let expect = v(&even, &[(IDX_R, 1), (IDX_T, -1)]).to_rational();
        assert_eq!(d.perp, expect);

        // Recomposition is exact.
        let mut back = d.perp.clone();
        back.coords[IDX_F] += &d.alpha;
        back.coords[IDX_W] += &d.beta;
        assert_eq!(back, x);
    }

    #[test]
    fn basis_complete_examples() {
        let m = build_surface_model(3).unwrap();
        let r = LatticeVector::basis(&m, IDX_R);
        let e2 = m.basis_complete(&r).unwrap();
        assert_eq!(m.pairing_int(&r, &e2).unwrap(), int(1));
        // R·T = 1, so T is an admissible completion; the extended gcd picks it.
        assert_eq!(e2, LatticeVector::basis(&m, IDX_T));

        let u1 = LatticeVector::basis(&m, crate::model::IDX_PAIRS);
        let e2 = m.basis_complete(&u1).unwrap();
        assert_eq!(m.pairing_int(&u1, &e2).unwrap(), int(1));

        let x = v(&m, &[(IDX_R, 1), (IDX_T, 2)]);
        let e2 = m.basis_complete(&x).unwrap();
        assert_eq!(m.pairing_int(&x, &e2).unwrap(), int(1));
    }

    #[test]
    fn basis_complete_rejects_bad_input() {
        let m = build_surface_model(3).unwrap();
        let imprimitive = v(&m, &[(IDX_R, 2), (IDX_T, 2)]);
        assert!(matches!(
            m.basis_complete(&imprimitive),
            Err(Error::NotPrimitive(_))
        ));
        let outside = v(&m, &[(IDX_F, 1), (IDX_R, 1)]);
        assert!(matches!(
            m.basis_complete(&outside),
            Err(Error::OutsideOrthogonalBlock)
        ));
    }

    #[test]
    fn even_squares_on_perp_block() {
        let m = build_surface_model(4).unwrap();
        // Spot vectors supported on H(n)^⊥ all have even square.
        let samples = [
            v(&m, &[(IDX_R, 3), (IDX_T, -2), (10, 1)]),
            v(&m, &[(m.e8_start(), 1), (m.e8_start() + 3, 2)]),
            v(&m, &[(IDX_R, 1), (m.rank - 1, 5), (7, -4)]),
        ];
        for x in samples {
            let sq = m.square_int(&x).unwrap();
            assert!((&sq % int(2)).is_zero(), "square {sq} not even");
        }
    }

    #[test]
    fn class_file_round_trip() {
        let m = build_surface_model(3).unwrap();
        let mut coords = vec![Rat::zero(); m.rank];
        coords[0] = rat(3, 4);
        coords[5] = rat_int(-2);
        let class = RationalClass::new(&m, coords).unwrap();
        let text = format_class(&class);
        let parsed = parse_class(&m, &text).unwrap();
        assert_eq!(parsed, class);
        // malformed coefficient
        assert!(parse_class(&m, &text.replace("3/4", "1/0")).is_err());
    }
}
