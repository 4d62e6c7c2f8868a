//! Exact integer/rational scalars and their canonical text form.
//!
//! Every number in the crate is a [`BigInt`] or a [`BigRational`]; floating
//! point does not appear anywhere. The canonical text form of a rational is
//! `p/q` with `q > 1`, `gcd(p,q) = 1` and no leading zeros, or the integer
//! shorthand `p` when the denominator is one. Parsing rejects anything
//! non-canonical instead of repairing it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Renders a rational in canonical form (`p` or `p/q`).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_decimal(s: &str) -> Option<Int> {
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    // No leading zeros, and "-0" is not canonical.
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    if sign < 0 && digits == "0" {
        return None;
    }
    let mag: Int = digits.parse().ok()?;
    Some(if sign < 0 { -mag } else { mag })
}

/// Parses the canonical form. Rejects `1/0`, `2/4`, `3/1`, `+5`, `-0`, `007`
/// and friends.
pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        None => parse_decimal(s).map(Rat::from_integer),
        Some((num, den)) => {
            let n = parse_decimal(num)?;
            let d = parse_decimal(den)?;
            if d <= Int::one() {
                return None; // zero/negative denominator, or `p/1` shorthand violation
            }
            if n.gcd_ref(&d) != Int::one() {
                return None;
            }
            Some(Rat::new_raw(n, d))
        }
    }
}

trait GcdRef {
    fn gcd_ref(&self, other: &Int) -> Int;
}

impl GcdRef for Int {
    fn gcd_ref(&self, other: &Int) -> Int {
        num_integer::Integer::gcd(self, other)
    }
}

/// Sup-norm of a rational coordinate vector.
pub fn sup_norm(coords: &[Rat]) -> Rat {
    let mut best = Rat::zero();
    for c in coords {
        let a = c.abs();
        if a > best {
            best = a;
        }
    }
    best
}

/// gcd of a slice of integers, non-negative; 0 for the empty or all-zero slice.
pub fn content(coords: &[Int]) -> Int {
    let mut g = Int::zero();
    for c in coords {
        g = num_integer::Integer::gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Extended gcd over a slice: returns (g, coeffs) with `sum coeffs[i] * v[i] = g`,
/// g >= 0 and g = gcd(v). For the all-zero slice returns (0, zeros).
pub fn extended_gcd_vec(v: &[Int]) -> (Int, Vec<Int>) {
    let mut g = Int::zero();
    let mut coeffs = vec![Int::zero(); v.len()];
    for (idx, item) in v.iter().enumerate() {
        if item.is_zero() {
            continue;
        }
        if g.is_zero() {
            // First non-zero entry: g = |v[idx]|.
            if item.is_negative() {
                coeffs[idx] = -Int::one();
            } else {
                coeffs[idx] = Int::one();
            }
            g = item.abs();
            continue;
        }
        let ext = num_integer::Integer::extended_gcd(&g, item);
        // ext.gcd = ext.x * g + ext.y * v[idx]
        for c in coeffs.iter_mut() {
            *c *= &ext.x;
        }
        coeffs[idx] = ext.y.clone();
        g = ext.gcd;
        if g.is_one() {
            break;
        }
    }
    (g, coeffs)
}
