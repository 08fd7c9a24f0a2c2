//! Exact rational scalars.
//!
//! All flat geometry in this crate is carried out over arbitrary-precision
//! rationals so that incidence tests (segment crossings, lattice membership,
//! point reduction) are exact. Floating point only appears in the numerical
//! lab and in rendering.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics on `q == 0`.
pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion from a finite double (every finite IEEE double is rational).
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Parses `"p"`, `"p/q"`, or a plain decimal like `"0.25"`, with optional sign.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let (sign, digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !digits.bytes().all(|b| b.is_ascii_digit()) || digits.is_empty() {
            return None;
        }
        let whole: BigInt = digits.parse().ok()?;
        let num: BigInt = frac_part.parse().ok()?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let val = Rat::from_integer(whole) + Rat::new(num, den);
        return Some(if sign < 0 { -val } else { val });
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        Some(Rat::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(p))
    }
}

/// Rounds `x` to a rational with denominator `den`, within `1/(2 den)` of `x`.
pub fn approx_with_denominator(x: f64, den: i64) -> Rat {
    let scaled = (x * den as f64).round();
    Rat::new(
        BigInt::from(scaled as i128),
        BigInt::from(den),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3").unwrap(), rat(3));
        assert_eq!(parse_rat("-3/4").unwrap(), frac(-3, 4));
        assert_eq!(parse_rat("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), frac(-3, 2));
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("").is_none());
        assert!(parse_rat("x").is_none());
    }

    #[test]
    fn f64_round_trip() {
        let r = rat_from_f64(0.5).unwrap();
        assert_eq!(r, frac(1, 2));
        assert_eq!(rat_to_f64(&frac(1, 3)), 1.0 / 3.0);
    }

    #[test]
    fn denominator_rounding() {
        let r = approx_with_denominator(0.70710678, 1_000_000);
        assert!((rat_to_f64(&r) - 0.70710678).abs() < 1e-6);
    }
}
