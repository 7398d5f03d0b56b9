//! Exact decimal rendering of non-negative rationals, for comparing against
//! printed values.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// `|a/b - c/d|` as an exact rational.
pub fn abs_diff(a: &BigUint, b: &BigUint, c: &BigUint, d: &BigUint) -> Ratio<BigUint> {
    let lhs = a * d;
    let rhs = c * b;
    let num = if lhs >= rhs { lhs - rhs } else { rhs - lhs };
    Ratio::new(num, b * d)
}

fn pow10(e: usize) -> BigUint {
    BigUint::from(10u8).pow(e as u32)
}

fn scaled(x: &Ratio<BigUint>, digits: usize, round: bool) -> BigUint {
    let num = x.numer() * pow10(digits);
    if round {
        (num * 2u8 + x.denom()) / (x.denom() * 2u8)
    } else {
        num / x.denom()
    }
}

fn with_point(v: &BigUint, digits: usize) -> String {
    if digits == 0 {
        return v.to_string();
    }
    let (whole, frac) = v.div_rem(&pow10(digits));
    format!("{whole}.{:0>width$}", frac.to_string(), width = digits)
}

/// Rounded half-up to `digits` decimals.
pub fn round_fixed(x: &Ratio<BigUint>, digits: usize) -> String {
    with_point(&scaled(x, digits, true), digits)
}

pub fn trunc_fixed(x: &Ratio<BigUint>, digits: usize) -> String {
    with_point(&scaled(x, digits, false), digits)
}

/// Decimal exponent `e` with `10^e <= x < 10^(e+1)`; `x` must be positive.
fn exponent(x: &Ratio<BigUint>) -> i64 {
    let ten = Ratio::from_integer(BigUint::from(10u8));
    let one = Ratio::one();
    let mut e = 0i64;
    let mut y = x.clone();
    while y >= ten {
        y /= ten.clone();
        e += 1;
    }
    while y < one {
        y *= ten.clone();
        e -= 1;
    }
    e
}

fn sci(x: &Ratio<BigUint>, sig: usize, round: bool) -> String {
    if x.is_zero() {
        return format!("{}e0", with_point(&BigUint::zero(), sig - 1));
    }
    let mut e = exponent(x);
    let shift = sig as i64 - 1 - e;
    let y = if shift >= 0 {
        x * Ratio::from_integer(pow10(shift as usize))
    } else {
        x / Ratio::from_integer(pow10((-shift) as usize))
    };
    let mut m = scaled(&y, 0, round);
    if m >= pow10(sig) {
        m /= 10u8;
        e += 1;
    }
    format!("{}e{e}", with_point(&m, sig - 1))
}

pub fn round_sci(x: &Ratio<BigUint>, sig: usize) -> String {
    sci(x, sig, true)
}

pub fn trunc_sci(x: &Ratio<BigUint>, sig: usize) -> String {
    sci(x, sig, false)
}

/// Whether `printed` (fixed like `0.00165` or scientific like `2.23e-6`) is
/// `x` rounded or truncated to the printed precision.
pub fn matches_printed(x: &Ratio<BigUint>, printed: &str) -> bool {
    if let Some((mantissa, _)) = printed.split_once('e') {
        let sig = mantissa.chars().filter(char::is_ascii_digit).count();
        sig > 0 && (round_sci(x, sig) == printed || trunc_sci(x, sig) == printed)
    } else {
        let digits = printed.split_once('.').map_or(0, |(_, f)| f.len());
        round_fixed(x, digits) == printed || trunc_fixed(x, digits) == printed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> Ratio<BigUint> {
        Ratio::new(BigUint::from(n), BigUint::from(d))
    }

    #[test]
    fn fixed() {
        assert_eq!(round_fixed(&r(1, 338), 12), "0.002958579882");
        assert_eq!(trunc_fixed(&r(1, 338), 12), "0.002958579881");
        assert_eq!(round_fixed(&r(1, 8), 2), "0.13");
        assert_eq!(round_fixed(&r(15, 2), 0), "8");
        assert_eq!(round_fixed(&r(999, 1000), 2), "1.00");
    }

    #[test]
    fn scientific() {
        assert_eq!(round_sci(&r(1, 304200), 10), "3.287310980e-6");
        assert_eq!(trunc_sci(&r(1, 304200), 10), "3.287310979e-6");
        assert_eq!(round_sci(&r(99999, 10), 3), "1.00e4");
        assert_eq!(round_sci(&r(42, 1), 2), "4.2e1");
    }

    #[test]
    fn printed_values() {
        assert!(matches_printed(&r(1, 338), "0.002958579882"));
        assert!(matches_printed(&r(1, 304200), "3.287310979e-6"));
        assert!(!matches_printed(&r(1, 304200), "3.287310978e-6"));
        assert!(!matches_printed(&r(1, 3), "0.34"));
        let d = abs_diff(
            &BigUint::from(2039u32),
            &BigUint::from(13001u32),
            &BigUint::from(2u32),
            &BigUint::from(13u32),
        );
        assert!(matches_printed(&d, "0.002987935839"));
    }
}
