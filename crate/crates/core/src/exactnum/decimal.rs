use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Decimal expansion of `x` rounded half away from zero to `places` digits
/// after the point.
pub fn to_decimal(x: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10).pow(places);
    let scaled = x.abs() * BigRational::from_integer(scale);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice = r * 2;
    let rounded = if &twice >= scaled.denom() { q + 1 } else { q };
    let mut digits = rounded.to_string();
    let neg = x.is_negative() && !rounded.is_zero();
    if places > 0 {
        let p = places as usize;
        if digits.len() <= p {
            digits = format!("{}{}", "0".repeat(p + 1 - digits.len()), digits);
        }
        digits.insert(digits.len() - p, '.');
    }
    if neg {
        format!("-{digits}")
    } else {
        digits
    }
}

/// Number of decimal places used when refining irrational roots. Reads
/// `SASAKI_PRECISION_DIGITS`, falling back to 40.
pub fn precision_digits() -> u32 {
    std::env::var("SASAKI_PRECISION_DIGITS")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&d| (1..=2000).contains(&d))
        .unwrap_or(super::roots::DEFAULT_DIGITS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::rat;

    #[test]
    fn rounding_and_padding() {
        assert_eq!(to_decimal(&rat(5, 7), 5), "0.71429");
        assert_eq!(to_decimal(&rat(-1, 3), 3), "-0.333");
        assert_eq!(to_decimal(&rat(1, 200), 2), "0.01");
        assert_eq!(to_decimal(&rat(-1, 1000), 2), "0.00");
        assert_eq!(to_decimal(&rat(13, 1), 0), "13");
        assert_eq!(to_decimal(&rat(13, 1), 2), "13.00");
    }
}
