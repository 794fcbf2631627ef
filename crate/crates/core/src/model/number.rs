//! Exact coefficients.
//!
//! Coefficients are parsed from decimal text into exact rationals so that
//! symmetry is decided by exact equality, never by a floating tolerance.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rational = Ratio<i128>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v as i128)
}

/// Parses an unsigned decimal (`12`, `0.25`, `.5`) or fraction (`3/4`).
pub fn parse_number(text: &str) -> Option<Rational> {
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_number(num)?;
        let den = parse_number(den)?;
        if den.is_zero() {
            return None;
        }
        return Some(num / den);
    }
    let (whole, frac) = match text.split_once('.') {
        Some((w, f)) => (w, f),
        None => (text, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let numer: i128 = if digits.is_empty() {
        0
    } else {
        digits.parse().ok()?
    };
    let denom = 10i128.checked_pow(frac.len() as u32)?;
    Some(Rational::new(numer, denom))
}

/// Formats a rational as a terminating decimal when possible, else `p/q`.
pub fn format_number(value: &Rational) -> String {
    let sign = if value.is_negative() { "-" } else { "" };
    let v = value.abs();
    let (numer, denom) = (*v.numer(), *v.denom());
    if denom == 1 {
        return format!("{sign}{numer}");
    }
    let mut rest = denom;
    let (mut twos, mut fives) = (0u32, 0u32);
    while rest.is_even() {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return format!("{sign}{numer}/{denom}");
    }
    let places = twos.max(fives);
    let scaled = numer * (10i128.pow(places) / denom);
    let scale = 10i128.pow(places);
    format!(
        "{sign}{}.{:0width$}",
        scaled / scale,
        scaled % scale,
        width = places as usize
    )
}
