use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::parse::ParseError;

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn rat_frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `[-]nat[/nat]`, the form used for rational fields in the JSON files.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let trimmed = text.trim();
    let (negative, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, trimmed),
    };
    let offset = trimmed.len() - body.len();
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (body, None),
    };
    let parse_nat = |s: &str, at: usize| -> Result<BigInt, ParseError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::malformed_rational(at, text));
        }
        Ok(s.parse::<BigInt>().expect("digits"))
    };
    let numer = parse_nat(numer, offset)?;
    let denom = match denom {
        Some(d) => {
            let d = parse_nat(d, offset)?;
            if d.is_zero() {
                return Err(ParseError::malformed_rational(offset, text));
            }
            d
        }
        None => BigInt::one(),
    };
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub(crate) fn is_unit_magnitude(value: &Rational) -> bool {
    value.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_fractions() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat_frac(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7));
        assert_eq!(parse_rational("0/5").unwrap(), rat(0));
    }

    #[test]
    fn rejects_zero_denominator_and_junk() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&rat_frac(4, -6)), "-2/3");
        assert_eq!(format_rational(&rat(5)), "5");
    }
}
