//! Fixed significant-digit number formatting, in the spirit of C's `%g`.

/// Formats `x` with `digits` significant digits, trailing zeros removed.
///
/// Plain notation is used for decimal exponents in `[-4, digits)`,
/// scientific otherwise. Negative zero prints as `0`.
pub fn sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim(mantissa), exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = trim(&format!("{:.*}", decimals, x)).to_string();
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// `x` rounded to `digits` significant digits, as a number.
pub fn round(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    let r: f64 = format!("{:.*e}", digits.max(1) - 1, x).parse().expect("float");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(0.0945513, 6), "0.0945513");
        assert_eq!(sig(0.09455128, 6), "0.0945513");
        assert_eq!(sig(0.6000000000000001, 6), "0.6");
        assert_eq!(sig(0.75, 6), "0.75");
        assert_eq!(sig(1.0, 6), "1");
        assert_eq!(sig(-0.0, 6), "0");
        assert_eq!(sig(-1e-17, 6), "-1e-17");
        assert_eq!(sig(0.00012345678, 3), "0.000123");
        assert_eq!(sig(123456789.0, 6), "1.23457e+08");
        assert_eq!(sig(9.9999996, 6), "10");
        assert_eq!(sig(100000.0, 6), "100000");
        assert_eq!(sig(1234567.0, 6), "1.23457e+06");
        assert_eq!(sig(f64::NAN, 6), "nan");
    }

    #[test]
    fn rounding_matches_text() {
        for x in [0.09455128, 0.4837722339831621, 1.0 / 3.0, 2.5e-7] {
            assert_eq!(sig(round(x, 6), 15), sig(x, 6));
        }
    }
}
