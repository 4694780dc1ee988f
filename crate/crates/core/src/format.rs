//! `%g`-style number formatting for CSV and report output.

/// Formats `x` with at most `sig` significant digits, trailing zeros trimmed.
///
/// Uses fixed notation when the decimal exponent is in `[-4, sig)`, and
/// `1.5e-7` style otherwise.
pub fn format_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= sig as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::format_sig;

    #[test]
    fn cases() {
        assert_eq!(format_sig(5.0, 6), "5");
        assert_eq!(format_sig(0.1, 6), "0.1");
        assert_eq!(format_sig(5.5, 6), "5.5");
        assert_eq!(format_sig(-0.25, 6), "-0.25");
        assert_eq!(format_sig(1.0 / 3.0, 6), "0.333333");
        assert_eq!(format_sig(123456.0, 6), "123456");
        assert_eq!(format_sig(1234567.0, 6), "1.23457e6");
        assert_eq!(format_sig(0.000012345, 3), "1.23e-5");
        assert_eq!(format_sig(0.00012345, 3), "0.000123");
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(0.30000000000000004, 6), "0.3");
        assert_eq!(format_sig(999999.7, 6), "1e6");
    }
}
