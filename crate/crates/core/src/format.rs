//! C-style `%.<p>g` number formatting for the text and CSV outputs.

/// Formats `x` like C's `printf("%.<precision>g", x)`.
pub fn fmt_g(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    let p = precision.max(1);
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Expected strings produced by C printf.
    #[test]
    fn matches_printf_17() {
        let cases = [
            (0.1, "0.10000000000000001"),
            (1.0 / 3.0, "0.33333333333333331"),
            (2.0 / 3.0, "0.66666666666666663"),
            (1e-5, "1.0000000000000001e-05"),
            (0.0, "0"),
            (-0.0, "-0"),
            (1.2345678901234568e17, "1.2345678901234568e+17"),
            (1e17, "1e+17"),
            (1e16, "10000000000000000"),
            (0.5178791878, "0.51787918779999997"),
            (1e-4, "0.0001"),
            (0.0001234, "0.00012339999999999999"),
            (-2.5e-300, "-2.5e-300"),
            (100.0, "100"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g(x, 17), want, "{x:e}");
        }
    }

    #[test]
    fn matches_printf_12_and_3() {
        assert_eq!(fmt_g(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(fmt_g(2.0 / 3.0, 12), "0.666666666667");
        assert_eq!(fmt_g(1.2345678901234568e17, 12), "1.23456789012e+17");
        assert_eq!(fmt_g(1e16, 12), "1e+16");
        assert_eq!(fmt_g(0.0001234, 3), "0.000123");
        assert_eq!(fmt_g(2.0 / 3.0, 3), "0.667");
        assert_eq!(fmt_g(f64::INFINITY, 12), "inf");
        assert_eq!(fmt_g(f64::NAN, 12), "nan");
    }
}
