//! Deterministic decimal formatting for CSV and text output.

/// Formats `x` rounded to `digits` significant digits.
///
/// Moderate magnitudes print as plain decimals with trailing zeros removed
/// (`0.5`, `0`, `0.632120559`); very large or small ones fall back to
/// `1.5e-9` style. With `digits = 17` every binary64 value round-trips.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.clamp(1, 17);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let mantissa = mantissa.trim_start_matches('-');
    let mut body: String = mantissa.chars().filter(|c| *c != '.').collect();
    while body.len() > 1 && body.ends_with('0') {
        body.pop();
    }

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if !(-7..=16).contains(&exp) {
        out.push_str(&body[..1]);
        if body.len() > 1 {
            out.push('.');
            out.push_str(&body[1..]);
        }
        out.push_str(&format!("e{exp}"));
        return out;
    }
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-exp - 1) as usize));
        out.push_str(&body);
    } else {
        let int_len = exp as usize + 1;
        if body.len() <= int_len {
            out.push_str(&body);
            out.extend(std::iter::repeat('0').take(int_len - body.len()));
        } else {
            out.push_str(&body[..int_len]);
            out.push('.');
            out.push_str(&body[int_len..]);
        }
    }
    out
}
