//! Complex literal parsing: `<real><sign><real>i`, plus `i` alone for the
//! unit. Whitespace is ignored, scientific notation works in either part,
//! and a bare trailing `i` (as in `1+i`) means a unit imaginary part.

/// Parses a complex literal into `(re, im)`.
pub fn parse_complex(input: &str) -> Result<(f64, f64), String> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty complex literal".to_string());
    }
    if compact == "i" || compact == "+i" {
        return Ok((0.0, 1.0));
    }
    if compact == "-i" {
        return Ok((0.0, -1.0));
    }
    let Some(body) = compact.strip_suffix(['i', 'I']) else {
        return Err(format!(
            "complex literal must end in 'i' (got {input:?}); write e.g. 0+1i"
        ));
    };

    // Split at the last +/- that starts the imaginary part: not the leading
    // sign, and not an exponent sign (preceded by e/E).
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k];
        if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let Some(k) = split else {
        return Err(format!(
            "complex literal needs both parts (got {input:?}); write e.g. 0+1i"
        ));
    };

    let re: f64 = body[..k]
        .parse()
        .map_err(|_| format!("bad real part in {input:?}"))?;
    let imag_text = &body[k..];
    let im: f64 = if imag_text == "+" {
        1.0
    } else if imag_text == "-" {
        -1.0
    } else {
        imag_text
            .parse()
            .map_err(|_| format!("bad imaginary part in {input:?}"))?
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(format!("complex literal out of range: {input:?}"));
    }
    Ok((re, im))
}

#[cfg(test)]
mod tests {
    use super::parse_complex;

    #[test]
    fn parses_standard_forms() {
        assert_eq!(parse_complex("0+1i").unwrap(), (0.0, 1.0));
        assert_eq!(parse_complex("1.5-2i").unwrap(), (1.5, -2.0));
        assert_eq!(parse_complex("-1+2i").unwrap(), (-1.0, 2.0));
        assert_eq!(parse_complex("i").unwrap(), (0.0, 1.0));
        assert_eq!(parse_complex("1+i").unwrap(), (1.0, 1.0));
        assert_eq!(parse_complex("2-i").unwrap(), (2.0, -1.0));
    }

    #[test]
    fn parses_scientific_notation() {
        assert_eq!(parse_complex("1e-3+2i").unwrap(), (1e-3, 2.0));
        assert_eq!(parse_complex("1e-3-2e-4i").unwrap(), (1e-3, -2e-4));
        assert_eq!(parse_complex("-1.5E2+0.5e+1i").unwrap(), (-150.0, 5.0));
    }

    #[test]
    fn ignores_whitespace() {
        assert_eq!(parse_complex(" 0 + 1 i ").unwrap(), (0.0, 1.0));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+2").is_err());
        assert!(parse_complex("notanumber+1i").is_err());
        assert!(parse_complex("1+nani").is_err());
        assert!(parse_complex("1i").is_err());
    }
}
