//! Parsing of complex points and the argv shim that lets them start with `-`.

use std::ffi::OsString;

/// Marker prepended to tokens such as `-0.5,0.1`, so that clap reads them as values
/// rather than unknown flags. The value parsers strip it again.
const MARK: char = '\u{1}';

/// No flag of this tool starts with a digit or `.`, so any `-<digit>` or `-.` token is
/// a negative number or point.
pub fn protect_negative_values(args: impl IntoIterator<Item = OsString>) -> Vec<OsString> {
    args.into_iter()
        .map(|arg| match arg.to_str() {
            Some(s) if looks_negative(s) => OsString::from(format!("{MARK}{s}")),
            _ => arg,
        })
        .collect()
}

fn looks_negative(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next() == Some('-') && chars.next().is_some_and(|c| c.is_ascii_digit() || c == '.')
}

fn unmark(s: &str) -> &str {
    s.trim_start_matches(MARK).trim()
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = unmark(s);
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !x.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(x)
}

/// `re,im` or a bare real `re`.
pub fn parse_point(s: &str) -> Result<[f64; 2], String> {
    let s = unmark(s);
    match s.split_once(',') {
        Some((re, im)) => Ok([parse_real(re)?, parse_real(im)?]),
        None => Ok([parse_real(s)?, 0.0]),
    }
}
