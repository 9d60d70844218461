//! Deterministic output formatting shared by the scan emitters and the CLI.

/// Fixed float formatting with 17 significant digits, so identical runs
/// produce byte-identical output.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// RFC 4180 quoting: fields containing commas, quotes or line breaks are
/// quoted, with embedded quotes doubled. Numeric fields pass through.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
