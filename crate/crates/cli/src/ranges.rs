//! Integer list arguments such as `2..7`, `1,2,5` or `1..3,8`.

/// Parses comma-separated items, each a single integer or an inclusive
/// range written `lo..hi` or `lo..=hi`. Order is kept and duplicates are
/// dropped.
pub fn parse_list(text: &str) -> Result<Vec<usize>, String> {
    let mut out: Vec<usize> = Vec::new();
    for item in text.split(',').map(str::trim) {
        if item.is_empty() {
            return Err(format!("empty item in '{text}'"));
        }
        let (lo, hi) = match item.split_once("..") {
            Some((lo, hi)) => (number(lo)?, number(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = number(item)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("range '{item}' is empty"));
        }
        for v in lo..=hi {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

fn number(s: &str) -> Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a non-negative integer"))
}
