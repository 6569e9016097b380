use std::time::Duration;

use biclique_core::OracleBudget;

/// Parses `key=value` pairs separated by commas into an oracle budget,
/// starting from the defaults. Keys: `cover_vertices`, `aux_vertices`,
/// `edges`, `tree_edges`, `time_ms`.
pub fn parse_budget(text: &str) -> Result<OracleBudget, String> {
    let mut b = OracleBudget::default();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("budget entry '{item}' is not key=value"))?;
        let value: u64 = value.trim().parse().map_err(|_| {
            format!(
                "budget value for '{}' must be a non-negative integer",
                key.trim()
            )
        })?;
        match key.trim() {
            "cover_vertices" => b.cover_vertices = value as usize,
            "aux_vertices" => b.aux_vertices = value as usize,
            "edges" => b.edges = value as usize,
            "tree_edges" => b.tree_edges = value as usize,
            "time_ms" => b.time_limit = Duration::from_millis(value),
            other => return Err(format!("unknown budget key '{other}'")),
        }
    }
    b.validate().map_err(|e| e.to_string())?;
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_defaults() {
        let b = parse_budget("cover_vertices=10, time_ms=500").unwrap();
        assert_eq!(b.cover_vertices, 10);
        assert_eq!(b.time_limit, Duration::from_millis(500));
        assert_eq!(b.edges, OracleBudget::default().edges);
        assert_eq!(parse_budget("").unwrap(), OracleBudget::default());
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(parse_budget("edges").is_err());
        assert!(parse_budget("edges=-1").is_err());
        assert!(parse_budget("colors=3").is_err());
        assert!(parse_budget("time_ms=0").is_err());
    }
}
