//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every entry point takes plain strings or numbers and returns a JSON
//! string, so the page needs no generated TypeScript types. Errors come back
//! as `{"error": "..."}` rather than exceptions.

use monoquartic::families::{gen, FamilyId};
use monoquartic::galois::classify_with;
use monoquartic::scan::{scan_range, ScanSummary};
use monoquartic::{is_monogenic, Effort, IntPoly};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Widest family sweep the page may request in one call.
pub const MAX_SCAN_ROWS: i64 = 2001;

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| json!({ "error": e.to_string() }).to_string()),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn parse(text: &str) -> Result<IntPoly, String> {
    text.parse::<IntPoly>().map_err(|e| e.to_string())
}

/// Galois group of a monic quartic given as descending coefficients,
/// e.g. `"1 0 4 0 1"`.
#[wasm_bindgen]
pub fn classify_quartic(text: &str) -> String {
    to_json((|| {
        let f = parse(text)?;
        let (label, evidence) = classify_with(&f, &Effort::default()).map_err(|e| e.to_string())?;
        Ok(json!({
            "poly": f.to_string(),
            "group": label,
            "group_name": label.group_name(),
            "evidence": evidence,
        }))
    })())
}

/// Dedekind monogenicity verdict for a monic irreducible polynomial of
/// degree 2 to 4.
#[wasm_bindgen]
pub fn check_monogenic(text: &str) -> String {
    to_json((|| {
        let f = parse(text)?;
        let v = is_monogenic(&f, &Effort::default()).map_err(|e| e.to_string())?;
        Ok(json!({ "poly": f.to_string(), "verdict": v }))
    })())
}

/// Verifies an X family over `t_min..=t_max`: rows plus a summary.
#[wasm_bindgen]
pub fn scan_family(family: &str, t_min: i32, t_max: i32) -> String {
    to_json((|| {
        let id: FamilyId = family.parse().map_err(|e: monoquartic::Error| e.to_string())?;
        let (lo, hi) = (i64::from(t_min), i64::from(t_max));
        if hi - lo + 1 > MAX_SCAN_ROWS {
            return Err(format!("range too wide; at most {MAX_SCAN_ROWS} values of t"));
        }
        let rows = scan_range(id, lo, hi, &Effort::default()).map_err(|e| e.to_string())?;
        let summary = ScanSummary::from_rows(&rows);
        let polys: Vec<String> = rows
            .iter()
            .map(|r| gen(id, &[r.t]).map(|p| p.to_string()).unwrap_or_default())
            .collect();
        Ok(json!({ "family": id, "rows": rows, "polys": polys, "summary": summary }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_json(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn classify_roundtrip() {
        let v = parse_json(&classify_quartic("1 1 1 1 1"));
        assert_eq!(v["group"], "4T1");
        assert_eq!(v["group_name"], "C4");
        let v = parse_json(&classify_quartic("1 0 0 0 -1"));
        assert!(v["error"].as_str().unwrap().contains("reducible"));
        let v = parse_json(&classify_quartic("1 x 2"));
        assert!(v.get("error").is_some());
    }

    #[test]
    fn monogenic_roundtrip() {
        let v = parse_json(&check_monogenic("1 0 -5"));
        assert_eq!(v["verdict"]["status"], "NotMonogenic");
        assert_eq!(v["verdict"]["witness_prime"], 2);
        let v = parse_json(&check_monogenic("1 -10 25 -20 5"));
        assert_eq!(v["verdict"]["field_disc_if_monogenic"], "2000");
    }

    #[test]
    fn scan_roundtrip() {
        let v = parse_json(&scan_family("X2", -3, 3));
        assert_eq!(v["rows"].as_array().unwrap().len(), 7);
        assert_eq!(v["summary"]["agreement_failures"], 0);
        let v = parse_json(&scan_family("X2", 0, 5000));
        assert!(v.get("error").is_some());
        let v = parse_json(&scan_family("SmithB", 0, 1));
        assert!(v.get("error").is_some());
    }
}
