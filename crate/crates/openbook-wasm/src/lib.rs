//! Browser bindings for the openbook toolkit. Every function returns a JSON
//! string so the demo page stays a plain static file with no framework.

use wasm_bindgen::prelude::*;

use openbook::mcg::{equal, hurwitz_move, realize};
use openbook::page::{boundary_parallel_curve, Factorization, Page};
use openbook::search::classify;
use openbook::{
    abelianization, canonical_monodromy, extension_h2, invariant_table, solve_extension,
    st_star_presentation, Configuration,
};

fn err_json(msg: impl std::fmt::Display) -> String {
    serde_json::json!({ "error": msg.to_string() }).to_string()
}

/// Canonical monodromy factorization as the standard JSON format.
#[wasm_bindgen]
pub fn monodromy_json(k: usize) -> String {
    match canonical_monodromy(k) {
        Ok(f) => serde_json::to_string(&f).unwrap(),
        Err(e) => err_json(e),
    }
}

/// Classification report: every configuration matching the reference table
/// of the canonical monodromy, with fibration homology per configuration.
#[wasm_bindgen]
pub fn classify_json(k: usize) -> String {
    match classify(k) {
        Ok(report) => serde_json::to_string(&report).unwrap(),
        Err(e) => err_json(e),
    }
}

/// Invariant table of the canonical monodromy.
#[wasm_bindgen]
pub fn invariants_json(k: usize) -> String {
    match canonical_monodromy(k) {
        Ok(f) => serde_json::to_string(&invariant_table(&f)).unwrap(),
        Err(e) => err_json(e),
    }
}

/// Boundary data: H1 of the circle bundle from its presentation, the
/// extension homology for small m, and the solved fiber orders.
#[wasm_bindgen]
pub fn boundary_json(k: usize, m_max: u64) -> String {
    let presentation = match st_star_presentation(k) {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    let h1 = abelianization(&presentation);
    if k < 2 {
        return serde_json::json!({
            "k": k,
            "h1": h1,
            "h1_pretty": h1.to_pretty(),
        })
        .to_string();
    }
    let solutions = match solve_extension(k, m_max) {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let rows: Vec<serde_json::Value> = (0..=m_max.min(12))
        .map(|m| {
            let g = extension_h2(k, m).expect("k >= 2 checked above");
            serde_json::json!({ "m": m, "h2": g.to_pretty(), "trivial": g.is_trivial() })
        })
        .collect();
    serde_json::json!({
        "k": k,
        "h1": h1,
        "h1_pretty": h1.to_pretty(),
        "extension_rows": rows,
        "solutions": solutions,
        "m_max": m_max,
    })
    .to_string()
}

/// Verifies the boundary-twist identity on the page with k = 1 and returns
/// both mapping classes.
#[wasm_bindgen]
pub fn lantern_json() -> String {
    let inner = || -> Result<String, String> {
        let f = canonical_monodromy(1).map_err(|e| e.to_string())?;
        let left = realize(&f).map_err(|e| e.to_string())?;
        let page = Page::new(1).map_err(|e| e.to_string())?;
        let curves: Result<Vec<_>, _> =
            (0..=3).map(|l| boundary_parallel_curve(&page, l)).collect();
        let right_f = Factorization::new(page, curves.map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let right = realize(&right_f).map_err(|e| e.to_string())?;
        let eq = equal(&left, &right).map_err(|e| e.to_string())?;
        Ok(serde_json::json!({
            "equal": eq,
            "left": left.to_json(),
            "right": right.to_json(),
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

/// Runs a deterministic random walk of Hurwitz moves on the canonical
/// factorization and reports, per step, the curve hole sets and whether the
/// realized mapping class stayed equal to the original. The walk restarts
/// from the canonical factorization every 4 moves; a single long walk makes
/// the curve words grow exponentially.
#[wasm_bindgen]
pub fn hurwitz_walk_json(k: usize, steps: usize, seed: u64) -> String {
    let inner = || -> Result<String, String> {
        let original = canonical_monodromy(k).map_err(|e| e.to_string())?;
        let target = realize(&original).map_err(|e| e.to_string())?;
        let mut state = seed | 1;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut f = original.clone();
        let mut trail = Vec::new();
        for step in 0..steps.min(200) {
            if step > 0 && step % 4 == 0 {
                f = original.clone();
            }
            let i = (rng() % (f.len() as u64 - 1)) as usize;
            f = hurwitz_move(&f, i).map_err(|e| e.to_string())?;
            let still_equal =
                equal(&target, &realize(&f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let holes: Vec<Vec<usize>> = f
                .curves()
                .iter()
                .map(|c| c.holes().iter().copied().collect())
                .collect();
            let words: Vec<String> = f.curves().iter().map(|c| c.word().dotted()).collect();
            trail.push(serde_json::json!({
                "move_index": i,
                "holes": holes,
                "words": words,
                "equal": still_equal,
            }));
        }
        let cfg = Configuration::from_factorization(&f);
        Ok(serde_json::json!({
            "k": k,
            "steps": trail,
            "final_configuration": cfg.subsets().iter()
                .map(|s| s.iter().copied().collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
        .to_string())
    };
    inner().unwrap_or_else(err_json)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_json_k1_has_two_configurations() {
        let v: serde_json::Value = serde_json::from_str(&classify_json(1)).unwrap();
        assert_eq!(v["count"], 2);
    }

    #[test]
    fn lantern_json_is_equal() {
        let v: serde_json::Value = serde_json::from_str(&lantern_json()).unwrap();
        assert_eq!(v["equal"], true);
    }

    #[test]
    fn hurwitz_walk_stays_equal() {
        let v: serde_json::Value =
            serde_json::from_str(&hurwitz_walk_json(2, 16, 0xD1CE)).unwrap();
        let steps = v["steps"].as_array().unwrap();
        assert_eq!(steps.len(), 16);
        assert!(steps.iter().all(|s| s["equal"] == true));
    }

    #[test]
    fn bad_k_reports_error() {
        let v: serde_json::Value = serde_json::from_str(&monodromy_json(0)).unwrap();
        assert!(v.get("error").is_some());
    }
}
