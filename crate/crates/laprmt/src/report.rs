//! Shared verification reporting: named checks with observed values and
//! bounds, plus free-form metrics, serializable with stable key order.

use std::collections::BTreeMap;

use serde::Serialize;

/// One named check: an observed quantity compared against a bound.
#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    /// The measured value the check is about.
    pub observed: f64,
    /// The bound it was compared against (interpretation is per check).
    pub bound: f64,
    /// Short human-readable context: what was measured, at which parameters.
    pub detail: String,
}

impl CheckItem {
    /// A check that passes when `observed <= bound`.
    pub fn at_most(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            passed: observed <= bound,
            observed,
            bound,
            detail: String::new(),
        }
    }

    /// A check that passes when `observed >= bound`.
    pub fn at_least(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            passed: observed >= bound,
            observed,
            bound,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Aggregated result of one verification run: checks, metrics, provenance.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub title: String,
    pub items: Vec<CheckItem>,
    /// Named scalar observables; BTreeMap keeps serialized output stable.
    pub metrics: BTreeMap<String, f64>,
    /// Number of Monte Carlo trials behind the report (0 for deterministic).
    pub trials: u64,
    /// Base seed of the runs (None for deterministic reports).
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            items: Vec::new(),
            metrics: BTreeMap::new(),
            trials: 0,
            seed: None,
        }
    }

    pub fn with_trials(mut self, trials: u64, seed: u64) -> Self {
        self.trials = trials;
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn record(&mut self, key: impl Into<String>, value: f64) {
        self.metrics.insert(key.into(), value);
    }

    pub fn metric(&self, key: &str) -> Option<f64> {
        self.metrics.get(key).copied()
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    /// Fixed-width terminal rendering: one line per check, then metrics.
    pub fn render(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.title);
        if self.trials > 0 {
            let _ = writeln!(
                out,
                "   trials: {}   seed: {}",
                self.trials,
                self.seed.map_or_else(|| "-".into(), |s| s.to_string())
            );
        }
        for item in &self.items {
            let _ = writeln!(
                out,
                "  [{}] {:<38} observed {:>13.6e}  bound {:>13.6e}{}",
                if item.passed { "PASS" } else { "FAIL" },
                item.name,
                item.observed,
                item.bound,
                if item.detail.is_empty() {
                    String::new()
                } else {
                    format!("  ({})", item.detail)
                }
            );
        }
        for (k, v) in &self.metrics {
            let _ = writeln!(out, "    {k} = {v:.6e}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons_orient_correctly() {
        assert!(CheckItem::at_most("x", 1.0, 2.0).passed);
        assert!(!CheckItem::at_most("x", 3.0, 2.0).passed);
        assert!(CheckItem::at_least("x", 2.0, 1.0).passed);
        assert!(!CheckItem::at_least("x", 0.5, 1.0).passed);
    }

    #[test]
    fn report_aggregates_and_renders() {
        let mut r = VerificationReport::new("demo").with_trials(3, 42);
        r.push(CheckItem::at_most("defect", 0.1, 1.0).with_detail("grid sup"));
        r.record("zeta", 1.5);
        assert!(r.all_passed());
        assert_eq!(r.metric("zeta"), Some(1.5));
        let text = r.render();
        assert!(text.contains("PASS"));
        assert!(text.contains("defect"));
        assert!(text.contains("zeta"));
    }

    #[test]
    fn metrics_serialize_in_key_order() {
        let mut r = VerificationReport::new("order");
        r.record("b", 2.0);
        r.record("a", 1.0);
        let json = serde_json::to_string(&r).unwrap();
        let a = json.find("\"a\"").unwrap();
        let b = json.find("\"b\"").unwrap();
        assert!(a < b);
    }
}
