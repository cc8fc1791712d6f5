//! Reporting helpers for the acceptance run.

use std::process::ExitCode;
use std::time::Instant;

/// Collects one pass/fail line per criterion.
#[derive(Default)]
pub struct Report {
    results: Vec<(u32, bool)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs `check`, which returns `(passed, detail)`, and prints its line.
    pub fn run(&mut self, id: u32, title: &str, check: impl FnOnce() -> (bool, String)) {
        let start = Instant::now();
        let (ok, detail) = check();
        let secs = start.elapsed().as_secs_f64();
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {tag} {title} ({secs:.1}s): {detail}");
        self.results.push((id, ok));
    }

    pub fn failed(&self) -> Vec<u32> {
        self.results.iter().filter(|(_, ok)| !ok).map(|(id, _)| *id).collect()
    }

    pub fn finish(self) -> ExitCode {
        let failed = self.failed();
        let total = self.results.len();
        println!("\nacceptance: {} passed, {} failed of {total}", total - failed.len(), failed.len());
        if failed.is_empty() {
            ExitCode::SUCCESS
        } else {
            let ids: Vec<String> = failed.iter().map(u32::to_string).collect();
            println!("failing criteria: {}", ids.join(", "));
            ExitCode::FAILURE
        }
    }
}

/// `|a - b| <= tol`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracks_failures() {
        let mut r = Report::new();
        r.run(1, "ok", || (true, String::new()));
        r.run(2, "bad", || (false, String::new()));
        assert_eq!(r.failed(), [2]);
    }

    #[test]
    fn closeness() {
        assert!(close(0.037_51, 0.037_52, 1e-5 + 1e-12));
        assert!(!close(0.037_519_6, 0.037_51, 5e-6));
    }
}
