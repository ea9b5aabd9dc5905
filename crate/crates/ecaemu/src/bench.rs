//! Timing of the naive per-pair search against the subalgebra search.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use ecaemu_core::{check_emulation_naive, emulated_rules, EcaRule};

use crate::Result;

/// Minimum measured time for the fast side before averaging.
const MIN_SAMPLE: Duration = Duration::from_millis(50);

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub k: usize,
    pub targets: usize,
    /// Naive search of all 256 candidate rules, summed over targets.
    pub naive: Duration,
    /// One subalgebra search per target, summed over targets (mean of repeats).
    pub subalgebra: Duration,
    pub repeats: u32,
    /// Both searches found the same emulated rules for every target.
    pub agree: bool,
}

impl BenchReport {
    pub fn ratio(&self) -> f64 {
        self.naive.as_secs_f64() / self.subalgebra.as_secs_f64().max(1e-9)
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "targets: {}", self.targets)?;
        writeln!(f, "naive (256 candidates per target): {:.6} s", self.naive.as_secs_f64())?;
        writeln!(
            f,
            "subalgebra (one run per target): {:.6} s (mean of {})",
            self.subalgebra.as_secs_f64(),
            self.repeats
        )?;
        writeln!(f, "agree: {}", self.agree)?;
        writeln!(f, "ratio: {:.1}", self.ratio())
    }
}

pub fn bench(k: usize, targets: &[EcaRule]) -> Result<BenchReport> {
    let start = Instant::now();
    let mut naive_sets = Vec::with_capacity(targets.len());
    for &g in targets {
        let mut found = BTreeSet::new();
        for f in EcaRule::all() {
            if check_emulation_naive(f, g, k)?.is_some() {
                found.insert(f);
            }
        }
        naive_sets.push(found);
    }
    let naive = start.elapsed();

    let mut fast_sets = Vec::new();
    let mut repeats = 0u32;
    let start = Instant::now();
    while repeats == 0 || start.elapsed() < MIN_SAMPLE {
        fast_sets.clear();
        for &g in targets {
            fast_sets.push(emulated_rules(g, k)?.into_iter().map(|(f, _)| f).collect::<BTreeSet<_>>());
        }
        repeats += 1;
    }
    let subalgebra = start.elapsed() / repeats;

    Ok(BenchReport { k, targets: targets.len(), naive, subalgebra, repeats, agree: naive_sets == fast_sets })
}
