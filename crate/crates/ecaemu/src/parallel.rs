//! Worker pool front ends for the exhaustive searches.
//!
//! Work is split into pieces whose boundaries depend only on the problem,
//! never on the number of workers, and pieces are merged in order. Output is
//! therefore identical for any `--workers` value.

use ecaemu_core::emulation::{emulated_rules_in, normalize};
use ecaemu_core::hierarchy::{classify_with, EmulationTable};
use ecaemu_core::subalgebra::{pair_scan, singleton_scan, Subalgebra};
use ecaemu_core::supercell::check_k;
use ecaemu_core::{ClassificationReport, EcaRule, Encoding, HierarchyGraph};
use rayon::prelude::*;

use crate::cache::ShardCache;
use crate::Result;

/// Upper bound on the number of pieces a single search is cut into.
const PIECES: u32 = 64;

fn pieces(n: u32) -> Vec<std::ops::Range<u32>> {
    let step = n.div_ceil(PIECES).max(1);
    (0..n).step_by(step as usize).map(|a| a..(a + step).min(n)).collect()
}

pub struct Workers {
    pool: rayon::ThreadPool,
}

impl Workers {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(ecaemu_core::Error::InvalidArgument("workers must be at least 1").into());
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
        Ok(Workers { pool })
    }

    pub fn count(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// [`ecaemu_core::emulated_rules`] split over the pool.
    pub fn emulated_rules(&self, g: EcaRule, k: usize) -> Result<Vec<(EcaRule, Encoding)>> {
        check_k(k)?;
        let parts = self.pool.install(|| {
            pieces(1 << k).into_par_iter().map(|range| emulated_rules_in(g, k, range)).collect::<Result<Vec<_>, _>>()
        })?;
        let mut out: Vec<_> = parts.into_iter().flatten().collect();
        normalize(&mut out);
        Ok(out)
    }

    /// [`ecaemu_core::proper_subalgebra_search`] with the pair space split
    /// over the pool. Returns the same subalgebra as the sequential search.
    pub fn proper_subalgebra_search(&self, g: EcaRule, k: usize) -> Result<Option<Subalgebra>> {
        Ok(self.search(g, k)?)
    }

    fn search(&self, g: EcaRule, k: usize) -> ecaemu_core::Result<Option<Subalgebra>> {
        check_k(k)?;
        // One sequential pass: each full closure found speeds up the rest.
        let scan = singleton_scan(g, k, 0..1 << k)?;
        if scan.hit.is_some() {
            return Ok(scan.hit);
        }
        let proper = scan.proper;
        self.pool.install(|| {
            pieces(proper.len() as u32)
                .into_par_iter()
                .map(|range| pair_scan(g, k, &proper, range.start as usize..range.end as usize))
                .find_map_first(|r| r.transpose())
                .transpose()
        })
    }

    /// Runs every `(emulator, k)` search, reading and filling `cache` if given.
    pub fn table(&self, emulators: &[EcaRule], kmax: usize, cache: Option<&ShardCache>) -> Result<EmulationTable> {
        check_k(kmax)?;
        let tasks: Vec<(EcaRule, usize)> = emulators.iter().flat_map(|&g| (1..=kmax).map(move |k| (g, k))).collect();
        let results = self.pool.install(|| {
            tasks
                .par_iter()
                .map(|&(g, k)| -> Result<_> {
                    if let Some(hit) = cache.and_then(|c| c.load(g, k)) {
                        return Ok((g, k, hit));
                    }
                    let found = ecaemu_core::emulation::smallest_per_rule(ecaemu_core::emulated_rules(g, k)?);
                    if let Some(c) = cache {
                        c.store(g, k, &found)?;
                    }
                    Ok((g, k, found))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        let mut table = EmulationTable::new();
        for (g, k, found) in results {
            table.insert(g, k, found);
        }
        Ok(table)
    }

    /// [`ecaemu_core::compute_hierarchy`] over the pool.
    pub fn hierarchy(&self, kmax: usize, emulators: &[EcaRule], cache: Option<&ShardCache>) -> Result<HierarchyGraph> {
        let table = self.table(emulators, kmax, cache)?;
        Ok(HierarchyGraph::from_table(&table, kmax)?)
    }

    /// [`ecaemu_core::classify`] with the subalgebra searches on the pool.
    pub fn classify(&self, graph: &HierarchyGraph) -> Result<ClassificationReport> {
        Ok(classify_with(graph, |g, k| self.search(g, k))?)
    }
}
