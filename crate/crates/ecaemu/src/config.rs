use std::path::PathBuf;
use std::str::FromStr;

use ecaemu_core::hierarchy::{dual_classes, DualityClass};
use ecaemu_core::supercell::check_k;
use ecaemu_core::EcaRule;

use crate::cache::ShardCache;
use crate::export::ExportFormat;
use crate::parallel::Workers;
use crate::{Error, Result};

/// Which rules to search as emulators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleSelection {
    All,
    /// The 136 duality-class representatives.
    Representatives,
    List(Vec<EcaRule>),
}

impl FromStr for RuleSelection {
    type Err = Error;

    /// `all`, `reps`, or a comma-separated list of Wolfram numbers.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(RuleSelection::All),
            "reps" => Ok(RuleSelection::Representatives),
            list => {
                let mut rules = list
                    .split(',')
                    .map(|n| {
                        let n: u32 =
                            n.trim().parse().map_err(|_| Error::format("rule list", format!("not a number: {n:?}")))?;
                        Ok(EcaRule::from_wolfram(n)?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                rules.sort();
                rules.dedup();
                Ok(RuleSelection::List(rules))
            }
        }
    }
}

impl RuleSelection {
    pub fn rules(&self) -> Vec<EcaRule> {
        match self {
            RuleSelection::All => EcaRule::all().collect(),
            RuleSelection::Representatives => dual_classes().iter().map(DualityClass::representative).collect(),
            RuleSelection::List(rules) => rules.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub kmax: usize,
    pub rules: RuleSelection,
    pub workers: usize,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
    pub format: ExportFormat,
    /// Standard output when `None`.
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        check_k(self.kmax)?;
        if self.workers == 0 {
            return Err(ecaemu_core::Error::InvalidArgument("workers must be at least 1").into());
        }
        Ok(())
    }

    pub fn cache(&self) -> Option<ShardCache> {
        self.cache_dir.as_ref().map(ShardCache::new)
    }

    pub fn pool(&self) -> Result<Workers> {
        self.validate()?;
        Workers::new(self.workers)
    }
}
