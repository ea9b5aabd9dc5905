//! Witness files: `{"f": .., "g": .., "k": .., "enc0": "..", "enc1": ".."}`
//! certifying `f <=_k g`, with supercells as bit strings, cell 0 first.

use ecaemu_core::{EcaRule, EmulationWitness};
use serde::{Deserialize, Serialize};

use crate::{encoding_from_strings, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    /// Emulated rule.
    pub f: EcaRule,
    /// Emulating rule.
    pub g: EcaRule,
    pub k: usize,
    pub enc0: String,
    pub enc1: String,
}

impl From<&EmulationWitness> for WitnessFile {
    fn from(w: &EmulationWitness) -> Self {
        WitnessFile {
            f: w.emulated,
            g: w.emulator,
            k: w.k(),
            enc0: w.encoding.enc0_word().to_string(),
            enc1: w.encoding.enc1_word().to_string(),
        }
    }
}

impl WitnessFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// The claimed witness. Its equations are not checked here.
    pub fn witness(&self) -> Result<EmulationWitness> {
        let encoding = encoding_from_strings(&self.enc0, &self.enc1)?;
        if encoding.k() != self.k {
            return Err(Error::format(
                "witness file",
                format!("encodings have {} bits, k is {}", encoding.k(), self.k),
            ));
        }
        Ok(EmulationWitness::new(self.f, self.g, encoding))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ecaemu_core::check_emulation_naive;

    #[test]
    fn round_trip() {
        let (f, g) = (EcaRule::new(184), EcaRule::new(148));
        let enc = check_emulation_naive(f, g, 2).unwrap().unwrap();
        let w = EmulationWitness::new(f, g, enc);
        let file = WitnessFile::from(&w);
        assert_eq!(file, WitnessFile { f, g, k: 2, enc0: "00".into(), enc1: "10".into() });
        let text = file.to_json().unwrap();
        assert_eq!(WitnessFile::parse(&text).unwrap().witness().unwrap(), w);
    }

    #[test]
    fn malformed_files() {
        let parse = |s: &str| WitnessFile::parse(s).and_then(|f| f.witness());
        assert!(parse(r#"{"f":184,"g":148,"k":3,"enc0":"00","enc1":"10"}"#).is_err());
        assert!(parse(r#"{"f":184,"g":148,"k":2,"enc0":"00","enc1":"00"}"#).is_err());
        assert!(parse(r#"{"f":184,"g":148,"k":2,"enc0":"0x","enc1":"10"}"#).is_err());
        assert!(parse(r#"{"f":300,"g":148,"k":2,"enc0":"00","enc1":"10"}"#).is_err());
        assert!(parse(r#"{"f":184,"g":148,"k":2,"enc0":"00"}"#).is_err());
    }
}
