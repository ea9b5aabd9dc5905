use crate::supercell::MAX_SUPERCELL;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("Wolfram number {0} is outside 0..=255")]
    RuleOutOfRange(u32),
    #[error("word of length {len} is too short, at least {needed} bits are required")]
    TooShort { len: usize, needed: usize },
    #[error("supercell size {0} is unsupported, expected 1..={max}", max = MAX_SUPERCELL)]
    SupercellSize(usize),
    #[error("supercell value {value:#x} does not fit in {k} bits")]
    SupercellValue { k: usize, value: u64 },
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("encoding maps both states to the same supercell")]
    NotInjective,
    #[error("encoding does not witness rule {emulated} <= rule {emulator}")]
    InvalidWitness { emulated: u8, emulator: u8 },
    #[error("cannot compose witnesses: first emulator is rule {first}, second emulated is rule {second}")]
    RuleMismatch { first: u8, second: u8 },
    #[error("invalid bit character {0:?}")]
    InvalidBit(char),
    #[error("decoded emulation diverges from the direct trajectory at row {row}")]
    DecodingMismatch { row: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
