//! Space-time diagrams: one configuration per row, time running downward.

use alloc::vec::Vec;

use crate::{trajectory, EcaRule, EmulationWitness, Encoding, Error, Grid, Result, Word};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Diagram {
    rows: Vec<Word>,
}

impl Diagram {
    /// All rows must have the same length.
    pub fn new(rows: Vec<Word>) -> Result<Self> {
        if let Some(first) = rows.first() {
            if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
                return Err(Error::SizeMismatch { expected: first.len(), got: bad.len() });
            }
        }
        Ok(Diagram { rows })
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Word::len)
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// 1 is black, 0 is white.
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    /// Every row decoded block by block; `None` if a block is not an image of `enc`.
    pub fn decode(&self, enc: &Encoding) -> Option<Diagram> {
        let rows = self.rows.iter().map(|r| enc.decode_config(r)).collect::<Option<Vec<_>>>()?;
        Some(Diagram { rows })
    }
}

/// Rows `u, F(u), ..., F^steps(u)` on a cyclic grid.
pub fn render_diagram(rule: EcaRule, grid: &Grid, steps: usize) -> Result<Diagram> {
    let rows = trajectory(rule, grid, steps)?.into_iter().map(|g| g.cells).collect();
    Ok(Diagram { rows })
}

/// The direct run of the emulated rule from `u`, next to the emulator run
/// from `enc(u)` on a cyclic grid of `k * |u|` cells showing every `k`-th step.
///
/// Decoding the second diagram is checked against the first and any
/// disagreement is reported as [`Error::DecodingMismatch`].
pub fn render_emulated(w: &EmulationWitness, u: &Word, steps: usize) -> Result<(Diagram, Diagram)> {
    if !w.holds() {
        return Err(Error::InvalidWitness { emulated: w.emulated.wolfram(), emulator: w.emulator.wolfram() });
    }
    let k = w.k();
    let direct = render_diagram(w.emulated, &Grid::cyclic(u.clone()), steps)?;
    let encoded = Grid::cyclic(w.encoding.encode_config(u));
    let rows = trajectory(w.emulator, &encoded, k * steps)?.into_iter().step_by(k).map(|g| g.cells).collect();
    let emulated = Diagram { rows };
    for (row, encoded_row) in emulated.rows.iter().enumerate() {
        if w.encoding.decode_config(encoded_row).as_ref() != Some(&direct.rows[row]) {
            return Err(Error::DecodingMismatch { row });
        }
    }
    Ok((direct, emulated))
}
