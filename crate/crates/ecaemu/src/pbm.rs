//! Portable bitmap (PBM) output and parsing. 1 is black.

use ecaemu_core::{Diagram, Word};

use crate::{Error, Result};

/// Plain PBM: one text line per diagram row, pixels separated by spaces.
pub fn write_pbm(d: &Diagram) -> String {
    let mut out = format!("P1\n{} {}\n", d.width(), d.height());
    for row in d.rows() {
        let mut line = String::with_capacity(2 * row.len());
        for (i, b) in row.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push(if b { '1' } else { '0' });
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Raw PBM: rows packed most significant bit first, padded to whole bytes.
pub fn write_pbm_binary(d: &Diagram) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", d.width(), d.height()).into_bytes();
    let bytes = d.width().div_ceil(8);
    for row in d.rows() {
        let start = out.len();
        out.resize(start + bytes, 0);
        for (i, b) in row.iter().enumerate() {
            if b {
                out[start + i / 8] |= 0x80 >> (i % 8);
            }
        }
    }
    out
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space(&mut self) {
        while let Some(&c) = self.data.get(self.pos) {
            if c == b'#' {
                while self.data.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_space();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::format("PBM", "expected a dimension"))
    }
}

/// Reads plain (`P1`) or raw (`P4`) PBM.
pub fn parse_pbm(data: &[u8]) -> Result<Diagram> {
    let magic = data.get(..2).ok_or_else(|| Error::format("PBM", "missing magic number"))?;
    let raw = match magic {
        b"P1" => false,
        b"P4" => true,
        _ => return Err(Error::format("PBM", "magic number must be P1 or P4")),
    };
    let mut cur = Cursor { data, pos: 2 };
    let width = cur.number()?;
    let height = cur.number()?;
    let mut rows = Vec::with_capacity(height);
    if raw {
        if !data.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(Error::format("PBM", "expected whitespace before raster"));
        }
        cur.pos += 1;
        let bytes = width.div_ceil(8);
        for r in 0..height {
            let line = data
                .get(cur.pos + r * bytes..cur.pos + (r + 1) * bytes)
                .ok_or_else(|| Error::format("PBM", "raster too short"))?;
            rows.push(Word::from_bits((0..width).map(|i| line[i / 8] & (0x80 >> (i % 8)) != 0)));
        }
    } else {
        for _ in 0..height {
            let mut row = Word::default();
            while row.len() < width {
                cur.skip_space();
                match data.get(cur.pos) {
                    Some(b'0') => row.push(false),
                    Some(b'1') => row.push(true),
                    _ => return Err(Error::format("PBM", "expected a 0 or 1 pixel")),
                }
                cur.pos += 1;
            }
            rows.push(row);
        }
    }
    Ok(Diagram::new(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diagram(rows: &[&str]) -> Diagram {
        Diagram::new(rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn plain_examples() {
        assert_eq!(write_pbm(&diagram(&["1"])), "P1\n1 1\n1\n");
        assert_eq!(write_pbm(&diagram(&["10"])), "P1\n2 1\n1 0\n");
        assert_eq!(write_pbm(&diagram(&[])), "P1\n0 0\n");
    }

    #[test]
    fn binary_example() {
        let d = diagram(&["1000000001", "0100000000"]);
        assert_eq!(write_pbm_binary(&d), b"P4\n10 2\n\x80\x40\x40\x00");
    }

    #[test]
    fn parser_accepts_comments_and_packed_pixels() {
        let d = parse_pbm(b"P1\n# comment\n3 2\n101\n0 1\n1").unwrap();
        assert_eq!(d, diagram(&["101", "011"]));
        assert!(parse_pbm(b"P2\n1 1\n1").is_err());
        assert!(parse_pbm(b"P1\n2 2\n1 0 1").is_err());
        assert!(parse_pbm(b"P4\n9 2\n\x00\x00\x00").is_err());
    }

    fn rows() -> impl Strategy<Value = Diagram> {
        (0usize..20, 0usize..8).prop_flat_map(|(w, h)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), w), h)
                .prop_map(|rows| Diagram::new(rows.into_iter().map(Word::from_bits).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn round_trips(d in rows()) {
            let plain = parse_pbm(write_pbm(&d).as_bytes()).unwrap();
            let raw = parse_pbm(&write_pbm_binary(&d)).unwrap();
            prop_assert_eq!(&plain, &d);
            prop_assert_eq!(&raw, &d);
        }
    }
}
