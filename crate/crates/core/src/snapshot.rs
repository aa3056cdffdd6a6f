//! Binary field snapshots: a text header line `NSKF1 dim n L rho_bar t`
//! followed by little-endian `f64` blocks, density first, then one block
//! per velocity component.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::grid::Grid;

const MAGIC: &str = "NSKF1";

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub grid: Grid,
    pub t: f64,
    pub blocks: Vec<ScalarField>,
}

impl Snapshot {
    pub fn encode(&self) -> Vec<u8> {
        let g = &self.grid;
        let mut out = format!(
            "{MAGIC} {} {} {} {} {}\n",
            g.dim(),
            g.n(),
            g.box_length(),
            g.far_field_density(),
            self.t
        )
        .into_bytes();
        out.reserve(self.blocks.len() * g.len() * 8);
        for b in &self.blocks {
            for v in b.values() {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let newline = bytes
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| Error::Snapshot("missing header line".into()))?;
        let header = std::str::from_utf8(&bytes[..newline])
            .map_err(|_| Error::Snapshot("header is not UTF-8".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 6 || parts[0] != MAGIC {
            return Err(Error::Snapshot(format!("bad header {header:?}")));
        }
        let bad = |what: &str| Error::Snapshot(format!("bad {what} in header"));
        let dim: usize = parts[1].parse().map_err(|_| bad("dim"))?;
        let n: usize = parts[2].parse().map_err(|_| bad("n"))?;
        let l: f64 = parts[3].parse().map_err(|_| bad("L"))?;
        let rho_bar: f64 = parts[4].parse().map_err(|_| bad("rho_bar"))?;
        let t: f64 = parts[5].parse().map_err(|_| bad("t"))?;
        let grid = Grid::new(dim, n, l, rho_bar)?;
        let payload = &bytes[newline + 1..];
        let block_bytes = grid.len() * 8;
        if payload.is_empty() || payload.len() % block_bytes != 0 {
            return Err(Error::Snapshot(format!(
                "payload of {} bytes is not a whole number of {}-byte blocks",
                payload.len(),
                block_bytes
            )));
        }
        let blocks = payload
            .chunks(block_bytes)
            .map(|chunk| {
                let values = chunk
                    .chunks_exact(8)
                    .map(|b| f64::from_le_bytes(b.try_into().expect("8 bytes")))
                    .collect();
                ScalarField::new(&grid, values)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, t, blocks })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut f = fs::File::create(path)?;
        f.write_all(&self.encode())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::decode(&fs::read(path)?)
    }
}
