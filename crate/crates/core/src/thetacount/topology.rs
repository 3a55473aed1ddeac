use serde::{Deserialize, Serialize};

use super::{ThetaError, MAX_GENUS};

/// Genus, number of real components and type of a real curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveTopology {
    pub g: u32,
    pub s: u32,
    pub dividing: bool,
}

impl CurveTopology {
    pub fn new(g: u32, s: u32, dividing: bool) -> Result<Self, ThetaError> {
        if g == 0 {
            return Err(ThetaError::GenusZero);
        }
        if g > MAX_GENUS {
            return Err(ThetaError::GenusTooLarge(g));
        }
        if s == 0 {
            return Err(ThetaError::NoComponents);
        }
        if s > g + 1 {
            return Err(ThetaError::TooManyComponents { g, s });
        }
        if s == g + 1 && !dividing {
            return Err(ThetaError::MCurveNotDividing);
        }
        if dividing && (g + 1 - s) % 2 == 1 {
            return Err(ThetaError::DividingParity { g, s });
        }
        Ok(CurveTopology { g, s, dividing })
    }

    /// Rank `g + 1 - s` of the involution matrix.
    pub fn rank(&self) -> u32 {
        self.g + 1 - self.s
    }

    /// 0 for dividing curves, 1 otherwise.
    pub fn a(&self) -> u8 {
        if self.dividing {
            0
        } else {
            1
        }
    }

    pub fn is_m_curve(&self) -> bool {
        self.s == self.g + 1
    }

    pub(crate) fn check_signs(&self, signs: &[bool]) -> Result<(), ThetaError> {
        let expected = self.s as usize - 1;
        if signs.len() != expected {
            return Err(ThetaError::SignLength {
                expected,
                got: signs.len(),
            });
        }
        Ok(())
    }
}

/// Symmetric `g x g` matrix over F2 describing the action of complex
/// conjugation on theta characteristics. Row `i` is a bitmask, bit `j` the
/// entry `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HMatrix {
    g: u32,
    rows: Vec<u64>,
}

impl HMatrix {
    /// Dividing curves get `r/2` blocks `[[0,1],[1,0]]`, others an identity
    /// block of size `r`; the rest is zero.
    pub fn new(t: &CurveTopology) -> Self {
        let g = t.g as usize;
        let r = t.rank() as usize;
        let mut rows = vec![0u64; g];
        if t.dividing {
            for b in 0..r / 2 {
                rows[2 * b] = 1 << (2 * b + 1);
                rows[2 * b + 1] = 1 << (2 * b);
            }
        } else {
            for (i, row) in rows.iter_mut().enumerate().take(r) {
                *row = 1 << i;
            }
        }
        HMatrix { g: t.g, rows }
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Diagonal as a bitmask.
    pub fn diag(&self) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (r >> i & 1) << i)
    }

    pub fn apply(&self, v: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r & v).count_ones() & 1) as u64) << i)
    }

    /// Rank over F2 by elimination.
    pub fn rank(&self) -> u32 {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for bit in 0..self.g {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && *row >> bit & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank as u32
    }
}

/// Theta characteristic `(u, v)` in F2^{2g}, stored as bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThetaChar {
    pub u: u64,
    pub v: u64,
}

impl ThetaChar {
    pub fn is_odd(&self) -> bool {
        (self.u & self.v).count_ones() % 2 == 1
    }

    pub fn is_real(&self, h: &HMatrix) -> bool {
        h.apply(self.v) == h.diag()
    }
}
