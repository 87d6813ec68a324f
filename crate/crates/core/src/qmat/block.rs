use super::density::entropy_of_spectrum;
use super::matrix::ComplexMatrix;
use crate::error::Result;

/// One diagonal block of a [`BlockDiagonal`] matrix.
#[derive(Clone, Debug)]
pub enum Block {
    Dense(ComplexMatrix),
    /// `scale * I` of the given dimension, stored without materializing it.
    ScaledIdentity { dim: usize, scale: f64 },
}

impl Block {
    pub fn dim(&self) -> usize {
        match self {
            Block::Dense(m) => m.rows(),
            Block::ScaledIdentity { dim, .. } => *dim,
        }
    }

    pub fn trace(&self) -> f64 {
        match self {
            Block::Dense(m) => m.trace().re,
            Block::ScaledIdentity { dim, scale } => *dim as f64 * scale,
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        match self {
            Block::Dense(m) => m.hermitian_eigenvalues(),
            Block::ScaledIdentity { dim, scale } => Ok(vec![*scale; *dim]),
        }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        match self {
            Block::Dense(m) => m.clone(),
            Block::ScaledIdentity { dim, scale } => ComplexMatrix::identity(*dim).scale_real(*scale),
        }
    }
}

/// Direct sum of Hermitian blocks.
#[derive(Clone, Debug, Default)]
pub struct BlockDiagonal {
    blocks: Vec<Block>,
}

impl BlockDiagonal {
    pub fn new(blocks: Vec<Block>) -> Self {
        BlockDiagonal { blocks }
    }

    pub fn push(&mut self, block: Block) {
        self.blocks.push(block);
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(Block::trace).sum()
    }

    /// Entropy functional −Σ λ log₂ λ over all block eigenvalues.
    pub fn entropy(&self) -> Result<f64> {
        let mut total = 0.0;
        for b in &self.blocks {
            total += entropy_of_spectrum(&b.eigenvalues()?);
        }
        Ok(total)
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        let mut offset = 0;
        for b in &self.blocks {
            let d = b.to_dense();
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    out[(offset + r, offset + c)] = d[(r, c)];
                }
            }
            offset += d.rows();
        }
        out
    }
}
