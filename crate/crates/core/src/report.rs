use std::fmt;

use crate::metrics::Psnr;

/// Per-run accounting filled by the embedders.
///
/// `pvd_bits` and `glm_bits` count payload bits actually consumed (padding
/// read past the end of the payload is not counted). The pair-class counters
/// are only populated by the hybrid codec.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EmbedReport {
    pub pvd_bits: usize,
    pub glm_bits: usize,
    pub pairs_total: usize,
    pub pairs_skipped_pvd: usize,
    pub pairs_abandoned: usize,
    pub pairs_zero_diff: usize,
    pub pairs_glm: usize,
    pub psnr_db: Option<Psnr>,
}

impl EmbedReport {
    pub fn total_bits(&self) -> usize {
        self.pvd_bits + self.glm_bits
    }
}

impl fmt::Display for EmbedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bits embedded:     {}", self.total_bits())?;
        writeln!(f, "  pvd phase:       {}", self.pvd_bits)?;
        writeln!(f, "  glm phase:       {}", self.glm_bits)?;
        writeln!(f, "pairs:             {}", self.pairs_total)?;
        writeln!(f, "  skipped (pvd):   {}", self.pairs_skipped_pvd)?;
        writeln!(f, "  abandoned:       {}", self.pairs_abandoned)?;
        writeln!(f, "  zero difference: {}", self.pairs_zero_diff)?;
        writeln!(f, "  glm carrying:    {}", self.pairs_glm)?;
        match self.psnr_db {
            Some(psnr) => write!(f, "psnr:              {psnr} dB"),
            None => write!(f, "psnr:              n/a"),
        }
    }
}
