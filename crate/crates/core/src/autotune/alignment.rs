use super::HeuristicModel;

/// Smallest training size checked for memory alignment.
pub const ALIGNMENT_MIN_SIZE: u64 = 800_000;

/// Bytes a sub-system must span for block offsets to stay aligned.
const ALIGNMENT_BYTES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlignmentEntry {
    pub n: u64,
    pub predicted: u32,
    pub aligned: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentReport {
    /// Required multiple: 32 elements for fp64, 64 for fp32.
    pub multiple: u32,
    pub entries: Vec<AlignmentEntry>,
}

impl AlignmentReport {
    pub fn all_aligned(&self) -> bool {
        self.entries.iter().all(|e| e.aligned)
    }

    pub fn misaligned(&self) -> impl Iterator<Item = &AlignmentEntry> {
        self.entries.iter().filter(|e| !e.aligned)
    }

    pub fn summary(&self) -> String {
        let bad = self.misaligned().count();
        format!(
            "{} of {} sizes with N >= {} predict a multiple of {}",
            self.entries.len() - bad,
            self.entries.len(),
            ALIGNMENT_MIN_SIZE,
            self.multiple
        )
    }
}

/// Checks the model's predictions at its large training sizes against the
/// alignment multiple for its precision.
pub fn alignment_report(model: &HeuristicModel) -> AlignmentReport {
    let multiple = (ALIGNMENT_BYTES / model.metadata().precision.width()) as u32;
    let entries = model
        .points()
        .iter()
        .filter(|p| p.n >= ALIGNMENT_MIN_SIZE)
        .map(|p| {
            let predicted = model.predict(p.n);
            AlignmentEntry { n: p.n, predicted, aligned: predicted % multiple == 0 }
        })
        .collect();
    AlignmentReport { multiple, entries }
}
