use std::path::Path;
use std::time::Instant;

use super::{BenchError, Result};

/// Times one piece of work, in milliseconds.
pub trait Clock {
    fn id(&self) -> String;
    fn time(&mut self, work: &mut dyn FnMut()) -> f64;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct MonotonicClock;

impl Clock for MonotonicClock {
    fn id(&self) -> String {
        "monotonic".into()
    }

    fn time(&mut self, work: &mut dyn FnMut()) -> f64 {
        let start = Instant::now();
        work();
        start.elapsed().as_secs_f64() * 1e3
    }
}

/// Runs the work but reports durations from a fixed trace, cycling when it runs out.
#[derive(Debug, Clone)]
pub struct FakeClock {
    trace: Vec<f64>,
    next: usize,
}

impl FakeClock {
    pub fn from_trace(trace: Vec<f64>) -> Result<Self> {
        if trace.is_empty() {
            return Err(BenchError::Trace("empty trace".into()));
        }
        if let Some(bad) = trace.iter().find(|t| !t.is_finite() || **t < 0.0) {
            return Err(BenchError::Trace(format!("invalid duration {bad}")));
        }
        Ok(Self { trace, next: 0 })
    }

    /// One duration per line; blank lines and `#` comments are skipped.
    pub fn parse_trace(text: &str) -> Result<Self> {
        let mut trace = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let t = line
                .parse()
                .map_err(|_| BenchError::Trace(format!("line {}: bad duration `{line}`", i + 1)))?;
            trace.push(t);
        }
        Self::from_trace(trace)
    }

    pub fn read_trace(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io { path: path.to_path_buf(), source })?;
        Self::parse_trace(&text)
    }
}

impl Clock for FakeClock {
    fn id(&self) -> String {
        format!("fake:{}", self.trace.len())
    }

    fn time(&mut self, work: &mut dyn FnMut()) -> f64 {
        work();
        let t = self.trace[self.next % self.trace.len()];
        self.next += 1;
        t
    }
}
