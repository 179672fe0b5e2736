use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Uniform,
    Log,
}

/// Sampling plan `start..=end` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub start: T,
    pub end: T,
    pub count: usize,
    pub spacing: Spacing,
}

impl<T: Real> GridSpec<T> {
    pub fn new(start: T, end: T, count: usize, spacing: Spacing) -> Result<Self> {
        if !(start < end) || !start.is_finite() || !end.is_finite() {
            return Err(Error::Grid(format!("need start < end, got {start}..{end}")));
        }
        if count < 2 {
            return Err(Error::Grid(format!("need at least 2 points, got {count}")));
        }
        if spacing == Spacing::Log && start <= T::zero() {
            return Err(Error::Grid("log spacing needs a positive start".into()));
        }
        Ok(Self {
            start,
            end,
            count,
            spacing,
        })
    }

    pub fn uniform(start: T, end: T, count: usize) -> Result<Self> {
        Self::new(start, end, count, Spacing::Uniform)
    }

    pub fn log(start: T, end: T, count: usize) -> Result<Self> {
        Self::new(start, end, count, Spacing::Log)
    }

    /// `0.01, 0.02, …, 0.99`.
    pub fn unit_default() -> Self {
        Self::uniform(T::lit(0.01), T::lit(0.99), 99).expect("valid literal grid")
    }

    pub fn points(&self) -> Vec<T> {
        let n = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == n {
                    return self.end;
                }
                let s = T::from_count(i) / T::from_count(n);
                match self.spacing {
                    Spacing::Uniform => self.start + (self.end - self.start) * s,
                    Spacing::Log => (self.start.ln() + (self.end.ln() - self.start.ln()) * s).exp(),
                }
            })
            .collect()
    }

    /// True when every point lies strictly inside `(0, 1)`.
    pub fn inside_unit_interval(&self) -> bool {
        self.start > T::zero() && self.end < T::one()
    }
}

impl<T: Real> std::fmt::Display for GridSpec<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.count)?;
        if self.spacing == Spacing::Log {
            f.write_str(":log")?;
        }
        Ok(())
    }
}

/// Parses `start:end:count[:log]`.
impl<T: Real + FromStr> FromStr for GridSpec<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Grid(format!("expected start:end:count[:log], got `{s}`"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad());
        }
        let start = parts[0].trim().parse::<T>().map_err(|_| bad())?;
        let end = parts[1].trim().parse::<T>().map_err(|_| bad())?;
        let count = parts[2].trim().parse::<usize>().map_err(|_| bad())?;
        let spacing = match parts.get(3).map(|p| p.trim()) {
            None => Spacing::Uniform,
            Some("log") => Spacing::Log,
            Some("uniform") | Some("lin") => Spacing::Uniform,
            Some(_) => return Err(bad()),
        };
        Self::new(start, end, count, spacing)
    }
}
